//! Isomorph-free generation of semigroup and monoid tables.
//!
//! Cells are filled in row-major order with ascending values. A partial
//! table is abandoned as soon as some relabeling provably yields a
//! lexicographically smaller table, so each isomorphism class is produced
//! exactly once, by its minimal image, and in increasing order.

use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{permutations, permutations_fixing_last};

const UNSET: u16 = u16::MAX;

pub(crate) struct Relabeling {
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl Relabeling {
    pub(crate) fn all(perms: Vec<Vec<usize>>) -> Vec<Relabeling> {
        perms
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &v)| i != v))
            .map(|perm| {
                let mut inv = vec![0; perm.len()];
                for (x, &y) in perm.iter().enumerate() {
                    inv[y] = x;
                }
                Relabeling { perm, inv }
            })
            .collect()
    }
}

/// `false` when some relabeling of the partial table is certainly smaller.
/// `arity` lets the same test serve n-ary tables.
pub(crate) fn may_be_minimal(table: &[u16], order: usize, arity: usize, relabelings: &[Relabeling]) -> bool {
    let mut digits = vec![0usize; arity];
    'perm: for r in relabelings {
        digits.iter_mut().for_each(|d| *d = 0);
        for &own in table {
            if own == UNSET {
                continue 'perm;
            }
            let src = digits.iter().fold(0usize, |acc, &d| acc * order + r.inv[d]);
            let v = table[src];
            if v == UNSET {
                continue 'perm;
            }
            let image = r.perm[v as usize] as u16;
            if image < own {
                return false;
            }
            if image > own {
                continue 'perm;
            }
            crate::op::odometer_step(&mut digits, order);
        }
    }
    true
}

/// First triple whose every needed product is known and which violates
/// associativity.
fn clash(table: &[u16], n: usize) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = table[x * n + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let yz = table[y * n + z];
                if yz == UNSET {
                    continue;
                }
                let l = table[xy as usize * n + z];
                let r = table[x * n + yz as usize];
                if l != UNSET && r != UNSET && l != r {
                    return true;
                }
            }
        }
    }
    false
}

struct Generator<'a> {
    n: usize,
    table: Vec<u16>,
    free: Vec<usize>,
    relabelings: Vec<Relabeling>,
    emit: &'a mut dyn FnMut(&[u16]),
}

impl Generator<'_> {
    fn go(&mut self, depth: usize) {
        if depth == self.free.len() {
            (self.emit)(&self.table);
            return;
        }
        let cell = self.free[depth];
        for v in 0..self.n as u16 {
            self.table[cell] = v;
            if !clash(&self.table, self.n) && may_be_minimal(&self.table, self.n, 2, &self.relabelings) {
                self.go(depth + 1);
            }
        }
        self.table[cell] = UNSET;
    }
}

/// Calls `emit` on the canonical table of every semigroup of order `n`.
pub(crate) fn semigroup_tables(n: usize, emit: &mut dyn FnMut(&[u16])) {
    if n == 0 {
        return;
    }
    let mut g = Generator {
        n,
        table: vec![UNSET; n * n],
        free: (0..n * n).collect(),
        relabelings: Relabeling::all(permutations(n)),
        emit,
    };
    g.go(0);
}

/// Calls `emit` on the canonical table of every monoid of order `n`, with
/// the neutral element at `n - 1`.
pub(crate) fn monoid_tables(n: usize, emit: &mut dyn FnMut(&[u16])) {
    if n == 0 {
        return;
    }
    let e = n - 1;
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[e * n + x] = x as u16;
        table[x * n + e] = x as u16;
    }
    let free = (0..e).flat_map(|x| (0..e).map(move |y| x * n + y)).collect();
    let mut g = Generator {
        n,
        table,
        free,
        relabelings: Relabeling::all(permutations_fixing_last(n)),
        emit,
    };
    g.go(0);
}
