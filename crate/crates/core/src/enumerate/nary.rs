//! Backtracking generation of associative n-ary tables, one per
//! isomorphism class.

use alloc::vec;
use alloc::vec::Vec;

use super::binary::{may_be_minimal, Relabeling};
use crate::canon::permutations;
use crate::op::odometer_step;

const UNSET: u16 = u16::MAX;

/// One side of an identity instance: `outer = base + inner_value * stride`.
#[derive(Clone, Copy)]
struct Side {
    inner: u32,
    base: u32,
    stride: u32,
}

#[derive(Clone, Copy)]
struct Instance {
    lhs: Side,
    rhs: Side,
}

fn instances(order: usize, n: usize) -> Vec<Instance> {
    let len = 2 * n - 1;
    let mut out = Vec::new();
    let side = |xs: &[usize], start: usize| {
        let inner = xs[start..start + n].iter().fold(0usize, |a, &x| a * order + x);
        // outer tuple: xs[..start], •, xs[start+n..]
        let mut base = 0usize;
        let mut stride = 0usize;
        let outer_len = n;
        for pos in 0..outer_len {
            let weight = order.pow((outer_len - 1 - pos) as u32);
            if pos < start {
                base += xs[pos] * weight;
            } else if pos == start {
                stride = weight;
            } else {
                base += xs[start + n + (pos - start - 1)] * weight;
            }
        }
        Side {
            inner: inner as u32,
            base: base as u32,
            stride: stride as u32,
        }
    };
    for i in 1..n {
        let mut xs = vec![0usize; len];
        loop {
            out.push(Instance {
                lhs: side(&xs, i - 1),
                rhs: side(&xs, i),
            });
            if !odometer_step(&mut xs, order) {
                break;
            }
        }
    }
    out
}

#[inline]
fn eval(table: &[u16], s: Side) -> u16 {
    let v = table[s.inner as usize];
    if v == UNSET {
        return UNSET;
    }
    table[(s.base + v as u32 * s.stride) as usize]
}

fn clash(table: &[u16], inst: &[Instance]) -> bool {
    inst.iter().any(|i| {
        let l = eval(table, i.lhs);
        l != UNSET && {
            let r = eval(table, i.rhs);
            r != UNSET && l != r
        }
    })
}

/// Calls `emit` on the minimal-image table of every associative n-ary
/// operation on `order` elements, in increasing order.
pub(crate) fn associative_tables(order: usize, arity: usize, emit: &mut dyn FnMut(&[u16])) {
    let cells = order.pow(arity as u32);
    let inst = instances(order, arity);
    let relabelings = Relabeling::all(permutations(order));
    let mut table = vec![UNSET; cells];
    fn go(
        depth: usize,
        order: usize,
        arity: usize,
        table: &mut Vec<u16>,
        inst: &[Instance],
        relabelings: &[Relabeling],
        emit: &mut dyn FnMut(&[u16]),
    ) {
        if depth == table.len() {
            emit(table);
            return;
        }
        for v in 0..order as u16 {
            table[depth] = v;
            if !clash(table, inst) && may_be_minimal(table, order, arity, relabelings) {
                go(depth + 1, order, arity, table, inst, relabelings, emit);
            }
        }
        table[depth] = UNSET;
    }
    go(0, order, arity, &mut table, &inst, &relabelings, emit);
}

/// Number of relabelings fixing `table`.
pub(crate) fn automorphisms(table: &[u16], order: usize, arity: usize) -> usize {
    permutations(order)
        .iter()
        .filter(|p| crate::canon::relabel_table(table, order, arity, p) == table)
        .count()
}
