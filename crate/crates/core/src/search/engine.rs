//! Propagating backtracking search for binary tables `∗` on a carrier of
//! size `m ≥ k` such that `∗` is associative and its n-ary left fold agrees
//! with a given operation `F` on `{0, …, k-1}ⁿ`.
//!
//! Reductions use `m = k` with every cell free. Adjunctions use `m = k + 1`
//! with the row and column of the new element `k` fixed to the identity.
//!
//! Two propagation rules run to a fixpoint after every assignment:
//!
//! * fold prefixes: once `w = x₁∗…∗x_{n-1}` is known, the whole row
//!   `w∗z = F(x₁, …, x_{n-1}, z)` is forced for `z < k`;
//! * associativity: once `u = x∗y` and `v = y∗z` are known, `u∗z` and `x∗v`
//!   must agree, so either one forces the other.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::op::FiniteNaryOp;

use super::Clock;

const UNSET: u16 = u16::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Done,
    Limit,
    Timeout,
}

pub(crate) struct Engine<'a> {
    f: &'a FiniteNaryOp,
    m: usize,
    k: usize,
    cells: Vec<u16>,
    trail: Vec<usize>,
    variables: Vec<usize>,
    pub(crate) nodes: u64,
    first_fail: bool,
}

impl<'a> Engine<'a> {
    /// Reductions of `f`: every cell of a `k × k` table is free.
    pub(crate) fn for_reductions(f: &'a FiniteNaryOp, first_fail: bool) -> Self {
        let k = f.order();
        Engine {
            f,
            m: k,
            k,
            cells: vec![UNSET; k * k],
            trail: Vec::new(),
            variables: (0..k * k).collect(),
            nodes: 0,
            first_fail,
        }
    }

    /// Monoid completions on `k + 1` elements with neutral `k`.
    pub(crate) fn for_adjunctions(f: &'a FiniteNaryOp, first_fail: bool) -> Self {
        let k = f.order();
        let m = k + 1;
        let mut cells = vec![UNSET; m * m];
        for x in 0..m {
            cells[k * m + x] = x as u16;
            cells[x * m + k] = x as u16;
        }
        let variables = (0..k).flat_map(|x| (0..k).map(move |y| x * m + y)).collect();
        Engine {
            f,
            m,
            k,
            cells,
            trail: Vec::new(),
            variables,
            nodes: 0,
            first_fail,
        }
    }

    pub(crate) fn carrier(&self) -> usize {
        self.m
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u16 {
        self.cells[x * self.m + y]
    }

    #[inline]
    fn assign(&mut self, cell: usize, v: u16) {
        debug_assert_eq!(self.cells[cell], UNSET);
        self.cells[cell] = v;
        self.trail.push(cell);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().expect("trail");
            self.cells[c] = UNSET;
        }
    }

    /// Sets `cell` to `v` or reports a clash. Returns `Some(changed)`.
    #[inline]
    fn force(&mut self, cell: usize, v: u16) -> Option<bool> {
        match self.cells[cell] {
            UNSET => {
                self.assign(cell, v);
                Some(true)
            }
            cur if cur == v => Some(false),
            _ => None,
        }
    }

    /// Runs both rules to a fixpoint; `false` on contradiction.
    pub(crate) fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            match self.sweep_folds() {
                Some(c) => changed |= c,
                None => return false,
            }
            match self.sweep_associativity() {
                Some(c) => changed |= c,
                None => return false,
            }
            if !changed {
                return true;
            }
        }
    }

    fn sweep_folds(&mut self) -> Option<bool> {
        let (k, m, n) = (self.k, self.m, self.f.arity());
        let mut changed = false;
        let mut prefix = vec![0usize; n - 1];
        let mut prefix_code = 0usize;
        loop {
            let mut w = prefix[0] as u16;
            for &x in &prefix[1..] {
                if w == UNSET {
                    break;
                }
                w = self.get(w as usize, x);
            }
            if w != UNSET {
                let base = prefix_code * k;
                for z in 0..k {
                    let target = self.f.table()[base + z];
                    changed |= self.force(w as usize * m + z, target)?;
                }
            }
            prefix_code += 1;
            if !crate::op::odometer_step(&mut prefix, k) {
                break;
            }
        }
        Some(changed)
    }

    fn sweep_associativity(&mut self) -> Option<bool> {
        let m = self.m;
        let mut changed = false;
        for x in 0..m {
            for y in 0..m {
                let u = self.get(x, y);
                if u == UNSET {
                    continue;
                }
                for z in 0..m {
                    let v = self.get(y, z);
                    if v == UNSET {
                        continue;
                    }
                    let lc = u as usize * m + z;
                    let rc = x * m + v as usize;
                    match (self.cells[lc], self.cells[rc]) {
                        (UNSET, UNSET) => {}
                        (UNSET, r) => changed |= self.force(lc, r)?,
                        (l, UNSET) => changed |= self.force(rc, l)?,
                        (l, r) if l != r => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(changed)
    }

    fn pick_variable(&mut self) -> Option<usize> {
        if !self.first_fail {
            return self.variables.iter().copied().find(|&c| self.cells[c] == UNSET);
        }
        let mut best: Option<(usize, usize)> = None;
        let open: Vec<usize> = self.variables.iter().copied().filter(|&c| self.cells[c] == UNSET).collect();
        for c in open {
            let mark = self.trail.len();
            let mut alive = 0;
            for v in 0..self.m {
                self.assign(c, v as u16);
                if self.propagate() {
                    alive += 1;
                }
                self.undo(mark);
            }
            if best.is_none_or(|(_, a)| alive < a) {
                best = Some((c, alive));
            }
            if alive <= 1 {
                break;
            }
        }
        best.map(|(c, _)| c)
    }

    /// The first branching variable after initial propagation, or `None`
    /// when propagation alone settles the instance.
    pub(crate) fn root(&mut self) -> Result<Option<usize>, ()> {
        if !self.propagate() {
            return Err(());
        }
        Ok(self.pick_variable())
    }

    /// Depth-first search from the current state, appending complete tables
    /// to `out`. `root_value` restricts the first branching to one value.
    pub(crate) fn run(
        &mut self,
        out: &mut Vec<Vec<u16>>,
        limit: Option<usize>,
        clock: &dyn Clock,
        timeout: Option<Duration>,
        root_value: Option<u16>,
    ) -> Stop {
        if !self.propagate() {
            return Stop::Done;
        }
        self.dfs(out, limit, clock, timeout, root_value)
    }

    fn dfs(
        &mut self,
        out: &mut Vec<Vec<u16>>,
        limit: Option<usize>,
        clock: &dyn Clock,
        timeout: Option<Duration>,
        only: Option<u16>,
    ) -> Stop {
        let Some(cell) = self.pick_variable() else {
            debug_assert!(self.cells.iter().all(|&c| c != UNSET));
            out.push(self.cells.clone());
            return if limit.is_some_and(|l| out.len() >= l) { Stop::Limit } else { Stop::Done };
        };
        let values: Vec<u16> = match only {
            Some(v) => vec![v],
            None => (0..self.m as u16).collect(),
        };
        for v in values {
            self.nodes += 1;
            if timeout.is_some_and(|t| clock.elapsed() > t) {
                return Stop::Timeout;
            }
            let mark = self.trail.len();
            self.assign(cell, v);
            let stop = if self.propagate() {
                self.dfs(out, limit, clock, timeout, None)
            } else {
                Stop::Done
            };
            self.undo(mark);
            if stop != Stop::Done {
                return stop;
            }
        }
        Stop::Done
    }
}
