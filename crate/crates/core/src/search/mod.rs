//! Deciding reducibility and the adjunction of a neutral element.
//!
//! Both questions become searches for a binary table: a reduction of `F` is
//! an associative `∘` on `X` whose n-ary fold is `F`; an adjunction is a
//! monoid on `X ∪ {e}` with neutral `e` whose n-ary fold restricts to `F`
//! (every admissible n-ary extension is of this form, since an n-ary
//! operation with a neutral element reduces to a unique monoid with the same
//! neutral element). [`oracle`] enumerates the same spaces naively.

mod engine;
pub mod oracle;

use alloc::vec::Vec;
use core::time::Duration;

use crate::op::{BinaryOpDesc, FiniteNaryOp, MonoidDesc, Universe};

use engine::{Engine, Stop};

/// Source of elapsed time for timeouts.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; searches under it cannot time out.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

impl<F: Fn() -> Duration> Clock for F {
    fn elapsed(&self) -> Duration {
        self()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Stop after this many solutions.
    pub limit: Option<usize>,
    pub timeout: Option<Duration>,
    /// Branch on the most constrained cell instead of the first open one.
    /// Solutions are re-sorted, so the returned list is unaffected when the
    /// search is not truncated.
    pub first_fail: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            limit: None,
            timeout: Some(Duration::from_secs(60)),
            first_fail: false,
        }
    }
}

impl SearchConfig {
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn unlimited() -> Self {
        SearchConfig::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    /// Solutions in lexicographic order of their tables.
    pub solutions: Vec<T>,
    /// The search was not cut short by the timeout; together with
    /// `!truncated` the list is complete, and an empty list is a certified no.
    pub exhausted: bool,
    /// The search stopped because it reached the solution limit.
    pub truncated: bool,
    pub nodes_visited: u64,
    pub elapsed: Duration,
}

impl<T> SearchOutcome<T> {
    /// `Yes` if a solution was found, `No` if the space was exhausted
    /// without one, `Undecided` otherwise.
    pub fn existence(&self) -> Verdict {
        if !self.solutions.is_empty() {
            Verdict::Yes
        } else if self.exhausted {
            Verdict::No
        } else {
            Verdict::Undecided
        }
    }

    fn map<U>(self, f: impl FnMut(T) -> U) -> SearchOutcome<U> {
        SearchOutcome {
            solutions: self.solutions.into_iter().map(f).collect(),
            exhausted: self.exhausted,
            truncated: self.truncated,
            nodes_visited: self.nodes_visited,
            elapsed: self.elapsed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    pub fn negate(self) -> Verdict {
        match self {
            Verdict::Yes => Verdict::No,
            Verdict::No => Verdict::Yes,
            Verdict::Undecided => Verdict::Undecided,
        }
    }
}

/// Which search space to explore.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Reductions,
    Adjunctions,
}

fn engine_for<'a>(f: &'a FiniteNaryOp, mode: Mode, first_fail: bool) -> Engine<'a> {
    match mode {
        Mode::Reductions => Engine::for_reductions(f, first_fail),
        Mode::Adjunctions => Engine::for_adjunctions(f, first_fail),
    }
}

/// Values of the first branching cell, for splitting one search into
/// independent tasks. Empty when initial propagation fails; `None` when it
/// leaves nothing to branch on.
pub fn root_branches(f: &FiniteNaryOp, mode: Mode, config: &SearchConfig) -> Option<Vec<u16>> {
    let mut engine = engine_for(f, mode, config.first_fail);
    match engine.root() {
        Err(()) => Some(Vec::new()),
        Ok(None) => None,
        Ok(Some(_)) => Some((0..engine.carrier() as u16).collect()),
    }
}

/// Raw tables found by one search (optionally pinned to one root value).
pub fn search_tables(
    f: &FiniteNaryOp,
    mode: Mode,
    config: &SearchConfig,
    clock: &dyn Clock,
    root_value: Option<u16>,
) -> SearchOutcome<Vec<u16>> {
    let start = clock.elapsed();
    let mut engine = engine_for(f, mode, config.first_fail);
    let mut out = Vec::new();
    let stop = engine.run(&mut out, config.limit, clock, config.timeout, root_value);
    if config.first_fail {
        out.sort();
    }
    SearchOutcome {
        solutions: out,
        exhausted: stop != Stop::Timeout,
        truncated: stop == Stop::Limit,
        nodes_visited: engine.nodes,
        elapsed: clock.elapsed().saturating_sub(start),
    }
}

/// Wraps a table produced by [`search_tables`] in reduction mode.
pub fn reduction_from_table(f: &FiniteNaryOp, table: Vec<u16>) -> BinaryOpDesc {
    let b = BinaryOpDesc::new(f.universe().clone(), table).expect("search yields valid tables");
    debug_assert!(b.is_associative());
    debug_assert!(crate::derive::is_reduction(f, &b).unwrap_or(false));
    b
}

/// Wraps a table produced by [`search_tables`] in adjunction mode.
pub fn adjunction_from_table(f: &FiniteNaryOp, table: Vec<u16>) -> MonoidDesc {
    let k = f.order();
    let universe = match f.universe().names() {
        Some(names) => {
            let mut names = names.to_vec();
            names.push(crate::derive::fresh_name(&names, "e"));
            Universe::with_names(k + 1, names).expect("fresh name")
        }
        None => Universe::new(k + 1).expect("order"),
    };
    let b = BinaryOpDesc::new(universe, table).expect("search yields valid tables");
    MonoidDesc::new(b, k).expect("search yields monoids")
}

/// All associative `∘` on the carrier of `F` whose n-ary fold equals `F`,
/// in lexicographic table order.
pub fn find_reductions(f: &FiniteNaryOp, config: &SearchConfig, clock: &dyn Clock) -> SearchOutcome<BinaryOpDesc> {
    search_tables(f, Mode::Reductions, config, clock, None).map(|t| reduction_from_table(f, t))
}

/// All monoids on `X ∪ {e}` (with `e` = index `order`) whose n-ary fold
/// restricted to `X` equals `F`, in lexicographic table order.
pub fn find_adjunctions(f: &FiniteNaryOp, config: &SearchConfig, clock: &dyn Clock) -> SearchOutcome<MonoidDesc> {
    search_tables(f, Mode::Adjunctions, config, clock, None).map(|t| adjunction_from_table(f, t))
}

pub fn is_reducible(f: &FiniteNaryOp, config: &SearchConfig, clock: &dyn Clock) -> Verdict {
    find_reductions(f, &config.with_limit(1), clock).existence()
}

pub fn is_irreducible(f: &FiniteNaryOp, config: &SearchConfig, clock: &dyn Clock) -> Verdict {
    is_reducible(f, config, clock).negate()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotInReason {
    Reducible,
    NoAdjunction,
}

impl core::fmt::Display for NotInReason {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            NotInReason::Reducible => "reducible",
            NotInReason::NoAdjunction => "no adjunction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InVerdict {
    /// Irreducible, with one adjunction monoid as witness.
    Yes(MonoidDesc),
    No(NotInReason),
    Undecided,
}

/// Whether `F` is irreducible yet admits the adjunction of a neutral element.
pub fn is_in_semigroup(f: &FiniteNaryOp, config: &SearchConfig, clock: &dyn Clock) -> InVerdict {
    let reducible = is_reducible(f, config, clock);
    if reducible == Verdict::Yes {
        return InVerdict::No(NotInReason::Reducible);
    }
    let adj = find_adjunctions(f, &config.with_limit(1), clock);
    match (reducible, adj.existence()) {
        (_, Verdict::No) => InVerdict::No(NotInReason::NoAdjunction),
        (Verdict::No, Verdict::Yes) => InVerdict::Yes(adj.solutions.into_iter().next().expect("one solution")),
        _ => InVerdict::Undecided,
    }
}

/// Whether some `x, y` in the old carrier (indices below `old_order`)
/// multiply to the neutral element.
pub fn neutral_factorization(m: &MonoidDesc, old_order: usize) -> Option<(usize, usize)> {
    let e = m.neutral();
    (0..old_order)
        .flat_map(|x| (0..old_order).map(move |y| (x, y)))
        .find(|&(x, y)| m.get(x, y) == e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::nary_extension;
    use crate::fixtures;
    use crate::wmonoid::{check_w_monoid, from_involution, in_semigroup_from_w_monoid};
    use std::vec;

    fn cfg() -> SearchConfig {
        SearchConfig { timeout: None, ..SearchConfig::default() }
    }

    fn add_mod(k: usize) -> BinaryOpDesc {
        BinaryOpDesc::from_fn(k, |x, y| (x + y) % k).unwrap()
    }

    #[test]
    fn extz2_has_exactly_two_reductions() {
        let out = find_reductions(&fixtures::extz2(), &cfg(), &NoClock);
        assert!(out.exhausted && !out.truncated);
        let tables: Vec<&[u16]> = out.solutions.iter().map(|b| b.table()).collect();
        assert_eq!(tables, vec![&[0u16, 1, 1, 0][..], &[1, 0, 0, 1][..]]);
        assert_eq!(out.solutions, oracle::brute_force_reductions(&fixtures::extz2()).unwrap());
    }

    #[test]
    fn aff3_has_no_reduction_and_no_adjunction() {
        let f = fixtures::aff3();
        let r = find_reductions(&f, &cfg(), &NoClock);
        assert!(r.solutions.is_empty() && r.exhausted);
        let a = find_adjunctions(&f, &cfg(), &NoClock);
        assert!(a.solutions.is_empty() && a.exhausted);
        assert_eq!(is_in_semigroup(&f, &cfg(), &NoClock), InVerdict::No(NotInReason::NoAdjunction));
        assert_eq!(is_irreducible(&f, &cfg(), &NoClock), Verdict::Yes);
    }

    #[test]
    fn generating_reduction_is_found() {
        let f = nary_extension(&add_mod(3), 3).unwrap();
        let out = find_reductions(&f, &cfg(), &NoClock);
        assert!(out.solutions.contains(&add_mod(3)));
        assert_eq!(is_reducible(&f, &cfg(), &NoClock), Verdict::Yes);
    }

    #[test]
    fn extz2_is_reducible_and_adjoinable() {
        let f = fixtures::extz2();
        assert_eq!(is_reducible(&f, &cfg(), &NoClock), Verdict::Yes);
        assert!(!find_adjunctions(&f, &cfg(), &NoClock).solutions.is_empty());
        assert_eq!(is_in_semigroup(&f, &cfg(), &NoClock), InVerdict::No(NotInReason::Reducible));
    }

    #[test]
    fn limit_truncates() {
        let out = find_reductions(&fixtures::extz2(), &cfg().with_limit(1), &NoClock);
        assert_eq!(out.solutions.len(), 1);
        assert!(out.truncated && out.exhausted);
    }

    #[test]
    fn timeout_reports_not_exhausted() {
        let f = fixtures::aff3();
        let ticking = || Duration::from_secs(100);
        let config = SearchConfig { timeout: Some(Duration::from_secs(1)), ..SearchConfig::default() };
        let out = find_adjunctions(&f, &config, &ticking);
        assert!(!out.exhausted);
        assert_eq!(out.existence(), Verdict::Undecided);
        assert_eq!(is_in_semigroup(&f, &config, &ticking), InVerdict::Undecided);
    }

    #[test]
    fn first_fail_returns_the_same_solutions() {
        let ff = SearchConfig { first_fail: true, ..cfg() };
        for f in [fixtures::extz2(), fixtures::aff3(), nary_extension(&add_mod(3), 3).unwrap()] {
            assert_eq!(find_reductions(&f, &ff, &NoClock).solutions, find_reductions(&f, &cfg(), &NoClock).solutions);
            assert_eq!(find_adjunctions(&f, &ff, &NoClock).solutions, find_adjunctions(&f, &cfg(), &NoClock).solutions);
        }
    }

    #[test]
    fn in7_is_an_in_semigroup() {
        let m = from_involution(&fixtures::s3(), fixtures::S3_TRANSPOSITION).unwrap();
        let w = check_w_monoid(&m).unwrap();
        let in7 = in_semigroup_from_w_monoid(&w, 3).unwrap();
        assert_eq!(in7.order(), 7);
        let adj = find_adjunctions(&in7, &cfg(), &NoClock);
        assert!(adj.exhausted && !adj.solutions.is_empty());
        for m in &adj.solutions {
            assert!(check_w_monoid(m).is_ok());
            assert!(neutral_factorization(m, 7).is_some());
        }
        assert!(matches!(is_in_semigroup(&in7, &cfg(), &NoClock), InVerdict::Yes(_)));
    }

    #[test]
    fn search_is_deterministic() {
        let f = fixtures::extz2();
        let a = find_adjunctions(&f, &cfg(), &NoClock);
        let b = find_adjunctions(&f, &cfg(), &NoClock);
        assert_eq!(a.solutions, b.solutions);
        assert_eq!(a.nodes_visited, b.nodes_visited);
    }

    #[test]
    fn root_split_covers_the_whole_space() {
        let f = fixtures::extz2();
        let roots = root_branches(&f, Mode::Adjunctions, &cfg()).unwrap();
        let mut joined = Vec::new();
        for v in roots {
            joined.extend(search_tables(&f, Mode::Adjunctions, &cfg(), &NoClock, Some(v)).solutions);
        }
        joined.sort();
        assert_eq!(joined, search_tables(&f, Mode::Adjunctions, &cfg(), &NoClock, None).solutions);
    }
}
