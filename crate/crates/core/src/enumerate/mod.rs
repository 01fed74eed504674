//! Small structures up to isomorphism: semigroups, monoids, W-monoids,
//! surveys of associative n-ary operations, and the least order of an
//! n-ary IN-semigroup.

mod binary;
mod nary;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::canon::CanonicalForm;
use crate::catalog::{CatalogRecord, RecordKind};
use crate::derive::neutral_elements;
use crate::error::{AlgError, Result};
use crate::op::{pow_u128, BinaryOpDesc, FiniteNaryOp, MonoidDesc, Universe};
use crate::search::{find_adjunctions, is_reducible, Clock, SearchConfig, Verdict};
use crate::wmonoid::{
    check_w_monoid, enumerate_bitranslations, from_bitranslation, in_semigroup_from_w_monoid, WMonoidWitness,
};

pub const SEMIGROUP_CAP: usize = 4;
/// Monoids are generated up to order 6 so that W-monoids of order 6 can be
/// found by filtering.
pub const MONOID_CAP: usize = 6;
pub const W_MONOID_CAP: usize = 6;
/// Largest `order^arity` accepted by [`survey_nary`].
pub const SURVEY_MAX_CELLS: usize = 32;

fn cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(AlgError::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

/// Semigroups of the given order up to isomorphism, in increasing order of
/// their canonical tables.
pub fn enumerate_semigroups(order: usize) -> Result<Vec<BinaryOpDesc>> {
    cap(order, SEMIGROUP_CAP)?;
    let mut out = Vec::new();
    binary::semigroup_tables(order, &mut |t| {
        out.push(BinaryOpDesc::new(Universe::new(order).expect("order"), t.to_vec()).expect("table"));
    });
    Ok(out)
}

/// Monoids of the given order up to isomorphism, neutral element at
/// `order - 1`, in increasing canonical order.
pub fn enumerate_monoids(order: usize) -> Result<Vec<MonoidDesc>> {
    cap(order, MONOID_CAP)?;
    let mut out = Vec::new();
    binary::monoid_tables(order, &mut |t| {
        let op = BinaryOpDesc::new(Universe::new(order).expect("order"), t.to_vec()).expect("table");
        out.push(MonoidDesc::new(op, order - 1).expect("generated monoid"));
    });
    Ok(out)
}

/// W-monoids of one order, found independently by filtering all monoids
/// (route A) and by building from every bitranslation of every semigroup
/// of order `order - 2` (route B).
#[derive(Debug, Clone)]
pub struct WMonoidCensus {
    pub order: usize,
    /// Route A witnesses, canonical tables, increasing.
    pub witnesses: Vec<WMonoidWitness>,
    /// Route B canonical forms, increasing and deduplicated.
    pub route_b: Vec<CanonicalForm>,
}

impl WMonoidCensus {
    pub fn route_a(&self) -> Vec<CanonicalForm> {
        self.witnesses.iter().map(|w| CanonicalForm::of_monoid(w.monoid())).collect()
    }

    pub fn agree(&self) -> bool {
        self.route_a() == self.route_b
    }
}

pub fn w_monoids_by_filtering(order: usize) -> Result<Vec<WMonoidWitness>> {
    cap(order, W_MONOID_CAP)?;
    if order == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_monoids(order)?
        .iter()
        .filter_map(|m| check_w_monoid(m).ok())
        .collect())
}

pub fn w_monoids_by_bitranslations(order: usize) -> Result<Vec<CanonicalForm>> {
    cap(order, W_MONOID_CAP)?;
    if order < 2 {
        return Ok(Vec::new());
    }
    let mut forms = BTreeSet::new();
    for s in enumerate_semigroups(order - 2)? {
        for bt in enumerate_bitranslations(&s)? {
            forms.insert(CanonicalForm::of_monoid(&from_bitranslation(&bt)?));
        }
    }
    Ok(forms.into_iter().collect())
}

pub fn enumerate_w_monoids(order: usize) -> Result<WMonoidCensus> {
    Ok(WMonoidCensus {
        order,
        witnesses: w_monoids_by_filtering(order)?,
        route_b: w_monoids_by_bitranslations(order)?,
    })
}

/// An isomorphism class of associative n-ary operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaryClass {
    /// Minimal-image representative.
    pub op: FiniteNaryOp,
    /// Number of labeled tables in the class.
    pub orbit: u64,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// How [`associative_nary`] visited the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurveyMethod {
    /// Every table checked with the full associativity test.
    Exhaustive,
    /// Propagating backtracking with isomorph rejection.
    Backtracking,
}

/// Every associative n-ary operation on `order` elements, one per
/// isomorphism class.
pub fn associative_nary(order: usize, arity: usize, method: SurveyMethod) -> Result<Vec<NaryClass>> {
    if arity < 2 {
        return Err(AlgError::BadArity(arity));
    }
    let cells = pow_u128(order, arity);
    if cells > SURVEY_MAX_CELLS as u128 {
        return Err(AlgError::CellCapExceeded { cells, cap: SURVEY_MAX_CELLS as u64 });
    }
    let cells = cells as usize;
    let universe = Universe::new(order)?;
    let mut out = Vec::new();
    let mut push = |t: &[u16]| {
        let aut = nary::automorphisms(t, order, arity) as u64;
        out.push(NaryClass {
            op: FiniteNaryOp::new(universe.clone(), arity, t.to_vec()).expect("table"),
            orbit: factorial(order) / aut,
        });
    };
    match method {
        SurveyMethod::Backtracking => nary::associative_tables(order, arity, &mut push),
        SurveyMethod::Exhaustive => {
            if pow_u128(order, cells) > 1 << 24 {
                return Err(AlgError::CellCapExceeded { cells: pow_u128(order, cells), cap: 1 << 24 });
            }
            let perms = crate::canon::permutations(order);
            let mut digits = alloc::vec![0usize; cells];
            loop {
                let t: Vec<u16> = digits.iter().map(|&d| d as u16).collect();
                let f = FiniteNaryOp::new(universe.clone(), arity, t).expect("table");
                if crate::assoc::is_associative(&f)?
                    && perms
                        .iter()
                        .all(|p| crate::canon::relabel_table(f.table(), order, arity, p).as_slice() >= f.table())
                {
                    push(f.table());
                }
                if !crate::op::odometer_step(&mut digits, order) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub classes: u64,
    pub labeled: u64,
}

impl Tally {
    fn add(&mut self, orbit: u64) {
        self.classes += 1;
        self.labeled += orbit;
    }
}

/// Census of the associative n-ary operations of one order and arity.
#[derive(Debug, Clone)]
pub struct Survey {
    pub order: usize,
    pub arity: usize,
    pub associative: Tally,
    /// Tables accepted by the survey predicate; the tallies below count
    /// only these.
    pub selected: Tally,
    pub with_neutral: Tally,
    pub reducible: Tally,
    pub adjoinable: Tally,
    pub in_semigroups: Tally,
    pub undecided: Tally,
    /// Reducible classes without an adjunction; always empty when
    /// constructive adjunction is sound.
    pub reducible_not_adjoinable: Tally,
    /// IN-semigroups having some adjunction monoid that is not a W-monoid.
    pub forward_violations: Tally,
    /// Adjunction monoids examined for IN-semigroups.
    pub adjunction_monoids_checked: u64,
    pub in_exemplars: Vec<FiniteNaryOp>,
}

/// Decides reducibility, adjoinability and IN-ness for every associative
/// table accepted by `predicate`. For each IN-semigroup, all adjunction
/// monoids are listed and checked against W1–W3.
pub fn survey_nary(
    order: usize,
    arity: usize,
    predicate: &dyn Fn(&FiniteNaryOp) -> bool,
    config: &SearchConfig,
    clock: &dyn Clock,
) -> Result<Survey> {
    let cells = pow_u128(order, arity);
    let method = if cells <= 16 { SurveyMethod::Exhaustive } else { SurveyMethod::Backtracking };
    let classes = associative_nary(order, arity, method)?;
    let mut s = Survey {
        order,
        arity,
        associative: Tally::default(),
        selected: Tally::default(),
        with_neutral: Tally::default(),
        reducible: Tally::default(),
        adjoinable: Tally::default(),
        in_semigroups: Tally::default(),
        undecided: Tally::default(),
        reducible_not_adjoinable: Tally::default(),
        forward_violations: Tally::default(),
        adjunction_monoids_checked: 0,
        in_exemplars: Vec::new(),
    };
    for class in &classes {
        s.associative.add(class.orbit);
        let f = &class.op;
        if !predicate(f) {
            continue;
        }
        s.selected.add(class.orbit);
        if !neutral_elements(f).is_empty() {
            s.with_neutral.add(class.orbit);
        }
        let red = is_reducible(f, config, clock);
        let adj = find_adjunctions(f, &config.with_limit(1), clock).existence();
        if red == Verdict::Undecided || adj == Verdict::Undecided {
            s.undecided.add(class.orbit);
            continue;
        }
        if red == Verdict::Yes {
            s.reducible.add(class.orbit);
        }
        if adj == Verdict::Yes {
            s.adjoinable.add(class.orbit);
        }
        if red == Verdict::Yes && adj == Verdict::No {
            s.reducible_not_adjoinable.add(class.orbit);
        }
        if red == Verdict::No && adj == Verdict::Yes {
            s.in_semigroups.add(class.orbit);
            s.in_exemplars.push(f.clone());
            let all = find_adjunctions(f, &SearchConfig { limit: None, ..*config }, clock);
            s.adjunction_monoids_checked += all.solutions.len() as u64;
            if !all.exhausted || all.solutions.iter().any(|m| check_w_monoid(m).is_err()) {
                s.forward_violations.add(class.orbit);
            }
        }
    }
    Ok(s)
}

/// Least carrier size of an n-ary IN-semigroup, with an exemplar.
#[derive(Debug, Clone)]
pub struct MinimalIn {
    pub order: usize,
    pub w_monoid: WMonoidWitness,
    pub record: CatalogRecord,
    /// Arity-3 surveys of every order up to the result: (order, IN classes).
    pub survey_checks: Vec<(usize, u64)>,
}

/// Computes the least W-monoid order (both routes must agree) and returns
/// its ternary-or-higher restriction. With `cross_check`, arity 3 surveys
/// confirm no smaller IN-semigroup exists and one exists at that order.
pub fn minimal_in_semigroup(
    n: usize,
    cross_check: bool,
    config: &SearchConfig,
    clock: &dyn Clock,
) -> Result<Option<MinimalIn>> {
    if n < 3 {
        return Err(AlgError::BadArity(n));
    }
    if n.is_multiple_of(2) {
        return Err(AlgError::EvenArity(n));
    }
    for m in 1..=W_MONOID_CAP {
        let census = enumerate_w_monoids(m)?;
        if !census.agree() {
            return Err(AlgError::NotWMonoid(alloc::format!(
                "W-monoid routes disagree at order {}",
                m
            )));
        }
        let Some(w) = preferred_exemplar(&census.witnesses) else {
            continue;
        };
        let f = in_semigroup_from_w_monoid(&w, n)?;
        let adjunctions = find_adjunctions(&f, &SearchConfig { limit: None, ..*config }, clock);
        let record = CatalogRecord::in_semigroup(&f, &w, Some(0), adjunctions.exhausted.then_some(adjunctions.solutions.len() as u64));
        let mut survey_checks = Vec::new();
        if cross_check && n == 3 {
            for order in 1..m {
                if pow_u128(order, 3) as usize <= SURVEY_MAX_CELLS {
                    let s = survey_nary(order, 3, &|_| true, config, clock)?;
                    survey_checks.push((order, s.in_semigroups.classes));
                }
            }
        }
        return Ok(Some(MinimalIn {
            order: m - 1,
            w_monoid: w,
            record,
            survey_checks,
        }));
    }
    Ok(None)
}

/// Among W-monoids of one order, prefer one whose carrier `M ∖ {a, e}` is
/// a left-zero band (the smallest instance comes from `L = swap, R = id`
/// there); otherwise take the first.
fn preferred_exemplar(witnesses: &[WMonoidWitness]) -> Option<WMonoidWitness> {
    let left_zero = |w: &WMonoidWitness| {
        let s = w.ideal();
        s.iter().all(|&x| s.iter().all(|&y| w.monoid().get(x, y) == x))
    };
    witnesses
        .iter()
        .find(|w| left_zero(w))
        .or_else(|| witnesses.first())
        .cloned()
}

/// Canonical forms of W-monoids grouped by order, for catalog emission.
pub fn w_monoid_records(order: usize) -> Result<Vec<CatalogRecord>> {
    Ok(w_monoids_by_filtering(order)?
        .iter()
        .map(CatalogRecord::w_monoid)
        .collect())
}

pub fn semigroup_records(order: usize) -> Result<Vec<CatalogRecord>> {
    Ok(enumerate_semigroups(order)?
        .iter()
        .map(|b| CatalogRecord::plain(RecordKind::Semigroup, b.order(), 2, b.table().to_vec(), None))
        .collect())
}

pub fn monoid_records(order: usize) -> Result<Vec<CatalogRecord>> {
    Ok(enumerate_monoids(order)?
        .iter()
        .map(|m| CatalogRecord::plain(RecordKind::Monoid, m.order(), 2, m.op().table().to_vec(), Some(m.neutral())))
        .collect())
}

/// Groups survey exemplars by canonical form (they already are canonical;
/// this only deduplicates across calls).
pub fn dedup_by_form(ops: &[FiniteNaryOp]) -> BTreeMap<CanonicalForm, FiniteNaryOp> {
    ops.iter().map(|f| (CanonicalForm::of_nary(f), f.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_monoid;
    use crate::fixtures;
    use crate::op::odometer_step;
    use crate::search::NoClock;

    /// Every table on `order` elements, associative ones canonicalized.
    fn naive_semigroup_count(order: usize) -> usize {
        let mut forms = BTreeSet::new();
        let mut t = alloc::vec![0usize; order * order];
        loop {
            let b = BinaryOpDesc::from_fn(order, |x, y| t[x * order + y]).unwrap();
            if b.is_associative() {
                forms.insert(CanonicalForm::of_binary(&b));
            }
            if !odometer_step(&mut t, order) {
                return forms.len();
            }
        }
    }

    fn naive_monoid_count(order: usize) -> usize {
        let e = order - 1;
        let mut forms = BTreeSet::new();
        let mut block = alloc::vec![0usize; e * e];
        loop {
            let b = BinaryOpDesc::from_fn(order, |x, y| {
                if x == e {
                    y
                } else if y == e {
                    x
                } else {
                    block[x * e + y]
                }
            })
            .unwrap();
            if b.is_associative() {
                forms.insert(CanonicalForm::of_monoid(&MonoidDesc::new(b, e).unwrap()));
            }
            if e == 0 || !odometer_step(&mut block, order) {
                return forms.len();
            }
        }
    }

    #[test]
    fn semigroup_counts_match_naive_exhaust() {
        for order in 1..=3 {
            assert_eq!(enumerate_semigroups(order).unwrap().len(), naive_semigroup_count(order), "order {}", order);
        }
    }

    #[test]
    fn monoid_counts_match_naive_exhaust() {
        for order in 1..=4 {
            assert_eq!(enumerate_monoids(order).unwrap().len(), naive_monoid_count(order), "order {}", order);
        }
        assert_eq!(enumerate_monoids(2).unwrap().len(), 2);
    }

    #[test]
    fn counts_match_published_iso_only_sequences() {
        let sg: Vec<usize> = (1..=4).map(|o| enumerate_semigroups(o).unwrap().len()).collect();
        assert_eq!(sg, [1, 5, 24, 188]);
        let mon: Vec<usize> = (1..=6).map(|o| enumerate_monoids(o).unwrap().len()).collect();
        assert_eq!(mon, [1, 2, 7, 35, 228, 2237]);
    }

    #[test]
    fn enumeration_is_sorted_canonical_and_duplicate_free() {
        let sg = enumerate_semigroups(3).unwrap();
        for w in sg.windows(2) {
            assert!(w[0].table() < w[1].table());
        }
        for b in &sg {
            assert!(b.is_associative());
            assert_eq!(CanonicalForm::of_binary(b).table, b.table());
        }
        for m in enumerate_monoids(4).unwrap() {
            assert_eq!(m.neutral(), 3);
            assert_eq!(CanonicalForm::of_monoid(&m).table, m.op().table());
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(enumerate_semigroups(5).unwrap_err(), AlgError::OrderCap { order: 5, cap: 4 });
        assert_eq!(enumerate_monoids(7).unwrap_err(), AlgError::OrderCap { order: 7, cap: 6 });
        assert!(enumerate_w_monoids(7).is_err());
        assert!(matches!(associative_nary(3, 4, SurveyMethod::Backtracking), Err(AlgError::CellCapExceeded { .. })));
    }

    #[test]
    fn small_orders_have_no_w_monoids() {
        for order in 0..=3 {
            let c = enumerate_w_monoids(order).unwrap();
            assert!(c.witnesses.is_empty() && c.route_b.is_empty());
        }
    }

    #[test]
    fn order_four_contains_w4_and_routes_agree() {
        let c = enumerate_w_monoids(4).unwrap();
        assert!(c.agree());
        assert_eq!(c.witnesses.len(), 2);
        assert!(c.route_b.contains(&CanonicalForm::of_monoid(&fixtures::w4_monoid())));
    }

    #[test]
    fn order_six_contains_ex46() {
        let c = enumerate_w_monoids(6).unwrap();
        assert!(c.agree());
        let ex46 = CanonicalForm::of_monoid(&fixtures::ex46_monoid());
        assert!(c.route_a().contains(&ex46));
    }

    #[test]
    fn exhaustive_and_backtracking_surveys_agree() {
        for (order, arity) in [(1, 3), (2, 2), (2, 3), (2, 4), (3, 2)] {
            let a = associative_nary(order, arity, SurveyMethod::Exhaustive).unwrap();
            let b = associative_nary(order, arity, SurveyMethod::Backtracking).unwrap();
            assert_eq!(a, b, "order {} arity {}", order, arity);
        }
    }

    #[test]
    fn orbit_sizes_add_up_to_labeled_count() {
        for (order, arity) in [(2, 3), (3, 2)] {
            let classes = associative_nary(order, arity, SurveyMethod::Backtracking).unwrap();
            let cells = order.pow(arity as u32);
            let mut labeled = 0u64;
            let mut t = alloc::vec![0usize; cells];
            loop {
                let f = FiniteNaryOp::from_fn(order, arity, |xs| t[xs.iter().fold(0, |a, &x| a * order + x)]).unwrap();
                if crate::assoc::is_associative(&f).unwrap() {
                    labeled += 1;
                }
                if !odometer_step(&mut t, order) {
                    break;
                }
            }
            assert_eq!(classes.iter().map(|c| c.orbit).sum::<u64>(), labeled);
        }
    }

    #[test]
    fn survey_examples() {
        let cfg = SearchConfig::default();
        for (order, arity) in [(2, 3), (2, 4)] {
            let s = survey_nary(order, arity, &|_| true, &cfg, &NoClock).unwrap();
            assert_eq!(s.in_semigroups.classes, 0);
            assert_eq!(s.undecided.classes, 0);
        }
        let s = survey_nary(2, 4, &|_| true, &cfg, &NoClock).unwrap();
        assert_eq!(s.reducible_not_adjoinable.classes, 0);
        assert_eq!(s.reducible, s.adjoinable);
        let s = survey_nary(3, 3, &|_| true, &cfg, &NoClock).unwrap();
        assert!(s.in_semigroups.classes >= 1);
        assert_eq!(s.forward_violations.classes, 0);
        assert_eq!(s.undecided.classes, 0);
        let w4 = check_w_monoid(&fixtures::w4_monoid()).unwrap();
        let f = in_semigroup_from_w_monoid(&w4, 3).unwrap();
        let form = CanonicalForm::of_nary(&f);
        assert!(s.in_exemplars.iter().any(|g| CanonicalForm::of_nary(g) == form));
    }

    #[test]
    fn survey_predicate_filters() {
        let cfg = SearchConfig::default();
        let s = survey_nary(2, 3, &|f| !neutral_elements(f).is_empty(), &cfg, &NoClock).unwrap();
        assert_eq!(s.selected, s.with_neutral);
        assert_eq!(s.reducible, s.selected);
    }

    #[test]
    fn minimal_in_examples() {
        let cfg = SearchConfig::default();
        let w4 = canonical_monoid(&fixtures::w4_monoid());
        let r3 = minimal_in_semigroup(3, true, &cfg, &NoClock).unwrap().unwrap();
        assert_eq!(r3.order, 3);
        assert_eq!(r3.w_monoid.monoid(), &w4);
        assert_eq!(r3.survey_checks, [(1, 0), (2, 0), (3, 2)]);
        r3.record.verify().unwrap();
        assert_eq!(r3.record.reductions, Some(0));
        let r5 = minimal_in_semigroup(5, false, &cfg, &NoClock).unwrap().unwrap();
        assert_eq!(r5.order, 3);
        assert_eq!(r5.record.arity, 5);
        assert_eq!(r5.w_monoid.monoid(), &w4);
        assert_eq!(minimal_in_semigroup(4, false, &cfg, &NoClock).unwrap_err(), AlgError::EvenArity(4));
    }

    #[test]
    fn records_verify() {
        for r in semigroup_records(3).unwrap().iter().chain(&monoid_records(4).unwrap()).chain(&w_monoid_records(5).unwrap()) {
            r.verify().unwrap();
        }
    }
}
