//! W-monoids: recognition, the Rees-quotient criterion, and the two
//! constructions (from an involution of a monoid, and from a bitranslation
//! of a semigroup), plus the odd-arity IN-semigroup they induce.
//!
//! A W-monoid is a monoid `(M, ∗, e)` with an element `a` such that
//!
//! * W1: `x∗y = e` iff `(x, y)` is `(a, a)` or `(e, e)`;
//! * W2: `x∗y = a` iff `(x, y)` is `(a, e)` or `(e, a)`;
//! * W3: `a` does not commute with some element.
//!
//! All constructions place the fresh elements at the end of the carrier:
//! `a` at index `|S|` and `e` at `|S| + 1`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::derive::{nary_extension, restrict, Restriction};
use crate::error::{AlgError, BitranslationLaw, Result, SideCondition};
use crate::op::{BinaryOpDesc, FiniteNaryOp, MonoidDesc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WChecks {
    pub w1: bool,
    pub w2: bool,
    pub w3: bool,
}

/// A monoid certified to satisfy W1–W3 with the special element `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WMonoidWitness {
    monoid: MonoidDesc,
    a: usize,
    checks: WChecks,
}

impl WMonoidWitness {
    pub fn monoid(&self) -> &MonoidDesc {
        &self.monoid
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn e(&self) -> usize {
        self.monoid.neutral()
    }

    pub fn checks(&self) -> WChecks {
        self.checks
    }

    /// `M ∖ {a, e}` in ascending order.
    pub fn ideal(&self) -> Vec<usize> {
        (0..self.monoid.order()).filter(|&x| x != self.a && x != self.e()).collect()
    }

    /// Relabeling that sends `M ∖ {a, e}` (ascending) to `0..|S|`, `a` to
    /// `|S|` and `e` to `|S|+1`; entry `x` is the new index of `x`.
    pub fn canonical_placement(&self) -> Vec<usize> {
        let mut perm = vec![0; self.monoid.order()];
        let s = self.ideal();
        for (k, &x) in s.iter().enumerate() {
            perm[x] = k;
        }
        perm[self.a] = s.len();
        perm[self.e()] = s.len() + 1;
        perm
    }
}

/// Which defining condition rejected the monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WCondition {
    W1,
    W2,
    W3,
}

impl fmt::Display for WCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WCondition::W1 => "W1",
            WCondition::W2 => "W2",
            WCondition::W3 => "W3",
        })
    }
}

/// Why [`check_w_monoid`] failed. `candidate` is the best `a` examined
/// (the one that got furthest through the conditions), `pair` a violating
/// `(x, y)` where the condition has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WFailure {
    pub condition: WCondition,
    pub candidate: Option<usize>,
    pub pair: Option<(usize, usize)>,
}

impl fmt::Display for WFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails", self.condition)?;
        match self.candidate {
            Some(a) => write!(f, " for a={}", a)?,
            None => f.write_str(" (no candidate a ≠ e)")?,
        }
        if let Some((x, y)) = self.pair {
            write!(f, " at ({}, {})", x, y)?;
        }
        if self.condition == WCondition::W3 {
            f.write_str(": a is central")?;
        }
        Ok(())
    }
}

fn w1_violation(m: &MonoidDesc, a: usize) -> Option<(usize, usize)> {
    let e = m.neutral();
    let n = m.order();
    for x in 0..n {
        for y in 0..n {
            let allowed = (x == a && y == a) || (x == e && y == e);
            if (m.get(x, y) == e) != allowed {
                return Some((x, y));
            }
        }
    }
    None
}

fn w2_violation(m: &MonoidDesc, a: usize) -> Option<(usize, usize)> {
    let e = m.neutral();
    let n = m.order();
    for x in 0..n {
        for y in 0..n {
            let allowed = (x == a && y == e) || (x == e && y == a);
            if (m.get(x, y) == a) != allowed {
                return Some((x, y));
            }
        }
    }
    None
}

/// Scans `a ≠ e` in ascending order for one satisfying W1 and W2, then
/// checks W3.
pub fn check_w_monoid(m: &MonoidDesc) -> core::result::Result<WMonoidWitness, WFailure> {
    let e = m.neutral();
    // rank of how far a candidate got: W1 with a∗a ≠ e < W1 < W2 < W3
    let mut best: Option<(u8, WFailure)> = None;
    let mut found: Option<WMonoidWitness> = None;
    for a in (0..m.order()).filter(|&a| a != e) {
        let failure = if let Some(pair) = w1_violation(m, a) {
            let rank = if m.get(a, a) == e { 1 } else { 0 };
            Some((rank, WFailure { condition: WCondition::W1, candidate: Some(a), pair: Some(pair) }))
        } else if let Some(pair) = w2_violation(m, a) {
            Some((2, WFailure { condition: WCondition::W2, candidate: Some(a), pair: Some(pair) }))
        } else if m.op().is_central(a) {
            Some((3, WFailure { condition: WCondition::W3, candidate: Some(a), pair: None }))
        } else {
            None
        };
        match failure {
            None => {
                // W1 pins a down: a second success would contradict it
                debug_assert!(found.is_none(), "two elements satisfy W1");
                if found.is_none() {
                    found = Some(WMonoidWitness {
                        monoid: m.clone(),
                        a,
                        checks: WChecks { w1: true, w2: true, w3: true },
                    });
                }
                if !cfg!(debug_assertions) {
                    break;
                }
            }
            Some((rank, f)) => {
                if best.is_none_or(|(r, _)| rank > r) {
                    best = Some((rank, f));
                }
            }
        }
    }
    match found {
        Some(w) => Ok(w),
        None => Err(best.map(|(_, f)| f).unwrap_or(WFailure {
            condition: WCondition::W1,
            candidate: None,
            pair: None,
        })),
    }
}

/// Class of an element in the Rees quotient `M / (M ∖ {a, e})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReesClass {
    A,
    Zero,
    E,
}

impl ReesClass {
    pub const ALL: [ReesClass; 3] = [ReesClass::A, ReesClass::Zero, ReesClass::E];

    /// Image in `T = {−1, 0, 1}` with `[a] ↦ −1`.
    pub fn sign(self) -> i8 {
        match self {
            ReesClass::A => -1,
            ReesClass::Zero => 0,
            ReesClass::E => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesCheck {
    /// `I = M ∖ {a, e}` absorbs products on both sides.
    pub ideal_ok: bool,
    /// First `(x, y)` with one factor in `I` and the product outside it.
    pub ideal_violation: Option<(usize, usize)>,
    /// Quotient product, indexed `[A, Zero, E]`; absent when `I` is not an ideal.
    pub quotient_table: Option<[[ReesClass; 3]; 3]>,
    pub iso_to_t: bool,
    /// `I` is empty; the zero class is then an adjoined zero.
    pub degenerate: bool,
}

/// Tests whether `M ∖ {a, e}` is an ideal and the Rees quotient is
/// `({−1, 0, 1}, ·)` with `[a] ↦ −1`.
pub fn check_rees_t_iso(m: &MonoidDesc, a: usize, e: usize) -> Result<ReesCheck> {
    let n = m.order();
    for x in [a, e] {
        if x >= n {
            return Err(AlgError::IndexOutOfRange { index: x, order: n });
        }
    }
    if a == e {
        return Err(AlgError::BadSubset);
    }
    let in_ideal = |x: usize| x != a && x != e;
    let class = |x: usize| {
        if x == a {
            ReesClass::A
        } else if x == e {
            ReesClass::E
        } else {
            ReesClass::Zero
        }
    };
    let mut ideal_violation = None;
    'outer: for x in 0..n {
        for y in 0..n {
            if (in_ideal(x) || in_ideal(y)) && !in_ideal(m.get(x, y)) {
                ideal_violation = Some((x, y));
                break 'outer;
            }
        }
    }
    let ideal_ok = ideal_violation.is_none();
    let degenerate = n == 2;
    let quotient_table = ideal_ok.then(|| {
        let rep = |c: ReesClass| match c {
            ReesClass::A => a,
            ReesClass::E => e,
            ReesClass::Zero => usize::MAX,
        };
        let mut t = [[ReesClass::Zero; 3]; 3];
        for (i, &c1) in ReesClass::ALL.iter().enumerate() {
            for (j, &c2) in ReesClass::ALL.iter().enumerate() {
                t[i][j] = if c1 == ReesClass::Zero || c2 == ReesClass::Zero {
                    ReesClass::Zero
                } else {
                    class(m.get(rep(c1), rep(c2)))
                };
            }
        }
        t
    });
    let iso_to_t = quotient_table.is_some_and(|t| {
        ReesClass::ALL.iter().enumerate().all(|(i, c1)| {
            ReesClass::ALL
                .iter()
                .enumerate()
                .all(|(j, c2)| t[i][j].sign() == c1.sign() * c2.sign())
        })
    });
    Ok(ReesCheck {
        ideal_ok,
        ideal_violation,
        quotient_table,
        iso_to_t,
        degenerate,
    })
}

/// Ideal extension of the monoid `S` by `{−1, 0, 1}` through `−1 ↦ A`:
/// `a∗a = e`, `a∗s = A∘s`, `s∗a = s∘A`, `e` neutral.
pub fn from_involution(s: &MonoidDesc, involution: usize) -> Result<MonoidDesc> {
    let k = s.order();
    if involution >= k {
        return Err(AlgError::IndexOutOfRange { index: involution, order: k });
    }
    if s.get(involution, involution) != s.neutral() {
        return Err(AlgError::NotInvolution(involution));
    }
    let (a, e) = (k, k + 1);
    let op = BinaryOpDesc::from_fn(k + 2, |x, y| {
        if x == e {
            y
        } else if y == e {
            x
        } else if x == a && y == a {
            e
        } else if x == a {
            s.get(involution, y)
        } else if y == a {
            s.get(x, involution)
        } else {
            s.get(x, y)
        }
    })?;
    let op = with_fresh_names(op, s.op())?;
    MonoidDesc::new(op, e)
}

fn with_fresh_names(op: BinaryOpDesc, base: &BinaryOpDesc) -> Result<BinaryOpDesc> {
    match base.universe().names() {
        Some(names) => {
            let mut names = names.to_vec();
            let a = crate::derive::fresh_name(&names, "a");
            names.push(a);
            let e = crate::derive::fresh_name(&names, "e");
            names.push(e);
            let order = names.len();
            op.with_universe(crate::op::Universe::with_names(order, names)?)
        }
        None => Ok(op),
    }
}

/// A pair of self-maps `(L, R)` of a semigroup `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitranslation {
    carrier: BinaryOpDesc,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bitranslation {
    /// Checks only that both maps are total on the carrier; the laws are
    /// checked by [`verify_bitranslation`].
    pub fn new(carrier: BinaryOpDesc, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        let n = carrier.order();
        for map in [&left, &right] {
            if map.len() != n {
                return Err(AlgError::TableLength { expected: n, got: map.len() });
            }
            if let Some(&bad) = map.iter().find(|&&v| v >= n) {
                return Err(AlgError::IndexOutOfRange { index: bad, order: n });
            }
        }
        Ok(Bitranslation { carrier, left, right })
    }

    pub fn carrier(&self) -> &BinaryOpDesc {
        &self.carrier
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// The inner bitranslation `(y ↦ A∘y, x ↦ x∘A)` of any element.
    pub fn inner(carrier: BinaryOpDesc, element: usize) -> Result<Self> {
        let n = carrier.order();
        if element >= n {
            return Err(AlgError::IndexOutOfRange { index: element, order: n });
        }
        let left = (0..n).map(|y| carrier.get(element, y)).collect();
        let right = (0..n).map(|x| carrier.get(x, element)).collect();
        Ok(Bitranslation { carrier, left, right })
    }
}

fn left_law_violation(s: &BinaryOpDesc, l: &[usize]) -> Option<(usize, usize)> {
    let n = s.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| l[s.get(x, y)] != s.get(l[x], y))
}

fn right_law_violation(s: &BinaryOpDesc, r: &[usize]) -> Option<(usize, usize)> {
    let n = s.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| r[s.get(x, y)] != s.get(x, r[y]))
}

fn linking_violation(s: &BinaryOpDesc, l: &[usize], r: &[usize]) -> Option<(usize, usize)> {
    let n = s.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| s.get(x, l[y]) != s.get(r[x], y))
}

fn is_involution(map: &[usize]) -> bool {
    map.iter().enumerate().all(|(x, &y)| map[y] == x)
}

fn commute(l: &[usize], r: &[usize]) -> bool {
    (0..l.len()).all(|x| l[r[x]] == r[l[x]])
}

/// Checks the left, right and linking laws, in that order.
pub fn verify_bitranslation(bt: &Bitranslation) -> Result<()> {
    let s = &bt.carrier;
    let fail = |law, (x, y)| Err(AlgError::Bitranslation { law, x, y });
    if let Some(p) = left_law_violation(s, &bt.left) {
        return fail(BitranslationLaw::Left, p);
    }
    if let Some(p) = right_law_violation(s, &bt.right) {
        return fail(BitranslationLaw::Right, p);
    }
    if let Some(p) = linking_violation(s, &bt.left, &bt.right) {
        return fail(BitranslationLaw::Linking, p);
    }
    Ok(())
}

/// `M = S ∪ {a, e}` with `a∗y = L(y)`, `x∗a = R(x)`, `a∗a = e` and `e`
/// neutral. Requires `L² = R² = id`, `LR = RL` and `L ≠ R`.
pub fn from_bitranslation(bt: &Bitranslation) -> Result<MonoidDesc> {
    let s = &bt.carrier;
    if !s.is_associative() {
        return Err(AlgError::BitranslationSide(SideCondition::CarrierAssociative));
    }
    verify_bitranslation(bt)?;
    let side = |ok: bool, c| if ok { Ok(()) } else { Err(AlgError::BitranslationSide(c)) };
    side(is_involution(&bt.left), SideCondition::LeftInvolution)?;
    side(is_involution(&bt.right), SideCondition::RightInvolution)?;
    side(commute(&bt.left, &bt.right), SideCondition::Commute)?;
    side(bt.left != bt.right, SideCondition::Distinct)?;
    let k = s.order();
    let (a, e) = (k, k + 1);
    let op = BinaryOpDesc::from_fn(k + 2, |x, y| {
        if x == e {
            y
        } else if y == e {
            x
        } else if x == a && y == a {
            e
        } else if x == a {
            bt.left[y]
        } else if y == a {
            bt.right[x]
        } else {
            s.get(x, y)
        }
    })?;
    let op = with_fresh_names(op, s)?;
    let m = MonoidDesc::new(op, e)?;
    debug_assert!(check_w_monoid(&m).is_ok_and(|w| w.a() == a));
    Ok(m)
}

/// `S = M ∖ {a, e}` with `L(y) = a∗y` and `R(x) = x∗a`, re-indexed in
/// ascending order.
pub fn decompose(w: &WMonoidWitness) -> Bitranslation {
    let m = &w.monoid;
    let s = w.ideal();
    let place = w.canonical_placement();
    let op = BinaryOpDesc::from_fn(s.len(), |x, y| place[m.get(s[x], s[y])]).expect("W1/W2 close M ∖ {a, e}");
    let op = match m.op().universe().names() {
        Some(names) => op
            .with_universe(
                crate::op::Universe::with_names(s.len(), s.iter().map(|&x| names[x].clone()).collect())
                    .expect("names of a subset stay valid"),
            )
            .expect("same order"),
        None => op,
    };
    let left = s.iter().map(|&y| place[m.get(w.a, y)]).collect();
    let right = s.iter().map(|&x| place[m.get(x, w.a)]).collect();
    Bitranslation { carrier: op, left, right }
}

/// Largest carrier accepted by [`enumerate_bitranslations`].
pub const BITRANSLATION_CAP: usize = 6;

fn all_maps(n: usize, mut keep: impl FnMut(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut map = vec![0usize; n];
    loop {
        if keep(&map) {
            out.push(map.clone());
        }
        if !crate::op::odometer_step(&mut map, n) {
            break;
        }
    }
    out
}

/// Every bitranslation `(L, R)` of `S` with `L² = R² = id`, `LR = RL` and
/// `L ≠ R`, sorted by `(L, R)`.
pub fn enumerate_bitranslations(s: &BinaryOpDesc) -> Result<Vec<Bitranslation>> {
    let n = s.order();
    if n > BITRANSLATION_CAP {
        return Err(AlgError::OrderCap { order: n, cap: BITRANSLATION_CAP });
    }
    if !s.is_associative() {
        return Err(AlgError::BitranslationSide(SideCondition::CarrierAssociative));
    }
    let lefts = all_maps(n, |l| left_law_violation(s, l).is_none() && is_involution(l));
    let rights = all_maps(n, |r| right_law_violation(s, r).is_none() && is_involution(r));
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            if l != r && commute(l, r) && linking_violation(s, l, r).is_none() {
                out.push(Bitranslation {
                    carrier: s.clone(),
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// `F = (n-ary extension of M)|_{M∖{e}}` for odd `n ≥ 3`.
pub fn in_semigroup_from_w_monoid(w: &WMonoidWitness, n: usize) -> Result<FiniteNaryOp> {
    if n < 3 {
        return Err(AlgError::BadArity(n));
    }
    if n.is_multiple_of(2) {
        return Err(AlgError::EvenArity(n));
    }
    let e = w.e();
    let ext = nary_extension(w.monoid.op(), n)?;
    let x: Vec<usize> = (0..w.monoid.order()).filter(|&v| v != e).collect();
    match restrict(&ext, &x)? {
        Restriction::Closed(f) => Ok(f),
        Restriction::NotClosed(t) => panic!("odd-arity restriction of a W-monoid escaped at {:?}", t),
    }
}

/// Folds a word over `{a, e}` and checks the result is `a` exactly when `a`
/// occurs an odd number of times.
pub fn parity_check(w: &WMonoidWitness, args: &[usize]) -> Result<usize> {
    let (a, e) = (w.a, w.e());
    if let Some(&bad) = args.iter().find(|&&x| x != a && x != e) {
        return Err(AlgError::OutsidePair(bad));
    }
    if args.is_empty() {
        return Err(AlgError::ArityMismatch { expected: 1, got: 0 });
    }
    let product = w.monoid.op().fold(args);
    let count = args.iter().filter(|&&x| x == a).count();
    let expected = if count % 2 == 1 { a } else { e };
    if product != expected {
        return Err(AlgError::ParityViolation { product, count });
    }
    Ok(product)
}

/// Every `x, y, z` with `x∗y∗z = e` has `e ∈ {x, y, z}`; returns a
/// violating triple otherwise.
pub fn triple_factorization_violation(w: &WMonoidWitness) -> Option<(usize, usize, usize)> {
    let m = &w.monoid;
    let e = m.neutral();
    let n = m.order();
    for x in 0..n {
        for y in 0..n {
            let xy = m.get(x, y);
            for z in 0..n {
                if m.get(xy, z) == e && x != e && y != e && z != e {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

impl fmt::Display for WMonoidWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.monoid.op().universe();
        write!(
            f,
            "W-monoid of order {} with a={} e={}",
            self.monoid.order(),
            names.name(self.a),
            names.name(self.e())
        )
    }
}

impl WMonoidWitness {
    /// Short reason string used in reports.
    pub fn summary(&self) -> alloc::string::String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::relabel_binary;
    use crate::fixtures;

    fn group_z2() -> MonoidDesc {
        fixtures::cyclic_group(2)
    }

    fn trivial_monoid() -> MonoidDesc {
        MonoidDesc::new(BinaryOpDesc::from_fn(1, |_, _| 0).unwrap(), 0).unwrap()
    }

    #[test]
    fn ex46_is_a_w_monoid() {
        let w = check_w_monoid(&fixtures::ex46_monoid()).unwrap();
        assert_eq!((w.a(), w.e()), (4, 5));
        assert_eq!(w.checks(), WChecks { w1: true, w2: true, w3: true });
        assert_eq!(w.monoid().get(4, 4), 5);
    }

    #[test]
    fn two_element_group_fails_w3() {
        let f = check_w_monoid(&group_z2()).unwrap_err();
        assert_eq!(f.condition, WCondition::W3);
        assert_eq!(f.candidate, Some(1));
    }

    #[test]
    fn z4_fails_w1() {
        let f = check_w_monoid(&fixtures::cyclic_group(4)).unwrap_err();
        assert_eq!(f.condition, WCondition::W1);
        // a = 2 is the only square root of e; 1 + 3 = 0 breaks it
        assert_eq!(f.candidate, Some(2));
        assert_eq!(f.pair, Some((1, 3)));
    }

    #[test]
    fn trivial_monoid_has_no_candidate() {
        let f = check_w_monoid(&trivial_monoid()).unwrap_err();
        assert_eq!(f.candidate, None);
    }

    #[test]
    fn rees_examples() {
        let r = check_rees_t_iso(&fixtures::ex46_monoid(), 4, 5).unwrap();
        assert!(r.ideal_ok && r.iso_to_t && !r.degenerate);
        let r = check_rees_t_iso(&fixtures::cyclic_group(4), 2, 0).unwrap();
        assert!(!r.iso_to_t);
        let r = check_rees_t_iso(&group_z2(), 1, 0).unwrap();
        assert!(r.degenerate && r.ideal_ok);
        assert!(check_rees_t_iso(&group_z2(), 1, 1).is_err());
    }

    #[test]
    fn rees_quotient_of_ex46_matches_signs() {
        use ReesClass::*;
        let t = check_rees_t_iso(&fixtures::ex46_monoid(), 4, 5).unwrap().quotient_table.unwrap();
        assert_eq!(t, [[E, Zero, A], [Zero, Zero, Zero], [A, Zero, E]]);
    }

    #[test]
    fn involution_examples() {
        let m = from_involution(&fixtures::s3(), fixtures::S3_TRANSPOSITION).unwrap();
        assert_eq!(m.order(), 8);
        let w = check_w_monoid(&m).unwrap();
        assert_eq!((w.a(), w.e()), (6, 7));

        let m = from_involution(&group_z2(), 1).unwrap();
        assert_eq!(check_w_monoid(&m).unwrap_err().condition, WCondition::W3);

        let m = from_involution(&trivial_monoid(), 0).unwrap();
        assert_eq!(check_w_monoid(&m).unwrap_err().condition, WCondition::W3);

        assert_eq!(from_involution(&fixtures::cyclic_group(4), 1), Err(AlgError::NotInvolution(1)));
    }

    #[test]
    fn bitranslation_examples() {
        assert_eq!(verify_bitranslation(&fixtures::ex46_bitranslation()), Ok(()));
        let s3 = fixtures::s3();
        for g in 0..6 {
            assert_eq!(verify_bitranslation(&Bitranslation::inner(s3.op().clone(), g).unwrap()), Ok(()));
        }
        let bt = fixtures::ex46_bitranslation();
        let broken = Bitranslation::new(bt.carrier().clone(), bt.left().to_vec(), vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(
            verify_bitranslation(&broken),
            Err(AlgError::Bitranslation { law: BitranslationLaw::Linking, .. })
        ));
    }

    #[test]
    fn construction_examples() {
        assert_eq!(from_bitranslation(&fixtures::ex46_bitranslation()).unwrap(), fixtures::ex46_monoid());
        assert_eq!(from_bitranslation(&fixtures::w4_bitranslation()).unwrap(), fixtures::w4_monoid());
        let same = Bitranslation::new(fixtures::lz2(), vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(
            from_bitranslation(&same),
            Err(AlgError::BitranslationSide(SideCondition::Distinct))
        );
    }

    #[test]
    fn decompose_roundtrips() {
        for m in [fixtures::ex46_monoid(), fixtures::w4_monoid()] {
            let w = check_w_monoid(&m).unwrap();
            let bt = decompose(&w);
            let back = from_bitranslation(&bt).unwrap();
            let placed = relabel_binary(m.op(), &w.canonical_placement());
            assert_eq!(back.op().table(), placed.table());
        }
        let w = check_w_monoid(&fixtures::ex46_monoid()).unwrap();
        assert_eq!(decompose(&w), fixtures::ex46_bitranslation());
        let w = check_w_monoid(&fixtures::w4_monoid()).unwrap();
        assert_eq!(decompose(&w), fixtures::w4_bitranslation());
    }

    #[test]
    fn decompose_involution_construction_is_inner() {
        let s3 = fixtures::s3();
        let t = fixtures::S3_TRANSPOSITION;
        let w = check_w_monoid(&from_involution(&s3, t).unwrap()).unwrap();
        let bt = decompose(&w);
        assert_eq!(bt.carrier().table(), s3.op().table());
        assert_eq!(bt, Bitranslation::inner(s3.op().clone(), t).unwrap());
    }

    #[test]
    fn enumerate_examples() {
        let found = enumerate_bitranslations(&fixtures::lz2()).unwrap();
        assert_eq!(found, vec![fixtures::w4_bitranslation()]);
        assert!(enumerate_bitranslations(&fixtures::z2()).unwrap().is_empty());
        let ex = enumerate_bitranslations(&fixtures::ex46_semigroup()).unwrap();
        assert!(ex.contains(&fixtures::ex46_bitranslation()));
        let big = BinaryOpDesc::from_fn(7, |x, _| x).unwrap();
        assert_eq!(enumerate_bitranslations(&big), Err(AlgError::OrderCap { order: 7, cap: 6 }));
    }

    #[test]
    fn left_zero_bitranslations_by_exhaust() {
        // all 4 × 4 map pairs on the left-zero band, checked by hand-rolled rules
        let s = fixtures::lz2();
        let mut valid = Vec::new();
        for lc in 0..4usize {
            for rc in 0..4usize {
                let l = vec![lc / 2, lc % 2];
                let r = vec![rc / 2, rc % 2];
                let laws = (0..2).all(|x| (0..2).all(|y| {
                    l[s.get(x, y)] == s.get(l[x], y)
                        && r[s.get(x, y)] == s.get(x, r[y])
                        && s.get(x, l[y]) == s.get(r[x], y)
                }));
                let inv = |m: &Vec<usize>| m[m[0]] == 0 && m[m[1]] == 1;
                if laws && inv(&l) && inv(&r) && l != r && (0..2).all(|x| l[r[x]] == r[l[x]]) {
                    valid.push((l, r));
                }
            }
        }
        assert_eq!(valid, vec![(vec![1, 0], vec![0, 1])]);
    }

    #[test]
    fn in_semigroup_builder() {
        let w = check_w_monoid(&fixtures::ex46_monoid()).unwrap();
        let f = in_semigroup_from_w_monoid(&w, 3).unwrap();
        assert_eq!((f.order(), f.arity()), (5, 3));
        assert!(crate::derive::neutral_elements(&f).is_empty());
        assert_eq!(crate::assoc::check_associativity(&f).unwrap(), None);
        assert_eq!(in_semigroup_from_w_monoid(&w, 4), Err(AlgError::EvenArity(4)));

        let w4 = check_w_monoid(&fixtures::w4_monoid()).unwrap();
        assert_eq!(in_semigroup_from_w_monoid(&w4, 3).unwrap().order(), 3);
        assert_eq!(in_semigroup_from_w_monoid(&w4, 5).unwrap().order(), 3);
    }

    #[test]
    fn parity_examples() {
        let w = check_w_monoid(&fixtures::ex46_monoid()).unwrap();
        let (a, e) = (w.a(), w.e());
        assert_eq!(parity_check(&w, &[a, a]).unwrap(), e);
        assert_eq!(parity_check(&w, &[a, e, a, e, a]).unwrap(), a);
        assert_eq!(parity_check(&w, &[e, e, e, e]).unwrap(), e);
        assert_eq!(parity_check(&w, &[a, 0]), Err(AlgError::OutsidePair(0)));
    }

    #[test]
    fn no_triple_factorization_of_e() {
        for m in [fixtures::ex46_monoid(), fixtures::w4_monoid()] {
            let w = check_w_monoid(&m).unwrap();
            assert_eq!(triple_factorization_violation(&w), None);
        }
    }

    #[test]
    fn ex46_carrier_admits_no_involution_route() {
        // the involution construction needs S to have a neutral element
        assert_eq!(fixtures::ex46_semigroup().identity(), None);
    }
}
