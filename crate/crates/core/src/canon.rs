//! Minimal-image canonical forms under relabeling of the carrier.

use alloc::vec;
use alloc::vec::Vec;

use crate::op::{BinaryOpDesc, FiniteNaryOp, MonoidDesc, Universe};

/// The lexicographically least table among all relabelings of an
/// operation. For monoids the neutral element is pinned to the last index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CanonicalForm {
    pub order: usize,
    pub arity: usize,
    pub table: Vec<u16>,
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Permutations of `0..n` fixing `n - 1`.
pub fn permutations_fixing_last(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .map(|mut p| {
            p.push(n - 1);
            p
        })
        .collect()
}

/// Table of `F` after renaming each `x` to `perm[x]`.
pub fn relabel_table(table: &[u16], order: usize, arity: usize, perm: &[usize]) -> Vec<u16> {
    let mut inv = vec![0usize; order];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    let mut out = vec![0u16; table.len()];
    let mut digits = vec![0usize; arity];
    for slot in out.iter_mut() {
        let src = digits.iter().fold(0usize, |acc, &d| acc * order + inv[d]);
        *slot = perm[table[src] as usize] as u16;
        crate::op::odometer_step(&mut digits, order);
    }
    out
}

pub fn relabel_binary(b: &BinaryOpDesc, perm: &[usize]) -> BinaryOpDesc {
    let t = relabel_table(b.table(), b.order(), 2, perm);
    BinaryOpDesc::new(Universe::new(b.order()).expect("order"), t).expect("relabeling keeps validity")
}

pub fn relabel_nary(f: &FiniteNaryOp, perm: &[usize]) -> FiniteNaryOp {
    let t = relabel_table(f.table(), f.order(), f.arity(), perm);
    FiniteNaryOp::new(Universe::new(f.order()).expect("order"), f.arity(), t).expect("relabeling keeps validity")
}

fn minimal_image(table: &[u16], order: usize, arity: usize, perms: &[Vec<usize>]) -> (Vec<u16>, Vec<usize>) {
    let mut best: Option<(Vec<u16>, Vec<usize>)> = None;
    for p in perms {
        let t = relabel_table(table, order, arity, p);
        if best.as_ref().is_none_or(|(b, _)| t < *b) {
            best = Some((t, p.clone()));
        }
    }
    best.expect("at least one permutation")
}

impl CanonicalForm {
    pub fn of_binary(b: &BinaryOpDesc) -> Self {
        let (table, _) = minimal_image(b.table(), b.order(), 2, &permutations(b.order()));
        CanonicalForm { order: b.order(), arity: 2, table }
    }

    pub fn of_nary(f: &FiniteNaryOp) -> Self {
        let (table, _) = minimal_image(f.table(), f.order(), f.arity(), &permutations(f.order()));
        CanonicalForm { order: f.order(), arity: f.arity(), table }
    }

    /// Canonical form with the neutral element moved to `order - 1`.
    pub fn of_monoid(m: &MonoidDesc) -> Self {
        let (table, _) = canonical_monoid_with_perm(m);
        CanonicalForm { order: m.order(), arity: 2, table }
    }

    pub fn to_binary(&self) -> Option<BinaryOpDesc> {
        (self.arity == 2).then(|| {
            BinaryOpDesc::new(Universe::new(self.order).expect("order"), self.table.clone()).expect("valid table")
        })
    }

    pub fn to_nary(&self) -> FiniteNaryOp {
        FiniteNaryOp::new(Universe::new(self.order).expect("order"), self.arity, self.table.clone()).expect("valid table")
    }
}

/// The canonical monoid table and the relabeling producing it.
pub fn canonical_monoid_with_perm(m: &MonoidDesc) -> (Vec<u16>, Vec<usize>) {
    let n = m.order();
    let e = m.neutral();
    // move e to the end first, then minimise over the permutations fixing it
    let shift: Vec<usize> = (0..n).map(|x| if x == e { n - 1 } else if x > e { x - 1 } else { x }).collect();
    let moved = relabel_table(m.op().table(), n, 2, &shift);
    let (table, p) = minimal_image(&moved, n, 2, &permutations_fixing_last(n));
    let composed = shift.iter().map(|&s| p[s]).collect();
    (table, composed)
}

pub fn canonical_monoid(m: &MonoidDesc) -> MonoidDesc {
    let (table, _) = canonical_monoid_with_perm(m);
    let op = BinaryOpDesc::new(Universe::new(m.order()).expect("order"), table).expect("valid");
    MonoidDesc::new(op, m.order() - 1).expect("relabeled monoid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(5).len(), 120);
        assert_eq!(permutations_fixing_last(4).len(), 6);
        assert!(permutations_fixing_last(4).iter().all(|p| p[3] == 3));
    }

    #[test]
    fn relabel_preserves_structure() {
        let m = fixtures::s3();
        let perm = vec![5, 4, 3, 2, 1, 0];
        let r = relabel_binary(m.op(), &perm);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(r.get(perm[x], perm[y]), perm[m.get(x, y)]);
            }
        }
    }

    #[test]
    fn canonical_monoid_keeps_neutral_last() {
        let m = canonical_monoid(&fixtures::s3());
        assert_eq!(m.neutral(), 5);
        assert_eq!(CanonicalForm::of_monoid(&m), CanonicalForm::of_monoid(&fixtures::s3()));
    }

    fn perm_from_seed(n: usize, mut seed: u64) -> Vec<usize> {
        let mut items: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        while !items.is_empty() {
            let k = (seed % items.len() as u64) as usize;
            seed /= items.len() as u64;
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            out.push(items.remove(k));
        }
        out
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent_and_relabeling_invariant(seed in any::<u64>(), pick in 0usize..4) {
            let b = match pick {
                0 => fixtures::ex46_semigroup(),
                1 => fixtures::s3().op().clone(),
                2 => fixtures::ex46_monoid().op().clone(),
                _ => fixtures::w4_monoid().op().clone(),
            };
            let c = CanonicalForm::of_binary(&b);
            prop_assert_eq!(CanonicalForm::of_binary(&c.to_binary().unwrap()), c.clone());
            let p = perm_from_seed(b.order(), seed);
            prop_assert_eq!(CanonicalForm::of_binary(&relabel_binary(&b, &p)), c);
        }

        #[test]
        fn monoid_canonical_form_is_relabeling_invariant(seed in any::<u64>()) {
            let m = fixtures::ex46_monoid();
            let p = perm_from_seed(m.order(), seed);
            let r = MonoidDesc::new(relabel_binary(m.op(), &p), p[m.neutral()]).unwrap();
            prop_assert_eq!(CanonicalForm::of_monoid(&r), CanonicalForm::of_monoid(&m));
        }

        #[test]
        fn nary_canonical_form_is_relabeling_invariant(seed in any::<u64>()) {
            let f = fixtures::aff3();
            let p = perm_from_seed(3, seed);
            prop_assert_eq!(CanonicalForm::of_nary(&relabel_nary(&f, &p)), CanonicalForm::of_nary(&f));
        }
    }
}
