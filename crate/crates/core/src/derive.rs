//! Neutral elements, n-ary extensions of binary operations, and the
//! passage back from an n-ary operation with a neutral element to its
//! binary reduction.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::assoc::AssocCounterexample;
use crate::error::{AlgError, Result};
use crate::op::{odometer_step, pow_u128, BinaryOpDesc, Caps, FiniteNaryOp, MonoidDesc, Universe};

/// All `e` with `F(e^{k-1}, x, e^{n-k}) = x` for every `x` and every `k`.
pub fn neutral_elements(f: &FiniteNaryOp) -> Vec<usize> {
    let n = f.arity();
    let order = f.order();
    (0..order)
        .filter(|&e| {
            (0..n).all(|k| {
                (0..order).all(|x| f.eval((0..n).map(|j| if j == k { x } else { e })) == x)
            })
        })
        .collect()
}

/// The n-ary operation `x₁∘x₂∘…∘xₙ` folded from the left.
pub fn nary_extension(b: &BinaryOpDesc, n: usize) -> Result<FiniteNaryOp> {
    if n < 2 {
        return Err(AlgError::BadArity(n));
    }
    let order = b.order();
    let caps = Caps::default();
    let cells = pow_u128(order, n);
    if cells > caps.max_cells as u128 {
        return Err(AlgError::CellCapExceeded { cells, cap: caps.max_cells });
    }
    // the arity-(k+1) table is the arity-k table with one more fold step
    let mut table: Vec<u16> = b.table().to_vec();
    for _ in 2..n {
        let mut next = Vec::with_capacity(table.len() * order);
        for &prefix in &table {
            let row = prefix as usize * order;
            next.extend_from_slice(&b.table()[row..row + order]);
        }
        table = next;
    }
    FiniteNaryOp::new(b.universe().clone(), n, table)
}

/// Whether `F` is the n-ary extension of `b`.
pub fn is_reduction(f: &FiniteNaryOp, b: &BinaryOpDesc) -> Result<bool> {
    if f.order() != b.order() {
        return Err(AlgError::UniverseMismatch {
            left: f.order(),
            right: b.order(),
        });
    }
    Ok(nary_extension(b, f.arity())?.table() == f.table())
}

/// The unique reduction of `F` having `e` as neutral element:
/// `x∘y = F(x, e^{n-2}, y)`.
pub fn reduce_via_neutral(f: &FiniteNaryOp, e: usize) -> Result<MonoidDesc> {
    let order = f.order();
    let n = f.arity();
    if e >= order {
        return Err(AlgError::IndexOutOfRange { index: e, order });
    }
    if !neutral_elements(f).contains(&e) {
        return Err(AlgError::NotNeutral(e));
    }
    let b = BinaryOpDesc::from_fn(order, |x, y| {
        f.eval(core::iter::once(x).chain((0..n - 2).map(|_| e)).chain(core::iter::once(y)))
    })?
    .with_universe(f.universe().clone())?;
    let m = MonoidDesc::new(b, e)?;
    if !is_reduction(f, m.op())? {
        // only reachable when F itself is not associative
        return match crate::assoc::check_associativity(f)? {
            Some(ce) => Err(AlgError::NotAssociative(ce)),
            None => unreachable!("an associative operation with a neutral element reduces"),
        };
    }
    debug_assert!(k_fold_law_holds(f, &m));
    Ok(m)
}

/// `x₁∘…∘x_k = F(x₁, …, x_k, e^{n-k})` for all `k = 1…n`.
pub fn k_fold_law_holds(f: &FiniteNaryOp, m: &MonoidDesc) -> bool {
    let n = f.arity();
    let order = f.order();
    let e = m.neutral();
    (1..=n).all(|k| {
        let mut xs = vec![0usize; k];
        loop {
            let lhs = m.op().fold(&xs);
            let rhs = f.eval(xs.iter().copied().chain((k..n).map(|_| e)));
            if lhs != rhs {
                return false;
            }
            if !odometer_step(&mut xs, order) {
                return true;
            }
        }
    })
}

/// Result of restricting an operation to a subset of its carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    /// The re-indexed operation; element `k` is `subset[k]`.
    Closed(FiniteNaryOp),
    /// First argument tuple (original indices) whose image leaves the subset.
    NotClosed(Vec<usize>),
}

impl Restriction {
    pub fn closed(self) -> Option<FiniteNaryOp> {
        match self {
            Restriction::Closed(f) => Some(f),
            Restriction::NotClosed(_) => None,
        }
    }
}

/// Restricts `F` to `subset` (strictly increasing, non-empty).
pub fn restrict(f: &FiniteNaryOp, subset: &[usize]) -> Result<Restriction> {
    if subset.is_empty() || subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AlgError::BadSubset);
    }
    let order = f.order();
    if let Some(&bad) = subset.iter().find(|&&x| x >= order) {
        return Err(AlgError::IndexOutOfRange { index: bad, order });
    }
    let mut position = vec![usize::MAX; order];
    for (k, &x) in subset.iter().enumerate() {
        position[x] = k;
    }
    let n = f.arity();
    let m = subset.len();
    let mut table = Vec::with_capacity(m.pow(n as u32));
    let mut digits = vec![0usize; n];
    loop {
        let v = f.eval(digits.iter().map(|&d| subset[d]));
        if position[v] == usize::MAX {
            return Ok(Restriction::NotClosed(digits.iter().map(|&d| subset[d]).collect()));
        }
        table.push(position[v] as u16);
        if !odometer_step(&mut digits, m) {
            break;
        }
    }
    let universe = match f.universe().names() {
        Some(names) => Universe::with_names(m, subset.iter().map(|&x| names[x].clone()).collect())?,
        None => Universe::new(m)?,
    };
    Ok(Restriction::Closed(FiniteNaryOp::new(universe, n, table)?))
}

/// Adjoins a fresh neutral element (index `order`) to a semigroup.
pub fn adjoin_identity(b: &BinaryOpDesc) -> Result<MonoidDesc> {
    if let Some((x, y, z)) = b.associativity_violation() {
        return Err(AlgError::NotAssociative(AssocCounterexample {
            position: 1,
            arguments: vec![x, y, z],
            lhs: b.get(b.get(x, y), z),
            rhs: b.get(x, b.get(y, z)),
        }));
    }
    let order = b.order();
    let e = order;
    let ext = BinaryOpDesc::from_fn(order + 1, |x, y| {
        if x == e {
            y
        } else if y == e {
            x
        } else {
            b.get(x, y)
        }
    })?;
    let ext = match b.universe().names() {
        Some(names) => {
            let mut names = names.to_vec();
            names.push(fresh_name(&names, "e"));
            ext.with_universe(Universe::with_names(order + 1, names)?)?
        }
        None => ext,
    };
    MonoidDesc::new(ext, e)
}

pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = String::from(base);
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::assoc::check_associativity;

    fn add_mod(k: usize) -> BinaryOpDesc {
        BinaryOpDesc::from_fn(k, |x, y| (x + y) % k).unwrap()
    }

    #[test]
    fn neutral_element_examples() {
        let ext3 = nary_extension(&add_mod(3), 3).unwrap();
        assert_eq!(neutral_elements(&ext3), vec![0]);
        assert!(neutral_elements(&fixtures::aff3()).is_empty());
        // 1 + 1 + x = x as well, so both elements are neutral
        assert_eq!(neutral_elements(&fixtures::extz2()), vec![0, 1]);
    }

    #[test]
    fn aff3_has_no_neutral_by_brute_force() {
        // F(e,x,e) = 2e - x = x needs 2e ≡ 2x for every x
        let f = fixtures::aff3();
        for e in 0..3 {
            assert!((0..3).any(|x| f.apply(&[e, x, e]).unwrap() != x));
        }
    }

    #[test]
    fn extension_examples() {
        assert_eq!(nary_extension(&add_mod(2), 3).unwrap(), fixtures::extz2());
        let lz = fixtures::lz2();
        let f = nary_extension(&lz, 4).unwrap();
        assert_eq!(f, FiniteNaryOp::from_fn(2, 4, |a| a[0]).unwrap());
        let f3 = nary_extension(&add_mod(3), 3).unwrap();
        assert_eq!(f3, FiniteNaryOp::from_fn(3, 3, |a| (a[0] + a[1] + a[2]) % 3).unwrap());
    }

    #[test]
    fn reduction_examples() {
        let extz2 = fixtures::extz2();
        assert!(is_reduction(&extz2, &add_mod(2)).unwrap());
        let plus_one = BinaryOpDesc::from_fn(2, |x, y| (x + y + 1) % 2).unwrap();
        assert!(plus_one.is_associative());
        assert!(is_reduction(&extz2, &plus_one).unwrap());
        let aff3 = fixtures::aff3();
        assert!(!is_reduction(&aff3, &add_mod(3)).unwrap());
        // the fold x+y+z differs from x-y+z at (0,1,0)
        assert_ne!(aff3.apply(&[0, 1, 0]).unwrap(), 1);
        assert!(matches!(is_reduction(&aff3, &add_mod(2)), Err(AlgError::UniverseMismatch { .. })));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_via_neutral(&fixtures::extz2(), 0).unwrap().op(), &add_mod(2));
        let f3 = nary_extension(&add_mod(3), 3).unwrap();
        assert_eq!(reduce_via_neutral(&f3, 0).unwrap().op(), &add_mod(3));
        let shifted = BinaryOpDesc::from_fn(2, |x, y| (x + y + 1) % 2).unwrap();
        assert_eq!(reduce_via_neutral(&fixtures::extz2(), 1).unwrap().op(), &shifted);
        assert_eq!(reduce_via_neutral(&fixtures::aff3(), 0), Err(AlgError::NotNeutral(0)));
    }

    #[test]
    fn reduce_recovers_adjoined_monoid() {
        let m = adjoin_identity(&add_mod(2)).unwrap();
        let star = nary_extension(m.op(), 3).unwrap();
        let back = reduce_via_neutral(&star, m.neutral()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn restrict_examples() {
        let r = restrict(&fixtures::extz2(), &[0]).unwrap().closed().unwrap();
        assert_eq!((r.order(), r.arity(), r.table()), (1, 3, &[0u16][..]));

        let ex46 = fixtures::ex46_monoid();
        let x: Vec<usize> = (0..5).collect();
        let f3 = nary_extension(ex46.op(), 3).unwrap();
        let r3 = restrict(&f3, &x).unwrap().closed().unwrap();
        assert_eq!(r3.order(), 5);
        let f4 = nary_extension(ex46.op(), 4).unwrap();
        assert_eq!(restrict(&f4, &x).unwrap(), Restriction::NotClosed(vec![4, 4, 4, 4]));
        assert_eq!(restrict(&f4, &[]), Err(AlgError::BadSubset));
        assert_eq!(restrict(&f4, &[1, 0]), Err(AlgError::BadSubset));
    }

    #[test]
    fn adjoin_examples() {
        let m = adjoin_identity(&add_mod(2)).unwrap();
        assert_eq!((m.order(), m.neutral()), (3, 2));
        let lz = adjoin_identity(&fixtures::lz2()).unwrap();
        assert_eq!(lz.op().table(), &[0, 0, 0, 1, 1, 1, 0, 1, 2]);
        let one = adjoin_identity(&BinaryOpDesc::from_fn(1, |_, _| 0).unwrap()).unwrap();
        assert_eq!(one.op().table(), &[0, 0, 0, 1]);
        let minus = BinaryOpDesc::from_fn(3, |x, y| (x + 3 - y) % 3).unwrap();
        assert!(matches!(adjoin_identity(&minus), Err(AlgError::NotAssociative(_))));
    }

    #[test]
    fn adjoined_extension_restricts_to_original_extension() {
        for b in [add_mod(2), add_mod(3), fixtures::lz2()] {
            let m = adjoin_identity(&b).unwrap();
            let old: Vec<usize> = (0..b.order()).collect();
            for n in 2..=5 {
                let big = nary_extension(m.op(), n).unwrap();
                let r = restrict(&big, &old).unwrap().closed().unwrap();
                assert_eq!(r, nary_extension(&b, n).unwrap());
            }
        }
    }

    #[test]
    fn old_neutral_is_displaced() {
        let f = fixtures::extz2();
        let m = adjoin_identity(reduce_via_neutral(&f, 0).unwrap().op()).unwrap();
        let star = nary_extension(m.op(), 3).unwrap();
        let ns = neutral_elements(&star);
        assert!(!ns.contains(&0));
        assert_eq!(ns, vec![m.neutral()]);
    }

    #[test]
    fn extension_of_associative_table_is_associative() {
        for b in [add_mod(2), add_mod(3), fixtures::lz2()] {
            for n in 2..=5 {
                assert_eq!(check_associativity(&nary_extension(&b, n).unwrap()).unwrap(), None);
            }
        }
    }
}
