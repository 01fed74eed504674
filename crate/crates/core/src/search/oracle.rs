//! Naive enumeration of every candidate table, for cross-checking the
//! propagating search at orders up to 3.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{AlgError, Result};
use crate::op::{odometer_step, FiniteNaryOp};
use crate::op::{BinaryOpDesc, MonoidDesc};

/// Largest carrier the oracles accept.
pub const ORACLE_MAX_ORDER: usize = 3;

/// Compares the n-ary fold of the `m × m` table against `F` on `{0..k}ⁿ`.
fn fold_matches(table: &[usize], m: usize, f: &FiniteNaryOp) -> bool {
    let k = f.order();
    let n = f.arity();
    let mut xs = vec![0usize; n];
    let mut code = 0usize;
    loop {
        let v = xs[1..].iter().fold(xs[0], |acc, &x| table[acc * m + x]);
        if v != f.table()[code] as usize {
            return false;
        }
        code += 1;
        if !odometer_step(&mut xs, k) {
            return true;
        }
    }
}

fn associative(table: &[usize], m: usize) -> bool {
    (0..m).all(|x| {
        (0..m).all(|y| {
            let xy = table[x * m + y];
            (0..m).all(|z| table[xy * m + z] == table[x * m + table[y * m + z]])
        })
    })
}

/// Every associative binary table on `X` whose fold is `F`, in
/// lexicographic order.
pub fn brute_force_reductions(f: &FiniteNaryOp) -> Result<Vec<BinaryOpDesc>> {
    let k = f.order();
    if k > ORACLE_MAX_ORDER {
        return Err(AlgError::OrderCap { order: k, cap: ORACLE_MAX_ORDER });
    }
    let mut table = vec![0usize; k * k];
    let mut out = Vec::new();
    loop {
        if fold_matches(&table, k, f) && associative(&table, k) {
            let t = table.iter().map(|&v| v as u16).collect();
            out.push(BinaryOpDesc::new(f.universe().clone(), t)?);
        }
        if !odometer_step(&mut table, k) {
            break;
        }
    }
    Ok(out)
}

/// Every monoid on `X ∪ {e}` (`e` = index `order`) whose fold restricted
/// to `X` is `F`, in lexicographic order of the `X × X` block.
pub fn brute_force_adjunctions(f: &FiniteNaryOp) -> Result<Vec<MonoidDesc>> {
    let k = f.order();
    if k > ORACLE_MAX_ORDER {
        return Err(AlgError::OrderCap { order: k, cap: ORACLE_MAX_ORDER });
    }
    let m = k + 1;
    let mut block = vec![0usize; k * k];
    let mut table = vec![0usize; m * m];
    for x in 0..m {
        table[k * m + x] = x;
        table[x * m + k] = x;
    }
    let mut out = Vec::new();
    loop {
        for x in 0..k {
            table[x * m..x * m + k].copy_from_slice(&block[x * k..x * k + k]);
        }
        if fold_matches(&table, m, f) && associative(&table, m) {
            let t = table.iter().map(|&v| v as u16).collect();
            let b = BinaryOpDesc::new(crate::op::Universe::new(m)?, t)?;
            out.push(MonoidDesc::new(b, k)?);
        }
        if !odometer_step(&mut block, m) {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_reductions(&fixtures::extz2()).unwrap().len(), 2);
        assert!(brute_force_reductions(&fixtures::aff3()).unwrap().is_empty());
        assert!(brute_force_adjunctions(&fixtures::aff3()).unwrap().is_empty());
        assert!(!brute_force_adjunctions(&fixtures::extz2()).unwrap().is_empty());
    }

    #[test]
    fn oracle_refuses_large_orders() {
        let f = FiniteNaryOp::from_fn(4, 3, |a| a[0]).unwrap();
        assert_eq!(brute_force_reductions(&f), Err(AlgError::OrderCap { order: 4, cap: 3 }));
        assert_eq!(brute_force_adjunctions(&f), Err(AlgError::OrderCap { order: 4, cap: 3 }));
    }
}
