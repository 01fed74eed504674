//! The associativity system for n-ary operations.
//!
//! `F` is associative when, for every `i` in `1..=n-1` and every
//! `(x₁, …, x_{2n-1})`, bracketing the inner application at `i` or at `i+1`
//! gives the same value. Every position is checked; no reduced identity set
//! is assumed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{AlgError, Result};
use crate::op::{odometer_step, pow_u128, Caps, FiniteNaryOp};

/// A failing instance of the associativity system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssocCounterexample {
    /// Bracket position `i`, 1-based, in `1..=n-1`.
    pub position: usize,
    /// The `2n-1` arguments.
    pub arguments: Vec<usize>,
    /// Value with the inner application starting at `xᵢ`.
    pub lhs: usize,
    /// Value with the inner application starting at `x_{i+1}`.
    pub rhs: usize,
}

impl AssocCounterexample {
    /// Re-evaluates both bracketings and confirms they match the record.
    pub fn reproduces(&self, f: &FiniteNaryOp) -> bool {
        let n = f.arity();
        if self.arguments.len() != 2 * n - 1 || self.position == 0 || self.position >= n {
            return false;
        }
        if self.arguments.iter().any(|&x| x >= f.order()) {
            return false;
        }
        let (l, r) = bracketings(f, &self.arguments, self.position);
        l == self.lhs && r == self.rhs && l != r
    }
}

impl fmt::Display for AssocCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={} args=(", self.position)?;
        for (k, x) in self.arguments.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ") lhs={} rhs={}", self.lhs, self.rhs)
    }
}

/// Inner application at 0-based offset `start`, then the outer one.
#[inline]
fn bracket_at(f: &FiniteNaryOp, xs: &[usize], start: usize) -> usize {
    let n = f.arity();
    let inner = f.eval(xs[start..start + n].iter().copied());
    f.eval(
        xs[..start]
            .iter()
            .copied()
            .chain(core::iter::once(inner))
            .chain(xs[start + n..].iter().copied()),
    )
}

/// Both sides of the identity at 1-based position `i`.
#[inline]
pub(crate) fn bracketings(f: &FiniteNaryOp, xs: &[usize], i: usize) -> (usize, usize) {
    (bracket_at(f, xs, i - 1), bracket_at(f, xs, i))
}

/// Returns the lexicographically first failing `(i, x₁…x_{2n-1})`, or `None`
/// when `F` is associative.
pub fn check_associativity(f: &FiniteNaryOp) -> Result<Option<AssocCounterexample>> {
    check_associativity_with(f, &Caps::default())
}

pub fn check_associativity_with(f: &FiniteNaryOp, caps: &Caps) -> Result<Option<AssocCounterexample>> {
    let n = f.arity();
    let order = f.order();
    let len = 2 * n - 1;
    let instances = pow_u128(order, len);
    if instances > caps.max_instances as u128 {
        return Err(AlgError::InstanceCapExceeded {
            instances,
            cap: caps.max_instances,
        });
    }
    let mut xs = vec![0usize; len];
    for i in 1..n {
        loop {
            let (lhs, rhs) = bracketings(f, &xs, i);
            if lhs != rhs {
                return Ok(Some(AssocCounterexample {
                    position: i,
                    arguments: xs,
                    lhs,
                    rhs,
                }));
            }
            if !odometer_step(&mut xs, order) {
                break;
            }
        }
    }
    Ok(None)
}

pub fn is_associative(f: &FiniteNaryOp) -> Result<bool> {
    Ok(check_associativity(f)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Independent oracle: builds both sides by explicit vectors.
    fn oracle_first_failure(f: &FiniteNaryOp) -> Option<(usize, Vec<usize>)> {
        let n = f.arity();
        let order = f.order();
        let len = 2 * n - 1;
        let total = order.pow(len as u32);
        for i in 1..n {
            for code in 0..total {
                let mut xs = vec![0; len];
                let mut c = code;
                for k in (0..len).rev() {
                    xs[k] = c % order;
                    c /= order;
                }
                let mut l = xs[..i - 1].to_vec();
                l.push(f.apply(&xs[i - 1..i - 1 + n]).unwrap());
                l.extend_from_slice(&xs[i - 1 + n..]);
                let mut r = xs[..i].to_vec();
                r.push(f.apply(&xs[i..i + n]).unwrap());
                r.extend_from_slice(&xs[i + n..]);
                if f.apply(&l).unwrap() != f.apply(&r).unwrap() {
                    return Some((i, xs));
                }
            }
        }
        None
    }

    #[test]
    fn aff3_is_associative() {
        let f = fixtures::aff3();
        assert!(oracle_first_failure(&f).is_none());
        assert_eq!(check_associativity(&f).unwrap(), None);
    }

    #[test]
    fn projection_is_associative() {
        let f = FiniteNaryOp::from_fn(2, 3, |a| a[0]).unwrap();
        assert_eq!(check_associativity(&f).unwrap(), None);
    }

    #[test]
    fn perturbed_aff3_fails_at_oracle_location() {
        let f = fixtures::aff3();
        let mut table = f.table().to_vec();
        table[0] = 1;
        let g = FiniteNaryOp::new(f.universe().clone(), 3, table).unwrap();
        let (i, xs) = oracle_first_failure(&g).unwrap();
        // Frozen from the oracle: first failure is i=1 at (0,0,0,0,0), lhs 1, rhs 2.
        assert_eq!((i, xs.clone()), (1, vec![0, 0, 0, 0, 0]));
        let ce = check_associativity(&g).unwrap().unwrap();
        assert_eq!(ce.position, i);
        assert_eq!(ce.arguments, xs);
        assert_eq!((ce.lhs, ce.rhs), (1, 2));
        assert!(ce.reproduces(&g));
    }

    #[test]
    fn instance_cap_is_a_clean_error() {
        let f = FiniteNaryOp::from_fn(11, 5, |_| 0).unwrap();
        assert!(matches!(check_associativity(&f), Err(AlgError::InstanceCapExceeded { .. })));
    }

    #[test]
    fn counterexamples_agree_with_oracle_on_small_tables() {
        // every binary table on 2 elements and a spread of ternary ones
        for code in 0u32..16 {
            let f = FiniteNaryOp::from_fn(2, 2, |a| ((code >> (a[0] * 2 + a[1])) & 1) as usize).unwrap();
            let got = check_associativity(&f).unwrap().map(|c| (c.position, c.arguments));
            assert_eq!(got, oracle_first_failure(&f));
        }
        for code in (0u32..256).step_by(7) {
            let f = FiniteNaryOp::from_fn(2, 3, |a| ((code >> (a[0] * 4 + a[1] * 2 + a[2])) & 1) as usize).unwrap();
            let got = check_associativity(&f).unwrap().map(|c| (c.position, c.arguments));
            assert_eq!(got, oracle_first_failure(&f));
        }
    }
}
