//! Small named structures used throughout the tests, the CLI and the
//! shipped `.alg` files.
//!
//! | name  | kind          | description                                              |
//! |-------|---------------|----------------------------------------------------------|
//! | AFF2  | ternary       | `x − y + z mod 2` (equal to EXTZ2)                       |
//! | AFF3  | ternary       | `x − y + z mod 3`                                        |
//! | EXTZ2 | ternary       | `x + y + z mod 2`                                        |
//! | LZ2   | binary        | left-zero band `x∘y = x` on two elements                 |
//! | S3    | monoid        | symmetric group on `{0,1,2}`                             |
//! | EX46  | monoid        | W-monoid from `(Z₂×Z₂, (x,y)∘(x′,y′) = (x+x′, y′))`      |
//! | W4    | monoid        | W-monoid from LZ2 with `L = swap`, `R = id`              |
//!
//! S3 lists the permutations of `{0,1,2}` in lexicographic one-line order:
//! `0 = 012` (identity), `1 = 021`, `2 = 102`, `3 = 120`, `4 = 201`,
//! `5 = 210`, and multiplies them by composition `(p∘q)(i) = p(q(i))`.
//! Index 1 (`021`, the transposition of 1 and 2) is the involution used for
//! the order-8 W-monoid.
//!
//! In EX46 the pair `(x, y)` has index `2x + y`; `a = 4` and `e = 5`.
//! In W4, `a = 2` and `e = 3`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::op::{BinaryOpDesc, FiniteNaryOp, MonoidDesc, Universe};
use crate::wmonoid::Bitranslation;

pub fn aff2() -> FiniteNaryOp {
    FiniteNaryOp::from_fn(2, 3, |a| (a[0] + 2 - a[1] + a[2]) % 2).expect("AFF2")
}

pub fn aff3() -> FiniteNaryOp {
    FiniteNaryOp::from_fn(3, 3, |a| (a[0] + 3 - a[1] + a[2]) % 3).expect("AFF3")
}

pub fn extz2() -> FiniteNaryOp {
    FiniteNaryOp::from_fn(2, 3, |a| (a[0] + a[1] + a[2]) % 2).expect("EXTZ2")
}

pub fn lz2() -> BinaryOpDesc {
    BinaryOpDesc::from_fn(2, |x, _| x).expect("LZ2")
}

pub fn z2() -> BinaryOpDesc {
    BinaryOpDesc::from_fn(2, |x, y| (x + y) % 2).expect("Z2")
}

pub fn cyclic_group(k: usize) -> MonoidDesc {
    MonoidDesc::new(BinaryOpDesc::from_fn(k, |x, y| (x + y) % k).expect("Z_k"), 0).expect("Z_k monoid")
}

pub const S3_PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Index of the transposition `021` in [`s3`].
pub const S3_TRANSPOSITION: usize = 1;

pub fn s3() -> MonoidDesc {
    let perms = S3_PERMUTATIONS;
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    let op = BinaryOpDesc::from_fn(6, |x, y| {
        let (p, q) = (perms[x], perms[y]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    })
    .expect("S3");
    let names: Vec<String> = perms
        .iter()
        .map(|p| p.iter().map(|d| char::from(b'0' + *d as u8)).collect())
        .collect();
    let op = op.with_universe(Universe::with_names(6, names).expect("names")).expect("S3");
    MonoidDesc::new(op, 0).expect("S3 monoid")
}

/// `S = Z₂×Z₂` with `(x,y)∘(x′,y′) = (x+x′, y′)`; `(x,y)` has index `2x+y`.
pub fn ex46_semigroup() -> BinaryOpDesc {
    BinaryOpDesc::from_fn(4, |s, t| {
        let (x, _y) = (s / 2, s % 2);
        let (x2, y2) = (t / 2, t % 2);
        2 * ((x + x2) % 2) + y2
    })
    .expect("EX46 semigroup")
}

/// `L(x,y) = (1+x, y)` and `R(x,y) = (x+1, y+1)` on [`ex46_semigroup`].
pub fn ex46_bitranslation() -> Bitranslation {
    let left = (0..4).map(|s| 2 * ((s / 2 + 1) % 2) + s % 2).collect();
    let right = (0..4).map(|s| 2 * ((s / 2 + 1) % 2) + (s % 2 + 1) % 2).collect();
    Bitranslation::new(ex46_semigroup(), left, right).expect("EX46 bitranslation")
}

/// The order-6 W-monoid, written out from the case table directly.
pub fn ex46_monoid() -> MonoidDesc {
    let s = ex46_semigroup();
    let bt = ex46_bitranslation();
    let (a, e) = (4, 5);
    let op = BinaryOpDesc::from_fn(6, |x, y| match (x, y) {
        (x, y) if x == e => y,
        (x, y) if y == e => x,
        (x, y) if x == a && y == a => e,
        (x, y) if x == a => bt.left()[y],
        (x, y) if y == a => bt.right()[x],
        (x, y) => s.get(x, y),
    })
    .expect("EX46");
    MonoidDesc::new(op, e).expect("EX46 monoid")
}

/// `(L, R) = (swap, id)` on the left-zero band of order 2.
pub fn w4_bitranslation() -> Bitranslation {
    Bitranslation::new(lz2(), vec![1, 0], vec![0, 1]).expect("W4 bitranslation")
}

pub fn w4_monoid() -> MonoidDesc {
    let op = BinaryOpDesc::from_fn(4, |x, y| match (x, y) {
        (3, y) => y,
        (x, 3) => x,
        (2, 2) => 3,
        (2, y) => 1 - y,
        (x, 2) => x,
        (x, _) => x,
    })
    .expect("W4");
    MonoidDesc::new(op, 3).expect("W4 monoid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aff2_equals_extz2() {
        assert_eq!(aff2(), extz2());
    }

    #[test]
    fn s3_is_a_nonabelian_group() {
        let g = s3();
        assert_eq!(g.neutral(), 0);
        assert!(!g.op().is_central(S3_TRANSPOSITION));
        assert_eq!(g.get(S3_TRANSPOSITION, S3_TRANSPOSITION), 0);
        for x in 0..6 {
            assert!((0..6).any(|y| g.get(x, y) == 0));
        }
        // 021 ∘ 102 = 201 under p(q(i))
        assert_eq!(g.get(1, 2), 4);
    }

    #[test]
    fn ex46_semigroup_has_no_neutral() {
        assert!(ex46_semigroup().is_associative());
        assert_eq!(ex46_semigroup().identity(), None);
    }
}
