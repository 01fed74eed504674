//! Catalog records: one table plus the certificates that justify its kind.
//!
//! Every field is always present so that a record's serialized layout is
//! fixed: `kind`, `order`, `arity`, `table`, `neutral`, `a`,
//! `bitranslation`, `w_monoid`, `reductions`, `adjunctions`.

use alloc::format;
use alloc::vec::Vec;

use crate::assoc::check_associativity;
use crate::canon::CanonicalForm;
use crate::error::{AlgError, Result};
use crate::op::{BinaryOpDesc, FiniteNaryOp, MonoidDesc, Universe};
use crate::search::{find_adjunctions, find_reductions, Clock, SearchConfig};
use crate::wmonoid::{check_w_monoid, decompose, in_semigroup_from_w_monoid, WMonoidWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RecordKind {
    Semigroup,
    Monoid,
    WMonoid,
    NarySemigroup,
    InSemigroup,
}

impl core::fmt::Display for RecordKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            RecordKind::Semigroup => "semigroup",
            RecordKind::Monoid => "monoid",
            RecordKind::WMonoid => "w_monoid",
            RecordKind::NarySemigroup => "nary_semigroup",
            RecordKind::InSemigroup => "in_semigroup",
        })
    }
}

/// `(L, R)` on `M ∖ {a, e}`, indexed as in [`decompose`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BitranslationCert {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CatalogRecord {
    pub kind: RecordKind,
    pub order: usize,
    pub arity: usize,
    /// Flat row-major table, first argument most significant.
    pub table: Vec<u16>,
    pub neutral: Option<usize>,
    /// Special element of a W-monoid (of `w_monoid` for IN records).
    pub a: Option<usize>,
    pub bitranslation: Option<BitranslationCert>,
    /// For IN records: the W-monoid on `order + 1` elements whose
    /// restriction is `table`, neutral element at index `order`.
    pub w_monoid: Option<Vec<u16>>,
    pub reductions: Option<u64>,
    pub adjunctions: Option<u64>,
}

fn fail(msg: impl Into<alloc::string::String>) -> AlgError {
    AlgError::Certificate(msg.into())
}

impl CatalogRecord {
    pub fn plain(kind: RecordKind, order: usize, arity: usize, table: Vec<u16>, neutral: Option<usize>) -> Self {
        CatalogRecord {
            kind,
            order,
            arity,
            table,
            neutral,
            a: None,
            bitranslation: None,
            w_monoid: None,
            reductions: None,
            adjunctions: None,
        }
    }

    /// Record of a W-monoid with its decomposition.
    pub fn w_monoid(w: &WMonoidWitness) -> Self {
        let bt = decompose(w);
        CatalogRecord {
            a: Some(w.a()),
            bitranslation: Some(BitranslationCert {
                left: bt.left().to_vec(),
                right: bt.right().to_vec(),
            }),
            ..Self::plain(RecordKind::WMonoid, w.monoid().order(), 2, w.monoid().op().table().to_vec(), Some(w.e()))
        }
    }

    /// Record of an IN-semigroup obtained by restricting `w` (whose neutral
    /// element must be its last index).
    pub fn in_semigroup(f: &FiniteNaryOp, w: &WMonoidWitness, reductions: Option<u64>, adjunctions: Option<u64>) -> Self {
        CatalogRecord {
            a: Some(w.a()),
            neutral: Some(w.e()),
            w_monoid: Some(w.monoid().op().table().to_vec()),
            reductions,
            adjunctions,
            ..Self::plain(RecordKind::InSemigroup, f.order(), f.arity(), f.table().to_vec(), None)
        }
    }

    pub fn op(&self) -> Result<FiniteNaryOp> {
        FiniteNaryOp::new(Universe::new(self.order)?, self.arity, self.table.clone())
    }

    fn monoid(&self, table: &[u16], order: usize) -> Result<MonoidDesc> {
        let neutral = self.neutral.ok_or_else(|| fail(format!("{} record without a neutral element", self.kind)))?;
        let b = BinaryOpDesc::new(Universe::new(order)?, table.to_vec())?;
        MonoidDesc::new(b, neutral)
    }

    fn witness(&self, m: &MonoidDesc) -> Result<WMonoidWitness> {
        let w = check_w_monoid(m).map_err(|e| fail(format!("{}", e)))?;
        if Some(w.a()) != self.a {
            return Err(fail(format!("special element is {}, record says {:?}", w.a(), self.a)));
        }
        Ok(w)
    }

    /// Re-checks the table and every structural certificate. Counts are
    /// only checked for consistency with the kind; [`Self::verify_counts`]
    /// recomputes them.
    pub fn verify(&self) -> Result<()> {
        let f = self.op()?;
        if let Some(c) = check_associativity(&f)? {
            return Err(AlgError::NotAssociative(c));
        }
        let binary = |kind| {
            if self.arity != 2 {
                Err(fail(format!("{} record with arity {}", kind, self.arity)))
            } else {
                Ok(())
            }
        };
        match self.kind {
            RecordKind::Semigroup => {
                binary(self.kind)?;
                let b = BinaryOpDesc::new(f.universe().clone(), self.table.clone())?;
                if CanonicalForm::of_binary(&b).table != self.table {
                    return Err(fail("semigroup table is not canonical"));
                }
            }
            RecordKind::Monoid | RecordKind::WMonoid => {
                binary(self.kind)?;
                let m = self.monoid(&self.table, self.order)?;
                if m.neutral() + 1 != self.order || CanonicalForm::of_monoid(&m).table != self.table {
                    return Err(fail(format!("{} table is not canonical", self.kind)));
                }
                if self.kind == RecordKind::WMonoid {
                    let w = self.witness(&m)?;
                    if let Some(cert) = &self.bitranslation {
                        let bt = decompose(&w);
                        if bt.left() != cert.left.as_slice() || bt.right() != cert.right.as_slice() {
                            return Err(fail("bitranslation differs from the decomposition"));
                        }
                    }
                }
            }
            RecordKind::NarySemigroup => {}
            RecordKind::InSemigroup => {
                let wt = self.w_monoid.as_ref().ok_or_else(|| fail("IN record without a W-monoid"))?;
                if self.neutral != Some(self.order) {
                    return Err(fail(format!("W-monoid neutral must be {}", self.order)));
                }
                let m = self.monoid(wt, self.order + 1)?;
                let w = self.witness(&m)?;
                if in_semigroup_from_w_monoid(&w, self.arity)?.table() != self.table.as_slice() {
                    return Err(fail("table is not the restriction of the W-monoid"));
                }
                if self.reductions.is_some_and(|r| r != 0) {
                    return Err(fail("an IN-semigroup has no reductions"));
                }
                if self.adjunctions == Some(0) {
                    return Err(fail("an IN-semigroup admits an adjunction"));
                }
            }
        }
        Ok(())
    }

    /// Recomputes the reduction and adjunction counts that are present.
    /// A search that does not finish is reported as a failure.
    pub fn verify_counts(&self, config: &SearchConfig, clock: &dyn Clock) -> Result<()> {
        let f = self.op()?;
        let all = SearchConfig { limit: None, ..*config };
        if let Some(r) = self.reductions {
            let out = find_reductions(&f, &all, clock);
            if !out.exhausted || out.solutions.len() as u64 != r {
                return Err(fail(format!("reductions: recorded {}, found {}", r, out.solutions.len())));
            }
        }
        if let Some(a) = self.adjunctions {
            let out = find_adjunctions(&f, &all, clock);
            if !out.exhausted || out.solutions.len() as u64 != a {
                return Err(fail(format!("adjunctions: recorded {}, found {}", a, out.solutions.len())));
            }
        }
        Ok(())
    }
}
