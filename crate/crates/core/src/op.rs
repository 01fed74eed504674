//! Operation tables on dense finite carriers.
//!
//! Elements are the indices `0..order`. Tables are flat and row-major with
//! the first argument most significant, so for an n-ary operation the cell
//! of `(x₁, …, xₙ)` is `((x₁·order + x₂)·order + …)·order + xₙ`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::assoc;
use crate::error::{AlgError, Result};

/// Largest supported carrier. `u16::MAX` is reserved as the "unassigned"
/// marker by the searches.
pub const MAX_ORDER: usize = u16::MAX as usize - 1;

/// Size limits shared by construction and the associativity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum `order^arity` for a stored table.
    pub max_cells: u64,
    /// Maximum `order^(2n-1)` tuples enumerated by the associativity check.
    pub max_instances: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_cells: 100_000_000,
            max_instances: 1_000_000_000,
        }
    }
}

/// `base^exp` without overflow, saturating into `u128`.
pub(crate) fn pow_u128(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    order: usize,
    names: Option<Vec<String>>,
}

impl Universe {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(AlgError::EmptyUniverse);
        }
        if order > MAX_ORDER {
            return Err(AlgError::OrderTooLarge { order, max: MAX_ORDER });
        }
        Ok(Universe { order, names: None })
    }

    pub fn with_names(order: usize, names: Vec<String>) -> Result<Self> {
        let mut u = Universe::new(order)?;
        if names.len() != order {
            return Err(AlgError::BadNames(alloc::format!(
                "{} names given for order {}",
                names.len(),
                order
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(AlgError::BadNames(alloc::format!("name {:?} is empty or contains whitespace", n)));
            }
            if names[..i].contains(n) {
                return Err(AlgError::BadNames(alloc::format!("duplicate name {:?}", n)));
            }
        }
        u.names = Some(names);
        Ok(u)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of element `x`: its given name, or the index itself.
    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(ns) => ns[x].clone(),
            None => x.to_string(),
        }
    }
}

fn check_table(order: usize, cells: u128, table: &[u16], caps: &Caps) -> Result<()> {
    if cells > caps.max_cells as u128 {
        return Err(AlgError::CellCapExceeded { cells, cap: caps.max_cells });
    }
    if table.len() as u128 != cells {
        return Err(AlgError::TableLength {
            expected: cells as usize,
            got: table.len(),
        });
    }
    if let Some(&bad) = table.iter().find(|&&v| v as usize >= order) {
        return Err(AlgError::IndexOutOfRange { index: bad as usize, order });
    }
    Ok(())
}

/// An n-ary operation `F : Xⁿ → X` given by its full table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteNaryOp {
    universe: Universe,
    arity: usize,
    table: Vec<u16>,
}

impl FiniteNaryOp {
    pub fn new(universe: Universe, arity: usize, table: Vec<u16>) -> Result<Self> {
        Self::with_caps(universe, arity, table, &Caps::default())
    }

    pub fn with_caps(universe: Universe, arity: usize, table: Vec<u16>, caps: &Caps) -> Result<Self> {
        if arity < 2 {
            return Err(AlgError::BadArity(arity));
        }
        check_table(universe.order, pow_u128(universe.order, arity), &table, caps)?;
        Ok(FiniteNaryOp { universe, arity, table })
    }

    /// Tabulates `f` over every argument tuple in row-major order.
    pub fn from_fn(order: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        let universe = Universe::new(order)?;
        if arity < 2 {
            return Err(AlgError::BadArity(arity));
        }
        let cells = pow_u128(order, arity);
        let caps = Caps::default();
        if cells > caps.max_cells as u128 {
            return Err(AlgError::CellCapExceeded { cells, cap: caps.max_cells });
        }
        let mut table = Vec::with_capacity(cells as usize);
        let mut args = vec![0usize; arity];
        for _ in 0..cells {
            let v = f(&args);
            if v >= order {
                return Err(AlgError::IndexOutOfRange { index: v, order });
            }
            table.push(v as u16);
            odometer_step(&mut args, order);
        }
        Ok(FiniteNaryOp { universe, arity, table })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn order(&self) -> usize {
        self.universe.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u16> {
        self.table
    }

    /// Replaces the carrier description (e.g. to attach names).
    pub fn with_universe(mut self, universe: Universe) -> Result<Self> {
        if universe.order != self.universe.order {
            return Err(AlgError::UniverseMismatch {
                left: self.universe.order,
                right: universe.order,
            });
        }
        self.universe = universe;
        Ok(self)
    }

    pub fn flat_index(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(AlgError::ArityMismatch { expected: self.arity, got: args.len() });
        }
        let order = self.order();
        let mut idx = 0usize;
        for &x in args {
            if x >= order {
                return Err(AlgError::IndexOutOfRange { index: x, order });
            }
            idx = idx * order + x;
        }
        Ok(idx)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn tuple_of(&self, mut index: usize) -> Vec<usize> {
        let order = self.order();
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = index % order;
            index /= order;
        }
        out
    }

    pub fn apply(&self, args: &[usize]) -> Result<usize> {
        Ok(self.table[self.flat_index(args)?] as usize)
    }

    /// Table lookup without argument validation.
    #[inline]
    pub fn eval<I: IntoIterator<Item = usize>>(&self, args: I) -> usize {
        let order = self.order();
        let idx = args.into_iter().fold(0usize, |acc, x| acc * order + x);
        self.table[idx] as usize
    }

    pub fn check_associativity(&self) -> Result<(), AlgError> {
        match assoc::check_associativity(self)? {
            None => Ok(()),
            Some(ce) => Err(AlgError::NotAssociative(ce)),
        }
    }
}

/// Steps `digits` to the next tuple in row-major order (last digit
/// fastest). Returns `false` after wrapping back to all zeros.
#[inline]
pub fn odometer_step(digits: &mut [usize], order: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < order {
            return true;
        }
        *d = 0;
    }
    false
}

/// A binary operation table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryOpDesc {
    universe: Universe,
    table: Vec<u16>,
}

impl BinaryOpDesc {
    pub fn new(universe: Universe, table: Vec<u16>) -> Result<Self> {
        let order = universe.order;
        check_table(order, pow_u128(order, 2), &table, &Caps::default())?;
        Ok(BinaryOpDesc { universe, table })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let universe = Universe::new(order)?;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let v = f(x, y);
                if v >= order {
                    return Err(AlgError::IndexOutOfRange { index: v, order });
                }
                table.push(v as u16);
            }
        }
        BinaryOpDesc::new(universe, table)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn order(&self) -> usize {
        self.universe.order
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.universe.order + y] as usize
    }

    pub fn with_universe(mut self, universe: Universe) -> Result<Self> {
        if universe.order != self.universe.order {
            return Err(AlgError::UniverseMismatch {
                left: self.universe.order,
                right: universe.order,
            });
        }
        self.universe = universe;
        Ok(self)
    }

    pub fn as_nary(&self) -> FiniteNaryOp {
        FiniteNaryOp {
            universe: self.universe.clone(),
            arity: 2,
            table: self.table.clone(),
        }
    }

    /// First triple `(x, y, z)` with `(x∘y)∘z ≠ x∘(y∘z)`, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for z in 0..n {
                    if self.get(xy, z) != self.get(x, self.get(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Two-sided identity elements (at most one exists).
    pub fn identity(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|x| self.get(a, x) == self.get(x, a))
    }

    /// `x₁∘x₂∘…∘x_k`, folded from the left. Empty input is not allowed.
    pub fn fold(&self, args: &[usize]) -> usize {
        let mut it = args.iter();
        let first = *it.next().expect("fold of an empty sequence");
        it.fold(first, |acc, &x| self.get(acc, x))
    }
}

impl From<BinaryOpDesc> for FiniteNaryOp {
    fn from(b: BinaryOpDesc) -> Self {
        FiniteNaryOp {
            universe: b.universe,
            arity: 2,
            table: b.table,
        }
    }
}

impl TryFrom<FiniteNaryOp> for BinaryOpDesc {
    type Error = AlgError;

    fn try_from(f: FiniteNaryOp) -> Result<Self> {
        if f.arity != 2 {
            return Err(AlgError::ArityMismatch { expected: 2, got: f.arity });
        }
        Ok(BinaryOpDesc {
            universe: f.universe,
            table: f.table,
        })
    }
}

/// A binary operation together with a certified neutral element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidDesc {
    op: BinaryOpDesc,
    neutral: usize,
}

impl MonoidDesc {
    /// Validates associativity and neutrality of `neutral`.
    pub fn new(op: BinaryOpDesc, neutral: usize) -> Result<Self> {
        let n = op.order();
        if neutral >= n {
            return Err(AlgError::IndexOutOfRange { index: neutral, order: n });
        }
        if let Some((x, y, z)) = op.associativity_violation() {
            let lhs = op.get(op.get(x, y), z);
            let rhs = op.get(x, op.get(y, z));
            return Err(AlgError::NotAssociative(assoc::AssocCounterexample {
                position: 1,
                arguments: vec![x, y, z],
                lhs,
                rhs,
            }));
        }
        if (0..n).any(|x| op.get(neutral, x) != x || op.get(x, neutral) != x) {
            return Err(AlgError::NotNeutral(neutral));
        }
        Ok(MonoidDesc { op, neutral })
    }

    pub fn op(&self) -> &BinaryOpDesc {
        &self.op
    }

    pub fn neutral(&self) -> usize {
        self.neutral
    }

    pub fn order(&self) -> usize {
        self.op.order()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.op.get(x, y)
    }

    pub fn into_op(self) -> BinaryOpDesc {
        self.op
    }
}
