use alloc::string::String;

use crate::assoc::AssocCounterexample;

pub type Result<T, E = AlgError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("a universe needs at least one element")]
    EmptyUniverse,
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("invalid element names: {0}")]
    BadNames(String),
    #[error("arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("{cells} table cells exceed the cap of {cap}")]
    CellCapExceeded { cells: u128, cap: u64 },
    #[error("{instances} identity instances exceed the cap of {cap}")]
    InstanceCapExceeded { instances: u128, cap: u64 },
    #[error("operations live on different universes (orders {left} and {right})")]
    UniverseMismatch { left: usize, right: usize },
    #[error("operation is not associative: {0}")]
    NotAssociative(AssocCounterexample),
    #[error("element {0} is not neutral")]
    NotNeutral(usize),
    #[error("subset must be non-empty and strictly increasing")]
    BadSubset,
    #[error("element {0} is not an involution (A∘A differs from the neutral element)")]
    NotInvolution(usize),
    #[error("bitranslation law `{law}` fails at ({x}, {y})")]
    Bitranslation { law: BitranslationLaw, x: usize, y: usize },
    #[error("bitranslation side condition `{0}` fails")]
    BitranslationSide(SideCondition),
    #[error("IN-semigroups only exist for odd arity; got {0} (even arity forces reducibility)")]
    EvenArity(usize),
    #[error("order {order} is above the cap {cap} for this procedure")]
    OrderCap { order: usize, cap: usize },
    #[error("argument {0} lies outside {{a, e}}")]
    OutsidePair(usize),
    #[error("parity rule violated: product {product} after {count} occurrences of a")]
    ParityViolation { product: usize, count: usize },
    #[error("not a W-monoid: {0}")]
    NotWMonoid(String),
    #[error("certificate does not verify: {0}")]
    Certificate(String),
}

/// The three defining laws of a bitranslation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BitranslationLaw {
    Left,
    Right,
    Linking,
}

impl core::fmt::Display for BitranslationLaw {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            BitranslationLaw::Left => "L(x∘y) = L(x)∘y",
            BitranslationLaw::Right => "R(x∘y) = x∘R(y)",
            BitranslationLaw::Linking => "x∘L(y) = R(x)∘y",
        })
    }
}

/// Extra conditions a bitranslation must meet to yield a W-monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideCondition {
    CarrierAssociative,
    LeftInvolution,
    RightInvolution,
    Commute,
    Distinct,
}

impl core::fmt::Display for SideCondition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            SideCondition::CarrierAssociative => "carrier associative",
            SideCondition::LeftInvolution => "L² = id",
            SideCondition::RightInvolution => "R² = id",
            SideCondition::Commute => "LR = RL",
            SideCondition::Distinct => "L ≠ R",
        })
    }
}
