use crate::algebra::{Generator, Mode, Monomial};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live in different algebras ({left:?} vs {right:?})")]
    ModeMismatch { left: Mode, right: Mode },
    #[error("operands are governed by different arity profiles")]
    ProfileMismatch,
    #[error("generator {0} violates the arity profile (field index exceeds n_k)")]
    ArityViolation(Generator),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("relabelling is not defined on label x{0}")]
    UndefinedRelabel(u32),
    #[error("relabelling is not injective on the support (two labels map to x{0})")]
    NonInjectiveRelabel(u32),
    #[error("a bracketting slot cannot be the unit monomial")]
    UnitSlot,
    #[error("ground set has {size} elements, above the partition cap of {cap}")]
    PartitionCapExceeded { size: usize, cap: usize },
    #[error("set partitions live on different ground sets")]
    GroundSetMismatch,
    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
    #[error("monomial of degree {degree} exceeds the degree bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("form is not unital (value on 1 is {0})")]
    NotUnital(String),
    #[error("form is not infinitesimal (value on 1 is {0})")]
    NotInfinitesimal(String),
    #[error("conflicting table entries for {0}")]
    DuplicateEntry(Monomial),
    #[error("pairing entries must be degree-2 monomials, got {0}")]
    InvalidPairing(Monomial),
    #[error("moment table is missing the sub-monomial {0}")]
    MissingMoment(Monomial),
    #[error("power series must have constant term 1")]
    SeriesNotUnital,
    #[error("requested order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("interaction pattern must be supported on the single point x1, found {0}")]
    InvalidPattern(Monomial),
    #[error("denominator evaluates to zero")]
    ZeroDenominator,
    #[error("form value on P(S) depends on more than |S| (order {0})")]
    NotScalarSpecies(usize),
}
