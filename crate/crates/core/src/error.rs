use alloc::string::String;

use crate::monomial::Monomial;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exponent vectors of lengths {expected} and {found} cannot be combined")]
    LengthMismatch { expected: usize, found: usize },
    #[error("variable x{} has exponent zero and cannot be exchanged away", .index + 1)]
    ZeroExponent { index: usize },
    #[error("variable index {index} is out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exponent arithmetic overflowed")]
    Overflow,
    #[error("the basis would be empty")]
    EmptyBasis,
    #[error("basis mixes monomials of degree {expected} and {found}")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("binomial sides have different images")]
    NotInKernel,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("fiber over [{target}] in degree {degree} exceeds the cap of {cap} elements")]
    FiberTooLarge { target: Monomial, degree: usize, cap: usize },
    #[error("degree-{degree} enumeration exceeds the cap of {cap} monomials")]
    EnumerationTooLarge { degree: usize, cap: usize },
    #[error("Buchberger step cap of {cap} S-pairs reached")]
    Timeout { cap: usize },
    #[error("h-vector has not stabilized by degree {max_degree}; raise the maximum degree")]
    NotStabilized { max_degree: usize },
}

impl Error {
    /// True for errors caused by hitting a configured resource cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::FiberTooLarge { .. }
                | Error::EnumerationTooLarge { .. }
                | Error::Timeout { .. }
                | Error::NotStabilized { .. }
        )
    }
}
