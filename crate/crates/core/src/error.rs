use thiserror::Error;

use crate::congruence::CongruenceViolation;
use crate::hom::HomViolation;
use crate::iso::IsoViolation;
use crate::signature::{Element, ValidationReport};
use crate::subalg::ClosureViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    Invalid(ValidationReport),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("element {element} out of range for a carrier of size {size}")]
    OutOfRange { element: Element, size: usize },
    #[error("variable x{index} out of range for {nvars} variable(s)")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("map has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("algebras have different signatures")]
    SignatureMismatch,
    #[error("mismatched endpoints: {0}")]
    Mismatch(String),
    #[error("homomorphism has not been verified")]
    Unverified,
    #[error("empty family")]
    EmptyFamily,
    #[error("index {index} out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a partition: {0}")]
    NotPartition(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(HomViolation),
    #[error("not a congruence: {0}")]
    NotCongruence(CongruenceViolation),
    #[error("not surjective; missed codomain elements {missed:?}")]
    NotSurjective { missed: Vec<Element> },
    #[error("kernel containment fails: elements {0} and {1} are identified by the surjection but not by the map being factored")]
    KernelNotContained(Element, Element),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(IsoViolation),
    #[error("subset is not closed: {0}")]
    NotClosed(ClosureViolation),
    #[error("the empty subuniverse does not induce an algebra")]
    EmptySubuniverse,
}

impl Error {
    /// True for errors that carry a mathematical witness (a counterexample
    /// or an unmet precondition of a theorem) rather than a malformed input.
    pub fn is_witness(&self) -> bool {
        matches!(
            self,
            Error::NotHomomorphism(_)
                | Error::NotCongruence(_)
                | Error::NotSurjective { .. }
                | Error::KernelNotContained(..)
                | Error::NotIsomorphism(_)
                | Error::NotClosed(_)
        )
    }
}
