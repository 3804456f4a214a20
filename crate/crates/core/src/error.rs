//! Error type shared by all modules.

use core::fmt;

/// Errors reported by the enumeration and counting operations.
///
/// Every operation either returns an exact answer or one of these; there
/// are no silent approximations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An exhaustive enumeration would exceed the configured bound.
    BoundExceeded {
        /// What was being enumerated.
        what: &'static str,
        /// The size the enumeration would have had.
        needed: u128,
        /// The configured limit.
        limit: u128,
    },
    /// The requested trace violates |t| ≤ 2√q.
    HasseViolation { t: i64, q: u64 },
    /// A prime required to be unramified divides the relevant discriminant.
    RamifiedPrime { ell: u64 },
    /// The discriminant vanishes (t² = 4qⁿ), so valuation data is undefined.
    ZeroDiscriminant,
    /// The operation requires an ordinary curve but the input is supersingular.
    NonOrdinary,
    /// A requested torsion basis does not exist within the enumeration bound.
    TorsionNotFound { ell: u64, m: u32 },
    /// The supplied points do not form a subgroup of the stated shape.
    NotASubgroup,
    /// The kernel size is divisible by the field characteristic.
    KernelDivisibleByP,
    /// The equivalence search budget was exhausted before the candidate
    /// space was covered; distinct from "searched everything, no witness".
    BudgetExhausted { budget: u64 },
    /// A parameter fails an operation's precondition.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BoundExceeded { what, needed, limit } => {
                write!(f, "enumeration bound exceeded for {what}: needs {needed}, limit {limit}")
            }
            Error::HasseViolation { t, q } => {
                write!(f, "trace {t} violates the Hasse bound for q = {q}")
            }
            Error::RamifiedPrime { ell } => {
                write!(f, "prime {ell} is ramified; operation requires an unramified prime")
            }
            Error::ZeroDiscriminant => write!(f, "discriminant is zero (t² = 4qⁿ)"),
            Error::NonOrdinary => write!(f, "operation requires an ordinary curve"),
            Error::TorsionNotFound { ell, m } => {
                write!(f, "no full {ell}^{m}-torsion within the enumeration bound")
            }
            Error::NotASubgroup => write!(f, "supplied points do not form a valid kernel subgroup"),
            Error::KernelDivisibleByP => {
                write!(f, "kernel size divisible by the field characteristic")
            }
            Error::BudgetExhausted { budget } => {
                write!(f, "equivalence search budget {budget} exhausted")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
