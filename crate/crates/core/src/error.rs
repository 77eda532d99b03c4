use thiserror::Error;

/// Errors raised by the library.
///
/// `Invariant` is reserved for internal consistency failures: a result that
/// violates a property the algorithms guarantee. Everything else is a
/// rejected input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{value} is out of range ({expected})")]
    OutOfRange { value: i128, expected: &'static str },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i128, modulus: u64 },
    #[error("{0} is congruent to 3 mod 4 and is not a sum of two squares")]
    NotSumOfTwoSquares(u64),
    #[error("degenerate basis (determinant 0)")]
    DegenerateBasis,
    #[error("basis is not a black monochromatic basis: {0}")]
    NotBlackMonochromatic(&'static str),
    #[error("({a},{b},{c},{d}) is not a solution for {n}")]
    InvalidQuadruplet { n: u64, a: u64, b: u64, c: u64, d: u64 },
    #[error("solution set is not closed under the Klein action")]
    NotKleinClosed,
    #[error("statistic {0} is undefined on this quadruplet")]
    GuardViolation(&'static str),
    #[error("no samples were evaluated")]
    EmptySample,
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
