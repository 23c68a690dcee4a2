use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A ring description is malformed (non-prime characteristic, reducible modulus, ...).
    InvalidRing(String),
    /// `unit_part` of zero.
    ZeroElement,
    /// Inversion of an element with positive valuation.
    NotAUnit,
    /// A proposed generator of the maximal ideal does not have valuation one.
    BadGenerator,
    /// Components of a product-ring element do not match the ring.
    ComponentMismatch,
    /// A local-ring presentation violates a ring axiom.
    NotARing(String),
    /// The operation needs a nonzero polynomial.
    ZeroPolynomial,
    /// S-polynomial of a polynomial with itself.
    EqualInputs,
    /// Elimination needs a lexicographic basis.
    WrongOrder,
    /// The ideal is zero, every element is a root.
    ZeroIdeal,
    /// A step or size cap was hit.
    ResourceExceeded(String),
    /// The ring is too large for an enumeration-based routine.
    TooLarge,
    /// Matrix and vector shapes disagree.
    DimensionMismatch,
    /// A free envelope of the requested rank does not exist.
    RankTooLarge,
    /// Rows (or columns) that should be linearly independent are not.
    NotFree,
    /// The operation is only defined over a chain ring.
    NotChainRing,
    /// A vector has rank larger than the annihilator degree.
    RankExceeds,
    /// Linearization could not isolate the unknowns.
    Inconclusive,
    /// Every decoding strategy certified that no codeword is within the radius.
    NoSolution,
    /// An oracle refused an input exceeding its enumeration budget.
    BudgetExceeded,
    /// Malformed textual input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRing(msg) => write!(f, "invalid ring: {msg}"),
            Error::ZeroElement => write!(f, "zero element has no unit part"),
            Error::NotAUnit => write!(f, "element is not a unit"),
            Error::BadGenerator => write!(f, "generator of the maximal ideal must have valuation 1"),
            Error::ComponentMismatch => write!(f, "component list does not match the product ring"),
            Error::NotARing(msg) => write!(f, "presentation is not a commutative ring: {msg}"),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::EqualInputs => write!(f, "S-polynomial of identical inputs"),
            Error::WrongOrder => write!(f, "elimination requires a lexicographic order"),
            Error::ZeroIdeal => write!(f, "ideal is zero"),
            Error::ResourceExceeded(msg) => write!(f, "resource limit exceeded: {msg}"),
            Error::TooLarge => write!(f, "ring too large for enumeration"),
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::RankTooLarge => write!(f, "rank exceeds requested envelope rank"),
            Error::NotFree => write!(f, "vectors are not linearly independent"),
            Error::NotChainRing => write!(f, "operation requires a finite chain ring"),
            Error::RankExceeds => write!(f, "vector rank exceeds annihilator degree"),
            Error::Inconclusive => write!(f, "linearization did not isolate the unknowns"),
            Error::NoSolution => write!(f, "no solution"),
            Error::BudgetExceeded => write!(f, "enumeration budget exceeded"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
