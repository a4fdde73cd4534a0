use alloc::string::String;
use core::fmt;

/// Crate-wide error type. Every variant names the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A ray vector was zero or could not be made primitive.
    ZeroRay,
    /// Two rays of a fan coincide.
    DuplicateRay(usize, usize),
    /// A ray index is out of range or unused.
    BadRayIndex(usize),
    /// A maximal cone's ray set is contained in another's.
    NonMaximalCone(usize),
    /// A cone contains a line.
    NotStronglyConvex(usize),
    /// Two cones intersect in something other than a common face.
    ImproperIntersection(usize, usize),
    /// The fan does not cover the whole space.
    NotComplete,
    /// Operation requires a simplicial cone.
    NotSimplicial,
    /// Dual of the trivial lattice requested.
    DualOfTrivialLattice,
    /// A vector does not pair integrally with the support lattice.
    NotInDualLattice,
    /// A support function is not in the support lattice of the fan.
    NotInSupportLattice,
    /// Vector lies outside the support of the fan.
    OutsideSupport,
    /// Vector is already a ray of the fan.
    AlreadyARay,
    /// A label was expected to be valid but is not.
    InvalidLabel,
    /// No positive grading was found; enumerative operations unavailable.
    NoPositiveGrading,
    /// A divisor class is not in the kernel of the ray-evaluation map.
    NotACurveClass,
    /// The pushforward fiber over the divisor is empty.
    EmptyFiber,
    /// A divisor coordinate is negative: not representable by holomorphic maps.
    NegativeDegree,
    /// Stability along a chain requires every step to insert a new ray.
    SubdivisionOnlyStep,
    /// Polynomial operation on incompatible input (e.g. gcd of two zeros).
    BadPolynomial(String),
    /// Condition on coprimality of polynomial components fails.
    CommonFactor(String),
    /// Polynomial degrees do not match the divisor class.
    DegreeMismatch(String),
    /// Monomial relation fails; carries a description of the counterexample.
    RelationViolated(String),
    /// Input data malformed (bad parameters, unknown catalog name, ...).
    Usage(String),
    /// An enumeration exceeded its configured resource cap.
    Resource(String),
    /// Iteration cap exceeded while resolving; defensive guard.
    ResolutionStuck,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroRay => write!(f, "ray vector is zero"),
            Error::DuplicateRay(i, j) => write!(f, "rays {i} and {j} coincide"),
            Error::BadRayIndex(i) => write!(f, "ray index {i} out of range or unused"),
            Error::NonMaximalCone(i) => {
                write!(f, "cone {i} is contained in another maximal cone")
            }
            Error::NotStronglyConvex(i) => write!(f, "cone {i} is not strongly convex"),
            Error::ImproperIntersection(i, j) => {
                write!(f, "cones {i} and {j} overlap improperly")
            }
            Error::NotComplete => write!(f, "fan not complete"),
            Error::NotSimplicial => write!(f, "cone is not simplicial"),
            Error::DualOfTrivialLattice => write!(f, "dual of trivial lattice"),
            Error::NotInDualLattice => write!(f, "vector is not in the dual of the support lattice"),
            Error::NotInSupportLattice => write!(f, "function is not in the support lattice"),
            Error::OutsideSupport => write!(f, "vector lies outside the support of the fan"),
            Error::AlreadyARay => write!(f, "vector is already a ray of the fan"),
            Error::InvalidLabel => write!(f, "label is not valid"),
            Error::NoPositiveGrading => write!(f, "no positive grading found"),
            Error::NotACurveClass => {
                write!(f, "divisor is not in the kernel of the ray-evaluation map")
            }
            Error::EmptyFiber => write!(f, "pushforward fiber over the divisor is empty"),
            Error::NegativeDegree => {
                write!(f, "negative coordinate: not representable by holomorphic maps")
            }
            Error::SubdivisionOnlyStep => {
                write!(f, "chained stability requires every step to insert a new ray")
            }
            Error::BadPolynomial(s) => write!(f, "bad polynomial input: {s}"),
            Error::CommonFactor(s) => write!(f, "coprimality violated: {s}"),
            Error::DegreeMismatch(s) => write!(f, "degree condition violated: {s}"),
            Error::RelationViolated(s) => write!(f, "monomial relation violated: {s}"),
            Error::Usage(s) => write!(f, "{s}"),
            Error::Resource(s) => write!(f, "resource cap exceeded: {s}"),
            Error::ResolutionStuck => write!(f, "resolution iteration cap exceeded"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
