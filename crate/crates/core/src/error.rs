use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An arc was given with coinciding endpoints.
    DegenerateArc,
    /// Input failed validation.
    InvalidInput(String),
    /// An open set was required to be Lebesgue regular.
    NotRegular,
    /// The remainder of an infinite product could not be bounded below the
    /// requested tolerance.
    TailNotCertified { bound: f64, tol: f64, factors: usize },
    /// Evaluation point too close to the accumulation set of a product.
    NearSingularSet { distance: f64 },
    /// Real evaluation requested on the support of the measure.
    OnSupport(f64),
    QuadratureFailed { estimate_error: f64 },
    NonConvergence(&'static str),
    BisectionFailed { lo: f64, hi: f64 },
    /// The arc handed to single-factor division is not inside Γ(f).
    NotInGamma,
    /// Two sets that must be disjoint overlap.
    Overlap,
    InterlacingViolation {
        first: crate::ExtPoint,
        second: crate::ExtPoint,
        two_zeros: bool,
    },
    /// A post-condition check failed; the string carries diagnostics.
    Certification(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateArc => write!(f, "arc endpoints coincide"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
            Error::NotRegular => write!(f, "open set is not Lebesgue regular"),
            Error::TailNotCertified { bound, tol, factors } => write!(
                f,
                "tail bound {bound:e} exceeds tolerance {tol:e} after {factors} factors"
            ),
            Error::NearSingularSet { distance } => {
                write!(f, "evaluation point within {distance:e} of the singular set")
            }
            Error::OnSupport(x) => write!(f, "point {x} lies on the support of the measure"),
            Error::QuadratureFailed { estimate_error } => {
                write!(f, "quadrature did not converge (error estimate {estimate_error:e})")
            }
            Error::NonConvergence(what) => write!(f, "{what} did not converge"),
            Error::BisectionFailed { lo, hi } => {
                write!(f, "bisection failed on bracket [{lo}, {hi}]")
            }
            Error::NotInGamma => write!(f, "interval is not contained in the negativity set"),
            Error::Overlap => write!(f, "sets overlap"),
            Error::InterlacingViolation { first, second, two_zeros } => write!(
                f,
                "no {} between {first} and {second}",
                if *two_zeros { "pole" } else { "zero" }
            ),
            Error::Certification(s) => write!(f, "certification failed: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
