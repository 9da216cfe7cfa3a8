//! Exact classification of second-order superintegrable systems on the
//! complex Euclidean plane.
//!
//! A free system is a 2-plane spanned by two special conformal Killing
//! tensors. Its Plücker coordinates determine a ternary cubic `D(z, w)` and two
//! quadratics `A_z(w)`, `B_w(z)`; the crate decides whether the point lies on
//! the variety of superintegrable systems, factors `D` into lines, assigns the
//! multiplicity class and normal form, and checks potentials in the fibre.

pub mod classify;
pub mod enumerate;
pub mod exact;
pub mod isometry;
pub mod killing;
pub mod pluecker;
pub mod potential;
pub mod report;
pub mod sic;
pub mod svg;
pub mod tables;

use thiserror::Error;

pub use exact::{BiPoly, GaussRat, UniPoly, Var};
pub use killing::{KillingTensorField, ScktField, SpecialConformalKillingTensor};
pub use pluecker::{PlueckerPoint, TernaryTriple};

/// Default relative tolerance for floating residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("dependent pair: the two tensors span no 2-plane")]
    DependentPair,
    #[error("cubic does not split into linear forms")]
    NotReducible,
    #[error("point is not on the superintegrability variety")]
    NotOnVariety,
    #[error("sample lies on the singular set D = 0")]
    SingularSample,
    #[error("base point lies on the singular set D = 0")]
    SingularBase,
    #[error("degenerate point (D vanishes identically)")]
    DegeneratePoint,
    #[error("path passes through a singularity near {0}")]
    PathThroughSingularity(String),
    #[error("orbit reduction needs a root outside the Gaussian rationals")]
    IrrationalOrbit,
    #[error("all coordinates vanish")]
    ZeroPoint,
    #[error("unknown class label {0:?}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
