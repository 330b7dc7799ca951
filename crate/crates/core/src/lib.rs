//! Exact computations on finite sets of points in the projective plane and
//! the plane curves through them.

pub mod bivariate;
pub mod cli;
pub mod curves;
pub mod embed;
pub mod error;
pub mod factor;
pub mod field;
mod fp;
pub mod geometry;
pub mod harness;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod upp;

pub use curves::{
    gcd_of_system, is_absolutely_irreducible, linear_system, minimal_degree, Irreducibility, LinearSystem, TernaryForm,
};
pub use embed::{embed, Embedding};
pub use error::{Error, Result};
pub use factor::{factor_univariate, roots_in_extension, Factorization, Root};
pub use field::{frobenius, make_extension, Field, FieldElement, FieldSpec};
pub use geometry::{plane_section, ParamCurve, Plane, PlaneSection, PointConfiguration, ProjPoint};
pub use harness::{rathmann_curve, rathmann_pipeline, verify_decreasing_type, verify_theorem3, TrialOptions};
pub use hilbert::{classify_prop2, is_decreasing_type, profile, HilbertProfile, Prop2Case, Prop2Verdict};
pub use poly::UniPoly;
pub use upp::{upp_check, UppMode, UppReport, UppVerdict};
