//! q-expansions at cusps, quadratic twists, 2-isogenies and the
//! assembly of canonical Weierstrass models with their conductors.

pub mod branch;
pub mod canonical;
pub mod isogeny;
pub mod jseries;
pub mod tate;
pub mod weierstrass;

use crate::exact::ExactError;

pub use branch::{branch_solve, cusps, twist_search, BranchSolution, Cusp, CuspPoint, QSeries, TwistSearch};
pub use canonical::{assemble_canonical_model, case_four_candidates, CanonicalModel, CuspModel, GammaStep, DEFAULT_PRECISION};
pub use isogeny::{duplication_x, velu_2isogeny, TwoIsogeny};
pub use jseries::j_series;
pub use tate::{tate, tate_conductor, ConductorData, Kodaira, LocalData};
pub use weierstrass::{isomorphism_test, Isomorphism, WeierstrassCurve};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QexpError {
    #[error("singular curve")]
    SingularCurve,
    #[error("model is not y² = monic cubic")]
    NotMonicCubic,
    #[error("model has a1 or a3 nonzero")]
    NotShortForm,
    #[error("(0, 0) is not on the curve")]
    KernelNotOnCurve,
    #[error("map has no pole of the expected order at the cusp")]
    NoBranch,
    #[error("leading coefficient has no rational root of the needed order")]
    NoRationalBranch,
    #[error("a pole of the map is not rational")]
    IrrationalCusp,
    #[error("leading coefficient is not a rational square")]
    NotASquare,
    #[error("no quadratic twist rationalizes every cusp")]
    NoRationalizingTwist,
    #[error("map involves y")]
    NotAFunctionOfX,
    #[error("branch does not satisfy φ(x(q)) = j(q)")]
    InconsistentBranch,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
