//! Anisotropic fractional Sobolev (Gagliardo) seminorms defined by
//! convex-body gauges, polar L_p moment-body norms, and verification of the
//! `s -> 1^-` and `s -> 0^+` limits by extrapolation, in dimensions 1..=3.
//!
//! The crate is organized around five pieces:
//!
//! * [`body`]: origin-symmetric convex bodies (box, ellipsoid, l_q ball,
//!   symmetric V-polytope) with exact gauges, support functions and volumes,
//!   plus radial integrals in gauge polar coordinates.
//! * [`func`]: compactly supported test functions with analytic gradients,
//!   L^p norms and anisotropic first-order Sobolev energies.
//! * [`moment`]: polar L_p moment-body norms and the isotropic constant
//!   `alpha(n, p)`.
//! * [`seminorm`]: the singular double integral, by direct polar quadrature
//!   with an analytic far-field tail and by the Blaschke-Petkantschin line
//!   decomposition.
//! * [`limits`]: `s`-ladders, extrapolation fits and pass/fail reports for
//!   the Bourgain-Brezis-Mironescu and Maz'ya-Shaposhnikova limits.
//!
//! All numeric kernels are generic over the scalar type through
//! [`scalar::Real`] (`f32` or `f64`); the `*64`/`*32` aliases below pick a
//! concrete precision.

pub mod body;
pub mod digest;
pub mod error;
pub mod func;
pub mod geom;
pub mod limits;
pub mod moment;
pub mod quad;
pub mod rng;
pub mod scalar;
pub mod seminorm;
pub mod special;

pub use body::{gauge_polar_integral, ConvexBody};
pub use error::{Error, Result};
pub use func::{anisotropic_sobolev_seminorm, sobolev_seminorm_pow, Profile1d, TestFunction};
pub use geom::{BoundingBox, Matrix, SymMat, Vector};
pub use limits::{
    default_bbm_ladder, default_ms_ladder, verify_bbm_1d, verify_bbm_1d_with, verify_bbm_limit,
    verify_bbm_limit_with, verify_ms_1d, verify_ms_1d_with, verify_ms_limit, verify_ms_limit_with,
    AltFit, ConvergenceReport, FitModel, LimitKind, LimitOptions, LimitSample, Verdict,
};
pub use moment::{alpha_np, lp_moment_norm, BodyNorm, Estimate};
pub use quad::QuadratureSpec;
pub use scalar::Real;
pub use seminorm::{gagliardo_1d, seminorm_direct, seminorm_via_bp, Method, SeminormEstimate};

/// f64 aliases for the main types.
pub type ConvexBody64 = ConvexBody<f64>;
pub type TestFunction64 = TestFunction<f64>;
pub type BodyNorm64 = BodyNorm<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type SeminormEstimate64 = SeminormEstimate<f64>;
pub type ConvergenceReport64 = ConvergenceReport<f64>;
pub type Vector64 = Vector<f64>;

/// f32 aliases (reduced precision; the default tolerances assume f64).
pub type ConvexBody32 = ConvexBody<f32>;
pub type TestFunction32 = TestFunction<f32>;
pub type BodyNorm32 = BodyNorm<f32>;
pub type QuadratureSpec32 = QuadratureSpec<f32>;
pub type SeminormEstimate32 = SeminormEstimate<f32>;
pub type ConvergenceReport32 = ConvergenceReport<f32>;
pub type Vector32 = Vector<f32>;

/// Crate version, embedded into result records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
