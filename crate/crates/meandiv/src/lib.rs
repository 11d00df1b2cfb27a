//! # meandiv
//!
//! Divergence measures built from differences of classical means, and the
//! upper bounds they induce on the Bayes probability of error in two-class
//! discrete classification.
//!
//! The starting point is the chain of means, valid for all `a, b > 0`:
//!
//! ```text
//! H(a,b) ≤ G(a,b) ≤ N1(a,b) ≤ N3(a,b) ≤ N2(a,b) ≤ A(a,b) ≤ S(a,b)
//! ```
//!
//! Every ordered pair drawn from this chain (with one non-convex exception)
//! yields a nonnegative convex difference `M_XY(a,b)`, which in turn acts as
//! the generator `f_XY(x) = M_XY(x, 1)` of a Csiszár f-divergence. Because
//! each generator has a finite slope at infinity and a conjugate symmetric
//! about `u = 1/2`, every one of the eleven measures bounds the Bayes error
//! of a two-class problem from above:
//!
//! ```text
//! P_e ≤ ½ · [1 − M̄_XY(C1,C2) / f_XY∞]
//! ```
//!
//! ## Modules
//!
//! | Module | Provides |
//! |--------|----------|
//! | [`means`] | The seven means, the eleven differences, the ordering chain |
//! | [`divergence`] | Generators `f_XY`, conjugates `f*_XY`, slope constants, discrete Csiszár divergence |
//! | [`classification`] | Two-class problems, posteriors, exact Bayes error, averaged divergence |
//! | [`bounds`] | Direct, general, and chained error bounds with sharpness comparisons |
//! | [`verify`] | Seeded randomized checks for every inequality and constant |
//!
//! ## Quick start
//!
//! ```rust
//! use meandiv::{GeneratorKind, TwoClassProblem, symmetric_bound};
//!
//! let problem = TwoClassProblem::new(0.5, 0.5, vec![0.8, 0.2], vec![0.2, 0.8]).unwrap();
//! let report = symmetric_bound(GeneratorKind::AG, &problem);
//! assert!((report.bound - 0.4).abs() < 1e-12);     // Bhattacharyya bound
//! assert!((report.exact_error - 0.2).abs() < 1e-12);
//! assert!(report.slack >= 0.0);
//! ```

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod bounds;
pub mod classification;
pub mod divergence;
pub mod means;
pub mod verify;

pub use bounds::{
    all_bounds, bound_coefficient, chained_bounds, general_bound, sharpness_check, symmetric_bound,
    symmetric_bound_with, BoundReport, ChainAnchor, ChainedBoundReport, CoefficientConvention,
    SharpnessReport,
};
pub use classification::{
    averaged_divergence, DiscreteDistribution, PosteriorField, TwoClassProblem,
};
pub use divergence::{
    conjugate_value, constants, csiszar_divergence, f_infinity, generator_value,
    published_f_infinity, GeneratorConstants, GeneratorKind,
};
pub use means::{all_means, mean, mean_difference, MeanDiffKind, MeanKind};
pub use verify::{VerificationConfig, VerificationOutcome};

/// Errors for domain violations and malformed inputs.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument left the open domain `(0, ∞)`.
    #[error("{argument} must be a positive finite number, got {value}")]
    NotPositive { argument: &'static str, value: f64 },

    /// An argument left the closed unit interval.
    #[error("{argument} must lie in [0, 1], got {value}")]
    NotInUnitInterval { argument: &'static str, value: f64 },

    /// Two distributions over supposedly the same alphabet disagree in size.
    #[error("distributions have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    /// A structured input failed validation; `field` names the offender.
    #[error("{field}: {message}")]
    InvalidField { field: String, message: String },

    /// A kind name did not match any known mean or divergence tag.
    #[error("unknown kind {0:?}")]
    UnknownKind(String),

    /// The problem document was not syntactically valid JSON.
    #[error("invalid problem document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
