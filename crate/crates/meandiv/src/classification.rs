//! Two-class discrete decision problems.
//!
//! A [`TwoClassProblem`] pairs class priors with class-conditional pmfs over
//! a shared finite alphabet. From it we derive the feature marginal and the
//! posterior field, the exact Bayes error
//!
//! ```text
//! P_e = Σ_x p(x) · min(P(C1|x), P(C2|x)),
//! ```
//!
//! and the averaged divergence
//!
//! ```text
//! M̄_XY(C1,C2) = E_X[ f*_XY(P(C1|x)) ],
//! ```
//!
//! which by conjugate symmetry is unchanged if the classes are swapped.

use serde::{Deserialize, Serialize};

use crate::divergence::{conjugate_eval, GeneratorKind};
use crate::{Error, Result};

/// Allowed deviation of a probability vector's sum from 1 before
/// renormalization is refused.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A pmf over a finite alphabet: nonnegative entries summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteDistribution {
    mass: Vec<f64>,
}

fn check_entries(field: &str, mass: &[f64]) -> Result<()> {
    if mass.is_empty() {
        return Err(Error::InvalidField {
            field: field.to_owned(),
            message: "must not be empty".to_owned(),
        });
    }
    for (i, &m) in mass.iter().enumerate() {
        if !(m >= 0.0 && m.is_finite()) {
            return Err(Error::InvalidField {
                field: format!("{field}[{i}]"),
                message: format!("entries must be finite and nonnegative, got {m}"),
            });
        }
    }
    Ok(())
}

impl DiscreteDistribution {
    /// Build from a vector already meant to be a pmf. The sum must lie
    /// within [`MASS_TOLERANCE`] of 1; the entries are then divided by their
    /// exact sum so downstream arithmetic sees a true pmf.
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        Self::with_field_name("mass", mass)
    }

    pub(crate) fn with_field_name(field: &str, mass: Vec<f64>) -> Result<Self> {
        check_entries(field, &mass)?;
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidField {
                field: field.to_owned(),
                message: format!("probabilities must sum to 1 (got {sum})"),
            });
        }
        Ok(Self::normalized(mass, sum))
    }

    /// Build from arbitrary nonnegative weights with a positive sum,
    /// normalizing to a pmf. Handy for sampled or unnormalized inputs.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        check_entries("weights", &weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidField {
                field: "weights".to_owned(),
                message: "must have a positive sum".to_owned(),
            });
        }
        Ok(Self::normalized(weights, sum))
    }

    fn normalized(mut mass: Vec<f64>, sum: f64) -> Self {
        for m in &mut mass {
            *m /= sum;
        }
        Self { mass }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }
}

/// Priors and class-conditional pmfs for a two-class problem over a shared
/// finite alphabet of at least two symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoClassProblem {
    prior1: f64,
    prior2: f64,
    cond1: DiscreteDistribution,
    cond2: DiscreteDistribution,
}

/// On-disk problem document: `{"priors": [..], "conditionals": [[..],[..]]}`.
#[derive(Debug, Deserialize)]
struct ProblemDocument {
    priors: Vec<f64>,
    conditionals: Vec<Vec<f64>>,
}

fn check_prior(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidField {
            field: field.to_owned(),
            message: format!("priors must lie strictly inside (0, 1), got {value}"),
        })
    }
}

impl TwoClassProblem {
    /// Build a problem from priors and raw conditional pmfs.
    ///
    /// Priors must be strictly inside `(0, 1)` and sum to 1 within
    /// [`MASS_TOLERANCE`]; they are renormalized exactly. The conditionals
    /// must be equal-length pmfs over an alphabet of at least two symbols.
    pub fn new(prior1: f64, prior2: f64, cond1: Vec<f64>, cond2: Vec<f64>) -> Result<Self> {
        check_prior("prior1", prior1)?;
        check_prior("prior2", prior2)?;
        let sum = prior1 + prior2;
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidField {
                field: "priors".to_owned(),
                message: format!("must sum to 1 (got {sum})"),
            });
        }
        let cond1 = DiscreteDistribution::with_field_name("cond1", cond1)?;
        let cond2 = DiscreteDistribution::with_field_name("cond2", cond2)?;
        Self::from_parts(prior1 / sum, prior2 / sum, cond1, cond2)
    }

    /// Build from already-validated distributions.
    pub fn from_distributions(
        prior1: f64,
        cond1: DiscreteDistribution,
        cond2: DiscreteDistribution,
    ) -> Result<Self> {
        check_prior("prior1", prior1)?;
        Self::from_parts(prior1, 1.0 - prior1, cond1, cond2)
    }

    fn from_parts(
        prior1: f64,
        prior2: f64,
        cond1: DiscreteDistribution,
        cond2: DiscreteDistribution,
    ) -> Result<Self> {
        if cond1.len() != cond2.len() {
            return Err(Error::LengthMismatch(cond1.len(), cond2.len()));
        }
        if cond1.len() < 2 {
            return Err(Error::InvalidField {
                field: "conditionals".to_owned(),
                message: "alphabet must have at least 2 symbols".to_owned(),
            });
        }
        Ok(Self {
            prior1,
            prior2,
            cond1,
            cond2,
        })
    }

    /// Parse the JSON problem document
    /// `{"priors": [p1, p2], "conditionals": [[..], [..]]}`.
    ///
    /// Validation failures name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ProblemDocument = serde_json::from_str(text)?;
        if doc.priors.len() != 2 {
            return Err(Error::InvalidField {
                field: "priors".to_owned(),
                message: format!("expected exactly 2 entries, got {}", doc.priors.len()),
            });
        }
        if doc.conditionals.len() != 2 {
            return Err(Error::InvalidField {
                field: "conditionals".to_owned(),
                message: format!("expected exactly 2 rows, got {}", doc.conditionals.len()),
            });
        }
        let mut rows = doc.conditionals.into_iter();
        let cond1 = DiscreteDistribution::with_field_name("conditionals[0]", rows.next().unwrap())?;
        let cond2 = DiscreteDistribution::with_field_name("conditionals[1]", rows.next().unwrap())?;
        check_prior("priors[0]", doc.priors[0])?;
        check_prior("priors[1]", doc.priors[1])?;
        let sum = doc.priors[0] + doc.priors[1];
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidField {
                field: "priors".to_owned(),
                message: format!("must sum to 1 (got {sum})"),
            });
        }
        Self::from_parts(doc.priors[0] / sum, doc.priors[1] / sum, cond1, cond2)
    }

    pub fn prior1(&self) -> f64 {
        self.prior1
    }

    pub fn prior2(&self) -> f64 {
        self.prior2
    }

    pub fn cond1(&self) -> &DiscreteDistribution {
        &self.cond1
    }

    pub fn cond2(&self) -> &DiscreteDistribution {
        &self.cond2
    }

    pub fn alphabet_len(&self) -> usize {
        self.cond1.len()
    }

    /// The same problem with the two classes (labels and priors) swapped.
    pub fn swapped(&self) -> Self {
        Self {
            prior1: self.prior2,
            prior2: self.prior1,
            cond1: self.cond2.clone(),
            cond2: self.cond1.clone(),
        }
    }

    /// Feature marginal and class-1 posterior per symbol.
    ///
    /// Symbols with zero marginal carry no probability and are dropped.
    pub fn posteriors(&self) -> PosteriorField {
        let mut marginal = Vec::with_capacity(self.alphabet_len());
        let mut posterior1 = Vec::with_capacity(self.alphabet_len());
        for (&c1, &c2) in self.cond1.mass().iter().zip(self.cond2.mass()) {
            let joint1 = self.prior1 * c1;
            let m = joint1 + self.prior2 * c2;
            if m > 0.0 {
                marginal.push(m);
                posterior1.push(joint1 / m);
            }
        }
        PosteriorField {
            marginal,
            posterior1,
        }
    }

    /// Exact Bayes probability of error,
    /// `Σ_x p(x)·min(P(C1|x), P(C2|x))`; never exceeds `min(prior1, prior2)`.
    pub fn bayes_error(&self) -> f64 {
        let field = self.posteriors();
        field
            .marginal
            .iter()
            .zip(&field.posterior1)
            .map(|(&m, &u)| m * u.min(1.0 - u))
            .sum()
    }
}

/// Marginal `p(x)` and posterior `P(C1|x)` over the symbols with positive
/// marginal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PosteriorField {
    pub marginal: Vec<f64>,
    pub posterior1: Vec<f64>,
}

/// Averaged divergence `M̄_XY(C1,C2) = Σ_x p(x)·f*_XY(P(C1|x))`.
///
/// Bounded by `[0, f_XY∞]`, zero iff the posterior is 1/2 everywhere on the
/// support, and invariant under swapping the classes.
pub fn averaged_divergence(kind: GeneratorKind, problem: &TwoClassProblem) -> f64 {
    let field = problem.posteriors();
    field
        .marginal
        .iter()
        .zip(&field.posterior1)
        .map(|(&m, &u)| m * conjugate_eval(kind, u))
        .sum()
}
