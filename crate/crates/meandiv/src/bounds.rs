//! Upper bounds on the Bayes probability of error.
//!
//! For every generator with `f(1) = 0` and finite slope at infinity, the
//! averaged divergence bounds the error from above:
//!
//! ```text
//! P_e ≤ ½ · [1 − M̄_XY(C1,C2) / f_XY∞].
//! ```
//!
//! [`symmetric_bound`] evaluates this directly; [`general_bound`] reaches the
//! same number through the four-constant form
//!
//! ```text
//! P_e ≤ (f₀·P(C2) + f∞·P(C1) − M̄) / (f₂ − f₁),   f₂ = f₀ + f∞,
//! ```
//!
//! as an independent cross-check. On top of the direct bounds sit the
//! chained bounds, obtained by substituting one divergence for another via
//! the pointwise inequalities among the mean differences; the chained
//! variants are always at least as loose, which [`sharpness_check`] makes
//! quantitative.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::Serialize;

use crate::classification::{averaged_divergence, TwoClassProblem};
use crate::divergence::{constants, f_infinity, published_f_infinity, GeneratorKind};

/// Absolute tolerance for treating a sharpness margin as a tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Which slope-at-infinity constant feeds the bound coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoefficientConvention {
    /// `1/f∞` with the derived slope constant (the default).
    Derived,
    /// `1/f∞` with the constant as printed in the literature tables. Differs
    /// from [`CoefficientConvention::Derived`] only for `N2N1`, where the
    /// printed constant is too large; the resulting coefficient is smaller,
    /// so the bound stays valid but looser.
    AsPublished,
}

/// One direct error bound, with the exact error for comparison.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub kind: GeneratorKind,
    /// Averaged divergence `M̄_XY(C1,C2)`.
    pub divergence: f64,
    /// Multiplier `1/f∞` applied to the divergence.
    pub coefficient: f64,
    /// `½(1 − coefficient·divergence)`, clamped to `[0, ½]`.
    pub bound: f64,
    /// The unclamped value, kept for auditability.
    pub raw_bound: f64,
    /// Exact Bayes error of the problem.
    pub exact_error: f64,
    /// `bound − exact_error`; nonnegative when the theory holds.
    pub slack: f64,
}

/// The bound coefficient `1/f_XY∞`.
pub fn bound_coefficient(kind: GeneratorKind) -> f64 {
    1.0 / f_infinity(kind)
}

/// The bound coefficient computed from the published slope constant.
pub fn published_bound_coefficient(kind: GeneratorKind) -> f64 {
    1.0 / published_f_infinity(kind)
}

/// The symmetric-conjugate bound `(f∞ − M̄) / (2f∞ − f₁)`.
///
/// Stated for a general `f₁ = f(1)`; every generator in this family has
/// `f₁ = 0`, in which case this reduces to `½(1 − M̄/f∞)`.
pub fn bound_from_constants(f_infinity: f64, f_one: f64, divergence: f64) -> f64 {
    (f_infinity - divergence) / (2.0 * f_infinity - f_one)
}

/// Direct error bound for one divergence kind.
pub fn symmetric_bound(kind: GeneratorKind, problem: &TwoClassProblem) -> BoundReport {
    symmetric_bound_with(kind, problem, CoefficientConvention::Derived)
}

/// Direct error bound with an explicit coefficient convention; see
/// [`CoefficientConvention`].
pub fn symmetric_bound_with(
    kind: GeneratorKind,
    problem: &TwoClassProblem,
    convention: CoefficientConvention,
) -> BoundReport {
    let divergence = averaged_divergence(kind, problem);
    let coefficient = match convention {
        CoefficientConvention::Derived => bound_coefficient(kind),
        CoefficientConvention::AsPublished => published_bound_coefficient(kind),
    };
    let raw_bound = 0.5 * (1.0 - coefficient * divergence);
    let bound = raw_bound.clamp(0.0, 0.5);
    let exact_error = problem.bayes_error();
    BoundReport {
        kind,
        divergence,
        coefficient,
        bound,
        raw_bound,
        exact_error,
        slack: bound - exact_error,
    }
}

/// Direct bounds for all eleven kinds, in canonical kind order.
pub fn all_bounds(problem: &TwoClassProblem) -> Vec<BoundReport> {
    GeneratorKind::ALL
        .into_iter()
        .map(|kind| symmetric_bound(kind, problem))
        .collect()
}

/// The four-constant bound `(f₀·P(C2) + f∞·P(C1) − M̄)/(f₂ − f₁)`.
///
/// Because `f₀ = f∞` and `f₁ = 0` for every kind here, this equals
/// [`symmetric_bound`]'s raw value for every problem; the two are computed
/// through different arithmetic on purpose.
pub fn general_bound(kind: GeneratorKind, problem: &TwoClassProblem) -> f64 {
    let c = constants(kind);
    let divergence = averaged_divergence(kind, problem);
    let f_two = c.f_zero + c.f_infinity;
    (c.f_zero * problem.prior2() + c.f_infinity * problem.prior1() - divergence) / (f_two - c.f_one)
}

/// Which direct bound a chained bound descends from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainAnchor {
    /// Substitutions into the `AG` bound via the chain
    /// `M_SA ≤ ⅓M_SH ≤ ½M_AH ≤ ½M_SG ≤ M_AG`.
    #[serde(rename = "AG")]
    Ag,
    /// Substitutions into the `SG` bound via the chain
    /// `½M_SH ≤ M_SN1 ≤ ¾M_SG`.
    #[serde(rename = "SG")]
    Sg,
}

impl fmt::Display for ChainAnchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainAnchor::Ag => "via-AG",
            ChainAnchor::Sg => "via-SG",
        })
    }
}

/// A bound of the form `½(1 − c·M̄_source)` inherited through a chain of
/// mean-difference inequalities, next to the direct bound on the same
/// divergence.
#[derive(Debug, Clone, Serialize)]
pub struct ChainedBoundReport {
    pub chain: ChainAnchor,
    pub source_kind: GeneratorKind,
    /// The inherited multiplier `c`; never larger than `1/f∞` of the source.
    pub chain_coefficient: f64,
    /// `½(1 − chain_coefficient·M̄_source)`, clamped to `[0, ½]`.
    pub chained_bound: f64,
    /// The direct bound on the same divergence, for comparison.
    pub direct_bound: f64,
}

/// The chained coefficients, exactly as the substitution arithmetic yields
/// them.
fn chain_table() -> [(ChainAnchor, GeneratorKind, f64); 8] {
    [
        (ChainAnchor::Ag, GeneratorKind::AG, 2.0),
        (ChainAnchor::Ag, GeneratorKind::SG, 1.0),
        (ChainAnchor::Ag, GeneratorKind::AH, 1.0),
        (ChainAnchor::Ag, GeneratorKind::SH, 2.0 / 3.0),
        (ChainAnchor::Ag, GeneratorKind::SA, 2.0),
        (ChainAnchor::Sg, GeneratorKind::SG, 2.0 / SQRT_2),
        (ChainAnchor::Sg, GeneratorKind::SN1, 8.0 / (3.0 * SQRT_2)),
        (ChainAnchor::Sg, GeneratorKind::SH, 4.0 / (3.0 * SQRT_2)),
    ]
}

fn clamped_bound(coefficient: f64, divergence: f64) -> f64 {
    (0.5 * (1.0 - coefficient * divergence)).clamp(0.0, 0.5)
}

/// All chained bounds for a problem, each paired with the direct bound on
/// the same divergence.
pub fn chained_bounds(problem: &TwoClassProblem) -> Vec<ChainedBoundReport> {
    chain_table()
        .into_iter()
        .map(|(chain, source_kind, chain_coefficient)| {
            let divergence = averaged_divergence(source_kind, problem);
            ChainedBoundReport {
                chain,
                source_kind,
                chain_coefficient,
                chained_bound: clamped_bound(chain_coefficient, divergence),
                direct_bound: clamped_bound(bound_coefficient(source_kind), divergence),
            }
        })
        .collect()
}

/// One direct-vs-chained sharpness comparison.
#[derive(Debug, Clone, Serialize)]
pub struct SharpnessReport {
    pub kind: GeneratorKind,
    pub direct_coefficient: f64,
    pub chained_coefficient: f64,
    pub direct_bound: f64,
    pub chained_bound: f64,
    /// `chained_bound − direct_bound`; nonnegative when the direct bound is
    /// at least as sharp.
    pub margin: f64,
    /// Whether `direct_bound ≤ chained_bound` within [`TIE_TOLERANCE`].
    pub holds: bool,
}

/// The four comparisons where a direct bound competes with its chained
/// counterpart: `SG` and `AH` against the `AG`-anchored chain, `SN1` and
/// `SH` against the `SG`-anchored chain.
///
/// In each case the direct coefficient dominates the chained one, so the
/// direct bound is the sharper of the two; the margin is strictly positive
/// whenever the underlying divergence is.
pub fn sharpness_check(problem: &TwoClassProblem) -> Vec<SharpnessReport> {
    let pairs = [
        (GeneratorKind::SG, 1.0),
        (GeneratorKind::AH, 1.0),
        (GeneratorKind::SN1, 8.0 / (3.0 * SQRT_2)),
        (GeneratorKind::SH, 4.0 / (3.0 * SQRT_2)),
    ];
    pairs
        .into_iter()
        .map(|(kind, chained_coefficient)| {
            let divergence = averaged_divergence(kind, problem);
            let direct_coefficient = bound_coefficient(kind);
            let direct_bound = clamped_bound(direct_coefficient, divergence);
            let chained_bound = clamped_bound(chained_coefficient, divergence);
            let margin = chained_bound - direct_bound;
            SharpnessReport {
                kind,
                direct_coefficient,
                chained_coefficient,
                direct_bound,
                chained_bound,
                margin,
                holds: margin >= -TIE_TOLERANCE,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn golden() -> TwoClassProblem {
        TwoClassProblem::new(0.5, 0.5, vec![0.8, 0.2], vec![0.2, 0.8]).unwrap()
    }

    #[test]
    fn golden_bounds() {
        let p = golden();
        let ag = symmetric_bound(GeneratorKind::AG, &p);
        assert_relative_eq!(ag.bound, 0.4, max_relative = 1e-13);
        assert_relative_eq!(ag.exact_error, 0.2, max_relative = 1e-13);
        assert_relative_eq!(ag.slack, 0.2, max_relative = 1e-12);

        let ah = symmetric_bound(GeneratorKind::AH, &p);
        assert_relative_eq!(ah.bound, 0.32, max_relative = 1e-13);

        let sa = symmetric_bound(GeneratorKind::SA, &p);
        assert_abs_diff_eq!(sa.bound, 0.29939046657848534, epsilon = 1e-12);
        assert_relative_eq!(sa.coefficient, 2.0 / (SQRT_2 - 1.0), max_relative = 1e-14);
    }

    #[test]
    fn coefficients_match_printed_forms() {
        let cases = [
            (GeneratorKind::SA, 2.0 / (SQRT_2 - 1.0)),
            (GeneratorKind::SN2, 4.0 / SQRT_2),
            (GeneratorKind::SN3, 6.0 / (3.0 * SQRT_2 - 2.0)),
            (GeneratorKind::SN1, 4.0 / (2.0 * SQRT_2 - 1.0)),
            (GeneratorKind::SG, 2.0 / SQRT_2),
            (GeneratorKind::SH, 2.0 / SQRT_2),
            (GeneratorKind::AN2, 4.0 / (2.0 - SQRT_2)),
            (GeneratorKind::AG, 2.0),
            (GeneratorKind::AH, 2.0),
            (GeneratorKind::N2N1, 4.0 / (SQRT_2 - 1.0)),
            (GeneratorKind::N2G, 4.0 / SQRT_2),
        ];
        for (kind, want) in cases {
            assert_relative_eq!(bound_coefficient(kind), want, max_relative = 1e-14);
        }
        // The published N2N1 coefficient is smaller, hence still valid.
        assert_relative_eq!(
            published_bound_coefficient(GeneratorKind::N2N1),
            4.0 / (2.0 * SQRT_2 - 1.0),
            max_relative = 1e-14
        );
        assert!(
            published_bound_coefficient(GeneratorKind::N2N1)
                < bound_coefficient(GeneratorKind::N2N1)
        );
    }

    #[test]
    fn published_convention_only_loosens_n2n1() {
        let p = golden();
        for kind in GeneratorKind::ALL {
            let derived = symmetric_bound_with(kind, &p, CoefficientConvention::Derived);
            let published = symmetric_bound_with(kind, &p, CoefficientConvention::AsPublished);
            if kind == GeneratorKind::N2N1 {
                assert!(published.bound > derived.bound);
            } else {
                assert_eq!(published.bound, derived.bound);
            }
            assert!(published.slack >= 0.0);
        }
    }

    #[test]
    fn general_bound_reduces_to_symmetric() {
        let problems = [
            golden(),
            TwoClassProblem::new(0.3, 0.7, vec![0.5, 0.5], vec![0.5, 0.5]).unwrap(),
            TwoClassProblem::new(0.25, 0.75, vec![0.7, 0.2, 0.1], vec![0.1, 0.3, 0.6]).unwrap(),
        ];
        for p in &problems {
            for kind in GeneratorKind::ALL {
                assert_abs_diff_eq!(
                    general_bound(kind, p),
                    symmetric_bound(kind, p).raw_bound,
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn general_bound_indistinguishable_classes_example() {
        // Posterior is 0.3 everywhere, so M̄_AH = ½(0.4)² = 0.08 and the
        // bound is 0.42, above the exact error 0.3.
        let p = TwoClassProblem::new(0.3, 0.7, vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        assert_relative_eq!(
            general_bound(GeneratorKind::AH, &p),
            0.42,
            max_relative = 1e-13
        );
        assert!(p.bayes_error() <= 0.42);
    }

    #[test]
    fn bound_from_constants_matches_reduced_form() {
        for kind in GeneratorKind::ALL {
            let slope = f_infinity(kind);
            let divergence = 0.37 * slope;
            assert_abs_diff_eq!(
                bound_from_constants(slope, 0.0, divergence),
                0.5 * (1.0 - divergence / slope),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn degenerate_problem_gives_half_everywhere() {
        let p = TwoClassProblem::new(0.5, 0.5, vec![0.4, 0.6], vec![0.4, 0.6]).unwrap();
        for report in all_bounds(&p) {
            assert_abs_diff_eq!(report.bound, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(report.divergence, 0.0, epsilon = 1e-15);
        }
        for chained in chained_bounds(&p) {
            assert_abs_diff_eq!(chained.chained_bound, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(chained.direct_bound, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn chained_bounds_dominate_direct() {
        let p = golden();
        let reports = chained_bounds(&p);
        assert_eq!(reports.len(), 8);
        for r in &reports {
            assert!(
                r.direct_bound <= r.chained_bound + TIE_TOLERANCE,
                "{} via {:?}",
                r.source_kind,
                r.chain
            );
            assert!(r.chain_coefficient <= bound_coefficient(r.source_kind) + TIE_TOLERANCE);
        }
        // The AG entry heads its own chain: chained and direct coincide.
        let ag = reports
            .iter()
            .find(|r| r.source_kind == GeneratorKind::AG)
            .unwrap();
        assert_abs_diff_eq!(ag.chained_bound, ag.direct_bound, epsilon = 1e-15);
    }

    #[test]
    fn sharpness_pairs_and_margins() {
        let p = golden();
        let reports = sharpness_check(&p);
        let kinds: Vec<GeneratorKind> = reports.iter().map(|r| r.kind).collect();
        assert_eq!(
            kinds,
            vec![
                GeneratorKind::SG,
                GeneratorKind::AH,
                GeneratorKind::SN1,
                GeneratorKind::SH
            ]
        );
        for r in &reports {
            assert!(r.holds);
            assert!(r.direct_coefficient >= r.chained_coefficient);
            assert!(r.margin > 0.0, "{}: divergence is nonzero here", r.kind);
        }
        // Coefficient comparisons: √2 ≥ 1 and √2 ≥ 4/(3√2).
        let sg = &reports[0];
        assert_relative_eq!(sg.direct_coefficient, SQRT_2, max_relative = 1e-14);
        assert_eq!(sg.chained_coefficient, 1.0);
        let sh = &reports[3];
        assert_relative_eq!(sh.direct_coefficient, SQRT_2, max_relative = 1e-14);
        assert_relative_eq!(
            sh.chained_coefficient,
            4.0 / (3.0 * SQRT_2),
            max_relative = 1e-14
        );
    }

    #[test]
    fn bhattacharyya_identity_for_ag() {
        let p = TwoClassProblem::new(0.4, 0.6, vec![0.7, 0.2, 0.1], vec![0.2, 0.2, 0.6]).unwrap();
        let report = symmetric_bound(GeneratorKind::AG, &p);
        let coefficient: f64 = p
            .cond1()
            .mass()
            .iter()
            .zip(p.cond2().mass())
            .map(|(&c1, &c2)| (p.prior1() * c1 * p.prior2() * c2).sqrt())
            .sum();
        assert_abs_diff_eq!(report.bound, coefficient, epsilon = 1e-13);
    }
}
