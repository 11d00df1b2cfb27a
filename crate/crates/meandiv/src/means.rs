//! The seven classical means and the eleven nonnegative mean differences.
//!
//! For `a, b ∈ (0, ∞)`:
//!
//! ```text
//! A(a,b)  = (a + b)/2                      arithmetic
//! G(a,b)  = √(ab)                          geometric
//! H(a,b)  = 2ab/(a + b)                    harmonic
//! N1(a,b) = ((√a + √b)/2)²                 square-root mean
//! N2(a,b) = ((√a + √b)/2)·√((a + b)/2)
//! N3(a,b) = (a + √(ab) + b)/3              Heronian
//! S(a,b)  = √((a² + b²)/2)                 root-square
//! ```
//!
//! These satisfy `H ≤ G ≤ N1 ≤ N3 ≤ N2 ≤ A ≤ S` pointwise, so the eleven
//! differences enumerated by [`MeanDiffKind`] are all nonnegative. The pair
//! `(N2, N3)` is deliberately absent: its difference is not convex and
//! therefore generates no divergence measure.
//!
//! All means are symmetric and positively homogeneous of degree 1; both
//! properties are load-bearing for the divergence layer and are exercised by
//! the property tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Result};

/// Identifier for one of the seven means, in the ascending chain order
/// `H ≤ G ≤ N1 ≤ N3 ≤ N2 ≤ A ≤ S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MeanKind {
    /// Harmonic mean `2ab/(a+b)`.
    H,
    /// Geometric mean `√(ab)`.
    G,
    /// Square-root mean `((√a+√b)/2)²`.
    N1,
    /// Heronian mean `(a+√(ab)+b)/3`.
    N3,
    /// `((√a+√b)/2)·√((a+b)/2)`.
    N2,
    /// Arithmetic mean `(a+b)/2`.
    A,
    /// Root-square mean `√((a²+b²)/2)`.
    S,
}

impl MeanKind {
    /// All seven means in the ascending chain order.
    pub const ALL: [MeanKind; 7] = [
        MeanKind::H,
        MeanKind::G,
        MeanKind::N1,
        MeanKind::N3,
        MeanKind::N2,
        MeanKind::A,
        MeanKind::S,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeanKind::H => "H",
            MeanKind::G => "G",
            MeanKind::N1 => "N1",
            MeanKind::N3 => "N3",
            MeanKind::N2 => "N2",
            MeanKind::A => "A",
            MeanKind::S => "S",
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeanKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownKind(s.to_owned()))
    }
}

/// Identifier for one of the eleven nonnegative convex mean differences
/// `M_XY(a,b) = X(a,b) − Y(a,b)`.
///
/// The canonical order of [`MeanDiffKind::ALL`] follows the order in which
/// the differences are introduced, not the ordering chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum MeanDiffKind {
    /// `S − A`
    SA,
    /// `S − N2`
    SN2,
    /// `S − N3`
    SN3,
    /// `S − N1`
    SN1,
    /// `S − G`
    SG,
    /// `S − H`
    SH,
    /// `A − N2`
    AN2,
    /// `A − G`
    AG,
    /// `A − H`
    AH,
    /// `N2 − N1`
    N2N1,
    /// `N2 − G`
    N2G,
}

impl MeanDiffKind {
    /// All eleven difference kinds in canonical order.
    pub const ALL: [MeanDiffKind; 11] = [
        MeanDiffKind::SA,
        MeanDiffKind::SN2,
        MeanDiffKind::SN3,
        MeanDiffKind::SN1,
        MeanDiffKind::SG,
        MeanDiffKind::SH,
        MeanDiffKind::AN2,
        MeanDiffKind::AG,
        MeanDiffKind::AH,
        MeanDiffKind::N2N1,
        MeanDiffKind::N2G,
    ];

    /// The `(larger, smaller)` pair of means whose difference this is.
    pub fn components(self) -> (MeanKind, MeanKind) {
        match self {
            MeanDiffKind::SA => (MeanKind::S, MeanKind::A),
            MeanDiffKind::SN2 => (MeanKind::S, MeanKind::N2),
            MeanDiffKind::SN3 => (MeanKind::S, MeanKind::N3),
            MeanDiffKind::SN1 => (MeanKind::S, MeanKind::N1),
            MeanDiffKind::SG => (MeanKind::S, MeanKind::G),
            MeanDiffKind::SH => (MeanKind::S, MeanKind::H),
            MeanDiffKind::AN2 => (MeanKind::A, MeanKind::N2),
            MeanDiffKind::AG => (MeanKind::A, MeanKind::G),
            MeanDiffKind::AH => (MeanKind::A, MeanKind::H),
            MeanDiffKind::N2N1 => (MeanKind::N2, MeanKind::N1),
            MeanDiffKind::N2G => (MeanKind::N2, MeanKind::G),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MeanDiffKind::SA => "SA",
            MeanDiffKind::SN2 => "SN2",
            MeanDiffKind::SN3 => "SN3",
            MeanDiffKind::SN1 => "SN1",
            MeanDiffKind::SG => "SG",
            MeanDiffKind::SH => "SH",
            MeanDiffKind::AN2 => "AN2",
            MeanDiffKind::AG => "AG",
            MeanDiffKind::AH => "AH",
            MeanDiffKind::N2N1 => "N2N1",
            MeanDiffKind::N2G => "N2G",
        }
    }
}

impl fmt::Display for MeanDiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeanDiffKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeanDiffKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownKind(s.to_owned()))
    }
}

fn check_positive(argument: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NotPositive { argument, value })
    }
}

/// Evaluate one mean at `(a, b)`, both strictly positive and finite.
///
/// The value is computed on the ratio `min/max` and rescaled by `max`, so the
/// squared terms cannot overflow even for arguments near the floating-point
/// extremes, symmetry in `(a, b)` is exact, and `mean(k, a, a) == a`.
pub fn mean(kind: MeanKind, a: f64, b: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    let scale = a.max(b);
    let ratio = a.min(b) / scale;
    Ok(scale * mean_of_ratio(kind, ratio))
}

/// The mean at `(r, 1)` for `r ∈ (0, 1]`.
fn mean_of_ratio(kind: MeanKind, r: f64) -> f64 {
    match kind {
        MeanKind::A => (r + 1.0) / 2.0,
        MeanKind::G => r.sqrt(),
        MeanKind::H => 2.0 * r / (r + 1.0),
        MeanKind::N1 => {
            let half_sum = (r.sqrt() + 1.0) / 2.0;
            half_sum * half_sum
        }
        MeanKind::N2 => (r.sqrt() + 1.0) / 2.0 * ((r + 1.0) / 2.0).sqrt(),
        MeanKind::N3 => (r + r.sqrt() + 1.0) / 3.0,
        MeanKind::S => ((r * r + 1.0) / 2.0).sqrt(),
    }
}

/// The nonnegative difference of two means, `M_XY(a,b) = X(a,b) − Y(a,b)`.
///
/// The result is zero when `a == b` and symmetric in `(a, b)`. Tiny negative
/// values (a few ulps) can occur when the two means nearly coincide; callers
/// that need a hard sign should compare against a tolerance.
pub fn mean_difference(kind: MeanDiffKind, a: f64, b: f64) -> Result<f64> {
    let (larger, smaller) = kind.components();
    Ok(mean(larger, a, b)? - mean(smaller, a, b)?)
}

/// All seven means at `(a, b)`, listed in the chain order
/// `H ≤ G ≤ N1 ≤ N3 ≤ N2 ≤ A ≤ S`, so the values are nondecreasing.
pub fn all_means(a: f64, b: f64) -> Result<Vec<(MeanKind, f64)>> {
    MeanKind::ALL
        .into_iter()
        .map(|kind| Ok((kind, mean(kind, a, b)?)))
        .collect()
}
