//! Where leading-order WKB can be trusted.
//!
//! Two diagnostics are combined. The local one compares the first neglected
//! term of the semiclassical expansion with the leading one,
//! `|d(P f(P))/dx| / P² = (1 + 3βP²)|dP/dx| / P²`, which must be small. The
//! global one is the wavelength window `a ≫ λ ≫ ΔX²/a` for a system of size
//! `a`: a minimal length `ΔX = √β` closes the window from below, and no
//! momentum is semiclassical once `ΔX ≥ a`.
//!
//! The `≫` relations are turned into verdicts with fixed cuts (0.1 and 1 by
//! default). Near the inverse-square singularity the metric is large even
//! though the resulting levels tend to be accurate; verdicts are reported, not
//! used to suppress levels.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potentials::PotentialModel;
use crate::quantizer::QuantizationProblem;

/// Fraction of the allowed interval dropped at each end when sampling.
pub const TURNING_MARGIN: f64 = 0.02;
pub const DEFAULT_GRID: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    Marginal,
    Invalid,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Valid => "Valid",
            Verdict::Marginal => "Marginal",
            Verdict::Invalid => "Invalid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub valid_below: f64,
    pub marginal_below: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { valid_below: 0.1, marginal_below: 1.0 }
    }
}

impl Thresholds {
    pub fn classify(&self, ratio: f64) -> Verdict {
        if ratio < self.valid_below {
            Verdict::Valid
        } else if ratio < self.marginal_below {
            Verdict::Marginal
        } else {
            Verdict::Invalid
        }
    }
}

/// Admissible wavelengths `(λ_min, λ_max) = (ΔX²/a, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaWindow {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `ΔX ≥ a`: no wavelength is admissible.
    pub empty: bool,
}

impl LambdaWindow {
    /// How far `λ` sits outside the window; below 1 means inside.
    pub fn ratio(&self, lambda: f64) -> f64 {
        (lambda / self.lambda_max).max(self.lambda_min / lambda)
    }
}

pub fn lambda_window(a: f64, beta: f64) -> LambdaWindow {
    let min_length = beta.sqrt();
    LambdaWindow { lambda_min: beta / a, lambda_max: a, empty: min_length >= a }
}

/// Range `1 ≪ n ≪ width²/(4β)` over which the infinite-well WKB levels apply.
pub fn well_n_window(width: f64, beta: f64) -> (f64, f64) {
    if beta == 0.0 {
        return (1.0, f64::INFINITY);
    }
    let gamma = 2.0 / width;
    (1.0, 1.0 / (gamma * gamma * beta))
}

/// `|d(P f(P))/dx| / P²` at `x`, using `dP/dx = −m U′(x)/P`.
pub fn local_metric(prob: &QuantizationProblem, energy: f64, x: f64) -> Result<f64> {
    let tp = prob.turning_points(energy)?;
    if !tp.contains_strictly(x) {
        return Err(Error::OutsideAllowedRegion { x, lower: tp.lower, upper: tp.upper });
    }
    let big_p = prob.classical_momentum(energy, x)?;
    if big_p == 0.0 {
        return Err(Error::SingularMetric { x });
    }
    let slope = prob.potential.slope(x)?;
    if slope == 0.0 {
        return Ok(0.0);
    }
    let beta = prob.deformation.beta();
    let dp_dx = -prob.mass * slope / big_p;
    Ok(((1.0 + 3.0 * beta * big_p * big_p) * dp_dx).abs() / (big_p * big_p))
}

/// Which diagnostic set the overall verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Driver {
    LocalMetric,
    LambdaWindow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub energy: f64,
    pub max_metric: f64,
    pub metric_profile: Vec<(f64, f64)>,
    /// `2π / P_char`, with `P_char` the largest sampled momentum.
    pub lambda: f64,
    pub window: LambdaWindow,
    pub metric_verdict: Verdict,
    pub window_verdict: Verdict,
    pub verdict: Verdict,
    pub driver: Driver,
}

pub fn assess(prob: &QuantizationProblem, energy: f64) -> Result<ValidityReport> {
    assess_with(prob, energy, DEFAULT_GRID, &Thresholds::default())
}

pub fn assess_with(
    prob: &QuantizationProblem,
    energy: f64,
    grid: usize,
    thresholds: &Thresholds,
) -> Result<ValidityReport> {
    let tp = prob.turning_points(energy)?;
    let grid = grid.max(2);
    let lo = tp.lower + TURNING_MARGIN * tp.width();
    let hi = tp.upper - TURNING_MARGIN * tp.width();
    let mut profile = Vec::with_capacity(grid);
    let mut p_char = 0.0f64;
    for i in 0..grid {
        let x = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
        profile.push((x, local_metric(prob, energy, x)?));
        p_char = p_char.max(prob.classical_momentum(energy, x)?);
    }
    let max_metric = profile.iter().map(|&(_, m)| m).fold(0.0, f64::max);

    let size = match prob.potential {
        PotentialModel::InverseSquare { .. } => tp.upper,
        _ => tp.width(),
    };
    let window = lambda_window(size, prob.deformation.beta());
    let lambda = 2.0 * PI / p_char;
    let metric_verdict = thresholds.classify(max_metric);
    let window_verdict = if window.empty { Verdict::Invalid } else { thresholds.classify(window.ratio(lambda)) };
    let driver = if max_metric == 0.0 || window_verdict > metric_verdict {
        Driver::LambdaWindow
    } else {
        Driver::LocalMetric
    };
    Ok(ValidityReport {
        energy,
        max_metric,
        metric_profile: profile,
        lambda,
        window,
        metric_verdict,
        window_verdict,
        verdict: metric_verdict.max(window_verdict),
        driver,
    })
}
