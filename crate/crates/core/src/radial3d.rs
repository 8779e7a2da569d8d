//! Radially symmetric 3D problems under the algebra
//! `[X_i, P_j] = i(1 + βP²)δ_ij + iβ′P_iP_j`, reduced to a one-dimensional
//! momentum-space quantization with `L² → (l + ½)²`.
//!
//! For `H = P² − γ/X` (hydrogen-like) and `H = P² + X²` (oscillator) the radial
//! coordinate is a function of the momentum magnitude on the energy shell,
//! and the condition is `∫_{p_min}^{p_max} x_p dp = π(n_p + ½)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::deformation::DeformationParams;
use crate::error::{Error, Result};
use crate::quadrature::integrate_sqrt_endpoints;
use crate::quantizer::{SolverSettings, SpectrumRow, SpectrumTable};
use crate::reference;
use crate::roots::{brent, expand_geometric};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialKind {
    Hydrogen { gamma: f64 },
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    pub kind: RadialKind,
    pub l: u32,
    pub deformation: DeformationParams,
    pub delta: f64,
    pub settings: SolverSettings,
}

/// Momentum-space turning points `p_min < p_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumRange {
    pub p_min: f64,
    pub p_max: f64,
}

const RADICAND_SLACK: f64 = 1e-12;

impl RadialProblem {
    pub fn new(kind: RadialKind, l: u32, deformation: DeformationParams) -> Result<Self> {
        if let RadialKind::Hydrogen { gamma } = kind {
            if !(gamma.is_finite() && gamma > 0.0) {
                return Err(Error::Domain(format!("gamma must be finite and > 0, got {gamma}")));
            }
        }
        Ok(Self { kind, l, deformation, delta: 0.5, settings: SolverSettings::default() })
    }

    pub fn with_settings(mut self, settings: SolverSettings) -> Self {
        self.settings = settings;
        self
    }

    fn lambda(&self) -> f64 {
        self.l as f64 + 0.5
    }

    fn beta(&self) -> f64 {
        self.deformation.beta()
    }

    /// Principal number: `n_p + l + 1` for hydrogen, `2n_p + l` for the oscillator.
    pub fn principal_number(&self, n_p: u32) -> u32 {
        match self.kind {
            RadialKind::Hydrogen { .. } => n_p + self.l + 1,
            RadialKind::Oscillator => 2 * n_p + self.l,
        }
    }

    fn in_bound_range(&self, energy: f64) -> bool {
        match self.kind {
            RadialKind::Hydrogen { .. } => energy < 0.0,
            RadialKind::Oscillator => energy > 0.0,
        }
    }

    fn no_bound(&self, energy: f64) -> Error {
        Error::NoBoundRegion(format!("E = {energy} admits no bound radial motion"))
    }

    /// Radicand of `x_p`, i.e. `x_p² (1 + (β+β′)p²)²`.
    pub fn radicand(&self, p: f64, energy: f64) -> f64 {
        let lam = self.lambda();
        let centrifugal = (1.0 + self.beta() * p * p) * lam / p;
        let centrifugal = centrifugal * centrifugal;
        let kinetic = match self.kind {
            RadialKind::Hydrogen { gamma } => {
                let g = gamma / (p * p - energy);
                g * g
            }
            RadialKind::Oscillator => energy - p * p,
        };
        let r = kinetic - centrifugal;
        if r.abs() <= RADICAND_SLACK * kinetic.abs().max(centrifugal) {
            0.0
        } else {
            r
        }
    }

    /// Radial coordinate on the energy shell at momentum `p`.
    pub fn x_p(&self, p: f64, energy: f64) -> Result<f64> {
        if !(p > 0.0) || !self.in_bound_range(energy) {
            return Err(Error::Domain(format!("x_p needs p > 0 in the bound range, got p = {p}, E = {energy}")));
        }
        let r = self.radicand(p, energy);
        if r < 0.0 {
            return Err(Error::ClassicallyForbidden { energy, position: p });
        }
        let d = self.deformation;
        Ok(r.sqrt() / (1.0 + (d.beta() + d.beta_prime()) * p * p))
    }

    pub fn momentum_turning_points(&self, energy: f64) -> Result<MomentumRange> {
        if !self.in_bound_range(energy) {
            return Err(self.no_bound(energy));
        }
        match self.kind {
            RadialKind::Hydrogen { gamma } => self.hydrogen_turning_points(gamma, energy),
            RadialKind::Oscillator => self.oscillator_turning_points(energy),
        }
    }

    /// Positive roots of `h(p) = γp − λ(1+βp²)(p² − E)`, which has the sign of
    /// the radicand. `h(0) = λE < 0` and `h′` decreases monotonically, so `h`
    /// has a single peak and at most two positive roots.
    fn hydrogen_turning_points(&self, gamma: f64, energy: f64) -> Result<MomentumRange> {
        let lam = self.lambda();
        let beta = self.beta();
        if beta == 0.0 {
            let disc = gamma * gamma + 4.0 * lam * lam * energy;
            if disc <= 0.0 {
                return Err(self.no_bound(energy));
            }
            let p_max = (gamma + disc.sqrt()) / (2.0 * lam);
            return Ok(MomentumRange { p_min: -energy / p_max, p_max });
        }
        let h = |p: f64| gamma * p - lam * (1.0 + beta * p * p) * (p * p - energy);
        let dh = |p: f64| Ok(gamma - lam * (4.0 * beta * p * p * p + 2.0 * p * (1.0 - beta * energy)));
        let upper = gamma / (2.0 * lam * (1.0 - beta * energy));
        let peak = brent(dh, 0.0, upper, gamma, dh(upper)?, 0.0, 0.0)?;
        let h_peak = h(peak);
        if h_peak <= 0.0 {
            return Err(self.no_bound(energy));
        }
        let p_min = brent(|p| Ok(h(p)), 0.0, peak, h(0.0), h_peak, 0.0, 0.0)?;
        let mut hi = 2.0 * peak;
        while h(hi) > 0.0 {
            hi *= 2.0;
        }
        let p_max = brent(|p| Ok(h(p)), peak, hi, h_peak, h(hi), 0.0, 0.0)?;
        Ok(MomentumRange { p_min, p_max })
    }

    /// `u = p²` solves `(1+λ²β²)u² − (E − 2λ²β)u + λ² = 0`.
    fn oscillator_turning_points(&self, energy: f64) -> Result<MomentumRange> {
        let lam2 = self.lambda().powi(2);
        let beta = self.beta();
        let a = 1.0 + lam2 * beta * beta;
        let b = energy - 2.0 * lam2 * beta;
        let disc = b * b - 4.0 * a * lam2;
        if b <= 0.0 || disc <= 0.0 {
            return Err(self.no_bound(energy));
        }
        let u_max = (b + disc.sqrt()) / (2.0 * a);
        let u_min = lam2 / (a * u_max);
        Ok(MomentumRange { p_min: u_min.sqrt(), p_max: u_max.sqrt() })
    }

    /// One-way phase `∫ x_p dp` between the momentum turning points.
    pub fn phase_integral_3d(&self, energy: f64) -> Result<f64> {
        let range = self.momentum_turning_points(energy)?;
        let d = self.deformation;
        let scale = d.beta() + d.beta_prime();
        let est = integrate_sqrt_endpoints(
            |p| self.radicand(p, energy).max(0.0).sqrt() / (1.0 + scale * p * p),
            range.p_min,
            range.p_max,
            &self.settings.quadrature,
        )?;
        Ok(est.value)
    }

    fn linear_reference(&self, n_p: u32) -> Result<f64> {
        let d = self.deformation;
        let n = self.principal_number(n_p);
        match self.kind {
            RadialKind::Hydrogen { gamma } => reference::hydrogen_linear(n, self.l, gamma, d.beta(), d.beta_prime()),
            RadialKind::Oscillator => reference::osc3d_linear(n, self.l, d.beta(), d.beta_prime()),
        }
    }

    fn undeformed_level(&self, n_p: u32) -> f64 {
        let n = self.principal_number(n_p) as f64;
        match self.kind {
            RadialKind::Hydrogen { gamma } => -gamma * gamma / (4.0 * n * n),
            RadialKind::Oscillator => 2.0 * n + 3.0,
        }
    }

    /// Energy of radial level `n_p`.
    pub fn solve_level_3d(&self, n_p: u32) -> Result<f64> {
        let target = PI * (n_p as f64 + self.delta);
        let sign = match self.kind {
            RadialKind::Hydrogen { .. } => -1.0,
            RadialKind::Oscillator => 1.0,
        };
        let seed = match self.linear_reference(n_p) {
            Ok(e) if self.in_bound_range(e) => e,
            _ => self.undeformed_level(n_p),
        };
        // Below the bound range the allowed region has shrunk to nothing.
        let phase = |e: f64| match self.phase_integral_3d(e) {
            Err(Error::NoBoundRegion(_)) => Ok(0.0),
            other => other,
        };
        let mismatch = |s: f64| -> Result<f64> { Ok(sign * (phase(sign * s)? - target)) };
        let br = expand_geometric(mismatch, seed.abs(), self.settings.max_bracket_steps)?;
        if br.lo == br.hi {
            return Ok(sign * br.lo);
        }
        brent(
            |e| Ok(phase(e)? - target),
            sign * br.lo,
            sign * br.hi,
            sign * br.f_lo,
            sign * br.f_hi,
            self.settings.energy_rel_tol,
            0.0,
        )
    }

    /// Rows for `n_p = 0..=n_max` with linear-order references attached.
    pub fn spectrum(&self, n_max: u32) -> SpectrumTable {
        let rows = (0..=n_max)
            .map(|n_p| {
                let reference = self.linear_reference(n_p).ok();
                match self.solve_level_3d(n_p) {
                    Ok(e) => SpectrumRow::solved(n_p, e, reference, None),
                    Err(err) => SpectrumRow::failed(n_p, reference, &err),
                }
            })
            .collect();
        SpectrumTable { rows }
    }
}
