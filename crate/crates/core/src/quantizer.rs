//! Deformed Bohr-Sommerfeld quantization of one-dimensional problems.
//!
//! The phase `Φ(E)` is always the one-way action between the turning points,
//!
//! ```text
//! Φ(E) = ∫_{x1}^{x2} p(P(x)) dx = π(n + δ),
//! ```
//!
//! where `P(x) = √(2m(E − U(x)))` and `p(P)` is the canonical quasi-momentum.
//! Equivalently, in momentum space, `Φ(E) = −½∮ X dP / f(P)`, which only needs
//! `X(P)` from the energy relation. Both forms are implemented and must agree.
//!
//! The inverse-square potential is quantized only in momentum space. Its phase
//! carries the full-line factor: `Φ = 2∫₀^∞ X(P) dP / f(P)`.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::deformation::DeformationParams;
use crate::error::{Error, Result};
use crate::potentials::{PotentialModel, TurningPoints};
use crate::quadrature::{integrate_semi_infinite, integrate_sqrt_endpoints, QuadratureSpec};
use crate::reference::{self, ReferenceKind, ReferenceValue};
use crate::roots::{brent, expand_geometric};
use crate::validity::{self, Verdict};

pub const DEFAULT_MASS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    XSpace,
    PSpace,
}

/// Numerical knobs shared by every level solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub quadrature: QuadratureSpec,
    /// Relative tolerance on the energy of a level.
    pub energy_rel_tol: f64,
    /// Doublings/halvings allowed while bracketing a level.
    pub max_bracket_steps: u32,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            energy_rel_tol: 1e-10,
            max_bracket_steps: 80,
        }
    }
}

impl SolverSettings {
    /// Settings tight enough to resolve second-order deformation effects.
    pub fn precise() -> Self {
        Self {
            quadrature: QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-14, max_refinements: 40 },
            energy_rel_tol: 1e-14,
            max_bracket_steps: 80,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizationProblem {
    pub potential: PotentialModel,
    pub deformation: DeformationParams,
    pub mass: f64,
    /// Maslov-type offset in `Φ = π(n + δ)`.
    pub delta: f64,
    pub representation: Representation,
    pub settings: SolverSettings,
}

/// Default offset for a potential: 1/2 for smooth turning points, 0 for hard
/// walls. The inverse-square value depends on boundary conditions at the
/// singularity; 1/2 is only the default.
pub fn default_delta(potential: &PotentialModel) -> f64 {
    match potential {
        PotentialModel::InfiniteWell { .. } => 0.0,
        _ => 0.5,
    }
}

impl QuantizationProblem {
    pub fn new(potential: PotentialModel, deformation: DeformationParams) -> Result<Self> {
        potential.validate()?;
        let representation = match potential {
            PotentialModel::InverseSquare { .. } => Representation::PSpace,
            _ => Representation::XSpace,
        };
        Ok(Self {
            potential,
            deformation,
            mass: DEFAULT_MASS,
            delta: default_delta(&potential),
            representation,
            settings: SolverSettings::default(),
        })
    }

    pub fn with_mass(mut self, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Domain(format!("mass must be > 0, got {mass}")));
        }
        self.mass = mass;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::Domain(format!("delta must lie in [0, 1], got {delta}")));
        }
        self.delta = delta;
        Ok(self)
    }

    pub fn with_representation(mut self, representation: Representation) -> Result<Self> {
        if matches!(self.potential, PotentialModel::InverseSquare { .. })
            && representation == Representation::XSpace
        {
            return Err(Error::Domain(
                "the inverse-square problem is quantized in momentum space only".into(),
            ));
        }
        self.representation = representation;
        Ok(self)
    }

    pub fn with_settings(mut self, settings: SolverSettings) -> Self {
        self.settings = settings;
        self
    }

    fn beta(&self) -> f64 {
        self.deformation.beta()
    }

    pub fn turning_points(&self, energy: f64) -> Result<TurningPoints> {
        self.potential.turning_points(energy)
    }

    /// Classical momentum at `x`, `√(2m(E − U))`.
    pub fn classical_momentum(&self, energy: f64, x: f64) -> Result<f64> {
        self.potential.classical_momentum(energy, x, self.mass)
    }

    /// Quasi-momentum `p(P(x))` clamped to zero outside the allowed region, for
    /// use inside quadrature where nodes may graze a turning point.
    fn quasi_momentum_profile(&self, energy: f64, x: f64) -> f64 {
        match self.potential.classical_momentum(energy, x, self.mass) {
            Ok(big_p) => self.deformation.quasi_momentum(big_p),
            Err(_) => 0.0,
        }
    }

    /// One-way phase `∫_{x1}^{x2} p dx` in coordinate space.
    pub fn phase_integral_x(&self, energy: f64) -> Result<f64> {
        if let PotentialModel::InverseSquare { .. } = self.potential {
            return Err(Error::Domain(
                "the inverse-square phase is evaluated in momentum space only".into(),
            ));
        }
        let tp = self.turning_points(energy)?;
        if let PotentialModel::InfiniteWell { width } = self.potential {
            // p is constant between the walls; the quadrature path still applies.
            let p = self.deformation.quasi_momentum((2.0 * self.mass * energy).sqrt());
            let est = integrate_sqrt_endpoints(|_| p, 0.0, width, &self.settings.quadrature)?;
            return Ok(est.value);
        }
        let est = integrate_sqrt_endpoints(
            |x| self.quasi_momentum_profile(energy, x),
            tp.lower,
            tp.upper,
            &self.settings.quadrature,
        )?;
        Ok(est.value)
    }

    /// One-way phase `−½∮ X dP / f(P)` in momentum space.
    pub fn phase_integral_p(&self, energy: f64) -> Result<f64> {
        let (lo, hi) = self.potential.bound_energy_range();
        if !(energy > lo && energy < hi) {
            return Err(Error::NoBoundRegion(format!(
                "E = {energy} admits no bound motion for the {} potential",
                self.potential.name()
            )));
        }
        let m2 = 2.0 * self.mass;
        let d = self.deformation;
        let spec = &self.settings.quadrature;
        let p_max = (m2 * energy.max(0.0)).sqrt();
        // X(P) from the energy relation, with X_right − X_left halved.
        let value = match self.potential {
            PotentialModel::Harmonic => {
                integrate_sqrt_endpoints(
                    |p| (energy - p * p / m2).max(0.0).sqrt() / d.f(p),
                    -p_max,
                    p_max,
                    spec,
                )?
                .value
            }
            PotentialModel::PowerLaw { gamma, power } => {
                let inv = 1.0 / power as f64;
                integrate_sqrt_endpoints(
                    |p| (energy - p * p / m2).max(0.0).powf(inv) / gamma / d.f(p),
                    -p_max,
                    p_max,
                    spec,
                )?
                .value
            }
            PotentialModel::InfiniteWell { width } => {
                integrate_sqrt_endpoints(|p| 0.5 * width / d.f(p), -p_max, p_max, spec)?.value
            }
            PotentialModel::InverseSquare { gamma } => {
                if d.is_undeformed() {
                    return Err(Error::NoBoundRegion(
                        "the inverse-square potential has no bound states without deformation"
                            .into(),
                    ));
                }
                let half = integrate_semi_infinite(
                    |p| (gamma / (p * p / m2 - energy)).sqrt() / d.f(p),
                    spec,
                )?;
                2.0 * half.value
            }
        };
        Ok(value)
    }

    /// Phase in the problem's configured representation.
    pub fn phase_integral(&self, energy: f64) -> Result<f64> {
        match self.representation {
            Representation::XSpace => self.phase_integral_x(energy),
            Representation::PSpace => self.phase_integral_p(energy),
        }
    }

    /// Supremum of `Φ` over the bound range, when finite. A deformed well has
    /// bounded quasi-momentum and fixed width, so it supports finitely many
    /// levels.
    pub fn phase_supremum(&self) -> f64 {
        match self.potential {
            PotentialModel::InfiniteWell { width } => width * self.deformation.quasi_momentum_bound(),
            _ => f64::INFINITY,
        }
    }

    fn seed_energy(&self, quantum: f64) -> f64 {
        let beta = self.beta();
        let m = self.mass;
        match self.potential {
            PotentialModel::Harmonic => {
                // Mass-scaled undeformed level plus the β-linear shift.
                let omega_scale = (1.0 / m).sqrt();
                let e0 = 2.0 * quantum * omega_scale / 2f64.sqrt();
                e0 * (1.0 + 0.25 * beta * e0)
            }
            PotentialModel::PowerLaw { gamma, power } => {
                let e0 = reference::power_law_undeformed_level(quantum, gamma, power) / (2.0 * m);
                let t = 2.0 / power as f64;
                e0 * (1.0 + 2.0 * beta * e0 / ((1.0 + t) * (3.0 + t)))
            }
            PotentialModel::InfiniteWell { width } => {
                let k = PI * quantum / width;
                k * k / (2.0 * m)
            }
            PotentialModel::InverseSquare { gamma } => {
                -4.0 / beta.max(f64::MIN_POSITIVE) * (-PI * quantum / gamma.sqrt()).exp()
            }
        }
    }

    /// Energy of level `n`, solving `Φ(E) = π(n + δ)`.
    pub fn solve_level(&self, n: u32) -> Result<f64> {
        let target = PI * (n as f64 + self.delta);
        if target <= 0.0 {
            return Err(Error::InvalidQuantumNumber(format!(
                "n = {n} with δ = {} gives a zero phase; the first level is n = 1",
                self.delta
            )));
        }
        if target >= self.phase_supremum() {
            return Err(Error::NoBoundRegion(format!(
                "level n = {n} needs phase {target}, above the supremum {} of the deformed well",
                self.phase_supremum()
            )));
        }
        if matches!(self.potential, PotentialModel::InverseSquare { .. }) && self.deformation.is_undeformed() {
            return Err(Error::NoBoundRegion(
                "the inverse-square potential has no bound states without deformation".into(),
            ));
        }

        // E = sign·s with s > 0; the mismatch is increasing in s for confining
        // potentials and decreasing in s (increasing in E) for E < 0.
        let sign = if self.potential.bound_energy_range().1 <= 0.0 { -1.0 } else { 1.0 };
        let seed = self.seed_energy(n as f64 + self.delta).abs();
        let seed = if seed.is_finite() && seed > 0.0 { seed } else { 1.0 };
        let mismatch = |s: f64| -> Result<f64> {
            let phase = self.phase_integral(sign * s)?;
            Ok(sign * (phase - target))
        };
        let br = expand_geometric(mismatch, seed, self.settings.max_bracket_steps)?;
        if br.lo == br.hi {
            return Ok(sign * br.lo);
        }
        let energy_mismatch = |e: f64| -> Result<f64> { Ok(self.phase_integral(e)? - target) };
        let (e_a, e_b) = (sign * br.lo, sign * br.hi);
        let (f_a, f_b) = (sign * br.f_lo, sign * br.f_hi);
        brent(energy_mismatch, e_a, e_b, f_a, f_b, self.settings.energy_rel_tol, 0.0)
    }

    /// First quantum number with a nonzero phase.
    pub fn first_level(&self) -> u32 {
        if self.delta == 0.0 {
            1
        } else {
            0
        }
    }

    /// Closed-form comparison value for level `n` (paper units only).
    pub fn reference_level(&self, n: u32) -> Option<ReferenceValue> {
        if self.mass != DEFAULT_MASS {
            return None;
        }
        let beta = self.beta();
        match self.potential {
            PotentialModel::Harmonic if self.delta == 0.5 => Some(ReferenceValue::new(
                reference::ho_wkb_closed(n, beta),
                ReferenceKind::WkbClosedForm,
                "harmonic WKB closed form",
            )),
            PotentialModel::PowerLaw { gamma, power } if self.delta == 0.5 => {
                reference::anharmonic_linear(n, gamma, power, beta).ok().map(|v| {
                    ReferenceValue::new(v, ReferenceKind::LinearInBeta, "power-law WKB, linear in beta")
                })
            }
            PotentialModel::InfiniteWell { width } => reference::well_wkb(n, width, beta, self.delta)
                .ok()
                .map(|v| ReferenceValue::new(v, ReferenceKind::LinearInBeta, "infinite well WKB, linear in beta")),
            PotentialModel::InverseSquare { gamma } => {
                reference::inverse_square_small_beta(n, gamma, beta, self.delta)
                    .ok()
                    .map(|v| ReferenceValue::new(v, ReferenceKind::LinearInBeta, "inverse-square small-beta form"))
            }
            _ => None,
        }
    }

    /// Levels `first_level()..=n_max` with references and validity verdicts.
    /// Failed levels are kept as rows carrying their error.
    pub fn spectrum(&self, n_max: u32) -> SpectrumTable {
        let rows = (self.first_level()..=n_max)
            .map(|n| {
                let reference = self.reference_level(n).map(|r| r.value);
                match self.solve_level(n) {
                    Ok(e) => {
                        let verdict = validity::assess(self, e).ok().map(|r| r.verdict);
                        SpectrumRow::solved(n, e, reference, verdict)
                    }
                    Err(err) => SpectrumRow::failed(n, reference, &err),
                }
            })
            .collect();
        SpectrumTable { rows }
    }

    /// Leading-order standing wave `|P f(P)|^{-1/2} cos(Φ(x1→x) − π/4)`,
    /// unnormalized, at a point strictly inside the allowed region.
    pub fn wkb_wavefunction(&self, energy: f64, x: f64) -> Result<f64> {
        let tp = self.wavefunction_region(energy)?;
        if !tp.contains_strictly(x) {
            return Err(Error::OutsideAllowedRegion { x, lower: tp.lower, upper: tp.upper });
        }
        let phase = self.partial_phase(energy, tp.lower, x)?;
        self.standing_wave(energy, x, phase)
    }

    /// `n_points` equally spaced interior samples `(x, ψ(x))`, accumulating
    /// the phase piecewise.
    pub fn wkb_wavefunction_samples(&self, energy: f64, n_points: usize) -> Result<Vec<(f64, f64)>> {
        let tp = self.wavefunction_region(energy)?;
        let h = tp.width() / (n_points as f64 + 1.0);
        let mut out = Vec::with_capacity(n_points);
        let mut phase = 0.0;
        let mut prev = tp.lower;
        for i in 1..=n_points {
            let x = tp.lower + h * i as f64;
            phase += self.partial_phase(energy, prev, x)?;
            prev = x;
            out.push((x, self.standing_wave(energy, x, phase)?));
        }
        Ok(out)
    }

    fn wavefunction_region(&self, energy: f64) -> Result<TurningPoints> {
        if let PotentialModel::InverseSquare { .. } = self.potential {
            return Err(Error::Domain(
                "no coordinate-space wavefunction for the inverse-square problem".into(),
            ));
        }
        self.turning_points(energy)
    }

    fn partial_phase(&self, energy: f64, from: f64, to: f64) -> Result<f64> {
        if to <= from {
            return Ok(0.0);
        }
        let est = integrate_sqrt_endpoints(
            |x| self.quasi_momentum_profile(energy, x),
            from,
            to,
            &self.settings.quadrature,
        )?;
        Ok(est.value)
    }

    fn standing_wave(&self, energy: f64, x: f64, phase: f64) -> Result<f64> {
        let big_p = self.classical_momentum(energy, x)?;
        let amplitude = (big_p * self.deformation.f(big_p)).abs();
        if amplitude == 0.0 {
            return Err(Error::SingularMetric { x });
        }
        Ok((phase - FRAC_PI_4).cos() / amplitude.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub e_numeric: Option<f64>,
    pub e_reference: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub validity: Option<Verdict>,
    pub error: Option<String>,
}

impl SpectrumRow {
    pub fn solved(n: u32, e: f64, reference: Option<f64>, validity: Option<Verdict>) -> Self {
        let abs_err = reference.map(|r| (e - r).abs());
        let rel_err = reference.and_then(|r| abs_err.map(|a| a / r.abs()));
        Self {
            n,
            e_numeric: Some(e),
            e_reference: reference,
            abs_err,
            rel_err,
            validity,
            error: None,
        }
    }

    pub fn failed(n: u32, reference: Option<f64>, err: &Error) -> Self {
        Self {
            n,
            e_numeric: None,
            e_reference: reference,
            abs_err: None,
            rel_err: None,
            validity: None,
            error: Some(format!("{}: {err}", err.kind())),
        }
    }
}

/// Rows sorted by `n`; solved energies strictly increase with `n`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub fn energies(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.e_numeric).collect()
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.energies().windows(2).all(|w| w[0] < w[1])
    }
}
