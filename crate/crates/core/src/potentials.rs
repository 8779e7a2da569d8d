//! Potential-energy models for the one-dimensional problems, their classical
//! momentum profiles and turning points.
//!
//! Units: ħ = 1 and, unless a problem overrides it, m = 1/2, so that the
//! harmonic Hamiltonian reads `H = P² + X²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack used to treat `E − U(x)` as zero at a turning point that
/// was located analytically in floating point.
const TURNING_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialModel {
    /// `U(x) = x²`.
    Harmonic,
    /// `U(x) = (γx)^N` with `N` even.
    PowerLaw { gamma: f64, power: u32 },
    /// `U = 0` on `(0, width)`, infinite outside.
    InfiniteWell { width: f64 },
    /// `U(x) = −γ/x²` on the half-line `x > 0`.
    InverseSquare { gamma: f64 },
}

/// Endpoints of the classically allowed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPoints {
    pub lower: f64,
    pub upper: f64,
}

impl TurningPoints {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains_strictly(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

impl PotentialModel {
    pub fn power_law(gamma: f64, power: u32) -> Result<Self> {
        let model = PotentialModel::PowerLaw { gamma, power };
        model.validate()?;
        Ok(model)
    }

    pub fn infinite_well(width: f64) -> Result<Self> {
        let model = PotentialModel::InfiniteWell { width };
        model.validate()?;
        Ok(model)
    }

    pub fn inverse_square(gamma: f64) -> Result<Self> {
        let model = PotentialModel::InverseSquare { gamma };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PotentialModel::Harmonic => Ok(()),
            PotentialModel::PowerLaw { gamma, power } => {
                positive("gamma", gamma)?;
                if power < 2 || power % 2 != 0 {
                    return Err(Error::Domain(format!(
                        "power-law exponent must be even and >= 2, got {power}"
                    )));
                }
                Ok(())
            }
            PotentialModel::InfiniteWell { width } => positive("width", width),
            PotentialModel::InverseSquare { gamma } => positive("gamma", gamma),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PotentialModel::Harmonic => "harmonic",
            PotentialModel::PowerLaw { .. } => "power",
            PotentialModel::InfiniteWell { .. } => "well",
            PotentialModel::InverseSquare { .. } => "invsq",
        }
    }

    /// Mirror-symmetric about `x = 0`.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, PotentialModel::Harmonic | PotentialModel::PowerLaw { .. })
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let inside = match *self {
            PotentialModel::Harmonic | PotentialModel::PowerLaw { .. } => x.is_finite(),
            PotentialModel::InfiniteWell { width } => x > 0.0 && x < width,
            PotentialModel::InverseSquare { .. } => x > 0.0 && x.is_finite(),
        };
        if inside {
            Ok(())
        } else {
            Err(Error::Domain(format!("x = {x} is outside the domain of the {} potential", self.name())))
        }
    }

    /// `U(x)`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(match *self {
            PotentialModel::Harmonic => x * x,
            PotentialModel::PowerLaw { gamma, power } => (gamma * x).powi(power as i32),
            PotentialModel::InfiniteWell { .. } => 0.0,
            PotentialModel::InverseSquare { gamma } => -gamma / (x * x),
        })
    }

    /// `U′(x)`.
    pub fn slope(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(match *self {
            PotentialModel::Harmonic => 2.0 * x,
            PotentialModel::PowerLaw { gamma, power } => {
                power as f64 * gamma * (gamma * x).powi(power as i32 - 1)
            }
            PotentialModel::InfiniteWell { .. } => 0.0,
            PotentialModel::InverseSquare { gamma } => 2.0 * gamma / (x * x * x),
        })
    }

    /// Classical momentum `P(x) = √(2m(E − U(x)))`.
    pub fn classical_momentum(&self, energy: f64, x: f64, mass: f64) -> Result<f64> {
        let u = self.evaluate(x)?;
        let kinetic = energy - u;
        if kinetic.abs() <= TURNING_SLACK * energy.abs().max(u.abs()) {
            return Ok(0.0);
        }
        if kinetic > 0.0 {
            return Ok((2.0 * mass * kinetic).sqrt());
        }
        Err(Error::ClassicallyForbidden { energy, position: x })
    }

    /// Lowest energy at which a bounded allowed region exists (exclusive).
    pub fn bound_energy_range(&self) -> (f64, f64) {
        match self {
            PotentialModel::InverseSquare { .. } => (f64::NEG_INFINITY, 0.0),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Endpoints of the allowed interval at energy `E`. All supported models
    /// have closed forms; the inverse-square inner point is the singularity.
    pub fn turning_points(&self, energy: f64) -> Result<TurningPoints> {
        let (lo, hi) = self.bound_energy_range();
        if !(energy > lo && energy < hi) {
            return Err(Error::NoBoundRegion(format!(
                "E = {energy} admits no bounded allowed region for the {} potential",
                self.name()
            )));
        }
        Ok(match *self {
            PotentialModel::Harmonic => {
                let r = energy.sqrt();
                TurningPoints { lower: -r, upper: r }
            }
            PotentialModel::PowerLaw { gamma, power } => {
                let root = if power == 2 { energy.sqrt() } else { energy.powf(1.0 / power as f64) };
                let r = root / gamma;
                TurningPoints { lower: -r, upper: r }
            }
            PotentialModel::InfiniteWell { width } => TurningPoints { lower: 0.0, upper: width },
            PotentialModel::InverseSquare { gamma } => TurningPoints {
                lower: 0.0,
                upper: (gamma / -energy).sqrt(),
            },
        })
    }
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}
