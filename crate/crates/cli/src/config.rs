//! Run configuration: command-line flags, an optional flat `key = value`
//! file, and the validated [`RunConfig`] built from both (flags win).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use mlwkb::quantizer::SolverSettings;
use mlwkb::{DeformationParams, PotentialModel, QuadratureSpec, QuantizationProblem, RadialKind, RadialProblem};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialArg {
    Harmonic,
    Power,
    Well,
    Invsq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialArg {
    Hydrogen,
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    #[default]
    Wavefunction,
    Series,
}

macro_rules! from_str_via_value_enum {
    ($($t:ty),*) => {$(
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                <$t as ValueEnum>::from_str(s, true)
            }
        }
    )*};
}
from_str_via_value_enum!(PotentialArg, RadialArg, Format, PlotKind);

/// Every flag is optional so that a config file can supply it instead.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// One-dimensional potential
    #[arg(long, value_enum)]
    pub potential: Option<PotentialArg>,
    /// Radially symmetric 3D problem
    #[arg(long, value_enum)]
    pub radial: Option<RadialArg>,
    /// Coupling γ (power law, inverse square, hydrogen)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Even exponent N of the power law (γx)^N
    #[arg(long = "power-n")]
    pub power_n: Option<u32>,
    /// Infinite-well width
    #[arg(long, allow_negative_numbers = true)]
    pub width: Option<f64>,
    /// Orbital quantum number for radial problems
    #[arg(long = "l")]
    pub l: Option<u32>,
    /// Minimal-length parameter β (default 0)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Second deformation parameter β′ for radial problems (default 0)
    #[arg(long = "beta-prime", allow_negative_numbers = true)]
    pub beta_prime: Option<f64>,
    /// Offset δ in Φ(E) = π(n + δ); one-dimensional problems only
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Highest quantum number to solve (default 10)
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,
    /// Particle mass (default 1/2, so H = P² + U)
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Absolute quadrature tolerance
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
    /// Relative tolerance for quadrature and for level energies
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    /// plotdata: wavefunction samples or a spectrum series
    #[arg(long, value_enum)]
    pub kind: Option<PlotKind>,
    /// plotdata: level whose wavefunction is sampled
    #[arg(long)]
    pub level: Option<u32>,
    /// plotdata: number of interior wavefunction samples
    #[arg(long)]
    pub samples: Option<usize>,
}

pub const KNOWN_KEYS: &[&str] = &[
    "potential", "radial", "gamma", "power-n", "width", "l", "beta", "beta-prime", "delta", "n-max",
    "mass", "format", "out", "abs-tol", "rel-tol", "kind", "level", "samples",
];

/// Parses `key = value` lines; `#` starts a comment, `_` in keys reads as `-`.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("line {}: unknown key `{key}`", i + 1)));
        }
        let value = value.trim().trim_matches('"').to_string();
        if entries.insert(key.clone(), value).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key `{key}`", i + 1)));
        }
    }
    Ok(entries)
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| CliError::Config(format!("bad value `{value}` for `{key}`: {e}")))
}

macro_rules! fill_from {
    ($flags:ident, $entries:ident, $($field:ident => $key:literal),* $(,)?) => {$(
        if $flags.$field.is_none() {
            if let Some(v) = $entries.get($key) {
                $flags.$field = Some(parse_value($key, v)?);
            }
        }
    )*};
}

impl Flags {
    /// Fills unset flags from config-file entries.
    pub fn merge_file(mut self, entries: &BTreeMap<String, String>) -> Result<Self, CliError> {
        fill_from!(self, entries,
            potential => "potential", radial => "radial", gamma => "gamma", power_n => "power-n",
            width => "width", l => "l", beta => "beta", beta_prime => "beta-prime", delta => "delta",
            n_max => "n-max", mass => "mass", format => "format", out => "out", abs_tol => "abs-tol",
            rel_tol => "rel-tol", kind => "kind", level => "level", samples => "samples",
        );
        Ok(self)
    }

    /// Reads `--config` if given and merges it under the flags.
    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let merged = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                let entries = parse_config_text(&text)?;
                self.clone().merge_file(&entries)?
            }
            None => self,
        };
        RunConfig::from_flags(&merged)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum System {
    OneDimensional {
        potential: PotentialModel,
        mass: f64,
        /// Explicit δ; `None` means the potential's default.
        delta: Option<f64>,
    },
    Radial {
        kind: RadialKind,
        l: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotOptions {
    pub kind: PlotKind,
    pub level: Option<u32>,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub system: System,
    pub beta: f64,
    pub beta_prime: f64,
    pub n_max: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub plot: PlotOptions,
}

pub const DEFAULT_N_MAX: u32 = 10;
pub const DEFAULT_SAMPLES: usize = 200;

impl RunConfig {
    pub fn from_flags(f: &Flags) -> Result<Self, CliError> {
        let gamma = f.gamma.unwrap_or(1.0);
        let beta = f.beta.unwrap_or(0.0);
        let beta_prime = f.beta_prime.unwrap_or(0.0);
        let system = match (f.potential, f.radial) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("--potential and --radial are mutually exclusive".into()))
            }
            (None, None) => return Err(CliError::Config("one of --potential or --radial is required".into())),
            (Some(p), None) => {
                if beta_prime != 0.0 {
                    return Err(CliError::Config("--beta-prime applies to radial problems only".into()));
                }
                let potential = match p {
                    PotentialArg::Harmonic => PotentialModel::Harmonic,
                    PotentialArg::Power => PotentialModel::power_law(gamma, f.power_n.unwrap_or(4))?,
                    PotentialArg::Well => PotentialModel::infinite_well(f.width.unwrap_or(1.0))?,
                    PotentialArg::Invsq => PotentialModel::inverse_square(gamma)?,
                };
                System::OneDimensional { potential, mass: f.mass.unwrap_or(mlwkb::quantizer::DEFAULT_MASS), delta: f.delta }
            }
            (None, Some(r)) => {
                if f.delta.is_some() {
                    return Err(CliError::Config("--delta is fixed at 1/2 for radial problems".into()));
                }
                if f.mass.is_some_and(|m| m != mlwkb::quantizer::DEFAULT_MASS) {
                    return Err(CliError::Config("radial problems use m = 1/2 only".into()));
                }
                let kind = match r {
                    RadialArg::Hydrogen => RadialKind::Hydrogen { gamma },
                    RadialArg::Oscillator => RadialKind::Oscillator,
                };
                System::Radial { kind, l: f.l.unwrap_or(0) }
            }
        };
        let defaults = QuadratureSpec::default();
        let cfg = RunConfig {
            system,
            beta,
            beta_prime,
            n_max: f.n_max.unwrap_or(DEFAULT_N_MAX),
            format: f.format.unwrap_or_default(),
            out: f.out.clone(),
            abs_tol: f.abs_tol.unwrap_or(defaults.abs_tol),
            rel_tol: f.rel_tol.unwrap_or(defaults.rel_tol),
            plot: PlotOptions {
                kind: f.kind.unwrap_or_default(),
                level: f.level,
                samples: f.samples.unwrap_or(DEFAULT_SAMPLES),
            },
        };
        // Surface parameter errors now rather than per row.
        cfg.settings()?;
        match cfg.system {
            System::OneDimensional { .. } => {
                cfg.one_dimensional()?;
            }
            System::Radial { .. } => {
                cfg.radial()?;
            }
        }
        Ok(cfg)
    }

    pub fn settings(&self) -> Result<SolverSettings, CliError> {
        let quadrature = QuadratureSpec { abs_tol: self.abs_tol, rel_tol: self.rel_tol, ..QuadratureSpec::default() };
        quadrature.validate()?;
        Ok(SolverSettings { quadrature, energy_rel_tol: self.rel_tol, ..SolverSettings::default() })
    }

    pub fn one_dimensional(&self) -> Result<QuantizationProblem, CliError> {
        let System::OneDimensional { potential, mass, delta } = self.system else {
            return Err(CliError::Config("this command needs a one-dimensional --potential".into()));
        };
        let mut p = QuantizationProblem::new(potential, DeformationParams::with_beta(self.beta)?)?
            .with_mass(mass)?
            .with_settings(self.settings()?);
        if let Some(d) = delta {
            p = p.with_delta(d)?;
        }
        Ok(p)
    }

    pub fn radial(&self) -> Result<RadialProblem, CliError> {
        let System::Radial { kind, l } = self.system else {
            return Err(CliError::Config("this command needs a --radial problem".into()));
        };
        let d = DeformationParams::new(self.beta, self.beta_prime)?;
        Ok(RadialProblem::new(kind, l, d)?.with_settings(self.settings()?))
    }
}
