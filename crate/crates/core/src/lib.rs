//! Semiclassical (WKB) spectra for quantum mechanics with a minimal length.
//!
//! The deformed algebra `[X, P] = i f(P)` with `f = 1 + βP²` is handled through
//! a canonical quasi-momentum `p(P)`; the Bohr-Sommerfeld condition
//! `∫ p dx = π(n + δ)` is then solved numerically and checked against closed
//! forms and exact spectra from the literature.

pub mod deformation;
pub mod error;
pub mod potentials;
pub mod quadrature;
pub mod quantizer;
pub mod radial3d;
pub mod reference;
pub mod roots;
pub mod validity;

pub use deformation::DeformationParams;
pub use error::{Error, Result};
pub use potentials::{PotentialModel, TurningPoints};
pub use quadrature::QuadratureSpec;
pub use quantizer::{QuantizationProblem, Representation, SolverSettings, SpectrumRow, SpectrumTable};
pub use radial3d::{RadialKind, RadialProblem};
pub use validity::{ValidityReport, Verdict};
