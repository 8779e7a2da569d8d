//! Closed-form spectra used as oracles and comparison baselines.
//!
//! Units are ħ = 1, m = 1/2 throughout. Three kinds of values live here:
//!
//! * WKB closed forms, which are exact evaluations of the quantization
//!   condition (the harmonic oscillator and the inverse-square phase);
//! * exact spectra of the full quantum problem, quoted from the literature
//!   (the deformed oscillator of Kempf, Mangano and Mann);
//! * expansions of the WKB condition to linear order in the deformation.
//!
//! For the infinite well two WKB results coexist: the `N → ∞` limit of the
//! power-law family keeps the smooth-turning-point offset `δ = 1/2`, while a
//! direct treatment of hard walls gives `δ = 0`. [`well_wkb`] takes `δ`
//! explicitly so both can be compared.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma as gamma_fn;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// Exact evaluation of the Bohr-Sommerfeld condition.
    WkbClosedForm,
    /// Exact spectrum of the quantum problem from an external source.
    ExactExternal,
    /// Expansion to first order in β, β′.
    LinearInBeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceValue {
    pub value: f64,
    pub kind: ReferenceKind,
    pub source: String,
}

impl ReferenceValue {
    pub fn new(value: f64, kind: ReferenceKind, source: impl Into<String>) -> Self {
        Self { value, kind, source: source.into() }
    }
}

/// Harmonic oscillator `H = P² + X²`: `(2n+1) + β(n² + n + 1/4)`.
pub fn ho_wkb_closed(n: u32, beta: f64) -> f64 {
    let n = n as f64;
    (2.0 * n + 1.0) + beta * (n * n + n + 0.25)
}

/// Exact deformed oscillator spectrum (Kempf, Mangano, Mann):
/// `(2n+1)(β/2 + √(1 + β²/4)) + βn²`.
pub fn ho_exact_kempf(n: u32, beta: f64) -> f64 {
    let n = n as f64;
    (2.0 * n + 1.0) * (0.5 * beta + (1.0 + 0.25 * beta * beta).sqrt()) + beta * n * n
}

/// Leading terms of `ho_exact_kempf − ho_wkb_closed`: `β/4 + (2n+1)β²/8`.
pub fn ho_gap_prediction(n: u32, beta: f64) -> f64 {
    0.25 * beta + (2.0 * n as f64 + 1.0) * beta * beta / 8.0
}

fn check_power(power: u32) -> Result<()> {
    if power < 2 || !power.is_multiple_of(2) {
        return Err(Error::Domain(format!("power must be even and >= 2, got {power}")));
    }
    Ok(())
}

/// Undeformed Bohr-Sommerfeld levels of `U = (γx)^N` for a general offset
/// `n + δ`:
/// `[π Γ(3/2 + 1/N) / (Γ(1/2) Γ(1 + 1/N)) · γ(n + δ)]^{2N/(N+2)}`.
pub(crate) fn power_law_undeformed_level(quantum: f64, gamma: f64, power: u32) -> f64 {
    let inv = 1.0 / power as f64;
    let coefficient = PI * gamma_fn(1.5 + inv) / (PI.sqrt() * gamma_fn(1.0 + inv));
    let exponent = 2.0 * power as f64 / (power as f64 + 2.0);
    (coefficient * gamma * quantum).powf(exponent)
}

/// Undeformed levels `E⁰_n` of `U = (γx)^N` (offset 1/2).
pub fn anharmonic_undeformed(n: u32, gamma: f64, power: u32) -> Result<f64> {
    check_power(power)?;
    Ok(power_law_undeformed_level(n as f64 + 0.5, gamma, power))
}

/// `E⁰(1 + 2βE⁰ / ((1 + 2/N)(3 + 2/N)))`.
pub fn anharmonic_linear(n: u32, gamma: f64, power: u32, beta: f64) -> Result<f64> {
    let e0 = anharmonic_undeformed(n, gamma, power)?;
    let t = 2.0 / power as f64;
    Ok(e0 * (1.0 + 2.0 * beta * e0 / ((1.0 + t) * (3.0 + t))))
}

/// Infinite well of the given width to linear order in β: `k² + (2/3)βk⁴`
/// with `k = π(n + δ)/width`.
pub fn well_wkb(n: u32, width: f64, beta: f64, delta: f64) -> Result<f64> {
    let quantum = n as f64 + delta;
    if quantum <= 0.0 {
        return Err(Error::InvalidQuantumNumber(format!(
            "n + δ must be positive for the well, got n = {n}, δ = {delta}"
        )));
    }
    if !(width > 0.0) {
        return Err(Error::Domain(format!("width must be > 0, got {width}")));
    }
    let k = PI * quantum / width;
    let k2 = k * k;
    Ok(k2 + 2.0 / 3.0 * beta * k2 * k2)
}

/// Full-loop phase `∮` of the attractive inverse-square potential,
/// `4∫₀^∞ √γ dP / (√(P² − E)(1 + βP²))`, in closed form.
///
/// With `s = √(1 + Eβ)` the loop phase is `(√γ/s)·ln((2 + 2s + Eβ)/(2 − 2s + Eβ))`.
/// Since `2 ± 2s + Eβ = (1 ± s)²` and `1 − s = −Eβ/(1 + s)`, this is evaluated
/// as `(2√γ/s)·ln((1 + s)²/(−Eβ))`, which stays accurate for tiny `|Eβ|`.
/// For `1 + Eβ < 0` the same function continues analytically to
/// `4√γ·arctan(σ)/σ` with `σ = √(−1 − Eβ)`, and to `4√γ` at `1 + Eβ = 0`.
pub fn inverse_square_phase_closed(energy: f64, gamma: f64, beta: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(Error::Domain(format!("bound states need E < 0, got {energy}")));
    }
    if !(beta > 0.0) {
        return Err(Error::Domain(
            "the inverse-square phase diverges without deformation (β = 0)".into(),
        ));
    }
    let root_gamma = gamma.sqrt();
    let eb = energy * beta;
    let s2 = 1.0 + eb;
    if s2 > 1e-8 {
        let s = s2.sqrt();
        Ok(2.0 * root_gamma / s * (((1.0 + s) * (1.0 + s)) / -eb).ln())
    } else if s2 < -1e-8 {
        let sigma = (-s2).sqrt();
        Ok(4.0 * root_gamma * sigma.atan() / sigma)
    } else {
        // Both branches meet 4√γ(1 + s²/3 + s⁴/5 + …) at s² = 0; use that series.
        Ok(4.0 * root_gamma * (1.0 + s2 / 3.0 + s2 * s2 / 5.0))
    }
}

/// Small-β inversion of the inverse-square condition: `−(4/β)·e^{−π(n+δ)/√γ}`.
pub fn inverse_square_small_beta(n: u32, gamma: f64, beta: f64, delta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::Domain(
            "no bound states for the inverse-square potential without deformation".into(),
        ));
    }
    Ok(-4.0 / beta * (-PI * (n as f64 + delta) / gamma.sqrt()).exp())
}

fn check_hydrogen_numbers(n: u32, l: u32) -> Result<()> {
    if n < 1 || l >= n {
        return Err(Error::InvalidQuantumNumber(format!(
            "hydrogen needs n >= 1 and 0 <= l <= n-1, got n = {n}, l = {l}"
        )));
    }
    Ok(())
}

/// Hydrogen-like `H = P² − γ/X` to linear order, principal number `n`:
/// `−γ²/(4n²) + γ⁴/(8n³)·(β[2/(l+½) − 1/n] + β′[1/(l+½) − 1/n])`.
pub fn hydrogen_linear(n: u32, l: u32, gamma: f64, beta: f64, beta_prime: f64) -> Result<f64> {
    check_hydrogen_numbers(n, l)?;
    let nf = n as f64;
    let lam = l as f64 + 0.5;
    let g2 = gamma * gamma;
    let correction = beta * (2.0 / lam - 1.0 / nf) + beta_prime * (1.0 / lam - 1.0 / nf);
    Ok(-g2 / (4.0 * nf * nf) + g2 * g2 / (8.0 * nf.powi(3)) * correction)
}

/// Extra term found by perturbation theory (Benczik et al.) that the WKB
/// result lacks: `γ⁴/(16n³)·(2β − β′)/(l(l+1)(l+½))`.
pub fn benczik_extra_term(n: u32, l: u32, gamma: f64, beta: f64, beta_prime: f64) -> Result<f64> {
    check_hydrogen_numbers(n, l)?;
    if l == 0 {
        return Err(Error::Domain("the perturbative extra term is singular at l = 0".into()));
    }
    let nf = n as f64;
    let lf = l as f64;
    Ok(gamma.powi(4) / (16.0 * nf.powi(3)) * (2.0 * beta - beta_prime) / (lf * (lf + 1.0) * (lf + 0.5)))
}

/// Isotropic 3D oscillator to linear order, with `n = 2n_p + l`:
/// `2n + 3 + (β+β′)(n + 3/2)² + (β−β′)(l + ½)²`.
pub fn osc3d_linear(n: u32, l: u32, beta: f64, beta_prime: f64) -> Result<f64> {
    if l > n || !(n - l).is_multiple_of(2) {
        return Err(Error::InvalidQuantumNumber(format!(
            "3D oscillator needs n - l even and >= 0, got n = {n}, l = {l}"
        )));
    }
    let nf = n as f64;
    let lam = l as f64 + 0.5;
    Ok(2.0 * nf + 3.0 + (beta + beta_prime) * (nf + 1.5).powi(2) + (beta - beta_prime) * lam * lam)
}

/// Constant offset between Chang et al.'s exact deformed 3D oscillator and
/// [`osc3d_linear`]: `2β − β′/2`.
pub fn chang_gap(beta: f64, beta_prime: f64) -> f64 {
    2.0 * beta - 0.5 * beta_prime
}
