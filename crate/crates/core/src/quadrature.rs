//! Adaptive Gauss-Legendre quadrature for phase integrals.
//!
//! Each panel is integrated with a 16-point and a 32-point rule; their
//! difference is the panel's error estimate and the 32-point value is kept.
//! The panel with the largest estimate is bisected until the summed estimate
//! meets `max(abs_tol, rel_tol·|I|)`.
//!
//! Phase integrands vanish like `√(x − a)` at turning points. The map
//! `x = a + (b − a) sin²θ` turns those endpoints (and `1/√` ones) into smooth
//! behaviour in `θ`, so every finite phase integral goes through
//! [`integrate_sqrt_endpoints`]. Half-line integrals are compactified with
//! `P = t/(1 − t)`.
//!
//! Panel sums are accumulated in left-to-right order with pairwise summation,
//! so results are bit-reproducible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LOW_ORDER: usize = 16;
const HIGH_ORDER: usize = 32;
const INITIAL_PANELS: usize = 2;
const MAX_PANELS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any single panel.
    pub max_refinements: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_refinements: 30,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be > 0".into()));
        }
        if self.max_refinements < 1 {
            return Err(Error::Domain("max_refinements must be >= 1".into()));
        }
        Ok(())
    }

    /// Same spec with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes and weights on [-1, 1] by Newton iteration on `P_n`.
    fn legendre(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    fn apply<F: Fn(f64) -> f64>(&self, g: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * g(mid + half * t))
            .collect();
        half * pairwise_sum(&terms)
    }
}

fn rules() -> &'static (GaussRule, GaussRule) {
    static RULES: OnceLock<(GaussRule, GaussRule)> = OnceLock::new();
    RULES.get_or_init(|| (GaussRule::legendre(LOW_ORDER), GaussRule::legendre(HIGH_ORDER)))
}

pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // Largest error first; ties broken by position for determinism.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn panel<F: Fn(f64) -> f64>(g: &F, a: f64, b: f64, depth: u32) -> Result<Panel> {
    let (low, high) = rules();
    let coarse = low.apply(g, a, b);
    let fine = high.apply(g, a, b);
    if !fine.is_finite() || !coarse.is_finite() {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    Ok(Panel {
        a,
        b,
        value: fine,
        error: (fine - coarse).abs(),
        depth,
    })
}

/// Adaptive Gauss-Legendre on a finite interval, with no change of variables.
pub fn integrate<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration limits must be finite, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, panels: 0 });
    }
    if a > b {
        let r = integrate(g, b, a, spec)?;
        return Ok(Estimate { value: -r.value, ..r });
    }

    let mut heap = BinaryHeap::new();
    let h = (b - a) / INITIAL_PANELS as f64;
    for i in 0..INITIAL_PANELS {
        let lo = a + h * i as f64;
        let hi = if i + 1 == INITIAL_PANELS { b } else { a + h * (i + 1) as f64 };
        heap.push(panel(&g, lo, hi, 0)?);
    }

    loop {
        let (value, error) = totals(&heap);
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(Estimate { value, error, panels: heap.len() });
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= spec.max_refinements || heap.len() + 2 > MAX_PANELS {
            return Err(Error::NoConvergence {
                refinements: worst.depth,
                error,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(panel(&g, worst.a, mid, worst.depth + 1)?);
        heap.push(panel(&g, mid, worst.b, worst.depth + 1)?);
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    let errors: Vec<f64> = panels.iter().map(|p| p.error).collect();
    (pairwise_sum(&values), pairwise_sum(&errors))
}

/// `∫ₐᵇ g(x) dx` for integrands with at worst square-root behaviour at either
/// endpoint, via `x = a + (b − a) sin²θ`.
pub fn integrate_sqrt_endpoints<F: Fn(f64) -> f64>(
    g: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(a < b) {
        return Err(Error::Domain(format!("expected a < b, got [{a}, {b}]")));
    }
    let len = b - a;
    let transformed = |theta: f64| {
        let (s, c) = theta.sin_cos();
        // Approach each end from its own side so that b − x stays accurate.
        let x = if theta <= 0.25 * std::f64::consts::PI {
            a + len * s * s
        } else {
            b - len * c * c
        };
        g(x) * len * 2.0 * s * c
    };
    integrate(transformed, 0.0, FRAC_PI_2, spec)
}

/// `∫₀^∞ g(P) dP` via `P = t/(1 − t)`. `g` must decay faster than `1/P`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(g: F, spec: &QuadratureSpec) -> Result<Estimate> {
    let transformed = |t: f64| {
        let u = 1.0 - t;
        if u <= 0.0 {
            return 0.0;
        }
        g(t / u) / (u * u)
    };
    integrate(transformed, 0.0, 1.0, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gauss_rules_are_exact_for_their_degree() {
        let (low, high) = rules();
        for (rule, n) in [(low, LOW_ORDER), (high, HIGH_ORDER)] {
            assert!((pairwise_sum(&rule.weights) - 2.0).abs() < 1e-14);
            for k in [2 * n - 2, 2 * n - 1] {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                let got = rule.apply(&|x: f64| x.powi(k as i32), -1.0, 1.0);
                assert!((got - exact).abs() < 1e-13, "order {n}, degree {k}: {got}");
            }
        }
    }

    #[test]
    fn sqrt_endpoint_examples() {
        let half_disk = integrate_sqrt_endpoints(|x| (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0, &spec()).unwrap();
        assert!(rel(half_disk.value, PI / 2.0) < 1e-12);
        let one = integrate_sqrt_endpoints(|_| 1.0, 0.0, 2.0, &spec()).unwrap();
        assert!(rel(one.value, 2.0) < 1e-14);
    }

    /// 10⁶-panel midpoint rule, independent of the Gauss machinery.
    fn midpoint_oracle<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let terms: Vec<f64> = (0..n).map(|i| g(a + h * (i as f64 + 0.5))).collect();
        h * pairwise_sum(&terms)
    }

    #[test]
    fn arctan_profile_against_midpoint_oracle() {
        let g = |x: f64| (4.0 - x * x).max(0.0).sqrt().atan();
        let oracle = midpoint_oracle(g, -2.0, 2.0, 1_000_000);
        let got = integrate_sqrt_endpoints(g, -2.0, 2.0, &spec()).unwrap().value;
        // Midpoint error near √-endpoints scales like h^{3/2}.
        assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
    }

    #[test]
    fn semi_infinite_examples() {
        let e = integrate_semi_infinite(|p| (-p).exp(), &spec()).unwrap();
        assert!(rel(e.value, 1.0) < 1e-12);
        let l = integrate_semi_infinite(|p| 1.0 / (1.0 + p * p), &spec()).unwrap();
        assert!(rel(l.value, PI / 2.0) < 1e-12);
    }

    #[test]
    fn polynomials_to_degree_six() {
        let coeffs = [0.3, -1.2, 0.7, 2.0, -0.5, 0.25, 1.1];
        let poly = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let (a, b): (f64, f64) = (-0.7, 1.9);
        let exact: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0))
            .sum();
        let got = integrate_sqrt_endpoints(poly, a, b, &spec()).unwrap().value;
        assert!(rel(got, exact) < 1e-13);
        // On the half-line: ∫ P^k e^{-P} dP = k!.
        let mut fact = 1.0;
        for k in 0..=6 {
            if k > 0 {
                fact *= k as f64;
            }
            let got = integrate_semi_infinite(|p| p.powi(k) * (-p).exp(), &spec()).unwrap().value;
            assert!(rel(got, fact) < 1e-12, "k = {k}: {got}");
        }
    }

    #[test]
    fn reflection_invariance() {
        let g = |x: f64| (x - 0.2).max(0.0).sqrt() * (3.0 - x).max(0.0).sqrt() * (1.0 + x).ln();
        let r = |x: f64| g(0.2 + 3.0 - x);
        let i1 = integrate_sqrt_endpoints(g, 0.2, 3.0, &spec()).unwrap().value;
        let i2 = integrate_sqrt_endpoints(r, 0.2, 3.0, &spec()).unwrap().value;
        assert!((i1 - i2).abs() <= 1e-12 * i1.abs());
    }

    #[test]
    fn tighter_tolerance_stays_within_error_estimate() {
        let g = |x: f64| (1.0 - x * x).max(0.0).sqrt() / (1.0 + 30.0 * x * x);
        let loose = integrate_sqrt_endpoints(g, -1.0, 1.0, &QuadratureSpec { abs_tol: 1e-6, rel_tol: 1e-6, max_refinements: 30 }).unwrap();
        let tight = integrate_sqrt_endpoints(g, -1.0, 1.0, &QuadratureSpec { abs_tol: 5e-7, rel_tol: 5e-7, max_refinements: 30 }).unwrap();
        assert!((loose.value - tight.value).abs() <= loose.error);
    }

    #[test]
    fn inverse_sqrt_endpoint_is_regularized() {
        // ∫₀¹ dx/√x = 2
        let r = integrate_sqrt_endpoints(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec()).unwrap();
        assert!(rel(r.value, 2.0) < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let s = QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-14, max_refinements: 2 };
        let r = integrate(|x: f64| (x - 0.3).abs().sqrt(), 0.0, 1.0, &s);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let f = integrate(|x: f64| x.exp(), 1.0, 0.0, &spec()).unwrap();
        assert!(rel(f.value, -(1f64.exp() - 1.0)) < 1e-14);
    }

    #[test]
    fn bit_reproducible() {
        let g = |x: f64| (x * 7.0).sin().abs().sqrt();
        let a = integrate(g, 0.0, 3.0, &spec()).unwrap().value;
        let b = integrate(g, 0.0, 3.0, &spec()).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
