//! Deformed commutation relation `[X, P] = i f(P)` with `f(P) = 1 + βP²`
//! (units with ħ = 1), and the canonical quasi-momentum `p` for which
//! `[x, p] = i` holds again.
//!
//! The two momenta are related by `dP/dp = f(P)`, which for this family gives
//!
//! ```text
//! P(p) = tan(√β p) / √β,      p(P) = arctan(√β P) / √β.
//! ```
//!
//! The quasi-momentum is therefore confined to `|p| < π / (2√β)` while the
//! physical momentum is unbounded. `β = 0` is handled as its own branch, where
//! both maps are the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deformation parameters. `beta_prime` only enters radially symmetric
/// three-dimensional problems, where the algebra reads
/// `[X_i, P_j] = i(1 + βP²)δ_ij + iβ′P_iP_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParams {
    beta: f64,
    beta_prime: f64,
}

impl Default for DeformationParams {
    fn default() -> Self {
        Self::UNDEFORMED
    }
}

impl DeformationParams {
    pub const UNDEFORMED: DeformationParams = DeformationParams {
        beta: 0.0,
        beta_prime: 0.0,
    };

    pub fn new(beta: f64, beta_prime: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::Domain(format!("beta must be finite and >= 0, got {beta}")));
        }
        if !(beta_prime.is_finite() && beta_prime >= 0.0) {
            return Err(Error::Domain(format!(
                "beta_prime must be finite and >= 0, got {beta_prime}"
            )));
        }
        Ok(Self { beta, beta_prime })
    }

    /// One-dimensional deformation (`β′ = 0`).
    pub fn with_beta(beta: f64) -> Result<Self> {
        Self::new(beta, 0.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn beta_prime(&self) -> f64 {
        self.beta_prime
    }

    pub fn is_undeformed(&self) -> bool {
        self.beta == 0.0
    }

    /// Minimal position uncertainty `ΔX = √β` (ħ = 1).
    pub fn minimal_length(&self) -> f64 {
        self.beta.sqrt()
    }

    /// `f(P) = 1 + βP²`.
    pub fn f(&self, momentum: f64) -> f64 {
        1.0 + self.beta * momentum * momentum
    }

    /// Supremum of `|p|`; infinite when undeformed.
    pub fn quasi_momentum_bound(&self) -> f64 {
        if self.beta == 0.0 {
            f64::INFINITY
        } else {
            std::f64::consts::FRAC_PI_2 / self.beta.sqrt()
        }
    }

    /// Physical momentum `P(p) = tan(√β p)/√β`.
    pub fn momentum(&self, quasi: f64) -> Result<f64> {
        if self.beta == 0.0 {
            return Ok(quasi);
        }
        let bound = self.quasi_momentum_bound();
        if !(quasi.abs() < bound) {
            return Err(Error::Domain(format!(
                "quasi-momentum {quasi} outside the compactified range |p| < {bound}"
            )));
        }
        let s = self.beta.sqrt();
        Ok((s * quasi).tan() / s)
    }

    /// Quasi-momentum `p(P) = arctan(√β P)/√β`.
    pub fn quasi_momentum(&self, momentum: f64) -> f64 {
        if self.beta == 0.0 {
            return momentum;
        }
        let s = self.beta.sqrt();
        (s * momentum).atan() / s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn d(beta: f64) -> DeformationParams {
        DeformationParams::with_beta(beta).unwrap()
    }

    #[test]
    fn f_examples() {
        assert_eq!(d(0.1).f(0.0), 1.0);
        assert_eq!(d(0.0).f(2.0), 1.0);
        assert!((d(0.1).f(3.0) - 1.9).abs() < 1e-15);
    }

    #[test]
    fn momentum_examples() {
        assert_eq!(d(0.3).momentum(0.0).unwrap(), 0.0);
        assert!((d(1.0).momentum(PI / 4.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(d(0.0).momentum(0.5).unwrap(), 0.5);
        assert!((d(1.0).quasi_momentum(1.0) - PI / 4.0).abs() < 1e-15);
        assert_eq!(d(0.0).quasi_momentum(-7.25), -7.25);
        let dd = d(0.2);
        assert!((dd.quasi_momentum(dd.momentum(0.3).unwrap()) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn momentum_rejects_compactified_edge() {
        let dd = d(1.0);
        assert!(matches!(dd.momentum(PI / 2.0), Err(Error::Domain(_))));
        assert!(matches!(dd.momentum(-2.0), Err(Error::Domain(_))));
        assert!(dd.momentum(f64::NAN).is_err());
    }

    #[test]
    fn rejects_negative_parameters() {
        assert!(DeformationParams::new(-1e-3, 0.0).is_err());
        assert!(DeformationParams::new(0.0, -1.0).is_err());
        assert!(DeformationParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn minimal_length_vanishes_only_when_undeformed() {
        assert_eq!(d(0.0).minimal_length(), 0.0);
        assert!((d(0.04).minimal_length() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_f_with_richardson_ratio() {
        let dd = d(0.3);
        for &p in &[-1.5, -0.4, 0.0, 0.7, 2.1] {
            let exact = dd.f(dd.momentum(p).unwrap());
            let err = |h: f64| {
                let fd = (dd.momentum(p + h).unwrap() - dd.momentum(p - h).unwrap()) / (2.0 * h);
                (fd - exact).abs()
            };
            let (e1, e2) = (err(1e-3), err(1e-4));
            assert!(e2 < 1e-7 * exact, "p = {p}: fd error {e2}");
            // Central differences are O(h²): a decade in h is two decades in error.
            if e1 > 1e-10 {
                let ratio = e1 / e2;
                assert!((ratio - 100.0).abs() < 5.0, "p = {p}: ratio {ratio}");
            }
        }
    }

    #[test]
    fn continuity_in_beta() {
        let dd = d(1e-12);
        for i in -100..=100 {
            let p = i as f64 * 0.1;
            assert!((dd.momentum(p).unwrap() - p).abs() <= 1e-9);
        }
    }

    proptest! {
        #[test]
        fn quasi_round_trip(beta in 1e-6f64..10.0, t in -0.999f64..0.999) {
            let dd = d(beta);
            let p = t * dd.quasi_momentum_bound();
            let back = dd.quasi_momentum(dd.momentum(p).unwrap());
            prop_assert!((back - p).abs() <= 1e-12 * (1.0 + p.abs()));
        }

        #[test]
        fn momentum_round_trip(beta in 0.0f64..1.0, big_p in -1e3f64..1e3) {
            let dd = d(beta);
            let back = dd.momentum(dd.quasi_momentum(big_p)).unwrap();
            prop_assert!((back - big_p).abs() <= 1e-12 * big_p.abs().max(1.0));
        }

        #[test]
        fn parity(beta in 0.0f64..5.0, t in -0.99f64..0.99, big_p in -1e3f64..1e3) {
            let dd = d(beta);
            let p = if beta == 0.0 { t * 10.0 } else { t * dd.quasi_momentum_bound() };
            prop_assert_eq!(dd.momentum(-p).unwrap(), -dd.momentum(p).unwrap());
            prop_assert_eq!(dd.f(-big_p), dd.f(big_p));
        }
    }
}
