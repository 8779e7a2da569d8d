use std::f64::consts::PI;

use mlwkb::reference::{ho_wkb_closed, osc3d_linear};
use mlwkb::{DeformationParams, PotentialModel, QuantizationProblem, RadialKind, RadialProblem};

fn problem(potential: PotentialModel, beta: f64) -> QuantizationProblem {
    QuantizationProblem::new(potential, DeformationParams::with_beta(beta).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn representations_agree() {
    for &beta in &[0.0, 0.05, 0.1] {
        let p = problem(PotentialModel::Harmonic, beta);
        for &e in &[1.5, 3.3, 7.0] {
            let x = p.phase_integral_x(e).unwrap();
            let y = p.phase_integral_p(e).unwrap();
            assert!(rel(x, y) < 1e-9, "β = {beta}, E = {e}: {x} vs {y}");
        }
    }
    let p = problem(PotentialModel::power_law(1.3, 6).unwrap(), 0.02);
    assert!(rel(p.phase_integral_x(4.0).unwrap(), p.phase_integral_p(4.0).unwrap()) < 1e-9);
}

#[test]
fn phase_is_increasing() {
    let models = [
        (PotentialModel::Harmonic, 0.1),
        (PotentialModel::power_law(1.0, 4).unwrap(), 0.05),
        (PotentialModel::infinite_well(1.0).unwrap(), 0.01),
    ];
    for (m, beta) in models {
        let p = problem(m, beta);
        let phases: Vec<f64> = (1..60).map(|i| p.phase_integral(0.5 * i as f64).unwrap()).collect();
        assert!(phases.windows(2).all(|w| w[0] < w[1]), "{m:?}");
    }
    let p = problem(PotentialModel::inverse_square(4.0).unwrap(), 0.01);
    let phases: Vec<f64> = (1..60).map(|i| p.phase_integral(-1000.0 / i as f64).unwrap()).collect();
    assert!(phases.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn vanishing_deformation_limit() {
    let models = [
        PotentialModel::Harmonic,
        PotentialModel::power_law(1.0, 4).unwrap(),
        PotentialModel::infinite_well(1.0).unwrap(),
    ];
    for m in models {
        let tiny = problem(m, 1e-12);
        let zero = problem(m, 0.0);
        for n in tiny.first_level()..=20 {
            let (a, b) = (tiny.solve_level(n).unwrap(), zero.solve_level(n).unwrap());
            assert!(rel(a, b) < 1e-8, "{m:?} n = {n}");
        }
    }
}

#[test]
fn oscillator_matches_closed_form() {
    for &beta in &[1e-3, 1e-2, 1e-1] {
        let p = problem(PotentialModel::Harmonic, beta);
        for n in 0..=30 {
            assert!(rel(p.solve_level(n).unwrap(), ho_wkb_closed(n, beta)) < 1e-8);
        }
    }
}

#[test]
fn spectra_are_ordered() {
    for (m, beta) in [
        (PotentialModel::Harmonic, 0.1),
        (PotentialModel::power_law(0.7, 8).unwrap(), 0.01),
        (PotentialModel::infinite_well(2.0).unwrap(), 0.001),
        (PotentialModel::inverse_square(2.0).unwrap(), 0.05),
    ] {
        let t = problem(m, beta).spectrum(8);
        assert_eq!(t.failures(), 0, "{m:?}");
        assert!(t.is_strictly_increasing(), "{m:?}");
    }
}

#[test]
fn wavefunction_node_counts() {
    // A deformed well of width w holds levels only while n < w/(2√β).
    for &beta in &[0.0, 0.05, 0.1] {
        for (m, first) in [(PotentialModel::Harmonic, 0), (PotentialModel::infinite_well(10.0).unwrap(), 1)] {
            let p = problem(m, beta);
            for n in first..=10 {
                let e = p.solve_level(n).unwrap();
                let psi = p.wkb_wavefunction_samples(e, 2_000).unwrap();
                let nodes = psi.windows(2).filter(|w| w[0].1.signum() != w[1].1.signum()).count();
                assert_eq!(nodes as u32, n, "{m:?} β = {beta} n = {n}");
            }
        }
    }
}

#[test]
fn radial_mappings() {
    let osc = RadialProblem::new(RadialKind::Oscillator, 2, DeformationParams::UNDEFORMED).unwrap();
    for n_p in 0..4 {
        let n = osc.principal_number(n_p);
        assert!(rel(osc.solve_level_3d(n_p).unwrap(), osc3d_linear(n, 2, 0.0, 0.0).unwrap()) < 1e-9);
    }
    // Regression: moderate n_p for hydrogen at small β.
    let h = RadialProblem::new(RadialKind::Hydrogen { gamma: 1.0 }, 0, DeformationParams::new(1e-3, 0.0).unwrap())
        .unwrap();
    let e = h.solve_level_3d(3).unwrap();
    assert!(e < 0.0 && rel(e, -1.0 / 64.0) < 1e-3);
    assert!(rel(h.phase_integral_3d(e).unwrap(), 3.5 * PI) < 1e-9);
}
