use nfduality::duality::*;
use nfduality::forward::ScatteringProblem;
use nfduality::geometry::*;
use nfduality::linalg::CMat;
use nfduality::nearfield::FormMatrix;
use nfduality::potentials::WaveContext;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

const J01_SQ: f64 = 5.783185962946784;
const J11_SQ: f64 = 14.681970642123893;
const JP11_SQ: f64 = 3.389957441939271;
const JP21_SQ: f64 = 9.328363292861137;

fn disk_scene() -> SceneGeometry {
    validate_scene(make_circle([0.0, 0.0], 1.0, 128).unwrap(), make_circle([2.0, 0.0], 0.3, 64).unwrap()).unwrap()
}

fn far(problem: ScatteringProblem) -> FarFieldProvider {
    FarFieldProvider { problem, center: Vec2::zeros(), radius: 1.0, n_dir: 32 }
}

#[test]
fn farfield_provider_detects_dirichlet_eigenvalues() {
    let p = far(ScatteringProblem::dirichlet());
    let opts = PhaseOptions::default();
    let curve = sweep(&p, [2.0, 16.0], 0.05, 1, &opts).unwrap();
    let dets = detect(&curve, &p, &Thresholds::default(), &opts, 1).unwrap();
    let got: Vec<f64> = dets.iter().map(|d| d.lambda_hat).collect();
    println!("{got:?}");
    assert_eq!(got.len(), 2, "{got:?}");
    for (d, want) in dets.iter().zip([J01_SQ, J11_SQ]) {
        assert!((d.lambda_hat - want).abs() <= 1e-3, "{} vs {want}", d.lambda_hat);
        assert_eq!(d.side, Side::Below);
        assert!(d.bracket[0] < d.lambda_hat && d.lambda_hat <= d.bracket[1]);
        assert!(d.bracket[1] - d.bracket[0] <= 1e-4);
    }
    // right after a detection the phase floor jumps back up
    let after = curve.samples.iter().find(|s| s.lambda > J01_SQ + 0.1).unwrap();
    assert!(after.psi > 1.0);
}

#[test]
fn farfield_provider_detects_neumann_eigenvalues_from_above() {
    let p = far(ScatteringProblem::neumann());
    let opts = PhaseOptions::default();
    let curve = sweep(&p, [2.0, 12.0], 0.05, 1, &opts).unwrap();
    // the far-field jump at (j'_{2,1})² is just under 1 rad
    let th = Thresholds { tau_jump: 0.5, ..Thresholds::default() };
    let dets = detect(&curve, &p, &th, &opts, 1).unwrap();
    let got: Vec<f64> = dets.iter().map(|d| d.lambda_hat).collect();
    assert_eq!(got.len(), 2, "{got:?}");
    for (d, want) in dets.iter().zip([JP11_SQ, JP21_SQ]) {
        assert!((d.lambda_hat - want).abs() <= 1e-3, "{} vs {want}", d.lambda_hat);
        assert_eq!(d.side, Side::Above);
        assert_eq!(d.sigma, -1.0);
    }
}

#[test]
fn farfield_provider_multiplicities() {
    let opts = PhaseOptions::default();
    let th = Thresholds::default();
    for (problem, lambda, want) in [
        (ScatteringProblem::dirichlet(), J01_SQ, 1),
        (ScatteringProblem::dirichlet(), J11_SQ, 2),
        (ScatteringProblem::neumann(), JP11_SQ, 2),
    ] {
        let p = far(problem);
        let curve = sweep(&p, [lambda - 0.3, lambda + 0.3], 0.02, 1, &opts).unwrap();
        let dets = detect(&curve, &p, &th, &opts, 1).unwrap();
        assert_eq!(dets.len(), 1);
        let m = multiplicity_diagnostic(&p, &dets[0], &th, &opts);
        assert_eq!(m, Multiplicity::Count(want), "{} at {lambda}", problem.name());
    }
}

#[test]
fn farfield_monotone_approach() {
    let opts = PhaseOptions::default();
    for (problem, l0, dir) in [(ScatteringProblem::dirichlet(), J01_SQ, -1.0), (ScatteringProblem::neumann(), JP11_SQ, 1.0)] {
        let p = far(problem);
        let psi: Vec<f64> = (0..=6).map(|j| sample_at(&p, l0 + dir * 0.2 * 0.5f64.powi(j), &opts).psi).collect();
        println!("{}: {psi:?}", problem.name());
        assert!(psi.windows(2).all(|w| w[1] < w[0]), "{psi:?}");
        assert!(*psi.last().unwrap() < 0.02);
    }
}

#[test]
fn flat_curve_has_no_detections() {
    let p = far(ScatteringProblem::dirichlet());
    let opts = PhaseOptions::default();
    let curve = sweep(&p, [7.0, 9.0], 0.05, 1, &opts).unwrap();
    assert!(detect(&curve, &p, &Thresholds::default(), &opts, 1).unwrap().is_empty());
}

#[test]
fn sweep_is_independent_of_parallelism() {
    let p = NearFieldProvider::new(disk_scene(), ScatteringProblem::dirichlet());
    let opts = PhaseOptions::default();
    let a = sweep(&p, [5.0, 5.3], 0.02, 1, &opts).unwrap();
    let b = sweep(&p, [5.0, 5.3], 0.02, 8, &opts).unwrap();
    assert_eq!(a.samples.len(), 16);
    for (x, y) in a.samples.iter().zip(&b.samples) {
        assert_eq!(x.lambda.to_bits(), y.lambda.to_bits());
        assert_eq!(x.phi.to_bits(), y.phi.to_bits());
        assert_eq!(x.n_retained(), y.n_retained());
    }
    assert!(a.samples.windows(2).all(|w| w[0].lambda < w[1].lambda));
}

#[test]
fn nearfield_samples_satisfy_range_invariants() {
    let scene = disk_scene();
    let opts = PhaseOptions::default();
    for problem in [ScatteringProblem::dirichlet(), ScatteringProblem::neumann(), ScatteringProblem::transmission(4.0).unwrap()] {
        let p = NearFieldProvider::new(scene.clone(), problem);
        for lambda in [2.5, 6.1, 11.0] {
            let s = sample_at(&p, lambda, &opts);
            if s.skipped {
                continue;
            }
            assert!(s.spectrum_in_range(1e-8), "{} λ={lambda}", problem.name());
            if s.sigma > 0.0 {
                assert!(s.phi <= s.eig_phi + 1e-9);
            } else {
                assert!(s.phi >= s.eig_phi - 1e-9);
            }
            assert!((0.0..2.0 * PI).contains(&s.phi));
        }
    }
}

#[test]
fn farfield_check_reports_unitarity() {
    let scene = disk_scene();
    let opts = PhaseOptions::default();
    let ctx = WaveContext::from_k(2.0).unwrap();
    let r = farfield_phase_check(&scene, &ScatteringProblem::dirichlet(), &ctx, 64, &opts).unwrap();
    println!("{r:?}");
    assert!(r.unitarity_residual <= 1e-6 && r.unitarity_pass);
    assert!(r.circle_residual <= 1e-6);
    let g = Complex64::new(r.gamma[0], r.gamma[1]);
    let exact = Complex64::from_polar((2.0 / (2.0 * PI)).sqrt(), PI / 4.0);
    assert!((g - exact).norm() <= 1e-6 * exact.norm());
}

fn form(m: CMat) -> FormMatrix {
    FormMatrix { m, sigma: 1.0 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // The numerical range contains every eigenvalue and every sampled quadratic form.
    #[test]
    fn phase_floor_bounds_random_forms(re in proptest::collection::vec(-1.0f64..1.0, 9), im in proptest::collection::vec(-1.0f64..1.0, 9), shift in 0.5f64..3.0) {
        let m = CMat::from_fn(3, 3, |i, j| {
            let z = Complex64::new(re[3 * i + j], im[3 * i + j]) * 0.3;
            if i == j { z + Complex64::new(shift, 0.0) } else { z }
        });
        let opts = PhaseOptions::default();
        if let Ok(s) = phase_floor(&form(m.clone()), 1.0, &opts) {
            prop_assert!(s.spectrum_in_range(1e-8));
            prop_assert!(s.phi <= s.eig_phi + 1e-9);
            for t in 0..20 {
                let v = nfduality::linalg::CVec::from_fn(3, |i, _| Complex64::from_polar(1.0 + i as f64 * 0.1 * t as f64, 0.7 * (t * (i + 1)) as f64));
                let q = (v.adjoint() * &m * &v)[(0, 0)];
                prop_assert!(nfduality::linalg::arg_2pi(q) >= s.phi - 1e-6);
            }
        }
    }
}
