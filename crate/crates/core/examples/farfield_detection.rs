//! Eigenvalue detection on the unit disk with the far-field operator as the
//! phase provider, plus the phase-set comparison against F_S.

use nfduality::duality::*;
use nfduality::forward::ScatteringProblem;
use nfduality::geometry::{make_circle, validate_scene, Vec2};
use nfduality::potentials::WaveContext;

fn main() -> nfduality::Result<()> {
    let opts = PhaseOptions::default();
    let th = Thresholds::default();
    // the Neumann jump at 9.3284 is just under 1 rad
    for (problem, interval, th) in [
        (ScatteringProblem::dirichlet(), [2.0, 16.0], th),
        (ScatteringProblem::neumann(), [2.0, 12.0], Thresholds { tau_jump: 0.5, ..th }),
    ] {
        let p = FarFieldProvider { problem, center: Vec2::zeros(), radius: 1.0, n_dir: 32 };
        let curve = sweep(&p, interval, 0.05, 1, &opts)?;
        for d in detect(&curve, &p, &th, &opts, 1)? {
            let m = multiplicity_diagnostic(&p, &d, &th, &opts);
            println!("{:<10} λ̂ = {:.6}  bracket [{:.6}, {:.6}]  {}  multiplicity {m:?}", problem.name(), d.lambda_hat, d.bracket[0], d.bracket[1], d.side.name());
        }
    }

    let scene = validate_scene(make_circle([0.0, 0.0], 1.0, 128)?, make_circle([2.0, 0.0], 0.3, 64)?)?;
    for k in [1.5, 2.5] {
        let r = farfield_phase_check(&scene, &ScatteringProblem::dirichlet(), &WaveContext::from_k(k)?, 64, &opts)?;
        println!(
            "k = {k}: far-field arc [{:.4}, {:.4}], Hausdorff {:.1e}, unitarity {:.1e}, |γ|/√(k/8π) = {:.6}",
            r.farfield_arc[0], r.farfield_arc[1], r.hausdorff, r.unitarity_residual, r.gamma_ratio
        );
    }
    Ok(())
}
