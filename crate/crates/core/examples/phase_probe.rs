//! Φ(λ) near the first Dirichlet eigenvalue of the unit disk, from the
//! near-field operator and from the far-field operator.

use nfduality::duality::{sample_at, FarFieldProvider, NearFieldProvider, PhaseOptions, PhaseProvider};
use nfduality::forward::ScatteringProblem;
use nfduality::geometry::{make_circle, validate_scene, Vec2};

fn main() -> nfduality::Result<()> {
    let scene = validate_scene(make_circle([0.0, 0.0], 1.0, 128)?, make_circle([2.0, 0.0], 0.3, 64)?)?;
    let problem = ScatteringProblem::dirichlet();
    let near = NearFieldProvider::new(scene, problem);
    let far = FarFieldProvider { problem, center: Vec2::zeros(), radius: 1.0, n_dir: 64 };
    let opts = PhaseOptions::default();
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "lambda", "psi_near", "eig_near", "psi_far", "eig_far");
    for i in 0..=16 {
        let l = 5.5 + 0.04 * i as f64;
        let (a, b) = (sample_at(&near, l, &opts), sample_at(&far, l, &opts));
        println!("{l:8.3} {:12.6} {:12.6} {:12.6} {:12.6}  n={}", a.psi, a.eig_phi, b.psi, b.eig_phi, a.n_retained());
    }
    println!("{}", near.describe());
    Ok(())
}
