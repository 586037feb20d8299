//! Wall time of one Φ sample per problem kind.

use nfduality::duality::{sample_at, NearFieldProvider, PhaseOptions};
use nfduality::forward::ScatteringProblem;
use nfduality::geometry::{make_circle, validate_scene};
use std::time::Instant;

fn main() -> nfduality::Result<()> {
    let scene = validate_scene(make_circle([0.0, 0.0], 1.0, 128)?, make_circle([2.0, 0.0], 0.3, 64)?)?;
    for (problem, lambda) in [
        (ScatteringProblem::dirichlet(), 5.0),
        (ScatteringProblem::neumann(), 9.0),
        (ScatteringProblem::transmission(4.0)?, 42.0),
    ] {
        let p = NearFieldProvider::new(scene.clone(), problem);
        let t = Instant::now();
        let s = sample_at(&p, lambda, &PhaseOptions::default());
        println!("{:<12} λ = {lambda:5.1}  Ψ = {:.6}  retained = {}  {:?}", problem.name(), s.psi, s.n_retained(), t.elapsed());
    }
    Ok(())
}
