//! Density probe and Tikhonov source synthesis on the disk scene.

use nfduality::forward::ScatteringProblem;
use nfduality::geometry::{make_circle, validate_scene, Vec2};
use nfduality::potentials::{green2d, DensityVec, WaveContext};
use nfduality::synth::*;
use num_complex::Complex64;

fn main() -> nfduality::Result<()> {
    let scene = validate_scene(make_circle([0.0, 0.0], 1.0, 128)?, make_circle([2.0, 0.0], 0.3, 64)?)?;
    let ctx = WaveContext::from_k(1.7)?;
    let o = &scene.obstacle;
    let z = Vec2::new(-0.2, 0.3);
    let target = DensityVec::new(o.points.iter().map(|p| green2d(ctx.k, p, &z)).collect::<nfduality::Result<_>>()?);
    let probe = density_probe(&scene.source, o, &ctx, &target, &DEFAULT_ALPHAS)?;
    println!("probe: target norm {:.4e}, retained condition {:.2e}", probe.target_norm, probe.retained_condition);
    for (a, r) in probe.alphas.iter().zip(&probe.residuals) {
        println!("  α = {a:.0e}  residual {r:.4e}");
    }

    let phi = DensityVec::new(vec![Complex64::new(1.0, 0.0); scene.source.len()]);
    for radius in [DEFAULT_OUTER_RADIUS, 1.5] {
        let g = SynthesisGeometry::new(&scene.source, radius, DEFAULT_EPSILON, 128)?;
        let r = synthesize_sources(&scene, &ScatteringProblem::dirichlet(), &ctx, &phi, &g, &DEFAULT_ALPHAS)?;
        println!("outer radius {radius}, hole {}: ‖F_Sφ‖ = {:.4e}", g.gamma_inner.is_some(), r.data_norm);
        for i in 0..r.alphas.len() {
            println!("  α = {:.0e}  ‖ψ‖ {:.3e}  surrogate {:.4e}  data {:.4e}", r.alphas[i], r.psi_norms[i], r.surrogate_residuals[i], r.data_residuals[i]);
        }
    }
    Ok(())
}
