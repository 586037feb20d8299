//! Plane wave on a sound-soft disk: Nyström field against the modal series,
//! then the far-field pattern of the kite.

use nfduality::forward::{direction_grid, plane_wave_coeffs, solve_dirichlet_nystrom, solve_disk_modal, ScatteringProblem};
use nfduality::geometry::{make_circle, make_kite, Vec2};
use nfduality::linalg::cis;
use nfduality::potentials::{DensityVec, WaveContext};
use std::sync::Arc;

fn main() -> nfduality::Result<()> {
    let ctx = WaveContext::from_k(3.0)?;
    let theta: f64 = 0.4;
    let d = Vec2::new(theta.cos(), theta.sin());
    let disk = Arc::new(make_circle([0.0, 0.0], 1.0, 128)?);
    let modal = solve_disk_modal(&ScatteringProblem::dirichlet(), 1.0, &ctx, &plane_wave_coeffs(theta, &Vec2::zeros(), &ctx, 40))?;
    let nys = solve_dirichlet_nystrom(disk.clone(), &ctx, &DensityVec::from_fn(&disk, |_, p| cis(ctx.k * p.dot(&d))), None)?;
    let probes: Vec<Vec2> = (0..8).map(|i| Vec2::new(2.0, 0.0).scale(1.0 + 0.25 * i as f64)).collect();
    let (a, b) = (modal.eval_scattered(&probes)?, nys.eval_scattered(&probes)?);
    for (p, (x, y)) in probes.iter().zip(a.iter().zip(&b)) {
        println!("x = {:5.2}  modal {:>26.12}  nystrom {:>26.12}  |diff| {:.1e}", p.x, x, y, (x - y).norm());
    }

    let kite = Arc::new(make_kite(128)?);
    let sol = solve_dirichlet_nystrom(kite.clone(), &ctx, &DensityVec::from_fn(&kite, |_, p| cis(ctx.k * p.dot(&d))), None)?;
    let angles = direction_grid(12);
    for (t, u) in angles.iter().zip(sol.far_field(&angles)) {
        println!("kite far field  θ = {t:5.3}  |u∞| = {:.6}", u.norm());
    }
    Ok(())
}
