//! Source synthesis: densities ψ whose physically emitted waves reproduce
//! the near-field data F_Sφ, and the density probe for the range of L.

use crate::error::{Error, Result};
use crate::forward::ScatteringProblem;
use crate::geometry::{make_circle, DiscretizedCurve, SceneGeometry, Vec2};
use crate::linalg::{cis, CMat, CVec};
use crate::nearfield::{response_matrix, DirectMethod, Emission};
use crate::oracles::dirichlet_disk_eigs;
use crate::potentials::{green2d, DensityVec, WaveContext};
use num_complex::Complex64;
use serde::Serialize;

pub const DEFAULT_ALPHAS: [f64; 5] = [1e-2, 1e-4, 1e-6, 1e-8, 1e-10];
pub const DEFAULT_OUTER_RADIUS: f64 = 4.0;
pub const DEFAULT_EPSILON: f64 = 0.1;
/// Trigonometric densities |m| ≤ this span the probe's conditioning subspace.
pub const PROBE_MODES: i32 = 4;
const EIG_WARN: f64 = 1e-6;

/// Boundary of Õ = {|x| < R_out} minus the ε-extension of B: an outer circle
/// around the presumed scatterer region and, when that disk reaches B, a
/// circle ε outside the source curve.
#[derive(Debug, Clone)]
pub struct SynthesisGeometry {
    pub gamma_outer: DiscretizedCurve,
    /// None when the ε-extension of B lies outside the outer disk, so Õ is the disk.
    pub gamma_inner: Option<DiscretizedCurve>,
    pub epsilon: f64,
}

impl SynthesisGeometry {
    /// The outer circle is centred at the origin; the inner one at the
    /// centre of S with radius (bounding radius of S) + ε.
    pub fn new(source: &DiscretizedCurve, outer_radius: f64, epsilon: f64, n_nodes: usize) -> Result<Self> {
        if !(epsilon > 0.0 && outer_radius > 0.0) {
            return Err(Error::InvalidGeometry("outer radius and ε must be positive".into()));
        }
        let c = source.curve.center();
        let inner_r = source.points.iter().map(|p| (p - c).norm()).fold(0.0, f64::max) + epsilon;
        let gamma_inner = if c.norm() + inner_r < outer_radius {
            Some(make_circle([c.x, c.y], inner_r, n_nodes)?)
        } else if c.norm() - inner_r > outer_radius {
            None
        } else {
            return Err(Error::InvalidGeometry(format!(
                "circle of radius {inner_r} around B (centre {:?}) crosses the outer radius {outer_radius}",
                [c.x, c.y]
            )));
        };
        Ok(SynthesisGeometry { gamma_outer: make_circle([0.0, 0.0], outer_radius, n_nodes)?, gamma_inner, epsilon })
    }

    pub fn with_defaults(source: &DiscretizedCurve) -> Result<Self> {
        Self::new(source, DEFAULT_OUTER_RADIUS, DEFAULT_EPSILON, 128)
    }

    /// Obstacle strictly inside the outer circle and disjoint from the inner.
    pub fn check_scene(&self, scene: &SceneGeometry) -> Result<()> {
        let r_out = self.gamma_outer.bounding_radius();
        if scene.obstacle.points.iter().any(|p| p.norm() >= r_out) {
            return Err(Error::InvalidGeometry("obstacle reaches the outer synthesis circle".into()));
        }
        if let Some(inner) = &self.gamma_inner {
            let (ci, ri) = inner.curve.as_circle().expect("inner component is a circle");
            if scene.obstacle.points.iter().any(|p| (p - ci).norm() <= ri) || scene.obstacle.contains(&ci) {
                return Err(Error::InvalidGeometry("obstacle meets the inner synthesis circle".into()));
            }
        }
        Ok(())
    }

    fn points_and_weights(&self) -> (Vec<Vec2>, Vec<f64>) {
        let mut p = self.gamma_outer.points.clone();
        let mut w = self.gamma_outer.weights.clone();
        if let Some(inner) = &self.gamma_inner {
            p.extend_from_slice(&inner.points);
            w.extend_from_slice(&inner.weights);
        }
        (p, w)
    }
}

fn check_alphas(alphas: &[f64]) -> Result<()> {
    if alphas.is_empty() || alphas.iter().any(|a| !(*a > 0.0)) || alphas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("alphas must be positive and strictly decreasing".into()));
    }
    Ok(())
}

/// SVD-based Tikhonov solver for min ‖W_t^{1/2}(Ax − b)‖² + α‖W_s^{1/2}x‖².
struct Tikhonov {
    u: CMat,
    s: Vec<f64>,
    v_t: CMat,
    sw_t: Vec<f64>,
    sw_s: Vec<f64>,
}

impl Tikhonov {
    fn new(a: &CMat, w_target: &[f64], w_source: &[f64]) -> Self {
        let sw_t: Vec<f64> = w_target.iter().map(|w| w.sqrt()).collect();
        let sw_s: Vec<f64> = w_source.iter().map(|w| w.sqrt()).collect();
        let scaled = CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * (sw_t[i] / sw_s[j]));
        let svd = scaled.svd(true, true);
        Tikhonov { u: svd.u.unwrap(), s: svd.singular_values.iter().cloned().collect(), v_t: svd.v_t.unwrap(), sw_t, sw_s }
    }

    fn solve(&self, b: &CVec, alpha: f64) -> CVec {
        let bt = CVec::from_fn(b.len(), |i, _| b[i] * self.sw_t[i]);
        let coef = self.u.adjoint() * bt;
        let mut x = CVec::zeros(self.v_t.ncols());
        for (j, &s) in self.s.iter().enumerate() {
            if s > 0.0 {
                let f = s / (s * s + alpha);
                x += self.v_t.row(j).adjoint() * (coef[j] * f);
            }
        }
        CVec::from_fn(x.len(), |i, _| x[i] / self.sw_s[i])
    }
}

fn weighted_norm(v: &CVec, w: &[f64]) -> f64 {
    v.iter().zip(w).map(|(z, w)| z.norm_sqr() * w).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub alphas: Vec<f64>,
    pub residuals: Vec<f64>,
    pub target_norm: f64,
    pub singular_values: Vec<f64>,
    /// Largest-to-smallest singular value of L on the retained low-order
    /// trigonometric densities |m| ≤ 4 of the source curve.
    pub retained_condition: f64,
    pub warnings: Vec<String>,
}

fn eigen_warnings(curve: &DiscretizedCurve, name: &str, ctx: &WaveContext, out: &mut Vec<String>) {
    if let Some((_, r)) = curve.curve.as_circle() {
        let lo = (ctx.lambda - 1.0).max(0.0);
        if let Ok(eigs) = dirichlet_disk_eigs(r, [lo, ctx.lambda + 1.0]) {
            for e in eigs {
                if (e.lambda - ctx.lambda).abs() <= EIG_WARN * e.lambda.max(1.0) {
                    out.push(format!("λ = {} is a Dirichlet eigenvalue of {name} (m = {})", ctx.lambda, e.m));
                }
            }
        }
    }
}

/// Weighted L matrix from `source` to arbitrary target points.
fn l_matrix(source: &DiscretizedCurve, targets: &[Vec2], ctx: &WaveContext, outgoing: bool) -> Result<CMat> {
    let mut a = CMat::zeros(targets.len(), source.len());
    for (i, x) in targets.iter().enumerate() {
        for j in 0..source.len() {
            let g = green2d(ctx.k, x, &source.points[j])?;
            a[(i, j)] = if outgoing { g } else { g.conj() } * source.weights[j];
        }
    }
    Ok(a)
}

/// Tikhonov residuals of Lφ ≈ target for L from `source` to `target_curve`.
pub fn density_probe(
    source: &DiscretizedCurve,
    target_curve: &DiscretizedCurve,
    ctx: &WaveContext,
    target: &DensityVec,
    alphas: &[f64],
) -> Result<ProbeResult> {
    check_alphas(alphas)?;
    if target.len() != target_curve.len() {
        return Err(Error::InvalidArgument("target length does not match the target curve".into()));
    }
    let mut warnings = Vec::new();
    eigen_warnings(source, "the source domain", ctx, &mut warnings);
    eigen_warnings(target_curve, "the obstacle", ctx, &mut warnings);
    let a = l_matrix(source, &target_curve.points, ctx, false)?;
    let tik = Tikhonov::new(&a, &target_curve.weights, &source.weights);
    let b = CVec::from_column_slice(&target.values);
    let residuals = alphas.iter().map(|&al| weighted_norm(&(&a * tik.solve(&b, al) - &b), &target_curve.weights)).collect();

    // conditioning on the low-order densities, orthonormal in weighted L2(S)
    let perim: f64 = source.weights.iter().sum();
    let basis = CMat::from_fn(source.len(), (2 * PROBE_MODES + 1) as usize, |j, c| {
        let m = c as i32 - PROBE_MODES;
        cis(m as f64 * source.t[j]) / perim.sqrt()
    });
    let sw_t: Vec<f64> = target_curve.weights.iter().map(|w| w.sqrt()).collect();
    let lb = &a * basis;
    let lb = CMat::from_fn(lb.nrows(), lb.ncols(), |i, j| lb[(i, j)] * sw_t[i]);
    let s = lb.singular_values();
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(ProbeResult {
        alphas: alphas.to_vec(),
        residuals,
        target_norm: weighted_norm(&b, &target_curve.weights),
        singular_values: tik.s.clone(),
        retained_condition: smax / smin,
        warnings,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisResult {
    pub alphas: Vec<f64>,
    #[serde(skip)]
    pub psis: Vec<DensityVec>,
    pub psi_norms: Vec<f64>,
    pub surrogate_residuals: Vec<f64>,
    pub data_residuals: Vec<f64>,
    /// ‖conj(L)ψ_α − Lφ‖ on ∂O.
    pub trace_residuals: Vec<f64>,
    pub data_norm: f64,
    pub trace_norm: f64,
}

pub fn synthesize_sources(
    scene: &SceneGeometry,
    problem: &ScatteringProblem,
    ctx: &WaveContext,
    phi: &DensityVec,
    geometry: &SynthesisGeometry,
    alphas: &[f64],
) -> Result<SynthesisResult> {
    check_alphas(alphas)?;
    geometry.check_scene(scene)?;
    let src = &scene.source;
    if phi.len() != src.len() {
        return Err(Error::InvalidArgument(format!("φ has {} values, the source curve {} nodes", phi.len(), src.len())));
    }
    let (gp, gw) = geometry.points_and_weights();
    let l_gamma = l_matrix(src, &gp, ctx, false)?;
    let emit_gamma = l_matrix(src, &gp, ctx, true)?;
    let phi_v = CVec::from_column_slice(&phi.values);
    let target = &l_gamma * &phi_v;
    let tik = Tikhonov::new(&emit_gamma, &gw, &src.weights);

    let f_in = response_matrix(scene, problem, ctx, DirectMethod::Auto, None, Emission::Incoming)?;
    let f_out = response_matrix(scene, problem, ctx, DirectMethod::Auto, None, Emission::Outgoing)?;
    let data = &f_in * &phi_v;
    let l_o = l_matrix(src, &scene.obstacle.points, ctx, false)?;
    let emit_o = l_matrix(src, &scene.obstacle.points, ctx, true)?;
    let trace = &l_o * &phi_v;

    let mut out = SynthesisResult {
        alphas: alphas.to_vec(),
        psis: Vec::new(),
        psi_norms: Vec::new(),
        surrogate_residuals: Vec::new(),
        data_residuals: Vec::new(),
        trace_residuals: Vec::new(),
        data_norm: weighted_norm(&data, &src.weights),
        trace_norm: weighted_norm(&trace, &scene.obstacle.weights),
    };
    for &al in alphas {
        let psi = tik.solve(&target, al);
        out.surrogate_residuals.push(weighted_norm(&(&emit_gamma * &psi - &target), &gw));
        out.data_residuals.push(weighted_norm(&(&f_out * &psi - &data), &src.weights));
        out.trace_residuals.push(weighted_norm(&(&emit_o * &psi - &trace), &scene.obstacle.weights));
        out.psi_norms.push(weighted_norm(&psi, &src.weights));
        out.psis.push(DensityVec::new(psi.iter().cloned().collect::<Vec<Complex64>>()));
    }
    Ok(out)
}
