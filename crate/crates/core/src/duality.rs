//! Phase functional Φ(λ) from the numerical range of σF_S, λ sweeps,
//! eigenvalue detection at the phase discontinuities, a multiplicity
//! diagnostic, and the far-field cross-check of the phase sets.

use crate::error::{Error, Result};
use crate::forward::{farfield_operator, farfield_operator_nystrom, ProblemKind, ScatteringProblem};
use crate::geometry::{SceneGeometry, Vec2};
use crate::linalg::{arg_2pi, cis, dominant_subspace, eigenvalues, frobenius, hermitian_top, CMat};
use crate::nearfield::{assemble_fs, form_matrix, weighted_form, FormMatrix, MatrixCache, NearFieldMatrix, Route};
use crate::potentials::WaveContext;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

pub const DEFAULT_DELTA_REL: f64 = 1e-6;
pub const DEFAULT_THETA_GRID: usize = 720;
const COMPRESS_TOL: f64 = 1e-13;
const ZERO_SPECTRUM: f64 = 1e-13;
const GOLDEN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseOptions {
    pub delta_rel: f64,
    pub theta_grid: usize,
}

impl Default for PhaseOptions {
    fn default() -> Self {
        PhaseOptions { delta_rel: DEFAULT_DELTA_REL, theta_grid: DEFAULT_THETA_GRID }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Eigenphase {
    pub arg: f64,
    pub modulus: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseSample {
    pub lambda: f64,
    pub sigma: f64,
    /// Numerical-range value. σ = +1: inf of arg over [0, 2π); σ = −1: sup.
    pub phi: f64,
    /// Distance of Φ from the phase carrying the signal: Φ or 2π − Φ.
    pub psi: f64,
    pub eigenphases: Vec<Eigenphase>,
    /// Eigen-route counterpart of Φ (min or max retained eigenphase).
    pub eig_phi: f64,
    /// Boundary points z_θ on the uniform θ grid, as (re, im).
    pub nr_boundary: Vec<[f64; 2]>,
    pub skipped: bool,
    pub note: Option<String>,
}

impl PhaseSample {
    pub fn skipped(lambda: f64, sigma: f64, reason: String) -> Self {
        PhaseSample {
            lambda,
            sigma,
            phi: f64::NAN,
            psi: f64::NAN,
            eigenphases: Vec::new(),
            eig_phi: f64::NAN,
            nr_boundary: Vec::new(),
            skipped: true,
            note: Some(reason),
        }
    }

    pub fn n_retained(&self) -> usize {
        self.eigenphases.len()
    }

    /// Retained eigenvalues of M, as reconstructed from phases and moduli.
    pub fn retained_eigenvalues(&self) -> Vec<Complex64> {
        self.eigenphases.iter().map(|e| Complex64::from_polar(e.modulus, e.arg)).collect()
    }

    /// Every retained eigenvalue lies in the support-line polygon of the
    /// sampled boundary, inflated by rel·max|z|.
    pub fn spectrum_in_range(&self, rel: f64) -> bool {
        let t = self.nr_boundary.len();
        let zmax = self.nr_boundary.iter().map(|z| z[0].hypot(z[1])).fold(0.0, f64::max);
        self.retained_eigenvalues().iter().all(|mu| {
            (0..t).all(|i| {
                let th = 2.0 * PI * i as f64 / t as f64;
                let z = Complex64::new(self.nr_boundary[i][0], self.nr_boundary[i][1]);
                let e = cis(-th);
                (e * mu).re <= (e * z).re + rel * zmax
            })
        })
    }
}

fn psi_of(phi: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        phi
    } else {
        2.0 * PI - phi
    }
}

/// Top eigenpair boundary point of the numerical range in direction θ.
fn boundary_point(c: &CMat, theta: f64) -> (Complex64, f64) {
    let e = cis(-theta);
    let h = (c * e + c.adjoint() * e.conj()) * Complex64::new(0.5, 0.0);
    let (top, v) = hermitian_top(h);
    let z = (v.adjoint() * c * &v)[(0, 0)];
    (z, top)
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Φ of a form matrix from its numerical range, with the eigenphases as a
/// diagnostic overlay.
pub fn phase_floor(form: &FormMatrix, lambda: f64, opts: &PhaseOptions) -> Result<PhaseSample> {
    let m = &form.m;
    if !(opts.delta_rel > 0.0 && opts.delta_rel < 1.0) || opts.theta_grid < 8 {
        return Err(Error::InvalidArgument("delta_rel must lie in (0, 1) and the θ grid needs ≥ 8 points".into()));
    }
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidArgument("form matrix has non-finite entries".into()));
    }
    let fro = frobenius(m);
    if fro == 0.0 {
        return Err(Error::Degenerate("operator is zero"));
    }
    let q = dominant_subspace(m, COMPRESS_TOL);
    let c = q.adjoint() * m * &q;
    let sigma = form.sigma;

    let t = opts.theta_grid;
    let pts: Vec<(Complex64, f64)> = (0..t).map(|i| boundary_point(&c, 2.0 * PI * i as f64 / t as f64)).collect();
    let zmax = pts.iter().map(|p| p.0.norm()).fold(0.0, f64::max);
    let hmin = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    if hmin > opts.delta_rel * zmax {
        return Err(Error::Degenerate("phase spans full circle"));
    }
    let mu = eigenvalues(&c);
    let mu_max = mu.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if mu_max < ZERO_SPECTRUM * fro {
        return Err(Error::Degenerate("spectrum is numerically zero"));
    }

    let cut = opts.delta_rel * zmax;
    // objective in "signal" orientation: arg for σ = +1, −arg for σ = −1
    let key = |z: Complex64| if sigma > 0.0 { arg_2pi(z) } else { -arg_2pi(z) };
    let (mut best, mut best_i) = (f64::INFINITY, usize::MAX);
    for (i, (z, _)) in pts.iter().enumerate() {
        if z.norm() >= cut && key(*z) < best {
            best = key(*z);
            best_i = i;
        }
    }
    if best_i == usize::MAX {
        return Err(Error::Degenerate("no retained boundary points"));
    }
    // refine around the grid optimum in an unwrapped frame anchored at it
    let a0 = arg_2pi(pts[best_i].0);
    let step = 2.0 * PI / t as f64;
    let th0 = step * best_i as f64;
    let s = sigma.signum();
    let local = |th: f64| {
        let (z, _) = boundary_point(&c, th);
        if z.norm() < cut {
            return f64::INFINITY;
        }
        s * ((z * cis(-a0)).arg() + a0)
    };
    let (_, refined) = golden(local, th0 - step, th0 + step, GOLDEN_TOL);
    let raw = if refined.is_finite() { s * refined } else { a0 };
    // a boundary crossing the 0 ≡ 2π cut pins the inf (sup) at the cut
    let phi = if sigma > 0.0 { raw.clamp(0.0, a0) } else { raw.clamp(a0, 2.0 * PI) };

    let eig_cut = opts.delta_rel * mu_max;
    let mut eigenphases: Vec<Eigenphase> = mu
        .iter()
        .filter(|z| z.norm() >= eig_cut)
        .map(|z| Eigenphase { arg: arg_2pi(*z), modulus: z.norm() })
        .collect();
    eigenphases.sort_by(|a, b| a.arg.total_cmp(&b.arg));
    let eig_phi = if sigma > 0.0 {
        eigenphases.first().map(|e| e.arg).unwrap_or(f64::NAN)
    } else {
        eigenphases.last().map(|e| e.arg).unwrap_or(f64::NAN)
    };
    Ok(PhaseSample {
        lambda,
        sigma,
        phi,
        psi: psi_of(phi, sigma),
        eigenphases,
        eig_phi,
        nr_boundary: pts.iter().map(|(z, _)| [z.re, z.im]).collect(),
        skipped: false,
        note: None,
    })
}

/// Source of form matrices along λ.
pub trait PhaseProvider: Sync {
    fn sigma(&self) -> f64;
    fn form(&self, lambda: f64) -> Result<FormMatrix>;
    fn describe(&self) -> String;
    /// Both half-planes are searched for dips (transmission problems).
    fn two_sided(&self) -> bool {
        false
    }
}

/// F_S from the near-field engine, optionally through a matrix cache.
pub struct NearFieldProvider {
    pub scene: SceneGeometry,
    pub problem: ScatteringProblem,
    pub route: Route,
    pub cache: Option<Arc<MatrixCache>>,
    solves: AtomicUsize,
}

impl NearFieldProvider {
    pub fn new(scene: SceneGeometry, problem: ScatteringProblem) -> Self {
        NearFieldProvider { scene, problem, route: Route::Direct, cache: None, solves: AtomicUsize::new(0) }
    }

    pub fn with_cache(mut self, cache: Arc<MatrixCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    /// Forward assemblies performed (cache hits excluded).
    pub fn solves(&self) -> usize {
        self.solves.load(Ordering::Relaxed)
    }

    pub fn near_field(&self, lambda: f64) -> Result<NearFieldMatrix> {
        let ctx = WaveContext::new(lambda)?;
        if let Some(entries) = self.cache.as_ref().and_then(|c| c.load(lambda, self.route)) {
            return Ok(NearFieldMatrix { entries, ctx, scene: self.scene.clone(), problem: self.problem, route: self.route });
        }
        self.solves.fetch_add(1, Ordering::Relaxed);
        let fs = assemble_fs(&self.scene, &self.problem, &ctx, self.route)?;
        if let Some(c) = &self.cache {
            c.store(lambda, self.route, &fs.entries)?;
        }
        Ok(fs)
    }
}

impl PhaseProvider for NearFieldProvider {
    fn sigma(&self) -> f64 {
        self.problem.sigma()
    }

    fn form(&self, lambda: f64) -> Result<FormMatrix> {
        Ok(form_matrix(&self.near_field(lambda)?))
    }

    fn describe(&self) -> String {
        format!("near-field {} route, {} problem", self.route.name(), self.problem.name())
    }

    fn two_sided(&self) -> bool {
        matches!(self.problem.kind, ProblemKind::Transmission { .. })
    }
}

/// Rotation taking the far-field operator to the convention in which the
/// unitary circle of I + γF touches 0 tangentially to the real axis
/// (γ = √(k/2π) e^{iπ/4} in this far-field normalization).
pub const FARFIELD_ROTATION: f64 = -PI / 4.0;

/// σ e^{−iπ/4} F for the far-field operator of a disk (validation provider).
pub struct FarFieldProvider {
    pub problem: ScatteringProblem,
    pub center: Vec2,
    pub radius: f64,
    pub n_dir: usize,
}

impl PhaseProvider for FarFieldProvider {
    fn sigma(&self) -> f64 {
        self.problem.sigma()
    }

    fn form(&self, lambda: f64) -> Result<FormMatrix> {
        let ctx = WaveContext::new(lambda)?;
        let f = farfield_operator(&self.problem, &self.center, self.radius, &ctx, self.n_dir)?;
        let sigma = self.problem.sigma();
        Ok(FormMatrix { m: f * (sigma * cis(FARFIELD_ROTATION)), sigma })
    }

    fn describe(&self) -> String {
        format!("far-field {} problem, {} directions", self.problem.name(), self.n_dir)
    }

    fn two_sided(&self) -> bool {
        matches!(self.problem.kind, ProblemKind::Transmission { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseCurve {
    pub samples: Vec<PhaseSample>,
    pub sigma: f64,
    pub provenance: String,
    pub interval: [f64; 2],
    pub step: f64,
}

pub fn sample_at(provider: &dyn PhaseProvider, lambda: f64, opts: &PhaseOptions) -> PhaseSample {
    let sigma = provider.sigma();
    match provider.form(lambda).and_then(|f| phase_floor(&f, lambda, opts)) {
        Ok(s) => s,
        Err(e) => PhaseSample::skipped(lambda, sigma, e.to_string()),
    }
}

/// λ_i = λ_lo + i·step up to λ_hi (inclusive within 1e-9 steps).
pub fn lambda_grid(interval: [f64; 2], step: f64) -> Result<Vec<f64>> {
    let [lo, hi] = interval;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] must satisfy 0 < lo < hi")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| lo + i as f64 * step).collect())
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

/// Per-λ samples computed on `parallelism` workers, merged in λ order.
pub fn sweep(provider: &dyn PhaseProvider, interval: [f64; 2], step: f64, parallelism: usize, opts: &PhaseOptions) -> Result<PhaseCurve> {
    let grid = lambda_grid(interval, step)?;
    let samples = pool(parallelism)?.install(|| grid.par_iter().map(|&l| sample_at(provider, l, opts)).collect());
    Ok(PhaseCurve { samples, sigma: provider.sigma(), provenance: provider.describe(), interval, step })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub tau_dip: f64,
    pub tau_jump: f64,
    pub width: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { tau_dip: 0.2, tau_jump: 1.0, width: 1e-4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Below,
    Above,
    TwoSided,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::Above => "above",
            Side::TwoSided => "two-sided",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Detection {
    pub lambda_hat: f64,
    pub bracket: [f64; 2],
    pub sigma: f64,
    pub side: Side,
    pub phase_floor_at_dip: f64,
    pub evaluations: usize,
    pub notes: Vec<String>,
}

struct Candidate {
    lo: f64,
    hi: f64,
    side: Side,
    psi_dip: f64,
}

/// Dips of Ψ adjacent to an upward jump; skipped samples never count.
fn candidates(curve: &PhaseCurve, th: &Thresholds, two_sided: bool) -> Vec<Candidate> {
    let live: Vec<&PhaseSample> = curve.samples.iter().filter(|s| !s.skipped).collect();
    let below_ok = two_sided || curve.sigma > 0.0;
    let above_ok = two_sided || curve.sigma < 0.0;
    let mut out = Vec::new();
    for w in live.windows(2) {
        let (a, b) = (w[0], w[1]);
        let below = below_ok && a.psi < th.tau_dip && b.psi - a.psi > th.tau_jump;
        let above = above_ok && b.psi < th.tau_dip && a.psi - b.psi > th.tau_jump;
        if below {
            out.push(Candidate { lo: a.lambda, hi: b.lambda, side: Side::Below, psi_dip: a.psi });
        } else if above {
            out.push(Candidate { lo: a.lambda, hi: b.lambda, side: Side::Above, psi_dip: b.psi });
        }
    }
    out
}

/// Ψ at λ, stepping slightly off exceptional points.
fn psi_near(provider: &dyn PhaseProvider, lambda: f64, nudge: f64, lo: f64, hi: f64, opts: &PhaseOptions, evals: &mut usize) -> Option<(f64, f64)> {
    for k in 0..5 {
        let off = if k == 0 { 0.0 } else { nudge * (k as f64) * if k % 2 == 1 { 1.0 } else { -1.0 } };
        let l = lambda + off;
        if l <= lo || l >= hi {
            continue;
        }
        *evals += 1;
        let s = sample_at(provider, l, opts);
        if !s.skipped {
            return Some((l, s.psi));
        }
    }
    None
}

fn refine(provider: &dyn PhaseProvider, c: &Candidate, th: &Thresholds, opts: &PhaseOptions) -> Detection {
    let (mut lo, mut hi) = (c.lo, c.hi);
    let mut psi_dip = c.psi_dip;
    let mut evals = 0;
    let mut notes = Vec::new();
    // the dip end keeps Ψ < τ_dip: left for Below, right for Above
    while hi - lo > th.width {
        let mid = 0.5 * (lo + hi);
        match psi_near(provider, mid, 0.05 * (hi - lo), lo, hi, opts, &mut evals) {
            Some((l, psi)) => {
                let dip = psi < th.tau_dip;
                match (c.side, dip) {
                    (Side::Above, true) => {
                        hi = l;
                        psi_dip = psi;
                    }
                    (Side::Above, false) => lo = l,
                    (_, true) => {
                        lo = l;
                        psi_dip = psi;
                    }
                    (_, false) => hi = l,
                }
            }
            None => {
                notes.push(format!("refinement stopped at width {:.3e}: exceptional points", hi - lo));
                break;
            }
        }
    }
    Detection {
        lambda_hat: 0.5 * (lo + hi),
        bracket: [lo, hi],
        sigma: provider.sigma(),
        side: c.side,
        phase_floor_at_dip: psi_dip,
        evaluations: evals,
        notes,
    }
}

/// Detections sorted by λ̂; candidates refined concurrently.
pub fn detect(curve: &PhaseCurve, provider: &dyn PhaseProvider, th: &Thresholds, opts: &PhaseOptions, parallelism: usize) -> Result<Vec<Detection>> {
    let cands = candidates(curve, th, provider.two_sided());
    let mut out: Vec<Detection> = pool(parallelism)?.install(|| cands.par_iter().map(|c| refine(provider, c, th, opts)).collect());
    // the same discontinuity seen from both sides
    out.dedup_by(|b, a| {
        if (b.lambda_hat - a.lambda_hat).abs() <= curve.step {
            a.side = Side::TwoSided;
            true
        } else {
            false
        }
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Multiplicity {
    Count(usize),
    Indeterminate(String),
}

/// Counts eigenphase trajectories of the form matrix that descend below
/// τ_dip while λ approaches the bracket from the detection side.
pub fn multiplicity_diagnostic(provider: &dyn PhaseProvider, det: &Detection, th: &Thresholds, opts: &PhaseOptions) -> Multiplicity {
    const STEPS: usize = 6;
    let h = (det.bracket[1] - det.bracket[0]).max(th.width) * 4.0;
    let (edge, dir) = match det.side {
        Side::Above => (det.bracket[1], 1.0),
        _ => (det.bracket[0], -1.0),
    };
    let sigma = provider.sigma();
    let to_psi = |e: &Eigenphase| psi_of(e.arg, sigma);
    let mut frames: Vec<Vec<Complex64>> = Vec::new();
    for j in (0..STEPS).rev() {
        let s = sample_at(provider, edge + dir * h * j as f64, opts);
        if s.skipped {
            return Multiplicity::Indeterminate(format!("exceptional point at λ = {}", s.lambda));
        }
        frames.push(s.retained_eigenvalues());
    }
    let last = frames.last().cloned().unwrap_or_default();
    let start_psi = |z: &Complex64| psi_of(arg_2pi(*z), sigma);
    let finals: Vec<Complex64> = last
        .iter()
        .cloned()
        .filter(|z| to_psi(&Eigenphase { arg: arg_2pi(*z), modulus: z.norm() }) < th.tau_dip)
        .collect();
    let mut count = 0;
    for z_end in finals {
        // follow the trajectory backwards by nearest neighbour
        let mut cur = z_end;
        for frame in frames.iter().rev().skip(1) {
            let mut d: Vec<(f64, Complex64)> = frame.iter().map(|w| ((w - cur).norm(), *w)).collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0));
            if d.is_empty() {
                return Multiplicity::Indeterminate("trajectory lost".into());
            }
            if d.len() > 1 && d[1].0 < 2.0 * d[0].0 && (start_psi(&d[1].1) - start_psi(&d[0].1)).abs() > th.tau_dip {
                return Multiplicity::Indeterminate("trajectories cross within matching tolerance".into());
            }
            cur = d[0].1;
        }
        if start_psi(&cur) > start_psi(&z_end) {
            count += 1;
        }
    }
    Multiplicity::Count(count)
}

#[derive(Debug, Clone, Serialize)]
pub struct FarFieldReport {
    pub k: f64,
    pub n_dir: usize,
    pub normality: f64,
    pub gamma: [f64; 2],
    pub gamma_candidate: [f64; 2],
    pub gamma_ratio: f64,
    pub unitarity_residual: f64,
    pub circle_residual: f64,
    pub rotation: f64,
    pub farfield_arc: [f64; 2],
    pub nearfield_phases: Vec<f64>,
    pub hausdorff: f64,
    pub hausdorff_reverse: f64,
    pub hausdorff_pass: bool,
    pub unitarity_pass: bool,
}

fn unitarity_residual(f: &CMat, gamma: Complex64) -> f64 {
    let n = f.nrows();
    let s = CMat::identity(n, n) + f * gamma;
    frobenius(&(s.adjoint() * &s - CMat::identity(n, n)))
}

/// γ ≠ 0 minimizing ‖(I + γF)^H(I + γF) − I‖_F. With γ = r e^{iψ} the
/// residual is r‖A_ψ + rB‖, A_ψ = e^{iψ}F + e^{−iψ}F^H, B = F^HF; the scale
/// free part is minimized over r in closed form and over ψ by grid and
/// golden section.
pub fn fit_gamma(f: &CMat) -> Complex64 {
    let b = f.adjoint() * f;
    let bb = frobenius(&b).powi(2);
    let fh = f.adjoint();
    let fit = |psi: f64| {
        let a = f * cis(psi) + &fh * cis(-psi);
        let r = -(a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum::<f64>()) / bb;
        let res = frobenius(&(&a + &b * Complex64::new(r, 0.0)));
        (r, res)
    };
    let n = 3600;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..n {
        let (r, res) = fit(2.0 * PI * i as f64 / n as f64);
        if r > 0.0 && res < best.1 {
            best = (i, res);
        }
    }
    let step = 2.0 * PI / n as f64;
    let th = step * best.0 as f64;
    let (psi, _) = golden(|p| fit(p).1, th - step, th + step, 1e-12);
    Complex64::from_polar(fit(psi).0, psi)
}

/// Modal far-field operator on disks, Nyström for other sound-soft obstacles.
pub fn farfield_matrix(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext, n_dir: usize) -> Result<CMat> {
    match scene.obstacle_disk() {
        Some((center, radius)) => farfield_operator(problem, &center, radius, ctx, n_dir),
        None if problem.kind == ProblemKind::Dirichlet => farfield_operator_nystrom(scene.obstacle.clone(), ctx, n_dir),
        None => Err(Error::Unsupported(format!("far field of a non-circular {} obstacle", problem.name()))),
    }
}

/// Phase sets of σF (far field) and σF_S.
pub fn farfield_phase_check(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext, n_dir: usize, opts: &PhaseOptions) -> Result<FarFieldReport> {
    let f = farfield_matrix(scene, problem, ctx, n_dir)?;
    let fnorm2 = frobenius(&f).powi(2);
    let normality = frobenius(&(&f * f.adjoint() - f.adjoint() * &f)) / fnorm2;
    let gamma = fit_gamma(&f);
    let candidate = (ctx.k / (8.0 * PI)).sqrt() * cis(PI / 4.0);
    let chi = eigenvalues(&f);
    let circle_residual = chi.iter().map(|c| ((Complex64::new(1.0, 0.0) + gamma * c).norm() - 1.0).abs()).fold(0.0, f64::max);
    let sigma = problem.sigma();
    // rotate so the unitary circle's centre sits on the positive imaginary axis
    let rotation = gamma.arg() - PI / 2.0;
    let chi_max = chi.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let far: Vec<f64> = chi
        .iter()
        .filter(|c| c.norm() >= opts.delta_rel * chi_max)
        .map(|c| arg_2pi(c * sigma * cis(rotation)))
        .collect();
    let lo = far.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = far.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let fs = assemble_fs(scene, problem, ctx, Route::Direct)?;
    let m = weighted_form(&fs.entries, &fs.scene.source.weights, sigma);
    let near = phase_floor(&FormMatrix { m, sigma }, ctx.lambda, opts)?;
    let near_phases: Vec<f64> = near.eigenphases.iter().map(|e| e.arg).collect();
    let circ = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d)
    };
    let to_arc = |p: f64| if p >= lo && p <= hi { 0.0 } else { circ(p, lo).min(circ(p, hi)) };
    let hausdorff = near_phases.iter().map(|&p| to_arc(p)).fold(0.0, f64::max);
    let hausdorff_reverse = far
        .iter()
        .map(|&q| near_phases.iter().map(|&p| circ(p, q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let unitarity = unitarity_residual(&f, gamma);
    Ok(FarFieldReport {
        k: ctx.k,
        n_dir,
        normality,
        gamma: [gamma.re, gamma.im],
        gamma_candidate: [candidate.re, candidate.im],
        gamma_ratio: gamma.norm() / candidate.norm(),
        unitarity_residual: unitarity,
        circle_residual,
        rotation,
        farfield_arc: [lo, hi],
        nearfield_phases: near_phases,
        hausdorff,
        hausdorff_reverse,
        hausdorff_pass: hausdorff <= 0.05 && !near.eigenphases.is_empty(),
        unitarity_pass: unitarity <= 1e-6,
    })
}
