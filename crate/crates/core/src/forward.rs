//! Forward scattering: exact modal solutions on a disk (Dirichlet, Neumann,
//! constant-index transmission), the combined-field Nyström solver for the
//! Dirichlet obstacle on any analytic curve, circle DtN symbols and far
//! fields.

use crate::error::{Error, Result};
use crate::geometry::{DiscretizedCurve, Vec2};
use crate::linalg::{cis, CMat, CVec, I};
use crate::potentials::{assemble_singular_ops, hankel01, DensityVec, WaveContext, NEAR_SURFACE_GUARD};
use crate::quadrature;
use crate::specfun::{BesselTable, MAX_ORDER};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Tail threshold for modal truncation adequacy.
pub const TAIL_TOL: f64 = 1e-12;
const SINGULAR_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ProblemKind {
    Dirichlet,
    Neumann,
    Transmission { n: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringProblem {
    pub kind: ProblemKind,
}

impl ScatteringProblem {
    pub fn dirichlet() -> Self {
        ScatteringProblem { kind: ProblemKind::Dirichlet }
    }

    pub fn neumann() -> Self {
        ScatteringProblem { kind: ProblemKind::Neumann }
    }

    pub fn transmission(n: f64) -> Result<Self> {
        if !(n.is_finite() && n > 0.0) || n == 1.0 {
            return Err(Error::InvalidArgument(format!("refractive index must be positive and ≠ 1, got {n}")));
        }
        Ok(ScatteringProblem { kind: ProblemKind::Transmission { n } })
    }

    /// +1 for Dirichlet and n < 1, −1 for Neumann and n > 1.
    pub fn sigma(&self) -> f64 {
        match self.kind {
            ProblemKind::Dirichlet => 1.0,
            ProblemKind::Neumann => -1.0,
            ProblemKind::Transmission { n } => {
                if n < 1.0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ProblemKind::Dirichlet => "dirichlet",
            ProblemKind::Neumann => "neumann",
            ProblemKind::Transmission { .. } => "transmission",
        }
    }

    pub fn index(&self) -> Option<f64> {
        match self.kind {
            ProblemKind::Transmission { n } => Some(n),
            _ => None,
        }
    }
}

/// Modal truncation default M = max(20, ⌈k R_max⌉ + 15).
pub fn default_truncation(k: f64, r_max: f64) -> usize {
    20usize.max((k * r_max).ceil() as usize + 15)
}

/// Coefficients a_m, m = −M..M, of a regular wave Σ a_m J_m(k|x−c|) e^{imθ}.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalCoeffs {
    pub center: Vec2,
    pub order: usize,
    pub coeffs: Vec<Complex64>,
    /// max_{|m|=M} |a_m J_m(ka)| / max_m |a_m J_m(ka)| on the disk boundary.
    pub tail_ratio: f64,
}

impl ModalCoeffs {
    pub fn get(&self, m: i32) -> Complex64 {
        let idx = m + self.order as i32;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Σ a_m J_m(kρ) e^{imθ} at p.
    pub fn eval(&self, k: f64, p: &Vec2) -> Result<Complex64> {
        let d = p - self.center;
        let tab = BesselTable::j_only(self.order as u32, k * d.norm())?;
        let th = d.y.atan2(d.x);
        let m_max = self.order as i32;
        Ok((-m_max..=m_max).map(|m| self.get(m) * tab.j(m) * cis(m as f64 * th)).sum())
    }
}

fn check_order(order: usize) -> Result<()> {
    if order + 1 > MAX_ORDER as usize {
        return Err(Error::Truncation { order, ratio: f64::INFINITY });
    }
    Ok(())
}

/// Ratio of the largest boundary amplitude |a_m J_m(ka)| at |m| = M to the
/// largest overall, per column of `a` (rows m = −M..M).
pub fn tail_ratio(a: &CMat, k: f64, radius: f64, order: usize) -> Result<f64> {
    let tab = BesselTable::j_only(order as u32, k * radius)?;
    let m_max = order as i32;
    let mut worst: f64 = 0.0;
    for col in 0..a.ncols() {
        let amp = |m: i32| (a[((m + m_max) as usize, col)] * tab.j(m)).norm();
        let peak = (-m_max..=m_max).map(amp).fold(0.0, f64::max);
        if peak > 0.0 {
            worst = worst.max(amp(m_max).max(amp(-m_max)) / peak);
        }
    }
    Ok(worst)
}

/// Matrix (rows m = −M..M, one column per source node) of the incident
/// modal coefficients generated by unit nodal densities through the
/// conjugated kernel: a_m = (−i/4) Σ_j conj(H_m(kρ_j) e^{imθ_j}) φ_j w_j.
pub fn incident_modal_matrix(source: &DiscretizedCurve, center: &Vec2, radius: f64, ctx: &WaveContext, order: usize) -> Result<CMat> {
    check_order(order)?;
    let m_max = order as i32;
    let mut a = CMat::zeros(2 * order + 1, source.len());
    for (j, y) in source.points.iter().enumerate() {
        let d = y - center;
        let rho = d.norm();
        if rho <= radius {
            return Err(Error::InvalidArgument(format!("source node {j} lies inside the disk (ρ = {rho})")));
        }
        let tab = BesselTable::new(order as u32, ctx.k * rho)?;
        let th = d.y.atan2(d.x);
        for m in -m_max..=m_max {
            let g = (tab.h(m) * cis(m as f64 * th)).conj();
            a[((m + m_max) as usize, j)] = -0.25 * I * g * source.weights[j];
        }
    }
    Ok(a)
}

/// As `incident_modal_matrix` for waves emitted through the outgoing kernel,
/// ∫ G(x, y)ψ(y) ds(y): a_m = (i/4) Σ_j H_m(kρ_j) e^{−imθ_j} ψ_j w_j.
pub fn emitted_modal_matrix(source: &DiscretizedCurve, center: &Vec2, radius: f64, ctx: &WaveContext, order: usize) -> Result<CMat> {
    check_order(order)?;
    let m_max = order as i32;
    let mut a = CMat::zeros(2 * order + 1, source.len());
    for (j, y) in source.points.iter().enumerate() {
        let d = y - center;
        let rho = d.norm();
        if rho <= radius {
            return Err(Error::InvalidArgument(format!("source node {j} lies inside the disk (ρ = {rho})")));
        }
        let tab = BesselTable::new(order as u32, ctx.k * rho)?;
        let th = d.y.atan2(d.x);
        for m in -m_max..=m_max {
            a[((m + m_max) as usize, j)] = 0.25 * I * tab.h(m) * cis(-(m as f64) * th) * source.weights[j];
        }
    }
    Ok(a)
}

pub fn incident_modal_coeffs(
    source: &DiscretizedCurve,
    density: &DensityVec,
    center: &Vec2,
    radius: f64,
    ctx: &WaveContext,
    order: usize,
) -> Result<ModalCoeffs> {
    if density.len() != source.len() {
        return Err(Error::InvalidArgument("density length does not match the source curve".into()));
    }
    let a = incident_modal_matrix(source, center, radius, ctx, order)?;
    let v = &a * CVec::from_column_slice(&density.values);
    let coeffs: Vec<Complex64> = v.iter().cloned().collect();
    let col = CMat::from_column_slice(coeffs.len(), 1, &coeffs);
    let ratio = tail_ratio(&col, ctx.k, radius, order)?;
    if ratio > TAIL_TOL {
        return Err(Error::Truncation { order, ratio });
    }
    Ok(ModalCoeffs { center: *center, order, coeffs, tail_ratio: ratio })
}

/// Plane wave e^{ik x·d}, d = (cos θ_d, sin θ_d), expanded about `center`.
pub fn plane_wave_coeffs(theta_d: f64, center: &Vec2, ctx: &WaveContext, order: usize) -> ModalCoeffs {
    let d = Vec2::new(theta_d.cos(), theta_d.sin());
    let phase = cis(ctx.k * center.dot(&d));
    let m_max = order as i32;
    let coeffs = (-m_max..=m_max).map(|m| phase * I.powi(m) * cis(-(m as f64) * theta_d)).collect();
    ModalCoeffs { center: *center, order, coeffs, tail_ratio: 0.0 }
}

/// Per-mode response of the disk: scattered c_m = T_m a_m and, for
/// transmission, interior b_m = B_m a_m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTransfer {
    pub scattered: Complex64,
    pub interior: Complex64,
}

/// Mode transfer factors for m = −M..M.
pub fn disk_transfer(problem: &ScatteringProblem, radius: f64, ctx: &WaveContext, order: usize) -> Result<Vec<ModeTransfer>> {
    check_order(order)?;
    let x = ctx.k * radius;
    let tab = BesselTable::new(order as u32, x)?;
    let m_max = order as i32;
    let zero = Complex64::new(0.0, 0.0);
    match problem.kind {
        ProblemKind::Dirichlet => Ok((-m_max..=m_max)
            .map(|m| ModeTransfer { scattered: -tab.j(m) / tab.h(m), interior: zero })
            .collect()),
        ProblemKind::Neumann => Ok((-m_max..=m_max)
            .map(|m| ModeTransfer { scattered: -tab.dj(m) / tab.dh(m), interior: zero })
            .collect()),
        ProblemKind::Transmission { n } => {
            let sn = n.sqrt();
            let tin = BesselTable::j_only(order as u32, sn * x)?;
            (-m_max..=m_max)
                .map(|m| {
                    let (j, dj, h, dh) = (tab.j(m), tab.dj(m), tab.h(m), tab.dh(m));
                    let (jn, djn) = (tin.j(m), tin.dj(m));
                    // [H  −Jn; H′  −√n Jn′] [c; b] = −a [J; J′]
                    let det = jn * dh - sn * djn * h;
                    let scale = jn.abs() * dh.norm() + sn * djn.abs() * h.norm();
                    if det.norm() < SINGULAR_TOL * scale {
                        return Err(Error::SingularMode { mode: m, det: det.norm() / scale });
                    }
                    Ok(ModeTransfer { scattered: (j * sn * djn - jn * dj) / det, interior: (dh * j - h * dj) / det })
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone)]
pub enum Representation {
    /// u^sc = Σ c_m H_m(k|x−c|) e^{imθ}; interior field Σ b_m J_m(√n k|x−c|) e^{imθ}.
    Modal { center: Vec2, radius: f64, order: usize, scattered: Vec<Complex64>, interior: Vec<Complex64> },
    /// u^sc = (DL − iη SL)[ψ].
    Nystrom { curve: Arc<DiscretizedCurve>, density: Vec<Complex64>, eta: f64 },
}

#[derive(Debug, Clone)]
pub struct ScatterSolution {
    pub problem: ScatteringProblem,
    pub ctx: WaveContext,
    pub repr: Representation,
}

pub fn solve_disk_modal(problem: &ScatteringProblem, radius: f64, ctx: &WaveContext, incident: &ModalCoeffs) -> Result<ScatterSolution> {
    let t = disk_transfer(problem, radius, ctx, incident.order)?;
    let m_max = incident.order as i32;
    let scattered = (-m_max..=m_max).map(|m| t[(m + m_max) as usize].scattered * incident.get(m)).collect();
    let interior = (-m_max..=m_max).map(|m| t[(m + m_max) as usize].interior * incident.get(m)).collect();
    Ok(ScatterSolution {
        problem: *problem,
        ctx: *ctx,
        repr: Representation::Modal { center: incident.center, radius, order: incident.order, scattered, interior },
    })
}

/// Fourier coefficients of the trigonometric interpolant of nodal values,
/// modes −N/2+1..=N/2 with the Nyquist mode split symmetrically.
struct TrigInterp {
    modes: Vec<(i32, Complex64)>,
    nyquist: Option<(i32, Complex64)>,
}

impl TrigInterp {
    fn new(values: &[Complex64]) -> Self {
        let n = values.len();
        let h = (n / 2) as i32;
        let coef = |m: i32| {
            values.iter().enumerate().map(|(j, v)| v * cis(-(m as f64) * 2.0 * PI * j as f64 / n as f64)).sum::<Complex64>() / n as f64
        };
        TrigInterp { modes: ((-h + 1)..h).map(|m| (m, coef(m))).collect(), nyquist: (h > 0).then(|| (h, coef(h))) }
    }

    fn eval(&self, t: f64) -> Complex64 {
        let mut acc: Complex64 = self.modes.iter().map(|&(m, c)| c * cis(m as f64 * t)).sum();
        if let Some((m, c)) = self.nyquist {
            acc += c * (m as f64 * t).cos();
        }
        acc
    }
}

impl ScatterSolution {
    pub fn eval_scattered(&self, points: &[Vec2]) -> Result<Vec<Complex64>> {
        match &self.repr {
            Representation::Modal { center, radius, order, scattered, .. } => points
                .iter()
                .map(|p| {
                    let d = p - center;
                    let r = d.norm();
                    if r <= *radius {
                        return Err(Error::InvalidArgument("scattered field requested inside the disk".into()));
                    }
                    let tab = BesselTable::new(*order as u32, self.ctx.k * r)?;
                    let th = d.y.atan2(d.x);
                    let m_max = *order as i32;
                    Ok((-m_max..=m_max).map(|m| scattered[(m + m_max) as usize] * tab.h(m) * cis(m as f64 * th)).sum())
                })
                .collect(),
            Representation::Nystrom { curve, density, eta } => {
                for p in points {
                    let dist = curve.min_distance(p);
                    if dist <= NEAR_SURFACE_GUARD {
                        return Err(Error::NearSurface { distance: dist });
                    }
                }
                let k = self.ctx.k;
                points
                    .iter()
                    .map(|p| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for j in 0..curve.len() {
                            let d = p - curve.points[j];
                            let r = d.norm();
                            let (h0, h1) = hankel01(k * r)?;
                            let dl = 0.25 * I * k * h1 * curve.normals[j].dot(&d) / r;
                            let sl = 0.25 * I * h0;
                            acc += (dl - I * *eta * sl) * density[j] * curve.weights[j];
                        }
                        Ok(acc)
                    })
                    .collect()
            }
        }
    }

    /// Nyström field near the boundary by adaptive quadrature of the
    /// trigonometric interpolant of ψ, split at the nearest node parameter.
    pub fn eval_scattered_adaptive(&self, p: &Vec2) -> Result<Complex64> {
        let Representation::Nystrom { curve, density, eta } = &self.repr else {
            return Ok(self.eval_scattered(std::slice::from_ref(p))?[0]);
        };
        let k = self.ctx.k;
        let shape = &curve.curve;
        let nearest = (0..curve.len())
            .min_by(|&a, &b| (curve.points[a] - p).norm().total_cmp(&(curve.points[b] - p).norm()))
            .unwrap_or(0);
        let t0 = curve.t[nearest];
        let interp = TrigInterp::new(density);
        let f = |tau: f64| {
            let y = shape.point(tau);
            let dy = shape.deriv(tau);
            let nrm = Vec2::new(dy.y, -dy.x);
            let d = p - y;
            let r = d.norm();
            if r == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let (h0, h1) = match hankel01(k * r) {
                Ok(v) => v,
                Err(_) => return Complex64::new(f64::NAN, 0.0),
            };
            let kern = 0.25 * I * k * h1 * nrm.dot(&d) / r - I * *eta * 0.25 * I * h0 * dy.norm();
            kern * interp.eval(tau)
        };
        Ok(quadrature::integrate(f, t0, t0 + 2.0 * PI, 1e-14, 40))
    }

    /// Far-field pattern with u^sc ~ u_∞(θ) e^{ikr}/√r.
    pub fn far_field(&self, angles: &[f64]) -> Vec<Complex64> {
        let k = self.ctx.k;
        match &self.repr {
            Representation::Modal { center, order, scattered, .. } => {
                let pref = (2.0 / (PI * k)).sqrt() * cis(-PI / 4.0);
                let m_max = *order as i32;
                angles
                    .iter()
                    .map(|&th| {
                        let dir = Vec2::new(th.cos(), th.sin());
                        let shift = cis(-k * dir.dot(center));
                        let s: Complex64 = (-m_max..=m_max)
                            .map(|m| scattered[(m + m_max) as usize] * (-I).powi(m) * cis(m as f64 * th))
                            .sum();
                        pref * shift * s
                    })
                    .collect()
            }
            Representation::Nystrom { curve, density, eta } => {
                let pref = cis(PI / 4.0) / (8.0 * PI * k).sqrt();
                angles
                    .iter()
                    .map(|&th| {
                        let dir = Vec2::new(th.cos(), th.sin());
                        let mut acc = Complex64::new(0.0, 0.0);
                        for j in 0..curve.len() {
                            let kern = -I * k * dir.dot(&curve.normals[j]) - I * *eta;
                            acc += kern * cis(-k * dir.dot(&curve.points[j])) * density[j] * curve.weights[j];
                        }
                        pref * acc
                    })
                    .collect()
            }
        }
    }

    /// Maximum boundary-condition residual of the modal solution over `n`
    /// boundary points.
    pub fn modal_boundary_residual(&self, incident: &ModalCoeffs) -> Result<f64> {
        let Representation::Modal { radius, order, scattered, interior, .. } = &self.repr else {
            return Err(Error::Unsupported("boundary residual of a Nyström solution".into()));
        };
        let k = self.ctx.k;
        let x = k * radius;
        let tab = BesselTable::new(*order as u32, x)?;
        let m_max = *order as i32;
        let mut worst: f64 = 0.0;
        for m in -m_max..=m_max {
            let (a, c) = (incident.get(m), scattered[(m + m_max) as usize]);
            let r = match self.problem.kind {
                ProblemKind::Dirichlet => (a * tab.j(m) + c * tab.h(m)).norm(),
                ProblemKind::Neumann => (a * tab.dj(m) + c * tab.dh(m)).norm(),
                ProblemKind::Transmission { n } => {
                    let sn = n.sqrt();
                    let tin = BesselTable::j_only(*order as u32, sn * x)?;
                    let b = interior[(m + m_max) as usize];
                    let v = (a * tab.j(m) + c * tab.h(m) - b * tin.j(m)).norm();
                    let d = (a * tab.dj(m) + c * tab.dh(m) - b * sn * tin.dj(m)).norm();
                    v.max(d)
                }
            };
            worst = worst.max(r);
        }
        Ok(worst)
    }
}

/// Combined-field Nyström solver for the exterior Dirichlet problem:
/// (I/2 + K − iηS)ψ = −u^inc on ∂O, factorized once per λ.
pub struct NystromSolver {
    pub curve: Arc<DiscretizedCurve>,
    pub ctx: WaveContext,
    pub eta: f64,
    lu: nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl NystromSolver {
    pub fn new(curve: Arc<DiscretizedCurve>, ctx: &WaveContext, eta: Option<f64>) -> Result<Self> {
        let eta = eta.unwrap_or(ctx.k);
        let ops = assemble_singular_ops(&curve, ctx)?;
        let n = curve.len();
        let a = CMat::identity(n, n) * Complex64::new(0.5, 0.0) + ops.k_op - ops.s_op * (I * eta);
        let lu = a.lu();
        let u = lu.u();
        let diag: Vec<f64> = (0..n).map(|i| u[(i, i)].norm()).collect();
        let dmax = diag.iter().cloned().fold(0.0, f64::max);
        let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(dmin > 1e-14 * dmax) {
            return Err(Error::Solve { cond: dmax / dmin });
        }
        Ok(NystromSolver { curve, ctx: *ctx, eta, lu })
    }

    /// Densities for several incident traces at once (one column each).
    pub fn solve_many(&self, incident_traces: &CMat) -> Result<CMat> {
        let rhs = -incident_traces;
        self.lu.solve(&rhs).ok_or(Error::Solve { cond: f64::INFINITY })
    }

    pub fn solve(&self, incident_trace: &DensityVec) -> Result<ScatterSolution> {
        if incident_trace.len() != self.curve.len() {
            return Err(Error::InvalidArgument("incident trace length does not match the curve".into()));
        }
        let col = CMat::from_column_slice(self.curve.len(), 1, &incident_trace.values);
        let psi = self.solve_many(&col)?;
        Ok(ScatterSolution {
            problem: ScatteringProblem::dirichlet(),
            ctx: self.ctx,
            repr: Representation::Nystrom { curve: self.curve.clone(), density: psi.iter().cloned().collect(), eta: self.eta },
        })
    }

    /// Matrix mapping densities ψ on ∂O to u^sc at `points`.
    pub fn evaluation_matrix(&self, points: &[Vec2]) -> Result<CMat> {
        let c = &self.curve;
        let k = self.ctx.k;
        let mut e = CMat::zeros(points.len(), c.len());
        for (i, p) in points.iter().enumerate() {
            for j in 0..c.len() {
                let d = p - c.points[j];
                let r = d.norm();
                if r <= NEAR_SURFACE_GUARD {
                    return Err(Error::NearSurface { distance: r });
                }
                let (h0, h1) = hankel01(k * r)?;
                let dl = 0.25 * I * k * h1 * c.normals[j].dot(&d) / r;
                e[(i, j)] = (dl + 0.25 * self.eta * h0) * c.weights[j];
            }
        }
        Ok(e)
    }
}

pub fn solve_dirichlet_nystrom(
    curve: Arc<DiscretizedCurve>,
    ctx: &WaveContext,
    incident_trace: &DensityVec,
    eta: Option<f64>,
) -> Result<ScatterSolution> {
    NystromSolver::new(curve, ctx, eta)?.solve(incident_trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtnKind {
    Interior,
    Exterior,
    InteriorIndex,
}

/// Fourier symbol of a circle DtN map, modes m = −M..M.
#[derive(Debug, Clone)]
pub struct DtnSymbol {
    pub kind: DtnKind,
    pub order: usize,
    pub values: Vec<Complex64>,
}

impl DtnSymbol {
    pub fn get(&self, m: i32) -> Complex64 {
        let idx = (m + self.order as i32) as usize;
        self.values[idx]
    }
}

/// Relative distance to a Bessel zero below which a DtN mode is a pole.
pub const POLE_TOL: f64 = 1e-6;

pub fn dtn_disk(kind: DtnKind, radius: f64, ctx: &WaveContext, n: Option<f64>, order: usize) -> Result<DtnSymbol> {
    check_order(order)?;
    let k = ctx.k;
    let m_max = order as i32;
    let values = match kind {
        DtnKind::Exterior => {
            let tab = BesselTable::new(order as u32, k * radius)?;
            (-m_max..=m_max).map(|m| k * tab.dh(m) / tab.h(m)).collect()
        }
        DtnKind::Interior | DtnKind::InteriorIndex => {
            let sn = if kind == DtnKind::Interior {
                1.0
            } else {
                let n = n.ok_or_else(|| Error::InvalidArgument("index DtN map needs n".into()))?;
                if !(n > 0.0) {
                    return Err(Error::InvalidArgument(format!("refractive index must be positive, got {n}")));
                }
                n.sqrt()
            };
            let x = sn * k * radius;
            let tab = BesselTable::j_only(order as u32, x)?;
            let map = if kind == DtnKind::Interior { "interior DtN" } else { "index DtN" };
            (-m_max..=m_max)
                .map(|m| {
                    let (j, dj) = (tab.j(m), tab.dj(m));
                    if j.abs() < POLE_TOL * (x * dj).abs() {
                        return Err(Error::Pole { map, mode: m, zero: x - j / dj });
                    }
                    Ok(Complex64::new(sn * k * dj / j, 0.0))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(DtnSymbol { kind, order, values })
}

/// Uniform direction grid θ_i = 2πi/N.
pub fn direction_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect()
}

/// Far-field operator of the disk on an N-direction grid:
/// F[i,j] = u_∞(θ_i; plane wave from θ_j)·2π/N.
pub fn farfield_operator(problem: &ScatteringProblem, center: &Vec2, radius: f64, ctx: &WaveContext, n_dir: usize) -> Result<CMat> {
    let angles = direction_grid(n_dir);
    let order = default_truncation(ctx.k, radius + center.norm()).max(n_dir / 2 + 10).min(MAX_ORDER as usize - 1);
    let mut f = CMat::zeros(n_dir, n_dir);
    for (j, &th) in angles.iter().enumerate() {
        let inc = plane_wave_coeffs(th, center, ctx, order);
        let sol = solve_disk_modal(problem, radius, ctx, &inc)?;
        for (i, v) in sol.far_field(&angles).into_iter().enumerate() {
            f[(i, j)] = v * (2.0 * PI / n_dir as f64);
        }
    }
    Ok(f)
}

/// Far-field operator of a sound-soft obstacle of any shape, from Nyström
/// solves for plane waves along the direction grid.
pub fn farfield_operator_nystrom(curve: Arc<DiscretizedCurve>, ctx: &WaveContext, n_dir: usize) -> Result<CMat> {
    let angles = direction_grid(n_dir);
    let solver = NystromSolver::new(curve.clone(), ctx, None)?;
    let mut f = CMat::zeros(n_dir, n_dir);
    for (j, &th) in angles.iter().enumerate() {
        let d = Vec2::new(th.cos(), th.sin());
        let trace = DensityVec::new(curve.points.iter().map(|p| cis(ctx.k * d.dot(p))).collect());
        let sol = solver.solve(&trace)?;
        for (i, v) in sol.far_field(&angles).into_iter().enumerate() {
            f[(i, j)] = v * (2.0 * PI / n_dir as f64);
        }
    }
    Ok(f)
}
