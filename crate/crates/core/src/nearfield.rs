//! The reduced near-field operator F_S(λ): physical emit–solve–measure
//! assembly, the DtN factorization on disks, the weighted form matrix, and
//! the on-disk matrix cache.

use crate::error::{Error, Result};
use crate::forward::{default_truncation, disk_transfer, dtn_disk, emitted_modal_matrix, incident_modal_matrix, tail_ratio, DtnKind, NystromSolver, ProblemKind, ScatteringProblem, TAIL_TOL};
use crate::geometry::{SceneGeometry, Vec2};
use crate::linalg::{cis, fourier_multiplier, CMat};
use crate::potentials::{assemble_l, assemble_lstar, jump_sign, WaveContext};
use crate::specfun::{BesselTable, MAX_ORDER};
use num_complex::Complex64;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Direct,
    Factorized,
}

impl Route {
    pub fn tag(self) -> u8 {
        match self {
            Route::Direct => 0,
            Route::Factorized => 1,
        }
    }

    pub fn from_tag(t: u8) -> Option<Route> {
        match t {
            0 => Some(Route::Direct),
            1 => Some(Route::Factorized),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Factorized => "factorized",
        }
    }
}

/// Kernel through which densities on S generate incident waves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emission {
    /// Lφ = ∫ conj(G(x, y)) φ(y) ds(y): the near-field data model.
    Incoming,
    /// conj(L)ψ = ∫ G(x, y) ψ(y) ds(y): waves physically emitted from S.
    Outgoing,
}

/// Forward engine behind the direct route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectMethod {
    /// Modal on disks, Nyström otherwise.
    Auto,
    Modal,
    Nystrom,
}

#[derive(Debug, Clone)]
pub struct NearFieldMatrix {
    pub entries: CMat,
    pub ctx: WaveContext,
    pub scene: SceneGeometry,
    pub problem: ScatteringProblem,
    pub route: Route,
}

impl NearFieldMatrix {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }
}

pub fn assemble_fs_direct(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext) -> Result<NearFieldMatrix> {
    assemble_fs_direct_with(scene, problem, ctx, DirectMethod::Auto, None)
}

/// Direct route with an explicit engine and optional fixed modal order.
pub fn assemble_fs_direct_with(
    scene: &SceneGeometry,
    problem: &ScatteringProblem,
    ctx: &WaveContext,
    method: DirectMethod,
    order: Option<usize>,
) -> Result<NearFieldMatrix> {
    let entries = response_matrix(scene, problem, ctx, method, order, Emission::Incoming)?;
    Ok(NearFieldMatrix { entries, ctx: *ctx, scene: scene.clone(), problem: *problem, route: Route::Direct })
}

/// Scattered field on S (rows) for unit nodal densities on S (columns)
/// emitted through the chosen kernel.
pub fn response_matrix(
    scene: &SceneGeometry,
    problem: &ScatteringProblem,
    ctx: &WaveContext,
    method: DirectMethod,
    order: Option<usize>,
    emission: Emission,
) -> Result<CMat> {
    let disk = scene.obstacle_disk();
    Ok(match (method, disk) {
        (DirectMethod::Auto | DirectMethod::Modal, Some((c, a))) => modal_fs(scene, problem, ctx, &c, a, order, emission)?,
        (DirectMethod::Modal, None) => return Err(Error::Unsupported("modal route needs a circular obstacle".into())),
        _ => {
            if problem.kind != ProblemKind::Dirichlet {
                return Err(Error::Unsupported(format!("{} problem on a non-circular obstacle", problem.name())));
            }
            nystrom_fs(scene, ctx, emission)?
        }
    })
}

/// Smallest modal order (stepping by 10 from the default) whose boundary
/// tail passes the adequacy test for unit densities on S.
pub fn adequate_order(scene: &SceneGeometry, ctx: &WaveContext, center: &Vec2, radius: f64) -> Result<(usize, CMat)> {
    let r_max = scene.source.points.iter().map(|p| (p - center).norm()).fold(0.0, f64::max);
    let mut order = default_truncation(ctx.k, r_max);
    let cap = MAX_ORDER as usize - 1;
    loop {
        let a = incident_modal_matrix(&scene.source, center, radius, ctx, order)?;
        let ratio = tail_ratio(&a, ctx.k, radius, order)?;
        if ratio <= TAIL_TOL {
            return Ok((order, a));
        }
        if order >= cap {
            return Err(Error::Truncation { order, ratio });
        }
        order = (order + 10).min(cap);
    }
}

fn modal_fs(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext, c: &Vec2, a: f64, order: Option<usize>, emission: Emission) -> Result<CMat> {
    let (order, mut amat) = match order {
        Some(m) => (m, incident_modal_matrix(&scene.source, c, a, ctx, m)?),
        None => adequate_order(scene, ctx, c, a)?,
    };
    if emission == Emission::Outgoing {
        amat = emitted_modal_matrix(&scene.source, c, a, ctx, order)?;
    }
    let t = disk_transfer(problem, a, ctx, order)?;
    let m_max = order as i32;
    let src = &scene.source;
    let mut e = CMat::zeros(src.len(), 2 * order + 1);
    for (i, x) in src.points.iter().enumerate() {
        let d = x - c;
        let tab = BesselTable::new(order as u32, ctx.k * d.norm())?;
        let th = d.y.atan2(d.x);
        for m in -m_max..=m_max {
            let col = (m + m_max) as usize;
            e[(i, col)] = tab.h(m) * cis(m as f64 * th) * t[col].scattered;
        }
    }
    Ok(e * amat)
}

fn nystrom_fs(scene: &SceneGeometry, ctx: &WaveContext, emission: Emission) -> Result<CMat> {
    let solver = NystromSolver::new(scene.obstacle.clone(), ctx, None)?;
    let mut traces = assemble_l(scene, ctx)?.entries;
    if emission == Emission::Outgoing {
        traces.iter_mut().for_each(|z| *z = z.conj());
    }
    let psi = solver.solve_many(&traces)?;
    Ok(solver.evaluation_matrix(&scene.source.points)? * psi)
}

/// Symbol, on ∂O Fourier modes, of the density map g ↦ μ with F_S = L*μ.
pub fn factorization_symbol(problem: &ScatteringProblem, radius: f64, ctx: &WaveContext, order: usize, jump: f64) -> Result<Vec<Complex64>> {
    let f1 = dtn_disk(DtnKind::Interior, radius, ctx, None, order)?;
    let fo = dtn_disk(DtnKind::Exterior, radius, ctx, None, order)?;
    let m_max = order as i32;
    match problem.kind {
        ProblemKind::Dirichlet => Ok((-m_max..=m_max).map(|m| (f1.get(m) - fo.get(m)) / jump).collect()),
        ProblemKind::Neumann => Ok((-m_max..=m_max)
            .map(|m| {
                let (a, b) = (f1.get(m), fo.get(m));
                -(a - a * a / b) / jump
            })
            .collect()),
        ProblemKind::Transmission { n } => {
            let fnn = dtn_disk(DtnKind::InteriorIndex, radius, ctx, Some(n), order)?;
            Ok((-m_max..=m_max)
                .map(|m| {
                    let (a, b, c) = (f1.get(m), fo.get(m), fnn.get(m));
                    (b - a) * (a - c) / ((c - b) * jump)
                })
                .collect())
        }
    }
}

pub fn assemble_fs_factorized(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext) -> Result<NearFieldMatrix> {
    assemble_fs_factorized_with_jump(scene, problem, ctx, jump_sign())
}

/// Factorized route with an explicit jump constant (fault-injection hook).
pub fn assemble_fs_factorized_with_jump(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext, jump: f64) -> Result<NearFieldMatrix> {
    let (_, a) = scene
        .obstacle_disk()
        .ok_or_else(|| Error::Unsupported("factorized route needs a circular obstacle".into()))?;
    let n_o = scene.obstacle.len();
    let order = n_o / 2;
    if order + 1 > MAX_ORDER as usize {
        return Err(Error::Truncation { order, ratio: f64::INFINITY });
    }
    let sym = factorization_symbol(problem, a, ctx, order, jump)?;
    let mult = fourier_multiplier(n_o, |m| sym[(m + order as i32) as usize]);
    let l = assemble_l(scene, ctx)?.entries;
    let ls = assemble_lstar(scene, ctx)?.entries;
    Ok(NearFieldMatrix { entries: ls * (mult * l), ctx: *ctx, scene: scene.clone(), problem: *problem, route: Route::Factorized })
}

pub fn assemble_fs(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext, route: Route) -> Result<NearFieldMatrix> {
    match route {
        Route::Direct => assemble_fs_direct(scene, problem, ctx),
        Route::Factorized => assemble_fs_factorized(scene, problem, ctx),
    }
}

/// Relative Frobenius change of the direct route under refinement: N_O
/// doubled for Nyström scenes, modal order raised by 20 on disks.
pub fn quadrature_convergence(scene: &SceneGeometry, problem: &ScatteringProblem, ctx: &WaveContext) -> Result<f64> {
    let (a, b) = match scene.obstacle_disk() {
        Some((c, r)) => {
            let (order, _) = adequate_order(scene, ctx, &c, r)?;
            let hi = (order + 20).min(MAX_ORDER as usize - 1);
            (
                assemble_fs_direct_with(scene, problem, ctx, DirectMethod::Modal, Some(order))?.entries,
                assemble_fs_direct_with(scene, problem, ctx, DirectMethod::Modal, Some(hi))?.entries,
            )
        }
        None => {
            let fine = scene.with_nodes(2 * scene.obstacle.len(), scene.source.len())?;
            (
                assemble_fs_direct_with(scene, problem, ctx, DirectMethod::Nystrom, None)?.entries,
                assemble_fs_direct_with(&fine, problem, ctx, DirectMethod::Nystrom, None)?.entries,
            )
        }
    };
    Ok(crate::linalg::rel_frobenius_distance(&a, &b))
}

/// M = √w_i σ K[i,j] √w_j for the kernel samples K[i,j] = F_S[i,j]/w_j, so
/// ψ*Mψ with ψ = W^{1/2}φ is the discrete (σF_Sφ, φ) on S.
#[derive(Debug, Clone)]
pub struct FormMatrix {
    pub m: CMat,
    pub sigma: f64,
}

pub fn form_matrix(fs: &NearFieldMatrix) -> FormMatrix {
    let sigma = fs.problem.sigma();
    FormMatrix { m: weighted_form(&fs.entries, &fs.scene.source.weights, sigma), sigma }
}

pub fn weighted_form(entries: &CMat, weights: &[f64], sigma: f64) -> CMat {
    let sw: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    CMat::from_fn(entries.nrows(), entries.ncols(), |i, j| entries[(i, j)] * (sigma * sw[i] / sw[j]))
}

const MAGIC: &[u8; 4] = b"NFD1";

/// NFD1 layout: magic, u32 rows, u32 cols, f64 λ, u8 route, row-major (re, im)
/// f64 pairs, all little-endian.
pub fn encode_nfd1(entries: &CMat, lambda: f64, route: Route) -> Vec<u8> {
    let (r, c) = entries.shape();
    let mut buf = Vec::with_capacity(21 + 16 * r * c);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(r as u32).to_le_bytes());
    buf.extend_from_slice(&(c as u32).to_le_bytes());
    buf.extend_from_slice(&lambda.to_le_bytes());
    buf.push(route.tag());
    for i in 0..r {
        for j in 0..c {
            let z = entries[(i, j)];
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    buf
}

pub fn decode_nfd1(bytes: &[u8]) -> Result<(CMat, f64, Route)> {
    let bad = |m: &str| Error::Cache(m.to_string());
    if bytes.len() < 21 || &bytes[..4] != MAGIC {
        return Err(bad("missing NFD1 header"));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap()) as usize;
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let (r, c) = (u32_at(4), u32_at(8));
    let lambda = f64_at(12);
    let route = Route::from_tag(bytes[20]).ok_or_else(|| bad("unknown route tag"))?;
    if bytes.len() != 21 + 16 * r * c {
        return Err(bad("truncated payload"));
    }
    let m = CMat::from_fn(r, c, |i, j| {
        let o = 21 + 16 * (i * c + j);
        Complex64::new(f64_at(o), f64_at(o + 8))
    });
    Ok((m, lambda, route))
}

/// Directory of NFD1 files keyed by (config hash, λ, route).
#[derive(Debug)]
pub struct MatrixCache {
    pub dir: PathBuf,
    pub hash: String,
    hits: AtomicUsize,
    stores: AtomicUsize,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>, hash: &str) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(MatrixCache { dir, hash: hash.to_string(), hits: AtomicUsize::new(0), stores: AtomicUsize::new(0) })
    }

    pub fn path(&self, lambda: f64, route: Route) -> PathBuf {
        self.dir.join(format!("{}-{:016x}-{}.nfd", self.hash, lambda.to_bits(), route.name()))
    }

    pub fn load(&self, lambda: f64, route: Route) -> Option<CMat> {
        let bytes = fs::read(self.path(lambda, route)).ok()?;
        match decode_nfd1(&bytes) {
            Ok((m, l, r)) if l.to_bits() == lambda.to_bits() && r == route => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(m)
            }
            _ => None,
        }
    }

    /// Atomic: written to a unique temporary file, then renamed.
    pub fn store(&self, lambda: f64, route: Route, entries: &CMat) -> Result<()> {
        let target = self.path(lambda, route);
        let tmp = tmp_path(&target);
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode_nfd1(entries, lambda, route))?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        self.stores.fetch_add(1, Ordering::Relaxed);
        Ok(())
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn stores(&self) -> usize {
        self.stores.load(Ordering::Relaxed)
    }
}

fn tmp_path(target: &Path) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    let mut name = target.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!(".tmp{}-{}", std::process::id(), n));
    target.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_circle, validate_scene};

    #[test]
    fn nfd1_roundtrip() {
        let m = CMat::from_fn(3, 2, |i, j| Complex64::new(i as f64 + 0.5, -(j as f64) * 1e-300));
        let bytes = encode_nfd1(&m, 5.25, Route::Factorized);
        assert_eq!(&bytes[..4], b"NFD1");
        assert_eq!(bytes.len(), 21 + 16 * 6);
        let (back, l, r) = decode_nfd1(&bytes).unwrap();
        assert_eq!(back, m);
        assert_eq!(l, 5.25);
        assert_eq!(r, Route::Factorized);
        assert!(decode_nfd1(&bytes[..30]).is_err());
    }

    #[test]
    fn form_matrix_uniform_weights() {
        let scene = validate_scene(make_circle([0.0, 0.0], 1.0, 32).unwrap(), make_circle([2.0, 0.0], 0.3, 16).unwrap()).unwrap();
        let ctx = WaveContext::from_k(1.5).unwrap();
        let fs = assemble_fs_direct(&scene, &ScatteringProblem::dirichlet(), &ctx).unwrap();
        // uniform weights cancel: M = σ·c·K = σF_S
        let f = form_matrix(&fs);
        assert!((&f.m - &fs.entries).norm() <= 1e-15 * f.m.norm());
        let mut neg = fs.clone();
        neg.problem = ScatteringProblem::neumann();
        assert_eq!(form_matrix(&neg).m, -f.m);
    }
}
