//! Closed-form interior eigenvalues of a disk of radius a: Dirichlet and
//! Neumann Laplacian eigenvalues and the interior transmission eigenvalues
//! for a constant index n.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j_zeros, bracket_roots, deriv_j_zeros, BesselTable, MAX_ARG, ZERO_SCAN_STEP, ZERO_TOL};
use serde::Serialize;

/// Sign-change scan step for the ITE determinant, in ka.
pub const ITE_SCAN_STEP: f64 = 0.01;
/// |d_m| below this at a scan minimum without a sign change is reported.
pub const EVEN_ROOT_FLAG: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Dirichlet,
    Neumann,
    Ite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleEigenvalue {
    pub lambda: f64,
    pub m: u32,
    /// Position among the roots of order m, counted from 1. For ITE scan
    /// suspects this is 0.
    pub radial: usize,
    pub multiplicity: u8,
    pub kind: OracleKind,
    /// Even multiplicity: the phase functional may miss it.
    pub possibly_invisible: bool,
    /// Tangential minimum of |d_m| not certified by a sign change.
    pub uncertified: bool,
}

fn check_disk(a: f64, interval: [f64; 2]) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {a}")));
    }
    let [lo, hi] = interval;
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] must satisfy 0 ≤ lo < hi")));
    }
    Ok(())
}

/// Scan limit rounded up to the scan grid, so every interval shares the same
/// brackets and splitting an interval reproduces identical roots.
fn grid_limit(x: f64, step: f64) -> f64 {
    (x / step).ceil().max(1.0) * step
}

fn order_limit(x_hi: f64) -> u32 {
    x_hi.ceil() as u32 + 8
}

fn multiplicity(m: u32) -> u8 {
    if m == 0 {
        1
    } else {
        2
    }
}

fn sorted(mut v: Vec<OracleEigenvalue>) -> Vec<OracleEigenvalue> {
    v.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.m.cmp(&b.m)));
    v
}

fn bessel_family<Z: Fn(u32, f64, f64) -> Result<Vec<f64>>>(a: f64, interval: [f64; 2], kind: OracleKind, zeros: Z) -> Result<Vec<OracleEigenvalue>> {
    check_disk(a, interval)?;
    let x_hi = interval[1].sqrt() * a;
    let lim = grid_limit(x_hi, ZERO_SCAN_STEP);
    if lim > MAX_ARG {
        return Err(Error::Domain(format!("ka up to {x_hi} exceeds the argument cap {MAX_ARG}")));
    }
    let mut out = Vec::new();
    for m in 0..=order_limit(x_hi) {
        for (i, x) in zeros(m, 0.0, lim)?.into_iter().enumerate() {
            let lambda = (x / a).powi(2);
            if lambda >= interval[0] && lambda <= interval[1] && lambda > 0.0 {
                out.push(OracleEigenvalue {
                    lambda,
                    m,
                    radial: i + 1,
                    multiplicity: multiplicity(m),
                    kind,
                    possibly_invisible: false,
                    uncertified: false,
                });
            }
        }
    }
    Ok(sorted(out))
}

/// λ = (j_{m,n}/a)².
pub fn dirichlet_disk_eigs(a: f64, interval: [f64; 2]) -> Result<Vec<OracleEigenvalue>> {
    bessel_family(a, interval, OracleKind::Dirichlet, bessel_j_zeros)
}

/// λ = (j′_{m,n}/a)², the constant mode λ = 0 excluded.
pub fn neumann_disk_eigs(a: f64, interval: [f64; 2]) -> Result<Vec<OracleEigenvalue>> {
    bessel_family(a, interval, OracleKind::Neumann, deriv_j_zeros)
}

/// d_m(x) = √n J_m′(√n x) J_m(x) − J_m′(x) J_m(√n x), x = ka: the
/// determinant of the Cauchy-data matching of J_m(kr)e^{imθ} and
/// c J_m(√n kr)e^{imθ} on r = a.
pub fn ite_determinant(m: u32, n: f64, x: f64) -> Result<f64> {
    let sn = n.sqrt();
    let t = BesselTable::j_only(m, x)?;
    let tn = BesselTable::j_only(m, sn * x)?;
    let mi = m as i32;
    Ok(sn * tn.dj(mi) * t.j(mi) - t.dj(mi) * tn.j(mi))
}

pub fn ite_disk_eigs(a: f64, n: f64, interval: [f64; 2]) -> Result<Vec<OracleEigenvalue>> {
    check_disk(a, interval)?;
    if !(n > 0.0 && n.is_finite()) || n == 1.0 {
        return Err(Error::InvalidArgument(format!("refractive index must be positive and ≠ 1, got {n}")));
    }
    let x_hi = interval[1].sqrt() * a;
    let lim = grid_limit(x_hi, ITE_SCAN_STEP);
    if lim * n.sqrt().max(1.0) > MAX_ARG {
        return Err(Error::Domain("ITE scan exceeds the argument cap".into()));
    }
    let in_range = |lambda: f64| lambda >= interval[0] && lambda <= interval[1];
    let mut out = Vec::new();
    for m in 0..=order_limit(x_hi * n.sqrt().max(1.0)) {
        let d = |x: f64| ite_determinant(m, n, x).unwrap_or(f64::NAN);
        let roots = bracket_roots(d, ITE_SCAN_STEP, lim, ITE_SCAN_STEP, ZERO_TOL);
        for (i, &x) in roots.iter().enumerate() {
            let lambda = (x / a).powi(2);
            if in_range(lambda) {
                out.push(OracleEigenvalue {
                    lambda,
                    m,
                    radial: i + 1,
                    multiplicity: multiplicity(m),
                    kind: OracleKind::Ite,
                    possibly_invisible: m > 0,
                    uncertified: false,
                });
            }
        }
        // tangential roots: scan minima of |d_m| without a sign change
        let steps = (lim / ITE_SCAN_STEP).round() as usize;
        let vals: Vec<f64> = (1..=steps).map(|i| d(i as f64 * ITE_SCAN_STEP)).collect();
        for i in 1..vals.len().saturating_sub(1) {
            let (p, c, q) = (vals[i - 1], vals[i], vals[i + 1]);
            let minimum = c.abs() < p.abs() && c.abs() < q.abs();
            if minimum && c.abs() < EVEN_ROOT_FLAG && p * c > 0.0 && c * q > 0.0 {
                let lambda = (((i + 1) as f64 * ITE_SCAN_STEP) / a).powi(2);
                if in_range(lambda) {
                    out.push(OracleEigenvalue {
                        lambda,
                        m,
                        radial: 0,
                        multiplicity: multiplicity(m),
                        kind: OracleKind::Ite,
                        possibly_invisible: true,
                        uncertified: true,
                    });
                }
            }
        }
    }
    Ok(sorted(out))
}
