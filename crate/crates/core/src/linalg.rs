//! Small dense complex linear-algebra helpers on top of nalgebra.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ‖a − b‖_F / ‖b‖_F
pub fn rel_frobenius_distance(a: &CMat, b: &CMat) -> f64 {
    frobenius(&(a - b)) / frobenius(b)
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Map an angle to [0, 2π).
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

pub fn arg_2pi(z: Complex64) -> f64 {
    wrap_angle(z.arg())
}

/// Eigenvalues of a general complex matrix from its Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let t = nalgebra::Schur::new(m.clone()).unpack().1;
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
pub fn hermitian_top(h: CMat) -> (f64, CVec) {
    let e = nalgebra::SymmetricEigen::new(h);
    let mut best = 0;
    for i in 1..e.eigenvalues.len() {
        if e.eigenvalues[i] > e.eigenvalues[best] {
            best = i;
        }
    }
    (e.eigenvalues[best], e.eigenvectors.column(best).into_owned())
}

/// Orthonormal basis of span(U_r) + span(V_r), where U_r, V_r are the left and
/// right singular vectors with s ≥ rel_tol·s_max. Compressing M to this basis
/// keeps every quadratic-form value of M up to ‖M‖·rel_tol.
pub fn dominant_subspace(m: &CMat, rel_tol: f64) -> CMat {
    let n = m.nrows();
    let svd = m.clone().svd(true, true);
    let s = &svd.singular_values;
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..s.len()).filter(|&i| s[i] > rel_tol * smax && s[i] > 0.0).collect();
    if keep.is_empty() {
        return CMat::zeros(n, 0);
    }
    let u = svd.u.as_ref().unwrap();
    let vt = svd.v_t.as_ref().unwrap();
    let mut stacked = CMat::zeros(n, 2 * keep.len());
    for (c, &i) in keep.iter().enumerate() {
        stacked.set_column(c, &u.column(i));
        stacked.set_column(keep.len() + c, &vt.row(i).adjoint());
    }
    let svd2 = stacked.svd(true, false);
    let s2 = &svd2.singular_values;
    let s2max = s2.iter().cloned().fold(0.0, f64::max);
    let u2 = svd2.u.unwrap();
    let cols: Vec<usize> = (0..s2.len()).filter(|&i| s2[i] > 1e-10 * s2max).collect();
    let mut q = CMat::zeros(n, cols.len());
    for (c, &i) in cols.iter().enumerate() {
        q.set_column(c, &u2.column(i));
    }
    q
}

/// LU solve with a crude condition estimate on failure.
pub fn solve(a: &CMat, b: &CMat) -> Result<CMat> {
    let lu = a.clone().lu();
    let u = lu.u();
    let diag: Vec<f64> = (0..u.nrows()).map(|i| u[(i, i)].norm()).collect();
    let dmax = diag.iter().cloned().fold(0.0, f64::max);
    let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(dmin > 1e-14 * dmax) {
        return Err(Error::Solve { cond: dmax / dmin });
    }
    lu.solve(b).ok_or(Error::Solve { cond: dmax / dmin })
}

/// Fourier modes carried by N equispaced nodes: −N/2+1 ..= N/2.
pub fn fourier_modes(n: usize) -> impl Iterator<Item = i32> {
    let h = (n / 2) as i32;
    (-h + 1)..=h
}

/// Nodal matrix of the Fourier multiplier `symbol` on N equispaced nodes of
/// [0, 2π): T = F⁻¹ diag(symbol) F. Circulant, so only one row of sums is
/// formed.
pub fn fourier_multiplier<F: Fn(i32) -> Complex64>(n: usize, symbol: F) -> CMat {
    let s: Vec<(i32, Complex64)> = fourier_modes(n).map(|m| (m, symbol(m))).collect();
    let c: Vec<Complex64> = (0..n)
        .map(|d| {
            let ang = 2.0 * PI * d as f64 / n as f64;
            s.iter().map(|&(m, v)| v * cis(m as f64 * ang)).sum::<Complex64>() / n as f64
        })
        .collect();
    CMat::from_fn(n, n, |i, j| c[(i + n - j) % n])
}
