//! Integer-order cylinder functions J_m, Y_m, H_m^(1) of a real argument,
//! their derivatives and real zeros.
//!
//! J is evaluated by the ascending series for x ≤ 1 and by Miller's backward
//! recurrence (normalized with J_0 + 2ΣJ_2k = 1) above that. Y_0 and Y_1 come
//! from the Neumann expansions in terms of the J table, higher Y_m from the
//! (stable) forward recurrence.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const MAX_ORDER: u32 = 120;
pub const MAX_ARG: f64 = 200.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_SWITCH: f64 = 1.0;
/// Scan step used to bracket zeros.
pub const ZERO_SCAN_STEP: f64 = PI / 8.0;
pub const ZERO_TOL: f64 = 1e-12;

/// Validated non-negative order `m ≤ MAX_ORDER`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(u32);

impl BesselOrder {
    pub fn new(m: u32) -> Result<Self> {
        if m > MAX_ORDER {
            return Err(Error::Domain(format!("order {m} exceeds {MAX_ORDER}")));
        }
        Ok(BesselOrder(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn check_x(x: f64, strict: bool) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {x}")));
    }
    if x < 0.0 || (strict && x == 0.0) {
        return Err(Error::Domain(format!("argument {x} outside the domain")));
    }
    if x > MAX_ARG {
        return Err(Error::Domain(format!("argument {x} exceeds {MAX_ARG}")));
    }
    Ok(())
}

/// Sign factor for negative orders: C_{-m} = (-1)^m C_m.
pub fn neg_order_sign(m: i32) -> f64 {
    if m < 0 && m % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

/// J_0..J_top(x) for 0 ≤ x ≤ 1 by the ascending series, order by order.
fn j_series_table(x: f64, top: usize) -> Vec<f64> {
    let h = 0.5 * x;
    let q = -h * h;
    let mut out = Vec::with_capacity(top + 1);
    let mut lead = 1.0; // (x/2)^m / m!
    for m in 0..=top {
        if m > 0 {
            lead *= h / m as f64;
        }
        if lead == 0.0 {
            out.push(0.0);
            continue;
        }
        let mut term = lead;
        let mut sum = lead;
        let mut k = 1.0;
        loop {
            term *= q / (k * (m as f64 + k));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        out.push(sum);
    }
    out
}

/// Normalized Miller table J_0..J_top(x), top ≥ m_need and well past x.
fn j_miller_table(x: f64, m_need: usize) -> Vec<f64> {
    let base = (m_need as f64).max(x);
    let mut top = (base + 40.0 + 6.0 * x.cbrt()).ceil() as usize;
    top += top % 2;
    let mut v = vec![0.0; top + 2];
    v[top + 1] = 0.0;
    v[top] = 1e-300;
    let two_over_x = 2.0 / x;
    for n in (1..=top).rev() {
        let prev = n as f64 * two_over_x * v[n] - v[n + 1];
        v[n - 1] = prev;
        if prev.abs() > 1e200 {
            for val in v[n - 1..].iter_mut() {
                *val *= 1e-200;
            }
        }
    }
    let mut norm = v[0];
    let mut k = 2;
    while k <= top {
        norm += 2.0 * v[k];
        k += 2;
    }
    v.truncate(top + 1);
    for val in v.iter_mut() {
        *val /= norm;
    }
    v
}

/// Long J table whose tail is negligible: needed by the Neumann series for Y.
fn j_table(x: f64, m_need: usize) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; m_need + 1];
        v[0] = 1.0;
        v
    } else if x <= SERIES_SWITCH {
        j_series_table(x, m_need.max(24))
    } else {
        j_miller_table(x, m_need)
    }
}

/// Y_0 and Y_1 from the Neumann expansions over a long J table.
fn y01_from_j(x: f64, j: &[f64]) -> (f64, f64) {
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = 2.0 / PI * (lg * j[0] - 2.0 * s0);
    let y1 = 2.0 / PI * (-j[0] / x + lg * j[1] + s1);
    (y0, y1)
}

/// J_0..J_{m_max}(x). Defined for 0 ≤ x ≤ MAX_ARG.
pub fn bessel_j_seq(m_max: u32, x: f64) -> Result<Vec<f64>> {
    check_x(x, false)?;
    let mut t = j_table(x, m_max as usize + 1);
    t.truncate(m_max as usize + 1);
    Ok(t)
}

/// Y_0..Y_{m_max}(x) for 0 < x ≤ MAX_ARG. Values overflow to -inf when
/// Y_m(x) exceeds the double range (large m, small x).
pub fn bessel_y_seq(m_max: u32, x: f64) -> Result<Vec<f64>> {
    let tab = BesselTable::new(m_max, x)?;
    Ok(tab.y[..=m_max as usize].to_vec())
}

pub fn hankel1_seq(m_max: u32, x: f64) -> Result<Vec<Complex64>> {
    let tab = BesselTable::new(m_max, x)?;
    Ok((0..=m_max as usize).map(|m| Complex64::new(tab.j[m], tab.y[m])).collect())
}

pub fn bessel_j(m: u32, x: f64) -> Result<f64> {
    BesselOrder::new(m)?;
    Ok(bessel_j_seq(m, x)?[m as usize])
}

pub fn bessel_y(m: u32, x: f64) -> Result<f64> {
    BesselOrder::new(m)?;
    Ok(bessel_y_seq(m, x)?[m as usize])
}

pub fn hankel1(m: u32, x: f64) -> Result<Complex64> {
    BesselOrder::new(m)?;
    let tab = BesselTable::new(m, x)?;
    Ok(tab.h(m as i32))
}

pub fn deriv_j(m: u32, x: f64) -> Result<f64> {
    BesselOrder::new(m)?;
    check_x(x, false)?;
    let t = j_table(x, m as usize + 2);
    Ok(if m == 0 { -t[1] } else { 0.5 * (t[m as usize - 1] - t[m as usize + 1]) })
}

pub fn deriv_y(m: u32, x: f64) -> Result<f64> {
    BesselOrder::new(m)?;
    let tab = BesselTable::new(m, x)?;
    Ok(tab.dy(m as i32))
}

pub fn deriv_hankel1(m: u32, x: f64) -> Result<Complex64> {
    BesselOrder::new(m)?;
    let tab = BesselTable::new(m, x)?;
    Ok(tab.dh(m as i32))
}

/// J and Y for orders 0..=m_max + 1 at one argument, with accessors for
/// signed orders and derivatives up to |m| = m_max.
#[derive(Debug, Clone)]
pub struct BesselTable {
    pub x: f64,
    pub m_max: u32,
    j: Vec<f64>,
    y: Vec<f64>,
}

impl BesselTable {
    /// Requires x > 0.
    pub fn new(m_max: u32, x: f64) -> Result<Self> {
        check_x(x, true)?;
        if m_max > MAX_ORDER {
            return Err(Error::Domain(format!("order {m_max} exceeds {MAX_ORDER}")));
        }
        let n = m_max as usize + 1;
        let jt = j_table(x, n);
        let (y0, y1) = y01_from_j(x, &jt);
        let mut y = Vec::with_capacity(n + 1);
        y.push(y0);
        y.push(y1);
        for m in 1..n {
            let next = 2.0 * m as f64 / x * y[m] - y[m - 1];
            y.push(next);
        }
        let mut j = jt;
        j.truncate(n + 1);
        Ok(BesselTable { x, m_max, j, y })
    }

    /// J only; allows x = 0.
    pub fn j_only(m_max: u32, x: f64) -> Result<Self> {
        check_x(x, false)?;
        let n = m_max as usize + 1;
        let mut j = j_table(x, n);
        j.truncate(n + 1);
        Ok(BesselTable { x, m_max, j, y: Vec::new() })
    }

    fn idx(&self, m: i32) -> (usize, f64) {
        let a = m.unsigned_abs() as usize;
        assert!(a <= self.m_max as usize + 1, "order {m} outside table");
        (a, neg_order_sign(m))
    }

    pub fn j(&self, m: i32) -> f64 {
        let (a, s) = self.idx(m);
        s * self.j[a]
    }

    pub fn y(&self, m: i32) -> f64 {
        let (a, s) = self.idx(m);
        s * self.y[a]
    }

    pub fn h(&self, m: i32) -> Complex64 {
        Complex64::new(self.j(m), self.y(m))
    }

    pub fn dj(&self, m: i32) -> f64 {
        0.5 * (self.j(m - 1) - self.j(m + 1))
    }

    pub fn dy(&self, m: i32) -> f64 {
        0.5 * (self.y(m - 1) - self.y(m + 1))
    }

    pub fn dh(&self, m: i32) -> Complex64 {
        Complex64::new(self.dj(m), self.dy(m))
    }
}

/// Roots of `f` on [lo, hi]: sign changes on a grid of step `step`, each
/// refined by bisection to width `tol`. Grid points where f is exactly zero
/// are returned as roots.
pub fn bracket_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(hi > lo) {
        return roots;
    }
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let grid = |i: usize| if i == n { hi } else { lo + i as f64 * step };
    let mut a = lo;
    let mut fa = f(a);
    if fa == 0.0 {
        roots.push(a);
    }
    for i in 1..=n {
        let b = grid(i);
        let fb = f(b);
        if fb == 0.0 {
            roots.push(b);
        } else if fa != 0.0 && fa.signum() != fb.signum() {
            roots.push(bisect(&f, a, b, fa, tol));
        }
        a = b;
        fa = fb;
    }
    roots
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn check_interval(m: u32, lo: f64, hi: f64) -> Result<()> {
    BesselOrder::new(m)?;
    if !(lo >= 0.0 && lo < hi && hi <= MAX_ARG) {
        return Err(Error::Domain(format!("zero interval [{lo}, {hi}] must satisfy 0 ≤ lo < hi ≤ {MAX_ARG}")));
    }
    Ok(())
}

/// Positive zeros of J_m in [lo, hi], ascending.
pub fn bessel_j_zeros(m: u32, lo: f64, hi: f64) -> Result<Vec<f64>> {
    check_interval(m, lo, hi)?;
    let f = |x: f64| bessel_j(m, x).unwrap_or(f64::NAN);
    Ok(positive(bracket_roots(f, lo, hi, ZERO_SCAN_STEP, ZERO_TOL)))
}

/// Positive zeros of J_m′ in [lo, hi], ascending. x = 0 is never reported.
pub fn deriv_j_zeros(m: u32, lo: f64, hi: f64) -> Result<Vec<f64>> {
    check_interval(m, lo, hi)?;
    let f = |x: f64| deriv_j(m, x).unwrap_or(f64::NAN);
    Ok(positive(bracket_roots(f, lo, hi, ZERO_SCAN_STEP, ZERO_TOL)))
}

fn positive(v: Vec<f64>) -> Vec<f64> {
    v.into_iter().filter(|&z| z > 0.0).collect()
}
