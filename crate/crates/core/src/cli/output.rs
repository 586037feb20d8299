//! Deterministic CSV, JSON and SVG writers.

use crate::duality::{Detection, PhaseCurve};
use crate::error::Result;
use std::fmt::Write as _;
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits; NaN as `nan`.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn header(hash: &str, what: &str) -> String {
    format!("# nfduality {VERSION}\n# config_hash {hash}\n# {what}\n")
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn sweep_csv(curve: &PhaseCurve, hash: &str) -> String {
    let mut s = header(hash, &format!("sweep of {} over [{}, {}] step {} sigma {}", curve.provenance, curve.interval[0], curve.interval[1], curve.step, curve.sigma));
    s.push_str("lambda,phi,psi,n_retained_eigs,min_eigphase,skipped\n");
    for p in &curve.samples {
        let min_eig = p.eigenphases.iter().map(|e| e.arg).fold(f64::NAN, f64::min);
        let _ = writeln!(s, "{},{},{},{},{},{}", num(p.lambda), num(p.phi), num(p.psi), p.n_retained(), num(min_eig), u8::from(p.skipped));
    }
    s
}

/// Φ(λ) polyline on [0, 2π] with detection markers; gaps at skipped samples.
pub fn sweep_svg(curve: &PhaseCurve, detections: &[Detection]) -> String {
    let (w, h, pad) = (720.0, 360.0, 40.0);
    let [lo, hi] = curve.interval;
    let x = |l: f64| pad + (l - lo) / (hi - lo) * (w - 2.0 * pad);
    let y = |p: f64| h - pad - p / std::f64::consts::TAU * (h - 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{:.2} {:.2} H{:.2} M{:.2} {:.2} V{:.2}" stroke="black" fill="none"/>"#,
        pad,
        h - pad,
        w - pad,
        pad,
        h - pad,
        pad
    );
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12">λ</text>"#, w / 2.0, h - 8.0);
    let _ = writeln!(s, r#"<text x="8" y="{:.2}" font-size="12">Φ</text>"#, h / 2.0);
    let _ = writeln!(s, r#"<text x="{pad}" y="{:.2}" font-size="10">{lo}</text>"#, h - pad + 14.0);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="10">{hi}</text>"#, w - pad - 10.0, h - pad + 14.0);
    for d in detections {
        let _ = writeln!(s, r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="red" stroke-dasharray="4 3"/>"#, x(d.lambda_hat), pad, h - pad);
    }
    let mut path = String::new();
    let mut pen_down = false;
    for p in &curve.samples {
        if p.skipped || !p.phi.is_finite() {
            pen_down = false;
            continue;
        }
        let _ = write!(path, "{}{:.2} {:.2} ", if pen_down { "L" } else { "M" }, x(p.lambda), y(p.phi));
        pen_down = true;
    }
    let _ = writeln!(s, r#"<path d="{}" stroke="steelblue" fill="none"/>"#, path.trim_end());
    s.push_str("</svg>\n");
    s
}
