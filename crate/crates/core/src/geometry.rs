//! Analytic closed curves, their trapezoid discretizations and the two-curve
//! scene (scatterer boundary plus source/receiver curve).

use crate::error::{Error, Result};
use nalgebra::Vector2;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

pub type Vec2 = Vector2<f64>;

pub const DEFAULT_N_SOURCE: usize = 64;
pub const DEFAULT_N_OBSTACLE: usize = 128;
pub const MIN_SEPARATION: f64 = 1e-6;

/// Positively oriented analytic closed curve x(t), t ∈ [0, 2π).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ClosedCurve {
    Circle { center: [f64; 2], radius: f64 },
    /// (cos t + 0.65 cos 2t − 0.65, 1.5 sin t)
    Kite,
    Ellipse { center: [f64; 2], semi_axes: [f64; 2] },
}

impl ClosedCurve {
    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            ClosedCurve::Circle { center, radius } => {
                if !finite(center) || !radius.is_finite() || *radius <= 0.0 {
                    return Err(Error::InvalidGeometry(format!("circle radius must be positive and finite, got {radius}")));
                }
            }
            ClosedCurve::Kite => {}
            ClosedCurve::Ellipse { center, semi_axes } => {
                if !finite(center) || !finite(semi_axes) || semi_axes[0] <= 0.0 || semi_axes[1] <= 0.0 {
                    return Err(Error::InvalidGeometry(format!("ellipse semi-axes must be positive, got {semi_axes:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClosedCurve::Circle { .. } => "circle",
            ClosedCurve::Kite => "kite",
            ClosedCurve::Ellipse { .. } => "ellipse",
        }
    }

    pub fn center(&self) -> Vec2 {
        match self {
            ClosedCurve::Circle { center, .. } | ClosedCurve::Ellipse { center, .. } => Vec2::new(center[0], center[1]),
            ClosedCurve::Kite => Vec2::zeros(),
        }
    }

    /// Center and radius when the curve is a circle.
    pub fn as_circle(&self) -> Option<(Vec2, f64)> {
        match self {
            ClosedCurve::Circle { center, radius } => Some((Vec2::new(center[0], center[1]), *radius)),
            _ => None,
        }
    }

    pub fn point(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        match self {
            ClosedCurve::Circle { center, radius } => Vec2::new(center[0] + radius * c, center[1] + radius * s),
            ClosedCurve::Kite => Vec2::new(c + 0.65 * (2.0 * t).cos() - 0.65, 1.5 * s),
            ClosedCurve::Ellipse { center, semi_axes } => {
                Vec2::new(center[0] + semi_axes[0] * c, center[1] + semi_axes[1] * s)
            }
        }
    }

    pub fn deriv(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        match self {
            ClosedCurve::Circle { radius, .. } => Vec2::new(-radius * s, radius * c),
            ClosedCurve::Kite => Vec2::new(-s - 1.3 * (2.0 * t).sin(), 1.5 * c),
            ClosedCurve::Ellipse { semi_axes, .. } => Vec2::new(-semi_axes[0] * s, semi_axes[1] * c),
        }
    }

    pub fn deriv2(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        match self {
            ClosedCurve::Circle { radius, .. } => Vec2::new(-radius * c, -radius * s),
            ClosedCurve::Kite => Vec2::new(-c - 2.6 * (2.0 * t).cos(), -1.5 * s),
            ClosedCurve::Ellipse { semi_axes, .. } => Vec2::new(-semi_axes[0] * c, -semi_axes[1] * s),
        }
    }
}

/// Equispaced trapezoid discretization t_i = 2πi/N.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedCurve {
    pub curve: ClosedCurve,
    pub t: Vec<f64>,
    pub points: Vec<Vec2>,
    pub tangents: Vec<Vec2>,
    pub second: Vec<Vec2>,
    pub normals: Vec<Vec2>,
    pub jacobians: Vec<f64>,
    pub weights: Vec<f64>,
}

impl DiscretizedCurve {
    pub fn new(curve: ClosedCurve, n: usize) -> Result<Self> {
        curve.validate()?;
        let min_n = if matches!(curve, ClosedCurve::Kite) { 32 } else { 8 };
        if n < min_n || n % 2 != 0 {
            return Err(Error::InvalidGeometry(format!(
                "{} needs an even node count ≥ {min_n}, got {n}",
                curve.name()
            )));
        }
        let h = 2.0 * PI / n as f64;
        let t: Vec<f64> = (0..n).map(|i| h * i as f64).collect();
        let points: Vec<Vec2> = t.iter().map(|&s| curve.point(s)).collect();
        let tangents: Vec<Vec2> = t.iter().map(|&s| curve.deriv(s)).collect();
        let second = t.iter().map(|&s| curve.deriv2(s)).collect();
        let jacobians: Vec<f64> = tangents.iter().map(|d| d.norm()).collect();
        if jacobians.iter().any(|&j| !(j > 0.0)) {
            return Err(Error::InvalidGeometry("vanishing parametrization speed".into()));
        }
        let normals = tangents.iter().zip(&jacobians).map(|(d, j)| Vec2::new(d.y / j, -d.x / j)).collect();
        let weights = jacobians.iter().map(|j| h * j).collect();
        let c = DiscretizedCurve { curve, t, points, tangents, second, normals, jacobians, weights };
        if c.signed_area() <= 0.0 {
            return Err(Error::InvalidGeometry("curve is not positively oriented".into()));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Shoelace area over the nodes.
    pub fn signed_area(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let (p, q) = (self.points[i], self.points[(i + 1) % n]);
                p.x * q.y - q.x * p.y
            })
            .sum::<f64>()
            * 0.5
    }

    /// Winding-number containment test against the node polygon.
    pub fn contains(&self, p: &Vec2) -> bool {
        let n = self.len();
        let mut angle = 0.0;
        for i in 0..n {
            let a = self.points[i] - p;
            let b = self.points[(i + 1) % n] - p;
            angle += (a.x * b.y - a.y * b.x).atan2(a.dot(&b));
        }
        angle.abs() > PI
    }

    pub fn min_distance(&self, p: &Vec2) -> f64 {
        self.points.iter().map(|q| (q - p).norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_radius(&self) -> f64 {
        let c = self.curve.center();
        self.points.iter().map(|p| (p - c).norm()).fold(0.0, f64::max)
    }

    /// Same curve with a different node count.
    pub fn with_nodes(&self, n: usize) -> Result<Self> {
        Self::new(self.curve.clone(), n)
    }
}

pub fn make_circle(center: [f64; 2], radius: f64, n: usize) -> Result<DiscretizedCurve> {
    DiscretizedCurve::new(ClosedCurve::Circle { center, radius }, n)
}

pub fn make_kite(n: usize) -> Result<DiscretizedCurve> {
    DiscretizedCurve::new(ClosedCurve::Kite, n)
}

pub fn make_ellipse(center: [f64; 2], semi_axes: [f64; 2], n: usize) -> Result<DiscretizedCurve> {
    DiscretizedCurve::new(ClosedCurve::Ellipse { center, semi_axes }, n)
}

/// Scatterer boundary ∂O and source curve S with disjoint closures.
#[derive(Debug, Clone)]
pub struct SceneGeometry {
    pub obstacle: Arc<DiscretizedCurve>,
    pub source: Arc<DiscretizedCurve>,
    pub separation: f64,
    pub obstacle_radius: f64,
    pub source_radius: f64,
}

pub fn validate_scene(obstacle: DiscretizedCurve, source: DiscretizedCurve) -> Result<SceneGeometry> {
    let mut separation = f64::INFINITY;
    for p in &obstacle.points {
        separation = separation.min(source.min_distance(p));
    }
    let nested = obstacle.points.iter().any(|p| source.contains(p)) || source.points.iter().any(|p| obstacle.contains(p));
    if nested || !(separation > MIN_SEPARATION) {
        return Err(Error::Overlap { separation: if nested { 0.0 } else { separation } });
    }
    Ok(SceneGeometry {
        obstacle_radius: obstacle.bounding_radius(),
        source_radius: source.bounding_radius(),
        obstacle: Arc::new(obstacle),
        source: Arc::new(source),
        separation,
    })
}

impl SceneGeometry {
    pub fn with_nodes(&self, n_obstacle: usize, n_source: usize) -> Result<SceneGeometry> {
        validate_scene(self.obstacle.with_nodes(n_obstacle)?, self.source.with_nodes(n_source)?)
    }

    pub fn obstacle_disk(&self) -> Option<(Vec2, f64)> {
        self.obstacle.curve.as_circle()
    }
}
