//! Flat `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment, keys are dotted
//! (`obstacle.radius`). Lists are comma separated. Every key is optional;
//! an empty file describes the unit-disk Dirichlet demo. Keys under `run.`
//! tune execution only and are left out of the config hash, so outputs do
//! not depend on them.

use crate::duality::{PhaseOptions, Thresholds};
use crate::error::{Error, Result};
use crate::forward::ScatteringProblem;
use crate::geometry::{validate_scene, ClosedCurve, DiscretizedCurve, SceneGeometry};
use crate::synth::{DEFAULT_ALPHAS, DEFAULT_EPSILON, DEFAULT_OUTER_RADIUS};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

const KEYS: &[&str] = &[
    "obstacle.shape",
    "obstacle.center",
    "obstacle.radius",
    "obstacle.semi_axes",
    "obstacle.nodes",
    "source.center",
    "source.radius",
    "source.nodes",
    "problem.kind",
    "problem.n",
    "sweep.interval",
    "sweep.step",
    "detect.tau_dip",
    "detect.tau_jump",
    "detect.width",
    "phase.delta_rel",
    "phase.theta_grid",
    "farfield.directions",
    "validate.k",
    "validate.fault_jump_sign",
    "synth.k",
    "synth.presumed_region_radius",
    "synth.epsilon",
    "synth.nodes",
    "synth.alphas",
    "synth.phi",
    "run.parallelism",
    "run.cache",
];

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub obstacle: ClosedCurve,
    pub obstacle_nodes: usize,
    pub source_center: [f64; 2],
    pub source_radius: f64,
    pub source_nodes: usize,
    pub problem: ScatteringProblem,
    pub interval: [f64; 2],
    pub step: f64,
    pub thresholds: Thresholds,
    pub phase: PhaseOptions,
    pub farfield_directions: usize,
    pub validate_k: Vec<f64>,
    /// Flips the jump constant in the factorized route (fault injection).
    pub fault_jump_sign: bool,
    pub synth_k: f64,
    pub presumed_region_radius: f64,
    pub synth_epsilon: f64,
    pub synth_nodes: usize,
    pub synth_alphas: Vec<f64>,
    pub synth_phi: Option<PathBuf>,
    pub parallelism: usize,
    pub cache: Option<PathBuf>,
    /// First 16 hex digits of SHA-256 over the canonical hashed entries.
    pub hash: String,
}

fn parse_lines(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::config(&format!("line {}", no + 1), "expected `key = value`"))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(Error::config(k, "unknown key"));
        }
        if v.is_empty() {
            return Err(Error::config(k, "empty value"));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::config(k, "assigned twice"));
        }
    }
    Ok(map)
}

fn canonical(map: &BTreeMap<String, String>) -> String {
    let mut out = String::new();
    for (k, v) in map.iter().filter(|(k, _)| !k.starts_with("run.")) {
        let v: Vec<&str> = v.split(',').map(str::trim).collect();
        out.push_str(&format!("{k}={}\n", v.join(",")));
    }
    out
}

struct Fields<'a>(&'a BTreeMap<String, String>);

impl Fields<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(v) = self.raw(key) else { return Ok(None) };
        v.split(',')
            .map(|s| {
                let x: f64 = s.trim().parse().map_err(|_| Error::config(key, format!("`{}` is not a number", s.trim())))?;
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(Error::config(key, "must be finite"))
                }
            })
            .collect::<Result<Vec<f64>>>()
            .map(Some)
    }

    fn pair(&self, key: &str, default: [f64; 2]) -> Result<[f64; 2]> {
        match self.list(key)? {
            None => Ok(default),
            Some(v) if v.len() == 2 => Ok([v[0], v[1]]),
            Some(v) => Err(Error::config(key, format!("expected 2 values, got {}", v.len()))),
        }
    }

    fn num(&self, key: &str, default: f64) -> Result<f64> {
        match self.list(key)? {
            None => Ok(default),
            Some(v) if v.len() == 1 => Ok(v[0]),
            Some(_) => Err(Error::config(key, "expected one number")),
        }
    }

    fn positive(&self, key: &str, default: f64) -> Result<f64> {
        let x = self.num(key, default)?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(Error::config(key, format!("must be positive, got {x}")))
        }
    }

    fn count(&self, key: &str, default: usize, min: usize) -> Result<usize> {
        let Some(v) = self.raw(key) else { return Ok(default) };
        let n: usize = v.parse().map_err(|_| Error::config(key, format!("`{v}` is not a whole number")))?;
        if n < min {
            return Err(Error::config(key, format!("must be at least {min}")));
        }
        Ok(n)
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.raw(key) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(v) => Err(Error::config(key, format!("expected true or false, got `{v}`"))),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let map = parse_lines(text)?;
        let f = Fields(&map);

        let center = f.pair("obstacle.center", [0.0, 0.0])?;
        let obstacle = match f.raw("obstacle.shape").unwrap_or("circle") {
            "circle" => ClosedCurve::Circle { center, radius: f.positive("obstacle.radius", 1.0)? },
            "ellipse" => {
                let semi_axes = f.pair("obstacle.semi_axes", [1.0, 1.0])?;
                if semi_axes.iter().any(|a| *a <= 0.0) {
                    return Err(Error::config("obstacle.semi_axes", "must be positive"));
                }
                ClosedCurve::Ellipse { center, semi_axes }
            }
            "kite" => ClosedCurve::Kite,
            other => return Err(Error::config("obstacle.shape", format!("unknown shape `{other}` (circle, ellipse, kite)"))),
        };
        let problem = match f.raw("problem.kind").unwrap_or("dirichlet") {
            "dirichlet" => ScatteringProblem::dirichlet(),
            "neumann" => ScatteringProblem::neumann(),
            "transmission" => {
                let n = f.positive("problem.n", 4.0)?;
                ScatteringProblem::transmission(n).map_err(|e| Error::config("problem.n", e.to_string()))?
            }
            other => return Err(Error::config("problem.kind", format!("unknown kind `{other}` (dirichlet, neumann, transmission)"))),
        };
        let interval = f.pair("sweep.interval", [2.0, 16.0])?;
        if !(interval[0] > 0.0 && interval[1] > interval[0]) {
            return Err(Error::config("sweep.interval", "must satisfy 0 < lo < hi"));
        }
        let delta_rel = f.positive("phase.delta_rel", PhaseOptions::default().delta_rel)?;
        if delta_rel >= 1.0 {
            return Err(Error::config("phase.delta_rel", "must lie in (0, 1)"));
        }
        let validate_k = f.list("validate.k")?.unwrap_or_else(|| vec![1.5, 2.5]);
        if validate_k.is_empty() || validate_k.iter().any(|k| *k <= 0.0) {
            return Err(Error::config("validate.k", "must be positive"));
        }
        let synth_alphas = f.list("synth.alphas")?.unwrap_or_else(|| DEFAULT_ALPHAS.to_vec());
        if synth_alphas.iter().any(|a| *a <= 0.0) || synth_alphas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::config("synth.alphas", "must be positive and strictly decreasing"));
        }
        let defaults = Thresholds::default();

        Ok(RunConfig {
            obstacle,
            obstacle_nodes: f.count("obstacle.nodes", 128, 8)?,
            source_center: f.pair("source.center", [2.0, 0.0])?,
            source_radius: f.positive("source.radius", 0.3)?,
            source_nodes: f.count("source.nodes", 64, 8)?,
            problem,
            interval,
            step: f.positive("sweep.step", 0.02)?,
            thresholds: Thresholds {
                tau_dip: f.positive("detect.tau_dip", defaults.tau_dip)?,
                tau_jump: f.positive("detect.tau_jump", defaults.tau_jump)?,
                width: f.positive("detect.width", defaults.width)?,
            },
            phase: PhaseOptions { delta_rel, theta_grid: f.count("phase.theta_grid", PhaseOptions::default().theta_grid, 8)? },
            farfield_directions: f.count("farfield.directions", 64, 8)?,
            validate_k,
            fault_jump_sign: f.flag("validate.fault_jump_sign")?,
            synth_k: f.positive("synth.k", 1.7)?,
            presumed_region_radius: f.positive("synth.presumed_region_radius", DEFAULT_OUTER_RADIUS)?,
            synth_epsilon: f.positive("synth.epsilon", DEFAULT_EPSILON)?,
            synth_nodes: f.count("synth.nodes", 128, 8)?,
            synth_alphas,
            synth_phi: f.raw("synth.phi").map(PathBuf::from),
            parallelism: f.count("run.parallelism", 1, 1)?,
            cache: f.raw("run.cache").map(PathBuf::from),
            hash: {
                let digest = Sha256::digest(canonical(&map).as_bytes());
                digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
            },
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config("--config", format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        // relative φ paths are read next to the config file
        if let (Some(phi), Some(dir)) = (&cfg.synth_phi, path.parent()) {
            if phi.is_relative() {
                cfg.synth_phi = Some(dir.join(phi));
            }
        }
        Ok(cfg)
    }

    pub fn scene(&self) -> Result<SceneGeometry> {
        let obstacle = DiscretizedCurve::new(self.obstacle.clone(), self.obstacle_nodes)?;
        let source = DiscretizedCurve::new(ClosedCurve::Circle { center: self.source_center, radius: self.source_radius }, self.source_nodes)?;
        validate_scene(obstacle, source)
    }
}
