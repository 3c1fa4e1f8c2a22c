//! Numerical search for drawings whose crossings are (nearly) perpendicular.

pub mod energy;
mod survey;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{extract_embedding, PlanarizedEmbedding};
use crate::geometry::{Point, Rational};
use crate::graph::{Drawing, Graph, VertexId};

pub use energy::Problem;
pub use survey::{perturbed_starts, survey_embeddings, survey_with_starts, Chirality, ClassTally, RunRecord, SurveyReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("no position for vertex {0}")]
    MissingPosition(VertexId),
    #[error("invalid layout config: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutConfig {
    /// Initial step of the backtracking line search.
    pub step_size: f64,
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub rest_length: f64,
    pub spring_weight: f64,
    pub repulsion_weight: f64,
    /// Weight of the barrier keeping vertices off non-incident edges.
    pub edge_repulsion_weight: f64,
    /// Vertex-edge distance below which the barrier acts.
    pub edge_repulsion_radius: f64,
    pub crossing_weight: f64,
    /// Scale each crossing term by how deep the crossing sits inside both
    /// edges, so non-perpendicular crossings can be pushed off an edge end.
    pub crossing_taper: bool,
    /// Constant added to every crossing term during the full descent only,
    /// rewarding the removal of crossings. The reported energy and the
    /// polish use the plain term.
    pub crossing_bias: f64,
    /// Distance below which two vertices repel.
    pub repulsion_radius: f64,
    pub angle_tolerance_deg: f64,
    /// Minimum vertex separation, as a fraction of the layout diameter.
    pub min_separation: f64,
    /// Iterations of the final pass that keeps only the crossing and
    /// repulsion terms.
    pub polish_iterations: usize,
    /// Factor applied to the vertex repulsion weight during the polish.
    pub polish_repulsion_scale: f64,
    /// Sweeps of the final projection that straightens crossings while
    /// keeping the crossing set.
    pub snap_sweeps: usize,
    /// Iterations of an initial force-directed pass without the crossing
    /// term.
    pub untangle_iterations: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            step_size: 0.05,
            max_iterations: 2000,
            restarts: 1,
            seed: 0,
            rest_length: 1.0,
            spring_weight: 0.3,
            repulsion_weight: 1.0,
            edge_repulsion_weight: 1.0,
            edge_repulsion_radius: 0.3,
            crossing_weight: 1.0,
            crossing_taper: true,
            crossing_bias: 3.0,
            repulsion_radius: 3.0,
            angle_tolerance_deg: 0.1,
            min_separation: 1e-3,
            polish_iterations: 2000,
            polish_repulsion_scale: 0.01,
            untangle_iterations: 500,
            snap_sweeps: 200,
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<(), LayoutError> {
        let bad = |m: &str| Err(LayoutError::InvalidConfig(m.to_string()));
        if !(self.crossing_bias >= 0.0 && self.crossing_bias.is_finite()) {
            return bad("crossing_bias must be finite and non-negative");
        }
        let weights = [self.spring_weight, self.repulsion_weight, self.edge_repulsion_weight, self.crossing_weight];
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return bad("weights must be finite and non-negative");
        }
        if !(self.angle_tolerance_deg > 0.0 && self.angle_tolerance_deg <= 1.0) {
            return bad("angle_tolerance_deg must lie in (0, 1]");
        }
        if self.restarts < 1 {
            return bad("restarts must be at least 1");
        }
        if !(self.step_size > 0.0 && self.rest_length > 0.0 && self.repulsion_radius >= 0.0 && self.edge_repulsion_radius >= 0.0 && self.min_separation >= 0.0)
        {
            return bad("step_size and rest_length must be positive, radii non-negative");
        }
        Ok(())
    }

    /// The reported objective: the config without the descent-only bias.
    pub fn objective(&self) -> LayoutConfig {
        LayoutConfig { crossing_bias: 0.0, ..self.clone() }
    }

    pub(crate) fn repulsion_radius(&self) -> f64 {
        self.repulsion_radius
    }

    /// Crossing-angle threshold for near-RAC, in degrees.
    pub fn near_rac_angle(&self) -> f64 {
        90.0 - self.angle_tolerance_deg
    }
}

/// A drawing with floating-point coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatDrawing {
    graph: Graph,
    positions: BTreeMap<VertexId, [f64; 2]>,
}

impl FloatDrawing {
    pub fn new(graph: Graph, positions: BTreeMap<VertexId, [f64; 2]>) -> Result<Self, LayoutError> {
        for v in graph.vertices() {
            let p = positions.get(v).ok_or_else(|| LayoutError::MissingPosition(v.clone()))?;
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(LayoutError::NonFinite(format!("position of {v}")));
            }
        }
        let positions = graph.vertices().iter().map(|v| (v.clone(), positions[v])).collect();
        Ok(FloatDrawing { graph, positions })
    }

    pub fn from_exact(d: &Drawing) -> Self {
        let positions = d
            .positions()
            .iter()
            .map(|(v, p)| {
                let (x, y) = p.to_f64();
                (v.clone(), [x, y])
            })
            .collect();
        FloatDrawing { graph: d.graph().clone(), positions }
    }

    /// Exact drawing with the same coordinates (every finite `f64` is a
    /// rational number).
    pub fn to_exact(&self) -> Option<Drawing> {
        let positions = self
            .positions
            .iter()
            .map(|(v, p)| Some((v.clone(), Point::new(Rational::from_f64(p[0])?, Rational::from_f64(p[1])?))))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Drawing::new(self.graph.clone(), positions).ok()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn position(&self, v: &VertexId) -> [f64; 2] {
        self.positions[v]
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, [f64; 2]> {
        &self.positions
    }

    pub(crate) fn problem(&self) -> (Problem, Vec<[f64; 2]>) {
        problem_of(&self.graph, |v| self.positions[v])
    }

    pub(crate) fn with_coords(&self, x: &[[f64; 2]]) -> FloatDrawing {
        let positions = self.graph.vertices().iter().cloned().zip(x.iter().copied()).collect();
        FloatDrawing { graph: self.graph.clone(), positions }
    }
}

fn problem_of(g: &Graph, pos: impl Fn(&VertexId) -> [f64; 2]) -> (Problem, Vec<[f64; 2]>) {
    let index: BTreeMap<&VertexId, usize> = g.vertices().iter().enumerate().map(|(i, v)| (v, i)).collect();
    let edges = g.edges().map(|e| (index[e.u()], index[e.v()])).collect();
    let x = g.vertices().iter().map(pos).collect();
    (Problem::new(g.vertex_count(), edges), x)
}

pub fn energy(d: &FloatDrawing, cfg: &LayoutConfig) -> Result<f64, LayoutError> {
    let (p, x) = d.problem();
    energy::energy_of(&p, &x, &cfg.objective())
}

/// Gradient as a map vertex → `[∂E/∂x, ∂E/∂y]`.
pub fn gradient(d: &FloatDrawing, cfg: &LayoutConfig) -> Result<BTreeMap<VertexId, [f64; 2]>, LayoutError> {
    let (p, x) = d.problem();
    let g = energy::gradient_of(&p, &x, &cfg.objective())?;
    Ok(d.graph.vertices().iter().cloned().zip(g).collect())
}

/// Smallest crossing angle in degrees, `None` without crossings.
pub fn min_crossing_angle(d: &FloatDrawing) -> Option<f64> {
    let (p, x) = d.problem();
    min_angle(&p, &x)
}

fn min_angle(p: &Problem, x: &[[f64; 2]]) -> Option<f64> {
    energy::crossing_pairs(p, x).into_iter().map(|(i, j)| energy::crossing_angle(p, x, i, j)).reduce(f64::min)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestartSummary {
    pub restart: usize,
    pub energy: f64,
    pub min_angle_degrees: Option<f64>,
    pub crossings: usize,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptReport {
    pub energy: f64,
    pub min_angle_degrees: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Mirror-class code of the embedding when the result is near-RAC.
    pub embedding_class: Option<String>,
    pub best_restart: usize,
    pub restarts: Vec<RestartSummary>,
}

pub(crate) struct Run {
    pub(crate) x: Vec<[f64; 2]>,
    pub(crate) energy: f64,
    iterations: usize,
    converged: bool,
    /// Energies of accepted iterates.
    trace: Vec<f64>,
}

/// Gradient descent with Armijo backtracking. Only decreasing steps are
/// accepted.
fn descend(p: &Problem, mut x: Vec<[f64; 2]>, cfg: &LayoutConfig, iterations: usize, record: bool) -> Result<Run, LayoutError> {
    let mut e = energy::energy_of(p, &x, cfg)?;
    let mut t = cfg.step_size;
    let mut trace = if record { vec![e] } else { Vec::new() };
    let mut converged = false;
    let mut used = 0;
    while used < iterations {
        let g = energy::gradient_of(p, &x, cfg)?;
        let gn2: f64 = g.iter().map(|v| v[0] * v[0] + v[1] * v[1]).sum();
        if gn2.sqrt() < 1e-12 {
            converged = true;
            break;
        }
        used += 1;
        let mut accepted = false;
        while t > 1e-18 {
            let y: Vec<[f64; 2]> = x.iter().zip(&g).map(|(a, d)| [a[0] - t * d[0], a[1] - t * d[1]]).collect();
            // a non-finite trial point is a rejected step
            let Ok(ey) = energy::energy_of(p, &y, cfg) else {
                t *= 0.5;
                continue;
            };
            if ey <= e - 1e-4 * t * gn2 {
                x = y;
                e = ey;
                t *= 2.0;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            converged = true;
            break;
        }
        if record {
            trace.push(e);
        }
    }
    Ok(Run { x, energy: e, iterations: used, converged, trace })
}

/// Uniform random layout in a square of side `rest_length · √n`.
pub fn random_layout(g: &Graph, cfg: &LayoutConfig, rng: &mut impl Rng) -> FloatDrawing {
    let side = cfg.rest_length * (g.vertex_count().max(1) as f64).sqrt();
    let positions = g.vertices().iter().map(|v| (v.clone(), [rng.gen::<f64>() * side, rng.gen::<f64>() * side])).collect();
    FloatDrawing { graph: g.clone(), positions }
}

/// Generator for restart `r`: independent ChaCha streams of one seed.
pub fn restart_rng(seed: u64, r: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    rng
}

/// Which phases a run goes through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Phases {
    /// Force-directed untangling, full descent, polish: for random starts.
    Full,
    /// Full descent and polish.
    Descent,
    /// Polish only: for starts already close to a good drawing.
    Polish,
}

/// Runs the selected phases, then the crossing snap. The full descent runs
/// without the vertex-edge barrier and with `crossing_bias`. The polish
/// drops the spring term and scales the vertex repulsion by
/// `polish_repulsion_scale`. The trace holds the accepted energies of the
/// first descent phase, under that phase's objective.
pub(crate) fn run_from(start: &FloatDrawing, cfg: &LayoutConfig, phases: Phases, record: bool) -> Result<Run, LayoutError> {
    let (p, mut x) = start.problem();
    if phases == Phases::Full && cfg.untangle_iterations > 0 {
        let forces = LayoutConfig { crossing_weight: 0.0, edge_repulsion_weight: 0.0, ..cfg.clone() };
        x = descend(&p, x, &forces, cfg.untangle_iterations, false)?.x;
    }
    let plain = cfg.objective();
    let polish = LayoutConfig {
        spring_weight: 0.0,
        repulsion_weight: cfg.repulsion_weight * cfg.polish_repulsion_scale,
        ..plain.clone()
    };
    let snap_tol = (cfg.angle_tolerance_deg / 100.0).to_radians().sin();
    let mut run = if phases == Phases::Polish {
        descend(&p, x, &polish, cfg.polish_iterations, record)?
    } else {
        // crossings may only slide off edges while the barrier is off
        let free = LayoutConfig { edge_repulsion_weight: 0.0, ..cfg.clone() };
        let first = descend(&p, x, &free, cfg.max_iterations, record)?;
        let second = descend(&p, first.x, &polish, cfg.polish_iterations, false)?;
        Run {
            x: second.x,
            energy: second.energy,
            iterations: first.iterations + second.iterations,
            converged: second.converged,
            trace: first.trace,
        }
    };
    run.x = energy::snap_crossings(&p, run.x, cfg.snap_sweeps, snap_tol);
    run.energy = energy::energy_of(&p, &run.x, &plain)?;
    Ok(run)
}

/// Descent from a given layout; also returns the accepted energies of the
/// first phase.
pub fn optimize_from(start: &FloatDrawing, cfg: &LayoutConfig) -> Result<(FloatDrawing, OptReport, Vec<f64>), LayoutError> {
    cfg.validate()?;
    let run = run_from(start, cfg, Phases::Descent, true)?;
    let (p, _) = start.problem();
    let d = start.with_coords(&run.x);
    let min = min_angle(&p, &run.x);
    let class = classify_near_rac(&d, cfg.angle_tolerance_deg).class_code();
    let summary = RestartSummary {
        restart: 0,
        energy: run.energy,
        min_angle_degrees: min,
        crossings: energy::crossing_pairs(&p, &run.x).len(),
        iterations: run.iterations,
        converged: run.converged,
    };
    let report = OptReport {
        energy: run.energy,
        min_angle_degrees: min,
        iterations: run.iterations,
        converged: run.converged,
        embedding_class: class,
        best_restart: 0,
        restarts: vec![summary],
    };
    Ok((d, report, run.trace))
}

/// Seeded multi-start descent. The best restart is the one reaching
/// near-RAC with the largest minimum angle, else the lowest energy.
pub fn optimize(g: &Graph, cfg: &LayoutConfig) -> Result<(FloatDrawing, OptReport), LayoutError> {
    cfg.validate()?;
    let mut best: Option<(usize, FloatDrawing, Run)> = None;
    let mut summaries = Vec::with_capacity(cfg.restarts);
    let threshold = cfg.near_rac_angle();
    let score = |r: &Run, p: &Problem| -> (bool, f64, f64) {
        let angle = min_angle(p, &r.x).unwrap_or(90.0);
        (angle >= threshold, angle, -r.energy)
    };
    for r in 0..cfg.restarts {
        let start = random_layout(g, cfg, &mut restart_rng(cfg.seed, r));
        let (p, _) = start.problem();
        let run = run_from(&start, cfg, Phases::Full, false)?;
        summaries.push(RestartSummary {
            restart: r,
            energy: run.energy,
            min_angle_degrees: min_angle(&p, &run.x),
            crossings: energy::crossing_pairs(&p, &run.x).len(),
            iterations: run.iterations,
            converged: run.converged,
        });
        let better = match &best {
            None => true,
            Some((_, _, b)) => {
                let (nr, na, ne) = score(&run, &p);
                let (br, ba, be) = score(b, &p);
                (nr, if nr { na } else { ne }) > (br, if br { ba } else { be })
            }
        };
        if better {
            best = Some((r, start, run));
        }
    }
    let (r, start, run) = best.expect("at least one restart");
    let d = start.with_coords(&run.x);
    let s = &summaries[r];
    let report = OptReport {
        energy: run.energy,
        min_angle_degrees: s.min_angle_degrees,
        iterations: run.iterations,
        converged: run.converged,
        embedding_class: classify_near_rac(&d, cfg.angle_tolerance_deg).class_code(),
        best_restart: r,
        restarts: summaries,
    };
    Ok((d, report))
}

#[derive(Clone, Debug, PartialEq)]
pub enum NearRac {
    NearRac { embedding: PlanarizedEmbedding, min_angle_degrees: Option<f64> },
    NotNearRac { reason: String },
}

impl NearRac {
    pub fn is_near_rac(&self) -> bool {
        matches!(self, NearRac::NearRac { .. })
    }

    pub fn embedding(&self) -> Option<&PlanarizedEmbedding> {
        match self {
            NearRac::NearRac { embedding, .. } => Some(embedding),
            NearRac::NotNearRac { .. } => None,
        }
    }

    pub fn class_code(&self) -> Option<String> {
        self.embedding().map(crate::embedding::class_code)
    }
}

/// Relative threshold of the tolerance predicates.
pub const TOLERANCE: f64 = 1e-9;

/// Near-RAC test: every vertex keeps a relative distance above
/// [`TOLERANCE`] from non-incident edges and from other vertices, and every
/// crossing angle is at least `90 - eps_deg`. Under those margins the float
/// and exact predicates agree, so the embedding is extracted exactly from
/// the coordinates read as rationals.
pub fn classify_near_rac(d: &FloatDrawing, eps_deg: f64) -> NearRac {
    let not = |reason: String| NearRac::NotNearRac { reason };
    let (p, x) = d.problem();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for q in &x {
        for k in 0..2 {
            lo[k] = lo[k].min(q[k]);
            hi[k] = hi[k].max(q[k]);
        }
    }
    let scale = ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt().max(f64::MIN_POSITIVE);
    let tol = TOLERANCE * scale;
    let ids = d.graph.vertices();
    for a in 0..p.n {
        for b in a + 1..p.n {
            let dd = ((x[a][0] - x[b][0]).powi(2) + (x[a][1] - x[b][1]).powi(2)).sqrt();
            if dd <= tol {
                return not(format!("vertices {} and {} coincide within tolerance", ids[a], ids[b]));
            }
        }
    }
    for &(a, b) in &p.edges {
        let len = ((x[b][0] - x[a][0]).powi(2) + (x[b][1] - x[a][1]).powi(2)).sqrt();
        for v in 0..p.n {
            if v == a || v == b {
                continue;
            }
            let dist = energy::orient(x[a], x[b], x[v]).abs() / len;
            let t = ((x[v][0] - x[a][0]) * (x[b][0] - x[a][0]) + (x[v][1] - x[a][1]) * (x[b][1] - x[a][1])) / (len * len);
            if dist <= tol && t > -TOLERANCE && t < 1.0 + TOLERANCE {
                return not(format!("vertex {} lies on edge {}-{} within tolerance", ids[v], ids[a], ids[b]));
            }
        }
    }
    let threshold = 90.0 - eps_deg;
    let pairs = energy::crossing_pairs(&p, &x);
    let mut min: Option<f64> = None;
    for &(i, j) in &pairs {
        let angle = energy::crossing_angle(&p, &x, i, j);
        if angle < threshold {
            let (a, b) = p.edges[i];
            let (c, e) = p.edges[j];
            return not(format!(
                "edges {}-{} and {}-{} cross at {angle:.4} degrees",
                ids[a], ids[b], ids[c], ids[e]
            ));
        }
        min = Some(min.map_or(angle, |m| m.min(angle)));
    }
    let Some(exact) = d.to_exact() else {
        return not("coordinates are not representable".into());
    };
    match extract_embedding(&exact) {
        Ok(embedding) if embedding.dummy_count() == pairs.len() => {
            NearRac::NearRac { embedding, min_angle_degrees: min }
        }
        Ok(_) => not("floating and exact crossing counts differ".into()),
        Err(e) => not(e.to_string()),
    }
}

#[cfg(test)]
mod tests;
