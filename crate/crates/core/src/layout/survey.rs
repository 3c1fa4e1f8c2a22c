//! Embedding survey: which mirror classes of planarized embeddings the
//! optimizer reaches from many starts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embedding::{class_code, PlanarizedEmbedding};
use rand::Rng;

use crate::graph::{Drawing, Graph};

use super::{classify_near_rac, Phases, random_layout, restart_rng, run_from, FloatDrawing, LayoutConfig, LayoutError, NearRac};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub run: usize,
    /// `random` for seeded random starts, `given` for supplied layouts.
    pub source: &'static str,
    pub near_rac: bool,
    pub min_angle_degrees: Option<f64>,
    pub class: Option<String>,
    /// Which member of the mirror pair the labeled drawing realizes.
    pub chirality: Option<Chirality>,
    pub reason: Option<String>,
}

/// Side of a labeled embedding within its mirror pair: `A` when its
/// labeled rotation code is not smaller than that of its reversal (the side
/// of seed fixture A). Mirror
/// images always land on opposite sides unless they coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chirality {
    A,
    B,
}

impl Chirality {
    pub fn of(e: &PlanarizedEmbedding) -> Chirality {
        if e.code() >= e.reversed().code() {
            Chirality::A
        } else {
            Chirality::B
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ClassTally {
    pub count: usize,
    pub sub_a: usize,
    pub sub_b: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyReport {
    pub runs: usize,
    pub near_rac: usize,
    /// Histogram keyed by mirror-class code.
    pub classes: BTreeMap<String, ClassTally>,
    pub records: Vec<RunRecord>,
}

impl SurveyReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    fn add(&mut self, run: usize, source: &'static str, outcome: NearRac) {
        let record = match outcome {
            NearRac::NearRac { embedding, min_angle_degrees } => {
                let class = class_code(&embedding);
                let chirality = Chirality::of(&embedding);
                let tally = self.classes.entry(class.clone()).or_default();
                tally.count += 1;
                match chirality {
                    Chirality::A => tally.sub_a += 1,
                    Chirality::B => tally.sub_b += 1,
                }
                self.near_rac += 1;
                RunRecord {
                    run,
                    source,
                    near_rac: true,
                    min_angle_degrees,
                    class: Some(class),
                    chirality: Some(chirality),
                    reason: None,
                }
            }
            NearRac::NotNearRac { reason } => RunRecord {
                run,
                source,
                near_rac: false,
                min_angle_degrees: None,
                class: None,
                chirality: None,
                reason: Some(reason),
            },
        };
        self.runs += 1;
        self.records.push(record);
    }
}

/// `cfg.restarts` single-start descents from seeded random layouts.
pub fn survey_embeddings(g: &Graph, cfg: &LayoutConfig) -> Result<SurveyReport, LayoutError> {
    survey_with_starts(g, cfg, &[])
}

/// As [`survey_embeddings`], plus one descent from each supplied layout
/// (polish phase only).
pub fn survey_with_starts(g: &Graph, cfg: &LayoutConfig, starts: &[FloatDrawing]) -> Result<SurveyReport, LayoutError> {
    cfg.validate()?;
    let mut report = SurveyReport { runs: 0, near_rac: 0, classes: BTreeMap::new(), records: Vec::new() };
    let run_one = |start: &FloatDrawing, phases: Phases| -> Result<NearRac, LayoutError> {
        let run = run_from(start, cfg, phases, false)?;
        Ok(classify_near_rac(&start.with_coords(&run.x), cfg.angle_tolerance_deg))
    };
    for r in 0..cfg.restarts {
        let start = random_layout(g, cfg, &mut restart_rng(cfg.seed, r));
        let outcome = run_one(&start, Phases::Full)?;
        report.add(r, "random", outcome);
    }
    for (i, start) in starts.iter().enumerate() {
        let outcome = run_one(start, Phases::Polish)?;
        report.add(cfg.restarts + i, "given", outcome);
    }
    Ok(report)
}

/// `count` copies of an exact drawing, rescaled to mean edge length equal
/// to the rest length, each vertex displaced uniformly by up to `jitter`
/// times the rest length. Copy `i` draws from restart stream `i` of `seed`.
pub fn perturbed_starts(d: &Drawing, cfg: &LayoutConfig, count: usize, jitter: f64, seed: u64) -> Vec<FloatDrawing> {
    let base = FloatDrawing::from_exact(d);
    let (p, pts) = base.problem();
    let total: f64 = p.edges.iter().map(|&(a, b)| ((pts[a][0] - pts[b][0]).powi(2) + (pts[a][1] - pts[b][1]).powi(2)).sqrt()).sum();
    let mean = if p.edges.is_empty() { 1.0 } else { total / p.edges.len() as f64 };
    let scale = cfg.rest_length / mean.max(f64::MIN_POSITIVE);
    let amp = jitter * cfg.rest_length;
    (0..count)
        .map(|i| {
            let mut rng = restart_rng(seed, i);
            let x: Vec<[f64; 2]> = pts
                .iter()
                .map(|q| [q[0] * scale + rng.gen_range(-amp..=amp), q[1] * scale + rng.gen_range(-amp..=amp)])
                .collect();
            base.with_coords(&x)
        })
        .collect()
}
