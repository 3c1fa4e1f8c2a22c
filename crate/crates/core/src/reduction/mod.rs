//! The 3-SAT reduction: `G_phi`, its drawing from a satisfying assignment,
//! and the reading of an assignment off a drawing.

pub mod cnf;
pub mod gadgets;
pub mod labels;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{orientation, Orientation};
use crate::graph::{Drawing, LabeledGraph, VertexId};

pub use cnf::{all_satisfying, parse_dimacs, Assignment, CnfError, CnfFormula, Literal};
pub use gadgets::ClausePlacement;
pub use labels::{ClauseLabels, GadgetLabels, SkeletonLabels, TowerLabels, VariableLabels};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("assignment has {got} values, formula has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("assignment leaves clause {clause} unsatisfied")]
    UnsatAssignment { clause: usize },
    #[error("inconsistent geometry: {0}")]
    InconsistentGeometry(String),
}

/// `G_phi` with its gadget roles.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub graph: LabeledGraph,
    pub labels: GadgetLabels,
}

pub fn compile(f: &CnfFormula) -> Compiled {
    let all_true = Assignment::new(vec![true; f.num_variables()]);
    let placements: Vec<ClausePlacement> =
        f.clauses().iter().map(|_| ClausePlacement { right: 0, top: 1, bottom: 2 }).collect();
    let built = gadgets::build(f, &gadgets::Placement { assignment: &all_true, clauses: &placements });
    let mut graph = LabeledGraph::new(built.graph);
    built.labels.write_roles(&mut graph);
    Compiled { graph, labels: built.labels }
}

/// A synthesized drawing and the routing chosen for every clause.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub compiled: Compiled,
    pub drawing: Drawing,
    pub placements: Vec<ClausePlacement>,
}

#[derive(Serialize)]
struct PlacementRecord<'a> {
    clause: usize,
    right: &'a Literal,
    top: &'a Literal,
    bottom: &'a Literal,
}

impl Synthesis {
    /// The literal routed into each clause's trap, with the other two.
    pub fn placement_report(&self) -> serde_json::Value {
        let recs: Vec<PlacementRecord<'_>> = self
            .compiled
            .labels
            .clauses
            .iter()
            .zip(&self.placements)
            .enumerate()
            .map(|(j, (c, p))| PlacementRecord {
                clause: j + 1,
                right: &c.literals[p.right],
                top: &c.literals[p.top],
                bottom: &c.literals[p.bottom],
            })
            .collect();
        serde_json::to_value(recs).expect("plain data")
    }
}

pub fn synthesize(f: &CnfFormula, a: &Assignment) -> Result<Synthesis, ReductionError> {
    if a.len() != f.num_variables() {
        return Err(ReductionError::LengthMismatch { expected: f.num_variables(), got: a.len() });
    }
    let placements = f
        .clauses()
        .iter()
        .enumerate()
        .map(|(j, c)| ClausePlacement::choose(c, a).ok_or(ReductionError::UnsatAssignment { clause: j + 1 }))
        .collect::<Result<Vec<_>, _>>()?;
    let built = gadgets::build(f, &gadgets::Placement { assignment: a, clauses: &placements });
    let drawing = Drawing::new(built.graph.clone(), built.positions).expect("grid positions are distinct");
    let mut graph = LabeledGraph::new(built.graph);
    built.labels.write_roles(&mut graph);
    Ok(Synthesis { compiled: Compiled { graph, labels: built.labels }, drawing, placements })
}

pub fn synthesize_drawing(f: &CnfFormula, a: &Assignment) -> Result<Drawing, ReductionError> {
    synthesize(f, a).map(|s| s.drawing)
}

fn side(d: &Drawing, from: &VertexId, to: &VertexId, p: &VertexId) -> Orientation {
    orientation(d.position(from), d.position(to), d.position(p))
}

/// Reads variable `i` as true when its negated endpoints lie left of the
/// tower axis (bottom connector towards top connector). "Left" is taken in
/// the frame where the skeleton's vertical part lies to the right of every
/// tower, so a reflected drawing reads the same as the original.
pub fn extract_assignment(d: &Drawing, labels: &GadgetLabels) -> Result<Assignment, ReductionError> {
    let reference = labels
        .skeleton
        .vertical
        .first()
        .ok_or_else(|| ReductionError::InconsistentGeometry("skeleton has no vertical part".into()))?;
    let mut values = Vec::with_capacity(labels.num_variables());
    for (i, v) in labels.variables.iter().enumerate() {
        let (lo, hi) = (&v.tower.bottom_connector, &v.tower.top_connector);
        let right = match side(d, lo, hi, reference) {
            Orientation::Collinear => {
                return Err(ReductionError::InconsistentGeometry(format!(
                    "skeleton vertical part lies on the axis of variable {}",
                    i + 1
                )))
            }
            o => o,
        };
        let mut left_count = 0;
        let mut right_count = 0;
        for q in &v.negated {
            match side(d, lo, hi, q) {
                Orientation::Collinear => {
                    return Err(ReductionError::InconsistentGeometry(format!(
                        "negated endpoint {q} lies on the axis of variable {}",
                        i + 1
                    )))
                }
                o if o == right => right_count += 1,
                _ => left_count += 1,
            }
        }
        if left_count > 0 && right_count > 0 {
            return Err(ReductionError::InconsistentGeometry(format!(
                "negated endpoints of variable {} lie on both sides of its axis",
                i + 1
            )));
        }
        values.push(left_count > 0 || v.negated.is_empty());
    }
    Ok(Assignment::new(values))
}
