//! Named parts of `G_phi` and their encoding as graph roles.
//!
//! Role names use 1-based indices: `variable-endpoint(i,j)` is the endpoint
//! of variable `i` serving clause `j`, `clause-endpoint(j,s)` the clause
//! endpoint of the `s`-th literal of clause `j`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{GraphError, LabeledGraph, RoleTarget, VertexId};

use super::cnf::Literal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerLabels {
    pub vertices: Vec<VertexId>,
    pub top_connector: VertexId,
    pub bottom_connector: VertexId,
    pub foot: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableLabels {
    pub tower: TowerLabels,
    /// `x_{i,j}` for clauses `j = 1..m`.
    pub positive: Vec<VertexId>,
    /// Negated endpoints, same indexing.
    pub negated: Vec<VertexId>,
    /// Boundary vertices of the `m - 1` corridors: the two lower ends, then
    /// the two upper ends.
    pub corridors: Vec<[VertexId; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseLabels {
    pub literals: [Literal; 3],
    pub hub: VertexId,
    pub endpoints: [VertexId; 3],
    /// Middle vertex of the length-2 path from each clause endpoint to its
    /// variable endpoint.
    pub middles: [VertexId; 3],
    /// Trapping edges: `[lower start, lower end, upper start, upper end]`.
    pub trap: [VertexId; 4],
    pub rail: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonLabels {
    pub horizontal: Vec<VertexId>,
    pub vertical: Vec<VertexId>,
    /// The long vertical edge and the long horizontal edge it crosses.
    pub long_pair: [[VertexId; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetLabels {
    pub variables: Vec<VariableLabels>,
    pub clauses: Vec<ClauseLabels>,
    /// Left and right dummy towers.
    pub dummies: [TowerLabels; 2],
    pub skeleton: SkeletonLabels,
}

const SIDES: [&str; 2] = ["left", "right"];

fn one(v: &VertexId) -> RoleTarget {
    RoleTarget::One(v.clone())
}

fn many(vs: &[VertexId]) -> RoleTarget {
    RoleTarget::Many(vs.to_vec())
}

struct Reader<'a> {
    lg: &'a LabeledGraph,
}

impl Reader<'_> {
    fn missing(name: &str) -> GraphError {
        GraphError::InvalidAttachment(format!("missing gadget role {name}"))
    }

    fn one(&self, name: &str) -> Result<VertexId, GraphError> {
        self.lg.role(name).and_then(|t| t.one()).cloned().ok_or_else(|| Self::missing(name))
    }

    fn many(&self, name: &str) -> Result<Vec<VertexId>, GraphError> {
        self.lg
            .role(name)
            .map(|t| t.vertices().into_iter().cloned().collect())
            .ok_or_else(|| Self::missing(name))
    }

    fn four(&self, name: &str) -> Result<[VertexId; 4], GraphError> {
        let v = self.many(name)?;
        <[VertexId; 4]>::try_from(v)
            .map_err(|_| GraphError::InvalidAttachment(format!("role {name} must name four vertices")))
    }

    fn count(&self, prefix: &str) -> usize {
        self.lg.roles.keys().filter(|k| k.starts_with(prefix)).count()
    }

    fn tower(&self, suffix: &str, dummy: bool) -> Result<TowerLabels, GraphError> {
        let p = if dummy { "dummy-" } else { "" };
        Ok(TowerLabels {
            vertices: self.many(&format!("{p}tower({suffix})"))?,
            top_connector: self.one(&format!("{p}top-connector({suffix})"))?,
            bottom_connector: self.one(&format!("{p}bottom-connector({suffix})"))?,
            foot: self.one(&format!("{p}foot({suffix})"))?,
        })
    }
}

impl GadgetLabels {
    pub fn write_roles(&self, lg: &mut LabeledGraph) {
        let mut put = |name: String, t: RoleTarget| lg.set_role(name, t);
        let tower = |put: &mut dyn FnMut(String, RoleTarget), t: &TowerLabels, suffix: &str, dummy: bool| {
            let p = if dummy { "dummy-" } else { "" };
            put(format!("{p}tower({suffix})"), many(&t.vertices));
            put(format!("{p}top-connector({suffix})"), one(&t.top_connector));
            put(format!("{p}bottom-connector({suffix})"), one(&t.bottom_connector));
            put(format!("{p}foot({suffix})"), one(&t.foot));
        };
        for (i, v) in self.variables.iter().enumerate() {
            let i = i + 1;
            tower(&mut put, &v.tower, &i.to_string(), false);
            for (j, (p, q)) in v.positive.iter().zip(&v.negated).enumerate() {
                put(format!("variable-endpoint({i},{})", j + 1), one(p));
                put(format!("negated-endpoint({i},{})", j + 1), one(q));
            }
            for (j, c) in v.corridors.iter().enumerate() {
                put(format!("corridor({i},{})", j + 1), many(c));
            }
        }
        for (t, side) in self.dummies.iter().zip(SIDES) {
            tower(&mut put, t, side, true);
        }
        for (j, c) in self.clauses.iter().enumerate() {
            let j = j + 1;
            put(format!("clause-hub({j})"), one(&c.hub));
            for s in 0..3 {
                put(format!("clause-endpoint({j},{})", s + 1), one(&c.endpoints[s]));
                put(format!("clause-middle({j},{})", s + 1), one(&c.middles[s]));
            }
            put(format!("clause-trap({j})"), many(&c.trap));
            put(format!("clause-rail({j})"), one(&c.rail));
        }
        put("skeleton-horizontal".into(), many(&self.skeleton.horizontal));
        put("skeleton-vertical".into(), many(&self.skeleton.vertical));
        let lp = &self.skeleton.long_pair;
        put("skeleton-long-pair".into(), many(&[lp[0][0].clone(), lp[0][1].clone(), lp[1][0].clone(), lp[1][1].clone()]));
    }

    /// Reads the labels back from roles; clause literals are recovered from
    /// the length-2 paths.
    pub fn from_roles(lg: &LabeledGraph) -> Result<GadgetLabels, GraphError> {
        let r = Reader { lg };
        let n = r.count("tower(");
        let m = r.count("clause-hub(");
        let mut variables = Vec::with_capacity(n);
        for i in 1..=n {
            let tower = r.tower(&i.to_string(), false)?;
            let positive = (1..=m).map(|j| r.one(&format!("variable-endpoint({i},{j})"))).collect::<Result<_, _>>()?;
            let negated = (1..=m).map(|j| r.one(&format!("negated-endpoint({i},{j})"))).collect::<Result<_, _>>()?;
            let corridors = (1..m).map(|j| r.four(&format!("corridor({i},{j})"))).collect::<Result<_, _>>()?;
            variables.push(VariableLabels { tower, positive, negated, corridors });
        }
        let dummies = [r.tower("left", true)?, r.tower("right", true)?];
        let mut clauses = Vec::with_capacity(m);
        for j in 1..=m {
            let endpoints: [VertexId; 3] = three(|s| r.one(&format!("clause-endpoint({j},{s})")))?;
            let middles: [VertexId; 3] = three(|s| r.one(&format!("clause-middle({j},{s})")))?;
            let mut literals = [Literal::pos(1); 3];
            for (s, mid) in middles.iter().enumerate() {
                literals[s] = literal_of(lg, &variables, &endpoints[s], mid, j)?;
            }
            clauses.push(ClauseLabels {
                literals,
                hub: r.one(&format!("clause-hub({j})"))?,
                endpoints,
                middles,
                trap: r.four(&format!("clause-trap({j})"))?,
                rail: r.one(&format!("clause-rail({j})"))?,
            });
        }
        let lp = r.four("skeleton-long-pair")?;
        let [a, b, c, d] = lp;
        Ok(GadgetLabels {
            variables,
            clauses,
            dummies,
            skeleton: SkeletonLabels {
                horizontal: r.many("skeleton-horizontal")?,
                vertical: r.many("skeleton-vertical")?,
                long_pair: [[a, b], [c, d]],
            },
        })
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }
}

fn literal_of(
    lg: &LabeledGraph,
    variables: &[VariableLabels],
    endpoint: &VertexId,
    middle: &VertexId,
    j: usize,
) -> Result<Literal, GraphError> {
    let others: BTreeSet<&VertexId> = lg.graph.neighbors(middle).filter(|v| *v != endpoint).collect();
    for (i, v) in variables.iter().enumerate() {
        if others.contains(&v.positive[j - 1]) {
            return Ok(Literal::pos(i + 1));
        }
        if others.contains(&v.negated[j - 1]) {
            return Ok(Literal::neg(i + 1));
        }
    }
    Err(GraphError::InvalidAttachment(format!("clause path through {middle} reaches no variable endpoint")))
}

fn three<T>(f: impl Fn(usize) -> Result<T, GraphError>) -> Result<[T; 3], GraphError> {
    Ok([f(1)?, f(2)?, f(3)?])
}
