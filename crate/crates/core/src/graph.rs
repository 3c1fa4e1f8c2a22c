//! Simple undirected graphs, role labels, exact drawings, the augmented
//! antiprism family and the extension operator that glues two squares.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Point, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("invalid attachment: {0}")]
    InvalidAttachment(String),
    #[error("role {role} references unknown vertex {vertex}")]
    DanglingRole { role: String, vertex: VertexId },
    #[error("vertex {vertex} carries both roles {first} and {second}")]
    RoleConflict { vertex: VertexId, first: String, second: String },
    #[error("vertex {0} has no position")]
    MissingPosition(VertexId),
    #[error("position given for unknown vertex {0}")]
    ExtraPosition(VertexId),
    #[error("vertices {0} and {1} share a position")]
    CoincidentPositions(VertexId, VertexId),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Self {
        VertexId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> &VertexId {
        &self.0
    }

    pub fn v(&self) -> &VertexId {
        &self.1
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        &self.0 == v || &self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Simple undirected graph with a stable vertex order.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Graph {
    vertices: Vec<VertexId>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) -> Result<(), GraphError> {
        let v = v.into();
        if self.adjacency.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.adjacency.insert(v.clone(), BTreeSet::new());
        self.vertices.push(v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<(), GraphError> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for v in [&a, &b] {
            if !self.adjacency.contains_key(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }
        let e = Edge::new(a.clone(), b.clone());
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        self.adjacency.get_mut(&a).unwrap().insert(b.clone());
        self.adjacency.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.adjacency.contains_key(v)
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adjacency.get(a).is_some_and(|n| n.contains(b))
    }

    pub fn neighbors(&self, v: &VertexId) -> impl Iterator<Item = &VertexId> {
        self.adjacency.get(v).into_iter().flatten()
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.adjacency.get(v).map_or(0, BTreeSet::len)
    }

    /// All 3-cycles, each reported once with sorted vertices.
    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        let mut out = Vec::new();
        for e in &self.edges {
            let (a, b) = (e.u(), e.v());
            for c in self.adjacency[a].intersection(&self.adjacency[b]) {
                if c > b {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        out
    }
}

/// Target of a role label: a single vertex or an ordered list.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RoleTarget {
    One(VertexId),
    Many(Vec<VertexId>),
}

impl RoleTarget {
    pub fn vertices(&self) -> Vec<&VertexId> {
        match self {
            RoleTarget::One(v) => vec![v],
            RoleTarget::Many(vs) => vs.iter().collect(),
        }
    }

    pub fn one(&self) -> Option<&VertexId> {
        match self {
            RoleTarget::One(v) => Some(v),
            RoleTarget::Many(vs) if vs.len() == 1 => vs.first(),
            RoleTarget::Many(_) => None,
        }
    }
}

pub mod roles {
    pub const CENTRAL: &str = "central";
    pub const OUTER_QUAD: &str = "outer-quad";
    pub const INNER_QUAD: &str = "inner-quad";

    pub fn external_attach(side: &str) -> String {
        format!("external-attach:{side}")
    }

    pub fn internal_attach(side: &str) -> String {
        format!("internal-attach:{side}")
    }

    pub const SIDES: [&str; 4] = ["east", "west", "north", "south"];
}

/// Roles whose vertex sets must not overlap.
const DISJOINT_ROLES: [(&str, &str); 3] = [
    (roles::CENTRAL, roles::OUTER_QUAD),
    (roles::CENTRAL, roles::INNER_QUAD),
    (roles::OUTER_QUAD, roles::INNER_QUAD),
];

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub roles: BTreeMap<String, RoleTarget>,
}

impl LabeledGraph {
    pub fn new(graph: Graph) -> Self {
        LabeledGraph { graph, roles: BTreeMap::new() }
    }

    pub fn role(&self, name: &str) -> Option<&RoleTarget> {
        self.roles.get(name)
    }

    pub fn role_vertices(&self, name: &str) -> Vec<&VertexId> {
        self.roles.get(name).map(RoleTarget::vertices).unwrap_or_default()
    }

    pub fn set_role(&mut self, name: impl Into<String>, target: RoleTarget) {
        self.roles.insert(name.into(), target);
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for (name, target) in &self.roles {
            for v in target.vertices() {
                if !self.graph.contains(v) {
                    return Err(GraphError::DanglingRole { role: name.clone(), vertex: v.clone() });
                }
            }
        }
        for (first, second) in DISJOINT_ROLES {
            let a: HashSet<_> = self.role_vertices(first).into_iter().collect();
            if let Some(v) = self.role_vertices(second).into_iter().find(|v| a.contains(v)) {
                return Err(GraphError::RoleConflict {
                    vertex: v.clone(),
                    first: first.to_string(),
                    second: second.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Total map from vertices to exact points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Drawing {
    graph: Graph,
    positions: BTreeMap<VertexId, Point>,
}

impl Drawing {
    pub fn new(graph: Graph, positions: BTreeMap<VertexId, Point>) -> Result<Self, GraphError> {
        for v in graph.vertices() {
            if !positions.contains_key(v) {
                return Err(GraphError::MissingPosition(v.clone()));
            }
        }
        if let Some(v) = positions.keys().find(|v| !graph.contains(v)) {
            return Err(GraphError::ExtraPosition(v.clone()));
        }
        let mut seen: BTreeMap<&Point, &VertexId> = BTreeMap::new();
        for v in graph.vertices() {
            let p = &positions[v];
            if let Some(other) = seen.insert(p, v) {
                return Err(GraphError::CoincidentPositions(other.clone(), v.clone()));
            }
        }
        Ok(Drawing { graph, positions })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn position(&self, v: &VertexId) -> &Point {
        &self.positions[v]
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, Point> {
        &self.positions
    }

    /// Applies an exact point map to every vertex.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Drawing, GraphError> {
        let positions = self.positions.iter().map(|(v, p)| (v.clone(), f(p))).collect();
        Drawing::new(self.graph.clone(), positions)
    }

    /// Reflection across the vertical axis `x = 0`.
    pub fn mirrored(&self) -> Drawing {
        self.map_points(|p| Point::new(-&p.x, p.y.clone()))
            .expect("reflection is injective")
    }
}

fn vid(s: &str) -> VertexId {
    VertexId::new(s)
}

/// The augmented k-gon antiprism: two k-cycles `o*` and `i*`, each `i_j`
/// adjacent to `o_j` and `o_{j+1}`, and a center `c` adjacent to all `2k`
/// ring vertices. For `k = 4` the directional attach roles used by
/// [`extend`] are populated as well.
pub fn augmented_antiprism(k: usize) -> Result<LabeledGraph, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameter(format!("k must be at least 3, got {k}")));
    }
    let o = |j: usize| vid(&format!("o{}", j % k));
    let i = |j: usize| vid(&format!("i{}", j % k));
    let mut g = Graph::new();
    g.add_vertex("c")?;
    for j in 0..k {
        g.add_vertex(o(j))?;
    }
    for j in 0..k {
        g.add_vertex(i(j))?;
    }
    for j in 0..k {
        g.add_edge(o(j), o(j + 1))?;
        g.add_edge(i(j), i(j + 1))?;
        g.add_edge(i(j), o(j))?;
        g.add_edge(i(j), o(j + 1))?;
        g.add_edge("c", o(j))?;
        g.add_edge("c", i(j))?;
    }
    let mut lg = LabeledGraph::new(g);
    lg.set_role(roles::CENTRAL, RoleTarget::One(vid("c")));
    lg.set_role(roles::OUTER_QUAD, RoleTarget::Many((0..k).map(o).collect()));
    lg.set_role(roles::INNER_QUAD, RoleTarget::Many((0..k).map(i).collect()));
    if k == 4 {
        // Pairs are ordered so that matching positions are identified:
        // east/west run top to bottom, north/south run left to right.
        let attach = [
            ("east", ["o0", "o3"], "i3"),
            ("west", ["o1", "o2"], "i1"),
            ("north", ["o1", "o0"], "i0"),
            ("south", ["o2", "o3"], "i2"),
        ];
        for (side, pair, inner) in attach {
            lg.set_role(roles::external_attach(side), RoleTarget::Many(pair.map(vid).to_vec()));
            lg.set_role(roles::internal_attach(side), RoleTarget::One(vid(inner)));
        }
    }
    Ok(lg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtendMode {
    Horizontal,
    Vertical,
}

impl ExtendMode {
    /// (side of `g`, side of `h`) that get glued.
    fn sides(self) -> (&'static str, &'static str) {
        match self {
            ExtendMode::Horizontal => ("east", "west"),
            ExtendMode::Vertical => ("north", "south"),
        }
    }
}

struct Attachment {
    pair: [VertexId; 2],
    inner: VertexId,
}

fn attachment(g: &LabeledGraph, side: &str, which: &str) -> Result<Attachment, GraphError> {
    let ext = roles::external_attach(side);
    let int = roles::internal_attach(side);
    let missing = |r: &str| GraphError::InvalidAttachment(format!("{which} lacks role {r}"));
    let pair = match g.role(&ext).ok_or_else(|| missing(&ext))? {
        RoleTarget::Many(vs) if vs.len() == 2 => [vs[0].clone(), vs[1].clone()],
        _ => return Err(GraphError::InvalidAttachment(format!("{which}: {ext} must name two vertices"))),
    };
    let inner = g
        .role(&int)
        .ok_or_else(|| missing(&int))?
        .one()
        .cloned()
        .ok_or_else(|| GraphError::InvalidAttachment(format!("{which}: {int} must name one vertex")))?;
    if !g.graph.has_edge(&pair[0], &pair[1]) {
        return Err(GraphError::InvalidAttachment(format!(
            "{which}: external pair {}-{} is not adjacent",
            pair[0], pair[1]
        )));
    }
    if !pair.iter().all(|v| g.graph.has_edge(&inner, v)) {
        return Err(GraphError::InvalidAttachment(format!(
            "{which}: internal vertex {inner} is not adjacent to the external pair"
        )));
    }
    Ok(Attachment { pair, inner })
}

/// Suffix that makes every id of `h` fresh with respect to `g`.
fn fresh_suffix(g: &Graph, h: &Graph) -> String {
    (1..)
        .map(|t| format!("_{t}"))
        .find(|s| h.vertices().iter().all(|v| !g.contains(&vid(&format!("{v}{s}")))))
        .expect("unbounded search")
}

/// Result of gluing, with the renaming applied to `h`.
pub struct Extension {
    pub graph: LabeledGraph,
    /// Maps each vertex of `h` to its id in the result.
    pub rename: BTreeMap<VertexId, VertexId>,
}

/// `g ⊕ h`: identify the glued external pair of `h` with that of `g` (the
/// shared outer edge collapses to one) and join the two internal attach
/// vertices by a new edge.
pub fn extend(g: &LabeledGraph, h: &LabeledGraph, mode: ExtendMode) -> Result<LabeledGraph, GraphError> {
    extend_with_map(g, h, mode).map(|e| e.graph)
}

pub fn extend_with_map(g: &LabeledGraph, h: &LabeledGraph, mode: ExtendMode) -> Result<Extension, GraphError> {
    let (gs, hs) = mode.sides();
    let ga = attachment(g, gs, "left operand")?;
    let ha = attachment(h, hs, "right operand")?;

    let suffix = fresh_suffix(&g.graph, &h.graph);
    let mut rename: BTreeMap<VertexId, VertexId> = h
        .graph
        .vertices()
        .iter()
        .map(|v| (v.clone(), vid(&format!("{v}{suffix}"))))
        .collect();
    rename.insert(ha.pair[0].clone(), ga.pair[0].clone());
    rename.insert(ha.pair[1].clone(), ga.pair[1].clone());

    let mut out = g.graph.clone();
    for v in h.graph.vertices() {
        if !ha.pair.contains(v) {
            out.add_vertex(rename[v].clone())?;
        }
    }
    for e in h.graph.edges() {
        let (a, b) = (rename[e.u()].clone(), rename[e.v()].clone());
        if !out.has_edge(&a, &b) {
            out.add_edge(a, b)?;
        }
    }
    out.add_edge(ga.inner.clone(), rename[&ha.inner].clone())?;

    let mut lg = LabeledGraph::new(out);
    let map_target = |t: &RoleTarget| match t {
        RoleTarget::One(v) => RoleTarget::One(rename[v].clone()),
        RoleTarget::Many(vs) => RoleTarget::Many(vs.iter().map(|v| rename[v].clone()).collect()),
    };
    for (name, target) in &g.roles {
        lg.roles.insert(name.clone(), target.clone());
    }
    // Attach roles: the far side comes from h, the near side stays with g,
    // the two remaining sides follow the most recently added instance.
    for side in roles::SIDES {
        let from_g = side == opposite(gs);
        let source = if from_g { g } else { h };
        for name in [roles::external_attach(side), roles::internal_attach(side)] {
            match (source.role(&name), from_g) {
                (Some(t), true) => {
                    lg.roles.insert(name, t.clone());
                }
                (Some(t), false) => {
                    lg.roles.insert(name, map_target(t));
                }
                (None, _) => {
                    lg.roles.remove(&name);
                }
            }
        }
    }
    for name in [roles::CENTRAL, roles::OUTER_QUAD, roles::INNER_QUAD] {
        let mut merged: Vec<VertexId> = g.role_vertices(name).into_iter().cloned().collect();
        for v in h.role_vertices(name) {
            let r = rename[v].clone();
            if !merged.contains(&r) {
                merged.push(r);
            }
        }
        if !merged.is_empty() {
            lg.roles.insert(name.to_string(), RoleTarget::Many(merged));
        }
    }
    lg.validate()?;
    Ok(Extension { graph: lg, rename })
}

fn opposite(side: &str) -> &'static str {
    match side {
        "east" => "west",
        "west" => "east",
        "north" => "south",
        _ => "north",
    }
}

/// Extends two drawn instances: `h` is translated so its glued pair lands on
/// the glued pair of `g`.
pub fn extend_drawing(
    g: &LabeledGraph,
    dg: &Drawing,
    h: &LabeledGraph,
    dh: &Drawing,
    mode: ExtendMode,
) -> Result<(LabeledGraph, Drawing), GraphError> {
    let (gs, hs) = mode.sides();
    let ga = attachment(g, gs, "left operand")?;
    let ha = attachment(h, hs, "right operand")?;
    let (p0, q0) = (dg.position(&ga.pair[0]), dh.position(&ha.pair[0]));
    let dx = &p0.x - &q0.x;
    let dy = &p0.y - &q0.y;
    let shift = |p: &Point| Point::new(&p.x + &dx, &p.y + &dy);
    if &shift(dh.position(&ha.pair[1])) != dg.position(&ga.pair[1]) {
        return Err(GraphError::InvalidAttachment(
            "glued pairs are not translates of each other".into(),
        ));
    }
    let ext = extend_with_map(g, h, mode)?;
    let mut positions = dg.positions().clone();
    for (v, p) in dh.positions() {
        positions.entry(ext.rename[v].clone()).or_insert_with(|| shift(p));
    }
    let drawing = Drawing::new(ext.graph.graph.clone(), positions)?;
    Ok((ext.graph, drawing))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingClass {
    A,
    B,
}

/// Integer coordinates of the class-A drawing of the augmented square
/// antiprism: center at the origin, outer square at (±3, ±3), inner diamond
/// at (±2, 0), (0, ±2). Every crossing pairs a slope +1 with a slope -1
/// segment.
pub const SEED_COORDS: [(&str, i64, i64); 9] = [
    ("c", 0, 0),
    ("o0", 3, 3),
    ("o1", -3, 3),
    ("o2", -3, -3),
    ("o3", 3, -3),
    ("i0", 0, 2),
    ("i1", -2, 0),
    ("i2", 0, -2),
    ("i3", 2, 0),
];

/// Half the side length of the seed square.
pub const SEED_HALF_SIDE: i64 = 3;

/// Exact RAC drawing of `augmented_antiprism(4)`; class B is the mirror of A.
pub fn seed_drawing(class: EmbeddingClass) -> Drawing {
    seed_drawing_at(class, &Rational::zero(), &Rational::zero())
}

/// Seed drawing translated so the center sits at `(cx, cy)`.
pub fn seed_drawing_at(class: EmbeddingClass, cx: &Rational, cy: &Rational) -> Drawing {
    let g = augmented_antiprism(4).expect("k = 4 is valid").graph;
    let sx = match class {
        EmbeddingClass::A => 1,
        EmbeddingClass::B => -1,
    };
    let positions = SEED_COORDS
        .iter()
        .map(|&(v, x, y)| {
            (vid(v), Point::new(cx + &Rational::from_integer(sx * x), cy + &Rational::from_integer(y)))
        })
        .collect();
    Drawing::new(g, positions).expect("seed coordinates are distinct")
}

/// Planar-graph edge bound `3n - 6` exceeded (n ≥ 3).
pub fn exceeds_planar_bound(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 3 && g.edge_count() > 3 * n - 6
}
