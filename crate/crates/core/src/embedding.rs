//! Rotation systems of planarized drawings.
//!
//! Every crossing becomes a degree-4 dummy node named by its edge pair. Each
//! node stores the counterclockwise cyclic order of its darts, rotated so the
//! smallest dart comes first; two rotation systems are then equal exactly
//! when their maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::checker::{enumerate_crossings, CheckError};
use crate::geometry::{Point, Rational};
use crate::graph::{Drawing, Edge, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("embeddings are over different vertex sets")]
    GraphMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Vertex(VertexId),
    Crossing(Edge, Edge),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "{v}"),
            Node::Crossing(a, b) => write!(f, "x({a}|{b})"),
        }
    }
}

/// A half-edge of the planarization: the original edge it belongs to and the
/// node it leads to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: Edge,
    pub to: Node,
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to, self.edge)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarizedEmbedding {
    pub rotation: BTreeMap<Node, Vec<Dart>>,
    pub dummy_meta: BTreeMap<Node, (Edge, Edge)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingRelation {
    Identical,
    Mirror,
    Distinct,
}

impl fmt::Display for EmbeddingRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingRelation::Identical => "identical",
            EmbeddingRelation::Mirror => "mirror",
            EmbeddingRelation::Distinct => "distinct",
        })
    }
}

fn normalize(mut cycle: Vec<Dart>) -> Vec<Dart> {
    if let Some((i, _)) = cycle.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
        cycle.rotate_left(i);
    }
    cycle
}

fn half(d: &(Rational, Rational)) -> u8 {
    let (x, y) = (d.0.signum(), d.1.signum());
    if y > 0 || (y == 0 && x > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting from the positive x axis.
fn angle_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = &(&a.0 * &b.1) - &(&a.1 * &b.0);
        0.cmp(&c.signum())
    })
}

fn sub(p: &Point, q: &Point) -> (Rational, Rational) {
    (&p.x - &q.x, &p.y - &q.y)
}

fn neg(d: &(Rational, Rational)) -> (Rational, Rational) {
    (-d.0.clone(), -d.1.clone())
}

impl PlanarizedEmbedding {
    pub fn node_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn dummy_count(&self) -> usize {
        self.dummy_meta.len()
    }

    /// The rotation system with every cyclic order reversed.
    pub fn reversed(&self) -> PlanarizedEmbedding {
        let rotation = self
            .rotation
            .iter()
            .map(|(n, c)| (n.clone(), normalize(c.iter().rev().cloned().collect())))
            .collect();
        PlanarizedEmbedding { rotation, dummy_meta: self.dummy_meta.clone() }
    }

    /// A deterministic textual encoding; equal codes mean identical
    /// rotation systems.
    pub fn code(&self) -> String {
        let mut s = String::new();
        for (n, c) in &self.rotation {
            s.push_str(&n.to_string());
            s.push(':');
            let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(';');
        }
        s
    }

    /// Code shared by an embedding and its mirror image.
    pub fn mirror_class_code(&self) -> String {
        let a = self.code();
        let b = self.reversed().code();
        a.min(b)
    }

    fn vertex_ids(&self) -> Vec<&VertexId> {
        self.rotation
            .keys()
            .filter_map(|n| match n {
                Node::Vertex(v) => Some(v),
                Node::Crossing(..) => None,
            })
            .collect()
    }
}

impl Serialize for PlanarizedEmbedding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Rot<'a>(&'a BTreeMap<Node, Vec<Dart>>);
        impl Serialize for Rot<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (n, c) in self.0 {
                    let darts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
                    m.serialize_entry(&n.to_string(), &darts)?;
                }
                m.end()
            }
        }
        struct Meta<'a>(&'a BTreeMap<Node, (Edge, Edge)>);
        impl Serialize for Meta<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (n, (a, b)) in self.0 {
                    m.serialize_entry(&n.to_string(), &[[a.u(), a.v()], [b.u(), b.v()]])?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("rotation", &Rot(&self.rotation))?;
        m.serialize_entry("dummy_meta", &Meta(&self.dummy_meta))?;
        m.end()
    }
}

/// Orientation-preserving isomorphism invariant of the planarized map,
/// ignoring vertex names: equal codes mean the embeddings agree up to a
/// relabeling by a graph automorphism. Each component is traversed
/// breadth-first from every possible starting dart and the smallest code
/// is kept.
pub fn canonical_code(e: &PlanarizedEmbedding) -> String {
    let nodes: Vec<&Node> = e.rotation.keys().collect();
    let index: BTreeMap<&Node, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let rot: Vec<Vec<usize>> = nodes.iter().map(|n| e.rotation[*n].iter().map(|d| index[&d.to]).collect()).collect();
    let dummy: Vec<bool> = nodes.iter().map(|n| matches!(n, Node::Crossing(..))).collect();

    let mut component = vec![usize::MAX; nodes.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..nodes.len() {
        if component[s] != usize::MAX {
            continue;
        }
        let c = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        component[s] = c;
        while let Some(x) = stack.pop() {
            members.push(x);
            for &y in &rot[x] {
                if component[y] == usize::MAX {
                    component[y] = c;
                    stack.push(y);
                }
            }
        }
        comps.push(members);
    }

    let mut codes: Vec<Vec<usize>> = comps
        .iter()
        .map(|members| {
            let mut best: Option<Vec<usize>> = None;
            for &u in members {
                for k in 0..rot[u].len().max(1) {
                    let code = traverse(&rot, &dummy, u, k, members.len());
                    if best.as_ref().map_or(true, |b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            best.expect("components are non-empty")
        })
        .collect();
    codes.sort();
    codes
        .iter()
        .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."))
        .collect::<Vec<_>>()
        .join("|")
}

fn traverse(rot: &[Vec<usize>], dummy: &[bool], start: usize, k: usize, size: usize) -> Vec<usize> {
    let mut number = std::collections::HashMap::with_capacity(size);
    number.insert(start, 0usize);
    let mut queue = std::collections::VecDeque::from([(start, k)]);
    let mut code = Vec::new();
    while let Some((x, first)) = queue.pop_front() {
        let deg = rot[x].len();
        code.push(usize::from(dummy[x]));
        code.push(deg);
        for t in 0..deg {
            let y = rot[x][(first + t) % deg];
            let next = number.len();
            let id = *number.entry(y).or_insert_with(|| {
                let back = rot[y].iter().position(|&z| z == x).expect("darts come in twins");
                queue.push_back((y, back));
                next
            });
            code.push(id);
        }
    }
    code
}

/// Canonical code shared by an embedding and its mirror image, up to
/// relabeling.
pub fn class_code(e: &PlanarizedEmbedding) -> String {
    canonical_code(e).min(canonical_code(&e.reversed()))
}

pub fn extract_embedding(d: &Drawing) -> Result<PlanarizedEmbedding, EmbeddingError> {
    let crossings = enumerate_crossings(d)?;
    let g = d.graph();

    // Crossings along each edge, ordered from u towards v.
    let mut along: BTreeMap<&Edge, Vec<(Rational, Node)>> = BTreeMap::new();
    let mut dummy_meta = BTreeMap::new();
    let mut rotation: BTreeMap<Node, Vec<Dart>> = BTreeMap::new();
    for c in &crossings {
        let node = Node::Crossing(c.edge1.clone(), c.edge2.clone());
        dummy_meta.insert(node.clone(), (c.edge1.clone(), c.edge2.clone()));
        for e in [&c.edge1, &c.edge2] {
            let u = d.position(e.u());
            let dir = sub(d.position(e.v()), u);
            let off = sub(&c.point, u);
            let t = &(&off.0 * &dir.0) + &(&off.1 * &dir.1);
            along.entry(e).or_default().push((t, node.clone()));
        }
    }

    // Each edge as a chain u, dummies..., v; collect (node, direction, dart).
    let mut darts: BTreeMap<Node, Vec<((Rational, Rational), Dart)>> = BTreeMap::new();
    for v in g.vertices() {
        darts.insert(Node::Vertex(v.clone()), Vec::new());
    }
    for e in g.edges() {
        let dir = sub(d.position(e.v()), d.position(e.u()));
        let mut chain = vec![Node::Vertex(e.u().clone())];
        if let Some(list) = along.get_mut(e) {
            list.sort_by(|a, b| a.0.cmp(&b.0));
            chain.extend(list.iter().map(|(_, n)| n.clone()));
        }
        chain.push(Node::Vertex(e.v().clone()));
        for w in chain.windows(2) {
            darts.entry(w[0].clone()).or_default().push((dir.clone(), Dart { edge: e.clone(), to: w[1].clone() }));
            darts.entry(w[1].clone()).or_default().push((neg(&dir), Dart { edge: e.clone(), to: w[0].clone() }));
        }
    }
    for (node, mut ds) in darts {
        ds.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        rotation.insert(node, normalize(ds.into_iter().map(|(_, d)| d).collect()));
    }
    Ok(PlanarizedEmbedding { rotation, dummy_meta })
}

pub fn embedding_relation(
    e1: &PlanarizedEmbedding,
    e2: &PlanarizedEmbedding,
) -> Result<EmbeddingRelation, EmbeddingError> {
    if e1.vertex_ids() != e2.vertex_ids() {
        return Err(EmbeddingError::GraphMismatch);
    }
    if e1.rotation == e2.rotation {
        Ok(EmbeddingRelation::Identical)
    } else if e1.reversed().rotation == e2.rotation {
        Ok(EmbeddingRelation::Mirror)
    } else {
        Ok(EmbeddingRelation::Distinct)
    }
}
