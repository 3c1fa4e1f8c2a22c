//! Exact validity judgment for straight-line drawings.
//!
//! Coordinates are first rescaled to a common denominator. When the scaled
//! integers fit in 62 bits all predicates run on `i128` (exact, products
//! stay below 2^126); otherwise the same code runs on `BigInt`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{self, segment_relation, ExactScalar, Point, Segment, SegmentRelation};
use crate::graph::{Drawing, Edge, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CheckError {
    #[error("degenerate drawing: {}", describe(.0))]
    DegenerateDrawing(Vec<Degeneracy>),
}

fn describe(d: &[Degeneracy]) -> String {
    let shown: Vec<String> = d.iter().take(5).map(|x| format!("{x:?}")).collect();
    let more = if d.len() > 5 { format!(" (+{} more)", d.len() - 5) } else { String::new() };
    format!("{}{more}", shown.join("; "))
}

fn serialize_edge<S: Serializer>(e: &Edge, s: S) -> Result<S::Ok, S::Error> {
    [e.u(), e.v()].serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    #[serde(serialize_with = "serialize_edge")]
    pub edge1: Edge,
    #[serde(serialize_with = "serialize_edge")]
    pub edge2: Edge,
    pub point: Point,
    pub perpendicular: bool,
}

impl Crossing {
    pub fn involves(&self, e: &Edge) -> bool {
        &self.edge1 == e || &self.edge2 == e
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Degeneracy {
    /// A vertex lies in the relative interior of an edge not incident to it.
    VertexOnEdge {
        vertex: VertexId,
        #[serde(serialize_with = "serialize_edge")]
        edge: Edge,
    },
    CollinearOverlap {
        #[serde(serialize_with = "serialize_edge")]
        edge1: Edge,
        #[serde(serialize_with = "serialize_edge")]
        edge2: Edge,
    },
    /// Two edges without a common vertex share a point that is an endpoint
    /// of one of them.
    EndpointTouch {
        #[serde(serialize_with = "serialize_edge")]
        edge1: Edge,
        #[serde(serialize_with = "serialize_edge")]
        edge2: Edge,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FenceViolation {
    pub triangle: [VertexId; 3],
    pub apex: VertexId,
    pub inner: [VertexId; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BoundaryIncident {
    pub triangle: [VertexId; 3],
    pub vertex: VertexId,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FenceReport {
    pub violations: Vec<FenceViolation>,
    pub boundary_incident: Vec<BoundaryIncident>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RacReport {
    pub is_rac: bool,
    pub crossings: Vec<Crossing>,
    pub degeneracies: Vec<Degeneracy>,
    pub property1_violations: Vec<EdgeTriple>,
    pub property2_violations: Vec<FenceViolation>,
    pub boundary_incident: Vec<BoundaryIncident>,
    pub min_angle_degrees: Option<f64>,
}

/// Three pairwise crossing edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeTriple(pub [Edge; 3]);

impl Serialize for EdgeTriple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[&VertexId; 2]> = self.0.iter().map(|e| [e.u(), e.v()]).collect();
        v.serialize(s)
    }
}

impl RacReport {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

/// Drawing coordinates scaled to integers.
struct Frame<T> {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    pts: Vec<[T; 2]>,
    edges: Vec<(Edge, usize, usize)>,
}

fn scaled_integers(d: &Drawing) -> (Vec<VertexId>, Vec<[BigInt; 2]>) {
    let ids: Vec<VertexId> = d.graph().vertices().to_vec();
    let mut lcm = BigInt::one();
    for v in &ids {
        let p = d.position(v);
        lcm = lcm.lcm(p.x.denom()).lcm(p.y.denom());
    }
    let scale = |r: &geometry::Rational| r.numer() * (&lcm / r.denom());
    let pts = ids
        .iter()
        .map(|v| {
            let p = d.position(v);
            [scale(&p.x), scale(&p.y)]
        })
        .collect();
    (ids, pts)
}

fn build_frame<T>(g: &Graph, ids: Vec<VertexId>, pts: Vec<[T; 2]>) -> Frame<T> {
    let index: BTreeMap<VertexId, usize> = ids.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let edges = g.edges().map(|e| (e.clone(), index[e.u()], index[e.v()])).collect();
    Frame { ids, index, pts, edges }
}

const SMALL_LIMIT: i64 = 1 << 62;

/// Runs `f` on the cheapest exact number type that can hold the drawing.
fn with_frame<R>(d: &Drawing, f: impl FnOnce(FrameRef<'_>) -> R) -> R {
    let (ids, big) = scaled_integers(d);
    let small: Option<Vec<[i128; 2]>> = big
        .iter()
        .map(|[x, y]| {
            let x = x.to_i64().filter(|v| v.abs() < SMALL_LIMIT)?;
            let y = y.to_i64().filter(|v| v.abs() < SMALL_LIMIT)?;
            Some([x as i128, y as i128])
        })
        .collect();
    match small {
        Some(pts) => f(FrameRef::Small(&build_frame(d.graph(), ids, pts))),
        None => f(FrameRef::Big(&build_frame(d.graph(), ids, big))),
    }
}

enum FrameRef<'a> {
    Small(&'a Frame<i128>),
    Big(&'a Frame<BigInt>),
}

/// Raw result of the pairwise scan: crossing edge index pairs and
/// degeneracies.
struct Scan {
    crossings: Vec<(usize, usize)>,
    degeneracies: Vec<Degeneracy>,
}

fn bbox<T: ExactScalar>(a: &[T; 2], b: &[T; 2]) -> [[T; 2]; 2] {
    let lo = |i: usize| if a[i] <= b[i] { a[i].clone() } else { b[i].clone() };
    let hi = |i: usize| if a[i] >= b[i] { a[i].clone() } else { b[i].clone() };
    [[lo(0), lo(1)], [hi(0), hi(1)]]
}

fn scan<T: ExactScalar>(fr: &Frame<T>) -> Scan {
    let boxes: Vec<[[T; 2]; 2]> = fr.edges.iter().map(|(_, a, b)| bbox(&fr.pts[*a], &fr.pts[*b])).collect();
    let mut order: Vec<usize> = (0..fr.edges.len()).collect();
    order.sort_by(|&i, &j| boxes[i][0][0].cmp(&boxes[j][0][0]));

    let mut crossings = Vec::new();
    let mut degeneracies = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let (ei, ia, ib) = &fr.edges[i];
        for &j in &order[pos + 1..] {
            if boxes[j][0][0] > boxes[i][1][0] {
                break;
            }
            if boxes[j][0][1] > boxes[i][1][1] || boxes[j][1][1] < boxes[i][0][1] {
                continue;
            }
            let (ej, ja, jb) = &fr.edges[j];
            let rel = segment_relation(&fr.pts[*ia], &fr.pts[*ib], &fr.pts[*ja], &fr.pts[*jb]);
            let adjacent = ei.shares_endpoint(ej);
            let (e1, e2) = if ei < ej { (ei, ej) } else { (ej, ei) };
            match rel {
                SegmentRelation::Disjoint => {}
                SegmentRelation::Proper => {
                    let (a, b) = if ei < ej { (i, j) } else { (j, i) };
                    crossings.push((a, b));
                }
                SegmentRelation::Overlap => degeneracies.push(Degeneracy::CollinearOverlap {
                    edge1: e1.clone(),
                    edge2: e2.clone(),
                }),
                // Adjacent edges touch at their common vertex; a second touching
                // point would make them overlap.
                SegmentRelation::Touch if adjacent => {}
                SegmentRelation::Touch => degeneracies.push(Degeneracy::EndpointTouch {
                    edge1: e1.clone(),
                    edge2: e2.clone(),
                }),
            }
        }
    }

    // Vertices on foreign edges, isolated vertices included.
    let mut by_x: Vec<usize> = (0..fr.ids.len()).collect();
    by_x.sort_by(|&a, &b| fr.pts[a][0].cmp(&fr.pts[b][0]));
    let xs: Vec<&T> = by_x.iter().map(|&v| &fr.pts[v][0]).collect();
    for (k, (e, a, b)) in fr.edges.iter().enumerate() {
        let [lo, hi] = &boxes[k];
        let start = xs.partition_point(|x| *x < &lo[0]);
        for &v in &by_x[start..] {
            let p = &fr.pts[v];
            if p[0] > hi[0] {
                break;
            }
            if v == *a || v == *b || p[1] < lo[1] || p[1] > hi[1] {
                continue;
            }
            if collinear(&fr.pts[*a], &fr.pts[*b], p) {
                degeneracies.push(Degeneracy::VertexOnEdge { vertex: fr.ids[v].clone(), edge: e.clone() });
            }
        }
    }

    crossings.sort_by(|x, y| (&fr.edges[x.0].0, &fr.edges[x.1].0).cmp(&(&fr.edges[y.0].0, &fr.edges[y.1].0)));
    degeneracies.sort();
    degeneracies.dedup();
    Scan { crossings, degeneracies }
}

fn collinear<T: ExactScalar>(a: &[T; 2], b: &[T; 2], p: &[T; 2]) -> bool {
    let l = b[0].sub(&a[0]).mul(&p[1].sub(&a[1]));
    let r = b[1].sub(&a[1]).mul(&p[0].sub(&a[0]));
    l.sub(&r).sign() == 0
}

fn segment_of(d: &Drawing, e: &Edge) -> Segment {
    Segment::new(d.position(e.u()).clone(), d.position(e.v()).clone()).expect("positions are distinct")
}

struct Enumerated {
    crossings: Vec<Crossing>,
    degeneracies: Vec<Degeneracy>,
}

fn enumerate(d: &Drawing) -> Enumerated {
    let (pairs, degeneracies, edges) = with_frame(d, |fr| match fr {
        FrameRef::Small(f) => {
            let s = scan(f);
            (s.crossings, s.degeneracies, f.edges.iter().map(|e| e.0.clone()).collect::<Vec<_>>())
        }
        FrameRef::Big(f) => {
            let s = scan(f);
            (s.crossings, s.degeneracies, f.edges.iter().map(|e| e.0.clone()).collect::<Vec<_>>())
        }
    });
    let crossings = pairs
        .into_iter()
        .map(|(i, j)| {
            let (s1, s2) = (segment_of(d, &edges[i]), segment_of(d, &edges[j]));
            Crossing {
                edge1: edges[i].clone(),
                edge2: edges[j].clone(),
                point: geometry::line_intersection(&s1, &s2),
                perpendicular: geometry::is_perpendicular(&s1, &s2),
            }
        })
        .collect();
    Enumerated { crossings, degeneracies }
}

/// All proper crossings between non-adjacent edges, sorted by edge pair.
pub fn enumerate_crossings(d: &Drawing) -> Result<Vec<Crossing>, CheckError> {
    let en = enumerate(d);
    if en.degeneracies.is_empty() {
        Ok(en.crossings)
    } else {
        Err(CheckError::DegenerateDrawing(en.degeneracies))
    }
}

pub fn check_rac(d: &Drawing) -> RacReport {
    let en = enumerate(d);
    let min_angle_degrees = en
        .crossings
        .iter()
        .map(|c| geometry::angle_degrees(&segment_of(d, &c.edge1), &segment_of(d, &c.edge2)))
        .reduce(f64::min);
    let property1_violations = mutual_triples(&en.crossings);
    let fence = if en.degeneracies.is_empty() {
        fence_scan(d)
    } else {
        FenceReport { violations: Vec::new(), boundary_incident: Vec::new() }
    };
    let is_rac = en.degeneracies.is_empty() && en.crossings.iter().all(|c| c.perpendicular);
    RacReport {
        is_rac,
        crossings: en.crossings,
        degeneracies: en.degeneracies,
        property1_violations,
        property2_violations: fence.violations,
        boundary_incident: fence.boundary_incident,
        min_angle_degrees,
    }
}

fn mutual_triples(crossings: &[Crossing]) -> Vec<EdgeTriple> {
    let mut adj: BTreeMap<&Edge, BTreeSet<&Edge>> = BTreeMap::new();
    for c in crossings {
        adj.entry(&c.edge1).or_default().insert(&c.edge2);
        adj.entry(&c.edge2).or_default().insert(&c.edge1);
    }
    let mut out = Vec::new();
    for (a, na) in &adj {
        for b in na.range::<&Edge, _>((std::ops::Bound::Excluded(a), std::ops::Bound::Unbounded)) {
            for c in adj[b].range::<&Edge, _>((std::ops::Bound::Excluded(b), std::ops::Bound::Unbounded)) {
                if na.contains(c) {
                    out.push(EdgeTriple([(*a).clone(), (*b).clone(), (*c).clone()]));
                }
            }
        }
    }
    out
}

/// Triples of pairwise crossing edges (three mutually crossing edges cannot
/// occur in a RAC drawing).
pub fn diagnose_three_mutual(d: &Drawing) -> Result<Vec<EdgeTriple>, CheckError> {
    enumerate_crossings(d).map(|c| mutual_triples(&c))
}

/// Vertices outside a drawn triangle with two neighbours strictly inside it.
pub fn diagnose_triangle_fence(d: &Drawing) -> Result<FenceReport, CheckError> {
    let en = enumerate(d);
    if !en.degeneracies.is_empty() {
        return Err(CheckError::DegenerateDrawing(en.degeneracies));
    }
    Ok(fence_scan(d))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Inside,
    Boundary,
    Outside,
}

fn orient<T: ExactScalar>(p: &[T; 2], q: &[T; 2], r: &[T; 2]) -> i8 {
    let l = q[0].sub(&p[0]).mul(&r[1].sub(&p[1]));
    let rr = q[1].sub(&p[1]).mul(&r[0].sub(&p[0]));
    l.sub(&rr).sign()
}

fn side_of<T: ExactScalar>(tri: [&[T; 2]; 3], p: &[T; 2], ccw: i8) -> Side {
    let s = [orient(tri[0], tri[1], p), orient(tri[1], tri[2], p), orient(tri[2], tri[0], p)];
    if s.iter().any(|&x| x == -ccw) {
        Side::Outside
    } else if s.iter().any(|&x| x == 0) {
        Side::Boundary
    } else {
        Side::Inside
    }
}

fn fence_scan(d: &Drawing) -> FenceReport {
    with_frame(d, |fr| match fr {
        FrameRef::Small(f) => fence_generic(d.graph(), f),
        FrameRef::Big(f) => fence_generic(d.graph(), f),
    })
}

fn fence_generic<T: ExactScalar>(g: &Graph, fr: &Frame<T>) -> FenceReport {
    let mut by_x: Vec<usize> = (0..fr.ids.len()).collect();
    by_x.sort_by(|&a, &b| fr.pts[a][0].cmp(&fr.pts[b][0]));
    let xs: Vec<&T> = by_x.iter().map(|&v| &fr.pts[v][0]).collect();

    let mut violations = Vec::new();
    let mut boundary_incident = Vec::new();
    for tri in g.triangles() {
        let idx = tri.clone().map(|v| fr.index[&v]);
        let pts = idx.map(|i| &fr.pts[i]);
        let ccw = orient(pts[0], pts[1], pts[2]);
        if ccw == 0 {
            continue;
        }
        let lo_x = pts.iter().map(|p| &p[0]).min().unwrap();
        let hi_x = pts.iter().map(|p| &p[0]).max().unwrap();
        let lo_y = pts.iter().map(|p| &p[1]).min().unwrap();
        let hi_y = pts.iter().map(|p| &p[1]).max().unwrap();
        let start = xs.partition_point(|x| *x < lo_x);
        let mut inside: BTreeSet<&VertexId> = BTreeSet::new();
        for &v in &by_x[start..] {
            let p = &fr.pts[v];
            if &p[0] > hi_x {
                break;
            }
            if idx.contains(&v) || &p[1] < lo_y || &p[1] > hi_y {
                continue;
            }
            match side_of(pts, p, ccw) {
                Side::Inside => {
                    inside.insert(&fr.ids[v]);
                }
                Side::Boundary => boundary_incident.push(BoundaryIncident {
                    triangle: tri.clone(),
                    vertex: fr.ids[v].clone(),
                }),
                Side::Outside => {}
            }
        }
        if inside.len() < 2 {
            continue;
        }
        // Candidate apexes: neighbours of inside vertices.
        let mut apex_hits: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for b in &inside {
            for a in g.neighbors(b) {
                if !inside.contains(a) && !tri.contains(a) {
                    apex_hits.entry(a).or_default().push(b);
                }
            }
        }
        for (a, inner) in apex_hits {
            if inner.len() < 2 {
                continue;
            }
            let pa = &fr.pts[fr.index[a]];
            if side_of(pts, pa, ccw) != Side::Outside {
                continue;
            }
            let mut inner: Vec<VertexId> = inner.into_iter().cloned().collect();
            inner.sort();
            violations.push(FenceViolation {
                triangle: tri.clone(),
                apex: a.clone(),
                inner: [inner[0].clone(), inner[1].clone()],
            });
        }
    }
    violations.sort();
    boundary_incident.sort();
    boundary_incident.dedup();
    FenceReport { violations, boundary_incident }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVerdict {
    Within,
    Exceeds,
    NotApplicable,
}

/// Informational comparison against the `4n - 10` edge bound for straight-line
/// RAC drawings. The bound is necessary, not sufficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub verdict: BoundVerdict,
    pub bound_name: &'static str,
    pub edges: usize,
    pub bound: Option<usize>,
    pub tight: bool,
}

pub fn edge_bound_check(g: &Graph) -> EdgeBound {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n < 4 {
        return EdgeBound { verdict: BoundVerdict::NotApplicable, bound_name: "4n-10", edges: m, bound: None, tight: false };
    }
    let bound = 4 * n - 10;
    EdgeBound {
        verdict: if m <= bound { BoundVerdict::Within } else { BoundVerdict::Exceeds },
        bound_name: "4n-10",
        edges: m,
        bound: Some(bound),
        tight: m == bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{augmented_antiprism, seed_drawing, EmbeddingClass};
    use crate::geometry::Rational;

    fn drawing(vs: &[(&str, i64, i64)], es: &[(&str, &str)]) -> Drawing {
        let mut g = Graph::new();
        let mut pos = BTreeMap::new();
        for &(v, x, y) in vs {
            g.add_vertex(v).unwrap();
            pos.insert(VertexId::from(v), Point::from_ints(x, y));
        }
        for &(a, b) in es {
            g.add_edge(a, b).unwrap();
        }
        Drawing::new(g, pos).unwrap()
    }

    #[test]
    fn seed_has_four_perpendicular_crossings() {
        let r = check_rac(&seed_drawing(EmbeddingClass::A));
        assert!(r.is_rac);
        assert_eq!(r.crossings.len(), 4);
        assert!(r.crossings.iter().all(|c| c.perpendicular));
        assert_eq!(r.min_angle_degrees, Some(90.0));
        assert!(r.property1_violations.is_empty());
        assert!(r.property2_violations.is_empty());
    }

    #[test]
    fn perturbed_seed_is_not_rac() {
        let d = seed_drawing(EmbeddingClass::A);
        let mut pos = d.positions().clone();
        pos.insert("i3".into(), Point::new(Rational::from_integer(2), Rational::new(1, 7)));
        let d = Drawing::new(d.graph().clone(), pos).unwrap();
        let r = check_rac(&d);
        assert!(!r.is_rac);
        assert!(r.degeneracies.is_empty());
        assert!(r.crossings.iter().any(|c| !c.perpendicular));
    }

    #[test]
    fn square_cycle_has_no_crossings() {
        let d = drawing(
            &[("a", 0, 0), ("b", 1, 0), ("c", 1, 1), ("d", 0, 1)],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        );
        assert!(enumerate_crossings(&d).unwrap().is_empty());
        let r = check_rac(&d);
        assert!(r.is_rac);
        assert_eq!(r.min_angle_degrees, None);
    }

    #[test]
    fn overlap_is_degenerate() {
        let d = drawing(&[("a", 0, 0), ("b", 2, 0), ("c", 1, 0), ("d", 3, 0)], &[("a", "b"), ("c", "d")]);
        match enumerate_crossings(&d) {
            Err(CheckError::DegenerateDrawing(ds)) => {
                assert!(ds.iter().any(|x| matches!(x, Degeneracy::CollinearOverlap { .. })));
                assert!(ds.iter().any(|x| matches!(x, Degeneracy::VertexOnEdge { .. })));
            }
            other => panic!("expected degeneracy, got {other:?}"),
        }
        assert!(!check_rac(&d).is_rac);
    }

    #[test]
    fn t_junction_and_isolated_vertex_on_edge() {
        let d = drawing(&[("a", 0, 0), ("b", 2, 0), ("c", 1, 0), ("d", 1, 3)], &[("a", "b"), ("c", "d")]);
        let err = enumerate_crossings(&d).unwrap_err();
        let CheckError::DegenerateDrawing(ds) = err;
        assert!(ds.contains(&Degeneracy::EndpointTouch {
            edge1: Edge::new("a".into(), "b".into()),
            edge2: Edge::new("c".into(), "d".into())
        }));
        let d = drawing(&[("a", 0, 0), ("b", 2, 0), ("c", 1, 0)], &[("a", "b")]);
        let CheckError::DegenerateDrawing(ds) = enumerate_crossings(&d).unwrap_err();
        assert_eq!(ds, vec![Degeneracy::VertexOnEdge { vertex: "c".into(), edge: Edge::new("a".into(), "b".into()) }]);
    }

    #[test]
    fn adjacent_collinear_overlap_is_degenerate() {
        // b lies on a-c: edges a-b and a-c overlap along a-b
        let d = drawing(&[("a", 0, 0), ("b", 1, 0), ("c", 2, 0)], &[("a", "b"), ("a", "c")]);
        assert!(enumerate_crossings(&d).is_err());
        // opposite directions only share a
        let d = drawing(&[("a", 0, 0), ("b", 1, 0), ("c", -2, 0)], &[("a", "b"), ("a", "c")]);
        assert!(enumerate_crossings(&d).unwrap().is_empty());
    }

    #[test]
    fn three_mutual_star() {
        let d = drawing(
            &[("a0", -2, 0), ("a1", 2, 0), ("b0", -1, -2), ("b1", 1, 2), ("c0", 1, -2), ("c1", -1, 2)],
            &[("a0", "a1"), ("b0", "b1"), ("c0", "c1")],
        );
        // shift one segment so the three crossings are distinct points
        let mut pos = d.positions().clone();
        pos.insert("a0".into(), Point::from_ints(-2, 1));
        pos.insert("a1".into(), Point::from_ints(2, 1));
        let d = Drawing::new(d.graph().clone(), pos).unwrap();
        let t = diagnose_three_mutual(&d).unwrap();
        assert_eq!(t.len(), 1);
        assert!(diagnose_three_mutual(&seed_drawing(EmbeddingClass::A)).unwrap().is_empty());
    }

    #[test]
    fn triangle_fence_fixture() {
        let vs = [("t0", 0, 0), ("t1", 10, 0), ("t2", 0, 10), ("b", 2, 2), ("b2", 3, 1), ("a", 20, 20)];
        let es = [("t0", "t1"), ("t1", "t2"), ("t2", "t0"), ("a", "b"), ("a", "b2")];
        let r = diagnose_triangle_fence(&drawing(&vs, &es)).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].apex, VertexId::from("a"));
        let vs_out = [("t0", 0, 0), ("t1", 10, 0), ("t2", 0, 10), ("b", 2, 2), ("b2", 30, 1), ("a", 20, 20)];
        assert!(diagnose_triangle_fence(&drawing(&vs_out, &es)).unwrap().violations.is_empty());
        assert!(diagnose_triangle_fence(&seed_drawing(EmbeddingClass::A)).unwrap().violations.is_empty());
    }

    #[test]
    fn edge_bounds() {
        let g3 = augmented_antiprism(3).unwrap().graph;
        let b = edge_bound_check(&g3);
        assert_eq!((b.verdict, b.bound, b.tight), (BoundVerdict::Within, Some(18), true));
        let b = edge_bound_check(&augmented_antiprism(4).unwrap().graph);
        assert_eq!((b.verdict, b.bound, b.tight), (BoundVerdict::Within, Some(26), false));
        let mut k7 = Graph::new();
        for i in 0..7 {
            k7.add_vertex(format!("v{i}")).unwrap();
        }
        for i in 0..7 {
            for j in i + 1..7 {
                k7.add_edge(format!("v{i}"), format!("v{j}")).unwrap();
            }
        }
        let b = edge_bound_check(&k7);
        assert_eq!((b.verdict, b.edges, b.bound), (BoundVerdict::Exceeds, 21, Some(18)));
        assert_eq!(edge_bound_check(&Graph::new()).verdict, BoundVerdict::NotApplicable);
    }

    #[test]
    fn big_integer_path_agrees() {
        // Denominators large enough to push the scaled frame past 62 bits.
        let d = seed_drawing(EmbeddingClass::A);
        let big = Rational::from_big(BigInt::from(1), BigInt::from(3).pow(50));
        let d2 = d.map_points(|p| Point::new(&p.x * &big, &p.y * &big)).unwrap();
        let r = check_rac(&d2);
        assert!(r.is_rac);
        assert_eq!(r.crossings.len(), 4);
    }
}
