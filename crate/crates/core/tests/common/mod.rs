#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use racforge::geometry::{Point, Rational};
use racforge::graph::{Drawing, Graph, VertexId};
use racforge::layout::{gradient, FloatDrawing, LayoutConfig};
use racforge::reduction::{CnfFormula, Literal};

pub fn vid(i: usize) -> VertexId {
    VertexId::new(format!("v{i}"))
}

/// Drawing from integer coordinates and name pairs.
pub fn int_drawing(vs: &[(&str, i64, i64)], es: &[(&str, &str)]) -> Drawing {
    let mut g = Graph::new();
    let mut pos = BTreeMap::new();
    for &(v, x, y) in vs {
        g.add_vertex(v).unwrap();
        pos.insert(VertexId::new(v), Point::from_ints(x, y));
    }
    for &(a, b) in es {
        g.add_edge(a, b).unwrap();
    }
    Drawing::new(g, pos).unwrap()
}

/// Random drawing on at most `max_n` vertices. Small grids make collinear
/// and perpendicular configurations common; some coordinates get small
/// denominators.
pub fn random_drawing(rng: &mut impl Rng, max_n: usize) -> Drawing {
    let n = rng.gen_range(2..=max_n);
    let grid: i64 = *[4i64, 6, 10, 1000].choose(rng).unwrap();
    let fractional = rng.gen_bool(0.3);
    let mut used = BTreeSet::new();
    let mut g = Graph::new();
    let mut pos = BTreeMap::new();
    for i in 0..n {
        let p = loop {
            let d = if fractional { rng.gen_range(1..=4) } else { 1 };
            let x = Rational::new(rng.gen_range(0..grid * d), d);
            let y = Rational::new(rng.gen_range(0..grid * d), d);
            if used.insert((x.clone(), y.clone())) {
                break Point::new(x, y);
            }
        };
        g.add_vertex(vid(i)).unwrap();
        pos.insert(vid(i), p);
    }
    let density = rng.gen_range(0.1..0.6);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(vid(i), vid(j)).unwrap();
            }
        }
    }
    Drawing::new(g, pos).unwrap()
}

fn big(r: &Rational) -> BigRational {
    r.as_big().clone()
}

fn cross(o: &[BigRational; 2], a: &[BigRational; 2], b: &[BigRational; 2]) -> BigRational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn on_closed_segment(p: &[BigRational; 2], a: &[BigRational; 2], b: &[BigRational; 2]) -> bool {
    cross(a, b, p).is_zero()
        && (&p[0] - &a[0]) * (&p[0] - &b[0]) <= BigRational::zero()
        && (&p[1] - &a[1]) * (&p[1] - &b[1]) <= BigRational::zero()
}

/// Brute-force view of a drawing: whether any vertex lies on a non-incident
/// edge, and every proper crossing as (edge pair, point, perpendicular).
pub struct Oracle {
    pub degenerate: bool,
    pub crossings: BTreeSet<(String, String, String, String, bool)>,
}

fn edge_key(a: &VertexId, b: &VertexId) -> String {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    format!("{a}-{b}")
}

pub fn crossing_key(e1: (&VertexId, &VertexId), e2: (&VertexId, &VertexId), p: &Point, perp: bool) -> (String, String, String, String, bool) {
    let (k1, k2) = (edge_key(e1.0, e1.1), edge_key(e2.0, e2.1));
    let (k1, k2) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
    (k1, k2, p.x.to_string(), p.y.to_string(), perp)
}

pub fn brute_force(d: &Drawing) -> Oracle {
    let pt = |v: &VertexId| {
        let p = d.position(v);
        [big(&p.x), big(&p.y)]
    };
    let edges: Vec<(VertexId, VertexId)> = d.graph().edges().map(|e| (e.u().clone(), e.v().clone())).collect();
    let mut degenerate = false;
    for (a, b) in &edges {
        for v in d.graph().vertices() {
            if v != a && v != b && on_closed_segment(&pt(v), &pt(a), &pt(b)) {
                degenerate = true;
            }
        }
    }
    let mut crossings = BTreeSet::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = &edges[i];
            let (c, e) = &edges[j];
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let (pa, pb, pc, pe) = (pt(a), pt(b), pt(c), pt(e));
            let (o1, o2) = (cross(&pa, &pb, &pc), cross(&pa, &pb, &pe));
            let (o3, o4) = (cross(&pc, &pe, &pa), cross(&pc, &pe, &pb));
            let opposite = |s: &BigRational, t: &BigRational| (s.is_positive() && t.is_negative()) || (s.is_negative() && t.is_positive());
            if opposite(&o1, &o2) && opposite(&o3, &o4) {
                let t = &o3 / (&o3 - &o4);
                let x = &pa[0] + &t * (&pb[0] - &pa[0]);
                let y = &pa[1] + &t * (&pb[1] - &pa[1]);
                let dot = (&pb[0] - &pa[0]) * (&pe[0] - &pc[0]) + (&pb[1] - &pa[1]) * (&pe[1] - &pc[1]);
                let p = Point::new(
                    Rational::from_big(x.numer().clone(), x.denom().clone()),
                    Rational::from_big(y.numer().clone(), y.denom().clone()),
                );
                crossings.insert(crossing_key((a, b), (c, e), &p, dot.is_zero()));
            }
        }
    }
    Oracle { degenerate, crossings }
}

/// Random 3-CNF over `n >= 3` variables; each clause uses three distinct
/// variables with random signs.
pub fn random_cnf(rng: &mut impl Rng, n: usize, m: usize) -> CnfFormula {
    let vars: Vec<usize> = (1..=n).collect();
    let clauses = (0..m)
        .map(|_| {
            vars.choose_multiple(rng, 3)
                .map(|&v| if rng.gen_bool(0.5) { Literal::pos(v) } else { Literal::neg(v) })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

/// The formula drawn in the figure: (x1 ∨ x2 ∨ x3) ∧ (¬x1 ∨ ¬x2 ∨ ¬x3) ∧
/// (¬x1 ∨ ¬x2 ∨ x3).
pub fn figure_formula() -> CnfFormula {
    racforge::reduction::parse_dimacs("p cnf 3 3\n1 2 3 0\n-1 -2 -3 0\n-1 -2 3 0\n").unwrap()
}

/// Three pairwise crossing segments at distinct points.
pub fn three_mutual_fixture() -> Drawing {
    int_drawing(
        &[("a0", -2, 1), ("a1", 2, 1), ("b0", -1, -2), ("b1", 1, 2), ("c0", 1, -2), ("c1", -1, 2)],
        &[("a0", "a1"), ("b0", "b1"), ("c0", "c1")],
    )
}

/// A triangle with both neighbours `b`, `b2` of an outside apex `a` inside.
pub fn triangle_fence_fixture() -> Drawing {
    int_drawing(
        &[("t0", 0, 0), ("t1", 10, 0), ("t2", 0, 10), ("b", 2, 2), ("b2", 3, 1), ("a", 20, 20)],
        &[("t0", "t1"), ("t1", "t2"), ("t2", "t0"), ("a", "b"), ("a", "b2")],
    )
}

/// Random float layout of a random graph on `n` vertices inside a box of
/// side `side`.
pub fn random_float_layout(rng: &mut impl Rng, n: usize, side: f64) -> FloatDrawing {
    let mut g = Graph::new();
    let mut pos = BTreeMap::new();
    for i in 0..n {
        g.add_vertex(vid(i)).unwrap();
        pos.insert(vid(i), [rng.gen_range(0.0..side), rng.gen_range(0.0..side)]);
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                g.add_edge(vid(i), vid(j)).unwrap();
            }
        }
    }
    FloatDrawing::new(g, pos).unwrap()
}

/// Distance of the nearest crossing parameter to a segment end, over edge
/// pairs that cross or nearly cross. The crossing set changes where it is
/// 0, so a small margin means a kink of the energy is close.
pub fn crossing_margin(d: &FloatDrawing) -> f64 {
    let edges: Vec<(VertexId, VertexId)> = d.graph().edges().map(|e| (e.u().clone(), e.v().clone())).collect();
    let mut margin = f64::INFINITY;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = &edges[i];
            let (c, e) = &edges[j];
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let (p, q, r, s) = (d.position(a), d.position(b), d.position(c), d.position(e));
            let u = [q[0] - p[0], q[1] - p[1]];
            let w = [s[0] - r[0], s[1] - r[1]];
            let den = u[0] * w[1] - u[1] * w[0];
            if den.abs() < 1e-12 {
                continue;
            }
            let t = ((r[0] - p[0]) * w[1] - (r[1] - p[1]) * w[0]) / den;
            let v = ((r[0] - p[0]) * u[1] - (r[1] - p[1]) * u[0]) / den;
            if (-0.5..=1.5).contains(&t) && (-0.5..=1.5).contains(&v) {
                let m = [t, 1.0 - t, v, 1.0 - v].iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
                margin = margin.min(m);
            }
        }
    }
    margin
}

/// Largest relative error between the analytic gradient and central
/// differences with step `h`; the denominator is floored at `floor`.
pub fn gradient_error(d: &FloatDrawing, cfg: &LayoutConfig, h: f64, floor: f64) -> f64 {
    let analytic = gradient(d, cfg).unwrap();
    let mut worst: f64 = 0.0;
    for v in d.graph().vertices() {
        for k in 0..2 {
            let shifted = |delta: f64| {
                let mut pos = d.positions().clone();
                pos.get_mut(v).unwrap()[k] += delta;
                let fd = FloatDrawing::new(d.graph().clone(), pos).unwrap();
                racforge::layout::energy(&fd, cfg).unwrap()
            };
            let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
            let a = analytic[v][k];
            let err = (a - fd).abs() / a.abs().max(fd.abs()).max(floor);
            worst = worst.max(err);
        }
    }
    worst
}
