//! Objective `w_c Σ cos²θ + w_s Σ (‖e‖ − L)² + w_r Σ max(0, R − d)²` plus a
//! vertex-edge barrier `w_e Σ max(0, R − dist(v, e))²`, and its gradient.

use super::{LayoutConfig, LayoutError};

/// Index form of a drawing used inside the optimizer.
#[derive(Clone, Debug)]
pub struct Problem {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Pairs of edge indices that share no endpoint.
    pub(crate) candidates: Vec<(usize, usize)>,
    /// (vertex, edge index) pairs with the vertex not on the edge.
    pub(crate) vertex_edge: Vec<(usize, usize)>,
}

impl Problem {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut candidates = Vec::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a != c && a != d && b != c && b != d {
                    candidates.push((i, j));
                }
            }
        }
        let vertex_edge = (0..n)
            .flat_map(|v| edges.iter().enumerate().filter(move |(_, &(a, b))| v != a && v != b).map(move |(i, _)| (v, i)))
            .collect();
        Problem { n, edges, candidates, vertex_edge }
    }
}

pub(crate) fn orient(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
}

/// Proper crossing of segments `ab` and `cd` in floating point.
pub(crate) fn crosses(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

fn sub(p: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    [p[0] - q[0], p[1] - q[1]]
}

fn dot(p: [f64; 2], q: [f64; 2]) -> f64 {
    p[0] * q[0] + p[1] * q[1]
}

/// Crossing edge pairs of the current layout.
pub fn crossing_pairs(p: &Problem, x: &[[f64; 2]]) -> Vec<(usize, usize)> {
    p.candidates
        .iter()
        .copied()
        .filter(|&(i, j)| {
            let (a, b) = p.edges[i];
            let (c, d) = p.edges[j];
            crosses(x[a], x[b], x[c], x[d])
        })
        .collect()
}

/// Squared cosine of the angle between two edges.
pub fn cos2(p: &Problem, x: &[[f64; 2]], i: usize, j: usize) -> f64 {
    let (a, b) = p.edges[i];
    let (c, d) = p.edges[j];
    let (u, v) = (sub(x[b], x[a]), sub(x[d], x[c]));
    let k = dot(u, v);
    k * k / (dot(u, u) * dot(v, v))
}

/// Crossing angle in degrees, in (0, 90].
pub fn crossing_angle(p: &Problem, x: &[[f64; 2]], i: usize, j: usize) -> f64 {
    let (a, b) = p.edges[i];
    let (c, d) = p.edges[j];
    let (u, v) = (sub(x[b], x[a]), sub(x[d], x[c]));
    let cross = u[0] * v[1] - u[1] * v[0];
    crate::geometry::line_angle_degrees(cross, dot(u, v))
}

/// Gradients of `orient(p, q, r)` with respect to `p`, `q` and `r`.
fn orient_grad(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> [[f64; 2]; 3] {
    [[q[1] - r[1], r[0] - q[0]], [r[1] - p[1], p[0] - r[0]], [p[1] - q[1], q[0] - p[0]]]
}

/// Position `A / (A - B)` of a crossing along an edge, from the
/// orientations `A`, `B` of its endpoints against the other edge, with the
/// gradient over `[a, b, c, d]`.
fn crossing_parameter(big_a: f64, ga: [[f64; 2]; 4], big_b: f64, gb: [[f64; 2]; 4]) -> (f64, [[f64; 2]; 4]) {
    let den = big_a - big_b;
    let mut g = [[0.0; 2]; 4];
    for k in 0..4 {
        for c in 0..2 {
            g[k][c] = (big_a * gb[k][c] - big_b * ga[k][c]) / (den * den);
        }
    }
    (big_a / den, g)
}

/// `cos²θ + bias` of crossing edges `i = ab`, `j = cd`, optionally scaled by
/// `φ(s)φ(t)` with `φ(u) = 4u(1 - u)` at the crossing parameters, so the
/// term fades as the crossing slides off an edge. Returns the value and its
/// gradient over `[a, b, c, d]`.
pub(crate) fn crossing_term(p: &Problem, x: &[[f64; 2]], i: usize, j: usize, taper: bool, bias: f64) -> (f64, [[f64; 2]; 4]) {
    let (a, b) = p.edges[i];
    let (c, d) = p.edges[j];
    let (u, v) = (sub(x[b], x[a]), sub(x[d], x[c]));
    let (k, uu, vv) = (dot(u, v), dot(u, u), dot(v, v));
    let cos2 = k * k / (uu * vv);
    // d(k²/(uu·vv))/du = 2k/(uu·vv) · (v − (k/uu)·u), symmetric in v
    let sc = 2.0 * k / (uu * vv);
    let du = [sc * (v[0] - k / uu * u[0]), sc * (v[1] - k / uu * u[1])];
    let dv = [sc * (u[0] - k / vv * v[0]), sc * (u[1] - k / vv * v[1])];
    let gcos = [[-du[0], -du[1]], du, [-dv[0], -dv[1]], dv];
    if !taper {
        return (cos2 + bias, gcos);
    }
    let (pa, pb, pc, pd) = (x[a], x[b], x[c], x[d]);
    // s along ab from orient(c, d, ·); t along cd from orient(a, b, ·)
    let lift = |g: [[f64; 2]; 3], slots: [usize; 3]| {
        let mut out = [[0.0; 2]; 4];
        for (gk, &sl) in g.iter().zip(&slots) {
            out[sl] = *gk;
        }
        out
    };
    let (s, gs) = crossing_parameter(
        orient(pc, pd, pa),
        lift(orient_grad(pc, pd, pa), [2, 3, 0]),
        orient(pc, pd, pb),
        lift(orient_grad(pc, pd, pb), [2, 3, 1]),
    );
    let (t, gt) = crossing_parameter(
        orient(pa, pb, pc),
        lift(orient_grad(pa, pb, pc), [0, 1, 2]),
        orient(pa, pb, pd),
        lift(orient_grad(pa, pb, pd), [0, 1, 3]),
    );
    let (fs, ft) = (4.0 * s * (1.0 - s), 4.0 * t * (1.0 - t));
    let (dfs, dft) = (4.0 - 8.0 * s, 4.0 - 8.0 * t);
    let mut g = [[0.0; 2]; 4];
    for n in 0..4 {
        for m in 0..2 {
            g[n][m] = gcos[n][m] * fs * ft + (cos2 + bias) * (dfs * gs[n][m] * ft + fs * dft * gt[n][m]);
        }
    }
    ((cos2 + bias) * fs * ft, g)
}

pub struct Terms {
    pub crossing: f64,
    pub spring: f64,
    pub repulsion: f64,
    pub edge_repulsion: f64,
}

impl Terms {
    pub fn total(&self) -> f64 {
        self.crossing + self.spring + self.repulsion + self.edge_repulsion
    }
}

/// Closest point of segment `ab` to `v` as the parameter `t` in [0, 1],
/// with the offset `v - (a + t(b - a))`.
fn closest(a: [f64; 2], b: [f64; 2], v: [f64; 2]) -> (f64, [f64; 2]) {
    let e = sub(b, a);
    let len2 = dot(e, e);
    let t = if len2 > 0.0 { (dot(sub(v, a), e) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (t, [v[0] - a[0] - t * e[0], v[1] - a[1] - t * e[1]])
}

fn finite(v: f64, what: &str) -> Result<f64, LayoutError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(LayoutError::NonFinite(what.to_string()))
    }
}

pub fn terms(p: &Problem, x: &[[f64; 2]], cfg: &LayoutConfig) -> Result<Terms, LayoutError> {
    let mut crossing = 0.0;
    if cfg.crossing_weight > 0.0 {
        for (i, j) in crossing_pairs(p, x) {
            crossing += crossing_term(p, x, i, j, cfg.crossing_taper, cfg.crossing_bias).0;
        }
    }
    let mut spring = 0.0;
    if cfg.spring_weight > 0.0 {
        for &(a, b) in &p.edges {
            let l = dot(sub(x[b], x[a]), sub(x[b], x[a])).sqrt();
            spring += (l - cfg.rest_length).powi(2);
        }
    }
    let mut repulsion = 0.0;
    let r = cfg.repulsion_radius();
    if cfg.repulsion_weight > 0.0 {
        for a in 0..p.n {
            for b in a + 1..p.n {
                let d = dot(sub(x[b], x[a]), sub(x[b], x[a])).sqrt();
                if d < r {
                    repulsion += (r - d).powi(2);
                }
            }
        }
    }
    let mut edge_repulsion = 0.0;
    let re = cfg.edge_repulsion_radius;
    if cfg.edge_repulsion_weight > 0.0 {
        for &(v, i) in &p.vertex_edge {
            let (a, b) = p.edges[i];
            let w = closest(x[a], x[b], x[v]).1;
            let d = dot(w, w).sqrt();
            if d < re {
                edge_repulsion += (re - d).powi(2);
            }
        }
    }
    Ok(Terms {
        crossing: finite(cfg.crossing_weight * crossing, "crossing term")?,
        spring: finite(cfg.spring_weight * spring, "spring term")?,
        repulsion: finite(cfg.repulsion_weight * repulsion, "repulsion term")?,
        edge_repulsion: finite(cfg.edge_repulsion_weight * edge_repulsion, "edge repulsion term")?,
    })
}

pub fn energy_of(p: &Problem, x: &[[f64; 2]], cfg: &LayoutConfig) -> Result<f64, LayoutError> {
    terms(p, x, cfg).map(|t| t.total())
}

/// Analytic gradient, one `[d/dx, d/dy]` per vertex. The crossing set is
/// held fixed (the energy is smooth between crossing-set changes).
pub fn gradient_of(p: &Problem, x: &[[f64; 2]], cfg: &LayoutConfig) -> Result<Vec<[f64; 2]>, LayoutError> {
    let mut g = vec![[0.0; 2]; p.n];
    let mut add = |v: usize, s: f64, d: [f64; 2]| {
        g[v][0] += s * d[0];
        g[v][1] += s * d[1];
    };
    if cfg.crossing_weight > 0.0 {
        for (i, j) in crossing_pairs(p, x) {
            let (_, grad) = crossing_term(p, x, i, j, cfg.crossing_taper, cfg.crossing_bias);
            let (a, b) = p.edges[i];
            let (c, d) = p.edges[j];
            for (v, gv) in [a, b, c, d].into_iter().zip(grad) {
                add(v, cfg.crossing_weight, gv);
            }
        }
    }
    if cfg.spring_weight > 0.0 {
        for &(a, b) in &p.edges {
            let e = sub(x[b], x[a]);
            let l = dot(e, e).sqrt();
            let s = cfg.spring_weight * 2.0 * (l - cfg.rest_length) / l;
            add(b, s, e);
            add(a, -s, e);
        }
    }
    let r = cfg.repulsion_radius();
    if cfg.repulsion_weight > 0.0 {
        for a in 0..p.n {
            for b in a + 1..p.n {
                let e = sub(x[b], x[a]);
                let d = dot(e, e).sqrt();
                if d < r && d > 0.0 {
                    let s = -cfg.repulsion_weight * 2.0 * (r - d) / d;
                    add(b, s, e);
                    add(a, -s, e);
                }
            }
        }
    }
    let re = cfg.edge_repulsion_radius;
    if cfg.edge_repulsion_weight > 0.0 {
        for &(v, i) in &p.vertex_edge {
            let (a, b) = p.edges[i];
            let (t, w) = closest(x[a], x[b], x[v]);
            let d = dot(w, w).sqrt();
            if d < re && d > 0.0 {
                // t is optimal, so only the explicit dependence of w counts
                let s = -cfg.edge_repulsion_weight * 2.0 * (re - d) / d;
                add(v, s, w);
                add(a, -s * (1.0 - t), w);
                add(b, -s * t, w);
            }
        }
    }
    for v in &g {
        finite(v[0], "gradient")?;
        finite(v[1], "gradient")?;
    }
    Ok(g)
}

/// Cyclic projection onto perpendicularity: each crossing's signed cosine
/// is zeroed to first order in turn, moving only its four endpoints. A
/// sweep that changes the crossing set is undone and ends the pass. Stops
/// once every |cos θ| is at most `tol`.
pub(crate) fn snap_crossings(p: &Problem, mut x: Vec<[f64; 2]>, sweeps: usize, tol: f64) -> Vec<[f64; 2]> {
    let pairs = crossing_pairs(p, &x);
    for _ in 0..sweeps {
        let mut worst = 0.0f64;
        let mut y = x.clone();
        for &(i, j) in &pairs {
            let (a, b) = p.edges[i];
            let (c, d) = p.edges[j];
            let (u, v) = (sub(y[b], y[a]), sub(y[d], y[c]));
            let (k, uu, vv) = (dot(u, v), dot(u, u), dot(v, v));
            let norm = (uu * vv).sqrt();
            let r = k / norm;
            worst = worst.max(r.abs());
            let du = [(v[0] - k / uu * u[0]) / norm, (v[1] - k / uu * u[1]) / norm];
            let dv = [(u[0] - k / vv * v[0]) / norm, (u[1] - k / vv * v[1]) / norm];
            let g2 = 2.0 * (dot(du, du) + dot(dv, dv));
            if g2 == 0.0 || !g2.is_finite() {
                continue;
            }
            let s = r / g2;
            for (n, dir, sign) in [(a, du, -1.0), (b, du, 1.0), (c, dv, -1.0), (d, dv, 1.0)] {
                y[n][0] -= s * sign * dir[0];
                y[n][1] -= s * sign * dir[1];
            }
        }
        if worst <= tol || crossing_pairs(p, &y) != pairs || y.iter().any(|q| !q[0].is_finite() || !q[1].is_finite()) {
            break;
        }
        x = y;
    }
    x
}
