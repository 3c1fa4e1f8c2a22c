//! Construction of `G_phi` together with its integer grid drawing.
//!
//! Layout, bottom to top:
//!
//! * skeleton horizontal part: three horizontal edges at `y = 2, 4, 6`
//!   joined into a ladder, crossed by one long vertical edge (the locking
//!   pair) and by a foot edge of every tower;
//! * a connector line at `y = 10` joining the bottom connectors of all
//!   towers, and one at the top joining their top connectors;
//! * one band per clause: a free row holding the clause gadget's trapping
//!   edges, then one row per variable in which only that variable's tower
//!   shows its endpoint slot; every other tower passes the row as a
//!   corridor of two vertical edges;
//! * the skeleton vertical part (two vertical chains with one rung per
//!   clause) right of the right dummy tower, and the clause gadgets right
//!   of it.
//!
//! Every intended crossing pairs a horizontal with a vertical edge or lies
//! inside an antiprism unit, so all crossings are exactly perpendicular.

use std::collections::BTreeMap;

use crate::geometry::Point;
use crate::graph::{augmented_antiprism, Graph, VertexId, SEED_COORDS, SEED_HALF_SIDE};

use super::cnf::{Assignment, CnfFormula, Literal};
use super::labels::{ClauseLabels, GadgetLabels, SkeletonLabels, TowerLabels, VariableLabels};

/// Horizontal distance between consecutive tower axes.
pub const COLUMN_WIDTH: i64 = 14;
/// Horizontal offset of a variable endpoint from its tower axis.
pub const ENDPOINT_OFFSET: i64 = 5;
/// Height of the free row at the bottom of each clause band.
pub const FREE_ROW: i64 = 12;
/// Height of one variable row (an endpoint block plus the gap below it).
pub const VARIABLE_ROW: i64 = 14;
/// Gap between the bottom of a variable row and its block.
pub const BLOCK_GAP: i64 = 2;
/// Bottom of the first clause band.
pub const FIRST_BAND: i64 = 22;
/// Height of the bottom connector line.
pub const BOTTOM_CONNECTOR_Y: i64 = 10;
/// Center height of the dummy towers' base units.
pub const DUMMY_BASE_Y: i64 = 16;

/// Where each literal of a clause is routed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ClausePlacement {
    /// Literal slot (0..3) routed into the trap; its literal must be true.
    pub right: usize,
    pub top: usize,
    pub bottom: usize,
}

impl ClausePlacement {
    /// Right endpoint: the true literal with the lowest variable index.
    pub fn choose(literals: &[Literal; 3], a: &Assignment) -> Option<ClausePlacement> {
        let right = (0..3).filter(|&s| literals[s].eval(a)).min_by_key(|&s| literals[s].var)?;
        let mut rest = (0..3).filter(|&s| s != right);
        let top = rest.next().expect("three slots");
        let bottom = rest.next().expect("three slots");
        Some(ClausePlacement { right, top, bottom })
    }

    fn role(&self, slot: usize) -> Route {
        if slot == self.right {
            Route::Right
        } else if slot == self.top {
            Route::Top
        } else {
            Route::Bottom
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Route {
    Top,
    Bottom,
    Right,
}

pub(crate) struct Placement<'a> {
    pub assignment: &'a Assignment,
    pub clauses: &'a [ClausePlacement],
}

/// Grid geometry shared by all gadgets.
struct Frame {
    n: i64,
    m: i64,
}

impl Frame {
    fn axis(&self, column: i64) -> i64 {
        COLUMN_WIDTH * column
    }

    /// Bottom of band `j` (0-based).
    fn band(&self, j: i64) -> i64 {
        FIRST_BAND + j * (FREE_ROW + VARIABLE_ROW * self.n)
    }

    /// Center of the slot unit of variable `k` (1-based) in band `j`.
    fn slot_y(&self, k: i64, j: i64) -> i64 {
        self.band(j) + FREE_ROW + (k - 1) * VARIABLE_ROW + BLOCK_GAP + SEED_HALF_SIDE
    }

    fn cap_y(&self) -> i64 {
        self.band(self.m) + 1 + SEED_HALF_SIDE
    }

    fn top_connector_y(&self) -> i64 {
        self.cap_y() + SEED_HALF_SIDE + 2
    }

    fn rail_x(&self) -> i64 {
        self.axis(self.n + 1) + 8
    }

    fn chain_x(&self) -> i64 {
        self.rail_x() + 4
    }
}

pub(crate) struct Builder {
    graph: Graph,
    positions: BTreeMap<VertexId, Point>,
}

/// Vertex ids of one antiprism unit, indexed like the seed labels.
#[derive(Clone)]
struct Unit {
    c: VertexId,
    o: [VertexId; 4],
    i: [VertexId; 4],
}

impl Unit {
    fn all(&self) -> Vec<VertexId> {
        let mut v = vec![self.c.clone()];
        v.extend(self.o.iter().cloned());
        v.extend(self.i.iter().cloned());
        v
    }
}

fn seed_index(label: &str) -> usize {
    SEED_COORDS.iter().position(|(l, _, _)| *l == label).expect("seed label")
}

impl Builder {
    fn new() -> Self {
        Builder { graph: Graph::new(), positions: BTreeMap::new() }
    }

    fn vertex(&mut self, id: String, x: i64, y: i64) -> VertexId {
        let id = VertexId::from(id);
        self.graph.add_vertex(id.clone()).expect("gadget ids are unique");
        self.positions.insert(id.clone(), Point::from_ints(x, y));
        id
    }

    fn edge(&mut self, a: &VertexId, b: &VertexId) {
        if !self.graph.has_edge(a, b) {
            self.graph.add_edge(a.clone(), b.clone()).expect("gadget edges join existing vertices");
        }
    }

    /// An augmented square antiprism centered at `(x, y)`, mirrored when
    /// `flip`. With `below`, the unit is glued on top of that unit: its
    /// south pair is the north pair of `below` and the two inner vertices
    /// facing each other are joined.
    fn unit(&mut self, prefix: &str, x: i64, y: i64, flip: bool, below: Option<&Unit>) -> Unit {
        let sx = if flip { -1 } else { 1 };
        let template = augmented_antiprism(4).expect("k = 4").graph;
        let mut ids: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for v in template.vertices() {
            let shared = match (below, v.as_str()) {
                (Some(b), "o2") => Some(b.o[1].clone()),
                (Some(b), "o3") => Some(b.o[0].clone()),
                _ => None,
            };
            let id = match shared {
                Some(id) => id,
                None => {
                    let (_, dx, dy) = SEED_COORDS[seed_index(v.as_str())];
                    self.vertex(format!("{prefix}.{v}"), x + sx * dx, y + dy)
                }
            };
            ids.insert(v.clone(), id);
        }
        for e in template.edges() {
            let (a, b) = (ids[e.u()].clone(), ids[e.v()].clone());
            self.edge(&a, &b);
        }
        let get = |s: &str| ids[&VertexId::from(s)].clone();
        let unit = Unit {
            c: get("c"),
            o: [get("o0"), get("o1"), get("o2"), get("o3")],
            i: [get("i0"), get("i1"), get("i2"), get("i3")],
        };
        if let Some(b) = below {
            self.edge(&b.i[0], &unit.i[2]);
        }
        unit
    }

    /// Two vertical edges from the north pair of `lower` to the south pair
    /// of `upper`.
    fn corridor(&mut self, lower: &Unit, upper: &Unit) -> [VertexId; 4] {
        self.edge(&lower.o[0], &upper.o[3]);
        self.edge(&lower.o[1], &upper.o[2]);
        [lower.o[0].clone(), lower.o[1].clone(), upper.o[3].clone(), upper.o[2].clone()]
    }

    /// Connectors and foot of a tower whose lowest unit is `base` and top
    /// unit is `cap`.
    fn tower_ends(&mut self, name: &str, x: i64, f: &Frame, base: &Unit, cap: &Unit) -> (VertexId, VertexId, VertexId) {
        let ct = self.vertex(format!("{name}.ct"), x, f.top_connector_y());
        self.edge(&ct, &cap.o[0]);
        self.edge(&ct, &cap.o[1]);
        let cb = self.vertex(format!("{name}.cb"), x, BOTTOM_CONNECTOR_Y);
        self.edge(&cb, &base.i[2]);
        let foot = self.vertex(format!("{name}.foot"), x, 0);
        self.edge(&cb, &foot);
        (ct, cb, foot)
    }

    fn dummy_tower(&mut self, name: &str, column: i64, f: &Frame) -> TowerLabels {
        let x = f.axis(column);
        let base = self.unit(&format!("{name}.base"), x, DUMMY_BASE_Y, false, None);
        let cap = self.unit(&format!("{name}.cap"), x, f.cap_y(), false, None);
        self.corridor(&base, &cap);
        let (ct, cb, foot) = self.tower_ends(name, x, f, &base, &cap);
        let mut vertices = base.all();
        vertices.extend(cap.all());
        TowerLabels { vertices, top_connector: ct, bottom_connector: cb, foot }
    }

    fn variable_tower(&mut self, k: i64, f: &Frame, value: bool) -> VariableLabels {
        let name = format!("x{k}");
        let x = f.axis(k);
        let flip = !value;
        let s = if flip { -1 } else { 1 };
        let mut vertices = Vec::new();
        let mut positive = Vec::new();
        let mut negated = Vec::new();
        let mut corridors = Vec::new();
        let mut first: Option<Unit> = None;
        let mut last: Option<Unit> = None;
        for j in 0..f.m {
            let y = f.slot_y(k, j);
            let slot = self.unit(&format!("{name}.{}.slot", j + 1), x, y, flip, None);
            let lock = self.unit(&format!("{name}.{}.lock", j + 1), x, y + 2 * SEED_HALF_SIDE, flip, Some(&slot));
            let p = self.vertex(format!("{name}.{}.pos", j + 1), x + s * ENDPOINT_OFFSET, y);
            for v in [&slot.o[0], &slot.o[3], &slot.i[3]] {
                self.edge(&p, v);
            }
            let q = self.vertex(format!("{name}.{}.neg", j + 1), x - s * ENDPOINT_OFFSET, y);
            for v in [&slot.o[1], &slot.o[2], &slot.i[1]] {
                self.edge(&q, v);
            }
            if let Some(prev) = &last {
                corridors.push(self.corridor(prev, &slot));
            }
            vertices.extend(slot.all());
            vertices.extend(lock.all().into_iter().filter(|v| !slot.o.contains(v)));
            positive.push(p);
            negated.push(q);
            first.get_or_insert(slot);
            last = Some(lock);
        }
        let cap = self.unit(&format!("{name}.cap"), x, f.cap_y(), flip, None);
        vertices.extend(cap.all());
        // Without clauses the cap doubles as the base unit.
        let base = first.unwrap_or_else(|| cap.clone());
        if let Some(top) = &last {
            self.corridor(top, &cap);
        }
        let (ct, cb, foot) = self.tower_ends(&name, x, f, &base, &cap);
        VariableLabels {
            tower: TowerLabels { vertices, top_connector: ct, bottom_connector: cb, foot },
            positive,
            negated,
            corridors,
        }
    }
}

pub(crate) struct Built {
    pub graph: Graph,
    pub positions: BTreeMap<VertexId, Point>,
    pub labels: GadgetLabels,
}

/// Builds `G_phi` drawn according to `placement`. The graph does not depend
/// on the placement; only positions do.
pub(crate) fn build(formula: &CnfFormula, placement: &Placement<'_>) -> Built {
    let n = formula.num_variables() as i64;
    let m = formula.num_clauses() as i64;
    let f = Frame { n, m };
    let mut b = Builder::new();

    // Towers, left dummy first.
    let left = b.dummy_tower("dl", 0, &f);
    let variables: Vec<VariableLabels> =
        (1..=n).map(|k| b.variable_tower(k, &f, placement.assignment.value(k as usize))).collect();
    let right = b.dummy_tower("dr", n + 1, &f);
    let mut tops = vec![&left.top_connector];
    let mut bottoms = vec![&left.bottom_connector];
    for v in &variables {
        tops.push(&v.tower.top_connector);
        bottoms.push(&v.tower.bottom_connector);
    }
    tops.push(&right.top_connector);
    bottoms.push(&right.bottom_connector);
    for w in tops.windows(2) {
        b.edge(w[0], w[1]);
    }
    for w in bottoms.windows(2) {
        b.edge(w[0], w[1]);
    }

    // Skeleton.
    let (xr, xc) = (f.rail_x(), f.chain_x());
    let (x_left, x_right, x_long) = (f.axis(0) - 6, xc + 10, xc + 8);
    let yt = f.top_connector_y();
    let hl: Vec<VertexId> = (1..=3).map(|t| b.vertex(format!("sk.hl{t}"), x_left, 2 * t)).collect();
    let hr: Vec<VertexId> = (1..=3).map(|t| b.vertex(format!("sk.hr{t}"), x_right, 2 * t)).collect();
    let long_bottom = b.vertex("sk.long.b".into(), x_long, -1);
    let long_top = b.vertex("sk.long.t".into(), x_long, 8);
    let rail_bottom = b.vertex("sk.rail.b".into(), xr, 8);
    let chain_bottom = b.vertex("sk.chain.b".into(), xc, 8);
    let rail_top = b.vertex("sk.rail.t".into(), xr, yt);
    let chain_top = b.vertex("sk.chain.t".into(), xc, yt);
    for t in 0..3 {
        b.edge(&hl[t], &hr[t]);
    }
    for t in 0..2 {
        b.edge(&hl[t], &hl[t + 1]);
        b.edge(&hr[t], &hr[t + 1]);
    }
    b.edge(&long_bottom, &long_top);
    b.edge(&long_bottom, &hr[0]);
    b.edge(&long_top, &chain_bottom);
    b.edge(&rail_bottom, &chain_bottom);
    b.edge(&rail_top, &chain_top);
    b.edge(&right.top_connector, &rail_top);

    // Clause gadgets.
    let mut clauses = Vec::new();
    let mut prev_rail = rail_bottom.clone();
    let mut prev_chain = chain_bottom.clone();
    for (jj, lits) in formula.clauses().iter().enumerate() {
        let j = jj as i64;
        let name = format!("c{}", jj + 1);
        let y = f.band(j);
        let pl = placement.clauses[jj];
        let lo = b.vertex(format!("{name}.lo"), xc, y + 4);
        let hi = b.vertex(format!("{name}.hi"), xc, y + 8);
        let lo_end = b.vertex(format!("{name}.lo.end"), xc + 6, y + 4);
        let hi_end = b.vertex(format!("{name}.hi.end"), xc + 6, y + 8);
        let rail = b.vertex(format!("{name}.rail"), xr, y + 8);
        let hub = b.vertex(format!("{name}.hub"), xc + 2, y + 6);
        b.edge(&lo, &lo_end);
        b.edge(&hi, &hi_end);
        b.edge(&lo_end, &hi_end);
        b.edge(&prev_chain, &lo);
        b.edge(&lo, &hi);
        b.edge(&prev_rail, &rail);
        b.edge(&rail, &hi);
        let mut endpoints = Vec::new();
        let mut middles = Vec::new();
        for (s, lit) in lits.iter().enumerate() {
            let k = lit.var as i64;
            let var = &variables[lit.var - 1];
            let target = if lit.negated { &var.negated[jj] } else { &var.positive[jj] };
            let side = if lit.eval(placement.assignment) { 1 } else { -1 };
            let xe = f.axis(k) + side * ENDPOINT_OFFSET;
            let ((ex, ey), (mx, my)) = match pl.role(s) {
                Route::Top => ((xc + 2, y + 10), (xe, y + 10)),
                Route::Bottom => ((xc + 2, y + 2), (xe, y + 2)),
                Route::Right => ((xc + 4, y + 6), (xc + 4, f.slot_y(k, j))),
            };
            let e = b.vertex(format!("{name}.e{}", s + 1), ex, ey);
            let mid = b.vertex(format!("{name}.m{}", s + 1), mx, my);
            b.edge(&hub, &e);
            b.edge(&e, &mid);
            b.edge(&mid, target);
            endpoints.push(e);
            middles.push(mid);
        }
        prev_rail = rail.clone();
        prev_chain = hi.clone();
        clauses.push(ClauseLabels {
            literals: *lits,
            hub,
            endpoints: [endpoints[0].clone(), endpoints[1].clone(), endpoints[2].clone()],
            middles: [middles[0].clone(), middles[1].clone(), middles[2].clone()],
            trap: [lo, lo_end, hi, hi_end],
            rail,
        });
    }
    b.edge(&prev_rail, &rail_top);
    b.edge(&prev_chain, &chain_top);

    let mut horizontal = hl.clone();
    horizontal.extend(hr.iter().cloned());
    horizontal.extend([long_bottom.clone(), long_top.clone()]);
    let vertical = vec![rail_bottom, chain_bottom, rail_top, chain_top];
    let labels = GadgetLabels {
        variables,
        clauses,
        dummies: [left, right],
        skeleton: SkeletonLabels {
            horizontal,
            vertical,
            long_pair: [[long_bottom, long_top], [hl[2].clone(), hr[2].clone()]],
        },
    };
    Built { graph: b.graph, positions: b.positions, labels }
}
