//! JSON file formats and SVG rendering.
//!
//! * Graph: `{"vertices": [..], "edges": [[u, v], ..], "roles": {..}}`,
//!   roles optional.
//! * Drawing: `{"graph": <graph>, "positions": {"v": [x, y], ..}}` with
//!   coordinates as rational strings (`"1/3"`) or JSON numbers, both read
//!   exactly.
//! * Float drawing: same shape, coordinates as JSON numbers.
//! * Labels: `{"roles": {..}}`.
//! * Layout config: the field names of [`LayoutConfig`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checker::check_rac;
use crate::geometry::{Point, Rational};
use crate::graph::{Drawing, Graph, LabeledGraph, RoleTarget, VertexId};
use crate::layout::{energy, FloatDrawing, LayoutConfig};

/// Input that does not match its schema, located by a JSON path.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError { path: path.into(), message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error(transparent)]
    Schema(#[from] SchemaError),
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

/// Pretty JSON with a trailing newline; key order is fixed by the types.
pub fn to_pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("in-memory JSON");
    s.push('\n');
    s
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_string() } else { format!("$.{path}") };
        SchemaError::at(path, e.into_inner().to_string())
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    roles: BTreeMap<String, RoleTarget>,
}

impl GraphFile {
    fn of(g: &Graph, roles: &BTreeMap<String, RoleTarget>) -> Self {
        GraphFile {
            vertices: g.vertices().iter().map(|v| v.to_string()).collect(),
            edges: g.edges().map(|e| [e.u().to_string(), e.v().to_string()]).collect(),
            roles: roles.clone(),
        }
    }

    fn build(self, at: &str) -> Result<LabeledGraph, SchemaError> {
        let mut g = Graph::new();
        for (i, v) in self.vertices.into_iter().enumerate() {
            g.add_vertex(v).map_err(|e| SchemaError::at(format!("{at}.vertices[{i}]"), e.to_string()))?;
        }
        for (i, [a, b]) in self.edges.into_iter().enumerate() {
            for (k, v) in [&a, &b].into_iter().enumerate() {
                if !g.contains(&VertexId::new(v.as_str())) {
                    return Err(SchemaError::at(format!("{at}.edges[{i}][{k}]"), format!("unknown vertex {v:?}")));
                }
            }
            g.add_edge(a, b).map_err(|e| SchemaError::at(format!("{at}.edges[{i}]"), e.to_string()))?;
        }
        with_roles(g, self.roles, &format!("{at}.roles"))
    }
}

fn with_roles(g: Graph, roles: BTreeMap<String, RoleTarget>, at: &str) -> Result<LabeledGraph, SchemaError> {
    for (name, target) in &roles {
        for v in target.vertices() {
            if !g.contains(v) {
                return Err(SchemaError::at(format!("{at}.{name}"), format!("unknown vertex {v}")));
            }
        }
    }
    let lg = LabeledGraph { graph: g, roles };
    lg.validate().map_err(|e| SchemaError::at(at, e.to_string()))?;
    Ok(lg)
}

pub fn graph_to_json(g: &LabeledGraph) -> String {
    to_pretty(&GraphFile::of(&g.graph, &g.roles))
}

pub fn graph_from_json(text: &str) -> Result<LabeledGraph, SchemaError> {
    parse::<GraphFile>(text)?.build("$")
}

/// A coordinate as written in a drawing file.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Text(String),
    Number(serde_json::Number),
}

impl Coord {
    fn exact(&self) -> Result<Rational, String> {
        match self {
            Coord::Text(s) => s.parse().map_err(|e: crate::geometry::GeometryError| e.to_string()),
            Coord::Number(n) => match n.as_i64() {
                Some(i) => Ok(Rational::from_integer(i)),
                None => n.as_f64().and_then(Rational::from_f64).ok_or_else(|| format!("{n} is not a finite number")),
            },
        }
    }

    fn float(&self) -> Result<f64, String> {
        let v = match self {
            Coord::Text(_) => self.exact()?.to_f64(),
            Coord::Number(n) => n.as_f64().ok_or_else(|| format!("{n} is not a number"))?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err("coordinate is not finite".into())
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingFile {
    graph: GraphFile,
    positions: BTreeMap<String, [Coord; 2]>,
}

/// A drawing together with the role labels of its graph.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDrawing {
    pub drawing: Drawing,
    pub roles: BTreeMap<String, RoleTarget>,
}

impl LabeledDrawing {
    pub fn labeled_graph(&self) -> LabeledGraph {
        LabeledGraph { graph: self.drawing.graph().clone(), roles: self.roles.clone() }
    }
}

pub fn drawing_to_json(d: &Drawing, roles: &BTreeMap<String, RoleTarget>) -> String {
    let positions = d
        .positions()
        .iter()
        .map(|(v, p)| (v.to_string(), [Coord::Text(p.x.to_string()), Coord::Text(p.y.to_string())]))
        .collect();
    to_pretty(&DrawingFile { graph: GraphFile::of(d.graph(), roles), positions })
}

fn positions_of<T>(
    g: &Graph,
    positions: BTreeMap<String, [Coord; 2]>,
    read: impl Fn(&Coord) -> Result<T, String>,
) -> Result<BTreeMap<VertexId, [T; 2]>, SchemaError> {
    let mut out = BTreeMap::new();
    for (v, [x, y]) in positions {
        let id = VertexId::new(v.as_str());
        if !g.contains(&id) {
            return Err(SchemaError::at(format!("$.positions.{v}"), "not a vertex of the graph"));
        }
        let x = read(&x).map_err(|m| SchemaError::at(format!("$.positions.{v}[0]"), m))?;
        let y = read(&y).map_err(|m| SchemaError::at(format!("$.positions.{v}[1]"), m))?;
        out.insert(id, [x, y]);
    }
    if let Some(v) = g.vertices().iter().find(|v| !out.contains_key(*v)) {
        return Err(SchemaError::at("$.positions", format!("no position for vertex {v}")));
    }
    Ok(out)
}

pub fn drawing_from_json(text: &str) -> Result<LabeledDrawing, SchemaError> {
    let file: DrawingFile = parse(text)?;
    let lg = file.graph.build("$.graph")?;
    let positions = positions_of(&lg.graph, file.positions, Coord::exact)?
        .into_iter()
        .map(|(v, [x, y])| (v, Point::new(x, y)))
        .collect();
    let drawing = Drawing::new(lg.graph, positions).map_err(|e| SchemaError::at("$.positions", e.to_string()))?;
    Ok(LabeledDrawing { drawing, roles: lg.roles })
}

pub fn float_drawing_to_json(d: &FloatDrawing, roles: &BTreeMap<String, RoleTarget>) -> String {
    let positions = d
        .positions()
        .iter()
        .map(|(v, p)| {
            let num = |f: f64| Coord::Number(serde_json::Number::from_f64(f).expect("finite coordinate"));
            (v.to_string(), [num(p[0]), num(p[1])])
        })
        .collect();
    to_pretty(&DrawingFile { graph: GraphFile::of(d.graph(), roles), positions })
}

pub fn float_drawing_from_json(text: &str) -> Result<(FloatDrawing, BTreeMap<String, RoleTarget>), SchemaError> {
    let file: DrawingFile = parse(text)?;
    let lg = file.graph.build("$.graph")?;
    let positions = positions_of(&lg.graph, file.positions, Coord::float)?;
    let d = FloatDrawing::new(lg.graph, positions).map_err(|e| SchemaError::at("$.positions", e.to_string()))?;
    Ok((d, lg.roles))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelsFile {
    roles: BTreeMap<String, RoleTarget>,
}

pub fn labels_to_json(roles: &BTreeMap<String, RoleTarget>) -> String {
    to_pretty(&LabelsFile { roles: roles.clone() })
}

/// Attaches the roles of a labels file to `g`.
pub fn labels_from_json(text: &str, g: &Graph) -> Result<LabeledGraph, SchemaError> {
    let file: LabelsFile = parse(text)?;
    with_roles(g.clone(), file.roles, "$.roles")
}

pub fn config_from_json(text: &str) -> Result<LayoutConfig, SchemaError> {
    let cfg: LayoutConfig = parse(text)?;
    cfg.validate().map_err(|e| SchemaError::at("$", e.to_string()))?;
    Ok(cfg)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Pixels per drawing unit; must be positive.
    pub scale: f64,
    pub show_crossings: bool,
    /// Roles whose vertices are colored, in palette order.
    pub highlight_roles: Vec<String>,
    pub edge_width: f64,
    pub glyph_width: f64,
    pub vertex_radius: f64,
    /// Float drawings: a crossing gets a glyph when its angle is at least
    /// `90 - tolerance` degrees.
    pub angle_tolerance_deg: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 40.0,
            show_crossings: true,
            highlight_roles: Vec::new(),
            edge_width: 1.5,
            glyph_width: 1.0,
            vertex_radius: 3.0,
            angle_tolerance_deg: 0.1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid SVG options: {0}")]
pub struct SvgError(String);

impl SvgOptions {
    pub fn validate(&self) -> Result<(), SvgError> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(SvgError("scale must be positive".into()));
        }
        let widths = [self.edge_width, self.glyph_width, self.vertex_radius, self.angle_tolerance_deg];
        if widths.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(SvgError("widths and tolerance must be finite and non-negative".into()));
        }
        Ok(())
    }
}

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Glyph side in pixels.
const GLYPH: f64 = 8.0;

struct Mark {
    at: [f64; 2],
    dirs: [[f64; 2]; 2],
    perpendicular: bool,
}

fn unit(from: [f64; 2], to: [f64; 2]) -> [f64; 2] {
    let (dx, dy) = (to[0] - from[0], to[1] - from[1]);
    let n = (dx * dx + dy * dy).sqrt();
    if n == 0.0 {
        [0.0, 0.0]
    } else {
        [dx / n, dy / n]
    }
}

/// Exact drawing to SVG. Coordinates become floats only here.
pub fn render_svg(d: &Drawing, roles: &BTreeMap<String, RoleTarget>, opts: &SvgOptions) -> Result<String, SvgError> {
    opts.validate()?;
    let f = FloatDrawing::from_exact(d);
    let marks = if opts.show_crossings {
        check_rac(d)
            .crossings
            .iter()
            .map(|c| {
                let (x, y) = c.point.to_f64();
                let at = [x, y];
                Mark {
                    at,
                    dirs: [unit(at, f.position(c.edge1.v())), unit(at, f.position(c.edge2.v()))],
                    perpendicular: c.perpendicular,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(render(&f, roles, opts, &marks))
}

/// Float drawing to SVG; glyphs follow `opts.angle_tolerance_deg`.
pub fn render_float_svg(d: &FloatDrawing, roles: &BTreeMap<String, RoleTarget>, opts: &SvgOptions) -> Result<String, SvgError> {
    opts.validate()?;
    let mut marks = Vec::new();
    if opts.show_crossings {
        let (p, x) = d.problem();
        for (i, j) in energy::crossing_pairs(&p, &x) {
            let (a, b) = p.edges[i];
            let (c, e) = p.edges[j];
            let s = energy::orient(x[c], x[e], x[a]) / (energy::orient(x[c], x[e], x[a]) - energy::orient(x[c], x[e], x[b]));
            let at = [x[a][0] + s * (x[b][0] - x[a][0]), x[a][1] + s * (x[b][1] - x[a][1])];
            let angle = energy::crossing_angle(&p, &x, i, j);
            marks.push(Mark {
                at,
                dirs: [unit(at, x[b]), unit(at, x[e])],
                perpendicular: angle >= 90.0 - opts.angle_tolerance_deg,
            });
        }
    }
    Ok(render(d, roles, opts, &marks))
}

fn render(d: &FloatDrawing, roles: &BTreeMap<String, RoleTarget>, opts: &SvgOptions, marks: &[Mark]) -> String {
    let pts: Vec<[f64; 2]> = d.positions().values().copied().collect();
    let (mut lo, mut hi) = ([0.0f64; 2], [0.0f64; 2]);
    if let Some(first) = pts.first() {
        lo = *first;
        hi = *first;
    }
    for q in &pts {
        for k in 0..2 {
            lo[k] = lo[k].min(q[k]);
            hi[k] = hi[k].max(q[k]);
        }
    }
    let margin = 20.0;
    let width = (hi[0] - lo[0]) * opts.scale + 2.0 * margin;
    let height = (hi[1] - lo[1]) * opts.scale + 2.0 * margin;
    // y grows downwards on screen
    let sx = |x: f64| (x - lo[0]) * opts.scale + margin;
    let sy = |y: f64| (hi[1] - y) * opts.scale + margin;

    let mut color: BTreeMap<&VertexId, &str> = BTreeMap::new();
    for (k, name) in opts.highlight_roles.iter().enumerate() {
        if let Some(target) = roles.get(name) {
            for v in target.vertices() {
                color.entry(v).or_insert(PALETTE[k % PALETTE.len()]);
            }
        }
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="{:.3}" stroke-linecap="round">"#, opts.edge_width);
    for e in d.graph().edges() {
        let (a, b) = (d.position(e.u()), d.position(e.v()));
        let _ = writeln!(
            s,
            r#"<line class="edge" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"><title>{}-{}</title></line>"#,
            sx(a[0]),
            sy(a[1]),
            sx(b[0]),
            sy(b[1]),
            escape(e.u().as_str()),
            escape(e.v().as_str())
        );
    }
    let _ = writeln!(s, "</g>");
    if !marks.is_empty() {
        let _ = writeln!(s, r#"<g fill="none" stroke-width="{:.3}">"#, opts.glyph_width);
        for m in marks {
            let (cx, cy) = (sx(m.at[0]), sy(m.at[1]));
            if m.perpendicular {
                // the corner of a small square spanned by the two edges
                let [u, v] = m.dirs;
                let p1 = (cx + GLYPH * u[0], cy - GLYPH * u[1]);
                let p2 = (p1.0 + GLYPH * v[0], p1.1 - GLYPH * v[1]);
                let p3 = (cx + GLYPH * v[0], cy - GLYPH * v[1]);
                let _ = writeln!(
                    s,
                    r##"<path class="right-angle" stroke="#1f77b4" d="M {:.3} {:.3} L {:.3} {:.3} L {:.3} {:.3}"/>"##,
                    p1.0, p1.1, p2.0, p2.1, p3.0, p3.1
                );
            } else {
                let _ = writeln!(
                    s,
                    r##"<circle class="oblique-crossing" stroke="#d62728" cx="{cx:.3}" cy="{cy:.3}" r="{GLYPH:.3}"/>"##
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "<g>");
    for (v, p) in d.positions() {
        let fill = color.get(v).copied().unwrap_or("black");
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="{fill}"><title>{}</title></circle>"#,
            sx(p[0]),
            sy(p[1]),
            opts.vertex_radius,
            escape(v.as_str())
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{augmented_antiprism, seed_drawing, EmbeddingClass};

    #[test]
    fn graph_round_trip_keeps_roles() {
        let g = augmented_antiprism(4).unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rational_coordinate_round_trips() {
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        let pos = BTreeMap::from([(VertexId::new("a"), Point::new(Rational::new(1, 3), Rational::new(-7, 2)))]);
        let d = Drawing::new(g, pos).unwrap();
        let text = drawing_to_json(&d, &BTreeMap::new());
        assert!(text.contains("\"1/3\""));
        assert_eq!(drawing_from_json(&text).unwrap().drawing, d);
    }

    #[test]
    fn unknown_vertex_is_a_schema_error() {
        let e = graph_from_json(r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["a", "z"]]}"#).unwrap_err();
        assert_eq!(e.path, "$.edges[1][1]");
    }

    #[test]
    fn structural_errors_carry_paths() {
        let e = graph_from_json(r#"{"vertices": ["a", 3], "edges": []}"#).unwrap_err();
        assert_eq!(e.path, "$.vertices[1]");
        let e = drawing_from_json(r#"{"graph": {"vertices": ["a"], "edges": []}, "positions": {"a": ["1/0", "0"]}}"#)
            .unwrap_err();
        assert_eq!(e.path, "$.positions.a[0]");
        let e = config_from_json(r#"{"restarts": 2, "stepsize": 1}"#).unwrap_err();
        assert!(e.message.contains("stepsize"), "{e}");
        assert!(config_from_json(r#"{"restarts": 0}"#).is_err());
    }

    #[test]
    fn numbers_are_read_exactly() {
        let text = r#"{"graph": {"vertices": ["a"], "edges": []}, "positions": {"a": [0.1, 2]}}"#;
        let d = drawing_from_json(text).unwrap().drawing;
        let p = d.position(&VertexId::new("a"));
        assert_eq!(p.x, Rational::from_f64(0.1).unwrap());
        assert_eq!(p.y, Rational::from_integer(2));
    }

    #[test]
    fn seed_svg_has_four_right_angle_glyphs() {
        let d = seed_drawing(EmbeddingClass::A);
        let svg = render_svg(&d, &BTreeMap::new(), &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("class=\"right-angle\"").count(), 4);
        assert_eq!(svg, render_svg(&d, &BTreeMap::new(), &SvgOptions::default()).unwrap());
        let f = FloatDrawing::from_exact(&d);
        let fsvg = render_float_svg(&f, &BTreeMap::new(), &SvgOptions::default()).unwrap();
        assert_eq!(fsvg.matches("class=\"right-angle\"").count(), 4);
    }

    #[test]
    fn planar_drawing_has_no_glyphs() {
        let mut g = Graph::new();
        for v in ["a", "b", "c"] {
            g.add_vertex(v).unwrap();
        }
        g.add_edge("a", "b").unwrap();
        g.add_edge("b", "c").unwrap();
        let pos = [("a", 0, 0), ("b", 1, 0), ("c", 1, 1)]
            .into_iter()
            .map(|(v, x, y)| (VertexId::new(v), Point::from_ints(x, y)))
            .collect();
        let svg = render_svg(&Drawing::new(g, pos).unwrap(), &BTreeMap::new(), &SvgOptions::default()).unwrap();
        assert!(!svg.contains("right-angle") && !svg.contains("oblique-crossing"));
    }

    #[test]
    fn highlighted_roles_are_colored() {
        let g = augmented_antiprism(4).unwrap();
        let opts = SvgOptions { highlight_roles: vec!["central".into()], ..SvgOptions::default() };
        let svg = render_svg(&seed_drawing(EmbeddingClass::A), &g.roles, &opts).unwrap();
        assert_eq!(svg.matches(PALETTE[0]).count(), 1);
        assert!(SvgOptions { scale: 0.0, ..SvgOptions::default() }.validate().is_err());
    }
}
