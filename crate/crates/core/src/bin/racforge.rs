//! Command-line front end. Exit codes: 0 success or valid, 1 domain
//! failure (not RAC, unsatisfied, inconsistent, no near-RAC run), 2 input
//! error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use racforge::checker::{check_rac, diagnose_three_mutual, diagnose_triangle_fence, edge_bound_check};
use racforge::graph::{augmented_antiprism, extend, extend_drawing, seed_drawing, EmbeddingClass, ExtendMode};
use racforge::io::{self, SvgOptions};
use racforge::layout::{optimize, perturbed_starts, survey_with_starts, FloatDrawing, LayoutConfig};
use racforge::reduction::{
    all_satisfying, compile, extract_assignment, parse_dimacs, synthesize, Assignment, CnfFormula, GadgetLabels,
    ReductionError,
};

#[derive(Parser)]
#[command(name = "racforge", version, about = "Exact RAC drawing checker, antiprism gadgets, 3-SAT reduction and layout search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Horizontal,
    Vertical,
}

#[derive(Subcommand)]
enum Command {
    /// Augmented k-gon antiprism as graph JSON, or a seed drawing (k = 4).
    GenAntiprism {
        #[arg(long)]
        k: usize,
        /// Emit the exact RAC seed drawing of this embedding class.
        #[arg(long, value_enum)]
        drawing: Option<Class>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue two antiprism instances; two drawings in give a drawing out.
    Extend {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_enum, default_value = "horizontal")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a DIMACS 3-CNF into the reduction graph with gadget roles.
    CompileCnf {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the roles as a labels file.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Exact RAC drawing of the reduction graph from a satisfying assignment.
    Synthesize {
        #[arg(long)]
        cnf: PathBuf,
        /// Values as `101`, `1,0,1`, `true,false,true` or literals `1 -2 3`;
        /// without it the first satisfying assignment is used.
        #[arg(long)]
        assignment: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the clause routing (which literal enters each trap).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exact RAC check; prints crossings, degeneracies and violations.
    Check {
        #[arg(long)]
        drawing: PathBuf,
    },
    /// Necessary-condition diagnostics: three mutual crossings, triangle
    /// fences and the edge bound.
    Diagnose {
        #[arg(long)]
        drawing: PathBuf,
    },
    /// Crossing-angle optimization from seeded random starts.
    Optimize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Where to write the best float drawing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of the embedding classes reached by the optimizer.
    Survey {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Exact drawings whose perturbed copies are added as starts.
        #[arg(long)]
        start_drawing: Vec<PathBuf>,
        /// Perturbed copies per start drawing.
        #[arg(long, default_value_t = 20)]
        perturbed: usize,
        /// Perturbation amplitude in rest lengths.
        #[arg(long, default_value_t = 0.1)]
        jitter: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a drawing as SVG with right-angle glyphs at crossings.
    Svg {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        /// Treat coordinates as floats; glyphs then need an angle within the
        /// tolerance of 90 degrees.
        #[arg(long)]
        float: bool,
        #[arg(long, default_value_t = 0.1)]
        angle_tolerance: f64,
        #[arg(long)]
        no_crossings: bool,
        #[arg(long)]
        highlight_role: Vec<String>,
    },
    /// Read the truth assignment off a drawing of the reduction graph.
    ExtractAssignment {
        #[arg(long)]
        drawing: PathBuf,
        /// Roles file; defaults to the roles stored in the drawing.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Formula to verify the assignment against.
        #[arg(long)]
        cnf: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Domain(String),
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

type Outcome = Result<ExitCode, Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => io::write_text(p, text).map_err(input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &PathBuf) -> Result<String, Failure> {
    io::read_text(p).map_err(input)
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn class(c: Class) -> EmbeddingClass {
    match c {
        Class::A => EmbeddingClass::A,
        Class::B => EmbeddingClass::B,
    }
}

fn parse_assignment(s: &str, n: usize) -> Result<Assignment, Failure> {
    let t = s.trim();
    let bad = || Failure::Input(format!("cannot read assignment {s:?}"));
    let values: Vec<bool> = if !t.is_empty() && t.chars().all(|c| c == '0' || c == '1') {
        t.chars().map(|c| c == '1').collect()
    } else if t.contains(',') {
        t.split(',')
            .map(|w| match w.trim().to_ascii_lowercase().as_str() {
                "1" | "t" | "true" => Ok(true),
                "0" | "f" | "false" => Ok(false),
                _ => Err(bad()),
            })
            .collect::<Result<_, _>>()?
    } else {
        let mut v = vec![None; n];
        for w in t.split_whitespace() {
            let lit: i64 = w.parse().map_err(|_| bad())?;
            let var = lit.unsigned_abs() as usize;
            if lit == 0 || var > n {
                return Err(bad());
            }
            v[var - 1] = Some(lit > 0);
        }
        v.into_iter().collect::<Option<Vec<_>>>().ok_or_else(bad)?
    };
    Ok(Assignment::new(values))
}

fn read_cnf(p: &PathBuf) -> Result<CnfFormula, Failure> {
    parse_dimacs(&read(p)?).map_err(input)
}

fn layout_config(config: &Option<PathBuf>, seed: Option<u64>, restarts: Option<usize>) -> Result<LayoutConfig, Failure> {
    let mut cfg = match config {
        Some(p) => io::config_from_json(&read(p)?).map_err(input)?,
        None => LayoutConfig::default(),
    };
    if let Ok(s) = std::env::var("RACFORGE_SEED") {
        cfg.seed = s.trim().parse().map_err(|_| Failure::Input(format!("RACFORGE_SEED={s:?} is not an integer")))?;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(r) = restarts {
        cfg.restarts = r;
    }
    cfg.validate().map_err(input)?;
    Ok(cfg)
}

fn is_drawing(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text).map(|v| v.get("positions").is_some()).unwrap_or(false)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::GenAntiprism { k, drawing, out } => {
            let g = augmented_antiprism(k).map_err(input)?;
            let text = match drawing {
                None => io::graph_to_json(&g),
                Some(_) if k != 4 => return Err(Failure::Input("seed drawings exist for k = 4 only".into())),
                Some(c) => io::drawing_to_json(&seed_drawing(class(c)), &g.roles),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend { left, right, mode, out } => {
            let mode = match mode {
                Mode::Horizontal => ExtendMode::Horizontal,
                Mode::Vertical => ExtendMode::Vertical,
            };
            let (lt, rt) = (read(&left)?, read(&right)?);
            let text = if is_drawing(&lt) && is_drawing(&rt) {
                let (l, r) = (io::drawing_from_json(&lt).map_err(input)?, io::drawing_from_json(&rt).map_err(input)?);
                let (g, d) = extend_drawing(&l.labeled_graph(), &l.drawing, &r.labeled_graph(), &r.drawing, mode)
                    .map_err(input)?;
                io::drawing_to_json(&d, &g.roles)
            } else {
                let (l, r) = (io::graph_from_json(&lt).map_err(input)?, io::graph_from_json(&rt).map_err(input)?);
                io::graph_to_json(&extend(&l, &r, mode).map_err(input)?)
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CompileCnf { cnf, out, labels_out } => {
            let c = compile(&read_cnf(&cnf)?);
            emit(&out, &io::graph_to_json(&c.graph))?;
            if let Some(p) = labels_out {
                io::write_text(&p, &io::labels_to_json(&c.graph.roles)).map_err(input)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize { cnf, assignment, out, report } => {
            let f = read_cnf(&cnf)?;
            let a = match assignment {
                Some(s) => parse_assignment(&s, f.num_variables())?,
                None => match all_satisfying(&f).into_iter().next() {
                    Some(a) => a,
                    None => return Err(Failure::Domain("formula is unsatisfiable".into())),
                },
            };
            let s = match synthesize(&f, &a) {
                Ok(s) => s,
                Err(e @ ReductionError::LengthMismatch { .. }) => return Err(input(e)),
                Err(e) => return Err(Failure::Domain(e.to_string())),
            };
            emit(&out, &io::drawing_to_json(&s.drawing, &s.compiled.graph.roles))?;
            if let Some(p) = report {
                let r = json!({ "assignment": a, "clauses": s.placement_report() });
                io::write_text(&p, &io::to_pretty(&r)).map_err(input)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { drawing } => {
            let d = io::drawing_from_json(&read(&drawing)?).map_err(input)?;
            let r = check_rac(&d.drawing);
            print!("{}", io::to_pretty(&r));
            Ok(verdict(r.is_rac))
        }
        Command::Diagnose { drawing } => {
            let d = io::drawing_from_json(&read(&drawing)?).map_err(input)?.drawing;
            let bound = edge_bound_check(d.graph());
            let (three, fence) = match (diagnose_three_mutual(&d), diagnose_triangle_fence(&d)) {
                (Ok(t), Ok(f)) => (t, f),
                (Err(e), _) | (_, Err(e)) => {
                    print!("{}", io::to_pretty(&json!({ "error": e.to_string(), "edge_bound": bound })));
                    return Ok(ExitCode::from(1));
                }
            };
            let clean = three.is_empty() && fence.violations.is_empty();
            #[derive(Serialize)]
            struct Diagnosis<T: Serialize, U: Serialize, V: Serialize> {
                three_mutual_crossings: T,
                triangle_fence: U,
                edge_bound: V,
            }
            print!(
                "{}",
                io::to_pretty(&Diagnosis { three_mutual_crossings: three, triangle_fence: fence, edge_bound: bound })
            );
            Ok(verdict(clean))
        }
        Command::Optimize { graph, config, seed, restarts, out } => {
            let g = io::graph_from_json(&read(&graph)?).map_err(input)?;
            let cfg = layout_config(&config, seed, restarts)?;
            let (d, report) = optimize(&g.graph, &cfg).map_err(|e| Failure::Domain(e.to_string()))?;
            if let Some(p) = &out {
                io::write_text(p, &io::float_drawing_to_json(&d, &g.roles)).map_err(input)?;
            }
            print!("{}", io::to_pretty(&report));
            Ok(verdict(report.embedding_class.is_some()))
        }
        Command::Survey { graph, restarts, config, seed, start_drawing, perturbed, jitter, out } => {
            let g = io::graph_from_json(&read(&graph)?).map_err(input)?;
            let cfg = layout_config(&config, seed, restarts)?;
            if !(jitter >= 0.0 && jitter.is_finite()) {
                return Err(Failure::Input("jitter must be finite and non-negative".into()));
            }
            let mut starts: Vec<FloatDrawing> = Vec::new();
            for (i, p) in start_drawing.iter().enumerate() {
                let d = io::drawing_from_json(&read(p)?).map_err(input)?.drawing;
                if d.graph() != &g.graph {
                    return Err(Failure::Input(format!("{}: graph differs from --graph", p.display())));
                }
                starts.extend(perturbed_starts(&d, &cfg, perturbed, jitter, cfg.seed.wrapping_add(1 + i as u64)));
            }
            let report = survey_with_starts(&g.graph, &cfg, &starts).map_err(|e| Failure::Domain(e.to_string()))?;
            emit(&out, &io::to_pretty(&report))?;
            Ok(verdict(report.near_rac > 0))
        }
        Command::Svg { drawing, out, scale, float, angle_tolerance, no_crossings, highlight_role } => {
            let opts = SvgOptions {
                scale,
                show_crossings: !no_crossings,
                highlight_roles: highlight_role,
                angle_tolerance_deg: angle_tolerance,
                ..SvgOptions::default()
            };
            let text = read(&drawing)?;
            let svg = if float {
                let (d, roles) = io::float_drawing_from_json(&text).map_err(input)?;
                io::render_float_svg(&d, &roles, &opts)
            } else {
                let d = io::drawing_from_json(&text).map_err(input)?;
                io::render_svg(&d.drawing, &d.roles, &opts)
            }
            .map_err(input)?;
            emit(&out, &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExtractAssignment { drawing, labels, cnf } => {
            let d = io::drawing_from_json(&read(&drawing)?).map_err(input)?;
            let lg = match labels {
                Some(p) => io::labels_from_json(&read(&p)?, d.drawing.graph()).map_err(input)?,
                None => d.labeled_graph(),
            };
            let gl = GadgetLabels::from_roles(&lg).map_err(input)?;
            let a = extract_assignment(&d.drawing, &gl).map_err(|e| Failure::Domain(e.to_string()))?;
            let satisfied = match cnf {
                Some(p) => {
                    let f = read_cnf(&p)?;
                    if f.num_variables() != a.len() {
                        return Err(Failure::Input("formula and drawing disagree on the variable count".into()));
                    }
                    Some(f.is_satisfied_by(&a))
                }
                None => None,
            };
            let mut r = BTreeMap::new();
            r.insert("assignment", json!(a));
            if let Some(s) = satisfied {
                r.insert("satisfies", json!(s));
            }
            print!("{}", io::to_pretty(&r));
            Ok(verdict(satisfied != Some(false)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}

