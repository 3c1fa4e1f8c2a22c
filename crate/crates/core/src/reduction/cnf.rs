//! 3-CNF formulas in DIMACS format.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("clause {clause}: {message}")]
    Not3Sat { clause: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn from_dimacs(v: i64) -> Self {
        Literal { var: v.unsigned_abs() as usize, negated: v < 0 }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_variables: usize,
    clauses: Vec<Clause>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn complement(&self) -> Self {
        Assignment { values: self.values.iter().map(|v| !v).collect() }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if *v { format!("{}", i + 1) } else { format!("-{}", i + 1) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn check_clause(index: usize, c: &[Literal]) -> Result<Clause, CnfError> {
    if c.len() != 3 {
        return Err(CnfError::Not3Sat { clause: index, message: format!("has {} literals, expected 3", c.len()) });
    }
    if c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var {
        return Err(CnfError::Not3Sat { clause: index, message: "repeats a variable".into() });
    }
    Ok([c[0], c[1], c[2]])
}

impl CnfFormula {
    pub fn new(num_variables: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            let c = check_clause(i + 1, c)?;
            if let Some(l) = c.iter().find(|l| l.var == 0 || l.var > num_variables) {
                return Err(CnfError::Not3Sat {
                    clause: i + 1,
                    message: format!("variable {} out of range 1..={num_variables}", l.var),
                });
            }
            out.push(c);
        }
        Ok(CnfFormula { num_variables, clauses: out })
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.len() == self.num_variables && self.clauses.iter().all(|c| c.iter().any(|l| l.eval(a)))
    }

    /// Index (0-based) of the first clause `a` leaves false.
    pub fn first_unsatisfied(&self, a: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.eval(a)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_variables, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs()));
        }
        s
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        let syntax = |message: String| CnfError::Syntax { line: line_no, message };
        if line.starts_with('p') {
            if header.is_some() {
                return Err(syntax("duplicate problem line".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(syntax(format!("malformed problem line {line:?}")));
            }
            let n = parts[2].parse().map_err(|_| syntax(format!("bad variable count {:?}", parts[2])))?;
            let m = parts[3].parse().map_err(|_| syntax(format!("bad clause count {:?}", parts[3])))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| syntax("clause before problem line".into()))?;
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| syntax(format!("bad literal {tok:?}")))?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if v.unsigned_abs() as usize > n {
                return Err(syntax(format!("literal {v} exceeds declared {n} variables")));
            }
            current.push(Literal::from_dimacs(v));
        }
    }
    let (n, m) = header.ok_or(CnfError::Syntax { line: last_line.max(1), message: "missing problem line".into() })?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != m {
        return Err(CnfError::Syntax {
            line: last_line,
            message: format!("problem line declares {m} clauses, found {}", clauses.len()),
        });
    }
    CnfFormula::new(n, clauses)
}

/// Every satisfying assignment, by exhaustive search over `2^n` candidates.
pub fn all_satisfying(f: &CnfFormula) -> Vec<Assignment> {
    let n = f.num_variables();
    assert!(n <= 20, "exhaustive search is limited to 20 variables");
    (0u32..1 << n)
        .map(|bits| Assignment::new((0..n).map(|i| bits >> i & 1 == 1).collect()))
        .filter(|a| f.is_satisfied_by(a))
        .collect()
}
