//! Degree bookkeeping for chemical graphs (maximum degree 4).
//!
//! The unknowns are `n, m, f`, the vertex-degree counts `n1..n4` and the
//! edge-type counts `m_{i,j}` for `1 <= i <= j <= 4`. They are tied together
//! by the handshake relations per degree, the vertex and edge totals, and
//! optionally Euler's formula for plane graphs. Given some of them, the rest
//! are recovered by exact elimination.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bipoly::{format_rational, parse_rational, rat, Rational};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GutmanError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("known value for {var} is negative: {value}")]
    NegativeKnown { var: Var, value: String },
    #[error("not a chemical graph: {0}")]
    NotChemical(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    N,
    M,
    F,
    N1,
    N2,
    N3,
    N4,
    M11,
    M12,
    M13,
    M14,
    M22,
    M23,
    M24,
    M33,
    M34,
    M44,
}

impl Var {
    pub const ALL: [Var; 17] = [
        Var::N,
        Var::M,
        Var::F,
        Var::N1,
        Var::N2,
        Var::N3,
        Var::N4,
        Var::M11,
        Var::M12,
        Var::M13,
        Var::M14,
        Var::M22,
        Var::M23,
        Var::M24,
        Var::M33,
        Var::M34,
        Var::M44,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::M => "m",
            Var::F => "f",
            Var::N1 => "n1",
            Var::N2 => "n2",
            Var::N3 => "n3",
            Var::N4 => "n4",
            Var::M11 => "m11",
            Var::M12 => "m12",
            Var::M13 => "m13",
            Var::M14 => "m14",
            Var::M22 => "m22",
            Var::M23 => "m23",
            Var::M24 => "m24",
            Var::M33 => "m33",
            Var::M34 => "m34",
            Var::M44 => "m44",
        }
    }

    /// `n_d` for `1 <= d <= 4`.
    pub fn degree_count(d: usize) -> Option<Var> {
        [Var::N1, Var::N2, Var::N3, Var::N4].get(d.checked_sub(1)?).copied()
    }

    /// `m_{i,j}` for `1 <= i, j <= 4` (order-insensitive).
    pub fn edge_count(i: usize, j: usize) -> Option<Var> {
        let (a, b) = (i.min(j), i.max(j));
        Some(match (a, b) {
            (1, 1) => Var::M11,
            (1, 2) => Var::M12,
            (1, 3) => Var::M13,
            (1, 4) => Var::M14,
            (2, 2) => Var::M22,
            (2, 3) => Var::M23,
            (2, 4) => Var::M24,
            (3, 3) => Var::M33,
            (3, 4) => Var::M34,
            (4, 4) => Var::M44,
            _ => return None,
        })
    }

    fn edge_vars() -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().skip(7)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = GutmanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| GutmanError::UnknownVariable(s.to_string()))
    }
}

/// `sum coeffs[v] * v = constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEquation {
    pub label: &'static str,
    pub coeffs: BTreeMap<Var, i64>,
    pub constant: i64,
}

impl LinearEquation {
    fn new(label: &'static str, terms: &[(Var, i64)], constant: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for &(v, c) in terms {
            *coeffs.entry(v).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        LinearEquation { label, coeffs, constant }
    }

    /// `lhs - constant` under a full assignment; `None` if a variable is missing.
    pub fn residual(&self, values: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut acc = -rat(self.constant);
        for (v, &c) in &self.coeffs {
            acc += values.get(v)? * rat(c);
        }
        Some(acc)
    }

    /// Dense row over [`Var::ALL`] with the constant appended.
    fn dense(&self) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); Var::ALL.len() + 1];
        for (v, &c) in &self.coeffs {
            row[v.index()] = rat(c);
        }
        row[Var::ALL.len()] = rat(self.constant);
        row
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        for (n, (v, &c)) in self.coeffs.iter().enumerate() {
            let sep = match (n, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            match c.abs() {
                1 => write!(f, "{sep}{v}")?,
                k => write!(f, "{sep}{k}{v}")?,
            }
        }
        write!(f, " = {}", self.constant)
    }
}

const HANDSHAKE: [&str; 4] = ["handshake-1", "handshake-2", "handshake-3", "handshake-4"];

fn vertex_total() -> LinearEquation {
    LinearEquation::new(
        "vertex-sum",
        &[(Var::N1, 1), (Var::N2, 1), (Var::N3, 1), (Var::N4, 1), (Var::N, -1)],
        0,
    )
}

/// Handshake at degree `d`: every `m_{d,j}` counts once, `m_{d,d}` twice.
fn handshake(d: usize) -> LinearEquation {
    let mut terms = Vec::new();
    for j in 1..=4 {
        let v = Var::edge_count(d, j).expect("degrees within 1..=4");
        terms.push((v, if j == d { 2 } else { 1 }));
    }
    terms.push((Var::degree_count(d).expect("degree within 1..=4"), -(d as i64)));
    LinearEquation::new(HANDSHAKE[d - 1], &terms, 0)
}

fn degree_sum() -> LinearEquation {
    LinearEquation::new(
        "degree-sum",
        &[(Var::N1, 1), (Var::N2, 2), (Var::N3, 3), (Var::N4, 4), (Var::M, -2)],
        0,
    )
}

fn edge_total() -> LinearEquation {
    let mut terms: Vec<(Var, i64)> = Var::edge_vars().map(|v| (v, 1)).collect();
    terms.push((Var::M, -1));
    LinearEquation::new("edge-sum", &terms, 0)
}

fn euler() -> LinearEquation {
    let mut terms: Vec<(Var, i64)> = Var::edge_vars().map(|v| (v, 1)).collect();
    terms.extend([(Var::N1, -1), (Var::N2, -1), (Var::N3, -1), (Var::N4, -1), (Var::F, -1)]);
    LinearEquation::new("euler", &terms, -2)
}

/// A partial assignment of the bookkeeping variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GutmanSystem {
    knowns: BTreeMap<Var, Rational>,
    pub use_euler: bool,
}

impl GutmanSystem {
    pub fn new(use_euler: bool) -> Self {
        GutmanSystem { knowns: BTreeMap::new(), use_euler }
    }

    pub fn set(&mut self, var: Var, value: Rational) -> Result<&mut Self, GutmanError> {
        if value.is_negative() {
            return Err(GutmanError::NegativeKnown { var, value: format_rational(&value) });
        }
        self.knowns.insert(var, value);
        Ok(self)
    }

    pub fn with(mut self, var: Var, value: i64) -> Result<Self, GutmanError> {
        self.set(var, rat(value))?;
        Ok(self)
    }

    pub fn knowns(&self) -> &BTreeMap<Var, Rational> {
        &self.knowns
    }

    /// Every variable read off a chemical graph. `faces` (outer face included)
    /// enables Euler's formula.
    pub fn from_graph(g: &Graph, faces: Option<u64>) -> Result<Self, GutmanError> {
        if g.max_degree() > 4 {
            return Err(GutmanError::NotChemical(format!("maximum degree {}", g.max_degree())));
        }
        if g.vertex_count() > 0 && g.min_degree() == 0 {
            return Err(GutmanError::NotChemical("isolated vertex".into()));
        }
        let mut sys = GutmanSystem::new(faces.is_some());
        sys.set(Var::N, rat(g.vertex_count() as i64))?;
        sys.set(Var::M, rat(g.edge_count() as i64))?;
        if let Some(f) = faces {
            sys.set(Var::F, rat(f as i64))?;
        }
        let hist = g.degree_histogram();
        for d in 1..=4 {
            let count = hist.get(&d).copied().unwrap_or(0);
            sys.set(Var::degree_count(d).expect("1..=4"), rat(count as i64))?;
        }
        let m = g.edge_type_counts();
        for i in 1..=4 {
            for j in i..=4 {
                sys.set(Var::edge_count(i, j).expect("1..=4"), rat(m.get(i, j) as i64))?;
            }
        }
        Ok(sys)
    }

    /// Scales every known by `c`.
    pub fn scaled(&self, c: &Rational) -> Result<Self, GutmanError> {
        let mut out = GutmanSystem::new(self.use_euler);
        for (&v, x) in &self.knowns {
            out.set(v, x * c)?;
        }
        Ok(out)
    }
}

impl FromStr for GutmanSystem {
    type Err = GutmanError;

    /// `variable = value` lines (value an integer or `p/q`), an optional
    /// `euler on|off` directive (default off), `#` comments.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut sys = GutmanSystem::new(false);
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| GutmanError::Parse { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("euler") {
                sys.use_euler = match rest.trim() {
                    "on" => true,
                    "off" => false,
                    other => return Err(err(format!("expected `euler on|off`, found {other:?}"))),
                };
                continue;
            }
            let (name, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `variable = value`, found {content:?}")))?;
            let var: Var = name.trim().parse().map_err(|e: GutmanError| err(e.to_string()))?;
            if sys.knowns.contains_key(&var) {
                return Err(err(format!("{var} assigned twice")));
            }
            let value = parse_rational(value).map_err(|e| err(e.to_string()))?;
            sys.set(var, value).map_err(|e| err(e.to_string()))?;
        }
        Ok(sys)
    }
}

/// Handshake/total relations, the edge-sum identity, and Euler's formula when enabled.
pub fn build_equations(sys: &GutmanSystem) -> Vec<LinearEquation> {
    let mut eqs = vec![vertex_total()];
    eqs.extend((1..=4).map(handshake));
    eqs.push(degree_sum());
    eqs.push(edge_total());
    if sys.use_euler {
        eqs.push(euler());
    }
    eqs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Unique,
    Underdetermined,
    Inconsistent,
    /// The unique algebraic solution has a negative entry.
    NegativeValue,
    /// The unique algebraic solution has a non-integer entry.
    NonIntegral,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unique => "unique",
            Status::Underdetermined => "underdetermined",
            Status::Inconsistent => "inconsistent",
            Status::NegativeValue => "inconsistent-with-nonnegativity",
            Status::NonIntegral => "inconsistent-with-integrality",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    /// Knowns plus every unknown the equations pin down. For
    /// `NegativeValue`/`NonIntegral` this is the offending algebraic solution.
    pub values: BTreeMap<Var, Rational>,
    pub free_variables: Vec<Var>,
    /// Labels of equations contradicted by the knowns alone.
    pub violated: Vec<&'static str>,
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status)?;
        if !self.violated.is_empty() {
            writeln!(f, "violated: {}", self.violated.join(" "))?;
        }
        if !self.free_variables.is_empty() {
            let free: Vec<&str> = self.free_variables.iter().map(|v| v.name()).collect();
            writeln!(f, "free: {}", free.join(" "))?;
        }
        for (v, x) in &self.values {
            writeln!(f, "{v} = {}", format_rational(x))?;
        }
        Ok(())
    }
}

/// Reduces `rows` (each `ncols` coefficients plus a trailing constant) to
/// reduced row echelon form. Returns the pivot column of each nonzero row.
fn row_reduce(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves for the unknowns by exact elimination and classifies the result.
pub fn solve(sys: &GutmanSystem) -> Solution {
    let equations = build_equations(sys);
    // f only enters through Euler's formula
    let unknowns: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|v| !sys.knowns.contains_key(v))
        .filter(|&v| sys.use_euler || v != Var::F)
        .collect();
    let width = unknowns.len();

    let mut violated = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(equations.len());
    for eq in &equations {
        let mut row = vec![Rational::zero(); width + 1];
        let mut rhs = rat(eq.constant);
        for (v, &c) in &eq.coeffs {
            match sys.knowns.get(v) {
                Some(x) => rhs -= x * rat(c),
                None => {
                    let col = unknowns.iter().position(|u| u == v).expect("unknown listed");
                    row[col] = rat(c);
                }
            }
        }
        if row[..width].iter().all(Zero::is_zero) && !rhs.is_zero() {
            violated.push(eq.label);
        }
        row[width] = rhs;
        rows.push(row);
    }

    let pivots = row_reduce(&mut rows, width);
    let inconsistent = rows
        .iter()
        .any(|row| row[..width].iter().all(Zero::is_zero) && !row[width].is_zero());
    if inconsistent {
        return Solution {
            status: Status::Inconsistent,
            values: sys.knowns.clone(),
            free_variables: Vec::new(),
            violated,
        };
    }

    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut values = sys.knowns.clone();
    for (r, &col) in pivots.iter().enumerate() {
        if free.iter().all(|&fc| rows[r][fc].is_zero()) {
            values.insert(unknowns[col], rows[r][width].clone());
        }
    }

    let status = if !free.is_empty() {
        Status::Underdetermined
    } else if values.values().any(Signed::is_negative) {
        Status::NegativeValue
    } else if values.values().any(|x| !x.is_integer()) {
        Status::NonIntegral
    } else {
        Status::Unique
    };
    Solution {
        status,
        values,
        free_variables: free.into_iter().map(|c| unknowns[c]).collect(),
        violated,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceReport {
    /// Rank of the vertex-total and per-degree handshake equations.
    pub rank_core: usize,
    /// The degree-sum equation, with `m` replaced by the sum of the `m_{i,j}`,
    /// lies in the span of the core equations.
    pub degree_sum_dependent: bool,
    /// Euler's formula is not implied by all the other equations.
    pub euler_independent: bool,
}

fn rank(eqs: &[LinearEquation]) -> usize {
    let mut rows: Vec<Vec<Rational>> = eqs.iter().map(LinearEquation::dense).collect();
    // constant column included so an inhomogeneous equation counts as new
    row_reduce(&mut rows, Var::ALL.len() + 1).len()
}

pub fn verify_independence() -> IndependenceReport {
    let core: Vec<LinearEquation> = std::iter::once(vertex_total()).chain((1..=4).map(handshake)).collect();
    let rank_core = rank(&core);

    // n1 + 2 n2 + 3 n3 + 4 n4 - 2 sum m_ij = 0
    let mut terms: Vec<(Var, i64)> = (1..=4).map(|d| (Var::degree_count(d).unwrap(), d as i64)).collect();
    terms.extend(Var::edge_vars().map(|v| (v, -2)));
    let substituted = LinearEquation::new("(8')", &terms, 0);
    let mut with_sum = core.clone();
    with_sum.push(substituted);
    let degree_sum_dependent = rank(&with_sum) == rank_core;

    let mut all = core;
    all.push(degree_sum());
    all.push(edge_total());
    let before = rank(&all);
    all.push(euler());
    let euler_independent = rank(&all) > before;

    IndependenceReport { rank_core, degree_sum_dependent, euler_independent }
}
