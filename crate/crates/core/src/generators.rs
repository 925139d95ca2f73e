//! Bethe cacti `D_n`, `C_n`, `E_n`, the octagonal lattice `G(p, q)`, and the
//! closed-form M-polynomials of the cacti.
//!
//! Copies of `D_{n-1}` are attached by vertex identification: the copy's root
//! and the host vertex become a single vertex, no connecting edge is added.
//! Vertex ids are assigned in preorder over the recursion so the output is
//! stable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::pow::Pow;
use thiserror::Error;

use crate::bipoly::{MPoly, Rational};
use crate::graph::{Graph, GraphBuilder, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    D,
    C,
    E,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::D, Family::C, Family::E];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D => "D",
            Family::C => "C",
            Family::E => "E",
        })
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "D" | "d" => Ok(Family::D),
            "C" | "c" => Ok(Family::C),
            "E" | "e" => Ok(Family::E),
            _ => Err(GenError::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

/// A graph with a distinguished attaching vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: VertexId,
}

struct Assembler {
    builder: GraphBuilder,
    next: VertexId,
}

impl Assembler {
    fn new() -> Self {
        Self { builder: GraphBuilder::new(), next: 0 }
    }

    fn fresh(&mut self) -> VertexId {
        let v = self.next;
        self.next += 1;
        self.builder.add_vertex(v);
        v
    }

    fn edge(&mut self, u: VertexId, v: VertexId) {
        self.builder.add_edge(u, v).expect("generated edges are distinct");
    }

    fn square(&mut self, a: VertexId, b: VertexId, c: VertexId, d: VertexId) {
        self.edge(a, b);
        self.edge(b, c);
        self.edge(c, d);
        self.edge(d, a);
    }

    /// Grows a copy of `D_n` whose root is the existing vertex `root`.
    fn grow_d(&mut self, n: u32, root: VertexId) {
        let others = [self.fresh(), self.fresh(), self.fresh()];
        self.square(root, others[0], others[1], others[2]);
        if n > 1 {
            for v in others {
                self.grow_d(n - 1, v);
            }
        }
    }
}

fn check_n(n: u32) -> Result<(), GenError> {
    if n < 1 {
        return Err(GenError::InvalidParameter(format!("n must be >= 1, got {n}")));
    }
    Ok(())
}

/// `D_1` is a 4-cycle; `D_n` is a 4-cycle whose three non-root vertices are
/// each the root of a copy of `D_{n-1}`.
pub fn bethe_d(n: u32) -> Result<RootedGraph, GenError> {
    check_n(n)?;
    let mut asm = Assembler::new();
    let root = asm.fresh();
    asm.grow_d(n, root);
    Ok(RootedGraph { graph: asm.builder.build(), root })
}

/// `C_1` is a 4-cycle; `C_n` is a 4-cycle with a copy of `D_{n-1}` rooted at each vertex.
pub fn bethe_c(n: u32) -> Result<Graph, GenError> {
    check_n(n)?;
    let mut asm = Assembler::new();
    let ring = [asm.fresh(), asm.fresh(), asm.fresh(), asm.fresh()];
    asm.square(ring[0], ring[1], ring[2], ring[3]);
    if n > 1 {
        for v in ring {
            asm.grow_d(n - 1, v);
        }
    }
    Ok(asm.builder.build())
}

/// `E_1` is the path on three vertices; `E_n` is that path with a copy of
/// `D_{n-1}` rooted at each of its vertices (center first).
pub fn bethe_e(n: u32) -> Result<Graph, GenError> {
    check_n(n)?;
    let mut asm = Assembler::new();
    let center = asm.fresh();
    let ends = [asm.fresh(), asm.fresh()];
    asm.edge(ends[0], center);
    asm.edge(center, ends[1]);
    if n > 1 {
        for v in [center, ends[0], ends[1]] {
            asm.grow_d(n - 1, v);
        }
    }
    Ok(asm.builder.build())
}

pub fn bethe(family: Family, n: u32) -> Result<Graph, GenError> {
    match family {
        Family::D => bethe_d(n).map(|r| r.graph),
        Family::C => bethe_c(n),
        Family::E => bethe_e(n),
    }
}

fn pow3(e: u32) -> BigInt {
    Pow::pow(BigInt::from(3), e)
}

/// The proved closed form of `M(family_n; x, y)`, computed without building a graph.
pub fn closed_form_mpoly(family: Family, n: u32) -> Result<MPoly, GenError> {
    check_n(n)?;
    let b = |v: i64| BigInt::from(v);
    let terms: Vec<(i64, i64, BigInt)> = match (family, n) {
        (Family::D | Family::C, 1) => vec![(2, 2, b(4))],
        (Family::E, 1) => vec![(1, 2, b(2))],
        (Family::E, 2) => vec![(2, 2, b(6)), (2, 3, b(4)), (2, 4, b(2)), (3, 4, b(2))],
        (Family::D, _) => {
            let t = pow3(n - 1);
            vec![
                (2, 2, b(2) * &t),
                (2, 4, b(2) * (&t + 1)),
                (4, 4, b(2) * (&t - 2)),
            ]
        }
        (Family::C, _) => {
            let t = pow3(n - 2);
            vec![
                (2, 2, b(8) * &t),
                (2, 4, b(8) * &t),
                (4, 4, b(4) * (b(2) * &t - 1)),
            ]
        }
        (Family::E, _) => {
            let t = pow3(n - 1);
            vec![
                (2, 2, b(2) * &t),
                (2, 4, b(2) * &t),
                (3, 4, b(6)),
                (4, 4, b(2) * &t - 10),
            ]
        }
    };
    Ok(MPoly::from_terms(terms.into_iter().map(|(i, j, c)| (i, j, Rational::from_integer(c))))
        .expect("closed-form exponents are nonnegative"))
}

/// Size of the octagonal lattice `G(p, q)`: `p` rows and `q` columns of octagons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeParams {
    p: u32,
    q: u32,
}

impl LatticeParams {
    pub fn new(p: u32, q: u32) -> Result<Self, GenError> {
        if p < 1 || q < 1 {
            return Err(GenError::InvalidParameter(format!("p and q must be >= 1, got ({p}, {q})")));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceCounts {
    pub octagons: u64,
    pub hexagons: u64,
    pub pentagons: u64,
    /// All faces, the outer one included.
    pub total: u64,
}

pub fn face_counts(params: LatticeParams) -> FaceCounts {
    let (p, q) = (params.p as u64, params.q as u64);
    let octagons = p * q;
    let hexagons = 2 * q * (p + 1);
    let pentagons = 2 * p * (q - 1);
    FaceCounts {
        octagons,
        hexagons,
        pentagons,
        total: octagons + hexagons + pentagons + 1,
    }
}

/// Builds `G(p, q)` on a half-unit grid (all coordinates doubled).
///
/// Columns are 4 units wide and rows 4 units tall. Each of the `p + 1`
/// horizontal bands is a strip of `2q` hexagons between two zigzag rows;
/// between consecutive bands sits a row of `q` octagons, neighbouring
/// octagons joined by a horizontal edge that closes two pentagons.
pub fn lattice(params: LatticeParams) -> Graph {
    let (p, q) = (params.p as i64, params.q as i64);
    let width = 8 * q; // 4q units, doubled
    let mut edges: Vec<((i64, i64), (i64, i64))> = Vec::new();

    // zigzag row: odd-unit x at the outer level, even-unit x one half-step inward
    let zigzag = |edges: &mut Vec<_>, outer: i64, inner: i64| {
        let point = |x: i64| if x % 4 == 2 { (x, outer) } else { (x, inner) };
        for x in (0..width).step_by(2) {
            edges.push((point(x), point(x + 2)));
        }
    };

    for band in 0..=p {
        let y0 = 8 * band;
        zigzag(&mut edges, y0, y0 + 1);
        zigzag(&mut edges, y0 + 4, y0 + 3);
        for x in (0..=width).step_by(4) {
            edges.push(((x, y0 + 1), (x, y0 + 3)));
        }
    }
    for row in 0..p {
        let (lo, mid, hi) = (8 * row + 4, 8 * row + 6, 8 * row + 8);
        for col in 0..q {
            let x0 = 8 * col;
            let (left, right) = ((x0 + 1, mid), (x0 + 7, mid));
            edges.push(((x0 + 2, lo), left));
            edges.push((left, (x0 + 2, hi)));
            edges.push(((x0 + 6, lo), right));
            edges.push((right, (x0 + 6, hi)));
            if col + 1 < q {
                edges.push((right, (x0 + 9, mid)));
            }
        }
    }

    // ids in (y, x) order, bottom-left first
    let mut ids: BTreeMap<(i64, i64), VertexId> = BTreeMap::new();
    for &((ax, ay), (bx, by)) in &edges {
        ids.insert((ay, ax), 0);
        ids.insert((by, bx), 0);
    }
    for (n, id) in ids.values_mut().enumerate() {
        *id = n as VertexId;
    }
    let mut builder = GraphBuilder::new();
    for ((ax, ay), (bx, by)) in edges {
        builder
            .add_edge(ids[&(ay, ax)], ids[&(by, bx)])
            .expect("lattice edges are distinct");
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::rat;

    fn poly(terms: &[(i64, i64, i64)]) -> MPoly {
        MPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat(c)))).unwrap()
    }

    #[test]
    fn d_small_cases() {
        let d1 = bethe_d(1).unwrap();
        assert_eq!(d1.graph.vertex_count(), 4);
        assert_eq!(d1.graph.edge_count(), 4);
        assert_eq!(d1.graph.m_polynomial(), poly(&[(2, 2, 4)]));

        let d2 = bethe_d(2).unwrap();
        assert_eq!(d2.graph.vertex_count(), 13);
        assert_eq!(d2.graph.edge_count(), 16);
        let m = d2.graph.edge_type_counts();
        assert_eq!((m.get(2, 2), m.get(2, 4), m.get(4, 4)), (6, 8, 2));

        let d3 = bethe_d(3).unwrap();
        assert_eq!(d3.graph.m_polynomial(), poly(&[(2, 2, 18), (2, 4, 20), (4, 4, 14)]));
    }

    #[test]
    fn d2_central_square_degrees() {
        let d2 = bethe_d(2).unwrap();
        // preorder: root 0, then the three other central-square vertices 1..=3
        assert_eq!(d2.graph.degree(d2.root).unwrap(), 2);
        for v in 1..=3 {
            assert_eq!(d2.graph.degree(v).unwrap(), 4);
        }
    }

    #[test]
    fn root_has_degree_two() {
        for n in 1..=6 {
            let d = bethe_d(n).unwrap();
            assert_eq!(d.graph.degree(d.root).unwrap(), 2, "n = {n}");
        }
    }

    #[test]
    fn c_and_e_examples() {
        assert_eq!(bethe_c(1).unwrap().m_polynomial(), poly(&[(2, 2, 4)]));
        let c2 = bethe_c(2).unwrap();
        assert_eq!(c2.m_polynomial(), poly(&[(2, 2, 8), (2, 4, 8), (4, 4, 4)]));
        assert_eq!(c2.edge_count(), 20);

        assert_eq!(bethe_e(1).unwrap().m_polynomial(), poly(&[(1, 2, 2)]));
        let e2 = bethe_e(2).unwrap();
        assert_eq!(e2.m_polynomial(), poly(&[(2, 2, 6), (2, 3, 4), (2, 4, 2), (3, 4, 2)]));
        assert_eq!(e2.edge_count(), 14);
        assert_eq!(e2.degree_histogram(), BTreeMap::from([(2, 9), (3, 2), (4, 1)]));
        assert_eq!(
            bethe_e(3).unwrap().m_polynomial(),
            poly(&[(2, 2, 18), (2, 4, 18), (3, 4, 6), (4, 4, 8)])
        );
    }

    #[test]
    fn zero_is_rejected() {
        assert!(bethe_d(0).is_err());
        assert!(bethe_c(0).is_err());
        assert!(bethe_e(0).is_err());
        assert!(closed_form_mpoly(Family::D, 0).is_err());
        assert!(LatticeParams::new(0, 3).is_err());
        assert!(LatticeParams::new(2, 0).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_mpoly(Family::D, 1).unwrap(), poly(&[(2, 2, 4)]));
        assert_eq!(
            closed_form_mpoly(Family::E, 2).unwrap(),
            poly(&[(2, 2, 6), (2, 3, 4), (2, 4, 2), (3, 4, 2)])
        );
        assert_eq!(
            closed_form_mpoly(Family::C, 4).unwrap(),
            poly(&[(2, 2, 72), (2, 4, 72), (4, 4, 68)])
        );
    }

    #[test]
    fn closed_form_handles_large_n() {
        let m = closed_form_mpoly(Family::D, 20).unwrap();
        let t = pow3(19);
        assert_eq!(m.coeff(2, 2), Rational::from_integer(BigInt::from(2) * t));
    }

    #[test]
    fn lattice_small_cases() {
        let g11 = lattice(LatticeParams::new(1, 1).unwrap());
        assert_eq!(g11.m_polynomial(), poly(&[(2, 2, 8), (2, 3, 12), (3, 3, 6)]));
        let g34 = lattice(LatticeParams::new(3, 4).unwrap());
        assert_eq!(g34.m_polynomial(), poly(&[(2, 2, 12), (2, 3, 52), (3, 3, 157)]));
        assert_eq!(g34.degree_histogram(), BTreeMap::from([(2, 38), (3, 122)]));
    }

    #[test]
    fn face_count_examples() {
        let f = face_counts(LatticeParams::new(3, 4).unwrap());
        assert_eq!((f.octagons, f.hexagons, f.pentagons, f.total), (12, 32, 18, 63));
        let f = face_counts(LatticeParams::new(1, 1).unwrap());
        assert_eq!((f.octagons, f.hexagons, f.pentagons, f.total), (1, 4, 0, 6));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("D".parse::<Family>().unwrap(), Family::D);
        assert_eq!("e".parse::<Family>().unwrap(), Family::E);
        assert!("G".parse::<Family>().is_err());
    }
}
