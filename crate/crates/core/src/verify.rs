//! Cross-checks every closed form against constructed graphs.

use crate::bipoly::{format_rational, rat};
use crate::generators::{bethe, closed_form_mpoly, face_counts, lattice, Family, LatticeParams};
use crate::graph::Graph;
use crate::gutman::{self, GutmanSystem, Status, Var};
use crate::indices::{self, closed_form, closed_form_valid_from, compute_direct, compute_via_operators, TABLE2_INDICES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Observations recorded without a verdict.
    pub notes: Vec<String>,
}

impl Report {
    fn push(&mut self, group: &'static str, name: String, passed: bool, detail: String) {
        self.checks.push(Check { group, name, passed, detail });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Knowns of the lattice scenario: `m22`, `n2`, `f`, with every variable
/// involving degree 1 or 4 pinned to zero.
pub fn lattice_scenario(params: LatticeParams) -> GutmanSystem {
    let (p, q) = (params.p() as i64, params.q() as i64);
    let mut sys = GutmanSystem::new(true);
    let pinned = [Var::N1, Var::N4, Var::M11, Var::M12, Var::M13, Var::M14, Var::M24, Var::M34, Var::M44];
    for v in pinned {
        sys.set(v, rat(0)).expect("zero is nonnegative");
    }
    sys.set(Var::M22, rat(2 * p + 6)).expect("positive");
    sys.set(Var::N2, rat(6 * p + 4 * q + 4)).expect("positive");
    sys.set(Var::F, rat(face_counts(params).total as i64)).expect("positive");
    sys
}

/// Expected `(m22, m23, m33, n2, n3)` of `G(p, q)`.
pub fn lattice_counts(params: LatticeParams) -> (i64, i64, i64, i64, i64) {
    let (p, q) = (params.p() as i64, params.q() as i64);
    (
        2 * p + 6,
        8 * p + 8 * q - 4,
        15 * p * q - 10 * p + 2 * q - 1,
        6 * p + 4 * q + 4,
        10 * p * q - 4 * p + 4 * q - 2,
    )
}

fn family_graphs(max_n: u32) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for n in 1..=max_n {
            out.push((format!("{family}_{n}"), bethe(family, n).expect("n >= 1")));
        }
    }
    out
}

pub fn run(max_n: u32, max_pq: u32) -> Report {
    let mut report = Report::default();

    for family in Family::ALL {
        for n in 1..=max_n {
            let built = bethe(family, n).expect("n >= 1").m_polynomial();
            let formula = closed_form_mpoly(family, n).expect("n >= 1");
            report.push(
                "family",
                format!("M({family}_{n})"),
                built == formula,
                format!("built {built}; formula {formula}"),
            );
        }
    }

    for p in 1..=max_pq {
        for q in 1..=max_pq {
            let params = LatticeParams::new(p, q).expect("p, q >= 1");
            let g = lattice(params);
            let m = g.edge_type_counts();
            let h = g.degree_histogram();
            let (m22, m23, m33, n2, n3) = lattice_counts(params);
            let faces = face_counts(params);
            let observed = (
                m.get(2, 2) as i64,
                m.get(2, 3) as i64,
                m.get(3, 3) as i64,
                *h.get(&2).unwrap_or(&0) as i64,
                *h.get(&3).unwrap_or(&0) as i64,
            );
            let euler = g.edge_count() as i64 - g.vertex_count() as i64 == faces.total as i64 - 2;
            let ok = observed == (m22, m23, m33, n2, n3)
                && h.keys().all(|d| *d == 2 || *d == 3)
                && m.total() as usize == g.edge_count()
                && g.is_connected()
                && euler;
            report.push(
                "lattice",
                format!("G({p},{q})"),
                ok,
                format!("(m22, m23, m33, n2, n3) = {observed:?}, expected {:?}", (m22, m23, m33, n2, n3)),
            );

            let sol = gutman::solve(&lattice_scenario(params));
            let got = |v: Var| sol.values.get(&v).cloned();
            let ok = sol.status == Status::Unique
                && got(Var::M23) == Some(rat(m23))
                && got(Var::N3) == Some(rat(n3))
                && got(Var::M33) == Some(rat(m33));
            report.push("gutman", format!("scenario G({p},{q})"), ok, format!("status {}", sol.status));
        }
    }

    let ind = gutman::verify_independence();
    report.push(
        "gutman",
        "independence".into(),
        ind.rank_core == 5 && ind.degree_sum_dependent && ind.euler_independent,
        format!("{ind:?}"),
    );

    let mut corpus = family_graphs(max_n);
    for p in 1..=max_pq.min(3) {
        for q in 1..=max_pq.min(3) {
            corpus.push((format!("G({p},{q})"), lattice(LatticeParams::new(p, q).expect("p, q >= 1"))));
        }
    }
    let defs: Vec<_> = indices::registry(1)
        .into_iter()
        .chain([indices::IndexDef::RandicGeneral(2), indices::IndexDef::RandicInverseGeneral(2)])
        .collect();
    for (name, g) in &corpus {
        let m = g.m_polynomial();
        for idx in &defs {
            let direct = compute_direct(&m, idx).map(|v| v.value);
            let operator = compute_via_operators(&m, idx).map(|v| v.value);
            let ok = matches!((&direct, &operator), (Ok(a), Ok(b)) if a == b);
            report.push(
                "dual-path",
                format!("{idx} on {name}"),
                ok,
                format!("direct {direct:?}; operator {operator:?}"),
            );
        }
    }

    for family in Family::ALL {
        for n in 2..=max_n {
            let m = bethe(family, n).expect("n >= 1").m_polynomial();
            for idx in &TABLE2_INDICES {
                let computed = compute_direct(&m, idx).expect("defined on cacti").value;
                let formula = closed_form(family, idx, n).expect("n >= 2");
                let detail = format!(
                    "computed {}; formula {}",
                    format_rational(&computed),
                    format_rational(&formula)
                );
                if n >= closed_form_valid_from(family) {
                    report.push("table2", format!("{idx} of {family}_{n}"), computed == formula, detail);
                } else {
                    let verdict = if computed == formula { "agrees" } else { "differs" };
                    report.notes.push(format!("{idx} of {family}_{n} {verdict}: {detail}"));
                }
            }
        }
    }

    report
}
