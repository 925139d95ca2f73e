use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use mpoly::bipoly::{format_rational, Rational};
use mpoly::generators::{self, Family, LatticeParams};
use mpoly::graph::{self, Graph};
use mpoly::gutman::{self, GutmanSystem};
use mpoly::indices::{self, IndexDef, TABLE2_INDICES};
use mpoly::verify;

#[derive(Parser, Debug)]
#[command(name = "mpoly", version, about = "M-polynomials and degree-based graph indices")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Print rationals as decimals with this many digits (round half to even)
    #[arg(long, global = true, value_name = "D")]
    decimal: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the M-polynomial of a graph (`-` reads standard input)
    Mpoly { graph: String },
    /// Evaluate one index on a graph
    Index {
        /// Edge-list file, or `-` for standard input
        graph: String,
        /// Index identifier, e.g. `zagreb1`, `harmonic`, `randic_general(2)`
        #[arg(long = "index", value_name = "NAME")]
        name: String,
        /// Exponent for the general Randić indices (default 1)
        #[arg(long)]
        alpha: Option<u32>,
        /// Summation over edge types, operator pipeline, or both compared
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Emit a generated graph as an edge list: `D n`, `C n`, `E n` or `G p q`
    Gen {
        family: String,
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<u32>,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare tabulated closed forms with values recomputed from the built graph
    Table2 { family: String, n: u32 },
    /// Solve a degree-bookkeeping system read from a file (`-` reads standard input)
    Gutman { system: String },
    /// Run every cross-check
    Verify {
        /// Largest cactus order to check
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        /// Largest lattice dimension to check
        #[arg(long, default_value_t = 6)]
        max_pq: u32,
        /// List every check, not only failures
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Operator,
    Both,
}

#[derive(Debug)]
enum CliError {
    /// Usage, I/O or parse problem.
    Usage(String),
    /// A computation was not defined on the input.
    Computation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Computation(_) => 3,
        }
    }
}

struct Output {
    text: String,
    json: Value,
    mismatch: Option<String>,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, mismatch: None }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {path}: {e}")))
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    graph::parse_edge_list(&read_input(path)?).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

/// Rounds half to even at `digits` decimal places.
fn format_decimal(r: &Rational, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = r.abs() * Rational::from_integer(scale);
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut n = floor.to_integer();
    if frac > half || (frac == half && (&n % BigInt::from(2)) != BigInt::zero()) {
        n += 1;
    }
    let mut s = n.to_string();
    if digits > 0 {
        let d = digits as usize;
        if s.len() <= d {
            s = format!("{}{s}", "0".repeat(d + 1 - s.len()));
        }
        s.insert(s.len() - d, '.');
    }
    if r.is_negative() && n != BigInt::zero() {
        s.insert(0, '-');
    }
    s
}

struct Fmt(Option<u32>);

impl Fmt {
    fn show(&self, r: &Rational) -> String {
        match self.0 {
            Some(d) => format_decimal(r, d),
            None => format_rational(r),
        }
    }
}

fn cmd_mpoly(path: &str) -> Result<Output, CliError> {
    let g = read_graph(path)?;
    let m = g.m_polynomial();
    let json = json!({
        "polynomial": m.to_string(),
        "terms": serde_json::to_value(&m).expect("records serialize"),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
    });
    Ok(Output::ok(format!("{m}\n"), json))
}

fn cmd_index(path: &str, name: &str, alpha: Option<u32>, method: Method, fmt: &Fmt) -> Result<Output, CliError> {
    let idx = IndexDef::from_name(name, alpha).map_err(|e| CliError::Usage(e.to_string()))?;
    let g = read_graph(path)?;
    let m = g.m_polynomial();
    let computation = |e: indices::IndexError| CliError::Computation(e.to_string());
    let direct = match method {
        Method::Direct | Method::Both => Some(indices::compute_direct(&m, &idx).map_err(computation)?.value),
        Method::Operator => None,
    };
    let operator = match method {
        Method::Operator | Method::Both => Some(indices::compute_via_operators(&m, &idx).map_err(computation)?.value),
        Method::Direct => None,
    };
    let mut json = json!({ "index": idx.name() });
    if let Some(v) = &direct {
        json["direct"] = json!(format_rational(v));
    }
    if let Some(v) = &operator {
        json["operator"] = json!(format_rational(v));
    }
    let (text, mismatch) = match (&direct, &operator) {
        (Some(a), Some(b)) => {
            let agree = a == b;
            json["agree"] = json!(agree);
            let rel = if agree { "=" } else { "!=" };
            let text = format!("{} (direct) {rel} {} (operator)\n", fmt.show(a), fmt.show(b));
            (text, (!agree).then(|| format!("{idx}: direct and operator values differ")))
        }
        (Some(v), None) | (None, Some(v)) => (format!("{}\n", fmt.show(v)), None),
        (None, None) => unreachable!("at least one method runs"),
    };
    Ok(Output { text, json, mismatch })
}

fn cmd_gen(family: &str, params: &[u32], out: Option<&PathBuf>) -> Result<Output, CliError> {
    let usage = |e: generators::GenError| CliError::Usage(e.to_string());
    let (label, g) = match (family, params) {
        ("G" | "g", &[p, q]) => {
            let lp = LatticeParams::new(p, q).map_err(usage)?;
            (format!("G({p},{q})"), generators::lattice(lp))
        }
        ("G" | "g", _) => return Err(CliError::Usage("G takes two parameters: p q".into())),
        (f, &[n]) => {
            let fam: Family = f.parse().map_err(usage)?;
            (format!("{fam}_{n}"), generators::bethe(fam, n).map_err(usage)?)
        }
        (f, _) => return Err(CliError::Usage(format!("family {f} takes one parameter: n"))),
    };
    let body = format!(
        "# {label}: {} vertices, {} edges\n{}",
        g.vertex_count(),
        g.edge_count(),
        graph::write_edge_list(&g)
    );
    let edges: Vec<[u64; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    let json = json!({ "graph": label, "vertices": g.vertex_count(), "edges": edges });
    match out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| CliError::Usage(format!("writing {}: {e}", path.display())))?;
            Ok(Output::ok(String::new(), json))
        }
        None => Ok(Output::ok(body, json)),
    }
}

fn cmd_table2(family: &str, n: u32, fmt: &Fmt) -> Result<Output, CliError> {
    let fam: Family = family.parse().map_err(|e: generators::GenError| CliError::Usage(e.to_string()))?;
    if n < 2 {
        return Err(CliError::Usage(format!("closed forms need n >= 2, got {n}")));
    }
    let m = generators::bethe(fam, n)
        .map_err(|e| CliError::Usage(e.to_string()))?
        .m_polynomial();
    let validated = n >= indices::closed_form_valid_from(fam);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for idx in &TABLE2_INDICES {
        let formula = indices::closed_form(fam, idx, n).map_err(|e| CliError::Computation(e.to_string()))?;
        let computed = indices::compute_direct(&m, idx)
            .map_err(|e| CliError::Computation(e.to_string()))?
            .value;
        let agree = formula == computed;
        if !agree && validated {
            failed.push(idx.name());
        }
        let flag = if agree { "match" } else { "mismatch" };
        text.push_str(&format!(
            "{}: formula {} computed {} {flag}\n",
            idx.name(),
            fmt.show(&formula),
            fmt.show(&computed)
        ));
        rows.push(json!({
            "index": idx.name(),
            "formula": format_rational(&formula),
            "computed": format_rational(&computed),
            "match": agree,
        }));
    }
    if !validated {
        text.push_str(&format!(
            "note: {fam}_{n} is below the validated range n >= {}; mismatches are reported, not failed\n",
            indices::closed_form_valid_from(fam)
        ));
    }
    let json = json!({ "family": fam.to_string(), "n": n, "validated": validated, "rows": rows });
    let mismatch = (!failed.is_empty()).then(|| format!("closed form mismatch: {}", failed.join(", ")));
    Ok(Output { text, json, mismatch })
}

fn cmd_gutman(path: &str) -> Result<Output, CliError> {
    let sys: GutmanSystem = read_input(path)?
        .parse()
        .map_err(|e: gutman::GutmanError| CliError::Usage(format!("{path}: {e}")))?;
    let sol = gutman::solve(&sys);
    let values: serde_json::Map<String, Value> = sol
        .values
        .iter()
        .map(|(v, x)| (v.name().to_string(), json!(format_rational(x))))
        .collect();
    let json = json!({
        "status": sol.status.to_string(),
        "values": values,
        "free_variables": sol.free_variables.iter().map(|v| v.name()).collect::<Vec<_>>(),
        "violated": sol.violated,
    });
    Ok(Output::ok(sol.to_string(), json))
}

fn cmd_verify(max_n: u32, max_pq: u32, verbose: bool) -> Result<Output, CliError> {
    if max_n < 1 || max_pq < 1 {
        return Err(CliError::Usage("--max-n and --max-pq must be >= 1".into()));
    }
    let report = verify::run(max_n, max_pq);
    let mut text = String::new();
    let mut groups: Vec<&str> = Vec::new();
    for c in &report.checks {
        if !groups.contains(&c.group) {
            groups.push(c.group);
        }
    }
    for g in &groups {
        let all: Vec<_> = report.checks.iter().filter(|c| c.group == *g).collect();
        let passed = all.iter().filter(|c| c.passed).count();
        text.push_str(&format!("{g}: {passed}/{} passed\n", all.len()));
    }
    for c in &report.checks {
        if verbose || !c.passed {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            text.push_str(&format!("{verdict} [{}] {}: {}\n", c.group, c.name, c.detail));
        }
    }
    for note in &report.notes {
        text.push_str(&format!("note: {note}\n"));
    }
    let failures: Vec<Value> = report
        .failures()
        .map(|c| json!({ "group": c.group, "name": c.name, "detail": c.detail }))
        .collect();
    let json = json!({
        "passed": report.all_passed(),
        "checks": report.checks.len(),
        "failures": failures,
        "notes": report.notes,
    });
    let mismatch = (!report.all_passed()).then(|| format!("{} check(s) failed", report.failures().count()));
    Ok(Output { text, json, mismatch })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let fmt = Fmt(cli.decimal);
    match &cli.command {
        Command::Mpoly { graph } => cmd_mpoly(graph),
        Command::Index { graph, name, alpha, method } => cmd_index(graph, name, *alpha, *method, &fmt),
        Command::Gen { family, params, out } => cmd_gen(family, params, out.as_ref()),
        Command::Table2 { family, n } => cmd_table2(family, *n, &fmt),
        Command::Gutman { system } => cmd_gutman(system),
        Command::Verify { max_n, max_pq, verbose } => cmd_verify(*max_n, *max_pq, *verbose),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json serializes"))
            } else {
                out.text
            };
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(body.as_bytes());
            match out.mismatch {
                Some(msg) => {
                    eprintln!("mpoly: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Computation(m) => m,
            };
            eprintln!("mpoly: {msg}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_rounds_half_to_even() {
        assert_eq!(format_decimal(&r(1, 8), 2), "0.12");
        assert_eq!(format_decimal(&r(3, 8), 2), "0.38");
        assert_eq!(format_decimal(&r(5, 2), 0), "2");
        assert_eq!(format_decimal(&r(7, 2), 0), "4");
        assert_eq!(format_decimal(&r(-478, 7), 3), "-68.286");
        assert_eq!(format_decimal(&r(1, 3), 4), "0.3333");
        assert_eq!(format_decimal(&r(-1, 1000), 2), "0.00");
        assert_eq!(format_decimal(&r(36, 1), 1), "36.0");
    }
}
