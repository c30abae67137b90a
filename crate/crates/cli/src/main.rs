mod range;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use turan::construct::{
    build_h2, build_h3, build_h_general, cliques_plus_remainder, extremal_graph, extremal_graph_with_family,
    near_regular, Family,
};
use turan::detect::{find_double_star, DoubleStar};
use turan::formulas::{ex_dispatch, ex_formula, ex_generalized_clique, FormulaResult};
use turan::io::{from_dot, from_edge_list, from_graph6, to_dot, to_edge_list, to_graph6_string};
use turan::oracle::{max_edges_free, SearchConfig, MAX_ORACLE_VERTICES};
use turan::{Error, Graph};

use range::Span;

const EXIT_CONTAINS: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_UNPROVEN: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "turan", version, about = "Turán numbers of double stars S_{a,b}")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form ex(n, S_{a,b}); with --k, the maximum number of K_k instead.
    Formula {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Build an extremal or near-extremal graph.
    Construct {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Remainder for h-general (defaults to n - a - b - 1).
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Auto)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = OutFormat::G6)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test a graph for a copy of S_{a,b}.
    Check {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = InFormat::Auto)]
        format: InFormat,
        /// Vertex count for edge lists (defaults to the largest id + 1).
        #[arg(long)]
        n: Option<usize>,
        /// Graph file; stdin when absent or "-".
        input: Option<PathBuf>,
    },
    /// Exact maximum by branch and bound (n <= 16).
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Return every extremal isomorphism class.
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        no_degree_cap: bool,
        #[arg(long)]
        no_warm_start: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Compare formula, construction and (for small n) the exact search.
    Verify {
        /// a range, e.g. 1..3 [default: 1..3]
        #[arg(long)]
        a: Option<Span>,
        /// b range, e.g. 11..40
        #[arg(long)]
        b: Option<Span>,
        #[arg(long)]
        b_max: Option<u64>,
        /// n range [default: 1..n-max]
        #[arg(long)]
        n: Option<Span>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Run the exact search for n up to this (capped at 16).
        #[arg(long, default_value_t = 0)]
        oracle_max: u64,
        /// Per-tuple search limit in seconds.
        #[arg(long)]
        oracle_time_limit: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Auto,
    Cliques,
    NearRegular,
    H2,
    H3,
    HGeneral,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    G6,
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Auto,
    G6,
    Edges,
    Dot,
}

/// A failed command: exit code plus the JSON body printed on stdout.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            body: json!({ "error": msg.into() }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let body = match &e {
            Error::Domain { bound } => json!({ "error": e.to_string(), "violated_bound": bound }),
            Error::Parse { offset, .. } => json!({ "error": e.to_string(), "offset": offset }),
            _ => json!({ "error": e.to_string() }),
        };
        Failure {
            code: EXIT_DOMAIN,
            body,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            body: json!({ "error": e.to_string() }),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn emit(v: &impl Serialize) {
    println!("{}", serde_json::to_string(v).expect("output types serialize"));
}

fn formula_json(n: u64, a: u64, b: u64, k: Option<u64>, f: &FormulaResult) -> Value {
    let mut v = json!({
        "n": n,
        "a": a,
        "b": b,
        "value": f.value,
        "regime": f.regime.as_str(),
        "p": f.decomposition.p,
        "q": f.decomposition.q,
        "modulus": f.decomposition.modulus,
        "theorem": f.source.as_str(),
    });
    if let Some(k) = k {
        v["k"] = json!(k);
    }
    v
}

fn cmd_formula(n: u64, a: u64, b: u64, k: Option<u64>) -> Outcome {
    let f = match k {
        Some(k) => ex_generalized_clique(n, a, b, k)?,
        None => ex_formula(n, a, b)?,
    };
    emit(&formula_json(n, a, b, k, &f));
    Ok(0)
}

fn require_n(n: Option<usize>, family: &str) -> Result<usize, Failure> {
    n.ok_or_else(|| Failure::usage(format!("--n is required for family {family}")))
}

fn require_a3(a: usize, family: &str) -> Result<(), Failure> {
    if a == 3 {
        Ok(())
    } else {
        Err(Error::Domain {
            bound: format!("a = 3 for family {family}"),
        }
        .into())
    }
}

fn require_order(n: Option<usize>, want: usize) -> Result<(), Failure> {
    match n {
        Some(n) if n != want => Err(Error::Domain {
            bound: format!("n = {want}"),
        }
        .into()),
        _ => Ok(()),
    }
}

fn build(n: Option<usize>, a: usize, b: usize, q: Option<usize>, family: FamilyArg) -> Result<(Graph, Family), Failure> {
    DoubleStar::new(a, b)?;
    Ok(match family {
        FamilyArg::Auto => extremal_graph_with_family(require_n(n, "auto")?, a, b)?,
        FamilyArg::Cliques => {
            let n = require_n(n, "cliques")?;
            let m = a + b + 1;
            (cliques_plus_remainder(n / m, m, n % m)?, Family::CliquesPlusRemainder)
        }
        FamilyArg::NearRegular => (near_regular(require_n(n, "near-regular")?, b)?, Family::NearRegular),
        FamilyArg::H2 => {
            require_a3(a, "h2")?;
            require_order(n, 2 * b + 1)?;
            (build_h2(b)?, Family::H2)
        }
        FamilyArg::H3 => {
            require_a3(a, "h3")?;
            require_order(n, 2 * b + 2)?;
            (build_h3(b)?, Family::H3)
        }
        FamilyArg::HGeneral => {
            let q = match (q, n) {
                (Some(q), _) => q,
                (None, Some(n)) if n > a + b => n - a - b - 1,
                (None, Some(_)) => {
                    return Err(Error::Domain {
                        bound: "n >= a+b+1".into(),
                    }
                    .into())
                }
                (None, None) => return Err(Failure::usage("--q or --n is required for family h-general")),
            };
            let g = build_h_general(a, b, q)?;
            require_order(n, g.n())?;
            (g, Family::HGeneral)
        }
    })
}

fn cmd_construct(
    n: Option<usize>,
    a: usize,
    b: usize,
    q: Option<usize>,
    family: FamilyArg,
    format: OutFormat,
    out: Option<PathBuf>,
) -> Outcome {
    let (g, fam) = build(n, a, b, q, family)?;
    let text = match format {
        OutFormat::G6 => to_graph6_string(&g)? + "\n",
        OutFormat::Edges => to_edge_list(&g),
        OutFormat::Dot => to_dot(&g),
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    eprintln!(
        "{}: n={} edges={} max_degree={}",
        fam.as_str(),
        g.n(),
        g.edge_count(),
        g.max_degree().unwrap_or(0)
    );
    Ok(0)
}

fn sniff(text: &str) -> InFormat {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        None => InFormat::Edges,
        Some(l) if l.starts_with("graph") || l.starts_with("strict") => InFormat::Dot,
        Some(l) if l.split_whitespace().count() > 1 => InFormat::Edges,
        Some(_) => InFormat::G6,
    }
}

fn parse_graph(bytes: &[u8], format: InFormat, n: Option<usize>) -> turan::Result<Graph> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        offset: e.valid_up_to(),
        message: "input is not UTF-8".into(),
    })?;
    let format = match format {
        InFormat::Auto => sniff(text),
        f => f,
    };
    match format {
        InFormat::G6 => {
            let skip = if text.starts_with(">>graph6<<") { 10 } else { 0 };
            let body = &text[skip..];
            let line_end = body.find('\n').unwrap_or(body.len());
            let rest = &body[line_end..];
            if !rest.trim().is_empty() {
                return Err(Error::Parse {
                    offset: skip + line_end + 1,
                    message: "expected a single graph6 line".into(),
                });
            }
            from_graph6(body[..line_end].trim_end_matches('\r').as_bytes()).map_err(|e| match e {
                Error::Parse { offset, message } => Error::Parse {
                    offset: offset + skip,
                    message,
                },
                e => e,
            })
        }
        InFormat::Edges => from_edge_list(text, n),
        InFormat::Dot | InFormat::Auto => from_dot(text),
    }
}

fn cmd_check(a: usize, b: usize, format: InFormat, n: Option<usize>, input: Option<PathBuf>) -> Outcome {
    let pat = DoubleStar::new(a, b)?;
    let bytes = match input.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read(p)?,
        _ => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    let g = parse_graph(&bytes, format, n)?;
    let witness = find_double_star(&g, pat);
    let mut v = json!({
        "free": witness.is_none(),
        "n": g.n(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree().unwrap_or(0),
    });
    if let Some(w) = &witness {
        v["witness"] = json!({
            "center_u": w.center_u,
            "center_v": w.center_v,
            "leaves_u": w.leaves_u,
            "leaves_v": w.leaves_v,
        });
    }
    emit(&v);
    Ok(if witness.is_some() { EXIT_CONTAINS } else { 0 })
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>, Failure> {
    s.map(|t| Duration::try_from_secs_f64(t).map_err(|_| Failure::usage(format!("bad time limit {t}"))))
        .transpose()
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    n: usize,
    a: usize,
    b: usize,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    enumerate: bool,
    no_degree_cap: bool,
    no_warm_start: bool,
    threads: usize,
) -> Outcome {
    let cfg = SearchConfig {
        degree_cap_enabled: !no_degree_cap,
        warm_start: !no_warm_start,
        node_limit,
        time_limit: seconds(time_limit)?,
        enumerate_all: enumerate,
        threads,
    };
    let r = max_edges_free(n, a, b, &cfg)?;
    let witnesses = r
        .witnesses
        .iter()
        .map(|f| to_graph6_string(&f.to_graph()))
        .collect::<turan::Result<Vec<_>>>()?;
    emit(&json!({
        "n": n,
        "a": a,
        "b": b,
        "value": r.value,
        "proven_optimal": r.proven_optimal,
        "nodes": r.nodes_explored,
        "witnesses": witnesses,
    }));
    eprintln!(
        "ex({n}, S_{{{a},{b}}}) {} {} ({} nodes, {} witness{})",
        if r.proven_optimal { "=" } else { ">=" },
        r.value,
        r.nodes_explored,
        witnesses.len(),
        if witnesses.len() == 1 { "" } else { "es" }
    );
    Ok(if r.proven_optimal { 0 } else { EXIT_UNPROVEN })
}

#[derive(Serialize)]
struct VerifyRow {
    n: u64,
    a: u64,
    b: u64,
    formula_value: u64,
    construction_edges: Option<usize>,
    construction_free: bool,
    oracle_value: Option<usize>,
    regime: &'static str,
    status: &'static str,
}

#[derive(Serialize, Default)]
struct Summary {
    rows: usize,
    ok: usize,
    mismatch: usize,
    skipped: usize,
}

fn cmd_verify(
    a: Option<Span>,
    b: Option<Span>,
    b_max: Option<u64>,
    n: Option<Span>,
    n_max: Option<u64>,
    oracle_max: u64,
    oracle_time_limit: Option<f64>,
) -> Outcome {
    let cfg = SearchConfig {
        warm_start: false,
        time_limit: seconds(oracle_time_limit)?,
        ..SearchConfig::default()
    };
    let oracle_max = oracle_max.min(MAX_ORACLE_VERTICES as u64);
    let mut rows = Vec::new();
    let mut summary = Summary::default();
    for a in Span::clip(a.as_ref(), None, 3) {
        for b in Span::clip(b.as_ref(), b_max, 40) {
            for n in Span::clip(n.as_ref(), n_max, 120) {
                let Some(f) = ex_dispatch(n, a, b) else { continue };
                let pat = DoubleStar::new(a as usize, b as usize)?;
                let g = extremal_graph(n as usize, a as usize, b as usize);
                let edges = g.as_ref().map(Graph::edge_count);
                let free = g.as_ref().is_some_and(|g| find_double_star(g, pat).is_none());
                let (oracle_value, proven) = if n <= oracle_max {
                    let r = max_edges_free(n as usize, a as usize, b as usize, &cfg)?;
                    (Some(r.value), r.proven_optimal)
                } else {
                    (None, true)
                };
                let agrees = edges == Some(f.value as usize)
                    && free
                    && oracle_value.is_none_or(|v| v as u64 == f.value || !proven);
                let status = match (agrees, proven) {
                    (false, _) => "mismatch",
                    (true, false) => "skipped",
                    (true, true) => "ok",
                };
                match status {
                    "ok" => summary.ok += 1,
                    "skipped" => summary.skipped += 1,
                    _ => summary.mismatch += 1,
                }
                rows.push(VerifyRow {
                    n,
                    a,
                    b,
                    formula_value: f.value,
                    construction_edges: edges,
                    construction_free: free,
                    oracle_value,
                    regime: f.regime.as_str(),
                    status,
                });
            }
        }
    }
    summary.rows = rows.len();
    let mut err = io::stderr().lock();
    let _ = writeln!(err, "{:>4} {:>3} {:>3} {:>8} {:>8} {:>7}  {:<20} status", "n", "a", "b", "formula", "constr", "oracle", "regime");
    for r in &rows {
        let dash = || "-".to_string();
        let _ = writeln!(
            err,
            "{:>4} {:>3} {:>3} {:>8} {:>8} {:>7}  {:<20} {}",
            r.n,
            r.a,
            r.b,
            r.formula_value,
            r.construction_edges.map_or_else(dash, |e| e.to_string()),
            r.oracle_value.map_or_else(dash, |v| v.to_string()),
            r.regime,
            r.status
        );
    }
    let _ = writeln!(
        err,
        "{} rows: {} ok, {} mismatch, {} skipped",
        summary.rows, summary.ok, summary.mismatch, summary.skipped
    );
    let mismatch = summary.mismatch > 0;
    emit(&json!({ "rows": rows, "summary": summary }));
    Ok(if mismatch { 1 } else { 0 })
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Formula { n, a, b, k } => cmd_formula(n, a, b, k),
        Cmd::Construct {
            n,
            a,
            b,
            q,
            family,
            format,
            out,
        } => cmd_construct(n, a, b, q, family, format, out),
        Cmd::Check { a, b, format, n, input } => cmd_check(a, b, format, n, input),
        Cmd::Oracle {
            n,
            a,
            b,
            node_limit,
            time_limit,
            enumerate,
            no_degree_cap,
            no_warm_start,
            threads,
        } => cmd_oracle(n, a, b, node_limit, time_limit, enumerate, no_degree_cap, no_warm_start, threads),
        Cmd::Verify {
            a,
            b,
            b_max,
            n,
            n_max,
            oracle_max,
            oracle_time_limit,
        } => cmd_verify(a, b, b_max, n, n_max, oracle_max, oracle_time_limit),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            emit(&f.body);
            if let Some(msg) = f.body["error"].as_str() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(f.code)
        }
    }
}
