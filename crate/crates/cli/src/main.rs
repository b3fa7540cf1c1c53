//! `spexlab`: blow-ups, decomposition families, parameter profiles,
//! constructions, spectral radii and exhaustive verification from the
//! command line.
//!
//! Exit status: 0 on success, 1 when an asserted check fails, 2 on usage
//! errors or invalid input, 3 when a computation budget is exceeded (the
//! partial result is still written).

mod output;
mod token;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use spexlab::blowup::{decomposition_family, decomposition_family_oracle, edge_blowup, ORACLE_M_VERTEX_MAX};
use spexlab::constructions::{build_h_family, h_edge_count, ConstructionFamily};
use spexlab::golden::golden_rows;
use spexlab::graph6::graph6_encode;
use spexlab::oracle::{
    ex_bruteforce, hillclimb_spex, spex_bruteforce_capped, verify_instance_capped, SPEX_DEFAULT_MAX_VERTICES,
};
use spexlab::params::{bipartite_subfamily, compute_profile, param_q, FamilySource};
use spexlab::report::{emit_table, TableFormat};
use spexlab::spectral::spectral_radius;
use spexlab::{blowup::strip_isolated, BlowupSpec, Error, Graph, SearchReport};

use output::{envelope, render_flat, render_table, Format, Status};

#[derive(Parser, Debug)]
#[command(name = "spexlab", version, about = "Spectral extremal computations for edge blow-ups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "SPEXLAB_WORKERS")]
    workers: Option<usize>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Forbidden graph: path:t, cycle:t, star:t (t vertices), matching:t (t edges), clique:t, or graph6.
    #[arg(long = "F", value_parser = token::parse_graph)]
    f: Graph,
    /// Clique parameter; the blow-up replaces each edge by K_{p+1}.
    #[arg(long)]
    p: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The edge blow-up F^{p+1}.
    Blowup(Target),
    /// Decomposition family M and its bipartite part M*.
    Decompose {
        #[command(flatten)]
        target: Target,
        /// Truncation of t for the definition-based search.
        #[arg(long, default_value_t = 3)]
        t_max: usize,
        /// Vertex cap for candidate members in the definition-based search.
        #[arg(long, default_value_t = ORACLE_M_VERTEX_MAX)]
        max_n: usize,
        /// Use the definition-based search even when the split family applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Parameter profile (beta, q, B, U, mu, lambda).
    Params(Target),
    /// Lower and upper construction families at order n.
    Construct {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: usize,
        /// Spectral tolerance for member radii.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Certified spectral radius of one graph.
    Spectral {
        /// Graph as graph6.
        #[arg(long, conflicts_with = "f", required_unless_present = "f")]
        graph6: Option<String>,
        /// Graph as a named family token.
        #[arg(long = "F", value_parser = token::parse_graph)]
        f: Option<Graph>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Include the Perron vector.
        #[arg(long)]
        verbose: bool,
    },
    /// Extremal search at order n: exhaustive up to --max-n, hill climbing beyond.
    Search {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Hill-climbing seeds (repeatable).
        #[arg(long = "seed", default_values_t = [0u64])]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = spexlab::oracle::HILLCLIMB_DEFAULT_ITERS)]
        iters: usize,
        #[arg(long, default_value_t = SPEX_DEFAULT_MAX_VERTICES)]
        max_n: usize,
    },
    /// Exhaustive verification of the constructions over an order range.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, conflicts_with_all = ["n_from", "n_to"], required_unless_present_all = ["n_from", "n_to"])]
        n: Option<usize>,
        #[arg(long, requires = "n_to")]
        n_from: Option<usize>,
        #[arg(long, requires = "n_from")]
        n_to: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = SPEX_DEFAULT_MAX_VERTICES)]
        max_n: usize,
        /// Record wall-clock time per order (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Closed-form reference table next to the computed profiles.
    Report,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Blowup(_) => "blowup",
            Command::Decompose { .. } => "decompose",
            Command::Params(_) => "params",
            Command::Construct { .. } => "construct",
            Command::Spectral { .. } => "spectral",
            Command::Search { .. } => "search",
            Command::Verify { .. } => "verify",
            Command::Report => "report",
        }
    }
}

/// A finished command: its status, JSON result and optional text/CSV
/// table (`None` falls back to key/value rendering).
struct Outcome {
    status: Status,
    result: Value,
    table: Option<Table>,
    error: Option<String>,
}

enum Table {
    Reports(Vec<SearchReport>),
    Rows(Vec<String>, Vec<Vec<String>>),
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome { status: Status::Ok, result, table: None, error: None }
    }
}

fn exit_code(status: Status) -> ExitCode {
    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Failed => ExitCode::from(1),
        Status::BudgetExceeded => ExitCode::from(3),
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::InternalInvariantViolation(_) | Error::ConvergenceFailure { .. } => 1,
        _ => 2,
    }
}

fn spec_of(t: &Target) -> Result<BlowupSpec, Error> {
    BlowupSpec::new(strip_isolated(&t.f)?, t.p)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run_blowup(t: &Target) -> Result<Outcome, Error> {
    let spec = spec_of(t)?;
    let g = edge_blowup(&spec)?;
    Ok(Outcome::ok(json!({
        "F": graph6_encode(&spec.f),
        "p": spec.p,
        "n": g.n(),
        "edges": g.edge_count(),
        "graph6": graph6_encode(&g),
    })))
}

fn run_decompose(t: &Target, t_max: usize, max_n: usize, oracle: bool) -> Result<Outcome, Error> {
    let spec = spec_of(t)?;
    let (family, source) = if oracle {
        (decomposition_family_oracle(&spec, t_max, max_n)?, FamilySource::Oracle)
    } else {
        match decomposition_family(&spec) {
            Ok(m) => (m, FamilySource::Splits),
            Err(Error::LemmaInapplicable { .. }) => {
                (decomposition_family_oracle(&spec, t_max, max_n)?, FamilySource::Oracle)
            }
            Err(e) => return Err(e),
        }
    };
    let q = param_q(&family)?;
    let mut result = json!({
        "F": graph6_encode(&spec.f),
        "p": spec.p,
        "source": to_value(&source),
        "M": to_value(&family),
        "q": q,
        "Mstar": to_value(&bipartite_subfamily(&family, q)),
    });
    if source == FamilySource::Oracle {
        result["truncation"] = json!({ "t_max": t_max, "m_vertex_max": max_n });
    }
    Ok(Outcome::ok(result))
}

fn family_json(fam: &ConstructionFamily, tol: f64) -> Result<Value, Error> {
    let mut v = to_value(fam);
    let radii = fam
        .members
        .iter()
        .map(|m| spectral_radius(&m.graph, tol).map(|r| r.summary(false)))
        .collect::<Result<Vec<_>, _>>()?;
    v["rho"] = to_value(&radii);
    v["edge_count"] = json!(h_edge_count(fam.n, fam.p, fam.q, fam.lambda, &fam.b_family)?);
    Ok(v)
}

fn run_construct(t: &Target, n: usize, tol: f64) -> Result<Outcome, Error> {
    let profile = compute_profile(&t.f, t.p)?;
    let lower = build_h_family(n, t.p, profile.q, 1, &profile.b_family)?;
    let upper = match build_h_family(n, t.p, profile.q, profile.lambda, &profile.b_family) {
        Ok(f) => family_json(&f, tol)?,
        Err(Error::InvalidParameters(msg)) => json!({ "unavailable": msg }),
        Err(e) => return Err(e),
    };
    Ok(Outcome::ok(json!({
        "F": graph6_encode(&profile.f),
        "p": t.p,
        "n": n,
        "q": profile.q,
        "lambda": profile.lambda,
        "lower": family_json(&lower, tol)?,
        "upper": upper,
    })))
}

fn run_spectral(graph6: &Option<String>, f: &Option<Graph>, tol: f64, verbose: bool) -> Result<Outcome, Error> {
    let g = match (graph6, f) {
        (Some(s), _) => spexlab::graph6::graph6_decode(s)?,
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(Error::InvalidParameters("give --graph6 or --F".into())),
    };
    let r = spectral_radius(&g, tol)?;
    let mut v = to_value(&r.summary(verbose));
    v["graph6"] = json!(graph6_encode(&g));
    Ok(Outcome::ok(v))
}

fn run_search(t: &Target, n: usize, tol: f64, seeds: &[u64], iters: usize, max_n: usize) -> Result<Outcome, Error> {
    let spec = spec_of(t)?;
    if n <= max_n {
        let (ex, ex_classes) = ex_bruteforce(n, &spec)?;
        let spex = spex_bruteforce_capped(n, &spec, tol, max_n)?;
        return Ok(Outcome::ok(json!({
            "mode": "exhaustive",
            "n": n,
            "p": spec.p,
            "F": graph6_encode(&spec.f),
            "ex": ex,
            "EX": to_value(&ex_classes),
            "spex": spex.value.rho_hat,
            "spex_residual": spex.value.residual_bound,
            "SPEX": to_value(&spex.classes),
            "spex_subset_ex": spex.classes.iter().all(|g| ex_classes.contains(g)),
        })));
    }
    let profile = compute_profile(&spec.f, spec.p)?;
    let start = build_h_family(n, spec.p, profile.q, 1, &profile.b_family)
        .ok()
        .and_then(|fam| fam.members.first().and_then(|m| m.graph.as_graph().cloned()));
    let mut jobs: Vec<(u64, Option<&Graph>)> = seeds.iter().map(|&s| (s, None)).collect();
    if let Some(g) = &start {
        jobs.extend(seeds.iter().map(|&s| (s, Some(g))));
    }
    let runs = jobs
        .par_iter()
        .map(|&(seed, from)| {
            hillclimb_spex(n, &spec, iters, seed, from, tol).map(|(g, r)| {
                json!({
                    "seed": seed,
                    "start": if from.is_some() { "construction" } else { "empty" },
                    "rho": r.rho_hat,
                    "residual": r.residual_bound,
                    "graph6": graph6_encode(&g),
                })
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let construction_rho = match &start {
        Some(g) => Some(spectral_radius(g, tol)?.rho_hat),
        None => None,
    };
    Ok(Outcome::ok(json!({
        "mode": "hillclimb",
        "n": n,
        "p": spec.p,
        "F": graph6_encode(&spec.f),
        "iters": iters,
        "construction_rho": construction_rho,
        "runs": runs,
    })))
}

fn run_verify(t: &Target, range: (usize, usize), tol: f64, max_n: usize, timings: bool) -> Result<Outcome, Error> {
    let spec = spec_of(t)?;
    let profile = compute_profile(&spec.f, spec.p)?;
    let mut reports = Vec::new();
    let mut error = None;
    for n in range.0..=range.1 {
        match verify_instance_capped(n, &spec, &profile, tol, max_n) {
            Ok(mut r) => {
                if !timings {
                    r.runtime_seconds = None;
                }
                reports.push(r);
            }
            Err(e @ Error::BudgetExceeded(_)) => {
                error = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let status = if error.is_some() {
        Status::BudgetExceeded
    } else if reports.iter().all(SearchReport::asserted_ok) {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok(Outcome { status, result: to_value(&reports), table: Some(Table::Reports(reports)), error })
}

fn run_report() -> Result<Outcome, Error> {
    let rows = golden_rows()?;
    let headers: Vec<String> = [
        "instance",
        "p",
        "q",
        "q_closed",
        "beta",
        "beta_closed",
        "mu",
        "mu_closed",
        "lambda",
        "lambda_closed",
        "B",
        "B_closed",
        "match",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let cells = rows
        .iter()
        .map(|r| {
            let (c, e) = (&r.computed, &r.case.expected);
            vec![
                r.case.name.clone(),
                r.case.p.to_string(),
                c.q.to_string(),
                e.q.to_string(),
                c.beta.to_string(),
                e.beta.to_string(),
                c.mu.to_string(),
                e.mu.to_string(),
                c.lambda.to_string(),
                e.lambda.to_string(),
                c.b_family.graph6_list().join(";"),
                e.b_family.graph6_list().join(";"),
                if r.matches { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    let status = if rows.iter().all(|r| r.matches) { Status::Ok } else { Status::Failed };
    Ok(Outcome { status, result: to_value(&rows), table: Some(Table::Rows(headers, cells)), error: None })
}

fn dispatch(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Blowup(t) => run_blowup(t),
        Command::Decompose { target, t_max, max_n, oracle } => run_decompose(target, *t_max, *max_n, *oracle),
        Command::Params(t) => Ok(Outcome::ok(to_value(&compute_profile(&t.f, t.p)?))),
        Command::Construct { target, n, tol } => run_construct(target, *n, *tol),
        Command::Spectral { graph6, f, tol, verbose } => run_spectral(graph6, f, *tol, *verbose),
        Command::Search { target, n, tol, seeds, iters, max_n } => run_search(target, *n, *tol, seeds, *iters, *max_n),
        Command::Verify { target, n, n_from, n_to, tol, max_n, timings } => {
            let range = match (n, n_from, n_to) {
                (Some(n), _, _) => (*n, *n),
                (None, Some(a), Some(b)) => (*a, *b),
                _ => return Err(Error::InvalidParameters("give --n or --n-from and --n-to".into())),
            };
            run_verify(target, range, *tol, *max_n, *timings)
        }
        Command::Report => run_report(),
    }
}

fn render(cli: &Cli, outcome: &Outcome) -> anyhow::Result<String> {
    let name = cli.command.name();
    if cli.format == Format::Json {
        let v = envelope(name, outcome.status, outcome.result.clone(), outcome.error.clone());
        return Ok(serde_json::to_string_pretty(&v)? + "\n");
    }
    let mut text = match &outcome.table {
        Some(Table::Reports(reports)) if !reports.is_empty() => {
            let format = if cli.format == Format::Csv { TableFormat::Csv } else { TableFormat::Text };
            emit_table(reports, format)?
        }
        Some(Table::Reports(_)) => String::new(),
        Some(Table::Rows(h, rows)) => render_table(h, rows, cli.format)?,
        None => render_flat(&outcome.result, cli.format)?,
    };
    if let Some(e) = &outcome.error {
        eprintln!("spexlab {name}: {e}");
        if cli.format == Format::Text {
            text.push_str(&format!("# {e}\n"));
        }
    }
    Ok(text)
}

fn write_output(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("spexlab: cannot configure {w} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let code = error_code(&e);
            let status = if code == 3 { Status::BudgetExceeded } else { Status::Failed };
            eprintln!("spexlab {}: {e}", cli.command.name());
            if code == 3 && cli.format == Format::Json {
                let v = envelope(cli.command.name(), status, Value::Null, Some(e.to_string()));
                let text = serde_json::to_string_pretty(&v).expect("json") + "\n";
                if let Err(io) = write_output(&cli, &text) {
                    eprintln!("spexlab: {io:#}");
                }
            }
            return ExitCode::from(code);
        }
    };
    let text = match render(&cli, &outcome) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("spexlab: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_output(&cli, &text) {
        eprintln!("spexlab: {e:#}");
        return ExitCode::from(1);
    }
    exit_code(outcome.status)
}
