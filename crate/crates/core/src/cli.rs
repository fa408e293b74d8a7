//! Command-line front end.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the rendered output together with the exit code, so the binary only has
//! to print and exit. Verdicts are data: exit code 0 whenever the command
//! ran, 1 for usage or input errors, and 2 only under `--assert-feasible`
//! with a negative verdict.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::asymptotic::{cor4_frontier, frontier_grid, FrontierPoint};
use crate::bounds::{
    best_css_params, css_gv_lhs, format_decimal, format_exact, max_k_stab, stab_gv_lhs,
    BoundReport, CssBoundQuery, StabBoundQuery,
};
use crate::codefile::{code_to_json, load_code};
use crate::codesearch::{
    css_distances, enumerate_nested_pairs, gv_witness_search, stab_profile_matrix,
    stab_pure_distances, Distance, DistancePair, SearchParams, WitnessCode,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
    NotFound,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::NotFound => "not_found",
            Status::Error => "error",
        }
    }
}

/// Outcome of one invocation.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "asymgv",
    version,
    about = "Gilbert-Varshamov bounds and witness search for asymmetric quantum codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a finite-length existence condition exactly
    Bound {
        #[command(subcommand)]
        kind: BoundKind,
    },
    /// Largest k meeting the stabilizer condition
    Maxk {
        #[command(subcommand)]
        kind: MaxkKind,
    },
    /// Best (k1, k2) meeting the CSS condition
    Best {
        #[command(subcommand)]
        kind: BestKind,
    },
    /// Trace the asymptotic stabilizer frontier as CSV
    Frontier(FrontierArgs),
    /// Verify the nested-pair counting identities by enumeration
    Lemma(LemmaArgs),
    /// Randomized search for a verified witness code
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Verify the distances of a code file
    Distances(DistancesArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Emit one JSON object on a single line
    #[arg(long)]
    json: bool,
    /// Decimal places for rational values
    #[arg(long, default_value_t = 6)]
    digits: usize,
    /// Exit with status 2 when the verdict is negative
    #[arg(long)]
    assert_feasible: bool,
}

#[derive(Args, Debug)]
struct CssArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    #[arg(long)]
    dx: u32,
    #[arg(long)]
    dz: u32,
}

#[derive(Args, Debug)]
struct StabArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    dx: u32,
    #[arg(long)]
    dz: u32,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    dx: u32,
    #[arg(long)]
    dz: u32,
}

#[derive(Subcommand, Debug)]
enum BoundKind {
    Css {
        #[command(flatten)]
        p: CssArgs,
        #[command(flatten)]
        out: Output,
    },
    Stab {
        #[command(flatten)]
        p: StabArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum MaxkKind {
    Stab {
        #[command(flatten)]
        p: ScanArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum BestKind {
    Css {
        #[command(flatten)]
        p: ScanArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct FrontierArgs {
    #[arg(long)]
    q: u64,
    /// Stabilizer rate R in [0, 1]
    #[arg(long)]
    r: f64,
    /// Number of delta_x grid points
    #[arg(long)]
    points: usize,
    /// CSV destination; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SearchRun {
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// Worker threads (default: machine parallelism); results do not depend on it
    #[arg(long)]
    threads: Option<usize>,
    /// Write the witness code file here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SearchKind {
    Css {
        #[command(flatten)]
        p: CssArgs,
        #[command(flatten)]
        run: SearchRun,
        #[command(flatten)]
        out: Output,
    },
    Stab {
        #[command(flatten)]
        p: StabArgs,
        #[command(flatten)]
        run: SearchRun,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct DistancesArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

/// What a subcommand produced before rendering.
struct Outcome {
    status: Status,
    payload: Map<String, Value>,
    /// Text used instead of the key/value table (frontier CSV on stdout).
    raw: Option<String>,
    json: bool,
    assert_feasible: bool,
}

impl Outcome {
    fn new(status: Status, payload: Map<String, Value>, json: bool) -> Self {
        Outcome {
            status,
            payload,
            raw: None,
            json,
            assert_feasible: false,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    status: Status::Ok,
                    payload: Value::Null,
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => usage_error(text.lines().next().unwrap_or("usage error")),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => render(outcome),
        Err(e) => usage_error(&format!("error: {e}")),
    }
}

fn usage_error(line: &str) -> CommandResult {
    CommandResult {
        status: Status::Error,
        payload: json!({ "status": "error", "error": line }),
        exit_code: 1,
        stdout: String::new(),
        stderr: format!("{line}\n"),
    }
}

fn render(outcome: Outcome) -> CommandResult {
    let mut payload = outcome.payload;
    payload.insert("status".into(), Value::from(outcome.status.as_str()));
    let value = Value::Object(payload);
    let stdout = if let Some(raw) = outcome.raw {
        raw
    } else if outcome.json {
        format!("{}\n", serde_json::to_string(&value).expect("json value"))
    } else {
        table(&value)
    };
    let negative = matches!(outcome.status, Status::Infeasible | Status::NotFound);
    CommandResult {
        status: outcome.status,
        payload: value,
        exit_code: if outcome.assert_feasible && negative { 2 } else { 0 },
        stdout,
        stderr: String::new(),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Two-column aligned table in key order.
fn table(value: &Value) -> String {
    let Value::Object(map) = value else {
        return cell(value);
    };
    let mut rows: Vec<(String, String)> = Vec::new();
    for (k, v) in map {
        match v {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                for item in items {
                    let name = item.get("name").map(cell).unwrap_or_default();
                    let exact = item.get("value").map(cell).unwrap_or_default();
                    let dec = item.get("decimal").map(cell).unwrap_or_default();
                    rows.push((format!("{k}.{name}"), format!("{exact}  ({dec})")));
                }
            }
            Value::Array(items) if items.iter().all(Value::is_array) && !items.is_empty() => {
                for (i, row) in items.iter().enumerate() {
                    let Value::Array(cells) = row else { continue };
                    let line = cells
                        .iter()
                        .map(|c| match c {
                            Value::Bool(true) => "Y",
                            Value::Bool(false) => ".",
                            _ => "?",
                        })
                        .collect::<Vec<_>>()
                        .join(" ");
                    rows.push((format!("{k}[dx={}]", i + 1), line));
                }
            }
            Value::Object(inner) => {
                rows.push((k.clone(), serde_json::to_string(inner).unwrap_or_default()));
            }
            _ => rows.push((k.clone(), cell(v))),
        }
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn rational(r: &BigRational, digits: usize) -> (Value, Value) {
    (
        Value::from(format_exact(r)),
        Value::from(format_decimal(r, digits)),
    )
}

fn report_fields(map: &mut Map<String, Value>, report: &BoundReport, digits: usize) {
    let (exact, dec) = rational(&report.lhs, digits);
    map.insert("lhs".into(), exact);
    map.insert("lhs_decimal".into(), dec);
    map.insert("feasible".into(), Value::from(report.feasible));
    let terms = report
        .terms
        .iter()
        .map(|t| {
            let (exact, dec) = rational(&t.value, digits);
            json!({ "name": t.name, "value": exact, "decimal": dec })
        })
        .collect();
    map.insert("terms".into(), Value::Array(terms));
}

fn distance_value(d: Distance) -> Value {
    match d {
        Distance::Finite(v) => Value::from(v),
        Distance::Unbounded => Value::from("inf"),
    }
}

fn distance_fields(map: &mut Map<String, Value>, d: &DistancePair) {
    map.insert("dx".into(), distance_value(d.dx));
    map.insert("dz".into(), distance_value(d.dz));
}

fn verdict(feasible: bool) -> Status {
    if feasible {
        Status::Ok
    } else {
        Status::Infeasible
    }
}

fn css_query(p: &CssArgs) -> CssBoundQuery {
    CssBoundQuery {
        q: p.q,
        n: p.n,
        k1: p.k1,
        k2: p.k2,
        dx: p.dx,
        dz: p.dz,
    }
}

fn stab_query(p: &StabArgs) -> StabBoundQuery {
    StabBoundQuery {
        q: p.q,
        n: p.n,
        k: p.k,
        dx: p.dx,
        dz: p.dz,
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Bound { kind } => bound(kind),
        Command::Maxk {
            kind: MaxkKind::Stab { p, out },
        } => {
            let k_max = max_k_stab(p.n, p.q, p.dx, p.dz)?;
            let mut map = Map::new();
            map.insert("kind".into(), Value::from("stab"));
            map.insert("q".into(), Value::from(p.q));
            map.insert("n".into(), Value::from(p.n));
            map.insert("dx".into(), Value::from(p.dx));
            map.insert("dz".into(), Value::from(p.dz));
            map.insert("k_max".into(), k_max.map_or(Value::Null, Value::from));
            if let Some(k) = k_max {
                let rep = stab_gv_lhs(&StabBoundQuery {
                    q: p.q,
                    n: p.n,
                    k,
                    dx: p.dx,
                    dz: p.dz,
                })?;
                report_fields(&mut map, &rep, out.digits);
            }
            let mut o = Outcome::new(verdict(k_max.is_some()), map, out.json);
            o.assert_feasible = out.assert_feasible;
            Ok(o)
        }
        Command::Best {
            kind: BestKind::Css { p, out },
        } => {
            let best = best_css_params(p.n, p.q, p.dx, p.dz)?;
            let mut map = Map::new();
            map.insert("kind".into(), Value::from("css"));
            map.insert("q".into(), Value::from(p.q));
            map.insert("n".into(), Value::from(p.n));
            map.insert("dx".into(), Value::from(p.dx));
            map.insert("dz".into(), Value::from(p.dz));
            map.insert("k1".into(), best.map_or(Value::Null, |b| Value::from(b.0)));
            map.insert("k2".into(), best.map_or(Value::Null, |b| Value::from(b.1)));
            map.insert("k".into(), best.map_or(Value::Null, |b| Value::from(b.0 - b.1)));
            if let Some((k1, k2)) = best {
                let rep = css_gv_lhs(&CssBoundQuery {
                    q: p.q,
                    n: p.n,
                    k1,
                    k2,
                    dx: p.dx,
                    dz: p.dz,
                })?;
                report_fields(&mut map, &rep, out.digits);
            }
            let mut o = Outcome::new(verdict(best.is_some()), map, out.json);
            o.assert_feasible = out.assert_feasible;
            Ok(o)
        }
        Command::Frontier(args) => frontier(args),
        Command::Lemma(args) => lemma(args),
        Command::Search { kind } => search(kind),
        Command::Distances(args) => distances(args),
    }
}

fn bound(kind: BoundKind) -> Result<Outcome> {
    let (report, mut map, out) = match kind {
        BoundKind::Css { p, out } => {
            let rep = css_gv_lhs(&css_query(&p))?;
            let mut map = Map::new();
            map.insert("kind".into(), Value::from("css"));
            map.insert("q".into(), Value::from(p.q));
            map.insert("n".into(), Value::from(p.n));
            map.insert("k1".into(), Value::from(p.k1));
            map.insert("k2".into(), Value::from(p.k2));
            map.insert("k".into(), Value::from(p.k1 - p.k2));
            map.insert("dx".into(), Value::from(p.dx));
            map.insert("dz".into(), Value::from(p.dz));
            (rep, map, out)
        }
        BoundKind::Stab { p, out } => {
            let rep = stab_gv_lhs(&stab_query(&p))?;
            let mut map = Map::new();
            map.insert("kind".into(), Value::from("stab"));
            map.insert("q".into(), Value::from(p.q));
            map.insert("n".into(), Value::from(p.n));
            map.insert("k".into(), Value::from(p.k));
            map.insert("dx".into(), Value::from(p.dx));
            map.insert("dz".into(), Value::from(p.dz));
            (rep, map, out)
        }
    };
    report_fields(&mut map, &report, out.digits);
    let mut o = Outcome::new(verdict(report.feasible), map, out.json);
    o.assert_feasible = out.assert_feasible;
    Ok(o)
}

/// Positional decimal with `sig` significant digits, trailing zeros trimmed.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    s
}

/// Frontier CSV: header `delta_x,delta_z_max,R,q`, 12 significant digits.
pub fn frontier_csv(q: u64, points: &[FrontierPoint]) -> String {
    let mut out = String::from("delta_x,delta_z_max,R,q\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{q}",
            format_significant(p.delta_x, 12),
            format_significant(p.delta_z_max, 12),
            format_significant(p.r, 12)
        );
    }
    out
}

fn frontier(args: FrontierArgs) -> Result<Outcome> {
    let grid = frontier_grid(args.q, args.r, args.points)?;
    let points = cor4_frontier(args.q, args.r, &grid)?;
    let csv = frontier_csv(args.q, &points);
    let mut map = Map::new();
    map.insert("q".into(), Value::from(args.q));
    map.insert("r".into(), Value::from(args.r));
    map.insert("points".into(), Value::from(points.len()));
    let mut o = Outcome::new(Status::Ok, map, args.json);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            o.payload
                .insert("out".into(), Value::from(path.display().to_string()));
        }
        None => o.raw = Some(csv),
    }
    Ok(o)
}

fn lemma(args: LemmaArgs) -> Result<Outcome> {
    let rep = enumerate_nested_pairs(args.n, args.q, args.k1, args.k2)?;
    let distinct = |it: Box<dyn Iterator<Item = (usize, u64)> + '_>| {
        let set: std::collections::BTreeSet<u64> = it.map(|(_, c)| c).collect();
        Value::from(set.into_iter().collect::<Vec<_>>())
    };
    let mut map = Map::new();
    map.insert("q".into(), Value::from(args.q));
    map.insert("n".into(), Value::from(args.n));
    map.insert("k1".into(), Value::from(args.k1));
    map.insert("k2".into(), Value::from(args.k2));
    map.insert("total_pairs".into(), Value::from(rep.total_pairs));
    map.insert("errors".into(), Value::from(rep.per_error_x().count()));
    map.insert("expected_x".into(), Value::from(format_exact(&rep.expected_x())));
    map.insert("expected_z".into(), Value::from(format_exact(&rep.expected_z())));
    map.insert("per_error_x".into(), distinct(Box::new(rep.per_error_x())));
    map.insert("per_error_z".into(), distinct(Box::new(rep.per_error_z())));
    let ok = rep.lemma_holds();
    map.insert("lemma_ok".into(), Value::from(ok));
    Ok(Outcome::new(verdict(ok), map, args.json))
}

fn search(kind: SearchKind) -> Result<Outcome> {
    let (params, run, out) = match kind {
        SearchKind::Css { p, run, out } => (SearchParams::Css(css_query(&p)), run, out),
        SearchKind::Stab { p, run, out } => (SearchParams::Stab(stab_query(&p)), run, out),
    };
    let found = gv_witness_search(&params, run.trials, run.seed, run.threads)?;
    let mut map = Map::new();
    let (kind, q, n, dx, dz) = match params {
        SearchParams::Css(p) => {
            map.insert("k1".into(), Value::from(p.k1));
            map.insert("k2".into(), Value::from(p.k2));
            ("css", p.q, p.n, p.dx, p.dz)
        }
        SearchParams::Stab(p) => {
            map.insert("k".into(), Value::from(p.k));
            ("stab", p.q, p.n, p.dx, p.dz)
        }
    };
    map.insert("kind".into(), Value::from(kind));
    map.insert("q".into(), Value::from(q));
    map.insert("n".into(), Value::from(n));
    map.insert("target_dx".into(), Value::from(dx));
    map.insert("target_dz".into(), Value::from(dz));
    map.insert("trials".into(), Value::from(run.trials));
    map.insert("seed".into(), Value::from(run.seed));
    map.insert("found".into(), Value::from(found.is_some()));
    match &found {
        Some(w) => {
            map.insert("trial_index".into(), Value::from(w.trial_index));
            distance_fields(&mut map, &w.distances);
            let text = code_to_json(&w.code);
            if let Some(path) = &run.out {
                std::fs::write(path, format!("{text}\n"))
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            map.insert(
                "code".into(),
                serde_json::from_str(&text).expect("serialized code"),
            );
        }
        None => {
            map.insert("trial_index".into(), Value::Null);
            map.insert("dx".into(), Value::Null);
            map.insert("dz".into(), Value::Null);
        }
    }
    let status = if found.is_some() {
        Status::Ok
    } else {
        Status::NotFound
    };
    let mut o = Outcome::new(status, map, out.json);
    o.assert_feasible = out.assert_feasible;
    Ok(o)
}

fn distances(args: DistancesArgs) -> Result<Outcome> {
    let code = load_code(&args.input)?;
    let mut map = Map::new();
    match &code {
        WitnessCode::Css(pair) => {
            map.insert("kind".into(), Value::from("css"));
            map.insert("q".into(), Value::from(pair.field().order()));
            map.insert("n".into(), Value::from(pair.n()));
            map.insert("k1".into(), Value::from(pair.c1().dim()));
            map.insert("k2".into(), Value::from(pair.c2().dim()));
            map.insert("k".into(), Value::from(pair.k()));
            distance_fields(&mut map, &css_distances(pair)?);
        }
        WitnessCode::Stab(stab) => {
            map.insert("kind".into(), Value::from("stab"));
            map.insert("q".into(), Value::from(stab.field().order()));
            map.insert("n".into(), Value::from(stab.n()));
            map.insert("k".into(), Value::from(stab.k()));
            distance_fields(&mut map, &stab_pure_distances(stab)?);
            let matrix = stab_profile_matrix(stab)?
                .into_iter()
                .map(|row| {
                    Value::Array(
                        row.into_iter()
                            .map(|c| c.map_or(Value::Null, Value::from))
                            .collect(),
                    )
                })
                .collect();
            map.insert("profile".into(), Value::Array(matrix));
        }
    }
    Ok(Outcome::new(Status::Ok, map, args.json))
}
