//! Command-line front end. Every command builds a [`ReportBundle`] from direct
//! library calls; the text table is rendered from the JSON payload alone.
//!
//! Exit codes: 0 success, 1 internal or I/O failure, 2 bad arguments,
//! 3 failed mathematical precondition, 4 resource cap.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::fixedpoints::enumerate_components_capped;
use crate::gradings::classify;
use crate::grassflow::{chart_inverse_check, component_membership, flow_limit, Action, ChartCheck, Direction, FlowSpec, GrassPoint, Model};
use crate::jordan::{check_axioms, JordanElement};
use crate::linalg::Matrix;
use crate::rational::{format_q, parse_q};
use crate::rootcore::{Family, RootDatum};
use crate::weyl::DEFAULT_ORBIT_CAP;

pub const ORBIT_CAP_ENV: &str = "EQUALIZED_ORBIT_CAP";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub command: String,
    pub params: Value,
    pub payload: Value,
    pub table: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Math(e) => match e {
                Error::InvalidType { .. } | Error::UnknownNode { .. } | Error::Malformed(_) | Error::Mismatch(_) => 2,
                Error::OrbitCap { .. } | Error::ModuleCap { .. } | Error::RankCap { .. } => 4,
                Error::Inconsistent(_) => 1,
                _ => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Math(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Math(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "equalized", version, about = "Equalized C*-actions on rational homogeneous varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
#[group(multiple = false)]
struct Format {
    /// Print the JSON payload.
    #[arg(long)]
    json: bool,
    /// Print the text table (default).
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the gradings sigma_i of a family over a range of ranks.
    Gradings {
        family: String,
        rank_min: usize,
        rank_max: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Fixed-point components of the H_i-action on D(k).
    FixedPoints {
        family: String,
        rank: usize,
        i: usize,
        k: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Regenerate the classification tables into a directory.
    ReportTables { out_dir: std::path::PathBuf },
    /// Jordan inversion and its adjoint on a JSON-encoded element.
    Jordan {
        #[arg(value_enum)]
        op: JordanOp,
        element: String,
        /// Scalar for the homogeneity check.
        #[arg(long, default_value = "5/7", allow_hyphen_values = true)]
        t: String,
    },
    /// Matrix models of the classical actions.
    Flow {
        #[command(subcommand)]
        op: FlowOp,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum JordanOp {
    Invert,
    Cremona,
    Check,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModelArg {
    A,
    B,
    C,
    D,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ActionArg {
    Split,
    Quadric,
}

#[derive(Subcommand, Debug)]
enum FlowOp {
    /// Limit of the flow line through a point.
    Limit {
        #[arg(long, value_enum, ignore_case = true)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// `0` for the sink side, `inf` for the source side.
        #[arg(long)]
        dir: String,
        /// JSON array of rows of rational strings.
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, ignore_case = true)]
        action: Option<ActionArg>,
    },
    /// Re-express span[I; B] in the source chart.
    Chart {
        #[arg(long, value_enum, ignore_case = true)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: String,
    },
}

fn model_of(m: ModelArg) -> Model {
    match m {
        ModelArg::A => Model::A,
        ModelArg::B => Model::B,
        ModelArg::C => Model::C,
        ModelArg::D => Model::D,
    }
}

/// Orbit cap from the environment, falling back to the default.
pub fn orbit_cap() -> CliResult<usize> {
    match std::env::var(ORBIT_CAP_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{ORBIT_CAP_ENV} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_ORBIT_CAP),
    }
}

fn parse_family(s: &str) -> CliResult<Family> {
    Family::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn join(set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        "-".to_string()
    } else {
        set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn join_value(v: &Value) -> String {
    let set: BTreeSet<usize> = v.as_array().into_iter().flatten().filter_map(|x| x.as_u64()).map(|x| x as usize).collect();
    join(&set)
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_gradings(payload: &Value) -> String {
    let mut rows = vec![["type", "node", "short", "balanced", "g-", "g0", "g+"].map(String::from).to_vec()];
    for g in payload.as_array().into_iter().flatten() {
        let dims = &g["dims"];
        rows.push(vec![
            format!("{}{}", g["type"].as_str().unwrap_or("?"), g["rank"]),
            g["node"].to_string(),
            if g["short"].as_bool() == Some(true) { "yes" } else { "no" }.to_string(),
            match g.get("balanced").and_then(Value::as_bool) {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            }
            .to_string(),
            dims[0].to_string(),
            dims[1].to_string(),
            dims[2].to_string(),
        ]);
    }
    aligned(&rows)
}

pub fn render_action(payload: &Value) -> String {
    let amb = &payload["ambient"];
    let mut out = format!(
        "{}({}), sigma_{}: perp {}, dim {}, delta {}\n",
        amb["type"].as_str().unwrap_or("?"),
        amb["k"],
        payload["i"],
        payload["perp"].as_str().unwrap_or("?"),
        payload["ambient_dim"],
        payload["delta"]
    );
    let mut rows = vec![["mu", "J", "component", "dim", "nu-", "nu+", "points"].map(String::from).to_vec()];
    for c in payload["components"].as_array().into_iter().flatten() {
        rows.push(vec![
            c["mu"].to_string(),
            join_value(&c["J"]),
            c["type"].as_str().unwrap_or("?").to_string(),
            c["dim"].to_string(),
            c["nu_minus"].to_string(),
            c["nu_plus"].to_string(),
            c["fixed_points"].to_string(),
        ]);
    }
    out.push_str(&aligned(&rows));
    out
}

pub fn cmd_gradings(family: Family, rank_min: usize, rank_max: usize) -> CliResult<ReportBundle> {
    if rank_min > rank_max {
        return Err(CliError::Usage(format!("empty rank range {rank_min}..{rank_max}")));
    }
    let reports = classify(family, rank_min, rank_max)?;
    let payload = serde_json::to_value(&reports).expect("serializable");
    Ok(ReportBundle {
        command: "gradings".into(),
        params: json!({"family": family, "rank_min": rank_min, "rank_max": rank_max}),
        table: render_gradings(&payload),
        payload,
    })
}

pub fn cmd_fixed_points(family: Family, rank: usize, i: usize, k: usize) -> CliResult<ReportBundle> {
    let datum = RootDatum::simple(family, rank)?;
    let report = enumerate_components_capped(&datum, i, k, orbit_cap()?)?;
    let payload = serde_json::to_value(&report).expect("serializable");
    Ok(ReportBundle {
        command: "fixed-points".into(),
        params: json!({"family": family, "rank": rank, "i": i, "k": k}),
        table: render_action(&payload),
        payload,
    })
}

pub fn cmd_jordan(op: &str, element: &str, t: &str) -> CliResult<ReportBundle> {
    let x: JordanElement =
        serde_json::from_str(element).map_err(|e| CliError::Usage(format!("bad Jordan element: {e}")))?;
    let payload = match op {
        "invert" => serde_json::to_value(x.jinvert()?).expect("serializable"),
        "cremona" => serde_json::to_value(x.cremona()).expect("serializable"),
        "check" => {
            let t = parse_q(t).map_err(|e| CliError::Usage(e.to_string()))?;
            let axioms = check_axioms(&x)?;
            json!({"axioms": axioms, "homogeneous": x.equivariance_check(&t)?, "t": format_q(&t)})
        }
        _ => return Err(CliError::Usage(format!("unknown jordan operation {op:?}"))),
    };
    let table = serde_json::to_string_pretty(&payload).expect("serializable") + "\n";
    Ok(ReportBundle { command: format!("jordan {op}"), params: json!({"element": element}), payload, table })
}

fn parse_matrix(s: &str) -> CliResult<Matrix> {
    let v: Vec<Vec<Value>> = serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad matrix: {e}")))?;
    let rows = v
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| match x {
                    Value::String(s) => parse_q(s).map_err(|e| CliError::Usage(e.to_string())),
                    Value::Number(n) if n.is_i64() => Ok(crate::rational::q(n.as_i64().expect("checked"))),
                    other => Err(CliError::Usage(format!("matrix entry {other} is not a rational"))),
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| CliError::Usage(e.to_string()))
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(format_q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn cmd_flow_limit(model: Model, action: Option<Action>, n: usize, k: usize, dir: &str, matrix: &str) -> CliResult<ReportBundle> {
    let spec = match action {
        Some(a) => FlowSpec::new(model, a, n),
        None => FlowSpec::standard(model, n),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let dir = match dir {
        "0" => Direction::Zero,
        "inf" => Direction::Infinity,
        other => return Err(CliError::Usage(format!("--dir must be 0 or inf, got {other:?}"))),
    };
    let b = parse_matrix(matrix)?;
    if b.cols() != k {
        return Err(CliError::Usage(format!("matrix has {} columns but --k is {k}", b.cols())));
    }
    let p = GrassPoint::new(&spec, b).map_err(|e| CliError::Usage(e.to_string()))?;
    let limit = flow_limit(&p, &spec, dir);
    let member = component_membership(&limit, &spec)?;
    let payload = json!({"limit": matrix_json(limit.basis()), "component": member});
    let table = serde_json::to_string_pretty(&payload).expect("serializable") + "\n";
    Ok(ReportBundle {
        command: "flow limit".into(),
        params: json!({"model": model, "n": n, "k": k, "dir": dir, "matrix": matrix}),
        payload,
        table,
    })
}

pub fn cmd_flow_chart(model: Model, n: usize, matrix: &str) -> CliResult<ReportBundle> {
    let b = parse_matrix(matrix)?;
    let payload = match chart_inverse_check(&b, model, n)? {
        ChartCheck::Inverse { coordinate, matches_inverse } => {
            json!({"coordinate": matrix_json(&coordinate), "matches_inverse": matches_inverse})
        }
        ChartCheck::Indeterminate { rank, limit } => json!({"indeterminate": {"rank": rank, "source_limit": limit}}),
    };
    let table = serde_json::to_string_pretty(&payload).expect("serializable") + "\n";
    Ok(ReportBundle { command: "flow chart".into(), params: json!({"model": model, "n": n, "matrix": matrix}), payload, table })
}

/// Desk-scale parameter sets for the classical tables: `(family, rank, i)`.
pub fn classical_runs() -> Vec<(Family, usize, usize)> {
    let mut runs = vec![];
    for n in 3..=6 {
        for i in 1..=n {
            runs.push((Family::A, n, i));
        }
    }
    for n in 3..=6 {
        runs.push((Family::B, n, 1));
    }
    for n in 3..=6 {
        runs.push((Family::C, n, n));
    }
    for n in 4..=6 {
        runs.extend([(Family::D, n, 1), (Family::D, n, n - 1), (Family::D, n, n)]);
    }
    runs
}

fn summary_by_type(reports: &[crate::gradings::GradingReport], pick: impl Fn(&crate::gradings::GradingReport) -> bool) -> String {
    let mut rows = vec![];
    let mut last = None;
    for g in reports {
        let name = format!("{:?}{}", g.family, g.rank);
        if last.as_ref() != Some(&name) {
            rows.push((name.clone(), BTreeSet::new()));
            last = Some(name);
        }
        if pick(g) {
            rows.last_mut().expect("pushed").1.insert(g.node);
        }
    }
    let lines: Vec<Vec<String>> = rows
        .into_iter()
        .map(|(name, nodes)| {
            let s = if nodes.is_empty() {
                "none".to_string()
            } else {
                nodes.iter().map(|j| format!("sigma_{j}")).collect::<Vec<_>>().join(" ")
            };
            vec![name, s]
        })
        .collect();
    aligned(&lines)
}

/// Writes `<name>.txt` and `<name>.json` for every table.
pub fn cmd_report_tables(out_dir: &Path) -> CliResult<Vec<String>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = vec![];
    let mut emit = |name: &str, text: String, payload: Value| -> CliResult<()> {
        std::fs::write(out_dir.join(format!("{name}.txt")), text)?;
        std::fs::write(
            out_dir.join(format!("{name}.json")),
            serde_json::to_string_pretty(&payload).expect("serializable") + "\n",
        )?;
        written.push(name.to_string());
        Ok(())
    };

    let ranges = [
        (Family::A, 1, 7),
        (Family::B, 2, 7),
        (Family::C, 2, 7),
        (Family::D, 3, 7),
        (Family::E, 6, 8),
        (Family::F, 4, 4),
        (Family::G, 2, 2),
    ];
    let mut all = vec![];
    for (f, lo, hi) in ranges {
        all.extend(classify(f, lo, hi)?);
    }
    let short: Vec<_> = all.iter().filter(|g| g.short).cloned().collect();
    let balanced: Vec<_> = all.iter().filter(|g| g.balanced == Some(true)).cloned().collect();
    emit("table2_short_gradings", summary_by_type(&all, |g| g.short), serde_json::to_value(&short).expect("ok"))?;
    emit(
        "table3_balanced_gradings",
        summary_by_type(&all, |g| g.balanced == Some(true)),
        serde_json::to_value(&balanced).expect("ok"),
    )?;

    let cap = orbit_cap()?;
    let e7 = RootDatum::simple(Family::E, 7)?;
    let mut rows = vec![["k", "Y-", "Y+", "dim", "rank"].map(String::from).to_vec()];
    let mut payload = vec![];
    for k in 1..=7 {
        let r = enumerate_components_capped(&e7, 7, k, cap)?;
        rows.push(vec![
            k.to_string(),
            r.sink().name.clone(),
            r.source().name.clone(),
            r.sink().dim.to_string(),
            r.sink().nu_minus.to_string(),
        ]);
        payload.push(json!({"k": k, "Y_minus": r.sink().name, "Y_plus": r.source().name, "dim": r.sink().dim, "rank": r.sink().nu_minus}));
    }
    emit("table4_e7_extremal", aligned(&rows), Value::Array(payload))?;

    let mut rows = vec![["X", "sigma", "Y-", "rank N-", "Y+", "rank N+", "delta"].map(String::from).to_vec()];
    let mut payload = vec![];
    for g in &balanced {
        if g.family == Family::E && g.rank != 7 {
            continue;
        }
        let d = RootDatum::simple(g.family, g.rank)?;
        for k in 1..=g.rank {
            let r = enumerate_components_capped(&d, g.node, k, cap)?;
            let x = format!("{:?}{}({k})", g.family, g.rank);
            rows.push(vec![
                x.clone(),
                format!("sigma_{}", g.node),
                r.sink().name.clone(),
                r.sink().nu_minus.to_string(),
                r.source().name.clone(),
                r.source().nu_plus.to_string(),
                r.delta.to_string(),
            ]);
            payload.push(json!({
                "X": x, "i": g.node, "Y_minus": r.sink().name, "rank_minus": r.sink().nu_minus,
                "Y_plus": r.source().name, "rank_plus": r.source().nu_plus, "delta": r.delta,
            }));
        }
    }
    emit("table1_balanced_actions", aligned(&rows), Value::Array(payload))?;

    for family in [Family::A, Family::B, Family::C, Family::D] {
        let mut text = String::new();
        let mut payload = vec![];
        for (f, n, i) in classical_runs().into_iter().filter(|r| r.0 == family) {
            let d = RootDatum::simple(f, n)?;
            for k in 1..=n {
                let report = enumerate_components_capped(&d, i, k, cap)?;
                let v = serde_json::to_value(&report).expect("ok");
                let _ = writeln!(text, "{}", render_action(&v));
                payload.push(v);
            }
        }
        emit(&format!("classical_{}", family.letter()), text, Value::Array(payload))?;
    }
    Ok(written)
}

fn dispatch(cli: Cli) -> CliResult<(ReportBundle, bool)> {
    let want_json = |f: Format| f.json;
    match cli.command {
        Command::Gradings { family, rank_min, rank_max, format } => {
            Ok((cmd_gradings(parse_family(&family)?, rank_min, rank_max)?, want_json(format)))
        }
        Command::FixedPoints { family, rank, i, k, format } => {
            Ok((cmd_fixed_points(parse_family(&family)?, rank, i, k)?, want_json(format)))
        }
        Command::ReportTables { out_dir } => {
            let files = cmd_report_tables(&out_dir)?;
            let table = files.iter().map(|f| format!("{f}\n")).collect();
            Ok((
                ReportBundle {
                    command: "report-tables".into(),
                    params: json!({"out_dir": out_dir.display().to_string()}),
                    payload: json!(files),
                    table,
                },
                false,
            ))
        }
        Command::Jordan { op, element, t } => {
            let op = match op {
                JordanOp::Invert => "invert",
                JordanOp::Cremona => "cremona",
                JordanOp::Check => "check",
            };
            Ok((cmd_jordan(op, &element, &t)?, true))
        }
        Command::Flow { op } => match op {
            FlowOp::Limit { model, n, k, dir, matrix, action } => {
                let action = action.map(|a| match a {
                    ActionArg::Split => Action::Split,
                    ActionArg::Quadric => Action::Quadric,
                });
                Ok((cmd_flow_limit(model_of(model), action, n, k, &dir, &matrix)?, true))
            }
            FlowOp::Chart { model, n, matrix } => Ok((cmd_flow_chart(model_of(model), n, &matrix)?, true)),
        },
    }
}

/// Parse arguments, run, print; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli) {
        Ok((bundle, json)) => {
            let text = if json {
                serde_json::to_string_pretty(&bundle.payload).expect("serializable") + "\n"
            } else {
                bundle.table
            };
            match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(_) => 1,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
