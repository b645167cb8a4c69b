//! Command-line front end for power domination with fragile sensors.
//!
//! Exit codes: `0` on success, `1` when a check's outcome contradicts
//! `--expect`, `2` on usage or input errors.

mod render;
mod source;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use fragile_pd::expected::{self, GRID_POINTS};
use fragile_pd::gadgets;
use fragile_pd::propagation;
use fragile_pd::{Graph, Placement};

use source::{GraphArgs, Source};

#[derive(Parser)]
#[command(
    name = "fpd",
    version,
    about = "Power domination with fragile sensors: propagation, exact expected-value polynomials, coefficient-targeting constructions, and placement comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Pass,
    Fail,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run the observation process from an active set.
    Obs {
        #[command(flatten)]
        graph: GraphArgs,
        /// Active vertices (comma-separated identifiers, labels, or named sets).
        #[arg(long, value_name = "SET")]
        set: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute the exact expected-value polynomial of a placement.
    Expol {
        #[command(flatten)]
        graph: GraphArgs,
        /// Sensor placement; tokens may carry a `:multiplicity` suffix.
        #[arg(long, value_name = "PLACEMENT")]
        placement: String,
        /// Maximum support size to enumerate (2^s subsets).
        #[arg(long, default_value_t = expected::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a structural property of the expected-value polynomial.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Compare two equal-size placements by subset observation sums.
    Compare {
        #[command(flatten)]
        graph: GraphArgs,
        /// First placement (a vertex set).
        #[arg(long = "set-a", value_name = "SET")]
        set_a: String,
        /// Second placement (a vertex set).
        #[arg(long = "set-b", value_name = "SET")]
        set_b: String,
        #[arg(long, default_value_t = expected::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build a supergraph hitting target coefficients at the steerable degrees.
    Build {
        /// Job description (JSON file, or `-` for standard input).
        #[arg(long, value_name = "FILE")]
        job: PathBuf,
        /// Write the edge list to `PREFIX.graph` and the report to `PREFIX.json`.
        #[arg(long, value_name = "PREFIX")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo estimate of the expected observation count.
    Mc {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_name = "PLACEMENT")]
        placement: String,
        /// Failure probability, a decimal or a fraction like `1/3`.
        #[arg(long, value_name = "Q")]
        q: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit a built-in family as an edge list plus named-set sidecar.
    Family {
        /// Family name (demo, linear-witness, quadratic, grid, path, cycle,
        /// complete, empty).
        name: String,
        /// Family parameter, repeatable (for example `--param s=4`).
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Write `FILE` (edge list) and `FILE.json` (named sets).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CheckCommon {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = expected::DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Expected outcome; a mismatch exits with status 1.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand)]
enum CheckKind {
    /// Is the expected polynomial linear in the failure probability?
    Linear {
        #[arg(long, value_name = "SET")]
        set: String,
        #[command(flatten)]
        check: CheckCommon,
    },
    /// Does the subset-sum condition for degree at most ELL hold?
    Degree {
        #[arg(long, value_name = "SET")]
        set: String,
        /// Degree bound tested by the condition.
        #[arg(long, value_name = "ELL")]
        ell: usize,
        #[command(flatten)]
        check: CheckCommon,
    },
    /// Do the subset sums satisfy the identity forced by a quadratic shape?
    Quadratic {
        #[arg(long, value_name = "SET")]
        set: String,
        #[command(flatten)]
        check: CheckCommon,
    },
    /// Audit every power coefficient against its sign constraint.
    SignAudit {
        #[arg(long, value_name = "PLACEMENT")]
        placement: String,
        #[command(flatten)]
        check: CheckCommon,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes the finished output, treating a closed pipe as normal termination
/// (for example `fpd ... | head`).
fn emit(text: &str) {
    use std::io::Write as _;
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .is_err()
    {
        std::process::exit(0);
    }
}

fn emit_json(value: &serde_json::Value) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(value)?));
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Obs { graph, set, common } => cmd_obs(&graph, &set, common.format),
        Command::Expol {
            graph,
            placement,
            cap,
            common,
        } => cmd_expol(&graph, &placement, cap, common.format),
        Command::Check { kind } => cmd_check(kind),
        Command::Compare {
            graph,
            set_a,
            set_b,
            cap,
            common,
        } => cmd_compare(&graph, &set_a, &set_b, cap, common.format),
        Command::Build { job, out, common } => cmd_build(&job, out.as_deref(), common.format),
        Command::Mc {
            graph,
            placement,
            q,
            trials,
            seed,
            common,
        } => cmd_mc(&graph, &placement, &q, trials, seed, common.format),
        Command::Family {
            name,
            params,
            out,
            common,
        } => cmd_family(&name, &params, out.as_deref(), common.format),
    }
}

fn cmd_obs(graph: &GraphArgs, set: &str, format: Format) -> Result<bool> {
    let src = graph.load()?;
    let active = source::parse_set(&src, set)?;
    let result = propagation::observe(&src.graph, &active)?;
    let dominating = result.observed.len() == src.graph.order();
    match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "observed ({}): {}",
                result.observed.len(),
                render::vertices(&result.observed)
            )?;
            writeln!(
                out,
                "dominated ({}): {}",
                result.dominated.len(),
                render::vertices(&result.dominated)
            )?;
            let forces = result
                .trace
                .iter()
                .map(|(u, v)| format!("{u}->{v}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "forces ({}): {}", result.trace.len(), forces)?;
            writeln!(out, "power dominating: {dominating}")?;
            emit(&out);
        }
        Format::Json => emit_json(&json!({
            "observed": render::json_set(&result.observed),
            "count": result.observed.len(),
            "dominated": render::json_set(&result.dominated),
            "forces": result.trace,
            "power_dominating": dominating,
        }))?,
    }
    Ok(true)
}

fn cmd_expol(graph: &GraphArgs, placement: &str, cap: usize, format: Format) -> Result<bool> {
    let src = graph.load()?;
    let m = source::parse_placement(&src, placement)?;
    let ex = expected::expected_polynomial_multiset_with_cap(&src.graph, &m, cap)?;
    match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "E(q) = {ex}")?;
            writeln!(
                out,
                "support {}, sensors {}",
                ex.support_size, ex.total_sensors
            )?;
            if let Some(sums) = &ex.bernstein {
                writeln!(out, "subset sums: {}", render::bigints(sums))?;
            }
            emit(&out);
        }
        Format::Json => emit_json(&ex.to_json())?,
    }
    Ok(true)
}

/// Prints the check output and applies `--expect`: returns `false` (exit 1)
/// when the outcome contradicts the expectation.
fn finish_check(
    name: &str,
    verdict: bool,
    detail: serde_json::Value,
    text: &str,
    check: &CheckCommon,
) -> Result<bool> {
    let matched = check
        .expect
        .map(|e| (e == Expect::Pass) == verdict)
        .unwrap_or(true);
    match check.common.format {
        Format::Text => {
            let mut out = text.to_string();
            if let Some(e) = check.expect {
                writeln!(
                    out,
                    "expected {}: {}",
                    match e {
                        Expect::Pass => "pass",
                        Expect::Fail => "fail",
                    },
                    if matched { "as expected" } else { "MISMATCH" }
                )?;
            }
            emit(&out);
        }
        Format::Json => {
            let mut value = json!({
                "check": name,
                "verdict": verdict,
                "matched_expectation": matched,
            });
            for (k, v) in detail.as_object().into_iter().flatten() {
                value[k] = v.clone();
            }
            emit_json(&value)?;
        }
    }
    Ok(matched)
}

fn cmd_check(kind: CheckKind) -> Result<bool> {
    match kind {
        CheckKind::Linear { set, check } => {
            let src = check.graph.load()?;
            let s = source::parse_set(&src, &set)?;
            let verdict = expected::linearity_check_with_cap(&src.graph, &s, check.cap)?;
            finish_check(
                "linear",
                verdict,
                json!({}),
                &format!("linear: {verdict}\n"),
                &check,
            )
        }
        CheckKind::Degree { set, ell, check } => {
            let src = check.graph.load()?;
            let s = source::parse_set(&src, &set)?;
            let report = expected::degree_condition_check_with_cap(&src.graph, &s, ell, check.cap)?;
            finish_check(
                "degree",
                report.condition_holds,
                json!({
                    "ell": ell,
                    "degree_at_most": report.degree_at_most,
                }),
                &format!(
                    "sum condition (ell = {ell}): {}\ndegree at most {ell}: {}\n",
                    report.condition_holds, report.degree_at_most
                ),
                &check,
            )
        }
        CheckKind::Quadratic { set, check } => {
            let src = check.graph.load()?;
            let s = source::parse_set(&src, &set)?;
            let verdict = expected::quadratic_identity_check_with_cap(&src.graph, &s, check.cap)?;
            finish_check(
                "quadratic",
                verdict,
                json!({}),
                &format!("quadratic identity: {verdict}\n"),
                &check,
            )
        }
        CheckKind::SignAudit { placement, check } => {
            let src = check.graph.load()?;
            let m = source::parse_placement(&src, &placement)?;
            let audit = expected::coefficient_sign_audit_with_cap(&src.graph, &m, check.cap)?;
            finish_check(
                "sign-audit",
                audit.pass,
                json!({ "audit": render::sign_audit_json(&audit) }),
                &render::sign_audit_text(&audit),
                &check,
            )
        }
    }
}

fn cmd_compare(
    graph: &GraphArgs,
    set_a: &str,
    set_b: &str,
    cap: usize,
    format: Format,
) -> Result<bool> {
    let src = graph.load()?;
    let a = source::parse_set(&src, set_a)?;
    let b = source::parse_set(&src, set_b)?;
    let report = expected::compare_placements_with_cap(&src.graph, &a, &b, cap)?;
    match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "verdict: {}", render::verdict_text(report.verdict))?;
            writeln!(out, "first sums:  {}", render::bigints(&report.first_sums))?;
            writeln!(out, "second sums: {}", render::bigints(&report.second_sums))?;
            writeln!(out, "grid consistent: {}", report.grid_consistent)?;
            writeln!(
                out,
                "sign of E_first - E_second on q grid: {}",
                render::sign_runs_text(&report.sign_runs, GRID_POINTS)
            )?;
            emit(&out);
        }
        Format::Json => emit_json(&json!({
            "verdict": render::verdict_json(report.verdict),
            "first_sums": render::json_ints(&report.first_sums),
            "second_sums": render::json_ints(&report.second_sums),
            "grid_consistent": report.grid_consistent,
            "sign_runs": report.sign_runs,
        }))?,
    }
    Ok(true)
}

#[derive(serde::Deserialize)]
struct BuildJob {
    /// Host graph as edge-list text.
    graph: String,
    /// Vertex token (identifier or label) to sensor multiplicity.
    placement: BTreeMap<String, usize>,
    /// Degree to target coefficient; keys must be exactly the degrees
    /// reachable by multi-vertex sensor sums.
    targets: BTreeMap<String, serde_json::Number>,
}

fn cmd_build(job: &std::path::Path, out: Option<&std::path::Path>, format: Format) -> Result<bool> {
    let raw = if job.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading job from standard input")?;
        buf
    } else {
        fs::read_to_string(job).with_context(|| format!("reading {}", job.display()))?
    };
    let parsed: BuildJob = serde_json::from_str(&raw).context("parsing build job")?;
    let host = Graph::parse_edge_list(&parsed.graph)?;
    let src = Source {
        graph: host,
        sets: BTreeMap::new(),
    };
    let mut m = Placement::new();
    for (token, &mult) in &parsed.placement {
        let spec = format!("{token}:{mult}");
        let part = source::parse_placement(&src, &spec)?;
        for (v, k) in part.iter() {
            m.add_sensors(v, k)?;
        }
    }
    let mut targets = BTreeMap::new();
    for (k, v) in &parsed.targets {
        let degree: usize = k.parse().with_context(|| format!("target degree {k:?}"))?;
        let value: BigInt = v
            .to_string()
            .parse()
            .with_context(|| format!("target coefficient {v} must be an integer"))?;
        targets.insert(degree, value);
    }
    let report = gadgets::target_coefficients(&src.graph, &m, &targets)?;

    let placement_json: BTreeMap<String, usize> =
        m.iter().map(|(v, k)| (v.to_string(), k)).collect();
    let report_json = json!({
        "host_order": report.host_order,
        "order": report.graph.order(),
        "placement": placement_json,
        "added_leaves": report.added_leaves.iter()
            .map(|(v, k)| (v.to_string(), *k))
            .collect::<BTreeMap<String, usize>>(),
        "choices": report.choices.iter().map(|c| json!({
            "degree": c.degree,
            "support_subset": c.support_subset,
            "fork_path_len": c.fork_path_len,
            "spoon_path_len": c.spoon_path_len,
        })).collect::<Vec<_>>(),
        "polynomial": report.polynomial.to_json(),
    });

    if let Some(prefix) = out {
        let graph_path = PathBuf::from(format!("{}.graph", prefix.display()));
        let json_path = PathBuf::from(format!("{}.json", prefix.display()));
        fs::write(&graph_path, report.graph.to_edge_list())
            .with_context(|| format!("writing {}", graph_path.display()))?;
        fs::write(&json_path, serde_json::to_string_pretty(&report_json)?)
            .with_context(|| format!("writing {}", json_path.display()))?;
        match format {
            Format::Text => emit(&format!(
                "wrote {}\nwrote {}\n",
                graph_path.display(),
                json_path.display()
            )),
            Format::Json => {
                emit_json(&json!({"files": [graph_path, json_path], "report": report_json}))?;
            }
        }
        return Ok(true);
    }

    match format {
        Format::Text => {
            // Comment lines keep the output parseable as an edge list.
            let mut out = String::new();
            writeln!(out, "# expected polynomial: {}", report.polynomial)?;
            writeln!(
                out,
                "# host order {}, built order {}",
                report.host_order,
                report.graph.order()
            )?;
            for (v, k) in &report.added_leaves {
                writeln!(out, "# added {k} leaves at vertex {v}")?;
            }
            for c in &report.choices {
                writeln!(
                    out,
                    "# degree {}: subset {:?}, fork path {}, spoon path {}",
                    c.degree, c.support_subset, c.fork_path_len, c.spoon_path_len
                )?;
            }
            out.push_str(&report.graph.to_edge_list());
            emit(&out);
        }
        Format::Json => {
            let mut value = report_json;
            value["edge_list"] = json!(report.graph.to_edge_list());
            emit_json(&value)?;
        }
    }
    Ok(true)
}

fn cmd_mc(
    graph: &GraphArgs,
    placement: &str,
    q: &str,
    trials: u64,
    seed: u64,
    format: Format,
) -> Result<bool> {
    let src = graph.load()?;
    let m = source::parse_placement(&src, placement)?;
    let q = source::parse_probability(q)?;
    let est = expected::monte_carlo_estimate(&src.graph, &m, q, trials, seed)?;
    match format {
        Format::Text => emit(&format!(
            "mean {:.6}  std error {:.6}  trials {}  (q = {q}, seed {seed})\n",
            est.mean, est.std_error, est.trials
        )),
        Format::Json => emit_json(&json!({
            "mean": est.mean,
            "std_error": est.std_error,
            "trials": est.trials,
            "q": q,
            "seed": seed,
        }))?,
    }
    Ok(true)
}

fn cmd_family(
    name: &str,
    params: &[String],
    out: Option<&std::path::Path>,
    format: Format,
) -> Result<bool> {
    let parsed = params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| anyhow::anyhow!("parameter {p:?} is not of the form K=V"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut map = BTreeMap::new();
    for (k, v) in parsed {
        let v: usize = v.parse().with_context(|| format!("parameter {k}={v}"))?;
        map.insert(k, v);
    }
    let src = source::build_family(name, &map)?;
    let sets_json: BTreeMap<&String, serde_json::Value> = src
        .sets
        .iter()
        .map(|(name, vs)| (name, json!(vs)))
        .collect();
    if let Some(path) = out {
        let sidecar = PathBuf::from(format!("{}.json", path.display()));
        fs::write(path, src.graph.to_edge_list())
            .with_context(|| format!("writing {}", path.display()))?;
        fs::write(
            &sidecar,
            serde_json::to_string_pretty(&json!({ "sets": sets_json }))?,
        )
        .with_context(|| format!("writing {}", sidecar.display()))?;
        match format {
            Format::Text => emit(&format!(
                "wrote {}\nwrote {}\n",
                path.display(),
                sidecar.display()
            )),
            Format::Json => emit_json(&json!({"files": [path, sidecar]}))?,
        }
        return Ok(true);
    }
    match format {
        Format::Text => emit(&src.graph.to_edge_list()),
        Format::Json => emit_json(&json!({
            "order": src.graph.order(),
            "edge_list": src.graph.to_edge_list(),
            "sets": sets_json,
        }))?,
    }
    Ok(true)
}
