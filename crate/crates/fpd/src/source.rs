//! Graph loading and vertex-token resolution shared by all subcommands.
//!
//! A graph comes either from an edge-list file (with an optional
//! `<file>.json` sidecar of named vertex sets) or from a built-in family.
//! Set and placement arguments are comma-separated tokens; each token is a
//! vertex identifier, a vertex label, or a named set, and placement tokens
//! may carry a `:multiplicity` suffix.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use fragile_pd::families;
use fragile_pd::graph::StandardKind;
use fragile_pd::{Graph, Placement, VertexSet};

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Edge-list file; a `<FILE>.json` sidecar of named sets is honored.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    pub graph: Option<PathBuf>,

    /// Built-in family: demo, linear-witness, quadratic, grid, path, cycle,
    /// complete, empty.
    #[arg(long, value_name = "NAME")]
    pub family: Option<String>,

    /// Family parameter, repeatable (for example `--param s=4`).
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
}

/// A loaded graph plus its named vertex sets.
pub struct Source {
    pub graph: Graph,
    pub sets: BTreeMap<String, Vec<usize>>,
}

impl GraphArgs {
    pub fn load(&self) -> Result<Source> {
        match (&self.graph, &self.family) {
            (Some(path), None) => load_file(path),
            (None, Some(name)) => build_family(name, &parse_params(&self.params)?),
            (None, None) => bail!("one of --graph or --family is required"),
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        }
    }
}

fn parse_params(params: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter {p:?} is not of the form K=V"))?;
        let v: usize = v.parse().with_context(|| format!("parameter {p:?}"))?;
        out.insert(k.to_string(), v);
    }
    Ok(out)
}

fn load_file(path: &Path) -> Result<Source> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graph = Graph::parse_edge_list(&text)?;
    let mut sets = BTreeMap::new();
    let sidecar = PathBuf::from(format!("{}.json", path.display()));
    if sidecar.is_file() {
        let raw = fs::read_to_string(&sidecar)
            .with_context(|| format!("reading {}", sidecar.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&raw).with_context(|| format!("parsing {}", sidecar.display()))?;
        if let Some(obj) = value.get("sets").and_then(|v| v.as_object()) {
            for (name, members) in obj {
                let vs: Vec<usize> = serde_json::from_value(members.clone())
                    .with_context(|| format!("set {name:?} in {}", sidecar.display()))?;
                sets.insert(name.clone(), vs);
            }
        }
    }
    Ok(Source { graph, sets })
}

fn get(params: &BTreeMap<String, usize>, key: &str) -> Result<usize> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| anyhow!("family needs --param {key}=<value>"))
}

pub fn build_family(name: &str, params: &BTreeMap<String, usize>) -> Result<Source> {
    let mut sets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let graph = match name {
        "demo" => {
            let (g, s) = families::demo_base();
            sets.insert("S".into(), s.to_vec());
            g
        }
        "linear-witness" => {
            let (g, s) = families::linear_witness();
            sets.insert("S".into(), s.to_vec());
            g
        }
        "quadratic" => {
            let (g, s) = families::quadratic_family(
                get(params, "t")?,
                get(params, "w")?,
                get(params, "d")?,
                get(params, "s")?,
            )?;
            sets.insert("S".into(), s.to_vec());
            sets.insert("A".into(), g.find_label("a0").into_iter().chain(g.find_label("a1")).collect());
            g
        }
        "grid" => {
            let (g, coords) = families::g_family(get(params, "s")?, get(params, "ell")?)?;
            sets.insert("K".into(), coords.hub().to_vec());
            sets.insert("S".into(), coords.reference().to_vec());
            for i in 1..=coords.s {
                sets.insert(format!("R{i}"), coords.row(i).to_vec());
                sets.insert(format!("F{i}"), coords.fort(i).to_vec());
                sets.insert(format!("L{i}"), coords.pendant(i).to_vec());
            }
            for j in 1..=coords.eta {
                sets.insert(format!("C{j}"), coords.column(j).to_vec());
            }
            g
        }
        "path" | "cycle" | "complete" | "empty" => {
            let kind = match name {
                "path" => StandardKind::Path,
                "cycle" => StandardKind::Cycle,
                "complete" => StandardKind::Complete,
                _ => StandardKind::Empty,
            };
            Graph::standard(kind, get(params, "n")?)?
        }
        other => bail!(
            "unknown family {other:?}; available: demo, linear-witness, quadratic, grid, path, cycle, complete, empty"
        ),
    };
    Ok(Source { graph, sets })
}

/// Resolves one token to vertices: an identifier, a unique label, or a
/// named set.
fn resolve_token(src: &Source, token: &str) -> Result<Vec<usize>> {
    if let Ok(v) = token.parse::<usize>() {
        if v >= src.graph.order() {
            bail!("vertex {v} out of range (order {})", src.graph.order());
        }
        return Ok(vec![v]);
    }
    let labeled = src.graph.find_label(token);
    match labeled.len() {
        1 => return Ok(labeled),
        n if n > 1 => bail!("label {token:?} is ambiguous ({n} vertices)"),
        _ => {}
    }
    if let Some(vs) = src.sets.get(token) {
        return Ok(vs.clone());
    }
    bail!("cannot resolve {token:?} as a vertex identifier, label, or named set")
}

/// Parses a comma-separated set argument.
pub fn parse_set(src: &Source, spec: &str) -> Result<VertexSet> {
    let mut out = VertexSet::new();
    for token in spec.split(',').filter(|t| !t.is_empty()) {
        for v in resolve_token(src, token)? {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Parses a comma-separated placement argument; tokens may carry a
/// `:multiplicity` suffix (default 1), and repeated vertices accumulate.
pub fn parse_placement(src: &Source, spec: &str) -> Result<Placement> {
    let mut out = Placement::new();
    for token in spec.split(',').filter(|t| !t.is_empty()) {
        let (name, mult) = match token.rsplit_once(':') {
            Some((name, m)) => (
                name,
                m.parse::<usize>()
                    .with_context(|| format!("multiplicity in {token:?}"))?,
            ),
            None => (token, 1),
        };
        for v in resolve_token(src, name)? {
            out.add_sensors(v, mult)?;
        }
    }
    Ok(out)
}

/// Parses a probability given as a decimal or a fraction `a/b`.
pub fn parse_probability(text: &str) -> Result<f64> {
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .with_context(|| format!("numerator of {text:?}"))?;
            let den: f64 = den
                .trim()
                .parse()
                .with_context(|| format!("denominator of {text:?}"))?;
            num / den
        }
        None => text
            .trim()
            .parse()
            .with_context(|| format!("probability {text:?}"))?,
    };
    Ok(value)
}
