//! Small formatting helpers shared by the subcommands.

use num_bigint::BigInt;
use serde_json::{json, Value};

use fragile_pd::expected::{CoeffClass, ComparisonVerdict, SignAudit};
use fragile_pd::VertexSet;

/// Space-separated vertex list, e.g. `0 1 4`.
pub fn vertices(s: &VertexSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn bigints(cs: &[BigInt]) -> String {
    cs.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A `BigInt` as a JSON number of arbitrary precision.
pub fn json_int(c: &BigInt) -> Value {
    serde_json::from_str::<serde_json::Number>(&c.to_string())
        .expect("integer literal")
        .into()
}

pub fn json_ints(cs: &[BigInt]) -> Value {
    Value::Array(cs.iter().map(json_int).collect())
}

pub fn json_set(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

pub fn verdict_text(v: ComparisonVerdict) -> String {
    match v {
        ComparisonVerdict::Equal => "equal".into(),
        ComparisonVerdict::FirstDominates { strict } => {
            format!("first dominates{}", if strict { " (strict)" } else { "" })
        }
        ComparisonVerdict::SecondDominates { strict } => {
            format!("second dominates{}", if strict { " (strict)" } else { "" })
        }
        ComparisonVerdict::IncomparableBySums => "incomparable by subset sums".into(),
    }
}

pub fn verdict_json(v: ComparisonVerdict) -> Value {
    match v {
        ComparisonVerdict::Equal => json!({"kind": "equal"}),
        ComparisonVerdict::FirstDominates { strict } => {
            json!({"kind": "first-dominates", "strict": strict})
        }
        ComparisonVerdict::SecondDominates { strict } => {
            json!({"kind": "second-dominates", "strict": strict})
        }
        ComparisonVerdict::IncomparableBySums => json!({"kind": "incomparable"}),
    }
}

fn class_name(c: CoeffClass) -> &'static str {
    match c {
        CoeffClass::ForcedZero => "zero",
        CoeffClass::NonPositive => "nonpositive",
        CoeffClass::Unconstrained => "any",
    }
}

pub fn sign_audit_text(audit: &SignAudit) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "constant: {} ({})\n",
        audit.constant,
        if audit.constant_ok { "ok" } else { "MISMATCH" }
    ));
    for e in &audit.entries {
        out.push_str(&format!(
            "q^{}: {:<11} coefficient {} ({})\n",
            e.degree,
            class_name(e.class),
            e.coefficient,
            if e.ok { "ok" } else { "VIOLATION" }
        ));
    }
    out.push_str(&format!(
        "sign audit: {}\n",
        if audit.pass { "pass" } else { "fail" }
    ));
    out
}

pub fn sign_audit_json(audit: &SignAudit) -> Value {
    json!({
        "constant": json_int(&audit.constant),
        "constant_ok": audit.constant_ok,
        "entries": audit.entries.iter().map(|e| json!({
            "degree": e.degree,
            "class": class_name(e.class),
            "coefficient": json_int(&e.coefficient),
            "ok": e.ok,
        })).collect::<Vec<_>>(),
        "pass": audit.pass,
    })
}

pub fn sign_runs_text(runs: &[(usize, usize, i8)], points: usize) -> String {
    let d = points - 1;
    runs.iter()
        .map(|&(a, b, s)| {
            let sign = match s {
                0 => "0",
                x if x > 0 => "+",
                _ => "-",
            };
            format!("[{a}/{d}, {b}/{d}] {sign}")
        })
        .collect::<Vec<_>>()
        .join(", ")
}
