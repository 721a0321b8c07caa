//! Report rendering: one JSON object per line with `--json`, otherwise an
//! aligned table. JSON field names are part of the external interface.

use std::fmt::Write as _;

use artlab_core::galmod::Lemma4Audit;
use artlab_core::lemma2::{Lemma2Report, PairWitness, PrimePowerWitness, WeilThreshold};
use artlab_core::modcurve::{LevelInvariants, Survey};
use artlab_core::{ArtReport, ModulePoint, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

fn points(ps: &[ModulePoint]) -> Vec<&[u64]> {
    ps.iter().map(|p| p.coords()).collect()
}

pub fn art_json(r: &ArtReport) -> Value {
    json!({
        "name": r.name,
        "points": r.total_points,
        "ar_points": points(&r.ar_points),
        "expected": r.expected.as_deref().map(points),
        "verdict": r.verdict.as_str(),
        "ms": r.elapsed.map(|d| d.as_millis() as u64),
    })
}

pub fn lemma2_json(r: &Lemma2Report) -> Value {
    let mut v = json!({
        "e": r.e,
        "max": r.scanned_max,
        "failures": r.failures,
    });
    if let Some(ws) = &r.witnesses {
        v["witnesses"] = ws
            .iter()
            .map(|w| json!([w.modulus(), w.x(), w.y()]))
            .collect();
    }
    v
}

#[derive(Serialize)]
struct LevelJson {
    #[serde(rename = "N")]
    level: u64,
    n: u64,
    genus: u64,
    hyperelliptic: bool,
    plus_genus_zero: bool,
    #[serde(rename = "N_mod_9")]
    level_mod_9: u64,
    three_div_n: bool,
}

pub fn level_json(l: &LevelInvariants) -> Value {
    serde_json::to_value(LevelJson {
        level: l.level,
        n: l.n,
        genus: l.genus,
        hyperelliptic: l.hyperelliptic,
        plus_genus_zero: l.plus_quotient_genus_zero,
        level_mod_9: l.level_mod_9,
        three_div_n: l.three_divides_n,
    })
    .expect("plain struct")
}

pub fn witness_json(w: &PairWitness) -> Value {
    let (u, v) = w.roots();
    json!({"m": w.modulus(), "e": w.exponent(), "x": w.x(), "y": w.y(), "u": u, "v": v})
}

pub fn pair_json(m: u64, e: u64, w: Option<&PairWitness>) -> Value {
    json!({"m": m, "e": e, "pair": w.map(witness_json)})
}

pub fn count_json(e: u64, p: u64, count: u64) -> Value {
    json!({"e": e, "p": p, "count": count, "bound": e * e + 2 * e})
}

pub fn prime_power_json(r: &PrimePowerWitness) -> Value {
    json!({
        "p": r.p,
        "n": r.n,
        "e": r.e,
        "candidate": r.candidate.map(|(x, y)| [x, y]),
        "x_identity": r.x_identity,
        "y_identity": r.y_identity,
        "candidate_valid": r.candidate_valid,
        "fallback": r.used_fallback,
        "witness": r.witness.as_ref().map(witness_json),
    })
}

pub fn threshold_json(t: &WeilThreshold) -> Value {
    json!({
        "e": t.e,
        "bound": t.bound,
        "largest": t.largest,
        "primes": t.primes,
        "weil_cutoff": t.weil_cutoff,
    })
}

pub fn audit_json(a: &Lemma4Audit) -> Value {
    json!({
        "audit": "lemma4",
        "unipotent": a.unipotent.len(),
        "ar_points": a.ar_count,
        "violations": a.violations.len(),
        "verdict": verdict(a.passed()).as_str(),
    })
}

pub fn verdict(pass: bool) -> Verdict {
    if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Per-level survey lines. A line passes when the `⟨C, Σ[3]⟩` comparison
/// passes and, for genus-zero `X₀(N)⁺`, `3 ∤ n`.
pub fn survey_json(s: &Survey) -> Vec<Value> {
    s.records
        .iter()
        .map(|r| {
            let side_ok = !s.side_condition_failures.contains(&r.invariants.level);
            json!({
                "level": level_json(&r.invariants),
                "theorem3": art_json(&r.report),
                "verdict": verdict(side_ok && r.report.verdict == Verdict::Pass).as_str(),
            })
        })
        .collect()
}

pub fn json_lines(values: &[Value]) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&serde_json::to_string(v).expect("json value"));
        out.push('\n');
    }
    out
}

/// Whether any `"verdict"` field in the values (at any depth) is `"fail"`.
pub fn any_failed(values: &[Value]) -> bool {
    fn walk(v: &Value) -> bool {
        match v {
            Value::Object(map) => map
                .iter()
                .any(|(k, v)| (k == "verdict" && v == "fail") || walk(v)),
            Value::Array(items) => items.iter().any(walk),
            _ => false,
        }
    }
    values.iter().any(walk)
}

fn fmt_points(ps: &[&[u64]]) -> String {
    let items: Vec<String> = ps
        .iter()
        .map(|c| {
            if c.len() == 1 {
                c[0].to_string()
            } else {
                let parts: Vec<String> = c.iter().map(u64::to_string).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| i.is_array()) => {
            let ps: Vec<Vec<u64>> = items
                .iter()
                .map(|i| {
                    i.as_array()
                        .unwrap()
                        .iter()
                        .filter_map(Value::as_u64)
                        .collect()
                })
                .collect();
            let refs: Vec<&[u64]> = ps.iter().map(Vec::as_slice).collect();
            fmt_points(&refs)
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", scalar(v)))
                .collect();
            parts.join(" ")
        }
        other => other.to_string(),
    }
}

/// Key/value table for one record; nested objects become indented blocks.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    write_table(&mut out, v, 0);
    out
}

fn write_table(out: &mut String, v: &Value, indent: usize) {
    let Value::Object(map) = v else {
        let _ = writeln!(out, "{:indent$}{}", "", scalar(v));
        return;
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in map {
        if v.is_object() {
            let _ = writeln!(out, "{:indent$}{k}:", "");
            write_table(out, v, indent + 2);
        } else {
            let _ = writeln!(out, "{:indent$}{k:<width$}  {}", "", scalar(v));
        }
    }
}

/// Survey as one row per level.
pub fn survey_table(s: &Survey) -> String {
    if s.records.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6} {:>5} {:>5} {:>5} {:>6} {:>8} {:>7} {:>9} {:>7}",
        "N", "n", "genus", "hyp", "plus0", "N mod 9", "points", "ar_points", "verdict"
    );
    let lines = survey_json(s);
    for (r, line) in s.records.iter().zip(&lines) {
        let i = &r.invariants;
        let _ = writeln!(
            out,
            "{:>6} {:>5} {:>5} {:>5} {:>6} {:>8} {:>7} {:>9} {:>7}",
            i.level,
            i.n,
            i.genus,
            i.hyperelliptic,
            i.plus_quotient_genus_zero,
            i.level_mod_9,
            r.report.total_points,
            r.report.ar_points.len(),
            line["verdict"].as_str().unwrap_or("-"),
        );
    }
    let _ = writeln!(
        out,
        "{} levels, {} pass, {} fail",
        s.records.len(),
        s.passed(),
        s.failed()
    );
    out
}
