//! Command-line surface for the `nonfree` library.
//!
//! Every command writes JSON lines to stdout (or an aligned table with
//! `--table`). Exit codes: 0 result, 1 no result, 2 invalid input.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use nonfree::families::{family_instance, FamilyInstance, FamilyTag};
use nonfree::freeness::{classify_tau, SearchEffort, Status, TauClassification};
use nonfree::halfrel::{
    build_relation, build_semigroup_witness, classify_signs, defect, is_half_relation, poly_hr,
    HalfRelCandidate, RelationKind, RelationWitness,
};
use nonfree::rational::{format_integer_list, parse_integer_list, parse_rational, Rational};
use nonfree::search::{search_half_relations, search_half_relations_with_workers, SearchQuery, SignMode};
use nonfree::sequences::SigmaPair;
use nonfree::word::{eval_word, ExpWord, Generator, Mat2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_RESULT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Worker count for `search` when `--workers` is absent.
pub const WORKERS_ENV: &str = "NONFREE_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "nonfree", version, about = "Exact non-freeness certificates for <g, h_tau>")]
pub struct Cli {
    /// Render aligned tables instead of JSON lines.
    #[arg(long, global = true)]
    pub table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether an exponent tuple is a half-relation at tau.
    Verify(VerifyArgs),
    /// Generate family instances.
    Family(FamilyArgs),
    /// Bounded exhaustive search for half-relations.
    Search(SearchArgs),
    /// Classify tau as free (Schottky), non-free with witness, or unknown.
    Classify(ClassifyArgs),
    /// Print the half-relation polynomial of a tuple.
    Poly(PolyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = tau_arg, allow_hyphen_values = true)]
    pub tau: Rational,
    #[arg(long, value_parser = seq_arg, allow_hyphen_values = true)]
    pub seq: HalfRelCandidate,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// a, b, c, d or e (c_general, c_even, c_quad also accepted).
    #[arg(long)]
    pub name: String,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "k_range", required_unless_present = "k_range")]
    pub k: Option<i64>,
    /// Inclusive range `lo..hi`.
    #[arg(long, value_parser = k_range_arg, allow_hyphen_values = true)]
    pub k_range: Option<(i64, i64)>,
    /// Ordered pair such as `2,3`; required for family b.
    #[arg(long, value_parser = sigma_arg)]
    pub sigma: Option<SigmaPair>,
    /// Variant of family c: general, even or quad.
    #[arg(long)]
    pub variant: Option<String>,
    /// Free last exponent for families c (general) and e.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<i64>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = tau_arg, allow_hyphen_values = true)]
    pub tau: Rational,
    #[arg(long)]
    pub max_len: usize,
    #[arg(long)]
    pub bound: i64,
    /// any, positive or alternating.
    #[arg(long, default_value = "any", value_parser = signs_arg)]
    pub signs: SignMode,
    /// Stop after this many hits.
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = tau_arg, allow_hyphen_values = true)]
    pub tau: Rational,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub bound: Option<i64>,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, value_parser = seq_arg, allow_hyphen_values = true)]
    pub seq: HalfRelCandidate,
}

fn tau_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn seq_arg(s: &str) -> Result<HalfRelCandidate, String> {
    let v = parse_integer_list(s).map_err(|e| e.to_string())?;
    HalfRelCandidate::new(v).map_err(|e| e.to_string())
}

fn sigma_arg(s: &str) -> Result<SigmaPair, String> {
    let v = parse_integer_list(s).map_err(|e| e.to_string())?;
    let small = |b: &BigInt| i64::try_from(b).map_err(|_| format!("sigma entry `{b}` out of range"));
    match v.as_slice() {
        [a, b] => SigmaPair::new(small(a)?, small(b)?).map_err(|e| e.to_string()),
        _ => Err(format!("sigma must be two comma-separated values, got `{s}`")),
    }
}

fn k_range_arg(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected `lo..hi`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("invalid integer `{t}`"));
    let (lo, hi) = (p(lo)?, p(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn signs_arg(s: &str) -> Result<SignMode, String> {
    SignMode::from_name(s).ok_or_else(|| format!("signs must be any, positive or alternating, got `{s}`"))
}

fn family_tag(name: &str, variant: Option<&str>) -> Result<FamilyTag, String> {
    let lower = name.to_ascii_lowercase();
    match (lower.as_str(), variant) {
        ("c", v) => match v.unwrap_or("general") {
            "general" => Ok(FamilyTag::CGeneral),
            "even" => Ok(FamilyTag::CEven),
            "quad" => Ok(FamilyTag::CQuad),
            other => Err(format!("unknown variant `{other}` (general, even, quad)")),
        },
        (_, Some(v)) => Err(format!("--variant {v} only applies to family c")),
        (n, None) => n.parse(),
    }
}

// JSON encoding

pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn word_json(w: &ExpWord) -> Value {
    json!({
        "start": if w.start == Generator::G { "g" } else { "h" },
        "exponents": w.exponents_text(),
        "text": w.to_string(),
    })
}

fn matrix_json(m: &Mat2) -> Value {
    json!([
        [m.e11.to_string(), m.e12.to_string()],
        [m.e21.to_string(), m.e22.to_string()]
    ])
}

pub fn witness_json(w: &RelationWitness) -> Value {
    json!({
        "tau": rational_json(&w.tau),
        "eval_tau": rational_json(&w.eval_tau),
        "kind": w.kind.name(),
        "lhs": word_json(&w.lhs),
        "rhs": word_json(&w.rhs),
        "relator": word_json(&w.relator),
        "value": matrix_json(&w.value),
        "verified": w.verified,
    })
}

fn candidate_json(c: &HalfRelCandidate) -> Value {
    Value::String(format_integer_list(c.exponents()))
}

// JSON decoding, used to re-check records from their own contents

fn word_from_json(v: &Value) -> Option<ExpWord> {
    let start = match v.get("start")?.as_str()? {
        "g" => Generator::G,
        "h" => Generator::H,
        _ => return None,
    };
    let text = v.get("exponents")?.as_str()?;
    let exps = if text.is_empty() {
        Vec::new()
    } else {
        parse_integer_list(text).ok()?
    };
    Some(ExpWord::new(start, exps))
}

fn witness_holds(v: &Value) -> Option<bool> {
    let tau = parse_rational(v.get("eval_tau")?.as_str()?).ok()?;
    let lhs = word_from_json(v.get("lhs")?)?;
    let rhs = word_from_json(v.get("rhs")?)?;
    let relator = word_from_json(v.get("relator")?)?;
    let l = eval_word(&lhs, &tau);
    let nontrivial = !relator.is_empty() && relator.is_reduced();
    Some(nontrivial && l == eval_word(&rhs, &tau) && eval_word(&relator, &tau).is_identity())
}

fn collect_witnesses<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
    match v {
        Value::Object(m) => {
            if m.contains_key("eval_tau") && m.contains_key("lhs") {
                out.push(v);
            }
            m.values().for_each(|x| collect_witnesses(x, out));
        }
        Value::Array(a) => a.iter().for_each(|x| collect_witnesses(x, out)),
        _ => {}
    }
}

/// Re-checks a record using only its serialized fields. `None` when the
/// record carries nothing that can be checked (summaries, unknown statuses).
pub fn reverify(record: &Value) -> Option<bool> {
    let result = record.get("result")?;
    if record.get("command")?.as_str()? == "poly" {
        let seq = parse_integer_list(record.get("inputs")?.get("seq")?.as_str()?).ok()?;
        let p = poly_hr(&HalfRelCandidate::new(seq).ok()?).ok()?;
        let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        let stored: Vec<String> = result
            .get("coefficients")?
            .as_array()?
            .iter()
            .map(|c| c.as_str().map(str::to_string))
            .collect::<Option<_>>()?;
        return Some(coeffs == stored);
    }
    let mut ws = Vec::new();
    collect_witnesses(result, &mut ws);
    if ws.is_empty() {
        return None;
    }
    Some(ws.into_iter().all(|w| witness_holds(w) == Some(true)))
}

// Output

struct Record {
    json: Value,
    row: Option<Vec<(&'static str, String)>>,
    note: Option<String>,
}

fn record(command: &str, inputs: Value, result: Value, verified: bool) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("inputs".into(), inputs);
    m.insert("result".into(), result);
    m.insert("verified".into(), json!(verified));
    Value::Object(m)
}

fn emit<W: Write>(out: &mut W, table: bool, records: &[Record]) -> io::Result<()> {
    if !table {
        for r in records {
            writeln!(out, "{}", serde_json::to_string(&r.json).expect("serializable"))?;
        }
        return Ok(());
    }
    let rows: Vec<&Vec<(&str, String)>> = records.iter().filter_map(|r| r.row.as_ref()).collect();
    if let Some(first) = rows.first() {
        let headers: Vec<&str> = first.iter().map(|(h, _)| *h).collect();
        let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
        for row in &rows {
            for (i, (_, v)) in row.iter().enumerate() {
                widths[i] = widths[i].max(v.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(headers.clone()))?;
        for row in &rows {
            writeln!(out, "{}", line(row.iter().map(|(_, v)| v.as_str()).collect()))?;
        }
    }
    for r in records {
        if let Some(n) = &r.note {
            writeln!(out, "{n}")?;
        }
    }
    Ok(())
}

/// Runs a parsed command, writing records to `out`; returns the exit code.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> i32 {
    let outcome = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Family(a) => cmd_family(a),
        Command::Search(a) => cmd_search(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Poly(a) => cmd_poly(a),
    };
    match outcome {
        Ok((records, code)) => match emit(out, cli.table, &records) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_NO_RESULT
            }
        },
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
    }
}

type Outcome = Result<(Vec<Record>, i32), String>;

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let c = &a.seq;
    let d = defect(c, &a.tau);
    let half = is_half_relation(c, &a.tau);
    let kind = classify_signs(c);
    let witness = if half { build_relation(c, &a.tau).ok() } else { None };
    let semigroup = witness.as_ref().and_then(|_| build_semigroup_witness(c, &a.tau).ok());
    let verified = witness.as_ref().is_some_and(|w| w.verified);
    let poly = poly_hr(c).ok();

    let mut result = json!({
        "defect": rational_json(&d),
        "is_half_relation": half,
        "kind": kind.name(),
    });
    if let Some(p) = &poly {
        result["polynomial"] = json!(p.render());
    }
    if let Some(w) = &witness {
        result["relation"] = witness_json(w);
    }
    if let Some(w) = &semigroup {
        result["semigroup_relation"] = witness_json(w);
    }
    let inputs = json!({"tau": rational_json(&a.tau), "seq": candidate_json(c)});
    let row = vec![
        ("tau", a.tau.to_string()),
        ("seq", c.to_string()),
        ("defect", d.to_string()),
        ("half_relation", half.to_string()),
        ("kind", kind.name().to_string()),
        (
            "relation",
            witness.as_ref().map_or("-".into(), |w| format!("{} = {}", w.lhs, w.rhs)),
        ),
    ];
    let rec = Record {
        json: record("verify", inputs, result, verified),
        row: Some(row),
        note: None,
    };
    Ok((vec![rec], if half { EXIT_OK } else { EXIT_NO_RESULT }))
}

fn family_record(inst: &FamilyInstance, inputs: &Value) -> Record {
    let witness = inst.witness();
    let verified = inst.verify();
    let semigroup = inst.semigroup_witness();
    let kind = inst.kind();
    let semigroup_class = match (&semigroup, kind) {
        (Some(_), RelationKind::SemigroupAtTau) => "positive words at tau",
        (Some(_), RelationKind::SemigroupAtMinusTau) => "positive words at -tau",
        _ => "none",
    };
    let opt = |v: Option<String>| v.map_or(Value::Null, Value::String);
    let mut result = json!({
        "family": inst.family.name(),
        "k": inst.k,
        "sigma": opt(inst.sigma.map(|s| s.to_string())),
        "x": opt(inst.x.as_ref().map(|x| x.to_string())),
        "t": inst.t,
        "n": opt(inst.n.as_ref().map(|n| n.to_string())),
        "tau": rational_json(&inst.tau),
        "candidate": candidate_json(&inst.candidate),
        "exceptional": inst.exceptional,
        "kind": kind.name(),
        "semigroup": semigroup_class,
        "relation": witness_json(&witness),
    });
    if let Some(w) = &semigroup {
        result["semigroup_relation"] = witness_json(w);
    }
    let dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let row = vec![
        ("family", inst.family.name().to_string()),
        ("k", inst.k.to_string()),
        ("sigma", dash(inst.sigma.map(|s| s.to_string()))),
        ("n", dash(inst.n.as_ref().map(|n| n.to_string()))),
        ("tau", inst.tau.to_string()),
        ("candidate", inst.candidate.to_string()),
        ("exceptional", inst.exceptional.to_string()),
        ("kind", kind.name().to_string()),
        ("verified", verified.to_string()),
        ("semigroup", semigroup_class.to_string()),
    ];
    Record {
        json: record("family", inputs.clone(), result, verified),
        row: Some(row),
        note: None,
    }
}

fn cmd_family(a: &FamilyArgs) -> Outcome {
    let tag = family_tag(&a.name, a.variant.as_deref())?;
    if tag == FamilyTag::B && a.sigma.is_none() {
        return Err("family b requires --sigma".into());
    }
    if a.x.is_some() && !tag.takes_x() {
        return Err(format!("--x does not apply to family {tag}"));
    }
    let x = a.x.map(BigInt::from);
    let inputs = json!({
        "name": tag.name(),
        "k": a.k,
        "k_range": a.k_range.map(|(lo, hi)| format!("{lo}..{hi}")),
        "sigma": a.sigma.map(|s| s.to_string()),
        "x": a.x,
    });
    let mut records = Vec::new();
    match (a.k, a.k_range) {
        (Some(k), _) => {
            let inst = family_instance(tag, k, a.sigma, x).map_err(|e| e.to_string())?;
            records.push(family_record(&inst, &inputs));
        }
        (None, Some((lo, hi))) => {
            for k in lo..=hi {
                match family_instance(tag, k, a.sigma, x.clone()) {
                    Ok(inst) => records.push(family_record(&inst, &inputs)),
                    Err(e) => eprintln!("skipping k={k}: {e}"),
                }
            }
        }
        (None, None) => return Err("one of --k or --k-range is required".into()),
    }
    let code = if records.is_empty() { EXIT_NO_RESULT } else { EXIT_OK };
    Ok((records, code))
}

fn cmd_search(a: &SearchArgs) -> Outcome {
    let mut q = SearchQuery::new(a.tau.clone(), a.max_len, a.bound, a.signs);
    q.result_limit = a.limit.or(q.result_limit);
    q.validate().map_err(|e| e.to_string())?;
    if a.workers == Some(0) {
        return Err("workers must be at least 1".into());
    }
    let inputs = json!({
        "tau": rational_json(&a.tau),
        "max_len": a.max_len,
        "bound": a.bound,
        "signs": a.signs.name(),
        "limit": q.result_limit,
        "workers": a.workers,
    });
    let started = Instant::now();
    let report = match a.workers {
        Some(w) => search_half_relations_with_workers(&q, w),
        None => search_half_relations(&q),
    }
    .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();

    let mut records = Vec::new();
    let mut all_verified = true;
    for c in &report.hits {
        let w = build_relation(c, &a.tau).map_err(|e| e.to_string())?;
        all_verified &= w.verified;
        let result = json!({
            "candidate": candidate_json(c),
            "len": c.len(),
            "kind": classify_signs(c).name(),
            "relation": witness_json(&w),
        });
        let row = vec![
            ("len", c.len().to_string()),
            ("candidate", c.to_string()),
            ("kind", classify_signs(c).name().to_string()),
            ("verified", w.verified.to_string()),
        ];
        records.push(Record {
            json: record("search", inputs.clone(), result, w.verified),
            row: Some(row),
            note: None,
        });
    }
    let summary = json!({
        "summary": {
            "hits": report.hits.len(),
            "exhausted": report.exhausted,
            "elapsed_ms": elapsed.as_millis() as u64,
        }
    });
    records.push(Record {
        json: record("search", inputs, summary, all_verified),
        row: None,
        note: Some(format!(
            "{} hit(s), exhausted={}, {} ms",
            report.hits.len(),
            report.exhausted,
            elapsed.as_millis()
        )),
    });
    let code = if report.hits.is_empty() { EXIT_NO_RESULT } else { EXIT_OK };
    Ok((records, code))
}

fn status_json(s: &Status, label: &str) -> Value {
    match s {
        Status::NotFree(c) => json!({
            "status": label,
            "source": c.source,
            "witness": witness_json(&c.witness),
        }),
        _ => json!({ "status": label }),
    }
}

pub fn classification_json(c: &TauClassification) -> Value {
    json!({
        "tau": rational_json(&c.tau),
        "group": status_json(&c.group, c.group_label()),
        "semigroup": status_json(&c.semigroup, c.semigroup_label()),
        "effort": { "max_len": c.effort.max_len, "bound": c.effort.bound },
    })
}

fn cmd_classify(a: &ClassifyArgs) -> Outcome {
    let d = SearchEffort::default();
    let effort = SearchEffort {
        max_len: a.max_len.unwrap_or(d.max_len),
        bound: a.bound.unwrap_or(d.bound),
    };
    let probe = SearchQuery::new(a.tau.clone(), effort.max_len, effort.bound, SignMode::NonzeroAny);
    probe.validate().map_err(|e| e.to_string())?;
    let c = classify_tau(&a.tau, effort);
    let source = |s: &Status| s.certificate().map_or("-".to_string(), |c| c.source.clone());
    let row = vec![
        ("tau", c.tau.to_string()),
        ("group", c.group_label().to_string()),
        ("group_source", source(&c.group)),
        ("semigroup", c.semigroup_label().to_string()),
        ("semigroup_source", source(&c.semigroup)),
    ];
    let inputs = json!({
        "tau": rational_json(&a.tau),
        "max_len": effort.max_len,
        "bound": effort.bound,
    });
    let settled = !(c.group.is_unknown() && c.semigroup.is_unknown());
    let rec = Record {
        json: record("classify", inputs, classification_json(&c), settled && c.witnesses_valid()),
        row: Some(row),
        note: None,
    };
    Ok((vec![rec], if settled { EXIT_OK } else { EXIT_NO_RESULT }))
}

fn cmd_poly(a: &PolyArgs) -> Outcome {
    let p = poly_hr(&a.seq).map_err(|e| e.to_string())?;
    let coeffs: Vec<Value> = p.coeffs().iter().map(|c| json!(c.to_string())).collect();
    let rendering = if p.is_zero() { "0".to_string() } else { p.render() };
    let result = json!({
        "length": a.seq.len(),
        "coefficients": coeffs,
        "rendering": rendering,
    });
    let row = vec![
        ("seq", a.seq.to_string()),
        ("P", rendering.clone()),
    ];
    let rec = Record {
        json: record("poly", json!({"seq": candidate_json(&a.seq)}), result, true),
        row: Some(row),
        note: None,
    };
    Ok((vec![rec], EXIT_OK))
}
