use std::collections::BTreeMap;
use std::fmt::Write;
use std::io::Read;
use std::sync::Arc;

use compositum::bimodule::{FusionTable, Multiplicity};
use compositum::closure::{CompositumSystem, DEFAULT_MAX_COMPOSITA};
use compositum::document::{realized_base_fields, CloseReport, ContextDocument, FuseReport};
use compositum::fixtures::{run_examples, FIXTURES};
use compositum::numberfield::{sweep, sweep_system, OracleContext, Realization, SweepReport};
use compositum::perm::Permutation;
use compositum::Error;
use serde::Serialize;
use serde_json::json;

use crate::{Cli, Command, Format, Rule};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_THEOREM: u8 = 4;
pub const EXIT_PRECONDITION: u8 = 5;
pub const EXIT_ORACLE: u8 = 6;
pub const EXIT_FIXTURE: u8 = 7;

pub struct Output {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = std::result::Result<(serde_json::Value, String, u8), Failure>;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::GroupOrderCap { .. } | Error::ClosureCap { .. } | Error::DegreeCap { .. } => EXIT_CAP,
        Error::TheoremViolation(_) => EXIT_THEOREM,
        Error::NotConnected
        | Error::NotClosed
        | Error::UnknownLabel(_)
        | Error::UnknownNode(_)
        | Error::NotComposable { .. } => EXIT_PRECONDITION,
        Error::OracleMismatch(_) => EXIT_ORACLE,
        Error::Parse(_)
        | Error::Json(_)
        | Error::InvalidPermutation(_)
        | Error::DegreeMismatch { .. }
        | Error::NotSubgroup(_)
        | Error::OutsideAmbient(_)
        | Error::UnsupportedRealization(_)
        | Error::BadRealization(_)
        | Error::NotIrreducible(_)
        | Error::ZeroPolynomial
        | Error::EmptySubset => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Close { max_composita } => close(cli, *max_composita),
        Command::BaseField => base_field(cli),
        Command::Fuse {
            left,
            right,
            rule,
            table,
        } => fuse(cli, left, right, *rule, *table),
        Command::OracleSweep {
            realization,
            lattice,
        } => oracle_sweep(cli, realization.as_deref(), *lattice),
        Command::Examples { fixture, list } => examples(cli, fixture.as_deref(), *list),
    };
    match result {
        Ok((value, text, code)) => Output {
            stdout: match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
                Format::Text => text.trim_end().to_string(),
            },
            stderr: None,
            code,
        },
        Err(Failure::Usage(msg)) => Output {
            stdout: String::new(),
            stderr: Some(msg),
            code: EXIT_USAGE,
        },
        Err(Failure::Lib(e)) => {
            let code = exit_code(&e);
            let stdout = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "error": e.to_string(),
                    "exit_code": code,
                }))
                .expect("serializable"),
                Format::Text => String::new(),
            };
            Output {
                stdout,
                stderr: Some(e.to_string()),
                code,
            }
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_input(cli: &Cli) -> std::result::Result<Option<ContextDocument>, Failure> {
    let Some(path) = &cli.global.input else {
        return Ok(None);
    };
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    Ok(Some(ContextDocument::from_json(&text)?))
}

fn require_input(cli: &Cli) -> std::result::Result<ContextDocument, Failure> {
    read_input(cli)?.ok_or_else(|| Failure::Usage("--input is required".into()))
}

fn closed_system(cli: &Cli, max_composita: usize) -> std::result::Result<CompositumSystem, Failure> {
    let doc = require_input(cli)?;
    Ok(doc.system(cli.global.max_group_order)?.close(max_composita)?)
}

fn close(cli: &Cli, max_composita: usize) -> Run {
    let closed = closed_system(cli, max_composita)?;
    let report = CloseReport::new(&closed)?;
    let mut text = format!(
        "context {} (ambient order {})\nclosure size {}  fixed point: {}  connected: {}\n",
        report.context, report.ambient_order, report.size, report.fixed_point, report.connected
    );
    for c in &report.composita {
        let _ = writeln!(
            text,
            "  {:<12} {} -> {}  phi {}  |G_V| = {}  degrees ({}, {})",
            c.label, c.source, c.target, c.phi, c.group_order, c.deg_left, c.deg_right
        );
    }
    let code = if report.fixed_point { EXIT_OK } else { EXIT_THEOREM };
    Ok((to_value(&report), text, code))
}

#[derive(Serialize)]
struct GroupSummary {
    order: usize,
    generators: Vec<Permutation>,
}

fn base_field(cli: &Cli) -> Run {
    let closed = closed_system(cli, DEFAULT_MAX_COMPOSITA)?;
    let base = closed.base_field()?;
    let triangles = closed.verify_triangles(&base);
    let realized = realized_base_fields(&closed, &base.h, cli.global.seed)?;
    let h: BTreeMap<&String, GroupSummary> = base
        .h
        .iter()
        .map(|(k, g)| {
            (
                k,
                GroupSummary {
                    order: g.order(),
                    generators: g.generators().to_vec(),
                },
            )
        })
        .collect();
    let groups_closed = base.groups_closed();
    let value = json!({
        "root": base.root,
        "base_label": base.base_label,
        "base_group_order": base.base_group.order(),
        "h": h,
        "indices": base.indices,
        "transport": base.transport,
        "groups_closed": groups_closed,
        "triangles": triangles,
        "realized": realized,
    });
    let mut text = format!(
        "base field {} (root {}, |H| = {})\n",
        base.base_label,
        base.root,
        base.base_group.order()
    );
    for (node, index) in &base.indices {
        let _ = writeln!(text, "  [k_{node} : base] = {index}  |H_{node}| = {}", base.h[node].order());
    }
    let _ = writeln!(text, "H groups closed: {groups_closed}  triangles: {}", triangles.all_pass);
    if let Some(fields) = &realized {
        for f in fields {
            let _ = writeln!(text, "  base seen from {}: degree {}  min poly {}", f.node, f.degree, f.min_poly);
        }
    }
    let code = if groups_closed && triangles.all_pass {
        EXIT_OK
    } else {
        EXIT_THEOREM
    };
    Ok((value, text, code))
}

fn fuse(cli: &Cli, left: &str, right: &str, rule: Rule, table: bool) -> Run {
    let closed = closed_system(cli, DEFAULT_MAX_COMPOSITA)?;
    let rule = match rule {
        Rule::Bimodule => Multiplicity::Bimodule,
        Rule::PerCoset => Multiplicity::PerCoset,
    };
    if table {
        let t = FusionTable::from_system(&closed, rule)?;
        return Ok((to_value(&t), t.to_text(), EXIT_OK));
    }
    let v = closed.find_by_label(left)?;
    let w = closed.find_by_label(right)?;
    if v.target() != w.source() {
        return Err(Error::NotComposable {
            left_target: v.target().id().to_string(),
            right_source: w.source().id().to_string(),
        }
        .into());
    }
    let report = FuseReport::new(&closed, v, w, rule)?;
    let terms: Vec<String> = report
        .terms
        .iter()
        .map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m} {l}") })
        .collect();
    let mut text = format!("{} (x) {} = {}\n", report.left, report.right, terms.join(" + "));
    for s in &report.summands {
        let _ = writeln!(
            text,
            "  middle {}  -> {}  [k_X:Q] = {}  summand degree {}  multiplicity {}",
            s.middle, s.compositum, s.compositum_degree, s.summand_degree, s.multiplicity
        );
    }
    Ok((to_value(&report), text, EXIT_OK))
}

fn parse_realization(spec: &str) -> std::result::Result<Realization, Failure> {
    match spec.split_once(':') {
        Some(("cyclotomic", n)) => {
            let n: usize = n
                .parse()
                .map_err(|_| Failure::Usage(format!("bad cyclotomic order `{n}`")))?;
            Ok(Realization::cyclotomic(n)?)
        }
        None if spec == "s3_x3m2" => Ok(Realization::s3_x3m2()?),
        _ => Err(Failure::Usage(format!(
            "unknown realization `{spec}` (expected cyclotomic:N or s3_x3m2)"
        ))),
    }
}

fn oracle_sweep(cli: &Cli, realization: Option<&str>, lattice: bool) -> Run {
    let (real, system) = match (read_input(cli)?, realization) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage("give either --input or --realization".into()));
        }
        (Some(doc), None) => {
            let sys = doc
                .system(cli.global.max_group_order)?
                .close(DEFAULT_MAX_COMPOSITA)?;
            let real = sys
                .context()
                .realization()
                .cloned()
                .ok_or_else(|| Error::UnsupportedRealization("document has no realization".into()))?;
            if lattice {
                let lat = sweep_system(&real)?;
                (real, lat)
            } else {
                (real, sys)
            }
        }
        (None, Some(spec)) => {
            let real = Arc::new(parse_realization(spec)?);
            let sys = sweep_system(&real)?;
            (real, sys)
        }
        (None, None) => {
            return Err(Failure::Usage("--input or --realization is required".into()));
        }
    };
    let oc = OracleContext::new(real, cli.global.seed).with_max_degree(cli.global.max_degree);
    let report = sweep(&oc, &system);
    let text = sweep_text(&report);
    let code = if !report.failures.is_empty() {
        EXIT_ORACLE
    } else if !report.errors.is_empty() {
        EXIT_INTERNAL
    } else {
        EXIT_OK
    };
    Ok((to_value(&report), text, code))
}

fn sweep_text(r: &SweepReport) -> String {
    let mut text = format!(
        "{}: {} nodes, {} composita, {} pairs: {} agree, {} skipped (degree cap), {} disagree, {} errors\n",
        r.realization,
        r.nodes,
        r.composita,
        r.pairs,
        r.passed,
        r.skipped,
        r.failures.len(),
        r.errors.len()
    );
    for f in &r.failures {
        let _ = writeln!(text, "  mismatch {} (x) {}", f.left, f.right);
    }
    for e in &r.errors {
        let _ = writeln!(text, "  error {e}");
    }
    text
}

fn examples(cli: &Cli, fixture: Option<&str>, list: bool) -> Run {
    if list {
        let names: Vec<&str> = FIXTURES.iter().map(|f| f.name).collect();
        return Ok((json!(names), names.join("\n"), EXIT_OK));
    }
    let results = run_examples(fixture, cli.global.seed)?;
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
        for c in &r.checks {
            let _ = writeln!(
                text,
                "  {} {}{}",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
            );
        }
    }
    let code = if results.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_FIXTURE
    };
    Ok((to_value(&results), text, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_codes() {
        assert_eq!(exit_code(&Error::TheoremViolation("x".into())), EXIT_THEOREM);
        assert_eq!(exit_code(&Error::OracleMismatch("x".into())), EXIT_ORACLE);
        assert_eq!(exit_code(&Error::ClosureCap { cap: 1 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::DegreeCap { degree: 9, cap: 4 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::NotConnected), EXIT_PRECONDITION);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
        assert_eq!(EXIT_FIXTURE, 7);
    }
}
