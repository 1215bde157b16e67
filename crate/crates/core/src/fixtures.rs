//! Bundled example documents and an end-to-end runner over them.

use std::sync::Arc;

use serde::Serialize;

use crate::bimodule::{
    end_field, fuse, inv_dim, weak_rigidity_check, FoldedCategory, Multiplicity,
};
use crate::closure::{CompositumSystem, DEFAULT_MAX_COMPOSITA};
use crate::document::ContextDocument;
use crate::error::{Error, Result};
use crate::galois::{dual, identity_compositum};
use crate::numberfield::{sweep, OracleContext};
use crate::perm::DEFAULT_MAX_GROUP_ORDER;

pub struct Fixture {
    pub name: &'static str,
    pub json: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "c2_complex",
        json: include_str!("../fixtures/c2_complex.json"),
    },
    Fixture {
        name: "real_complex",
        json: include_str!("../fixtures/real_complex.json"),
    },
    Fixture {
        name: "s3_cbrt2",
        json: include_str!("../fixtures/s3_cbrt2.json"),
    },
    Fixture {
        name: "cyclotomic12",
        json: include_str!("../fixtures/cyclotomic12.json"),
    },
    Fixture {
        name: "single_node",
        json: include_str!("../fixtures/single_node.json"),
    },
];

pub fn fixture(name: &str) -> Result<ContextDocument> {
    let f = FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownLabel(format!("fixture `{name}`")))?;
    ContextDocument::from_json(f.json)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }
}

pub fn closed_fixture(name: &str) -> Result<CompositumSystem> {
    fixture(name)?
        .system(DEFAULT_MAX_GROUP_ORDER)?
        .close(DEFAULT_MAX_COMPOSITA)
}

pub fn run_fixture(name: &str, seed: u64) -> Result<FixtureResult> {
    let sys = closed_fixture(name)?;
    let mut c = Checks(Vec::new());
    c.push("closure", sys.is_fixed_point()?, format!("size {}", sys.composita().len()));
    let base = sys.base_field()?;
    c.push("h_groups", base.groups_closed(), format!("indices {:?}", base.indices));
    let tri = sys.verify_triangles(&base);
    c.push("triangles", tri.all_pass, format!("{} composita", tri.entries.len()));
    let rigid = sys
        .composita()
        .iter()
        .map(weak_rigidity_check)
        .collect::<Result<Vec<_>>>()?;
    c.push("weak_rigidity", rigid.iter().all(|r| r.pass), "");
    let folded = FoldedCategory::from_system(&sys, Multiplicity::Bimodule)?;
    let unfolded = folded.unfold()?;
    c.push(
        "fold_round_trip",
        unfolded.fold() == folded,
        format!("{} objects", unfolded.objects.len()),
    );
    if let Some(real) = sys.context().realization() {
        let oc = OracleContext::new(Arc::clone(real), seed);
        let report = sweep(&oc, &sys);
        c.push(
            "oracle",
            report.all_pass() && report.skipped == 0,
            format!("{} pairs, {} passed", report.pairs, report.passed),
        );
    }

    match name {
        "c2_complex" => {
            let a = sys.find_by_label("A")?;
            let i = identity_compositum(a.source());
            let aa = fuse(a, a)?;
            c.push("simples", sys.composita().len() == 2, "");
            c.push(
                "A(x)A=I",
                aa.terms().len() == 1 && aa.multiplicity(&i) == 1,
                format!("{:?}", aa.terms().values().collect::<Vec<_>>()),
            );
            let e = end_field(a);
            c.push(
                "end_field",
                (e.degree_over_source, e.degree_over_target) == (1, 1),
                "",
            );
            c.push("base_index", base.indices.get("C") == Some(&2), "");
        }
        "real_complex" => {
            c.push("objects", unfolded.objects.len() == 2, "");
            let ends_ok = sys.nodes().all(|n| {
                let e = end_field(&identity_compositum(n));
                (e.degree_over_source, e.degree_over_target) == (1, 1)
            });
            c.push("end_identity", ends_ok, "");
            let v = sys.find_by_label("V")?;
            let vv = fuse(v, &dual(v))?;
            c.push("V(x)V*", inv_dim(&vv, v.source()) == 2, "");
            c.push(
                "base_index",
                base.indices.get("R") == Some(&1) && base.indices.get("C") == Some(&2),
                "",
            );
        }
        "s3_cbrt2" => {
            c.push("h_order", base.h["A"].order() == 6, "");
            c.push("base_index", base.indices.get("A") == Some(&3), "");
            let x = sys.find_by_label("X")?;
            let order = sys.context().ambient().order();
            let mut degrees: Vec<usize> = fuse(x, &dual(x))?
                .terms()
                .keys()
                .map(|y| order / y.group().order())
                .collect();
            degrees.sort();
            c.push("X(x)X*_degrees", degrees == [3, 6], format!("{degrees:?}"));
        }
        "single_node" => {
            c.push("size", sys.composita().len() == 1, "");
        }
        _ => {}
    }
    let pass = c.0.iter().all(|x| x.pass);
    Ok(FixtureResult {
        name: name.to_string(),
        checks: c.0,
        pass,
    })
}

/// Runs one fixture or all of them.
pub fn run_examples(selection: Option<&str>, seed: u64) -> Result<Vec<FixtureResult>> {
    match selection {
        Some(name) => Ok(vec![run_fixture(name, seed)?]),
        None => FIXTURES.iter().map(|f| run_fixture(f.name, seed)).collect(),
    }
}
