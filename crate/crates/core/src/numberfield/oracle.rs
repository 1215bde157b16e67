//! Independent check of the group-theoretic fusion rule: build
//! `k_V ⊗_{k_B} k_W` from explicit fixed fields, split it, and identify each
//! summand with a compositum by evaluating minimal polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::Serialize;

use super::etale::{decompose_etale, tensor_over, EtaleAlgebra, DEFAULT_RETRIES};
use super::factor::DEFAULT_MAX_DEGREE;
use super::poly::{q, RatPoly, Q};
use super::realize::{embed_fixed, fixed_field, FixedField, Realization};
use crate::bimodule::fuse_cosets;
use crate::closure::CompositumSystem;
use crate::error::{Error, Result};
use crate::galois::{make_compositum, Compositum, FieldNode, GaloisContext};
use crate::perm::{
    conjugate, decompose_into_double_cosets, intersect, subgroup_class_reps, Permutation, Subgroup,
};

/// Fixed fields are cached per subgroup; the cache is shared across checks.
pub struct OracleContext {
    real: Arc<Realization>,
    seed: u64,
    max_degree: usize,
    cache: Mutex<HashMap<Subgroup, Arc<FixedField>>>,
}

impl OracleContext {
    pub fn new(real: Arc<Realization>, seed: u64) -> Self {
        Self {
            real,
            seed,
            max_degree: DEFAULT_MAX_DEGREE,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_max_degree(mut self, max_degree: usize) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn realization(&self) -> &Realization {
        &self.real
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn fixed(&self, h: &Subgroup) -> Result<Arc<FixedField>> {
        if let Some(f) = self.cache.lock().expect("cache lock").get(h) {
            return Ok(f.clone());
        }
        let f = Arc::new(fixed_field(&self.real, h, self.seed)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(h.clone(), f.clone());
        Ok(f)
    }
}

/// One summand as seen by either side of the comparison.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SummandRecord {
    /// Degree of the summand field over ℚ.
    pub degree: usize,
    /// Canonical `(G_A, G_C)`-double coset representative.
    pub class: Permutation,
    /// Degree of the compositum field over ℚ.
    pub compositum_degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub left: String,
    pub right: String,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub oracle: Vec<SummandRecord>,
    pub model: Vec<SummandRecord>,
    pub pass: bool,
}

fn eval_in(alg: &EtaleAlgebra, g: &RatPoly, u: &[Q]) -> Vec<Q> {
    g.coeffs().iter().rev().fold(vec![Q::zero(); alg.dim()], |acc, c| {
        let mut next = alg.mul(&acc, u);
        for (x, o) in next.iter_mut().zip(alg.one()) {
            *x += c * o;
        }
        next
    })
}

fn model_records(v: &Compositum, w: &Compositum, order: usize) -> Result<Vec<SummandRecord>> {
    let mut out: Vec<SummandRecord> = fuse_cosets(v, w)?
        .into_iter()
        .map(|s| SummandRecord {
            degree: order / s.summand_group.order(),
            class: s.compositum.rep().clone(),
            compositum_degree: order / s.compositum.group().order(),
            multiplicity: s.multiplicity,
        })
        .collect();
    out.sort();
    Ok(out)
}

pub fn oracle_check(oc: &OracleContext, v: &Compositum, w: &Compositum) -> Result<OracleReport> {
    let real = oc.realization();
    let order = real.group().order();
    let model = model_records(v, w, order)?;

    let (ga, gb, gc) = (v.source().group(), v.target().group(), w.target().group());
    let fa = oc.fixed(ga)?;
    let fb = oc.fixed(gb)?;
    let fc = oc.fixed(gc)?;
    let fv = oc.fixed(v.group())?;
    let fw = oc.fixed(w.group())?;
    let dim = fv.degree() * fw.degree() / fb.degree();
    if dim > oc.max_degree {
        return Err(Error::DegreeCap {
            degree: dim,
            cap: oc.max_degree,
        });
    }
    let id = Permutation::identity(real.group().degree());
    let ev = embed_fixed(real, &fb, &fv, v.rep())?;
    let ew = embed_fixed(real, &fb, &fw, &id)?;
    let av = embed_fixed(real, &fa, &fv, &id)?;
    let cw = embed_fixed(real, &fc, &fw, w.rep())?;
    let t = tensor_over(&fv.field, &ev, &fw.field, &ew)?;
    let radical_dim = t.algebra.radical_dim();
    if radical_dim != 0 {
        return Err(Error::NotSemisimple(radical_dim));
    }
    let dec = decompose_etale(&t.algebra, oc.seed, DEFAULT_RETRIES)?;
    if !dec.verify(&t.algebra) {
        return Err(Error::Internal("idempotent decomposition failed to verify".into()));
    }

    // separate the (G_A, G_C) classes by minimal polynomials of z_A + s z_C
    let taus = decompose_into_double_cosets(&real.group().as_element_set(), ga, gc)?;
    let mut class_polys: Option<(i64, Vec<RatPoly>)> = None;
    for s in 1..=32i64 {
        let mut polys = Vec::with_capacity(taus.len());
        let mut ok = true;
        for tau in &taus {
            let y = &fa.generator + &real.apply(tau, &fc.generator)?.scale(&q(s));
            let g = real.min_poly_of(&real.omega().reduce(&y))?;
            let expect = order / intersect(ga, &conjugate(gc, tau)?)?.order();
            if g.degree() != Some(expect) || polys.contains(&g) {
                ok = false;
                break;
            }
            polys.push(g);
        }
        if ok {
            class_polys = Some((s, polys));
            break;
        }
    }
    let (s, polys) = class_polys.ok_or(Error::PrimitiveElement(32))?;

    let u_left = t.left(av.image());
    let u_right = t.right(cw.image());
    let u: Vec<_> = u_left
        .iter()
        .zip(&u_right)
        .map(|(a, b)| a + b * q(s))
        .collect();
    // g_τ(u) P_i = 0 exactly when summand i lies over class τ
    let values: Vec<Vec<Q>> = polys.iter().map(|g| eval_in(&t.algebra, g, &u)).collect();
    let mut oracle = Vec::with_capacity(dec.summands.len());
    for summand in &dec.summands {
        let hit: Vec<usize> = (0..taus.len())
            .filter(|&k| {
                t.algebra
                    .mul(&values[k], &summand.idempotent)
                    .iter()
                    .all(|c| c.is_zero())
            })
            .collect();
        let [k] = hit.as_slice() else {
            return Err(Error::OracleMismatch(format!(
                "summand of degree {} matches {} classes",
                summand.dim(),
                hit.len()
            )));
        };
        let gdeg = polys[*k].degree().expect("nonzero");
        oracle.push(SummandRecord {
            degree: summand.dim(),
            class: taus[*k].clone(),
            compositum_degree: gdeg,
            multiplicity: summand.dim() / gdeg,
        });
    }
    oracle.sort();
    let pass = oracle == model;
    Ok(OracleReport {
        left: v.canonical_label(),
        right: w.canonical_label(),
        algebra_dim: t.algebra.dim(),
        radical_dim,
        oracle,
        model,
        pass,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub realization: String,
    pub nodes: usize,
    pub composita: usize,
    pub pairs: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<OracleReport>,
    pub errors: Vec<String>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty() && self.passed + self.skipped == self.pairs
    }
}

/// Every compositum between conjugacy-class representatives of subgroups.
pub fn sweep_system(real: &Arc<Realization>) -> Result<CompositumSystem> {
    let ctx = GaloisContext::new(real.name(), real.group().clone())?.with_realization(real.clone())?;
    let reps = subgroup_class_reps(real.group())?;
    let mut sys = CompositumSystem::new(ctx.clone());
    let mut nodes = Vec::new();
    for (i, h) in reps.into_iter().enumerate() {
        let node = FieldNode::new(&ctx, format!("K{i}"), h)?;
        sys.add_node(node.clone())?;
        nodes.push(node);
    }
    for a in &nodes {
        for b in &nodes {
            let reps = decompose_into_double_cosets(
                &real.group().as_element_set(),
                a.group(),
                b.group(),
            )?;
            for r in reps {
                sys.add_compositum(make_compositum(&ctx, a, b, &r)?, None)?;
            }
        }
    }
    Ok(sys)
}

/// Runs [`oracle_check`] on every composable pair of `system`. Pairs whose
/// tensor algebra exceeds the degree cap are counted as skipped.
pub fn sweep(oc: &OracleContext, system: &CompositumSystem) -> SweepReport {
    let mut report = SweepReport {
        realization: oc.realization().name().to_string(),
        nodes: system.nodes().count(),
        composita: system.composita().len(),
        ..SweepReport::default()
    };
    for v in system.composita() {
        for w in system.composita().iter().filter(|w| w.source() == v.target()) {
            report.pairs += 1;
            match oracle_check(oc, v, w) {
                Ok(r) if r.pass => report.passed += 1,
                Ok(r) => report.failures.push(r),
                Err(Error::DegreeCap { .. }) => report.skipped += 1,
                Err(e) => report.errors.push(format!("{v} (x) {w}: {e}")),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_self_tensor_of_cubic() {
        let real = Arc::new(Realization::s3_x3m2().unwrap());
        let ctx = GaloisContext::new("s3", real.group().clone())
            .unwrap()
            .with_realization(real.clone())
            .unwrap();
        let swap = Permutation::new(vec![0, 2, 1]).unwrap();
        let a = ctx.field_node("A", &[swap]).unwrap();
        let v = make_compositum(&ctx, &a, &a, &Permutation::new(vec![1, 2, 0]).unwrap()).unwrap();
        let oc = OracleContext::new(real, 11);
        let r = oracle_check(&oc, &v, &crate::galois::dual(&v)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.algebra_dim, 36 / 6 * 6 / 3);
    }
}
