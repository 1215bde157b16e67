//! Composita as simple bimodules, their fusion, and the folded one-object
//! presentation of a closed system.
//!
//! For `V: A → B` and `W: B → C` the tensor product `k_V ⊗_{k_B} k_W` splits
//! along the `(φ_V⁻¹ G_V φ_V, G_W)`-double cosets `g` in `G_B`. The summand
//! for `g` is the field fixed by
//!
//! ```text
//! S_g = G_V ∩ (φ_V g) G_W (φ_V g)⁻¹
//! ```
//!
//! which, as a `k_A`–`k_C` bimodule, is the compositum at `x = φ_V g φ_W`
//! repeated `[G_A ∩ x G_C x⁻¹ : S_g]` times.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::closure::{BaseFieldResult, CompositumSystem};
use crate::error::{Error, Result};
use crate::galois::{
    check_composable, compositum_unchecked, dual, identity_compositum, Compositum, FieldNode,
};
use crate::perm::{
    conjugate, decompose_into_double_cosets, intersect, Permutation, Subgroup,
};

pub type SimpleOneMorphism = Compositum;

/// How summands of a tensor product are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    /// Each field summand contributes its degree over the compositum.
    #[default]
    Bimodule,
    /// Each field summand contributes one copy.
    PerCoset,
}

/// A finite direct sum of simple 1-morphisms with a common source and target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneMorphism {
    terms: BTreeMap<Compositum, usize>,
}

impl OneMorphism {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn simple(v: &Compositum) -> Self {
        let mut m = Self::zero();
        m.add(v, 1);
        m
    }

    pub fn add(&mut self, v: &Compositum, mult: usize) {
        if mult > 0 {
            *self.terms.entry(v.clone()).or_insert(0) += mult;
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, m) in &other.terms {
            out.add(v, *m);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Compositum, usize> {
        &self.terms
    }

    pub fn multiplicity(&self, v: &Compositum) -> usize {
        self.terms.get(v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Compositum> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.terms.values().sum()
    }

    /// `[k_V : k_A]` summed with multiplicity.
    pub fn left_dim(&self) -> usize {
        self.terms.iter().map(|(v, m)| v.deg_left() * m).sum()
    }

    pub fn right_dim(&self) -> usize {
        self.terms.iter().map(|(v, m)| v.deg_right() * m).sum()
    }
}

/// One field summand of `k_V ⊗_{k_B} k_W`.
#[derive(Clone, Debug)]
pub struct CosetSummand {
    /// Canonical `(φ_V⁻¹ G_V φ_V, G_W)`-double coset representative in `G_B`.
    pub middle: Permutation,
    /// `φ_V g φ_W` before canonicalization.
    pub position: Permutation,
    /// `S_g`, in the frame of the source node.
    pub summand_group: Subgroup,
    /// `G_A ∩ x G_C x⁻¹` for `x = position`.
    pub positioned_group: Subgroup,
    pub compositum: Compositum,
    pub multiplicity: usize,
}

pub fn fuse_cosets(v: &Compositum, w: &Compositum) -> Result<Vec<CosetSummand>> {
    check_composable(v, w)?;
    let gb = v.target().group();
    let gv_right = v.group_in_target();
    let reps = decompose_into_double_cosets(&gb.as_element_set(), &gv_right, w.group())?;
    let mut out = Vec::with_capacity(reps.len());
    for g in reps {
        let vg = v.rep().compose(&g)?;
        let position = vg.compose(w.rep())?;
        let summand_group = intersect(v.group(), &conjugate(w.group(), &vg)?)?;
        let positioned_group = intersect(
            v.source().group(),
            &conjugate(w.target().group(), &position)?,
        )?;
        if !summand_group.is_subgroup_of(&positioned_group) {
            return Err(Error::TheoremViolation(format!(
                "summand group at {g} is not inside its compositum group"
            )));
        }
        let multiplicity = positioned_group.order() / summand_group.order();
        let compositum = compositum_unchecked(v.source(), w.target(), &position);
        out.push(CosetSummand {
            middle: g,
            position,
            summand_group,
            positioned_group,
            compositum,
            multiplicity,
        });
    }
    Ok(out)
}

pub fn fuse_with(v: &Compositum, w: &Compositum, rule: Multiplicity) -> Result<OneMorphism> {
    let mut out = OneMorphism::zero();
    for s in fuse_cosets(v, w)? {
        let m = match rule {
            Multiplicity::Bimodule => s.multiplicity,
            Multiplicity::PerCoset => 1,
        };
        out.add(&s.compositum, m);
    }
    Ok(out)
}

/// `V ⊗ W` with bimodule multiplicities.
pub fn fuse(v: &Compositum, w: &Compositum) -> Result<OneMorphism> {
    fuse_with(v, w, Multiplicity::Bimodule)
}

/// Bilinear extension of [`fuse_with`].
pub fn tensor(m: &OneMorphism, n: &OneMorphism, rule: Multiplicity) -> Result<OneMorphism> {
    let mut out = OneMorphism::zero();
    for (v, a) in &m.terms {
        for (w, b) in &n.terms {
            for (x, c) in fuse_with(v, w, rule)?.terms {
                out.add(&x, a * b * c);
            }
        }
    }
    Ok(out)
}

/// `End(V) = k_V`, described by its group and degrees.
#[derive(Clone, Debug, Serialize)]
pub struct EndField {
    pub group_order: usize,
    pub degree_over_source: usize,
    pub degree_over_target: usize,
}

pub fn end_field(v: &Compositum) -> EndField {
    EndField {
        group_order: v.group().order(),
        degree_over_source: v.deg_left(),
        degree_over_target: v.deg_right(),
    }
}

/// `dim_{k_A} Hom(I_A, M)`: the multiplicity of the identity of `node`.
pub fn inv_dim(m: &OneMorphism, node: &FieldNode) -> usize {
    m.multiplicity(&identity_compositum(node))
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityWitness {
    pub compositum: String,
    pub left: usize,
    pub expected_left: usize,
    pub right: usize,
    pub expected_right: usize,
    pub pass: bool,
}

/// `Hom(I_A, V ⊗ V*) ≅ End(V) ≅ Hom(I_B, V* ⊗ V)` at the level of
/// dimensions.
pub fn weak_rigidity_check(v: &Compositum) -> Result<RigidityWitness> {
    let vs = dual(v);
    let left = inv_dim(&fuse(v, &vs)?, v.source());
    let right = inv_dim(&fuse(&vs, v)?, v.target());
    Ok(RigidityWitness {
        compositum: v.canonical_label(),
        left,
        expected_left: v.deg_left(),
        right,
        expected_right: v.deg_right(),
        pass: left == v.deg_left() && right == v.deg_right(),
    })
}

/// `|H_A| / |G_V|` for `V: A → B`.
pub fn split_count(base: &BaseFieldResult, v: &Compositum) -> Result<usize> {
    let h = base
        .h
        .get(v.source().id())
        .ok_or_else(|| Error::UnknownNode(v.source().id().to_string()))?;
    Ok(h.order() / v.group().order())
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<(String, usize)>,
}

/// Fusion rules of every composable pair in a closed system, keyed by
/// label.
#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    pub rule: Multiplicity,
    pub simples: Vec<String>,
    pub entries: Vec<FusionEntry>,
}

impl FusionTable {
    pub fn from_system(system: &CompositumSystem, rule: Multiplicity) -> Result<Self> {
        if !system.is_closed() {
            return Err(Error::NotClosed);
        }
        let simples: Vec<String> = system.composita().iter().map(|v| system.label_of(v)).collect();
        let mut entries = Vec::new();
        for v in system.composita() {
            for w in system.composita() {
                if v.target() != w.source() {
                    continue;
                }
                let prod = fuse_with(v, w, rule)?;
                let mut terms = Vec::new();
                for (x, m) in prod.terms() {
                    if !system.contains(x) {
                        return Err(Error::TheoremViolation(format!(
                            "{} (x) {} has summand {} outside the closed system",
                            system.label_of(v),
                            system.label_of(w),
                            x
                        )));
                    }
                    terms.push((system.label_of(x), *m));
                }
                entries.push(FusionEntry {
                    left: system.label_of(v),
                    right: system.label_of(w),
                    terms,
                });
            }
        }
        Ok(Self {
            rule,
            simples,
            entries,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One line per composable pair: `V (x) W = 2 X + Y`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let rhs: Vec<String> = e
                .terms
                .iter()
                .map(|(x, m)| if *m == 1 { x.clone() } else { format!("{m} {x}") })
                .collect();
            let _ = writeln!(out, "{} (x) {} = {}", e.left, e.right, rhs.join(" + "));
        }
        out
    }
}

/// The whole system as one category: all composita are simples, fusion of
/// non-composable simples is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldedCategory {
    pub simples: Vec<String>,
    /// Indices into `simples` of the identity objects.
    pub identities: Vec<usize>,
    /// `table[i][j]` lists `(k, multiplicity)`.
    pub table: Vec<Vec<Vec<(usize, usize)>>>,
}

/// The 2-categorical presentation: objects, and simples of each `Hom(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnfoldedCategory {
    pub objects: Vec<String>,
    /// `homs[(a, b)]` lists simple indices.
    pub homs: BTreeMap<(usize, usize), Vec<usize>>,
    pub simples: Vec<String>,
    pub table: Vec<Vec<Vec<(usize, usize)>>>,
}

impl FoldedCategory {
    pub fn from_system(system: &CompositumSystem, rule: Multiplicity) -> Result<Self> {
        if !system.is_closed() {
            return Err(Error::NotClosed);
        }
        let simples: Vec<String> = system.composita().iter().map(|v| system.label_of(v)).collect();
        let index: BTreeMap<&Compositum, usize> = system
            .composita()
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let identities = system
            .composita()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_identity())
            .map(|(i, _)| i)
            .collect();
        let n = simples.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (i, v) in system.composita().iter().enumerate() {
            for (j, w) in system.composita().iter().enumerate() {
                if v.target() != w.source() {
                    continue;
                }
                for (x, m) in fuse_with(v, w, rule)?.terms() {
                    let k = *index.get(x).ok_or(Error::NotClosed)?;
                    table[i][j].push((k, *m));
                }
            }
        }
        Ok(Self {
            simples,
            identities,
            table,
        })
    }

    fn is_unit_for(&self, e: usize, v: usize, left: bool) -> bool {
        let entry = if left { &self.table[e][v] } else { &self.table[v][e] };
        entry.as_slice() == [(v, 1)]
    }

    /// Recovers objects from identity simples and `Hom(A, B)` from
    /// `I_A ⊗ V = V = V ⊗ I_B`.
    pub fn unfold(&self) -> Result<UnfoldedCategory> {
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for v in 0..self.simples.len() {
            let sources: Vec<usize> = (0..self.identities.len())
                .filter(|&a| self.is_unit_for(self.identities[a], v, true))
                .collect();
            let targets: Vec<usize> = (0..self.identities.len())
                .filter(|&b| self.is_unit_for(self.identities[b], v, false))
                .collect();
            match (sources.as_slice(), targets.as_slice()) {
                ([a], [b]) => homs.entry((*a, *b)).or_default().push(v),
                _ => {
                    return Err(Error::RepeatedIdentity(format!(
                        "simple {} has {} left and {} right units",
                        self.simples[v],
                        sources.len(),
                        targets.len()
                    )))
                }
            }
        }
        let objects = self
            .identities
            .iter()
            .map(|&e| self.simples[e].trim_start_matches("I_").to_string())
            .collect();
        Ok(UnfoldedCategory {
            objects,
            homs,
            simples: self.simples.clone(),
            table: self.table.clone(),
        })
    }
}

impl UnfoldedCategory {
    /// Forgets the object structure again.
    pub fn fold(&self) -> FoldedCategory {
        let mut identities = Vec::new();
        for (a, _) in self.objects.iter().enumerate() {
            if let Some(hom) = self.homs.get(&(a, a)) {
                if let Some(&e) = hom.iter().find(|&&v| {
                    self.table[v][v].as_slice() == [(v, 1)]
                        && hom.iter().all(|&w| self.table[v][w].as_slice() == [(w, 1)])
                }) {
                    identities.push(e);
                }
            }
        }
        FoldedCategory {
            simples: self.simples.clone(),
            identities,
            table: self.table.clone(),
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map_or(&[], Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{make_compositum, GaloisContext};

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn real_complex() -> (GaloisContext, FieldNode, FieldNode) {
        let ctx = GaloisContext::from_generators("C/R", 2, &[p(&[1, 0])], 100).unwrap();
        let r = ctx.field_node("R", &[p(&[1, 0])]).unwrap();
        let c = ctx.field_node("C", &[]).unwrap();
        (ctx, r, c)
    }

    #[test]
    fn complex_over_real() {
        let (ctx, r, c) = real_complex();
        let v = make_compositum(&ctx, &r, &c, &p(&[0, 1])).unwrap();
        let vv = fuse(&v, &dual(&v)).unwrap();
        assert_eq!(vv.multiplicity(&identity_compositum(&r)), 2);
        assert_eq!(fuse_with(&v, &dual(&v), Multiplicity::PerCoset).unwrap().total_multiplicity(), 1);
        // C (x)_R C = C x C as C-C bimodules: identity and conjugation
        let ww = fuse(&dual(&v), &v).unwrap();
        assert_eq!(ww.terms().len(), 2);
        assert!(weak_rigidity_check(&v).unwrap().pass);
    }

    #[test]
    fn dimensions_multiply() {
        let (ctx, r, c) = real_complex();
        let v = make_compositum(&ctx, &r, &c, &p(&[0, 1])).unwrap();
        for (x, y) in [(v.clone(), dual(&v)), (dual(&v), v.clone())] {
            let m = fuse(&x, &y).unwrap();
            assert_eq!(m.left_dim(), x.deg_left() * y.deg_left());
        }
    }
}
