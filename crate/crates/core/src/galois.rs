//! Fields and abstract composita inside a fixed Galois context.
//!
//! A field `k_A` is represented by its Galois group `G_A = Gal(Ω/k_A)`, a
//! subgroup of the ambient group. A compositum of `k_A` and `k_B` is
//! positioned so that `k_A ⊆ k_V ⊆ Ω`; the second embedding is given by a
//! connecting automorphism `φ_V`, and
//!
//! ```text
//! G_V = G_A ∩ φ_V G_B φ_V⁻¹.
//! ```
//!
//! Only the double coset `G_A φ_V G_B` matters, so composita are stored by
//! their canonical (lexicographically least) representative.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numberfield::Realization;
use crate::perm::{
    self, canonical_rep, conjugate, decompose_into_double_cosets, index, intersect, ElementSet,
    Permutation, Subgroup, DEFAULT_MAX_GROUP_ORDER,
};

/// The ambient group `Gal(Ω/𝔽)` together with an optional concrete
/// number-field realization of `Ω`.
#[derive(Clone, Debug)]
pub struct GaloisContext {
    ambient: Arc<Subgroup>,
    label: String,
    realization: Option<Arc<Realization>>,
}

impl GaloisContext {
    pub fn new(label: impl Into<String>, ambient: Subgroup) -> Result<Self> {
        if !ambient.verify_closed() {
            return Err(Error::NotSubgroup("ambient group is not closed".into()));
        }
        Ok(Self {
            ambient: Arc::new(ambient),
            label: label.into(),
            realization: None,
        })
    }

    pub fn from_generators(
        label: impl Into<String>,
        degree: usize,
        gens: &[Permutation],
        max_order: usize,
    ) -> Result<Self> {
        Self::new(label, perm::subgroup_closure(degree, gens, max_order)?)
    }

    pub fn with_realization(mut self, realization: Arc<Realization>) -> Result<Self> {
        if realization.group() != self.ambient.as_ref() {
            return Err(Error::BadRealization(
                "realization automorphisms do not match the ambient group".into(),
            ));
        }
        self.realization = Some(realization);
        Ok(self)
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn degree(&self) -> usize {
        self.ambient.degree()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn realization(&self) -> Option<&Arc<Realization>> {
        self.realization.as_ref()
    }

    /// Builds a field node whose group is generated by `gens`.
    pub fn field_node(&self, id: impl Into<String>, gens: &[Permutation]) -> Result<FieldNode> {
        for g in gens {
            self.check_member(g)?;
        }
        let group = perm::subgroup_closure(self.degree(), gens, DEFAULT_MAX_GROUP_ORDER)?;
        FieldNode::new(self, id, group)
    }

    fn check_member(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        if !self.ambient.contains(g) {
            return Err(Error::OutsideAmbient(g.to_string()));
        }
        Ok(())
    }
}

/// A field `k_A`, identified by its label; two nodes may share a group.
#[derive(Clone, Debug)]
pub struct FieldNode {
    id: String,
    group: Arc<Subgroup>,
}

impl FieldNode {
    pub fn new(ctx: &GaloisContext, id: impl Into<String>, group: Subgroup) -> Result<Self> {
        if !group.is_subgroup_of(ctx.ambient()) {
            return Err(Error::NotSubgroup(
                "field group is not contained in the ambient group".into(),
            ));
        }
        Ok(Self {
            id: id.into(),
            group: Arc::new(group),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }
}

impl PartialEq for FieldNode {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for FieldNode {}

/// An abstract compositum `k_A → k_V ← k_B`.
#[derive(Clone, Debug)]
pub struct Compositum {
    source: FieldNode,
    target: FieldNode,
    rep: Permutation,
    group: Arc<Subgroup>,
}

impl Compositum {
    pub fn source(&self) -> &FieldNode {
        &self.source
    }

    pub fn target(&self) -> &FieldNode {
        &self.target
    }

    /// Canonical connecting automorphism `φ_V`.
    pub fn rep(&self) -> &Permutation {
        &self.rep
    }

    /// `G_V = G_A ∩ φ_V G_B φ_V⁻¹`.
    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    /// `[k_V : k_A] = [G_A : G_V]`.
    pub fn deg_left(&self) -> usize {
        self.source.group().order() / self.group.order()
    }

    /// `[k_V : k_B] = [G_B : φ_V⁻¹ G_V φ_V]`.
    pub fn deg_right(&self) -> usize {
        self.target.group().order() / self.group.order()
    }

    /// `G_V` transported into the frame of the target node, a subgroup of
    /// `G_B`.
    pub fn group_in_target(&self) -> Subgroup {
        conjugate(&self.group, &self.rep.inverse()).expect("degrees agree")
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.rep.is_identity()
    }

    pub fn double_coset(&self) -> ElementSet {
        perm::double_coset(self.source.group(), &self.rep, self.target.group())
            .expect("degrees agree")
    }

    /// Recomputes `G_V` from scratch and compares with the cached value.
    pub fn verify_group(&self) -> bool {
        let fresh = intersect(
            self.source.group(),
            &conjugate(self.target.group(), &self.rep).expect("degrees agree"),
        )
        .expect("degrees agree");
        fresh == *self.group
            && index(self.source.group(), &self.group).is_ok()
            && index(self.target.group(), &self.group_in_target()).is_ok()
    }

    /// Stable text label, e.g. `A->B[1,2,0]`.
    pub fn canonical_label(&self) -> String {
        if self.is_identity() {
            return format!("I_{}", self.source.id);
        }
        let imgs: Vec<String> = self.rep.images().iter().map(|i| i.to_string()).collect();
        format!("{}->{}[{}]", self.source.id, self.target.id, imgs.join(","))
    }

    fn key(&self) -> (&str, &str, &Permutation) {
        (&self.source.id, &self.target.id, &self.rep)
    }
}

impl PartialEq for Compositum {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Compositum {}

impl PartialOrd for Compositum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Compositum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Compositum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for Compositum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_label())
    }
}

pub fn make_compositum(
    ctx: &GaloisContext,
    a: &FieldNode,
    b: &FieldNode,
    phi: &Permutation,
) -> Result<Compositum> {
    ctx.check_member(phi)?;
    Ok(compositum_unchecked(a, b, phi))
}

pub(crate) fn compositum_unchecked(a: &FieldNode, b: &FieldNode, phi: &Permutation) -> Compositum {
    let rep = canonical_rep(a.group(), phi, b.group()).expect("degrees agree");
    let group = intersect(a.group(), &conjugate(b.group(), &rep).expect("degrees agree"))
        .expect("degrees agree");
    Compositum {
        source: a.clone(),
        target: b.clone(),
        rep,
        group: Arc::new(group),
    }
}

pub fn identity_compositum(a: &FieldNode) -> Compositum {
    Compositum {
        source: a.clone(),
        target: a.clone(),
        rep: Permutation::identity(a.group().degree()),
        group: a.group.clone(),
    }
}

/// The dual compositum `k_B → k_V ← k_A`, with `φ_{V*} = φ_V⁻¹`.
pub fn dual(v: &Compositum) -> Compositum {
    compositum_unchecked(&v.target, &v.source, &v.rep.inverse())
}

/// The product set `G_A φ_V G_B φ_W G_C`.
pub fn amalgamation_set(v: &Compositum, w: &Compositum) -> Result<ElementSet> {
    check_composable(v, w)?;
    let left = v.double_coset();
    let mut out = std::collections::BTreeSet::new();
    for x in left.elements() {
        let xw = x.compose_unchecked(&w.rep);
        for c in w.target.group().elements() {
            out.insert(xw.compose_unchecked(c));
        }
    }
    ElementSet::new(v.rep.degree(), out)
}

/// Decomposes `G_A φ_V G_B φ_W G_C` into `(G_A, G_C)`-double cosets and
/// returns one compositum per coset, sorted by canonical representative.
pub fn amalgamate(v: &Compositum, w: &Compositum) -> Result<Vec<Compositum>> {
    let set = amalgamation_set(v, w)?;
    let reps = decompose_into_double_cosets(&set, v.source.group(), w.target.group())?;
    Ok(reps
        .iter()
        .map(|r| compositum_unchecked(&v.source, &w.target, r))
        .collect())
}

pub(crate) fn check_composable(v: &Compositum, w: &Compositum) -> Result<()> {
    if v.target != w.source {
        return Err(Error::NotComposable {
            left_target: v.target.id.clone(),
            right_source: w.source.id.clone(),
        });
    }
    Ok(())
}
