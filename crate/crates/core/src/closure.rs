//! Saturation of a compositum system under identities, duals and
//! amalgamation, and extraction of the common base field.
//!
//! For a closed system the union `H_A = ⋃_{V ∈ E_{A,A}} G_A φ_V G_A` is a
//! group containing `G_A` with finite index, and the connecting
//! automorphisms conjugate `H_B` onto `H_A`. The fixed field of `H_A` is the
//! base field `k` seen from node `A`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{
    amalgamate, dual, identity_compositum, Compositum, FieldNode, GaloisContext,
};
use crate::perm::{conjugate, ElementSet, Permutation, Subgroup};

/// Default cap on the number of composita produced by [`CompositumSystem::close`].
pub const DEFAULT_MAX_COMPOSITA: usize = 5_000;

/// How an element of the closed system was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    Input,
    Identity { node: String },
    DualOf { index: usize },
    Summand { left: usize, right: usize },
}

#[derive(Clone, Debug)]
pub struct CompositumSystem {
    ctx: GaloisContext,
    nodes: BTreeMap<String, FieldNode>,
    composita: Vec<Compositum>,
    derivations: Vec<Derivation>,
    labels: BTreeMap<Compositum, String>,
    closed: bool,
}

impl CompositumSystem {
    pub fn new(ctx: GaloisContext) -> Self {
        Self {
            ctx,
            nodes: BTreeMap::new(),
            composita: Vec::new(),
            derivations: Vec::new(),
            labels: BTreeMap::new(),
            closed: false,
        }
    }

    pub fn add_node(&mut self, node: FieldNode) -> Result<()> {
        if self.nodes.contains_key(node.id()) {
            return Err(Error::Parse(format!("duplicate field node `{}`", node.id())));
        }
        self.nodes.insert(node.id().to_string(), node);
        self.closed = false;
        Ok(())
    }

    /// Adds an input compositum; duplicates (same double coset) are merged
    /// and keep the first label.
    pub fn add_compositum(&mut self, v: Compositum, label: Option<String>) -> Result<()> {
        for end in [v.source(), v.target()] {
            if self.nodes.get(end.id()) != Some(end) {
                return Err(Error::UnknownNode(end.id().to_string()));
            }
        }
        if !self.composita.contains(&v) {
            self.composita.push(v.clone());
            self.derivations.push(Derivation::Input);
            self.closed = false;
        }
        if let Some(label) = label {
            self.labels.entry(v).or_insert(label);
        }
        Ok(())
    }

    pub fn context(&self) -> &GaloisContext {
        &self.ctx
    }

    pub fn nodes(&self) -> impl Iterator<Item = &FieldNode> {
        self.nodes.values()
    }

    pub fn node(&self, id: &str) -> Result<&FieldNode> {
        self.nodes.get(id).ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn composita(&self) -> &[Compositum] {
        &self.composita
    }

    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn contains(&self, v: &Compositum) -> bool {
        self.composita.contains(v)
    }

    /// `E_{A,B}`.
    pub fn between<'a>(&'a self, a: &'a str, b: &'a str) -> impl Iterator<Item = &'a Compositum> {
        self.composita
            .iter()
            .filter(move |v| v.source().id() == a && v.target().id() == b)
    }

    /// User-supplied label if any, `L*` for the dual of a labelled `L`,
    /// canonical label otherwise.
    pub fn label_of(&self, v: &Compositum) -> String {
        if let Some(l) = self.labels.get(v) {
            return l.clone();
        }
        let d = dual(v);
        match self.labels.get(&d) {
            Some(l) if d != *v => format!("{l}*"),
            _ => v.canonical_label(),
        }
    }

    pub fn find_by_label(&self, label: &str) -> Result<&Compositum> {
        self.composita
            .iter()
            .find(|v| self.label_of(v) == label || v.canonical_label() == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Least superset of the inputs containing identities and closed under
    /// duals and amalgamation. Pairs are processed breadth-first in insertion
    /// order, so the result and its derivation log are deterministic.
    pub fn close(&self, max_composita: usize) -> Result<CompositumSystem> {
        let mut out = self.clone();
        let mut seen: BTreeSet<Compositum> = out.composita.iter().cloned().collect();
        let mut push = |out: &mut CompositumSystem, v: Compositum, why: Derivation| -> Result<()> {
            if seen.insert(v.clone()) {
                if seen.len() > max_composita {
                    return Err(Error::ClosureCap { cap: max_composita });
                }
                out.composita.push(v);
                out.derivations.push(why);
            }
            Ok(())
        };
        let nodes: Vec<FieldNode> = out.nodes.values().cloned().collect();
        for node in &nodes {
            push(
                &mut out,
                identity_compositum(node),
                Derivation::Identity {
                    node: node.id().to_string(),
                },
            )?;
        }
        let mut i = 0;
        while i < out.composita.len() {
            let x = out.composita[i].clone();
            push(&mut out, dual(&x), Derivation::DualOf { index: i })?;
            for j in 0..=i {
                let y = out.composita[j].clone();
                if y.target() == x.source() {
                    for z in amalgamate(&y, &x)? {
                        push(&mut out, z, Derivation::Summand { left: j, right: i })?;
                    }
                }
                if j != i && x.target() == y.source() {
                    for z in amalgamate(&x, &y)? {
                        push(&mut out, z, Derivation::Summand { left: i, right: j })?;
                    }
                }
            }
            i += 1;
        }
        out.closed = true;
        Ok(out)
    }

    /// Replays every derivation record against the stored composita.
    pub fn replay_derivations(&self) -> Result<()> {
        for (k, (v, why)) in self.composita.iter().zip(&self.derivations).enumerate() {
            let ok = match why {
                Derivation::Input => true,
                Derivation::Identity { node } => {
                    *v == identity_compositum(self.node(node)?)
                }
                Derivation::DualOf { index } => *index < k && dual(&self.composita[*index]) == *v,
                Derivation::Summand { left, right } => {
                    *left < k
                        && *right < k
                        && amalgamate(&self.composita[*left], &self.composita[*right])?.contains(v)
                }
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "derivation {why:?} does not reproduce {}",
                    v.canonical_label()
                )));
            }
        }
        Ok(())
    }

    /// Runs one more full pass over the closed system and reports whether it
    /// produced anything new.
    pub fn is_fixed_point(&self) -> Result<bool> {
        let set: BTreeSet<&Compositum> = self.composita.iter().collect();
        for node in self.nodes.values() {
            if !set.contains(&identity_compositum(node)) {
                return Ok(false);
            }
        }
        for x in &self.composita {
            if !set.contains(&dual(x)) {
                return Ok(false);
            }
            for y in &self.composita {
                if x.target() == y.source() && !amalgamate(x, y)?.iter().all(|z| set.contains(z)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the graph on field nodes with an edge per compositum is
    /// connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.nodes.keys().next() else {
            return true;
        };
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for v in &self.composita {
            adj.entry(v.source().id()).or_default().push(v.target().id());
            adj.entry(v.target().id()).or_default().push(v.source().id());
        }
        let mut seen = BTreeSet::from([start.as_str()]);
        let mut queue = VecDeque::from([start.as_str()]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(x).into_iter().flatten() {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    /// `H_A`, the union of the double cosets `G_A φ_V G_A` over `E_{A,A}`.
    ///
    /// Fails with `TheoremViolation` if the union is not a group; on a closed
    /// system that can only indicate a bug.
    pub fn h_group(&self, a: &str) -> Result<Subgroup> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        let node = self.node(a)?;
        let mut union = node.group().as_element_set();
        let mut gens: Vec<Permutation> = node.group().generators().to_vec();
        for v in self.between(a, a) {
            union = union.union(&v.double_coset());
            if !v.rep().is_identity() {
                gens.push(v.rep().clone());
            }
        }
        Subgroup::from_element_set(union, gens).map_err(|_| {
            Error::TheoremViolation(format!(
                "union of double cosets over E_{{{a},{a}}} is not a group"
            ))
        })
    }

    /// Computes every `H_A`, checks that connecting automorphisms conjugate
    /// them onto each other, and fixes the base field at the first node in
    /// label order.
    pub fn base_field(&self) -> Result<BaseFieldResult> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let root = self
            .nodes
            .keys()
            .next()
            .cloned()
            .ok_or(Error::NotConnected)?;
        let mut h = BTreeMap::new();
        let mut indices = BTreeMap::new();
        for (id, node) in &self.nodes {
            let group = self.h_group(id)?;
            if !node.group().is_subgroup_of(&group) {
                return Err(Error::TheoremViolation(format!("G_{id} is not contained in H_{id}")));
            }
            indices.insert(id.clone(), group.order() / node.group().order());
            h.insert(id.clone(), group);
        }
        for v in &self.composita {
            let moved = conjugate(&h[v.target().id()], v.rep())?;
            if moved != h[v.source().id()] {
                return Err(Error::TheoremViolation(format!(
                    "φ_V H_{} φ_V⁻¹ ≠ H_{} for {}",
                    v.target().id(),
                    v.source().id(),
                    v.canonical_label()
                )));
            }
        }

        // transports t_A with H_root = t_A H_A t_A⁻¹, found by BFS from root
        let mut transport: BTreeMap<String, Permutation> =
            BTreeMap::from([(root.clone(), Permutation::identity(self.ctx.degree()))]);
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(a) = queue.pop_front() {
            let ta = transport[&a].clone();
            for v in self.composita.iter().filter(|v| v.source().id() == a) {
                let b = v.target().id();
                if !transport.contains_key(b) {
                    transport.insert(b.to_string(), ta.compose_unchecked(v.rep()));
                    queue.push_back(b.to_string());
                }
            }
        }

        let base_group = h[&root].clone();
        Ok(BaseFieldResult {
            base_label: format!("Fix(H_{root})"),
            root,
            base_group,
            h,
            indices,
            transport,
        })
    }

    /// Per-compositum check of the commuting triangles `k → k_A → k_V`.
    pub fn verify_triangles(&self, result: &BaseFieldResult) -> TriangleReport {
        let mut entries = Vec::new();
        for v in &self.composita {
            let a = v.source().id();
            let b = v.target().id();
            let (Some(ha), Some(hb)) = (result.h.get(a), result.h.get(b)) else {
                entries.push(TriangleWitness::missing(self.label_of(v), a, b));
                continue;
            };
            let gv_in_ga = v.group().is_subgroup_of(v.source().group());
            let ga_in_ha = v.source().group().is_subgroup_of(ha);
            let conjugation = conjugate(hb, v.rep()).map(|c| &c == ha).unwrap_or(false);
            // t_A φ_V t_B⁻¹ must act trivially on the base field
            let base_loop = match (result.transport.get(a), result.transport.get(b)) {
                (Some(ta), Some(tb)) => result
                    .base_group
                    .contains(&ta.compose_unchecked(v.rep()).compose_unchecked(&tb.inverse())),
                _ => false,
            };
            entries.push(TriangleWitness {
                compositum: self.label_of(v),
                source: a.to_string(),
                target: b.to_string(),
                gv_in_ga,
                ga_in_ha,
                conjugation,
                base_loop,
                pass: gv_in_ga && ga_in_ha && conjugation && base_loop,
            });
        }
        TriangleReport {
            all_pass: entries.iter().all(|e| e.pass),
            entries,
        }
    }

    /// Checks `G_V = G_A ∩ φ_V G_B φ_V⁻¹` for every stored compositum.
    pub fn verify_groups(&self) -> bool {
        self.composita.iter().all(Compositum::verify_group)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseFieldResult {
    pub root: String,
    pub base_label: String,
    pub base_group: Subgroup,
    pub h: BTreeMap<String, Subgroup>,
    /// `[H_A : G_A]`, the degree of `k_A` over the base field.
    pub indices: BTreeMap<String, usize>,
    /// Elements `t_A` with `H_root = t_A H_A t_A⁻¹`.
    pub transport: BTreeMap<String, Permutation>,
}

impl BaseFieldResult {
    /// Exhaustive group check on every `H_A`.
    pub fn groups_closed(&self) -> bool {
        self.h.values().all(|g| g.verify_closed())
    }

    pub fn h_elements(&self, node: &str) -> Option<ElementSet> {
        self.h.get(node).map(Subgroup::as_element_set)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleWitness {
    pub compositum: String,
    pub source: String,
    pub target: String,
    pub gv_in_ga: bool,
    pub ga_in_ha: bool,
    pub conjugation: bool,
    pub base_loop: bool,
    pub pass: bool,
}

impl TriangleWitness {
    fn missing(label: String, a: &str, b: &str) -> Self {
        Self {
            compositum: label,
            source: a.to_string(),
            target: b.to_string(),
            gv_in_ga: false,
            ga_in_ha: false,
            conjugation: false,
            base_loop: false,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub all_pass: bool,
    pub entries: Vec<TriangleWitness>,
}
