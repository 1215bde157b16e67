//! Finite permutation groups with explicit element lists.
//!
//! Permutations are stored in one-line notation: `images[i]` is the image of
//! point `i`. Composition follows function composition:
//! `p.compose(&q)` applies `q` first and then `p`, so
//! `p.compose(&q).apply(i) == p.apply(q.apply(i))`. The same order is used
//! for field automorphisms, where `p` acting on roots corresponds to an
//! automorphism acting on the splitting field.
//!
//! Subgroups keep their full sorted element list. Ambient groups are small
//! (a few thousand elements at most), so every structural claim can be
//! checked by exhaustive scan.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the order of any group generated by [`subgroup_closure`].
pub const DEFAULT_MAX_GROUP_ORDER: usize = 10_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` or `(0,1)`; `()` is the
    /// identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("bad cycle syntax `{text}`")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{text}`")))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            for (k, &pt) in points.iter().enumerate() {
                if pt >= degree || seen[pt] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} repeated or out of range in `{text}`"
                    )));
                }
                seen[pt] = true;
                images[pt] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    /// Disjoint-cycle notation, fixed points omitted.
    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            out.push('(');
            out.push_str(&body.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// A sorted, duplicate-free set of permutations of a common degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ElementSet {
    degree: usize,
    elements: Vec<Permutation>,
}

impl ElementSet {
    pub fn new(degree: usize, elements: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let elements: BTreeSet<Permutation> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        Ok(Self {
            degree,
            elements: elements.into_iter().collect(),
        })
    }

    pub(crate) fn from_sorted(degree: usize, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn min(&self) -> Option<&Permutation> {
        self.elements.first()
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_disjoint_from(&self, other: &ElementSet) -> bool {
        self.elements.iter().all(|p| !other.contains(p))
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let all: BTreeSet<Permutation> = self
            .elements
            .iter()
            .chain(other.elements.iter())
            .cloned()
            .collect();
        Self::from_sorted(self.degree, all.into_iter().collect())
    }

    /// Exhaustive check that the set contains the identity and is closed
    /// under composition and inversion.
    pub fn is_group(&self) -> bool {
        if !self.contains(&Permutation::identity(self.degree)) {
            return false;
        }
        let lookup: HashSet<&Permutation> = self.elements.iter().collect();
        self.elements.iter().all(|a| lookup.contains(&a.inverse()))
            && self.elements.iter().all(|a| {
                self.elements
                    .iter()
                    .all(|b| lookup.contains(&a.compose_unchecked(b)))
            })
    }
}

/// A subgroup of the symmetric group on `degree` points.
#[derive(Clone, Debug, Serialize)]
pub struct Subgroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            elements: vec![Permutation::identity(degree)],
            generators: Vec::new(),
        }
    }

    /// Builds a subgroup from an element set that is already known to be a
    /// group. Returns `NotSubgroup` if the exhaustive check fails.
    pub fn from_element_set(set: ElementSet, generators: Vec<Permutation>) -> Result<Self> {
        if !set.is_group() {
            return Err(Error::NotSubgroup(format!(
                "set of {} elements is not closed under composition and inversion",
                set.len()
            )));
        }
        Ok(Self {
            degree: set.degree,
            elements: set.elements,
            generators,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn as_element_set(&self) -> ElementSet {
        ElementSet::from_sorted(self.degree, self.elements.clone())
    }

    /// Exhaustive closure check, used to validate stored subgroups.
    pub fn verify_closed(&self) -> bool {
        self.as_element_set().is_group()
    }
}

/// Smallest subgroup containing `gens`, enumerated breadth-first.
pub fn subgroup_closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Subgroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let generators: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = g.compose_unchecked(&x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupOrderCap { cap });
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(Subgroup {
        degree,
        elements,
        generators: gens.to_vec(),
    })
}

fn check_degree(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DegreeMismatch { left: a, right: b });
    }
    Ok(())
}

/// The double coset `H g K = { h g k }`.
pub fn double_coset(h: &Subgroup, g: &Permutation, k: &Subgroup) -> Result<ElementSet> {
    check_degree(h.degree(), g.degree())?;
    check_degree(g.degree(), k.degree())?;
    let mut set = BTreeSet::new();
    for x in h.elements() {
        let xg = x.compose_unchecked(g);
        for y in k.elements() {
            set.insert(xg.compose_unchecked(y));
        }
    }
    Ok(ElementSet::from_sorted(g.degree(), set.into_iter().collect()))
}

/// Lexicographically least element of `H g K`.
pub fn canonical_rep(h: &Subgroup, g: &Permutation, k: &Subgroup) -> Result<Permutation> {
    let dc = double_coset(h, g, k)?;
    Ok(dc.min().cloned().expect("double coset is never empty"))
}

/// Splits `set` into pairwise disjoint `(H, K)`-double cosets and returns the
/// canonical (lexicographically least) representative of each, in increasing
/// order.
pub fn decompose_into_double_cosets(
    set: &ElementSet,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<Permutation>> {
    check_degree(set.degree(), h.degree())?;
    check_degree(set.degree(), k.degree())?;
    let mut remaining: BTreeSet<Permutation> = set.elements().iter().cloned().collect();
    let mut reps = Vec::new();
    while let Some(first) = remaining.iter().next().cloned() {
        let coset = double_coset(h, &first, k)?;
        if !coset.elements().iter().all(|p| remaining.contains(p)) {
            let leftover = coset
                .elements()
                .iter()
                .filter(|p| !remaining.contains(*p))
                .count();
            return Err(Error::NotDoubleCosetUnion { leftover });
        }
        for p in coset.elements() {
            remaining.remove(p);
        }
        reps.push(coset.min().cloned().expect("nonempty"));
    }
    Ok(reps)
}

pub fn intersect(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    check_degree(h.degree(), k.degree())?;
    let elements: Vec<Permutation> = h
        .elements()
        .iter()
        .filter(|p| k.contains(p))
        .cloned()
        .collect();
    let generators = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
    Ok(Subgroup {
        degree: h.degree(),
        elements,
        generators,
    })
}

/// `g H g⁻¹`.
pub fn conjugate(h: &Subgroup, g: &Permutation) -> Result<Subgroup> {
    check_degree(h.degree(), g.degree())?;
    let gi = g.inverse();
    let conj = |p: &Permutation| g.compose_unchecked(&p.compose_unchecked(&gi));
    let mut elements: Vec<Permutation> = h.elements().iter().map(conj).collect();
    elements.sort();
    Ok(Subgroup {
        degree: h.degree(),
        elements,
        generators: h.generators().iter().map(conj).collect(),
    })
}

/// `[G : H]`; fails unless `H ≤ G`.
pub fn index(g: &Subgroup, h: &Subgroup) -> Result<usize> {
    check_degree(g.degree(), h.degree())?;
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(format!(
            "group of order {} is not contained in group of order {}",
            h.order(),
            g.order()
        )));
    }
    Ok(g.order() / h.order())
}

/// Every subgroup of `g`, ordered by size and then by element list.
/// Built by joining cyclic subgroups; intended for small groups.
pub fn all_subgroups(g: &Subgroup) -> Result<Vec<Subgroup>> {
    let cap = g.order();
    let mut found: BTreeMap<Vec<Permutation>, Subgroup> = BTreeMap::new();
    let trivial = Subgroup::trivial(g.degree());
    found.insert(trivial.elements.clone(), trivial);
    let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for x in g.elements() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(x.clone());
                let joined = subgroup_closure(g.degree(), &gens, cap)?;
                if !found.contains_key(&joined.elements) {
                    found.insert(joined.elements.clone(), joined.clone());
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Subgroup> = found.into_values().collect();
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(all)
}

/// One representative per conjugacy class of subgroups, taken as the first
/// member of the class in the order of [`all_subgroups`].
pub fn subgroup_class_reps(g: &Subgroup) -> Result<Vec<Subgroup>> {
    let mut reps: Vec<Subgroup> = Vec::new();
    for h in all_subgroups(g)? {
        let mut fresh = true;
        for r in reps.iter().filter(|r| r.order() == h.order()) {
            for x in g.elements() {
                if conjugate(r, x)? == h {
                    fresh = false;
                    break;
                }
            }
            if !fresh {
                break;
            }
        }
        if fresh {
            reps.push(h);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroups_of_s3() {
        let all = all_subgroups(&s3()).unwrap();
        assert_eq!(all.len(), 6);
        let reps = subgroup_class_reps(&s3()).unwrap();
        let orders: Vec<usize> = reps.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn s3() -> Subgroup {
        subgroup_closure(3, &[p(&[1, 0, 2]), p(&[1, 2, 0])], 100).unwrap()
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycles_round_trip() {
        let q = Permutation::from_cycles(5, "(0 1 2)(3,4)").unwrap();
        assert_eq!(q.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(q.to_cycles(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::from_cycles(3, "()").unwrap(), Permutation::identity(3));
        assert!(Permutation::from_cycles(3, "(0 3)").is_err());
        assert!(Permutation::from_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn compose_order() {
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        // apply b then a: 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
        assert_eq!(a.compose(&b).unwrap(), p(&[1, 2, 0]));
        assert!(a.compose(&Permutation::identity(4)).is_err());
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(subgroup_closure(3, &[], 10).unwrap().order(), 1);
        assert_eq!(subgroup_closure(3, &[p(&[1, 0, 2])], 10).unwrap().order(), 2);
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.verify_closed());
        assert!(matches!(
            subgroup_closure(3, &[p(&[1, 0, 2]), p(&[1, 2, 0])], 5),
            Err(Error::GroupOrderCap { cap: 5 })
        ));
    }

    #[test]
    fn double_coset_sizes_in_s3() {
        let h = subgroup_closure(3, &[p(&[0, 2, 1])], 10).unwrap();
        let id = Permutation::identity(3);
        assert_eq!(double_coset(&h, &id, &h).unwrap().len(), 2);
        assert_eq!(double_coset(&h, &p(&[1, 2, 0]), &h).unwrap().len(), 4);
        let t = Subgroup::trivial(3);
        let g = p(&[2, 0, 1]);
        assert_eq!(double_coset(&t, &g, &t).unwrap().elements(), &[g]);
    }

    #[test]
    fn decomposition_examples() {
        let g = s3();
        let h = subgroup_closure(3, &[p(&[0, 2, 1])], 10).unwrap();
        let reps = decompose_into_double_cosets(&g.as_element_set(), &h, &h).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0], Permutation::identity(3));
        let t = Subgroup::trivial(3);
        assert_eq!(
            decompose_into_double_cosets(&g.as_element_set(), &t, &t).unwrap().len(),
            6
        );
        assert_eq!(
            decompose_into_double_cosets(&h.as_element_set(), &h, &h).unwrap(),
            vec![Permutation::identity(3)]
        );
        // a single transposition outside H is not a union of (H,H)-double cosets
        let bad = ElementSet::new(3, [p(&[1, 0, 2])]).unwrap();
        assert!(matches!(
            decompose_into_double_cosets(&bad, &h, &h),
            Err(Error::NotDoubleCosetUnion { .. })
        ));
    }

    #[test]
    fn intersect_conjugate_index() {
        let g = s3();
        let a = subgroup_closure(3, &[p(&[0, 2, 1])], 10).unwrap();
        let b = subgroup_closure(3, &[p(&[2, 1, 0])], 10).unwrap();
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert_eq!(intersect(&a, &b).unwrap().order(), 1);
        assert_eq!(index(&g, &a).unwrap(), 3);
        assert!(index(&a, &g).is_err());
        let c = conjugate(&a, &p(&[1, 2, 0])).unwrap();
        assert_eq!(c.order(), 2);
        assert_ne!(c, a);
        assert!(c.verify_closed());
    }
}
