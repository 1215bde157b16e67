//! Concrete Galois extensions `Ω/ℚ` whose automorphism group is identified
//! with a permutation group, and fixed fields of its subgroups.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldEmbedding, NumberField};
use super::linalg;
use super::poly::{q, RatPoly, Q};
use crate::error::{Error, Result};
use crate::perm::{ElementSet, Permutation, Subgroup};

/// Largest `n` accepted for `ℚ(ζ_n)`.
pub const MAX_CYCLOTOMIC: usize = 30;

#[derive(Clone, Debug)]
pub struct Realization {
    name: String,
    omega: NumberField,
    group: Subgroup,
    /// `σ_g(x)` for each group element, keyed by the permutation.
    images: BTreeMap<Permutation, RatPoly>,
    roots: Option<Vec<RatPoly>>,
}

impl Realization {
    /// Builds the full automorphism table from generators. `σ_{pq} = σ_p σ_q`
    /// is enforced, and the group order must equal `[Ω : ℚ]`.
    pub fn new(
        name: impl Into<String>,
        omega: NumberField,
        generators: Vec<(Permutation, RatPoly)>,
        roots: Option<Vec<RatPoly>>,
    ) -> Result<Self> {
        let name = name.into();
        let degree = match generators.first() {
            Some((p, _)) => p.degree(),
            None => roots.as_ref().map_or(1, Vec::len),
        };
        let m = omega.min_poly().clone();
        let mut gens = Vec::with_capacity(generators.len());
        for (p, img) in generators {
            if p.degree() != degree {
                return Err(Error::BadRealization("generators of mixed degree".into()));
            }
            let emb = FieldEmbedding::new(omega.clone(), omega.clone(), img)
                .map_err(|e| Error::BadRealization(format!("{p}: {e}")))?;
            gens.push((p, emb.image().clone()));
        }
        if let Some(rs) = &roots {
            if rs.len() != degree {
                return Err(Error::BadRealization(format!(
                    "{} roots for degree {degree}",
                    rs.len()
                )));
            }
            let reduced: Vec<RatPoly> = rs.iter().map(|r| omega.reduce(r)).collect();
            for i in 0..degree {
                if reduced[..i].contains(&reduced[i]) {
                    return Err(Error::BadRealization("roots are not distinct".into()));
                }
            }
            for (p, img) in &gens {
                for (i, r) in reduced.iter().enumerate() {
                    if r.compose_mod(img, &m) != reduced[p.apply(i)] {
                        return Err(Error::BadRealization(format!(
                            "automorphism for {p} does not move root {i} to root {}",
                            p.apply(i)
                        )));
                    }
                }
            }
        }

        let id = Permutation::identity(degree);
        let mut images = BTreeMap::new();
        images.insert(id.clone(), RatPoly::x().rem(&m));
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            let ip = images[&p].clone();
            for (g, ig) in &gens {
                let gp = g.compose_unchecked(&p);
                let img = ip.compose_mod(ig, &m);
                match images.get(&gp) {
                    Some(existing) if *existing != img => {
                        return Err(Error::BadRealization(format!(
                            "{gp} is assigned two different automorphisms"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        if images.len() > omega.degree() {
                            break;
                        }
                        images.insert(gp.clone(), img);
                        queue.push_back(gp);
                    }
                }
            }
        }
        if images.len() != omega.degree() {
            return Err(Error::BadRealization(format!(
                "group of order {} acting on a field of degree {}",
                images.len(),
                omega.degree()
            )));
        }
        let mut seen: Vec<&RatPoly> = images.values().collect();
        seen.sort_by_key(|p| p.to_string());
        seen.dedup();
        if seen.len() != images.len() {
            return Err(Error::BadRealization("action is not faithful".into()));
        }
        // homomorphism check on generators x all elements
        for (g, ig) in &gens {
            for (p, ip) in &images {
                let gp = g.compose_unchecked(p);
                if images.get(&gp) != Some(&ip.compose_mod(ig, &m)) {
                    return Err(Error::BadRealization(format!(
                        "table is not a homomorphism at {g} * {p}"
                    )));
                }
            }
        }
        let set = ElementSet::new(degree, images.keys().cloned())?;
        let group = Subgroup::from_element_set(set, gens.iter().map(|(p, _)| p.clone()).collect())?;
        Ok(Self {
            name,
            omega,
            group,
            images,
            roots,
        })
    }

    /// `ℚ(ζ_n)`; the unit `a` acts on the points `ℤ/n` by multiplication.
    pub fn cyclotomic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_CYCLOTOMIC {
            return Err(Error::UnsupportedRealization(format!(
                "cyclotomic field of conductor {n} (supported: 1..={MAX_CYCLOTOMIC})"
            )));
        }
        let omega = NumberField::trusted(cyclotomic_poly(n), "z");
        let gens = (1..n.max(2))
            .filter(|&a| num_integer::gcd(a, n) == 1 || n == 1)
            .map(|a| {
                let p = Permutation::new((0..n).map(|i| (a * i) % n).collect())?;
                Ok((p, RatPoly::monomial(a)))
            })
            .collect::<Result<Vec<_>>>()?;
        let roots = (0..n).map(RatPoly::monomial).collect();
        Self::new(format!("cyclotomic({n})"), omega, gens, Some(roots))
    }

    /// Splitting field of `x^3 - 2`, generated by `θ = 2^(1/3) + √-3`.
    pub fn s3_x3m2() -> Result<Self> {
        let m = RatPoly::from_ints(&[31, 36, 27, -4, 9, 0, 1]);
        let omega = NumberField::trusted(m.clone(), "t");
        let t = RatPoly::x();
        let num = RatPoly::from_ints(&[-2, -9, 0, 1]);
        let den = RatPoly::from_ints(&[-3, 0, 3]);
        let s = omega
            .div(&num, &den)
            .ok_or_else(|| Error::Internal("3t^2 - 3 is not invertible".into()))?;
        let c = omega.reduce(&(&t - &s));
        let w = (&s - &RatPoly::one()).scale(&Q::new(1.into(), 2.into()));
        let r0 = c.clone();
        let r1 = omega.mul(&w, &c);
        let r2 = omega.mul(&w, &r1);
        let roots = vec![r0, r1, r2];
        let mut gens = Vec::new();
        for images in [[1, 0, 2], [1, 2, 0]] {
            let p = Permutation::new(images.to_vec())?;
            let a = &roots[p.apply(0)];
            let b = &roots[p.apply(1)];
            let sw = omega.div(b, a).expect("nonzero root");
            // σ(θ) = σ(c) + σ(s), σ(s) = 2σ(ω) + 1
            let img = &(a + &sw.scale(&q(2))) + &RatPoly::one();
            gens.push((p, omega.reduce(&img)));
        }
        Self::new("s3_x3m2", omega, gens, Some(roots))
    }

    /// An explicit table: `automorphisms[i]` is the image of the generator
    /// under the automorphism acting on the points as `root_action[i]`.
    pub fn explicit(
        min_poly: RatPoly,
        automorphisms: Vec<RatPoly>,
        root_action: Vec<Permutation>,
    ) -> Result<Self> {
        if automorphisms.len() != root_action.len() {
            return Err(Error::BadRealization(
                "automorphisms and root_action differ in length".into(),
            ));
        }
        let omega = NumberField::new(min_poly, "w")
            .map_err(|e| Error::BadRealization(e.to_string()))?;
        let gens = root_action.into_iter().zip(automorphisms).collect();
        Self::new("explicit", omega, gens, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn omega(&self) -> &NumberField {
        &self.omega
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn roots(&self) -> Option<&[RatPoly]> {
        self.roots.as_deref()
    }

    pub fn image_of(&self, g: &Permutation) -> Result<&RatPoly> {
        self.images
            .get(g)
            .ok_or_else(|| Error::OutsideAmbient(g.to_string()))
    }

    /// `σ_g(a)`.
    pub fn apply(&self, g: &Permutation, a: &RatPoly) -> Result<RatPoly> {
        Ok(a.compose_mod(self.image_of(g)?, self.omega.min_poly()))
    }

    /// Minimal polynomial over ℚ of an element, as the product over its
    /// distinct conjugates.
    pub fn min_poly_of(&self, a: &RatPoly) -> Result<RatPoly> {
        let conj = self.conjugates(a)?;
        self.product_of_linears(&conj)
    }

    /// Distinct conjugates in a deterministic order.
    pub fn conjugates(&self, a: &RatPoly) -> Result<Vec<RatPoly>> {
        let mut out: Vec<RatPoly> = Vec::new();
        for g in self.group.elements() {
            let c = self.apply(g, a)?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }

    fn product_of_linears(&self, roots: &[RatPoly]) -> Result<RatPoly> {
        let m = self.omega.min_poly();
        // coefficients in Ω, constant term first
        let mut acc: Vec<RatPoly> = vec![RatPoly::one()];
        for r in roots {
            let mut next = vec![RatPoly::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &c.mul_mod(r, m);
            }
            acc = next;
        }
        let coeffs = acc
            .iter()
            .map(|c| match c.degree() {
                None => Ok(Q::from_integer(0.into())),
                Some(0) => Ok(c.coeff(0)),
                _ => Err(Error::Internal("conjugate product is not rational".into())),
            })
            .collect::<Result<Vec<Q>>>()?;
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

/// `Φ_n` by exact division of `x^n - 1`.
pub fn cyclotomic_poly(n: usize) -> RatPoly {
    let mut f = &RatPoly::monomial(n) - &RatPoly::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        f = f.div_rem(&cyclotomic_poly(d)).0;
    }
    f
}

/// `Fix(H) ⊂ Ω`, presented as `ℚ[z]/(m_z)` with `z` a chosen element of Ω.
#[derive(Clone, Debug)]
pub struct FixedField {
    pub subgroup: Subgroup,
    pub field: NumberField,
    /// The generator `z` written in Ω's power basis.
    pub generator: RatPoly,
    powers: Vec<Vec<Q>>,
}

impl FixedField {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Writes an element of Ω lying in this field as a polynomial in `z`.
    pub fn express(&self, a: &RatPoly, omega: &NumberField) -> Option<RatPoly> {
        linalg::solve_columns(&self.powers, &omega.coords(a)).map(RatPoly::from_coeffs)
    }
}

pub fn fixed_field(real: &Realization, h: &Subgroup, seed: u64) -> Result<FixedField> {
    if !h.is_subgroup_of(real.group()) {
        return Err(Error::NotSubgroup(format!(
            "subgroup of order {} is not inside the realized group",
            h.order()
        )));
    }
    let omega = real.omega();
    let n = omega.degree();
    let index = real.group().order() / h.order();
    let orbit_sum = |a: &RatPoly| -> Result<RatPoly> {
        h.elements()
            .iter()
            .try_fold(RatPoly::zero(), |acc, g| Ok(&acc + &real.apply(g, a)?))
    };
    let basis: Vec<RatPoly> = (1..n)
        .map(|i| orbit_sum(&RatPoly::monomial(i)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidate = orbit_sum(&RatPoly::x())?;
    for _ in 0..64 {
        let conj = real.conjugates(&candidate)?;
        if conj.len() == index {
            let min_poly = real.product_of_linears(&conj)?;
            let m = omega.min_poly();
            let mut powers = Vec::with_capacity(index);
            let mut p = RatPoly::one();
            for _ in 0..index {
                powers.push(omega.coords(&p));
                p = p.mul_mod(&candidate, m);
            }
            return Ok(FixedField {
                subgroup: h.clone(),
                field: NumberField::trusted(min_poly, "z"),
                generator: candidate,
                powers,
            });
        }
        candidate = basis.iter().fold(RatPoly::zero(), |acc, b| {
            &acc + &b.scale(&q(rng.gen_range(-4..=4)))
        });
    }
    Err(Error::PrimitiveElement(64))
}

/// `k_src → k_dst`, `z_src ↦ σ_twist(z_src)`.
pub fn embed_fixed(
    real: &Realization,
    src: &FixedField,
    dst: &FixedField,
    twist: &Permutation,
) -> Result<FieldEmbedding> {
    let moved = real.apply(twist, &src.generator)?;
    let image = dst.express(&moved, real.omega()).ok_or_else(|| {
        Error::BadEmbedding(format!(
            "twist {twist} does not carry the source field into the target"
        ))
    })?;
    FieldEmbedding::new(src.field.clone(), dst.field.clone(), image)
}
