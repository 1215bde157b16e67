//! Finite-dimensional commutative ℚ-algebras given by structure constants,
//! tensor products of number fields over a common subfield, and their
//! splitting into fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::{factor_int_poly, is_squarefree, DEFAULT_MAX_DEGREE};
use super::field::{FieldEmbedding, NumberField};
use super::linalg::{self, common_denominator, mat_vec, Matrix};
use super::poly::{q, RatPoly, Q};
use crate::error::{Error, Result};

/// Default number of random primitive-element attempts.
pub const DEFAULT_RETRIES: usize = 32;

#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    dim: usize,
    /// `table[i][j]` holds the coordinates of `e_i e_j`.
    table: Vec<Vec<Vec<Q>>>,
    one: Vec<Q>,
    note: String,
}

impl EtaleAlgebra {
    pub fn new(table: Vec<Vec<Vec<Q>>>, one: Vec<Q>, note: impl Into<String>) -> Result<Self> {
        let dim = one.len();
        let ok = table.len() == dim
            && table
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(Error::Internal("structure constant table has wrong shape".into()));
        }
        Ok(Self {
            dim,
            table,
            one,
            note: note.into(),
        })
    }

    /// `ℚ[x]/(f)` in the power basis; `f` need not be irreducible.
    pub fn from_polynomial(f: &RatPoly, note: impl Into<String>) -> Self {
        let n = f.degree().expect("nonzero");
        let powers: Vec<Vec<Q>> = (0..2 * n.max(1) - 1)
            .map(|m| RatPoly::monomial(m).rem(f).to_vec(n))
            .collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut one = vec![Q::zero(); n];
        one[0] = Q::one();
        Self {
            dim: n,
            table,
            one,
            note: note.into(),
        }
    }

    pub fn from_field(k: &NumberField) -> Self {
        Self::from_polynomial(k.min_poly(), format!("{k:?}"))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[Q] {
        &self.one
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a x`; column `c` holds `a e_c`.
    #[allow(clippy::needless_range_loop)]
    pub fn mult_matrix(&self, a: &[Q]) -> Matrix {
        let mut m = vec![vec![Q::zero(); self.dim]; self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for c in 0..self.dim {
                for (r, t) in self.table[i][c].iter().enumerate() {
                    if !t.is_zero() {
                        m[r][c] += ai * t;
                    }
                }
            }
        }
        m
    }

    fn basis_traces(&self) -> Vec<Q> {
        (0..self.dim)
            .map(|i| (0..self.dim).fold(Q::zero(), |acc, c| acc + &self.table[i][c][c]))
            .collect()
    }

    pub fn trace(&self, a: &[Q]) -> Q {
        a.iter()
            .zip(self.basis_traces())
            .fold(Q::zero(), |acc, (x, t)| acc + x * t)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis(i);
            self.mul(&self.one, &e) == e && self.mul(&e, &self.one) == e
        })
    }

    /// Exhaustive over basis triples; cubic in the dimension, so meant for
    /// small algebras.
    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|k| {
                    let left = self.mul(&self.table[i][j], &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.table[j][k]);
                    left == right
                })
            })
        })
    }

    /// Dimension of the nilradical, computed as the kernel of the trace
    /// form `(a, b) ↦ tr(L_{ab})` (valid in characteristic zero).
    pub fn radical_dim(&self) -> usize {
        let t = self.basis_traces();
        let form: Matrix = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        self.table[i][j]
                            .iter()
                            .zip(&t)
                            .fold(Q::zero(), |acc, (c, tm)| acc + c * tm)
                    })
                    .collect()
            })
            .collect();
        self.dim - linalg::rank(&form)
    }
}

/// `k_V ⊗_{k_B} k_W` together with the images of the two factors.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub algebra: EtaleAlgebra,
    left_powers: Vec<Vec<Q>>,
    right_powers: Vec<Vec<Q>>,
}

impl TensorProduct {
    /// Image of `a(x) ∈ k_V` as `a ⊗ 1`.
    pub fn left(&self, a: &RatPoly) -> Vec<Q> {
        combine(&self.left_powers, a, self.algebra.dim)
    }

    /// Image of `b(y) ∈ k_W` as `1 ⊗ b`.
    pub fn right(&self, b: &RatPoly) -> Vec<Q> {
        combine(&self.right_powers, b, self.algebra.dim)
    }
}

fn combine(powers: &[Vec<Q>], a: &RatPoly, dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (c, v) in a.coeffs().iter().zip(powers) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// `k_V ⊗_{k_B} k_W`, presented as `k_V[y]/(h)` where `h` is the minimal
/// polynomial of the generator `y` of `k_W` over `k_B`, with coefficients
/// pushed into `k_V` along `e_V`. The basis is `x^i y^j`, `i < [k_V:ℚ]`,
/// `j < [k_W:k_B]`, stored at index `j [k_V:ℚ] + i`.
pub fn tensor_over(
    kv: &NumberField,
    ev: &FieldEmbedding,
    kw: &NumberField,
    ew: &FieldEmbedding,
) -> Result<TensorProduct> {
    if ev.domain() != ew.domain() {
        return Err(Error::BadEmbedding("embeddings have different domains".into()));
    }
    if ev.codomain() != kv || ew.codomain() != kw {
        return Err(Error::BadEmbedding("embedding codomains do not match the factors".into()));
    }
    let (dv, dw, db) = (kv.degree(), kw.degree(), ev.domain().degree());
    if dv % db != 0 || dw % db != 0 {
        return Err(Error::BadEmbedding(format!(
            "degrees {dv}, {dw} are not multiples of {db}"
        )));
    }
    let e = dw / db;

    // y^e = Σ_{j<e} c_j(b) y^j in k_W with c_j ∈ k_B
    let mut bw = vec![RatPoly::one()];
    for _ in 1..db {
        bw.push(kw.mul(bw.last().expect("nonempty"), ew.image()));
    }
    let mut columns = Vec::with_capacity(dw);
    for j in 0..e {
        let yj = RatPoly::monomial(j);
        for b in &bw {
            columns.push(kw.coords(&kw.mul(b, &yj)));
        }
    }
    let top = kw.coords(&RatPoly::monomial(e));
    let c = linalg::solve_columns(&columns, &top).ok_or_else(|| {
        Error::BadEmbedding("generator of the right factor is not of the expected degree".into())
    })?;
    let mut bv = vec![RatPoly::one()];
    for _ in 1..db {
        bv.push(kv.mul(bv.last().expect("nonempty"), ev.image()));
    }
    let h: Vec<RatPoly> = (0..e)
        .map(|j| {
            (0..db).fold(RatPoly::zero(), |acc, m| &acc + &bv[m].scale(&c[j * db + m]))
        })
        .collect();
    let ring = RelativeRing {
        kv: kv.clone(),
        h,
        dv,
    };

    let basis: Vec<(usize, usize)> = (0..e).flat_map(|j| (0..dv).map(move |i| (i, j))).collect();
    let table: Vec<Vec<Vec<Q>>> = basis
        .iter()
        .map(|&(ia, ja)| {
            basis
                .iter()
                .map(|&(ib, jb)| ring.monomial(ia + ib, ja + jb))
                .collect()
        })
        .collect();
    let one = ring.monomial(0, 0);
    let left_powers = (0..dv).map(|i| ring.monomial(i, 0)).collect();
    let right_powers = (0..dw).map(|j| ring.monomial(0, j)).collect();
    let note = format!(
        "Q[x]/({}) (x) Q[y]/({}) over a degree-{db} field",
        kv.min_poly(),
        kw.min_poly()
    );
    let tp = TensorProduct {
        algebra: EtaleAlgebra::new(table, one, note)?,
        left_powers,
        right_powers,
    };
    let b = RatPoly::x();
    if tp.left(&ev.apply(&b)) != tp.right(&ew.apply(&b)) {
        return Err(Error::BadEmbedding("the two images of the base field disagree".into()));
    }
    Ok(tp)
}

struct RelativeRing {
    kv: NumberField,
    /// `y^e = Σ h[j] y^j`.
    h: Vec<RatPoly>,
    dv: usize,
}

impl RelativeRing {
    /// Coordinates of `x^i y^j`.
    fn monomial(&self, i: usize, j: usize) -> Vec<Q> {
        let e = self.h.len();
        let mut coeffs = vec![RatPoly::zero(); (j + 1).max(e)];
        coeffs[j] = self.kv.reduce(&RatPoly::monomial(i));
        for d in (e..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[d], RatPoly::zero());
            if c.is_zero() {
                continue;
            }
            for (k, hk) in self.h.iter().enumerate() {
                let add = self.kv.mul(&c, hk);
                coeffs[d - e + k] = &coeffs[d - e + k] + &add;
            }
        }
        coeffs
            .iter()
            .take(e)
            .flat_map(|c| c.to_vec(self.dv))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub field: NumberField,
    /// Primitive idempotent `P_i` projecting onto this summand.
    pub idempotent: Vec<Q>,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.field.degree()
    }
}

#[derive(Clone, Debug)]
pub struct EtaleDecomposition {
    /// Element `θ` whose powers form a basis.
    pub primitive_element: Vec<Q>,
    /// Minimal (= characteristic) polynomial of `θ`.
    pub min_poly: RatPoly,
    pub summands: Vec<Summand>,
    powers: Vec<Vec<Q>>,
}

impl EtaleDecomposition {
    /// Writes `a` as a polynomial in the primitive element.
    pub fn to_poly(&self, a: &[Q]) -> Result<RatPoly> {
        linalg::solve_columns(&self.powers, a)
            .map(RatPoly::from_coeffs)
            .ok_or_else(|| Error::Internal("powers of the primitive element do not span".into()))
    }

    /// The component of `a` in summand `i`, as an element of that field.
    pub fn project(&self, i: usize, a: &[Q]) -> Result<RatPoly> {
        Ok(self.summands[i].field.reduce(&self.to_poly(a)?))
    }

    /// `P_i² = P_i`, `P_i P_j = 0` and `Σ P_i = 1`, checked with the
    /// structure constants.
    pub fn verify(&self, alg: &EtaleAlgebra) -> bool {
        let n = self.summands.len();
        let mut sum = vec![Q::zero(); alg.dim()];
        for i in 0..n {
            let p = &self.summands[i].idempotent;
            if alg.mul(p, p) != *p {
                return false;
            }
            for j in 0..i {
                if alg.mul(p, &self.summands[j].idempotent).iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
            for (s, x) in sum.iter_mut().zip(p) {
                *s += x;
            }
        }
        sum == alg.one()
    }
}

/// Splits an étale algebra into fields via a random primitive element.
pub fn decompose_etale(alg: &EtaleAlgebra, seed: u64, retries: usize) -> Result<EtaleDecomposition> {
    let n = alg.dim();
    if n == 0 {
        return Err(Error::Internal("zero algebra".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..retries {
        let theta: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-3..=3))).collect();
        let l = alg.mult_matrix(&theta);
        let d = common_denominator(&l);
        let dq = Q::from_integer(d.clone());
        let l_int: Vec<Vec<BigInt>> = l
            .iter()
            .map(|row| row.iter().map(|x| (x * &dq).to_integer()).collect())
            .collect();
        let chi = RatPoly::from_bigints(&linalg::charpoly_int(&l_int));
        if !is_squarefree(&chi) {
            if attempt == 0 {
                let r = alg.radical_dim();
                if r > 0 {
                    return Err(Error::NotSemisimple(r));
                }
            }
            continue;
        }
        let theta: Vec<Q> = theta.iter().map(|x| x * &dq).collect();
        let l: Matrix = l
            .iter()
            .map(|row| row.iter().map(|x| x * &dq).collect())
            .collect();
        let factors = factor_int_poly(&chi.to_bigints().expect("integral"), DEFAULT_MAX_DEGREE)?;

        let mut idems = Vec::new();
        for (f, _) in &factors.factors {
            let cof = chi.div_rem(f).0;
            let u = cof
                .inverse_mod(f)
                .ok_or_else(|| Error::Internal("cofactor not invertible".into()))?;
            idems.push(cof.mul_mod(&u, &chi));
        }
        // by CRT, e_i ≡ δ_ij mod f_j for all j is equivalent to the
        // idempotent identities modulo χ
        for (i, e) in idems.iter().enumerate() {
            for (j, (f, _)) in factors.factors.iter().enumerate() {
                let expect = if i == j { RatPoly::one() } else { RatPoly::zero() };
                if e.rem(f) != expect {
                    return Err(Error::Internal("idempotent identities fail".into()));
                }
            }
        }

        let mut powers = Vec::with_capacity(n);
        let mut v = alg.one().to_vec();
        for _ in 0..n {
            let next = mat_vec(&l, &v);
            powers.push(v);
            v = next;
        }
        let summands: Vec<Summand> = factors
            .factors
            .iter()
            .zip(&idems)
            .enumerate()
            .map(|(i, ((f, _), e))| Summand {
                field: NumberField::trusted(f.clone(), format!("t{i}")),
                idempotent: combine(&powers, e, n),
            })
            .collect();
        return Ok(EtaleDecomposition {
            primitive_element: theta,
            min_poly: chi,
            summands,
            powers,
        });
    }
    let r = alg.radical_dim();
    if r > 0 {
        return Err(Error::NotSemisimple(r));
    }
    Err(Error::PrimitiveElement(retries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c), "a").unwrap()
    }

    #[test]
    fn one_dimensional() {
        let alg = EtaleAlgebra::from_field(&NumberField::rationals());
        let dec = decompose_etale(&alg, 1, DEFAULT_RETRIES).unwrap();
        assert_eq!(dec.summands.len(), 1);
        assert_eq!(dec.summands[0].dim(), 1);
        assert_eq!(alg.radical_dim(), 0);
    }

    #[test]
    fn dual_numbers_have_radical() {
        let alg = EtaleAlgebra::from_polynomial(&RatPoly::from_ints(&[0, 0, 1]), "Q[x]/(x^2)");
        assert_eq!(alg.radical_dim(), 1);
        assert!(matches!(decompose_etale(&alg, 1, 4), Err(Error::NotSemisimple(1))));
    }

    #[test]
    fn gaussian_self_tensor() {
        let k = field(&[1, 0, 1]);
        let q = NumberField::rationals();
        let e = FieldEmbedding::new(q, k.clone(), RatPoly::zero()).unwrap();
        let t = tensor_over(&k, &e, &k, &e).unwrap();
        assert_eq!(t.algebra.dim(), 4);
        assert!(t.algebra.is_commutative() && t.algebra.is_associative() && t.algebra.is_unital());
        assert_eq!(t.algebra.radical_dim(), 0);
        let dec = decompose_etale(&t.algebra, 7, DEFAULT_RETRIES).unwrap();
        assert_eq!(dec.summands.len(), 2);
        assert!(dec.summands.iter().all(|s| s.dim() == 2));
        assert!(dec.verify(&t.algebra));
    }

    #[test]
    fn cube_root_self_tensor() {
        let k = field(&[-2, 0, 0, 1]);
        let e = FieldEmbedding::new(NumberField::rationals(), k.clone(), RatPoly::zero()).unwrap();
        let t = tensor_over(&k, &e, &k, &e).unwrap();
        assert_eq!(t.algebra.dim(), 9);
        let dec = decompose_etale(&t.algebra, 3, DEFAULT_RETRIES).unwrap();
        let mut dims: Vec<usize> = dec.summands.iter().map(Summand::dim).collect();
        dims.sort();
        assert_eq!(dims, vec![3, 6]);
        assert!(dec.verify(&t.algebra));
    }

    #[test]
    fn tensor_over_itself_is_base() {
        // Q(i) (x)_{Q(i)} Q(i) = Q(i)
        let k = field(&[1, 0, 1]);
        let id = FieldEmbedding::identity(&k);
        let t = tensor_over(&k, &id, &k, &id).unwrap();
        assert_eq!(t.algebra.dim(), 2);
        let dec = decompose_etale(&t.algebra, 1, DEFAULT_RETRIES).unwrap();
        assert_eq!(dec.summands.len(), 1);
    }

    #[test]
    fn relative_tensor_dimension() {
        // Q(2^(1/4)) (x)_{Q(sqrt 2)} Q(2^(1/4)): dimension 8 over Q,
        // splits as Q(2^(1/4)) x Q(2^(1/4)) (y = ±x)
        let b = field(&[-2, 0, 1]);
        let k = field(&[-2, 0, 0, 0, 1]);
        let e = FieldEmbedding::new(b, k.clone(), RatPoly::from_ints(&[0, 0, 1])).unwrap();
        let t = tensor_over(&k, &e, &k, &e).unwrap();
        assert_eq!(t.algebra.dim(), 8);
        let dec = decompose_etale(&t.algebra, 5, DEFAULT_RETRIES).unwrap();
        let dims: Vec<usize> = dec.summands.iter().map(Summand::dim).collect();
        assert_eq!(dims, vec![4, 4]);
        // the left and right copies of the generator agree in one summand
        // and differ by sign in the other
        let x = t.left(&RatPoly::x());
        let y = t.right(&RatPoly::x());
        let agree: Vec<bool> = (0..2)
            .map(|i| dec.project(i, &x).unwrap() == dec.project(i, &y).unwrap())
            .collect();
        assert_eq!(agree.iter().filter(|&&a| a).count(), 1);
    }
}
