//! Factorization of integer polynomials.
//!
//! Squarefree decomposition over ℚ, factorization modulo a small prime
//! (distinct-degree then equal-degree splitting), multifactor Hensel lifting
//! along a binary tree, and Zassenhaus subset recombination with exact trial
//! division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::RatPoly;
use crate::error::{Error, Result};

/// Default degree cap for [`factor_int_poly`].
pub const DEFAULT_MAX_DEGREE: usize = 36;

/// `f = content · ∏ factor^multiplicity`; factors are primitive with
/// positive leading coefficient, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub content: RatPoly,
    pub factors: Vec<(RatPoly, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> RatPoly {
        self.factors.iter().fold(self.content.clone(), |acc, (f, m)| {
            (0..*m).fold(acc, |acc, _| &acc * f)
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_int_poly(f: &[BigInt], max_degree: usize) -> Result<Factorization> {
    let f = RatPoly::from_bigints(f);
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > max_degree {
        return Err(Error::DegreeCap {
            degree: deg,
            cap: max_degree,
        });
    }
    let (content, prim) = f.primitive_int();
    let mut factors = Vec::new();
    let parts = if squarefree_mod_some_prime(&prim) {
        vec![(RatPoly::from_bigints(&prim), 1)]
    } else {
        squarefree_parts(&RatPoly::from_bigints(&prim))
    };
    for (part, mult) in parts {
        let (_, part) = part.primitive_int();
        for g in factor_squarefree(&part) {
            factors.push((RatPoly::from_bigints(&g), mult));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ma.cmp(mb))
    });
    Ok(Factorization {
        content: RatPoly::constant(content),
        factors,
    })
}

/// Convenience wrapper for small coefficients.
pub fn factor_i64(f: &[i64]) -> Result<Factorization> {
    let f: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    factor_int_poly(&f, DEFAULT_MAX_DEGREE)
}

/// Irreducibility test for a polynomial with rational coefficients.
pub fn is_irreducible(f: &RatPoly, max_degree: usize) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let (_, p) = f.primitive_int();
    Ok(factor_int_poly(&p, max_degree)?.is_irreducible())
}

/// Squarefree test over ℚ. A squarefree reduction modulo a prime that
/// keeps the degree settles it quickly; otherwise falls back to a gcd.
pub fn is_squarefree(f: &RatPoly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return !f.is_zero();
    }
    let (_, prim) = f.primitive_int();
    squarefree_mod_some_prime(&prim) || f.gcd(&f.derivative()).degree() == Some(0)
}

fn squarefree_mod_some_prime(f: &[BigInt]) -> bool {
    let n = f.len() - 1;
    PRIMES.iter().take(20).any(|&p| {
        if (&f[n] % p).is_zero() {
            return false;
        }
        let fp = FpPoly::from_z(f, p);
        fp.deg() == Some(n) && fp.gcd(&fp.derivative()).is_one()
    })
}

/// Yun's algorithm; returns monic parts `a_i` with `f = c ∏ a_i^i`.
fn squarefree_parts(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let b_next = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = &c - &b_next.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn trim_z(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Factors a primitive squarefree polynomial with positive leading
/// coefficient.
fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = trim_z(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    // pull out x first so that f(0) != 0 for the constant-term pruning
    if f[0].is_zero() {
        let rest = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree(&rest));
        return out;
    }

    let Some((p, modular)) = choose_prime(&f) else {
        return vec![f];
    };
    if modular.len() == 1 {
        return vec![f];
    }

    let lc = f[n].abs();
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32) * &lc * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus = &modulus * &modulus;
        k *= 2;
    }
    let lifted = hensel_tree(&f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Picks, among the first few good primes, one giving the fewest modular
/// factors.
fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<FpPoly>)> {
    let n = f.len() - 1;
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        if (&f[n] % p).is_zero() {
            continue;
        }
        let fp = FpPoly::from_z(f, p);
        if fp.deg() != Some(n) || !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        let factors = fp.monic().factor(p);
        tried += 1;
        if factors.len() == 1 {
            return Some((p, factors));
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        if tried >= 6 {
            break;
        }
    }
    best
}

/// Zassenhaus recombination of monic lifted factors modulo `modulus`.
fn recombine(mut f: ZPoly, mut factors: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let half = modulus >> 1u32;
    let mut s = 1;
    'outer: while 2 * s <= factors.len() {
        let r = factors.len();
        let mut combo: Vec<usize> = (0..s).collect();
        loop {
            let lc = f.last().cloned().expect("nonzero");
            // constant term check first
            let c0 = combo
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * &factors[i][0]).mod_floor(modulus));
            let c0 = symmetric(c0, modulus, &half);
            if !c0.is_zero() && (&lc * &f[0]).mod_floor(&c0).is_zero() {
                let mut g = vec![lc.clone()];
                for &i in &combo {
                    g = mul_mod(&g, &factors[i], modulus);
                }
                let g: ZPoly = trim_z(g.into_iter().map(|c| symmetric(c, modulus, &half)).collect());
                let g = primitive_z(g);
                if let Some(qt) = exact_div_z(&f, &g) {
                    out.push(g);
                    f = qt;
                    let keep: Vec<ZPoly> = factors
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !combo.contains(i))
                        .map(|(_, u)| u.clone())
                        .collect();
                    factors = keep;
                    continue 'outer;
                }
            }
            if !next_combination(&mut combo, r) {
                break;
            }
        }
        s += 1;
    }
    if f.len() > 1 {
        out.push(primitive_z(f));
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(c: BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c > half {
        c - m
    } else {
        c
    }
}

fn primitive_z(p: ZPoly) -> ZPoly {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if p.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let g = g * sign;
    p.into_iter().map(|c| c / &g).collect()
}

/// Exact division in ℤ[x]; `None` if `g` does not divide `f`.
fn exact_div_z(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quot = vec![BigInt::zero(); f.len() - dg];
    for i in (0..quot.len()).rev() {
        let (qc, r) = rem[i + dg].div_rem(&g[dg]);
        if !r.is_zero() {
            return None;
        }
        if !qc.is_zero() {
            for (j, gc) in g.iter().enumerate() {
                rem[i + j] -= &qc * gc;
            }
        }
        quot[i] = qc;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

// --- arithmetic in (ℤ/m)[x] ---------------------------------------------

fn reduce(p: ZPoly, m: &BigInt) -> ZPoly {
    trim_z(p.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(out, m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let dd = d.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), reduce(rem, m));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].mod_floor(m);
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                rem[i + j] = (&rem[i + j] - &c * dc).mod_floor(m);
            }
        }
        quot[i] = c;
    }
    rem.truncate(dd);
    (reduce(quot, m), reduce(rem, m))
}

/// Lifts `f ≡ lc(f) ∏ factors (mod p)` to monic factors modulo `p^k`.
fn hensel_tree(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc = f.last().cloned().expect("nonzero");
        let inv = mod_inverse(&lc, &modulus);
        return vec![reduce(f.iter().map(|c| c * &inv).collect(), &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = (f.last().expect("nonzero").mod_floor(&BigInt::from(p)))
        .to_u64()
        .expect("small");
    let g0 = left
        .iter()
        .fold(FpPoly::constant(lc_p, p), |acc, u| acc.mul(u));
    let h0 = right.iter().fold(FpPoly::constant(1, p), |acc, u| acc.mul(u));
    let (s0, t0) = g0.bezout(&h0);
    let (g, h) = hensel_pair(f, g0.to_z(), h0.to_z(), s0.to_z(), t0.to_z(), p, k);
    let mut out = hensel_tree(&g, left, p, k);
    out.extend(hensel_tree(&h, right, p, k));
    out
}

/// Quadratic Hensel lifting of `f ≡ g h` with `s g + t h ≡ 1`, `h` monic.
fn hensel_pair(
    f: &[BigInt],
    mut g: ZPoly,
    mut h: ZPoly,
    mut s: ZPoly,
    mut t: ZPoly,
    p: u64,
    k: u32,
) -> (ZPoly, ZPoly) {
    let mut e_cur = 1u32;
    let pb = BigInt::from(p);
    while e_cur < k {
        e_cur *= 2;
        let m = pb.pow(e_cur);
        let e = sub_mod(f, &mul_mod(&g, &h, &m), &m);
        let (qt, r) = div_rem_monic(&mul_mod(&s, &e, &m), &h, &m);
        let g_new = add_mod(&add_mod(&g, &mul_mod(&t, &e, &m), &m), &mul_mod(&qt, &g, &m), &m);
        let h_new = add_mod(&h, &r, &m);
        let b = sub_mod(
            &add_mod(&mul_mod(&s, &g_new, &m), &mul_mod(&t, &h_new, &m), &m),
            &[BigInt::one()],
            &m,
        );
        let (c, d) = div_rem_monic(&mul_mod(&s, &b, &m), &h_new, &m);
        s = sub_mod(&s, &d, &m);
        t = sub_mod(&sub_mod(&t, &mul_mod(&t, &b, &m), &m), &mul_mod(&c, &g_new, &m), &m);
        g = g_new;
        h = h_new;
    }
    (g, h)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

// --- arithmetic in 𝔽_p[x] -------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
struct FpPoly {
    c: Vec<u64>,
    p: u64,
}

impl FpPoly {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { c, p }
    }

    fn constant(v: u64, p: u64) -> Self {
        Self::new(vec![v % p], p)
    }

    fn from_z(f: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            f.iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("small"))
                .collect(),
            p,
        )
    }

    fn to_z(&self) -> ZPoly {
        self.c.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let i = self.inv(l);
                Self::new(self.c.iter().map(|&v| v * i % self.p).collect(), self.p)
            }
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
                .collect(),
            self.p,
        )
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(Vec::new(), self.p);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(out, self.p)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.deg().expect("nonzero divisor");
        let li = self.inv(*d.c.last().expect("nonzero"));
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new(), self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd] * li % self.p;
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    rem[i + j] = (rem[i + j] + self.p - c * dc % self.p) % self.p;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot, self.p), Self::new(rem, self.p))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(s, t)` with `s·self + t·o = 1`, `deg s < deg o`, `deg t < deg self`.
    fn bezout(&self, o: &Self) -> (Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(1, p), Self::new(Vec::new(), p));
        let (mut t0, mut t1) = (Self::new(Vec::new(), p), Self::constant(1, p));
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            let t = t0.sub(&qt.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let li = self.inv(*r0.c.last().expect("coprime"));
        let scale = Self::constant(li, p);
        (s0.mul(&scale), t0.mul(&scale))
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &v)| (i as u64 % self.p) * v % self.p)
                .collect(),
            self.p,
        )
    }

    fn pow_mod_big(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::constant(1, self.p);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Full factorization of a monic squarefree polynomial into monic
    /// irreducibles.
    fn factor(&self, p: u64) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree() {
            self.equal_degree(g, d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
        out
    }

    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let x = Self::new(vec![0, 1], p);
        let mut out = Vec::new();
        let mut rest = self.clone();
        let mut h = x.clone();
        let mut i = 1;
        while rest.deg().unwrap_or(0) >= 2 * i {
            h = h.pow_mod_big(&BigUint::from(p), &rest);
            let g = rest.gcd(&h.sub(&x));
            if !g.is_one() {
                rest = rest.div_rem(&g).0;
                h = h.rem(&rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.deg().unwrap_or(0) > 0 {
            let d = rest.deg().expect("nonzero");
            out.push((rest.monic(), d));
        }
        out
    }

    fn equal_degree(&self, g: FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = g.deg().expect("nonzero");
        if n == d {
            out.push(g);
            return;
        }
        let p = self.p;
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = FpPoly::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
            if a.deg().unwrap_or(0) == 0 {
                continue;
            }
            let b = a.pow_mod_big(&e, &g).sub(&Self::constant(1, p));
            let c = g.gcd(&b);
            let dc = c.deg().unwrap_or(0);
            if dc > 0 && dc < n {
                let other = g.div_rem(&c).0.monic();
                self.equal_degree(c, d, rng, out);
                self.equal_degree(other, d, rng, out);
                return;
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
