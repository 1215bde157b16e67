//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficients are stored constant term first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Q>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| q(v)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::from_coeffs(c.iter().cloned().map(Q::from_integer).collect())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Q::zero(); n + 1];
        c[n] = Q::one();
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Long division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero). Remainders
    /// are replaced by their primitive parts to keep coefficients small.
    pub fn gcd(&self, other: &Self) -> Self {
        let prim = |p: &Self| {
            if p.is_zero() {
                Self::zero()
            } else {
                Self::from_bigints(&p.primitive_int().1)
            }
        };
        let (mut a, mut b) = (prim(self), prim(other));
        while !b.is_zero() {
            let r = prim(&a.rem(&b));
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s = &s0 - &(&qt * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(&r0.leading().recip()).rem(m))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    /// `self(inner)` reduced modulo `m`.
    pub fn compose_mod(&self, inner: &Self, m: &Self) -> Self {
        let inner = inner.rem(m);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            (&acc.mul_mod(&inner, m) + &Self::constant(c.clone())).rem(m)
        })
    }

    /// `self(inner)` without reduction.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Splits off a positive rational content so that the remaining
    /// polynomial has coprime integer coefficients and positive leading
    /// coefficient: `self = content · primitive`.
    pub fn primitive_int(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Q::new(g, den), prim)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Dense coefficient vector of length `n`, zero padded.
    pub fn to_vec(&self, n: usize) -> Vec<Q> {
        let mut v = self.coeffs.clone();
        v.resize(n, Q::zero());
        v
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// A JSON coefficient: an integer literal when it fits, a `"p/q"` or
/// big-integer string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub Q);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.to_integer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Coeff(q(v))),
            Raw::Text(t) => parse_rational(&t).map(Coeff).map_err(de::Error::custom),
        }
    }
}

pub fn parse_rational(t: &str) -> Result<Q, String> {
    let t = t.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational `{t}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational `{t}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{t}`"));
    }
    Ok(Q::new(n, d))
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c: Vec<Coeff> = self.coeffs.iter().cloned().map(Coeff).collect();
        c.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c: Vec<Coeff> = Vec::deserialize(d)?;
        Ok(RatPoly::from_coeffs(c.into_iter().map(|c| c.0).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let f = RatPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let g = RatPoly::from_ints(&[-1, 1]); // x - 1
        let (qt, r) = f.div_rem(&g);
        assert_eq!(qt, RatPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let h = RatPoly::from_ints(&[1, 2, 1]); // (x + 1)^2
        assert_eq!(f.gcd(&h), RatPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn inverse_modulo() {
        let m = RatPoly::from_ints(&[-2, 0, 0, 1]);
        let a = RatPoly::from_ints(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul_mod(&inv, &m), RatPoly::one());
        assert!(RatPoly::from_ints(&[-1, 1])
            .inverse_mod(&RatPoly::from_ints(&[-1, 0, 1]))
            .is_none());
    }

    #[test]
    fn primitive_part() {
        let f = RatPoly::from_coeffs(vec![Q::new(1.into(), 2.into()), q(0), Q::new((-3).into(), 4.into())]);
        let (c, p) = f.primitive_int();
        assert_eq!(p, vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(RatPoly::from_bigints(&p).scale(&c), f);
    }

    #[test]
    fn display_and_serde() {
        let f = RatPoly::from_ints(&[31, 36, 27, -4, 9, 0, 1]);
        assert_eq!(f.to_string(), "x^6 + 9x^4 - 4x^3 + 27x^2 + 36x + 31");
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "[31,36,27,-4,9,0,1]");
        let half: RatPoly = serde_json::from_str("[\"1/2\", 1]").unwrap();
        assert_eq!(half.coeff(0), Q::new(1.into(), 2.into()));
    }

    #[test]
    fn compose_mod_is_substitution() {
        let m = RatPoly::from_ints(&[1, 0, 1]); // i^2 = -1
        let conj = RatPoly::from_ints(&[0, -1]);
        let f = RatPoly::from_ints(&[3, 5]);
        assert_eq!(f.compose_mod(&conj, &m), RatPoly::from_ints(&[3, -5]));
        assert!(m.compose_mod(&conj, &m).is_zero());
    }
}
