use std::fmt;

use serde::Serialize;

use super::factor::{is_irreducible, DEFAULT_MAX_DEGREE};
use super::poly::RatPoly;
use crate::error::{Error, Result};

/// `ℚ[x]/(m)` for a monic irreducible `m`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NumberField {
    min_poly: RatPoly,
    generator_name: String,
}

impl NumberField {
    pub fn new(min_poly: RatPoly, generator_name: impl Into<String>) -> Result<Self> {
        if !min_poly.is_monic() || !is_irreducible(&min_poly, DEFAULT_MAX_DEGREE)? {
            return Err(Error::NotIrreducible(min_poly.to_string()));
        }
        Ok(Self::trusted(min_poly, generator_name))
    }

    /// Skips the irreducibility check; used for factors that come straight
    /// out of the factorization routine.
    pub(crate) fn trusted(min_poly: RatPoly, generator_name: impl Into<String>) -> Self {
        Self {
            min_poly,
            generator_name: generator_name.into(),
        }
    }

    pub fn rationals() -> Self {
        Self::trusted(RatPoly::x(), "q")
    }

    pub fn min_poly(&self) -> &RatPoly {
        &self.min_poly
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().expect("nonzero")
    }

    pub fn reduce(&self, a: &RatPoly) -> RatPoly {
        a.rem(&self.min_poly)
    }

    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.mul_mod(b, &self.min_poly)
    }

    pub fn inverse(&self, a: &RatPoly) -> Option<RatPoly> {
        a.inverse_mod(&self.min_poly)
    }

    pub fn div(&self, a: &RatPoly, b: &RatPoly) -> Option<RatPoly> {
        Some(self.mul(a, &self.inverse(b)?))
    }

    /// Coordinates in the power basis.
    pub fn coords(&self, a: &RatPoly) -> Vec<super::poly::Q> {
        self.reduce(a).to_vec(self.degree())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({}) / ({})", self.generator_name, self.min_poly)
    }
}

/// A field homomorphism given by the image of the domain generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldEmbedding {
    domain: NumberField,
    codomain: NumberField,
    image: RatPoly,
}

impl FieldEmbedding {
    pub fn new(domain: NumberField, codomain: NumberField, image: RatPoly) -> Result<Self> {
        let image = codomain.reduce(&image);
        if !domain
            .min_poly()
            .compose_mod(&image, codomain.min_poly())
            .is_zero()
        {
            return Err(Error::BadEmbedding(format!(
                "{} does not vanish at {} modulo {}",
                domain.min_poly(),
                image,
                codomain.min_poly()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(field: &NumberField) -> Self {
        Self {
            domain: field.clone(),
            codomain: field.clone(),
            image: RatPoly::x().rem(field.min_poly()),
        }
    }

    pub fn domain(&self) -> &NumberField {
        &self.domain
    }

    pub fn codomain(&self) -> &NumberField {
        &self.codomain
    }

    pub fn image(&self) -> &RatPoly {
        &self.image
    }

    pub fn apply(&self, a: &RatPoly) -> RatPoly {
        self.domain
            .reduce(a)
            .compose_mod(&self.image, self.codomain.min_poly())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FieldEmbedding) -> Result<FieldEmbedding> {
        if self.codomain != other.domain {
            return Err(Error::BadEmbedding("codomain/domain mismatch".into()));
        }
        FieldEmbedding::new(
            self.domain.clone(),
            other.codomain.clone(),
            other.apply(&self.image),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reducible() {
        assert!(NumberField::new(RatPoly::from_ints(&[-1, 0, 1]), "a").is_err());
        assert!(NumberField::new(RatPoly::from_ints(&[-2, 0, 2]), "a").is_err());
        assert!(NumberField::new(RatPoly::from_ints(&[-2, 0, 0, 1]), "a").is_ok());
    }

    #[test]
    fn embedding_check() {
        // Q(sqrt 2) -> Q(2^(1/4)), sqrt 2 -> t^2
        let k = NumberField::new(RatPoly::from_ints(&[-2, 0, 1]), "s").unwrap();
        let l = NumberField::new(RatPoly::from_ints(&[-2, 0, 0, 0, 1]), "t").unwrap();
        let e = FieldEmbedding::new(k.clone(), l.clone(), RatPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(e.apply(&RatPoly::from_ints(&[1, 1])), RatPoly::from_ints(&[1, 0, 1]));
        assert!(FieldEmbedding::new(k, l, RatPoly::from_ints(&[0, 1])).is_err());
    }

    #[test]
    fn field_inverse() {
        let k = NumberField::new(RatPoly::from_ints(&[1, 0, 1]), "i").unwrap();
        let a = RatPoly::from_ints(&[1, 1]);
        let inv = k.inverse(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), RatPoly::one());
    }
}
