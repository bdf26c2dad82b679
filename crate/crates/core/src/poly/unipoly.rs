//! Univariate polynomials over a number field, tagged with their variable.
//!
//! Dense representation; the coefficient engine is shared with the field
//! module. Binary operations insist on matching variables so a `p(z)`
//! never silently mixes with a `beta(x)`.

use std::sync::Arc;

use crate::field::kpoly::KPoly;
use crate::field::{FieldElement, NumberField, QPoly, Rat};

use super::{Degree, PolyError, Var};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: Var,
    inner: KPoly,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .inner
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({:?})*{}^{}", c, self.var, i))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl UniPoly {
    pub fn zero(field: &Arc<NumberField>, var: Var) -> Self {
        UniPoly {
            var,
            inner: KPoly::zero(field),
        }
    }

    pub fn one(field: &Arc<NumberField>, var: Var) -> Self {
        UniPoly {
            var,
            inner: KPoly::one(field),
        }
    }

    pub fn var_poly(field: &Arc<NumberField>, var: Var) -> Self {
        UniPoly {
            var,
            inner: KPoly::var(field),
        }
    }

    pub fn constant(c: FieldElement, var: Var) -> Self {
        UniPoly {
            var,
            inner: KPoly::constant(c),
        }
    }

    pub fn from_coeffs(field: &Arc<NumberField>, var: Var, coeffs: Vec<FieldElement>) -> Self {
        UniPoly {
            var,
            inner: KPoly::from_coeffs(field, coeffs),
        }
    }

    pub fn from_rats(field: &Arc<NumberField>, var: Var, coeffs: &[Rat]) -> Self {
        UniPoly {
            var,
            inner: KPoly::from_coeffs(
                field,
                coeffs.iter().map(|r| field.from_rat(r.clone())).collect(),
            ),
        }
    }

    pub fn from_ints(field: &Arc<NumberField>, var: Var, coeffs: &[i64]) -> Self {
        UniPoly {
            var,
            inner: KPoly::from_coeffs(
                field,
                coeffs.iter().map(|&n| field.from_int(n)).collect(),
            ),
        }
    }

    pub fn from_qpoly(field: &Arc<NumberField>, var: Var, f: &QPoly) -> Self {
        UniPoly {
            var,
            inner: KPoly::from_qpoly(field, f),
        }
    }

    pub fn to_qpoly(&self) -> Option<QPoly> {
        self.inner.to_qpoly()
    }

    pub(crate) fn from_kpoly(var: Var, inner: KPoly) -> Self {
        UniPoly { var, inner }
    }

    pub(crate) fn kpoly(&self) -> &KPoly {
        &self.inner
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.inner.field()
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Same polynomial, different variable tag.
    pub fn retag(&self, var: Var) -> Self {
        UniPoly {
            var,
            inner: self.inner.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    pub fn degree(&self) -> Degree {
        self.inner
            .degree()
            .map_or(Degree::NegInf, |d| Degree::Of(d as i64))
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.inner.coeff(k)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        self.inner.coeffs()
    }

    pub fn leading(&self) -> FieldElement {
        self.inner.leading()
    }

    fn check_var(&self, other: &Self) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                expected: self.var,
                got: other.var,
            })
        }
    }

    fn assert_var(&self, other: &Self) {
        self.check_var(other)
            .unwrap_or_else(|e| panic!("{}", e));
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_var(other);
        UniPoly {
            var: self.var,
            inner: self.inner.add(&other.inner),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_var(other);
        UniPoly {
            var: self.var,
            inner: self.inner.sub(&other.inner),
        }
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            var: self.var,
            inner: self.inner.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_var(other);
        UniPoly {
            var: self.var,
            inner: self.inner.mul(&other.inner),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        UniPoly {
            var: self.var,
            inner: self.inner.scale(c),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        UniPoly {
            var: self.var,
            inner: self.inner.pow(e),
        }
    }

    pub fn monic(&self) -> Self {
        UniPoly {
            var: self.var,
            inner: self.inner.monic(),
        }
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        UniPoly {
            var: self.var,
            inner: self.inner.shift_up(k),
        }
    }

    /// Exact i-th derivative.
    pub fn derivative(&self, order: usize) -> Self {
        let mut inner = self.inner.clone();
        for _ in 0..order {
            inner = inner.derivative();
        }
        UniPoly {
            var: self.var,
            inner,
        }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.inner.eval(x)
    }

    pub fn compose(&self, g: &Self) -> Self {
        UniPoly {
            var: g.var,
            inner: self.inner.compose(&g.inner),
        }
    }

    /// Euclidean division `self = q*d + r` with `deg r < deg d`.
    pub fn div_euclid(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.check_var(d)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let (q, r) = self.inner.divrem(&d.inner);
        Ok((
            UniPoly {
                var: self.var,
                inner: q,
            },
            UniPoly {
                var: self.var,
                inner: r,
            },
        ))
    }

    pub fn promote(&self, target: &Arc<NumberField>) -> Self {
        UniPoly {
            var: self.var,
            inner: self.inner.map_coeffs(target, |c| {
                c.promote_to(target)
                    .expect("coefficient is not rational; use an explicit embedding")
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn division_examples() {
        // z^3 by z^2 - 1: quotient z, remainder z
        let f = UniPoly::from_ints(&q(), Var::Z, &[0, 0, 0, 1]);
        let d = UniPoly::from_ints(&q(), Var::Z, &[-1, 0, 1]);
        let (quot, rem) = f.div_euclid(&d).unwrap();
        assert_eq!(quot, UniPoly::from_ints(&q(), Var::Z, &[0, 1]));
        assert_eq!(rem, UniPoly::from_ints(&q(), Var::Z, &[0, 1]));

        // f by itself: (1, 0)
        let (quot, rem) = d.div_euclid(&d).unwrap();
        assert_eq!(quot, UniPoly::one(&q(), Var::Z));
        assert!(rem.is_zero());

        // z^4 + z by z^2: (z^2, z)
        let f = UniPoly::from_ints(&q(), Var::Z, &[0, 1, 0, 0, 1]);
        let d = UniPoly::from_ints(&q(), Var::Z, &[0, 0, 1]);
        let (quot, rem) = f.div_euclid(&d).unwrap();
        assert_eq!(quot, d);
        assert_eq!(rem, UniPoly::from_ints(&q(), Var::Z, &[0, 1]));
    }

    #[test]
    fn zero_divisor_is_an_error() {
        let f = UniPoly::from_ints(&q(), Var::Z, &[1, 1]);
        assert!(matches!(
            f.div_euclid(&UniPoly::zero(&q(), Var::Z)),
            Err(PolyError::ZeroDivisor)
        ));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let f = UniPoly::from_ints(&q(), Var::Z, &[1, 1]);
        let g = UniPoly::from_ints(&q(), Var::X, &[1, 1]);
        assert!(matches!(
            f.div_euclid(&g),
            Err(PolyError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn derivatives() {
        // z^2: first derivative 2z, second 2, third 0
        let f = UniPoly::from_ints(&q(), Var::Z, &[0, 0, 1]);
        assert_eq!(f.derivative(1), UniPoly::from_ints(&q(), Var::Z, &[0, 2]));
        assert_eq!(f.derivative(2), UniPoly::from_ints(&q(), Var::Z, &[2]));
        assert!(f.derivative(3).is_zero());
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(UniPoly::zero(&q(), Var::Z).degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Of(0));
        assert!(Degree::NegInf < Degree::Of(-100));
    }
}
