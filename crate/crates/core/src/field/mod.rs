//! Exact coefficient arithmetic: rationals and simple algebraic extensions.
//!
//! Every scalar in this crate is a [`FieldElement`] of some [`NumberField`]
//! `Q[t]/(m(t))` with `m` monic and irreducible. The rationals themselves
//! are the degree-one field with `m = t`. Elements are coordinate vectors
//! in the power basis of the generator; all operations reduce modulo `m`
//! and rationals stay in lowest terms, so equality is literal coordinate
//! equality. Elements of different home fields never mix silently.
//!
//! Towers are not represented: extending a proper extension collapses to a
//! fresh simple extension of the rationals via a primitive element (see
//! [`extension`]). One generator is always enough here because the
//! classification constants are cut out by univariate constraints.

mod factor;
pub(crate) mod kpoly;
mod modp;
mod qpoly;
mod rational;

pub mod extension;

pub use factor::{factor_irreducible, factor_squarefree, is_irreducible, rational_roots};
pub use extension::{extend, Extension};
pub use qpoly::{interpolate, QPoly};
pub use rational::{rat, rat_int, rat_sqrt, rat_to_string, Rat};

use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different home fields")]
    MismatchedFields,
    #[error("zero input")]
    ZeroInput,
    #[error("constant input")]
    ConstantInput,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
}

/// A simple extension `Q[t]/(m(t))`, `m` monic irreducible. Degree one is
/// the rationals themselves.
#[derive(Debug)]
pub struct NumberField {
    name: String,
    min_poly: QPoly,
}

static RATIONALS: OnceLock<Arc<NumberField>> = OnceLock::new();

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// The rational field, shared.
    pub fn rationals() -> Arc<NumberField> {
        RATIONALS
            .get_or_init(|| {
                Arc::new(NumberField {
                    name: "t".to_string(),
                    min_poly: QPoly::var(),
                })
            })
            .clone()
    }

    /// Build `Q[name]/(m)`. The polynomial is monicized; irreducibility is
    /// certified by the factorizer, not assumed.
    pub fn new(name: &str, min_poly: &QPoly) -> Result<Arc<NumberField>, FieldError> {
        if min_poly.is_zero() || min_poly.is_constant() {
            return Err(FieldError::ConstantInput);
        }
        let m = min_poly.monic();
        if m.deg() == 1 {
            return Ok(NumberField::rationals());
        }
        if !is_irreducible(&m) {
            return Err(FieldError::Reducible(m.to_string_in(name)));
        }
        Ok(Arc::new(NumberField {
            name: name.to_string(),
            min_poly: m,
        }))
    }

    /// As [`NumberField::new`] but trusting the caller on irreducibility.
    pub(crate) fn new_unchecked(name: &str, min_poly: QPoly) -> Arc<NumberField> {
        debug_assert!(min_poly.leading().is_one());
        if min_poly.deg() == 1 && min_poly.coeff(0).is_zero() {
            return NumberField::rationals();
        }
        Arc::new(NumberField {
            name: name.to_string(),
            min_poly,
        })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn generator_name(&self) -> &str {
        &self.name
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn compatible(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.min_poly == other.min_poly
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Rat::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = r;
        // In a degree-one field Q[t]/(t - c) the basis is {1}, so the
        // constant coordinate is the value itself either way.
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_rat(rat_int(n))
    }

    /// The class of `t`, i.e. the distinguished root of the minimal
    /// polynomial.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.reduce_qpoly(&QPoly::var())
    }

    /// Reduce a rational polynomial in the generator modulo the minimal
    /// polynomial.
    pub fn reduce_qpoly(self: &Arc<Self>, f: &QPoly) -> FieldElement {
        let (_, r) = f.divrem(&self.min_poly);
        let mut coords = vec![Rat::zero(); self.degree()];
        for (i, c) in r.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_coords(self: &Arc<Self>, coords: Vec<Rat>) -> Result<FieldElement, FieldError> {
        if coords.len() != self.degree() {
            return Err(FieldError::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }
}

/// An exact scalar: coordinates in the power basis of its home field's
/// generator.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_qpoly().to_string_in(self.field.generator_name()))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.compatible(&other.field) && self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational if it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coords[0].clone())
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coords.clone())
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field.compatible(&other.field),
            "field elements from different home fields: {} vs {}",
            self.field.min_poly().to_string_in("t"),
            other.field.min_poly().to_string_in("t"),
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        self.field
            .reduce_qpoly(&self.to_qpoly().mul(&other.to_qpoly()))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = self.to_qpoly().extended_gcd(self.field.min_poly());
        debug_assert!(g.is_one(), "minimal polynomial not irreducible?");
        Ok(self.field.reduce_qpoly(&s))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Move a rational-valued element into another field.
    pub fn promote_to(&self, target: &Arc<NumberField>) -> Option<FieldElement> {
        if self.field.compatible(target) {
            return Some(FieldElement {
                field: target.clone(),
                coords: self.coords.clone(),
            });
        }
        self.as_rational().map(|r| target.from_rat(r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: errors on mismatched home fields and on division by
/// zero instead of panicking.
pub fn arith(op: ArithOp, lhs: &FieldElement, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
    if !lhs.field.compatible(&rhs.field) {
        return Err(FieldError::MismatchedFields);
    }
    match op {
        ArithOp::Add => Ok(lhs.add(rhs)),
        ArithOp::Sub => Ok(lhs.sub(rhs)),
        ArithOp::Mul => Ok(lhs.mul(rhs)),
        ArithOp::Div => lhs.div(rhs),
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}
impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}
impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}
impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}
