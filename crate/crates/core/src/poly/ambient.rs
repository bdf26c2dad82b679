//! Polynomials on ambient 3-space and Laurent polynomials on a chart.
//!
//! `AmbientPoly` carries defining equations `x^n*y - Q(x,z)` and the
//! components of polynomial self-maps of 3-space. `LaurentBiPoly` is the
//! coordinate ring view of a Danielewski hypersurface inside
//! `K[x, x^-1, z]` via `y = x^-n Q(x,z)`: substitution there decides
//! membership in the defining ideal because `y` occurs linearly.

use std::sync::Arc;

use crate::field::{FieldElement, NumberField, Rat};

use super::mpoly::MPoly;
use super::{BiPoly, Degree, UniPoly, Var};

pub const AX: usize = 0;
pub const AY: usize = 1;
pub const AZ: usize = 2;

#[derive(Clone, PartialEq, Eq)]
pub struct AmbientPoly(MPoly<3>);

impl std::fmt::Debug for AmbientPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .terms()
            .map(|(e, c)| format!("({:?})*x^{}*y^{}*z^{}", c, e[AX], e[AY], e[AZ]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AmbientPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        AmbientPoly(MPoly::zero(field))
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        AmbientPoly(MPoly::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        AmbientPoly(MPoly::constant(c))
    }

    pub fn var(field: &Arc<NumberField>, v: Var) -> Self {
        AmbientPoly(MPoly::var(field, ambient_slot(v)))
    }

    /// `c * x^i * y^j * z^k`.
    pub fn monomial(c: FieldElement, i: usize, j: usize, k: usize) -> Self {
        AmbientPoly(MPoly::monomial(c, [i as i64, j as i64, k as i64]))
    }

    pub fn from_bipoly(f: &BiPoly) -> Self {
        AmbientPoly(f.raw().embed([AX, AZ]))
    }

    pub fn from_uni(f: &UniPoly) -> Self {
        AmbientPoly::from_bipoly(&BiPoly::from_uni(f))
    }

    pub(crate) fn raw(&self) -> &MPoly<3> {
        &self.0
    }

    pub(crate) fn from_raw(raw: MPoly<3>) -> Self {
        AmbientPoly(raw)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.0.field()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_constant()
    }

    pub fn to_scalar(&self) -> FieldElement {
        self.0.to_scalar()
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> FieldElement {
        self.0.coeff(&[i as i64, j as i64, k as i64])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; 3], &FieldElement)> {
        self.0.terms()
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        self.0.degree_in(ambient_slot(v))
    }

    pub fn add(&self, other: &Self) -> Self {
        AmbientPoly(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        AmbientPoly(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> Self {
        AmbientPoly(self.0.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        AmbientPoly(self.0.mul(&other.0))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        AmbientPoly(self.0.scale(c))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        AmbientPoly(self.0.scale_rat(r))
    }

    pub fn pow(&self, e: usize) -> Self {
        AmbientPoly(self.0.pow(e))
    }

    pub fn derivative(&self, v: Var) -> Self {
        AmbientPoly(self.0.derivative(ambient_slot(v)))
    }

    /// Coefficient of `y^j` as a polynomial in (x, z).
    pub fn y_slice(&self, j: usize) -> BiPoly {
        let mut out = MPoly::zero(self.field());
        for (e, c) in self.0.terms() {
            if e[AY] == j as i64 {
                out.add_term([e[AX], e[AZ]], c.clone());
            }
        }
        BiPoly::from_raw(out)
    }

    /// View as a polynomial in (x, z) when y does not occur.
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        if self.degree_in(Var::Y) > Degree::Of(0) {
            return None;
        }
        Some(self.y_slice(0))
    }

    /// Exact composition with a coordinate map `(x,y,z) -> images`.
    pub fn subst3(&self, images: &[AmbientPoly; 3]) -> Self {
        AmbientPoly(self.0.subst(&[
            images[0].0.clone(),
            images[1].0.clone(),
            images[2].0.clone(),
        ]))
    }

    /// Substitute `y -> x^-n Q(x,z)`, landing in Laurent polynomials.
    pub fn subst_y_laurent(&self, n: usize, big_q: &BiPoly) -> LaurentBiPoly {
        let field = self.field();
        let y_image = big_q.raw().shift_var(super::bipoly::XV, -(n as i64));
        let images = [
            MPoly::var(field, super::bipoly::XV),
            y_image,
            MPoly::var(field, super::bipoly::ZV),
        ];
        LaurentBiPoly(self.0.subst(&images))
    }

    /// Exact division by `x^k`, if possible.
    pub fn div_exact_x_pow(&self, k: usize) -> Option<Self> {
        self.0.div_exact_var(AX, k as i64).map(AmbientPoly)
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        AmbientPoly(self.0.shift_var(AX, k as i64))
    }

    pub fn promote(&self, target: &Arc<NumberField>) -> Self {
        AmbientPoly(self.0.promote(target))
    }

    pub fn map_coeffs(
        &self,
        target: &Arc<NumberField>,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> Self {
        AmbientPoly(self.0.map_coeffs(target, f))
    }
}

fn ambient_slot(v: Var) -> usize {
    match v {
        Var::X => AX,
        Var::Y => AY,
        Var::Z => AZ,
        Var::T => panic!("t is not an ambient coordinate"),
    }
}

/// Laurent polynomials in (x, z): x-exponents may be negative, z-exponents
/// may not.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentBiPoly(MPoly<2>);

impl std::fmt::Debug for LaurentBiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .terms()
            .map(|(e, c)| format!("({:?})*x^{}*z^{}", c, e[0], e[1]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl LaurentBiPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        LaurentBiPoly(MPoly::zero(field))
    }

    pub fn from_bipoly(f: &BiPoly) -> Self {
        LaurentBiPoly(f.raw().clone())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.0.field()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentBiPoly(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        LaurentBiPoly(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentBiPoly(self.0.mul(&other.0))
    }

    pub fn coeff(&self, i: i64, j: i64) -> FieldElement {
        self.0.coeff(&[i, j])
    }

    pub fn min_x_degree(&self) -> Degree {
        self.0.min_degree_in(0)
    }

    /// Multiply by `x^k` (k may be negative).
    pub fn shift_x(&self, k: i64) -> Self {
        LaurentBiPoly(self.0.shift_var(0, k))
    }

    /// Back to an ordinary polynomial when no negative powers remain.
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        if matches!(self.min_x_degree(), Degree::Of(d) if d < 0) {
            return None;
        }
        Some(BiPoly::from_raw(self.0.clone()))
    }
}
