//! Dense univariate polynomials with coefficients in a number field.
//!
//! Shared by the extension-field machinery (Trager norms, tower collapse)
//! and by the public univariate type in the `poly` module, which wraps
//! this with a variable tag.

use std::sync::Arc;

use num_traits::Zero;

use super::{FieldElement, NumberField, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    field: Arc<NumberField>,
    coeffs: Vec<FieldElement>,
}

impl std::fmt::Debug for KPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("{:?}", c)).collect();
        write!(f, "KPoly[{}]", parts.join(", "))
    }
}

impl KPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        KPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        KPoly::constant(field.one())
    }

    pub fn var(field: &Arc<NumberField>) -> Self {
        KPoly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        KPoly::from_coeffs(&field, vec![c])
    }

    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<FieldElement>) -> Self {
        for c in &coeffs {
            assert!(c.field().compatible(field), "coefficient from wrong field");
        }
        let mut p = KPoly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn monomial(field: &Arc<NumberField>, c: FieldElement, k: usize) -> Self {
        if c.is_zero() {
            return KPoly::zero(field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        KPoly::from_coeffs(field, coeffs)
    }

    /// Lift a rational polynomial into `field`.
    pub fn from_qpoly(field: &Arc<NumberField>, f: &super::QPoly) -> Self {
        KPoly::from_coeffs(
            field,
            f.coeffs().iter().map(|c| field.from_rat(c.clone())).collect(),
        )
    }

    /// Back to a rational polynomial; `None` if any coefficient is
    /// irrational.
    pub fn to_qpoly(&self) -> Option<super::QPoly> {
        let mut coeffs: Vec<Rat> = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.as_rational()?);
        }
        Some(super::QPoly::from_coeffs(coeffs))
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn neg(&self) -> Self {
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        KPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        KPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return KPoly::zero(&self.field);
        }
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return KPoly::zero(&self.field);
        }
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        KPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = KPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv().expect("nonzero leading coefficient"))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return KPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&super::rat_int(i as i64)))
            .collect();
        KPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc_inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.deg() >= dd {
            let k = rem.deg() - dd;
            let c = rem.leading().mul(&lc_inv);
            quot[k] = c.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = rem.coeff(i + k).sub(&dc.mul(&c));
                rem.coeffs[i + k] = v;
            }
            rem.normalize();
        }
        (KPoly::from_coeffs(&self.field, quot), rem)
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = KPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&KPoly::constant(c.clone()));
        }
        acc
    }

    /// Apply a map to every coefficient (e.g. a field embedding).
    pub fn map_coeffs(
        &self,
        target: &Arc<NumberField>,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> Self {
        KPoly::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }
}
