//! Sparse polynomials in (x, z), the carrier of every surface equation.

use std::sync::Arc;

use crate::field::{FieldElement, NumberField, Rat};

use super::mpoly::MPoly;
use super::{Degree, PolyError, UniPoly, Var};

pub const XV: usize = 0;
pub const ZV: usize = 1;

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly(MPoly<2>);

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .terms()
            .map(|(e, c)| format!("({:?})*x^{}*z^{}", c, e[XV], e[ZV]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BiPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        BiPoly(MPoly::zero(field))
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        BiPoly(MPoly::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        BiPoly(MPoly::constant(c))
    }

    pub fn var_x(field: &Arc<NumberField>) -> Self {
        BiPoly(MPoly::var(field, XV))
    }

    pub fn var_z(field: &Arc<NumberField>) -> Self {
        BiPoly(MPoly::var(field, ZV))
    }

    /// `c * x^i * z^j`.
    pub fn monomial(c: FieldElement, i: usize, j: usize) -> Self {
        BiPoly(MPoly::monomial(c, [i as i64, j as i64]))
    }

    pub(crate) fn from_raw(raw: MPoly<2>) -> Self {
        debug_assert!(raw
            .terms()
            .all(|(e, _)| e[XV] >= 0 && e[ZV] >= 0));
        BiPoly(raw)
    }

    pub(crate) fn raw(&self) -> &MPoly<2> {
        &self.0
    }

    /// A univariate polynomial in x or z, embedded.
    pub fn from_uni(f: &UniPoly) -> Self {
        let slot = match f.var() {
            Var::X => XV,
            Var::Z => ZV,
            v => panic!("cannot embed a polynomial in {} into (x,z)", v),
        };
        let mut out = MPoly::zero(f.field());
        for (k, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0i64; 2];
                e[slot] = k as i64;
                out.add_term(e, c.clone());
            }
        }
        BiPoly(out)
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

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.0.coeff(&[i as i64, j as i64])
    }

    pub fn x_degree(&self) -> Degree {
        self.0.degree_in(XV)
    }

    pub fn z_degree(&self) -> Degree {
        self.0.degree_in(ZV)
    }

    pub fn add(&self, other: &Self) -> Self {
        BiPoly(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        BiPoly(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> Self {
        BiPoly(self.0.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        BiPoly(self.0.mul(&other.0))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        BiPoly(self.0.scale(c))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        BiPoly(self.0.scale_rat(r))
    }

    pub fn pow(&self, e: usize) -> Self {
        BiPoly(self.0.pow(e))
    }

    /// Multiply by `x^k`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        BiPoly(self.0.shift_var(XV, k as i64))
    }

    /// Exact division by `x^k`, if every term allows it.
    pub fn div_exact_x_pow(&self, k: usize) -> Option<Self> {
        self.0.div_exact_var(XV, k as i64).map(BiPoly)
    }

    /// `Q(0, z)` as a univariate polynomial in z.
    pub fn eval_x_zero(&self) -> UniPoly {
        self.x_slice(0)
    }

    /// Coefficient of `x^k`, a polynomial in z.
    pub fn x_slice(&self, k: usize) -> UniPoly {
        let sliced = self.0.coeff_of(XV, k as i64);
        let field = self.field().clone();
        let deg = match sliced.degree_in(ZV) {
            Degree::NegInf => return UniPoly::zero(&field, Var::Z),
            Degree::Of(d) => d as usize,
        };
        let mut coeffs = vec![field.zero(); deg + 1];
        for (e, c) in sliced.terms() {
            coeffs[e[ZV] as usize] = c.clone();
        }
        UniPoly::from_coeffs(&field, Var::Z, coeffs)
    }

    /// Coefficient of `z^j`, a polynomial in x.
    pub fn z_slice(&self, j: usize) -> UniPoly {
        let sliced = self.0.coeff_of(ZV, j as i64);
        let field = self.field().clone();
        let deg = match sliced.degree_in(XV) {
            Degree::NegInf => return UniPoly::zero(&field, Var::X),
            Degree::Of(d) => d as usize,
        };
        let mut coeffs = vec![field.zero(); deg + 1];
        for (e, c) in sliced.terms() {
            coeffs[e[XV] as usize] = c.clone();
        }
        UniPoly::from_coeffs(&field, Var::X, coeffs)
    }

    /// If only the requested variable occurs, view as univariate.
    pub fn as_unipoly(&self, var: Var) -> Option<UniPoly> {
        match var {
            Var::Z if self.x_degree() <= Degree::Of(0) => Some(self.x_slice(0)),
            Var::X if self.z_degree() <= Degree::Of(0) => Some(self.z_slice(0)),
            _ => None,
        }
    }

    /// Split as `(low, R)` with `self = low + x^n * R` and `deg_x low < n`.
    pub fn truncate_mod_x(&self, n: usize) -> (Self, Self) {
        let field = self.field();
        let mut low = MPoly::zero(field);
        let mut high = MPoly::zero(field);
        for (e, c) in self.0.terms() {
            if e[XV] < n as i64 {
                low.add_term(*e, c.clone());
            } else {
                high.add_term([e[XV] - n as i64, e[ZV]], c.clone());
            }
        }
        (BiPoly(low), BiPoly(high))
    }

    /// Exact composition `f(x, s(x,z))`.
    pub fn subst_z(&self, s: &BiPoly) -> Self {
        BiPoly(self.0.subst(&[MPoly::var(self.field(), XV), s.0.clone()]))
    }

    /// Exact composition `f(sx(x,z), sz(x,z))`.
    pub fn subst_xz(&self, sx: &BiPoly, sz: &BiPoly) -> Self {
        BiPoly(self.0.subst(&[sx.0.clone(), sz.0.clone()]))
    }

    /// Exact i-th partial derivative in z.
    pub fn derivative_z(&self, order: usize) -> Self {
        let mut out = self.0.clone();
        for _ in 0..order {
            out = out.derivative(ZV);
        }
        BiPoly(out)
    }

    /// Division in z by a nonzero univariate `p(z)`, coefficients in
    /// `K[x]`: `self = q * p + r` with `deg_z r < deg p`.
    pub fn div_z(&self, p: &UniPoly) -> Result<(Self, Self), PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        debug_assert_eq!(p.var(), Var::Z);
        let d = p.degree().finite() as usize;
        let lc_inv = p
            .leading()
            .inv()
            .expect("nonzero leading coefficient");
        let p_bi = BiPoly::from_uni(p);
        let mut rem = self.clone();
        let mut quot = BiPoly::zero(self.field());
        while let Degree::Of(j) = rem.z_degree() {
            if (j as usize) < d {
                break;
            }
            let lead = rem.z_slice(j as usize).scale(&lc_inv); // in K[x]
            let factor = BiPoly(BiPoly::from_uni(&lead).0.shift_var(ZV, j - d as i64));
            quot = quot.add(&factor);
            rem = rem.sub(&factor.mul(&p_bi));
        }
        Ok((quot, rem))
    }

    /// Expansion in powers of `p(z)`: digits `c_j` with `deg_z c_j <
    /// deg p` and `self = sum_j c_j * p^j`. Unique.
    pub fn p_adic_expand(&self, p: &UniPoly) -> Result<Vec<BiPoly>, PolyError> {
        match p.degree() {
            Degree::NegInf => return Err(PolyError::ZeroDivisor),
            Degree::Of(0) => return Err(PolyError::ConstantBase),
            _ => {}
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_z(p)?;
            digits.push(r);
            rest = q;
        }
        Ok(digits)
    }

    pub fn promote(&self, target: &Arc<NumberField>) -> Self {
        BiPoly(self.0.promote(target))
    }

    pub fn map_coeffs(
        &self,
        target: &Arc<NumberField>,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> Self {
        BiPoly(self.0.map_coeffs(target, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, NumberField};

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn x() -> BiPoly {
        BiPoly::var_x(&q())
    }

    fn z() -> BiPoly {
        BiPoly::var_z(&q())
    }

    /// (1+x)(z^2-1)
    fn unit_times_z2m1() -> BiPoly {
        BiPoly::one(&q())
            .add(&x())
            .mul(&z().pow(2).sub(&BiPoly::one(&q())))
    }

    #[test]
    fn truncate_examples() {
        let f = unit_times_z2m1();
        // x-degree already < 2: untouched, R = 0
        let (low, rest) = f.truncate_mod_x(2);
        assert_eq!(low, f);
        assert!(rest.is_zero());
        // mod x: keeps z^2 - 1, R = z^2 - 1
        let (low, rest) = f.truncate_mod_x(1);
        let z2m1 = z().pow(2).sub(&BiPoly::one(&q()));
        assert_eq!(low, z2m1);
        assert_eq!(rest, z2m1);
        // z^2 + x^3 z mod x^3
        let g = z().pow(2).add(&x().pow(3).mul(&z()));
        let (low, rest) = g.truncate_mod_x(3);
        assert_eq!(low, z().pow(2));
        assert_eq!(rest, z());
        // reconstruction identity
        assert_eq!(low.add(&rest.mul_x_pow(3)), g);
    }

    #[test]
    fn subst_z_examples() {
        // (z^2 + x z) at z -> z - x/2 gives z^2 - x^2/4
        let f = z().pow(2).add(&x().mul(&z()));
        let s = z().sub(&x().scale_rat(&rat(1, 2)));
        assert_eq!(
            f.subst_z(&s),
            z().pow(2).sub(&x().pow(2).scale_rat(&rat(1, 4)))
        );
        // identity substitution
        assert_eq!(f.subst_z(&z()), f);
        // z^2 at z -> z+1
        let g = z().pow(2);
        let s = z().add(&BiPoly::one(&q()));
        let expect = z()
            .pow(2)
            .add(&z().scale_rat(&rat(2, 1)))
            .add(&BiPoly::one(&q()));
        assert_eq!(g.subst_z(&s), expect);
    }

    #[test]
    fn derivative_z_examples() {
        let f = unit_times_z2m1();
        let expect = BiPoly::one(&q())
            .add(&x())
            .mul(&z().scale_rat(&rat(2, 1)));
        assert_eq!(f.derivative_z(1), expect);
    }

    #[test]
    fn p_adic_expansion_examples() {
        let field = q();
        // z^3 + z in base z^2: c0 = z, c1 = z
        let f = z().pow(3).add(&z());
        let p = UniPoly::from_ints(&field, Var::Z, &[0, 0, 1]);
        let digits = f.p_adic_expand(&p).unwrap();
        assert_eq!(digits, vec![z(), z()]);

        // p itself: c0 = 0, c1 = 1
        let digits = BiPoly::from_uni(&p).p_adic_expand(&p).unwrap();
        assert_eq!(digits, vec![BiPoly::zero(&field), BiPoly::one(&field)]);

        // x*z^3 in base z^2 - 1: z^3 = z(z^2-1) + z
        let f = x().mul(&z().pow(3));
        let p = UniPoly::from_ints(&field, Var::Z, &[-1, 0, 1]);
        let digits = f.p_adic_expand(&p).unwrap();
        assert_eq!(digits, vec![x().mul(&z()), x().mul(&z())]);

        // reconstruction
        let mut rebuilt = BiPoly::zero(&field);
        for (j, c) in digits.iter().enumerate() {
            rebuilt = rebuilt.add(&c.mul(&BiPoly::from_uni(&p).pow(j)));
        }
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn constant_base_rejected() {
        let p = UniPoly::from_ints(&q(), Var::Z, &[5]);
        assert!(matches!(
            z().p_adic_expand(&p),
            Err(PolyError::ConstantBase)
        ));
    }

    #[test]
    fn division_in_z_with_x_coefficients() {
        // (1+x) z^3 + z by z^2: q = (1+x) z, r = z
        let f = BiPoly::one(&q()).add(&x()).mul(&z().pow(3)).add(&z());
        let p = UniPoly::from_ints(&q(), Var::Z, &[0, 0, 1]);
        let (quot, rem) = f.div_z(&p).unwrap();
        assert_eq!(quot, BiPoly::one(&q()).add(&x()).mul(&z()));
        assert_eq!(rem, z());
        assert_eq!(quot.mul(&BiPoly::from_uni(&p)).add(&rem), f);
    }

    #[test]
    fn slices() {
        let f = unit_times_z2m1(); // z^2 - 1 + x z^2 - x
        assert_eq!(f.x_slice(0), UniPoly::from_ints(&q(), Var::Z, &[-1, 0, 1]));
        assert_eq!(f.x_slice(1), UniPoly::from_ints(&q(), Var::Z, &[-1, 0, 1]));
        assert_eq!(f.eval_x_zero(), f.x_slice(0));
        assert_eq!(f.z_slice(2), UniPoly::from_ints(&q(), Var::X, &[1, 1]));
    }
}
