//! Danielewski hypersurfaces and their additive-group structure.
//!
//! A surface is a pair `(n, Q)` with `n >= 1` and `deg_z Q(0,z) >= 2`,
//! standing for the zero set of `x^n*y - Q(x,z)` in affine 3-space. `Q` is
//! stored exactly as given; nothing normalizes it silently.
//!
//! The canonical derivation `h(x) * (x^n d/dz + dQ/dz d/dy)` kills `x`, is
//! tangent to the surface, and is locally nilpotent; it integrates to the
//! action `(x, y, z) -> (x, y + x^-n(Q(x, z+t*x^n) - Q(x,z)), z + t*x^n)`.
//! Both are exposed with exact checks: tangency, kernel containments,
//! nilpotency degrees and the group law are all decidable by substitution.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldElement, NumberField};
use crate::poly::mpoly::MPoly;
use crate::poly::{AmbientPoly, BiPoly, Degree, LaurentBiPoly, UniPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("deg_z Q(0,z) = {found} is below 2")]
    DegreeTooLow { found: Degree },
    #[error("exponent n = {n} must be at least 1")]
    NonPositiveExponent { n: i64 },
    #[error("derivation multiplier is zero")]
    ZeroMultiplier,
}

/// The hypersurface `x^n*y = Q(x,z)`.
#[derive(Clone, PartialEq, Eq)]
pub struct DanielewskiSurface {
    n: usize,
    q: BiPoly,
}

impl std::fmt::Debug for DanielewskiSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "X(n={}, Q={:?})", self.n, self.q)
    }
}

impl DanielewskiSurface {
    /// Accepts exactly the pairs with `n >= 1` and `deg_z Q(0,z) >= 2`.
    pub fn validate(n: i64, q: BiPoly) -> Result<Self, SurfaceError> {
        if n < 1 {
            return Err(SurfaceError::NonPositiveExponent { n });
        }
        let d = q.eval_x_zero().degree();
        if d < Degree::Of(2) {
            return Err(SurfaceError::DegreeTooLow { found: d });
        }
        Ok(DanielewskiSurface { n: n as usize, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &BiPoly {
        &self.q
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.q.field()
    }

    /// `Q(0, z)`.
    pub fn p(&self) -> UniPoly {
        self.q.eval_x_zero()
    }

    /// The isomorphism invariants `(n, deg_z Q(0,z))`.
    pub fn invariants(&self) -> (usize, usize) {
        (self.n, self.p().degree().finite() as usize)
    }

    /// `F = x^n*y - Q(x,z)`.
    pub fn defining_polynomial(&self) -> AmbientPoly {
        AmbientPoly::monomial(self.field().one(), self.n, 1, 0)
            .sub(&AmbientPoly::from_bipoly(&self.q))
    }

    /// Restrict an ambient polynomial to the surface chart
    /// `y = x^-n Q(x,z)`.
    pub fn pullback(&self, g: &AmbientPoly) -> LaurentBiPoly {
        g.subst_y_laurent(self.n, &self.q)
    }

    /// Membership in the defining ideal, decided by substitution (complete
    /// because y occurs linearly in F).
    pub fn vanishes_on(&self, g: &AmbientPoly) -> bool {
        self.pullback(g).is_zero()
    }

    pub fn ml_invariant(&self) -> MLReport {
        if self.n == 1 {
            MLReport::Trivial
        } else {
            MLReport::PolynomialRingInX
        }
    }

    /// The derivation `h(x) * (x^n d/dz + dQ/dz d/dy)`.
    pub fn canonical_lnd(&self, h: &UniPoly) -> Result<Derivation, SurfaceError> {
        if h.is_zero() {
            return Err(SurfaceError::ZeroMultiplier);
        }
        assert_eq!(h.var(), Var::X, "multiplier must be a polynomial in x");
        Ok(Derivation {
            h: h.clone(),
            surface: self.clone(),
        })
    }

    /// The additive group action integrating the canonical derivation.
    /// The divided difference is certified polynomial by exact division.
    pub fn plus_action(&self) -> PlusAction {
        let field = self.field();
        let x = MPoly::<4>::var(field, 0);
        let y = MPoly::<4>::var(field, 1);
        let z = MPoly::<4>::var(field, 2);
        let t = MPoly::<4>::var(field, 3);
        let xn = x.pow(self.n);
        let z_shift = z.add(&t.mul(&xn));
        let q4: MPoly<4> = self.q.raw().embed([0, 2]);
        let q_shifted = q4.subst(&[x.clone(), y.clone(), z_shift.clone(), t.clone()]);
        let diff = q_shifted.sub(&q4);
        let divided = diff
            .div_exact_var(0, self.n as i64)
            .expect("Q(x, z + t*x^n) - Q(x, z) is divisible by x^n");
        PlusAction {
            x,
            y: y.add(&divided),
            z: z_shift,
        }
    }

    pub fn promote(&self, target: &Arc<NumberField>) -> Self {
        DanielewskiSurface {
            n: self.n,
            q: self.q.promote(target),
        }
    }
}

impl std::fmt::Display for DanielewskiSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{}*y = {:?}", self.n, self.q)
    }
}

/// What the Makar-Limanov invariant is, read off the exponent.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MLReport {
    /// n = 1: the invariant is the whole constant field.
    Trivial,
    /// n >= 2: the invariant is the polynomial ring in x.
    PolynomialRingInX,
}

/// `h(x) * (x^n d/dz + dQ/dz d/dy)` on a fixed surface.
#[derive(Clone)]
pub struct Derivation {
    h: UniPoly,
    surface: DanielewskiSurface,
}

impl Derivation {
    pub fn surface(&self) -> &DanielewskiSurface {
        &self.surface
    }

    pub fn multiplier(&self) -> &UniPoly {
        &self.h
    }

    /// Image of z: `h * x^n`.
    pub fn dz(&self) -> AmbientPoly {
        AmbientPoly::from_uni(&self.h).mul(&AmbientPoly::monomial(
            self.surface.field().one(),
            self.surface.n,
            0,
            0,
        ))
    }

    /// Image of y: `h * dQ/dz`.
    pub fn dy(&self) -> AmbientPoly {
        AmbientPoly::from_uni(&self.h)
            .mul(&AmbientPoly::from_bipoly(&self.surface.q.derivative_z(1)))
    }

    /// Apply by the Leibniz rule: `D(g) = D(z) dg/dz + D(y) dg/dy`.
    pub fn apply(&self, g: &AmbientPoly) -> AmbientPoly {
        self.dz()
            .mul(&g.derivative(Var::Z))
            .add(&self.dy().mul(&g.derivative(Var::Y)))
    }

    /// The nilpotency degree of `g`: the largest m with `D^m(g)` nonzero
    /// on the surface, capped to guarantee termination.
    pub fn nilpotency_degree(&self, g: &AmbientPoly, cap: usize) -> NilpotencyDegree {
        assert!(cap >= 1);
        if self.surface.vanishes_on(g) {
            return NilpotencyDegree::MinusInfinity;
        }
        let mut cur = g.clone();
        for applications in 1..=(cap + 1) {
            cur = self.apply(&cur);
            if self.surface.vanishes_on(&cur) {
                return NilpotencyDegree::Finite(applications - 1);
            }
        }
        NilpotencyDegree::ExceededCap
    }

    /// Default cap for [`Derivation::nilpotency_degree`].
    pub fn default_cap(&self) -> usize {
        4 * (self.surface.invariants().1 + 1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NilpotencyDegree {
    /// The element is already zero on the surface.
    MinusInfinity,
    Finite(usize),
    /// Suspiciously many applications without reaching zero.
    ExceededCap,
}

/// The action triple `(x, y + ..., z + t*x^n)` as polynomials in
/// (x, y, z, t).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlusAction {
    pub x: MPoly<4>,
    pub y: MPoly<4>,
    pub z: MPoly<4>,
}

impl PlusAction {
    /// Specialize the parameter to a scalar.
    pub fn at(&self, t: &FieldElement) -> [AmbientPoly; 3] {
        let field = t.field();
        let images = [
            MPoly::<3>::var(field, 0),
            MPoly::<3>::var(field, 1),
            MPoly::<3>::var(field, 2),
            MPoly::<3>::constant(t.clone()),
        ];
        [
            AmbientPoly::from_raw(self.x.subst(&images)),
            AmbientPoly::from_raw(self.y.subst(&images)),
            AmbientPoly::from_raw(self.z.subst(&images)),
        ]
    }

    /// Compose with a second copy of the action at an independent
    /// parameter: the result lives in (x, y, z, s, t).
    pub fn compose_two_parameters(&self) -> [MPoly<5>; 3] {
        let field = self.x.field();
        // first apply the action at parameter t, then at parameter s
        let at_t: Vec<MPoly<5>> = [&self.x, &self.y, &self.z]
            .iter()
            .map(|c| c.embed::<5>([0, 1, 2, 4]))
            .collect();
        let s = MPoly::<5>::var(field, 3);
        let images = [at_t[0].clone(), at_t[1].clone(), at_t[2].clone(), s];
        [
            self.x.subst(&images),
            self.y.subst(&images),
            self.z.subst(&images),
        ]
    }

    /// The action with `t` replaced by `s + t`, in (x, y, z, s, t).
    pub fn at_sum_of_parameters(&self) -> [MPoly<5>; 3] {
        let field = self.x.field();
        let s = MPoly::<5>::var(field, 3);
        let t = MPoly::<5>::var(field, 4);
        let images = [
            MPoly::<5>::var(field, 0),
            MPoly::<5>::var(field, 1),
            MPoly::<5>::var(field, 2),
            s.add(&t),
        ];
        [
            self.x.subst(&images),
            self.y.subst(&images),
            self.z.subst(&images),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, NumberField};

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn bi_z() -> BiPoly {
        BiPoly::var_z(&q())
    }

    fn bi_x() -> BiPoly {
        BiPoly::var_x(&q())
    }

    /// z(z-1)
    fn w_poly() -> BiPoly {
        bi_z().mul(&bi_z().sub(&BiPoly::one(&q())))
    }

    fn surface(n: i64, qp: BiPoly) -> DanielewskiSurface {
        DanielewskiSurface::validate(n, qp).unwrap()
    }

    #[test]
    fn validation() {
        assert!(DanielewskiSurface::validate(1, w_poly()).is_ok());
        assert!(matches!(
            DanielewskiSurface::validate(2, bi_z()),
            Err(SurfaceError::DegreeTooLow { .. })
        ));
        let f_poly = BiPoly::one(&q())
            .add(&bi_x())
            .mul(&bi_z().pow(2).sub(&BiPoly::one(&q())));
        assert!(DanielewskiSurface::validate(2, f_poly).is_ok());
        assert!(matches!(
            DanielewskiSurface::validate(0, w_poly()),
            Err(SurfaceError::NonPositiveExponent { .. })
        ));
    }

    #[test]
    fn invariants_read_off() {
        assert_eq!(surface(2, w_poly()).invariants(), (2, 2));
        let qp = bi_z().pow(5).add(&bi_x().mul(&bi_z()));
        assert_eq!(surface(3, qp).invariants(), (3, 5));
        let f_poly = BiPoly::one(&q())
            .add(&bi_x())
            .mul(&bi_z().pow(2).sub(&BiPoly::one(&q())));
        assert_eq!(surface(1, f_poly).invariants(), (1, 2));
    }

    #[test]
    fn defining_polynomials() {
        let x22 = surface(2, bi_z().pow(2));
        let f = x22.defining_polynomial();
        assert_eq!(f.coeff(2, 1, 0), q().one());
        assert_eq!(f.coeff(0, 0, 2), q().from_int(-1));
        // W_1: x y - z^2 + z
        let w1 = surface(1, w_poly());
        let f = w1.defining_polynomial();
        assert_eq!(f.coeff(1, 1, 0), q().one());
        assert_eq!(f.coeff(0, 0, 2), q().from_int(-1));
        assert_eq!(f.coeff(0, 0, 1), q().one());
        assert!(w1.vanishes_on(&f));
    }

    #[test]
    fn canonical_lnd_components() {
        let x22 = surface(2, bi_z().pow(2));
        let one = UniPoly::one(&q(), Var::X);
        let d = x22.canonical_lnd(&one).unwrap();
        // delta(z) = x^2, delta(y) = 2z
        assert_eq!(d.dz(), AmbientPoly::monomial(q().one(), 2, 0, 0));
        assert_eq!(
            d.dy(),
            AmbientPoly::var(&q(), Var::Z).scale_rat(&rat(2, 1))
        );
        // with multiplier h = x: delta(z) = x^3, delta(y) = 2xz
        let h = UniPoly::var_poly(&q(), Var::X);
        let dx = x22.canonical_lnd(&h).unwrap();
        assert_eq!(dx.dz(), AmbientPoly::monomial(q().one(), 3, 0, 0));
        assert_eq!(
            dx.dy(),
            AmbientPoly::monomial(q().from_int(2), 1, 0, 1)
        );
        // W_1: delta(z) = x, delta(y) = 2z - 1
        let w1 = surface(1, w_poly());
        let d1 = w1.canonical_lnd(&one).unwrap();
        assert_eq!(d1.dz(), AmbientPoly::var(&q(), Var::X));
        let expect = AmbientPoly::var(&q(), Var::Z)
            .scale_rat(&rat(2, 1))
            .sub(&AmbientPoly::one(&q()));
        assert_eq!(d1.dy(), expect);
        // zero multiplier rejected
        assert!(matches!(
            x22.canonical_lnd(&UniPoly::zero(&q(), Var::X)),
            Err(SurfaceError::ZeroMultiplier)
        ));
    }

    #[test]
    fn lnd_application_and_tangency() {
        let x22 = surface(2, bi_z().pow(2));
        let d = x22.canonical_lnd(&UniPoly::one(&q(), Var::X)).unwrap();
        let y = AmbientPoly::var(&q(), Var::Y);
        assert_eq!(d.apply(&y), AmbientPoly::var(&q(), Var::Z).scale_rat(&rat(2, 1)));
        // kernel contains K[x]
        let x7 = AmbientPoly::monomial(q().one(), 7, 0, 0);
        assert!(d.apply(&x7).is_zero());
        // Leibniz on a product: D(zy) = x^2 y + 2 z^2
        let zy = AmbientPoly::var(&q(), Var::Z).mul(&y);
        let expect = AmbientPoly::monomial(q().one(), 2, 1, 0)
            .add(&AmbientPoly::var(&q(), Var::Z).pow(2).scale_rat(&rat(2, 1)));
        assert_eq!(d.apply(&zy), expect);
        // D is tangent: D(F) vanishes on the surface
        let f = x22.defining_polynomial();
        assert!(x22.vanishes_on(&d.apply(&f)));
    }

    #[test]
    fn nilpotency_degrees() {
        let x22 = surface(2, bi_z().pow(2));
        let d = x22.canonical_lnd(&UniPoly::one(&q(), Var::X)).unwrap();
        let cap = d.default_cap();
        // y: 2z, then 2x^2, then 0
        assert_eq!(
            d.nilpotency_degree(&AmbientPoly::var(&q(), Var::Y), cap),
            NilpotencyDegree::Finite(2)
        );
        assert_eq!(
            d.nilpotency_degree(&AmbientPoly::var(&q(), Var::Z), cap),
            NilpotencyDegree::Finite(1)
        );
        assert_eq!(
            d.nilpotency_degree(&AmbientPoly::var(&q(), Var::X), cap),
            NilpotencyDegree::Finite(0)
        );
        assert_eq!(
            d.nilpotency_degree(&x22.defining_polynomial(), cap),
            NilpotencyDegree::MinusInfinity
        );
    }

    #[test]
    fn plus_action_on_x22() {
        // (x, y + 2tz + t^2 x^2, z + t x^2)
        let x22 = surface(2, bi_z().pow(2));
        let act = x22.plus_action();
        let field = q();
        let x = MPoly::<4>::var(&field, 0);
        let y = MPoly::<4>::var(&field, 1);
        let z = MPoly::<4>::var(&field, 2);
        let t = MPoly::<4>::var(&field, 3);
        assert_eq!(act.x, x);
        assert_eq!(act.z, z.add(&t.mul(&x.pow(2))));
        let expect_y = y
            .add(&t.mul(&z).scale_rat(&rat(2, 1)))
            .add(&t.pow(2).mul(&x.pow(2)));
        assert_eq!(act.y, expect_y);
        // at t = 0 the action is the identity
        let id = act.at(&field.zero());
        assert_eq!(id[0], AmbientPoly::var(&field, Var::X));
        assert_eq!(id[1], AmbientPoly::var(&field, Var::Y));
        assert_eq!(id[2], AmbientPoly::var(&field, Var::Z));
    }

    #[test]
    fn plus_action_on_w1() {
        // (x, y + 2tz + t^2 x - t, z + t x)
        let w1 = surface(1, w_poly());
        let act = w1.plus_action();
        let field = q();
        let x = MPoly::<4>::var(&field, 0);
        let y = MPoly::<4>::var(&field, 1);
        let z = MPoly::<4>::var(&field, 2);
        let t = MPoly::<4>::var(&field, 3);
        let expect_y = y
            .add(&t.mul(&z).scale_rat(&rat(2, 1)))
            .add(&t.pow(2).mul(&x))
            .sub(&t);
        assert_eq!(act.y, expect_y);
        assert_eq!(act.z, z.add(&t.mul(&x)));
    }

    #[test]
    fn action_group_law_and_invariance() {
        let qp = bi_z().pow(3).add(&bi_x().mul(&bi_z()));
        let x = surface(2, qp);
        let act = x.plus_action();
        let composed = act.compose_two_parameters();
        let direct = act.at_sum_of_parameters();
        assert_eq!(composed, direct);
        // F composed with the action equals F identically in t
        let f = x.defining_polynomial();
        let f4: MPoly<4> = f.raw().embed([0, 1, 2]);
        let pulled = f4.subst(&[act.x.clone(), act.y.clone(), act.z.clone(), {
            MPoly::<4>::var(&q(), 3)
        }]);
        assert_eq!(pulled, f4);
    }

    #[test]
    fn ml_report() {
        assert_eq!(surface(1, w_poly()).ml_invariant(), MLReport::Trivial);
        assert_eq!(
            surface(2, w_poly()).ml_invariant(),
            MLReport::PolynomialRingInX
        );
        let qp = bi_z().pow(3).add(&bi_x().mul(&bi_z()));
        assert_eq!(
            surface(4, qp).ml_invariant(),
            MLReport::PolynomialRingInX
        );
    }
}
