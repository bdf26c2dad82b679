//! Simple extensions and factorization over them.
//!
//! [`extend`] adjoins a root of an irreducible polynomial. When the base is
//! already a proper extension, the result is collapsed to a fresh simple
//! extension of the rationals through a primitive element `theta = root +
//! lambda*alpha`: its minimal polynomial is an irreducible factor of the
//! resultant `Res_u(m_alpha(u), m(theta - lambda*u, u))`, and the images of
//! the old generators inside the new field are recovered by a gcd.
//!
//! Factorization over an extension is Trager's norm method: shift the
//! argument until the norm (a resultant against the minimal polynomial) is
//! squarefree, factor the norm over the rationals, and pull each factor
//! back with a gcd. Resultants of bivariate data are computed by
//! evaluation and interpolation, which is safe here because the minimal
//! polynomial is monic, so specialization commutes with the resultant.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::factor::{factor_irreducible, factor_squarefree};
use super::kpoly::KPoly;
use super::qpoly::{interpolate, QPoly};
use super::rational::{rat_int, Rat};
use super::{FieldElement, FieldError, NumberField};

/// Result of adjoining a root: the (collapsed) field, the root, and the
/// embedding of the base field.
#[derive(Clone)]
pub struct Extension {
    pub field: Arc<NumberField>,
    pub root: FieldElement,
    base: Arc<NumberField>,
    base_gen_image: FieldElement,
}

impl Extension {
    /// The identity extension of a field into itself.
    pub fn identity(field: &Arc<NumberField>) -> Extension {
        Extension {
            field: field.clone(),
            root: field.zero(),
            base: field.clone(),
            base_gen_image: field.generator(),
        }
    }

    /// Embed a base-field element. A ring homomorphism fixing the
    /// rationals.
    pub fn embed(&self, x: &FieldElement) -> FieldElement {
        assert!(
            x.field().compatible(&self.base),
            "element does not live in the base of this extension"
        );
        let mut acc = self.field.zero();
        for c in x.to_qpoly().coeffs().iter().rev() {
            acc = acc.mul(&self.base_gen_image).add(&self.field.from_rat(c.clone()));
        }
        acc
    }

    pub fn base(&self) -> &Arc<NumberField> {
        &self.base
    }
}

/// Adjoin a root of `m` (irreducible over `base`) and collapse to a simple
/// extension of the rationals.
pub fn extend(base: &Arc<NumberField>, m: &KPoly) -> Result<Extension, FieldError> {
    if m.is_zero() || m.is_constant() {
        return Err(FieldError::ConstantInput);
    }
    if m.deg() == 1 {
        // Degree one collapses into the base itself.
        let root = m.coeff(0).neg().div(&m.coeff(1))?;
        return Ok(Extension {
            field: base.clone(),
            root,
            base: base.clone(),
            base_gen_image: base.generator(),
        });
    }
    if base.is_rational() {
        let mq = m
            .to_qpoly()
            .expect("rational base polynomial has rational coefficients")
            .monic();
        let field = NumberField::new(base.generator_name(), &mq)?;
        let base_gen_image = field.from_rat(base.generator().as_rational().unwrap());
        return Ok(Extension {
            field: field.clone(),
            root: field.generator(),
            base: base.clone(),
            base_gen_image,
        });
    }
    if !is_irreducible_over(base, m) {
        return Err(FieldError::Reducible(format!("{:?}", m)));
    }
    collapse_tower(base, &m.monic())
}

/// Primitive-element collapse of `base(root of m)` to `Q(theta)`.
fn collapse_tower(base: &Arc<NumberField>, m: &KPoly) -> Result<Extension, FieldError> {
    let e = base.degree();
    let f = m.deg();
    let m_alpha = base.min_poly().clone();
    // m as a bivariate object: coefficient j is a rational polynomial in
    // the base generator u.
    let coeff_polys: Vec<QPoly> = (0..=f).map(|j| m.coeff(j).to_qpoly()).collect();

    for lambda in 1i64.. {
        let lam = rat_int(lambda);
        // C(v) = Res_u(m_alpha(u), m(v - lambda*u, u)), by interpolation in v.
        let deg_bound = e * f;
        let mut points = Vec::with_capacity(deg_bound + 1);
        for r in 0..=(deg_bound as i64) {
            let rv = rat_int(r);
            // inner(u) = sum_j coeff_j(u) * (r - lambda*u)^j
            let lin = QPoly::from_coeffs(vec![rv.clone(), -lam.clone()]);
            let mut inner = QPoly::zero();
            let mut lin_pow = QPoly::one();
            for cj in &coeff_polys {
                inner = inner.add(&cj.mul(&lin_pow));
                lin_pow = lin_pow.mul(&lin);
            }
            points.push((rv, m_alpha.resultant(&inner)));
        }
        let c_poly = interpolate(&points);
        if c_poly.is_zero() || c_poly.deg() < deg_bound {
            continue; // degenerate lambda
        }
        if c_poly.gcd(&c_poly.derivative()).deg() != 0 {
            continue; // not squarefree: sums of conjugates collide
        }

        // theta = root + lambda*alpha is primitive; its minimal polynomial
        // is the factor of C vanishing at theta, tested in the tower
        // K[t]/(m).
        let theta_tower = KPoly::var(base).add(&KPoly::constant(
            base.generator().scale(&lam),
        ));
        let mut min_poly = None;
        for h in factor_irreducible(&c_poly)? {
            if eval_qpoly_in_tower(&h, &theta_tower, m).is_zero() {
                min_poly = Some(h);
                break;
            }
        }
        let h = min_poly.expect("theta is a root of its resultant");
        assert_eq!(h.deg(), deg_bound, "primitive element has full degree");
        let field = NumberField::new_unchecked(base.generator_name(), h.monic());
        let theta = field.generator();

        // alpha inside L: the common root of m_alpha(u) and
        // m(theta - lambda*u, u), recovered as a linear gcd over L[u].
        let m_alpha_l = KPoly::from_qpoly(&field, &m_alpha);
        let lin = KPoly::from_coeffs(
            &field,
            vec![theta.clone(), field.from_rat(-lam.clone())],
        );
        let mut second = KPoly::zero(&field);
        let mut lin_pow = KPoly::one(&field);
        for cj in &coeff_polys {
            // coefficient j of m, as a polynomial in u with rational
            // coefficients, lifted to L[u] via u -> u (still the unknown)
            let cj_l = KPoly::from_qpoly(&field, cj);
            second = second.add(&cj_l.mul(&lin_pow));
            lin_pow = lin_pow.mul(&lin);
        }
        let g = m_alpha_l.gcd(&second);
        assert_eq!(g.degree(), Some(1), "alpha is a simple common root");
        let alpha_l = g.coeff(0).neg().div(&g.coeff(1))?;
        let root_l = theta.sub(&alpha_l.scale(&lam));

        // Exact sanity: both generators satisfy their defining relations.
        assert!(eval_qpoly_at(&m_alpha, &alpha_l).is_zero());
        let ext = Extension {
            field: field.clone(),
            root: root_l.clone(),
            base: base.clone(),
            base_gen_image: alpha_l,
        };
        let mut val = field.zero();
        for j in (0..=f).rev() {
            val = val.mul(&root_l).add(&ext.embed(&m.coeff(j)));
        }
        assert!(val.is_zero(), "root satisfies the adjoined polynomial");
        return Ok(ext);
    }
    unreachable!("some shift always separates the conjugates")
}

/// Evaluate a rational polynomial at an element of `K[t]/(modulus)`.
fn eval_qpoly_in_tower(h: &QPoly, at: &KPoly, modulus: &KPoly) -> KPoly {
    let field = modulus.field();
    let mut acc = KPoly::zero(field);
    for c in h.coeffs().iter().rev() {
        acc = acc.mul(at).add(&KPoly::constant(field.from_rat(c.clone())));
        acc = acc.divrem(modulus).1;
    }
    acc
}

fn eval_qpoly_at(h: &QPoly, at: &FieldElement) -> FieldElement {
    let field = at.field();
    let mut acc = field.zero();
    for c in h.coeffs().iter().rev() {
        acc = acc.mul(at).add(&field.from_rat(c.clone()));
    }
    acc
}

/// Norm of `f` in `K[a]` down to `Q[a]`: the resultant in the generator
/// against the minimal polynomial, computed by evaluation/interpolation.
pub fn norm_to_q(field: &Arc<NumberField>, f: &KPoly) -> QPoly {
    let e = field.degree();
    let da = f.degree().expect("norm of the zero polynomial");
    let deg_bound = e * da;
    let m = field.min_poly();
    let coeff_polys: Vec<QPoly> = (0..=da).map(|i| f.coeff(i).to_qpoly()).collect();
    let mut points = Vec::with_capacity(deg_bound + 1);
    for r in 0..=(deg_bound as i64) {
        let rv = rat_int(r);
        // F(r, t) = sum_i c_i(t) r^i
        let mut inner = QPoly::zero();
        let mut rp = Rat::one();
        for ci in &coeff_polys {
            inner = inner.add(&ci.scale(&rp));
            rp *= &rv;
        }
        points.push((rv, m.resultant(&inner)));
    }
    interpolate(&points)
}

/// Trager: factor a polynomial over a number field into monic irreducible
/// factors with multiplicities.
pub fn factor_over(
    field: &Arc<NumberField>,
    f: &KPoly,
) -> Result<Vec<(KPoly, usize)>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    if f.is_constant() {
        return Err(FieldError::ConstantInput);
    }
    if field.is_rational() {
        let fq = f.to_qpoly().expect("rational field");
        let mut seen: Vec<(QPoly, usize)> = Vec::new();
        for h in factor_irreducible(&fq)? {
            match seen.iter_mut().find(|(g, _)| *g == h) {
                Some((_, k)) => *k += 1,
                None => seen.push((h, 1)),
            }
        }
        return Ok(seen
            .into_iter()
            .map(|(h, k)| (KPoly::from_qpoly(field, &h), k))
            .collect());
    }
    let mut out: Vec<(KPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_over(f) {
        for h in trager_squarefree(field, &part) {
            out.push((h, mult));
        }
    }
    Ok(out)
}

/// True iff `f` (degree >= 1) is irreducible over `field`.
pub fn is_irreducible_over(field: &Arc<NumberField>, f: &KPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        _ => {
            if f.gcd(&f.derivative()).deg() != 0 {
                return false;
            }
            trager_squarefree(field, &f.monic()).len() == 1
        }
    }
}

/// Yun's algorithm over an arbitrary number field.
fn squarefree_over(f: &KPoly) -> Vec<(KPoly, usize)> {
    let f = f.monic();
    let df = f.derivative();
    let mut out = Vec::new();
    let d = f.gcd(&df);
    let mut b = f.div_exact(&d).unwrap();
    let c = df.div_exact(&d).unwrap();
    let mut dd = c.sub(&b.derivative());
    let mut i = 1usize;
    while b.degree() > Some(0) {
        let a = b.gcd(&dd);
        if a.degree() > Some(0) {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).unwrap();
        let c = dd.div_exact(&a).unwrap();
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Trager's method on a monic squarefree polynomial over a proper
/// extension.
fn trager_squarefree(field: &Arc<NumberField>, g: &KPoly) -> Vec<KPoly> {
    if g.deg() == 1 {
        return vec![g.monic()];
    }
    let alpha = field.generator();
    for s in 0i64.. {
        // g_s(a) = g(a - s*alpha)
        let shift = KPoly::from_coeffs(&field.clone(), vec![alpha.scale(&rat_int(-s)), field.one()]);
        let g_s = g.compose(&shift);
        let n = norm_to_q(field, &g_s);
        if n.is_zero() || n.gcd(&n.derivative()).deg() != 0 {
            continue;
        }
        let factors_q = factor_irreducible(&n).expect("norm is nonconstant");
        if factors_q.len() == 1 {
            return vec![g.monic()];
        }
        let unshift = KPoly::from_coeffs(&field.clone(), vec![alpha.scale(&rat_int(s)), field.one()]);
        let mut out: Vec<KPoly> = factors_q
            .iter()
            .map(|h| {
                let h_k = KPoly::from_qpoly(field, h);
                let factor = g_s.gcd(&h_k);
                factor.compose(&unshift).monic()
            })
            .filter(|h| h.degree() > Some(0))
            .collect();
        out.sort_by_key(|h| h.deg());
        let product = out.iter().fold(KPoly::one(field), |acc, h| acc.mul(h));
        assert_eq!(product, g.monic(), "Trager factors multiply back");
        return out;
    }
    unreachable!("some shift yields a squarefree norm")
}
