//! Reduction to standard, reduced standard and normal forms.
//!
//! Writing `Q = p(z) + x*q(x,z)` with `p = Q(0,z)`:
//!
//! - standard form: `deg_z q < deg p`;
//! - reduced standard form: additionally `deg_x Q < n` and
//!   `deg_z q < deg p - 1`;
//! - normal form: `Q = p(z) + x * sum_{i>=2} p^(i)(z) q_i(x, p(z))` with
//!   `deg_x q_i < n - 1` (no first-derivative component at all).
//!
//! Standard form is reached by an n-step loop that factors a unit
//! `1 + x*pi` out of `Q` modulo increasing powers of `x` (Euclidean
//! division by `p` at each step) and hands the accumulated data to the
//! unit-multiplier isomorphism. Reduced standard form follows with one
//! Tschirnhaus shift `z -> z - x(d a_d)^-1 alpha_{d-1}(x)` and a final
//! truncation. Normal form eliminates the `q_1` component level by level
//! in `x` through shifts `z -> z - x^k q_{1,k}(p(z))`, realized as ambient
//! equivalences; the decomposition is recomputed from scratch after every
//! step because a shift perturbs higher `x`-orders.
//!
//! Every operation returns the reduced surface together with a witness
//! that is verified before it is handed out.

use thiserror::Error;

use crate::field::rat_int;
use crate::poly::{BiPoly, Degree, PolyError, UniPoly, Var};
use crate::surface::{DanielewskiSurface, SurfaceError};
use crate::transform::{
    equivalence_witness, lucy_gene_map, IsoWitness, TransformError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Outcome of the two degree tests, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardnessReport {
    pub is_standard: bool,
    pub is_reduced_standard: bool,
    /// First violated condition, when any.
    pub failing_condition: Option<String>,
}

/// Split `Q = p(z) + x*q(x,z)` and check the degree conditions.
pub fn standardness(x: &DanielewskiSurface) -> StandardnessReport {
    let (p, q) = split_pq(x);
    let d = p.degree().finite();
    let qz = q.z_degree();
    let is_standard = qz < Degree::Of(d);
    let x_ok = x.q().x_degree() < Degree::Of(x.n() as i64);
    let z_ok = qz < Degree::Of(d - 1);
    let is_reduced_standard = x_ok && z_ok;
    let failing_condition = if !is_standard {
        Some(format!("deg_z q = {} is not below deg p = {}", qz, d))
    } else if !z_ok {
        Some(format!(
            "deg_z q = {} is not below deg p - 1 = {}",
            qz,
            d - 1
        ))
    } else if !x_ok {
        Some(format!(
            "deg_x Q = {} is not below n = {}",
            x.q().x_degree(),
            x.n()
        ))
    } else {
        None
    };
    StandardnessReport {
        is_standard,
        is_reduced_standard,
        failing_condition,
    }
}

/// `Q = p(z) + x*q(x,z)`.
pub fn split_pq(x: &DanielewskiSurface) -> (UniPoly, BiPoly) {
    let p = x.q().eval_x_zero();
    let q = x
        .q()
        .sub(&BiPoly::from_uni(&p))
        .div_exact_x_pow(1)
        .expect("Q - Q(0,z) is divisible by x");
    (p, q)
}

/// Truncate `Q` modulo `x^n`; the discarded part moves into a triangular
/// shear `(x, y - R, z)` with multiplier one.
pub fn modx_reduce(
    x: &DanielewskiSurface,
) -> Result<(DanielewskiSurface, IsoWitness), ReduceError> {
    let n = x.n();
    let (low, rest) = x.q().truncate_mod_x(n);
    if rest.is_zero() {
        return Ok((x.clone(), IsoWitness::identity(x)));
    }
    let target = DanielewskiSurface::validate(n as i64, low)?;
    let field = x.field();
    let witness = equivalence_witness(
        x,
        &target,
        &field.one(),
        &field.one(),
        &UniPoly::zero(field, Var::X),
        &field.one(),
        None,
    )?;
    Ok((target, witness))
}

/// The standard-form loop: returns a standard-form surface and a verified
/// isomorphism witness from the input onto it.
pub fn to_standard_form(
    x: &DanielewskiSurface,
) -> Result<(DanielewskiSurface, IsoWitness), ReduceError> {
    let n = x.n();
    let field = x.field();
    let (p, _) = split_pq(x);
    let p_bi = BiPoly::from_uni(&p);

    let mut pi = BiPoly::zero(field);
    let mut q_s = BiPoly::zero(field);
    // Invariant: Q = (1 + x*pi)(p + x*q_s) mod x^(m+1); each step performs
    // the Euclidean division of R_{m+1}(0,z) by p. The loop always runs to
    // m = n-1; no early exit.
    for m in 0..n.saturating_sub(1) {
        let h = BiPoly::one(field)
            .add(&pi.mul_x_pow(1))
            .mul(&p_bi.add(&q_s.mul_x_pow(1)));
        let diff = x.q().sub(&h);
        let r_next = diff
            .div_exact_x_pow(m + 1)
            .expect("induction invariant: Q - H_m is divisible by x^(m+1)");
        let r0 = r_next.eval_x_zero();
        let (pi_tilde, r) = r0.div_euclid(&p)?;
        pi = pi.add(&BiPoly::from_uni(&pi_tilde).mul_x_pow(m));
        q_s = q_s.add(&BiPoly::from_uni(&r).mul_x_pow(m));
    }
    let q_standard = p_bi.add(&q_s.mul_x_pow(1));
    let h = BiPoly::one(field).add(&pi.mul_x_pow(1)).mul(&q_standard);
    let r_n = x
        .q()
        .sub(&h)
        .div_exact_x_pow(n)
        .expect("loop invariant at m = n-1: remainder is divisible by x^n");

    // The unit-multiplier map runs from the standard form onto the input;
    // the reduction witness is its inverse.
    let from_standard = lucy_gene_map(&q_standard, n, &pi, &r_n)?;
    let standard = from_standard.source.clone();
    debug_assert_eq!(standard.q(), &q_standard);
    debug_assert_eq!(&from_standard.target, x);
    let witness = from_standard.invert()?;
    debug_assert!(standardness(&standard).is_standard);
    Ok((standard, witness))
}

/// Standard form, then the Tschirnhaus shift killing the subleading
/// z-coefficient of `q`, then a final truncation modulo `x^n`.
pub fn to_reduced_standard_form(
    x: &DanielewskiSurface,
) -> Result<(DanielewskiSurface, IsoWitness), ReduceError> {
    let (xs, w1) = to_standard_form(x)?;
    let field = xs.field();
    let n = xs.n();
    let (p, q_s) = split_pq(&xs);
    let d = p.degree().finite() as usize;
    let alpha_sub = q_s.z_slice(d - 1); // in x
    let (xt, w2) = if alpha_sub.is_zero() {
        (xs.clone(), IsoWitness::identity(&xs))
    } else {
        let da_d_inv = p
            .leading()
            .scale(&rat_int(d as i64))
            .inv()
            .expect("leading coefficient nonzero in characteristic zero");
        let shift = alpha_sub.scale(&da_d_inv).shift_up(1); // x (d a_d)^-1 alpha_{d-1}(x)
        let shifted = xs
            .q()
            .subst_z(&BiPoly::var_z(field).sub(&BiPoly::from_uni(&shift)));
        let xt = DanielewskiSurface::validate(n as i64, shifted)?;
        let w = equivalence_witness(
            &xs,
            &xt,
            &field.one(),
            &field.one(),
            &shift,
            &field.one(),
            None,
        )?;
        (xt, w)
    };
    let (xr, w3) = modx_reduce(&xt)?;
    debug_assert!(standardness(&xr).is_reduced_standard);
    let witness = w1.then(&w2).then(&w3);
    witness.verify()?;
    Ok((xr, witness))
}

/// Write `q(x,z) = sum_{i=1}^{d} p^(i)(z) * q_i(x, p(z))`: expand in
/// powers of `p`, then change each digit into the basis `p^(1)..p^(d)`
/// (triangular, degrees d-1 down to 0, diagonal nonzero in characteristic
/// zero). Returns `[q_1, ..., q_d]`, polynomials in `(x, t)`.
pub fn decompose_q(q: &BiPoly, p: &UniPoly) -> Result<Vec<BiPoly>, ReduceError> {
    let d = match p.degree() {
        Degree::Of(d) if d >= 2 => d as usize,
        other => {
            return Err(ReduceError::Poly(if other == Degree::NegInf {
                PolyError::ZeroDivisor
            } else {
                PolyError::ConstantBase
            }))
        }
    };
    let field = q.field();
    let derivatives: Vec<UniPoly> = (1..=d).map(|i| p.derivative(i)).collect();
    let digits = q.p_adic_expand(p)?;
    let mut q_list = vec![BiPoly::zero(field); d];
    for (j, digit) in digits.iter().enumerate() {
        let mut rem = digit.clone();
        for i in 1..=d {
            let basis = &derivatives[i - 1];
            let deg = (d - i) as usize;
            let gamma = rem.z_slice(deg).scale(
                &basis
                    .leading()
                    .inv()
                    .expect("derivative leading coefficient nonzero"),
            );
            if !gamma.is_zero() {
                rem = rem.sub(&BiPoly::from_uni(&gamma).mul(&BiPoly::from_uni(basis)));
                // t is carried in the z-slot of the (x,t) polynomial
                let term = BiPoly::from_raw(
                    BiPoly::from_uni(&gamma).raw().shift_var(1, j as i64),
                );
                q_list[i - 1] = q_list[i - 1].add(&term);
            }
        }
        assert!(
            rem.is_zero(),
            "digit not resolved in the derivative basis: {:?}",
            rem
        );
    }
    Ok(q_list)
}

/// Rebuild `q(x,z)` from decomposition data.
pub fn recompose_q(q_list: &[BiPoly], p: &UniPoly) -> BiPoly {
    let field = p.field();
    let p_bi = BiPoly::from_uni(p);
    let mut acc = BiPoly::zero(field);
    for (idx, qi) in q_list.iter().enumerate() {
        let i = idx + 1;
        let qi_at_p = qi.subst_z(&p_bi); // t -> p(z)
        acc = acc.add(&BiPoly::from_uni(&p.derivative(i)).mul(&qi_at_p));
    }
    acc
}

/// The canonical comparison object of the equivalence decider:
/// `x^n y = p(z) + x sum_{i=2}^{d} p^(i)(z) q_i(x, p(z))` with
/// `deg_x q_i < n-1`, plus the ambient witness from the input surface.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub n: usize,
    pub p: UniPoly,
    /// `q_i` for `i = 2..=deg p`, in the variables `(x, t)`.
    pub q_list: Vec<BiPoly>,
    pub witness: IsoWitness,
}

impl NormalForm {
    pub fn degree(&self) -> usize {
        self.p.degree().finite() as usize
    }

    /// `q_i` for `i` in `2..=d`.
    pub fn q_i(&self, i: usize) -> &BiPoly {
        &self.q_list[i - 2]
    }

    /// The surface defined by the normal-form data.
    pub fn reconstruct(&self) -> DanielewskiSurface {
        let field = self.p.field();
        let mut full = vec![BiPoly::zero(field)];
        full.extend(self.q_list.iter().cloned());
        let q = BiPoly::from_uni(&self.p).add(&recompose_q(&full, &self.p).mul_x_pow(1));
        DanielewskiSurface::validate(self.n as i64, q)
            .expect("normal-form data defines a valid surface")
    }
}

/// The normal-form algorithm: eliminate the `q_1` component by successive
/// shifts `z -> z - x^k q_{1,k}(p(z))` for `k = 1..n-1`, re-decomposing
/// after each step, with everything reduced modulo `x^n` first.
pub fn to_normal_form(x: &DanielewskiSurface) -> Result<NormalForm, ReduceError> {
    let field = x.field();
    let (mut current, mut witness) = modx_reduce(x)?;
    let p = current.p();
    let n = current.n();

    for k0 in 1..n {
        let (_, q) = split_pq(&current);
        if q.is_zero() {
            break;
        }
        let decomp = decompose_q(&q, &p)?;
        let q1_level = decomp[0].x_slice(k0 - 1).retag(Var::T);
        if q1_level.is_zero() {
            continue;
        }
        // B(x,t) = x^(k0-1) * q_{1,k0}(t); the new surface is the old one
        // composed with the truncated inverse of z -> z + x B(x, Q).
        let b = BiPoly::from_raw(
            BiPoly::from_uni(&q1_level.retag(Var::Z))
                .raw()
                .shift_var(0, (k0 - 1) as i64),
        );
        let tau = invert_z_substitution(&b, current.q(), n);
        let shifted = current.q().subst_z(&tau).truncate_mod_x(n).0;
        let next = DanielewskiSurface::validate(n as i64, shifted)?;
        let step = equivalence_witness(
            &current,
            &next,
            &field.one(),
            &field.one(),
            &UniPoly::zero(field, Var::X),
            &field.one(),
            Some(&b),
        )?;
        witness = witness.then(&step);
        current = next;
        // the shift must not resurrect lower levels
        let (_, q_after) = split_pq(&current);
        if !q_after.is_zero() {
            let check = decompose_q(&q_after, &p)?;
            for k in 1..=k0 {
                debug_assert!(
                    check[0].x_slice(k - 1).is_zero(),
                    "level {} of q_1 reappeared after shift {}",
                    k,
                    k0
                );
            }
        }
    }

    let (_, q_final) = split_pq(&current);
    let d = p.degree().finite() as usize;
    let q_list = if q_final.is_zero() {
        vec![BiPoly::zero(field); d]
    } else {
        decompose_q(&q_final, &p)?
    };
    assert!(
        q_list[0].is_zero(),
        "first-derivative component survived the elimination loop"
    );
    for qi in &q_list[1..] {
        assert!(
            qi.x_degree() < Degree::Of(n as i64 - 1),
            "q_i exceeds the x-degree bound"
        );
    }
    witness.verify()?;
    let nf = NormalForm {
        n,
        p,
        q_list: q_list[1..].to_vec(),
        witness,
    };
    debug_assert_eq!(nf.reconstruct(), current);
    Ok(nf)
}

/// Modulo `x^n`, the inverse of the substitution `z -> z + x*B(x, Q(x,z))`
/// in its dependence on z: returns `tau` with
/// `tau + x*B(x, Q(x, tau)) = z mod x^n`.
fn invert_z_substitution(b: &BiPoly, q: &BiPoly, n: usize) -> BiPoly {
    let field = q.field();
    let z = BiPoly::var_z(field);
    let x_bi = BiPoly::var_x(field);
    let mut tau = z.clone();
    for _ in 0..n {
        let q_at = q.subst_z(&tau).truncate_mod_x(n).0;
        let b_at = b.subst_xz(&x_bi, &q_at);
        tau = z.sub(&b_at.mul_x_pow(1)).truncate_mod_x(n).0;
    }
    tau
}
