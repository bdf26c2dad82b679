//! The constraint engine behind both deciders.
//!
//! Matching a pair of surfaces reduces to scalar data `(a, alpha, beta,
//! mu)`: the leading coefficient of the affine identity eliminates `mu =
//! lc2 * alpha^d / lc1`, the subleading coefficient eliminates `beta`
//! linearly (characteristic zero), and what remains is a set of
//! polynomial constraints on `alpha` together with power constraints
//! `a^e * A(alpha) = B(alpha)` coming from the x-slices (isomorphism) or
//! the q-data (equivalence).
//!
//! Solving is elimination at desk scale: pairwise eliminants reduce the
//! power constraints to univariate conditions on `alpha`; the gcd of all
//! alpha-constraints is factored into irreducibles (one solution class
//! per factor, realized in `Q[alpha]/(factor)`); inside each class the
//! powers of `a` are combined through Bezout to `a^G = c` and solved by
//! factoring `T^G - c` over the class field, collapsing any tower that
//! arises. When nothing constrains `alpha`, the constraints are
//! rational-function identities, so one generic rational value decides
//! solvability everywhere; free scalars are pinned to 1 and flagged.
//!
//! The engine promises completeness over the algebraic closure: every
//! true solution's `alpha` kills every eliminant, hence lands in some
//! class, and inside a class every admissible `a` is a root of `T^G - c`.
//! It does not promise soundness of its candidates; callers re-verify
//! every candidate by exact substitution before using it.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::field::{
    extend, factor_irreducible, FieldElement, NumberField, QPoly, Rat,
};
use crate::field::kpoly::KPoly;

/// `a^exp * a_poly(alpha) = b_poly(alpha)`.
#[derive(Clone, Debug)]
pub struct PowerConstraint {
    pub exp: usize,
    pub a_poly: QPoly,
    pub b_poly: QPoly,
}

/// A candidate solution class, before the caller's final verification.
#[derive(Clone, Debug)]
pub struct RawSolution {
    pub field: Arc<NumberField>,
    pub alpha: FieldElement,
    pub a: FieldElement,
    pub alpha_free: bool,
    pub a_free: bool,
}

/// Evaluate a rational polynomial at a field element.
pub fn eval_qpoly(f: &QPoly, x: &FieldElement) -> FieldElement {
    let field = x.field();
    let mut acc = field.zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&field.from_rat(c.clone()));
    }
    acc
}

/// Coefficient list in z of `g(alpha*z + beta(alpha))`, as polynomials in
/// alpha.
pub fn affine_substitute(g: &QPoly, beta: &QPoly) -> Vec<QPoly> {
    let alpha = QPoly::var();
    let deg = match g.degree() {
        None => return vec![],
        Some(d) => d,
    };
    // power[j] = [z^j] (alpha*z + beta)^m, maintained incrementally
    let mut power: Vec<QPoly> = vec![QPoly::one()];
    let mut out: Vec<QPoly> = vec![QPoly::zero(); deg + 1];
    for (m, gm) in g.coeffs().iter().enumerate() {
        if m > 0 {
            let mut next: Vec<QPoly> = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let mut term = QPoly::zero();
                if j < m {
                    term = term.add(&power[j].mul(beta));
                }
                if j > 0 {
                    term = term.add(&power[j - 1].mul(&alpha));
                }
                next.push(term);
            }
            power = next;
        }
        if !gm.is_zero() {
            for (j, pj) in power.iter().enumerate() {
                out[j] = out[j].add(&pj.scale(gm));
            }
        }
    }
    out
}

/// `mu(alpha) = (lc2/lc1) * alpha^d` and `beta(alpha)` linear in alpha,
/// for the identity `p2(alpha*z + beta) = mu * p1(z)` of degree-d
/// polynomials.
pub fn mu_beta_formulas(p1: &QPoly, p2: &QPoly) -> (QPoly, QPoly) {
    let d = p1.deg();
    debug_assert_eq!(d, p2.deg());
    let a_d = p1.leading();
    let a_sub = p1.coeff(d - 1);
    let b_d = p2.leading();
    let b_sub = p2.coeff(d - 1);
    let mu = QPoly::monomial(&b_d / &a_d, d);
    // d*b_d*beta + b_sub = (b_d * a_sub / a_d) * alpha
    let dd = Rat::from(num_bigint::BigInt::from(d as i64));
    let beta = QPoly::from_coeffs(vec![
        -&b_sub / (&dd * &b_d),
        &a_sub / (&dd * &a_d),
    ]);
    (mu, beta)
}

/// Constraints on alpha from the affine identity itself: the coefficients
/// below z^(d-1) of `p2(alpha z + beta(alpha)) - mu(alpha) p1(z)`.
pub fn affine_alpha_constraints(p1: &QPoly, p2: &QPoly) -> Vec<QPoly> {
    let (mu, beta) = mu_beta_formulas(p1, p2);
    let lhs = affine_substitute(p2, &beta);
    let d = p1.deg();
    let mut out = Vec::new();
    for j in 0..=d {
        let rhs = mu.scale(&p1.coeff(j));
        let c = lhs[j].sub(&rhs);
        if j + 2 > d {
            debug_assert!(c.is_zero(), "top coefficients eliminated by design");
        } else if !c.is_zero() {
            out.push(c);
        }
    }
    out
}

/// Solve the joint system over the algebraic closure (or the rationals
/// only). Solutions come back in deterministic class order; every one
/// still needs the caller's exact re-verification.
pub fn solve_system(
    alpha_constraints: &[QPoly],
    power_constraints: &[PowerConstraint],
    rational_only: bool,
) -> Vec<RawSolution> {
    let mut eliminants: Vec<QPoly> = alpha_constraints
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect();
    let active: Vec<&PowerConstraint> = power_constraints
        .iter()
        .filter(|pc| {
            // a value is forced impossible when exactly one side vanishes
            // identically; record the other side as an alpha-constraint
            !(pc.a_poly.is_zero() && pc.b_poly.is_zero())
        })
        .collect();
    let mut live = Vec::new();
    for pc in &active {
        if pc.a_poly.is_zero() {
            eliminants.push(pc.b_poly.clone());
        } else if pc.b_poly.is_zero() {
            eliminants.push(pc.a_poly.clone());
        } else {
            live.push(*pc);
        }
    }
    for i in 0..live.len() {
        for j in (i + 1)..live.len() {
            let (ci, cj) = (live[i], live[j]);
            let g = gcd_usize(ci.exp, cj.exp);
            let (ei, ej) = (ci.exp / g, cj.exp / g);
            // (b_i/a_i)^(e_j) = (b_j/a_j)^(e_i), cleared of denominators
            let lhs = ci.b_poly.pow(ej).mul(&cj.a_poly.pow(ei));
            let rhs = cj.b_poly.pow(ei).mul(&ci.a_poly.pow(ej));
            let elim = lhs.sub(&rhs);
            if !elim.is_zero() {
                eliminants.push(elim);
            }
        }
    }

    if eliminants.is_empty() {
        // alpha unconstrained: one generic rational value decides
        // solvability everywhere (the constraints are rational-function
        // identities in alpha).
        if live.is_empty() {
            let q = NumberField::rationals();
            return vec![RawSolution {
                field: q.clone(),
                alpha: q.one(),
                a: q.one(),
                alpha_free: true,
                a_free: true,
            }];
        }
        let q = NumberField::rationals();
        let mut candidate = 1i64;
        loop {
            let av = q.from_int(candidate);
            let good = live.iter().all(|pc| {
                !eval_qpoly(&pc.a_poly, &av).is_zero()
                    && !eval_qpoly(&pc.b_poly, &av).is_zero()
            });
            if good {
                let mut sols = solve_power_in(&q, &av, &live, rational_only);
                for s in &mut sols {
                    s.alpha_free = true;
                }
                return sols;
            }
            candidate += 1;
        }
    }

    let mut g = QPoly::zero();
    for e in &eliminants {
        g = g.gcd(e);
    }
    // alpha = 0 never yields a valid scaling
    while !g.is_zero() && g.coeff(0).is_zero() {
        g = g.div_exact(&QPoly::var()).unwrap();
    }
    if g.is_zero() || g.is_constant() {
        return vec![];
    }
    let mut factors = factor_irreducible(&g).expect("nonconstant gcd");
    factors.dedup();
    if rational_only {
        factors.retain(|h| h.degree() == Some(1));
    }
    let mut out = Vec::new();
    for h in factors {
        let (field, alpha) = class_field(&h);
        out.extend(solve_power_in(&field, &alpha, &live, rational_only));
    }
    out
}

/// The class field of an irreducible factor and its distinguished root.
fn class_field(h: &QPoly) -> (Arc<NumberField>, FieldElement) {
    if h.deg() == 1 {
        let q = NumberField::rationals();
        let root = -&h.coeff(0) / &h.coeff(1);
        (q.clone(), q.from_rat(root))
    } else {
        let field = NumberField::new_unchecked("t", h.monic());
        let alpha = field.generator();
        (field, alpha)
    }
}

/// Solve `{a^e = B(alpha)/A(alpha)}` inside a fixed class.
fn solve_power_in(
    field: &Arc<NumberField>,
    alpha: &FieldElement,
    live: &[&PowerConstraint],
    rational_only: bool,
) -> Vec<RawSolution> {
    let mut targets: Vec<(usize, FieldElement)> = Vec::new();
    for pc in live {
        let a_val = eval_qpoly(&pc.a_poly, alpha);
        let b_val = eval_qpoly(&pc.b_poly, alpha);
        match (a_val.is_zero(), b_val.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return vec![], // forces a = 0 or 0 = B
            (false, false) => {
                let c = b_val.div(&a_val).unwrap();
                if let Some((_, existing)) = targets.iter().find(|(e, _)| *e == pc.exp) {
                    if existing != &c {
                        return vec![];
                    }
                } else {
                    targets.push((pc.exp, c));
                }
            }
        }
    }
    if targets.is_empty() {
        return vec![RawSolution {
            field: field.clone(),
            alpha: alpha.clone(),
            a: field.one(),
            alpha_free: false,
            a_free: true,
        }];
    }
    // Bezout-combine a^{e_i} = c_i into a^G = c, then check consistency.
    let mut g = targets[0].0 as i64;
    let mut c = targets[0].1.clone();
    for (e, ce) in targets.iter().skip(1) {
        let (g2, u, v) = ext_gcd(g, *e as i64);
        // c^u * ce^v solves a^(g2) given a^g = c and a^e = ce
        c = c.pow(u).expect("nonzero").mul(&ce.pow(v).expect("nonzero"));
        g = g2;
    }
    for (e, ce) in &targets {
        if c.pow((*e as i64) / g).expect("nonzero") != *ce {
            return vec![];
        }
    }
    let g = g as usize;
    if g == 1 {
        return vec![RawSolution {
            field: field.clone(),
            alpha: alpha.clone(),
            a: c,
            alpha_free: false,
            a_free: false,
        }];
    }
    // all admissible a are roots of T^g - c
    let mut coeffs = vec![c.neg()];
    coeffs.extend(std::iter::repeat(field.zero()).take(g - 1));
    coeffs.push(field.one());
    let poly = KPoly::from_coeffs(field, coeffs);
    let mut factors: Vec<KPoly> = crate::field::extension::factor_over(field, &poly)
        .expect("nonconstant")
        .into_iter()
        .map(|(h, _)| h)
        .collect();
    factors.sort_by_key(|h| h.deg());
    if rational_only {
        factors.retain(|h| h.deg() == 1);
    }
    let mut out = Vec::new();
    for h in factors {
        if h.deg() == 1 {
            let a = h.coeff(0).neg().div(&h.coeff(1)).unwrap();
            out.push(RawSolution {
                field: field.clone(),
                alpha: alpha.clone(),
                a,
                alpha_free: false,
                a_free: false,
            });
        } else {
            let ext = extend(field, &h).expect("irreducible by construction");
            out.push(RawSolution {
                field: ext.field.clone(),
                alpha: ext.embed(alpha),
                a: ext.root.clone(),
                alpha_free: false,
                a_free: false,
            });
        }
    }
    out
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Extended gcd on signed integers: `(g, u, v)` with `u*a + v*b = g > 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, u, v) = ext_gcd(b, a % b);
        (g, v, u - (a / b) * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn affine_substitute_expands() {
        // g = z^2, beta = alpha: g(alpha z + alpha) =
        // alpha^2 z^2 + 2 alpha^2 z + alpha^2
        let g = QPoly::from_ints(&[0, 0, 1]);
        let beta = QPoly::var();
        let out = affine_substitute(&g, &beta);
        assert_eq!(out[2], QPoly::from_ints(&[0, 0, 1]));
        assert_eq!(out[1], QPoly::from_ints(&[0, 0, 2]));
        assert_eq!(out[0], QPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn self_matching_of_w_polynomial() {
        // p = z^2 - z against itself: alpha in {1, -1}
        let p = QPoly::from_ints(&[0, -1, 1]);
        let constraints = affine_alpha_constraints(&p, &p);
        let sols = solve_system(&constraints, &[], false);
        assert_eq!(sols.len(), 2);
        let alphas: Vec<Rat> = sols
            .iter()
            .map(|s| s.alpha.as_rational().unwrap())
            .collect();
        assert!(alphas.contains(&rat(1, 1)) && alphas.contains(&rat(-1, 1)));
    }

    #[test]
    fn free_alpha_with_scaling() {
        // p1 = z^2, p2 = 2 z^2: no constraints at all, both scalars free
        let p1 = QPoly::from_ints(&[0, 0, 1]);
        let p2 = QPoly::from_ints(&[0, 0, 2]);
        let constraints = affine_alpha_constraints(&p1, &p2);
        assert!(constraints.is_empty());
        let sols = solve_system(&constraints, &[], false);
        assert_eq!(sols.len(), 1);
        assert!(sols[0].alpha_free && sols[0].a_free);
        // mu evaluates to 2 at the representative alpha = 1
        let (mu, _) = mu_beta_formulas(&p1, &p2);
        assert_eq!(eval_qpoly(&mu, &sols[0].alpha).as_rational(), Some(rat(2, 1)));
    }

    #[test]
    fn power_constraints_pin_both_scalars() {
        // alpha free at p-level; slices force a = alpha^2 c1 and
        // a^2 = alpha^2 c2 with c1 = 1, c2 = 1/4: alpha^2 = 1/4.
        let pc1 = PowerConstraint {
            exp: 1,
            a_poly: QPoly::one(),
            b_poly: QPoly::from_coeffs(vec![Rat::zero(), Rat::zero(), rat(1, 1)]),
        };
        let pc2 = PowerConstraint {
            exp: 2,
            a_poly: QPoly::from_ints(&[4]),
            b_poly: QPoly::from_coeffs(vec![Rat::zero(), Rat::zero(), rat(1, 1)]),
        };
        let sols = solve_system(&[], &[pc1, pc2], false);
        assert!(!sols.is_empty());
        for s in &sols {
            // verify a = alpha^2, 4 a^2 = alpha^2 numerically
            let a2 = s.alpha.mul(&s.alpha);
            assert_eq!(s.a, a2);
            assert_eq!(s.a.mul(&s.a).scale(&rat(4, 1)), a2);
        }
    }

    #[test]
    fn quadratic_class_requires_extension() {
        // 2 alpha^2 = 1 forces alpha irrational
        let constraint = QPoly::from_ints(&[-1, 0, 2]);
        let sols = solve_system(&[constraint.clone()], &[], false);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].field.degree(), 2);
        let alpha2 = sols[0].alpha.mul(&sols[0].alpha);
        assert_eq!(alpha2, sols[0].field.from_rat(rat(1, 2)));
        // rational-only search reports nothing
        assert!(solve_system(&[constraint], &[], true).is_empty());
    }

    #[test]
    fn square_root_of_target_needs_tower() {
        // a^2 = 2 at rational alpha: class field is a quadratic extension
        let pc = PowerConstraint {
            exp: 2,
            a_poly: QPoly::one(),
            b_poly: QPoly::from_ints(&[2]),
        };
        let sols = solve_system(&[QPoly::from_ints(&[-1, 1])], &[pc], false);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].field.degree(), 2);
        assert_eq!(sols[0].a.mul(&sols[0].a), sols[0].field.from_int(2));
        assert!(sols[0].alpha.is_one());
    }

    #[test]
    fn inconsistent_system_is_empty() {
        // a = 1 and a = 2 at alpha = 1
        let pin = QPoly::from_ints(&[-1, 1]);
        let pc1 = PowerConstraint {
            exp: 1,
            a_poly: QPoly::one(),
            b_poly: QPoly::one(),
        };
        let pc2 = PowerConstraint {
            exp: 1,
            a_poly: QPoly::one(),
            b_poly: QPoly::from_ints(&[2]),
        };
        assert!(solve_system(&[pin], &[pc1, pc2], false).is_empty());
    }
}
