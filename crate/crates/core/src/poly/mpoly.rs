//! Sparse multivariate polynomials over a number field.
//!
//! One const-generic implementation backs the two- and three-variable
//! types and the four-variable polynomials of the additive group action.
//! Exponents are signed so the same machinery carries Laurent polynomials
//! in `x`; ordinary polynomial types enforce non-negativity in their
//! constructors. Terms live in a `BTreeMap`, so iteration order (and with
//! it printing and hashing) is deterministic.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::{FieldElement, NumberField, Rat};

use super::Degree;

#[derive(Clone)]
pub struct MPoly<const N: usize> {
    field: Arc<NumberField>,
    terms: BTreeMap<[i64; N], FieldElement>,
}

impl<const N: usize> PartialEq for MPoly<N> {
    fn eq(&self, other: &Self) -> bool {
        self.field.compatible(&other.field) && self.terms == other.terms
    }
}
impl<const N: usize> Eq for MPoly<N> {}

impl<const N: usize> std::fmt::Debug for MPoly<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{:?}*{:?}", c, e))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<const N: usize> MPoly<N> {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        MPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        let mut p = MPoly::zero(&field);
        p.add_term([0; N], c);
        p
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        MPoly::constant(field.one())
    }

    /// The monomial `coeff * prod(var_i^exps[i])`.
    pub fn monomial(coeff: FieldElement, exps: [i64; N]) -> Self {
        let field = coeff.field().clone();
        let mut p = MPoly::zero(&field);
        p.add_term(exps, coeff);
        p
    }

    /// Variable `i` as a polynomial.
    pub fn var(field: &Arc<NumberField>, i: usize) -> Self {
        let mut exps = [0; N];
        exps[i] = 1;
        MPoly::monomial(field.one(), exps)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e == &[0; N])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; N], &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i64; N]) -> FieldElement {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Accumulate a term, dropping it if the sum cancels.
    pub fn add_term(&mut self, exps: [i64; N], c: FieldElement) {
        if c.is_zero() {
            return;
        }
        assert!(
            c.field().compatible(&self.field),
            "coefficient from a different home field"
        );
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field.compatible(&other.field),
            "polynomials over different home fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let mut out = MPoly::zero(&self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return MPoly::zero(&self.field);
        }
        MPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, a)| (*e, a.mul(c))).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        use num_traits::Zero;
        if r.is_zero() {
            return MPoly::zero(&self.field);
        }
        MPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, a)| (*e, a.scale(r))).collect(),
        }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.field);
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

    /// Multiply every term by `var_i^k` (k may be negative).
    pub fn shift_var(&self, i: usize, k: i64) -> Self {
        MPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[i] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn degree_in(&self, i: usize) -> Degree {
        self.terms
            .keys()
            .map(|e| e[i])
            .max()
            .map_or(Degree::NegInf, Degree::Of)
    }

    pub fn min_degree_in(&self, i: usize) -> Degree {
        self.terms
            .keys()
            .map(|e| e[i])
            .min()
            .map_or(Degree::NegInf, Degree::Of)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<i64>())
            .max()
            .map_or(Degree::NegInf, Degree::Of)
    }

    /// The coefficient of `var_i^k`, still as a polynomial in all N
    /// variables (with exponent 0 in variable i).
    pub fn coeff_of(&self, i: usize, k: i64) -> Self {
        let mut out = MPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = *e;
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Partial derivative in variable i (non-negative exponents assumed).
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            out.add_term(e2, c.scale(&crate::field::rat_int(e[i])));
        }
        out
    }

    /// Substitute each variable by an image polynomial (possibly in a
    /// different number of variables). Source exponents must be
    /// non-negative; images may be Laurent.
    pub fn subst<const M: usize>(&self, images: &[MPoly<M>; N]) -> MPoly<M> {
        for img in images {
            assert!(
                img.field.compatible(&self.field),
                "substitution images over a different home field"
            );
        }
        let target = images
            .first()
            .map(|p| p.field.clone())
            .unwrap_or_else(|| self.field.clone());
        let mut maxes = [0i64; N];
        for e in self.terms.keys() {
            for i in 0..N {
                assert!(e[i] >= 0, "substitution into a Laurent polynomial");
                maxes[i] = maxes[i].max(e[i]);
            }
        }
        // power tables per variable
        let mut powers: Vec<Vec<MPoly<M>>> = Vec::with_capacity(N);
        for i in 0..N {
            let mut table = Vec::with_capacity(maxes[i] as usize + 1);
            table.push(MPoly::one(&target));
            for k in 1..=maxes[i] {
                let prev = &table[(k - 1) as usize];
                table.push(prev.mul(&images[i]));
            }
            powers.push(table);
        }
        let mut acc = MPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for i in 0..N {
                if e[i] > 0 {
                    term = term.mul(&powers[i][e[i] as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Re-index into a polynomial with more variables: variable `i` here
    /// becomes variable `var_map[i]` there.
    pub fn embed<const M: usize>(&self, var_map: [usize; N]) -> MPoly<M> {
        let mut out = MPoly::zero(&self.field);
        for (e, c) in &self.terms {
            let mut e2 = [0i64; M];
            for i in 0..N {
                e2[var_map[i]] += e[i];
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Move all coefficients through a map (typically a field embedding).
    pub fn map_coeffs(
        &self,
        target: &Arc<NumberField>,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> Self {
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Promote a polynomial with rational coefficients into a larger field.
    pub fn promote(&self, target: &Arc<NumberField>) -> Self {
        if self.field.compatible(target) {
            let mut out = MPoly::zero(target);
            for (e, c) in &self.terms {
                out.add_term(*e, c.promote_to(target).unwrap());
            }
            return out;
        }
        self.map_coeffs(target, |c| {
            c.promote_to(target)
                .expect("coefficient is not rational; use an explicit embedding")
        })
    }

    /// Exact division by `var_i^k`; `None` if any term has a smaller
    /// exponent.
    pub fn div_exact_var(&self, i: usize, k: i64) -> Option<Self> {
        for e in self.terms.keys() {
            if e[i] < k {
                return None;
            }
        }
        Some(self.shift_var(i, -k))
    }

    /// The value of a polynomial with no variables left.
    pub fn to_scalar(&self) -> FieldElement {
        if self.is_zero() {
            return self.field.zero();
        }
        assert!(self.is_constant(), "polynomial is not constant");
        self.coeff(&[0; N])
    }
}
