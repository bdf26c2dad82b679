//! Polynomial arithmetic and factorization over small prime fields.
//!
//! Supports the Zassenhaus factorization of integer polynomials: pick a
//! small odd prime, factor the reduction here, Hensel-lift the result.
//! Primes are well below 2^31 so coefficient arithmetic fits in u64 with
//! u128 intermediates.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Dense polynomial over F_p, low degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

impl PPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        let mut poly = PPoly { p, coeffs };
        poly.normalize();
        poly
    }

    pub fn zero(p: u64) -> Self {
        PPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PPoly {
            p,
            coeffs: vec![1],
        }
    }

    pub fn var(p: u64) -> Self {
        PPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(0)) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *c = (a + b) % self.p;
        }
        let mut poly = PPoly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *c = (a + self.p - b) % self.p;
        }
        let mut poly = PPoly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PPoly::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        let mut poly = PPoly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    pub fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect();
        let mut poly = PPoly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.p))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        let dd = d.deg();
        let lc_inv = invmod(d.leading(), p);
        let mut rem = self.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.deg() >= dd {
            let k = rem.deg() - dd;
            let c = mulmod(rem.leading(), lc_inv, p);
            quot[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let v = (rem.coeffs[i + k] + p - mulmod(dc, c, p)) % p;
                rem.coeffs[i + k] = v;
            }
            rem.normalize();
        }
        let mut q = PPoly { p, coeffs: quot };
        q.normalize();
        (q, rem)
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

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (PPoly::one(p), PPoly::zero(p));
        let (mut t0, mut t1) = (PPoly::zero(p), PPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let lc = invmod(r0.leading(), p);
        (r0.scale(lc), s0.scale(lc), t0.scale(lc))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PPoly::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % self.p, self.p))
            .collect();
        let mut poly = PPoly {
            p: self.p,
            coeffs,
        };
        poly.normalize();
        poly
    }

    /// `self^e mod m` with a big exponent.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = PPoly::one(self.p);
        let (_, mut base) = self.divrem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).divrem(m).1;
            }
            if i + 1 < bits {
                base = base.mul(&base).divrem(m).1;
            }
        }
        acc
    }
}

/// Tiny deterministic generator for equal-degree splitting.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factor a squarefree monic polynomial over F_p (p odd) into monic
/// irreducibles, sorted for determinism.
pub fn factor_squarefree_monic(f: &PPoly) -> Vec<PPoly> {
    assert!(f.p % 2 == 1, "equal-degree splitting wants an odd prime");
    let p = f.p;
    let mut out = Vec::new();
    // Distinct-degree decomposition.
    let mut rest = f.monic();
    let mut h = PPoly::var(p);
    let mut d = 0usize;
    while !rest.is_zero() && rest.deg() > 0 {
        d += 1;
        if 2 * d > rest.deg() {
            out.push(rest.clone());
            break;
        }
        h = h.powmod(&BigUint::from(p), &rest);
        let g = h.sub(&PPoly::var(p)).gcd(&rest);
        if g.deg() > 0 {
            for factor in equal_degree_split(&g, d) {
                out.push(factor);
            }
            rest = rest.divrem(&g).0;
            h = h.divrem(&rest).1;
        }
    }
    out.sort_by(|a, b| (a.deg(), &a.coeffs).cmp(&(b.deg(), &b.coeffs)));
    out
}

/// Cantor-Zassenhaus equal-degree splitting: every irreducible factor of
/// `f` has degree `d`.
fn equal_degree_split(f: &PPoly, d: usize) -> Vec<PPoly> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut rng = XorShift(0x9e3779b97f4a7c15 ^ (f.deg() as u64) << 8 ^ d as u64);
    loop {
        let coeffs: Vec<u64> = (0..f.deg()).map(|_| rng.next() % p).collect();
        let u = PPoly::new(p, coeffs);
        if u.deg() == 0 {
            continue;
        }
        let w = u.powmod(&exp, f).sub(&PPoly::one(p));
        let g = w.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let mut out = equal_degree_split(&g, d);
            out.extend(equal_degree_split(&f.divrem(&g).0, d));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_5() {
        let f = PPoly::new(5, vec![4, 0, 1]); // t^2 + 4 = t^2 - 1
        let g = PPoly::new(5, vec![1, 1]); // t + 1
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, PPoly::new(5, vec![4, 1])); // t - 1
    }

    #[test]
    fn factor_splits_completely() {
        // t^2 - 1 = (t-1)(t+1) mod 7
        let f = PPoly::new(7, vec![6, 0, 1]);
        let factors = factor_squarefree_monic(&f);
        assert_eq!(factors.len(), 2);
        let prod = factors[0].mul(&factors[1]);
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn factor_keeps_irreducible_whole() {
        // t^2 + 1 is irreducible mod 7 (since -1 is not a QR mod 7)
        let f = PPoly::new(7, vec![1, 0, 1]);
        let factors = factor_squarefree_monic(&f);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0], f);
    }

    #[test]
    fn mixed_degrees() {
        // (t+1)(t^2+1) mod 7
        let f = PPoly::new(7, vec![1, 1]).mul(&PPoly::new(7, vec![1, 0, 1]));
        let factors = factor_squarefree_monic(&f);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].deg(), 1);
        assert_eq!(factors[1].deg(), 2);
    }
}
