//! Dense univariate polynomials over the rationals.
//!
//! This is the workhorse behind minimal polynomials, factorization and the
//! elimination steps of the classification solver. Coefficients are stored
//! low degree first with a nonzero leading coefficient; the zero polynomial
//! is the empty vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QPoly({})", self.to_string_in("t"))
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// `t` itself.
    pub fn var() -> Self {
        QPoly::monomial(Rat::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = QPoly::one();
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
            return QPoly::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc = d.leading();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.deg() >= dd {
            let k = rem.deg() - dd;
            let c = rem.leading() / lc.clone();
            quot[k] = c.clone();
            // rem -= c * t^k * d
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = rem.coeff(i + k) - dc * &c;
                rem.coeffs[i + k] = v;
            }
            rem.normalize();
        }
        (QPoly::from_coeffs(quot), rem)
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd via the Euclidean algorithm.
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

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
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
        if r0.is_zero() {
            return (QPoly::zero(), QPoly::zero(), QPoly::zero());
        }
        let lc = r0.leading().recip();
        (r0.scale(&lc), s0.scale(&lc), t0.scale(&lc))
    }

    /// `f(g)` by Horner's scheme.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// `f(t + c)`.
    pub fn translate(&self, c: &Rat) -> Self {
        self.compose(&QPoly::from_coeffs(vec![c.clone(), Rat::one()]))
    }

    /// Clear denominators and content: the primitive integer polynomial with
    /// positive leading coefficient, plus the rational constant it was
    /// multiplied by (`self = constant * primitive`).
    pub fn primitive_z(&self) -> (Vec<BigInt>, Rat) {
        assert!(!self.is_zero());
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = num_integer::gcd(content, c.clone());
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        (prim, Rat::new(content, den))
    }

    /// Resultant of `self` and `other`, exact over the rationals.
    pub fn resultant(&self, other: &Self) -> Rat {
        let (a, b) = (self, other);
        if a.is_zero() || b.is_zero() {
            return Rat::zero();
        }
        if a.is_constant() {
            return pow_rat(&a.coeffs[0], b.deg());
        }
        if b.is_constant() {
            return pow_rat(&b.coeffs[0], a.deg());
        }
        // res(a, b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * res(b, r)
        let (_, r) = a.divrem(b);
        let sign = if (a.deg() * b.deg()) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        if r.is_zero() {
            return Rat::zero();
        }
        sign * pow_rat(&b.leading(), a.deg() - r.deg()) * b.resultant(&r)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        use super::rational::rat_to_string;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if i == 0 {
                rat_to_string(&mag)
            } else {
                let v = if i == 1 {
                    var.to_string()
                } else {
                    format!("{}^{}", var, i)
                };
                if mag.is_one() {
                    v
                } else {
                    format!("{}*{}", rat_to_string(&mag), v)
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{}", body)
                } else {
                    body
                });
            } else if c.is_negative() {
                parts.push(format!(" - {}", body));
            } else {
                parts.push(format!(" + {}", body));
            }
        }
        parts.concat()
    }
}

fn pow_rat(c: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= c;
    }
    acc
}

/// Lagrange interpolation through distinct sample points.
pub fn interpolate(points: &[(Rat, Rat)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut num = QPoly::one();
        let mut den = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num.mul(&QPoly::from_coeffs(vec![-xj.clone(), Rat::one()]));
            den *= xi - xj;
        }
        acc = acc.add(&num.scale(&(yi / den)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    #[test]
    fn divrem_identity() {
        let f = QPoly::from_ints(&[0, 0, 0, 1]); // t^3
        let d = QPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let (q, r) = f.divrem(&d);
        assert_eq!(q, QPoly::from_ints(&[0, 1]));
        assert_eq!(r, QPoly::from_ints(&[0, 1]));
        assert_eq!(q.mul(&d).add(&r), f);
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = QPoly::from_ints(&[-1, 0, 1]); // (t-1)(t+1)
        let b = QPoly::from_ints(&[-1, 1]).mul(&QPoly::from_ints(&[2, 1]));
        assert_eq!(a.gcd(&b), QPoly::from_ints(&[-1, 1]));
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn resultant_of_coprime_and_sharing() {
        // res(t^2 - 2, t^2 - 3) = 1 (coprime), res(t-1, t^2-1) = 0
        let a = QPoly::from_ints(&[-2, 0, 1]);
        let b = QPoly::from_ints(&[-3, 0, 1]);
        assert_eq!(a.resultant(&b), rat(1, 1));
        let c = QPoly::from_ints(&[-1, 1]);
        let d = QPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(c.resultant(&d), rat(0, 1));
        // res(t^2-2, t-3) = 3^2 - 2 = 7
        let e = QPoly::from_ints(&[-3, 1]);
        assert_eq!(a.resultant(&e), rat(7, 1));
    }

    #[test]
    fn interpolation_recovers() {
        let f = QPoly::from_coeffs(vec![rat(1, 2), rat(-2, 3), rat(1, 1)]);
        let pts: Vec<(Rat, Rat)> = (0..3).map(|i| (rat(i, 1), f.eval(&rat(i, 1)))).collect();
        assert_eq!(interpolate(&pts), f);
    }

    #[test]
    fn primitive_part() {
        let f = QPoly::from_coeffs(vec![rat(1, 2), rat(3, 4)]); // 1/2 + 3/4 t
        let (prim, c) = f.primitive_z();
        assert_eq!(prim, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(c, rat(1, 4));
    }
}
