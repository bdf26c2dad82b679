//! Arbitrary-precision rational scalars.
//!
//! `Rat` is a reduced fraction of `BigInt`s: `num_rational` keeps the
//! denominator positive and divides out the gcd on construction, which is
//! exactly the canonical form we need. Everything in this crate that says
//! "rational" means this type; floating point never appears.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Deterministic text form: `p` or `p/q` with `q > 1`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Max of |numerator| and denominator, as a crude size measure for
/// pivot selection in exact elimination.
pub fn rat_bits(r: &Rat) -> u64 {
    r.numer().abs().bits().max(r.denom().bits())
}

/// True if `r` is the square of a rational, and the square root if so.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}
