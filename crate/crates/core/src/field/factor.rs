//! Factorization of univariate polynomials over the rationals.
//!
//! Squarefree decomposition is Yun's algorithm. Full factorization is
//! Zassenhaus: reduce a monicized squarefree integer polynomial modulo a
//! small odd prime where it stays squarefree, factor there, Hensel-lift the
//! factors past the Landau-Mignotte coefficient bound, then recombine
//! subsets by trial division over the integers. Every result multiplies
//! back to the input up to a rational constant, and the tests check that.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::modp::{factor_squarefree_monic, PPoly};
use super::qpoly::QPoly;
use super::rational::Rat;
use super::FieldError;

/// Squarefree decomposition over the rationals (Yun). Returns monic
/// pairwise-coprime squarefree factors with multiplicities; the product of
/// `factor^multiplicity` is the input up to a nonzero rational constant.
pub fn factor_squarefree(f: &QPoly) -> Result<Vec<(QPoly, usize)>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    if f.is_constant() {
        return Ok(vec![]);
    }
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
    Ok(out)
}

/// Complete factorization into monic irreducible factors over the
/// rationals, repeated according to multiplicity. The product of the
/// factors equals the input up to a nonzero rational constant.
pub fn factor_irreducible(f: &QPoly) -> Result<Vec<QPoly>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    if f.is_constant() {
        return Err(FieldError::ConstantInput);
    }
    let mut out = Vec::new();
    for (w, mult) in factor_squarefree(f)? {
        for h in factor_squarefree_poly(&w) {
            for _ in 0..mult {
                out.push(h.clone());
            }
        }
    }
    out.sort_by(|a, b| {
        (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs()))
    });
    Ok(out)
}

/// True iff `f` (degree >= 1) is irreducible over the rationals.
pub fn is_irreducible(f: &QPoly) -> bool {
    match factor_irreducible(f) {
        Ok(factors) => factors.len() == 1,
        Err(_) => false,
    }
}

/// The rational roots of `f`, sorted, from its degree-one factors.
pub fn rational_roots(f: &QPoly) -> Vec<Rat> {
    if f.is_zero() || f.is_constant() {
        return vec![];
    }
    let mut roots: Vec<Rat> = factor_irreducible(f)
        .expect("nonconstant input")
        .into_iter()
        .filter(|h| h.degree() == Some(1))
        .map(|h| -h.coeff(0))
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

/// Factor a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree_poly(w: &QPoly) -> Vec<QPoly> {
    let d = w.deg();
    if d == 1 {
        return vec![w.clone()];
    }
    // Monicize over Z: W primitive with leading coefficient L, then
    // What(z) = L^(d-1) * W(z/L) is monic with integer coefficients.
    let (prim, _) = w.primitive_z();
    let lead = prim.last().unwrap().clone();
    // coefficient of z^i in What is prim[i] * L^(d-1-i); the top one is 1
    let mut monic_z: Vec<BigInt> = Vec::with_capacity(prim.len());
    for (i, c) in prim.iter().enumerate() {
        if i == d {
            monic_z.push(BigInt::one());
        } else {
            monic_z.push(c * lead.pow((d - 1 - i) as u32));
        }
    }
    let factors_z = zassenhaus_monic(&monic_z);
    // Map back through z -> L*z and re-monicize over Q.
    let lead_q = Rat::from(lead);
    factors_z
        .into_iter()
        .map(|h| {
            let hq = QPoly::from_coeffs(h.iter().map(|c| Rat::from(c.clone())).collect());
            let sub = QPoly::from_coeffs(vec![Rat::zero(), lead_q.clone()]);
            hq.compose(&sub).monic()
        })
        .collect()
}

/// Zassenhaus on a monic squarefree integer polynomial, degree >= 2.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = f.len() - 1;
    debug_assert!(f[d].is_one());
    let p = pick_prime(f);
    let fp = PPoly::new(
        p,
        f.iter()
            .map(|c| {
                let m = c.mod_floor_u64(p);
                m
            })
            .collect(),
    );
    let base = factor_squarefree_monic(&fp);
    if base.len() == 1 {
        return vec![f.to_vec()];
    }
    // Lift past twice the Landau-Mignotte bound.
    let bound = mignotte_bound(f);
    let target = &bound * BigInt::from(2) + BigInt::one();
    let mut modulus = BigInt::from(p);
    let mut doublings = 0u32;
    while modulus < target {
        modulus = &modulus * &modulus;
        doublings += 1;
    }
    let lifted = lift_all(f.to_vec(), &base, p, doublings);
    recombine(f.to_vec(), lifted, &modulus)
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

/// Smallest odd prime where `f` stays squarefree.
fn pick_prime(f: &[BigInt]) -> u64 {
    let mut p = 3u64;
    loop {
        let fp = PPoly::new(p, f.iter().map(|c| c.mod_floor_u64(p)).collect());
        if fp.deg() == f.len() - 1 {
            let g = fp.gcd(&fp.derivative());
            if g.deg() == 0 {
                return p;
            }
        }
        p = next_prime(p);
    }
}

fn next_prime(p: u64) -> u64 {
    let mut c = p + 2;
    'outer: loop {
        let mut d = 3;
        while d * d <= c {
            if c % d == 0 {
                c += 2;
                continue 'outer;
            }
            d += 2;
        }
        return c;
    }
}

/// 2-norm based bound on the coefficients of any monic factor.
fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    norm << (f.len() - 1)
}

// --- arithmetic on Vec<BigInt> modulo m ---------------------------------

fn zm_trim(a: &mut Vec<BigInt>) {
    while matches!(a.last(), Some(c) if c.is_zero()) {
        a.pop();
    }
}

fn zm_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    zm_trim(&mut out);
    out
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero));
    }
    zm_reduce(&out, m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero));
    }
    zm_reduce(&out, m)
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

/// Division by a monic divisor, everything modulo m.
fn zm_divrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(d.last().map(|c| c.is_one()).unwrap_or(false));
    let dd = d.len() - 1;
    let mut rem = zm_reduce(a, m);
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap().clone();
        quot[k] = c.clone();
        for (i, dc) in d.iter().enumerate() {
            let v = &rem[i + k] - dc * &c;
            rem[i + k] = v;
        }
        rem = zm_reduce(&rem, m);
    }
    (zm_reduce(&quot, m), rem)
}

/// Symmetric representative in (-m/2, m/2].
fn zm_symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / BigInt::from(2);
    let mut out: Vec<BigInt> = a
        .iter()
        .map(|c| {
            if c > &half {
                c - m
            } else {
                c.clone()
            }
        })
        .collect();
    zm_trim(&mut out);
    out
}

fn ppoly_to_zm(g: &PPoly) -> Vec<BigInt> {
    g.coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift the mod-p factorization of monic `f` to modulus p^(2^doublings),
/// peeling one factor at a time with quadratic two-factor Hensel steps.
fn lift_all(f: Vec<BigInt>, base: &[PPoly], p: u64, doublings: u32) -> Vec<Vec<BigInt>> {
    let final_modulus = {
        let mut m = BigInt::from(p);
        for _ in 0..doublings {
            m = &m * &m;
        }
        m
    };
    let mut out = Vec::with_capacity(base.len());
    let mut rest = zm_reduce(&f, &final_modulus);
    for (i, g0) in base.iter().enumerate() {
        if i + 1 == base.len() {
            out.push(rest);
            break;
        }
        let mut h0 = PPoly::one(p);
        for gj in &base[i + 1..] {
            h0 = h0.mul(gj);
        }
        let (_, s0, t0) = g0.extended_gcd(&h0);
        let (g, h) = hensel_pair(
            &rest,
            ppoly_to_zm(g0),
            ppoly_to_zm(&h0),
            ppoly_to_zm(&s0),
            ppoly_to_zm(&t0),
            p,
            doublings,
        );
        out.push(g);
        rest = h;
    }
    out
}

/// Quadratic Hensel lifting of `f = g*h` with Bezout data, from modulus p
/// to p^(2^doublings). `g` and `h` are monic.
fn hensel_pair(
    f: &[BigInt],
    mut g: Vec<BigInt>,
    mut h: Vec<BigInt>,
    mut s: Vec<BigInt>,
    mut t: Vec<BigInt>,
    p: u64,
    doublings: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut m = BigInt::from(p);
    for _ in 0..doublings {
        let m2 = &m * &m;
        let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
        let se = zm_mul(&s, &e, &m2);
        let (q, r) = zm_divrem_monic(&se, &h, &m2);
        g = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m2), &m2), &zm_mul(&q, &g, &m2), &m2);
        h = zm_add(&h, &r, &m2);
        let sg = zm_mul(&s, &g, &m2);
        let th = zm_mul(&t, &h, &m2);
        let b = zm_sub(&zm_add(&sg, &th, &m2), &[BigInt::one()], &m2);
        let sb = zm_mul(&s, &b, &m2);
        let (c, d) = zm_divrem_monic(&sb, &h, &m2);
        s = zm_sub(&s, &d, &m2);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g, &m2), &m2);
        m = m2;
    }
    (g, h)
}

/// Try subsets of the lifted factors; a subset whose symmetric product
/// divides `f` over the integers is a true factor.
fn recombine(mut f: Vec<BigInt>, mut pool: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let indices: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&indices, size) {
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = zm_mul(&prod, &pool[i], m);
            }
            let cand = zm_symmetric(&prod, m);
            if let Some(q) = z_div_exact(&f, &cand) {
                out.push(cand);
                f = q;
                let keep: Vec<Vec<BigInt>> = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

/// Exact division of integer polynomials with monic divisor.
fn z_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if d.len() > a.len() {
        return None;
    }
    let dd = d.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap().clone();
        quot[k] = c.clone();
        for (i, dc) in d.iter().enumerate() {
            let v = &rem[i + k] - dc * &c;
            rem[i + k] = v;
        }
        zm_trim(&mut rem);
        if rem.len() > dd + k {
            return None; // top coefficient failed to cancel
        }
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], size - 1) {
            let mut combo = vec![first];
            combo.append(&mut tail);
            out.push(combo);
        }
    }
    out
}

#[allow(dead_code)]
fn biguint_of(b: &BigInt) -> BigUint {
    b.magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn product(factors: &[QPoly]) -> QPoly {
        factors.iter().fold(QPoly::one(), |acc, f| acc.mul(f))
    }

    #[test]
    fn squarefree_examples() {
        // z^2 - 2z + 1 = (z-1)^2
        let f = QPoly::from_ints(&[1, -2, 1]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts, vec![(QPoly::from_ints(&[-1, 1]), 2)]);

        // z^3 - z is already squarefree
        let f = QPoly::from_ints(&[0, -1, 0, 1]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts, vec![(f.clone(), 1)]);

        // z^4 - 2z^2 + 1 = (z^2-1)^2, found through gcd(f, f')
        let f = QPoly::from_ints(&[1, 0, -2, 0, 1]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts, vec![(QPoly::from_ints(&[-1, 0, 1]), 2)]);
    }

    #[test]
    fn squarefree_parts_are_coprime() {
        // (z-1)^2 (z+2)^3 (z^2+1)
        let f = QPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&QPoly::from_ints(&[2, 1]).pow(3))
            .mul(&QPoly::from_ints(&[1, 0, 1]));
        let parts = factor_squarefree(&f).unwrap();
        let mut rebuilt = QPoly::one();
        for (g, m) in &parts {
            rebuilt = rebuilt.mul(&g.pow(*m));
        }
        assert_eq!(rebuilt, f.monic());
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                assert!(parts[i].0.gcd(&parts[j].0).is_one());
            }
        }
    }

    #[test]
    fn irreducible_examples() {
        // z^2 - 1 -> [z-1, z+1]
        let f = QPoly::from_ints(&[-1, 0, 1]);
        let factors = factor_irreducible(&f).unwrap();
        assert_eq!(
            factors,
            vec![QPoly::from_ints(&[-1, 1]), QPoly::from_ints(&[1, 1])]
        );

        // z^2 - 2 stays whole
        let f = QPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(factor_irreducible(&f).unwrap(), vec![f.clone()]);
    }

    #[test]
    fn z4_plus_1_is_irreducible() {
        let f = QPoly::from_ints(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_irreducible(&f).unwrap(), vec![f.clone()]);
        // Cross-check: f(z+1) = z^4 + 4z^3 + 6z^2 + 4z + 2 satisfies
        // Eisenstein at 2, an independent irreducibility certificate.
        let shifted = f.translate(&rat(1, 1));
        let (prim, _) = shifted.primitive_z();
        let p = BigInt::from(2);
        assert!(prim[..4].iter().all(|c| (c % &p).is_zero()));
        assert!(!(&prim[0] / &p % &p).is_zero());
        assert!(prim[4].is_one());
    }

    #[test]
    fn factor_with_multiplicity_and_nontrivial_split() {
        // (z^2+z+1)^2 (z-3) (2z+1)
        let f = QPoly::from_ints(&[1, 1, 1])
            .pow(2)
            .mul(&QPoly::from_ints(&[-3, 1]))
            .mul(&QPoly::from_ints(&[1, 2]));
        let factors = factor_irreducible(&f).unwrap();
        assert_eq!(factors.len(), 4);
        assert_eq!(product(&factors), f.monic());
        for g in &factors {
            assert!(is_irreducible(g));
        }
    }

    #[test]
    fn bigger_split_with_fraction_coefficients() {
        // (z^2 - 1/2)(z^3 + z + 7/3): irreducible quadratic times cubic
        let a = QPoly::from_coeffs(vec![rat(-1, 2), rat(0, 1), rat(1, 1)]);
        let b = QPoly::from_coeffs(vec![rat(7, 3), rat(1, 1), rat(0, 1), rat(1, 1)]);
        let f = a.mul(&b);
        let factors = factor_irreducible(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert_eq!(product(&factors), f.monic());
    }

    #[test]
    fn rational_roots_of_quadratic() {
        // (z - 2/3)(z + 5)
        let f = QPoly::from_coeffs(vec![rat(-2, 3), rat(1, 1)]).mul(&QPoly::from_ints(&[5, 1]));
        assert_eq!(rational_roots(&f), vec![rat(-5, 1), rat(2, 3)]);
    }

    #[test]
    fn errors_on_degenerate_input() {
        assert!(factor_squarefree(&QPoly::zero()).is_err());
        assert!(factor_irreducible(&QPoly::one()).is_err());
    }
}
