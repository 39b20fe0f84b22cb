//! Polynomial gcd over `Z[X]`.
//!
//! [`poly_gcd`] computes gcds of modular images at word-size primes, lifts
//! by CRT with symmetric residues, and certifies the lifted candidate by
//! exact trial division, so an unlucky prime can cost a retry but never an
//! incorrect answer. [`subresultant_gcd`] is an independent classical
//! subresultant polynomial-remainder-sequence implementation with the same
//! contract; it doubles as a fallback and as a cross-check oracle.
//!
//! Both return the full integer gcd: `gcd(content(a), content(b))` times
//! the primitive gcd, normalized to a positive leading coefficient.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntPoly;

pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return IntPoly::zero(),
        (true, false) => return normalize_sign(b.clone()),
        (false, true) => return normalize_sign(a.clone()),
        _ => {}
    }
    let (ca, pa) = a.clone().into_primitive();
    let (cb, pb) = b.clone().into_primitive();
    let content_gcd = ca.abs().gcd(&cb.abs());
    primitive_gcd_modular(&pa, &pb).mul_scalar(&content_gcd)
}

/// Classical subresultant PRS gcd; same contract as [`poly_gcd`].
pub fn subresultant_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return IntPoly::zero(),
        (true, false) => return normalize_sign(b.clone()),
        (false, true) => return normalize_sign(a.clone()),
        _ => {}
    }
    let (ca, pa) = a.clone().into_primitive();
    let (cb, pb) = b.clone().into_primitive();
    let content_gcd = ca.abs().gcd(&cb.abs());
    primitive_gcd_subresultant(pa, pb).mul_scalar(&content_gcd)
}

fn normalize_sign(f: IntPoly) -> IntPoly {
    match f.leading() {
        Some(lc) if lc.is_negative() => f.neg(),
        _ => f,
    }
}

fn div_scalar_exact(f: &IntPoly, d: &BigInt) -> IntPoly {
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                debug_assert!(r.is_zero(), "scalar division must be exact");
                q
            })
            .collect(),
    )
}

/// gcd of two nonzero primitive polynomials, primitive with positive
/// leading coefficient.
fn primitive_gcd_modular(pa: &IntPoly, pb: &IntPoly) -> IntPoly {
    let (pa, pb) = if pa.degree() >= pb.degree() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    if pb.degree() == Some(0) {
        // A primitive constant is a unit.
        return IntPoly::one();
    }
    let lc_gcd = pa.leading().unwrap().abs().gcd(&pb.leading().unwrap().abs());

    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut lifted: Vec<BigInt> = Vec::new();
    for &p in primes() {
        let pb_big = BigInt::from(p);
        if (pa.leading().unwrap() % &pb_big).is_zero()
            || (pb.leading().unwrap() % &pb_big).is_zero()
        {
            continue;
        }
        let ga = reduce_mod(pa, p);
        let gb = reduce_mod(pb, p);
        let g = gcd_mod_p(ga, gb, p);
        let deg_g = g.len() - 1;
        if deg_g == 0 {
            return IntPoly::one();
        }
        if deg_g > best_deg {
            // Unlucky prime: its gcd image has too high a degree.
            continue;
        }
        // Scale the monic image so its leading coefficient is
        // gcd(lc(pa), lc(pb)) mod p, which the true gcd's leading
        // coefficient divides; this makes the images CRT-compatible.
        let scale = big_to_residue(&lc_gcd, p);
        let scaled: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if deg_g < best_deg {
            best_deg = deg_g;
            modulus = pb_big.clone();
            lifted = scaled.iter().map(|&c| symmetric(c, p)).collect();
        } else {
            crt_combine(&mut lifted, &mut modulus, &scaled, p);
        }
        let (_, candidate) = IntPoly::from_coeffs(lifted.clone()).into_primitive();
        if pa.divexact(&candidate).is_some() && pb.divexact(&candidate).is_some() {
            return candidate;
        }
    }
    // Word-size primes exhausted without certification; fall back to the
    // classical algorithm. Not expected to be reachable for sane inputs.
    primitive_gcd_subresultant(pa.clone(), pb.clone())
}

fn primitive_gcd_subresultant(pa: IntPoly, pb: IntPoly) -> IntPoly {
    let (mut a, mut b) = if pa.degree() >= pb.degree() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    if b.degree() == Some(0) {
        return IntPoly::one();
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let d = a.degree().unwrap() - b.degree().unwrap();
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            let (_, prim) = b.into_primitive();
            return prim;
        }
        if r.degree() == Some(0) {
            return IntPoly::one();
        }
        a = b;
        let mut divisor = g.clone();
        for _ in 0..d {
            divisor *= &h;
        }
        b = div_scalar_exact(&r, &divisor);
        g = a.leading().unwrap().clone();
        // h = h^{1-d} g^d, always an exact integer.
        let gd = g.pow(d as u32);
        h = if d == 0 {
            h
        } else {
            let hd1 = h.pow((d - 1) as u32);
            let (q, rem) = gd.div_rem(&hd1);
            debug_assert!(rem.is_zero());
            q
        };
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` over the integers.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().unwrap();
    let lc_b = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut steps = a.degree().unwrap() - db + 1;
    while !r.is_zero() && r.degree().unwrap() >= db {
        let dr = r.degree().unwrap();
        let lead = r.leading().unwrap().clone();
        let shifted = IntPoly::monomial(lead, dr - db).mul(b);
        r = r.mul_scalar(&lc_b).sub(&shifted);
        steps -= 1;
    }
    // Keep the classical normalization lc(b)^(d+1) * a mod b.
    for _ in 0..steps {
        r = r.mul_scalar(&lc_b);
    }
    r
}

fn reduce_mod(f: &IntPoly, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.coeffs().iter().map(|c| big_to_residue(c, p)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn big_to_residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn symmetric(c: u64, p: u64) -> BigInt {
    if c > p / 2 {
        BigInt::from(c) - BigInt::from(p)
    } else {
        BigInt::from(c)
    }
}

fn crt_combine(lifted: &mut Vec<BigInt>, modulus: &mut BigInt, residues: &[u64], p: u64) {
    let m_mod_p = big_to_residue(modulus, p);
    let m_inv = inv_mod(m_mod_p, p);
    let p_big = BigInt::from(p);
    let new_modulus = &*modulus * &p_big;
    let half = &new_modulus / 2;
    for (x, &r) in lifted.iter_mut().zip(residues) {
        // x' = x + M * ((r - x) * M^{-1} mod p), symmetric mod M*p.
        let x_mod_p = big_to_residue(x, p);
        let diff = mul_mod((r + p - x_mod_p) % p, m_inv, p);
        let mut v = &*x + &*modulus * BigInt::from(diff);
        if v > half {
            v -= &new_modulus;
        }
        *x = v;
    }
    *modulus = new_modulus;
}

/// Monic gcd in `F_p[X]` of dense ascending coefficient vectors.
fn gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_mod_p(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let lead_inv = inv_mod(*a.last().unwrap(), p);
    for c in &mut a {
        *c = mul_mod(*c, lead_inv, p);
    }
    a
}

fn rem_mod_p(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    while a.len() > db {
        let da = a.len() - 1;
        let q = mul_mod(*a.last().unwrap(), lead_inv, p);
        if q != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = da - db + i;
                let sub = mul_mod(q, bc, p);
                a[idx] = (a[idx] + p - sub) % p;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.is_empty() {
            return;
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64 (the listed witnesses decide
/// primality for all inputs below 3.3e24).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// 25 primes just below 2^62, generated deterministically at first use.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(25);
        let mut candidate = (1u64 << 62) - 1;
        while out.len() < 25 {
            if is_prime_u64(candidate) {
                out.push(candidate);
            }
            candidate -= 2;
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn prime_generation_is_sound() {
        let ps = primes();
        assert_eq!(ps.len(), 25);
        for &p in ps {
            assert!(is_prime_u64(p), "{p} not prime");
            assert!(p > 1 << 61);
        }
        assert!(is_prime_u64(2) && is_prime_u64(3) && is_prime_u64(65537));
        assert!(!is_prime_u64(1) && !is_prime_u64(561) && !is_prime_u64(3215031751));
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let a = ip(&[-1, 0, 1]); // (X-1)(X+1)
        let b = ip(&[2, 1]); // X + 2
        assert_eq!(poly_gcd(&a, &b), IntPoly::one());
        assert_eq!(subresultant_gcd(&a, &b), IntPoly::one());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = ip(&[1, 4, 6]);
        let a = common.mul(&ip(&[-1, 0, 0, 2]));
        let b = common.mul(&ip(&[5, 1])).mul(&ip(&[7, 3]));
        assert_eq!(poly_gcd(&a, &b), common);
        assert_eq!(subresultant_gcd(&a, &b), common);
    }

    #[test]
    fn gcd_includes_integer_content() {
        let a = ip(&[6, 12]); // 6(2X+1)... actually 6*(2X+1) has content 6
        let b = ip(&[4, 8, 4]); // 4(X+1)^2
        let g = poly_gcd(&a, &b);
        // contents 6 and 4 share 2; primitive parts 2X+1 and (X+1)^2 are
        // coprime.
        assert_eq!(g, ip(&[2]));
        assert_eq!(subresultant_gcd(&a, &b), g);
    }

    #[test]
    fn gcd_normalizes_sign() {
        let a = ip(&[1, 1]).neg().mul(&ip(&[3, 2]));
        let b = ip(&[1, 1]).mul(&ip(&[1, 0, 1]));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, ip(&[1, 1]));
        assert!(g.leading().unwrap() > &BigInt::zero());
    }

    #[test]
    fn gcd_with_zero_and_constants() {
        let a = ip(&[2, 4]);
        assert_eq!(poly_gcd(&a, &IntPoly::zero()), a);
        assert_eq!(poly_gcd(&IntPoly::zero(), &a), a);
        assert_eq!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()), IntPoly::zero());
        assert_eq!(poly_gcd(&ip(&[6]), &ip(&[10])), ip(&[2]));
        assert_eq!(poly_gcd(&ip(&[-6]), &a), ip(&[2]));
    }

    #[test]
    fn gcd_of_equal_polynomials() {
        let a = ip(&[3, 0, -6, 9]);
        let g = poly_gcd(&a, &a);
        assert_eq!(g, a); // content 3, primitive positive-lc already
        assert_eq!(subresultant_gcd(&a, &a), g);
    }

    #[test]
    fn gcd_high_multiplicity_factors() {
        let f = ip(&[1, 1]).pow(5).mul(&ip(&[-3, 1]).pow(2));
        let fd = f.derivative();
        let g = poly_gcd(&f, &fd);
        let expected = ip(&[1, 1]).pow(4).mul(&ip(&[-3, 1]));
        assert_eq!(g, expected);
        assert_eq!(subresultant_gcd(&f, &fd), expected);
    }

    #[test]
    fn modular_and_subresultant_agree_on_larger_inputs() {
        let a = ip(&[7, -2, 0, 5, 1]).mul(&ip(&[1, 8, -3]).pow(3)).mul_scalar(&BigInt::from(12));
        let b = ip(&[1, 8, -3]).pow(2).mul(&ip(&[-4, 9])).mul_scalar(&BigInt::from(-18));
        assert_eq!(poly_gcd(&a, &b), subresultant_gcd(&a, &b));
    }
}
