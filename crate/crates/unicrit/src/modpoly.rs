//! Dense polynomial arithmetic over a prime field F_q, q < 2^32, enough for
//! the Rabin irreducibility test.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::integer_kernel::{mul_mod_u64, prime_divisors};

/// Coefficients constant-first, trailing zeros stripped.
pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn degree(a: &[u64]) -> usize {
    debug_assert!(a.last() != Some(&0));
    a.len().saturating_sub(1)
}

pub(crate) fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_u64(ai, bj, q)) % q;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo monic `g`.
pub(crate) fn rem(a: &[u64], g: &[u64], q: u64) -> Vec<u64> {
    debug_assert_eq!(*g.last().unwrap(), 1, "divisor must be monic");
    let mut r = trim(a.to_vec());
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let idx = shift + i;
                let sub = mul_mod_u64(lead, gi, q);
                r[idx] = (r[idx] + q - sub) % q;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

pub(crate) fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        out[i] = (ai + q - bi % q) % q;
    }
    trim(out)
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // q prime, a != 0 mod q
    crate::integer_kernel::pow_mod_u64(a, q - 2, q)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let lead = *b.last().unwrap();
        let monic: Vec<u64> = if lead == 1 {
            b.clone()
        } else {
            let inv = inv_mod(lead, q);
            b.iter().map(|&x| mul_mod_u64(x, inv, q)).collect()
        };
        let r = rem(&a, &monic, q);
        a = b;
        b = r;
    }
    a
}

/// `base^exp mod g` over F_q, with a big-integer exponent.
pub(crate) fn pow_mod(base: &[u64], exp: &BigUint, g: &[u64], q: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = rem(base, g, q);
    let mut e = exp.clone();
    while !e.is_zero() {
        if (&e % 2u32).is_one() {
            acc = rem(&mul(&acc, &sq, q), g, q);
        }
        sq = rem(&mul(&sq, &sq, q), g, q);
        e >>= 1;
    }
    acc
}

/// Rabin's test: monic `g` of degree `n >= 1` is irreducible over F_q iff
/// `x^(q^n) = x (mod g)` and `gcd(x^(q^(n/l)) - x, g) = 1` for every prime
/// `l | n`.
pub(crate) fn is_irreducible(g: &[u64], q: u64) -> bool {
    let n = degree(g);
    debug_assert!(n >= 1);
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let qn = BigUint::from(q).pow(n as u32);
    let frob_full = pow_mod(&x, &qn, g, q);
    if trim(sub(&frob_full, &x, q)) != Vec::<u64>::new() {
        return false;
    }
    for l in prime_divisors(n as u32).expect("n >= 2") {
        let e = BigUint::from(q).pow(n as u32 / l);
        let frob = pow_mod(&x, &e, g, q);
        let diff = sub(&frob, &x, q);
        let d = gcd(g, &diff, q);
        if degree(&d) != 0 || d.is_empty() {
            return false;
        }
    }
    true
}
