//! Exact arbitrary-precision integer primitives: floor k-th roots, perfect
//! p-th power witnesses with sign, and prime divisors of small integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("floor_kth_root requires a nonnegative radicand")]
    NegativeRadicand,
    #[error("floor_kth_root requires k >= 1")]
    ZeroExponent,
    #[error("prime_divisors requires d >= 2")]
    DegreeTooSmall,
}

/// An exact representation `epsilon * y^p` of an integer, with `p` prime.
///
/// Canonical form: for `p = 2`, `y >= 0` and `epsilon` is the sign of the
/// value (`+1` for zero); for odd `p`, `epsilon = +1` and `y` carries the
/// sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerWitness {
    pub epsilon: i8,
    pub y: BigInt,
    pub p: u32,
}

impl PowerWitness {
    /// Reconstructs `epsilon * y^p`.
    pub fn value(&self) -> BigInt {
        let v = self.y.pow(self.p);
        if self.epsilon < 0 {
            -v
        } else {
            v
        }
    }
}

impl std::fmt::Display for PowerWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.epsilon < 0 {
            write!(f, "-({})^{}", self.y, self.p)
        } else {
            write!(f, "({})^{}", self.y, self.p)
        }
    }
}

/// Largest `r >= 0` with `r^k <= n`, exact at any magnitude.
pub fn floor_kth_root(n: &BigInt, k: u32) -> Result<BigInt, KernelError> {
    if k == 0 {
        return Err(KernelError::ZeroExponent);
    }
    if n.is_negative() {
        return Err(KernelError::NegativeRadicand);
    }
    let mag = n.magnitude().nth_root(k);
    Ok(BigInt::from_biguint(Sign::Plus, mag))
}

/// Canonical witness for `n = epsilon * y^p`, if one exists.
///
/// For `p = 2` both signs of `n` are representable (`epsilon` absorbs the
/// sign); for odd `p` only genuine p-th powers qualify and `y` is signed.
pub fn pth_power_witness(n: &BigInt, p: u32) -> Option<PowerWitness> {
    debug_assert!(is_prime_u64(p as u64), "exponent must be prime");
    if n.is_zero() {
        return Some(PowerWitness {
            epsilon: 1,
            y: BigInt::zero(),
            p,
        });
    }
    let mag: &BigUint = n.magnitude();
    let root = mag.nth_root(p);
    if root.pow(p) != *mag {
        return None;
    }
    if p == 2 {
        let epsilon = if n.is_negative() { -1 } else { 1 };
        Some(PowerWitness {
            epsilon,
            y: BigInt::from_biguint(Sign::Plus, root),
            p,
        })
    } else {
        let y = if n.is_negative() {
            -BigInt::from_biguint(Sign::Plus, root)
        } else {
            BigInt::from_biguint(Sign::Plus, root)
        };
        Some(PowerWitness { epsilon: 1, y, p })
    }
}

/// Distinct prime divisors of `d`, ascending. Trial division; `d` is a
/// degree-scale input.
pub fn prime_divisors(d: u32) -> Result<Vec<u32>, KernelError> {
    if d < 2 {
        return Err(KernelError::DegreeTooSmall);
    }
    let mut out = Vec::new();
    let mut m = d;
    let mut q = 2;
    while q as u64 * q as u64 <= m as u64 {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    Ok(out)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}
