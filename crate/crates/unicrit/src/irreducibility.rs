//! Irreducibility of `x^d + c` over the rationals via the binomial criterion,
//! the composition-chain certificate, dense coefficient expansion, and a
//! sound-but-incomplete mod-q resolver for otherwise-undecided words.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dynamics::UnicriticalPoly;
use crate::integer_kernel::{floor_kth_root, is_prime_u64, prime_divisors, pth_power_witness, PowerWitness};
use crate::modpoly;
use crate::semigroup::{Presentation, Word};

pub const DEFAULT_DEGREE_CAP: u64 = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrredError {
    #[error("word index {0} is out of range for {1} generators")]
    IndexOutOfRange(usize, usize),
    #[error("composition degree {0} exceeds the cap {1}")]
    DegreeCapExceeded(u64, u64),
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u64),
    #[error("mod-q test requires a monic polynomial of degree >= 1")]
    NotMonic,
}

/// Why a base binomial `x^d + c` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducibleWitness {
    /// `-c = y^p` for a prime `p | d` (nonnegative square when `p = 2`).
    PthPower(PowerWitness),
    /// `c = 4 z^4` with `4 | d`.
    FourZFourth { z: BigInt },
}

impl ReducibleWitness {
    /// Reconstructs an explicit monic factor pair of `x^d + c`, dense
    /// coefficients constant-first.
    pub fn factor_pair(&self, d: u32) -> (Vec<BigInt>, Vec<BigInt>) {
        match self {
            ReducibleWitness::PthPower(w) => {
                let p = w.p;
                let m = (d / p) as usize;
                let y = if w.epsilon < 0 { -w.y.clone() } else { w.y.clone() };
                if p == 2 {
                    // x^d - y^2 = (x^(d/2) - y)(x^(d/2) + y)
                    let mut a = vec![BigInt::zero(); m + 1];
                    let mut b = vec![BigInt::zero(); m + 1];
                    a[0] = -y.clone();
                    a[m] = BigInt::one();
                    b[0] = y;
                    b[m] = BigInt::one();
                    (a, b)
                } else {
                    // x^d - y^p = (x^m - y) * sum_{i<p} y^i x^(m(p-1-i))
                    let mut a = vec![BigInt::zero(); m + 1];
                    a[0] = -y.clone();
                    a[m] = BigInt::one();
                    let mut b = vec![BigInt::zero(); m * (p as usize - 1) + 1];
                    for i in 0..p as usize {
                        b[m * (p as usize - 1 - i)] = y.pow(i as u32);
                    }
                    (a, b)
                }
            }
            ReducibleWitness::FourZFourth { z } => {
                // x^d + 4z^4 = (x^(d/2) - 2z x^(d/4) + 2z^2)(x^(d/2) + 2z x^(d/4) + 2z^2)
                let m = (d / 4) as usize;
                let two_z: BigInt = z * 2;
                let two_z_sq: BigInt = z.pow(2) * 2;
                let mut a = vec![BigInt::zero(); 2 * m + 1];
                let mut b = a.clone();
                a[0] = two_z_sq.clone();
                a[m] = -two_z.clone();
                a[2 * m] = BigInt::one();
                b[0] = two_z_sq;
                b[m] = two_z;
                b[2 * m] = BigInt::one();
                (a, b)
            }
        }
    }
}

/// `Some(witness)` iff `x^d + c` is reducible over the rationals.
///
/// The binomial criterion: `x^d - a` (here `a = -c`) is reducible iff
/// `a = y^p` for some prime `p | d`, or `4 | d` and `a = -4 z^4`.
pub fn base_reducibility_witness(f: &UnicriticalPoly) -> Option<ReducibleWitness> {
    let d = f.degree();
    let a = -f.constant();
    for p in prime_divisors(d).expect("degree >= 2") {
        if let Some(w) = pth_power_witness(&a, p) {
            if w.epsilon == 1 {
                return Some(ReducibleWitness::PthPower(w));
            }
        }
    }
    if d % 4 == 0 && !f.constant().is_negative() {
        let c = f.constant();
        if (c % 4u32).is_zero() {
            let quarter = c / 4;
            let z = floor_kth_root(&quarter, 4).expect("nonnegative");
            if z.pow(4) == quarter {
                return Some(ReducibleWitness::FourZFourth { z });
            }
        }
    }
    None
}

pub fn base_irreducible(f: &UnicriticalPoly) -> bool {
    base_reducibility_witness(f).is_none()
}

/// One certified step of the composition chain: the critical test value and
/// the primes for which it was confirmed not to be a signed p-th power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub step: usize,
    pub value: BigInt,
    pub primes_checked: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertRule {
    /// Every chain step passed the power-freeness test.
    Chain,
    /// The word is a pure power of one irreducible generator.
    Stability { generator: usize, count: usize },
    /// A blocked chain was settled by irreducibility modulo `q`.
    ModqResolved { q: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<ChainStep>,
    pub rule: CertRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModqResolution {
    NotAttempted,
    Unresolved { primes_tried: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownVerdict {
    /// Index of the blocked chain step.
    pub step: usize,
    pub witness: PowerWitness,
    pub resolution: ModqResolution,
}

/// Three-valued verdict: the chain test is one-sided, so a blocking p-th
/// power yields `Unknown`, never `Reducible`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible(Certificate),
    Reducible(ReducibleWitness),
    Unknown(UnknownVerdict),
}

impl IrreducibilityVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            IrreducibilityVerdict::Irreducible(_) => "irreducible",
            IrreducibilityVerdict::Reducible(_) => "reducible",
            IrreducibilityVerdict::Unknown(_) => "unknown",
        }
    }
}

fn check_word(pres: &Presentation, word: &Word) -> Result<(), IrredError> {
    let s = pres.generator_count();
    match word.indices().iter().find(|&&i| i >= s) {
        Some(&i) => Err(IrredError::IndexOutOfRange(i, s)),
        None => Ok(()),
    }
}

/// Certifies irreducibility of the composition denoted by `word` (leftmost
/// index outermost) over the rationals.
///
/// The leftmost factor must be irreducible as a binomial; each further step
/// `k` checks that the critical value of the length-`k` prefix at the next
/// constant term is not `y^p` for any prime `p | d`. Pure powers of an
/// irreducible generator are certified directly.
pub fn chain_certify(pres: &Presentation, word: &Word) -> Result<IrreducibilityVerdict, IrredError> {
    check_word(pres, word)?;
    let indices = word.indices();
    let outer = pres.generator(indices[0]);
    if let Some(w) = base_reducibility_witness(&outer) {
        return Ok(IrreducibilityVerdict::Reducible(w));
    }
    if word.len() >= 2 {
        if let Some(g) = word.pure_power() {
            return Ok(IrreducibilityVerdict::Irreducible(Certificate {
                steps: Vec::new(),
                rule: CertRule::Stability {
                    generator: g,
                    count: word.len(),
                },
            }));
        }
    }
    let primes = prime_divisors(pres.degree()).expect("degree >= 2");
    let mut steps = Vec::new();
    for k in 1..word.len() {
        // v_k = (theta_1 o ... o theta_k)(c_{k+1})
        let mut v = pres.coeffs()[indices[k]].clone();
        for &i in indices[..k].iter().rev() {
            v = pres.generator(i).evaluate(&v);
        }
        for &p in &primes {
            if let Some(w) = pth_power_witness(&v, p) {
                if w.epsilon == 1 {
                    return Ok(IrreducibilityVerdict::Unknown(UnknownVerdict {
                        step: k,
                        witness: w,
                        resolution: ModqResolution::NotAttempted,
                    }));
                }
            }
        }
        steps.push(ChainStep {
            step: k,
            value: v,
            primes_checked: primes.clone(),
        });
    }
    Ok(IrreducibilityVerdict::Irreducible(Certificate {
        steps,
        rule: CertRule::Chain,
    }))
}

/// Configuration for the mod-q escalation of `Unknown` chain verdicts.
#[derive(Debug, Clone)]
pub struct ResolverOptions {
    pub enabled: bool,
    pub primes: Vec<u64>,
    pub degree_cap: u64,
}

impl Default for ResolverOptions {
    fn default() -> Self {
        Self {
            enabled: true,
            primes: (3..=200).filter(|&q| is_prime_u64(q)).collect(),
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Degree `d^len` of a composition, saturating.
pub fn composition_degree(d: u32, len: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..len {
        acc = acc.saturating_mul(d as u64);
    }
    acc
}

/// `chain_certify`, escalating an `Unknown` verdict to `Irreducible` when the
/// expanded polynomial is irreducible modulo some configured prime. A monic
/// integer polynomial irreducible mod q is irreducible over the rationals;
/// the converse fails, so the verdict can stay `Unknown`. Never claims
/// `Reducible` from the resolver.
pub fn certify_with_resolver(
    pres: &Presentation,
    word: &Word,
    opts: &ResolverOptions,
) -> IrreducibilityVerdict {
    let verdict = match chain_certify(pres, word) {
        Ok(v) => v,
        Err(_) => panic!("word validated by caller"),
    };
    let unknown = match verdict {
        IrreducibilityVerdict::Unknown(u) => u,
        other => return other,
    };
    if !opts.enabled || composition_degree(pres.degree(), word.len()) > opts.degree_cap {
        return IrreducibilityVerdict::Unknown(UnknownVerdict {
            resolution: ModqResolution::Unresolved { primes_tried: 0 },
            ..unknown
        });
    }
    match resolve_by_modq(pres, word, opts) {
        (Some(q), _) => IrreducibilityVerdict::Irreducible(Certificate {
            steps: Vec::new(),
            rule: CertRule::ModqResolved { q },
        }),
        (None, tried) => IrreducibilityVerdict::Unknown(UnknownVerdict {
            resolution: ModqResolution::Unresolved { primes_tried: tried },
            ..unknown
        }),
    }
}

/// Scans the configured primes for one modulo which the expanded composition
/// is irreducible. Returns the successful prime (if any) and the number of
/// primes tried.
pub fn resolve_by_modq(
    pres: &Presentation,
    word: &Word,
    opts: &ResolverOptions,
) -> (Option<u64>, usize) {
    let mut tried = 0usize;
    for &q in &opts.primes {
        let coeffs = match expand_word_mod(pres, word, q, opts.degree_cap) {
            Ok(c) => c,
            Err(_) => break,
        };
        tried += 1;
        if let Ok(true) = modq_irreducible(&coeffs, q) {
            return (Some(q), tried);
        }
    }
    (None, tried)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_pow(base: &[BigInt], mut exp: u32) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    let mut sq = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul(&acc, &sq);
        }
        exp >>= 1;
        if exp > 0 {
            sq = poly_mul(&sq, &sq);
        }
    }
    acc
}

/// Exact dense coefficients of the composition, constant term first, reduced
/// into `[0, q)` when a modulus is given. Degree-capped.
pub fn expand_word_coefficients(
    pres: &Presentation,
    word: &Word,
    modulus: Option<u64>,
) -> Result<Vec<BigInt>, IrredError> {
    expand_word_coefficients_capped(pres, word, modulus, DEFAULT_DEGREE_CAP)
}

pub fn expand_word_coefficients_capped(
    pres: &Presentation,
    word: &Word,
    modulus: Option<u64>,
    cap: u64,
) -> Result<Vec<BigInt>, IrredError> {
    check_word(pres, word)?;
    match modulus {
        Some(q) => Ok(expand_word_mod(pres, word, q, cap)?
            .into_iter()
            .map(BigInt::from)
            .collect()),
        None => {
            let total = composition_degree(pres.degree(), word.len());
            if total > cap {
                return Err(IrredError::DegreeCapExceeded(total, cap));
            }
            let d = pres.degree();
            let indices = word.indices();
            // innermost generator first
            let inner = indices[word.len() - 1];
            let mut poly = vec![BigInt::zero(); d as usize + 1];
            poly[0] = pres.coeffs()[inner].clone();
            poly[d as usize] = BigInt::one();
            for &i in indices[..word.len() - 1].iter().rev() {
                poly = poly_pow(&poly, d);
                poly[0] += &pres.coeffs()[i];
            }
            Ok(poly)
        }
    }
}

fn expand_word_mod(
    pres: &Presentation,
    word: &Word,
    q: u64,
    cap: u64,
) -> Result<Vec<u64>, IrredError> {
    let total = composition_degree(pres.degree(), word.len());
    if total > cap {
        return Err(IrredError::DegreeCapExceeded(total, cap));
    }
    let d = pres.degree();
    let reduce = |c: &BigInt| -> u64 {
        let m = c % BigInt::from(q);
        let m = if m.is_negative() { m + BigInt::from(q) } else { m };
        u64::try_from(m).expect("reduced")
    };
    let indices = word.indices();
    let inner = indices[word.len() - 1];
    let mut poly = vec![0u64; d as usize + 1];
    poly[0] = reduce(&pres.coeffs()[inner]);
    poly[d as usize] = 1;
    for &i in indices[..word.len() - 1].iter().rev() {
        poly = modpoly_pow(&poly, d, q);
        poly[0] = (poly[0] + reduce(&pres.coeffs()[i])) % q;
    }
    Ok(poly)
}

fn modpoly_pow(base: &[u64], mut exp: u32, q: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = modpoly::mul(&acc, &sq, q);
        }
        exp >>= 1;
        if exp > 0 {
            sq = modpoly::mul(&sq, &sq, q);
        }
    }
    acc
}

/// Rabin's irreducibility test over the field with `q` elements for a monic
/// polynomial given constant-first.
pub fn modq_irreducible(coeffs: &[u64], q: u64) -> Result<bool, IrredError> {
    if q < 3 || q % 2 == 0 || !is_prime_u64(q) {
        return Err(IrredError::BadModulus(q));
    }
    let g: Vec<u64> = coeffs.iter().map(|&c| c % q).collect();
    let g = modpoly::trim(g);
    if g.len() < 2 || *g.last().unwrap() != 1 {
        return Err(IrredError::NotMonic);
    }
    Ok(modpoly::is_irreducible(&g, q))
}
