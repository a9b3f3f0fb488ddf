//! Iteration of `x^d + c` over the integers: orbit classification with a
//! certified escape threshold, integer fixed points, powered fixed points and
//! 2-cycles, and the prime-powered iterate classifier.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::integer_kernel::{floor_kth_root, prime_divisors, pth_power_witness, PowerWitness};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("operation requires degree d = 2")]
    DegreeNotTwo,
    #[error("classifier requires a nonzero constant term")]
    ZeroConstant,
    #[error("intermediate value exceeded the {0}-bit size cap")]
    SizeCapExceeded(u64),
}

/// The map `x^d + c` with `d >= 2` and arbitrary-precision integer `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicriticalPoly {
    d: u32,
    c: BigInt,
}

impl UnicriticalPoly {
    pub fn new(d: u32, c: BigInt) -> Result<Self, DynamicsError> {
        if d < 2 {
            return Err(DynamicsError::DegreeTooSmall);
        }
        Ok(Self { d, c })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn constant(&self) -> &BigInt {
        &self.c
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        x.pow(self.d) + &self.c
    }

    /// `f^n(x)` with `f^0` the identity.
    pub fn iterate(&self, x: &BigInt, n: u32) -> BigInt {
        let mut v = x.clone();
        for _ in 0..n {
            v = self.evaluate(&v);
        }
        v
    }

    /// `f^n(x)` aborting once an intermediate value exceeds `max_bits` bits.
    pub fn iterate_bounded(&self, x: &BigInt, n: u32, max_bits: u64) -> Result<BigInt, DynamicsError> {
        let mut v = x.clone();
        for _ in 0..n {
            if v.bits() > max_bits {
                return Err(DynamicsError::SizeCapExceeded(max_bits));
            }
            v = self.evaluate(&v);
        }
        Ok(v)
    }

    /// Once `|x|` reaches this bound the orbit strictly increases in absolute
    /// value: `|f(x)| >= |x|^2 - |c| >= |x|(|c| + 2) - |c| > |x|`.
    pub fn escape_threshold(&self) -> BigInt {
        self.c.abs() + 2
    }

    /// Classifies the orbit of `alpha` as preperiodic with minimal
    /// `(tail, period)` or escaping at the first index whose value meets the
    /// escape threshold. Values below the threshold lie in a finite interval,
    /// so the walk either crosses the threshold or repeats.
    pub fn orbit_classify(&self, alpha: &BigInt) -> OrbitReport {
        let threshold = self.escape_threshold();
        let mut prefix: Vec<BigInt> = Vec::new();
        let mut seen: std::collections::HashMap<BigInt, usize> = std::collections::HashMap::new();
        let mut v = alpha.clone();
        loop {
            if v.abs() >= threshold {
                let index = prefix.len();
                prefix.push(v);
                return OrbitReport {
                    kind: OrbitKind::Escaping { index },
                    prefix,
                };
            }
            if let Some(&tail) = seen.get(&v) {
                return OrbitReport {
                    kind: OrbitKind::Preperiodic {
                        tail,
                        period: prefix.len() - tail,
                    },
                    prefix,
                };
            }
            seen.insert(v.clone(), prefix.len());
            prefix.push(v.clone());
            v = self.evaluate(&v);
        }
    }

    /// All integer solutions of `x^d + c = x`, ascending.
    pub fn integer_fixed_points(&self) -> Vec<BigInt> {
        // |x| >= 2 forces |x|^d <= 2|c|, so the scan below is complete.
        let two_c = self.c.abs() * 2;
        let bound: BigInt = floor_kth_root(&two_c, self.d).expect("nonnegative radicand") + 1;
        let bound = bound.max(BigInt::one());
        let mut out = Vec::new();
        let mut x = -bound.clone();
        while x <= bound {
            if self.evaluate(&x) == x {
                out.push(x.clone());
            }
            x += 1;
        }
        out
    }

    /// All powered fixed points, i.e. canonical witnesses with
    /// `f(y^p) = y^p` for some prime `p | d`. One witness per distinct fixed
    /// value, preferring smallest `p` then `y >= 0`; sorted by fixed value.
    pub fn powered_fixed_points(&self) -> Vec<PowerWitness> {
        let primes = prime_divisors(self.d).expect("degree >= 2");
        let mut by_value: Vec<(BigInt, PowerWitness)> = Vec::new();
        for p in primes {
            let y_bound: BigInt = if self.c.is_zero() {
                BigInt::one()
            } else {
                floor_kth_root(&self.c.abs(), p).expect("nonnegative radicand") + 1
            };
            let mut candidates: Vec<BigInt> = Vec::new();
            let mut y = BigInt::zero();
            while y <= y_bound {
                candidates.push(y.clone());
                if !y.is_zero() {
                    candidates.push(-y.clone());
                }
                y += 1;
            }
            for y in candidates {
                let fixed = y.pow(p);
                if self.c.is_zero() && fixed.is_negative() {
                    // for c = 0 only the fixed values 0 and 1 are reported
                    continue;
                }
                if &fixed - fixed.pow(self.d) == self.c
                    && !by_value.iter().any(|(v, _)| *v == fixed)
                {
                    by_value.push((
                        fixed,
                        PowerWitness {
                            epsilon: 1,
                            y: y.clone(),
                            p,
                        },
                    ));
                }
            }
        }
        by_value.sort_by(|a, b| a.0.cmp(&b.0));
        by_value.into_iter().map(|(_, w)| w).collect()
    }

    /// The square values `y^2` lying on a 2-cycle of a quadratic map:
    /// `f(f(y^2)) = y^2` with `f(y^2) != y^2`.
    pub fn powered_two_cycles(&self) -> Result<Vec<BigInt>, DynamicsError> {
        if self.d != 2 {
            return Err(DynamicsError::DegreeNotTwo);
        }
        let bound = self.c.abs() + 1;
        let mut out = Vec::new();
        let mut y = BigInt::zero();
        loop {
            let sq = y.pow(2);
            if sq > bound {
                break;
            }
            let one_step = self.evaluate(&sq);
            if one_step != sq && self.evaluate(&one_step) == sq {
                out.push(sq);
            }
            y += 1;
        }
        Ok(out)
    }
}

impl std::fmt::Display for UnicriticalPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.c.is_zero() {
            write!(f, "x^{}", self.d)
        } else if self.c.is_negative() {
            write!(f, "x^{} - {}", self.d, self.c.abs())
        } else {
            write!(f, "x^{} + {}", self.d, self.c)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitKind {
    Preperiodic { tail: usize, period: usize },
    Escaping { index: usize },
}

/// Orbit classification of an integer point, with the computed orbit values
/// up to the point of classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub kind: OrbitKind,
    pub prefix: Vec<BigInt>,
}

impl OrbitReport {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self.kind, OrbitKind::Preperiodic { .. })
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, OrbitKind::Preperiodic { tail: 0, .. })
    }
}

/// Orbit facts recorded alongside a classified powered iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedIterate {
    /// Which structural statement applies: 1 (d = 2), 2 (d odd),
    /// 3 (d >= 4 even, c != -1), 4 (d >= 4 even, c = -1).
    pub statement: u8,
    pub witness: PowerWitness,
    /// The powered value `epsilon * y^p = f^n(alpha)`.
    pub powered_value: BigInt,
    /// Whether `alpha` equals the powered value up to the sign allowed by the
    /// statement (exact equality for statement 2).
    pub alpha_matches: bool,
    pub alpha_preperiodic: bool,
    /// Tail and exact period of the powered value's orbit, when finite.
    pub powered_tail: Option<usize>,
    pub powered_period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IterateClassification {
    /// `f^n(alpha)` is not `epsilon * y^p` for any prime `p | d`.
    NoPower,
    /// A witness exists but `n` is below the structural threshold
    /// (4 for `d = 2`, 3 for `d >= 3`), so no orbit claim is made.
    BelowThreshold { witness: PowerWitness },
    Classified(ClassifiedIterate),
}

/// Classifies `f^n(alpha)` as a signed prime power and, past the iterate
/// threshold, records the forced orbit structure. Primes `p | d` are tried in
/// ascending order and the first witness is used.
pub fn classify_pth_power_iterate(
    f: &UnicriticalPoly,
    alpha: &BigInt,
    n: u32,
) -> Result<IterateClassification, DynamicsError> {
    if f.constant().is_zero() {
        return Err(DynamicsError::ZeroConstant);
    }
    let value = f.iterate(alpha, n);
    let witness = prime_divisors(f.degree())
        .expect("degree >= 2")
        .into_iter()
        .find_map(|p| pth_power_witness(&value, p));
    let witness = match witness {
        Some(w) => w,
        None => return Ok(IterateClassification::NoPower),
    };
    let threshold = if f.degree() == 2 { 4 } else { 3 };
    if n < threshold {
        return Ok(IterateClassification::BelowThreshold { witness });
    }
    let d = f.degree();
    let statement = if d == 2 {
        1
    } else if d % 2 == 1 {
        2
    } else if *f.constant() != BigInt::from(-1) {
        3
    } else {
        4
    };
    let powered_value = witness.value();
    debug_assert_eq!(powered_value, value);
    let alpha_matches = if statement == 2 {
        *alpha == powered_value
    } else {
        *alpha == powered_value || *alpha == -&powered_value
    };
    let alpha_report = f.orbit_classify(alpha);
    let powered_report = f.orbit_classify(&powered_value);
    let (powered_tail, powered_period) = match powered_report.kind {
        OrbitKind::Preperiodic { tail, period } => (Some(tail), Some(period)),
        OrbitKind::Escaping { .. } => (None, None),
    };
    Ok(IterateClassification::Classified(ClassifiedIterate {
        statement,
        witness,
        powered_value,
        alpha_matches,
        alpha_preperiodic: alpha_report.is_preperiodic(),
        powered_tail,
        powered_period,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(d: u32, c: i64) -> UnicriticalPoly {
        UnicriticalPoly::new(d, BigInt::from(c)).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(poly(2, -460).evaluate(&int(22)), int(24));
        assert_eq!(poly(3, 17).evaluate(&int(0)), int(17));
        // oracle: 32^5 = 33554432
        assert_eq!(poly(5, -33554400).evaluate(&int(32)), int(32));
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(poly(2, -460).iterate(&int(22), 3), int(12996));
        assert_eq!(poly(4, 9).iterate(&int(-3), 0), int(-3));
        // hand orbit: 0 -> -1 -> 0 -> -1 -> 0
        assert_eq!(poly(2, -1).iterate(&int(0), 4), int(0));
    }

    #[test]
    fn iterate_size_guard() {
        let f = poly(2, 3);
        assert!(f.iterate_bounded(&int(10), 4, 1000).is_ok());
        assert_eq!(
            f.iterate_bounded(&int(10), 50, 64),
            Err(DynamicsError::SizeCapExceeded(64))
        );
    }

    #[test]
    fn orbit_escaping_example() {
        let report = poly(2, -460).orbit_classify(&int(22));
        assert_eq!(report.kind, OrbitKind::Escaping { index: 3 });
        assert_eq!(report.prefix, vec![int(22), int(24), int(116), int(12996)]);
    }

    #[test]
    fn orbit_two_cycle_of_zero() {
        let report = poly(2, -1).orbit_classify(&int(0));
        assert_eq!(report.kind, OrbitKind::Preperiodic { tail: 0, period: 2 });
    }

    #[test]
    fn orbit_fixed_point() {
        let report = poly(2, -2).orbit_classify(&int(2));
        assert_eq!(report.kind, OrbitKind::Preperiodic { tail: 0, period: 1 });
    }

    #[test]
    fn orbit_pure_power_escapes() {
        let report = poly(3, 0).orbit_classify(&int(2));
        assert_eq!(report.kind, OrbitKind::Escaping { index: 0 });
    }

    #[test]
    fn escape_is_sound() {
        for (d, c, alpha) in [(2u32, -460i64, 22i64), (2, 5, 3), (3, -10, 4), (5, 0, 2)] {
            let f = poly(d, c);
            let report = f.orbit_classify(&int(alpha));
            if let OrbitKind::Escaping { index } = report.kind {
                let mut v = f.iterate(&int(alpha), index as u32);
                for _ in 0..20 {
                    if v.bits() > 1 << 14 {
                        break; // growth is doubly exponential; stop once huge
                    }
                    let next = f.evaluate(&v);
                    assert!(next.abs() > v.abs());
                    v = next;
                }
            } else {
                panic!("expected escape for d={d} c={c} alpha={alpha}");
            }
        }
    }

    #[test]
    fn preperiodic_minimality() {
        for (d, c, alpha) in [(2u32, -1i64, 1i64), (2, -2, 0), (2, -2, -1), (4, -1, 1)] {
            let f = poly(d, c);
            let report = f.orbit_classify(&int(alpha));
            if let OrbitKind::Preperiodic { tail, period } = report.kind {
                let base = f.iterate(&int(alpha), tail as u32);
                assert_eq!(f.iterate(&base, period as u32), base);
                for smaller in 1..period {
                    assert_ne!(f.iterate(&base, smaller as u32), base);
                }
                if tail > 0 {
                    // the point just before the tail is not yet periodic
                    let pre = f.iterate(&int(alpha), (tail - 1) as u32);
                    let mut v = f.evaluate(&pre);
                    let mut returned = false;
                    for _ in 0..(tail + period + 2) {
                        if v == pre {
                            returned = true;
                        }
                        v = f.evaluate(&v);
                    }
                    assert!(!returned);
                }
            } else {
                panic!("expected preperiodic for d={d} c={c} alpha={alpha}");
            }
        }
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(poly(2, -2).integer_fixed_points(), vec![int(-1), int(2)]);
        assert!(poly(2, 1).integer_fixed_points().is_empty());
        // oracle: exhaustive scan |x| <= 253 finds only 4^4 - 252 = 4
        assert_eq!(poly(4, -252).integer_fixed_points(), vec![int(4)]);
    }

    #[test]
    fn fixed_points_match_exhaustive_scan() {
        for d in 2u32..=4 {
            for c in -60i64..=60 {
                let f = poly(d, c);
                let expected: Vec<BigInt> = (-61..=61)
                    .map(int)
                    .filter(|x| f.evaluate(x) == *x)
                    .collect();
                assert_eq!(f.integer_fixed_points(), expected, "d={d} c={c}");
            }
        }
    }

    #[test]
    fn powered_fixed_points_examples() {
        // 2^2 - 2^8 = -252
        let w = poly(4, -252).powered_fixed_points();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].y.clone(), w[0].p), (int(2), 2));
        // 2^5 - 2^25 = 32 - 33554432
        let w = poly(5, -33554400).powered_fixed_points();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].y.clone(), w[0].p), (int(2), 5));
        assert!(poly(2, 1).powered_fixed_points().is_empty());
    }

    #[test]
    fn powered_fixed_points_match_scan() {
        // oracle: direct scan of y in a window large enough for this c-range
        for d in [2u32, 3, 4, 6] {
            for c in -300i64..=300 {
                let f = poly(d, c);
                let mut expected: Vec<BigInt> = Vec::new();
                for p in prime_divisors(d).unwrap() {
                    for y in -20i64..=20 {
                        let fixed = int(y).pow(p);
                        if c == 0 && fixed < int(0) {
                            continue;
                        }
                        if f.evaluate(&fixed) == fixed && !expected.contains(&fixed) {
                            expected.push(fixed);
                        }
                    }
                }
                expected.sort();
                let got: Vec<BigInt> = f.powered_fixed_points().iter().map(|w| w.value()).collect();
                assert_eq!(got, expected, "d={d} c={c}");
            }
        }
    }

    #[test]
    fn powered_two_cycle_examples() {
        assert_eq!(poly(2, -1).powered_two_cycles().unwrap(), vec![int(0)]);
        // 1 -> -2 -> 1
        assert_eq!(poly(2, -3).powered_two_cycles().unwrap(), vec![int(1)]);
        assert!(poly(2, 1).powered_two_cycles().unwrap().is_empty());
        assert_eq!(
            poly(3, -1).powered_two_cycles(),
            Err(DynamicsError::DegreeNotTwo)
        );
    }

    #[test]
    fn classify_below_threshold() {
        let f = poly(2, -460);
        match classify_pth_power_iterate(&f, &int(22), 3).unwrap() {
            IterateClassification::BelowThreshold { witness } => {
                assert_eq!((witness.epsilon, witness.y, witness.p), (1, int(114), 2));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn classify_statement_one() {
        let f = poly(2, -2);
        match classify_pth_power_iterate(&f, &int(1), 4).unwrap() {
            IterateClassification::Classified(c) => {
                assert_eq!(c.statement, 1);
                assert_eq!(c.powered_value, int(-1));
                assert!(c.alpha_matches);
                assert_eq!(c.powered_period, Some(1));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn classify_statement_two() {
        // 8 = 2^3 is fixed under x^3 - 504
        let f = poly(3, -504);
        match classify_pth_power_iterate(&f, &int(8), 3).unwrap() {
            IterateClassification::Classified(c) => {
                assert_eq!(c.statement, 2);
                assert_eq!(c.powered_value, int(8));
                assert!(c.alpha_matches);
                assert_eq!(c.powered_period, Some(1));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn classify_rejects_zero_constant() {
        let f = poly(2, 0);
        assert_eq!(
            classify_pth_power_iterate(&f, &int(3), 4),
            Err(DynamicsError::ZeroConstant)
        );
    }

    #[test]
    fn classify_no_power() {
        let f = poly(2, 5);
        assert_eq!(
            classify_pth_power_iterate(&f, &int(1), 4).unwrap(),
            IterateClassification::NoPower
        );
    }

    #[test]
    fn classifier_consistency_small_range() {
        for c in -50i64..=50 {
            if c == 0 {
                continue;
            }
            let f = poly(2, c);
            for alpha in -30i64..=30 {
                if let IterateClassification::Classified(cl) =
                    classify_pth_power_iterate(&f, &int(alpha), 4).unwrap()
                {
                    assert!(cl.alpha_preperiodic, "c={c} alpha={alpha}");
                    assert_eq!(cl.powered_tail, Some(0), "c={c} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn orbit_of_zero_bound() {
        for d in 2u32..=5 {
            for mag in 2i64..=500 {
                for c in [mag, -mag] {
                    let f = poly(d, c);
                    let mut v = int(0);
                    for _ in 0..6 {
                        v = f.evaluate(&v);
                        assert!(v.abs() >= int(c).abs(), "d={d} c={c}");
                    }
                }
            }
        }
    }
}
