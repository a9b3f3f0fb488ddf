//! Named, exhaustive desk-scale verification suites for the structural facts
//! the rest of the crate relies on: growth lemmas, preimage bounds, the
//! iterate classification, sharpness examples, stability of pure powers, and
//! freeness of the semigroup action.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{IterateClassification, UnicriticalPoly};
use crate::integer_kernel::{prime_divisors, pth_power_witness};
use crate::irreducibility::{base_irreducible, composition_degree, resolve_by_modq, ResolverOptions};
use crate::semigroup::{freeness_spot_check, Presentation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifierError {
    #[error("unknown suite id {0:?}")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    ConsecutivePowers,
    PreimageBound,
    EscapeLemma,
    Classification,
    Sharpness,
    Mod8,
    OrbitZero,
    FixedUniqueness,
    Stability,
    Freeness,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::ConsecutivePowers,
        SuiteId::PreimageBound,
        SuiteId::EscapeLemma,
        SuiteId::Classification,
        SuiteId::Sharpness,
        SuiteId::Mod8,
        SuiteId::OrbitZero,
        SuiteId::FixedUniqueness,
        SuiteId::Stability,
        SuiteId::Freeness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::ConsecutivePowers => "consecutive-powers",
            SuiteId::PreimageBound => "preimage-bound",
            SuiteId::EscapeLemma => "escape-lemma",
            SuiteId::Classification => "classification",
            SuiteId::Sharpness => "sharpness",
            SuiteId::Mod8 => "mod8",
            SuiteId::OrbitZero => "orbit-zero",
            SuiteId::FixedUniqueness => "fixed-uniqueness",
            SuiteId::Stability => "stability",
            SuiteId::Freeness => "freeness",
        }
    }

    pub fn parse(s: &str) -> Result<SuiteId, VerifierError> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifierError::UnknownSuite(s.to_string()))
    }
}

/// Range overrides; `None` selects each suite's documented default.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    /// Only this degree (suites that scan a degree range).
    pub d: Option<u32>,
    pub d_max: Option<u32>,
    pub c_max: Option<i64>,
    pub x_max: Option<i64>,
    pub r_max: Option<i64>,
    pub beta_max: Option<i64>,
    pub n_max: Option<u32>,
    pub m_max: Option<u32>,
    pub max_len: Option<usize>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub cases: u64,
    pub violations: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "params": self.params,
            "cases": self.cases,
            "violations": self.violations,
            "seconds": self.seconds,
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "suite {}: {} [{}] cases={} violations={} ({:.2}s)",
            self.suite,
            if self.passed() { "pass" } else { "FAIL" },
            params.join(" "),
            self.cases,
            self.violations.len(),
            self.seconds
        )?;
        for v in &self.violations {
            write!(f, "\n  violation: {v}")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: u64,
    violations: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations.push(describe());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.violations.extend(other.violations);
        self
    }
}

fn report(
    id: SuiteId,
    params: BTreeMap<String, String>,
    start: Instant,
    mut tally: Tally,
) -> SuiteReport {
    tally.violations.sort();
    SuiteReport {
        suite: id.name().to_string(),
        params,
        cases: tally.cases,
        violations: tally.violations,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Runs one named suite over its (overridable) ranges and reports every
/// violation with a reproducing input.
pub fn run_suite(id: SuiteId, params: &SuiteParams) -> SuiteReport {
    let start = Instant::now();
    match id {
        SuiteId::ConsecutivePowers => consecutive_powers(params, start),
        SuiteId::PreimageBound => preimage_bound(params, start),
        SuiteId::EscapeLemma => escape_lemma(params, start),
        SuiteId::Classification => classification(params, start, false),
        SuiteId::Sharpness => sharpness(params, start),
        SuiteId::Mod8 => mod8(params, start),
        SuiteId::OrbitZero => orbit_zero(params, start),
        SuiteId::FixedUniqueness => fixed_uniqueness(params, start),
        SuiteId::Stability => stability(params, start),
        SuiteId::Freeness => freeness(params, start),
    }
}

/// Runs every suite in catalog order.
pub fn run_all(params: &SuiteParams) -> Vec<SuiteReport> {
    SuiteId::ALL
        .into_iter()
        .map(|id| run_suite(id, params))
        .collect()
}

/// `x^d - (x-1)^d > x^(d-1)` for all `2 <= x <= X`, `2 <= d <= D`.
fn consecutive_powers(params: &SuiteParams, start: Instant) -> SuiteReport {
    let x_max = params.x_max.unwrap_or(200);
    let d_max = params.d_max.unwrap_or(10);
    let mut tally = Tally::new();
    for x in 2..=x_max {
        for d in 2..=d_max {
            let lhs = int(x).pow(d) - int(x - 1).pow(d);
            let rhs = int(x).pow(d - 1);
            tally.check(lhs > rhs, || format!("x={x} d={d}"));
        }
    }
    let params = BTreeMap::from([
        ("x_max".into(), x_max.to_string()),
        ("d_max".into(), d_max.to_string()),
    ]);
    report(SuiteId::ConsecutivePowers, params, start, tally)
}

fn degree_range(params: &SuiteParams, lo: u32, default_hi: u32) -> Vec<u32> {
    match params.d {
        Some(d) => vec![d.max(lo)],
        None => (lo..=params.d_max.unwrap_or(default_hi)).collect(),
    }
}

/// If `alpha^d + c = eps * y^p` for a prime `p | d`, then `alpha^2 <= |c|`
/// (d > 2) or `|alpha| <= |c|` (d = 2). The scan `|alpha| <= 2|c| + 10`
/// provably contains every solution.
fn preimage_bound(params: &SuiteParams, start: Instant) -> SuiteReport {
    let c_max = params.c_max.unwrap_or(100);
    let degrees = degree_range(params, 2, 6);
    let tally = (-c_max..=c_max)
        .into_par_iter()
        .filter(|&c| c != 0)
        .map(|c| {
            let mut tally = Tally::new();
            let c_abs = c.abs();
            for &d in &degrees {
                for p in prime_divisors(d).expect("d >= 2") {
                    for alpha in -(2 * c_abs + 10)..=(2 * c_abs + 10) {
                        let value = int(alpha).pow(d) + c;
                        let hit = pth_power_witness(&value, p).is_some();
                        let ok = !hit
                            || (d == 2 && alpha.abs() <= c_abs)
                            || (d > 2 && alpha * alpha <= c_abs);
                        tally.check(ok, || format!("c={c} d={d} p={p} alpha={alpha}"));
                    }
                }
            }
            tally
        })
        .reduce(Tally::new, Tally::merge);
    let params = BTreeMap::from([
        ("c_max".into(), c_max.to_string()),
        ("degrees".into(), format!("{degrees:?}")),
    ]);
    report(SuiteId::PreimageBound, params, start, tally)
}

/// Escape lemma: if `||beta| - |c|^(1/d)| >= 1` (as the exact integer
/// condition `(|beta|-1)^d >= |c|` or `(|beta|+1)^d <= |c|`), then
/// `f^n(beta)^2 > |c|` for `n >= 1` when `d > 2, |c| >= 2`, and
/// `|f^n(beta)| > |c|` for `n >= 2` when `d = 2, |c| >= 3`.
fn escape_lemma(params: &SuiteParams, start: Instant) -> SuiteReport {
    let c_max = params.c_max.unwrap_or(50);
    let beta_max = params.beta_max.unwrap_or(30);
    let n_max = params.n_max.unwrap_or(5);
    let degrees = degree_range(params, 2, 6);
    let tally = (-c_max..=c_max)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::new();
            for &d in &degrees {
                let c_abs = c.abs();
                if (d == 2 && c_abs < 3) || (d > 2 && c_abs < 2) {
                    continue;
                }
                let f = UnicriticalPoly::new(d, int(c)).expect("d >= 2");
                let threshold = f.escape_threshold();
                for beta in -beta_max..=beta_max
                {
                    let b = beta.abs();
                    let hyp = int(b - 1).max(int(0)).pow(d) >= int(c_abs)
                        || int(b + 1).pow(d) <= int(c_abs);
                    if !hyp {
                        continue;
                    }
                    let n_min = if d == 2 { 2 } else { 1 };
                    let mut v = f.iterate(&int(beta), n_min);
                    let mut ok = true;
                    let mut n = n_min;
                    loop {
                        let holds = if d == 2 {
                            v.abs() > int(c_abs)
                        } else {
                            v.abs().pow(2) > int(c_abs)
                        };
                        if !holds {
                            ok = false;
                            break;
                        }
                        if n >= n_max {
                            break;
                        }
                        // past the escape threshold the orbit strictly grows,
                        // so every later n also satisfies the bound
                        if v.abs() >= threshold {
                            break;
                        }
                        v = f.evaluate(&v);
                        n += 1;
                    }
                    tally.check(ok, || format!("c={c} d={d} beta={beta} n={n}"));
                }
            }
            tally
        })
        .reduce(Tally::new, Tally::merge);
    let params = BTreeMap::from([
        ("c_max".into(), c_max.to_string()),
        ("beta_max".into(), beta_max.to_string()),
        ("n_max".into(), n_max.to_string()),
        ("degrees".into(), format!("{degrees:?}")),
    ]);
    report(SuiteId::EscapeLemma, params, start, tally)
}

/// Whenever `f^N(alpha)` is a signed prime power, the iterate classifier must
/// return a structural statement, `alpha` must be preperiodic, and the
/// powered value must be periodic. With `mutate` set, statement (1)
/// additionally demands period <= 1 — a deliberately false predicate used to
/// prove the harness can fail.
fn classification(params: &SuiteParams, start: Instant, mutate: bool) -> SuiteReport {
    let c_max = params.c_max.unwrap_or(50);
    let degrees = degree_range(params, 2, 4);
    let tally = (-c_max..=c_max)
        .into_par_iter()
        .filter(|&c| c != 0)
        .map(|c| {
            let mut tally = Tally::new();
            for &d in &degrees {
                let f = UnicriticalPoly::new(d, int(c)).expect("d >= 2");
                let n = if d == 2 { 4 } else { 3 };
                let primes = prime_divisors(d).expect("d >= 2");
                for alpha in -(2 * c.abs() + 10)..=(2 * c.abs() + 10) {
                    let value = f.iterate(&int(alpha), n);
                    if !primes.iter().any(|&p| pth_power_witness(&value, p).is_some()) {
                        continue;
                    }
                    let classified = classify_ok(&f, alpha, n, mutate);
                    tally.check(classified, || format!("c={c} d={d} alpha={alpha}"));
                }
            }
            tally
        })
        .reduce(Tally::new, Tally::merge);
    let params = BTreeMap::from([
        ("c_max".into(), c_max.to_string()),
        ("degrees".into(), format!("{degrees:?}")),
        ("mutate".into(), mutate.to_string()),
    ]);
    report(SuiteId::Classification, params, start, tally)
}

fn classify_ok(f: &UnicriticalPoly, alpha: i64, n: u32, mutate: bool) -> bool {
    match crate::dynamics::classify_pth_power_iterate(f, &int(alpha), n) {
        Ok(IterateClassification::Classified(ci)) => {
            let periodic = ci.powered_tail == Some(0) && ci.powered_period.is_some();
            let base = ci.alpha_preperiodic && periodic;
            if mutate && ci.statement == 1 {
                base && ci.powered_period == Some(1)
            } else {
                base
            }
        }
        _ => false,
    }
}

/// `f = x^d - r^d` has `f^2(r) = -r^d` with `r` escaping, and `x^2 - 460`
/// has `f^3(22) = 114^2` with `22` escaping: the iterate threshold in the
/// classification is sharp.
fn sharpness(params: &SuiteParams, start: Instant) -> SuiteReport {
    let r_max = params.r_max.unwrap_or(10);
    let d_max = params.d_max.unwrap_or(6);
    let mut tally = Tally::new();
    for r in 2..=r_max {
        for d in 2..=d_max {
            let f = UnicriticalPoly::new(d, -int(r).pow(d)).expect("d >= 2");
            let ok = f.iterate(&int(r), 2) == -int(r).pow(d)
                && !f.orbit_classify(&int(r)).is_preperiodic();
            tally.check(ok, || format!("r={r} d={d}"));
        }
    }
    let f = UnicriticalPoly::new(2, int(-460)).expect("d >= 2");
    tally.check(
        f.iterate(&int(22), 3) == int(114).pow(2)
            && !f.orbit_classify(&int(22)).is_preperiodic(),
        || "c=-460 alpha=22".to_string(),
    );
    let params = BTreeMap::from([
        ("r_max".into(), r_max.to_string()),
        ("d_max".into(), d_max.to_string()),
    ]);
    report(SuiteId::Sharpness, params, start, tally)
}

/// For `d = 2` and `c in {1, 2}` there is no residue solution of
/// `f^4(alpha) = eps * y^2` modulo 8; one case per `(alpha, y, eps)` triple,
/// checked for both values of `c`.
fn mod8(_params: &SuiteParams, start: Instant) -> SuiteReport {
    let mut tally = Tally::new();
    let f4_mod8 = |alpha: u64, c: u64| -> u64 {
        let mut v = alpha;
        for _ in 0..4 {
            v = (v * v + c) % 8;
        }
        v
    };
    for alpha in 0..8u64 {
        for y in 0..8u64 {
            for eps in [1i64, -1] {
                let target = (eps * (y * y) as i64).rem_euclid(8) as u64;
                let ok = (1..=2u64).all(|c| f4_mod8(alpha, c) != target);
                tally.check(ok, || format!("alpha={alpha} y={y} eps={eps}"));
            }
        }
    }
    report(SuiteId::Mod8, BTreeMap::new(), start, tally)
}

/// `|f^m(0)| >= |c|` for `2 <= |c| <= C`, each degree, `1 <= m <= M`.
fn orbit_zero(params: &SuiteParams, start: Instant) -> SuiteReport {
    let c_max = params.c_max.unwrap_or(100);
    let m_max = params.m_max.unwrap_or(6);
    let degrees = degree_range(params, 2, 5);
    let tally = (-c_max..=c_max)
        .into_par_iter()
        .filter(|&c| c.abs() >= 2)
        .map(|c| {
            let mut tally = Tally::new();
            for &d in &degrees {
                let f = UnicriticalPoly::new(d, int(c)).expect("d >= 2");
                let mut v = BigInt::zero();
                for m in 1..=m_max {
                    v = f.evaluate(&v);
                    tally.check(v.abs() >= int(c.abs()), || format!("c={c} d={d} m={m}"));
                }
            }
            tally
        })
        .reduce(Tally::new, Tally::merge);
    let params = BTreeMap::from([
        ("c_max".into(), c_max.to_string()),
        ("m_max".into(), m_max.to_string()),
        ("degrees".into(), format!("{degrees:?}")),
    ]);
    report(SuiteId::OrbitZero, params, start, tally)
}

/// For `d >= 3` and `c != 0`, `x^d + c = x` has at most one integer root.
fn fixed_uniqueness(params: &SuiteParams, start: Instant) -> SuiteReport {
    let c_max = params.c_max.unwrap_or(200);
    let degrees = degree_range(params, 3, 6);
    let mut tally = Tally::new();
    for c in -c_max..=c_max {
        if c == 0 {
            continue;
        }
        for &d in &degrees {
            let f = UnicriticalPoly::new(d, int(c)).expect("d >= 2");
            let fixed = f.integer_fixed_points();
            tally.check(fixed.len() <= 1, || format!("c={c} d={d} fixed={fixed:?}"));
        }
    }
    let params = BTreeMap::from([
        ("c_max".into(), c_max.to_string()),
        ("degrees".into(), format!("{degrees:?}")),
    ]);
    report(SuiteId::FixedUniqueness, params, start, tally)
}

/// The critical orbit of an irreducible `x^d + c` never produces a blocking
/// p-th power, so every pure power `f^n` passes the composition chain. Where
/// the expanded degree is small, the mod-q resolver is also given a chance to
/// confirm directly (its failure is not a violation: the method is
/// incomplete for polynomials without an n-cycle).
fn stability(params: &SuiteParams, start: Instant) -> SuiteReport {
    let c_max = params.c_max.unwrap_or(30);
    let n_max = params.n_max.unwrap_or(5);
    let degrees = degree_range(params, 2, 4);
    let mut tally = Tally::new();
    for c in -c_max..=c_max {
        if c == 0 {
            continue;
        }
        for &d in &degrees {
            let f = UnicriticalPoly::new(d, int(c)).expect("d >= 2");
            if !base_irreducible(&f) {
                continue;
            }
            let primes = prime_divisors(d).expect("d >= 2");
            let mut v = int(c);
            for k in 1..n_max {
                if composition_degree(d, k as usize + 1) > 4096 {
                    break;
                }
                v = f.evaluate(&v); // v = f^k(c), the step value of f^(k+1)
                let blocked = primes
                    .iter()
                    .any(|&p| matches!(pth_power_witness(&v, p), Some(w) if w.epsilon == 1));
                tally.check(!blocked, || format!("c={c} d={d} step={k} value={v}"));
            }
            if composition_degree(d, 2) <= 64 {
                let pres = Presentation::new(d, vec![int(c)]).expect("valid");
                let word = crate::semigroup::Word::new(vec![0, 0]).expect("nonempty");
                tally.cases += 1;
                let _ = resolve_by_modq(&pres, &word, &ResolverOptions::default());
            }
        }
    }
    let params = BTreeMap::from([
        ("c_max".into(), c_max.to_string()),
        ("n_max".into(), n_max.to_string()),
        ("degrees".into(), format!("{degrees:?}")),
    ]);
    report(SuiteId::Stability, params, start, tally)
}

/// Equal-length distinct words are distinguished by integer evaluation in
/// randomized modular trials, over a fixed panel of presentations.
fn freeness(params: &SuiteParams, start: Instant) -> SuiteReport {
    let max_len = params.max_len.unwrap_or(4);
    let trials = params.trials.unwrap_or(8);
    let seed = params.seed.unwrap_or(42);
    let panel: [(u32, &[i64]); 3] = [(2, &[1, -2]), (3, &[-504, 8]), (2, &[-5, 3])];
    let mut tally = Tally::new();
    for (d, coeffs) in panel {
        let pres =
            Presentation::new(d, coeffs.iter().map(|&c| int(c)).collect()).expect("valid");
        let rep = freeness_spot_check(&pres, max_len, trials, seed);
        tally.cases += rep.pairs_checked;
        if !rep.pass() {
            tally
                .violations
                .push(format!("d={d} coeffs={coeffs:?} collisions={}", rep.collisions.len()));
        }
    }
    let params = BTreeMap::from([
        ("max_len".into(), max_len.to_string()),
        ("trials".into(), trials.to_string()),
        ("seed".into(), seed.to_string()),
    ]);
    report(SuiteId::Freeness, params, start, tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(SuiteId::parse(id.name()).unwrap(), id);
        }
        assert!(SuiteId::parse("nope").is_err());
    }

    #[test]
    fn mod8_has_128_cases_and_passes() {
        let rep = run_suite(SuiteId::Mod8, &SuiteParams::default());
        assert!(rep.passed());
        assert_eq!(rep.cases, 128);
    }

    #[test]
    fn sharpness_passes_with_defaults() {
        let rep = run_suite(SuiteId::Sharpness, &SuiteParams::default());
        assert!(rep.passed(), "{rep}");
        // 9 radii x 5 degrees plus the quadratic showcase
        assert_eq!(rep.cases, 46);
    }

    #[test]
    fn classification_d2_passes() {
        let params = SuiteParams {
            d: Some(2),
            c_max: Some(50),
            ..SuiteParams::default()
        };
        let rep = run_suite(SuiteId::Classification, &params);
        assert!(rep.passed(), "{rep}");
        assert!(rep.cases > 0);
    }

    #[test]
    fn mutated_classification_fails_on_period_two_family() {
        // d = 2, c = -1: 0 -> -1 -> 0 is a 2-cycle, so demanding period <= 1
        // must surface violations — the harness is not vacuous
        let params = SuiteParams {
            d: Some(2),
            c_max: Some(2),
            ..SuiteParams::default()
        };
        let rep = classification(&params, Instant::now(), true);
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|v| v.contains("c=-1")));
    }

    #[test]
    fn quick_suites_pass() {
        let params = SuiteParams {
            c_max: Some(25),
            x_max: Some(50),
            d_max: Some(4),
            ..SuiteParams::default()
        };
        for id in [
            SuiteId::ConsecutivePowers,
            SuiteId::PreimageBound,
            SuiteId::EscapeLemma,
            SuiteId::OrbitZero,
            SuiteId::FixedUniqueness,
            SuiteId::Stability,
            SuiteId::Freeness,
        ] {
            let rep = run_suite(id, &params);
            assert!(rep.passed(), "{rep}");
            assert!(rep.cases > 0, "suite {} checked nothing", rep.suite);
        }
    }

    #[test]
    fn report_serialization_shape() {
        let rep = run_suite(SuiteId::Mod8, &SuiteParams::default());
        let v = rep.to_json();
        assert_eq!(v["suite"], "mod8");
        assert_eq!(v["cases"], 128);
        assert!(v["violations"].as_array().unwrap().is_empty());
        assert!(v["seconds"].as_f64().unwrap() >= 0.0);
        let text = rep.to_string();
        assert!(text.contains("suite mod8: pass"));
    }
}
