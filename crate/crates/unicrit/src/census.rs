//! Exhaustive census of semigroup elements up to a length bound: every word
//! is chain-certified, per-length statistics are aggregated, and reports are
//! emitted as CSV or JSON.

use std::collections::HashMap;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::integer_kernel::pth_power_witness;
use crate::irreducibility::{
    base_reducibility_witness, composition_degree, resolve_by_modq, ResolverOptions,
    DEFAULT_DEGREE_CAP,
};
use crate::semigroup::{Presentation, Word};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("enumeration of {required} words exceeds the budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("report requires at least one census row")]
    EmptyRows,
    #[error("writing report to {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Per-length statistics. `irreducible + reducible + unknown = total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub length: usize,
    pub total: u64,
    pub irreducible: u64,
    pub reducible: u64,
    pub unknown: u64,
    pub resolved_by_modq: u64,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Attempt mod-q resolution of chain-blocked words under the degree cap.
    pub resolver: bool,
    pub primes: Vec<u64>,
    pub degree_cap: u64,
    /// Maximum number of words enumerated across all lengths.
    pub budget: u64,
    /// Size of the local thread pool; `None` uses the global default.
    pub workers: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        let r = ResolverOptions::default();
        Self {
            resolver: r.enabled,
            primes: r.primes,
            degree_cap: DEFAULT_DEGREE_CAP,
            budget: 1 << 22,
            workers: None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ChainState {
    /// Leftmost base binomial reducible: the whole subtree is reducible.
    Reducible,
    /// Some chain step value was a p-th power: the subtree stays blocked.
    Blocked,
    /// All chain steps so far passed.
    Clean,
}

struct SubtreeWalker<'a> {
    pres: &'a Presentation,
    opts: &'a CensusOptions,
    resolver: ResolverOptions,
    primes: Vec<u32>,
    /// Memoized "is a p-th power with epsilon = +1 for some p | d".
    blocked_memo: HashMap<BigInt, bool>,
    rows: Vec<CensusRow>,
}

impl<'a> SubtreeWalker<'a> {
    fn new(pres: &'a Presentation, opts: &'a CensusOptions, max_len: usize) -> Self {
        let s = pres.generator_count() as u64;
        let rows = (1..=max_len)
            .map(|length| CensusRow {
                length,
                total: s.pow(length as u32) / s, // per-subtree share
                irreducible: 0,
                reducible: 0,
                unknown: 0,
                resolved_by_modq: 0,
            })
            .collect();
        Self {
            pres,
            opts,
            resolver: ResolverOptions {
                enabled: opts.resolver,
                primes: opts.primes.clone(),
                degree_cap: opts.degree_cap,
            },
            primes: crate::integer_kernel::prime_divisors(pres.degree()).expect("degree >= 2"),
            blocked_memo: HashMap::new(),
            rows,
        }
    }

    fn value_blocks(&mut self, v: &BigInt) -> bool {
        if let Some(&b) = self.blocked_memo.get(v) {
            return b;
        }
        let blocked = self
            .primes
            .iter()
            .any(|&p| matches!(pth_power_witness(v, p), Some(w) if w.epsilon == 1));
        self.blocked_memo.insert(v.clone(), blocked);
        blocked
    }

    /// Depth-first over all extensions of `prefix` (held in `path`) up to
    /// `max_len`, tallying one verdict per word.
    fn walk(&mut self, path: &mut Vec<usize>, state: ChainState, max_len: usize) {
        if path.len() == max_len {
            return;
        }
        for j in 0..self.pres.generator_count() {
            path.push(j);
            let next_state = match state {
                ChainState::Reducible => ChainState::Reducible,
                ChainState::Blocked => ChainState::Blocked,
                ChainState::Clean => {
                    if path.len() == 1 {
                        let f = self.pres.generator(j);
                        if base_reducibility_witness(&f).is_some() {
                            ChainState::Reducible
                        } else {
                            ChainState::Clean
                        }
                    } else {
                        // new chain step: v = (theta_1 o ... o theta_k)(c_j)
                        let mut v = self.pres.coeffs()[j].clone();
                        for &i in path[..path.len() - 1].iter().rev() {
                            v = self.pres.generator(i).evaluate(&v);
                        }
                        if self.value_blocks(&v) {
                            ChainState::Blocked
                        } else {
                            ChainState::Clean
                        }
                    }
                }
            };
            self.tally(path, next_state);
            self.walk(path, next_state, max_len);
            path.pop();
        }
    }

    fn tally(&mut self, path: &[usize], state: ChainState) {
        let row = &mut self.rows[path.len() - 1];
        match state {
            ChainState::Reducible => row.reducible += 1,
            ChainState::Clean => row.irreducible += 1,
            ChainState::Blocked => {
                // stability: a pure power of an irreducible generator is
                // irreducible even when its critical chain blocks
                let first = path[0];
                if path.iter().all(|&i| i == first) {
                    row.irreducible += 1;
                    return;
                }
                if self.opts.resolver
                    && composition_degree(self.pres.degree(), path.len()) <= self.opts.degree_cap
                {
                    let word = Word::new(path.to_vec()).expect("nonempty");
                    if let (Some(_), _) = resolve_by_modq(self.pres, &word, &self.resolver) {
                        let row = &mut self.rows[path.len() - 1];
                        row.irreducible += 1;
                        row.resolved_by_modq += 1;
                        return;
                    }
                    let row = &mut self.rows[path.len() - 1];
                    row.unknown += 1;
                    return;
                }
                row.unknown += 1;
            }
        }
    }
}

/// Chain-certifies every word of length `1..=max_len` and aggregates one
/// `CensusRow` per length. Reducible and blocked prefixes propagate their
/// verdict to all extensions without re-evaluation; results are deterministic
/// regardless of worker count.
pub fn run_census(
    pres: &Presentation,
    max_len: usize,
    opts: &CensusOptions,
) -> Result<Vec<CensusRow>, CensusError> {
    let s = pres.generator_count() as u128;
    let mut required: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 1..=max_len {
        pow = pow.saturating_mul(s);
        required = required.saturating_add(pow);
    }
    if required > opts.budget as u128 {
        return Err(CensusError::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let subtree = |first: usize| -> Vec<CensusRow> {
        let mut walker = SubtreeWalker::new(pres, opts, max_len);
        let mut path = vec![first];
        let state = if base_reducibility_witness(&pres.generator(first)).is_some() {
            ChainState::Reducible
        } else {
            ChainState::Clean
        };
        walker.tally(&path, state);
        walker.walk(&mut path, state, max_len);
        walker.rows
    };
    let run = || -> Vec<Vec<CensusRow>> {
        (0..pres.generator_count())
            .into_par_iter()
            .map(subtree)
            .collect()
    };
    let per_subtree = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    let s = pres.generator_count() as u64;
    let mut rows: Vec<CensusRow> = (1..=max_len)
        .map(|length| CensusRow {
            length,
            total: s.pow(length as u32),
            irreducible: 0,
            reducible: 0,
            unknown: 0,
            resolved_by_modq: 0,
        })
        .collect();
    for sub in per_subtree {
        for (row, part) in rows.iter_mut().zip(sub) {
            row.irreducible += part.irreducible;
            row.reducible += part.reducible;
            row.unknown += part.unknown;
            row.resolved_by_modq += part.resolved_by_modq;
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Renders rows as CSV (fixed header, ascending lengths) or JSON (rows plus
/// presentation and option metadata). Byte-stable for identical inputs.
pub fn render_report(
    pres: &Presentation,
    rows: &[CensusRow],
    opts: &CensusOptions,
    format: ReportFormat,
) -> Result<String, CensusError> {
    if rows.is_empty() {
        return Err(CensusError::EmptyRows);
    }
    match format {
        ReportFormat::Csv => {
            let mut out = String::from("length,total,irreducible,reducible,unknown,resolved_by_modq\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.length, r.total, r.irreducible, r.reducible, r.unknown, r.resolved_by_modq
                ));
            }
            Ok(out)
        }
        ReportFormat::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "length": r.length,
                        "total": r.total,
                        "irreducible": r.irreducible,
                        "reducible": r.reducible,
                        "unknown": r.unknown,
                        "resolved_by_modq": r.resolved_by_modq,
                    })
                })
                .collect();
            let coeffs: Vec<String> = pres.coeffs().iter().map(|c| c.to_string()).collect();
            let value = serde_json::json!({
                "d": pres.degree(),
                "coeffs": coeffs,
                "options": {
                    "resolver": opts.resolver,
                    "primes": opts.primes,
                    "degree_cap": opts.degree_cap,
                },
                "rows": rows_json,
            });
            let mut out = serde_json::to_string_pretty(&value).expect("serializable");
            out.push('\n');
            Ok(out)
        }
    }
}

/// Writes the rendered report to `destination`, or to standard output when
/// `destination` is `None`.
pub fn emit_report(
    pres: &Presentation,
    rows: &[CensusRow],
    opts: &CensusOptions,
    format: ReportFormat,
    destination: Option<&Path>,
) -> Result<(), CensusError> {
    let rendered = render_report(pres, rows, opts, format)?;
    match destination {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CensusError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            stdout
                .lock()
                .write_all(rendered.as_bytes())
                .map_err(|source| CensusError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
