//! Spot-check freeness: distinct equal-length words must be distinguishable
//! by evaluating at small integers modulo random primes.

use num_bigint::BigInt;
use unicrit::semigroup::{freeness_spot_check, Presentation};

fn main() -> anyhow::Result<()> {
    let cases: [(u32, &[i64]); 2] = [(2, &[1, -2]), (3, &[0, 5, -7])];
    for (d, coeffs) in cases {
        let pres = Presentation::new(d, coeffs.iter().map(|&c| BigInt::from(c)).collect())?;
        let report = freeness_spot_check(&pres, 4, 8, 42);
        println!(
            "d={d} {coeffs:?}: {} over {} pairs (max length {}, {} trials)",
            if report.pass() { "no collisions" } else { "COLLISIONS" },
            report.pairs_checked,
            report.max_len,
            report.trials
        );
    }
    Ok(())
}
