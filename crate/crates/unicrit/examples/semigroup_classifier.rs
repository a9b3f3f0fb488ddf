//! Run the trichotomy classifier: a presentation either has no irreducible
//! generator, certifies an explicit irreducible family, or is exceptional.

use num_bigint::BigInt;
use unicrit::semigroup::{classify_semigroup, density_lower_bound, ClassificationOutcome, Presentation};

fn main() -> anyhow::Result<()> {
    let cases: [(u32, &[i64]); 4] = [
        (2, &[1, -2]),
        (4, &[-252, 4, -4, -260]),
        (5, &[-33554400, 32, 7]),
        (2, &[-1, -4]),
    ];
    for (d, coeffs) in cases {
        let pres = Presentation::new(d, coeffs.iter().map(|&c| BigInt::from(c)).collect())?;
        let outcome = classify_semigroup(&pres);
        match &outcome {
            ClassificationOutcome::NoIrreducibleGenerator => {
                println!("d={d} {coeffs:?}: no irreducible generator");
            }
            ClassificationOutcome::CertifiedFamily { f1, word, rule, .. } => {
                let density = density_lower_bound(&pres, &outcome)?;
                println!(
                    "d={d} {coeffs:?}: certified family {} with f1 = {}, word {word}, density >= {density}",
                    rule.name(),
                    pres.generator(*f1)
                );
            }
            ClassificationOutcome::Exceptional(e) => {
                println!(
                    "d={d} {coeffs:?}: exceptional family with (y, p) = ({}, {}), statement {}",
                    e.y, e.p, e.statement
                );
            }
            ClassificationOutcome::PriorWorkResolvedD2 => {
                println!("d={d} {coeffs:?}: resolved by prior published work");
            }
        }
    }
    Ok(())
}
