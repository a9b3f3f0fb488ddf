//! Certify irreducibility of compositions with the chain test: the leftmost
//! factor must pass the binomial criterion and every further step value must
//! avoid being a p-th power.

use num_bigint::BigInt;
use unicrit::irreducibility::{certify_with_resolver, IrreducibilityVerdict, ResolverOptions};
use unicrit::semigroup::{Presentation, Word};

fn main() -> anyhow::Result<()> {
    let cases: [(u32, &[i64], &[usize]); 4] = [
        (2, &[-2, 1], &[1, 0]),    // (x^2 - 2)... outer x^2 + 1: certified
        (2, &[-2], &[0, 0, 0]),    // pure power of an irreducible: stability
        (4, &[-252, 4], &[1, 0]),  // outer x^4 + 4 = 4 * 1^4: reducible
        (2, &[-5, 3], &[0, 1]),    // blocks on (x^2 - 5)(3) = 4 = 2^2
    ];
    let opts = ResolverOptions::default();
    for (d, coeffs, indices) in cases {
        let pres = Presentation::new(d, coeffs.iter().map(|&c| BigInt::from(c)).collect())?;
        let word = Word::new(indices.to_vec())?;
        let verdict = certify_with_resolver(&pres, &word, &opts);
        match verdict {
            IrreducibilityVerdict::Irreducible(cert) => {
                println!("d={d} {coeffs:?} word {word}: irreducible via {:?}", cert.rule);
            }
            IrreducibilityVerdict::Reducible(w) => {
                let (a, b) = w.factor_pair(d);
                println!("d={d} {coeffs:?} word {word}: reducible, factor degrees {} and {}",
                    a.len() - 1, b.len() - 1);
            }
            IrreducibilityVerdict::Unknown(u) => {
                println!("d={d} {coeffs:?} word {word}: unknown, step {} blocks on {}",
                    u.step, u.witness);
            }
        }
    }
    Ok(())
}
