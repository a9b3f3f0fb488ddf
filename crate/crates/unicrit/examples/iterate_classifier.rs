//! When a deep iterate f^n(alpha) is a signed prime power, the orbit
//! structure of both alpha and the powered value is forced; the classifier
//! reports which structural statement applies.

use num_bigint::BigInt;
use unicrit::dynamics::{classify_pth_power_iterate, IterateClassification, UnicriticalPoly};

fn main() -> anyhow::Result<()> {
    let cases = [
        (2u32, -1i64, 0i64, 4u32), // f^4(0) = -1 = -(1)^2, orbit is a 2-cycle
        (2, -460, 22, 3),          // below the n = 4 threshold: no orbit claim
        (3, -9, 2, 3),             // no power hit at all
    ];
    for (d, c, alpha, n) in cases {
        let f = UnicriticalPoly::new(d, BigInt::from(c))?;
        match classify_pth_power_iterate(&f, &BigInt::from(alpha), n)? {
            IterateClassification::NoPower => {
                println!("{f}: f^{n}({alpha}) is not a signed prime power");
            }
            IterateClassification::BelowThreshold { witness } => {
                println!("{f}: f^{n}({alpha}) = {witness}, below the iterate threshold");
            }
            IterateClassification::Classified(ci) => {
                println!(
                    "{f}: f^{n}({alpha}) = {} (statement {}), alpha preperiodic: {}, \
                     powered value period: {:?}",
                    ci.witness, ci.statement, ci.alpha_preperiodic, ci.powered_period
                );
            }
        }
    }
    Ok(())
}
