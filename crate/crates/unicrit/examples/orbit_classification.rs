//! Classify integer orbits under x^d + c: preperiodic points get exact
//! (tail, period) data, escaping points a certified escape index.

use num_bigint::BigInt;
use unicrit::dynamics::{OrbitKind, UnicriticalPoly};

fn main() -> anyhow::Result<()> {
    let cases = [
        (2u32, -1i64, 0i64),   // the 2-cycle 0 -> -1 -> 0
        (2, -2, 0),            // preperiodic: 0 -> -2 -> 2 -> 2
        (2, -460, 22),         // escapes after three steps through 114^2
        (3, 2, 5),             // escapes immediately
    ];
    for (d, c, alpha) in cases {
        let f = UnicriticalPoly::new(d, BigInt::from(c))?;
        let report = f.orbit_classify(&BigInt::from(alpha));
        let prefix: Vec<String> = report.prefix.iter().map(|v| v.to_string()).collect();
        match report.kind {
            OrbitKind::Preperiodic { tail, period } => println!(
                "{f}, alpha = {alpha}: preperiodic, tail {tail}, period {period}; orbit {}",
                prefix.join(" -> ")
            ),
            OrbitKind::Escaping { index } => println!(
                "{f}, alpha = {alpha}: escaping at index {index}; prefix {}",
                prefix.join(" -> ")
            ),
        }
    }
    Ok(())
}
