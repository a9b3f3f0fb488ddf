//! Enumerate powered fixed points (values epsilon * y^p fixed by the map)
//! and, for quadratics, powered 2-cycles.

use num_bigint::BigInt;
use unicrit::dynamics::UnicriticalPoly;

fn main() -> anyhow::Result<()> {
    for (d, c) in [(2u32, -12i64), (2, 0), (3, -504), (4, -252), (6, 0)] {
        let f = UnicriticalPoly::new(d, BigInt::from(c))?;
        let fixed = f.powered_fixed_points();
        if fixed.is_empty() {
            println!("{f}: no powered fixed points");
        }
        for w in &fixed {
            println!("{f}: fixed point {} = {w}", w.value());
        }
        if d == 2 {
            for v in f.powered_two_cycles()? {
                println!("{f}: 2-cycle through {v}");
            }
        }
    }
    Ok(())
}
