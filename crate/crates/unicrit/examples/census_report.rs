//! Chain-certify every word up to a length bound and print the per-length
//! statistics as CSV.

use num_bigint::BigInt;
use unicrit::census::{render_report, run_census, CensusOptions, ReportFormat};
use unicrit::semigroup::Presentation;

fn main() -> anyhow::Result<()> {
    let pres = Presentation::new(2, vec![BigInt::from(-5), BigInt::from(3)])?;
    let opts = CensusOptions::default();
    let rows = run_census(&pres, 5, &opts)?;
    print!("{}", render_report(&pres, &rows, &opts, ReportFormat::Csv)?);
    Ok(())
}
