//! Run every verification suite with default ranges and print one report
//! line per suite.

use unicrit::verifier::{run_all, SuiteParams};

fn main() {
    let mut failed = false;
    for report in run_all(&SuiteParams::default()) {
        println!("{report}");
        failed |= !report.passed();
    }
    if failed {
        std::process::exit(1);
    }
}
