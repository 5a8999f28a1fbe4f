//! Regenerates tests/golden/verify_exact_n3.json:
//! `cargo run --example gen_golden > crates/coulombnd/tests/golden/verify_exact_n3.json`

use coulombnd::rational::{parse_rational, rint};
use coulombnd::verify::{run_suite, suite_for, SuiteConfig, SuiteSelector};

fn main() {
    let cfg = SuiteConfig::new(3, rint(1), vec![parse_rational("1/2").unwrap(), rint(3)], 7);
    let mut specs = suite_for(SuiteSelector::Exact, &cfg).unwrap();
    specs.extend(suite_for(SuiteSelector::Tridiagonal, &cfg).unwrap());
    specs.sort_by(|a, b| a.name.cmp(&b.name));
    let mut report = run_suite(&specs);
    report.canonicalize();
    println!("{}", report.to_json());
}
