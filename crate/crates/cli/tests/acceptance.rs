use std::process::ExitCode;

use b0_cli::suite::{run, SuiteConfig};

fn main() -> ExitCode {
    let report = run(&SuiteConfig::default());
    for row in &report.rows {
        println!("{}", row.line());
    }
    println!(
        "acceptance: {} passed, {} failed, {} skipped",
        report.passed, report.failed, report.skipped
    );
    if report.rows.len() == 10 && report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
