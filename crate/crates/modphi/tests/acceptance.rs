//! Acceptance criteria on the full grids, one line each.
//! `cargo test -p modphi --test acceptance`; exits non-zero if any fails.

use std::process::ExitCode;

use modphi::harness::{run_criterion, Suite};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=12u8 {
        let r = run_criterion(id, Suite::Full);
        println!("{}", r.line());
        for m in &r.measurements {
            println!("    {} = {:.6e}", m.name, m.value);
        }
        for rep in &r.reports {
            println!(
                "    {} i={} z={}{:+}i: slope {:.4} over n={:?}",
                rep.check, rep.family, rep.z_or_t.re, rep.z_or_t.im, rep.fitted_slope, rep.n_values
            );
        }
        if !r.passed {
            failed.push(id);
        }
    }
    println!("acceptance: {} of 12 criteria pass; failing: {failed:?}", 12 - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
