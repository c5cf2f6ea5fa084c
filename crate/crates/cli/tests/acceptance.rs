//! The ten acceptance criteria at their fixed tolerances, one PASS/FAIL line
//! each. Exits nonzero when any criterion fails.

use zsl_cli::verify;

fn main() {
    let outcomes = verify::run_all();
    for outcome in &outcomes {
        println!("{outcome}");
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
