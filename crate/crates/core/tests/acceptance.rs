//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.
//! `ACCEPTANCE_ONLY=3,5` restricts the run; `--sequential` disables rayon.

use nesbitt::suite::{self, CRITERIA};
use nesbitt::Exec;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    // libtest flags such as --list or --exact are not meaningful here
    if args.iter().any(|a| a == "--list") {
        for (id, name) in CRITERIA {
            println!("AC{id} {name}: test");
        }
        return;
    }
    let exec = if args.iter().any(|a| a == "--sequential") { Exec::Sequential } else { Exec::Parallel };
    let only: Option<Vec<u8>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|s| s.trim().parse().ok()).collect());

    let mut failed = 0;
    for (id, _) in CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let outcome = suite::run(id, exec).expect("criterion ids come from CRITERIA");
        println!("{outcome}");
        failed += usize::from(!outcome.passed);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
