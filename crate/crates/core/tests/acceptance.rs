use std::process::ExitCode;

use sheafline::selftest;

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=10 {
        let outcome = selftest::run(id);
        println!("{outcome}");
        failed += usize::from(!outcome.passed);
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
