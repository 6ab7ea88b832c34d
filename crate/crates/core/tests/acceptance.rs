//! One line per acceptance criterion; exits nonzero if any check fails.
//! Criterion 10 is skipped unless MODREP_2HS_DIR points at the 2.HS data.

use modrep::selftest::{criteria, format_line, run_one, Status};

fn main() {
    let mut failed = 0;
    for c in criteria() {
        let r = run_one(&c);
        println!("{}", format_line(&r));
        if r.status == Status::Fail {
            failed += 1;
        }
    }
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
