//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use soliton_discord::validation::run_all;
use soliton_discord_validation::{all_passed, render};

fn main() {
    let reports = run_all();
    print!("{}", render(&reports));
    if !all_passed(&reports) {
        std::process::exit(1);
    }
}
