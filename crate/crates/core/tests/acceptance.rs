//! The twelve acceptance criteria at full depth, one report line each.
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use qkdv_core::verify::{catalogue, Depth, Solutions, Suite};

fn main() -> ExitCode {
    let depth = Depth::full();
    let mut sols = Solutions::default();
    let mut failed = Vec::new();
    println!("acceptance: 12 criteria");
    for c in catalogue(Suite::All) {
        let t = Instant::now();
        let outcome = c.run(&depth, &mut sols);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {} [{secs:.1}s]: {detail}", c.number, c.name),
            Err(why) => {
                println!("criterion {:>2} FAIL {} [{secs:.1}s]: {why}", c.number, c.name);
                failed.push(c.number);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
