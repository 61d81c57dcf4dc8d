use std::process::ExitCode;
use std::time::Instant;

use hecke_core::algebra::Engine;
use hecke_core::criteria;

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let engine = Engine::new();
    let mut failed = 0;
    for id in 1..=8 {
        let t = Instant::now();
        let out = criteria::run(&engine, id);
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict} {} ({:.1}s)", out.title, t.elapsed().as_secs_f64());
        if verbose || !out.pass {
            for d in &out.details {
                println!("    {d}");
            }
        }
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
