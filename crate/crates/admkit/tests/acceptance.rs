//! Runs every acceptance check and prints one line per criterion.

use admkit::checks::{run, ALL};
use admkit::config::Config;

fn main() {
    let cfg = Config::load().unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    let results = run(&ALL, &cfg);
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {} ({:.2}s): {}",
            r.id,
            r.name,
            r.elapsed.as_secs_f64(),
            r.detail
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
