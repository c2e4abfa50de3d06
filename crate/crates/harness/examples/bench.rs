use std::time::Instant;
use conespec_harness::suites::run_suite;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let suite = args.get(1).map(|s| s.as_str()).unwrap_or("cycles");
    let t = Instant::now();
    let rep = run_suite(suite, 2, 41, 2);
    println!("{suite}: {:?} pass={}", t.elapsed(), rep.all_pass());
    for f in rep.failures() { println!("  FAIL {} {}", f.check, f.detail); }
}
