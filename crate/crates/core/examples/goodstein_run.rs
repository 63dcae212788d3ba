//! A short Goodstein run with its ordinal certificate.

use goodstein::base_change::BcOp;
use goodstein::goodstein::{run_u64, RunConfig};
use goodstein::normal_form::Part;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let trace = run_u64(seed, BcOp::Prime, Part::One, &RunConfig::default());
    for s in &trace.steps {
        println!("l={:<3} k={:<3} m={:<8} o={}", s.l, s.k, s.value, s.ordinal);
    }
    println!("{:?} after {} steps, descent {}", trace.status, trace.steps.len(), trace.descends());
}
