//! Seed 39 under the prime and the iterated variant.

use goodstein::base_change::BcOp;
use goodstein::goodstein::{run_u64, RunConfig};
use goodstein::normal_form::Part;

fn main() {
    let cfg = RunConfig::default();
    for variant in [BcOp::Prime, BcOp::Iter] {
        let tr = run_u64(39, variant, Part::One, &cfg);
        let last = tr.steps.last().unwrap();
        let bits = last.value.value().map_or(cfg.cap_bits, |v| v.bits());
        println!("{variant:>6}: {:?} at l={}, {} bits, ordinal {}", tr.status, last.l, bits, last.ordinal);
    }
}
