//! The four base-change operators at base 3.

use goodstein::base_change::{bc_num, BcOp};
use goodstein::normal_form::Part;
use num_bigint::BigUint;

fn main() {
    for m in [2u64, 3, 7, 12, 39, 100] {
        let row: Vec<String> = BcOp::ALL.iter().map(|&op| format!("{op}={}", bc_num(op, &BigUint::from(m), 3, Part::One, 65536).unwrap())).collect();
        println!("{m:>4}: {}", row.join("  "));
    }
}
