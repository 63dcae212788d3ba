//! k-normal forms, flat and hereditary, in both parts.

use goodstein::normal_form::{hereditary_u64, knf, Part};
use num_bigint::BigUint;

fn main() {
    let cap = 65536;
    for m in [3u64, 12, 39, 100, 1000] {
        let flat = knf(&BigUint::from(m), 3, Part::One, cap).unwrap();
        let full = hereditary_u64(m, 3, Part::One, cap).unwrap();
        println!("{m:>5} = {flat:<16} = {full}");
    }
    // part 2 agrees below A_w(3,0); larger indices only arise symbolically
    let m = BigUint::from(10u64).pow(15);
    println!("10^15 = {} = {}", knf(&m, 3, Part::One, cap).unwrap(), knf(&m, 3, Part::Two, cap).unwrap());
    println!("A_w(3,0) = {}", goodstein::goodstein::mr_seed(1, Part::Two));
}
