//! Values of the extended Ackermann function at small arguments.

use goodstein::ackermann::ack_small;
use goodstein::ordinal_e0::OrdE0;

fn main() {
    let cap = 4096;
    for k in 2..=4 {
        for idx in ["0", "1", "2", "3", "w"] {
            let alpha: OrdE0 = idx.parse().unwrap();
            let shown = match ack_small(&alpha, k, 0, cap) {
                Some(v) => v.to_string(),
                None => format!("more than {cap} bits"),
            };
            println!("A_{alpha}({k},0) = {shown}");
        }
    }
}
