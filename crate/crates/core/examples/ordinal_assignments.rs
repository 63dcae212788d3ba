//! Ordinals assigned to numbers by each map, and their invariance under base change.

use goodstein::assignment::{assign, Map};
use goodstein::base_change::base_change;
use goodstein::normal_form::{hereditary, hereditary_u64, Part};

fn main() {
    let cap = 65536;
    for part in [Part::One, Part::Two] {
        println!("part {}", u8::from(part));
        for m in [12u64, 39, 100] {
            let t = hereditary_u64(m, 3, part, cap).unwrap();
            for map in Map::ALL {
                println!("  {map:>6}_3({m}) = {}", assign(map, &t).unwrap());
            }
        }
    }
    // the image survives k <- k+1 followed by renormalizing
    let t = hereditary_u64(100, 3, Part::One, cap).unwrap();
    for map in [Map::Psi, Map::Chi, Map::Xi] {
        let op = goodstein::base_change::BcOp::ALL.into_iter().find(|&o| Map::paired(o) == map).unwrap();
        let moved = base_change(op, &t).eval(cap).unwrap();
        let again = hereditary(&moved, 4, Part::One, cap).unwrap();
        println!("{map}: {} == {}", assign(map, &t).unwrap(), assign(map, &again).unwrap());
    }
}
