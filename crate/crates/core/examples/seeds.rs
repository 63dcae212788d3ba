//! The seeds m(r) and their images.

use goodstein::assignment::{assign, Map};
use goodstein::goodstein::mr_seed;
use goodstein::normal_form::{value_or_term, Part};

fn main() {
    for r in 1..=4 {
        let one = mr_seed(r, Part::One);
        let two = mr_seed(r, Part::Two);
        println!("r={r}");
        println!("  part 1: {}  psi -> {}", value_or_term(&one), assign(Map::Psi, &one).unwrap());
        println!("  part 2: {}  psi -> {}  chi -> {}", two, assign(Map::Psi, &two).unwrap(), assign(Map::Chi, &two).unwrap());
    }
}
