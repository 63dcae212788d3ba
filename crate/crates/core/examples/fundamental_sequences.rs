//! Fundamental sequences below epsilon_0 and in the collapsing notations.

use goodstein::buchholz::{fund_hb, HbTerm};
use goodstein::ordinal_e0::{fund_e0, OrdE0};

fn main() {
    let a: OrdE0 = "w^(w^(w))+w^(2)".parse().unwrap();
    for x in 0..4 {
        println!("{a}[{x}] = {}", fund_e0(&a, x));
    }
    for s in ["p(W)", "p(W^(2))", "p(W^(W))", "P(W)+w"] {
        let t: HbTerm = s.parse().unwrap();
        let seq: Vec<String> = (0..3).map(|x| fund_hb(&t, x).to_string()).collect();
        println!("{t}: {}", seq.join(", "));
    }
}
