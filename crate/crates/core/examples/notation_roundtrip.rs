//! Parsing and printing of the ordinal grammars.

use goodstein::buchholz::{is_nf, HbTerm};
use goodstein::ordinal_e0::OrdE0;

fn main() {
    for s in ["0", "w", "w^(w)*3+w^(2)+7", "w^(w^(w))"] {
        let a: OrdE0 = s.parse().unwrap();
        println!("{s} -> {a}");
    }
    for s in ["W", "p(W)", "p(W^(W)*p(W))+w", "P(W^(2))*2+w*3+1", "p(w)"] {
        match s.parse::<HbTerm>() {
            Ok(t) => println!("{s} -> {t} (normal form: {})", is_nf(&t)),
            Err(e) => println!("{s} rejected: {e}"),
        }
    }
}
