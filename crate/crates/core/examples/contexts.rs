//! Decompositions of ordinal pairs through one-hole contexts.

use goodstein::contexts::{contexts_of, star_decompose, StarResult};
use goodstein::ordinal_e0::OrdE0;

fn main() {
    let pairs = [("w*2+1", "w*2+2"), ("w+5", "w^(2)"), ("w^(w+1)*2+w", "w^(w+2)"), ("w^(2)", "w^(w)")];
    for (a, b) in pairs {
        let (a, b): (OrdE0, OrdE0) = (a.parse().unwrap(), b.parse().unwrap());
        match star_decompose(&a, &b).unwrap() {
            StarResult::ContextCase { lambda, gamma, r } => println!("{a} < {b}: {a} = {lambda} with w^({gamma})*{r}"),
            other => println!("{a} < {b}: {other:?}"),
        }
    }
    let a: OrdE0 = "w^(w*2+1)*2+3".parse().unwrap();
    for (c, g, r) in contexts_of(&a) {
        println!("{a} = {c} with w^({g})*{r}");
    }
}
