//! Runs every verifier suite at small parameters.

use goodstein::verifier::{run_suite, Params, SuiteId};

fn main() {
    let params = Params { m_max: 100, samples: 500, ..Params::default() };
    for id in SuiteId::ALL {
        let p = if id == SuiteId::S11 { Params { m_max: 8, ..params.clone() } } else { params.clone() };
        println!("{}", run_suite(id, &p));
    }
}
