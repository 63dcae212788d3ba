//! Goodstein sequences `m_{l+1} = m_l[l+3 ← l+4] − 1` and their variants.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ackermann::{BudgetedNat, DEFAULT_CAP_BITS};
use crate::assignment::{assign, Map, Ordinal};
use crate::base_change::{base_change, BcOp};
use crate::normal_form::{hereditary, value_or_term, AckTerm, Index, MixedOrd, MixedTerm, Part};
use crate::ordinal_e0::{fund_e0, leq_l, LeqL, OrdE0};

pub const DEFAULT_MAX_TERM_NODES: u64 = 100_000;
pub const START_BASE: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Zero,
    MaxSteps,
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub max_steps: u64,
    pub cap_bits: u64,
    pub max_term_nodes: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_steps: 1000, cap_bits: DEFAULT_CAP_BITS, max_term_nodes: DEFAULT_MAX_TERM_NODES }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodsteinState {
    pub l: u64,
    pub k: u64,
    pub term: AckTerm,
    pub value: BudgetedNat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NfStrings {
    pub index: String,
    pub b: String,
    pub l: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub l: u64,
    pub k: u64,
    pub value: BudgetedNat,
    pub term: AckTerm,
    pub ordinal: Ordinal,
    pub descent_ok: bool,
}

impl StepRecord {
    pub fn nf(&self) -> NfStrings {
        match self.term.as_node() {
            None => NfStrings { index: "0".into(), b: "0".into(), l: "0".into() },
            Some(n) => NfStrings { index: n.index.to_string(), b: value_or_term(&n.arg), l: n.rem.to_string() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub seed: String,
    pub variant: BcOp,
    pub part: Part,
    pub steps: Vec<StepRecord>,
    pub status: Status,
}

#[derive(Serialize)]
struct StepJson {
    l: u64,
    k: u64,
    value: String,
    nf: NfStrings,
    ordinal: String,
    descent_ok: bool,
}

#[derive(Serialize)]
struct TraceJson {
    seed: String,
    variant: BcOp,
    part: Part,
    steps: Vec<StepJson>,
    status: Status,
}

impl Trace {
    /// The `l` with `m_l = 0`, if the run got there.
    pub fn zero_at(&self) -> Option<u64> {
        (self.status == Status::Zero).then_some(self.steps.len() as u64)
    }

    pub fn descends(&self) -> bool {
        self.steps.iter().all(|s| s.descent_ok)
    }

    pub fn to_json(&self) -> String {
        let j = TraceJson {
            seed: self.seed.clone(),
            variant: self.variant,
            part: self.part,
            steps: self
                .steps
                .iter()
                .map(|s| StepJson { l: s.l, k: s.k, value: s.value.to_string(), nf: s.nf(), ordinal: s.ordinal.to_string(), descent_ok: s.descent_ok })
                .collect(),
            status: self.status,
        };
        serde_json::to_string(&j).expect("trace serializes")
    }
}

impl GoodsteinState {
    pub fn new(term: AckTerm, cap: u64) -> Self {
        let value = crate::normal_form::eval_term(&term, cap);
        GoodsteinState { l: 0, k: START_BASE, term, value }
    }
}

/// One step: base change, subtract one, renormalize at the new base.
/// `None` when the result cannot be represented within the budget.
pub fn gstep(s: &GoodsteinState, variant: BcOp, part: Part, cap: u64) -> Option<GoodsteinState> {
    let k = s.k + 1;
    let term = if s.term.is_zero() { AckTerm::Zero } else { minus_one(&base_change(variant, &s.term), k, part, cap)? };
    let value = crate::normal_form::eval_term(&term, cap);
    Some(GoodsteinState { l: s.l + 1, k, term, value })
}

/// `t − 1` in `k`-normal form: from the value when it fits the cap, structurally otherwise.
pub fn minus_one(t: &AckTerm, k: u64, part: Part, cap: u64) -> Option<AckTerm> {
    match t.eval(cap) {
        Some(v) if v.is_zero() => Some(AckTerm::Zero),
        Some(v) => hereditary(&(v - BigUint::one()), k, part, cap).ok(),
        None => Some(rebase(&structural_pred(t)?, k, part, cap)),
    }
}

/// Predecessor by the normal-form case analysis, where it stays representable:
/// `A_a(b)+l−1` for `l > 0` and `b` for `A_0(b)`.
pub fn structural_pred(t: &AckTerm) -> Option<AckTerm> {
    let n = t.as_node()?;
    if n.rem > 0 {
        return Some(AckTerm::node(n.base, n.index.clone(), n.arg.clone(), n.rem - 1));
    }
    if n.index.is_zero() {
        return Some(n.arg.clone());
    }
    None
}

/// Rewrites every evaluable subterm in hereditary `k`-normal form, keeping values.
pub fn rebase(t: &AckTerm, k: u64, part: Part, cap: u64) -> AckTerm {
    if let Some(v) = t.eval(cap) {
        if let Ok(h) = hereditary(&v, k, part, cap) {
            return h;
        }
    }
    let Some(n) = t.as_node() else {
        return AckTerm::Zero;
    };
    let index = match &n.index {
        Index::Nat(a) => Index::Nat(rebase(a, k, part, cap)),
        Index::Ord(a) => Index::Ord(rebase_ord(a, k, cap)),
    };
    AckTerm::node(n.base, index, rebase(&n.arg, k, part, cap), n.rem)
}

fn rebase_ord(a: &MixedOrd, k: u64, cap: u64) -> MixedOrd {
    MixedOrd { terms: a.terms.iter().map(|t| MixedTerm { exp: rebase_ord(&t.exp, k, cap), coeff: rebase(&t.coeff, k, Part::Two, cap) }).collect() }
}

/// Runs from a seed term at base 3, pairing the variant with its ordinal map.
pub fn run_term(seed: &AckTerm, variant: BcOp, part: Part, cfg: &RunConfig) -> Trace {
    let map = Map::paired(variant);
    let mut state = GoodsteinState::new(seed.clone(), cfg.cap_bits);
    let mut steps: Vec<StepRecord> = Vec::new();
    let seed_str = match state.value.value() {
        Some(v) => v.to_string(),
        None => seed.to_string(),
    };
    let status = loop {
        if state.term.is_zero() {
            break Status::Zero;
        }
        if steps.len() as u64 >= cfg.max_steps {
            break Status::MaxSteps;
        }
        if state.term.size() > cfg.max_term_nodes {
            break Status::Budget;
        }
        let Ok(ordinal) = assign(map, &state.term) else {
            break Status::Budget;
        };
        let descent_ok = steps.last().is_none_or(|p| ordinal < p.ordinal);
        steps.push(StepRecord { l: state.l, k: state.k, value: state.value.clone(), term: state.term.clone(), ordinal, descent_ok });
        match gstep(&state, variant, part, cfg.cap_bits) {
            Some(next) => state = next,
            None => break Status::Budget,
        }
    };
    Trace { seed: seed_str, variant, part, steps, status }
}

pub fn run(m: &BigUint, variant: BcOp, part: Part, cfg: &RunConfig) -> Result<Trace, crate::normal_form::NfError> {
    let seed = hereditary(m, START_BASE, part, cfg.cap_bits)?;
    Ok(run_term(&seed, variant, part, cfg))
}

pub fn run_u64(m: u64, variant: BcOp, part: Part, cfg: &RunConfig) -> Trace {
    run(&BigUint::from(m), variant, part, cfg).expect("small seeds normalize")
}

/// `m(r)`: part 1 `m(1) = A_2(3,0)`, `m(r+1) = A_{m(r)}(3,0)`; part 2 `A_{ω_r}(3,0)`.
pub fn mr_seed(r: u32, part: Part) -> AckTerm {
    assert!(r >= 1, "seeds start at r = 1");
    let k = START_BASE;
    match part {
        Part::One => {
            let two = hereditary(&BigUint::from(2u8), k, part, DEFAULT_CAP_BITS).unwrap();
            (0..r).fold(two, |a, _| AckTerm::node(k, Index::Nat(a), AckTerm::Zero, 0))
        }
        Part::Two => {
            let idx = MixedOrd::from_e0(&OrdE0::omega_tower(r), k, DEFAULT_CAP_BITS).unwrap();
            AckTerm::node(k, Index::Ord(idx), AckTerm::Zero, 0)
        }
    }
}

/// Outcome of the `≥₁` check between consecutive ordinals of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainCheck {
    Holds,
    Fails,
    Inconclusive,
}

/// Checks `o(l+1) ≥₁ o(l)[x]` at every step, with `x = l+1` (`l+2` for `ξ`).
pub fn chain_checks(trace: &Trace, step_budget: u64) -> Vec<ChainCheck> {
    let shift = if trace.variant == BcOp::First { 2 } else { 1 };
    trace
        .steps
        .windows(2)
        .map(|w| {
            let (Some(a), Some(b)) = (w[0].ordinal.as_e0(), w[1].ordinal.as_e0()) else {
                return ChainCheck::Inconclusive;
            };
            let target = fund_e0(a, w[0].l + shift);
            match leq_l(b, &target, 1, step_budget) {
                LeqL::Reached(_) => ChainCheck::Holds,
                LeqL::NotReached => ChainCheck::Fails,
                LeqL::BudgetExhausted => ChainCheck::Inconclusive,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::assign_part1;

    fn values(t: &Trace) -> Vec<u64> {
        t.steps.iter().map(|s| s.value.to_u64().unwrap()).collect()
    }

    /// Independent simulation on plain integers.
    fn oracle_length(m: u64) -> u64 {
        fn a(i: u64, k: u64, b: u64) -> u64 {
            match i {
                0 => b + 1,
                1 => k * (b + 1),
                _ => {
                    let mut v = if b == 0 { 0 } else { a(i, k, b - 1) };
                    for _ in 0..k {
                        v = a(i - 1, k, v);
                    }
                    v
                }
            }
        }
        fn nf(m: u64, k: u64) -> (u64, u64, u64) {
            let mut i = 0;
            while a(i + 1, k, 0) <= m {
                i += 1;
            }
            let mut b = 0;
            while a(i, k, b + 1) <= m {
                b += 1;
            }
            (i, b, m - a(i, k, b))
        }
        fn bc(m: u64, k: u64) -> u64 {
            if m == 0 {
                return 0;
            }
            let (i, b, l) = nf(m, k);
            a(bc(i, k), k + 1, bc(b, k)) + l
        }
        let (mut m, mut k, mut l) = (m, 3, 0);
        while m > 0 {
            m = bc(m, k) - 1;
            k += 1;
            l += 1;
        }
        l
    }

    #[test]
    fn small_runs() {
        let cfg = RunConfig::default();
        assert_eq!(run_u64(2, BcOp::Prime, Part::One, &cfg).zero_at(), Some(2));
        let t = run_u64(4, BcOp::Prime, Part::One, &cfg);
        assert_eq!(values(&t), vec![4, 4, 4, 3, 2, 1]);
        assert_eq!(t.zero_at(), Some(6));
        let t = run_u64(0, BcOp::Iter, Part::Two, &cfg);
        assert!(t.steps.is_empty());
        assert_eq!(t.zero_at(), Some(0));
        for m in 0..=6 {
            assert_eq!(run_u64(m, BcOp::Prime, Part::One, &cfg).zero_at(), Some(oracle_length(m)));
        }
    }

    #[test]
    fn single_steps() {
        let s = GoodsteinState::new(hereditary(&BigUint::from(39u8), 3, Part::One, DEFAULT_CAP_BITS).unwrap(), DEFAULT_CAP_BITS);
        let n = gstep(&s, BcOp::Prime, Part::One, DEFAULT_CAP_BITS).unwrap();
        assert_eq!(n.value.to_u64(), Some(339));
        let s = GoodsteinState::new(hereditary(&BigUint::from(1u8), 3, Part::One, DEFAULT_CAP_BITS).unwrap(), DEFAULT_CAP_BITS);
        for op in BcOp::ALL {
            assert!(gstep(&s, op, Part::One, DEFAULT_CAP_BITS).unwrap().term.is_zero());
        }
    }

    #[test]
    fn structural_path_matches_values() {
        for m in 1..300u64 {
            let t = hereditary(&BigUint::from(m), 3, Part::One, DEFAULT_CAP_BITS).unwrap();
            if let Some(p) = structural_pred(&t) {
                assert_eq!(p.eval(DEFAULT_CAP_BITS), Some(BigUint::from(m - 1)));
            }
        }
    }

    #[test]
    fn seeds() {
        assert_eq!(mr_seed(1, Part::One).eval_u64(64), Some(39));
        let m2 = mr_seed(2, Part::One);
        assert_eq!(m2.eval(DEFAULT_CAP_BITS), None);
        assert_eq!(assign_part1(Map::Psi, &m2).unwrap().to_string(), "w^(w^(w))");
        assert_eq!(mr_seed(1, Part::Two).to_string(), "A_{w}(3,0)");
    }

    #[test]
    fn json_schema() {
        let t = run_u64(2, BcOp::Prime, Part::One, &RunConfig::default());
        let j = t.to_json();
        assert!(j.starts_with(r#"{"seed":"2","variant":"prime","part":1,"steps":[{"l":0,"k":3,"value":"2","nf":{"index":"0","b":"1","l":"0"},"ordinal":"2","descent_ok":true}"#), "{j}");
        assert!(j.ends_with(r#""status":"zero"}"#));
    }
}
