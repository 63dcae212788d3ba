//! Executable lemma suites. Each suite sweeps or samples a parameter range and
//! reports counterexamples, coverage and budget-inconclusive cases separately.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ackermann::{Ackermann, Stop, DEFAULT_CAP_BITS};
use crate::assignment::{assign, assign_part1, assign_part2, lift_ord, Map, Ordinal};
use crate::base_change::{base_change, BcOp};
use crate::buchholz::{fund_hb, hb_add, hb_eval_countable, hb_eval_countable_prime, is_nf, Countable, HbTerm, Principal};
use crate::contexts::{contexts_of, fill_lifted, lambda_context, star_bound, star_decompose, star_top, subst, StarResult};
use crate::goodstein::{chain_checks, run_u64, ChainCheck, RunConfig};
use crate::normal_form::{classify_type, hereditary, hereditary_u64, AckTerm, Index, MixedOrd, Part};
use crate::ordinal_e0::{enumerate_e0, fund_e0, leq_l, mc_e0, ncount, LeqL, OrdE0, Term};
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SuiteId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    S11,
    S12,
    S13,
}

impl SuiteId {
    pub const ALL: [SuiteId; 13] = [
        SuiteId::S1,
        SuiteId::S2,
        SuiteId::S3,
        SuiteId::S4,
        SuiteId::S5,
        SuiteId::S6,
        SuiteId::S7,
        SuiteId::S8,
        SuiteId::S9,
        SuiteId::S10,
        SuiteId::S11,
        SuiteId::S12,
        SuiteId::S13,
    ];

    pub fn title(self) -> &'static str {
        match self {
            SuiteId::S1 => "bc_monotonicity",
            SuiteId::S2 => "nf_preservation",
            SuiteId::S3 => "assign_invariance",
            SuiteId::S4 => "assign_descent",
            SuiteId::S5 => "sandwich",
            SuiteId::S6 => "bachmann_e0",
            SuiteId::S7 => "hb_fundseq_nf",
            SuiteId::S8 => "star_roundtrip",
            SuiteId::S9 => "maj_max_small",
            SuiteId::S10 => "lambda_context",
            SuiteId::S11 => "descent_trace",
            SuiteId::S12 => "monotone_std",
            SuiteId::S13 => "part1_part2_consistency",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL.into_iter().find(|id| id.to_string().eq_ignore_ascii_case(s) || id.title() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub m_max: u64,
    pub k_min: u64,
    pub k_max: u64,
    pub samples: u64,
    pub seed: u64,
    pub cap_bits: u64,
    pub max_ncount: u64,
    pub max_depth: u32,
    pub max_steps: u64,
    pub parts: Vec<Part>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            m_max: 200,
            k_min: 3,
            k_max: 4,
            samples: 1000,
            seed: 1,
            cap_bits: DEFAULT_CAP_BITS,
            max_ncount: 7,
            max_depth: 5,
            max_steps: 200,
            parts: vec![Part::One, Part::Two],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: SuiteId,
    pub title: String,
    pub params: Params,
    pub cases: u64,
    pub counterexamples: Vec<String>,
    pub inconclusive: u64,
    pub evaluable: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} counterexamples, {} inconclusive, {} evaluable",
            self.suite,
            self.title,
            self.cases,
            self.counterexamples.len(),
            self.inconclusive,
            self.evaluable
        )?;
        for c in self.counterexamples.iter().take(10) {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    inconclusive: u64,
    evaluable: u64,
    cex: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.cex.push(what());
        }
    }

    /// `Some(true)` holds, `Some(false)` fails, `None` is inconclusive.
    fn verdict(&mut self, v: Option<bool>, what: impl FnOnce() -> String) {
        match v {
            Some(ok) => self.check(ok, what),
            None => self.inconclusive += 1,
        }
    }
}

pub fn run_suite(id: SuiteId, params: &Params) -> Report {
    let mut t = Tally::default();
    match id {
        SuiteId::S1 => s1(params, &mut t),
        SuiteId::S2 => s2(params, &mut t),
        SuiteId::S3 => s3(params, &mut t),
        SuiteId::S4 => s4(params, &mut t),
        SuiteId::S5 => s5(params, &mut t),
        SuiteId::S6 => s6(params, &mut t),
        SuiteId::S7 => s7(params, &mut t),
        SuiteId::S8 => s8(params, &mut t),
        SuiteId::S9 => s9(params, &mut t),
        SuiteId::S10 => s10(params, &mut t),
        SuiteId::S11 => s11(params, &mut t),
        SuiteId::S12 => s12(params, &mut t),
        SuiteId::S13 => s13(params, &mut t),
    }
    let mut counterexamples = t.cex;
    counterexamples.sort();
    counterexamples.dedup();
    Report {
        suite: id,
        title: id.title().into(),
        params: params.clone(),
        cases: t.cases,
        counterexamples,
        inconclusive: t.inconclusive,
        evaluable: t.evaluable,
    }
}

const OPS3: [BcOp; 3] = [BcOp::Prime, BcOp::Second, BcOp::First];

/// Sweeps `1..=m_max` over the base range; each `(m, k)` is one case.
fn sweep(p: &Params, t: &mut Tally, mut f: impl FnMut(u64, u64, Part, &mut Tally)) {
    for k in p.k_min..=p.k_max {
        for m in 1..=p.m_max {
            t.cases += 1;
            for &part in &p.parts {
                f(m, k, part, t);
            }
        }
    }
}

fn term(m: u64, k: u64, part: Part, cap: u64) -> AckTerm {
    hereditary_u64(m, k, part, cap).expect("small numbers normalize")
}

fn value(t: &AckTerm, cap: u64) -> Option<BigUint> {
    t.eval(cap)
}

fn tag(m: u64, k: u64, part: Part, what: &str) -> String {
    format!("m={m} k={k} part={} {what}", u8::from(part))
}

fn s1(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    sweep(p, t, |m, k, part, t| {
        for op in BcOp::ALL {
            let x = term(m, k, part, cap);
            let (Some(v), Some(w)) = (value(&base_change(op, &x), cap), value(&base_change(op, &term(m - 1, k, part, cap)), cap)) else {
                t.inconclusive += 1;
                continue;
            };
            let m_big = BigUint::from(m);
            t.check(m_big <= v, || tag(m, k, part, &format!("{op}: m > m° = {v}")));
            if op != BcOp::Iter || m >= k {
                t.check(m < k || m_big < v, || tag(m, k, part, &format!("{op}: m >= k but m° = {v}")));
            }
            t.check(w < v, || tag(m, k, part, &format!("{op}: (m-1)° = {w} >= m° = {v}")));
        }
    });
    // A_a(k,b) <= A_{a°}(k+1,b°) without the normal-form assumption
    for k in p.k_min..=p.k_max {
        for a in 0..=3u64 {
            for b in 0..p.m_max.min(41) {
                let node = AckTerm::node(k, Index::Nat(term(a, k, Part::One, cap)), term(b, k, Part::One, cap), 0);
                let Some(lhs) = value(&node, cap) else {
                    continue;
                };
                t.cases += 1;
                t.evaluable += 1;
                for op in OPS3 {
                    let rhs = value(&base_change(op, &node), cap);
                    t.verdict(rhs.map(|r| lhs <= r), || format!("A_{a}({k},{b}) > its {op} base change"));
                }
            }
        }
    }
}

fn s2(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    sweep(p, t, |m, k, part, t| {
        let x = term(m, k, part, cap);
        let n = x.as_node().unwrap();
        for op in OPS3 {
            let changed = base_change(op, &x);
            let Some(v) = value(&changed, cap) else {
                t.inconclusive += 1;
                continue;
            };
            let Ok(fresh) = hereditary(&v, k + 1, part, cap) else {
                t.inconclusive += 1;
                continue;
            };
            let f = fresh.as_node().unwrap();
            let ok = match op {
                BcOp::Prime => fresh == changed,
                BcOp::Second => f.rem == n.rem && f.index.eval(cap) == n.index.eval(cap) && value(&f.arg, cap) == value(&base_change(op, &n.arg), cap),
                _ => {
                    let idx = match &n.index {
                        Index::Nat(a) => Index::Nat(base_change(op, a)),
                        Index::Ord(a) => Index::Ord(crate::base_change::bc_ord(a, op)),
                    };
                    f.rem == n.rem && f.index.eval(cap) == idx.eval(cap) && value(&f.arg, cap) == value(&n.arg, cap)
                }
            };
            t.check(ok, || tag(m, k, part, &format!("{op}: {changed} renormalizes to {fresh}")));
        }
    });
}

fn s3(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    sweep(p, t, |m, k, part, t| {
        let x = term(m, k, part, cap);
        for op in BcOp::ALL {
            let map = Map::paired(op);
            let Some(v) = value(&base_change(op, &x), cap) else {
                t.inconclusive += 1;
                continue;
            };
            let Ok(fresh) = hereditary(&v, k + 1, part, cap) else {
                t.inconclusive += 1;
                continue;
            };
            match (assign(map, &x), assign(map, &fresh)) {
                (Ok(a), Ok(b)) => t.check(a == b, || tag(m, k, part, &format!("{map}: {a} vs {b} after {op}"))),
                _ => t.inconclusive += 1,
            }
        }
    });
}

fn nf_certified(o: &Ordinal) -> bool {
    o.as_hb().is_none_or(is_nf)
}

fn s4(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    sweep(p, t, |m, k, part, t| {
        let x = term(m, k, part, cap);
        let y = term(m - 1, k, part, cap);
        for map in Map::ALL {
            match (assign(map, &y), assign(map, &x)) {
                (Ok(a), Ok(b)) => {
                    t.check(a < b, || tag(m, k, part, &format!("{map}: {a} !< {b}")));
                    t.check(nf_certified(&b), || tag(m, k, part, &format!("{map}: {b} not in normal form")));
                }
                _ => t.inconclusive += 1,
            }
        }
    });
}

fn fund_ord(o: &Ordinal, x: u64) -> Ordinal {
    match o {
        Ordinal::E0(a) => Ordinal::E0(fund_e0(a, x)),
        Ordinal::Hb(h) => Ordinal::Hb(fund_hb(h, x)),
    }
}

fn s5(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    sweep(p, t, |m, k, part, t| {
        let x = term(m, k, part, cap);
        for (op, shift) in [(BcOp::Prime, 2), (BcOp::Second, 2), (BcOp::First, 1)] {
            let map = Map::paired(op);
            let Some(v) = value(&base_change(op, &x), cap) else {
                t.inconclusive += 1;
                continue;
            };
            let Ok(after) = hereditary(&(v - 1u32), k + 1, part, cap) else {
                t.inconclusive += 1;
                continue;
            };
            let (Ok(hi), Ok(mid)) = (assign(map, &x), assign(map, &after)) else {
                t.inconclusive += 1;
                continue;
            };
            let lo = fund_ord(&hi, k - shift);
            t.check(hi > mid && mid >= lo, || tag(m, k, part, &format!("{map}: {hi} > {mid} >= {lo} fails")));
        }
    });
}

fn rng(p: &Params) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(p.seed)
}

fn s6(p: &Params, t: &mut Tally) {
    let all = enumerate_e0(p.max_ncount);
    let mut r = rng(p);
    for _ in 0..p.samples {
        t.cases += 1;
        let a = all.choose(&mut r).unwrap();
        let x = r.gen_range(0..6);
        let ax = fund_e0(a, x);
        let lo = all.partition_point(|b| b <= &ax);
        let hi = all.partition_point(|b| b < a);
        for b in &all[lo..hi.max(lo)] {
            t.check(ax <= fund_e0(b, 1), || format!("{a}[{x}] = {ax} < {b} < {a} but {b}[1] = {}", fund_e0(b, 1)));
        }
    }
}

/// Random Cantor normal form with bounded depth, width and coefficients.
pub fn random_e0(r: &mut impl Rng, depth: u32, max_coeff: u64) -> OrdE0 {
    if depth == 0 {
        return OrdE0::nat(r.gen_range(0..=max_coeff));
    }
    let n = r.gen_range(0..=3);
    let mut exps: Vec<OrdE0> = (0..n).map(|_| random_e0(r, depth - 1, max_coeff)).collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    let terms = exps.into_iter().map(|e| Term { exp: e, coeff: r.gen_range(1..=max_coeff.max(1)) }).collect();
    OrdE0::from_terms(terms).expect("sorted exponents")
}

fn random_principal(r: &mut impl Rng, depth: u32, upsi: bool) -> Principal {
    if depth == 0 || r.gen_bool(0.4) {
        return Principal::Omega(random_e0(r, 2, 3));
    }
    let mut arg = random_hb(r, depth - 1, upsi);
    if upsi {
        if arg.is_zero() {
            arg = HbTerm::nat(1);
        }
        return Principal::UPsi(arg);
    }
    if arg.is_omega_free() {
        arg = hb_add(&HbTerm::big_omega(), &arg);
    }
    match HbTerm::psi(arg).as_countable().unwrap().comps() {
        [(p, 1)] => p.clone(),
        _ => unreachable!("ψ is principal"),
    }
}

fn random_countable(r: &mut impl Rng, depth: u32, upsi: bool) -> Countable {
    let n = r.gen_range(1..=2);
    let mut ps: Vec<Principal> = (0..n).map(|_| random_principal(r, depth, upsi)).collect();
    ps.sort_by(|a, b| b.cmp(a));
    ps.dedup();
    ps.into_iter().fold(Countable::zero(), |acc, p| {
        let piece = match &p {
            Principal::Omega(e) => Countable::from_e0(e),
            _ => Countable::single(p.clone(), r.gen_range(1..=3)),
        };
        acc.add(&piece)
    })
}

/// Random Ω-polynomial; `ψ` nodes (or `Ψ` nodes when `upsi`) are normalized
/// but not necessarily in normal form.
pub fn random_hb(r: &mut impl Rng, depth: u32, upsi: bool) -> HbTerm {
    let n = if depth == 0 { 0 } else { r.gen_range(0..=2) };
    let mut exps: Vec<HbTerm> = (0..n).map(|_| random_hb(r, depth - 1, upsi)).filter(|e| !e.is_zero()).collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    let mut acc = HbTerm::zero();
    for e in exps {
        acc = hb_add(&acc, &HbTerm::monomial(e, random_countable(r, depth.saturating_sub(1), upsi)));
    }
    if r.gen_bool(0.7) {
        acc = hb_add(&acc, &random_countable(r, depth, upsi).to_hb());
    }
    acc
}

/// Random `OT'` term of the shape `Ψ(δ) + ω·b + l`.
pub fn random_otp(r: &mut impl Rng, depth: u32) -> HbTerm {
    let mut delta = random_hb(r, depth, true);
    if delta.is_zero() {
        delta = HbTerm::big_omega();
    }
    let tail = OrdE0::from_weak_terms([Term { exp: OrdE0::one(), coeff: r.gen_range(0..4) }, Term { exp: OrdE0::zero(), coeff: r.gen_range(0..4) }]).unwrap();
    hb_add(&HbTerm::upsi(delta), &HbTerm::from_e0(&tail))
}

fn s7(p: &Params, t: &mut Tally) {
    let mut r = rng(p);
    for i in 0..p.samples {
        let upsi = i % 2 == 1;
        let found = (0..1000).find_map(|_| {
            let s = if upsi { random_otp(&mut r, p.max_depth.min(3)) } else { random_hb(&mut r, p.max_depth.min(3), false) };
            (!s.is_zero() && s.is_countable() && is_nf(&s)).then_some(s)
        });
        let Some(s) = found else {
            t.inconclusive += 1;
            continue;
        };
        t.cases += 1;
        for x in 0..4 {
            let f = fund_hb(&s, x);
            t.check(is_nf(&f), || format!("{s}[{x}] = {f} is not in normal form"));
            t.check(f < s, || format!("{s}[{x}] = {f} is not below"));
        }
    }
}

fn s8(p: &Params, t: &mut Tally) {
    let all = enumerate_e0(p.max_ncount);
    let mut r = rng(p);
    for _ in 0..p.samples {
        let (mut a, mut b) = (all.choose(&mut r).unwrap(), all.choose(&mut r).unwrap());
        while a == b {
            b = all.choose(&mut r).unwrap();
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        t.cases += 1;
        match star_decompose(a, b) {
            Ok(StarResult::SuccessorCase) => t.check(a.succ() == *b, || format!("({a}, {b}) misread as successor")),
            Ok(StarResult::BelowFirst) => t.check(a < &fund_e0(b, 1), || format!("({a}, {b}) misread as below b[1]")),
            Ok(StarResult::ContextCase { lambda, gamma, r }) => {
                let back = subst(&lambda, &OrdE0::monomial(gamma.clone(), r));
                let top = star_top(&lambda, &gamma);
                let bound = star_bound(&lambda, &gamma, r);
                let ok = back.as_ref() == Ok(a) && top.as_ref() == Ok(b) && bound.is_ok_and(|u| *a < u);
                t.check(ok, || format!("({a}, {b}) context {lambda} γ={gamma} r={r} does not reconstruct"));
            }
            Err(e) => t.check(false, || format!("({a}, {b}): {e}")),
        }
    }
}

const SUITE_FUEL: u64 = 200_000;

fn ack(alpha: &OrdE0, k: u64, b: &BigUint, cap: u64) -> Result<BigUint, Stop> {
    Ackermann::shared().eval_with_fuel(alpha, k, b, cap, SUITE_FUEL)
}

/// `a <= b` where an over-cap `b` counts as larger and fuel exhaustion is inconclusive.
fn le_budget(a: &BigUint, b: &Result<BigUint, Stop>) -> Option<bool> {
    match b {
        Ok(v) => Some(a <= v),
        Err(Stop::Cap) => Some(true),
        Err(Stop::Fuel) => None,
    }
}

fn small(v: &BigUint) -> Result<u64, Stop> {
    v.to_u64().ok_or(Stop::Cap)
}

/// `A_{β_{k-1, A_β(b-1)}}(A_β(b-1))`, with `A_β(-1) = 0`.
fn max_bound(beta: &OrdE0, k: u64, b: u64, cap: u64) -> Result<BigUint, Stop> {
    let prev = if b == 0 { BigUint::ZERO } else { ack(beta, k, &BigUint::from(b - 1), cap)? };
    let mut idx = fund_e0(beta, small(&prev)?);
    for _ in 1..k {
        idx = fund_e0(beta, small(&ack(&idx, k, &prev, cap)?)?);
    }
    ack(&idx, k, &prev, cap)
}

/// Evaluations over a finite domain at fixed `k`, `b`.
struct Table {
    vals: Vec<Result<BigUint, Stop>>,
    bounds: Vec<Result<BigUint, Stop>>,
}

impl Table {
    fn new(all: &[OrdE0], k: u64, b: u64, cap: u64) -> Self {
        let bb = BigUint::from(b);
        Table {
            vals: all.iter().map(|a| ack(a, k, &bb, cap)).collect(),
            bounds: all.iter().map(|a| if a.is_limit() { max_bound(a, k, b, cap) } else { Err(Stop::Cap) }).collect(),
        }
    }
}

fn s9(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits.min(4096);
    let all = enumerate_e0(p.max_ncount.min(5));
    let pos = |o: &OrdE0| all.binary_search(o).ok();
    for k in p.k_min.min(2)..=p.k_max {
        for b in 0..=2u64 {
            let tab = Table::new(&all, k, b, cap);
            let bound_of = |o: &OrdE0| match pos(o) {
                Some(j) => tab.bounds[j].clone(),
                None => max_bound(o, k, b, cap),
            };
            for (i, a) in all.iter().enumerate() {
                let Ok(va) = &tab.vals[i] else {
                    t.inconclusive += 1;
                    continue;
                };
                t.cases += 1;
                t.evaluable += 1;
                let ctxs: Vec<_> = contexts_of(a).into_iter().map(|(c, g, r)| (star_top(&c, &g).expect("truncation stays in normal form"), r)).collect();

                // max: no δ > α in the domain with A_δ(b) <= A_α(b)
                let maximal = tab.vals[i + 1..].iter().try_fold(true, |acc, v| match v {
                    Ok(v) => Some(acc && v > va),
                    Err(Stop::Cap) => Some(acc),
                    Err(Stop::Fuel) => None,
                });
                match maximal {
                    None => t.inconclusive += 1,
                    Some(false) => {}
                    Some(true) => {
                        for (delta, r) in &ctxs {
                            t.verdict(le_budget(&BigUint::from(*r), &bound_of(delta)), || format!("k={k} b={b} α={a} δ={delta}: r={r} above the max bound"));
                        }
                    }
                }

                // maj: every decomposition of α has r strictly below the bound
                let hyp = ctxs.iter().try_fold(true, |acc, (delta, r)| match bound_of(delta) {
                    Ok(v) => Some(acc && BigUint::from(*r) < v),
                    Err(Stop::Cap) => Some(acc),
                    Err(Stop::Fuel) => None,
                });
                match hyp {
                    None => t.inconclusive += 1,
                    Some(false) => {}
                    Some(true) => {
                        let succ = a.succ();
                        let v_succ = ack(&succ, k, &BigUint::from(b), cap);
                        for (j, beta) in all.iter().enumerate().skip(i + 1) {
                            if *beta != succ {
                                let reach = match &tab.bounds[j] {
                                    Ok(x) => small(x).ok().map(|x| succ <= fund_e0(beta, x)),
                                    Err(_) if !beta.is_limit() => Some(succ <= fund_e0(beta, 0)),
                                    Err(_) => None,
                                };
                                t.verdict(reach, || format!("k={k} b={b}: {a}+1 above {beta}[bound]"));
                            }
                            let v = match &v_succ {
                                Ok(v) => le_budget(v, &tab.vals[j]),
                                Err(_) => None,
                            };
                            t.verdict(v, || format!("k={k} b={b}: A_({a}+1) > A_({beta})"));
                        }
                    }
                }
            }
        }
    }
}

fn s10(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    for k in p.k_min..=p.k_max {
        let classify = |m: u64| classify_type(m, k, cap).expect("positive coefficients");
        let lift = |e: &OrdE0| lift_ord(Map::Psi, &MixedOrd::from_e0(e, k, cap).unwrap()).unwrap();
        let coeff = |c: u64| {
            let img = assign_part2(Map::Psi, &term(c, k, Part::Two, cap)).unwrap();
            img.as_hb().and_then(|h| h.as_countable()).cloned().unwrap()
        };
        for a in enumerate_e0(p.max_ncount) {
            let Ok((ctx, gamma, pp)) = lambda_context(&a, k, &classify) else {
                continue;
            };
            t.cases += 1;
            let back = subst(&ctx, &OrdE0::monomial(gamma.clone(), pp));
            t.check(back.as_ref() == Ok(&a), || format!("k={k} λ({a}) = {ctx} does not reconstruct"));
            let filler = HbTerm::monomial(lift(&gamma), coeff(pp));
            let lifted = fill_lifted(&ctx, &lift, &coeff, &filler);
            t.check(lifted.as_ref() == Some(&lift(&a)), || format!("k={k} ψ-image of λ({a}) = {ctx} gives {lifted:?}, expected {}", lift(&a)));
        }
    }
}

const S11_MAX_SEED: u64 = 40;

fn s11(p: &Params, t: &mut Tally) {
    let cfg = RunConfig { max_steps: p.max_steps, cap_bits: p.cap_bits, ..RunConfig::default() };
    for &part in &p.parts {
        for op in BcOp::ALL {
            for m in 0..=p.m_max.min(S11_MAX_SEED) {
                t.cases += 1;
                let tr = run_u64(m, op, part, &cfg);
                t.check(tr.descends(), || format!("seed {m} {op} part {}: descent fails", u8::from(part)));
                if part == Part::One && op == BcOp::Prime {
                    for (l, c) in chain_checks(&tr, 10_000).into_iter().enumerate() {
                        match c {
                            ChainCheck::Holds => {}
                            ChainCheck::Fails => t.cex.push(format!("seed {m}: o(l+1) >=_1 o(l)[l+1] fails at l={l}")),
                            ChainCheck::Inconclusive => t.inconclusive += 1,
                        }
                    }
                }
            }
        }
    }
}

fn s12(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits.min(4096);
    let all = enumerate_e0(p.max_ncount.min(5));
    let mut reach: HashMap<(u64, usize, usize), LeqL> = HashMap::new();
    for k in p.k_min.min(2)..=p.k_max {
        let tabs: Vec<Table> =
            (0..=4u64).map(|b| Table { vals: all.iter().map(|a| ack(a, k, &BigUint::from(b), cap)).collect(), bounds: Vec::new() }).collect();
        for b in 0..=3u64 {
            let vals = &tabs[b as usize].vals;
            for (i, a) in all.iter().enumerate() {
                let Ok(va) = &vals[i] else {
                    t.inconclusive += 1;
                    continue;
                };
                t.cases += 1;
                t.evaluable += 1;
                let next = &tabs[b as usize + 1].vals[i];
                t.verdict(le_budget(&(va + 1u32), next), || format!("k={k}: A_{a}({b}) >= A_{a}({})", b + 1));
                t.check(BigUint::from(mc_e0(a)) < *va, || format!("k={k}: mc({a}) >= A_{a}({b})"));
                t.check(*va >= BigUint::from(ncount(a) + b), || format!("k={k}: A_{a}({b}) < N({a}) + {b}"));
                if !a.is_zero() {
                    t.check(*va > BigUint::from(2 * b), || format!("k={k}: A_{a}({b}) <= 2*{b}"));
                }
                for (j, beta) in all.iter().enumerate().skip(i + 1) {
                    if mc_e0(a) <= b {
                        t.verdict(le_budget(va, &vals[j]), || format!("k={k} b={b}: A_{a} > A_{beta} with mc <= b"));
                    }
                    for l in 1..=b {
                        let r = *reach.entry((l, i, j)).or_insert_with(|| leq_l(beta, a, l, 300));
                        match r {
                            LeqL::Reached(_) => t.verdict(le_budget(va, &vals[j]), || format!("k={k} b={b}: {a} <=_{l} {beta} but A_{a} > A_{beta}")),
                            LeqL::NotReached => {}
                            LeqL::BudgetExhausted => t.inconclusive += 1,
                        }
                    }
                }
                if a.is_limit() {
                    for l in 0..=3 {
                        let al = fund_e0(a, l);
                        let Ok(val) = ack(&al, k, &BigUint::from(b), cap) else {
                            continue;
                        };
                        for (j, _) in all.iter().enumerate().filter(|(_, x)| **x > al && *x < a) {
                            t.verdict(le_budget(&(&val + 1u32), &vals[j]), || format!("k={k} b={b}: {a}[{l}] < {} < {a} but A is not larger", all[j]));
                        }
                    }
                }
            }
        }
    }
}

fn s13(p: &Params, t: &mut Tally) {
    let cap = p.cap_bits;
    for k in p.k_min..=p.k_max {
        for m in 1..=p.m_max {
            let one = term(m, k, Part::One, cap);
            let two = term(m, k, Part::Two, cap);
            let finite = matches!(&two.as_node().unwrap().index, Index::Ord(o) if o.eval(64).is_some_and(|v| v.is_finite()));
            if !finite {
                t.inconclusive += 1;
                continue;
            }
            t.cases += 1;
            t.check(one.eval(cap) == two.eval(cap), || format!("m={m} k={k}: normal forms disagree"));
            // the simple map has different shapes in the two parts
            for map in [Map::Psi, Map::Chi, Map::Xi] {
                let (Ok(a), Ok(b)) = (assign_part1(map, &one), assign_part2(map, &two)) else {
                    t.inconclusive += 1;
                    continue;
                };
                let b_val = match &b {
                    Ordinal::E0(x) => Ok(x.clone()),
                    Ordinal::Hb(h) if map == Map::Xi => hb_eval_countable_prime(h),
                    Ordinal::Hb(h) => hb_eval_countable(h),
                };
                t.check(b_val.as_ref() == Ok(&a), || format!("m={m} k={k} {map}: {a} vs {b}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Params {
        Params { m_max: 60, samples: 200, ..Params::default() }
    }

    #[test]
    fn vacuous_range() {
        let r = run_suite(SuiteId::S1, &Params { m_max: 0, k_min: 3, k_max: 3, ..Params::default() });
        assert_eq!(r.cases, 0);
        assert!(r.passed());
    }

    #[test]
    fn invariance_cases() {
        let r = run_suite(SuiteId::S3, &Params { m_max: 200, k_min: 3, k_max: 3, ..Params::default() });
        assert!(r.passed(), "{r}");
        assert_eq!(r.cases, 200);
    }

    #[test]
    fn all_suites_small() {
        for id in SuiteId::ALL {
            let r = run_suite(id, &Params { m_max: if id == SuiteId::S11 { 4 } else { 60 }, ..small() });
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0, "{r}");
        }
    }

    #[test]
    fn deterministic() {
        let p = small();
        assert_eq!(run_suite(SuiteId::S7, &p), run_suite(SuiteId::S7, &p));
    }
}
