//! Capped evaluation of `A_a(k,b)` and its ordinal-indexed extension.
//!
//! `A_0(k,b) = b+1`, `A_{a+1}(k,b)` iterates `A_a(k,.)` k times starting from
//! `A_{a+1}(k,b-1)` (or from 0), and limit indices `λ` step through
//! `λ_{l,k,b}`. Every intermediate value of a computation is bounded by its
//! result, so a computation can stop as soon as anything passes the cap.
//!
//! Some indices (for instance `w*32766` at base 2) recurse far deeper than
//! any stack before their value passes the cap, so evaluation also carries a
//! work and depth budget. [`Ackermann::eval_detailed`] reports which limit
//! stopped it; everywhere else both read as "exceeded".

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::ordinal_e0::{fund_e0, OrdE0};

pub const DEFAULT_CAP_BITS: u64 = 65536;

const MEMO_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("value exceeds the {0}-bit budget")]
pub struct Exceeded(pub u64);

/// A natural number that is either known exactly or known to exceed `cap_bits` bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BudgetedNat {
    value: Option<BigUint>,
    cap_bits: u64,
}

impl BudgetedNat {
    pub fn new(v: BigUint, cap_bits: u64) -> Self {
        if v.bits() > cap_bits {
            Self::exceeded(cap_bits)
        } else {
            BudgetedNat { value: Some(v), cap_bits }
        }
    }

    pub fn from_u64(v: u64, cap_bits: u64) -> Self {
        Self::new(BigUint::from(v), cap_bits)
    }

    pub fn exceeded(cap_bits: u64) -> Self {
        BudgetedNat { value: None, cap_bits }
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.value.as_ref()
    }

    pub fn into_value(self) -> Option<BigUint> {
        self.value
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }

    pub fn cap_bits(&self) -> u64 {
        self.cap_bits
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.as_ref().and_then(|v| v.to_u64())
    }
}

impl fmt::Display for BudgetedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "overflow"),
        }
    }
}

#[derive(Clone, Debug)]
enum Memo {
    Exact(BigUint),
    ExceededAt(u64),
}

type Key = (OrdE0, u64, u64);

/// Evaluator with an optional memo table shared between threads.
#[derive(Debug, Default)]
pub struct Ackermann {
    memo: Option<Mutex<HashMap<Key, Memo>>>,
}

impl Ackermann {
    pub fn memoized() -> Self {
        Ackermann { memo: Some(Mutex::new(HashMap::new())) }
    }

    pub fn unmemoized() -> Self {
        Ackermann { memo: None }
    }

    /// Process-wide memoized evaluator.
    pub fn shared() -> &'static Ackermann {
        static SHARED: OnceLock<Ackermann> = OnceLock::new();
        SHARED.get_or_init(Ackermann::memoized)
    }

    /// `A_alpha(k,b)`, or `None` when it has more than `cap` bits or the work budget runs out.
    pub fn eval(&self, alpha: &OrdE0, k: u64, b: &BigUint, cap: u64) -> Option<BigUint> {
        self.eval_detailed(alpha, k, b, cap).ok()
    }

    /// Like [`Ackermann::eval`] but tells an over-cap value from an exhausted work budget.
    pub fn eval_detailed(&self, alpha: &OrdE0, k: u64, b: &BigUint, cap: u64) -> Result<BigUint, Stop> {
        self.go(alpha, k, b, cap, &mut Fuel::new())
    }

    /// Like [`Ackermann::eval_detailed`] with an explicit call budget.
    pub fn eval_with_fuel(&self, alpha: &OrdE0, k: u64, b: &BigUint, cap: u64, max_calls: u64) -> Result<BigUint, Stop> {
        self.go(alpha, k, b, cap, &mut Fuel { max_calls, ..Fuel::new() })
    }

    /// Given `prev = A_alpha(k,b)` returns `A_alpha(k,b+1)`; with `None` returns `A_alpha(k,0)`.
    pub fn next(&self, alpha: &OrdE0, k: u64, prev: Option<&BigUint>, cap: u64) -> Option<BigUint> {
        let fuel = &mut Fuel::new();
        match prev {
            None => self.go(alpha, k, &BigUint::zero(), cap, fuel),
            Some(v) => self.step(alpha, k, v, cap, fuel),
        }
        .ok()
    }

    /// `λ_{l,k,b}`; `None` once a fundamental-sequence argument passes the cap or `u64`.
    pub fn limit_index(&self, lambda: &OrdE0, l: u64, k: u64, b: &BigUint, cap: u64) -> Option<OrdE0> {
        self.index_at(lambda, l, k, b, cap, &mut Fuel::new()).ok()
    }

    fn go(&self, alpha: &OrdE0, k: u64, b: &BigUint, cap: u64, fuel: &mut Fuel) -> Result<BigUint, Stop> {
        if alpha.is_zero() || k == 1 {
            return fit(b + 1u32, cap);
        }
        if k == 0 {
            return Ok(BigUint::zero());
        }
        if *alpha == OrdE0::one() {
            return fit((b + 1u32) * k, cap);
        }
        // A_{γ+1}(k,x) >= 2^(A_γ(k,x)+1)-1 for γ >= 2, so five successor steps exceed any cap
        if tower_exceeds(alpha) {
            return Err(Stop::Cap);
        }
        // for alpha >= 2 and k >= 2, A(k,x+1) >= 2*A(k,x)+1, so A(k,b) has at least b+1 bits
        let bn = b.to_u64().filter(|&n| n < cap).ok_or(Stop::Cap)?;
        let key = (alpha.clone(), k, bn);
        if let Some(memo) = &self.memo {
            match memo.lock().unwrap().get(&key) {
                Some(Memo::Exact(v)) => return fit(v.clone(), cap),
                Some(Memo::ExceededAt(c)) if *c >= cap => return Err(Stop::Cap),
                _ => {}
            }
        }
        fuel.enter()?;
        let result = self.go_uncached(alpha, k, bn, cap, fuel);
        fuel.leave();
        if let Some(memo) = &self.memo {
            let entry = match &result {
                Ok(v) => Some(Memo::Exact(v.clone())),
                Err(Stop::Cap) => Some(Memo::ExceededAt(cap)),
                Err(Stop::Fuel) => None,
            };
            if let Some(entry) = entry {
                let mut table = memo.lock().unwrap();
                if table.len() >= MEMO_LIMIT {
                    table.clear();
                }
                table.insert(key, entry);
            }
        }
        result
    }

    fn go_uncached(&self, alpha: &OrdE0, k: u64, bn: u64, cap: u64, fuel: &mut Fuel) -> Result<BigUint, Stop> {
        let zero = BigUint::zero();
        let index = match alpha.pred() {
            Some(beta) => beta,
            None => self.index_at(alpha, k, k, &zero, cap, fuel)?,
        };
        let mut v = self.iterate(&index, k, zero, cap, fuel)?;
        for _ in 0..bn {
            v = self.step(alpha, k, &v, cap, fuel)?;
        }
        Ok(v)
    }

    fn step(&self, alpha: &OrdE0, k: u64, v: &BigUint, cap: u64, fuel: &mut Fuel) -> Result<BigUint, Stop> {
        if alpha.is_zero() || k == 1 {
            return fit(v + 1u32, cap);
        }
        if k == 0 {
            return Ok(BigUint::zero());
        }
        if *alpha == OrdE0::one() {
            return fit(v + k, cap);
        }
        let index = match alpha.pred() {
            Some(beta) => beta,
            None => self.index_at(alpha, k, k, v, cap, fuel)?,
        };
        self.iterate(&index, k, v.clone(), cap, fuel)
    }

    fn iterate(&self, index: &OrdE0, k: u64, mut x: BigUint, cap: u64, fuel: &mut Fuel) -> Result<BigUint, Stop> {
        for _ in 0..k {
            x = self.go(index, k, &x, cap, fuel)?;
        }
        Ok(x)
    }

    fn index_at(&self, lambda: &OrdE0, l: u64, k: u64, b: &BigUint, cap: u64, fuel: &mut Fuel) -> Result<OrdE0, Stop> {
        let mut index = fund_e0(lambda, b.to_u64().ok_or(Stop::Cap)?);
        for _ in 0..l {
            let v = self.go(&index, k, b, cap, fuel)?;
            index = fund_e0(lambda, v.to_u64().ok_or(Stop::Cap)?);
        }
        Ok(index)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.lock().unwrap().len())
    }
}

fn tower_exceeds(alpha: &OrdE0) -> bool {
    match alpha.as_nat() {
        Some(n) => n >= 7,
        None => alpha.terms().last().is_some_and(|t| t.exp.is_zero() && t.coeff >= 5),
    }
}

fn fit(v: BigUint, cap: u64) -> Result<BigUint, Stop> {
    if v.bits() <= cap {
        Ok(v)
    } else {
        Err(Stop::Cap)
    }
}

/// Why an evaluation stopped without a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    /// The value has more bits than the cap.
    Cap,
    /// The work or recursion-depth budget ran out first.
    Fuel,
}

const MAX_CALLS: u64 = 4_000_000;
const MAX_DEPTH: u32 = 256;

struct Fuel {
    max_calls: u64,
    calls: u64,
    depth: u32,
}

impl Fuel {
    fn new() -> Self {
        Fuel { max_calls: MAX_CALLS, calls: 0, depth: 0 }
    }

    fn enter(&mut self) -> Result<(), Stop> {
        self.calls += 1;
        self.depth += 1;
        if self.calls > self.max_calls || self.depth > MAX_DEPTH {
            self.depth -= 1;
            return Err(Stop::Fuel);
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }
}

fn budgeted(v: Option<BigUint>, cap: u64) -> BudgetedNat {
    match v {
        Some(v) => BudgetedNat::new(v, cap),
        None => BudgetedNat::exceeded(cap),
    }
}

pub fn ack_fin(a: u64, k: u64, b: &BudgetedNat, cap_bits: u64) -> BudgetedNat {
    ack_ord(&OrdE0::nat(a), k, b, cap_bits)
}

pub fn ack_ord(alpha: &OrdE0, k: u64, b: &BudgetedNat, cap_bits: u64) -> BudgetedNat {
    match b.value() {
        Some(b) => budgeted(Ackermann::shared().eval(alpha, k, b, cap_bits), cap_bits),
        None => BudgetedNat::exceeded(cap_bits),
    }
}

pub fn limit_index(lambda: &OrdE0, l: u64, k: u64, b: &BudgetedNat, cap_bits: u64) -> Result<OrdE0, Exceeded> {
    let b = b.value().ok_or(Exceeded(cap_bits))?;
    Ackermann::shared().limit_index(lambda, l, k, b, cap_bits).ok_or(Exceeded(cap_bits))
}

/// `A_alpha(k,b)` for a machine-size `b`.
pub fn ack_small(alpha: &OrdE0, k: u64, b: u64, cap_bits: u64) -> Option<BigUint> {
    Ackermann::shared().eval(alpha, k, &BigUint::from(b), cap_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = DEFAULT_CAP_BITS;

    fn b(v: u64) -> BudgetedNat {
        BudgetedNat::from_u64(v, CAP)
    }

    fn w() -> OrdE0 {
        OrdE0::omega()
    }

    #[test]
    fn finite_indices() {
        assert_eq!(ack_fin(0, 3, &b(7), CAP).to_u64(), Some(8));
        assert_eq!(ack_fin(1, 3, &b(2), CAP).to_u64(), Some(9));
        assert_eq!(ack_fin(2, 3, &b(0), CAP).to_u64(), Some(39));
        assert_eq!(ack_fin(2, 4, &b(0), CAP).to_u64(), Some(340));
        assert_eq!(ack_fin(2, 3, &b(1), CAP).to_u64(), Some(27 * 39 + 39));
        assert!(!ack_fin(3, 3, &b(0), CAP).is_exact());
    }

    #[test]
    fn ordinal_indices() {
        assert_eq!(ack_ord(&OrdE0::nat(2), 3, &b(0), CAP).to_u64(), Some(39));
        assert_eq!(ack_ord(&OrdE0::zero(), 5, &b(9), CAP).to_u64(), Some(10));
        assert!(!ack_ord(&w(), 3, &b(0), CAP).is_exact());
        // at k = 2 the limit index w is within reach: w_{2,2,0} = 2, A_2(2,A_2(2,0)) = A_2(2,6)
        assert_eq!(ack_ord(&w(), 2, &b(0), CAP).to_u64(), Some(32766));
    }

    #[test]
    fn limit_indices() {
        assert_eq!(limit_index(&w(), 0, 3, &b(0), CAP), Ok(OrdE0::zero()));
        assert_eq!(limit_index(&w(), 1, 3, &b(0), CAP), Ok(OrdE0::one()));
        assert_eq!(limit_index(&w(), 2, 3, &b(0), CAP), Ok(OrdE0::nat(3)));
        assert_eq!(limit_index(&w(), 3, 3, &b(0), CAP), Err(Exceeded(CAP)));
    }

    #[test]
    fn small_bases() {
        assert_eq!(ack_fin(5, 1, &b(4), CAP).to_u64(), Some(5));
        assert_eq!(ack_fin(5, 0, &b(4), CAP).to_u64(), Some(0));
        assert_eq!(ack_fin(0, 0, &b(4), CAP).to_u64(), Some(5));
    }

    #[test]
    fn cap_is_respected() {
        let v = ack_fin(2, 3, &b(3), CAP).into_value().unwrap();
        let bits = v.bits();
        assert!(ack_fin(2, 3, &b(3), bits).is_exact());
        assert!(!ack_fin(2, 3, &b(3), bits - 1).is_exact());
        assert!(ack_fin(2, 3, &b(3), bits).is_exact());
    }

    #[test]
    fn memo_agrees() {
        let memo = Ackermann::memoized();
        let plain = Ackermann::unmemoized();
        for a in crate::ordinal_e0::enumerate_e0(5) {
            for k in 2..5 {
                for x in 0..4u32 {
                    let x = BigUint::from(x);
                    assert_eq!(memo.eval(&a, k, &x, 4096), plain.eval(&a, k, &x, 4096), "{a} {k} {x}");
                    assert_eq!(memo.eval(&a, k, &x, 4096), plain.eval(&a, k, &x, 4096));
                }
            }
        }
        assert!(memo.memo_len() > 0);
        assert_eq!(plain.memo_len(), 0);
    }

    #[test]
    fn stepping_matches_direct() {
        let ack = Ackermann::unmemoized();
        for a in [OrdE0::nat(2), w(), OrdE0::omega_pow(OrdE0::nat(2))] {
            let mut v = ack.next(&a, 2, None, 4096);
            for x in 0..5u32 {
                assert_eq!(v, ack.eval(&a, 2, &BigUint::from(x), 4096));
                v = v.and_then(|v| ack.next(&a, 2, Some(&v), 4096));
            }
        }
    }
}
