//! k-normal forms `m = A_a(k,b) + l` and hereditary Ackermann terms.
//!
//! A term node records the base it was normalized at. Base changes that keep
//! a subterm verbatim (the index under `<k<-k+1>`, the argument under
//! `{k<-k+1}`) leave that subterm at its old base, so evaluation stays exact
//! without renormalizing numbers that are too large to evaluate.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ackermann::{Ackermann, BudgetedNat};
use crate::ordinal_e0::{enumerate_e0, OrdE0, Term};

pub const DEFAULT_NCAP: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Part {
    One,
    Two,
}

impl From<Part> for u8 {
    fn from(p: Part) -> u8 {
        match p {
            Part::One => 1,
            Part::Two => 2,
        }
    }
}

impl TryFrom<u8> for Part {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            1 => Ok(Part::One),
            2 => Ok(Part::Two),
            _ => Err(format!("part must be 1 or 2, got {v}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("normal forms are defined for m >= 1")]
    ZeroInput,
    #[error("normal forms need base k >= 3, got {0}")]
    BaseTooSmall(u64),
    #[error("input exceeds the {0}-bit budget")]
    Exceeded(u64),
    #[error("cannot certify the normal form: {0}")]
    CertificationImpossible(String),
}

/// Top-level decomposition `m = A_index(k,b) + l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AckNf {
    pub index: OrdE0,
    pub b: BigUint,
    pub l: u64,
    pub k: u64,
}

impl fmt::Display for AckNf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{}({},{})", self.index, self.k, self.b)?;
        if self.l > 0 {
            write!(f, "+{}", self.l)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KType {
    SuccessorType,
    LimitType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AckTerm {
    Zero,
    Node(Arc<Node>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub base: u64,
    pub index: Index,
    pub arg: AckTerm,
    pub rem: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Index {
    Nat(AckTerm),
    Ord(MixedOrd),
}

/// Cantor normal form whose coefficients are hereditary terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MixedOrd {
    pub terms: Vec<MixedTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedTerm {
    pub exp: MixedOrd,
    pub coeff: AckTerm,
}

impl AckTerm {
    pub fn node(base: u64, index: Index, arg: AckTerm, rem: u64) -> AckTerm {
        AckTerm::Node(Arc::new(Node { base, index, arg, rem }))
    }

    pub fn as_node(&self) -> Option<&Node> {
        match self {
            AckTerm::Zero => None,
            AckTerm::Node(n) => Some(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AckTerm::Zero)
    }

    /// Structural test for the normal form of 1, `A_0(k,0)`.
    pub fn is_one(&self) -> bool {
        self.as_node().is_some_and(|n| n.index.is_zero() && n.arg.is_zero() && n.rem == 0)
    }

    pub fn part(&self) -> Option<Part> {
        self.as_node().map(|n| match n.index {
            Index::Nat(_) => Part::One,
            Index::Ord(_) => Part::Two,
        })
    }

    /// Number of nodes, counting ordinal terms of indices.
    pub fn size(&self) -> u64 {
        match self {
            AckTerm::Zero => 1,
            AckTerm::Node(n) => 1 + n.index.size() + n.arg.size(),
        }
    }

    pub fn eval(&self, cap: u64) -> Option<BigUint> {
        match self {
            AckTerm::Zero => Some(BigUint::zero()),
            AckTerm::Node(n) => {
                let index = n.index.eval(cap)?;
                let b = n.arg.eval(cap)?;
                let v = Ackermann::shared().eval(&index, n.base, &b, cap)? + n.rem;
                (v.bits() <= cap).then_some(v)
            }
        }
    }

    pub fn eval_u64(&self, cap: u64) -> Option<u64> {
        self.eval(cap)?.to_u64()
    }
}

impl Index {
    pub fn is_zero(&self) -> bool {
        match self {
            Index::Nat(t) => t.is_zero(),
            Index::Ord(o) => o.terms.is_empty(),
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            Index::Nat(t) => t.size(),
            Index::Ord(o) => o.size(),
        }
    }

    /// Ordinal value of the index; `None` when a coefficient is beyond the
    /// budget or beyond machine range.
    pub fn eval(&self, cap: u64) -> Option<OrdE0> {
        match self {
            Index::Nat(t) => Some(OrdE0::nat(t.eval_u64(cap)?)),
            Index::Ord(o) => o.eval(cap),
        }
    }
}

impl MixedOrd {
    pub fn zero() -> Self {
        MixedOrd { terms: Vec::new() }
    }

    pub fn size(&self) -> u64 {
        1 + self.terms.iter().map(|t| t.exp.size() + t.coeff.size()).sum::<u64>()
    }

    pub fn eval(&self, cap: u64) -> Option<OrdE0> {
        let terms = self.terms.iter().map(|t| Some(Term { exp: t.exp.eval(cap)?, coeff: t.coeff.eval_u64(cap)? })).collect::<Option<Vec<_>>>()?;
        OrdE0::from_terms(terms)
    }

    /// Hereditary form of an ordinal at base `k`, coefficients as part-2 terms.
    pub fn from_e0(a: &OrdE0, k: u64, cap: u64) -> Result<MixedOrd, NfError> {
        let terms = a
            .terms()
            .iter()
            .map(|t| Ok(MixedTerm { exp: MixedOrd::from_e0(&t.exp, k, cap)?, coeff: hereditary(&BigUint::from(t.coeff), k, Part::Two, cap)? }))
            .collect::<Result<Vec<_>, NfError>>()?;
        Ok(MixedOrd { terms })
    }
}

impl fmt::Display for AckTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AckTerm::Zero => write!(f, "0"),
            AckTerm::Node(n) => {
                write!(f, "A_{{{}}}({},{})", n.index, n.base, value_or_term(&n.arg))?;
                if n.rem > 0 {
                    write!(f, "+{}", n.rem)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Nat(t) => write!(f, "{}", value_or_term(t)),
            Index::Ord(o) => write!(f, "{o}"),
        }
    }
}

impl fmt::Display for MixedOrd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = self.eval(DISPLAY_CAP) {
            return write!(f, "{a}");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "w^({})*[{}]", t.exp, value_or_term(&t.coeff))?;
        }
        Ok(())
    }
}

const DISPLAY_CAP: u64 = 4096;

/// Decimal value when it fits the display budget, the term otherwise.
pub fn value_or_term(t: &AckTerm) -> String {
    match t.eval(DISPLAY_CAP) {
        Some(v) => v.to_string(),
        None => t.to_string(),
    }
}

type FinTable = Arc<Vec<BigUint>>;
type OrdTable = Arc<Vec<(OrdE0, BigUint)>>;
type OrdKey = (u64, u64, u64);

/// `A_a(k,0)` for `a = 0, 1, ...` while within the cap.
fn fin_table(k: u64, cap: u64) -> FinTable {
    static TABLES: OnceLock<Mutex<HashMap<(u64, u64), FinTable>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().unwrap().get(&(k, cap)) {
        return t.clone();
    }
    let mut values = Vec::new();
    let mut a = 0;
    while let Some(v) = Ackermann::shared().eval(&OrdE0::nat(a), k, &BigUint::zero(), cap) {
        values.push(v);
        a += 1;
    }
    let table = Arc::new(values);
    tables.lock().unwrap().insert((k, cap), table.clone());
    table
}

/// Evaluable `(alpha, A_alpha(k,0))` over `ncount(alpha) <= ncap`, decreasing in alpha.
fn ord_table(k: u64, ncap: u64, cap: u64) -> OrdTable {
    static TABLES: OnceLock<Mutex<HashMap<OrdKey, OrdTable>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().unwrap().get(&(k, ncap, cap)) {
        return t.clone();
    }
    let mut entries: Vec<(OrdE0, BigUint)> = enumerate_e0(ncap)
        .into_iter()
        .filter_map(|a| {
            let v = Ackermann::shared().eval(&a, k, &BigUint::zero(), cap)?;
            Some((a, v))
        })
        .collect();
    entries.reverse();
    let table = Arc::new(entries);
    tables.lock().unwrap().insert((k, ncap, cap), table.clone());
    table
}

fn check_input(m: &BigUint, k: u64, cap: u64) -> Result<(), NfError> {
    if m.is_zero() {
        return Err(NfError::ZeroInput);
    }
    if k < 3 {
        return Err(NfError::BaseTooSmall(k));
    }
    if m.bits() > cap {
        return Err(NfError::Exceeded(cap));
    }
    Ok(())
}

/// Largest `b` with `A_index(k,b) <= m`, given `A_index(k,0) <= m`; returns `(b, A_index(k,b))`.
fn max_arg(index: &OrdE0, k: u64, m: &BigUint) -> Result<(BigUint, BigUint), NfError> {
    if index.is_zero() {
        return Ok((m - 1u32, m.clone()));
    }
    if *index == OrdE0::one() {
        let b = m / k - 1u32;
        let v = (&b + 1u32) * k;
        return Ok((b, v));
    }
    let bound = m.bits() + 1;
    let ack = Ackermann::shared();
    let mut v = ack.next(index, k, None, bound).ok_or_else(|| NfError::CertificationImpossible(format!("A_{index}({k},0) is not evaluable")))?;
    let mut b = BigUint::zero();
    loop {
        match ack.next(index, k, Some(&v), bound) {
            Some(w) if &w <= m => {
                v = w;
                b += 1u32;
            }
            _ => return Ok((b, v)),
        }
    }
}

fn finish(index: OrdE0, k: u64, m: &BigUint) -> Result<AckNf, NfError> {
    let (b, v) = max_arg(&index, k, m)?;
    let l = (m - v).to_u64().ok_or_else(|| NfError::CertificationImpossible("remainder beyond machine range".into()))?;
    Ok(AckNf { index, b, l, k })
}

/// k-normal form with a finite index.
pub fn knf_fin(m: &BigUint, k: u64, cap: u64) -> Result<AckNf, NfError> {
    check_input(m, k, cap)?;
    let table = fin_table(k, cap);
    let a = table.iter().rposition(|v| v <= m).expect("A_0(k,0) = 1 <= m");
    finish(OrdE0::nat(a as u64), k, m)
}

/// k-normal form with an ordinal index, maximal over `ncount <= ncap`.
pub fn knf_ord(m: &BigUint, k: u64, ncap: u64, cap: u64) -> Result<AckNf, NfError> {
    check_input(m, k, cap)?;
    let table = ord_table(k, ncap, cap);
    let (index, _) = table.iter().find(|(_, v)| v <= m).expect("A_0(k,0) = 1 <= m");
    let succ = index.succ();
    if let Some(v) = Ackermann::shared().eval(&succ, k, &BigUint::zero(), cap) {
        if &v <= m {
            return Err(NfError::CertificationImpossible(format!("A_{succ}({k},0) <= {m}")));
        }
    }
    finish(index.clone(), k, m)
}

pub fn knf(m: &BigUint, k: u64, part: Part, cap: u64) -> Result<AckNf, NfError> {
    match part {
        Part::One => knf_fin(m, k, cap),
        Part::Two => knf_ord(m, k, DEFAULT_NCAP, cap),
    }
}

/// Hereditary normal form: index, argument and coefficients decomposed recursively.
pub fn hereditary(m: &BigUint, k: u64, part: Part, cap: u64) -> Result<AckTerm, NfError> {
    if m.is_zero() {
        return Ok(AckTerm::Zero);
    }
    let nf = knf(m, k, part, cap)?;
    let index = match part {
        Part::One => Index::Nat(hereditary(&BigUint::from(nf.index.as_nat().unwrap()), k, part, cap)?),
        Part::Two => Index::Ord(MixedOrd::from_e0(&nf.index, k, cap)?),
    };
    Ok(AckTerm::node(k, index, hereditary(&nf.b, k, part, cap)?, nf.l))
}

pub fn hereditary_u64(m: u64, k: u64, part: Part, cap: u64) -> Result<AckTerm, NfError> {
    hereditary(&BigUint::from(m), k, part, cap)
}

pub fn classify_type(m: u64, k: u64, cap: u64) -> Result<KType, NfError> {
    let nf = knf_fin(&BigUint::from(m), k, cap)?;
    Ok(if nf.index.is_zero() || nf.l > 0 { KType::SuccessorType } else { KType::LimitType })
}

pub fn eval_term(t: &AckTerm, cap: u64) -> BudgetedNat {
    match t.eval(cap) {
        Some(v) => BudgetedNat::new(v, cap),
        None => BudgetedNat::exceeded(cap),
    }
}
