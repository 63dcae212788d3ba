//! Buchholz-style notations: `OT` built from `ψ` and `Ω`, and the variant `OT'` built from `Ψ`.
//!
//! A term is an Ω-polynomial `Ω^{e_1}·c_1 + … + Ω^{e_n}·c_n` with strictly
//! decreasing exponents and countable coefficients. A countable term is a
//! decreasing sum of additive principal pieces `ω^e`, `ψ(α)` or `Ψ(α)`, each
//! with a multiplicity. `ψ` of an Ω-free argument is stored as `ω^arg`, so a
//! `ψ` node always has an argument of size at least Ω unless built raw.
//!
//! The `Ψ` fragment is only meant for sums `Ψ(δ) + ω·b + l`; in that shape a
//! `Ψ` piece sits above every `ω^e` piece that can follow it.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ordinal_e0::{add_e0, check_canonical, fund_e0, Cursor, OrdE0, ParseError, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HbTerm {
    terms: Vec<OmegaTerm>,
}

/// `Ω^exp · coeff`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaTerm {
    pub exp: HbTerm,
    pub coeff: Countable,
}

/// Countable sum of principal pieces with multiplicities, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Countable {
    comps: Vec<(Principal, u64)>,
}

/// Variant order matters: `ω^e < ψ(α)` always, and `Ψ(δ)` sits above the `ω`
/// pieces of its tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Principal {
    Omega(OrdE0),
    Psi(HbTerm),
    UPsi(HbTerm),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cof {
    Zero,
    Successor,
    CofOmega,
    CofUncountable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    OT,
    OTPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HbError {
    #[error("term is not countable")]
    NotCountable,
    #[error("term contains Ψ")]
    ContainsUPsi,
}

impl Countable {
    pub fn zero() -> Self {
        Countable { comps: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        Self::from_e0(&OrdE0::nat(n))
    }

    pub fn from_e0(a: &OrdE0) -> Self {
        Countable { comps: a.terms().iter().map(|t| (Principal::Omega(t.exp.clone()), t.coeff)).collect() }
    }

    pub fn single(p: Principal, n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Countable { comps: vec![(p, n)] }
    }

    pub fn comps(&self) -> &[(Principal, u64)] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.comps.as_slice() {
            [] => Some(0),
            [(Principal::Omega(e), n)] if e.is_zero() => Some(*n),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_nat() == Some(1)
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.comps.last(), Some((Principal::Omega(e), _)) if e.is_zero())
    }

    /// Predecessor and the removed unit, for successors.
    pub fn pred(&self) -> Option<Countable> {
        if !self.is_successor() {
            return None;
        }
        Some(self.drop_one())
    }

    /// Removes one copy of the last piece.
    fn drop_one(&self) -> Countable {
        let mut comps = self.comps.clone();
        let last = comps.last_mut().unwrap();
        last.1 -= 1;
        if last.1 == 0 {
            comps.pop();
        }
        Countable { comps }
    }

    pub fn add(&self, other: &Countable) -> Countable {
        let Some((head, n)) = other.comps.first() else {
            return self.clone();
        };
        let mut comps: Vec<(Principal, u64)> = self.comps.iter().take_while(|(p, _)| p > head).cloned().collect();
        let same = self.comps.iter().find(|(p, _)| p == head).map_or(0, |(_, m)| *m);
        comps.push((head.clone(), n.saturating_add(same)));
        comps.extend(other.comps[1..].iter().cloned());
        Countable { comps }
    }

    /// Left multiplication by ω.
    pub fn omega_times(&self) -> Countable {
        let comps = self
            .comps
            .iter()
            .map(|(p, n)| match p {
                Principal::Omega(e) => (Principal::Omega(add_e0(&OrdE0::one(), e)), *n),
                other => (other.clone(), *n),
            })
            .collect();
        Countable { comps }
    }

    pub fn cofinality(&self) -> Cof {
        match self.comps.last() {
            None => Cof::Zero,
            Some((Principal::Omega(e), _)) if e.is_zero() => Cof::Successor,
            Some(_) => Cof::CofOmega,
        }
    }

    pub fn to_hb(&self) -> HbTerm {
        HbTerm::countable(self.clone())
    }
}

impl HbTerm {
    pub fn zero() -> Self {
        HbTerm { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        Self::countable(Countable::nat(n))
    }

    pub fn countable(c: Countable) -> Self {
        Self::monomial(HbTerm::zero(), c)
    }

    pub fn from_e0(a: &OrdE0) -> Self {
        Self::countable(Countable::from_e0(a))
    }

    /// `Ω`.
    pub fn big_omega() -> Self {
        Self::omega_pow(HbTerm::nat(1))
    }

    /// `Ω^e`.
    pub fn omega_pow(e: HbTerm) -> Self {
        Self::monomial(e, Countable::nat(1))
    }

    /// `Ω^e · c`, zero when `c` is zero.
    pub fn monomial(e: HbTerm, c: Countable) -> Self {
        if c.is_zero() {
            return HbTerm::zero();
        }
        HbTerm { terms: vec![OmegaTerm { exp: e, coeff: c }] }
    }

    /// `Ω_r`: `Ω_1 = Ω`, `Ω_{r+1} = Ω^{Ω_r}`.
    pub fn omega_tower(r: u32) -> Self {
        let mut a = HbTerm::nat(1);
        for _ in 0..r {
            a = HbTerm::omega_pow(a);
        }
        a
    }

    /// `ψ(arg)`, written as `ω^arg` when `arg` is Ω-free.
    pub fn psi(arg: HbTerm) -> Self {
        Self::countable(Countable::single(psi_principal(arg), 1))
    }

    /// `ψ(arg)` without normalization; for building non-canonical terms.
    pub fn psi_raw(arg: HbTerm) -> Self {
        Self::countable(Countable::single(Principal::Psi(arg), 1))
    }

    /// `Ψ(arg)`, with `Ψ(0) = 0`.
    pub fn upsi(arg: HbTerm) -> Self {
        if arg.is_zero() {
            return HbTerm::zero();
        }
        Self::countable(Countable::single(Principal::UPsi(arg), 1))
    }

    pub fn terms(&self) -> &[OmegaTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The countable coefficient of `Ω^0`, if the term is below Ω.
    pub fn as_countable(&self) -> Option<&Countable> {
        match self.terms.as_slice() {
            [] => Some(EMPTY.get_or_init(Countable::zero)),
            [t] if t.exp.is_zero() => Some(&t.coeff),
            _ => None,
        }
    }

    pub fn is_countable(&self) -> bool {
        self.as_countable().is_some()
    }

    pub fn as_nat(&self) -> Option<u64> {
        self.as_countable()?.as_nat()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero() && t.coeff.is_successor())
    }

    pub fn pred(&self) -> Option<HbTerm> {
        let last = self.terms.last()?;
        if !last.exp.is_zero() {
            return None;
        }
        let c = last.coeff.pred()?;
        let mut terms = self.terms[..self.terms.len() - 1].to_vec();
        if !c.is_zero() {
            terms.push(OmegaTerm { exp: HbTerm::zero(), coeff: c });
        }
        Some(HbTerm { terms })
    }

    /// True when no Ω occurs anywhere in the term.
    pub fn is_omega_free(&self) -> bool {
        match self.as_countable() {
            Some(c) => c.comps.iter().all(|(p, _)| match p {
                Principal::Omega(_) => true,
                Principal::Psi(a) | Principal::UPsi(a) => a.is_omega_free(),
            }),
            None => false,
        }
    }

    pub fn contains_upsi(&self) -> bool {
        self.terms.iter().any(|t| {
            t.exp.contains_upsi()
                || t.coeff.comps.iter().any(|(p, _)| match p {
                    Principal::Omega(_) => false,
                    Principal::Psi(a) => a.contains_upsi(),
                    Principal::UPsi(_) => true,
                })
        })
    }

    pub fn contains_psi(&self) -> bool {
        self.terms.iter().any(|t| {
            t.exp.contains_psi()
                || t.coeff.comps.iter().any(|(p, _)| match p {
                    Principal::Omega(_) => false,
                    Principal::Psi(_) => true,
                    Principal::UPsi(a) => a.contains_psi(),
                })
        })
    }

    /// Which notation system the term belongs to; `None` if it mixes `ψ` and `Ψ`.
    pub fn system(&self) -> Option<System> {
        match (self.contains_psi(), self.contains_upsi()) {
            (_, false) => Some(System::OT),
            (false, true) => Some(System::OTPrime),
            (true, true) => None,
        }
    }
}

static EMPTY: std::sync::OnceLock<Countable> = std::sync::OnceLock::new();

fn psi_principal(arg: HbTerm) -> Principal {
    if arg.is_omega_free() && !arg.contains_psi_or_upsi() {
        let e = hb_eval_countable(&arg).expect("Ω-free");
        return Principal::Omega(e);
    }
    Principal::Psi(arg)
}

impl HbTerm {
    fn contains_psi_or_upsi(&self) -> bool {
        self.contains_psi() || self.contains_upsi()
    }
}

pub fn cmp_hb(s: &HbTerm, t: &HbTerm) -> std::cmp::Ordering {
    s.cmp(t)
}

pub fn hb_add(s: &HbTerm, t: &HbTerm) -> HbTerm {
    let Some(head) = t.terms.first() else {
        return s.clone();
    };
    let mut terms: Vec<OmegaTerm> = s.terms.iter().take_while(|x| x.exp > head.exp).cloned().collect();
    match s.terms.iter().find(|x| x.exp == head.exp) {
        Some(same) => terms.push(OmegaTerm { exp: head.exp.clone(), coeff: same.coeff.add(&head.coeff) }),
        None => terms.push(head.clone()),
    }
    terms.extend(t.terms[1..].iter().cloned());
    HbTerm { terms }
}

/// `-m + t`.
pub fn hb_nsub(m: u64, t: &HbTerm) -> HbTerm {
    match t.as_nat() {
        Some(n) => HbTerm::nat(n.saturating_sub(m)),
        None => t.clone(),
    }
}

/// Value of an Ω-free, Ψ-free term, reading `ψ(a)` as `ω^a`.
pub fn hb_eval_countable(t: &HbTerm) -> Result<OrdE0, HbError> {
    let c = t.as_countable().ok_or(HbError::NotCountable)?;
    let mut acc = OrdE0::zero();
    for (p, n) in &c.comps {
        let e = match p {
            Principal::Omega(e) => e.clone(),
            Principal::Psi(a) => hb_eval_countable(a)?,
            Principal::UPsi(_) => return Err(HbError::ContainsUPsi),
        };
        acc = add_e0(&acc, &OrdE0::monomial(e, *n));
    }
    Ok(acc)
}

/// Like [`hb_eval_countable`], additionally reading `Ψ(δ)` as `ω²·δ` for Ω-free `δ`.
pub fn hb_eval_countable_prime(t: &HbTerm) -> Result<OrdE0, HbError> {
    let c = t.as_countable().ok_or(HbError::NotCountable)?;
    let mut acc = OrdE0::zero();
    for (p, n) in &c.comps {
        let piece = match p {
            Principal::Omega(e) => OrdE0::monomial(e.clone(), *n),
            Principal::Psi(a) => OrdE0::monomial(hb_eval_countable_prime(a)?, *n),
            Principal::UPsi(a) => {
                let d = hb_eval_countable_prime(a)?.omega_n_times(2);
                (0..*n).fold(OrdE0::zero(), |s, _| add_e0(&s, &d))
            }
        };
        acc = add_e0(&acc, &piece);
    }
    Ok(acc)
}

/// Arguments of `ψ`/`Ψ` collected hereditarily; `1` counts as `ψ0` and `ω^e` as `ψe`.
pub fn g_set(t: &HbTerm) -> BTreeSet<HbTerm> {
    let mut out = BTreeSet::new();
    collect_g(t, &mut out);
    out
}

fn collect_g(t: &HbTerm, out: &mut BTreeSet<HbTerm>) {
    for term in &t.terms {
        collect_g(&term.exp, out);
        for (p, _) in &term.coeff.comps {
            match p {
                Principal::Omega(e) => {
                    let arg = HbTerm::from_e0(e);
                    collect_g(&arg, out);
                    out.insert(arg);
                }
                Principal::Psi(a) | Principal::UPsi(a) => {
                    collect_g(a, out);
                    out.insert(a.clone());
                }
            }
        }
    }
}

/// `ψα` (or `Ψα`) is in normal form iff every element of `Gα` is below `α`.
pub fn is_psi_nf(t: &HbTerm) -> bool {
    match principal_of(t) {
        Some(Principal::Psi(a)) | Some(Principal::UPsi(a)) => arg_is_nf(a),
        _ => false,
    }
}

fn principal_of(t: &HbTerm) -> Option<&Principal> {
    match t.as_countable()?.comps.as_slice() {
        [(p, 1)] => Some(p),
        _ => None,
    }
}

fn arg_is_nf(a: &HbTerm) -> bool {
    g_set(a).iter().all(|g| g < a)
}

/// Every `ψ`/`Ψ` node passes the G-test, `ψ` nodes carry Ω-sized arguments,
/// `Ψ` arguments are positive, and the sums are ordered.
pub fn is_nf(t: &HbTerm) -> bool {
    let ordered =
        t.terms.windows(2).all(|w| w[0].exp > w[1].exp) && t.terms.iter().all(|x| !x.coeff.is_zero() && x.coeff.comps.windows(2).all(|w| w[0].0 > w[1].0));
    ordered
        && t.terms.iter().all(|x| {
            is_nf(&x.exp)
                && x.coeff.comps.iter().all(|(p, n)| {
                    *n > 0
                        && match p {
                            Principal::Omega(_) => true,
                            Principal::Psi(a) => !a.is_omega_free() && is_nf(a) && arg_is_nf(a),
                            Principal::UPsi(a) => !a.is_zero() && is_nf(a) && arg_is_nf(a),
                        }
                })
        })
}

pub fn cofinality(t: &HbTerm) -> Cof {
    match t.terms.last() {
        None => Cof::Zero,
        Some(last) if last.exp.is_zero() => last.coeff.cofinality(),
        Some(last) if !last.coeff.is_successor() => Cof::CofOmega,
        Some(last) => match cofinality(&last.exp) {
            Cof::Successor => Cof::CofUncountable,
            c => c,
        },
    }
}

/// `t[x]` for a natural `x`.
pub fn fund_hb(t: &HbTerm, x: u64) -> HbTerm {
    fund_at(t, &Countable::nat(x))
}

/// `t[ξ]`; `ξ` may be any countable term when `t` has cofinality Ω and must
/// be a natural otherwise.
pub fn fund_at(t: &HbTerm, xi: &Countable) -> HbTerm {
    let Some(last) = t.terms.last() else {
        return HbTerm::zero();
    };
    let mut terms = t.terms[..t.terms.len() - 1].to_vec();
    if last.exp.is_zero() {
        let c = fund_countable(&last.coeff, xi);
        if !c.is_zero() {
            terms.push(OmegaTerm { exp: HbTerm::zero(), coeff: c });
        }
        return HbTerm { terms };
    }
    if !last.coeff.is_successor() {
        let c = fund_countable(&last.coeff, xi);
        if !c.is_zero() {
            terms.push(OmegaTerm { exp: last.exp.clone(), coeff: c });
        }
        return HbTerm { terms };
    }
    let c0 = last.coeff.pred().unwrap();
    if !c0.is_zero() {
        terms.push(OmegaTerm { exp: last.exp.clone(), coeff: c0 });
    }
    let head = HbTerm { terms };
    let tail = match last.exp.pred() {
        Some(e0) => HbTerm::monomial(e0, xi.clone()),
        None => HbTerm::omega_pow(fund_at(&last.exp, xi)),
    };
    hb_add(&head, &tail)
}

fn nat_arg(xi: &Countable) -> u64 {
    xi.as_nat().expect("fundamental sequences of countable cofinality take natural arguments")
}

fn fund_countable(c: &Countable, xi: &Countable) -> Countable {
    let Some((p, _)) = c.comps.last() else {
        return Countable::zero();
    };
    let rest = c.drop_one();
    let piece = match p {
        Principal::Omega(e) if e.is_zero() => return rest,
        Principal::Omega(e) => Countable::from_e0(&fund_e0(&OrdE0::omega_pow(e.clone()), nat_arg(xi))),
        Principal::Psi(a) => collapse_fund(a, xi, HbTerm::psi, |pred, x| Countable::single(psi_principal(pred), x)),
        Principal::UPsi(a) => collapse_fund(a, xi, HbTerm::upsi, |pred, x| {
            let head = HbTerm::upsi(pred).as_countable().unwrap().clone();
            head.add(&Countable::single(Principal::Omega(OrdE0::one()), x))
        }),
    };
    rest.add(&piece)
}

/// Shared clauses for `ψ` and `Ψ`: successor arguments via `succ_case`,
/// countable-cofinality arguments pointwise, and cofinality-Ω arguments by
/// iterating `λ_{l+1} = λ[collapse(λ_l)]` from `λ[0]`.
fn collapse_fund(a: &HbTerm, xi: &Countable, collapse: fn(HbTerm) -> HbTerm, succ_case: impl Fn(HbTerm, u64) -> Countable) -> Countable {
    let as_countable = |t: HbTerm| t.as_countable().expect("collapsed terms are countable").clone();
    match cofinality(a) {
        Cof::Zero => Countable::zero(),
        Cof::Successor => succ_case(a.pred().unwrap(), nat_arg(xi)),
        Cof::CofOmega => as_countable(collapse(fund_at(a, xi))),
        Cof::CofUncountable => {
            let x = nat_arg(xi);
            let mut lam = fund_at(a, &Countable::zero());
            for _ in 0..x {
                let c = as_countable(collapse(lam.clone()));
                lam = fund_at(a, &c);
            }
            as_countable(collapse(lam))
        }
    }
}

impl fmt::Display for HbTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            write!(f, "W")?;
            if t.exp.as_nat() != Some(1) {
                write!(f, "^({})", t.exp)?;
            }
            if !t.coeff.is_one() {
                if t.coeff.comps.len() > 1 {
                    write!(f, "*({})", t.coeff)?;
                } else {
                    write!(f, "*{}", t.coeff)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Countable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, n)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match p {
                Principal::Omega(e) => {
                    write!(f, "{}", OrdE0::monomial(e.clone(), *n))?;
                    continue;
                }
                Principal::Psi(a) => write!(f, "p({a})")?,
                Principal::UPsi(a) => write!(f, "P({a})")?,
            }
            if *n != 1 {
                write!(f, "*{n}")?;
            }
        }
        Ok(())
    }
}

pub fn format_hb(t: &HbTerm) -> String {
    t.to_string()
}

pub fn parse_hb(s: &str) -> Result<HbTerm, ParseError> {
    let mut p = Cursor { s: s.as_bytes(), pos: 0 };
    let t = hb_expr(&mut p)?;
    if p.pos != s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    check_canonical(s, &t.to_string())?;
    Ok(t)
}

impl std::str::FromStr for HbTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hb(s)
    }
}

fn hb_expr(p: &mut Cursor) -> Result<HbTerm, ParseError> {
    let start = p.pos;
    if p.peek() == Some(b'0') && !p.s.get(p.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
        p.pos += 1;
        return Ok(HbTerm::zero());
    }
    let mut terms: Vec<OmegaTerm> = Vec::new();
    let mut countable: Vec<(Principal, u64)> = Vec::new();
    loop {
        if p.eat(b'W') {
            if !countable.is_empty() {
                return Err(p.err("Ω-term after countable summand"));
            }
            let exp = if p.eat_str("^(") {
                let e = hb_expr(p)?;
                p.expect(b')')?;
                e
            } else {
                HbTerm::nat(1)
            };
            let coeff = if p.eat(b'*') {
                if p.eat(b'(') {
                    let c = countable_sum(p)?;
                    p.expect(b')')?;
                    c
                } else {
                    Countable { comps: vec![countable_summand(p)?] }
                }
            } else {
                Countable::nat(1)
            };
            terms.push(OmegaTerm { exp, coeff });
        } else {
            countable.push(countable_summand(p)?);
        }
        if !p.eat(b'+') {
            break;
        }
    }
    if !countable.is_empty() {
        terms.push(OmegaTerm { exp: HbTerm::zero(), coeff: Countable { comps: countable } });
    }
    let ordered = terms.windows(2).all(|w| w[0].exp > w[1].exp) && terms.iter().all(|t| t.coeff.comps.windows(2).all(|w| w[0].0 > w[1].0));
    if !ordered {
        return Err(ParseError { pos: start, msg: "summands not strictly decreasing".into() });
    }
    Ok(HbTerm { terms })
}

fn countable_sum(p: &mut Cursor) -> Result<Countable, ParseError> {
    let mut comps = vec![countable_summand(p)?];
    while p.eat(b'+') {
        comps.push(countable_summand(p)?);
    }
    Ok(Countable { comps })
}

fn countable_summand(p: &mut Cursor) -> Result<(Principal, u64), ParseError> {
    let principal = if p.eat_str("p(") {
        let a = hb_expr(p)?;
        p.expect(b')')?;
        psi_principal(a)
    } else if p.eat_str("P(") {
        let a = hb_expr(p)?;
        p.expect(b')')?;
        Principal::UPsi(a)
    } else if p.eat(b'w') {
        let e = if p.eat_str("^(") {
            let e = p.e0_expr()?;
            p.expect(b')')?;
            e
        } else {
            OrdE0::one()
        };
        Principal::Omega(e)
    } else {
        let start = p.pos;
        let n = p.nat()?;
        if n == 0 {
            return Err(ParseError { pos: start, msg: "zero summand".into() });
        }
        return Ok((Principal::Omega(OrdE0::zero()), n));
    };
    let n = if p.eat(b'*') { p.nat()? } else { 1 };
    if n == 0 {
        return Err(p.err("zero multiplicity"));
    }
    Ok((principal, n))
}

/// Lifts a Cantor normal form: `ω^β·m + γ` becomes `Ω^{f β}·g(m) + f γ`.
pub fn lift_e0(a: &OrdE0, coeff: &impl Fn(u64) -> Countable) -> HbTerm {
    let terms = a.terms().iter().map(|Term { exp, coeff: c }| OmegaTerm { exp: lift_e0(exp, coeff), coeff: coeff(*c) }).collect();
    HbTerm { terms }
}

impl HbTerm {
    /// Builds from `Ω`-terms, merging equal exponents and checking the order.
    pub fn from_weak_terms(parts: impl IntoIterator<Item = OmegaTerm>) -> Option<HbTerm> {
        let mut out: Vec<OmegaTerm> = Vec::new();
        for t in parts {
            if t.coeff.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.exp == t.exp => {
                    let head = t.coeff.comps.first()?;
                    if last.coeff.comps.last().is_some_and(|(p, _)| p < &head.0) {
                        return None;
                    }
                    last.coeff = last.coeff.add(&t.coeff);
                }
                Some(last) if last.exp < t.exp => return None,
                _ => out.push(t),
            }
        }
        Some(HbTerm { terms: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HbTerm {
        parse_hb(s).unwrap()
    }

    fn big() -> HbTerm {
        HbTerm::big_omega()
    }

    #[test]
    fn g_sets() {
        assert!(g_set(&HbTerm::zero()).is_empty());
        let g: Vec<_> = g_set(&HbTerm::psi(big())).into_iter().collect();
        assert_eq!(g, vec![HbTerm::zero(), big()]);
        let g: Vec<_> = g_set(&big()).into_iter().collect();
        assert_eq!(g, vec![HbTerm::zero()]);
    }

    #[test]
    fn psi_normal_forms() {
        assert!(is_psi_nf(&HbTerm::psi(big())));
        assert!(!is_psi_nf(&HbTerm::psi_raw(HbTerm::psi(big()))));
        assert!(is_psi_nf(&HbTerm::psi_raw(HbTerm::zero())));
        assert!(is_nf(&h("p(W^(W)+W*p(W))")));
        assert!(!is_nf(&h("p(p(W))")));
    }

    #[test]
    fn comparisons() {
        use std::cmp::Ordering::*;
        assert_eq!(cmp_hb(&HbTerm::psi(HbTerm::zero()), &HbTerm::psi(big())), Less);
        assert_eq!(cmp_hb(&HbTerm::psi(big()), &big()), Less);
        assert_eq!(cmp_hb(&h("W^(W)"), &h("W^(2)*5")), Greater);
        assert_eq!(cmp_hb(&h("p(W+1)"), &h("p(W)*7")), Greater);
        assert_eq!(cmp_hb(&h("w^(w^(w))"), &h("p(W)")), Less);
    }

    #[test]
    fn cofinalities() {
        assert_eq!(cofinality(&big()), Cof::CofUncountable);
        assert_eq!(cofinality(&HbTerm::psi(HbTerm::zero())), Cof::Successor);
        assert_eq!(cofinality(&HbTerm::psi(big())), Cof::CofOmega);
        assert_eq!(cofinality(&h("W*w")), Cof::CofOmega);
        assert_eq!(cofinality(&h("W^(w)")), Cof::CofOmega);
        assert_eq!(cofinality(&h("W^(W)")), Cof::CofUncountable);
        assert_eq!(cofinality(&HbTerm::zero()), Cof::Zero);
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(fund_hb(&HbTerm::psi(HbTerm::nat(1)), 3), HbTerm::nat(3));
        // Ω[0] = 0, Ω[ψ0] = 1, Ω[ψ1] = ψ1 = ω
        let psi_psi_1 = HbTerm::psi(HbTerm::psi(HbTerm::nat(1)));
        assert_eq!(fund_hb(&HbTerm::psi(big()), 2), psi_psi_1);
        assert_eq!(fund_hb(&HbTerm::psi(big()), 2).to_string(), "w^(w)");
        let a = h("W");
        let upsi = HbTerm::upsi(hb_add(&a, &HbTerm::nat(1)));
        assert_eq!(fund_hb(&upsi, 4), h("P(W)+w*4"));
        assert_eq!(fund_hb(&h("P(1)"), 2), h("w*2"));
        assert_eq!(fund_hb(&h("W^(2)"), 0), HbTerm::zero());
        assert_eq!(fund_at(&h("W^(2)*3"), &Countable::from_e0(&OrdE0::omega())), h("W^(2)*2+W*w"));
        assert_eq!(fund_hb(&h("p(W*2)"), 1), h("p(W+p(W))"));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(hb_add(&h("w"), &h("W^(W)")), h("W^(W)"));
        assert_eq!(hb_add(&h("W*3+w"), &h("W*2+1")), h("W*5+1"));
        assert_eq!(hb_nsub(2, &big()), big());
        assert_eq!(hb_nsub(2, &HbTerm::nat(5)), HbTerm::nat(3));
    }

    #[test]
    fn countable_values() {
        assert_eq!(hb_eval_countable(&HbTerm::psi_raw(HbTerm::zero())), Ok(OrdE0::one()));
        let w = HbTerm::from_e0(&OrdE0::omega());
        assert_eq!(hb_eval_countable(&HbTerm::psi_raw(w)).unwrap().to_string(), "w^(w)");
        let w3 = HbTerm::from_e0(&"w+3".parse().unwrap());
        assert_eq!(hb_eval_countable(&HbTerm::psi_raw(w3)).unwrap().to_string(), "w^(w+3)");
        assert_eq!(hb_eval_countable(&big()), Err(HbError::NotCountable));
        assert_eq!(hb_eval_countable_prime(&h("P(3)+w+2")).unwrap().to_string(), "w^(2)*3+w+2");
    }

    #[test]
    fn grammar() {
        for s in ["p(W)", "W^(W)", "P(W)+w*2+1", "W^(W+1)*(w+1)+W*p(W)*2+7", "0", "W*3", "p(W)*2+w^(w)"] {
            assert_eq!(h(s).to_string(), s);
        }
        assert!(parse_hb("p(w)").is_err());
        assert!(parse_hb("p(0)").is_err());
        assert!(parse_hb("1+W").is_err());
        assert!(parse_hb("W^(1)").is_err());
        assert!(parse_hb("W*(3)").is_err());
    }

    #[test]
    fn towers() {
        assert_eq!(HbTerm::omega_tower(1).to_string(), "W");
        assert_eq!(HbTerm::omega_tower(3).to_string(), "W^(W^(W))");
    }
}
