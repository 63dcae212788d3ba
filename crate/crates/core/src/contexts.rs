//! Ordinal contexts `λ[[·]]` with a single hole, their truncations `λ*`, and
//! the decompositions built from them.

use std::fmt;

use thiserror::Error;

use crate::buchholz::{Countable, HbTerm, OmegaTerm};
use crate::normal_form::KType;
use crate::ordinal_e0::{add_e0, fund_e0, OrdE0, Term};

/// One level of nesting: `before + ω^[inner]·coeff + after`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub before: Vec<Term>,
    pub coeff: u64,
    pub after: Vec<Term>,
}

/// Context as a hole path. `frames` runs from the outermost sum inwards;
/// the hole itself sits between `before` and `after` of the innermost sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct E0Context {
    pub frames: Vec<Frame>,
    pub before: Vec<Term>,
    pub after: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarResult {
    SuccessorCase,
    BelowFirst,
    ContextCase { lambda: E0Context, gamma: OrdE0, r: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("filler breaks the Cantor normal form")]
    InvalidFiller,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

impl E0Context {
    /// The bare hole `[[·]]`.
    pub fn hole() -> Self {
        Self::default()
    }

    pub fn slot(before: Vec<Term>, after: Vec<Term>) -> Self {
        E0Context { frames: Vec::new(), before, after }
    }

    /// Wraps `inner` as `before + ω^{inner}·coeff + after`.
    pub fn nest(before: Vec<Term>, coeff: u64, after: Vec<Term>, inner: E0Context) -> Self {
        let mut frames = vec![Frame { before, coeff, after }];
        frames.extend(inner.frames);
        E0Context { frames, before: inner.before, after: inner.after }
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }
}

pub fn subst(c: &E0Context, filler: &OrdE0) -> Result<OrdE0, ContextError> {
    let parts = c.before.iter().cloned().chain(filler.terms().iter().cloned()).chain(c.after.iter().cloned());
    let mut acc = OrdE0::from_weak_terms(parts).ok_or(ContextError::InvalidFiller)?;
    for f in c.frames.iter().rev() {
        let inner = Term { exp: acc, coeff: f.coeff };
        let parts = f.before.iter().cloned().chain(std::iter::once(inner)).chain(f.after.iter().cloned());
        acc = OrdE0::from_weak_terms(parts).ok_or(ContextError::InvalidFiller)?;
    }
    Ok(acc)
}

/// Cuts off everything after the hole, hereditarily.
pub fn truncate(c: &E0Context) -> E0Context {
    E0Context {
        frames: c.frames.iter().map(|f| Frame { before: f.before.clone(), coeff: f.coeff, after: Vec::new() }).collect(),
        before: c.before.clone(),
        after: Vec::new(),
    }
}

/// Fills a context after mapping every piece `ω^e·c` to `Ω^{lift e}·coeff(c)`.
pub fn fill_lifted(c: &E0Context, lift: &dyn Fn(&OrdE0) -> HbTerm, coeff: &dyn Fn(u64) -> Countable, filler: &HbTerm) -> Option<HbTerm> {
    let piece = |t: &Term| OmegaTerm { exp: lift(&t.exp), coeff: coeff(t.coeff) };
    let parts: Vec<OmegaTerm> = c.before.iter().map(piece).chain(filler.terms().iter().cloned()).chain(c.after.iter().map(piece)).collect();
    let mut acc = HbTerm::from_weak_terms(parts)?;
    for f in c.frames.iter().rev() {
        let inner = OmegaTerm { exp: acc, coeff: coeff(f.coeff) };
        let parts: Vec<OmegaTerm> = f.before.iter().map(piece).chain(std::iter::once(inner)).chain(f.after.iter().map(piece)).collect();
        acc = HbTerm::from_weak_terms(parts)?;
    }
    Some(acc)
}

/// Case analysis for `a < b`: `b = a+1`, `a < b[1]`, or
/// `a = λ[[ω^γ·r]]` with `b = λ*[[ω^{γ+1}]]`.
pub fn star_decompose(a: &OrdE0, b: &OrdE0) -> Result<StarResult, ContextError> {
    if a >= b {
        return Err(ContextError::PreconditionViolated(format!("{a} is not below {b}")));
    }
    if a.succ() == *b {
        return Ok(StarResult::SuccessorCase);
    }
    if a < &fund_e0(b, 1) {
        return Ok(StarResult::BelowFirst);
    }
    Ok(context_case(a, b).unwrap_or(StarResult::BelowFirst))
}

fn context_case(a: &OrdE0, b: &OrdE0) -> Option<StarResult> {
    // b = P + ω^B and a = P + ω^A·s + ξ with A < B
    let last = b.terms().last()?;
    let big_b = last.exp.clone();
    let mut prefix = b.terms()[..b.terms().len() - 1].to_vec();
    if last.coeff > 1 {
        prefix.push(Term { exp: big_b.clone(), coeff: last.coeff - 1 });
    }
    if a.terms().len() <= prefix.len() || a.terms()[..prefix.len()] != prefix[..] {
        return None;
    }
    let rest = &a.terms()[prefix.len()..];
    let small_a = rest[0].exp.clone();
    let s = rest[0].coeff;
    let xi = rest[1..].to_vec();
    match big_b.pred() {
        Some(d) if d == small_a => Some(StarResult::ContextCase { lambda: E0Context::slot(prefix, xi), gamma: small_a, r: s }),
        Some(_) => None,
        None => match context_case(&small_a, &big_b)? {
            StarResult::ContextCase { lambda: mu, gamma, r } => {
                let mut after = Vec::new();
                if s > 1 {
                    after.push(Term { exp: small_a, coeff: s - 1 });
                }
                after.extend(xi);
                Some(StarResult::ContextCase { lambda: E0Context::nest(prefix, 1, after, mu), gamma, r })
            }
            _ => None,
        },
    }
}

/// `β + q` with `β` zero or a limit and `q` a positive natural.
fn finite_tail(a: &OrdE0) -> Option<u64> {
    a.terms().last().filter(|t| t.exp.is_zero()).map(|t| t.coeff)
}

/// The context `λ_k(α)` with `λ_k(α)[[ω^γ·p]] = α`.
pub fn lambda_context(a: &OrdE0, k: u64, classify: &dyn Fn(u64) -> KType) -> Result<(E0Context, OrdE0, u64), ContextError> {
    if a.is_zero() {
        return Err(ContextError::PreconditionViolated("zero has no context".into()));
    }
    if finite_tail(a).is_some_and(|q| classify(q) == KType::SuccessorType) {
        return Err(ContextError::PreconditionViolated(format!("{a} ends in a {k}-successor-type natural")));
    }
    let terms = a.terms();
    let last = terms.last().unwrap();
    let head = terms[..terms.len() - 1].to_vec();
    let top = || Ok((E0Context::slot(head.clone(), Vec::new()), last.exp.clone(), last.coeff));
    if classify(last.coeff) == KType::LimitType {
        return top();
    }
    if finite_tail(&last.exp).is_some_and(|q| classify(q) == KType::SuccessorType) {
        return top();
    }
    let (inner, gamma, p) = lambda_context(&last.exp, k, classify)?;
    let mut before = head;
    if last.coeff > 1 {
        before.push(Term { exp: last.exp.clone(), coeff: last.coeff - 1 });
    }
    Ok((E0Context::nest(before, 1, Vec::new(), inner), gamma, p))
}

fn show(t: &Term) -> String {
    OrdE0::monomial(t.exp.clone(), t.coeff).to_string()
}

impl fmt::Display for E0Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut inner: Vec<String> = self.before.iter().map(show).collect();
        inner.push("[[_]]".into());
        inner.extend(self.after.iter().map(show));
        let mut s = inner.join("+");
        for fr in self.frames.iter().rev() {
            let mut parts: Vec<String> = fr.before.iter().map(show).collect();
            let mut piece = format!("w^({s})");
            if fr.coeff != 1 {
                piece.push_str(&format!("*{}", fr.coeff));
            }
            parts.push(piece);
            parts.extend(fr.after.iter().map(show));
            s = parts.join("+");
        }
        write!(f, "{s}")
    }
}

/// `λ*[[ω^γ·(r+1)]]`, the strict upper bound from the star lemma.
/// Every way of writing `a = λ[[ω^γ·r]]`: the hole covers a whole
/// coefficient group, either at the top or inside the exponent of one copy.
pub fn contexts_of(a: &OrdE0) -> Vec<(E0Context, OrdE0, u64)> {
    let terms = a.terms();
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let before = terms[..i].to_vec();
        let after = terms[i + 1..].to_vec();
        out.push((E0Context::slot(before.clone(), after.clone()), t.exp.clone(), t.coeff));
        for (inner, gamma, r) in contexts_of(&t.exp) {
            let mut rest = Vec::new();
            if t.coeff > 1 {
                rest.push(Term { exp: t.exp.clone(), coeff: t.coeff - 1 });
            }
            rest.extend(after.iter().cloned());
            out.push((E0Context::nest(before.clone(), 1, rest, inner), gamma, r));
        }
    }
    out
}

pub fn star_bound(lambda: &E0Context, gamma: &OrdE0, r: u64) -> Result<OrdE0, ContextError> {
    subst(&truncate(lambda), &OrdE0::monomial(gamma.clone(), r + 1))
}

/// `λ*[[ω^{γ+1}]]`.
pub fn star_top(lambda: &E0Context, gamma: &OrdE0) -> Result<OrdE0, ContextError> {
    subst(&truncate(lambda), &OrdE0::omega_pow(add_e0(gamma, &OrdE0::one())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ackermann::DEFAULT_CAP_BITS;
    use crate::normal_form::classify_type;
    use crate::ordinal_e0::enumerate_e0;

    fn o(s: &str) -> OrdE0 {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Vec<Term> {
        o(s).into_terms()
    }

    fn k3(m: u64) -> KType {
        classify_type(m, 3, DEFAULT_CAP_BITS).unwrap()
    }

    #[test]
    fn substitution() {
        assert_eq!(subst(&E0Context::hole(), &o("w*2")).unwrap(), o("w*2"));
        assert_eq!(subst(&E0Context::slot(t("w^(2)"), vec![]), &o("w*3")).unwrap(), o("w^(2)+w*3"));
        let c = E0Context::nest(vec![], 1, vec![], E0Context::slot(t("w"), vec![]));
        assert_eq!(subst(&c, &o("2")).unwrap(), o("w^(w+2)"));
        assert_eq!(subst(&E0Context::slot(t("w"), vec![]), &o("w^(2)")), Err(ContextError::InvalidFiller));
    }

    #[test]
    fn truncation() {
        assert_eq!(truncate(&E0Context::hole()), E0Context::hole());
        let c = E0Context::slot(t("w^(2)"), t("w"));
        assert_eq!(truncate(&c).to_string(), "w^(2)+[[_]]");
        let c = E0Context::nest(vec![], 1, t("5"), E0Context::slot(t("w"), t("1")));
        assert_eq!(c.to_string(), "w^(w+[[_]]+1)+5");
        assert_eq!(truncate(&c).to_string(), "w^(w+[[_]])");
        assert_eq!(truncate(&truncate(&c)), truncate(&c));
    }

    #[test]
    fn star_cases() {
        assert_eq!(star_decompose(&o("5"), &o("6")).unwrap(), StarResult::SuccessorCase);
        assert_eq!(star_decompose(&o("w*2"), &o("w^(2)")).unwrap(), StarResult::ContextCase { lambda: E0Context::hole(), gamma: o("1"), r: 2 });
        assert_eq!(star_decompose(&o("w"), &o("w^(2)+w")).unwrap(), StarResult::BelowFirst);
        assert!(star_decompose(&o("w"), &o("w")).is_err());
    }

    #[test]
    fn star_round_trip_exhaustive() {
        let all = enumerate_e0(5);
        let mut contexts = 0;
        for (i, b) in all.iter().enumerate() {
            for a in &all[..i] {
                match star_decompose(a, b).unwrap() {
                    StarResult::SuccessorCase => assert_eq!(a.succ(), *b),
                    StarResult::BelowFirst => assert!(a < &fund_e0(b, 1)),
                    StarResult::ContextCase { lambda, gamma, r } => {
                        contexts += 1;
                        assert_eq!(subst(&lambda, &OrdE0::monomial(gamma.clone(), r)).unwrap(), *a);
                        assert_eq!(star_top(&lambda, &gamma).unwrap(), *b);
                        assert!(*a < star_bound(&lambda, &gamma, r).unwrap());
                    }
                }
            }
        }
        assert!(contexts > 0);
    }

    #[test]
    fn lambda_contexts() {
        let (c, g, p) = lambda_context(&o("w*3"), 3, &k3).unwrap();
        assert_eq!((c, g, p), (E0Context::hole(), o("1"), 3));
        assert!(lambda_context(&o("5"), 3, &k3).is_err());
        let (c, g, p) = lambda_context(&o("w^(w)*2"), 3, &k3).unwrap();
        assert_eq!(c.to_string(), "w^(w)+w^([[_]])");
        assert_eq!((g, p), (o("1"), 1));
        for a in enumerate_e0(6) {
            if let Ok((c, g, p)) = lambda_context(&a, 3, &k3) {
                assert_eq!(subst(&c, &OrdE0::monomial(g.clone(), p)).unwrap(), a);
                let ok = k3(p) == KType::LimitType || finite_tail(&g).is_some_and(|q| k3(q) == KType::SuccessorType);
                assert!(ok, "{a}");
            }
        }
    }

    #[test]
    fn all_decompositions_reconstruct() {
        let a: OrdE0 = "w^(w*2+1)*2+w+3".parse().unwrap();
        let cs = contexts_of(&a);
        assert_eq!(cs.len(), 7);
        for (c, g, r) in &cs {
            assert_eq!(subst(c, &OrdE0::monomial(g.clone(), *r)).unwrap(), a);
            assert!(star_top(c, g).unwrap() > a);
        }
    }
}
