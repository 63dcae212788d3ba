//! Ordinals below epsilon_0 in Cantor normal form.
//!
//! An [`OrdE0`] is a list of terms `w^e * c` with strictly decreasing
//! exponents. Because of that invariant the derived lexicographic order on
//! the term list coincides with the ordinal order.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// One summand `w^exp * coeff` of a Cantor normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exp: OrdE0,
    pub coeff: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrdE0 {
    terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeqL {
    Reached(u64),
    NotReached,
    BudgetExhausted,
}

impl OrdE0 {
    pub fn zero() -> Self {
        OrdE0 { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        OrdE0 { terms: vec![Term { exp: Self::zero(), coeff: n }] }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `w^e`.
    pub fn omega_pow(e: OrdE0) -> Self {
        OrdE0 { terms: vec![Term { exp: e, coeff: 1 }] }
    }

    /// `w^e * c`; zero when `c` is zero.
    pub fn monomial(e: OrdE0, c: u64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        OrdE0 { terms: vec![Term { exp: e, coeff: c }] }
    }

    /// `w_r`: `w_0 = 1`, `w_{r+1} = w^{w_r}`.
    pub fn omega_tower(r: u32) -> Self {
        let mut a = Self::one();
        for _ in 0..r {
            a = Self::omega_pow(a);
        }
        a
    }

    /// Builds from terms, checking the CNF invariants.
    pub fn from_terms(terms: Vec<Term>) -> Option<Self> {
        if terms.iter().any(|t| t.coeff == 0) {
            return None;
        }
        if terms.windows(2).any(|w| w[0].exp <= w[1].exp) {
            return None;
        }
        Some(OrdE0 { terms })
    }

    /// Sums `w^e * c` pieces that are weakly decreasing in `e`, merging equal
    /// exponents. Zero coefficients are dropped. `None` if some exponent rises.
    pub fn from_weak_terms(terms: impl IntoIterator<Item = Term>) -> Option<Self> {
        let mut out: Vec<Term> = Vec::new();
        for t in terms {
            if t.coeff == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.exp == t.exp => {
                    last.coeff = last.coeff.checked_add(t.coeff)?;
                }
                Some(last) if last.exp < t.exp => return None,
                _ => out.push(t),
            }
        }
        Some(OrdE0 { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<OrdE0> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        last.coeff -= 1;
        if last.coeff == 0 {
            terms.pop();
        }
        Some(OrdE0 { terms })
    }

    pub fn succ(&self) -> OrdE0 {
        add_e0(self, &Self::one())
    }

    /// Left multiplication `w^n * self`.
    pub fn omega_n_times(&self, n: u64) -> OrdE0 {
        let shift = OrdE0::nat(n);
        OrdE0 { terms: self.terms.iter().map(|t| Term { exp: add_e0(&shift, &t.exp), coeff: t.coeff }).collect() }
    }

    /// Leading exponent, or `None` for zero.
    pub fn lead_exp(&self) -> Option<&OrdE0> {
        self.terms.first().map(|t| &t.exp)
    }
}

pub fn cmp_e0(a: &OrdE0, b: &OrdE0) -> Ordering {
    a.cmp(b)
}

pub fn add_e0(a: &OrdE0, b: &OrdE0) -> OrdE0 {
    let Some(head) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<Term> = a.terms.iter().take_while(|t| t.exp > head.exp).cloned().collect();
    let mut rest = b.terms.iter();
    let first = rest.next().unwrap();
    match a.terms.iter().find(|t| t.exp == head.exp) {
        Some(same) => terms.push(Term { exp: head.exp.clone(), coeff: same.coeff.saturating_add(first.coeff) }),
        None => terms.push(first.clone()),
    }
    terms.extend(rest.cloned());
    OrdE0 { terms }
}

/// `-m + a`: unchanged when `a` is infinite, truncated subtraction otherwise.
pub fn nsub(m: u64, a: &OrdE0) -> OrdE0 {
    match a.as_nat() {
        Some(n) => OrdE0::nat(n.saturating_sub(m)),
        None => a.clone(),
    }
}

pub fn fund_e0(a: &OrdE0, x: u64) -> OrdE0 {
    let Some(last) = a.terms.last() else {
        return OrdE0::zero();
    };
    if last.exp.is_zero() {
        return a.pred().unwrap();
    }
    let mut terms = a.terms[..a.terms.len() - 1].to_vec();
    if last.coeff > 1 {
        terms.push(Term { exp: last.exp.clone(), coeff: last.coeff - 1 });
    }
    match last.exp.pred() {
        Some(d) => {
            if x > 0 {
                terms.push(Term { exp: d, coeff: x });
            }
        }
        None => terms.push(Term { exp: fund_e0(&last.exp, x), coeff: 1 }),
    }
    OrdE0 { terms }
}

/// Maximal coefficient, hereditarily.
pub fn mc_e0(a: &OrdE0) -> u64 {
    a.terms.iter().map(|t| t.coeff.max(mc_e0(&t.exp))).max().unwrap_or(0)
}

/// Number of occurrences of `w`, with coefficients counted as repetitions.
pub fn ncount(a: &OrdE0) -> u64 {
    a.terms.iter().map(|t| t.coeff.saturating_mul(1u64.saturating_add(ncount(&t.exp)))).fold(0u64, |s, v| s.saturating_add(v))
}

/// Decides `a >=_l b` by iterating `[l]` from `a`.
pub fn leq_l(a: &OrdE0, b: &OrdE0, l: u64, step_budget: u64) -> LeqL {
    let mut cur = a.clone();
    let mut steps = 0;
    loop {
        match cur.cmp(b) {
            Ordering::Equal => return LeqL::Reached(steps),
            Ordering::Less => return LeqL::NotReached,
            Ordering::Greater => {}
        }
        if steps == step_budget {
            return LeqL::BudgetExhausted;
        }
        cur = fund_e0(&cur, l);
        steps += 1;
    }
}

/// All ordinals with `ncount <= max_n`, in increasing order.
pub fn enumerate_e0(max_n: u64) -> Vec<OrdE0> {
    let mut by_weight: Vec<Vec<OrdE0>> = vec![vec![OrdE0::zero()]];
    for n in 1..=max_n {
        // principals w^e with 1 + N(e) <= n
        let mut principals: Vec<(OrdE0, u64)> = Vec::new();
        for (w, list) in by_weight.iter().enumerate() {
            for e in list {
                principals.push((e.clone(), w as u64 + 1));
            }
        }
        principals.sort_by(|x, y| y.0.cmp(&x.0));
        let mut exact = Vec::new();
        let mut stack: Vec<Term> = Vec::new();
        collect_weight(&principals, 0, n, &mut stack, &mut exact);
        by_weight.push(exact);
    }
    let mut all: Vec<OrdE0> = by_weight.into_iter().flatten().collect();
    all.sort();
    all
}

fn collect_weight(principals: &[(OrdE0, u64)], from: usize, remaining: u64, stack: &mut Vec<Term>, out: &mut Vec<OrdE0>) {
    if remaining == 0 {
        out.push(OrdE0::from_weak_terms(stack.iter().cloned()).unwrap());
        return;
    }
    for i in from..principals.len() {
        let (e, w) = &principals[i];
        if *w <= remaining {
            stack.push(Term { exp: e.clone(), coeff: 1 });
            collect_weight(principals, i, remaining - w, stack, out);
            stack.pop();
        }
    }
}

pub fn format_e0(a: &OrdE0) -> String {
    a.to_string()
}

impl fmt::Display for OrdE0 {
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
            write!(f, "w")?;
            if t.exp != OrdE0::one() {
                write!(f, "^({})", t.exp)?;
            }
            if t.coeff != 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for OrdE0 {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_e0(s)
    }
}

pub fn parse_e0(s: &str) -> Result<OrdE0, ParseError> {
    let mut p = Cursor { s: s.as_bytes(), pos: 0 };
    let a = p.expr()?;
    if p.pos != s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    check_canonical(s, &a.to_string())?;
    Ok(a)
}

pub(crate) fn check_canonical(input: &str, canonical: &str) -> Result<(), ParseError> {
    if input == canonical {
        return Ok(());
    }
    let pos = input.bytes().zip(canonical.bytes()).take_while(|(x, y)| x == y).count();
    Err(ParseError { pos, msg: format!("non-canonical form, expected `{canonical}`") })
}

pub(crate) struct Cursor<'a> {
    pub s: &'a [u8],
    pub pos: usize,
}

impl Cursor<'_> {
    pub fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    pub fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    pub fn eat_str(&mut self, t: &str) -> bool {
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    pub fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| ParseError { pos: start, msg: "number out of range".into() })
    }

    fn expr(&mut self) -> Result<OrdE0, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'0') && !self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            return Ok(OrdE0::zero());
        }
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        OrdE0::from_terms(terms).ok_or(ParseError { pos: start, msg: "exponents not strictly decreasing".into() })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.eat(b'w') {
            let exp = if self.eat_str("^(") {
                let e = self.expr()?;
                self.expect(b')')?;
                e
            } else {
                OrdE0::one()
            };
            let coeff = if self.eat(b'*') { self.nat()? } else { 1 };
            if coeff == 0 {
                return Err(self.err("zero coefficient"));
            }
            return Ok(Term { exp, coeff });
        }
        let start = self.pos;
        let n = self.nat()?;
        if n == 0 {
            return Err(ParseError { pos: start, msg: "zero summand".into() });
        }
        Ok(Term { exp: OrdE0::zero(), coeff: n })
    }

    pub fn e0_expr(&mut self) -> Result<OrdE0, ParseError> {
        self.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdE0 {
        parse_e0(s).unwrap()
    }

    #[test]
    fn comparisons() {
        assert_eq!(cmp_e0(&o("0"), &o("0")), Ordering::Equal);
        assert_eq!(cmp_e0(&o("w"), &o("w+1")), Ordering::Less);
        assert_eq!(cmp_e0(&o("w^(w)"), &o("w^(2)*5+w")), Ordering::Greater);
    }

    #[test]
    fn addition() {
        let a = o("w^(w)+w*3");
        assert_eq!(add_e0(&OrdE0::zero(), &a), a);
        assert_eq!(add_e0(&o("w"), &o("w^(w)")), o("w^(w)"));
        assert_eq!(add_e0(&o("w^(2)+w"), &o("w+1")), o("w^(2)+w*2+1"));
    }

    #[test]
    fn natural_subtraction() {
        assert_eq!(nsub(2, &o("w")), o("w"));
        assert_eq!(nsub(2, &o("5")), o("3"));
        assert_eq!(nsub(7, &o("5")), o("0"));
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(fund_e0(&o("w^(w)+4"), 9), o("w^(w)+3"));
        assert_eq!(fund_e0(&o("w^(w)"), 2), o("w^(2)"));
        assert_eq!(fund_e0(&o("w^(w+1)"), 2), o("w^(w)*2"));
        assert_eq!(fund_e0(&o("0"), 5), o("0"));
        assert_eq!(fund_e0(&o("w"), 0), o("0"));
        assert_eq!(fund_e0(&o("w*3"), 2), o("w*2+2"));
    }

    #[test]
    fn statistics() {
        assert_eq!(mc_e0(&o("0")), 0);
        assert_eq!(mc_e0(&o("w")), 1);
        assert_eq!(mc_e0(&o("w^(w)*3+5")), 5);
        assert_eq!(mc_e0(&o("w^(w*7)")), 7);
        assert_eq!(ncount(&o("0")), 0);
        assert_eq!(ncount(&o("3")), 3);
        assert_eq!(ncount(&o("w")), 2);
        assert_eq!(ncount(&o("w^(w)*2+w")), 8);
    }

    #[test]
    fn step_down() {
        let a = o("w^(w)+2");
        assert_eq!(leq_l(&a, &a, 1, 0), LeqL::Reached(0));
        assert_eq!(leq_l(&o("w"), &o("3"), 3, 10), LeqL::Reached(1));
        assert_eq!(leq_l(&o("w^(w)"), &o("w^(2)"), 2, 10), LeqL::Reached(1));
        assert_eq!(leq_l(&o("w"), &o("4"), 3, 10), LeqL::NotReached);
        assert_eq!(leq_l(&o("w"), &o("0"), 3, 2), LeqL::BudgetExhausted);
    }

    #[test]
    fn grammar() {
        for s in ["0", "w^(w)+w*2+1", "w^(w^(w))", "7", "w*3"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert!(parse_e0("w+w^(2)").is_err());
        assert!(parse_e0("w^(1)").is_err());
        assert!(parse_e0("w^(0)*3").is_err());
        assert!(parse_e0("w*1").is_err());
        assert!(parse_e0("w+0").is_err());
        assert!(parse_e0("05").is_err());
        assert!(parse_e0("w +1").is_err());
        assert_eq!(parse_e0("w+").unwrap_err().pos, 2);
    }

    #[test]
    fn tower_and_shifts() {
        assert_eq!(OrdE0::omega_tower(2).to_string(), "w^(w)");
        assert_eq!(o("w+3").omega_n_times(1), o("w^(2)+w*3"));
        assert_eq!(o("w^(w)+1").omega_n_times(2), o("w^(w)+w^(2)"));
    }

    #[test]
    fn enumeration_counts() {
        let all = enumerate_e0(4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|a| ncount(a) <= 4));
        // N=0:1, 1:1, 2:2, 3:4, 4:9
        assert_eq!(all.len(), 1 + 1 + 2 + 4 + 9);
    }
}
