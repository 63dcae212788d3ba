//! Ordinal assignments `ψ_k`, `χ_k`, `ξ_k` and the flat `ord` map.
//!
//! Part 1 lands below ε₀. Part 2 lands in `OT` for `ψ_k`, in `OT'` for `ξ_k`,
//! and below ε₀ for `χ_k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base_change::BcOp;
use crate::buchholz::{hb_add, hb_nsub, Countable, HbTerm};
use crate::normal_form::{hereditary, AckTerm, Index, MixedOrd, NfError, Part};
use crate::ordinal_e0::{add_e0, nsub, OrdE0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Map {
    Psi,
    Chi,
    Xi,
    /// `ord(m)`, paired with the iterated base change.
    Simple,
}

impl Map {
    pub const ALL: [Map; 4] = [Map::Psi, Map::Chi, Map::Xi, Map::Simple];

    pub fn name(self) -> &'static str {
        match self {
            Map::Psi => "psi",
            Map::Chi => "chi",
            Map::Xi => "xi",
            Map::Simple => "simple",
        }
    }

    /// The map whose value is invariant under `op`.
    pub fn paired(op: BcOp) -> Map {
        match op {
            BcOp::Prime => Map::Psi,
            BcOp::Second => Map::Chi,
            BcOp::First => Map::Xi,
            BcOp::Iter => Map::Simple,
        }
    }
}

impl fmt::Display for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Map {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Map::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown map `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignError {
    #[error("{0} does not fit a machine word")]
    Overflow(String),
    #[error("term belongs to the other part")]
    WrongPart,
    #[error(transparent)]
    Nf(#[from] NfError),
}

/// An assigned ordinal, either below ε₀ or a Buchholz-style term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ordinal {
    E0(OrdE0),
    Hb(HbTerm),
}

impl Ordinal {
    pub fn to_hb(&self) -> HbTerm {
        match self {
            Ordinal::E0(a) => HbTerm::from_e0(a),
            Ordinal::Hb(t) => t.clone(),
        }
    }

    pub fn as_e0(&self) -> Option<&OrdE0> {
        match self {
            Ordinal::E0(a) => Some(a),
            Ordinal::Hb(_) => None,
        }
    }

    pub fn as_hb(&self) -> Option<&HbTerm> {
        match self {
            Ordinal::E0(_) => None,
            Ordinal::Hb(t) => Some(t),
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ordinal::E0(a), Ordinal::E0(b)) => a.cmp(b),
            _ => self.to_hb().cmp(&other.to_hb()),
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::E0(a) => write!(f, "{a}"),
            Ordinal::Hb(t) => write!(f, "{t}"),
        }
    }
}

fn small(t: &AckTerm) -> Result<u64, AssignError> {
    t.eval_u64(64).ok_or_else(|| AssignError::Overflow(t.to_string()))
}

fn omega_times(a: &OrdE0) -> OrdE0 {
    a.omega_n_times(1)
}

fn one_plus(a: &OrdE0) -> OrdE0 {
    add_e0(&OrdE0::one(), a)
}

fn nat_index(t: &AckTerm) -> Result<&AckTerm, AssignError> {
    match &t.as_node().ok_or(AssignError::WrongPart)?.index {
        Index::Nat(a) => Ok(a),
        Index::Ord(_) => Err(AssignError::WrongPart),
    }
}

fn ord_index(t: &AckTerm) -> Result<&MixedOrd, AssignError> {
    match &t.as_node().ok_or(AssignError::WrongPart)?.index {
        Index::Ord(a) => Ok(a),
        Index::Nat(_) => Err(AssignError::WrongPart),
    }
}

fn is_one(a: &MixedOrd) -> bool {
    matches!(a.terms.as_slice(), [t] if t.exp.terms.is_empty() && t.coeff.is_one())
}

/// Part-1 assignment of a hereditary term.
pub fn assign_part1(map: Map, t: &AckTerm) -> Result<OrdE0, AssignError> {
    let Some(n) = t.as_node() else {
        return Ok(OrdE0::zero());
    };
    let a = nat_index(t)?;
    if a.is_zero() {
        return Ok(OrdE0::nat(small(&n.arg)? + 1));
    }
    let head = match map {
        Map::Simple => {
            let a = OrdE0::nat(small(a)?).omega_n_times(2);
            add_e0(&a, &omega_times(&OrdE0::nat(small(&n.arg)?)))
        }
        Map::Xi if a.is_one() => omega_times(&one_plus(&OrdE0::nat(small(&n.arg)?))),
        _ if a.is_one() => omega_times(&one_plus(&assign_part1(map, &n.arg)?)),
        Map::Psi | Map::Chi => {
            let e = match map {
                Map::Psi => nsub(2, &assign_part1(map, a)?),
                _ => OrdE0::nat(small(a)?.saturating_sub(2)),
            };
            let top = OrdE0::omega_pow(add_e0(&OrdE0::omega(), &e));
            add_e0(&top, &omega_times(&assign_part1(map, &n.arg)?))
        }
        Map::Xi => {
            let top = nsub(1, &assign_part1(map, a)?).omega_n_times(2);
            add_e0(&top, &omega_times(&OrdE0::nat(small(&n.arg)?)))
        }
    };
    Ok(add_e0(&head, &OrdE0::nat(n.rem)))
}

/// Part-2 assignment; `χ_k` and `ord` stay below ε₀.
pub fn assign_part2(map: Map, t: &AckTerm) -> Result<Ordinal, AssignError> {
    Ok(match map {
        Map::Psi => Ordinal::Hb(psi2(t)?),
        Map::Xi => Ordinal::Hb(xi2(t)?),
        Map::Chi => Ordinal::E0(chi2(t)?),
        Map::Simple => Ordinal::E0(ord_simple(t, Part::Two)?),
    })
}

/// Dispatches on the part of the term; zero is assigned zero.
pub fn assign(map: Map, t: &AckTerm) -> Result<Ordinal, AssignError> {
    match t.part() {
        None => Ok(Ordinal::E0(OrdE0::zero())),
        Some(Part::One) => assign_part1(map, t).map(Ordinal::E0),
        Some(Part::Two) => assign_part2(map, t),
    }
}

/// Assigns a number given in base `k`.
pub fn assign_num(map: Map, m: &BigUint, k: u64, part: Part, cap: u64) -> Result<Ordinal, AssignError> {
    let t = hereditary(m, k, part, cap)?;
    match part {
        Part::One => assign_part1(map, &t).map(Ordinal::E0),
        Part::Two => assign_part2(map, &t),
    }
}

fn countable(t: HbTerm) -> Countable {
    t.as_countable().expect("images of numbers are countable").clone()
}

fn psi2(t: &AckTerm) -> Result<HbTerm, AssignError> {
    let Some(n) = t.as_node() else {
        return Ok(HbTerm::zero());
    };
    let a = ord_index(t)?;
    let l = HbTerm::nat(n.rem);
    if a.terms.is_empty() {
        return Ok(HbTerm::nat(small(&n.arg)? + 1));
    }
    let b = countable(psi2(&n.arg)?);
    if is_one(a) {
        let c = Countable::nat(1).add(&b).omega_times();
        return Ok(hb_add(&c.to_hb(), &l));
    }
    let arg = hb_add(&HbTerm::from_e0(&OrdE0::omega()), &hb_nsub(2, &lift_ord(Map::Psi, a)?));
    let head = hb_add(&HbTerm::psi(arg), &b.omega_times().to_hb());
    Ok(hb_add(&head, &l))
}

fn xi2(t: &AckTerm) -> Result<HbTerm, AssignError> {
    let Some(n) = t.as_node() else {
        return Ok(HbTerm::zero());
    };
    let a = ord_index(t)?;
    let b = small(&n.arg)?;
    let l = HbTerm::nat(n.rem);
    if a.terms.is_empty() {
        return Ok(HbTerm::nat(b + 1));
    }
    let wb = |c: u64| HbTerm::from_e0(&OrdE0::monomial(OrdE0::one(), c));
    if is_one(a) {
        return Ok(hb_add(&wb(b + 1), &l));
    }
    let head = hb_add(&HbTerm::upsi(hb_nsub(1, &lift_ord(Map::Xi, a)?)), &wb(b));
    Ok(hb_add(&head, &l))
}

fn chi2(t: &AckTerm) -> Result<OrdE0, AssignError> {
    let Some(n) = t.as_node() else {
        return Ok(OrdE0::zero());
    };
    let a = ord_index(t)?;
    if a.terms.is_empty() {
        return Ok(OrdE0::nat(small(&n.arg)? + 1));
    }
    let b = chi2(&n.arg)?;
    let head = if is_one(a) {
        omega_times(&one_plus(&b))
    } else {
        let alpha = a.eval(64).ok_or_else(|| AssignError::Overflow(a.to_string()))?;
        let top = OrdE0::omega_pow(add_e0(&OrdE0::omega(), &nsub(2, &alpha)));
        add_e0(&top, &omega_times(&b))
    };
    Ok(add_e0(&head, &OrdE0::nat(n.rem)))
}

/// `ω^β·m + γ ↦ Ω^{f β}·f(m) + f γ` for `f` the part-2 `ψ_k` or `ξ_k`.
pub fn lift_ord(map: Map, alpha: &MixedOrd) -> Result<HbTerm, AssignError> {
    let image = match map {
        Map::Psi => psi2,
        Map::Xi => xi2,
        _ => return Err(AssignError::WrongPart),
    };
    let mut acc = HbTerm::zero();
    for t in &alpha.terms {
        let piece = HbTerm::monomial(lift_ord(map, &t.exp)?, countable(image(&t.coeff)?));
        acc = hb_add(&acc, &piece);
    }
    Ok(acc)
}

/// `ord(m) = ω²·a + ω·b + l` (part 1) or `ω^α + ω·b + l` (part 2); `m` itself when the index is 0.
pub fn ord_simple(t: &AckTerm, part: Part) -> Result<OrdE0, AssignError> {
    let Some(n) = t.as_node() else {
        return Ok(OrdE0::zero());
    };
    if n.index.is_zero() {
        return Ok(OrdE0::nat(small(&n.arg)? + 1 + n.rem));
    }
    let head = match part {
        Part::One => OrdE0::nat(small(nat_index(t)?)?).omega_n_times(2),
        Part::Two => {
            let a = ord_index(t)?;
            OrdE0::omega_pow(a.eval(64).ok_or_else(|| AssignError::Overflow(a.to_string()))?)
        }
    };
    let wb = omega_times(&OrdE0::nat(small(&n.arg)?));
    Ok(add_e0(&add_e0(&head, &wb), &OrdE0::nat(n.rem)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ackermann::DEFAULT_CAP_BITS as CAP;
    use crate::buchholz::hb_eval_countable;
    use crate::normal_form::hereditary_u64;

    fn p1(map: Map, m: u64, k: u64) -> String {
        assign_part1(map, &hereditary_u64(m, k, Part::One, CAP).unwrap()).unwrap().to_string()
    }

    fn p2(map: Map, m: u64, k: u64) -> String {
        assign_part2(map, &hereditary_u64(m, k, Part::Two, CAP).unwrap()).unwrap().to_string()
    }

    fn ord_node(alpha: &str, k: u64) -> AckTerm {
        let a = MixedOrd::from_e0(&alpha.parse().unwrap(), k, CAP).unwrap();
        AckTerm::node(k, Index::Ord(a), AckTerm::Zero, 0)
    }

    #[test]
    fn part_one_values() {
        assert_eq!(p1(Map::Psi, 0, 3), "0");
        assert_eq!(p1(Map::Psi, 39, 3), "w^(w)");
        assert_eq!(p1(Map::Psi, 4, 3), "w+1");
        assert_eq!(p1(Map::Chi, 39, 3), "w^(w)");
        assert_eq!(p1(Map::Xi, 39, 3), "w^(2)");
        assert_eq!(p1(Map::Simple, 4, 3), "w^(2)+1");
        assert_eq!(p1(Map::Simple, 0, 3), "0");
    }

    #[test]
    fn symbolic_seed() {
        let m1 = hereditary_u64(39, 3, Part::One, CAP).unwrap();
        let m2 = AckTerm::node(3, Index::Nat(m1), AckTerm::Zero, 0);
        assert_eq!(assign_part1(Map::Psi, &m2).unwrap().to_string(), "w^(w^(w))");
    }

    #[test]
    fn part_two_values() {
        assert_eq!(assign_part2(Map::Psi, &ord_node("w", 3)).unwrap().to_string(), "p(W)");
        assert_eq!(assign_part2(Map::Chi, &ord_node("w^(w)", 3)).unwrap().to_string(), "w^(w^(w))");
        assert_eq!(assign_part2(Map::Xi, &ord_node("w", 3)).unwrap().to_string(), "P(W)");
        assert_eq!(p2(Map::Psi, 39, 3), "w^(w)");
        assert_eq!(p2(Map::Simple, 39, 3), "w^(2)");
    }

    #[test]
    fn lifts() {
        let lift = |s: &str| lift_ord(Map::Psi, &MixedOrd::from_e0(&s.parse().unwrap(), 3, CAP).unwrap()).unwrap();
        assert_eq!(lift("0"), HbTerm::zero());
        assert_eq!(lift("w").to_string(), "W");
        assert_eq!(lift("w^(w)").to_string(), "W^(W)");
    }

    #[test]
    fn parts_agree_on_finite_indices() {
        for k in 3..5 {
            for m in 0..400 {
                let t = hereditary_u64(m, k, Part::Two, CAP).unwrap();
                let a = hereditary_u64(m, k, Part::One, CAP).unwrap();
                if matches!(t.as_node().map(|n| &n.index), Some(Index::Ord(o)) if o.eval(64).is_some_and(|v| !v.is_finite())) {
                    continue;
                }
                let hb = assign_part2(Map::Psi, &t).unwrap();
                assert_eq!(hb_eval_countable(hb.as_hb().unwrap()).unwrap(), assign_part1(Map::Psi, &a).unwrap(), "{m}");
            }
        }
    }
}
