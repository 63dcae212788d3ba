//! Base changes `k ← k+1` on hereditary terms.
//!
//! Every node carries its own base, so an operator that leaves a subterm
//! alone keeps that subterm's value: `⟨⟩` keeps the index at the old base,
//! `{}` keeps the argument, and the iterated variant only bumps the top node.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::ackermann::BudgetedNat;
use crate::normal_form::{eval_term, hereditary, AckTerm, Index, MixedOrd, MixedTerm, NfError, Part};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BcOp {
    /// `m[k←k+1]`: index and argument.
    Prime,
    /// `m⟨k←k+1⟩`: argument only.
    Second,
    /// `m{k←k+1}`: index only.
    First,
    /// `A_a(k+1,b)+l`: base only.
    Iter,
}

impl BcOp {
    pub const ALL: [BcOp; 4] = [BcOp::Prime, BcOp::Second, BcOp::First, BcOp::Iter];

    pub fn name(self) -> &'static str {
        match self {
            BcOp::Prime => "prime",
            BcOp::Second => "second",
            BcOp::First => "first",
            BcOp::Iter => "iter",
        }
    }
}

impl fmt::Display for BcOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BcOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BcOp::ALL.into_iter().find(|op| op.name() == s).ok_or_else(|| format!("unknown operator `{s}`"))
    }
}

pub fn bc_prime(t: &AckTerm) -> AckTerm {
    rebuild(t, BcOp::Prime)
}

pub fn bc_second(t: &AckTerm) -> AckTerm {
    rebuild(t, BcOp::Second)
}

pub fn bc_first(t: &AckTerm) -> AckTerm {
    rebuild(t, BcOp::First)
}

/// Only the top base moves. Numbers below the base come out with the same value.
pub fn bc_iter(t: &AckTerm) -> AckTerm {
    rebuild(t, BcOp::Iter)
}

pub fn base_change(op: BcOp, t: &AckTerm) -> AckTerm {
    rebuild(t, op)
}

fn rebuild(t: &AckTerm, op: BcOp) -> AckTerm {
    let Some(n) = t.as_node() else {
        return AckTerm::Zero;
    };
    let index = match op {
        BcOp::Prime | BcOp::First => bc_index(&n.index, op),
        BcOp::Second | BcOp::Iter => n.index.clone(),
    };
    let arg = match op {
        BcOp::Prime | BcOp::Second => rebuild(&n.arg, op),
        BcOp::First | BcOp::Iter => n.arg.clone(),
    };
    AckTerm::node(n.base + 1, index, arg, n.rem)
}

fn bc_index(i: &Index, op: BcOp) -> Index {
    match i {
        Index::Nat(a) => Index::Nat(rebuild(a, op)),
        Index::Ord(a) => Index::Ord(bc_ord(a, op)),
    }
}

/// Exponents recursed as ordinals, coefficients as numbers.
pub fn bc_ord(alpha: &MixedOrd, op: BcOp) -> MixedOrd {
    MixedOrd { terms: alpha.terms.iter().map(|t| MixedTerm { exp: bc_ord(&t.exp, op), coeff: rebuild(&t.coeff, op) }).collect() }
}

/// Base change of a number given at base `k`.
pub fn bc_num(op: BcOp, m: &BigUint, k: u64, part: Part, cap: u64) -> Result<BudgetedNat, NfError> {
    let t = hereditary(m, k, part, cap)?;
    Ok(eval_term(&base_change(op, &t), cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ackermann::DEFAULT_CAP_BITS as CAP;
    use crate::normal_form::hereditary_u64;

    fn bc(op: BcOp, m: u64) -> u64 {
        bc_num(op, &BigUint::from(m), 3, Part::One, CAP).unwrap().to_u64().unwrap()
    }

    #[test]
    fn values_at_base_three() {
        assert_eq!(bc(BcOp::Prime, 3), 4);
        assert_eq!(bc(BcOp::Prime, 2), 2);
        assert_eq!(bc(BcOp::Prime, 39), 340);
        assert_eq!(bc(BcOp::Second, 0), 0);
        assert_eq!(bc(BcOp::Second, 7), 9);
        assert_eq!(bc(BcOp::Second, 12), 20);
        assert_eq!(bc(BcOp::First, 12), 16);
        assert_eq!(bc(BcOp::First, 39), 340);
        assert_eq!(bc(BcOp::First, 7), 9);
        assert_eq!(bc(BcOp::Iter, 3), 4);
        assert_eq!(bc(BcOp::Iter, 12), 16);
        assert_eq!(bc(BcOp::Iter, 2), 2);
    }

    #[test]
    fn numbers_at_least_the_base_grow() {
        // 100 = A_2(3,0)+61
        let m = 100;
        let vals: Vec<u64> = BcOp::ALL.iter().map(|&op| bc(op, m)).collect();
        assert!(vals.iter().all(|&v| v > m));
    }

    #[test]
    fn ordinal_indices() {
        let k = 3;
        let ord = |s: &str| MixedOrd::from_e0(&s.parse().unwrap(), k, CAP).unwrap();
        let ev = |a: &MixedOrd| a.eval(CAP).unwrap().to_string();
        assert_eq!(ev(&bc_ord(&ord("w"), BcOp::Prime)), "w");
        assert_eq!(ev(&bc_ord(&ord("w*3"), BcOp::Prime)), "w*4");
        assert_eq!(ev(&bc_ord(&ord("w^(w)*2"), BcOp::Prime)), "w^(w)*2");
        assert_eq!(ev(&bc_ord(&ord("w*3"), BcOp::First)), "w*4");
    }

    #[test]
    fn bases_are_tracked_per_node() {
        let t = hereditary_u64(12, 3, Part::One, CAP).unwrap();
        let s = bc_second(&t);
        let n = s.as_node().unwrap();
        assert_eq!(n.base, 4);
        match &n.index {
            Index::Nat(a) => assert_eq!(a.as_node().unwrap().base, 3),
            Index::Ord(_) => unreachable!(),
        }
        assert_eq!(n.arg.as_node().unwrap().base, 4);
    }
}
