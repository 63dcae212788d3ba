//! Goodstein sequences built on Ackermann normal forms.
//!
//! Numbers are written hereditarily as `A_a(k,b) + l`, rewritten at base
//! `k+1` and decremented. Termination is witnessed by ordinal assignments into
//! Cantor normal forms below epsilon_0 and into Buchholz-style notations.

pub mod ackermann;
pub mod assignment;
pub mod base_change;
pub mod buchholz;
pub mod cli;
pub mod contexts;
pub mod goodstein;
pub mod normal_form;
pub mod ordinal_e0;
pub mod verifier;
