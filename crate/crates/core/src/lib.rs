//! Exact rank gradient, cost and first L²-Betti number calculus for Artin
//! groups, Coxeter groups and their amalgams, together with a small
//! finitely-presented-group engine used as an empirical oracle.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON
//! serialization and the command-line driver live in the `artinrg` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cert;
pub mod coxeter;
pub mod fpgroup;
pub mod groupexpr;
pub mod lgraph;
pub mod rational;

pub use groupexpr::{GroupExpr, GroupOrder, PriceResult, Value};
pub use lgraph::LabelledGraph;
pub use rational::Rational;
