//! Exact formulas, enumeration oracles, constructive bijections and a
//! reproducible Monte Carlo engine for random races.
//!
//! Two racers take `n` i.i.d. steps from a continuous law; the probability
//! that the first leads after every step is `C(2n, n) / 4^n` whatever the
//! law. The crate checks that statement and its relatives four ways:
//!
//! - [`reference`]: closed forms in exact rational arithmetic.
//! - [`exact`]: brute-force enumeration, dynamic programmes, and the
//!   bijections behind each count.
//! - [`simulate`]: counter-based Monte Carlo with Wilson intervals.
//! - [`cli`]: the `leadrace` command line, including a `verify` sweep.

pub mod cli;
pub mod error;
pub mod exact;
pub mod rational;
pub mod reference;
pub mod simulate;

pub use error::{Error, Result};
pub use rational::Rational;
