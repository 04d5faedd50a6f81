//! Exact algebra for deformed Macdonald-Ruijsenaars and Noumi-Sano
//! q-difference operators, super-Macdonald polynomials and the identities
//! relating them.
//!
//! Everything is exact: rationals, sparse Laurent polynomials and rational
//! functions over the rationals. The parameters `q` and `t` are either
//! formal variables or rational numbers; see [`field::Params`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certify;
pub mod diffop;
pub mod field;
pub mod gcd;
pub mod kernels;
pub mod macdonald;
pub mod mono;
pub mod operators;
pub mod partition;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod series;
pub mod spectra;
pub mod superpoly;
pub mod text;

pub use field::{FieldElem, Params};
pub use mono::{Bank, Mono, Var};
pub use poly::{Poly, Term};
pub use rat::Rat;
pub use ratfunc::{PoleError, RatFunc};
