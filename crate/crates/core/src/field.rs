//! Scalars in `q`, `t`: parameter pairs, q-Pochhammer symbols and
//! non-specialness checks.
//!
//! A scalar is a [`RatFunc`] whose only variables are `q` and `t`. In
//! symbolic mode the parameters are the formal variables themselves; in
//! evaluation mode they are rational numbers and every scalar is a constant.
//! Both modes share one code path because a parameter is always a [`Term`]:
//! `q`, `t^-1`, `q t` and `2/3` are all rational multiples of monomials.

use alloc::vec::Vec;
use core::fmt;

use crate::mono::Var;
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// An exact scalar: a rational function in `q`, `t` (symbolic mode) or a
/// rational constant (evaluation mode).
pub type FieldElem = RatFunc;

/// Scalar arithmetic mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Eval,
}

/// Error for invalid evaluation parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamError {
    Zero,
    RootOfUnity,
    Special { i: u32, j: u32 },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::Zero => f.write_str("parameters must be nonzero"),
            ParamError::RootOfUnity => f.write_str("parameters must not be roots of unity"),
            ParamError::Special { i, j } => write!(f, "q^{i} t^{j} = 1"),
        }
    }
}

/// The parameter pair `(q, t)` as terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub q: Term,
    pub t: Term,
}

impl Params {
    /// Formal parameters.
    pub fn symbolic() -> Params {
        Params {
            q: Term::var(Var::Q),
            t: Term::var(Var::T),
        }
    }

    /// Rational parameters, rejecting zero and `|numerator| = |denominator|`.
    /// Non-specialness is checked separately with [`is_non_special`].
    pub fn eval(q: Rat, t: Rat) -> Result<Params, ParamError> {
        for v in [&q, &t] {
            if v.is_zero() {
                return Err(ParamError::Zero);
            }
            if v.abs().is_one() {
                return Err(ParamError::RootOfUnity);
            }
        }
        Ok(Params {
            q: Term::constant(q),
            t: Term::constant(t),
        })
    }

    /// Arbitrary terms as parameters.
    pub fn from_terms(q: Term, t: Term) -> Params {
        Params { q, t }
    }

    pub fn mode(&self) -> Mode {
        if self.q.m.is_one() && self.t.m.is_one() {
            Mode::Eval
        } else {
            Mode::Symbolic
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.mode() == Mode::Symbolic
    }

    /// `(q^-1, t^-1)`.
    pub fn inverted(&self) -> Params {
        Params {
            q: self.q.inv(),
            t: self.t.inv(),
        }
    }

    /// `(t, q)`.
    pub fn swapped(&self) -> Params {
        Params {
            q: self.t.clone(),
            t: self.q.clone(),
        }
    }

    /// `(t^-1, q^-1)`, the parameter change relating the two operator
    /// families.
    pub fn dual(&self) -> Params {
        Params {
            q: self.t.inv(),
            t: self.q.inv(),
        }
    }

    /// `q^a t^b` as a term.
    pub fn qt(&self, a: i32, b: i32) -> Term {
        self.q.pow(a).mul(&self.t.pow(b))
    }

    pub fn q_elem(&self) -> FieldElem {
        RatFunc::from_term(&self.q)
    }

    pub fn t_elem(&self) -> FieldElem {
        RatFunc::from_term(&self.t)
    }

    /// Values to substitute for the formal `q`, `t` variables to move a
    /// symbolic result to this parameter point.
    pub fn assignment(&self) -> Option<Vec<Option<Rat>>> {
        if self.mode() != Mode::Eval {
            return None;
        }
        let mut v = alloc::vec![None; crate::mono::NVARS];
        v[Var::Q.index()] = Some(self.q.c.clone());
        v[Var::T.index()] = Some(self.t.c.clone());
        Some(v)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}, t={}", self.q, self.t)
    }
}

/// The polynomial `1 - a`.
pub fn one_minus(a: &Term) -> Poly {
    &Poly::one() - &a.to_poly()
}

/// Factors `1 - a base^i` for `i < k`, as polynomials.
pub fn qpoch_factors(a: &Term, base: &Term, k: u32) -> Vec<Poly> {
    let mut out = Vec::with_capacity(k as usize);
    let mut cur = a.clone();
    for _ in 0..k {
        out.push(one_minus(&cur));
        cur = cur.mul(base);
    }
    out
}

/// `(a; base)_k = prod_{i<k} (1 - a base^i)` for term arguments.
pub fn qpoch_term(a: &Term, base: &Term, k: u32) -> FieldElem {
    RatFunc::from_factors(&qpoch_factors(a, base, k), &[])
}

/// `(a; base)_k` for general scalar arguments.
pub fn qpochhammer(a: &FieldElem, base: &FieldElem, k: u32) -> FieldElem {
    let mut acc = RatFunc::one();
    let mut cur = a.clone();
    for i in 0..k {
        acc = &acc * &(&RatFunc::one() - &cur);
        if i + 1 < k {
            cur = &cur * base;
        }
    }
    acc
}

/// Ratio `(a; base)_k / (b; base)_k` with shared factors cancelled.
pub fn qpoch_ratio(a: &Term, b: &Term, base: &Term, k: u32) -> FieldElem {
    RatFunc::from_factors(&qpoch_factors(a, base, k), &qpoch_factors(b, base, k))
}

/// True iff `q^i t^j != 1` for all `0 <= i, j <= bound` with `i + j >= 1`.
pub fn is_non_special(q: &Rat, t: &Rat, bound: u32) -> bool {
    if q.is_zero() || t.is_zero() {
        return false;
    }
    let mut qi = Rat::ONE;
    for i in 0..=bound {
        let mut v = qi.clone();
        for j in 0..=bound {
            if i + j >= 1 && v.is_one() {
                return false;
            }
            v = &v * t;
        }
        qi = &qi * q;
    }
    true
}

/// Stricter genericity used when sampling points: also excludes
/// `q^i = t^j` for `i, j` up to `bound`, which makes mixed-sign factors such
/// as `1 - q t^-1` nonzero.
pub fn is_generic_pair(q: &Rat, t: &Rat, bound: u32) -> bool {
    if !is_non_special(q, t, bound) {
        return false;
    }
    let mut qi = q.clone();
    for _ in 1..=bound {
        let mut tj = t.clone();
        for _ in 1..=bound {
            if qi == tj {
                return false;
            }
            tj = &tj * t;
        }
        qi = &qi * q;
    }
    true
}
