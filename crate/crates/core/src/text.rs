//! Parsing of the canonical text written by the `Display` impls of
//! [`Poly`] and [`RatFunc`].
//!
//! Grammar: a polynomial is `0` or terms joined by ` + `; a term is
//! factors joined by ` * `, where the first factor may be a rational
//! literal and the others are `v` or `v^k` with `v` one of `q`, `t`, `x1`,
//! `y2`, `z3`, `w4`, ... and `k` a possibly negative integer. A rational
//! function is a polynomial or `(num)/(den)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::mono::{Bank, Mono, Var};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// Error for malformed polynomial or rational-function text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseExprError(pub String);

impl fmt::Display for ParseExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse `{}`", self.0)
    }
}

fn err(s: &str) -> ParseExprError {
    ParseExprError(String::from(s))
}

/// Parses a variable name.
pub fn parse_var(s: &str) -> Result<Var, ParseExprError> {
    match s {
        "q" => return Ok(Var::Q),
        "t" => return Ok(Var::T),
        _ => {}
    }
    let mut chars = s.chars();
    let bank = match chars.next() {
        Some('x') => Bank::X,
        Some('y') => Bank::Y,
        Some('z') => Bank::Z,
        Some('w') => Bank::W,
        _ => return Err(err(s)),
    };
    let idx: usize = chars.as_str().parse().map_err(|_| err(s))?;
    if idx == 0 || idx > bank.capacity() {
        return Err(err(s));
    }
    Ok(bank.var(idx - 1))
}

fn parse_term(s: &str) -> Result<(Mono, Rat), ParseExprError> {
    let mut coef = Rat::ONE;
    let mut mono = Mono::ONE;
    for (i, factor) in s.split(" * ").enumerate() {
        let factor = factor.trim();
        let numeric = factor.starts_with(|c: char| c.is_ascii_digit() || c == '-');
        if numeric {
            if i > 0 {
                return Err(err(s));
            }
            coef = factor.parse().map_err(|_| err(s))?;
            continue;
        }
        let (name, k) = match factor.split_once('^') {
            Some((v, k)) => (v, k.parse::<i32>().map_err(|_| err(s))?),
            None => (factor, 1),
        };
        mono = mono.mul(&Mono::var_pow(parse_var(name)?, k));
    }
    Ok((mono, coef))
}

impl FromStr for Poly {
    type Err = ParseExprError;

    fn from_str(s: &str) -> Result<Poly, ParseExprError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(err(s));
        }
        let terms = s.split(" + ").map(parse_term).collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_terms(terms))
    }
}

impl FromStr for RatFunc {
    type Err = ParseExprError;

    fn from_str(s: &str) -> Result<RatFunc, ParseExprError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (num, den) = rest.split_once(")/(").ok_or_else(|| err(s))?;
            let den = den.strip_suffix(')').ok_or_else(|| err(s))?;
            let den: Poly = den.parse()?;
            if den.is_zero() {
                return Err(err(s));
            }
            return Ok(RatFunc::new(num.parse()?, &den));
        }
        Ok(RatFunc::from_poly(s.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn literals() {
        assert_eq!("0".parse::<Poly>().unwrap(), Poly::zero());
        assert_eq!("-3/5".parse::<Poly>().unwrap(), Poly::constant(Rat::new(-3, 5)));
        let p: Poly = "2 * q^-1 * x1^2 + t * w4".parse().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        assert!("x0".parse::<Poly>().is_err());
        assert!("q * 3".parse::<Poly>().is_err());
        assert!("(1)/(0)".parse::<RatFunc>().is_err());
        let r: RatFunc = "(q * t + -1)/(q + -1)".parse().unwrap();
        assert_eq!(r.to_string().parse::<RatFunc>().unwrap(), r);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (-20i64..20, 1i64..9, prop::collection::vec((0usize..6, -3i32..4), 0..4));
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let vars = [Var::Q, Var::T, Bank::X.var(0), Bank::Y.var(1), Bank::Z.var(2), Bank::W.var(0)];
            Poly::from_terms(
                ts.into_iter()
                    .map(|(n, d, es)| {
                        let m = es.iter().fold(Mono::ONE, |m, &(v, k)| m.mul(&Mono::var_pow(vars[v], k)));
                        (m, Rat::new(n, d))
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn poly_text_round_trip(p in arb_poly()) {
            prop_assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }

        #[test]
        fn ratfunc_text_round_trip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let r = RatFunc::new(a, &b);
            prop_assert_eq!(r.to_string().parse::<RatFunc>().unwrap(), r);
        }
    }
}
