//! q-difference operators with rational-function coefficients.
//!
//! An operator is a finite sum `sum_s a_s(x, y, z, w) T^s` where the shift
//! `T^s` scales each variable by a power of its bank's base: `q` for the
//! `x` and `z` banks and `t` for the `y` and `w` banks. The shift vector is
//! stored as a [`Mono`] whose exponents are those powers, so `T_{q,x_1}^2
//! T_{t,y_1}^{-1}` is the key `x1^2 * y1^-1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Params;
use crate::mono::{Bank, Mono, Var};
use crate::poly::Term;
use crate::ratfunc::RatFunc;

/// Number of variables in use per bank, in the order x, y, z, w.
pub type Arity = [usize; 4];

/// A q-difference operator in normal form: distinct shift keys, nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    params: Params,
    arity: Arity,
    terms: BTreeMap<Mono, RatFunc>,
}

/// The shift base of a bank.
pub fn bank_base(params: &Params, bank: Bank) -> &Term {
    match bank {
        Bank::X | Bank::Z => &params.q,
        Bank::Y | Bank::W => &params.t,
    }
}

fn bank_index(b: Bank) -> usize {
    match b {
        Bank::X => 0,
        Bank::Y => 1,
        Bank::Z => 2,
        Bank::W => 3,
    }
}

const BANKS: [Bank; 4] = [Bank::X, Bank::Y, Bank::Z, Bank::W];

impl DiffOp {
    pub fn zero(params: &Params, arity: Arity) -> DiffOp {
        DiffOp {
            params: params.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(params: &Params, arity: Arity) -> DiffOp {
        DiffOp::scalar(params, arity, RatFunc::one())
    }

    /// Multiplication by a function.
    pub fn scalar(params: &Params, arity: Arity, c: RatFunc) -> DiffOp {
        DiffOp::monomial(params, arity, Mono::ONE, c)
    }

    /// A single term `c T^s`.
    pub fn monomial(params: &Params, arity: Arity, shift: Mono, c: RatFunc) -> DiffOp {
        let mut op = DiffOp::zero(params, arity);
        if !c.is_zero() {
            op.terms.insert(shift, c);
        }
        op
    }

    /// Builds an operator from possibly repeated shift keys.
    pub fn from_terms<I: IntoIterator<Item = (Mono, RatFunc)>>(params: &Params, arity: Arity, terms: I) -> DiffOp {
        let mut groups: BTreeMap<Mono, Vec<RatFunc>> = BTreeMap::new();
        for (s, c) in terms {
            groups.entry(s).or_default().push(c);
        }
        let terms = groups
            .into_iter()
            .map(|(s, cs)| (s, RatFunc::sum(cs)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        DiffOp {
            params: params.clone(),
            arity,
            terms,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Mono, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, shift: &Mono) -> RatFunc {
        self.terms.get(shift).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural zero test; exact because coefficients are reduced.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total shift `sum |s_i|` over the terms.
    pub fn max_shift_degree(&self) -> i32 {
        self.terms
            .keys()
            .map(|s| s.iter().map(|(_, e)| e.abs()).sum::<i32>())
            .max()
            .unwrap_or(0)
    }

    /// The variable scalings realizing `T^s`.
    pub fn shift_scales(&self, s: &Mono) -> Vec<(Var, Term)> {
        shift_scales(&self.params, s)
    }

    /// Applies the shift `T^s` to a function.
    pub fn shift_fn(&self, s: &Mono, f: &RatFunc) -> RatFunc {
        if s.is_one() {
            return f.clone();
        }
        f.scale_vars(&self.shift_scales(s))
    }

    /// `sum_s a_s (T^s f)`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        RatFunc::sum(self.terms.iter().map(|(s, a)| a * &self.shift_fn(s, f)))
    }

    fn merged_arity(&self, o: &DiffOp) -> Arity {
        let mut a = self.arity;
        for (x, y) in a.iter_mut().zip(o.arity) {
            *x = (*x).max(y);
        }
        a
    }

    /// `self ∘ o`: `sum a_s T^s(b_r) T^{s+r}`.
    pub fn compose(&self, o: &DiffOp) -> DiffOp {
        assert_eq!(self.params, o.params, "operators over different parameters");
        let mut out: Vec<(Mono, RatFunc)> = Vec::with_capacity(self.len() * o.len());
        for (s, a) in &self.terms {
            for (r, b) in &o.terms {
                out.push((s.mul(r), a * &self.shift_fn(s, b)));
            }
        }
        DiffOp::from_terms(&self.params, self.merged_arity(o), out)
    }

    /// `self ∘ o - o ∘ self`.
    pub fn commutator(&self, o: &DiffOp) -> DiffOp {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        assert_eq!(self.params, o.params, "operators over different parameters");
        DiffOp::from_terms(
            &self.params,
            self.merged_arity(o),
            self.terms
                .iter()
                .chain(o.terms.iter())
                .map(|(s, c)| (*s, c.clone())),
        )
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            params: self.params.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(s, c)| (*s, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.neg())
    }

    /// Left multiplication by a function.
    pub fn scale(&self, c: &RatFunc) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(&self.params, self.arity);
        }
        DiffOp {
            params: self.params.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(s, a)| (*s, a * c)).collect(),
        }
    }

    pub fn scale_term(&self, c: &Term) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(&self.params, self.arity);
        }
        DiffOp {
            params: self.params.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(s, a)| (*s, a.mul_term(c))).collect(),
        }
    }

    /// Maps every coefficient, keeping the shifts.
    pub fn map_coeffs<F: FnMut(&RatFunc) -> RatFunc>(&self, mut f: F) -> DiffOp {
        DiffOp::from_terms(&self.params, self.arity, self.terms.iter().map(|(s, a)| (*s, f(a))))
    }

    /// Shift vector of a key restricted to a bank, padded to the arity.
    pub fn bank_shift(&self, s: &Mono, bank: Bank) -> Vec<i32> {
        (0..self.arity[bank_index(bank)])
            .map(|i| s.exp(bank.var(i)))
            .collect()
    }
}

/// The variable scalings realizing `T^s` for the given parameters.
pub fn shift_scales(params: &Params, s: &Mono) -> Vec<(Var, Term)> {
    s.iter()
        .map(|(v, k)| {
            let (bank, _) = v.bank().expect("shifts act on bank variables");
            (v, bank_base(params, bank).pow(k))
        })
        .collect()
}

/// Shift key with the given exponents on the leading variables of a bank.
pub fn shift_key(bank: Bank, exps: &[i32]) -> Mono {
    exps.iter()
        .enumerate()
        .fold(Mono::ONE, |m, (i, &k)| m.mul(&Mono::var_pow(bank.var(i), k)))
}

impl fmt::Display for DiffOp {
    /// One line per term: `coeff | x=(..) | y=(..)`, listing each bank in
    /// use.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{c}")?;
            for b in BANKS {
                let a = self.arity[bank_index(b)];
                if a == 0 {
                    continue;
                }
                write!(f, " | {}=(", b.letter())?;
                for i in 0..a {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", s.exp(b.var(i)))?;
                }
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rat::Rat;

    fn x1() -> Var {
        Bank::X.var(0)
    }

    #[test]
    fn identity_and_single_shift() {
        let s = Params::symbolic();
        let ar = [1, 0, 0, 0];
        let f = RatFunc::from_poly(Poly::mono(Mono::var_pow(x1(), 2)));
        assert_eq!(DiffOp::identity(&s, ar).apply(&f), f);
        let t = DiffOp::monomial(&s, ar, Mono::var(x1()), RatFunc::one());
        assert_eq!(t.apply(&f), f.mul_term(&s.qt(2, 0)));
    }

    #[test]
    fn commutator_with_multiplication() {
        let s = Params::symbolic();
        let ar = [1, 0, 0, 0];
        let t = DiffOp::monomial(&s, ar, Mono::var(x1()), RatFunc::one());
        let x = DiffOp::scalar(&s, ar, RatFunc::var(x1()));
        let c = t.commutator(&x);
        let q = RatFunc::var(Var::Q);
        let expect = DiffOp::monomial(&s, ar, Mono::var(x1()), &(&q - &RatFunc::one()) * &RatFunc::var(x1()));
        assert_eq!(c, expect);
        assert!(t.commutator(&t).is_zero());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let s = Params::eval(Rat::new(2, 3), Rat::new(5, 2)).unwrap();
        let ar = [2, 1, 0, 0];
        let y1 = Bank::Y.var(0);
        let a = DiffOp::from_terms(
            &s,
            ar,
            [
                (Mono::var(x1()), RatFunc::var(Bank::X.var(1))),
                (Mono::var_pow(y1, -1), RatFunc::from_int(3)),
            ],
        );
        let b = DiffOp::from_terms(
            &s,
            ar,
            [
                (Mono::var(Bank::X.var(1)), RatFunc::var(y1)),
                (Mono::ONE, RatFunc::var(x1())),
            ],
        );
        let f = RatFunc::from_poly(&Poly::var(x1()) * &(&Poly::var(y1) + &Poly::var(Bank::X.var(1)).pow(2)));
        assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn display_lists_banks() {
        let s = Params::symbolic();
        let op = DiffOp::monomial(&s, [1, 1, 0, 0], shift_key(Bank::Y, &[-1]), RatFunc::from_int(2));
        assert_eq!(alloc::format!("{op}"), "2 | x=(0) | y=(-1)");
    }
}
