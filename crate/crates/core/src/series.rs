//! Truncated power series: in a formal variable `u` with coefficients in a
//! ring, and in designated variable banks with rational-function
//! coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{qpoch_ratio, FieldElem};
use crate::mono::Mono;
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// Minimal ring interface for series coefficients.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale_rat(&self, c: &Rat) -> Self;
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat::ZERO
    }
    fn one() -> Self {
        Rat::ONE
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self * c
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

/// A power series in `u` truncated after `u^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct USeries<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> USeries<T> {
    pub fn zero(order: usize) -> Self {
        USeries {
            coeffs: (0..=order).map(|_| T::zero()).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// Takes coefficients `c_0..c_order`; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.truncate(order + 1);
        while coeffs.len() <= order {
            coeffs.push(T::zero());
        }
        USeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &T {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        USeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        USeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].sub(&o.coeffs[i])).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = T::zero();
                for i in 0..=k {
                    let a = &self.coeffs[i];
                    let b = &o.coeffs[k - i];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        USeries { coeffs }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &T) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Substitutes `u -> c u`.
    pub fn rescale_u(&self, c: &T) -> Self {
        let mut p = T::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.mul(&p));
            p = p.mul(c);
        }
        USeries { coeffs }
    }

    pub fn map<S: Ring, F: FnMut(&T) -> S>(&self, f: F) -> USeries<S> {
        USeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `sum_s ((a; base)_s / (base; base)_s) (g u)^s` up to `u^order`: the
/// q-binomial expansion of `(a g u; base)_inf / (g u; base)_inf`.
pub fn qbinomial_u(a: &Term, base: &Term, g: &Term, order: usize) -> USeries<FieldElem> {
    let coeffs = (0..=order)
        .map(|s| qpoch_ratio(a, base, base, s as u32).mul_term(&g.pow(s as i32)))
        .collect();
    USeries { coeffs }
}

/// Raised when `(base; base)_k` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateBase;

impl fmt::Display for DegenerateBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("series base is a root of unity")
    }
}

/// A series in the variables selected by `mask`, truncated at total degree
/// `d` in those variables, with rational-function coefficients in the
/// remaining variables.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    mask: u32,
    d: i32,
    coeffs: BTreeMap<Mono, RatFunc>,
}

impl PartialEq for TruncSeries {
    fn eq(&self, o: &TruncSeries) -> bool {
        self.mask == o.mask && self.sub(o).coeffs.is_empty()
    }
}

impl TruncSeries {
    pub fn zero(mask: u32, d: i32) -> TruncSeries {
        TruncSeries {
            mask,
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(mask: u32, d: i32) -> TruncSeries {
        let mut s = TruncSeries::zero(mask, d);
        s.coeffs.insert(Mono::ONE, RatFunc::one());
        s
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> i32 {
        self.d
    }

    /// Splits a polynomial by its monomials in the series variables.
    pub fn from_poly(p: &Poly, mask: u32, d: i32) -> TruncSeries {
        let mut groups: BTreeMap<Mono, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (key, rest) = split_mask(m, mask);
            if key.degree() <= d {
                groups.entry(key).or_default().push((rest, c.clone()));
            }
        }
        TruncSeries {
            mask,
            d,
            coeffs: groups
                .into_iter()
                .map(|(k, ts)| (k, RatFunc::from_poly(Poly::from_terms(ts))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Coefficient map, keyed by monomials in the series variables.
    pub fn coeffs(&self) -> &BTreeMap<Mono, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Mono) -> RatFunc {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        assert_eq!(self.mask, o.mask);
        let d = self.d.min(o.d);
        let mut coeffs = BTreeMap::new();
        for (k, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if k.degree() > d {
                continue;
            }
            let e: &mut RatFunc = coeffs.entry(*k).or_default();
            *e = &*e + c;
        }
        coeffs.retain(|_, c: &mut RatFunc| !c.is_zero());
        TruncSeries { mask: self.mask, d, coeffs }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> TruncSeries {
        TruncSeries {
            mask: self.mask,
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, a)| (*k, a * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        assert_eq!(self.mask, o.mask);
        let d = self.d.min(o.d);
        let mut acc: BTreeMap<Mono, Vec<RatFunc>> = BTreeMap::new();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &o.coeffs {
                if k1.degree() + k2.degree() <= d {
                    acc.entry(k1.mul(k2)).or_default().push(c1 * c2);
                }
            }
        }
        TruncSeries {
            mask: self.mask,
            d,
            coeffs: acc
                .into_iter()
                .map(|(k, v)| (k, RatFunc::sum(v)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Re-truncates at a lower degree.
    pub fn truncate(&self, d: i32) -> TruncSeries {
        TruncSeries {
            mask: self.mask,
            d: d.min(self.d),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.degree() <= d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of degree `k` as one rational function.
    pub fn homogeneous(&self, k: i32) -> RatFunc {
        RatFunc::sum(
            self.coeffs
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| c.mul_term(&Term::new(Rat::ONE, *m))),
        )
    }

    /// Applies `f` to every coefficient and monomial.
    pub fn map<F: FnMut(&Mono, &RatFunc) -> (Mono, RatFunc)>(&self, mask: u32, mut f: F) -> TruncSeries {
        let mut coeffs: BTreeMap<Mono, RatFunc> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            let (k2, c2) = f(k, c);
            let e = coeffs.entry(k2).or_default();
            *e = &*e + &c2;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncSeries {
            mask,
            d: self.d,
            coeffs,
        }
    }
}

/// Splits a monomial into its part in `mask` and the rest.
pub fn split_mask(m: &Mono, mask: u32) -> (Mono, Mono) {
    let mut key = [0i16; crate::mono::NVARS];
    let mut rest = *m.exps();
    for (i, (k, r)) in key.iter_mut().zip(rest.iter_mut()).enumerate() {
        if mask & (1 << i) != 0 {
            *k = *r;
            *r = 0;
        }
    }
    (Mono::from_exps(key), Mono::from_exps(rest))
}

/// Truncation at degree `d` of `sum_k ((a; base)_k / (base; base)_k) g^k`,
/// the q-binomial expansion of `(a g; base)_inf / (g; base)_inf`. The gauge
/// `g` must involve the series variables.
pub fn q_binomial_series(
    a: &Term,
    base: &Term,
    gauge: &Term,
    d: i32,
    mask: u32,
) -> Result<TruncSeries, DegenerateBase> {
    let (key, _) = split_mask(&gauge.m, mask);
    let step = key.degree();
    assert!(step > 0, "gauge must have positive degree in the series variables");
    let mut s = TruncSeries::one(mask, d);
    let mut k = 1;
    while k * step <= d {
        let dk = base.pow(k);
        if dk.m.is_one() && dk.c.is_one() {
            return Err(DegenerateBase);
        }
        let coef = qpoch_ratio(a, base, base, k as u32).mul_term(&gauge.pow(k));
        let part = TruncSeries::from_ratfunc_term(&coef, mask, d);
        s = s.add(&part);
        k += 1;
    }
    Ok(s)
}

impl TruncSeries {
    /// Splits a rational function whose denominator avoids the series
    /// variables.
    pub fn from_ratfunc_term(r: &RatFunc, mask: u32, d: i32) -> TruncSeries {
        assert!(
            r.den_atoms().iter().all(|(a, _)| a.poly().support() & mask == 0),
            "denominator involves series variables"
        );
        let den_only = RatFunc::new(Poly::one(), &r.denom());
        let mut s = TruncSeries::from_poly(r.numer(), mask, d);
        for c in s.coeffs.values_mut() {
            *c = &*c * &den_only;
        }
        s.coeffs.retain(|_, c| !c.is_zero());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Params;
    use crate::mono::{Bank, Var};

    #[test]
    fn qbinomial_small_degrees() {
        let s = Params::symbolic();
        let x1 = Bank::X.var(0);
        let z1 = Bank::Z.var(0);
        let mask = Bank::Z.mask(1);
        let g = Term::var(x1).mul(&Term::var(z1));
        let ser = q_binomial_series(&s.t, &s.q, &g, 2, mask).unwrap();
        let one = Poly::one();
        let q = Poly::var(Var::Q);
        let t = Poly::var(Var::T);
        let c1 = RatFunc::new(&one - &t, &(&one - &q)).mul_term(&Term::var(x1));
        let c2 = RatFunc::new(
            &(&one - &t) * &(&one - &(&t * &q)),
            &(&(&one - &q) * &(&one - &q.pow(2))),
        )
        .mul_term(&Term::var(x1).pow(2));
        assert!(ser.coeff(&Mono::ONE).is_one());
        assert_eq!(ser.coeff(&Mono::var(z1)), c1);
        assert_eq!(ser.coeff(&Mono::var_pow(z1, 2)), c2);
        assert_eq!(ser.coeffs().len(), 3);
        // zero-degree truncation is 1
        let one_ser = q_binomial_series(&s.t, &s.q, &g, 0, mask).unwrap();
        assert_eq!(one_ser, TruncSeries::one(mask, 0));
    }

    #[test]
    fn geometric_when_a_equals_base() {
        let s = Params::symbolic();
        let z1 = Bank::Z.var(0);
        let mask = Bank::Z.mask(1);
        let g = Term::var(z1);
        for d in 0..=6 {
            let ser = q_binomial_series(&s.q, &s.q, &g, d, mask).unwrap();
            let one_minus_g = TruncSeries::from_poly(&(&Poly::one() - &Poly::var(z1)), mask, d);
            assert_eq!(ser.mul(&one_minus_g), TruncSeries::one(mask, d), "d={d}");
        }
    }

    #[test]
    fn degenerate_base_rejected() {
        let z1 = Bank::Z.var(0);
        let r = q_binomial_series(
            &Term::constant(Rat::new(2, 1)),
            &Term::constant(Rat::ONE),
            &Term::var(z1),
            2,
            Bank::Z.mask(1),
        );
        assert_eq!(r.err(), Some(DegenerateBase));
    }

    #[test]
    fn useries_arithmetic() {
        let a = USeries::from_coeffs(alloc::vec![Rat::ONE, Rat::from_int(2)], 3);
        let b = USeries::from_coeffs(alloc::vec![Rat::ONE, Rat::from_int(-2), Rat::from_int(4), Rat::from_int(-8)], 3);
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), USeries::one(3).coeffs());
    }
}
