//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive remainder sequences: contents with respect to a main
//! variable are computed by recursion on the remaining variables. Inputs are
//! treated as Laurent polynomials, so monomial factors (units) are ignored and
//! the result is normalized with no monomial factor and leading coefficient 1.

use alloc::vec::Vec;

use crate::mono::{Mono, Var};
use crate::poly::Poly;
use crate::rat::Rat;

/// Greatest common divisor up to units of the Laurent polynomial ring.
/// `gcd(0, 0)` is zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let a = a.split_monomial().1;
    let b = b.split_monomial().1;
    gcd_poly(&a, &b).monic()
}

fn normalize(p: &Poly) -> Poly {
    p.split_monomial().1.monic()
}

fn is_constant(p: &Poly) -> bool {
    p.support() == 0
}

fn bits(mut s: u32) -> impl Iterator<Item = Var> {
    core::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros();
            s &= s - 1;
            Some(Var(i as u8))
        }
    })
}

fn deg(p: &Poly, v: Var) -> i32 {
    p.degree_range(v).0
}

/// gcd of polynomials with nonnegative exponents, primitive over the
/// rationals, up to a constant.
fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if is_constant(a) || is_constant(b) {
        return Poly::one();
    }
    if a == b {
        return a.primitive();
    }
    let sa = a.support();
    let sb = b.support();
    // A variable in only one argument contributes nothing beyond the content.
    if let Some(v) = bits(sa & !sb).next() {
        return gcd_poly(&content_in(a, v), b);
    }
    if let Some(v) = bits(sb & !sa).next() {
        return gcd_poly(a, &content_in(b, v));
    }
    let v = bits(sa & sb)
        .min_by_key(|&v| deg(a, v).max(deg(b, v)))
        .unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_poly(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(pa, pb, v);
    (&c * &g).primitive()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: Var) -> Poly {
    let coeffs: Vec<Poly> = p.coeffs_in(v).into_iter().map(|(_, c)| c).collect();
    let mut g = Poly::zero();
    for c in coeffs.iter().rev() {
        g = gcd_poly(&g, c);
        if is_constant(&g) {
            return Poly::one();
        }
    }
    g.primitive()
}

fn lead_coeff(p: &Poly, v: Var) -> (i32, Poly) {
    p.coeffs_in(v).into_iter().next().unwrap()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (db, lcb) = lead_coeff(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lcr) = lead_coeff(&r, v);
        if dr < db {
            break;
        }
        let shift = Mono::var_pow(v, dr - db);
        let lhs = &lcb * &r;
        let rhs = &lcr.mul_term(&Rat::ONE, &shift) * b;
        r = (&lhs - &rhs).primitive();
    }
    r
}

/// Primitive remainder sequence for primitive inputs in `v`.
fn prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if deg(&a, v) >= deg(&b, v) { (a, b) } else { (b, a) };
    loop {
        if deg(&b, v) == 0 {
            return Poly::one();
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.primitive();
        }
        if deg(&r, v) == 0 {
            return Poly::one();
        }
        let c = content_in(&r, v);
        a = b;
        b = r.div_exact(&c).expect("content divides");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::Bank;

    fn v(b: Bank, i: usize) -> Poly {
        Poly::var(b.var(i))
    }

    #[test]
    fn recovers_common_factor() {
        let q = Poly::var(Var::Q);
        let t = Poly::var(Var::T);
        let one = Poly::one();
        let f = &(&one - &(&q * &t)) + &(&q * &q); // 1 - qt + q^2
        let g1 = &t - &one;
        let g2 = &(&q * &t) + &Poly::from_int(3);
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b), f.monic());
        assert_eq!(gcd(&g1, &g2), Poly::one());
    }

    #[test]
    fn multivariate_and_laurent() {
        let x = v(Bank::X, 0);
        let y = v(Bank::Y, 0);
        let f = &x - &y.scale(&Rat::new(2, 3));
        let a = (&f * &(&x + &Poly::one())).mul_term(&Rat::new(5, 1), &Mono::var_pow(Var::Q, -3));
        let b = &(&f * &f) * &y;
        assert_eq!(gcd(&a, &b), f.monic());
    }
}
