//! Super-Macdonald polynomials in `x = (x_1..x_n)`, `y = (y_1..y_m)`, the
//! quasi-invariance test for the algebra they span, deformed Newton sums and
//! the restriction homomorphism from symmetric functions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::{one_minus, FieldElem, Params};
use crate::macdonald::{q_branching, skew_p_branching};
use crate::mono::{swap_perm, Bank, Mono, Var};
use crate::partition::{b_lambda, Partition};
use crate::poly::{Poly, Term};
use crate::ratfunc::RatFunc;

/// `(-t)^k` as a term.
fn minus_t_pow(params: &Params, k: u32) -> Term {
    let t = params.t.pow(k as i32);
    if k % 2 == 1 {
        t.neg()
    } else {
        t
    }
}

/// All partitions contained in `lam`.
pub fn subpartitions(lam: &Partition) -> Vec<Partition> {
    fn rec(lam: &Partition, i: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur));
        if i >= lam.len() {
            return;
        }
        for v in 1..=bound.min(lam.part(i)) {
            cur.push(v);
            rec(lam, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lam, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// `SP_lambda(x, y; q, t) = sum_{nu ⊆ lambda} (-t)^{|nu|} P_{lambda/nu}(x; q, t) Q_{nu'}(y; t, q)`
/// with `x` the first `n` slots of bank X and `y` the first `m` of bank Y.
pub fn super_p(lam: &Partition, n: usize, m: usize, params: &Params) -> RatFunc {
    let swapped = params.swapped();
    let mut parts = Vec::new();
    for nu in subpartitions(lam) {
        let conj = nu.conjugate();
        if conj.len() > m {
            continue;
        }
        let px = skew_p_branching(lam, &nu, Bank::X, n, params).expect("nu inside lambda");
        if px.is_zero() {
            continue;
        }
        let qy = q_branching(&conj, Bank::Y, m, &swapped);
        parts.push((&px * &qy).mul_term(&minus_t_pow(params, nu.weight())));
    }
    RatFunc::sum(parts)
}

/// `SQ_lambda = b_lambda SP_lambda`.
pub fn super_q(lam: &Partition, n: usize, m: usize, params: &Params) -> RatFunc {
    &super_p(lam, n, m, params) * &b_lambda(lam, params)
}

/// `p_r(x, y; q, t) = sum_i x_i^r + ((1 - q^r) / (1 - t^-r)) sum_j y_j^r`.
pub fn deformed_newton_sum(r: u32, n: usize, m: usize, params: &Params) -> RatFunc {
    let r = r as i32;
    let xs = Poly::sum((0..n).map(|i| Poly::mono(Mono::var_pow(Bank::X.var(i), r))));
    let ys = Poly::sum((0..m).map(|j| Poly::mono(Mono::var_pow(Bank::Y.var(j), r))));
    let c = RatFunc::from_factors(&[one_minus(&params.q.pow(r))], &[one_minus(&params.t.pow(-r))]);
    &RatFunc::from_poly(xs) + &c.mul_poly(&ys)
}

/// The homomorphism sending `p_r` to the deformed Newton sum, applied to a
/// combination of power-sum products.
pub fn phi_restriction(f: &BTreeMap<Partition, FieldElem>, n: usize, m: usize, params: &Params) -> RatFunc {
    let top = f.keys().flat_map(|p| p.parts().iter().copied()).max().unwrap_or(0);
    let sums: Vec<RatFunc> = (0..=top)
        .map(|r| {
            if r == 0 {
                RatFunc::one()
            } else {
                deformed_newton_sum(r, n, m, params)
            }
        })
        .collect();
    RatFunc::sum(f.iter().map(|(rho, c)| {
        rho.parts()
            .iter()
            .fold(c.clone(), |acc, &r| &acc * &sums[r as usize])
    }))
}

/// True when `p` is invariant under every adjacent transposition of the
/// first `k` variables of `bank`.
pub fn is_symmetric_in(p: &RatFunc, bank: Bank, k: usize) -> bool {
    (1..k).all(|i| {
        let perm = swap_perm(&[(bank.var(i - 1), bank.var(i))]);
        p.permute(&perm) == *p
    })
}

/// `(T_{q,x_i} - T_{t,y_j}^{-1}) p` restricted to `x_i = y_j`.
pub fn qinv_residual(p: &RatFunc, i: usize, j: usize, params: &Params) -> RatFunc {
    let xi = Bank::X.var(i);
    let yj = Bank::Y.var(j);
    let shifted_x = p.scale_vars(&[(xi, params.q.clone())]);
    let shifted_y = p.scale_vars(&[(yj, params.t.inv())]);
    let diff = &shifted_x - &shifted_y;
    diff.subst_terms(&[(xi, Term::var(yj))])
        .expect("polynomial input has no poles")
}

/// Membership in the algebra spanned by super-Macdonald polynomials:
/// separate symmetry in `x` and `y` plus quasi-invariance along every
/// diagonal `x_i = y_j`.
pub fn is_in_lambda_nm(p: &RatFunc, n: usize, m: usize, params: &Params) -> bool {
    if !is_symmetric_in(p, Bank::X, n) || !is_symmetric_in(p, Bank::Y, m) {
        return false;
    }
    (0..n).all(|i| (0..m).all(|j| qinv_residual(p, i, j, params).is_zero()))
}

/// The undeformed power sum `sum x_i^r + sum y_j^r`, a convenient
/// non-member for tests and demonstrations.
pub fn plain_power_sum(r: u32, n: usize, m: usize) -> RatFunc {
    let r = r as i32;
    RatFunc::from_poly(Poly::sum(
        (0..n)
            .map(|i| Bank::X.var(i))
            .chain((0..m).map(|j| Bank::Y.var(j)))
            .map(|v: Var| Poly::mono(Mono::var_pow(v, r))),
    ))
}

/// Rescales every `y` variable by `c`.
pub fn scale_y(p: &RatFunc, m: usize, c: &Term) -> RatFunc {
    let scales: Vec<(Var, Term)> = (0..m).map(|j| (Bank::Y.var(j), c.clone())).collect();
    p.scale_vars(&scales)
}

/// `(-q)^-k` as a term.
pub fn minus_q_inv_pow(params: &Params, k: u32) -> Term {
    let base = params.q.pow(-(k as i32));
    if k % 2 == 1 {
        base.neg()
    } else {
        base
    }
}
