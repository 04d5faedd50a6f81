//! Constructors for the Macdonald-Ruijsenaars and Noumi-Sano operators,
//! their deformed two-bank versions and the normalized series coefficients.
//!
//! Every constructor works with "role" banks and "role" parameters: the
//! `x` role may sit on bank `Y` and the parameter `q` of the role may be
//! `t^{-1}`. Shifts are converted to the true bank bases, so e.g. a
//! `T_{t^{-1}, x}` on bank `X` is stored with exponent `-1` against base `q`
//! only when `t^{-1} = q^{±1}` in the chosen parameters. Mismatched bases
//! panic; all constructions here only ever pair a role base with the true
//! base of its bank or its inverse.

use alloc::vec;
use alloc::vec::Vec;

use crate::diffop::{bank_base, Arity, DiffOp};
use crate::field::{qpoch_factors, qpoch_term, Params};
use crate::mono::{Bank, Mono, Var};
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// Assignment of the two variable roles to banks and sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Roles {
    pub x: Bank,
    pub n: usize,
    pub y: Bank,
    pub m: usize,
}

impl Roles {
    /// `x` on bank `X`, `y` on bank `Y`.
    pub fn standard(n: usize, m: usize) -> Roles {
        Roles {
            x: Bank::X,
            n,
            y: Bank::Y,
            m,
        }
    }

    /// `x` on bank `Y` with `m` variables, `y` on bank `X` with `n`.
    pub fn swapped(n: usize, m: usize) -> Roles {
        Roles {
            x: Bank::Y,
            n: m,
            y: Bank::X,
            m: n,
        }
    }

    fn arity(&self) -> Arity {
        let mut a = [0usize; 4];
        for (b, k) in [(self.x, self.n), (self.y, self.m)] {
            let i = match b {
                Bank::X => 0,
                Bank::Y => 1,
                Bank::Z => 2,
                Bank::W => 3,
            };
            a[i] = a[i].max(k);
        }
        a
    }

    fn xv(&self, i: usize) -> Var {
        self.x.var(i)
    }

    fn yv(&self, i: usize) -> Var {
        self.y.var(i)
    }
}

/// Which construction to use for the deformed MR operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MrRoute {
    /// From the `A` coefficients.
    Direct,
    /// From the deformed NS operators with banks and parameters exchanged.
    Swap,
}

/// Exponent `e` with `role = base^e`, `e = ±1`.
fn base_sign(role: &Term, base: &Term) -> i32 {
    if role == base {
        1
    } else if *role == base.inv() {
        -1
    } else {
        panic!("shift base {role} is not {base} or its inverse")
    }
}

/// All compositions of `k` into `n` nonnegative parts, in lex order.
pub fn compositions(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 >= cur.len() {
            if cur.is_empty() {
                if left == 0 {
                    out.push(Vec::new());
                }
                return;
            }
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, k, &mut cur, &mut out);
    out
}

/// All subsets of `{0..n}` of size `k` as indicator vectors.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).map(|i| mask >> i & 1 == 1).collect());
        }
    }
    out.reverse();
    out
}

fn binom2(k: usize) -> i32 {
    (k * k.saturating_sub(1) / 2) as i32
}

fn vt(c: &Term, vars: &[(Var, i32)]) -> Term {
    let m = vars.iter().fold(Mono::ONE, |m, &(v, k)| m.mul(&Mono::var_pow(v, k)));
    c.mul(&Term::new(Rat::ONE, m))
}

/// `a - b` for terms.
fn diff(a: &Term, b: &Term) -> Poly {
    &a.to_poly() - &b.to_poly()
}

fn one_minus(a: &Term) -> Poly {
    crate::field::one_minus(a)
}

fn key(roles: &Roles, xs: &[i32], ys: &[i32], p: &Params, rp: &Params) -> Mono {
    let mut m = Mono::ONE;
    if !xs.is_empty() {
        let sx = base_sign(&rp.q, bank_base(p, roles.x));
        for (i, &k) in xs.iter().enumerate() {
            m = m.mul(&Mono::var_pow(roles.xv(i), sx * k));
        }
    }
    if !ys.is_empty() {
        let sy = base_sign(&rp.t, bank_base(p, roles.y));
        for (j, &k) in ys.iter().enumerate() {
            m = m.mul(&Mono::var_pow(roles.yv(j), sy * k));
        }
    }
    m
}

/// Coefficient `B_{μ,I}` of the deformed NS operators, in role variables
/// with role parameters `rp`.
pub fn b_coeff_roles(mu: &[u32], iset: &[bool], roles: &Roles, rp: &Params) -> RatFunc {
    let (n, m) = (roles.n, roles.m);
    assert_eq!(mu.len(), n);
    assert_eq!(iset.len(), m);
    let (q, t) = (&rp.q, &rp.t);
    let one = Term::one();
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            nums.push(diff(
                &vt(&q.pow(mu[i] as i32), &[(roles.xv(i), 1)]),
                &vt(&q.pow(mu[j] as i32), &[(roles.xv(j), 1)]),
            ));
            dens.push(diff(&vt(&one, &[(roles.xv(i), 1)]), &vt(&one, &[(roles.xv(j), 1)])));
        }
        for j in 0..n {
            let ratio: &[(Var, i32)] = if i == j { &[] } else { &[(roles.xv(i), 1), (roles.xv(j), -1)] };
            nums.extend(qpoch_factors(&vt(t, ratio), q, mu[i]));
            dens.extend(qpoch_factors(&vt(q, ratio), q, mu[i]));
        }
    }
    for i in 0..m {
        for j in 0..m {
            if iset[i] && !iset[j] {
                nums.push(diff(&vt(&one, &[(roles.yv(i), 1)]), &vt(q, &[(roles.yv(j), 1)])));
                dens.push(diff(&vt(&one, &[(roles.yv(i), 1)]), &vt(&one, &[(roles.yv(j), 1)])));
            }
        }
    }
    for i in 0..n {
        let xy = |j: usize| [(roles.xv(i), 1), (roles.yv(j), -1)];
        for j in 0..m {
            if iset[j] {
                nums.push(one_minus(&vt(&t.inv(), &xy(j))));
                dens.push(one_minus(&vt(&q.pow(mu[i] as i32), &xy(j))));
            } else {
                nums.push(one_minus(&vt(&q.inv(), &xy(j))));
                dens.push(one_minus(&vt(&q.pow(mu[i] as i32 - 1), &xy(j))));
            }
        }
    }
    RatFunc::from_factors(&nums, &dens)
}

/// Coefficient `A_{I,μ}` of the deformed MR operators, in role variables
/// with role parameters `rp`.
pub fn a_coeff_roles(iset: &[bool], mu: &[u32], roles: &Roles, rp: &Params) -> RatFunc {
    let (n, m) = (roles.n, roles.m);
    assert_eq!(iset.len(), n);
    assert_eq!(mu.len(), m);
    let (q, t) = (&rp.q, &rp.t);
    let ti = t.inv();
    let one = Term::one();
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if iset[i] && !iset[j] {
                nums.push(diff(&vt(&one, &[(roles.xv(i), 1)]), &vt(&ti, &[(roles.xv(j), 1)])));
                dens.push(diff(&vt(&one, &[(roles.xv(i), 1)]), &vt(&one, &[(roles.xv(j), 1)])));
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            nums.push(diff(
                &vt(&ti.pow(mu[i] as i32), &[(roles.yv(i), 1)]),
                &vt(&ti.pow(mu[j] as i32), &[(roles.yv(j), 1)]),
            ));
            dens.push(diff(&vt(&one, &[(roles.yv(i), 1)]), &vt(&one, &[(roles.yv(j), 1)])));
        }
        for j in 0..m {
            let ratio: &[(Var, i32)] = if i == j { &[] } else { &[(roles.yv(i), 1), (roles.yv(j), -1)] };
            nums.extend(qpoch_factors(&vt(&q.inv(), ratio), &ti, mu[i]));
            dens.extend(qpoch_factors(&vt(&ti, ratio), &ti, mu[i]));
        }
    }
    for i in 0..m {
        let yx = |j: usize| [(roles.yv(i), 1), (roles.xv(j), -1)];
        for j in 0..n {
            if iset[j] {
                nums.push(one_minus(&vt(q, &yx(j))));
                dens.push(one_minus(&vt(&ti.pow(mu[i] as i32), &yx(j))));
            } else {
                nums.push(one_minus(&vt(t, &yx(j))));
                dens.push(one_minus(&vt(&t.pow(1 - mu[i] as i32), &yx(j))));
            }
        }
    }
    RatFunc::from_factors(&nums, &dens)
}

/// `B_{μ,I}(x, y; q, t)` on the standard banks.
pub fn b_coeff(mu: &[u32], iset: &[bool], params: &Params) -> RatFunc {
    b_coeff_roles(mu, iset, &Roles::standard(mu.len(), iset.len()), params)
}

/// `A_{I,μ}(x, y; q, t)` on the standard banks.
pub fn a_coeff(iset: &[bool], mu: &[u32], params: &Params) -> RatFunc {
    a_coeff_roles(iset, mu, &Roles::standard(iset.len(), mu.len()), params)
}

fn to_i32(v: &[u32]) -> Vec<i32> {
    v.iter().map(|&a| a as i32).collect()
}

fn ind(v: &[bool]) -> Vec<i32> {
    v.iter().map(|&b| b as i32).collect()
}

fn neg_ind(v: &[bool]) -> Vec<i32> {
    v.iter().map(|&b| -(b as i32)).collect()
}

/// Coefficient of `u^r` in `H_{n,m}(x, y; u)` for role banks and role
/// parameters `rp`; `p` fixes the true shift bases.
pub fn ns_raw_roles(r: u32, roles: &Roles, rp: &Params, p: &Params) -> DiffOp {
    let (n, m) = (roles.n, roles.m);
    let (q, t) = (&rp.q, &rp.t);
    let gauge = t.pow(1 - n as i32).mul(&q.pow(m as i32));
    let mut terms = Vec::new();
    for k in 0..=(r.min(m as u32)) {
        let i_size = k as usize;
        let c = gauge
            .pow((r - k) as i32)
            .mul(&t.neg().pow(k as i32))
            .mul(&q.pow(binom2(i_size)));
        for iset in subsets(m, i_size) {
            for mu in compositions(n, r - k) {
                let b = b_coeff_roles(&mu, &iset, roles, rp);
                terms.push((key(roles, &to_i32(&mu), &neg_ind(&iset), p, rp), b.mul_term(&c)));
            }
        }
    }
    DiffOp::from_terms(p, roles.arity(), terms)
}

/// Coefficient of `u^r` in the normalized series
/// `(t^{1-n} q^m u; q)_∞ / (t u; q)_∞ · H_{n,m}(x, y; u)`.
pub fn ns_roles(r: u32, roles: &Roles, rp: &Params, p: &Params) -> DiffOp {
    let (n, m) = (roles.n as i32, roles.m as i32);
    let a = rp.t.pow(-n).mul(&rp.q.pow(m));
    let mut acc = DiffOp::zero(p, roles.arity());
    for s in 0..=r {
        let pre = qpoch_term(&a, &rp.q, s)
            .div_ref(&qpoch_term(&rp.q, &rp.q, s))
            .mul_term(&rp.t.pow(s as i32));
        acc = acc.add(&ns_raw_roles(r - s, roles, rp, p).scale(&pre));
    }
    acc
}

/// Coefficient of `(-u)^r` in `D_{n,m}(x, y; u)` built from the `A`
/// coefficients.
pub fn mr_raw_roles(r: u32, roles: &Roles, rp: &Params, p: &Params) -> DiffOp {
    let (n, m) = (roles.n, roles.m);
    let (q, t) = (&rp.q, &rp.t);
    let gauge = q.pow(m as i32).mul(&t.pow(-(n as i32)));
    let mut terms = Vec::new();
    for k in 0..=(r.min(n as u32)) {
        let i_size = k as usize;
        let c = gauge
            .neg()
            .pow((r - k) as i32)
            .mul(&t.pow(-binom2(i_size)));
        for iset in subsets(n, i_size) {
            for mu in compositions(m, r - k) {
                let a = a_coeff_roles(&iset, &mu, roles, rp);
                let ys: Vec<i32> = mu.iter().map(|&v| -(v as i32)).collect();
                terms.push((key(roles, &ind(&iset), &ys, p, rp), a.mul_term(&c)));
            }
        }
    }
    DiffOp::from_terms(p, roles.arity(), terms)
}

/// Coefficient of `(-u)^r` in `D_{n,m}(x, y; u)` through the NS operators
/// with exchanged banks: `D_{n,m}(x,y;u;q,t) = H_{m,n}(y,x;qu;t^{-1},q^{-1})`.
pub fn mr_raw_swap(r: u32, roles: &Roles, rp: &Params, p: &Params) -> DiffOp {
    let sw = Roles {
        x: roles.y,
        n: roles.m,
        y: roles.x,
        m: roles.n,
    };
    let c = rp.q.pow(r as i32);
    let c = if r % 2 == 1 { c.neg() } else { c };
    ns_raw_roles(r, &sw, &rp.dual(), p).scale_term(&c)
}

/// Coefficient of `(-u)^r` in the normalized series
/// `(q^m t^{-n} u; t^{-1})_∞ / (u; t^{-1})_∞ · D_{n,m}(x, y; u)`.
pub fn mr_roles(r: u32, roles: &Roles, rp: &Params, p: &Params, route: MrRoute) -> DiffOp {
    let (n, m) = (roles.n as i32, roles.m as i32);
    let a = rp.q.pow(m).mul(&rp.t.pow(-n));
    let ti = rp.t.inv();
    let mut acc = DiffOp::zero(p, roles.arity());
    for s in 0..=r {
        let mut pre = qpoch_term(&a, &ti, s).div_ref(&qpoch_term(&ti, &ti, s));
        if s % 2 == 1 {
            pre = pre.neg_ref();
        }
        let raw = match route {
            MrRoute::Direct => mr_raw_roles(r - s, roles, rp, p),
            MrRoute::Swap => mr_raw_swap(r - s, roles, rp, p),
        };
        acc = acc.add(&raw.scale(&pre));
    }
    acc
}

/// The deformed NS operator `𝓗^r_{n,m}(x, y; q, t)`.
pub fn deformed_ns(r: u32, n: usize, m: usize, params: &Params) -> DiffOp {
    ns_roles(r, &Roles::standard(n, m), params, params)
}

/// The deformed MR operator `𝓓^r_{n,m}(x, y; q, t)`.
pub fn deformed_mr(r: u32, n: usize, m: usize, params: &Params, route: MrRoute) -> DiffOp {
    mr_roles(r, &Roles::standard(n, m), params, params, route)
}

/// Coefficient of `(-u)^r` in Macdonald's `D_n(x; u; q, t)` on a role bank.
pub fn classical_d_roles(r: u32, bank: Bank, n: usize, rp: &Params, p: &Params) -> DiffOp {
    let roles = Roles {
        x: bank,
        n,
        y: bank,
        m: 0,
    };
    let t = &rp.t;
    let one = Term::one();
    let c = t.pow(binom2(r as usize));
    let mut terms = Vec::new();
    for iset in subsets(n, r as usize) {
        let mut nums = Vec::new();
        let mut dens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if iset[i] && !iset[j] {
                    nums.push(diff(&vt(t, &[(bank.var(i), 1)]), &vt(&one, &[(bank.var(j), 1)])));
                    dens.push(diff(&vt(&one, &[(bank.var(i), 1)]), &vt(&one, &[(bank.var(j), 1)])));
                }
            }
        }
        let coeff = RatFunc::from_factors(&nums, &dens).mul_term(&c);
        terms.push((key(&roles, &ind(&iset), &[], p, rp), coeff));
    }
    DiffOp::from_terms(p, roles.arity(), terms)
}

/// Coefficient of `u^r` in the NS operator `H_n(x; u; q, t)` on a role
/// bank.
pub fn classical_h_roles(r: u32, bank: Bank, n: usize, rp: &Params, p: &Params) -> DiffOp {
    let roles = Roles {
        x: bank,
        n,
        y: bank,
        m: 0,
    };
    let mut terms = Vec::new();
    for mu in compositions(n, r) {
        let b = b_coeff_roles(&mu, &[], &roles, rp);
        terms.push((key(&roles, &to_i32(&mu), &[], p, rp), b));
    }
    DiffOp::from_terms(p, roles.arity(), terms)
}

/// `D_n^r(x; q, t)` on bank `X`.
pub fn classical_d(r: u32, n: usize, params: &Params) -> DiffOp {
    classical_d_roles(r, Bank::X, n, params, params)
}

/// `H_n^r(x; q, t)` on bank `X`.
pub fn classical_h(r: u32, n: usize, params: &Params) -> DiffOp {
    classical_h_roles(r, Bank::X, n, params, params)
}

/// Operator family selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Ns,
    Mr,
}

/// `𝓗̂^r(x, y; q, t) = 𝓗^r(x, q t y; q^{-1}, t^{-1})` and likewise for the MR
/// family: inverted parameters with `y` rescaled by `q t` in the
/// coefficients. Multiplicative shifts commute with the rescaling, so the
/// shift keys are those of the inverted-parameter operator.
pub fn hat_variant(family: Family, r: u32, n: usize, m: usize, params: &Params) -> DiffOp {
    let roles = Roles::standard(n, m);
    let inv = params.inverted();
    let op = match family {
        Family::Ns => ns_roles(r, &roles, &inv, params),
        Family::Mr => mr_roles(r, &roles, &inv, params, MrRoute::Direct),
    };
    let qt = params.qt(1, 1);
    let scales: Vec<(Var, Term)> = (0..m).map(|j| (Bank::Y.var(j), qt.clone())).collect();
    op.map_coeffs(|c| c.scale_vars(&scales))
}

/// One of the four implications along `x_1 = y_1` behind the preservation
/// of `Λ_{n,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Implication {
    /// `1 ∈ I ⇒ T_{t,y_1}^{-1} B_{μ,I} = 0`.
    I,
    /// `μ_1 ≥ 1, 1 ∉ I ⇒ T_{q,x_1} B_{μ,I} = 0`.
    II,
    /// `μ_1 = 0, 1 ∉ I ⇒ (T_{q,x_1} - T_{t,y_1}^{-1}) B_{μ,I} = 0`.
    III,
    /// `μ_1 ≥ 1, 1 ∉ I ⇒ T_{t,y_1}^{-1} B_{μ,I}
    /// + t^n q^{|I|-m} T_{q,x_1} B_{μ-e_1, I∪{1}} = 0`.
    IV,
}

/// Residual of one implication instance, restricted to `x_1 = y_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicationCheck {
    pub kind: Implication,
    pub mu: Vec<u32>,
    pub iset: Vec<bool>,
    pub residual: RatFunc,
}

/// All implication instances with `|μ| + |I| ≤ max_weight` (needs `n, m ≥ 1`).
pub fn implication_checks(n: usize, m: usize, max_weight: u32, params: &Params) -> Vec<ImplicationCheck> {
    let (x1, y1) = (Bank::X.var(0), Bank::Y.var(0));
    let tq = [(x1, params.q.clone())];
    let ty = [(y1, params.t.inv())];
    let diag = |f: &RatFunc| f.subst_terms(&[(x1, Term::var(y1))]).expect("B has no pole on x_1 = y_1 after the shift");
    let mut out = Vec::new();
    for k in 0..=max_weight {
        for isz in 0..=(k.min(m as u32)) {
            for iset in subsets(m, isz as usize) {
                for mu in compositions(n, k - isz) {
                    let b = b_coeff(&mu, &iset, params);
                    let mut push = |kind, residual| {
                        out.push(ImplicationCheck {
                            kind,
                            mu: mu.clone(),
                            iset: iset.clone(),
                            residual,
                        })
                    };
                    if iset[0] {
                        push(Implication::I, diag(&b.scale_vars(&ty)));
                    } else if mu[0] == 0 {
                        push(Implication::III, diag(&(&b.scale_vars(&tq) - &b.scale_vars(&ty))));
                    } else {
                        push(Implication::II, diag(&b.scale_vars(&tq)));
                        let mut mu1 = mu.clone();
                        mu1[0] -= 1;
                        let mut i1 = iset.clone();
                        i1[0] = true;
                        let c = params.t.pow(n as i32).mul(&params.q.pow(isz as i32 - m as i32));
                        let other = b_coeff(&mu1, &i1, params).scale_vars(&tq).mul_term(&c);
                        push(Implication::IV, diag(&(&b.scale_vars(&ty) + &other)));
                    }
                }
            }
        }
    }
    out
}

/// `sum_{r+s=k} (-1)^r (1 - t^r q^s) 𝓓^r 𝓗^s`, which vanishes identically.
pub fn wronski_operator(k: u32, n: usize, m: usize, params: &Params) -> DiffOp {
    let roles = Roles::standard(n, m);
    let mut acc = DiffOp::zero(params, roles.arity());
    for r in 0..=k {
        let c = RatFunc::from_poly(crate::field::one_minus(&params.qt((k - r) as i32, r as i32)));
        let c = if r % 2 == 1 { c.neg_ref() } else { c };
        let prod = deformed_mr(r, n, m, params, MrRoute::Direct).compose(&deformed_ns(k - r, n, m, params));
        acc = acc.add(&prod.scale(&c));
    }
    acc
}
