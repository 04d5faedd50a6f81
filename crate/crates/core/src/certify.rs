//! Zero certification for q-difference operators of the form
//! `L = sum a_{μ,ν}(x, y) T_{q,x}^μ T_{t,y}^{-ν}` with `μ ∈ ℕ^n`, `ν ∈ ℕ^m`.
//!
//! Two independent tests are offered. The coefficient test reads off the
//! normal form. The specialization test applies `L` to the kernel
//! `Φ(x, y; z) = prod_{i,j} (x_i z_j; q)_∞ / (t^{-1} x_i z_j; q)_∞
//! · prod_{i,j} (1 - y_i z_j)`, divides by `Φ` and specializes `z` to points
//! that kill every term except those with `μ ≤ α`, `ν ≤ β`. Scanning
//! `(α, β)` by increasing degree, the first nonvanishing value sits at a
//! nonzero coefficient of minimal degree, so `L = 0` iff every value
//! vanishes.

use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::diffop::DiffOp;
use crate::field::{one_minus, qpoch_factors, Params};
use crate::mono::{Bank, Mono, Var};
use crate::operators::compositions;
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// The operator has a shift outside `T_{q,x}^{ℕ^n} T_{t,y}^{-ℕ^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionError {
    pub shift: Mono,
}

impl fmt::Display for ConventionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "shift {} is not of the form T_q,x^mu T_t,y^-nu with mu, nu >= 0",
            self.shift
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyMode {
    Coefficients,
    Specialization,
}

/// Outcome of a certification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub zero: bool,
    /// `(μ, ν)` of a nonvanishing coefficient of minimal degree, or of the
    /// first nonvanishing specialization. Both modes scan in the same order
    /// (degree, then lex descending), so on a nonzero operator they agree.
    pub pivot: Option<(Vec<u32>, Vec<u32>)>,
    /// Number of coefficients or specialization points examined.
    pub checked: usize,
}

/// Splits a shift key into `(μ, ν)`, checking the sign convention.
pub fn split_shift(s: &Mono, n: usize, m: usize) -> Result<(Vec<u32>, Vec<u32>), ConventionError> {
    let err = || ConventionError { shift: *s };
    let mut mu = Vec::with_capacity(n);
    let mut nu = Vec::with_capacity(m);
    let in_range = |v: Var| match v.bank() {
        Some((Bank::X, i)) => i < n,
        Some((Bank::Y, j)) => j < m,
        _ => false,
    };
    if s.iter().any(|(v, _)| !in_range(v)) {
        return Err(err());
    }
    for i in 0..n {
        let e = s.exp(Bank::X.var(i));
        if e < 0 {
            return Err(err());
        }
        mu.push(e as u32);
    }
    for j in 0..m {
        let e = s.exp(Bank::Y.var(j));
        if e > 0 {
            return Err(err());
        }
        nu.push((-e) as u32);
    }
    Ok((mu, nu))
}

fn split_all(op: &DiffOp, n: usize, m: usize) -> Result<Vec<(Vec<u32>, Vec<u32>, &RatFunc)>, ConventionError> {
    op.terms()
        .iter()
        .map(|(s, a)| split_shift(s, n, m).map(|(mu, nu)| (mu, nu, a)))
        .collect()
}

fn total(mu: &[u32], nu: &[u32]) -> u32 {
    mu.iter().chain(nu).sum()
}

fn vt(c: &Term, vars: &[(Var, i32)]) -> Term {
    let m = vars.iter().fold(Mono::ONE, |m, &(v, k)| m.mul(&Mono::var_pow(v, k)));
    c.mul(&Term::new(Rat::ONE, m))
}

/// The points `z_{α,β}`: `t q^{-α_i} / x_i` for each `i`, then
/// `t^k / y_j` for `β_j < k ≤ d`, as terms in `x, y`.
pub fn special_points(alpha: &[u32], beta: &[u32], d: u32, params: &Params) -> Vec<Term> {
    let mut z = Vec::new();
    for (i, &a) in alpha.iter().enumerate() {
        z.push(vt(&params.t.mul(&params.q.pow(-(a as i32))), &[(Bank::X.var(i), -1)]));
    }
    for (j, &b) in beta.iter().enumerate() {
        for k in b + 1..=d {
            z.push(vt(&params.t.pow(k as i32), &[(Bank::Y.var(j), -1)]));
        }
    }
    z
}

/// `(T_{q,x}^μ T_{t,y}^{-ν} Φ) / Φ` at the given `z` values.
pub fn phi_ratio(mu: &[u32], nu: &[u32], z: &[Term], params: &Params) -> RatFunc {
    let (q, t) = (&params.q, &params.t);
    let mut nums: Vec<Poly> = Vec::new();
    let mut dens: Vec<Poly> = Vec::new();
    for zj in z {
        for (i, &k) in mu.iter().enumerate() {
            let xz = vt(zj, &[(Bank::X.var(i), 1)]);
            nums.extend(qpoch_factors(&t.inv().mul(&xz), q, k));
            dens.extend(qpoch_factors(&xz, q, k));
        }
        for (i, &k) in nu.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let yz = vt(zj, &[(Bank::Y.var(i), 1)]);
            nums.push(one_minus(&t.pow(-(k as i32)).mul(&yz)));
            dens.push(one_minus(&yz));
        }
    }
    if nums.iter().any(Poly::is_zero) {
        return RatFunc::zero();
    }
    RatFunc::from_factors(&nums, &dens)
}

/// Pairs `(α, β)` with `|α| + |β| = e`.
fn index_pairs(n: usize, m: usize, e: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    compositions(n + m, e)
        .into_iter()
        .map(|c| (c[..n].to_vec(), c[n..].to_vec()))
        .collect()
}

/// The specialized value `S_{α,β}` for an operator given as a sum of
/// parts, each part specialized separately.
pub fn specialized_value(parts: &[&DiffOp], alpha: &[u32], beta: &[u32], d: u32) -> Result<RatFunc, ConventionError> {
    let (n, m) = (alpha.len(), beta.len());
    let mut vals = Vec::new();
    for op in parts {
        let z = special_points(alpha, beta, d, op.params());
        for (mu, nu, a) in split_all(op, n, m)? {
            let phi = phi_ratio(&mu, &nu, &z, op.params());
            if !phi.is_zero() {
                vals.push(a * &phi);
            }
        }
    }
    Ok(RatFunc::sum(vals))
}

/// Certifies `sum parts = 0` on `n` x-variables and `m` y-variables.
pub fn certify_sum(parts: &[&DiffOp], n: usize, m: usize, mode: CertifyMode) -> Result<Certificate, ConventionError> {
    match mode {
        CertifyMode::Coefficients => {
            let mut sum = match parts.first() {
                Some(p) => DiffOp::zero(p.params(), p.arity()),
                None => {
                    return Ok(Certificate {
                        zero: true,
                        pivot: None,
                        checked: 0,
                    })
                }
            };
            for p in parts {
                sum = sum.add(p);
            }
            let terms = split_all(&sum, n, m)?;
            let checked = terms.len();
            let pivot = terms
                .into_iter()
                .min_by_key(|(mu, nu, _)| (total(mu, nu), Reverse([&mu[..], &nu[..]].concat())))
                .map(|(mu, nu, _)| (mu, nu));
            Ok(Certificate {
                zero: pivot.is_none(),
                pivot,
                checked,
            })
        }
        CertifyMode::Specialization => {
            let mut d = 0;
            for p in parts {
                for (mu, nu, _) in split_all(p, n, m)? {
                    d = d.max(total(&mu, &nu));
                }
            }
            let mut checked = 0;
            for e in 0..=d {
                for (alpha, beta) in index_pairs(n, m, e) {
                    checked += 1;
                    if !specialized_value(parts, &alpha, &beta, d)?.is_zero() {
                        return Ok(Certificate {
                            zero: false,
                            pivot: Some((alpha, beta)),
                            checked,
                        });
                    }
                }
            }
            Ok(Certificate {
                zero: true,
                pivot: None,
                checked,
            })
        }
    }
}

/// Certifies `op = 0`.
pub fn certify_zero(op: &DiffOp, n: usize, m: usize, mode: CertifyMode) -> Result<Certificate, ConventionError> {
    certify_sum(&[op], n, m, mode)
}

/// Certifies `[a, b] = 0`, specializing `a∘b` and `b∘a` separately so the
/// cancellation happens in the specialized values.
pub fn certify_commutator(a: &DiffOp, b: &DiffOp, n: usize, m: usize, mode: CertifyMode) -> Result<Certificate, ConventionError> {
    let ab = a.compose(b);
    let ba = b.compose(a).neg();
    certify_sum(&[&ab, &ba], n, m, mode)
}
