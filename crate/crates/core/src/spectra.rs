//! Eigenvalue generating functions and the polynomials they define.
//!
//! `G^♮_{n,m}(x, y; u) = sum_r g_r^♮ u^r` and
//! `E^♮_{n,m}(x, y; u) = sum_r e_r^♮ (-u)^r` give the eigenvalues of the
//! normalized NS and MR operators after evaluation at the spectral point
//! `(q^μ, t^{-ν-n})` of a partition in the fat hook. The shifted symmetric
//! counterparts `g_r^*`, `p_r^*` live on bank `Z`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::{qpoch_term, FieldElem, Params};
use crate::macdonald::{to_power_sums, MacdonaldError};
use crate::mono::{Bank, Var};
use crate::operators::{deformed_mr, deformed_ns, hat_variant, Family, MrRoute};
use crate::partition::{hook_split, NotInHook, Partition};
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::{PoleError, RatFunc};
use crate::series::{qbinomial_u, USeries};
use crate::superpoly::super_p;

/// `1 - c u` as a series.
fn linear(c: &Term, order: usize) -> USeries<FieldElem> {
    let mut v = alloc::vec![RatFunc::one()];
    if order >= 1 {
        v.push(RatFunc::from_term(&c.neg()));
    }
    USeries::from_coeffs(v, order)
}

/// `1 / (1 - c u) = sum_k c^k u^k`.
fn geometric(c: &Term, order: usize) -> USeries<FieldElem> {
    USeries::from_coeffs((0..=order).map(|k| RatFunc::from_term(&c.pow(k as i32))).collect(), order)
}

fn vterm(c: Term, v: Var) -> Term {
    c.mul(&Term::var(v))
}

/// `G^♮` with the `x` role on `xb` (`n` variables) and the `y` role on `yb`
/// (`m` variables), for role parameters `rp`.
pub fn g_natural_series_roles(xb: Bank, n: usize, yb: Bank, m: usize, rp: &Params, order: usize) -> USeries<FieldElem> {
    let (q, t) = (&rp.q, &rp.t);
    let mut acc = USeries::one(order);
    for i in 0..n {
        let g = vterm(t.pow(-(i as i32)), xb.var(i));
        acc = acc.mul(&qbinomial_u(t, q, &g, order));
        acc = acc.mul(&qbinomial_u(&t.inv(), q, &t.pow(1 - i as i32), order));
    }
    for j in 0..m {
        let c = vterm(t.mul(&q.pow(j as i32)), yb.var(j));
        acc = acc.mul(&linear(&c, order));
        acc = acc.mul(&geometric(&t.pow(1 - n as i32).mul(&q.pow(j as i32)), order));
    }
    acc
}

/// `G^♮_{n,m}(x, y; u)` to order `u^order`.
pub fn g_natural_series(n: usize, m: usize, params: &Params, order: usize) -> USeries<FieldElem> {
    g_natural_series_roles(Bank::X, n, Bank::Y, m, params, order)
}

/// `g_r^♮(x, y)`.
pub fn g_natural(r: usize, n: usize, m: usize, params: &Params) -> RatFunc {
    g_natural_series(n, m, params, r).coeff(r).clone()
}

/// `E^♮_{n,m}(x, y; u)` as a series in `u` (not `-u`).
pub fn e_natural_series(n: usize, m: usize, params: &Params, order: usize) -> USeries<FieldElem> {
    let (q, t) = (&params.q, &params.t);
    let ti = t.inv();
    let mut acc = USeries::one(order);
    for i in 0..n {
        acc = acc.mul(&linear(&vterm(t.pow(-(i as i32)), Bank::X.var(i)), order));
        acc = acc.mul(&geometric(&t.pow(-(i as i32)), order));
    }
    for j in 0..m {
        let j1 = j as i32 + 1;
        acc = acc.mul(&qbinomial_u(&q.inv(), &ti, &vterm(q.pow(j1), Bank::Y.var(j)), order));
        acc = acc.mul(&qbinomial_u(q, &ti, &t.pow(-(n as i32)).mul(&q.pow(j1 - 1)), order));
    }
    acc
}

/// `e_r^♮(x, y)`: the coefficient of `(-u)^r` in `E^♮`.
pub fn e_natural(r: usize, n: usize, m: usize, params: &Params) -> RatFunc {
    let c = e_natural_series(n, m, params, r).coeff(r).clone();
    if r % 2 == 1 {
        c.neg_ref()
    } else {
        c
    }
}

/// `p_r^♮(x, y) = sum_i (x_i^r - 1) t^{r(1-i)}
///  + (1 - q^r)/(1 - t^{-r}) sum_j (y_j^r - t^{-rn}) q^{r(j-1)}`.
pub fn p_natural(r: u32, n: usize, m: usize, params: &Params) -> RatFunc {
    let (q, t) = (&params.q, &params.t);
    let r = r as i32;
    let mut xs = Poly::zero();
    for i in 0..n {
        let w = t.pow(-r * i as i32);
        xs = &xs + &Poly::var(Bank::X.var(i)).pow(r as u32).mul_by(&w);
        xs = &xs - &w.to_poly();
    }
    let mut ys = Poly::zero();
    for j in 0..m {
        let w = q.pow(r * j as i32);
        ys = &ys + &Poly::var(Bank::Y.var(j)).pow(r as u32).mul_by(&w);
        ys = &ys - &t.pow(-r * n as i32).mul(&w).to_poly();
    }
    let factor = RatFunc::from_factors(&[crate::field::one_minus(&q.pow(r))], &[crate::field::one_minus(&t.pow(-r))]);
    &RatFunc::from_poly(xs) + &factor.mul_poly(&ys)
}

/// The spectral point `(q^{μ_1}, .., q^{μ_n}, t^{-ν_1-n}, .., t^{-ν_m-n})`
/// of a partition in the fat hook, with `μ, ν` from [`hook_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralVector {
    pub x: Vec<Term>,
    pub y: Vec<Term>,
}

impl SpectralVector {
    pub fn new(lam: &Partition, n: usize, m: usize, params: &Params) -> Result<SpectralVector, NotInHook> {
        let (mu, nu) = hook_split(n, m, lam)?;
        Ok(SpectralVector {
            x: (0..n).map(|i| params.q.pow(mu.part(i) as i32)).collect(),
            y: (0..m).map(|j| params.t.pow(-(nu.part(j) as i32) - n as i32)).collect(),
        })
    }

    /// The point `(q^{-μ}, t^{ν+n})` used for the hatted operators.
    pub fn inverted(&self) -> SpectralVector {
        SpectralVector {
            x: self.x.iter().map(Term::inv).collect(),
            y: self.y.iter().map(Term::inv).collect(),
        }
    }

    fn subs(&self) -> Vec<(Var, Term)> {
        let mut s: Vec<(Var, Term)> = self.x.iter().enumerate().map(|(i, v)| (Bank::X.var(i), v.clone())).collect();
        s.extend(self.y.iter().enumerate().map(|(j, v)| (Bank::Y.var(j), v.clone())));
        s
    }

    /// Evaluates a function of `(x, y)` at this point.
    pub fn eval(&self, f: &RatFunc) -> Result<RatFunc, PoleError> {
        f.subst_terms(&self.subs())
    }
}

/// `𝒢_λ(u) = prod_i (t^{1-i} u; q)_{λ_i} / (t^{2-i} u; q)_{λ_i}`, the
/// finite form of the eigenvalue product.
pub fn script_g(lam: &Partition, params: &Params, order: usize) -> USeries<FieldElem> {
    let (q, t) = (&params.q, &params.t);
    let mut acc = USeries::one(order);
    for (i, &l) in lam.parts().iter().enumerate() {
        let i = i as i32 + 1;
        for a in 0..l as i32 {
            acc = acc.mul(&linear(&q.pow(a).mul(&t.pow(1 - i)), order));
            acc = acc.mul(&geometric(&q.pow(a).mul(&t.pow(2 - i)), order));
        }
    }
    acc
}

/// The same product regrouped through the hook data `(μ, ν)`: the first
/// `n` rows as above and the remaining rows collapsed column by column.
pub fn script_g_hook(lam: &Partition, n: usize, m: usize, params: &Params, order: usize) -> Result<USeries<FieldElem>, NotInHook> {
    let (mu, nu) = hook_split(n, m, lam)?;
    let (q, t) = (&params.q, &params.t);
    let mut acc = script_g(&mu, params, order);
    for j in 0..m {
        let qj = q.pow(j as i32);
        acc = acc.mul(&linear(&t.pow(1 - nu.part(j) as i32 - n as i32).mul(&qj), order));
        acc = acc.mul(&geometric(&t.pow(1 - n as i32).mul(&qj), order));
    }
    Ok(acc)
}

/// `prod_i (1 - q^{λ_i} t^{1-i} u) / (1 - t^{1-i} u)`, the telescoped value
/// of `E^♮` at a spectral point.
pub fn e_telescoped(lam: &Partition, params: &Params, order: usize) -> USeries<FieldElem> {
    let mut acc = USeries::one(order);
    for (i, &l) in lam.parts().iter().enumerate() {
        let ti = params.t.pow(-(i as i32));
        acc = acc.mul(&linear(&params.q.pow(l as i32).mul(&ti), order));
        acc = acc.mul(&geometric(&ti, order));
    }
    acc
}

/// `r e_r^♮ - sum_{s=1}^r (-1)^{s-1} p_s^♮ e_{r-s}^♮`.
pub fn newton_residual(r: usize, n: usize, m: usize, params: &Params) -> RatFunc {
    let e: Vec<RatFunc> = (0..=r).map(|k| e_natural(k, n, m, params)).collect();
    let mut acc = e[r].scale(&Rat::from_int(r as i64));
    for s in 1..=r {
        let term = &p_natural(s as u32, n, m, params) * &e[r - s];
        acc = if s % 2 == 1 { &acc - &term } else { &acc + &term };
    }
    acc
}

/// `sum_{r+s=k} (-1)^r (1 - t^r q^s) e_r^♮ g_s^♮`.
pub fn wronski_residual(k: usize, n: usize, m: usize, params: &Params) -> RatFunc {
    let gs = g_natural_series(n, m, params, k);
    let es = e_natural_series(n, m, params, k);
    // e_r (-1)^r is exactly the u^r coefficient of E^♮.
    RatFunc::sum((0..=k).map(|r| {
        let c = RatFunc::from_poly(crate::field::one_minus(&params.qt((k - r) as i32, r as i32)));
        &(&c * es.coeff(r)) * gs.coeff(k - r)
    }))
}

/// `op(SP_λ) - ev SP_λ` for the deformed operator of the given family, where
/// `ev` is `g_r^♮` (NS) or `e_r^♮` (MR) at the spectral point of `λ`. For
/// the hatted operator both the point and the parameters are inverted.
pub fn eigen_residual(family: Family, hat: bool, r: u32, lam: &Partition, n: usize, m: usize, params: &Params) -> Result<RatFunc, NotInHook> {
    let mut sv = SpectralVector::new(lam, n, m, params)?;
    let ep = if hat { params.inverted() } else { params.clone() };
    if hat {
        sv = sv.inverted();
    }
    let (op, f) = match family {
        Family::Ns => (
            if hat { hat_variant(family, r, n, m, params) } else { deformed_ns(r, n, m, params) },
            g_natural(r as usize, n, m, &ep),
        ),
        Family::Mr => (
            if hat { hat_variant(family, r, n, m, params) } else { deformed_mr(r, n, m, params, MrRoute::Direct) },
            e_natural(r as usize, n, m, &ep),
        ),
    };
    let ev = sv.eval(&f).expect("eigenvalues are polynomial in x, y");
    let sp = super_p(lam, n, m, params);
    Ok(&op.apply(&sp) - &(&ev * &sp))
}

/// Whether `F(g_1^♮, .., g_K^♮)` vanishes at the spectral points of every
/// `λ` in the fat hook with `|λ| ≤ d`. The generators of `F` are indexed by
/// the parts of its partition keys.
pub fn vanishes_on_spectral_points(f: &PowerPoly, n: usize, m: usize, d: u32, params: &Params) -> bool {
    let k = f.keys().flat_map(|rho| rho.parts().iter().copied()).max().unwrap_or(0) as usize;
    let gens: Vec<RatFunc> = (0..=k).map(|r| g_natural(r, n, m, params)).collect();
    crate::partition::partitions_up_to(d)
        .iter()
        .filter(|lam| crate::partition::fat_hook_contains(n, m, lam))
        .all(|lam| {
            let sv = SpectralVector::new(lam, n, m, params).expect("in hook");
            eval_power_poly(f, |r| sv.eval(&gens[r as usize]).expect("polynomial")).is_zero()
        })
}

/// `G*_N(z; u)` on bank `Z`.
pub fn g_star_series(big_n: usize, params: &Params, order: usize) -> USeries<FieldElem> {
    g_natural_series_roles(Bank::Z, big_n, Bank::W, 0, params, order)
}

/// `g_r^*(z_1, .., z_N)`.
pub fn g_star(r: usize, big_n: usize, params: &Params) -> RatFunc {
    g_star_series(big_n, params, r).coeff(r).clone()
}

/// `p_r^*(z; t) = sum_{i ≤ N} (z_i^r - 1) t^{r(1-i)}`.
pub fn p_star(r: u32, big_n: usize, params: &Params) -> RatFunc {
    let mut acc = Poly::zero();
    for i in 0..big_n {
        let w = params.t.pow(-(r as i32) * i as i32);
        acc = &acc + &Poly::var(Bank::Z.var(i)).pow(r).mul_by(&w);
        acc = &acc - &w.to_poly();
    }
    RatFunc::from_poly(acc)
}

/// `exp(sum_{r≥1} (u^r / r) (1 - t^r)/(1 - q^r) p_r^*)` to order `u^order`.
pub fn g_star_exp_log(big_n: usize, params: &Params, order: usize) -> USeries<FieldElem> {
    let mut s = alloc::vec![RatFunc::zero()];
    for r in 1..=order as u32 {
        let c = RatFunc::from_factors(
            &[crate::field::one_minus(&params.t.pow(r as i32))],
            &[crate::field::one_minus(&params.q.pow(r as i32))],
        )
        .scale(&Rat::new(1, r as i64));
        s.push(&c * &p_star(r, big_n, params));
    }
    series_exp(&s, order)
}

/// `exp` of a series without constant term, through `k e_k = sum_j j s_j e_{k-j}`.
pub fn series_exp(s: &[RatFunc], order: usize) -> USeries<FieldElem> {
    let mut e = alloc::vec![RatFunc::one()];
    for k in 1..=order {
        let acc = RatFunc::sum((1..=k).filter(|&j| j < s.len()).map(|j| (&s[j] * &e[k - j]).scale(&Rat::from_int(j as i64))));
        e.push(acc.scale(&Rat::new(1, k as i64)));
    }
    USeries::from_coeffs(e, order)
}

/// A polynomial in the generators `p_1, p_2, ..`: partition `ρ` stands for
/// `p_{ρ_1} p_{ρ_2} ..`.
pub type PowerPoly = BTreeMap<Partition, FieldElem>;

/// Expands a shifted symmetric polynomial in `z_1..z_N` (bank `Z`) in
/// products of the shifted power sums `p_r^*`. With `w_i = z_i t^{1-i}`,
/// `p_r^* = p_r(w) - c_r` for the constant `c_r = sum_i t^{r(1-i)}`, so the
/// expansion is the ordinary power-sum expansion in `w` followed by
/// `p_r(w) -> p_r^* + c_r`.
pub fn to_shifted_power_sums(f: &RatFunc, big_n: usize, params: &Params) -> Result<PowerPoly, MacdonaldError> {
    let scales: Vec<(Var, Term)> = (0..big_n).map(|i| (Bank::Z.var(i), params.t.pow(i as i32))).collect();
    let fw = f.scale_vars(&scales);
    let in_w = to_power_sums(&fw, Bank::Z, big_n)?;
    let c = |r: u32| -> RatFunc { RatFunc::sum((0..big_n).map(|i| RatFunc::from_term(&params.t.pow(-(r as i32) * i as i32)))) };
    let mut out: BTreeMap<Partition, Vec<FieldElem>> = BTreeMap::new();
    for (rho, a) in in_w {
        // prod_k (p*_k + c_k) over the parts of rho.
        let mut prod: BTreeMap<Vec<u32>, FieldElem> = BTreeMap::new();
        prod.insert(Vec::new(), a);
        for &k in rho.parts() {
            let mut next: BTreeMap<Vec<u32>, FieldElem> = BTreeMap::new();
            for (key, v) in prod {
                let mut with = key.clone();
                with.push(k);
                with.sort_unstable_by(|a, b| b.cmp(a));
                let e = next.entry(with).or_insert_with(RatFunc::zero);
                *e = &*e + &v;
                let e = next.entry(key).or_insert_with(RatFunc::zero);
                *e = &*e + &(&v * &c(k));
            }
            prod = next;
        }
        for (key, v) in prod {
            out.entry(Partition::new(&key)).or_default().push(v);
        }
    }
    Ok(out
        .into_iter()
        .map(|(k, v)| (k, RatFunc::sum(v)))
        .filter(|(_, v)| !v.is_zero())
        .collect())
}

/// Evaluates a polynomial in generators, given the generator values.
pub fn eval_power_poly<F: FnMut(u32) -> RatFunc>(f: &PowerPoly, mut gen: F) -> RatFunc {
    let mut cache: BTreeMap<u32, RatFunc> = BTreeMap::new();
    RatFunc::sum(f.iter().map(|(rho, c)| {
        let mut acc = c.clone();
        for &k in rho.parts() {
            let g = cache.entry(k).or_insert_with(|| gen(k)).clone();
            acc = &acc * &g;
        }
        acc
    }))
}

/// `φ^♮`: `p_r^* -> p_r^♮`, extended multiplicatively.
pub fn phi_natural(f: &PowerPoly, n: usize, m: usize, params: &Params) -> RatFunc {
    eval_power_poly(f, |k| p_natural(k, n, m, params))
}

/// Membership in `Λ^♮_{n,m}`: symmetry in `x_i t^{1-i}` and in
/// `y_j q^{j-1}` (checked on adjacent swaps), and
/// `T_{q,x_i} p = T_{t,y_j}^{-1} p` along `x_i t^{1-i} = y_j q^{j-1}` for
/// every pair `(i, j)`.
pub fn is_in_lambda_natural(p: &RatFunc, n: usize, m: usize, params: &Params) -> bool {
    let (q, t) = (&params.q, &params.t);
    for i in 0..n.saturating_sub(1) {
        let (a, b) = (Bank::X.var(i), Bank::X.var(i + 1));
        let s = [(a, vterm(t.inv(), b)), (b, vterm(t.clone(), a))];
        if p.subst_terms(&s).ok().as_ref() != Some(p) {
            return false;
        }
    }
    for j in 0..m.saturating_sub(1) {
        let (a, b) = (Bank::Y.var(j), Bank::Y.var(j + 1));
        let s = [(a, vterm(q.clone(), b)), (b, vterm(q.inv(), a))];
        if p.subst_terms(&s).ok().as_ref() != Some(p) {
            return false;
        }
    }
    for i in 0..n {
        for j in 0..m {
            if !shifted_quasi_residual(p, i, j, params).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `(T_{q,x_i} - T_{t,y_j}^{-1}) p` restricted to
/// `x_i = y_j q^{j-1} t^{i-1}` (0-based `i, j` here).
pub fn shifted_quasi_residual(p: &RatFunc, i: usize, j: usize, params: &Params) -> RatFunc {
    let (xi, yj) = (Bank::X.var(i), Bank::Y.var(j));
    let d = &p.scale_vars(&[(xi, params.q.clone())]) - &p.scale_vars(&[(yj, params.t.inv())]);
    let on = vterm(params.q.pow(j as i32).mul(&params.t.pow(i as i32)), yj);
    d.subst_terms(&[(xi, on)]).expect("polynomial restriction")
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(mat: &[Vec<RatFunc>]) -> RatFunc {
    let k = mat.len();
    match k {
        0 => return RatFunc::one(),
        1 => return mat[0][0].clone(),
        _ => {}
    }
    let mut terms = Vec::with_capacity(k);
    for c in 0..k {
        if mat[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatFunc>> = mat[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = &mat[0][c] * &determinant(&minor);
        terms.push(if c % 2 == 1 { t.neg_ref() } else { t });
    }
    RatFunc::sum(terms)
}

/// Jacobian determinant of `(p_1^♮, .., p_{n+m}^♮)` in
/// `(x_1, .., x_n, y_1, .., y_m)`.
pub fn jacobian(n: usize, m: usize, params: &Params) -> RatFunc {
    let vars: Vec<Var> = (0..n).map(|i| Bank::X.var(i)).chain((0..m).map(|j| Bank::Y.var(j))).collect();
    let mat: Vec<Vec<RatFunc>> = (1..=(n + m) as u32)
        .map(|r| {
            let p = p_natural(r, n, m, params);
            vars.iter().map(|&v| p.derivative(v)).collect()
        })
        .collect();
    determinant(&mat)
}

/// The monomial `x_2 x_3^2 .. x_n^{n-1} y_1^n .. y_m^{n+m-1}`.
pub fn jacobian_witness_monomial(n: usize, m: usize) -> crate::mono::Mono {
    let mut e = crate::mono::Mono::ONE;
    for i in 0..n {
        e = e.mul(&crate::mono::Mono::var_pow(Bank::X.var(i), i as i32));
    }
    for j in 0..m {
        e = e.mul(&crate::mono::Mono::var_pow(Bank::Y.var(j), (n + j) as i32));
    }
    e
}

/// `n! prod_i t^{i(1-i)} (q^{n+1}; q)_m / (t^{-n-1}; t^{-1})_m (n+1)_m
/// prod_j q^{(n+j)(j-1)}`, the closed form of the witness coefficient.
pub fn jacobian_witness_value(n: usize, m: usize, params: &Params) -> RatFunc {
    let (q, t) = (&params.q, &params.t);
    let mut c: i64 = (1..=n as i64).product();
    c *= (n as i64 + 1..=(n + m) as i64).product::<i64>();
    let mut mono = Term::one();
    for i in 1..=n as i32 {
        mono = mono.mul(&t.pow(i * (1 - i)));
    }
    for j in 1..=m as i32 {
        mono = mono.mul(&q.pow((n as i32 + j) * (j - 1)));
    }
    let ratio = qpoch_term(&q.pow(n as i32 + 1), q, m as u32).div_ref(&qpoch_term(&t.pow(-(n as i32) - 1), &t.inv(), m as u32));
    ratio.mul_term(&mono).scale(&Rat::from_int(c))
}

/// Coefficient of the witness monomial in the Jacobian.
pub fn jacobian_witness_coefficient(n: usize, m: usize, params: &Params) -> RatFunc {
    let mask = Bank::X.mask(n) | Bank::Y.mask(m);
    jacobian(n, m, params)
        .coefficients_in(mask)
        .remove(&jacobian_witness_monomial(n, m))
        .unwrap_or_else(RatFunc::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{fat_hook_contains, partitions_up_to};

    fn sym() -> Params {
        Params::symbolic()
    }

    fn ev() -> Params {
        Params::eval(Rat::new(3, 2), Rat::new(-5, 3)).unwrap()
    }

    fn x(i: usize) -> RatFunc {
        RatFunc::var(Bank::X.var(i))
    }

    #[test]
    fn low_order_coefficients() {
        let p = sym();
        assert!(g_natural(0, 2, 1, &p).is_one());
        assert!(e_natural(0, 2, 1, &p).is_one());
        let g1 = g_natural(1, 1, 0, &p);
        let c = RatFunc::from_factors(&[crate::field::one_minus(&p.t)], &[crate::field::one_minus(&p.q)]);
        assert_eq!(g1, &c * &(&x(0) - &RatFunc::one()));
        assert_eq!(e_natural(1, 1, 0, &p), &x(0) - &RatFunc::one());
        assert_eq!(p_natural(1, 1, 0, &p), &x(0) - &RatFunc::one());
    }

    #[test]
    fn p_natural_by_hand() {
        let p = sym();
        let (y1, y2) = (RatFunc::var(Bank::Y.var(0)), RatFunc::var(Bank::Y.var(1)));
        let (q, t) = (p.q_elem(), p.t_elem());
        let one = RatFunc::one();
        let r2 = |f: &RatFunc| f * f;
        let xs = &(&r2(&x(0)) - &one) + &(&(&r2(&x(1)) - &one) * &r2(&t).inv());
        let c = &(&one - &r2(&q)) / &(&one - &r2(&t).inv());
        let tn = r2(&r2(&t)).inv();
        let ys = &(&r2(&y1) - &tn) + &(&(&r2(&y2) - &tn) * &r2(&q));
        assert_eq!(p_natural(2, 2, 2, &p), &xs + &(&c * &ys));
    }

    #[test]
    fn spectral_values_of_empty_partition() {
        for p in [sym(), ev()] {
            let sv = SpectralVector::new(&Partition::empty(), 2, 1, &p).unwrap();
            for r in 1..=3 {
                assert!(sv.eval(&p_natural(r, 2, 1, &p)).unwrap().is_zero());
                assert!(sv.eval(&g_natural(r as usize, 2, 1, &p)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn script_g_first_order() {
        let p = sym();
        assert!(script_g(&Partition::empty(), &p, 3).coeffs().iter().skip(1).all(RatFunc::is_zero));
        let s = script_g(&Partition::new(&[1]), &p, 1);
        assert_eq!(*s.coeff(1), &p.t_elem() - &RatFunc::one());
    }

    #[test]
    fn eigenvalue_products_agree() {
        let p = sym();
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            let g = g_natural_series(n, m, &p, 3);
            let e = e_natural_series(n, m, &p, 3);
            for lam in partitions_up_to(4) {
                if !fat_hook_contains(n, m, &lam) {
                    continue;
                }
                let sv = SpectralVector::new(&lam, n, m, &p).unwrap();
                let sg = script_g(&lam, &p, 3);
                assert_eq!(&script_g_hook(&lam, n, m, &p, 3).unwrap(), &sg);
                let tel = e_telescoped(&lam, &p, 3);
                for r in 0..=3 {
                    assert_eq!(sv.eval(g.coeff(r)).unwrap(), *sg.coeff(r), "{lam:?} r={r}");
                    assert_eq!(sv.eval(e.coeff(r)).unwrap(), *tel.coeff(r), "{lam:?} r={r}");
                }
            }
        }
    }

    #[test]
    fn eigenvalue_duality() {
        let p = sym();
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let g = g_natural_series_roles(Bank::Y, m, Bank::X, n, &p.dual(), 4).rescale_u(&p.q_elem());
            assert_eq!(g, e_natural_series(n, m, &p, 4), "({n},{m})");
        }
    }

    #[test]
    fn newton_and_wronski() {
        let p = sym();
        for r in 1..=4 {
            assert!(newton_residual(r, 2, 1, &p).is_zero(), "newton r={r}");
            assert!(wronski_residual(r, 2, 1, &p).is_zero(), "wronski k={r}");
        }
        let c = RatFunc::from_poly(crate::field::one_minus(&p.q));
        let d = RatFunc::from_poly(crate::field::one_minus(&p.t));
        assert!((&(&c * &g_natural(1, 1, 0, &p)) - &(&d * &e_natural(1, 1, 0, &p))).is_zero());
        assert!(wronski_residual(3, 0, 0, &p).is_zero());
    }

    #[test]
    fn shifted_symmetry_of_generators() {
        let p = sym();
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            for r in 1..=3 {
                assert!(is_in_lambda_natural(&g_natural(r, n, m, &p), n, m, &p), "g_{r} ({n},{m})");
                assert!(is_in_lambda_natural(&e_natural(r, n, m, &p), n, m, &p), "e_{r} ({n},{m})");
            }
        }
        let y1 = RatFunc::var(Bank::Y.var(0));
        assert!(!is_in_lambda_natural(&y1, 1, 1, &p));
    }

    #[test]
    fn g_star_stability_and_exp_log() {
        let p = sym();
        for big_n in 2..=4usize {
            for r in 0..=3 {
                let g = g_star(r, big_n, &p);
                let restricted = g.subst_terms(&[(Bank::Z.var(big_n - 1), Term::one())]).unwrap();
                assert_eq!(restricted, g_star(r, big_n - 1, &p));
            }
        }
        assert_eq!(g_star_series(2, &p, 3), g_star_exp_log(2, &p, 3));
    }

    #[test]
    fn phi_maps_g_star_to_g_natural() {
        let p = sym();
        for r in 1..=3usize {
            let f = to_shifted_power_sums(&g_star(r, r, &p), r, &p).unwrap();
            assert_eq!(phi_natural(&f, 2, 1, &p), g_natural(r, 2, 1, &p), "r={r}");
        }
        let f = to_shifted_power_sums(&p_star(1, 2, &p), 2, &p).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[&Partition::new(&[1])].is_one());
    }

    #[test]
    fn jacobian_witness() {
        let p = sym();
        assert!(jacobian(1, 0, &p).is_one());
        assert!(!jacobian(1, 1, &p).is_zero());
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            assert_eq!(jacobian_witness_coefficient(n, m, &p), jacobian_witness_value(n, m, &p), "({n},{m})");
        }
    }

    #[test]
    fn eigenvalue_equations() {
        let ps = [sym(), Params::eval(Rat::from_int(2), Rat::from_int(3)).unwrap()];
        for p in &ps {
            for (n, m) in [(1, 1), (2, 1)] {
                for lam in partitions_up_to(3) {
                    if !fat_hook_contains(n, m, &lam) {
                        continue;
                    }
                    for r in 1..=2 {
                        for family in [Family::Ns, Family::Mr] {
                            for hat in [false, true] {
                                let res = eigen_residual(family, hat, r, &lam, n, m, p).unwrap();
                                assert!(res.is_zero(), "{family:?} hat={hat} r={r} {lam:?} ({n},{m}) {p}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generator_polynomials_do_not_vanish_on_spectral_points() {
        use rand::{Rng, SeedableRng};
        let p = Params::eval(Rat::from_int(2), Rat::from_int(3)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 50 {
            let mut f = PowerPoly::new();
            for _ in 0..rng.gen_range(1..=3) {
                let len = rng.gen_range(0..=2);
                let parts: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
                let c = RatFunc::from_int(rng.gen_range(-3..=3));
                let e = f.entry(Partition::from_unsorted(&parts)).or_insert_with(RatFunc::zero);
                *e = &*e + &c;
            }
            f.retain(|_, c| !c.is_zero());
            if eval_power_poly(&f, |k| g_natural(k as usize, 1, 1, &p)).is_zero() {
                continue;
            }
            checked += 1;
            assert!(!vanishes_on_spectral_points(&f, 1, 1, 4, &p), "{f:?}");
        }
    }
}
