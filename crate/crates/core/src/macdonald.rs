//! Macdonald polynomials by Gram-Schmidt in the power-sum inner product,
//! Littlewood-Richardson type coefficients and skew polynomials.
//!
//! Symmetric functions of a fixed degree `k` are vectors indexed by the
//! partitions of `k`. The power-sum basis makes products and the
//! `(q, t)`-inner product trivial; the monomial basis gives triangularity and
//! the passage to polynomials in finitely many variables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{one_minus, FieldElem, Params};
use crate::mono::{Bank, Mono};
use crate::partition::{b_lambda, partitions_of, z_lambda, Partition};
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::series::{qbinomial_u, USeries};

/// Errors from the Macdonald layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MacdonaldError {
    /// More parts than variables.
    Rank,
    /// A Gram-Schmidt pivot vanished.
    SpecialParams,
    /// A skew shape with `nu` not inside `lambda`.
    NotContained,
}

impl fmt::Display for MacdonaldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MacdonaldError::Rank => f.write_str("partition has more parts than variables"),
            MacdonaldError::SpecialParams => f.write_str("parameters are special: vanishing pivot"),
            MacdonaldError::NotContained => f.write_str("skew shape: inner partition not contained"),
        }
    }
}

/// Coefficient of `x^mu` in the power sum `p_rho` (any number of variables
/// at least `l(mu)`): the number of ways to distribute the parts of `rho`
/// into boxes with sums `mu`.
pub fn power_to_monomial_coeff(rho: &Partition, mu: &Partition) -> u64 {
    fn rec(parts: &[u32], rem: &mut Vec<u32>) -> u64 {
        match parts.split_first() {
            None => rem.iter().all(|&r| r == 0) as u64,
            Some((&p, rest)) => {
                let mut total = 0;
                for j in 0..rem.len() {
                    if rem[j] >= p {
                        rem[j] -= p;
                        total += rec(rest, rem);
                        rem[j] += p;
                    }
                }
                total
            }
        }
    }
    if rho.weight() != mu.weight() {
        return 0;
    }
    let mut rem: Vec<u32> = mu.parts().to_vec();
    rec(rho.parts(), &mut rem)
}

/// Change-of-basis data for one degree, independent of the parameters.
#[derive(Clone, Debug)]
pub struct Transition {
    /// Partitions of the degree in descending lexicographic order.
    pub parts: Vec<Partition>,
    /// `p_to_m[r][s]`: coefficient of `m_{parts[s]}` in `p_{parts[r]}`.
    pub p_to_m: Vec<Vec<Rat>>,
    /// `m_to_p[r][s]`: coefficient of `p_{parts[s]}` in `m_{parts[r]}`.
    pub m_to_p: Vec<Vec<Rat>>,
}

impl Transition {
    pub fn new(k: u32) -> Transition {
        let parts = partitions_of(k);
        let n = parts.len();
        let p_to_m: Vec<Vec<Rat>> = parts
            .iter()
            .map(|rho| {
                parts
                    .iter()
                    .map(|mu| Rat::from_int(power_to_monomial_coeff(rho, mu) as i64))
                    .collect()
            })
            .collect();
        // p_to_m is lower triangular in the descending order: a nonzero
        // entry needs parts[s] to dominate parts[r]. Invert row by row.
        let mut inv = vec![vec![Rat::ZERO; n]; n];
        for i in 0..n {
            for j in (0..=i).rev() {
                let mut s = if i == j { Rat::ONE } else { Rat::ZERO };
                for k in (j + 1)..=i {
                    if !p_to_m[k][j].is_zero() && !inv[i][k].is_zero() {
                        s = &s - &(&inv[i][k] * &p_to_m[k][j]);
                    }
                }
                inv[i][j] = &s / &p_to_m[j][j];
            }
        }
        Transition {
            parts,
            p_to_m,
            m_to_p: inv,
        }
    }

    pub fn index(&self, lam: &Partition) -> usize {
        self.parts
            .iter()
            .position(|p| p == lam)
            .expect("partition of the right degree")
    }
}

/// Macdonald data of one degree for one parameter pair.
#[derive(Clone, Debug)]
struct Degree {
    tr: Transition,
    /// `z_rho(q, t)` per power-sum index.
    z: Vec<FieldElem>,
    /// `P_lambda` in the power-sum basis.
    p_basis: Vec<Vec<FieldElem>>,
    /// `P_lambda` in the monomial basis.
    m_basis: Vec<Vec<FieldElem>>,
}

/// A homogeneous symmetric function as coordinates in the monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFn {
    pub degree: u32,
    pub coeffs: Vec<FieldElem>,
}

/// Memoized Macdonald data for one parameter pair.
#[derive(Clone, Debug)]
pub struct Macdonald {
    params: Params,
    degrees: BTreeMap<u32, Degree>,
    lr: BTreeMap<(Partition, Partition), BTreeMap<Partition, FieldElem>>,
}

fn inner(a: &[FieldElem], b: &[FieldElem], z: &[FieldElem]) -> FieldElem {
    RatFunc::sum(
        a.iter()
            .zip(b)
            .zip(z)
            .filter(|((x, y), _)| !x.is_zero() && !y.is_zero())
            .map(|((x, y), w)| &(x * y) * w),
    )
}

impl Macdonald {
    pub fn new(params: Params) -> Macdonald {
        Macdonald {
            params,
            degrees: BTreeMap::new(),
            lr: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    fn degree(&mut self, k: u32) -> Result<&Degree, MacdonaldError> {
        if !self.degrees.contains_key(&k) {
            let d = self.build(k)?;
            self.degrees.insert(k, d);
        }
        Ok(&self.degrees[&k])
    }

    fn build(&self, k: u32) -> Result<Degree, MacdonaldError> {
        let tr = Transition::new(k);
        let n = tr.parts.len();
        let z: Vec<FieldElem> = tr.parts.iter().map(|r| z_lambda(r, &self.params)).collect();
        let m_p: Vec<Vec<FieldElem>> = tr
            .m_to_p
            .iter()
            .map(|row| row.iter().map(|c| RatFunc::constant(c.clone())).collect())
            .collect();
        // Gram-Schmidt from the smallest partition (last in descending order).
        let mut p_basis: Vec<Vec<FieldElem>> = vec![Vec::new(); n];
        let mut norms: Vec<FieldElem> = vec![RatFunc::zero(); n];
        for i in (0..n).rev() {
            let mut v = m_p[i].clone();
            for j in (i + 1)..n {
                let c = inner(&m_p[i], &p_basis[j], &z);
                if c.is_zero() {
                    continue;
                }
                let c = &c / &norms[j];
                for (a, b) in v.iter_mut().zip(&p_basis[j]) {
                    if !b.is_zero() {
                        *a = &*a - &(&c * b);
                    }
                }
            }
            let nrm = inner(&v, &v, &z);
            if nrm.is_zero() {
                return Err(MacdonaldError::SpecialParams);
            }
            norms[i] = nrm;
            p_basis[i] = v;
        }
        let m_basis: Vec<Vec<FieldElem>> = p_basis
            .iter()
            .map(|v| {
                (0..n)
                    .map(|s| {
                        RatFunc::sum(
                            v.iter()
                                .zip(&tr.p_to_m)
                                .filter(|(a, row)| !a.is_zero() && !row[s].is_zero())
                                .map(|(a, row)| a.scale(&row[s])),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(Degree {
            tr,
            z,
            p_basis,
            m_basis,
        })
    }

    /// `P_lambda` in the monomial basis of its degree.
    pub fn p_sym(&mut self, lam: &Partition) -> Result<SymFn, MacdonaldError> {
        let k = lam.weight();
        let d = self.degree(k)?;
        let i = d.tr.index(lam);
        Ok(SymFn {
            degree: k,
            coeffs: d.m_basis[i].clone(),
        })
    }

    /// `P_lambda` in the power-sum basis, keyed by partition.
    pub fn p_in_power_sums(&mut self, lam: &Partition) -> Result<BTreeMap<Partition, FieldElem>, MacdonaldError> {
        let k = lam.weight();
        let d = self.degree(k)?;
        let i = d.tr.index(lam);
        Ok(d.tr
            .parts
            .iter()
            .cloned()
            .zip(d.p_basis[i].iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// `z_rho(q, t)` values for the power sums of a degree.
    pub fn z_values(&mut self, k: u32) -> Result<Vec<(Partition, FieldElem)>, MacdonaldError> {
        let d = self.degree(k)?;
        Ok(d.tr.parts.iter().cloned().zip(d.z.iter().cloned()).collect())
    }

    /// `P_lambda(v_1, ..., v_n)` in the first `n` variables of a bank.
    pub fn p_poly(&mut self, lam: &Partition, bank: Bank, n: usize) -> Result<RatFunc, MacdonaldError> {
        if lam.len() > n {
            return Err(MacdonaldError::Rank);
        }
        let s = self.p_sym(lam)?;
        let parts = self.degree(lam.weight())?.tr.parts.clone();
        Ok(sym_to_poly(&s, &parts, bank, n))
    }

    /// `Q_lambda = b_lambda P_lambda`.
    pub fn q_poly(&mut self, lam: &Partition, bank: Bank, n: usize) -> Result<RatFunc, MacdonaldError> {
        let p = self.p_poly(lam, bank, n)?;
        Ok(&p * &b_lambda(lam, &self.params))
    }

    /// `P_lambda` in `n` variables, zero (not an error) when `l(lambda) > n`.
    pub fn p_poly_or_zero(&mut self, lam: &Partition, bank: Bank, n: usize) -> Result<RatFunc, MacdonaldError> {
        if lam.len() > n {
            return Ok(RatFunc::zero());
        }
        self.p_poly(lam, bank, n)
    }

    /// Coefficients `c^lambda_{mu nu}` with `Q_mu Q_nu = sum c^lambda Q_lambda`.
    pub fn lr_coefficients(
        &mut self,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<BTreeMap<Partition, FieldElem>, MacdonaldError> {
        let key = (mu.clone(), nu.clone());
        if let Some(v) = self.lr.get(&key) {
            return Ok(v.clone());
        }
        let k = mu.weight() + nu.weight();
        let pm = self.p_in_power_sums(mu)?;
        let pn = self.p_in_power_sums(nu)?;
        let bm = b_lambda(mu, &self.params);
        let bn = b_lambda(nu, &self.params);
        let scale = &bm * &bn;
        let params = self.params.clone();
        let d = self.degree(k)?;
        let n = d.tr.parts.len();
        // Product in the power-sum basis.
        let mut prod_p: Vec<Vec<FieldElem>> = vec![Vec::new(); n];
        for (r, a) in &pm {
            for (s, b) in &pn {
                let idx = d.tr.index(&r.union(s));
                prod_p[idx].push(a * b);
            }
        }
        let prod_p: Vec<FieldElem> = prod_p.into_iter().map(RatFunc::sum).collect();
        // To the monomial basis.
        let mut prod_m: Vec<FieldElem> = (0..n)
            .map(|s| {
                RatFunc::sum(
                    prod_p
                        .iter()
                        .zip(&d.tr.p_to_m)
                        .filter(|(a, row)| !a.is_zero() && !row[s].is_zero())
                        .map(|(a, row)| a.scale(&row[s])),
                )
            })
            .collect();
        // Peel off leading monomials: Q_lambda = b_lambda (m_lambda + lower).
        let mut out = BTreeMap::new();
        for i in 0..n {
            if prod_m[i].is_zero() {
                continue;
            }
            let c = prod_m[i].clone();
            for j in i..n {
                let pj = &d.m_basis[i][j];
                if !pj.is_zero() {
                    prod_m[j] = &prod_m[j] - &(&c * pj);
                }
            }
            let lam = &d.tr.parts[i];
            let coeff = &(&c * &scale) / &b_lambda(lam, &params);
            out.insert(lam.clone(), coeff);
        }
        self.lr.insert(key, out.clone());
        Ok(out)
    }

    /// `P_{lambda/nu} = sum_mu c^lambda_{mu nu} P_mu` in `n` variables.
    pub fn skew_p_poly(
        &mut self,
        lam: &Partition,
        nu: &Partition,
        bank: Bank,
        n: usize,
    ) -> Result<RatFunc, MacdonaldError> {
        if !lam.contains(nu) {
            return Err(MacdonaldError::NotContained);
        }
        let k = lam.weight() - nu.weight();
        let mut parts = Vec::new();
        for mu in partitions_of(k) {
            if mu.len() > n || !lam.contains(&mu) {
                continue;
            }
            let c = self.lr_coefficients(&mu, nu)?;
            if let Some(c) = c.get(lam) {
                let p = self.p_poly(&mu, bank, n)?;
                parts.push(&p * c);
            }
        }
        Ok(RatFunc::sum(parts))
    }
}

/// Partitions `kappa` with `mu ⊆ kappa ⊆ lam` and `kappa / mu` a horizontal
/// strip of size `c`.
pub fn horizontal_strips(mu: &Partition, lam: &Partition, c: u32) -> Vec<Partition> {
    fn rec(i: usize, left: u32, mu: &Partition, lam: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i >= lam.len() {
            if left == 0 {
                out.push(Partition::new(cur));
            }
            return;
        }
        let lo = mu.part(i);
        let mut hi = lam.part(i);
        if i > 0 {
            hi = hi.min(mu.part(i - 1));
        }
        if hi < lo {
            return;
        }
        for v in lo..=hi.min(lo + left) {
            cur.push(v);
            rec(i + 1, left - (v - lo), mu, lam, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lam.contains(mu) {
        rec(0, c, mu, lam, &mut Vec::new(), &mut out);
    }
    out
}

fn cell_b_factors(lam: &Partition, i: usize, j: usize, params: &Params, nums: &mut Vec<Poly>, dens: &mut Vec<Poly>) {
    let a = lam.arm(i, j) as i32;
    let l = lam.leg(i, j) as i32;
    nums.push(one_minus(&params.qt(a, l + 1)));
    dens.push(one_minus(&params.qt(a + 1, l)));
}

/// Branching coefficient `psi_{kappa/mu}` of a horizontal strip: the product
/// of `b_mu(s) / b_kappa(s)` over cells `s` lying in a row that meets the
/// strip but in a column that does not.
pub fn psi_strip(kappa: &Partition, mu: &Partition, params: &Params) -> FieldElem {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for i in 0..kappa.len() {
        if kappa.part(i) == mu.part(i) {
            continue;
        }
        for j in 0..mu.part(i) as usize {
            // Column j meets the strip iff kappa'_j > mu'_j, i.e. the cell
            // below (i', j) was added somewhere; check the conjugates.
            let col_added = (0..kappa.len()).any(|r| mu.part(r) as usize <= j && (kappa.part(r) as usize) > j);
            if col_added {
                continue;
            }
            cell_b_factors(mu, i, j, params, &mut nums, &mut dens);
            cell_b_factors(kappa, i, j, params, &mut dens, &mut nums);
        }
    }
    RatFunc::from_factors(&nums, &dens)
}

/// Coefficient of `x_1^{c_1} x_2^{c_2} ...` in `P_{lam/nu}`, summed over
/// chains of horizontal strips with sizes `content`.
pub fn skew_p_monomial_coeff(lam: &Partition, nu: &Partition, content: &[u32], params: &Params) -> FieldElem {
    let mut layer: BTreeMap<Partition, Vec<FieldElem>> = BTreeMap::new();
    layer.insert(nu.clone(), vec![RatFunc::one()]);
    for &c in content {
        let mut next: BTreeMap<Partition, Vec<FieldElem>> = BTreeMap::new();
        for (mu, ws) in layer {
            let w = RatFunc::sum(ws);
            if w.is_zero() {
                continue;
            }
            for kappa in horizontal_strips(&mu, lam, c) {
                let psi = psi_strip(&kappa, &mu, params);
                next.entry(kappa).or_default().push(&w * &psi);
            }
        }
        layer = next;
    }
    layer.remove(lam).map(RatFunc::sum).unwrap_or_else(RatFunc::zero)
}

/// `P_{lam/nu}` in `n` variables of a bank from the branching rule
/// `P_{lam/nu} = sum_T psi_T x^T` over semistandard skew tableaux.
pub fn skew_p_branching(
    lam: &Partition,
    nu: &Partition,
    bank: Bank,
    n: usize,
    params: &Params,
) -> Result<RatFunc, MacdonaldError> {
    if !lam.contains(nu) {
        return Err(MacdonaldError::NotContained);
    }
    let k = lam.weight() - nu.weight();
    let terms = partitions_of(k)
        .into_iter()
        .filter(|kappa| kappa.len() <= n)
        .map(|kappa| {
            let c = skew_p_monomial_coeff(lam, nu, kappa.parts(), params);
            c.mul_poly(&monomial_symmetric(&kappa, bank, n))
        });
    Ok(RatFunc::sum(terms))
}

/// `Q_lam = b_lam P_lam` in `n` variables via the branching rule; zero when
/// `l(lam) > n`.
pub fn q_branching(lam: &Partition, bank: Bank, n: usize, params: &Params) -> RatFunc {
    if lam.len() > n {
        return RatFunc::zero();
    }
    let p = skew_p_branching(lam, &Partition::empty(), bank, n, params).expect("empty is contained");
    &p * &b_lambda(lam, params)
}

/// Expands a symmetric polynomial in the first `n` variables of a bank in
/// the power-sum basis. Needs `n` at least the top degree, where power sums
/// are independent.
pub fn to_power_sums(f: &RatFunc, bank: Bank, n: usize) -> Result<BTreeMap<Partition, FieldElem>, MacdonaldError> {
    let coeffs = f.coefficients_in(bank.mask(bank.capacity()));
    let mut by_degree: BTreeMap<u32, Vec<(Partition, FieldElem)>> = BTreeMap::new();
    for (m, c) in coeffs {
        let e: Vec<i32> = (0..bank.capacity()).map(|i| m.exp(bank.var(i))).collect();
        if e.iter().any(|&x| x < 0) {
            return Err(MacdonaldError::Rank);
        }
        if e.windows(2).all(|w| w[0] >= w[1]) {
            let lam = Partition::new(&e.iter().map(|&x| x as u32).collect::<Vec<_>>());
            by_degree.entry(lam.weight()).or_default().push((lam, c));
        }
    }
    let mut out: BTreeMap<Partition, Vec<FieldElem>> = BTreeMap::new();
    for (k, ms) in by_degree {
        if k as usize > n {
            return Err(MacdonaldError::Rank);
        }
        let tr = Transition::new(k);
        for (lam, c) in ms {
            let row = &tr.m_to_p[tr.index(&lam)];
            for (rho, a) in tr.parts.iter().zip(row) {
                if !a.is_zero() {
                    out.entry(rho.clone()).or_default().push(c.scale(a));
                }
            }
        }
    }
    Ok(out
        .into_iter()
        .map(|(k, v)| (k, RatFunc::sum(v)))
        .filter(|(_, v)| !v.is_zero())
        .collect())
}

/// Distinct permutations of an exponent vector.
fn distinct_permutations(v: &mut Vec<u32>) -> Vec<Vec<u32>> {
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        // Next lexicographic permutation.
        let n = v.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// The monomial symmetric polynomial `m_mu` in `n` variables of a bank
/// (zero when `l(mu) > n`).
pub fn monomial_symmetric(mu: &Partition, bank: Bank, n: usize) -> Poly {
    if mu.len() > n {
        return Poly::zero();
    }
    let mut v: Vec<u32> = (0..n).map(|i| mu.part(i)).collect();
    let terms = distinct_permutations(&mut v)
        .into_iter()
        .map(|e| {
            let m = e
                .iter()
                .enumerate()
                .fold(Mono::ONE, |m, (i, &k)| m.mul(&Mono::var_pow(bank.var(i), k as i32)));
            (m, Rat::ONE)
        })
        .collect();
    Poly::from_terms(terms)
}

/// Power sum `p_r` in `n` variables of a bank.
pub fn power_sum(r: u32, bank: Bank, n: usize) -> Poly {
    Poly::from_terms(
        (0..n)
            .map(|i| (Mono::var_pow(bank.var(i), r as i32), Rat::ONE))
            .collect(),
    )
}

/// Power sum product `p_rho` in `n` variables of a bank.
pub fn power_sum_product(rho: &Partition, bank: Bank, n: usize) -> Poly {
    rho.parts()
        .iter()
        .fold(Poly::one(), |acc, &r| &acc * &power_sum(r, bank, n))
}

fn sym_to_poly(s: &SymFn, parts: &[Partition], bank: Bank, n: usize) -> RatFunc {
    RatFunc::sum(
        parts
            .iter()
            .zip(&s.coeffs)
            .filter(|(mu, c)| mu.len() <= n && !c.is_zero())
            .map(|(mu, c)| c.mul_poly(&monomial_symmetric(mu, bank, n))),
    )
}

/// `g_r` in `n` variables: the `u^r` coefficient of
/// `prod_i (t x_i u; q)_inf / (x_i u; q)_inf`.
pub fn g_r(r: usize, bank: Bank, n: usize, params: &Params) -> RatFunc {
    let mut acc: USeries<RatFunc> = USeries::one(r);
    for i in 0..n {
        let s = qbinomial_u(&params.t, &params.q, &Term::var(bank.var(i)), r);
        acc = acc.mul(&s);
    }
    acc.coeff(r).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::Var;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn one() -> Poly {
        Poly::one()
    }

    #[test]
    fn transition_matrices_invert() {
        for k in 0..=6 {
            let tr = Transition::new(k);
            let n = tr.parts.len();
            for i in 0..n {
                for j in 0..n {
                    let mut s = Rat::ZERO;
                    for l in 0..n {
                        s = &s + &(&tr.m_to_p[i][l] * &tr.p_to_m[l][j]);
                    }
                    assert_eq!(s, if i == j { Rat::ONE } else { Rat::ZERO });
                }
            }
        }
    }

    #[test]
    fn power_to_monomial_against_expansion() {
        // Oracle: expand p_rho in |rho| variables and read off x^mu.
        for k in 1..=5 {
            for rho in partitions_of(k) {
                let poly = power_sum_product(&rho, Bank::X, k as usize);
                for mu in partitions_of(k) {
                    let m = mu
                        .parts()
                        .iter()
                        .enumerate()
                        .fold(Mono::ONE, |m, (i, &e)| m.mul(&Mono::var_pow(Bank::X.var(i), e as i32)));
                    assert_eq!(
                        poly.coeff(&m),
                        Rat::from_int(power_to_monomial_coeff(&rho, &mu) as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn p_trivial_cases() {
        let mut mac = Macdonald::new(Params::symbolic());
        assert!(mac.p_poly(&Partition::empty(), Bank::X, 3).unwrap().is_one());
        let p1 = mac.p_poly(&p("1"), Bank::X, 3).unwrap();
        assert_eq!(p1, RatFunc::from_poly(power_sum(1, Bank::X, 3)));
        assert_eq!(mac.p_poly(&p("1,1,1"), Bank::X, 2), Err(MacdonaldError::Rank));
    }

    #[test]
    fn p_two_in_two_variables() {
        let mut mac = Macdonald::new(Params::symbolic());
        let got = mac.p_poly(&p("2"), Bank::X, 2).unwrap();
        let q = Poly::var(Var::Q);
        let t = Poly::var(Var::T);
        let c = RatFunc::new(&(&one() + &q) * &(&one() - &t), &(&one() - &(&q * &t)));
        let expect = &RatFunc::from_poly(monomial_symmetric(&p("2"), Bank::X, 2))
            + &c.mul_poly(&monomial_symmetric(&p("1,1"), Bank::X, 2));
        assert_eq!(got, expect);
    }

    #[test]
    fn p_two_brute_force_gram_schmidt() {
        // Oracle: solve <m_2 + c m_11, m_11> = 0 directly with power sums
        // m_2 = p_2, m_11 = (p_1^2 - p_2) / 2.
        let s = Params::symbolic();
        let z2 = z_lambda(&p("2"), &s);
        let z11 = z_lambda(&p("1,1"), &s);
        let half = Rat::new(1, 2);
        // <p_2, m_11> = -z2/2, <m_11, m_11> = (z11 + z2)/4
        let num = z2.scale(&half);
        let den = (&z11 + &z2).scale(&Rat::new(1, 4));
        let c = &num / &den;
        let mut mac = Macdonald::new(s);
        let sym = mac.p_sym(&p("2")).unwrap();
        assert!(sym.coeffs[0].is_one());
        assert_eq!(sym.coeffs[1], c);
    }

    #[test]
    fn q_one_and_g_one() {
        let s = Params::symbolic();
        let mut mac = Macdonald::new(s.clone());
        let q1 = mac.q_poly(&p("1"), Bank::X, 3).unwrap();
        let b1 = b_lambda(&p("1"), &s);
        assert_eq!(q1, b1.mul_poly(&power_sum(1, Bank::X, 3)));
        assert_eq!(g_r(1, Bank::X, 3, &s), q1);
        assert!(g_r(0, Bank::X, 3, &s).is_one());
    }

    #[test]
    fn g_r_is_q_row() {
        let s = Params::symbolic();
        let mut mac = Macdonald::new(s.clone());
        for r in 1..=3 {
            let qr = mac.q_poly(&Partition::new(&[r as u32]), Bank::X, 2).unwrap();
            assert_eq!(g_r(r, Bank::X, 2, &s), qr, "r={r}");
        }
    }

    #[test]
    fn lr_trivial_and_symmetric() {
        let mut mac = Macdonald::new(Params::symbolic());
        let c = mac.lr_coefficients(&Partition::empty(), &p("2,1")).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[&p("2,1")].is_one());
        let a = mac.lr_coefficients(&p("1"), &p("1")).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.values().all(|v| !v.is_zero()));
        for k in 0..=3 {
            for mu in partitions_of(k) {
                for nu in partitions_of(3 - k) {
                    let x = mac.lr_coefficients(&mu, &nu).unwrap();
                    let y = mac.lr_coefficients(&nu, &mu).unwrap();
                    assert_eq!(x, y);
                    for lam in x.keys() {
                        assert!(lam.contains(&mu) && lam.contains(&nu));
                    }
                }
            }
        }
    }

    #[test]
    fn lr_against_polynomial_expansion() {
        // Oracle: expand Q_mu Q_nu in N and N+1 variables and back-solve
        // against Q_lambda by leading monomials.
        let s = Params::eval(Rat::new(2, 3), Rat::new(5, 2)).unwrap();
        let mut mac = Macdonald::new(s.clone());
        let cases = [(p("1"), p("1")), (p("2"), p("1")), (p("1,1"), p("2")), (p("2,1"), p("1"))];
        for (mu, nu) in cases {
            let expect = mac.lr_coefficients(&mu, &nu).unwrap();
            let k = (mu.weight() + nu.weight()) as usize;
            for n in [k, k + 1] {
                let prod = &mac.q_poly(&mu, Bank::X, n).unwrap() * &mac.q_poly(&nu, Bank::X, n).unwrap();
                let mut rem = prod.numer().clone();
                for lam in partitions_of(k as u32) {
                    let lead = lam
                        .parts()
                        .iter()
                        .enumerate()
                        .fold(Mono::ONE, |m, (i, &e)| m.mul(&Mono::var_pow(Bank::X.var(i), e as i32)));
                    let c = rem.coeff(&lead);
                    let ql = mac.q_poly(&lam, Bank::X, n).unwrap();
                    let ql = ql.as_poly().unwrap().clone();
                    let ql_lead = ql.coeff(&lead);
                    let coeff = &c / &ql_lead;
                    rem = &rem - &ql.scale(&coeff);
                    let got = expect.get(&lam).and_then(|v| v.as_constant()).unwrap_or(Rat::ZERO);
                    assert_eq!(got, coeff, "{mu:?} {nu:?} {lam:?} n={n}");
                }
                assert!(rem.is_zero());
            }
        }
    }

    #[test]
    fn skew_trivial_cases() {
        let mut mac = Macdonald::new(Params::symbolic());
        let lam = p("2,1");
        assert_eq!(
            mac.skew_p_poly(&lam, &Partition::empty(), Bank::X, 3).unwrap(),
            mac.p_poly(&lam, Bank::X, 3).unwrap()
        );
        assert!(mac.skew_p_poly(&lam, &lam, Bank::X, 3).unwrap().is_one());
        assert_eq!(
            mac.skew_p_poly(&p("1"), &p("2"), Bank::X, 2),
            Err(MacdonaldError::NotContained)
        );
        let sk = mac.skew_p_poly(&p("2"), &p("1"), Bank::X, 2).unwrap();
        let c = mac.lr_coefficients(&p("1"), &p("1")).unwrap()[&p("2")].clone();
        assert_eq!(sk, c.mul_poly(&power_sum(1, Bank::X, 2)));
    }

    #[test]
    fn inverted_parameters_leave_p_unchanged() {
        let s = Params::symbolic();
        let mut a = Macdonald::new(s.clone());
        let mut b = Macdonald::new(s.inverted());
        for k in 0..=4 {
            for lam in partitions_of(k) {
                assert_eq!(a.p_sym(&lam).unwrap(), b.p_sym(&lam).unwrap(), "{lam:?}");
            }
        }
    }

    #[test]
    fn inverted_parameters_scale_q() {
        let s = Params::symbolic();
        let lam = p("2,1");
        let mut a = Macdonald::new(s.clone());
        let mut b = Macdonald::new(s.inverted());
        let qa = a.q_poly(&lam, Bank::X, 3).unwrap();
        let qb = b.q_poly(&lam, Bank::X, 3).unwrap();
        assert_eq!(qb, qa.mul_term(&s.qt(3, -3)));
    }

    #[test]
    fn cauchy_identity_truncated() {
        // sum P_lambda(x) Q_lambda(z) = sum p_lambda(x) p_lambda(z) / z_lambda
        let s = Params::eval(Rat::new(3, 7), Rat::new(5, 2)).unwrap();
        let mut mac = Macdonald::new(s.clone());
        for d in 0..=4u32 {
            let n = 2;
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for lam in partitions_of(d) {
                let px = mac.p_poly_or_zero(&lam, Bank::X, n).unwrap();
                let qz = if lam.len() <= n {
                    mac.q_poly(&lam, Bank::Z, n).unwrap()
                } else {
                    RatFunc::zero()
                };
                lhs.push(&px * &qz);
                let pp = &power_sum_product(&lam, Bank::X, n) * &power_sum_product(&lam, Bank::Z, n);
                rhs.push(RatFunc::from_poly(pp).div_ref(&z_lambda(&lam, &s)));
            }
            assert_eq!(RatFunc::sum(lhs), RatFunc::sum(rhs), "d={d}");
        }
    }
    #[test]
    fn horizontal_strip_enumeration() {
        let got = horizontal_strips(&p("2,1"), &p("3,2,1"), 2);
        assert_eq!(got, vec![p("2,2,1"), p("3,1,1"), p("3,2")]);
        assert!(horizontal_strips(&p("1"), &p("1,1,1"), 2).is_empty());
        assert_eq!(horizontal_strips(&Partition::empty(), &p("2,1"), 2), vec![p("2")]);
    }

    #[test]
    fn branching_matches_gram_schmidt() {
        let s = Params::symbolic();
        let mut mac = Macdonald::new(s.clone());
        for k in 0..=4 {
            for lam in partitions_of(k) {
                for n in [2usize, 3] {
                    let a = mac.p_poly_or_zero(&lam, Bank::X, n).unwrap();
                    let b = skew_p_branching(&lam, &Partition::empty(), Bank::X, n, &s).unwrap();
                    assert_eq!(a, b, "{lam:?} n={n}");
                }
            }
        }
        let e = Params::eval(Rat::new(2, 3), Rat::new(5, 2)).unwrap();
        let mut mac = Macdonald::new(e.clone());
        for lam in partitions_of(6) {
            let a = mac.p_poly_or_zero(&lam, Bank::X, 3).unwrap();
            let b = skew_p_branching(&lam, &Partition::empty(), Bank::X, 3, &e).unwrap();
            assert_eq!(a, b, "{lam:?}");
        }
    }

    #[test]
    fn skew_branching_matches_lr_route() {
        let s = Params::symbolic();
        let mut mac = Macdonald::new(s.clone());
        for k in 1..=4 {
            for lam in partitions_of(k) {
                for j in 0..=k {
                    for nu in partitions_of(j) {
                        if !lam.contains(&nu) {
                            continue;
                        }
                        let a = mac.skew_p_poly(&lam, &nu, Bank::Y, 2).unwrap();
                        let b = skew_p_branching(&lam, &nu, Bank::Y, 2, &s).unwrap();
                        assert_eq!(a, b, "{lam:?}/{nu:?}");
                    }
                }
            }
        }
    }
    #[test]
    fn power_sum_round_trip() {
        let s = Params::symbolic();
        let mut mac = Macdonald::new(s.clone());
        for lam in partitions_of(3) {
            let f = mac.p_poly(&lam, Bank::X, 3).unwrap();
            let ps = to_power_sums(&f, Bank::X, 3).unwrap();
            assert_eq!(ps, mac.p_in_power_sums(&lam).unwrap());
            let back = RatFunc::sum(
                ps.iter()
                    .map(|(rho, c)| c.mul_poly(&power_sum_product(rho, Bank::X, 3))),
            );
            assert_eq!(back, f);
        }
    }
}
