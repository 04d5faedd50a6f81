//! Kernel functions, multiple basic hypergeometric series and the drivers
//! that check the identities relating them exactly.
//!
//! Kernels are expanded as truncated series in the second set of variables
//! `(z, w)`. Every kernel factor is bilinear in the two sets and every
//! operator coefficient is homogeneous of degree zero in its own variables,
//! so kernel identities split into independent identities between rational
//! functions, one per total `(z, w)`-degree. Those are compared exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{one_minus, qpoch_factors, FieldElem, Params};
use crate::diffop::DiffOp;
use crate::macdonald::{power_sum_product, Macdonald, MacdonaldError};
use crate::mono::{Bank, Var};
use crate::operators::{mr_roles, ns_roles, Family, MrRoute, Roles};
use crate::partition::{partitions_up_to, z_lambda, Partition};
use crate::poly::{Poly, Term};
use crate::rat::Rat;
use crate::ratfunc::{PoleError, RatFunc};
use crate::series::{q_binomial_series, qbinomial_u, DegenerateBase, TruncSeries, USeries};
use crate::superpoly::{phi_restriction, super_p};

/// Which kernel a [`KernelSeries`] expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// `Φ_{n,m;N,M}`, for `|q| < 1 < |t|`.
    Phi,
    /// `Ψ_{n,m;N,M}`, the variant for `|q|, |t| < 1`: `Φ` with
    /// `x -> t x`, `y -> t y`, re-expanded in base `t`. Its `(y, w)` block is
    /// `(q t^2 y w; t)_∞ / (t^2 y w; t)_∞`; with `t y w` in place of
    /// `t^2 y w` the identity fails once `m, M ≥ 1`. With `M = 0` this is
    /// `Π_{n,m;N}`.
    Psi,
}

/// Banks and sizes of the four variable sets of a kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelRoles {
    pub x: (Bank, usize),
    pub y: (Bank, usize),
    pub z: (Bank, usize),
    pub w: (Bank, usize),
}

impl KernelRoles {
    /// `x, y, z, w` on banks `X, Y, Z, W`.
    pub fn standard(n: usize, m: usize, big_n: usize, big_m: usize) -> KernelRoles {
        KernelRoles {
            x: (Bank::X, n),
            y: (Bank::Y, m),
            z: (Bank::Z, big_n),
            w: (Bank::W, big_m),
        }
    }

    /// Mask of the series variables `(z, w)`.
    pub fn series_mask(&self) -> u32 {
        self.z.0.mask(self.z.1) | self.w.0.mask(self.w.1)
    }
}

/// A kernel truncated at total `(z, w)`-degree `d`, with coefficients
/// polynomial in `(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    pub kind: KernelKind,
    pub roles: KernelRoles,
    pub series: TruncSeries,
}

impl KernelSeries {
    pub fn degree(&self) -> i32 {
        self.series.degree()
    }

    /// The part of total `(z, w)`-degree `k`, as one function of all
    /// variables.
    pub fn homogeneous(&self, k: i32) -> RatFunc {
        self.series.homogeneous(k)
    }

    /// The whole truncation as one polynomial.
    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::sum((0..=self.degree()).map(|k| self.homogeneous(k)))
    }
}

fn bilinear(a: &Term, u: crate::mono::Var, v: crate::mono::Var) -> Term {
    a.mul(&Term::var(u)).mul(&Term::var(v))
}

fn finite_block(c: &Term, roles: (Bank, usize), other: (Bank, usize), mask: u32, d: i32) -> TruncSeries {
    let mut s = TruncSeries::one(mask, d);
    for i in 0..roles.1 {
        for j in 0..other.1 {
            let f = one_minus(&bilinear(c, roles.0.var(i), other.0.var(j)));
            s = s.mul(&TruncSeries::from_poly(&f, mask, d));
        }
    }
    s
}

fn binomial_block(
    a: &Term,
    base: &Term,
    gauge: &Term,
    left: (Bank, usize),
    right: (Bank, usize),
    mask: u32,
    d: i32,
) -> Result<TruncSeries, DegenerateBase> {
    let mut s = TruncSeries::one(mask, d);
    for i in 0..left.1 {
        for j in 0..right.1 {
            let g = bilinear(gauge, left.0.var(i), right.0.var(j));
            s = s.mul(&q_binomial_series(a, base, &g, d, mask)?);
        }
    }
    Ok(s)
}

/// Expands a kernel with arbitrary banks and role parameters `rp`.
pub fn kernel_roles(kind: KernelKind, roles: &KernelRoles, rp: &Params, d: i32) -> Result<KernelSeries, DegenerateBase> {
    let (q, t) = (&rp.q, &rp.t);
    let mask = roles.series_mask();
    let one = Term::one();
    let series = match kind {
        KernelKind::Phi => binomial_block(t, q, &t.inv(), roles.x, roles.z, mask, d)?
            .mul(&binomial_block(&q.inv(), &t.inv(), q, roles.y, roles.w, mask, d)?)
            .mul(&finite_block(&one, roles.x, roles.w, mask, d))
            .mul(&finite_block(&one, roles.y, roles.z, mask, d)),
        KernelKind::Psi => binomial_block(t, q, &one, roles.x, roles.z, mask, d)?
            .mul(&binomial_block(q, t, &t.pow(2), roles.y, roles.w, mask, d)?)
            .mul(&finite_block(t, roles.x, roles.w, mask, d))
            .mul(&finite_block(t, roles.y, roles.z, mask, d)),
    };
    Ok(KernelSeries {
        kind,
        roles: *roles,
        series,
    })
}

/// `Φ_{n,m;N,M}(x, y; z, w)` to `(z, w)`-degree `d`.
pub fn phi_kernel(n: usize, m: usize, big_n: usize, big_m: usize, params: &Params, d: i32) -> Result<KernelSeries, DegenerateBase> {
    kernel_roles(KernelKind::Phi, &KernelRoles::standard(n, m, big_n, big_m), params, d)
}

/// `Ψ_{n,m;N,M}(x, y; z, w)` to `(z, w)`-degree `d`.
pub fn psi_kernel(n: usize, m: usize, big_n: usize, big_m: usize, params: &Params, d: i32) -> Result<KernelSeries, DegenerateBase> {
    kernel_roles(KernelKind::Psi, &KernelRoles::standard(n, m, big_n, big_m), params, d)
}

/// `Π_{n,m;N}(x, y; z) = prod (t x_i z_k; q)_∞ / (x_i z_k; q)_∞
/// prod (1 - t y_j z_k)` to `z`-degree `d`.
pub fn pi_kernel(n: usize, m: usize, big_n: usize, params: &Params, d: i32) -> Result<KernelSeries, DegenerateBase> {
    psi_kernel(n, m, big_n, 0, params, d)
}

/// `sum_{|λ| ≤ d, l(λ) ≤ N} t^{-|λ|} SP_λ(x, y) Q_λ(z)`, the expansion of
/// `Φ_{n,m;N,0}` through super-Macdonald polynomials.
pub fn phi_kernel_from_super(n: usize, m: usize, big_n: usize, params: &Params, d: u32) -> Result<RatFunc, MacdonaldError> {
    let mut mac = Macdonald::new(params.clone());
    let mut parts = Vec::new();
    for lam in partitions_up_to(d) {
        if lam.len() > big_n {
            continue;
        }
        let sp = super_p(&lam, n, m, params);
        if sp.is_zero() {
            continue;
        }
        let qz = mac.q_poly(&lam, Bank::Z, big_n)?;
        parts.push((&sp * &qz).mul_term(&params.t.pow(-(lam.weight() as i32))));
    }
    Ok(RatFunc::sum(parts))
}

/// `sum_{|λ| ≤ d} z_λ(q, t)^{-1} φ(p_λ)(x, y) p_λ(z_1..z_N)`: the image of
/// the power-sum expansion of `Π(z; w)` under the deformed Newton-sum map.
pub fn pi_from_power_sums(n: usize, m: usize, big_n: usize, params: &Params, d: u32) -> RatFunc {
    RatFunc::sum(partitions_up_to(d).into_iter().map(|lam| {
        let mut one = BTreeMap::new();
        one.insert(lam.clone(), RatFunc::one());
        let image = phi_restriction(&one, n, m, params);
        (&image * &RatFunc::from_poly(power_sum_product(&lam, Bank::Z, big_n))).div_ref(&z_lambda(&lam, params))
    }))
}

/// The operator of a family on the given role banks: `𝓗^r` or `𝓓^r`.
pub fn family_operator(family: Family, r: u32, roles: &Roles, params: &Params) -> crate::diffop::DiffOp {
    match family {
        Family::Ns => ns_roles(r, roles, params, params),
        Family::Mr => mr_roles(r, roles, params, params, MrRoute::Direct),
    }
}

/// Residuals `(𝓕^r(x, y) - 𝓕^r(z, w)) K_k` for each homogeneous part
/// `K_k`, `k = 0..=d`, of the kernel; all vanish exactly when the kernel
/// identity holds to `(z, w)`-degree `d`.
pub fn kernel_identity_residuals(family: Family, r: u32, kernel: &KernelSeries, params: &Params) -> Vec<RatFunc> {
    let kr = &kernel.roles;
    let left = Roles {
        x: kr.x.0,
        n: kr.x.1,
        y: kr.y.0,
        m: kr.y.1,
    };
    let right = Roles {
        x: kr.z.0,
        n: kr.z.1,
        y: kr.w.0,
        m: kr.w.1,
    };
    let a = family_operator(family, r, &left, params);
    let b = family_operator(family, r, &right, params);
    (0..=kernel.degree())
        .map(|k| {
            let part = kernel.homogeneous(k);
            &a.apply(&part) - &b.apply(&part)
        })
        .collect()
}

/// Failure of a restriction check.
#[derive(Clone, Debug, PartialEq)]
pub enum RestrictionError {
    /// No pole-free sample points gave full rank: too few variables for the
    /// power sums of weight `≤ |λ|` to be independent.
    Basis,
    /// The image disagrees with its fitted power-sum expansion at a check
    /// point, so it is not a polynomial of degree `≤ |λ|` in power sums.
    OutsideSpan(RatFunc),
}

impl fmt::Display for RestrictionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictionError::Basis => f.write_str("power sums are not independent on the sample points"),
            RestrictionError::OutsideSpan(r) => write!(f, "image leaves the power-sum span, mismatch {r}"),
        }
    }
}

/// Outcome of one restriction check.
#[derive(Clone, Debug, PartialEq)]
pub struct Restriction {
    /// `𝓕_N^r p_λ` in the power-sum basis.
    pub expansion: BTreeMap<Partition, FieldElem>,
    /// `φ(𝓕_N^r p_λ) - 𝓕^r_{n,m} φ(p_λ)`.
    pub residual: RatFunc,
}

/// Extra sample points beyond the number of unknowns, used to confirm the
/// fitted expansion.
const CHECK_POINTS: usize = 2;

/// Sample points tried before giving up on full rank.
const MAX_POINTS: usize = 64;

/// The `k`-th sample point: distinct rationals in `N` variables.
fn sample_point(k: usize, big_n: usize) -> Vec<Rat> {
    (0..big_n)
        .map(|i| {
            let j = (k * big_n + i) as i64;
            Rat::new(3 + 2 * j + j * j % 7, 2 + j % 5 + k as i64)
        })
        .collect()
}

/// An operator evaluated at one sample point: for each term, the shifted
/// point and the coefficient value.
#[derive(Clone, Debug)]
struct Sample {
    point: Vec<(Var, Term)>,
    terms: Vec<(Vec<(Var, Term)>, RatFunc)>,
}

impl Sample {
    fn new(op: &DiffOp, point: Vec<(Var, Term)>) -> Result<Sample, PoleError> {
        let mut terms = Vec::with_capacity(op.len());
        for (s, a) in op.terms() {
            let scales = op.shift_scales(s);
            let shifted: Vec<(Var, Term)> = point
                .iter()
                .map(|(v, c)| match scales.iter().find(|(w, _)| w == v) {
                    Some((_, k)) => (*v, c.mul(k)),
                    None => (*v, c.clone()),
                })
                .collect();
            terms.push((shifted, a.subst_terms(&point)?));
        }
        Ok(Sample { point, terms })
    }

    /// `(op f)` at the point.
    fn apply(&self, f: &RatFunc) -> Result<RatFunc, PoleError> {
        let mut vals = Vec::with_capacity(self.terms.len());
        for (shifted, a) in &self.terms {
            vals.push(a * &f.subst_terms(shifted)?);
        }
        Ok(RatFunc::sum(vals))
    }
}

/// Lazily evaluated coefficients of an `N`-variable operator on bank `Z` at
/// the fixed sample points, shared by every function it is applied to.
#[derive(Clone, Debug)]
pub struct OperatorSamples<'a> {
    op: &'a DiffOp,
    big_n: usize,
    samples: Vec<Option<Sample>>,
}

impl<'a> OperatorSamples<'a> {
    pub fn new(op: &'a DiffOp, big_n: usize) -> OperatorSamples<'a> {
        OperatorSamples {
            op,
            big_n,
            samples: Vec::new(),
        }
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    /// The `k`-th sample, `None` when the point hits a pole.
    fn get(&mut self, k: usize) -> Option<&Sample> {
        while self.samples.len() <= k {
            let j = self.samples.len();
            let point = sample_point(j, self.big_n)
                .into_iter()
                .enumerate()
                .map(|(i, c)| (Bank::Z.var(i), Term::constant(c)))
                .collect();
            self.samples.push(Sample::new(self.op, point).ok());
        }
        self.samples[k].as_ref()
    }
}

/// Reduces `row` against an echelon basis; returns the reduced row.
fn reduce(basis: &[(usize, Vec<RatFunc>)], mut row: Vec<RatFunc>) -> Vec<RatFunc> {
    for (pivot, b) in basis {
        if row[*pivot].is_zero() {
            continue;
        }
        let c = row[*pivot].div_ref(&b[*pivot]);
        for (x, y) in row.iter_mut().zip(b) {
            if !y.is_zero() {
                *x = &*x - &(&c * y);
            }
        }
    }
    row
}

/// Solves an echelon system with augmented last column by back substitution.
fn back_substitute(mut basis: Vec<(usize, Vec<RatFunc>)>, unknowns: usize) -> Vec<RatFunc> {
    basis.sort_by_key(|(p, _)| *p);
    let mut x = alloc::vec![RatFunc::zero(); unknowns];
    for (pivot, row) in basis.iter().rev() {
        let mut acc = row[unknowns].clone();
        for j in pivot + 1..unknowns {
            if !row[j].is_zero() {
                acc = &acc - &(&row[j] * &x[j]);
            }
        }
        x[*pivot] = acc.div_ref(&row[*pivot]);
    }
    x
}

/// Power-sum expansion of `op p_λ` in `N` variables of bank `Z`, from exact
/// values at sample points. The unknowns are the coefficients of `p_ρ`,
/// `|ρ| ≤ |λ|`; after full rank, `CHECK_POINTS` more points must agree.
pub fn sampled_power_sums(samples: &mut OperatorSamples<'_>, lam: &Partition) -> Result<BTreeMap<Partition, FieldElem>, RestrictionError> {
    let big_n = samples.big_n;
    let f = RatFunc::from_poly(power_sum_product(lam, Bank::Z, big_n));
    let basis_fns: Vec<Partition> = partitions_up_to(lam.weight());
    let polys: Vec<RatFunc> = basis_fns.iter().map(|rho| RatFunc::from_poly(power_sum_product(rho, Bank::Z, big_n))).collect();
    let unknowns = basis_fns.len();
    let mut echelon: Vec<(usize, Vec<RatFunc>)> = Vec::new();
    let mut pending_checks: Vec<(Vec<RatFunc>, RatFunc)> = Vec::new();
    let mut k = 0;
    while pending_checks.len() < CHECK_POINTS || echelon.len() < unknowns {
        if k == MAX_POINTS {
            return Err(RestrictionError::Basis);
        }
        k += 1;
        let Some(sample) = samples.get(k - 1) else {
            continue;
        };
        let Ok(value) = sample.apply(&f) else {
            continue;
        };
        let row: Vec<RatFunc> = polys.iter().map(|p| p.subst_terms(&sample.point).expect("polynomial")).collect();
        if echelon.len() == unknowns {
            pending_checks.push((row, value));
            continue;
        }
        let mut aug = row;
        aug.push(value);
        let reduced = reduce(&echelon, aug);
        if let Some(pivot) = reduced[..unknowns].iter().position(|c| !c.is_zero()) {
            echelon.push((pivot, reduced));
        } else if !reduced[unknowns].is_zero() {
            return Err(RestrictionError::OutsideSpan(reduced[unknowns].clone()));
        }
    }
    let coeffs = back_substitute(echelon, unknowns);
    for (row, value) in pending_checks {
        let fitted = RatFunc::sum(row.iter().zip(&coeffs).map(|(a, c)| a * c));
        let diff = &fitted - &value;
        if !diff.is_zero() {
            return Err(RestrictionError::OutsideSpan(diff));
        }
    }
    Ok(basis_fns.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect())
}

/// The `N`-variable operator of a family on bank `Z`.
pub fn restriction_operator(family: Family, r: u32, big_n: usize, params: &Params) -> DiffOp {
    let roles = Roles {
        x: Bank::Z,
        n: big_n,
        y: Bank::W,
        m: 0,
    };
    family_operator(family, r, &roles, params)
}

/// Checks `φ ∘ 𝓕_N^r = 𝓕^r_{n,m} ∘ φ` on `p_λ`, with the `N`-variable
/// operator on bank `Z` and `φ: p_r -> p_r(x, y; q, t)`.
pub fn restriction_check(
    family: Family,
    r: u32,
    lam: &Partition,
    n: usize,
    m: usize,
    big_n: usize,
    params: &Params,
) -> Result<Restriction, RestrictionError> {
    let op_n = restriction_operator(family, r, big_n, params);
    restriction_check_with(&mut OperatorSamples::new(&op_n, big_n), family, r, lam, n, m, params)
}

/// [`restriction_check`] reusing the samples of `𝓕_N^r`, which must be
/// [`restriction_operator`] for the same family and `r`.
pub fn restriction_check_with(
    samples: &mut OperatorSamples<'_>,
    family: Family,
    r: u32,
    lam: &Partition,
    n: usize,
    m: usize,
    params: &Params,
) -> Result<Restriction, RestrictionError> {
    let expansion = sampled_power_sums(samples, lam)?;
    let lhs = phi_restriction(&expansion, n, m, params);
    let mut one = BTreeMap::new();
    one.insert(lam.clone(), RatFunc::one());
    let op_nm = family_operator(family, r, &Roles::standard(n, m), params);
    let rhs = op_nm.apply(&phi_restriction(&one, n, m, params));
    Ok(Restriction {
        expansion,
        residual: &lhs - &rhs,
    })
}

/// Parameters of one multiple basic hypergeometric series
/// `φ^{K,L}(a; X | b; c; u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperData {
    pub a: Vec<Term>,
    pub x: Vec<Term>,
    pub b: Vec<Term>,
    pub c: Vec<Term>,
}

fn checked_poch(a: &Term, base: &Term, k: u32) -> Result<Vec<Poly>, PoleError> {
    let f = qpoch_factors(a, base, k);
    if f.iter().any(Poly::is_zero) {
        return Err(PoleError);
    }
    Ok(f)
}

/// Compositions of every total `≤ order` into `k` parts.
fn tuples(k: usize, order: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=order as u32 {
        out.extend(crate::operators::compositions(k, total));
    }
    out
}

/// `φ^{K,L}(a; X | b; c; u) = sum_γ u^{|γ|} Δ(q^γ X)/Δ(X)
/// prod_{i,j} (a_j X_i/X_j; q)_{γ_i} / (q X_i/X_j; q)_{γ_i}
/// prod_{i,k} (X_i b_k; q)_{γ_i} / (X_i c_k; q)_{γ_i}` to order `u^order`.
pub fn kajihara_phi(h: &HyperData, q: &Term, order: usize) -> Result<USeries<FieldElem>, PoleError> {
    let k = h.x.len();
    assert_eq!(h.a.len(), k);
    assert_eq!(h.b.len(), h.c.len());
    let mut coeffs: Vec<Vec<RatFunc>> = (0..=order).map(|_| Vec::new()).collect();
    for gamma in tuples(k, order) {
        let mut nums: Vec<Poly> = Vec::new();
        let mut dens: Vec<Poly> = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let xi = h.x[i].to_poly();
                let xj = h.x[j].to_poly();
                if i < j {
                    let shifted = &xi.mul_by(&q.pow(gamma[i] as i32)) - &xj.mul_by(&q.pow(gamma[j] as i32));
                    let plain = &xi - &xj;
                    if plain.is_zero() {
                        return Err(PoleError);
                    }
                    nums.push(shifted);
                    dens.push(plain);
                }
            }
        }
        for (i, &g) in gamma.iter().enumerate() {
            for j in 0..k {
                let ratio = h.x[i].mul(&h.x[j].inv());
                nums.extend(qpoch_factors(&h.a[j].mul(&ratio), q, g));
                dens.extend(checked_poch(&q.mul(&ratio), q, g)?);
            }
            for (b, c) in h.b.iter().zip(&h.c) {
                nums.extend(qpoch_factors(&h.x[i].mul(b), q, g));
                dens.extend(checked_poch(&h.x[i].mul(c), q, g)?);
            }
        }
        let total: u32 = gamma.iter().sum();
        coeffs[total as usize].push(RatFunc::from_factors(&nums, &dens));
    }
    Ok(USeries::from_coeffs(coeffs.into_iter().map(RatFunc::sum).collect(), order))
}

/// `₂φ₁[a, b; c; q, u]` to order `u^order`.
pub fn two_phi_one(a: &Term, b: &Term, c: &Term, q: &Term, order: usize) -> Result<USeries<FieldElem>, PoleError> {
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order as u32 {
        let mut nums = qpoch_factors(a, q, k);
        nums.extend(qpoch_factors(b, q, k));
        let mut dens = checked_poch(q, q, k)?;
        dens.extend(checked_poch(c, q, k)?);
        out.push(RatFunc::from_factors(&nums, &dens));
    }
    Ok(USeries::from_coeffs(out, order))
}

fn product(ts: &[Term]) -> Term {
    ts.iter().fold(Term::one(), |acc, v| acc.mul(v))
}

/// Both sides of the Kajihara transformation
/// `φ^{K,L}(a; X | bY; cY; u) = (αβu/c^L; q)_∞/(u; q)_∞
///  φ^{L,K}(c/b; Y | cX/a; cX; αβu/c^L)` with `α = prod a`, `β = prod b`.
pub fn kajihara_sides(
    a: &[Term],
    x: &[Term],
    b: &[Term],
    y: &[Term],
    c: &Term,
    q: &Term,
    order: usize,
) -> Result<(USeries<FieldElem>, USeries<FieldElem>), PoleError> {
    let lhs = kajihara_phi(
        &HyperData {
            a: a.to_vec(),
            x: x.to_vec(),
            b: b.iter().zip(y).map(|(b, y)| b.mul(y)).collect(),
            c: y.iter().map(|y| c.mul(y)).collect(),
        },
        q,
        order,
    )?;
    let scale = product(a).mul(&product(b)).mul(&c.pow(-(b.len() as i32)));
    let inner = kajihara_phi(
        &HyperData {
            a: b.iter().map(|b| c.mul(&b.inv())).collect(),
            x: y.to_vec(),
            b: x.iter().zip(a).map(|(x, a)| c.mul(x).mul(&a.inv())).collect(),
            c: x.iter().map(|x| c.mul(x)).collect(),
        },
        q,
        order,
    )?;
    let pre = qbinomial_u(&scale, q, &Term::one(), order);
    let rhs = pre.mul(&inner.rescale_u(&RatFunc::from_term(&scale)));
    Ok((lhs, rhs))
}

/// Both sides of the specialised form (`c = 1`, `b -> 1/b`, `u -> u/α`):
/// `(u/α; q)_∞/(u; q)_∞ φ^{K,L}(a; X | Y/b; Y; u/α)
///  = (u/β; q)_∞/(u; q)_∞ φ^{L,K}(b; Y | X/a; X; u/β)`.
pub fn kajihara_specialised_sides(
    a: &[Term],
    x: &[Term],
    b: &[Term],
    y: &[Term],
    q: &Term,
    order: usize,
) -> Result<(USeries<FieldElem>, USeries<FieldElem>), PoleError> {
    let side = |a: &[Term], x: &[Term], b: &[Term], y: &[Term]| -> Result<USeries<FieldElem>, PoleError> {
        let al = product(a).inv();
        let phi = kajihara_phi(
            &HyperData {
                a: a.to_vec(),
                x: x.to_vec(),
                b: y.iter().zip(b).map(|(y, b)| y.mul(&b.inv())).collect(),
                c: y.to_vec(),
            },
            q,
            order,
        )?;
        Ok(qbinomial_u(&al, q, &Term::one(), order).mul(&phi.rescale_u(&RatFunc::from_term(&al))))
    };
    Ok((side(a, x, b, y)?, side(b, y, a, x)?))
}

/// Both sides of Heine's transformation
/// `₂φ₁[a, b; c; u] = (abu/c; q)_∞/(u; q)_∞ ₂φ₁[c/a, c/b; c; abu/c]`.
pub fn heine_sides(a: &Term, b: &Term, c: &Term, q: &Term, order: usize) -> Result<(USeries<FieldElem>, USeries<FieldElem>), PoleError> {
    let lhs = two_phi_one(a, b, c, q, order)?;
    let z = a.mul(b).mul(&c.inv());
    let inner = two_phi_one(&c.mul(&a.inv()), &c.mul(&b.inv()), c, q, order)?;
    let rhs = qbinomial_u(&z, q, &Term::one(), order).mul(&inner.rescale_u(&RatFunc::from_term(&z)));
    Ok((lhs, rhs))
}

/// Coefficientwise difference of two series.
pub fn series_residuals(a: &USeries<FieldElem>, b: &USeries<FieldElem>) -> Vec<RatFunc> {
    a.sub(b).into_coeffs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::Var;
    use crate::rat::Rat;

    fn sym() -> Params {
        Params::symbolic()
    }

    fn ev() -> Params {
        Params::eval(Rat::new(2, 3), Rat::new(5, 2)).unwrap()
    }

    fn c(n: i64, d: i64) -> Term {
        Term::constant(Rat::new(n, d))
    }

    #[test]
    fn small_kernels() {
        let p = sym();
        assert!(phi_kernel(2, 1, 1, 1, &p, 0).unwrap().to_ratfunc().is_one());
        // One x-z pair: 1 + (1-t)/(1-q) t^{-1} x z at degree one.
        let k = phi_kernel(1, 0, 1, 0, &p, 1).unwrap();
        let xz = crate::mono::Mono::var(Bank::Z.var(0));
        let expected = RatFunc::from_factors(&[one_minus(&p.t)], &[one_minus(&p.q)]).mul_term(&Term::var(Bank::X.var(0)).mul(&p.t.inv()));
        assert_eq!(k.series.coeff(&xz), expected);
        let k = phi_kernel(0, 1, 1, 0, &p, 2).unwrap();
        let y1z1 = RatFunc::var(Bank::Y.var(0)) * RatFunc::var(Bank::Z.var(0));
        assert_eq!(k.to_ratfunc(), &RatFunc::one() - &y1z1);
        assert!(psi_kernel(1, 1, 1, 1, &p, 0).unwrap().to_ratfunc().is_one());
    }

    #[test]
    fn kernel_symmetries() {
        let p = sym();
        let d = 3;
        for (n, m, bn, bm) in [(1, 1, 1, 1), (2, 1, 1, 0), (1, 0, 1, 1)] {
            let phi = phi_kernel(n, m, bn, bm, &p, d).unwrap().to_ratfunc();
            let swapped = KernelRoles {
                x: (Bank::Z, bn),
                y: (Bank::W, bm),
                z: (Bank::X, n),
                w: (Bank::Y, m),
            };
            assert_eq!(kernel_roles(KernelKind::Phi, &swapped, &p, d).unwrap().to_ratfunc(), phi);
            let dual = KernelRoles {
                x: (Bank::Y, m),
                y: (Bank::X, n),
                z: (Bank::W, bm),
                w: (Bank::Z, bn),
            };
            assert_eq!(kernel_roles(KernelKind::Phi, &dual, &p.dual(), d).unwrap().to_ratfunc(), phi);
        }
    }

    #[test]
    fn pi_is_a_gauge_of_phi() {
        let p = sym();
        let phi = phi_kernel(1, 1, 2, 0, &p, 3).unwrap().to_ratfunc();
        let gauged = phi.scale_vars(&[(Bank::X.var(0), p.t.clone()), (Bank::Y.var(0), p.t.clone())]);
        assert_eq!(pi_kernel(1, 1, 2, &p, 3).unwrap().to_ratfunc(), gauged);
    }

    #[test]
    fn phi_expands_in_super_macdonald_polynomials() {
        let p = sym();
        for (n, m, bn) in [(1, 1, 1), (1, 1, 2), (2, 1, 2)] {
            let lhs = phi_kernel(n, m, bn, 0, &p, 3).unwrap().to_ratfunc();
            assert_eq!(lhs, phi_kernel_from_super(n, m, bn, &p, 3).unwrap(), "({n},{m};{bn})");
        }
    }

    #[test]
    fn pi_matches_power_sum_image() {
        let p = sym();
        let lhs = pi_kernel(1, 1, 2, &p, 3).unwrap().to_ratfunc();
        assert_eq!(lhs, pi_from_power_sums(1, 1, 2, &p, 3));
    }

    #[test]
    fn kernel_identities_small() {
        let p = ev();
        for family in [Family::Ns, Family::Mr] {
            let k = phi_kernel(1, 1, 1, 1, &p, 3).unwrap();
            for r in 0..=2 {
                assert!(kernel_identity_residuals(family, r, &k, &p).iter().all(RatFunc::is_zero), "{family:?} r={r}");
            }
        }
        let k = psi_kernel(1, 1, 1, 0, &p, 3).unwrap();
        for r in 0..=2 {
            assert!(kernel_identity_residuals(Family::Ns, r, &k, &p).iter().all(RatFunc::is_zero));
        }
    }

    #[test]
    fn psi_needs_the_doubled_gauge() {
        let p = ev();
        let k = psi_kernel(1, 1, 1, 1, &p, 3).unwrap();
        for r in 1..=2 {
            assert!(kernel_identity_residuals(Family::Ns, r, &k, &p).iter().all(RatFunc::is_zero), "r={r}");
        }
        let roles = KernelRoles::standard(1, 1, 1, 1);
        let mask = roles.series_mask();
        let single = binomial_block(&p.t, &p.q, &Term::one(), roles.x, roles.z, mask, 3)
            .unwrap()
            .mul(&binomial_block(&p.q, &p.t, &p.t, roles.y, roles.w, mask, 3).unwrap())
            .mul(&finite_block(&p.t, roles.x, roles.w, mask, 3))
            .mul(&finite_block(&p.t, roles.y, roles.z, mask, 3));
        let single = KernelSeries {
            kind: KernelKind::Psi,
            roles,
            series: single,
        };
        assert!(!kernel_identity_residuals(Family::Ns, 1, &single, &p).iter().all(RatFunc::is_zero));
    }

    #[test]
    fn wrong_kernel_breaks_identity() {
        let p = ev();
        let k = phi_kernel(1, 1, 1, 1, &p, 2).unwrap();
        let bad = KernelSeries {
            series: k.series.map(k.series.mask(), |m, c| (*m, c.scale_vars(&[(Bank::Y.var(0), Term::constant(Rat::from_int(2)))]))),
            ..k
        };
        assert!(!kernel_identity_residuals(Family::Ns, 1, &bad, &p).iter().all(RatFunc::is_zero));
    }

    #[test]
    fn sampled_expansion_matches_symbolic_expansion() {
        let p = sym();
        for lam in partitions_up_to(3) {
            for family in [Family::Ns, Family::Mr] {
                let op = restriction_operator(family, 2, 3, &p);
                let image = op.apply(&RatFunc::from_poly(power_sum_product(&lam, Bank::Z, 3)));
                let direct = crate::macdonald::to_power_sums(&image, Bank::Z, 3).unwrap();
                assert_eq!(sampled_power_sums(&mut OperatorSamples::new(&op, 3), &lam).unwrap(), direct, "{family:?} {lam:?}");
            }
        }
    }

    #[test]
    fn sampling_rejects_non_polynomial_images() {
        let p = ev();
        let z1 = Bank::Z.var(0);
        let op = DiffOp::scalar(&p, [0, 0, 2, 0], RatFunc::var(z1).inv());
        assert!(matches!(sampled_power_sums(&mut OperatorSamples::new(&op, 2), &Partition::new(&[1])), Err(RestrictionError::OutsideSpan(_))));
        let few = DiffOp::identity(&p, [0, 0, 1, 0]);
        assert_eq!(sampled_power_sums(&mut OperatorSamples::new(&few, 1), &Partition::new(&[1, 1])), Err(RestrictionError::Basis));
    }

    #[test]
    fn restriction_intertwines() {
        let p = sym();
        for lam in partitions_up_to(2) {
            for r in 0..=2 {
                for family in [Family::Ns, Family::Mr] {
                    let a = restriction_check(family, r, &lam, 1, 1, 3, &p).unwrap();
                    let b = restriction_check(family, r, &lam, 1, 1, 4, &p).unwrap();
                    assert!(a.residual.is_zero(), "{family:?} r={r} {lam:?}");
                    assert_eq!(a.expansion, b.expansion);
                }
            }
        }
    }

    #[test]
    fn hypergeometric_series() {
        let q = c(1, 3);
        let h = HyperData {
            a: vec![c(2, 5)],
            x: vec![c(3, 7)],
            b: vec![c(5, 2)],
            c: vec![c(-4, 3)],
        };
        let phi = kajihara_phi(&h, &q, 3).unwrap();
        let two = two_phi_one(&c(2, 5), &c(15, 14), &c(-4, 7), &q, 3).unwrap();
        assert_eq!(phi, two);
        assert!(phi.coeff(0).is_one());
        let a = RatFunc::from_term(&c(2, 5));
        let b = RatFunc::from_term(&c(15, 14));
        let cc = RatFunc::from_term(&c(-4, 7));
        let one = RatFunc::one();
        let first = (&(&one - &a) * &(&one - &b)) / (&(&one - &RatFunc::from_term(&q)) * &(&one - &cc));
        assert_eq!(*two.coeff(1), first);
    }

    #[test]
    fn heine_and_kajihara() {
        let q = c(1, 3);
        let (l, r) = heine_sides(&c(2, 5), &c(7, 3), &c(-3, 11), &q, 4).unwrap();
        assert_eq!(l, r);
        let (l, r) = kajihara_sides(&[c(2, 5), c(-3, 4)], &[c(3, 7), c(5, 9)], &[c(7, 2)], &[c(11, 13)], &c(6, 5), &q, 3).unwrap();
        assert!(series_residuals(&l, &r).iter().all(RatFunc::is_zero));
        let (l, r) = kajihara_specialised_sides(&[c(2, 5)], &[c(3, 7)], &[c(7, 2), c(-2, 9)], &[c(11, 13), c(4, 3)], &q, 3).unwrap();
        assert_eq!(l, r);
        let bad = kajihara_sides(&[c(2, 5)], &[c(3, 7)], &[c(7, 2)], &[c(11, 13)], &c(6, 5), &q, 3).unwrap();
        let (l, _) = kajihara_sides(&[c(2, 5)], &[c(3, 7)], &[c(7, 3)], &[c(11, 13)], &c(6, 5), &q, 3).unwrap();
        assert_ne!(l, bad.1);
    }

    #[test]
    fn symbolic_heine() {
        let q = Term::var(Var::Q);
        let a = Term::var(Bank::X.var(0));
        let b = Term::var(Bank::X.var(1));
        let cc = Term::var(Bank::X.var(2));
        let (l, r) = heine_sides(&a, &b, &cc, &q, 3).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn poles_are_reported() {
        let q = c(1, 2);
        assert_eq!(two_phi_one(&c(1, 3), &c(1, 5), &c(2, 1), &q, 3), Err(PoleError));
    }
}
