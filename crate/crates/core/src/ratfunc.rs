//! Rational functions with a factored denominator.
//!
//! A [`RatFunc`] is `num / (a_1^k_1 ... a_r^k_r)` where `num` is a Laurent
//! polynomial and each atom `a_i` is a normalized polynomial (nonnegative
//! exponents, no monomial factor, leading coefficient 1). Atoms are
//! classified at construction: binomials whose exponent vector is primitive
//! and cyclotomic factors of monomials are irreducible, and cancel against
//! the numerator by exact division; anything else is a general atom and
//! cancels through a polynomial gcd. After every operation the numerator is
//! coprime to each atom, so zero testing is a check on the numerator.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::gcd::gcd;
use crate::mono::{Mono, Var, NVARS};
use crate::poly::{PowCache, Poly, Term};
use crate::rat::Rat;

/// A normalized denominator factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    poly: Poly,
    irreducible: bool,
}

impl Atom {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }
}

/// Raised when a substitution or evaluation hits a pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleError;

impl fmt::Display for PoleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("denominator vanishes")
    }
}

/// Cyclotomic polynomial coefficients, lowest degree first.
fn cyclotomic(d: u32) -> Vec<i64> {
    // (s^d - 1) divided by every cyclotomic factor of a proper divisor.
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            let f = cyclotomic(e);
            p = div_int_poly(&p, &f);
        }
    }
    p
}

fn totient(d: u32) -> u32 {
    (1..=d).filter(|&k| gcd_i32(k as i32, d as i32) == 1).count() as u32
}

fn div_int_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db];
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / lb;
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn gcd_i32(a: i32, b: i32) -> i32 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Factors a nonzero polynomial as `c * mono * prod(atoms)`.
pub fn factor_poly(p: &Poly) -> (Rat, Mono, Vec<Atom>) {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let (m, rest) = p.split_monomial();
    let c = rest.lead().unwrap().1.clone();
    let rest = rest.monic();
    match rest.len() {
        1 => (c, m, Vec::new()),
        2 => {
            let (m1, _) = rest.terms()[0];
            let (m2, a) = rest.terms()[1].clone();
            let s = m1.div(&m2);
            let g = s.exps().iter().fold(0, |g, &e| gcd_i32(g, e as i32));
            if g == 1 {
                return (c, m, vec![Atom { poly: rest, irreducible: true }]);
            }
            let sign = if a == Rat::from_int(-1) {
                1
            } else if a.is_one() {
                -1
            } else {
                return (c, m, vec![Atom { poly: rest, irreducible: false }]);
            };
            // rest = m2 * (s0^g -+ 1) with s0 = s^(1/g).
            let mut e0 = [0i16; NVARS];
            for (i, x) in e0.iter_mut().enumerate() {
                *x = s.exps()[i] / g as i16;
            }
            let s0 = Mono::from_exps(e0);
            let divisors: Vec<u32> = if sign == 1 {
                (1..=g as u32).filter(|d| g as u32 % d == 0).collect()
            } else {
                (1..=2 * g as u32)
                    .filter(|d| (2 * g as u32) % d == 0 && g as u32 % d != 0)
                    .collect()
            };
            let mut coef = c;
            let mut mono = m.mul(&m2);
            let mut atoms = Vec::new();
            for d in divisors {
                let cy = cyclotomic(d);
                let f = Poly::from_terms(
                    cy.iter()
                        .enumerate()
                        .filter(|(_, &k)| k != 0)
                        .map(|(i, &k)| (s0.pow(i as i32), Rat::from_int(k)))
                        .collect(),
                );
                let (fc, fm, fa) = factor_poly_plain(&f);
                coef = &coef * &fc;
                mono = mono.mul(&fm);
                atoms.extend(fa.into_iter().map(|poly| Atom { poly, irreducible: true }));
            }
            (coef, mono, atoms)
        }
        _ => {
            let (found, rem) = extract_binomial_factors(rest);
            let (rc, rm, mut atoms) = if rem.len() <= 2 {
                factor_poly(&rem)
            } else {
                let (rm, r) = rem.split_monomial();
                let rc = r.lead().unwrap().1.clone();
                (rc, rm, vec![Atom { poly: r.monic(), irreducible: false }])
            };
            atoms.extend(found);
            (&c * &rc, m.mul(&rm), atoms)
        }
    }
}

/// Univariate polynomials over the rationals, lowest degree first.
fn uni_trim(mut a: Vec<Rat>) -> Vec<Rat> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn uni_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), uni_trim(r));
    }
    let mut q = vec![Rat::ZERO; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / lb;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &(&c * bj);
        }
        q[i] = c;
    }
    (uni_trim(q), uni_trim(r))
}

fn uni_gcd(a: Vec<Rat>, b: Vec<Rat>) -> Vec<Rat> {
    let (mut a, mut b) = (uni_trim(a), uni_trim(b));
    while !b.is_empty() {
        let (_, r) = uni_divrem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Pulls out every factor of the form `f(M)` with `f` a univariate
/// polynomial and `M` a primitive monomial, splitting `f` into cyclotomic
/// factors where possible. `p` must be monic without monomial factor.
/// Returns the atoms found and the remaining cofactor.
fn extract_binomial_factors(mut p: Poly) -> (Vec<Atom>, Poly) {
    const MAX_TERMS: usize = 400;
    let mut atoms = Vec::new();
    if p.len() > MAX_TERMS {
        return (atoms, p);
    }
    let mut dirs: Vec<[i16; NVARS]> = Vec::new();
    let e0 = *p.terms()[0].0.exps();
    for (m, _) in &p.terms()[1..] {
        let mut v = [0i16; NVARS];
        for i in 0..NVARS {
            v[i] = m.exps()[i] - e0[i];
        }
        let g = v.iter().fold(0, |g, &e| gcd_i32(g, e as i32)) as i16;
        let sign = v.iter().find(|&&x| x != 0).map_or(1, |&x| x.signum());
        for x in v.iter_mut() {
            *x = *x / g * sign;
        }
        if !dirs.contains(&v) {
            dirs.push(v);
        }
    }
    for v in dirs {
        if p.len() < 2 {
            break;
        }
        let piv = v.iter().position(|&x| x > 0).unwrap();
        // Fibers of the exponent lattice along v.
        let mut fibers: Vec<(Mono, Vec<(i32, Rat)>)> = Vec::new();
        for (m, c) in p.terms() {
            let e = m.exps();
            let t = (e[piv] as i32).div_euclid(v[piv] as i32);
            let mut key = *e;
            for i in 0..NVARS {
                key[i] -= (t as i16) * v[i];
            }
            let key = Mono::from_exps(key);
            match fibers.iter_mut().find(|f| f.0 == key) {
                Some(f) => f.1.push((t, c.clone())),
                None => fibers.push((key, vec![(t, c.clone())])),
            }
        }
        if fibers.iter().any(|f| f.1.len() < 2) {
            continue;
        }
        let mut g: Vec<Rat> = Vec::new();
        for (_, pts) in &fibers {
            let lo = pts.iter().map(|x| x.0).min().unwrap();
            let hi = pts.iter().map(|x| x.0).max().unwrap();
            let mut u = vec![Rat::ZERO; (hi - lo + 1) as usize];
            for (t, c) in pts {
                u[(t - lo) as usize] = c.clone();
            }
            g = uni_gcd(g, u);
            if g.len() <= 1 {
                break;
            }
        }
        if g.len() <= 1 {
            continue;
        }
        let mono = Mono::from_exps(v);
        let to_poly = |u: &[Rat]| {
            Poly::from_terms(
                u.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (mono.pow(i as i32), c.clone()))
                    .collect(),
            )
        };
        let mut push = |f: &Poly, irreducible: bool, p: &mut Poly| {
            let (_, _, plain) = factor_poly_plain(f);
            for a in plain {
                *p = p.div_exact(&a).expect("fiber gcd factor divides");
                atoms.push(Atom { poly: a, irreducible });
            }
        };
        // phi(d) >= sqrt(d / 2), so d <= 2 deg^2 covers every cyclotomic
        // factor that can fit.
        let deg = (g.len() - 1) as u32;
        for d in 1..=(2 * deg * deg).max(2) {
            if g.len() <= 1 {
                break;
            }
            if totient(d) > (g.len() - 1) as u32 {
                continue;
            }
            let cy: Vec<Rat> = cyclotomic(d).into_iter().map(Rat::from_int).collect();
            loop {
                let (q, r) = uni_divrem(&g, &cy);
                if !r.is_empty() {
                    break;
                }
                push(&to_poly(&cy), true, &mut p);
                g = q;
            }
        }
        if g.len() > 1 {
            // A leftover factor in M: irreducible when linear.
            let linear = g.len() == 2;
            push(&to_poly(&g), linear, &mut p);
        }
    }
    (atoms, p)
}

/// Normalizes without classification: `c * mono * rest` with `rest` monic
/// and free of monomial factors (or absent when `rest` is one).
fn factor_poly_plain(p: &Poly) -> (Rat, Mono, Vec<Poly>) {
    let (m, rest) = p.split_monomial();
    let c = rest.lead().unwrap().1.clone();
    let rest = rest.monic();
    if rest.len() == 1 {
        (c, m, Vec::new())
    } else {
        (c, m, vec![rest])
    }
}

type Den = Vec<(Atom, u32)>;

fn normalize_den(mut den: Den) -> Den {
    den.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Den = Vec::with_capacity(den.len());
    for (a, k) in den {
        if k == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.0 == a => last.1 += k,
            _ => out.push((a, k)),
        }
    }
    out
}

fn expand_den(den: &[(Atom, u32)]) -> Poly {
    let mut factors: Vec<Poly> = Vec::new();
    for (a, k) in den {
        for _ in 0..*k {
            factors.push(a.poly.clone());
        }
    }
    product(factors)
}

/// Balanced product of polynomials.
pub fn product(mut factors: Vec<Poly>) -> Poly {
    if factors.is_empty() {
        return Poly::one();
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len() / 2 + 1);
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a * &b),
                None => next.push(a),
            }
        }
        factors = next;
    }
    factors.pop().unwrap()
}

/// Divides `num` by the atoms of `den` where possible, lowering
/// multiplicities. Only atoms selected by `candidates` are tried.
fn cancel(num: &mut Poly, den: &mut Den, candidates: Option<&[bool]>) {
    if num.is_zero() {
        den.clear();
        return;
    }
    let mut extra: Den = Vec::new();
    for (idx, entry) in den.iter_mut().enumerate() {
        if let Some(c) = candidates {
            if !c[idx] {
                continue;
            }
        }
        if entry.0.irreducible {
            while entry.1 > 0 {
                match num.div_exact(&entry.0.poly) {
                    Some(q) => {
                        *num = q;
                        entry.1 -= 1;
                    }
                    None => break,
                }
            }
        } else {
            let mut k = entry.1;
            while k > 0 {
                let g = gcd(num, &entry.0.poly);
                if g.is_one() {
                    break;
                }
                *num = num.div_exact(&g).expect("gcd divides");
                let rest = entry.0.poly.div_exact(&g).expect("gcd divides");
                k -= 1;
                entry.1 -= 1;
                if !rest.is_one() {
                    let (c, m, atoms) = factor_poly(&rest);
                    // rest = c * m * atoms; the unit part moves to the numerator.
                    *num = num.mul_term(&c.inv().unwrap(), &m.inv());
                    extra.extend(atoms.into_iter().map(|a| (a, 1)));
                }
            }
        }
    }
    den.retain(|e| e.1 > 0);
    if !extra.is_empty() {
        let mut ex = normalize_den(extra);
        cancel(num, &mut ex, None);
        den.extend(ex);
        *den = normalize_den(core::mem::take(den));
    }
}

/// A rational function over the rationals in the registered variables.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Den,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc::constant(Rat::from_int(n))
    }

    pub fn from_term(t: &Term) -> RatFunc {
        RatFunc::from_poly(t.to_poly())
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    /// `num / den`; panics if `den` is zero.
    pub fn new(num: Poly, den: &Poly) -> RatFunc {
        RatFunc::from_factors(&[num], &[den.clone()])
    }

    /// Product of numerator factors over product of denominator factors.
    /// Identical factors cancel before anything is expanded.
    pub fn from_factors(nums: &[Poly], dens: &[Poly]) -> RatFunc {
        let mut coef = Rat::ONE;
        let mut mono = Mono::ONE;
        let mut num_atoms: Den = Vec::new();
        for p in nums {
            if p.is_zero() {
                return RatFunc::zero();
            }
            let (c, m, atoms) = factor_poly(p);
            coef = &coef * &c;
            mono = mono.mul(&m);
            num_atoms.extend(atoms.into_iter().map(|a| (a, 1)));
        }
        let mut den_atoms: Den = Vec::new();
        for p in dens {
            assert!(!p.is_zero(), "zero denominator factor");
            let (c, m, atoms) = factor_poly(p);
            coef = &coef / &c;
            mono = mono.div(&m);
            den_atoms.extend(atoms.into_iter().map(|a| (a, 1)));
        }
        let mut num_atoms = normalize_den(num_atoms);
        let mut den_atoms = normalize_den(den_atoms);
        // Cancel identical atoms.
        let mut i = 0;
        let mut j = 0;
        while i < num_atoms.len() && j < den_atoms.len() {
            match num_atoms[i].0.cmp(&den_atoms[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    let k = num_atoms[i].1.min(den_atoms[j].1);
                    num_atoms[i].1 -= k;
                    den_atoms[j].1 -= k;
                    i += 1;
                    j += 1;
                }
            }
        }
        den_atoms.retain(|e| e.1 > 0);
        num_atoms.retain(|e| e.1 > 0);
        let general_num = num_atoms.iter().any(|e| !e.0.irreducible);
        let general_den = den_atoms.iter().any(|e| !e.0.irreducible);
        let num = expand_den(&num_atoms).mul_term(&coef, &mono);
        let mut r = RatFunc {
            num,
            den: den_atoms,
        };
        if general_num || general_den {
            let mut num = core::mem::take(&mut r.num);
            cancel(&mut num, &mut r.den, None);
            r.num = num;
        }
        r
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn den_atoms(&self) -> &[(Atom, u32)] {
        &self.den
    }

    /// The expanded denominator (monic).
    pub fn denom(&self) -> Poly {
        expand_den(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn support(&self) -> u32 {
        self.den
            .iter()
            .fold(self.num.support(), |s, (a, _)| s | a.poly.support())
    }

    pub fn neg_ref(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_term(&self, t: &Term) -> RatFunc {
        if t.c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.mul_by(t),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul_ref(&RatFunc::from_poly(p.clone()))
    }

    pub fn mul_ref(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if let Some(t) = o.num.as_term() {
            if o.den.is_empty() {
                return self.mul_term(&t);
            }
        }
        if let Some(t) = self.num.as_term() {
            if self.den.is_empty() {
                return o.mul_term(&t);
            }
        }
        let mut a_num = self.num.clone();
        let mut b_den = o.den.clone();
        cancel(&mut a_num, &mut b_den, None);
        let mut b_num = o.num.clone();
        let mut a_den = self.den.clone();
        cancel(&mut b_num, &mut a_den, None);
        let mut den = a_den;
        den.extend(b_den);
        RatFunc {
            num: &a_num * &b_num,
            den: normalize_den(den),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> RatFunc {
        RatFunc::one().div_ref(self)
    }

    pub fn div_ref(&self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        if self.is_zero() {
            return RatFunc::zero();
        }
        // self.num * o.den / (self.den * o.num), with o.den atoms first
        // cancelled against self.den.
        let mut a_den = self.den.clone();
        let mut lift: Den = Vec::new();
        for (atom, k) in &o.den {
            match a_den.binary_search_by(|e| e.0.cmp(atom)) {
                Ok(i) => {
                    let c = a_den[i].1.min(*k);
                    a_den[i].1 -= c;
                    if *k > c {
                        lift.push((atom.clone(), *k - c));
                    }
                }
                Err(_) => lift.push((atom.clone(), *k)),
            }
        }
        a_den.retain(|e| e.1 > 0);
        let (c, m, atoms) = factor_poly(&o.num);
        let mut new_atoms: Den = normalize_den(atoms.into_iter().map(|a| (a, 1)).collect());
        let mut num = self.num.mul_term(&c.inv().unwrap(), &m.inv());
        cancel(&mut num, &mut new_atoms, None);
        let lifted = expand_den(&lift);
        let mut den = a_den;
        den.extend(new_atoms);
        let den = normalize_den(den);
        let mut r = RatFunc {
            num: &num * &lifted,
            den,
        };
        if !lift.is_empty() && r.den.iter().any(|e| !e.0.irreducible) {
            let mut n = core::mem::take(&mut r.num);
            cancel(&mut n, &mut r.den, None);
            r.num = n;
        }
        r
    }

    pub fn add_ref(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        RatFunc::sum_slice(&[self, o])
    }

    pub fn sub_ref(&self, o: &RatFunc) -> RatFunc {
        self.add_ref(&o.neg_ref())
    }

    /// Sum of many rational functions over their least common denominator.
    pub fn sum<I: IntoIterator<Item = RatFunc>>(items: I) -> RatFunc {
        let v: Vec<RatFunc> = items.into_iter().filter(|r| !r.is_zero()).collect();
        let refs: Vec<&RatFunc> = v.iter().collect();
        RatFunc::sum_slice(&refs)
    }

    fn sum_slice(items: &[&RatFunc]) -> RatFunc {
        let items: Vec<&RatFunc> = items.iter().copied().filter(|r| !r.is_zero()).collect();
        match items.len() {
            0 => return RatFunc::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        // Group by identical denominators first.
        let mut groups: Vec<(Den, Vec<Poly>)> = Vec::new();
        for r in &items {
            match groups.iter_mut().find(|g| g.0 == r.den) {
                Some(g) => g.1.push(r.num.clone()),
                None => groups.push((r.den.clone(), vec![r.num.clone()])),
            }
        }
        let groups: Vec<(Den, Poly)> = groups
            .into_iter()
            .map(|(d, ps)| (d, Poly::sum(ps)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        if groups.is_empty() {
            return RatFunc::zero();
        }
        // Least common multiple of atom multisets.
        let mut lcm: Den = Vec::new();
        for (d, _) in &groups {
            for (a, k) in d {
                match lcm.iter_mut().find(|e| e.0 == *a) {
                    Some(e) => e.1 = e.1.max(*k),
                    None => lcm.push((a.clone(), *k)),
                }
            }
        }
        let mut lcm = normalize_den(lcm);
        // An irreducible atom can only divide the sum if at least two
        // summands carry it at the maximal multiplicity.
        // A general atom may hide irreducible factors, so then try them all.
        let any_general = lcm.iter().any(|(a, _)| !a.irreducible);
        let candidates: Vec<bool> = lcm
            .iter()
            .map(|(a, k)| {
                if any_general || !a.irreducible {
                    return true;
                }
                let hits = items
                    .iter()
                    .filter(|r| r.den.iter().any(|e| e.0 == *a && e.1 == *k))
                    .count();
                hits >= 2
            })
            .collect();
        let parts: Vec<Poly> = groups
            .into_iter()
            .map(|(d, p)| {
                let mut cof: Den = Vec::new();
                for (a, k) in &lcm {
                    let have = d.iter().find(|e| e.0 == *a).map_or(0, |e| e.1);
                    if *k > have {
                        cof.push((a.clone(), *k - have));
                    }
                }
                &p * &expand_den(&cof)
            })
            .collect();
        let mut num = Poly::sum(parts);
        cancel(&mut num, &mut lcm, Some(&candidates));
        RatFunc { num, den: lcm }
    }

    pub fn pow(&self, k: i32) -> RatFunc {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = RatFunc::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Simultaneous monomial substitution `v -> term`. Fails if an atom of
    /// the denominator becomes zero.
    pub fn subst_terms(&self, subs: &[(Var, Term)]) -> Result<RatFunc, PoleError> {
        let mask = subs.iter().fold(0u32, |s, (v, _)| s | v.bit());
        if self.support() & mask == 0 {
            return Ok(self.clone());
        }
        let mut num = self.num.subst_terms(subs);
        let mut den: Den = Vec::new();
        // The image of the numerator can pick up factors of untouched atoms.
        let mut touched = self.num.support() & mask != 0;
        for (a, k) in &self.den {
            if a.poly.support() & mask == 0 {
                den.push((a.clone(), *k));
                continue;
            }
            let img = a.poly.subst_terms(subs);
            if img.is_zero() {
                return Err(PoleError);
            }
            touched = true;
            let (c, m, atoms) = factor_poly(&img);
            let unit = Term::new(c, m).pow(*k as i32).inv();
            num = num.mul_by(&unit);
            den.extend(atoms.into_iter().map(|at| (at, *k)));
        }
        let mut den = normalize_den(den);
        if touched {
            cancel(&mut num, &mut den, None);
        }
        if num.is_zero() {
            den.clear();
        }
        Ok(RatFunc { num, den })
    }

    /// Scales variables, `v -> s * v`; never produces a pole.
    pub fn scale_vars(&self, scales: &[(Var, Term)]) -> RatFunc {
        let subs: Vec<(Var, Term)> = scales
            .iter()
            .map(|(v, s)| (*v, s.mul(&Term::var(*v))))
            .collect();
        self.subst_terms(&subs).expect("scaling cannot create poles")
    }

    /// Permutes variable slots.
    pub fn permute(&self, perm: &[u8; NVARS]) -> RatFunc {
        let num = self.num.permute(perm);
        let mut coef = Rat::ONE;
        let mut mono = Mono::ONE;
        let mut den: Den = Vec::new();
        for (a, k) in &self.den {
            let (c, m, atoms) = factor_poly(&a.poly.permute(perm));
            let unit = Term::new(c, m).pow(*k as i32);
            coef = &coef * &unit.c;
            mono = mono.mul(&unit.m);
            den.extend(atoms.into_iter().map(|at| (at, *k)));
        }
        RatFunc {
            num: num.mul_term(&coef.inv().unwrap(), &mono.inv()),
            den: normalize_den(den),
        }
    }

    /// Evaluates the assigned variables, keeping the rest symbolic.
    pub fn eval_partial(&self, vals: &[Option<Rat>]) -> Result<RatFunc, PoleError> {
        let mut cache = PowCache::new(vals);
        let num = self.num.eval_partial(&mut cache).ok_or(PoleError)?;
        let mut dens: Vec<Poly> = Vec::new();
        for (a, k) in &self.den {
            let img = a.poly.eval_partial(&mut cache).ok_or(PoleError)?;
            if img.is_zero() {
                return Err(PoleError);
            }
            for _ in 0..*k {
                dens.push(img.clone());
            }
        }
        Ok(RatFunc::from_factors(&[num], &dens))
    }

    /// Full evaluation at a point.
    pub fn eval(&self, cache: &mut PowCache<'_>) -> Result<Rat, PoleError> {
        let n = self.num.eval(cache).ok_or(PoleError)?;
        if n.is_zero() {
            return Ok(n);
        }
        let mut d = Rat::ONE;
        for (a, k) in &self.den {
            let v = a.poly.eval(cache).ok_or(PoleError)?;
            if v.is_zero() {
                return Err(PoleError);
            }
            d = &d * &v.pow(*k as i32);
        }
        Ok(&n / &d)
    }

    /// Splits by the monomial in the variables of `mask`:
    /// `self = sum_m m * coeff_m`. The denominator must be free of those
    /// variables.
    pub fn coefficients_in(&self, mask: u32) -> BTreeMap<Mono, RatFunc> {
        assert!(
            self.den.iter().all(|(a, _)| a.poly.support() & mask == 0),
            "denominator depends on the split variables"
        );
        let mut groups: BTreeMap<Mono, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, c) in self.num.terms() {
            let (key, rest) = crate::series::split_mask(m, mask);
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, terms)| {
                let mut num = Poly::from_terms(terms);
                let mut den = self.den.clone();
                cancel(&mut num, &mut den, None);
                (k, RatFunc { num, den })
            })
            .collect()
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> RatFunc {
        // (N / D)' = N'/D - N D'/D^2 with D = prod a_i^k_i, so
        // D'/D = sum k_i a_i' / a_i.
        let mut parts = vec![RatFunc {
            num: self.num.derivative(v),
            den: self.den.clone(),
        }];
        for (a, k) in &self.den {
            let da = a.poly.derivative(v);
            if da.is_zero() {
                continue;
            }
            let term = self
                .mul_ref(&RatFunc::new(da, &a.poly))
                .scale(&Rat::from_int(-(*k as i64)));
            parts.push(term);
        }
        RatFunc::sum(parts)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        if self.num == o.num && self.den == o.den {
            return true;
        }
        let canonical = |r: &RatFunc| r.den.iter().all(|e| e.0.irreducible);
        if canonical(self) && canonical(o) {
            return false;
        }
        self.sub_ref(o).is_zero()
    }
}

impl Eq for RatFunc {}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}

impl From<&Term> for RatFunc {
    fn from(t: &Term) -> Self {
        RatFunc::from_term(t)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $f(self, o: &RatFunc) -> RatFunc {
                self.$m(o)
            }
        }
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, o: RatFunc) -> RatFunc {
                self.$m(&o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl fmt::Display for RatFunc {
    /// `num` when the denominator is one, otherwise `(num)/(den)` with the
    /// denominator expanded and monic.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denom())
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::Bank;

    fn q() -> Poly {
        Poly::var(Var::Q)
    }
    fn t() -> Poly {
        Poly::var(Var::T)
    }
    fn one() -> Poly {
        Poly::one()
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
    }

    #[test]
    fn binomial_splitting() {
        // 1 - q^2 t^2 = (1 - qt)(1 + qt)
        let p = &one() - &(&q() * &t()).pow(2);
        let (c, m, atoms) = factor_poly(&p);
        assert!(m.is_one());
        assert_eq!(atoms.len(), 2);
        assert!(atoms.iter().all(|a| a.irreducible));
        let back = product(atoms.iter().map(|a| a.poly.clone()).collect()).scale(&c);
        assert_eq!(back, p);
        // q^3 + 1 = (q + 1)(q^2 - q + 1)
        let p = &q().pow(3) + &one();
        let (c, _, atoms) = factor_poly(&p);
        assert_eq!(atoms.len(), 2);
        let back = product(atoms.iter().map(|a| a.poly.clone()).collect()).scale(&c);
        assert_eq!(back, p);
    }

    #[test]
    fn hidden_binomial_factors_are_extracted() {
        let x1 = Poly::var(Bank::X.var(0));
        let qt = &q() * &t();
        let a = &one() - &qt;
        let b = &one() + &(&q().pow(2) * &t());
        let c = &(&q().pow(2) + &(&t().pow(2) * &Poly::from_int(7))) - &x1;
        let d = &qt - &Poly::from_int(3);
        let p = product(vec![a.clone(), a.clone(), b.clone(), c.clone(), d.clone(), Poly::from_int(5)]);
        let (k, m, atoms) = factor_poly(&p);
        assert!(m.is_one());
        let mut irreducible: Vec<Poly> = atoms.iter().filter(|x| x.irreducible).map(|x| x.poly.clone()).collect();
        let general: Vec<&Atom> = atoms.iter().filter(|x| !x.irreducible).collect();
        assert_eq!(irreducible.len(), 4);
        assert_eq!(general.len(), 1);
        irreducible.push(general[0].poly.clone());
        let back = product(irreducible).scale(&k);
        assert_eq!(back, p);
    }

    #[test]
    fn hidden_factor_cancels_in_sums() {
        // (1 - qt)/((1 - qt)(1 + q + t^2) + 0) style hidden factors: a general
        // denominator containing an irreducible factor must not block the
        // structural zero test.
        let a = &one() - &(&q() * &t());
        let g = &(&one() + &q()) + &t().pow(2);
        let r1 = RatFunc::new(one(), &(&a * &g));
        let r2 = RatFunc::new(one(), &a);
        let r3 = RatFunc::new(g.clone(), &(&a * &g));
        assert!((&(&r1 + &r2) - &(&r1 + &r3)).is_zero());
    }

    #[test]
    fn reduction_and_zero_test() {
        let a = RatFunc::new(&one() - &q().pow(2), &(&one() - &q()));
        assert_eq!(a.as_poly(), Some(&(&one() + &q())));
        let b = RatFunc::new(one(), &(&one() - &q()));
        let c = RatFunc::new(q(), &(&one() - &q()));
        let s = &b - &c;
        assert!(s.is_one());
        let z = &(&b * &RatFunc::from_poly(&one() - &q())) - &RatFunc::one();
        assert!(z.is_zero());
    }

    #[test]
    fn general_atoms_cancel_by_gcd() {
        let f = &(&one() + &q()) + &(&q() * &t()) + t().pow(3) - q().pow(2);
        let g = &q() - &t().scale(&Rat::new(3, 1));
        let h = &(&q() * &q()) + &t();
        let r1 = RatFunc::new(&f * &g, &(&f * &h));
        assert_eq!(*r1.numer(), g.scale(&Rat::ONE));
        let back = &r1 * &RatFunc::from_poly(h.clone());
        assert_eq!(back.as_poly(), Some(&g));
        let inv = RatFunc::from_poly(&f * &g).inv();
        let prod = &inv * &RatFunc::from_poly(f.clone());
        assert_eq!(prod, RatFunc::new(one(), &g));
    }

    #[test]
    fn substitution_pole() {
        let x1 = Bank::X.var(0);
        let x2 = Bank::X.var(1);
        let r = RatFunc::new(Poly::var(x1), &(&Poly::var(x1) - &Poly::var(x2)));
        assert_eq!(r.subst_terms(&[(x1, Term::var(x2))]).err(), Some(PoleError));
        let s = r.subst_terms(&[(x1, Term::var(x2).mul(&Term::var(Var::Q)))]).unwrap();
        // q x2 / (q x2 - x2) = q / (q - 1)
        assert_eq!(s, RatFunc::new(q(), &(&q() - &one())));
    }

    #[test]
    fn derivative_quotient_rule() {
        let r = RatFunc::new(q(), &(&one() - &q()));
        let d = r.derivative(Var::Q);
        assert_eq!(d, RatFunc::new(one(), &(&one() - &q()).pow(2)));
    }
}
