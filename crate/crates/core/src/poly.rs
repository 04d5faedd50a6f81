//! Sparse multivariate Laurent polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::mono::{write_factors, Mono, Var, NVARS};
use crate::rat::Rat;

/// A rational multiple of a Laurent monomial. Parameters such as `q`, `t`,
/// `t^-1` or an evaluated `2/3` are all terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Term {
    pub c: Rat,
    pub m: Mono,
}

impl Term {
    pub fn new(c: Rat, m: Mono) -> Term {
        Term { c, m }
    }

    pub fn one() -> Term {
        Term::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> Term {
        Term { c, m: Mono::ONE }
    }

    pub fn var(v: Var) -> Term {
        Term {
            c: Rat::ONE,
            m: Mono::var(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.m.is_one()
    }

    pub fn mul(&self, o: &Term) -> Term {
        Term {
            c: &self.c * &o.c,
            m: self.m.mul(&o.m),
        }
    }

    pub fn pow(&self, k: i32) -> Term {
        Term {
            c: self.c.pow(k),
            m: self.m.pow(k),
        }
    }

    pub fn inv(&self) -> Term {
        self.pow(-1)
    }

    pub fn neg(&self) -> Term {
        Term {
            c: -&self.c,
            m: self.m,
        }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::term(self.c.clone(), self.m)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

/// A sparse Laurent polynomial: terms sorted strictly descending by
/// monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: Vec<(Mono, Rat)>,
}

fn merge(a: Vec<(Mono, Rat)>, b: Vec<(Mono, Rat)>) -> Vec<(Mono, Rat)> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => {
                if x.0 > y.0 {
                    out.push(ia.next().unwrap());
                } else if x.0 < y.0 {
                    out.push(ib.next().unwrap());
                } else {
                    let (m, c1) = ia.next().unwrap();
                    let (_, c2) = ib.next().unwrap();
                    let c = c1 + c2;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
            (Some(_), None) => {
                out.extend(ia);
                break;
            }
            (None, Some(_)) => {
                out.extend(ib);
                break;
            }
            (None, None) => break,
        }
    }
    out
}

fn merge_all(mut rows: Vec<Vec<(Mono, Rat)>>) -> Vec<(Mono, Rat)> {
    while rows.len() > 1 {
        let mut next = Vec::with_capacity(rows.len() / 2 + 1);
        let mut it = rows.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(a, b)),
                None => next.push(a),
            }
        }
        rows = next;
    }
    rows.pop().unwrap_or_default()
}

/// Powers of rational values, cached per variable.
pub struct PowCache<'a> {
    vals: &'a [Option<Rat>],
    pos: Vec<Vec<Rat>>,
    neg: Vec<Vec<Rat>>,
}

impl<'a> PowCache<'a> {
    pub fn new(vals: &'a [Option<Rat>]) -> Self {
        PowCache {
            vals,
            pos: vec![Vec::new(); vals.len()],
            neg: vec![Vec::new(); vals.len()],
        }
    }

    /// `vals[i]^k`, or `None` when the slot is unassigned or the power is a
    /// negative power of zero.
    pub fn pow(&mut self, i: usize, k: i32) -> Option<Rat> {
        let v = self.vals.get(i)?.as_ref()?;
        if k == 0 {
            return Some(Rat::ONE);
        }
        let (table, base) = if k > 0 {
            (&mut self.pos[i], v.clone())
        } else {
            (&mut self.neg[i], v.inv()?)
        };
        let k = k.unsigned_abs() as usize;
        if table.is_empty() {
            table.push(Rat::ONE);
        }
        while table.len() <= k {
            let next = table.last().unwrap() * &base;
            table.push(next);
        }
        Some(table[k].clone())
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::term(c, Mono::ONE)
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(Rat::from_int(n))
    }

    pub fn term(c: Rat, m: Mono) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn mono(m: Mono) -> Poly {
        Poly::term(Rat::ONE, m)
    }

    pub fn var(v: Var) -> Poly {
        Poly::mono(Mono::var(v))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, Rat)>) -> Poly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = &last.1 + &c;
                }
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Rat)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The single term if the polynomial is a monomial multiple.
    pub fn as_term(&self) -> Option<Term> {
        match self.terms.as_slice() {
            [(m, c)] => Some(Term::new(c.clone(), *m)),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    /// Coefficient of a given monomial.
    pub fn coeff(&self, m: &Mono) -> Rat {
        match self.terms.binary_search_by(|p| m.cmp(&p.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    /// Bit mask of variables that appear.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Largest and smallest exponent of `v`.
    pub fn degree_range(&self, v: Var) -> (i32, i32) {
        let mut hi = i32::MIN;
        let mut lo = i32::MAX;
        for (m, _) in &self.terms {
            let k = m.exp(v);
            hi = hi.max(k);
            lo = lo.min(k);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (hi, lo)
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Rat, mono: &Mono) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn mul_by(&self, t: &Term) -> Poly {
        self.mul_term(&t.c, &t.m)
    }

    pub fn add_ref(&self, o: &Poly) -> Poly {
        Poly {
            terms: merge(self.terms.clone(), o.terms.clone()),
        }
    }

    pub fn sub_ref(&self, o: &Poly) -> Poly {
        Poly {
            terms: merge(self.terms.clone(), o.neg_ref().terms),
        }
    }

    pub fn add_assign_owned(&mut self, o: Poly) {
        let a = core::mem::take(&mut self.terms);
        self.terms = merge(a, o.terms);
    }

    pub fn neg_ref(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// Sum of many polynomials, merged pairwise.
    pub fn sum<I: IntoIterator<Item = Poly>>(items: I) -> Poly {
        Poly {
            terms: merge_all(items.into_iter().map(|p| p.terms).collect()),
        }
    }

    pub fn mul_ref(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= o.len() {
            (self, o)
        } else {
            (o, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(c, m);
        }
        let rows: Vec<Vec<(Mono, Rat)>> = small
            .terms
            .iter()
            .map(|(m, c)| big.terms.iter().map(|(n, d)| (m.mul(n), c * d)).collect())
            .collect();
        Poly {
            terms: merge_all(rows),
        }
    }

    /// Product keeping only terms whose degree in `mask` is at most `d`.
    pub fn mul_truncated(&self, o: &Poly, mask: u32, d: i32) -> Poly {
        let rows: Vec<Vec<(Mono, Rat)>> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let dm = m.degree_in(mask);
                o.terms
                    .iter()
                    .filter(|(n, _)| dm + n.degree_in(mask) <= d)
                    .map(|(n, e)| (m.mul(n), c * e))
                    .collect()
            })
            .collect();
        Poly {
            terms: merge_all(rows),
        }
    }

    /// Drops terms whose degree in `mask` exceeds `d`.
    pub fn truncate(&self, mask: u32, d: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(mask) <= d)
                .cloned()
                .collect(),
        }
    }

    /// Terms whose degree in `mask` equals `d`.
    pub fn homogeneous_part(&self, mask: u32, d: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(mask) == d)
                .cloned()
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Applies a map to every monomial, producing `c * f(m)` per term.
    pub fn map_monomials<F: FnMut(&Mono) -> (Rat, Mono)>(&self, mut f: F) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (s, n) = f(m);
                (n, c * &s)
            })
            .collect();
        Poly::from_terms(terms)
    }

    /// Substitutes `v -> c * mono` (a monomial substitution), valid for
    /// Laurent exponents whenever `c` is nonzero.
    pub fn subst_term(&self, v: Var, t: &Term) -> Poly {
        assert!(!t.c.is_zero(), "monomial substitution by zero");
        if self.terms.iter().all(|(m, _)| m.exp(v) == 0) {
            return self.clone();
        }
        self.map_monomials(|m| {
            let (k, rest) = m.split_off(v);
            (t.c.pow(k), rest.mul(&t.m.pow(k)))
        })
    }

    /// Simultaneous monomial substitution for several variables.
    pub fn subst_terms(&self, subs: &[(Var, Term)]) -> Poly {
        if subs.is_empty() {
            return self.clone();
        }
        let mask = subs.iter().fold(0u32, |s, (v, _)| s | v.bit());
        if self.support() & mask == 0 {
            return self.clone();
        }
        self.map_monomials(|m| {
            let mut rest = *m;
            for (v, _) in subs {
                rest = rest.with_exp(*v, 0);
            }
            let mut c = Rat::ONE;
            for (v, t) in subs {
                let k = m.exp(*v);
                if k != 0 {
                    c = &c * &t.c.pow(k);
                    rest = rest.mul(&t.m.pow(k));
                }
            }
            (c, rest)
        })
    }

    /// Scales each variable `v` by `q^k`-style factors: `v -> s_v * v`.
    pub fn scale_vars(&self, scales: &[(Var, Term)]) -> Poly {
        let subs: Vec<(Var, Term)> = scales
            .iter()
            .map(|(v, s)| (*v, s.mul(&Term::var(*v))))
            .collect();
        self.subst_terms(&subs)
    }

    /// Permutes variable slots; see [`Mono::permute`].
    pub fn permute(&self, perm: &[u8; NVARS]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect())
    }

    /// Evaluates the assigned variables, leaving the rest symbolic.
    /// Returns `None` if a negative power of a zero value is required.
    pub fn eval_partial(&self, cache: &mut PowCache<'_>) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = *m;
            for (v, k) in m.iter() {
                if cache.vals.get(v.index()).map_or(false, |x| x.is_some()) {
                    coef = &coef * &cache.pow(v.index(), k)?;
                    rest = rest.with_exp(v, 0);
                }
            }
            terms.push((rest, coef));
        }
        Some(Poly::from_terms(terms))
    }

    /// Full evaluation; `None` on an unassigned variable or a pole.
    pub fn eval(&self, cache: &mut PowCache<'_>) -> Option<Rat> {
        let mut acc = Rat::ZERO;
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (v, k) in m.iter() {
                coef = &coef * &cache.pow(v.index(), k)?;
            }
            acc = &acc + &coef;
        }
        Some(acc)
    }

    /// Componentwise minimum of exponents over all terms.
    pub fn min_exps(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some((m, _)) => it.fold(*m, |acc, (n, _)| acc.meet(n)),
        }
    }

    /// Splits off the largest monomial factor: `self = mono * rest` where
    /// `rest` has nonnegative exponents and no variable dividing it.
    pub fn split_monomial(&self) -> (Mono, Poly) {
        let m = self.min_exps();
        if m.is_one() {
            return (m, self.clone());
        }
        let inv = m.inv();
        (
            m,
            Poly {
                terms: self.terms.iter().map(|(n, c)| (n.mul(&inv), c.clone())).collect(),
            },
        )
    }

    /// Rational content: positive rational `c` with `self / c` having
    /// coprime integer coefficients.
    pub fn content(&self) -> Rat {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(&c.numer());
            l = l.lcm(&c.denom());
        }
        if g.is_zero() {
            return Rat::ONE;
        }
        Rat::from_bigs(g.abs(), l)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.terms[0].1.signum() < 0 {
            c = -c;
        }
        self.scale(&c.inv().unwrap())
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.len() == 1 {
            let (m, c) = &d.terms[0];
            return Some(self.mul_term(&c.inv().unwrap(), &m.inv()));
        }
        let (ma, a) = self.split_monomial();
        let (md, dd) = d.split_monomial();
        let q = div_poly(&a, &dd)?;
        Some(q.mul_term(&Rat::ONE, &ma.div(&md)))
    }

    /// Collects terms by the exponent of `v`, in descending exponent order.
    pub fn coeffs_in(&self, v: Var) -> Vec<(i32, Poly)> {
        let mut map: BTreeMap<Reverse<i32>, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (k, rest) = m.split_off(v);
            map.entry(Reverse(k)).or_default().push((rest, c.clone()));
        }
        map.into_iter()
            .map(|(Reverse(k), ts)| (k, Poly::from_terms(ts)))
            .collect()
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) != 0)
            .map(|(m, c)| {
                let k = m.exp(v);
                (m.with_exp(v, k - 1), c * &Rat::from_int(k as i64))
            })
            .collect();
        Poly::from_terms(terms)
    }
}

/// Exact division of polynomials with nonnegative exponents.
fn div_poly(a: &Poly, d: &Poly) -> Option<Poly> {
    let (dm, dc) = d.terms[0].clone();
    let dc_inv = dc.inv().unwrap();
    if a.total_degree() < d.total_degree() {
        return None;
    }
    let mut rem: BTreeMap<Reverse<Mono>, Rat> =
        a.terms.iter().map(|(m, c)| (Reverse(*m), c.clone())).collect();
    let mut quo: Vec<(Mono, Rat)> = Vec::new();
    while let Some((Reverse(m), c)) = rem.pop_first() {
        if !dm.divides(&m) {
            return None;
        }
        let qm = m.div(&dm);
        let qc = &c * &dc_inv;
        for (n, e) in d.terms.iter().skip(1) {
            let key = Reverse(qm.mul(n));
            let delta = &qc * e;
            match rem.get_mut(&key) {
                Some(v) => {
                    *v = &*v - &delta;
                    if v.is_zero() {
                        rem.remove(&key);
                    }
                }
                None => {
                    rem.insert(key, -delta);
                }
            }
        }
        quo.push((qm, qc));
    }
    Some(Poly { terms: quo })
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        Poly {
            terms: merge(self.terms, o.terms),
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.add_ref(o)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        Poly {
            terms: merge(self.terms, o.neg_ref().terms),
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.sub_ref(o)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_ref(o)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl From<Term> for Poly {
    fn from(t: Term) -> Self {
        t.to_poly()
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms `c * q^a * t^b * x1^e` joined by ` + `, in
    /// descending monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write_factors(m, f)?;
            } else {
                write!(f, "{c} * ")?;
                write_factors(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
