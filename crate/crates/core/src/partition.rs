//! Integer partitions and their statistics.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::field::{FieldElem, Params};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

/// Raised by [`hook_split`] for partitions outside the fat hook.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInHook;

impl fmt::Display for NotInHook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("partition is not contained in the fat hook")
    }
}

/// Error for malformed partition text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsePartitionError(pub String);

impl fmt::Display for ParsePartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid partition `{}`", self.0)
    }
}

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Builds a partition from parts, dropping zeros. Panics if the parts
    /// are not weakly decreasing.
    pub fn new(parts: &[u32]) -> Partition {
        let v: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        assert!(v.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        Partition(v)
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(parts: &[u32]) -> Partition {
        let mut v: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The `i`-th part (zero based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Cells `(i, j)`, zero based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Arm length of cell `(i, j)`.
    pub fn arm(&self, i: usize, j: usize) -> u32 {
        self.part(i) - j as u32 - 1
    }

    /// Leg length of cell `(i, j)`.
    pub fn leg(&self, i: usize, j: usize) -> u32 {
        self.0.iter().skip(i + 1).filter(|&&p| p as usize > j).count() as u32
    }

    /// True when the diagram of `nu` sits inside that of `self`.
    pub fn contains(&self, nu: &Partition) -> bool {
        nu.len() <= self.len() && nu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Multiplicities: `m[i]` is the number of parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.part(0) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// Dominance order: `self >= o` for partitions of equal weight.
    pub fn dominates(&self, o: &Partition) -> bool {
        if self.weight() != o.weight() {
            return false;
        }
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.len().max(o.len()) {
            a += self.part(i);
            b += o.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Union of parts (the product index for power sums).
    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::from_unsorted(&v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = ParsePartitionError;

    /// Parses `3,1,1`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Partition, ParsePartitionError> {
        let err = || ParsePartitionError(String::from(s));
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(err());
        }
        Ok(Partition::new(&parts))
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All partitions of weight at most `n`, graded, each grade in descending
/// lexicographic order.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Partitions of `n` with at most `len` parts.
pub fn partitions_with_len(n: u32, len: usize) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|p| p.len() <= len).collect()
}

/// `lambda_{n+1} <= m`.
pub fn fat_hook_contains(n: usize, m: usize, lam: &Partition) -> bool {
    lam.part(n) as usize <= m
}

/// Splits `lambda` in the fat `(n, m)`-hook into `mu = (lambda_1..lambda_n)`
/// and `nu = (lambda_{n+1}, lambda_{n+2}, ...)'`.
pub fn hook_split(n: usize, m: usize, lam: &Partition) -> Result<(Partition, Partition), NotInHook> {
    if !fat_hook_contains(n, m, lam) {
        return Err(NotInHook);
    }
    let mu = Partition::new(&lam.0[..lam.len().min(n)]);
    let tail = Partition::new(if lam.len() > n { &lam.0[n..] } else { &[] });
    Ok((mu, tail.conjugate()))
}

/// `b_lambda = prod_s (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l)`.
pub fn b_lambda(lam: &Partition, params: &Params) -> FieldElem {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for (i, j) in lam.cells() {
        let a = lam.arm(i, j) as i32;
        let l = lam.leg(i, j) as i32;
        nums.push(&Poly::one() - &params.qt(a, l + 1).to_poly());
        dens.push(&Poly::one() - &params.qt(a + 1, l).to_poly());
    }
    RatFunc::from_factors(&nums, &dens)
}

/// Integer `z_lambda = prod_i i^(m_i) m_i!`.
pub fn z_int(lam: &Partition) -> Rat {
    let mut z = Rat::ONE;
    for (i, &m) in lam.multiplicities().iter().enumerate().skip(1) {
        for k in 1..=m {
            z = &z * &Rat::from_int((i as i64) * (k as i64));
        }
    }
    z
}

/// `z_lambda(q, t) = z_lambda prod_i (1 - q^lambda_i) / (1 - t^lambda_i)`.
pub fn z_lambda(lam: &Partition, params: &Params) -> FieldElem {
    let nums: Vec<Poly> = lam
        .parts()
        .iter()
        .map(|&p| &Poly::one() - &params.q.pow(p as i32).to_poly())
        .collect();
    let dens: Vec<Poly> = lam
        .parts()
        .iter()
        .map(|&p| &Poly::one() - &params.t.pow(p as i32).to_poly())
        .collect();
    RatFunc::from_factors(&nums, &dens).scale(&z_int(lam))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::Var;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

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
    fn conjugation_and_stats() {
        assert_eq!(p("3,1,1").conjugate(), p("3,1,1"));
        assert_eq!(p("4,2").conjugate(), p("2,2,1,1"));
        let lam = p("4,2,1");
        assert_eq!(lam.arm(0, 1), 2);
        assert_eq!(lam.leg(0, 1), 1);
        assert_eq!(lam.leg(0, 0), 2);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(3), vec![p("3"), p("2,1"), p("1,1,1")]);
    }

    #[test]
    fn fat_hook_examples() {
        assert!(!fat_hook_contains(1, 1, &p("2,2")));
        assert!(fat_hook_contains(3, 2, &Partition::empty()));
        assert!(fat_hook_contains(2, 0, &p("5,3")));
        assert!(!fat_hook_contains(2, 0, &p("5,3,1")));
    }

    #[test]
    fn hook_split_examples() {
        assert_eq!(hook_split(1, 1, &p("3,1,1")), Ok((p("3"), p("2"))));
        assert_eq!(hook_split(2, 2, &Partition::empty()), Ok((Partition::empty(), Partition::empty())));
        assert_eq!(hook_split(2, 2, &p("4,3,2,1")), Ok((p("4,3"), p("2,1"))));
        assert_eq!(hook_split(1, 1, &p("2,2")), Err(NotInHook));
    }

    #[test]
    fn b_lambda_examples() {
        let s = Params::symbolic();
        assert!(b_lambda(&Partition::empty(), &s).is_one());
        assert_eq!(b_lambda(&p("1"), &s), RatFunc::new(&one() - &t(), &(&one() - &q())));
        let expect = RatFunc::new(
            &(&one() - &t()) * &(&one() - &(&q() * &t())),
            &(&(&one() - &q()) * &(&one() - &q().pow(2))),
        );
        assert_eq!(b_lambda(&p("2"), &s), expect);
    }

    #[test]
    fn z_lambda_examples() {
        let s = Params::symbolic();
        let r = RatFunc::new(&one() - &q(), &(&one() - &t()));
        assert_eq!(z_lambda(&p("1"), &s), r);
        assert_eq!(z_lambda(&p("1,1"), &s), (&r * &r).scale(&Rat::from_int(2)));
        let expect = RatFunc::new(
            (&(&one() - &q().pow(2)) * &(&one() - &q())).scale(&Rat::from_int(2)),
            &(&(&one() - &t().pow(2)) * &(&one() - &t())),
        );
        assert_eq!(z_lambda(&p("2,1"), &s), expect);
    }

    #[test]
    fn b_lambda_duality() {
        let s = Params::symbolic();
        for n in 0..=6 {
            for lam in partitions_of(n) {
                let prod = &b_lambda(&lam, &s) * &b_lambda(&lam.conjugate(), &s.swapped());
                assert!(prod.is_one(), "{lam:?}");
            }
        }
    }

    #[test]
    fn b_lambda_inverted_conjugate() {
        // b_{lambda'}(t^-1, q^-1) = (q^-1 t)^|lambda| / b_lambda(q, t)
        let s = Params::symbolic();
        for n in 0..=5 {
            for lam in partitions_of(n) {
                let lhs = b_lambda(&lam.conjugate(), &s.dual());
                let k = n as i32;
                let rhs = &RatFunc::from_term(&s.qt(-k, k)) / &b_lambda(&lam, &s);
                assert_eq!(lhs, rhs, "{lam:?}");
            }
        }
    }

    #[test]
    fn hook_split_is_injective() {
        for n in 0..=3 {
            for m in 0..=3 {
                let mut seen = alloc::collections::BTreeSet::new();
                for lam in partitions_up_to(10) {
                    if fat_hook_contains(n, m, &lam) {
                        let s = hook_split(n, m, &lam).unwrap();
                        assert!(s.1.len() <= m);
                        assert!(seen.insert(s), "{lam:?}");
                    }
                }
            }
        }
    }
}
