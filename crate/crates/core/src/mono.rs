//! Variables and Laurent monomials.
//!
//! Every variable lives in a fixed slot: four banks `x`, `y`, `z`, `w`
//! followed by the two parameters `q` and `t`. Keeping the slot layout fixed
//! lets monomials be plain arrays with a derived total order.

use core::fmt;

/// Number of variable slots.
pub const NVARS: usize = 32;

/// A variable bank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bank {
    X,
    Y,
    Z,
    W,
}

impl Bank {
    pub const fn offset(self) -> usize {
        match self {
            Bank::X => 0,
            Bank::Y => 8,
            Bank::Z => 16,
            Bank::W => 26,
        }
    }

    /// Number of slots reserved for this bank.
    pub const fn capacity(self) -> usize {
        match self {
            Bank::X => 8,
            Bank::Y => 8,
            Bank::Z => 10,
            Bank::W => 4,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Bank::X => 'x',
            Bank::Y => 'y',
            Bank::Z => 'z',
            Bank::W => 'w',
        }
    }

    /// The `i`-th variable of the bank, zero based.
    pub fn var(self, i: usize) -> Var {
        assert!(i < self.capacity(), "bank {} has no slot {}", self.letter(), i);
        Var((self.offset() + i) as u8)
    }

    /// Bit mask of the first `arity` slots of the bank.
    pub fn mask(self, arity: usize) -> u32 {
        assert!(arity <= self.capacity());
        (((1u64 << arity) - 1) << self.offset()) as u32
    }
}

/// A variable slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u8);

impl Var {
    pub const Q: Var = Var(30);
    pub const T: Var = Var(31);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bank(self) -> Option<(Bank, usize)> {
        let i = self.index();
        [Bank::X, Bank::Y, Bank::Z, Bank::W]
            .into_iter()
            .find(|b| i >= b.offset() && i < b.offset() + b.capacity())
            .map(|b| (b, i - b.offset()))
    }

    pub fn bit(self) -> u32 {
        1u32 << self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bank() {
            Some((b, i)) => write!(f, "{}{}", b.letter(), i + 1),
            None if *self == Var::Q => f.write_str("q"),
            None => f.write_str("t"),
        }
    }
}

/// Mask covering the four variable banks (everything except `q`, `t`).
pub const BANK_MASK: u32 = (1u32 << 30) - 1;
/// Mask covering the parameters `q` and `t`.
pub const PARAM_MASK: u32 = !BANK_MASK;

/// A Laurent monomial. The derived order is graded lexicographic with
/// `x1 > x2 > ... > y1 > ... > w4 > q > t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: i32,
    e: [i16; NVARS],
}

impl Default for Mono {
    fn default() -> Self {
        Mono::ONE
    }
}

impl Mono {
    pub const ONE: Mono = Mono {
        deg: 0,
        e: [0; NVARS],
    };

    pub fn var(v: Var) -> Mono {
        Mono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: i32) -> Mono {
        let mut m = Mono::ONE;
        m.e[v.index()] = k as i16;
        m.deg = k;
        m
    }

    pub fn from_exps(e: [i16; NVARS]) -> Mono {
        let deg = e.iter().map(|&x| x as i32).sum();
        Mono { deg, e }
    }

    pub fn exps(&self) -> &[i16; NVARS] {
        &self.e
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.e[v.index()] as i32
    }

    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.e.iter().all(|&x| x == 0)
    }

    /// Sum of exponents over the variables selected by `mask`.
    pub fn degree_in(&self, mask: u32) -> i32 {
        let mut s = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s += self.e[i] as i32;
            m &= m - 1;
        }
        s
    }

    /// Bit mask of variables with a nonzero exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for (i, &x) in self.e.iter().enumerate() {
            if x != 0 {
                s |= 1 << i;
            }
        }
        s
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..NVARS {
            r.e[i] = self.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        r.deg = self.deg + o.deg;
        r
    }

    pub fn div(&self, o: &Mono) -> Mono {
        self.mul(&o.inv())
    }

    pub fn inv(&self) -> Mono {
        let mut r = *self;
        for x in r.e.iter_mut() {
            *x = -*x;
        }
        r.deg = -self.deg;
        r
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut r = *self;
        for x in r.e.iter_mut() {
            *x = (*x as i32 * k).try_into().expect("exponent overflow");
        }
        r.deg = self.deg * k;
        r
    }

    /// Componentwise minimum.
    pub fn meet(&self, o: &Mono) -> Mono {
        let mut e = [0i16; NVARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.e[i].min(o.e[i]);
        }
        Mono::from_exps(e)
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.e.iter().all(|&x| x >= 0)
    }

    /// True when `o / self` has only nonnegative exponents.
    pub fn divides(&self, o: &Mono) -> bool {
        (0..NVARS).all(|i| self.e[i] <= o.e[i])
    }

    /// Drops variable `v`, returning its exponent and the remainder.
    pub fn split_off(&self, v: Var) -> (i32, Mono) {
        let k = self.e[v.index()] as i32;
        let mut r = *self;
        r.e[v.index()] = 0;
        r.deg -= k;
        (k, r)
    }

    /// Replaces the exponent of `v`.
    pub fn with_exp(&self, v: Var, k: i32) -> Mono {
        let old = self.e[v.index()] as i32;
        let mut r = *self;
        r.e[v.index()] = k as i16;
        r.deg += k - old;
        r
    }

    /// Applies a permutation of slots: the exponent of slot `i` moves to
    /// slot `perm[i]`.
    pub fn permute(&self, perm: &[u8; NVARS]) -> Mono {
        let mut e = [0i16; NVARS];
        for i in 0..NVARS {
            e[perm[i] as usize] = self.e[i];
        }
        Mono { deg: self.deg, e }
    }

    /// Iterates over `(var, exponent)` pairs with nonzero exponent.
    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (Var(i as u8), x as i32))
    }
}

/// Slot permutation exchanging each listed pair of variables.
pub fn swap_perm(pairs: &[(Var, Var)]) -> [u8; NVARS] {
    let mut perm = [0u8; NVARS];
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i as u8;
    }
    for &(a, b) in pairs {
        perm[a.index()] = b.0;
        perm[b.index()] = a.0;
    }
    perm
}

/// Slot permutation exchanging the first `k` variables of two banks.
pub fn bank_swap_perm(a: Bank, b: Bank, k: usize) -> [u8; NVARS] {
    let pairs: alloc::vec::Vec<(Var, Var)> = (0..k).map(|i| (a.var(i), b.var(i))).collect();
    swap_perm(&pairs)
}

/// Writes the factors of a monomial as `q^a * t^b * x1^2 * y1`, with the
/// parameters first. Writes nothing for the unit monomial.
pub(crate) fn write_factors(m: &Mono, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    let order = [30usize, 31].into_iter().chain(0..30);
    for i in order {
        let k = m.e[i];
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str(" * ")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{}", Var(i as u8))?;
        } else {
            write!(f, "{}^{}", Var(i as u8), k)?;
        }
    }
    Ok(())
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            write_factors(self, f)
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
