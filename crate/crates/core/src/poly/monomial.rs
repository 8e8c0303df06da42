use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables (`x0..x9`).
pub const MAX_VARS: usize = 10;

/// A monomial `x^a` stored as a fixed array of 16-bit exponents.
///
/// Unused trailing slots are always zero, so comparisons never need to know
/// the ring; `nvars` is kept only to detect mixing monomials of different
/// rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        debug_assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    /// Recomputes the exponent sum and compares it with the cached degree.
    pub fn degree_is_consistent(&self) -> bool {
        self.exps.iter().map(|&e| e as u32).sum::<u32>() == self.degree
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product; `None` on 16-bit exponent overflow.
    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        r.degree = self.degree + other.degree;
        Some(r)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut r = *other;
        for i in 0..MAX_VARS {
            r.exps[i] = other.exps[i] - self.exps[i];
        }
        r.degree = other.degree - self.degree;
        r
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.degree = deg;
        r
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].min(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.degree = deg;
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Every exponent multiplied by `k`; `None` on overflow.
    pub fn checked_scale(&self, k: u32) -> Option<Monomial> {
        let mut r = *self;
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u32 * k;
            if e > u16::MAX as u32 {
                return None;
            }
            r.exps[i] = e as u16;
        }
        r.degree = self.degree * k;
        Some(r)
    }

    /// Drops variable `v`, shifting the later ones down.
    pub fn remove_var(&self, v: usize) -> Monomial {
        let n = self.nvars();
        let mut e: Vec<u16> = self.exponents().to_vec();
        e.remove(v);
        debug_assert_eq!(e.len(), n - 1);
        Monomial::from_exponents(&e)
    }

    /// Position among the monomials of the same degree, a bijection onto
    /// `[0, count_monomials(nvars, degree))` (stars and bars combinadic).
    #[inline]
    pub fn rank_in_degree(&self) -> usize {
        let n = self.nvars();
        let mut acc = 0usize;
        let mut pos = 0usize;
        for i in 0..n.saturating_sub(1) {
            pos += self.exps[i] as usize + usize::from(i > 0);
            acc += small_binomial(pos, i + 1);
        }
        acc
    }

    pub fn write_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

/// Graded reverse lexicographic order: higher total degree first, ties broken
/// by the smaller exponent in the last differing variable.
impl Ord for Monomial {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Degrevlex comparison that rejects monomials from rings of different size.
pub fn monomial_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars != b.nvars {
        return Err(Error::LengthMismatch(a.nvars(), b.nvars()));
    }
    Ok(a.cmp(b))
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// degrevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if nvars == 0 {
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Number of monomials of degree `d` in `nvars` variables (0 for `d < 0`).
pub fn count_monomials(nvars: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

#[inline]
fn small_binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}
