use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::monomial::Monomial;
use crate::poly::ring::GradedRing;

/// A sparse polynomial over `F_p`, terms strictly decreasing in degrevlex
/// order with coefficients in `[1, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: GradedRing,
    terms: Vec<(Monomial, u32)>,
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Multiply `a` by the constant term of `b`.
    ScalarMul,
}

/// Exact arithmetic with an explicit ring check.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::ScalarMul => {
            let c = b
                .terms
                .iter()
                .find(|(m, _)| m.is_one())
                .map(|t| t.1)
                .unwrap_or(0);
            a.scale(c)
        }
    })
}

impl Polynomial {
    pub fn zero(ring: GradedRing) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: GradedRing, c: i64) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), ring.field().from_i64(c))
    }

    pub fn var(ring: GradedRing, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn term(ring: GradedRing, m: Monomial, c: u32) -> Self {
        let c = c % ring.p();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring, terms }
    }

    /// Builds a normalized polynomial from arbitrary (possibly repeated)
    /// terms with signed coefficients.
    pub fn from_terms(ring: GradedRing, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let f = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, f.from_i64(c));
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: GradedRing, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring, terms }
    }

    /// Trusted constructor: terms must already be sorted and nonzero.
    pub(crate) fn from_sorted(ring: GradedRing, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0 && t.1 < ring.p()));
        Polynomial { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> GradedRing {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        if self.is_homogeneous() {
            self.terms.first().map(|(m, _)| m.degree())
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Checks that the term list is normalized (sorted, no zeros).
    pub fn is_normalized(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0 > w[1].0)
            && self.terms.iter().all(|t| t.1 != 0 && t.1 < self.ring.p())
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c % f.p() == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| (t.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::constant(self.ring, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        r
    }

    /// `f^[q]`: every monomial exponent multiplied by `q`, coefficients kept.
    /// Over `F_p` with `q` a power of `p` this equals `f^q`.
    pub fn bracket_power(&self, q: u32) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            let s = m
                .checked_scale(q)
                .ok_or_else(|| Error::ExponentOverflow(format!("bracket power {q}")))?;
            terms.push((s, c));
        }
        Ok(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    /// Ring homomorphism sending `x_i` to `images[i]` (all in one target ring).
    pub fn substitute(&self, target: GradedRing, images: &[Polynomial]) -> Polynomial {
        debug_assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::constant(target, 1), g.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for &(m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = &out + &t;
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if m.is_one() {
                s.push_str(&c.to_string());
            } else {
                if *c != 1 {
                    s.push_str(&format!("{c}*"));
                }
                m.write_with(names, &mut s).unwrap();
            }
        }
        s
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { f.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        f.sub(a[i].1, b[j].1)
                    } else {
                        f.add(a[i].1, b[j].1)
                    };
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let f = self.ring.field();
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Polynomial::from_map(self.ring, acc)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.ring.indexed_names()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.ring.default_names()))
    }
}
