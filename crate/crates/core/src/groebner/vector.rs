use std::cmp::Ordering;
use std::collections::HashMap;

use crate::field::Fp;
use crate::poly::{GradedRing, Monomial, Polynomial};

/// A monomial times a basis vector `e_comp` of a free module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub comp: u32,
    pub mon: Monomial,
}

/// Position over term: a lower component index is larger, then degrevlex.
impl Ord for Term {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        match other.comp.cmp(&self.comp) {
            Ordering::Equal => self.mon.cmp(&other.mon),
            o => o,
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse element of a free module `⊕ S e_k`, terms strictly decreasing in
/// position-over-term order, coefficients in `[1, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModVec {
    terms: Vec<(Term, u32)>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    /// `f e_comp`.
    pub fn from_poly(comp: usize, f: &Polynomial) -> Self {
        ModVec {
            terms: f
                .terms()
                .iter()
                .map(|&(mon, c)| {
                    (
                        Term {
                            comp: comp as u32,
                            mon,
                        },
                        c,
                    )
                })
                .collect(),
        }
    }

    /// The basis vector `e_comp`.
    pub fn basis(nvars: usize, comp: usize) -> Self {
        ModVec {
            terms: vec![(
                Term {
                    comp: comp as u32,
                    mon: Monomial::one(nvars),
                },
                1,
            )],
        }
    }

    /// Builds a vector from polynomial entries, one per component.
    pub fn from_entries(entries: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (k, f) in entries.iter().enumerate() {
            terms.extend(f.terms().iter().map(|&(mon, c)| {
                (
                    Term {
                        comp: k as u32,
                        mon,
                    },
                    c,
                )
            }));
        }
        ModVec { terms }
    }

    /// Normalizes arbitrary terms (repeats allowed, coefficients reduced).
    pub fn from_unsorted(f: Fp, terms: impl IntoIterator<Item = (Term, u32)>) -> Self {
        let mut acc: HashMap<Term, u32> = HashMap::new();
        for (t, c) in terms {
            let e = acc.entry(t).or_insert(0);
            *e = f.add(*e, c % f.p());
        }
        let mut terms: Vec<(Term, u32)> = acc.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        ModVec { terms }
    }

    /// Trusted constructor for already sorted, nonzero terms.
    pub(crate) fn from_sorted(terms: Vec<(Term, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        ModVec { terms }
    }

    #[inline]
    pub fn terms(&self) -> &[(Term, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&(Term, u32)> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The polynomial coefficient of `e_comp`.
    pub fn entry(&self, ring: GradedRing, comp: usize) -> Polynomial {
        let start = self.terms.partition_point(|t| (t.0.comp as usize) < comp);
        let end = self.terms.partition_point(|t| (t.0.comp as usize) <= comp);
        Polynomial::from_sorted(
            ring,
            self.terms[start..end]
                .iter()
                .map(|&(t, c)| (t.mon, c))
                .collect(),
        )
    }

    /// Indices of components with a nonzero entry, increasing.
    pub fn support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (t, _) in &self.terms {
            if out.last() != Some(&(t.comp as usize)) {
                out.push(t.comp as usize);
            }
        }
        out
    }

    /// Degree of a homogeneous vector with respect to generator twists
    /// (`None` for zero or inhomogeneous vectors).
    pub fn degree(&self, twists: &[i32]) -> Option<i32> {
        let mut deg = None;
        for (t, _) in &self.terms {
            let d = t.mon.degree() as i32 + twists[t.comp as usize];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        self.is_zero() || self.degree(twists).is_some()
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.0.comp as usize).max()
    }

    pub fn scale(&self, f: Fp, c: u32) -> ModVec {
        let c = c % f.p();
        if c == 0 {
            return ModVec::zero();
        }
        ModVec {
            terms: self.terms.iter().map(|&(t, a)| (t, f.mul(a, c))).collect(),
        }
    }

    /// `c * m * self`; the order is preserved by monomial multiplication.
    pub fn mul_term(&self, f: Fp, m: &Monomial, c: u32) -> ModVec {
        let c = c % f.p();
        if c == 0 {
            return ModVec::zero();
        }
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| {
                    (
                        Term {
                            comp: t.comp,
                            mon: t.mon.mul(m),
                        },
                        f.mul(a, c),
                    )
                })
                .collect(),
        }
    }

    /// `g * self` for a polynomial `g`.
    pub fn mul_poly(&self, f: Fp, g: &Polynomial) -> ModVec {
        let mut acc = ModVec::zero();
        for &(m, c) in g.terms() {
            acc = acc.add(f, &self.mul_term(f, &m, c));
        }
        acc
    }

    /// `self + c * other`.
    pub fn axpy(&self, f: Fp, c: u32, other: &ModVec) -> ModVec {
        let c = c % f.p();
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
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
                    out.push((b[j].0, f.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModVec { terms: out }
    }

    pub fn add(&self, f: Fp, other: &ModVec) -> ModVec {
        self.axpy(f, 1, other)
    }

    pub fn sub(&self, f: Fp, other: &ModVec) -> ModVec {
        self.axpy(f, f.p() - 1, other)
    }

    pub fn neg(&self, f: Fp) -> ModVec {
        self.scale(f, f.p() - 1)
    }

    /// Renumbers components through `map` (`None` drops the term). The map
    /// must be increasing on the kept components so the order survives.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> ModVec {
        let terms: Vec<(Term, u32)> = self
            .terms
            .iter()
            .filter_map(|&(t, c)| {
                map(t.comp as usize).map(|k| {
                    (
                        Term {
                            comp: k as u32,
                            mon: t.mon,
                        },
                        c,
                    )
                })
            })
            .collect();
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        ModVec { terms }
    }

    /// Renumbers components through an arbitrary map, re-sorting.
    pub fn remap_unordered(&self, f: Fp, map: impl Fn(usize) -> usize) -> ModVec {
        ModVec::from_unsorted(
            f,
            self.terms.iter().map(|&(t, c)| {
                (
                    Term {
                        comp: map(t.comp as usize) as u32,
                        mon: t.mon,
                    },
                    c,
                )
            }),
        )
    }

    /// Component of the first term with a constant monomial, if any.
    pub fn unit_component(&self) -> Option<(usize, u32)> {
        self.terms
            .iter()
            .find(|(t, _)| t.mon.is_one())
            .map(|&(t, c)| (t.comp as usize, c))
    }

    pub fn display_with(&self, ring: GradedRing, names: &[String], ncomps: usize) -> String {
        let parts: Vec<String> = (0..ncomps)
            .map(|k| self.entry(ring, k).display_with(names))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn pot_order_prefers_low_components() {
        let a = Term {
            comp: 0,
            mon: Monomial::from_exponents(&[0, 0]),
        };
        let b = Term {
            comp: 1,
            mon: Monomial::from_exponents(&[5, 0]),
        };
        assert!(a > b);
    }

    #[test]
    fn entries_roundtrip() {
        let r = GradedRing::new(5, 3).unwrap();
        let names = r.default_names();
        let f = parse_polynomial(r, &names, "x*y + z^2").unwrap();
        let g = parse_polynomial(r, &names, "2*x").unwrap();
        let v = ModVec::from_entries(&[f.clone(), Polynomial::zero(r), g.clone()]);
        assert_eq!(v.entry(r, 0), f);
        assert!(v.entry(r, 1).is_zero());
        assert_eq!(v.entry(r, 2), g);
        assert_eq!(v.support(), vec![0, 2]);
        assert_eq!(v.degree(&[0, 5, 1]), Some(2));
        assert_eq!(v.degree(&[0, 5, 0]), None);
        let fp = r.field();
        assert!(v.sub(fp, &v).is_zero());
    }
}
