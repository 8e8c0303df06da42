//! Hilbert series of graded modules from their lead-term modules.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::Result;
use crate::groebner::buchberger::{module_groebner, ModuleGb};
use crate::poly::monomial::binomial;
use crate::poly::Monomial;
use crate::resolve::PresentedModule;

/// `HS(t) = t^low * (c_0 + c_1 t + ...) / (1 - t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HilbertSeries {
    nvars: usize,
    low: i64,
    coeffs: Vec<i64>,
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` with `HS(S/J) = N(t) / (1-t)^nvars` for a monomial ideal.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, g.degree() as usize);
            acc = next;
        }
        return acc;
    }
    // Pivot on the variable shared by the most generators, at its smallest
    // positive exponent: both J + (p) and J : p are strictly simpler.
    let nv = gens[0].nvars();
    let mut best = (0usize, 0usize);
    for v in 0..nv {
        let count = gens.iter().filter(|g| g.exponent(v) > 0).count();
        if count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    let e = gens
        .iter()
        .map(|g| g.exponent(v))
        .filter(|&x| x > 0)
        .min()
        .unwrap();
    let mut pe = vec![0u16; nv];
    pe[v] = e;
    let pivot = Monomial::from_exponents(&pe);
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.gcd(&pivot).quotient_of(g)).collect();
    let mut out = numerator(minimalize(plus));
    let rest = numerator(minimalize(colon));
    poly_add_shifted(&mut out, &rest, e as usize);
    out
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries {
            nvars,
            low: 0,
            coeffs: Vec::new(),
        }
    }

    /// Series of `S/J` shifted so the generator sits in degree `shift`.
    pub fn of_monomial_quotient(nvars: usize, gens: &[Monomial], shift: i64) -> Self {
        HilbertSeries {
            nvars,
            low: shift,
            coeffs: monomial_numerator(gens),
        }
        .normalized()
    }

    /// Series of `F / N` where `gb` is a Groebner basis of `N ⊆ F`.
    pub fn of_basis(nvars: usize, gb: &ModuleGb) -> Self {
        let leads = gb.leading_monomials();
        let mut acc = HilbertSeries::zero(nvars);
        for (k, ms) in leads.iter().enumerate() {
            let s = HilbertSeries::of_monomial_quotient(nvars, ms, gb.twists()[k] as i64);
            acc = acc.add(&s);
        }
        acc
    }

    /// Exact series of a presented module.
    pub fn of_module(m: &PresentedModule) -> Result<Self> {
        let ring = m.ring();
        let gb = module_groebner(ring.field(), m.generators().twists(), m.columns())?;
        Ok(Self::of_basis(ring.nvars(), &gb))
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return HilbertSeries::zero(self.nvars);
        }
        self.coeffs.drain(..lead_zeros);
        self.low += lead_zeros as i64;
        self
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let mut coeffs = Vec::new();
        poly_add_shifted(&mut coeffs, &self.coeffs, (self.low - low) as usize);
        poly_add_shifted(&mut coeffs, &other.coeffs, (other.low - low) as usize);
        HilbertSeries {
            nvars: self.nvars,
            low,
            coeffs,
        }
        .normalized()
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        let neg = HilbertSeries {
            nvars: other.nvars,
            low: other.low,
            coeffs: other.coeffs.iter().map(|c| -c).collect(),
        };
        self.add(&neg)
    }

    /// Series of `M(a)`: the degree-`d` piece of `M(a)` is `M_{d+a}`.
    pub fn twisted(&self, a: i64) -> HilbertSeries {
        HilbertSeries {
            low: self.low - a,
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Numerator coefficients as `(exponent, coefficient)` pairs.
    pub fn numerator(&self) -> Vec<(i64, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i64, c))
            .collect()
    }

    /// Hilbert function value `dim M_d`.
    pub fn value(&self, d: i64) -> i64 {
        let n = self.nvars as i64;
        let mut acc = 0i64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = d - self.low - i as i64;
            if k < 0 {
                break;
            }
            acc += c * binomial((k + n - 1) as u64, (n - 1) as u64) as i64;
        }
        acc
    }

    /// Order of vanishing of the numerator at `t = 1`, and the quotient.
    fn reduced(&self) -> (usize, Vec<i64>) {
        let mut q = self.coeffs.clone();
        let mut k = 0;
        while !q.is_empty() && q.iter().sum::<i64>() == 0 && k < self.nvars {
            // Divide by (1 - t): q = (1 - t) r, r_i = q_0 + ... + q_i.
            let mut r = Vec::with_capacity(q.len() - 1);
            let mut s = 0;
            for &c in &q[..q.len() - 1] {
                s += c;
                r.push(s);
            }
            q = r;
            k += 1;
        }
        (k, q)
    }

    /// Dimension of the support of the associated sheaf on `P^{nvars-1}`;
    /// `-1` for a finite-length (or zero) module.
    pub fn dimension(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let (k, _) = self.reduced();
        self.nvars as i64 - k as i64 - 1
    }

    /// Leading coefficient times `dim!`, i.e. the degree (multiplicity).
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let (_, q) = self.reduced();
        q.iter().sum()
    }

    /// Hilbert polynomial, coefficients of `1, d, d^2, ...`.
    pub fn hilbert_polynomial(&self) -> Vec<Ratio<i64>> {
        let n = self.nvars;
        let mut acc = vec![Ratio::from_integer(0); n];
        let fact: i64 = (1..n as i64).product::<i64>().max(1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let s = self.low + i as i64;
            // C(d - s + n - 1, n - 1) = prod_{j=1}^{n-1} (d - s + j) / (n-1)!
            let mut poly = vec![Ratio::from_integer(1i64)];
            for j in 1..n as i64 {
                let a = j - s;
                let mut next = vec![Ratio::from_integer(0); poly.len() + 1];
                for (k, coef) in poly.iter().enumerate() {
                    next[k] += *coef * a;
                    next[k + 1] += *coef;
                }
                poly = next;
            }
            for (k, coef) in poly.into_iter().enumerate() {
                acc[k] += coef * c / fact;
            }
        }
        while acc.len() > 1 && acc.last() == Some(&Ratio::from_integer(0)) {
            acc.pop();
        }
        acc
    }

    /// Least `d0` with `HF(d) = HP(d)` for every `d >= d0`, searched no
    /// lower than `low - nvars - 1` (below that both vanish or the polynomial
    /// has run out of roots).
    pub fn regularity_index(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        let hp = self.hilbert_polynomial();
        let floor = self.low - self.nvars as i64 - 1;
        let mut d = self.low + self.coeffs.len() as i64 - self.nvars as i64;
        while d > floor && eval(&hp, d - 1) == Ratio::from_integer(self.value(d - 1)) {
            d -= 1;
        }
        d
    }
}

impl HilbertSeries {
    /// True when no degree `>= lo` has a nonzero value.
    pub fn vanishes_from(&self, lo: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.dimension() >= 0 {
            return false;
        }
        let top = self.regularity_index();
        (lo..top.max(lo)).all(|d| self.value(d) == 0)
    }

    /// Lowest degree with a possibly nonzero value.
    pub fn low(&self) -> i64 {
        self.low
    }
}

/// Evaluates a polynomial with rational coefficients.
pub fn eval(poly: &[Ratio<i64>], d: i64) -> Ratio<i64> {
    poly.iter()
        .rev()
        .fold(Ratio::from_integer(0), |acc, c| acc * d + c)
}

/// Hilbert values over a window plus the polynomial recovered by forward
/// differences, when the window shows it stabilizing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub window: (i64, i64),
    pub values: BTreeMap<i64, i64>,
    /// `(numerator, denominator)` of the coefficients of `1, d, d^2, ...`.
    pub polynomial: Option<Vec<(i64, i64)>>,
    pub stabilization_degree: Option<i64>,
}

/// Fits a polynomial of degree `< nvars` to values from `d0` on via Newton
/// forward differences.
fn newton_fit(vals: &[i64], nvars: usize) -> Vec<i64> {
    let mut diffs = Vec::with_capacity(nvars);
    let mut row: Vec<i64> = vals[..nvars].to_vec();
    for _ in 0..nvars {
        diffs.push(row[0]);
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
        if row.is_empty() {
            break;
        }
    }
    diffs
}

fn newton_eval(diffs: &[i64], k: i64) -> i64 {
    // sum_j diffs[j] * C(k, j)
    let mut acc = 0i64;
    let mut binom = 1i64;
    for (j, &dj) in diffs.iter().enumerate() {
        acc += dj * binom;
        binom = binom * (k - j as i64) / (j as i64 + 1);
    }
    acc
}

fn newton_to_monomial(diffs: &[i64], d0: i64) -> Vec<Ratio<i64>> {
    // sum_j diffs[j] * C(d - d0, j)
    let mut acc = vec![Ratio::from_integer(0); diffs.len().max(1)];
    let mut basis = vec![Ratio::from_integer(1i64)];
    for (j, &dj) in diffs.iter().enumerate() {
        for (k, c) in basis.iter().enumerate() {
            acc[k] += *c * dj;
        }
        // basis *= (d - d0 - j) / (j + 1)
        let mut next = vec![Ratio::from_integer(0); basis.len() + 1];
        for (k, c) in basis.iter().enumerate() {
            next[k] += *c * Ratio::from_integer(-d0 - j as i64) / (j as i64 + 1);
            next[k + 1] += *c / (j as i64 + 1);
        }
        basis = next;
    }
    while acc.len() > 1 && acc.last() == Some(&Ratio::from_integer(0)) {
        acc.pop();
    }
    acc
}

/// Hilbert values of `M` over `[lo, hi]` and the difference-recovered
/// polynomial. Stabilization is declared after `nvars + 2` consecutive
/// agreements beyond the `nvars` points used for the fit.
pub fn hilbert(m: &PresentedModule, window: (i64, i64)) -> Result<HilbertData> {
    let series = HilbertSeries::of_module(m)?;
    Ok(hilbert_from_series(&series, m.ring().nvars(), window))
}

pub fn hilbert_from_series(
    series: &HilbertSeries,
    nvars: usize,
    window: (i64, i64),
) -> HilbertData {
    let (lo, hi) = window;
    let values: BTreeMap<i64, i64> = (lo..=hi).map(|d| (d, series.value(d))).collect();
    let vals: Vec<i64> = values.values().copied().collect();
    let need = nvars + nvars + 2;
    let mut polynomial = None;
    let mut stabilization_degree = None;
    for start in 0..vals.len() {
        if vals.len() - start < need {
            break;
        }
        let diffs = newton_fit(&vals[start..], nvars);
        let fits = vals[start..]
            .iter()
            .enumerate()
            .all(|(k, &v)| newton_eval(&diffs, k as i64) == v);
        if fits {
            let d0 = lo + start as i64;
            polynomial = Some(
                newton_to_monomial(&diffs, d0)
                    .into_iter()
                    .map(|r| (*r.numer(), *r.denom()))
                    .collect(),
            );
            stabilization_degree = Some(d0);
            break;
        }
    }
    HilbertData {
        window,
        values,
        polynomial,
        stabilization_degree,
    }
}

/// Dimension of the support of `M~` in `P^n` (`-1` for the zero sheaf).
pub fn support_dim(m: &PresentedModule) -> Result<i64> {
    Ok(HilbertSeries::of_module(m)?.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{monomials_of_degree, parse_polynomial, GradedRing, Polynomial};
    use crate::resolve::FreeModule;
    use proptest::prelude::*;

    fn quotient(r: GradedRing, gens: &[&str]) -> PresentedModule {
        let names = r.default_names();
        let ps: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect();
        PresentedModule::quotient_ring(r, &ps).unwrap()
    }

    #[test]
    fn small_values() {
        let r = GradedRing::new(5, 3).unwrap();
        let s = quotient(r, &[]);
        assert_eq!(HilbertSeries::of_module(&s).unwrap().value(3), 10);
        let q = quotient(r, &["x^2", "y^2"]);
        assert_eq!(HilbertSeries::of_module(&q).unwrap().value(2), 4);
        let tw = PresentedModule::free(FreeModule::new(r, vec![2]));
        let hs = HilbertSeries::of_module(&tw).unwrap();
        assert_eq!((hs.value(1), hs.value(2), hs.value(3)), (0, 1, 3));
    }

    #[test]
    fn support_dimensions() {
        let r = GradedRing::new(5, 3).unwrap();
        assert_eq!(support_dim(&quotient(r, &[])).unwrap(), 2);
        assert_eq!(support_dim(&quotient(r, &["x"])).unwrap(), 1);
        assert_eq!(support_dim(&quotient(r, &["x", "y"])).unwrap(), 0);
        assert_eq!(support_dim(&quotient(r, &["x", "y", "z"])).unwrap(), -1);
        assert_eq!(
            support_dim(&quotient(r, &["x^2", "x*y", "x*z"])).unwrap(),
            1
        );
    }

    #[test]
    fn polynomial_of_a_plane_conic() {
        let r = GradedRing::new(3, 3).unwrap();
        let hs = HilbertSeries::of_module(&quotient(r, &["x*y - z^2"])).unwrap();
        let hp = hs.hilbert_polynomial();
        assert_eq!(hp, vec![Ratio::from_integer(1), Ratio::from_integer(2)]);
        assert_eq!(hs.degree(), 2);
        let data = hilbert_from_series(&hs, 3, (0, 12));
        assert_eq!(data.polynomial, Some(vec![(1, 1), (2, 1)]));
        assert_eq!(data.stabilization_degree, Some(0));
    }

    #[test]
    fn narrow_window_reports_no_polynomial() {
        let r = GradedRing::new(3, 3).unwrap();
        let hs = HilbertSeries::of_module(&quotient(r, &["x^3"])).unwrap();
        let data = hilbert_from_series(&hs, 3, (0, 4));
        assert_eq!(data.polynomial, None);
        assert_eq!(data.values[&2], 6);
    }

    fn standard_monomial_count(gens: &[Monomial], nvars: usize, d: u32) -> i64 {
        monomials_of_degree(nvars, d)
            .into_iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count() as i64
    }

    proptest! {
        #[test]
        fn numerator_counts_standard_monomials(
            nvars in 1usize..4,
            raw in prop::collection::vec(prop::collection::vec(0u16..4, 3), 0..5),
        ) {
            let gens: Vec<Monomial> = raw
                .iter()
                .map(|e| Monomial::from_exponents(&e[..nvars]))
                .filter(|m| !m.is_one())
                .collect();
            let hs = HilbertSeries::of_monomial_quotient(nvars, &gens, 0);
            for d in 0..=8u32 {
                prop_assert_eq!(hs.value(d as i64), standard_monomial_count(&gens, nvars, d));
            }
            // The exact polynomial agrees with the values past the index.
            let hp = hs.hilbert_polynomial();
            if !hs.is_zero() {
                let d0 = hs.regularity_index().max(0);
                for d in d0..d0 + 6 {
                    prop_assert_eq!(eval(&hp, d), Ratio::from_integer(hs.value(d)));
                }
            }
        }
    }
}
