//! Cohomology of twists on `P^n` by local duality, plus regularity and level.

pub mod cech;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::hilbert::{eval, HilbertSeries};
use crate::groebner::vector::ModVec;
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{count_monomials, monomials_of_degree, GradedRing};
use crate::resolve::derived::transpose;
use crate::resolve::{betti, min_free_resolution, ModuleComplex, PresentedModule, Resolution};

pub use cech::{cech_dims, cech_oracle};

/// A coherent sheaf `M~` with its minimal resolution and a write-once cache of
/// degreewise ranks of the dualized differentials.
pub struct Sheaf {
    module: PresentedModule,
    res: Resolution,
    series: HilbertSeries,
    /// `duals[j]` holds the columns of `d_{j+1}^T : F_j^* -> F_{j+1}^*`.
    duals: Vec<Vec<ModVec>>,
    ranks: Mutex<HashMap<(usize, i64), u64>>,
}

impl fmt::Debug for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sheaf")
            .field("module", &self.module)
            .finish()
    }
}

impl Sheaf {
    pub fn new(m: &PresentedModule) -> Result<Self> {
        let res = min_free_resolution(m)?;
        let series = HilbertSeries::of_module(m)?;
        let ring = m.ring();
        let duals = (0..res.length())
            .map(|j| {
                let d = res.map(j + 1).expect("map inside the resolution");
                transpose(ring, d.columns(), d.target().rank())
            })
            .collect();
        Ok(Sheaf {
            module: m.clone(),
            res,
            series,
            duals,
            ranks: Mutex::new(HashMap::new()),
        })
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn ring(&self) -> GradedRing {
        self.module.ring()
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn support_dim(&self) -> i64 {
        self.series.dimension()
    }

    /// Rank in degree `e` of `d_{j+1}^T : F_j^* -> F_{j+1}^*`.
    fn dual_rank(&self, j: usize, e: i64) -> u64 {
        if j >= self.duals.len() {
            return 0;
        }
        if let Some(&r) = self.ranks.lock().expect("rank cache").get(&(j, e)) {
            return r;
        }
        let r = self.compute_dual_rank(j, e);
        self.ranks.lock().expect("rank cache").insert((j, e), r);
        r
    }

    fn compute_dual_rank(&self, j: usize, e: i64) -> u64 {
        let nv = self.ring().nvars();
        let src = self.res.free_module(j);
        let dst = self.res.free_module(j + 1);
        // Degree-e piece of F^*: slot k holds S_{e + t_k}.
        let mut offsets = Vec::with_capacity(dst.rank());
        let mut ncols = 0usize;
        for &t in dst.twists() {
            offsets.push(ncols);
            ncols += count_monomials(nv, e + t as i64) as usize;
        }
        if ncols == 0 {
            return 0;
        }
        let mut ech = Echelon::new(self.ring().field(), ncols);
        let mut row: SparseRow = Vec::new();
        for (k, &t) in src.twists().iter().enumerate() {
            let deg = e + t as i64;
            if deg < 0 {
                continue;
            }
            let col = &self.duals[j][k];
            if col.is_zero() {
                continue;
            }
            for mu in monomials_of_degree(nv, deg as u32) {
                row.clear();
                for &(term, c) in col.terms() {
                    let m = mu.mul(&term.mon);
                    row.push(((offsets[term.comp as usize] + m.rank_in_degree()) as u32, c));
                }
                ech.insert(&row);
                if ech.rank() == ncols {
                    return ncols as u64;
                }
            }
        }
        ech.rank() as u64
    }

    /// `dim Ext^j(M, S)_e`.
    pub fn ext_dim(&self, j: usize, e: i64) -> u64 {
        let fj = self.res.free_module(j);
        if fj.is_zero() {
            return 0;
        }
        let nv = self.ring().nvars();
        let total: u64 = fj
            .twists()
            .iter()
            .map(|&t| count_monomials(nv, e + t as i64))
            .sum();
        let out = self.dual_rank(j, e);
        let inc = if j == 0 { 0 } else { self.dual_rank(j - 1, e) };
        total - out - inc
    }

    /// `dim H^i(P^n, M~(d))`.
    pub fn h(&self, i: usize, d: i64) -> Result<u64> {
        let n = self.ring().projective_dim();
        if i > n {
            return Err(Error::OutOfRange {
                value: i as i64,
                range: format!("[0, {n}]"),
            });
        }
        let e = -d - n as i64 - 1;
        if i == 0 {
            // H^0 = M_d - H^0_m(M)_d + H^1_m(M)_d.
            let v =
                self.series.value(d) - self.ext_dim(n + 1, e) as i64 + self.ext_dim(n, e) as i64;
            debug_assert!(v >= 0);
            Ok(v as u64)
        } else {
            Ok(self.ext_dim(n - i, e))
        }
    }

    /// Hilbert polynomial of `M~` at `d`.
    pub fn euler_characteristic(&self, d: i64) -> Ratio<i64> {
        eval(&self.series.hilbert_polynomial(), d)
    }
}

/// `dim H^i(P^n, M~(d))`.
pub fn h_dim(m: &PresentedModule, i: usize, d: i64) -> Result<u64> {
    Sheaf::new(m)?.h(i, d)
}

/// Cohomology dimensions over a rectangular `(i, d)` window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub module: Option<String>,
    pub i_range: (usize, usize),
    pub d_range: (i64, i64),
    /// `dims[i - i_lo][d - d_lo]`.
    pub dims: Vec<Vec<u64>>,
    pub euler_check: bool,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, d: i64) -> u64 {
        self.dims[i - self.i_range.0][(d - self.d_range.0) as usize]
    }

    /// Rows `i`, columns `d`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\\d");
        for d in self.d_range.0..=self.d_range.1 {
            out.push_str(&format!("\t{d}"));
        }
        out.push('\n');
        for (k, row) in self.dims.iter().enumerate() {
            out.push_str(&(self.i_range.0 + k).to_string());
            for v in row {
                out.push_str(&format!("\t{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Fills the table in parallel. The Euler check compares the alternating sum
/// against the Hilbert polynomial at every `d`, using all `i` in `[0, n]`.
pub fn cohomology_table(
    sheaf: &Sheaf,
    i_range: (usize, usize),
    d_range: (i64, i64),
) -> Result<CohomologyTable> {
    let n = sheaf.ring().projective_dim();
    if i_range.0 > i_range.1 || i_range.1 > n {
        return Err(Error::OutOfRange {
            value: i_range.1 as i64,
            range: format!("[0, {n}]"),
        });
    }
    let ds: Vec<i64> = (d_range.0..=d_range.1).collect();
    let full: Vec<Vec<u64>> = ds
        .par_iter()
        .map(|&d| (0..=n).map(|i| sheaf.h(i, d)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let euler_check = ds.iter().zip(&full).all(|(&d, col)| {
        let chi: i64 = col
            .iter()
            .enumerate()
            .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        Ratio::from_integer(chi) == sheaf.euler_characteristic(d)
    });
    let dims = (i_range.0..=i_range.1)
        .map(|i| full.iter().map(|col| col[i]).collect())
        .collect();
    Ok(CohomologyTable {
        module: sheaf.module().name().map(str::to_string),
        i_range,
        d_range,
        dims,
        euler_check,
    })
}

/// A regularity value; `NegInf` when every relevant group vanishes
/// identically. Arithmetic saturates at `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reg {
    NegInf,
    Finite(i64),
}

impl Reg {
    pub fn finite(self) -> Option<i64> {
        match self {
            Reg::NegInf => None,
            Reg::Finite(v) => Some(v),
        }
    }

    pub fn plus(self, a: i64) -> Reg {
        match self {
            Reg::NegInf => Reg::NegInf,
            Reg::Finite(v) => Reg::Finite(v.saturating_add(a)),
        }
    }

    pub fn add(self, other: Reg) -> Reg {
        match (self, other) {
            (Reg::Finite(a), Reg::Finite(b)) => Reg::Finite(a.saturating_add(b)),
            _ => Reg::NegInf,
        }
    }
}

impl fmt::Display for Reg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reg::NegInf => f.write_str("-inf"),
            Reg::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Reg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Reg::NegInf => s.serialize_str("-inf"),
            Reg::Finite(v) => s.serialize_i64(*v),
        }
    }
}

const SEARCH_LIMIT: i64 = 100_000;

/// True when `H^i(M~(m - i)) = 0` for all `t < i <= n`.
pub fn is_regular(sheaf: &Sheaf, m: i64, t: usize) -> Result<bool> {
    let n = sheaf.ring().projective_dim();
    for i in t + 1..=n {
        if sheaf.h(i, m - i as i64)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `reg^t(M~)`: the least `m` with `H^i(M~(m - i)) = 0` for all `i > t`.
pub fn reg_t_sheaf(sheaf: &Sheaf, t: usize) -> Result<Reg> {
    let n = sheaf.ring().projective_dim();
    if t >= n || sheaf.support_dim() <= t as i64 {
        return Ok(Reg::NegInf);
    }
    // The module regularity bounds the sheaf regularity from above.
    let start = betti(sheaf.resolution())?.regularity().unwrap_or(0) as i64;
    let mut m = start;
    if !is_regular(sheaf, m, t)? {
        return Err(Error::Internal(format!(
            "module regularity {start} does not bound the sheaf regularity"
        )));
    }
    while is_regular(sheaf, m - 1, t)? {
        m -= 1;
        if start - m > SEARCH_LIMIT {
            return Err(Error::Internal("regularity search diverged".into()));
        }
    }
    Ok(Reg::Finite(m))
}

pub fn reg_t(m: &PresentedModule, t: usize) -> Result<Reg> {
    reg_t_sheaf(&Sheaf::new(m)?, t)
}

/// The level: least `t` such that `H^i(M~(q - 1 - i)) = 0` whenever `t < q <= i <= n`.
pub fn level_sheaf(sheaf: &Sheaf) -> Result<usize> {
    let n = sheaf.ring().projective_dim();
    // bad[q] is true when some group in the chain starting at H^q(M~(-1)) is nonzero.
    let mut bad = vec![false; n + 1];
    for (q, slot) in bad.iter_mut().enumerate().skip(1) {
        for i in q..=n {
            if sheaf.h(i, q as i64 - 1 - i as i64)? != 0 {
                *slot = true;
                break;
            }
        }
    }
    Ok((0..=n).find(|&t| (t + 1..=n).all(|q| !bad[q])).unwrap_or(n))
}

pub fn level(m: &PresentedModule) -> Result<usize> {
    level_sheaf(&Sheaf::new(m)?)
}

/// Outcome of the regularity bound for the zeroth homology of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexBound {
    pub hypothesis_met: bool,
    /// `dim Supp H_j` for `j >= 1` (index 0 is `H_1`).
    pub homology_support: Vec<i64>,
    pub lhs: Reg,
    pub rhs: Reg,
    pub holds: bool,
}

/// Checks `reg^t(H_0) <= max{ reg^{t+j}(E_j) - j : 0 <= j <= n - t - 1 }`
/// under the support hypothesis `dim Supp H_j - j - t < 2`, `1 <= j <= n - t - 2`.
pub fn complex_reg_bound(complex: &ModuleComplex, t: usize) -> Result<ComplexBound> {
    let ring = complex.term(0).expect("nonempty complex").ring();
    let n = ring.projective_dim() as i64;
    let t_i = t as i64;
    let mut homology_support = Vec::new();
    let mut hypothesis_met = true;
    for j in 1..complex.len() {
        let s = crate::groebner::support_dim(&complex.homology(j)?)?;
        homology_support.push(s);
        let j_i = j as i64;
        if j_i <= n - t_i - 2 && s - j_i - t_i >= 2 {
            hypothesis_met = false;
        }
    }
    let lhs = reg_t(&complex.homology(0)?, t)?;
    let mut rhs = Reg::NegInf;
    for j in 0..complex.len() {
        if j as i64 > n - t_i - 1 {
            break;
        }
        let r = reg_t(complex.term(j).expect("term"), t + j)?.plus(-(j as i64));
        rhs = rhs.max(r);
    }
    Ok(ComplexBound {
        hypothesis_met,
        homology_support,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Polynomial};

    fn q(r: GradedRing, gens: &[&str]) -> PresentedModule {
        let names = r.default_names();
        let g: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect();
        PresentedModule::quotient_ring(r, &g).unwrap()
    }

    /// The ideal `(x, y)` of a point as a module.
    fn point_ideal(r: GradedRing) -> PresentedModule {
        let names = r.default_names();
        let x = parse_polynomial(r, &names, "x").unwrap();
        let y = parse_polynomial(r, &names, "y").unwrap();
        let col = ModVec::from_entries(&[y, -&x]);
        PresentedModule::from_columns(crate::resolve::FreeModule::new(r, vec![1, 1]), vec![col])
            .unwrap()
    }

    #[test]
    fn line_bundle_cells() {
        let p2 = GradedRing::new(5, 3).unwrap();
        let s = Sheaf::new(&PresentedModule::line_bundle(p2, 0)).unwrap();
        assert_eq!(s.h(0, 2).unwrap(), 6);
        assert_eq!(s.h(2, -4).unwrap(), 3);
        let p1 = GradedRing::new(5, 2).unwrap();
        assert_eq!(
            h_dim(&PresentedModule::line_bundle(p1, 0), 1, -2).unwrap(),
            1
        );
        assert!(s.h(3, 0).is_err());
    }

    #[test]
    fn point_ideal_cells() {
        let r = GradedRing::new(5, 3).unwrap();
        let ip = Sheaf::new(&point_ideal(r)).unwrap();
        assert_eq!(ip.h(1, -1).unwrap(), 1);
        assert_eq!(ip.h(1, 0).unwrap(), 0);
        assert_eq!(ip.h(0, 1).unwrap(), 2);
        assert_eq!(reg_t_sheaf(&ip, 0).unwrap(), Reg::Finite(1));
    }

    #[test]
    fn torsion_and_embedded_points_only_move_h0() {
        let r = GradedRing::new(3, 3).unwrap();
        let m = q(r, &["x^2", "x*y", "x*z"]);
        let line = Sheaf::new(&q(r, &["x"])).unwrap();
        let s = Sheaf::new(&m).unwrap();
        for d in -4..5 {
            for i in 0..3 {
                assert_eq!(s.h(i, d).unwrap(), line.h(i, d).unwrap(), "i={i} d={d}");
            }
        }
    }

    #[test]
    fn regularity_examples() {
        let r = GradedRing::new(5, 3).unwrap();
        assert_eq!(
            reg_t(&PresentedModule::line_bundle(r, 0), 0).unwrap(),
            Reg::Finite(0)
        );
        let o4 = PresentedModule::line_bundle(r, -4);
        assert_eq!(reg_t(&o4, 0).unwrap(), Reg::Finite(4));
        assert_eq!(reg_t(&o4, 1).unwrap(), Reg::Finite(4));
        assert_eq!(reg_t(&o4, 2).unwrap(), Reg::NegInf);
        assert_eq!(reg_t(&q(r, &["x", "y", "z"]), 0).unwrap(), Reg::NegInf);
    }

    #[test]
    fn level_examples() {
        let r = GradedRing::new(5, 3).unwrap();
        assert_eq!(level(&PresentedModule::line_bundle(r, 0)).unwrap(), 0);
        assert_eq!(level(&PresentedModule::line_bundle(r, 1)).unwrap(), 0);
        assert_eq!(level(&PresentedModule::line_bundle(r, -1)).unwrap(), 1);
        assert_eq!(level(&PresentedModule::line_bundle(r, -2)).unwrap(), 2);
        assert_eq!(level(&PresentedModule::line_bundle(r, -4)).unwrap(), 2);
    }

    #[test]
    fn euler_table() {
        let r = GradedRing::new(3, 3).unwrap();
        let s = Sheaf::new(&q(r, &["x*y", "x*z", "y*z"])).unwrap();
        let t = cohomology_table(&s, (0, 2), (-4, 4)).unwrap();
        assert!(t.euler_check);
        for d in -4..=4 {
            assert_eq!((t.get(0, d), t.get(1, d), t.get(2, d)), (3, 0, 0));
        }
        let s = Sheaf::new(&PresentedModule::line_bundle(r, -1)).unwrap();
        let t = cohomology_table(&s, (0, 2), (-5, 3)).unwrap();
        assert!(t.euler_check);
        assert_eq!((t.get(2, -5), t.get(2, -2), t.get(0, 3)), (10, 1, 6));
    }

    #[test]
    fn negative_infinity_saturates() {
        assert_eq!(Reg::NegInf.plus(5), Reg::NegInf);
        assert!(Reg::NegInf < Reg::Finite(i64::MIN));
        assert_eq!(Reg::Finite(2).add(Reg::Finite(3)), Reg::Finite(5));
        assert_eq!(serde_json::to_string(&Reg::NegInf).unwrap(), "\"-inf\"");
    }

    #[test]
    fn complex_bound_examples() {
        let r = GradedRing::new(5, 3).unwrap();
        let res = min_free_resolution(&q(r, &["x", "y", "z"])).unwrap();
        let c = ModuleComplex::from_resolution(&res);
        let b = complex_reg_bound(&c, 0).unwrap();
        assert!(b.hypothesis_met && b.holds);
        assert_eq!(b.lhs, Reg::NegInf);

        let pts = min_free_resolution(&q(r, &["x*y", "x*z", "y*z"])).unwrap();
        let c = ModuleComplex::from_resolution(&pts)
            .tensor(&PresentedModule::line_bundle(r, -1))
            .unwrap();
        let b = complex_reg_bound(&c, 0).unwrap();
        assert!(b.hypothesis_met && b.holds);
        // A finite sheaf has no higher cohomology.
        assert_eq!(b.lhs, Reg::NegInf);
        // Dropping F_0 leaves a resolution of the ideal sheaf, regularity 2.
        let c = ModuleComplex::from_free_maps(pts.maps()[1..].to_vec())
            .unwrap()
            .tensor(&PresentedModule::line_bundle(r, -1))
            .unwrap();
        let b = complex_reg_bound(&c, 0).unwrap();
        assert!(b.hypothesis_met && b.holds);
        assert_eq!((b.lhs, b.rhs), (Reg::Finite(3), Reg::Finite(3)));

        let p3 = GradedRing::new(5, 4).unwrap();
        let lx = q(p3, &["x"]);
        let c = ModuleComplex::from_resolution(&min_free_resolution(&lx).unwrap())
            .tensor(&lx)
            .unwrap();
        let b = complex_reg_bound(&c, 0).unwrap();
        // Tor_1 is the plane itself: 2 - 1 - 0 < 2, so the bound applies.
        assert_eq!(b.homology_support, vec![2]);
        assert!(b.hypothesis_met && b.holds);
    }
}
