use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::hilbert::{support_dim, HilbertSeries};
use crate::groebner::syzygy::kernel_generators;
use crate::groebner::vector::{ModVec, Term};
use crate::poly::GradedRing;
use crate::resolve::free::{FreeModule, GradedMap, PresentedModule};
use crate::resolve::minimal::{min_free_resolution, minimal_presentation, Resolution};

/// `col ⊗ e_l` in a tensor product whose right factor has rank `rank_b`.
pub(crate) fn kron_left(col: &ModVec, l: usize, rank_b: usize) -> ModVec {
    col.remap(|k| Some(k * rank_b + l))
}

/// `e_k ⊗ col`.
pub(crate) fn kron_right(k: usize, col: &ModVec, rank_b: usize) -> ModVec {
    col.remap(|l| Some(k * rank_b + l))
}

/// Columns of the transposed matrix; `nrows` is the rank of the old target.
pub(crate) fn transpose(ring: GradedRing, cols: &[ModVec], nrows: usize) -> Vec<ModVec> {
    let mut rows: Vec<Vec<(Term, u32)>> = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for &(t, c) in col.terms() {
            rows[t.comp as usize].push((
                Term {
                    comp: j as u32,
                    mon: t.mon,
                },
                c,
            ));
        }
    }
    rows.into_iter()
        .map(|r| ModVec::from_unsorted(ring.field(), r))
        .collect()
}

fn degrees(cols: &[ModVec], twists: &[i32]) -> Vec<i32> {
    cols.iter()
        .map(|c| c.degree(twists).expect("homogeneous column"))
        .collect()
}

/// `(<gens> + <rels>) / <rels>` inside the free module with `ambient` twists.
pub fn subquotient(
    ring: GradedRing,
    ambient: &[i32],
    gens: &[ModVec],
    rels: &[ModVec],
) -> Result<PresentedModule> {
    let gens: Vec<ModVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let rels: Vec<ModVec> = rels.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gen_twists = degrees(&gens, ambient);
    let s = gens.len();
    if s == 0 {
        return Ok(PresentedModule::free(FreeModule::zero(ring)));
    }
    let mut cols = gens;
    cols.extend(rels);
    let src = degrees(&cols, ambient);
    let syz = kernel_generators(ring.field(), ring.nvars(), ambient, &cols, &src)?;
    let proj: Vec<ModVec> = syz
        .iter()
        .map(|v| v.remap(|k| if k < s { Some(k) } else { None }))
        .filter(|v| !v.is_zero())
        .collect();
    minimal_presentation(&PresentedModule::from_columns_unchecked(
        FreeModule::new(ring, gen_twists),
        proj,
    ))
}

/// Homology at a free module `G`: cycles are `z` with `out_map(z)` in the
/// span of `out_rels`, boundaries are `bounds`.
pub fn homology(
    ring: GradedRing,
    mid: &[i32],
    out_target: &[i32],
    out_map: &[ModVec],
    out_rels: &[ModVec],
    bounds: &[ModVec],
) -> Result<PresentedModule> {
    let nv = ring.nvars();
    let cycles: Vec<ModVec> = if out_target.is_empty() || out_map.iter().all(|c| c.is_zero()) {
        (0..mid.len()).map(|k| ModVec::basis(nv, k)).collect()
    } else {
        let mut cols = out_map.to_vec();
        let mut src = mid.to_vec();
        for r in out_rels.iter().filter(|r| !r.is_zero()) {
            src.push(r.degree(out_target).expect("homogeneous relation"));
            cols.push(r.clone());
        }
        let s = mid.len();
        kernel_generators(ring.field(), nv, out_target, &cols, &src)?
            .iter()
            .map(|v| v.remap(|k| if k < s { Some(k) } else { None }))
            .filter(|v| !v.is_zero())
            .collect()
    };
    subquotient(ring, mid, &cycles, bounds)
}

/// `M ⊗ N`; generator `(k, l)` sits at index `k * rank(N) + l`.
pub fn tensor_module(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring();
    let (ta, tb) = (m.generators().twists(), n.generators().twists());
    let rb = tb.len();
    let twists: Vec<i32> = ta
        .iter()
        .flat_map(|a| tb.iter().map(move |b| a + b))
        .collect();
    let mut cols = Vec::new();
    for c in m.columns() {
        for l in 0..rb {
            cols.push(kron_left(c, l, rb));
        }
    }
    for k in 0..ta.len() {
        for c in n.columns() {
            cols.push(kron_right(k, c, rb));
        }
    }
    Ok(PresentedModule::from_columns_unchecked(
        FreeModule::new(ring, twists),
        cols,
    ))
}

/// `M_1 ⊕ ... ⊕ M_r`.
pub fn direct_sum(parts: &[PresentedModule]) -> Result<PresentedModule> {
    let ring = parts
        .first()
        .map(|p| p.ring())
        .ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
    let mut twists = Vec::new();
    let mut cols = Vec::new();
    for p in parts {
        if p.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let off = twists.len();
        twists.extend_from_slice(p.generators().twists());
        cols.extend(p.columns().iter().map(|c| c.remap(|k| Some(k + off))));
    }
    Ok(PresentedModule::from_columns_unchecked(
        FreeModule::new(ring, twists),
        cols,
    ))
}

/// `Ext^j(M, S(a))` from a minimal resolution of `M`.
pub fn ext_from_resolution(res: &Resolution, j: usize, a: i32) -> Result<PresentedModule> {
    let ring = res.ring();
    let fj = res.free_module(j);
    if fj.is_zero() {
        return Ok(PresentedModule::free(FreeModule::zero(ring)));
    }
    let mid = fj.dual(a);
    let next = res.free_module(j + 1);
    let out_target = next.dual(a);
    let out_map = match res.map(j + 1) {
        Some(d) => transpose(ring, d.columns(), fj.rank()),
        None => Vec::new(),
    };
    let bounds = match res.map(j) {
        Some(d) => transpose(ring, d.columns(), d.target().rank()),
        None => Vec::new(),
    };
    homology(
        ring,
        mid.twists(),
        out_target.twists(),
        &out_map,
        &[],
        &bounds,
    )
}

pub fn ext_module(m: &PresentedModule, j: usize, a: i32) -> Result<PresentedModule> {
    let nv = m.ring().nvars();
    if j > nv {
        return Err(Error::OutOfRange {
            value: j as i64,
            range: format!("[0, {nv}]"),
        });
    }
    ext_from_resolution(&min_free_resolution(m)?, j, a)
}

/// `Hom_S(A, B)`.
pub fn hom_module(a: &PresentedModule, b: &PresentedModule) -> Result<PresentedModule> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    let ta = a.generators().twists();
    let sa = a.relation_twists();
    let tb = b.generators().twists();
    let rb = tb.len();
    let mid: Vec<i32> = ta
        .iter()
        .flat_map(|x| tb.iter().map(move |y| y - x))
        .collect();
    let out_target: Vec<i32> = sa
        .iter()
        .flat_map(|x| tb.iter().map(move |y| y - x))
        .collect();
    let at = transpose(ring, a.columns(), ta.len());
    let mut out_map = Vec::with_capacity(mid.len());
    for row in &at {
        for l in 0..rb {
            out_map.push(kron_left(row, l, rb));
        }
    }
    let mut out_rels = Vec::new();
    for j in 0..sa.len() {
        for c in b.columns() {
            out_rels.push(kron_right(j, c, rb));
        }
    }
    let mut bounds = Vec::new();
    for k in 0..ta.len() {
        for c in b.columns() {
            bounds.push(kron_right(k, c, rb));
        }
    }
    homology(ring, &mid, &out_target, &out_map, &out_rels, &bounds)
}

/// `Hom_S(M, S)`.
pub fn dual(m: &PresentedModule) -> Result<PresentedModule> {
    hom_module(m, &PresentedModule::line_bundle(m.ring(), 0))
}

/// A bounded complex `E_0 <- E_1 <- ...` of presented modules; `maps[j-1]`
/// lifts `E_j -> E_{j-1}` to generators.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    terms: Vec<PresentedModule>,
    maps: Vec<GradedMap>,
}

impl ModuleComplex {
    pub fn new(terms: Vec<PresentedModule>, maps: Vec<GradedMap>) -> Result<Self> {
        if terms.is_empty() || maps.len() + 1 != terms.len() {
            return Err(Error::LengthMismatch(maps.len() + 1, terms.len()));
        }
        for (j, d) in maps.iter().enumerate() {
            if d.source() != terms[j + 1].generators() || d.target() != terms[j].generators() {
                return Err(Error::Precondition(format!(
                    "map {} has mismatched ends",
                    j + 1
                )));
            }
        }
        Ok(ModuleComplex { terms, maps })
    }

    /// The complex of free modules underlying a list of composable maps.
    pub fn from_free_maps(maps: Vec<GradedMap>) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Precondition("empty complex".into()))?;
        let mut terms = vec![PresentedModule::free(first.target().clone())];
        for d in &maps {
            terms.push(PresentedModule::free(d.source().clone()));
        }
        Self::new(terms, maps)
    }

    pub fn from_resolution(res: &Resolution) -> Self {
        let terms = res
            .modules()
            .iter()
            .map(|f| PresentedModule::free(f.clone()))
            .collect();
        ModuleComplex {
            terms,
            maps: res.maps().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn term(&self, j: usize) -> Option<&PresentedModule> {
        self.terms.get(j)
    }

    /// `E_• ⊗ N`.
    pub fn tensor(&self, n: &PresentedModule) -> Result<ModuleComplex> {
        let terms = self
            .terms
            .iter()
            .map(|t| tensor_module(t, n))
            .collect::<Result<Vec<_>>>()?;
        let rb = n.generators().rank();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let mut cols = Vec::new();
                for c in d.columns() {
                    for l in 0..rb {
                        cols.push(kron_left(c, l, rb));
                    }
                }
                GradedMap::from_parts(
                    terms[j + 1].generators().clone(),
                    terms[j].generators().clone(),
                    cols,
                )
            })
            .collect();
        Ok(ModuleComplex { terms, maps })
    }

    /// `H_j` of the complex.
    pub fn homology(&self, j: usize) -> Result<PresentedModule> {
        let ring = self.terms[0].ring();
        let Some(ej) = self.terms.get(j) else {
            return Ok(PresentedModule::free(FreeModule::zero(ring)));
        };
        let mid = ej.generators().twists();
        let (out_target, out_map, out_rels): (&[i32], &[ModVec], &[ModVec]) = if j == 0 {
            (&[], &[], &[])
        } else {
            let prev = &self.terms[j - 1];
            (
                prev.generators().twists(),
                self.maps[j - 1].columns(),
                prev.columns(),
            )
        };
        let mut bounds: Vec<ModVec> = ej.columns().to_vec();
        if let Some(d) = self.maps.get(j) {
            bounds.extend(d.columns().iter().cloned());
        }
        homology(ring, mid, out_target, out_map, out_rels, &bounds)
    }
}

/// `Tor_i(M, N)`, from a minimal resolution of `M` tensored with `N`.
pub fn tor_module(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let res = min_free_resolution(m)?;
    if i > res.length() {
        return Ok(PresentedModule::free(FreeModule::zero(m.ring())));
    }
    ModuleComplex::from_resolution(&res).tensor(n)?.homology(i)
}

/// Graded dimensions of `Tor_i(M, N)` over `[lo, hi]` plus its support dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorDims {
    pub dims: BTreeMap<i64, i64>,
    pub support_dim: i64,
}

pub fn tor_dims(
    m: &PresentedModule,
    n: &PresentedModule,
    i: usize,
    window: (i64, i64),
) -> Result<TorDims> {
    let t = tor_module(m, n, i)?;
    let hs = HilbertSeries::of_module(&t)?;
    let dims = (window.0..=window.1).map(|d| (d, hs.value(d))).collect();
    Ok(TorDims {
        dims,
        support_dim: support_dim(&t)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Polynomial};

    fn ring(n: usize) -> GradedRing {
        GradedRing::new(5, n).unwrap()
    }

    fn q(r: GradedRing, gens: &[&str]) -> PresentedModule {
        let names = r.default_names();
        let g: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect();
        PresentedModule::quotient_ring(r, &g).unwrap()
    }

    fn values(m: &PresentedModule, lo: i64, hi: i64) -> Vec<i64> {
        let hs = HilbertSeries::of_module(m).unwrap();
        (lo..=hi).map(|d| hs.value(d)).collect()
    }

    #[test]
    fn tensor_of_lines_is_a_point() {
        let r = ring(3);
        let t = tensor_module(&q(r, &["x"]), &q(r, &["y"])).unwrap();
        assert_eq!(values(&t, -1, 5), values(&q(r, &["x", "y"]), -1, 5));
        let t = tensor_module(
            &PresentedModule::line_bundle(r, 2),
            &PresentedModule::line_bundle(r, -5),
        )
        .unwrap();
        assert_eq!(t.generators().twists(), &[3]);
    }

    #[test]
    fn ext_examples() {
        let r = ring(3);
        let e = ext_module(&q(r, &["x", "y", "z"]), 3, 0).unwrap();
        assert_eq!(values(&e, -5, 2), vec![0, 0, 1, 0, 0, 0, 0, 0]);
        let e = ext_module(&PresentedModule::line_bundle(r, -2), 0, 0).unwrap();
        assert_eq!(e.generators().twists(), &[-2]);
        let e = ext_module(&q(r, &["x"]), 1, 0).unwrap();
        let want: Vec<i64> = (-4..=4).map(|d| if d >= -1 { d + 2 } else { 0 }).collect();
        assert_eq!(values(&e, -4, 4), want);
    }

    #[test]
    fn ext_twist_shifts_degrees() {
        let r = ring(3);
        let m = q(r, &["x*y", "x*z", "y*z"]);
        for j in 0..=3 {
            let e0 = HilbertSeries::of_module(&ext_module(&m, j, 0).unwrap()).unwrap();
            let e2 = HilbertSeries::of_module(&ext_module(&m, j, 2).unwrap()).unwrap();
            for d in -6..6 {
                assert_eq!(e2.value(d), e0.value(d + 2));
            }
        }
    }

    #[test]
    fn tor_examples() {
        let r = ring(3);
        let lx = q(r, &["x"]);
        let t = tor_dims(&lx, &lx, 1, (-1, 4)).unwrap();
        let want: Vec<i64> = (-1..=4).map(|d| if d >= 1 { d } else { 0 }).collect();
        assert_eq!(t.dims.values().copied().collect::<Vec<_>>(), want);
        assert_eq!(t.support_dim, 1);
        let t = tor_dims(&lx, &q(r, &["y"]), 1, (-1, 4)).unwrap();
        assert!(t.dims.values().all(|&v| v == 0));
        let t0 = tor_dims(&lx, &q(r, &["y"]), 0, (-1, 4)).unwrap();
        let tensor = tensor_module(&lx, &q(r, &["y"])).unwrap();
        assert_eq!(
            t0.dims.values().copied().collect::<Vec<_>>(),
            values(&tensor, -1, 4)
        );
    }

    #[test]
    fn hom_into_free_dualizes_twists() {
        let r = ring(3);
        let m = direct_sum(&[
            PresentedModule::line_bundle(r, 1),
            PresentedModule::line_bundle(r, -3),
        ])
        .unwrap();
        let d = dual(&m).unwrap();
        let mut t = d.generators().twists().to_vec();
        t.sort();
        assert_eq!(t, vec![-3, 1]);
    }

    #[test]
    fn homology_of_koszul_complex_is_the_residue_field() {
        let r = ring(3);
        let res = min_free_resolution(&q(r, &["x", "y", "z"])).unwrap();
        let c = ModuleComplex::from_resolution(&res);
        assert_eq!(values(&c.homology(0).unwrap(), -1, 3), vec![0, 1, 0, 0, 0]);
        for j in 1..=3 {
            assert!(c.homology(j).unwrap().generators().is_zero());
        }
    }
}
