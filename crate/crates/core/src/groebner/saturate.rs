//! Saturation with respect to the irrelevant ideal `m = (x_0, ..., x_n)`.

use crate::error::{Error, Result};
use crate::groebner::buchberger::module_groebner;
use crate::groebner::hilbert::HilbertSeries;
use crate::groebner::syzygy::kernel_generators;
use crate::groebner::vector::{ModVec, Term};
use crate::poly::{GradedRing, Monomial, Polynomial};
use crate::resolve::{
    hom_module, min_free_resolution, minimal_presentation, FreeModule, PresentedModule,
};

const MAX_ROUNDS: usize = 256;

/// A module agreeing with `Γ_*(M~)` in every degree `>= bound`.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub module: PresentedModule,
    pub bound: i64,
}

/// `m` as a module: generators `x_i` in degree 1 with Koszul relations.
pub fn irrelevant_ideal(ring: GradedRing) -> PresentedModule {
    let nv = ring.nvars();
    let mut cols = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            let mut e = vec![Polynomial::zero(ring); nv];
            e[i] = Polynomial::var(ring, j);
            e[j] = -&Polynomial::var(ring, i);
            cols.push(ModVec::from_entries(&e));
        }
    }
    PresentedModule::from_columns_unchecked(FreeModule::new(ring, vec![1; nv]), cols)
}

/// Generators of `K : m` for the relation submodule `K` of `M`.
fn colon_by_irrelevant(m: &PresentedModule) -> Result<Vec<ModVec>> {
    let ring = m.ring();
    let nv = ring.nvars();
    let t = m.generators().twists();
    let r = t.len();
    let target: Vec<i32> = (0..nv).flat_map(|_| t.iter().map(|x| x - 1)).collect();
    let mut cols = Vec::new();
    let mut src = Vec::new();
    for (k, &tk) in t.iter().enumerate() {
        let terms: Vec<(Term, u32)> = (0..nv)
            .map(|i| {
                (
                    Term {
                        comp: (i * r + k) as u32,
                        mon: Monomial::var(nv, i),
                    },
                    1,
                )
            })
            .collect();
        cols.push(ModVec::from_unsorted(ring.field(), terms));
        src.push(tk);
    }
    for i in 0..nv {
        for (c, &s) in m.columns().iter().zip(m.relation_twists()) {
            cols.push(c.remap(|k| Some(i * r + k)));
            src.push(s - 1);
        }
    }
    let syz = kernel_generators(ring.field(), nv, &target, &cols, &src)?;
    Ok(syz
        .iter()
        .map(|v| v.remap(|k| if k < r { Some(k) } else { None }))
        .filter(|v| !v.is_zero())
        .collect())
}

/// `M / H^0_m(M)`, by iterating `K ↦ K : m` until it stops growing.
pub fn remove_torsion(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    let mut cur = minimal_presentation(m)?;
    for _ in 0..MAX_ROUNDS {
        if cur.generators().is_zero() {
            return Ok(cur);
        }
        let gb = module_groebner(ring.field(), cur.generators().twists(), cur.columns())?;
        let new: Vec<ModVec> = colon_by_irrelevant(&cur)?
            .into_iter()
            .filter(|v| !gb.contains(v))
            .collect();
        if new.is_empty() {
            return Ok(cur);
        }
        let mut cols = cur.columns().to_vec();
        cols.extend(new);
        cur = minimal_presentation(&PresentedModule::from_columns_unchecked(
            cur.generators().clone(),
            cols,
        ))?;
    }
    Err(Error::Internal("torsion removal did not stabilize".into()))
}

/// A module equal to `Γ_*(M~)` in degrees `>= lo` (and contained in it).
pub fn saturate_from(m: &PresentedModule, lo: i64) -> Result<Saturation> {
    let ring = m.ring();
    let n = ring.projective_dim();
    let mut cur = remove_torsion(m)?;
    if cur.generators().is_zero() {
        return Ok(Saturation {
            module: cur,
            bound: lo,
        });
    }
    // Depth >= 2 means the module already equals its saturation.
    let pd = min_free_resolution(&cur)?.length();
    if pd < n {
        return Ok(Saturation {
            module: cur,
            bound: i64::MIN,
        });
    }
    let mm = irrelevant_ideal(ring);
    let mut hs = HilbertSeries::of_module(&cur)?;
    for _ in 0..MAX_ROUNDS {
        let next = hom_module(&mm, &cur)?;
        let hn = HilbertSeries::of_module(&next)?;
        if hn.sub(&hs).vanishes_from(lo) {
            let mut module = cur;
            if let Some(name) = m.name() {
                module = module.with_name(name);
            }
            return Ok(Saturation { module, bound: lo });
        }
        cur = next;
        hs = hn;
    }
    Err(Error::Internal("saturation did not stabilize".into()))
}

/// Saturation reported from the lowest generator degree of `M` upward.
pub fn saturate(m: &PresentedModule) -> Result<Saturation> {
    let lo = m.generators().twists().iter().copied().min().unwrap_or(0) as i64;
    saturate_from(m, lo)
}

/// `I : m^∞` for a homogeneous ideal.
pub fn saturate_ideal(ring: GradedRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let q = PresentedModule::quotient_ring(ring, gens)?;
    let t = remove_torsion(&q)?;
    if t.generators().is_zero() {
        return Ok(vec![Polynomial::constant(ring, 1)]);
    }
    let gb = module_groebner(ring.field(), t.generators().twists(), t.columns())?;
    Ok(gb.basis().map(|v| v.entry(ring, 0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn polys(r: GradedRing, src: &[&str]) -> Vec<Polynomial> {
        let names = r.default_names();
        src.iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect()
    }

    fn values(m: &PresentedModule, lo: i64, hi: i64) -> Vec<i64> {
        let hs = HilbertSeries::of_module(m).unwrap();
        (lo..=hi).map(|d| hs.value(d)).collect()
    }

    #[test]
    fn embedded_point_is_removed() {
        let r = GradedRing::new(5, 3).unwrap();
        let sat = saturate_ideal(r, &polys(r, &["x^2", "x*y", "x*z"])).unwrap();
        assert_eq!(sat, polys(r, &["x"]));
        let m = PresentedModule::quotient_ring(r, &polys(r, &["x^2", "x*y", "x*z"])).unwrap();
        let s = saturate(&m).unwrap().module;
        let line = PresentedModule::quotient_ring(r, &polys(r, &["x"])).unwrap();
        assert_eq!(values(&s, -2, 8), values(&line, -2, 8));
    }

    #[test]
    fn point_ideal_is_saturated() {
        let r = GradedRing::new(5, 3).unwrap();
        assert_eq!(
            saturate_ideal(r, &polys(r, &["x", "y"])).unwrap(),
            polys(r, &["x", "y"])
        );
    }

    #[test]
    fn irrelevant_ideal_saturates_to_structure_sheaf() {
        let r = GradedRing::new(3, 3).unwrap();
        let mm = irrelevant_ideal(r);
        let s = saturate_from(&mm, 0).unwrap().module;
        let want = values(&PresentedModule::line_bundle(r, 0), 0, 6);
        assert_eq!(values(&s, 0, 6), want);
    }

    #[test]
    fn saturation_is_idempotent() {
        let r = GradedRing::new(3, 3).unwrap();
        let m = PresentedModule::quotient_ring(r, &polys(r, &["x^2", "x*y"])).unwrap();
        let s1 = saturate_from(&m, -1).unwrap().module;
        let s2 = saturate_from(&s1, -1).unwrap().module;
        assert_eq!(values(&s1, -1, 8), values(&s2, -1, 8));
        assert_eq!(s1.generators().twists(), s2.generators().twists());
        assert_eq!(s1.relation_twists(), s2.relation_twists());
    }
}
