//! Linear resolutions of `m`-regular sheaves, built from global sections.

use crate::error::{Error, Result};
use crate::groebner::buchberger::module_groebner;
use crate::groebner::saturate::saturate_from;
use crate::groebner::vector::{ModVec, Term};
use crate::poly::monomials_of_degree;
use crate::resolve::derived::subquotient;
use crate::resolve::free::{FreeModule, GradedMap, PresentedModule};
use crate::resolve::minimal::{min_free_resolution, Resolution};
use crate::sheafcoh::Sheaf;

/// A resolution `F_0 <- F_1 <- ... <- F_N` with `F_i` a sum of `S(-m-i)`,
/// resolving the sections of `M~` in degrees `>= m`.
#[derive(Clone, Debug)]
pub struct LinearResolution {
    pub resolution: Resolution,
    pub m: i64,
    /// The sheaf has no sections in degree `m`, so every term is zero.
    pub degenerate: bool,
}

/// The submodule generated by `Γ(M~(m))` inside a saturation of `M`.
fn sections_in_degree(m: &PresentedModule, deg: i64) -> Result<PresentedModule> {
    let ring = m.ring();
    let sat = saturate_from(m, deg)?.module;
    let twists = sat.generators().twists().to_vec();
    let gb = module_groebner(ring.field(), &twists, sat.columns())?;
    let mut gens = Vec::new();
    for (k, &t) in twists.iter().enumerate() {
        let e = deg - t as i64;
        if e < 0 {
            continue;
        }
        for mon in monomials_of_degree(ring.nvars(), e as u32) {
            let term = Term {
                comp: k as u32,
                mon,
            };
            if !gb.lead_divides(&term) {
                gens.push(ModVec::from_sorted(vec![(term, 1)]));
            }
        }
    }
    subquotient(ring, &twists, &gens, sat.columns())
}

/// Linear resolution of the sections from degree `m` on: requires `reg^0(M~) <= m` and returns the
/// first `len + 1` terms.
pub fn linear_resolution(m: &PresentedModule, reg: i64, len: usize) -> Result<LinearResolution> {
    let ring = m.ring();
    let n = ring.projective_dim();
    let sheaf = Sheaf::new(m)?;
    for i in 1..=n {
        let d = reg - i as i64;
        let h = sheaf.h(i, d)?;
        if h != 0 {
            return Err(Error::Precondition(format!(
                "not {reg}-regular: H^{i}(M~({d})) has dimension {h}"
            )));
        }
    }
    let u = sections_in_degree(m, reg)?;
    let full = min_free_resolution(&u)?;
    for (i, f) in full.modules().iter().enumerate() {
        let want = reg + i as i64;
        if let Some(&t) = f.twists().iter().find(|&&t| t as i64 != want) {
            return Err(Error::Internal(format!(
                "term {i} has a generator in degree {t}, expected {want}"
            )));
        }
    }
    let maps: Vec<GradedMap> = full.maps().iter().take(len).cloned().collect();
    let f0 = if u.generators().is_zero() {
        FreeModule::zero(ring)
    } else {
        full.free_module(0)
    };
    Ok(LinearResolution {
        resolution: Resolution::from_maps(ring, f0, maps)?,
        m: reg,
        degenerate: u.generators().is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::hilbert::HilbertSeries;
    use crate::poly::{parse_polynomial, GradedRing, Polynomial};

    fn q(r: GradedRing, gens: &[&str]) -> PresentedModule {
        let names = r.default_names();
        let g: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect();
        PresentedModule::quotient_ring(r, &g).unwrap()
    }

    #[test]
    fn structure_sheaf_is_its_own_resolution() {
        let r = GradedRing::new(3, 3).unwrap();
        let lr = linear_resolution(&PresentedModule::line_bundle(r, 0), 0, 2).unwrap();
        assert!(!lr.degenerate);
        assert_eq!(lr.resolution.length(), 0);
        assert_eq!(lr.resolution.free_module(0).twists(), &[0]);
    }

    #[test]
    fn negative_line_bundle_at_its_regularity() {
        let r = GradedRing::new(3, 3).unwrap();
        let lr = linear_resolution(&PresentedModule::line_bundle(r, -1), 1, 1).unwrap();
        assert_eq!(lr.resolution.free_module(0).twists(), &[1]);
        assert_eq!(lr.resolution.length(), 0);
    }

    #[test]
    fn finite_length_module_is_degenerate() {
        let r = GradedRing::new(3, 3).unwrap();
        let lr = linear_resolution(&q(r, &["x", "y", "z"]), 1, 2).unwrap();
        assert!(lr.degenerate);
        assert!(lr.resolution.free_module(0).is_zero());
    }

    #[test]
    fn point_ideal_resolves_linearly() {
        let r = GradedRing::new(3, 3).unwrap();
        // (x, y) is 1-regular; its resolution 0 <- S(-1)^2 <- S(-2) is linear.
        let names = r.default_names();
        let x = parse_polynomial(r, &names, "x").unwrap();
        let y = parse_polynomial(r, &names, "y").unwrap();
        let col = ModVec::from_entries(&[y, -&x]);
        let ip = PresentedModule::from_columns(FreeModule::new(r, vec![1, 1]), vec![col]).unwrap();
        let lr = linear_resolution(&ip, 1, 3).unwrap();
        let res = &lr.resolution;
        res.check_complex().unwrap();
        assert_eq!(res.free_module(0).twists(), &[1, 1]);
        assert_eq!(res.free_module(1).twists(), &[2]);
        let hs = HilbertSeries::of_module(&ip).unwrap();
        for d in 1..8 {
            assert_eq!(res.euler_dim(d), hs.value(d));
        }
    }

    #[test]
    fn irregular_twist_names_the_group() {
        let r = GradedRing::new(3, 3).unwrap();
        let err = linear_resolution(&PresentedModule::line_bundle(r, -3), 1, 1).unwrap_err();
        assert!(err.to_string().contains("H^2(M~(-1))"), "{err}");
    }

    #[test]
    fn higher_twist_of_the_plane_resolves_with_koszul_shape() {
        let r = GradedRing::new(3, 3).unwrap();
        // Sections of O in degrees >= 1 are the irrelevant ideal.
        let lr = linear_resolution(&PresentedModule::line_bundle(r, 0), 1, 3).unwrap();
        let ranks: Vec<usize> = lr.resolution.modules().iter().map(|f| f.rank()).collect();
        assert_eq!(ranks, vec![3, 3, 1]);
    }
}
