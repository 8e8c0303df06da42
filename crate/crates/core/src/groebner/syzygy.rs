use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::buchberger::module_groebner;
use crate::groebner::ideal::GroebnerBasis;
use crate::groebner::vector::{ModVec, Term};
use crate::poly::{GradedRing, Monomial};
use crate::resolve::{FreeModule, PresentedModule};

/// All syzygies of `columns` (a generating set of the kernel, not minimal).
///
/// Computed by elimination: a basis of the module generated by
/// `(columns[j], e_j)` in `F ⊕ S^r` under position over term, keeping the
/// elements whose `F` part vanishes.
pub fn kernel_generators(
    f: Fp,
    nvars: usize,
    target_twists: &[i32],
    columns: &[ModVec],
    source_twists: &[i32],
) -> Result<Vec<ModVec>> {
    if columns.len() != source_twists.len() {
        return Err(Error::LengthMismatch(columns.len(), source_twists.len()));
    }
    let m = target_twists.len();
    let mut ambient = target_twists.to_vec();
    ambient.extend_from_slice(source_twists);
    let one = Monomial::one(nvars);
    let gens: Vec<ModVec> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            debug_assert!(c.is_zero() || c.degree(target_twists) == Some(source_twists[j]));
            let mut terms = c.terms().to_vec();
            terms.push((
                Term {
                    comp: (m + j) as u32,
                    mon: one,
                },
                1,
            ));
            ModVec::from_sorted(terms)
        })
        .collect();
    let gb = module_groebner(f, &ambient, &gens)?;
    Ok(gb
        .basis()
        .filter(|v| v.lead().unwrap().0.comp as usize >= m)
        .map(|v| v.remap(|k| Some(k - m)))
        .collect())
}

/// Minimal generators of the kernel of `e_j ↦ columns[j]`.
pub fn kernel(
    f: Fp,
    nvars: usize,
    target_twists: &[i32],
    columns: &[ModVec],
    source_twists: &[i32],
) -> Result<Vec<ModVec>> {
    let syz = kernel_generators(f, nvars, target_twists, columns, source_twists)?;
    minimal_subset(f, source_twists, syz)
}

/// A minimal generating subset of homogeneous vectors.
pub fn minimal_subset(f: Fp, twists: &[i32], vs: Vec<ModVec>) -> Result<Vec<ModVec>> {
    if vs.is_empty() {
        return Ok(vs);
    }
    let gb = module_groebner(f, twists, &vs)?;
    let mut keep = gb.minimal.clone();
    keep.sort_unstable();
    Ok(keep.into_iter().map(|i| vs[i].clone()).collect())
}

/// The first syzygy module of an ordered list of ideal generators.
#[derive(Clone, Debug)]
pub struct Syzygies {
    /// Generator degrees, i.e. the twists of the free module the columns live in.
    pub ambient: FreeModule,
    /// Minimal syzygy columns.
    pub columns: Vec<ModVec>,
    /// The syzygy module presented by its own syzygies.
    pub module: PresentedModule,
}

/// Syzygies of the generators of `basis.source()` (in their given order),
/// each verified to vanish when applied to the generators.
pub fn syzygies(basis: &GroebnerBasis) -> Result<Syzygies> {
    let ring: GradedRing = basis.ring();
    let f = ring.field();
    let gens = basis.source();
    let degrees: Vec<i32> = gens
        .iter()
        .map(|g| g.degree().map(|d| d as i32).unwrap_or(0))
        .collect();
    let cols: Vec<ModVec> = gens.iter().map(|g| ModVec::from_poly(0, g)).collect();
    let columns = kernel(f, ring.nvars(), &[0], &cols, &degrees)?;
    for (j, s) in columns.iter().enumerate() {
        let mut acc = crate::poly::Polynomial::zero(ring);
        for k in s.support() {
            acc = &acc + &(&s.entry(ring, k) * &gens[k]);
        }
        if !acc.is_zero() {
            return Err(Error::Internal(format!("syzygy {j} does not vanish")));
        }
    }
    let ambient = FreeModule::new(ring, degrees.clone());
    let syz_twists: Vec<i32> = columns
        .iter()
        .map(|c| c.degree(&degrees).unwrap())
        .collect();
    let second = kernel(f, ring.nvars(), &degrees, &columns, &syz_twists)?;
    let module = PresentedModule::from_columns(FreeModule::new(ring, syz_twists), second)?;
    Ok(Syzygies {
        ambient,
        columns,
        module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal::buchberger;
    use crate::poly::{parse_polynomial, Polynomial};

    fn polys(r: GradedRing, src: &[&str]) -> Vec<Polynomial> {
        let names = r.default_names();
        src.iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect()
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = GradedRing::new(7, 2).unwrap();
        let gb = buchberger(&polys(r, &["x", "y"])).unwrap();
        let s = syzygies(&gb).unwrap();
        assert_eq!(s.columns.len(), 1);
        assert_eq!(s.columns[0].degree(&[1, 1]), Some(2));
        let want = ModVec::from_entries(&polys(r, &["y", "-x"]));
        let got = &s.columns[0];
        // Up to a unit.
        let c = got.lead().unwrap().1;
        assert_eq!(want.scale(r.field(), c), *got);
        assert!(s.module.is_free());
    }

    #[test]
    fn three_coordinate_points() {
        let r = GradedRing::new(3, 3).unwrap();
        let gb = buchberger(&polys(r, &["x*y", "x*z", "y*z"])).unwrap();
        let s = syzygies(&gb).unwrap();
        assert_eq!(s.columns.len(), 2);
        assert!(s.columns.iter().all(|c| c.degree(&[2, 2, 2]) == Some(3)));
    }

    #[test]
    fn single_generator_has_no_syzygies() {
        let r = GradedRing::new(2, 3).unwrap();
        let gb = buchberger(&polys(r, &["x^2+y*z"])).unwrap();
        assert!(syzygies(&gb).unwrap().columns.is_empty());
    }
}
