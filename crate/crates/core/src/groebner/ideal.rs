use crate::error::{Error, Result};
use crate::groebner::buchberger::{module_groebner, ModuleGb};
use crate::groebner::vector::ModVec;
use crate::poly::{GradedRing, Polynomial};

/// Reduced Groebner basis of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: GradedRing,
    generators: Vec<Polynomial>,
    source: Vec<Polynomial>,
    inner: ModuleGb,
}

impl GroebnerBasis {
    pub fn ring(&self) -> GradedRing {
        self.ring
    }

    /// Basis elements, monic, in deterministic insertion order.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The generators the basis was computed from.
    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn module_basis(&self) -> &ModuleGb {
        &self.inner
    }

    /// Positions in `source` of a minimal generating subset.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let mut m = self.inner.minimal.clone();
        m.sort_unstable();
        m
    }
}

/// Buchberger's algorithm on homogeneous generators of one ring.
pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let ring = gens
        .first()
        .map(|g| g.ring())
        .ok_or_else(|| Error::Precondition("no generators given".into()))?;
    buchberger_in(ring, gens)
}

/// Like [`buchberger`], allowing an empty generator list.
pub fn buchberger_in(ring: GradedRing, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut vs = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        vs.push(ModVec::from_poly(0, g));
    }
    let inner = module_groebner(ring.field(), &[0], &vs)?;
    let generators = inner.basis().map(|v| v.entry(ring, 0)).collect();
    Ok(GroebnerBasis {
        ring,
        generators,
        source: gens.to_vec(),
        inner,
    })
}

/// Remainder of `f` on division by the basis: no term is divisible by a
/// leading term, and `f - NF(f)` lies in the ideal.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring() != basis.ring {
        return Err(Error::RingMismatch);
    }
    let r = basis.inner.normal_form(&ModVec::from_poly(0, f));
    Ok(r.entry(basis.ring, 0))
}
