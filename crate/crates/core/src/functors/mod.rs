//! Constructions on sheaves through their module presentations.

pub mod bundles;
pub mod frobenius;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::hilbert::support_dim;
use crate::groebner::saturate::saturate_from;
use crate::groebner::vector::{ModVec, Term};
use crate::poly::{GradedRing, Polynomial};
use crate::resolve::{ext_module, FreeModule, GradedMap, PresentedModule};

pub use bundles::{make_bundle, BundleCatalog};
pub use frobenius::{frobenius_power, frobenius_pullback, frobenius_pushforward};

fn renamed(
    out: PresentedModule,
    m: &PresentedModule,
    suffix: impl FnOnce(&str) -> String,
) -> PresentedModule {
    match m.name() {
        Some(n) => out.with_name(suffix(n)),
        None => out,
    }
}

/// `M(a)`: every generator and relation moves `a` degrees down.
pub fn twist(m: &PresentedModule, a: i32) -> PresentedModule {
    let rel = m.relations();
    let map = GradedMap::from_parts(
        rel.source().twisted(a),
        rel.target().twisted(a),
        rel.columns().to_vec(),
    );
    renamed(PresentedModule::new(map), m, |n| format!("{n}({a})"))
}

/// Exponent vectors of total degree `n` in `r` symbols, lexicographically decreasing.
fn compositions(r: usize, n: usize) -> Vec<Vec<u16>> {
    fn rec(k: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k + 1 == cur.len() {
            cur[k] = left as u16;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[k] = a as u16;
            rec(k + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, n, &mut vec![0; r], &mut out);
    out
}

/// `Sym^n` of a presentation `G -> F -> E -> 0`: generators `Sym^n F`,
/// relations the image of `G ⊗ Sym^{n-1} F`.
pub fn sym_power(e: &PresentedModule, n: usize) -> Result<PresentedModule> {
    let ring = e.ring();
    let t = e.generators().twists();
    let r = t.len();
    if n == 0 {
        return Ok(renamed(PresentedModule::line_bundle(ring, 0), e, |s| {
            format!("Sym^0({s})")
        }));
    }
    let basis = compositions(r, n);
    if u32::try_from(basis.len()).is_err() {
        return Err(Error::Precondition(format!(
            "Sym^{n} of rank {r} is too large"
        )));
    }
    let index: HashMap<&[u16], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let twists: Vec<i32> = basis
        .iter()
        .map(|a| a.iter().zip(t).map(|(&k, &tk)| k as i32 * tk).sum())
        .collect();
    let mut cols = Vec::new();
    let f = ring.field();
    for beta in compositions(r, n - 1) {
        for col in e.columns() {
            let mut key = beta.clone();
            let terms = col.terms().iter().map(|&(term, c)| {
                let k = term.comp as usize;
                key[k] += 1;
                let comp = index[key.as_slice()] as u32;
                key[k] -= 1;
                (
                    Term {
                        comp,
                        mon: term.mon,
                    },
                    c,
                )
            });
            cols.push(ModVec::from_unsorted(f, terms.collect::<Vec<_>>()));
        }
    }
    let out = PresentedModule::from_columns_unchecked(FreeModule::new(ring, twists), cols);
    Ok(renamed(out, e, |s| format!("Sym^{n}({s})")))
}

/// `M ⊗ S/(l)` over the coordinate ring of the hyperplane `l = 0`, obtained
/// by solving `l` for its leading variable.
pub fn restrict_hyperplane(m: &PresentedModule, l: &Polynomial) -> Result<PresentedModule> {
    let ring = m.ring();
    if l.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if l.is_zero() || l.degree() != Some(1) {
        return Err(Error::Precondition(format!(
            "{l} is not a nonzero linear form"
        )));
    }
    let nv = ring.nvars();
    let target = ring.hyperplane()?;
    let f = ring.field();
    let coeff = |i: usize| -> u32 {
        l.terms()
            .iter()
            .find(|(mon, _)| mon.exponent(i) == 1)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    };
    // The degrevlex leading variable of a linear form is its lowest index.
    let v = (0..nv)
        .find(|&i| coeff(i) != 0)
        .expect("nonzero linear form");
    let inv = f.inv(coeff(v));
    let mut images = Vec::with_capacity(nv);
    let mut solved = Polynomial::zero(target);
    for i in 0..nv {
        if i == v {
            continue;
        }
        let j = if i < v { i } else { i - 1 };
        let c = f.neg(f.mul(coeff(i), inv));
        solved = &solved + &Polynomial::var(target, j).scale(c);
    }
    for i in 0..nv {
        images.push(match i.cmp(&v) {
            std::cmp::Ordering::Less => Polynomial::var(target, i),
            std::cmp::Ordering::Equal => solved.clone(),
            std::cmp::Ordering::Greater => Polynomial::var(target, i - 1),
        });
    }
    let rank = m.generators().rank();
    let cols: Vec<ModVec> = m
        .columns()
        .iter()
        .map(|c| {
            let entries: Vec<Polynomial> = (0..rank)
                .map(|k| c.entry(ring, k).substitute(target, &images))
                .collect();
            ModVec::from_entries(&entries)
        })
        .collect();
    let gens = FreeModule::new(target, m.generators().twists().to_vec());
    let out = PresentedModule::from_columns(gens, cols)?;
    Ok(renamed(out, m, |s| format!("{s}|H")))
}

/// Restriction to the last coordinate hyperplane.
pub fn restrict_last(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    restrict_hyperplane(m, &Polynomial::var(ring, ring.nvars() - 1))
}

/// Dimension of the locus where `M~` is not locally free: the largest
/// support of `Ext^j(M, S)~`, `j >= 1`; `-1` when locally free.
pub fn nlf_locus_dim(m: &PresentedModule) -> Result<i64> {
    let nv = m.ring().nvars();
    let mut best = -1;
    for j in 1..=nv {
        best = best.max(support_dim(&ext_module(m, j, 0)?)?);
    }
    Ok(best)
}

/// A module whose sheaf is `coker(H^0(M~) ⊗ O -> M~)`. Starting from a
/// module equal to `Γ_*` in degrees `>= 0`, divide out every generator of
/// non-positive degree; one in negative degree spans the same sheaf as its
/// degree-0 multiples.
pub fn generation_cokernel(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    let sat = saturate_from(m, 0)?.module;
    let twists = sat.generators().twists();
    let mut keep = vec![None; twists.len()];
    let mut kept = Vec::new();
    for (k, &t) in twists.iter().enumerate() {
        if t > 0 {
            keep[k] = Some(kept.len());
            kept.push(t);
        }
    }
    let cols = sat.columns().iter().map(|c| c.remap(|k| keep[k])).collect();
    Ok(PresentedModule::from_columns_unchecked(
        FreeModule::new(ring, kept),
        cols,
    ))
}

/// Whether `H^0(M~) ⊗ O -> M~` is onto.
pub fn globally_generated(m: &PresentedModule) -> Result<bool> {
    Ok(support_dim(&generation_cokernel(m)?)? < 0)
}

/// The standard line bundle `O(d)` with a readable name.
pub fn line(ring: GradedRing, d: i32) -> PresentedModule {
    PresentedModule::line_bundle(ring, d).with_name(format!("O({d})"))
}

/// The ideal `(gens)` as a module, presented by its first syzygies.
pub fn ideal_module(ring: GradedRing, gens: &[Polynomial]) -> Result<PresentedModule> {
    let q = PresentedModule::quotient_ring(ring, gens)?;
    let res = crate::resolve::min_free_resolution(&q)?;
    Ok(match (res.map(1), res.map(2)) {
        (_, Some(d2)) => PresentedModule::new(d2.clone()),
        (Some(d1), None) => PresentedModule::free(d1.source().clone()),
        (None, None) => PresentedModule::free(FreeModule::zero(ring)),
    })
}
