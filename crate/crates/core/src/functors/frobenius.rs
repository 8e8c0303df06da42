//! Frobenius pullback and pushforward on `P^n` over `F_p`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::vector::{ModVec, Term};
use crate::poly::Monomial;
use crate::resolve::{FreeModule, GradedMap, PresentedModule};

/// `F^*M`: twists times `p`, entries raised to the `p`-th power.
pub fn frobenius_pullback(m: &PresentedModule) -> Result<PresentedModule> {
    frobenius_power(m, 1)
}

/// `F^{*k}M`, as a single bracket power by `p^k`.
pub fn frobenius_power(m: &PresentedModule, k: u32) -> Result<PresentedModule> {
    let ring = m.ring();
    let q = (ring.p() as u64)
        .checked_pow(k)
        .filter(|&q| q <= u16::MAX as u64)
        .ok_or_else(|| Error::ExponentOverflow(format!("Frobenius power {k}")))? as i64;
    let scale = |fm: &FreeModule| -> Result<FreeModule> {
        let ts = fm
            .twists()
            .iter()
            .map(|&t| {
                i32::try_from(t as i64 * q).map_err(|_| Error::ExponentOverflow("twist".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeModule::new(ring, ts))
    };
    let mut cols = Vec::with_capacity(m.columns().len());
    for c in m.columns() {
        let mut terms = Vec::with_capacity(c.len());
        for &(t, v) in c.terms() {
            let mon = t
                .mon
                .checked_scale(q as u32)
                .ok_or_else(|| Error::ExponentOverflow(format!("bracket power {q}")))?;
            terms.push((Term { comp: t.comp, mon }, v));
        }
        cols.push(ModVec::from_unsorted(ring.field(), terms));
    }
    let rel = m.relations();
    let map = GradedMap::from_parts(scale(rel.source())?, scale(rel.target())?, cols);
    let mut out = PresentedModule::new(map);
    if let Some(n) = m.name() {
        out = out.with_name(if k == 1 {
            format!("F*{n}")
        } else {
            format!("F*^{k}{n}")
        });
    }
    Ok(out)
}

/// Monomials with every exponent below `p`: a basis of `S` over `S^p`.
fn residues(nv: usize, p: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u16; nv];
    loop {
        out.push(Monomial::from_exponents(&e));
        let mut i = 0;
        loop {
            if i == nv {
                return out;
            }
            e[i] += 1;
            if e[i] < p {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Free `S`-module viewed over `S^p`, keeping only degrees divisible by `p`:
/// basis `x^a e_k` with `|a| + t_k ≡ 0 (mod p)`.
struct Split {
    index: HashMap<(u32, Monomial), u32>,
    twists: Vec<i32>,
    elems: Vec<(u32, Monomial)>,
}

impl Split {
    fn new(twists: &[i32], res: &[Monomial], p: i64) -> Self {
        let mut index = HashMap::new();
        let mut out = Vec::new();
        let mut elems = Vec::new();
        for (k, &t) in twists.iter().enumerate() {
            for &a in res {
                let deg = a.degree() as i64 + t as i64;
                if deg.rem_euclid(p) == 0 {
                    index.insert((k as u32, a), out.len() as u32);
                    out.push((deg / p) as i32);
                    elems.push((k as u32, a));
                }
            }
        }
        Split {
            index,
            twists: out,
            elems,
        }
    }
}

/// `x^c e_k = (x^{c div p})^p x^{c mod p} e_k` in the split basis.
fn split_term(t: &Term, p: u16, split: &Split) -> Term {
    let e = t.mon.exponents();
    let q: Vec<u16> = e.iter().map(|&x| x / p).collect();
    let r: Vec<u16> = e.iter().map(|&x| x % p).collect();
    let comp = split.index[&(t.comp, Monomial::from_exponents(&r))];
    Term {
        comp,
        mon: Monomial::from_exponents(&q),
    }
}

/// `F_*M` with `(F_*M)_e = M_{pe}`: restriction of scalars along `S^p ⊂ S`.
/// Exact because `S` is free over `S^p` on the monomials with exponents
/// below `p`, and taking the degrees divisible by `p` is exact.
pub fn frobenius_pushforward(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    let p = ring.p();
    let pu = u16::try_from(p)
        .map_err(|_| Error::Precondition(format!("p = {p} is too large to push forward")))?;
    let nv = ring.nvars();
    let count = (p as u64).checked_pow(nv as u32).filter(|&c| c <= 1 << 16);
    if count.is_none() {
        return Err(Error::Precondition(format!(
            "p^{nv} residue monomials is too many"
        )));
    }
    let res = residues(nv, pu);
    let target = Split::new(m.generators().twists(), &res, p as i64);
    let source = Split::new(m.relation_twists(), &res, p as i64);
    let f = ring.field();
    let cols: Vec<ModVec> = source
        .elems
        .iter()
        .map(|&(j, b)| {
            let col = &m.columns()[j as usize];
            let terms = col.terms().iter().map(|&(t, c)| {
                let t = Term {
                    comp: t.comp,
                    mon: t.mon.mul(&b),
                };
                (split_term(&t, pu, &target), c)
            });
            ModVec::from_unsorted(f, terms.collect::<Vec<_>>())
        })
        .collect();
    let map = GradedMap::from_parts(
        FreeModule::new(ring, source.twists),
        FreeModule::new(ring, target.twists),
        cols,
    );
    let mut out = PresentedModule::new(map);
    if let Some(n) = m.name() {
        out = out.with_name(format!("F_*{n}"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{line, make_bundle, nlf_locus_dim, BundleCatalog};
    use crate::poly::{parse_polynomial, GradedRing, Polynomial};
    use crate::resolve::direct_sum;
    use crate::sheafcoh::Sheaf;

    fn cells(m: &PresentedModule, lo: i64, hi: i64) -> Vec<Vec<u64>> {
        let s = Sheaf::new(m).unwrap();
        let n = m.ring().projective_dim();
        (lo..=hi)
            .map(|d| (0..=n).map(|i| s.h(i, d).unwrap()).collect())
            .collect()
    }

    #[test]
    fn pullback_of_lines_and_quotients() {
        let ring = GradedRing::projective(3, 2).unwrap();
        assert_eq!(
            frobenius_pullback(&line(ring, 2))
                .unwrap()
                .generators()
                .twists(),
            &[-6]
        );
        let names = ring.default_names();
        let x = parse_polynomial(ring, &names, "x").unwrap();
        let q = PresentedModule::quotient_ring(ring, &[x]).unwrap();
        let fq = frobenius_pullback(&q).unwrap();
        let x3 = parse_polynomial(ring, &names, "x^3").unwrap();
        assert_eq!(fq.columns()[0].entry(ring, 0), x3);
        assert_eq!(fq.relation_twists(), &[3]);
    }

    #[test]
    fn pulled_back_tangent_keeps_its_witness() {
        let ring = GradedRing::projective(2, 2).unwrap();
        let t = make_bundle(BundleCatalog::Tangent, ring);
        for k in 0..3 {
            let s = Sheaf::new(&frobenius_power(&t, k).unwrap()).unwrap();
            assert_eq!(s.h(1, -3).unwrap(), 1, "k = {k}");
        }
    }

    #[test]
    fn lines_pull_back_to_powers() {
        let ring = GradedRing::projective(2, 2).unwrap();
        for d in -2..=2 {
            assert_eq!(
                cells(&frobenius_pullback(&line(ring, d)).unwrap(), -5, 3),
                cells(&line(ring, 2 * d), -5, 3)
            );
        }
    }

    #[test]
    fn overflow_is_reported() {
        let ring = GradedRing::projective(5, 2).unwrap();
        assert!(matches!(
            frobenius_power(&line(ring, 1), 8),
            Err(Error::ExponentOverflow(_))
        ));
    }

    #[test]
    fn pushforward_on_the_line_splits() {
        let ring = GradedRing::projective(2, 1).unwrap();
        let fo = frobenius_pushforward(&line(ring, 0)).unwrap();
        let split = direct_sum(&[line(ring, 0), line(ring, -1)]).unwrap();
        assert_eq!(cells(&fo, -4, 4), cells(&split, -4, 4));
        let fo1 = frobenius_pushforward(&line(ring, 1)).unwrap();
        let two = direct_sum(&[line(ring, 0), line(ring, 0)]).unwrap();
        assert_eq!(cells(&fo1, -4, 4), cells(&two, -4, 4));
    }

    #[test]
    fn projection_formula_on_the_plane() {
        let ring = GradedRing::projective(3, 2).unwrap();
        let t = make_bundle(BundleCatalog::Tangent, ring);
        let names = ring.default_names();
        let g: Polynomial = parse_polynomial(ring, &names, "x*y-z^2").unwrap();
        let conic = PresentedModule::quotient_ring(ring, &[g]).unwrap();
        for m in [t, conic, line(ring, -2)] {
            let fm = frobenius_pushforward(&m).unwrap();
            let a = Sheaf::new(&fm).unwrap();
            let b = Sheaf::new(&m).unwrap();
            for e in -2..=2 {
                for i in 0..=2 {
                    assert_eq!(a.h(i, e).unwrap(), b.h(i, 3 * e).unwrap(), "i={i} e={e}");
                }
            }
        }
    }

    #[test]
    fn pushforward_of_structure_sheaf_has_rank_p_to_the_n() {
        let ring = GradedRing::projective(2, 2).unwrap();
        let fo = frobenius_pushforward(&line(ring, 0)).unwrap();
        let hs = crate::groebner::hilbert::HilbertSeries::of_module(&fo).unwrap();
        // Leading coefficient of the Hilbert polynomial is rank / n!.
        let lead = *hs.hilbert_polynomial().last().unwrap();
        assert_eq!(
            lead * num_rational::Ratio::from_integer(2),
            num_rational::Ratio::from_integer(4)
        );
        assert_eq!(nlf_locus_dim(&fo).unwrap(), -1);
    }
}
