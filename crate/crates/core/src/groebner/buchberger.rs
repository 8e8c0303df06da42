//! Homogeneous Buchberger for submodules of graded free modules.
//!
//! Pairs are processed degree by degree (normal selection strategy), ties by
//! pair index, with the Gebauer-Moeller update. Within one degree all S-pairs
//! are reduced before the input generators, so an input generator with a
//! nonzero normal form is a minimal generator.

use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::vector::{ModVec, Term};
use crate::poly::Monomial;

#[inline]
fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e >= 1 {
            mask |= 1 << (3 * i);
        }
        if e >= 2 {
            mask |= 1 << (3 * i + 1);
        }
        if e >= 4 {
            mask |= 1 << (3 * i + 2);
        }
    }
    mask
}

#[derive(Clone, Debug)]
struct Elem {
    v: ModVec,
    lead: Term,
    mask: u32,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    deg: i32,
    lcm: Monomial,
    i: u32,
    j: u32,
}

/// A reduced Groebner basis of a graded submodule, with leading
/// coefficients 1, in insertion order.
#[derive(Clone, Debug)]
pub struct ModuleGb {
    f: Fp,
    twists: Vec<i32>,
    elems: Vec<Elem>,
    by_comp: Vec<Vec<usize>>,
    /// Indices of the input generators forming a minimal generating set.
    pub minimal: Vec<usize>,
}

impl ModuleGb {
    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = &ModVec> + '_ {
        self.elems.iter().map(|e| &e.v)
    }

    pub fn element(&self, i: usize) -> &ModVec {
        &self.elems[i].v
    }

    /// Leading monomials of each component.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.twists.len()];
        for e in &self.elems {
            out[e.lead.comp as usize].push(e.lead.mon);
        }
        out
    }

    /// Full normal form of `v`.
    pub fn normal_form(&self, v: &ModVec) -> ModVec {
        reduce(self.f, &self.elems, &self.by_comp, v, None)
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.normal_form(v).is_zero()
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        find_reducer(&self.elems, &self.by_comp, t, None)
    }

    /// True when some basis element's leading term divides `t`.
    pub fn lead_divides(&self, t: &Term) -> bool {
        self.find_reducer(t).is_some()
    }
}

#[inline]
fn find_reducer(
    elems: &[Elem],
    by_comp: &[Vec<usize>],
    t: &Term,
    skip: Option<usize>,
) -> Option<usize> {
    let m = divmask(&t.mon);
    by_comp[t.comp as usize].iter().copied().find(|&i| {
        let e = &elems[i];
        Some(i) != skip && e.mask & !m == 0 && e.lead.mon.divides(&t.mon)
    })
}

fn reduce(
    f: Fp,
    elems: &[Elem],
    by_comp: &[Vec<usize>],
    v: &ModVec,
    skip: Option<usize>,
) -> ModVec {
    if v.is_zero() {
        return ModVec::zero();
    }
    let mut acc: HashMap<Term, u32> = HashMap::with_capacity(v.len() * 2);
    let mut heap: BinaryHeap<Term> = BinaryHeap::with_capacity(v.len() * 2);
    for &(t, c) in v.terms() {
        acc.insert(t, c);
        heap.push(t);
    }
    let mut out = Vec::new();
    while let Some(t) = heap.pop() {
        // Every key enters the heap once: new keys are always smaller than
        // the one being reduced.
        let c = acc.remove(&t).expect("heap and accumulator agree");
        if c == 0 {
            continue;
        }
        match find_reducer(elems, by_comp, &t, skip) {
            Some(i) => {
                let e = &elems[i];
                let q = e.lead.mon.quotient_of(&t.mon);
                let nc = f.neg(c);
                for &(s, a) in &e.v.terms()[1..] {
                    let key = Term {
                        comp: s.comp,
                        mon: s.mon.mul(&q),
                    };
                    let val = f.mul(nc, a);
                    match acc.entry(key) {
                        Entry::Occupied(mut o) => {
                            let x = o.get_mut();
                            *x = f.add(*x, val);
                        }
                        Entry::Vacant(slot) => {
                            slot.insert(val);
                            heap.push(key);
                        }
                    }
                }
            }
            None => out.push((t, c)),
        }
    }
    ModVec::from_sorted(out)
}

fn monic(f: Fp, v: ModVec) -> ModVec {
    let c = v.lead().unwrap().1;
    if c == 1 {
        v
    } else {
        v.scale(f, f.inv(c))
    }
}

struct Builder<'a> {
    f: Fp,
    twists: &'a [i32],
    elems: Vec<Elem>,
    by_comp: Vec<Vec<usize>>,
    pending: Vec<Pair>,
    product_criterion: bool,
}

impl Builder<'_> {
    fn push(&mut self, v: ModVec) {
        let v = monic(self.f, v);
        let lead = v.lead().unwrap().0;
        let h = self.elems.len();
        self.elems.push(Elem {
            mask: divmask(&lead.mon),
            lead,
            v,
        });
        self.update(h);
        self.by_comp[lead.comp as usize].push(h);
    }

    fn update(&mut self, h: usize) {
        let lh = self.elems[h].lead;
        let comp = lh.comp as usize;
        let tw = self.twists[comp];
        let coprime = |g: usize, elems: &[Elem]| elems[g].lead.mon.is_coprime(&lh.mon);
        let cands: Vec<Pair> = self.by_comp[comp]
            .iter()
            .map(|&g| {
                let lcm = self.elems[g].lead.mon.lcm(&lh.mon);
                Pair {
                    deg: lcm.degree() as i32 + tw,
                    lcm,
                    i: g as u32,
                    j: h as u32,
                }
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in cands.iter().enumerate() {
            let cp = self.product_criterion && coprime(p.i as usize, &self.elems);
            let dominated = cands[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if cp || !dominated {
                kept.push(*p);
            }
        }
        if self.product_criterion {
            let elems = &self.elems;
            kept.retain(|p| !coprime(p.i as usize, elems));
        }
        let elems = &self.elems;
        self.pending.retain(|p| {
            if elems[p.i as usize].lead.comp as usize != comp || !lh.mon.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i as usize].lead.mon.lcm(&lh.mon);
            let lj = elems[p.j as usize].lead.mon.lcm(&lh.mon);
            li == p.lcm || lj == p.lcm
        });
        self.pending.extend(kept);
    }

    fn spoly(&self, p: &Pair) -> ModVec {
        let (a, b) = (&self.elems[p.i as usize], &self.elems[p.j as usize]);
        let qa = a.lead.mon.quotient_of(&p.lcm);
        let qb = b.lead.mon.quotient_of(&p.lcm);
        let va = a.v.mul_term(self.f, &qa, 1);
        let vb = b.v.mul_term(self.f, &qb, 1);
        va.sub(self.f, &vb)
    }

    fn reduce(&self, v: &ModVec, skip: Option<usize>) -> ModVec {
        reduce(self.f, &self.elems, &self.by_comp, v, skip)
    }

    /// Reduces the tails of elements `start..` against everything else so the
    /// basis is reduced.
    fn interreduce(&mut self, start: usize) {
        for k in (start..self.elems.len()).rev() {
            let v = &self.elems[k].v;
            let tail = ModVec::from_sorted(v.terms()[1..].to_vec());
            let red = self.reduce(&tail, Some(k));
            if red != tail {
                let mut terms = vec![v.terms()[0]];
                terms.extend_from_slice(red.terms());
                self.elems[k].v = ModVec::from_sorted(terms);
            }
        }
    }
}

/// Groebner basis of the submodule generated by `gens` inside `⊕ S(-twists[k])`.
///
/// Every generator must be homogeneous. Zero generators are ignored and never
/// reported as minimal.
pub fn module_groebner(f: Fp, twists: &[i32], gens: &[ModVec]) -> Result<ModuleGb> {
    let mut order: Vec<(i32, usize)> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if let Some(k) = g.max_comp() {
            if k >= twists.len() {
                return Err(Error::OutOfRange {
                    value: k as i64,
                    range: format!("[0, {})", twists.len()),
                });
            }
        }
        match g.degree(twists) {
            Some(d) => order.push((d, idx)),
            None => {
                return Err(Error::NotHomogeneous(format!(
                    "generator {idx} mixes degrees"
                )))
            }
        }
    }
    order.sort();
    let mut b = Builder {
        f,
        twists,
        elems: Vec::new(),
        by_comp: vec![Vec::new(); twists.len()],
        pending: Vec::new(),
        product_criterion: twists.len() == 1,
    };
    let mut minimal = Vec::new();
    let mut next_gen = 0;
    loop {
        let pair_deg = b.pending.iter().map(|p| p.deg).min();
        let gen_deg = order.get(next_gen).map(|g| g.0);
        let d = match (pair_deg, gen_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(c)) => c,
            (Some(a), Some(c)) => a.min(c),
        };
        let start = b.elems.len();
        let mut batch: Vec<Pair> = Vec::new();
        b.pending.retain(|p| {
            if p.deg == d {
                batch.push(*p);
                false
            } else {
                true
            }
        });
        batch.sort_by_key(|p| (p.i, p.j));
        for p in &batch {
            let s = b.spoly(p);
            let r = b.reduce(&s, None);
            if !r.is_zero() {
                b.push(r);
            }
        }
        while next_gen < order.len() && order[next_gen].0 == d {
            let idx = order[next_gen].1;
            next_gen += 1;
            let r = b.reduce(&gens[idx], None);
            if !r.is_zero() {
                b.push(r);
                minimal.push(idx);
            }
        }
        b.interreduce(start);
    }
    Ok(ModuleGb {
        f,
        twists: twists.to_vec(),
        elems: b.elems,
        by_comp: b.by_comp,
        minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, GradedRing, Polynomial};

    fn polys(r: GradedRing, src: &[&str]) -> Vec<Polynomial> {
        let names = r.default_names();
        src.iter()
            .map(|s| parse_polynomial(r, &names, s).unwrap())
            .collect()
    }

    #[test]
    fn ideal_example_over_f3() {
        let r = GradedRing::new(3, 2).unwrap();
        let g = polys(r, &["x^2+y^2", "x*y"]);
        let vs: Vec<ModVec> = g.iter().map(|p| ModVec::from_poly(0, p)).collect();
        let gb = module_groebner(r.field(), &[0], &vs).unwrap();
        let got: Vec<Polynomial> = gb.basis().map(|v| v.entry(r, 0)).collect();
        assert_eq!(got, polys(r, &["x^2+y^2", "x*y", "y^3"]));
        assert_eq!(gb.minimal, vec![0, 1]);
    }

    #[test]
    fn redundant_generators_are_not_minimal() {
        let r = GradedRing::new(5, 3).unwrap();
        let g = polys(r, &["x", "x*y", "y", "x+y", "z^2"]);
        let vs: Vec<ModVec> = g.iter().map(|p| ModVec::from_poly(0, p)).collect();
        let gb = module_groebner(r.field(), &[0], &vs).unwrap();
        assert_eq!(gb.minimal, vec![0, 2, 4]);
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = GradedRing::new(5, 3).unwrap();
        let g = polys(r, &["x^2 + y"]);
        let vs = vec![ModVec::from_poly(0, &g[0])];
        assert!(matches!(
            module_groebner(r.field(), &[0], &vs),
            Err(Error::NotHomogeneous(_))
        ));
    }
}
