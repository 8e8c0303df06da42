//! Cohomology by the Čech complex of the cover `{x_k != 0}`, using nothing
//! but linear algebra on graded pieces.
//!
//! `(M_{x_J})_d` is the colimit of `M_{d + T|J|}` under multiplication by
//! `x_J`; at a fixed `T` the strand
//! `⊕_{|J|=1} M_{d+T} -> ⊕_{|J|=2} M_{d+2T} -> ...` with maps `x_j^T` computes
//! the colimit once `T` is large. Stability is checked against a larger `T`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{count_monomials, monomials_of_degree, Monomial};
use crate::resolve::PresentedModule;

/// `M_D = F_D / K_D` with a basis of non-pivot coordinates.
struct Piece {
    offsets: Vec<usize>,
    ech: Echelon,
    /// Basis element `b` is the monomial `basis[b].1` in slot `basis[b].0`.
    basis: Vec<(usize, Monomial)>,
    /// Column of `F_D` to basis position.
    position: HashMap<u32, u32>,
}

struct Pieces<'a> {
    m: &'a PresentedModule,
    cache: HashMap<i64, Piece>,
}

impl<'a> Pieces<'a> {
    fn new(m: &'a PresentedModule) -> Self {
        Pieces {
            m,
            cache: HashMap::new(),
        }
    }

    fn build(&self, d: i64) -> Piece {
        let ring = self.m.ring();
        let nv = ring.nvars();
        let twists = self.m.generators().twists();
        let mut offsets = Vec::with_capacity(twists.len());
        let mut ncols = 0usize;
        for &t in twists {
            offsets.push(ncols);
            ncols += count_monomials(nv, d - t as i64) as usize;
        }
        let mut ech = Echelon::new(ring.field(), ncols);
        let mut row: SparseRow = Vec::new();
        for (col, &s) in self.m.columns().iter().zip(self.m.relation_twists()) {
            let deg = d - s as i64;
            if deg < 0 {
                continue;
            }
            for mu in monomials_of_degree(nv, deg as u32) {
                if ech.rank() == ncols {
                    break;
                }
                row.clear();
                for &(term, c) in col.terms() {
                    let k = term.comp as usize;
                    row.push(((offsets[k] + mu.mul(&term.mon).rank_in_degree()) as u32, c));
                }
                ech.insert(&row);
            }
        }
        let mut basis = Vec::new();
        let mut position = HashMap::new();
        for (k, &t) in twists.iter().enumerate() {
            let deg = d - t as i64;
            if deg < 0 {
                continue;
            }
            for mu in monomials_of_degree(nv, deg as u32) {
                let c = offsets[k] + mu.rank_in_degree();
                if !ech.is_pivot(c) {
                    position.insert(c as u32, basis.len() as u32);
                    basis.push((k, mu));
                }
            }
        }
        Piece {
            offsets,
            ech,
            basis,
            position,
        }
    }

    fn ensure(&mut self, d: i64) {
        if !self.cache.contains_key(&d) {
            let p = self.build(d);
            self.cache.insert(d, p);
        }
    }

    /// Coordinates in `M_{d + deg(mult)}` of `mult` times basis element `b` of `M_d`.
    fn multiply(&mut self, d: i64, b: usize, mult: &Monomial, out: &mut SparseRow) {
        let (k, mu) = self.cache[&d].basis[b];
        let target = d + mult.degree() as i64;
        let piece = self.cache.get_mut(&target).expect("target piece built");
        let c = piece.offsets[k] + mu.mul(mult).rank_in_degree();
        let rem = piece.ech.reduce(&[(c as u32, 1)]);
        out.clear();
        out.extend(rem.iter().map(|&(col, v)| (piece.position[&col], v)));
    }
}

pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// `dim H^i(M~(d))` for all `0 <= i <= n`, from the strand at exponent `t`.
fn strand_dims(pieces: &mut Pieces<'_>, d: i64, t: u32) -> Vec<u64> {
    let ring = pieces.m.ring();
    let nv = ring.nvars();
    let f = ring.field();
    let layers: Vec<Vec<Vec<usize>>> = (1..=nv).map(|s| subsets(nv, s)).collect();
    let degs: Vec<i64> = (1..=nv).map(|s| d + t as i64 * s as i64).collect();
    for &dd in &degs {
        pieces.ensure(dd);
    }
    let dims: Vec<usize> = degs.iter().map(|dd| pieces.cache[dd].basis.len()).collect();
    let sizes: Vec<usize> = layers
        .iter()
        .zip(&dims)
        .map(|(l, &dm)| l.len() * dm)
        .collect();
    let powers: Vec<Monomial> = (0..nv)
        .map(|j| {
            let mut e = vec![0u16; nv];
            e[j] = t as u16;
            Monomial::from_exponents(&e)
        })
        .collect();
    // ranks[p] = rank of the map from layer p to layer p + 1.
    let mut ranks = vec![0usize; nv];
    let mut buf = SparseRow::new();
    let mut row = SparseRow::new();
    for p in 0..nv.saturating_sub(1) {
        let next_index: HashMap<&Vec<usize>, usize> = layers[p + 1]
            .iter()
            .enumerate()
            .map(|(i, j)| (j, i))
            .collect();
        let mut ech = Echelon::new(f, sizes[p + 1]);
        'outer: for jset in &layers[p] {
            for b in 0..dims[p] {
                row.clear();
                for (j, pw) in powers.iter().enumerate() {
                    if jset.contains(&j) {
                        continue;
                    }
                    let sign_neg = jset.iter().filter(|&&x| x < j).count() % 2 == 1;
                    let mut bigger = jset.clone();
                    bigger.push(j);
                    bigger.sort_unstable();
                    let block = next_index[&bigger] * dims[p + 1];
                    pieces.multiply(degs[p], b, pw, &mut buf);
                    for &(c, v) in &buf {
                        let v = if sign_neg { f.neg(v) } else { v };
                        row.push(((block + c as usize) as u32, v));
                    }
                }
                ech.insert(&row);
                if ech.rank() == sizes[p + 1] {
                    break 'outer;
                }
            }
        }
        ranks[p] = ech.rank();
    }
    (0..nv)
        .map(|p| {
            let before = if p == 0 { 0 } else { ranks[p - 1] };
            (sizes[p] - ranks[p] - before) as u64
        })
        .collect()
}

const MAX_DOUBLINGS: u32 = 3;

/// All `dim H^i(M~(d))`, `0 <= i <= n`, by the Čech complex. The exponent
/// starts at `maxdeg + |d| + n + 2` and is doubled until two consecutive
/// strands agree.
pub fn cech_dims(m: &PresentedModule, d: i64) -> Result<Vec<u64>> {
    let n = m.ring().projective_dim() as i64;
    let t0 = m.max_degree() as i64 + d.abs() + n + 2;
    let mut pieces = Pieces::new(m);
    let mut t = t0 as u32;
    let mut prev = strand_dims(&mut pieces, d, t);
    for _ in 0..MAX_DOUBLINGS {
        let next_t = t * 2;
        let next = strand_dims(&mut pieces, d, next_t);
        if next == prev {
            return Ok(prev);
        }
        t = next_t;
        prev = next;
    }
    Err(Error::CechTruncation(t))
}

/// `dim H^i(M~(d))` via the Čech complex.
pub fn cech_oracle(m: &PresentedModule, i: usize, d: i64) -> Result<u64> {
    let n = m.ring().projective_dim();
    if i > n {
        return Err(Error::OutOfRange {
            value: i as i64,
            range: format!("[0, {n}]"),
        });
    }
    Ok(cech_dims(m, d)?[i])
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn line_bundles_on_the_plane() {
        let r = GradedRing::new(3, 3).unwrap();
        let s = PresentedModule::line_bundle(r, 0);
        assert_eq!(cech_oracle(&s, 2, -3).unwrap(), 1);
        for d in -6..=6 {
            assert_eq!(cech_oracle(&s, 1, d).unwrap(), 0);
        }
        assert_eq!(cech_dims(&s, 2).unwrap(), vec![6, 0, 0]);
    }

    #[test]
    fn line_in_the_plane() {
        let r = GradedRing::new(3, 3).unwrap();
        assert_eq!(cech_oracle(&q(r, &["x"]), 1, -2).unwrap(), 1);
    }

    #[test]
    fn agrees_with_duality_on_three_points() {
        let r = GradedRing::new(2, 3).unwrap();
        let m = q(r, &["x*y", "x*z", "y*z"]);
        let sheaf = crate::sheafcoh::Sheaf::new(&m).unwrap();
        for d in -3..=3 {
            let c = cech_dims(&m, d).unwrap();
            for (i, &v) in c.iter().enumerate() {
                assert_eq!(v, sheaf.h(i, d).unwrap(), "i={i} d={d}");
            }
        }
    }
}
