//! Sparse row echelon forms over `F_p`.

use crate::field::Fp;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(u32, u32)>;

const NONE: u32 = u32::MAX;

/// Incrementally built row echelon form. Every stored row starts at its pivot
/// column with coefficient 1; rows are not inter-reduced.
#[derive(Clone, Debug)]
pub struct Echelon {
    f: Fp,
    ncols: usize,
    pivot_of_col: Vec<u32>,
    rows: Vec<SparseRow>,
    dense: Vec<u64>,
}

impl Echelon {
    pub fn new(f: Fp, ncols: usize) -> Self {
        Echelon {
            f,
            ncols,
            pivot_of_col: vec![NONE; ncols],
            rows: Vec::new(),
            dense: vec![0; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NONE
    }

    fn scatter(&mut self, row: &[(u32, u32)]) -> (usize, usize) {
        let (mut lo, mut hi) = (usize::MAX, 0);
        for &(c, v) in row {
            let c = c as usize;
            let d = &mut self.dense[c];
            *d = (*d + v as u64) % self.f.p() as u64;
            lo = lo.min(c);
            hi = hi.max(c + 1);
        }
        (lo, hi)
    }

    /// Eliminates pivot columns from the dense buffer over `[lo, hi)`. With
    /// `stop_at_free` it returns at the first nonzero non-pivot column.
    fn eliminate(
        &mut self,
        lo: usize,
        mut hi: usize,
        stop_at_free: bool,
    ) -> (Option<usize>, usize) {
        let p = self.f.p() as u64;
        let mut c = lo;
        while c < hi {
            let v = self.dense[c];
            if v == 0 {
                c += 1;
                continue;
            }
            let r = self.pivot_of_col[c];
            if r == NONE {
                if stop_at_free {
                    return (Some(c), hi);
                }
                c += 1;
                continue;
            }
            let m = p - v;
            for &(cc, w) in &self.rows[r as usize] {
                let cc = cc as usize;
                self.dense[cc] = (self.dense[cc] + m * w as u64) % p;
                if cc >= hi {
                    hi = cc + 1;
                }
            }
            debug_assert_eq!(self.dense[c], 0);
            c += 1;
        }
        (None, hi)
    }

    fn gather_and_clear(&mut self, lo: usize, hi: usize) -> SparseRow {
        let mut out = Vec::new();
        for c in lo..hi {
            let v = self.dense[c];
            if v != 0 {
                out.push((c as u32, v as u32));
                self.dense[c] = 0;
            }
        }
        out
    }

    /// Adds a row; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, row: &[(u32, u32)]) -> bool {
        if row.is_empty() {
            return false;
        }
        let (lo, hi) = self.scatter(row);
        match self.eliminate(lo, hi, true) {
            // Dependent: every touched column was cancelled.
            (None, _) => false,
            (Some(piv), hi) => {
                let mut r = self.gather_and_clear(piv, hi);
                let inv = self.f.inv(r[0].1);
                for e in r.iter_mut() {
                    e.1 = self.f.mul(e.1, inv);
                }
                self.pivot_of_col[piv] = self.rows.len() as u32;
                self.rows.push(r);
                true
            }
        }
    }

    /// Remainder of `row` modulo the row space: supported on non-pivot columns
    /// only. Two rows are congruent iff their remainders agree.
    pub fn reduce(&mut self, row: &[(u32, u32)]) -> SparseRow {
        if row.is_empty() {
            return Vec::new();
        }
        let (lo, hi) = self.scatter(row);
        let (_, hi) = self.eliminate(lo, hi, false);
        self.gather_and_clear(lo, hi)
    }
}

/// Rank of a list of sparse rows with `ncols` columns.
pub fn rank_of_rows<'a>(
    f: Fp,
    ncols: usize,
    rows: impl IntoIterator<Item = &'a SparseRow>,
) -> usize {
    let mut e = Echelon::new(f, ncols);
    for r in rows {
        if e.rank() == ncols {
            break;
        }
        e.insert(r);
    }
    e.rank()
}

/// Dense-matrix rank, used as a test oracle.
pub fn dense_rank(f: Fp, mut m: Vec<Vec<u32>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..nrows {
            if r != rank && m[r][c] != 0 {
                let k = m[r][c];
                for cc in 0..ncols {
                    let t = f.mul(k, m[rank][cc]);
                    m[r][cc] = f.sub(m[r][cc], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn to_sparse(row: &[u32]) -> SparseRow {
        row.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u32, v))
            .collect()
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            rows in 0usize..9,
            cols in 1usize..9,
            seed in prop::collection::vec(0u32..1000, 81),
        ) {
            let f = Fp::new(p).unwrap();
            let m: Vec<Vec<u32>> = (0..rows)
                .map(|r| (0..cols).map(|c| {
                    // Sparse-ish entries.
                    let s = seed[r * 9 + c];
                    if s % 3 == 0 { 0 } else { s % p as u32 }
                }).collect())
                .collect();
            let sparse: Vec<SparseRow> = m.iter().map(|r| to_sparse(r)).collect();
            prop_assert_eq!(rank_of_rows(f, cols, &sparse), dense_rank(f, m));
        }

        #[test]
        fn reduce_is_zero_on_row_space(
            seed in prop::collection::vec(0u32..5, 30),
            mix in prop::collection::vec(0u32..5, 5),
        ) {
            let f = Fp::new(5).unwrap();
            let rows: Vec<Vec<u32>> = seed.chunks(6).map(|c| c.to_vec()).collect();
            let mut e = Echelon::new(f, 6);
            for r in &rows {
                e.insert(&to_sparse(r));
            }
            let mut comb = vec![0u32; 6];
            for (r, &k) in rows.iter().zip(&mix) {
                for c in 0..6 {
                    comb[c] = f.add(comb[c], f.mul(k, r[c]));
                }
            }
            prop_assert!(e.reduce(&to_sparse(&comb)).is_empty());
        }
    }

    #[test]
    fn reduce_respects_free_columns() {
        let f = Fp::new(3).unwrap();
        let mut e = Echelon::new(f, 3);
        e.insert(&vec![(0, 1), (1, 1)]);
        let r = e.reduce(&vec![(0, 2)]);
        assert_eq!(r, vec![(1, 1)]);
        assert!(!e.is_pivot(1));
    }
}
