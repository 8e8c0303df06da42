use crate::error::{Error, Result};
use crate::groebner::vector::ModVec;
use crate::poly::{GradedRing, Polynomial};

/// `⊕_k S(-d_k)`: generator `k` sits in degree `twists[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    ring: GradedRing,
    twists: Vec<i32>,
}

impl FreeModule {
    pub fn new(ring: GradedRing, twists: Vec<i32>) -> Self {
        FreeModule { ring, twists }
    }

    pub fn zero(ring: GradedRing) -> Self {
        FreeModule {
            ring,
            twists: Vec::new(),
        }
    }

    pub fn ring(&self) -> GradedRing {
        self.ring
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    /// Dimension of the degree-`d` piece.
    pub fn dim(&self, d: i64) -> u64 {
        let n = self.ring.nvars();
        self.twists
            .iter()
            .map(|&t| crate::poly::count_monomials(n, d - t as i64))
            .sum()
    }

    /// `self(a)`: every generator moves to degree `twist - a`.
    pub fn twisted(&self, a: i32) -> FreeModule {
        FreeModule {
            ring: self.ring,
            twists: self.twists.iter().map(|t| t - a).collect(),
        }
    }

    /// `Hom(self, S(a))`.
    pub fn dual(&self, a: i32) -> FreeModule {
        FreeModule {
            ring: self.ring,
            twists: self.twists.iter().map(|t| -t - a).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModule {
            ring: self.ring,
            twists,
        }
    }
}

/// A degree-preserving map of free modules; column `j` is the image of the
/// `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<ModVec>,
}

impl GradedMap {
    /// Checks graded compatibility of every column.
    pub fn new(source: FreeModule, target: FreeModule, columns: Vec<ModVec>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if columns.len() != source.rank() {
            return Err(Error::LengthMismatch(columns.len(), source.rank()));
        }
        for (j, col) in columns.iter().enumerate() {
            if let Some(k) = col.max_comp() {
                if k >= target.rank() {
                    return Err(Error::OutOfRange {
                        value: k as i64,
                        range: format!("[0, {})", target.rank()),
                    });
                }
            }
            for k in col.support() {
                let e = col.entry(source.ring, k);
                let want = source.twists[j] as i64 - target.twists[k] as i64;
                match e.degree() {
                    Some(d) if d as i64 == want => {}
                    Some(d) => {
                        return Err(Error::GradedIncompatible {
                            row: k,
                            col: j,
                            detail: format!("entry has degree {d}, expected {want}"),
                        })
                    }
                    None => {
                        return Err(Error::GradedIncompatible {
                            row: k,
                            col: j,
                            detail: "entry is not homogeneous".into(),
                        })
                    }
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            columns,
        })
    }

    /// Unchecked constructor for internally produced homogeneous columns.
    pub(crate) fn from_parts(source: FreeModule, target: FreeModule, columns: Vec<ModVec>) -> Self {
        debug_assert_eq!(columns.len(), source.rank());
        debug_assert!(columns
            .iter()
            .zip(source.twists())
            .all(|(c, &t)| c.is_zero() || c.degree(target.twists()) == Some(t)));
        GradedMap {
            source,
            target,
            columns,
        }
    }

    /// From matrix rows (row `i` = target slot) of polynomials.
    pub fn from_rows(
        source: FreeModule,
        target: FreeModule,
        rows: &[Vec<Polynomial>],
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::LengthMismatch(rows.len(), target.rank()));
        }
        let ncols = source.rank();
        let mut columns = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut entries = Vec::with_capacity(rows.len());
            for row in rows {
                if row.len() != ncols {
                    return Err(Error::LengthMismatch(row.len(), ncols));
                }
                entries.push(row[j].clone());
            }
            columns.push(ModVec::from_entries(&entries));
        }
        GradedMap::new(source, target, columns)
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[ModVec] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.columns[j].entry(self.source.ring, i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// True when no entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.columns.iter().all(|c| c.unit_component().is_none())
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &ModVec) -> ModVec {
        let f = self.source.ring.field();
        let mut acc = ModVec::zero();
        for k in v.support() {
            let coeff = v.entry(self.source.ring, k);
            acc = acc.add(f, &self.columns[k].mul_poly(f, &coeff));
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::Precondition("maps are not composable".into()));
        }
        let cols = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(GradedMap::from_parts(
            other.source.clone(),
            self.target.clone(),
            cols,
        ))
    }
}

/// `coker(relations)`, a finitely generated graded module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedModule {
    relations: GradedMap,
    name: Option<String>,
}

impl PresentedModule {
    pub fn new(relations: GradedMap) -> Self {
        PresentedModule {
            relations,
            name: None,
        }
    }

    /// Presentation from relation columns; their degrees are inferred and
    /// zero columns dropped.
    pub fn from_columns(generators: FreeModule, columns: Vec<ModVec>) -> Result<Self> {
        let mut cols = Vec::new();
        let mut twists = Vec::new();
        for (j, c) in columns.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = c
                .degree(generators.twists())
                .ok_or_else(|| Error::GradedIncompatible {
                    row: c.lead().map(|t| t.0.comp as usize).unwrap_or(0),
                    col: j,
                    detail: "relation column is not homogeneous".into(),
                })?;
            twists.push(d);
            cols.push(c);
        }
        let source = FreeModule::new(generators.ring(), twists);
        Ok(PresentedModule::new(GradedMap::new(
            source, generators, cols,
        )?))
    }

    pub(crate) fn from_columns_unchecked(generators: FreeModule, columns: Vec<ModVec>) -> Self {
        let mut cols = Vec::new();
        let mut twists = Vec::new();
        for c in columns {
            if let Some(d) = c.degree(generators.twists()) {
                twists.push(d);
                cols.push(c);
            } else {
                debug_assert!(c.is_zero(), "inhomogeneous internal relation");
            }
        }
        let source = FreeModule::new(generators.ring(), twists);
        PresentedModule::new(GradedMap::from_parts(source, generators, cols))
    }

    pub fn free(generators: FreeModule) -> Self {
        let source = FreeModule::zero(generators.ring());
        PresentedModule::new(GradedMap::from_parts(source, generators, Vec::new()))
    }

    /// `S(d)`, whose sheaf is `O(d)`.
    pub fn line_bundle(ring: GradedRing, d: i32) -> Self {
        Self::free(FreeModule::new(ring, vec![-d]))
    }

    /// `S/I` for homogeneous generators of `I`.
    pub fn quotient_ring(ring: GradedRing, gens: &[Polynomial]) -> Result<Self> {
        let cols = gens
            .iter()
            .map(|g| {
                if g.is_homogeneous() {
                    Ok(ModVec::from_poly(0, g))
                } else {
                    Err(Error::NotHomogeneous(g.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(FreeModule::new(ring, vec![0]), cols)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ring(&self) -> GradedRing {
        self.relations.target.ring
    }

    pub fn generators(&self) -> &FreeModule {
        &self.relations.target
    }

    pub fn relations(&self) -> &GradedMap {
        &self.relations
    }

    pub fn columns(&self) -> &[ModVec] {
        &self.relations.columns
    }

    pub fn relation_twists(&self) -> &[i32] {
        self.relations.source.twists()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    /// Largest absolute degree appearing in the presentation.
    pub fn max_degree(&self) -> i32 {
        self.generators()
            .twists()
            .iter()
            .chain(self.relation_twists())
            .map(|t| t.abs())
            .max()
            .unwrap_or(0)
    }
}
