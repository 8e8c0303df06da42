use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::syzygy::{kernel, minimal_subset};
use crate::groebner::vector::ModVec;
use crate::poly::GradedRing;
use crate::resolve::free::{FreeModule, GradedMap, PresentedModule};

/// Removes redundant generators (unit entries) and redundant relations.
pub fn minimal_presentation(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    let f = ring.field();
    let mut twists = m.generators().twists().to_vec();
    let mut cols: Vec<ModVec> = m
        .columns()
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect();
    loop {
        let Some((j, (k, c))) = cols
            .iter()
            .enumerate()
            .find_map(|(j, col)| col.unit_component().map(|u| (j, u)))
        else {
            break;
        };
        // e_k = -(r - c e_k) / c in the quotient: eliminate generator k.
        let r = cols.remove(j);
        let inv = f.inv(c);
        let mut next = Vec::with_capacity(cols.len());
        for col in cols {
            let a = col.entry(ring, k);
            let col = if a.is_zero() {
                col
            } else {
                col.sub(f, &r.mul_poly(f, &a.scale(inv)))
            };
            let col = col.remap(|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => Some(i),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(i - 1),
            });
            if !col.is_zero() {
                next.push(col);
            }
        }
        cols = next;
        twists.remove(k);
    }
    let cols = minimal_subset(f, &twists, cols)?;
    let mut out = PresentedModule::from_columns_unchecked(FreeModule::new(ring, twists), cols);
    if let Some(name) = m.name() {
        out = out.with_name(name);
    }
    Ok(out)
}

/// A chain of free modules `F_0 <- F_1 <- ... <- F_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    ring: GradedRing,
    modules: Vec<FreeModule>,
    maps: Vec<GradedMap>,
}

impl Resolution {
    pub fn from_maps(ring: GradedRing, f0: FreeModule, maps: Vec<GradedMap>) -> Result<Self> {
        let mut modules = vec![f0];
        for (i, d) in maps.iter().enumerate() {
            if d.target() != &modules[i] {
                return Err(Error::Precondition(format!(
                    "map {} has the wrong target",
                    i + 1
                )));
            }
            modules.push(d.source().clone());
        }
        Ok(Resolution {
            ring,
            modules,
            maps,
        })
    }

    pub fn ring(&self) -> GradedRing {
        self.ring
    }

    /// Index of the last nonzero free module (0 for a free or zero module).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_i`, the zero module past the end.
    pub fn free_module(&self, i: usize) -> FreeModule {
        self.modules
            .get(i)
            .cloned()
            .unwrap_or_else(|| FreeModule::zero(self.ring))
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// `d_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn map(&self, i: usize) -> Option<&GradedMap> {
        if i == 0 {
            None
        } else {
            self.maps.get(i - 1)
        }
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    /// Projective dimension of the resolved module (`None` for zero).
    pub fn projective_dimension(&self) -> Option<usize> {
        if self.modules[0].is_zero() {
            None
        } else {
            Some(self.length())
        }
    }

    /// Checks `d_i ∘ d_{i+1} = 0` exactly.
    pub fn check_complex(&self) -> Result<()> {
        for i in 1..self.maps.len() {
            let c = self.maps[i - 1].compose(&self.maps[i])?;
            if !c.is_zero() {
                return Err(Error::Internal(format!("d_{i} d_{} is not zero", i + 1)));
            }
        }
        Ok(())
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|d| d.is_minimal())
    }

    /// `sum_i (-1)^i dim (F_i)_d`.
    pub fn euler_dim(&self, d: i64) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if i % 2 == 0 {
                    f.dim(d) as i64
                } else {
                    -(f.dim(d) as i64)
                }
            })
            .sum()
    }
}

/// Minimal graded free resolution by iterated minimal syzygies.
pub fn min_free_resolution(m: &PresentedModule) -> Result<Resolution> {
    let ring = m.ring();
    let f = ring.field();
    let nv = ring.nvars();
    let pres = minimal_presentation(m)?;
    let f0 = pres.generators().clone();
    let mut maps: Vec<GradedMap> = Vec::new();
    if !pres.is_free() {
        maps.push(pres.relations().clone());
    }
    while let Some(last) = maps.last() {
        let cols = kernel(
            f,
            nv,
            last.target().twists(),
            last.columns(),
            last.source().twists(),
        )?;
        if cols.is_empty() {
            break;
        }
        if maps.len() == nv {
            return Err(Error::Internal(format!(
                "resolution longer than {nv} steps contradicts the syzygy theorem"
            )));
        }
        let src_twists: Vec<i32> = cols
            .iter()
            .map(|c| {
                c.degree(last.source().twists())
                    .expect("homogeneous syzygy")
            })
            .collect();
        let source = FreeModule::new(ring, src_twists);
        maps.push(GradedMap::from_parts(source, last.source().clone(), cols));
    }
    Resolution::from_maps(ring, f0, maps)
}

/// Graded Betti numbers `beta_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `max{ j - i : beta_{i,j} != 0 }`; `None` for the zero module.
    pub fn regularity(&self) -> Option<i32> {
        self.entries.keys().map(|&(i, j)| j - i as i32).max()
    }

    /// Macaulay-style grid: rows `j - i`, columns `i`, zeros as `.`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let len = self.length();
        out.push_str("j-i");
        for i in 0..=len {
            let _ = write!(out, "\t{i}");
        }
        out.push('\n');
        out.push_str("total");
        for i in 0..=len {
            let _ = write!(out, "\t{}", self.total(i));
        }
        out.push('\n');
        let rows: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i as i32).collect();
        if let (Some(&lo), Some(&hi)) = (rows.iter().min(), rows.iter().max()) {
            for r in lo..=hi {
                let _ = write!(out, "{r}");
                for i in 0..=len {
                    match self.get(i, r + i as i32) {
                        0 => out.push_str("\t."),
                        v => {
                            let _ = write!(out, "\t{v}");
                        }
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Betti table of a minimal resolution; a non-minimal input is rejected.
pub fn betti(res: &Resolution) -> Result<BettiTable> {
    if !res.is_minimal() {
        return Err(Error::Precondition(
            "resolution has a unit entry, so it is not minimal".into(),
        ));
    }
    let mut entries = BTreeMap::new();
    for (i, fm) in res.modules().iter().enumerate() {
        for &t in fm.twists() {
            *entries.entry((i, t)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable { entries })
}
