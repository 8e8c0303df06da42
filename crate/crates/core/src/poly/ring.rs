use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::poly::monomial::MAX_VARS;

/// The homogeneous coordinate ring `F_p[x_0, ..., x_n]` of `P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradedRing {
    field: Fp,
    nvars: u8,
}

impl GradedRing {
    pub fn new(p: u64, nvars: usize) -> Result<Self> {
        if !(2..=MAX_VARS).contains(&nvars) {
            return Err(Error::BadVariableCount(nvars));
        }
        Ok(GradedRing {
            field: Fp::new(p)?,
            nvars: nvars as u8,
        })
    }

    /// Coordinate ring of `P^n`, i.e. `n + 1` variables.
    pub fn projective(p: u64, n: usize) -> Result<Self> {
        Self::new(p, n + 1)
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn projective_dim(&self) -> usize {
        self.nvars as usize - 1
    }

    /// The same field with one variable fewer (coordinate ring of a hyperplane).
    pub fn hyperplane(&self) -> Result<GradedRing> {
        GradedRing::new(self.p() as u64, self.nvars() - 1)
    }

    /// `x0, x1, ...`
    pub fn indexed_names(&self) -> Vec<String> {
        (0..self.nvars()).map(|i| format!("x{i}")).collect()
    }

    /// `x, y, z, w` when there are at most four variables, otherwise the
    /// indexed names.
    pub fn default_names(&self) -> Vec<String> {
        if self.nvars() <= 4 {
            ["x", "y", "z", "w"][..self.nvars()]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            self.indexed_names()
        }
    }
}

/// Serializable ring header `{p, n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingHeader {
    pub p: u32,
    pub n: usize,
}

impl From<GradedRing> for RingHeader {
    fn from(r: GradedRing) -> Self {
        RingHeader {
            p: r.p(),
            n: r.projective_dim(),
        }
    }
}
