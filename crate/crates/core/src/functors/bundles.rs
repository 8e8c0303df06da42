//! Standard bundles on `P^n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::groebner::vector::{ModVec, Term};
use crate::poly::{GradedRing, Monomial};
use crate::resolve::{FreeModule, PresentedModule};
use crate::sheafcoh::cech::subsets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleCatalog {
    /// `O(d)`.
    Structure(i32),
    /// `coker(S -> S(1)^{n+1})`, `1 ↦ (x_0, ..., x_n)`.
    Tangent,
    /// `Ω = coker(∧^3 S(-1)^{n+1} -> ∧^2 S(-1)^{n+1})` from the Koszul complex.
    Cotangent,
    /// `O(-n-1)`.
    Canonical,
}

impl fmt::Display for BundleCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleCatalog::Structure(d) => write!(f, "O({d})"),
            BundleCatalog::Tangent => f.write_str("T"),
            BundleCatalog::Cotangent => f.write_str("Omega"),
            BundleCatalog::Canonical => f.write_str("omega"),
        }
    }
}

pub fn make_bundle(b: BundleCatalog, ring: GradedRing) -> PresentedModule {
    let nv = ring.nvars();
    let n = ring.projective_dim() as i32;
    let out = match b {
        BundleCatalog::Structure(d) => PresentedModule::line_bundle(ring, d),
        BundleCatalog::Canonical => PresentedModule::line_bundle(ring, -n - 1),
        BundleCatalog::Tangent => {
            let col = ModVec::from_sorted(
                (0..nv)
                    .map(|i| {
                        (
                            Term {
                                comp: i as u32,
                                mon: Monomial::var(nv, i),
                            },
                            1,
                        )
                    })
                    .collect(),
            );
            PresentedModule::from_columns_unchecked(FreeModule::new(ring, vec![-1; nv]), vec![col])
        }
        BundleCatalog::Cotangent => {
            let f = ring.field();
            let pairs = subsets(nv, 2);
            let pos =
                |a: usize, b: usize| pairs.iter().position(|s| s == &[a, b]).expect("pair") as u32;
            let cols = subsets(nv, 3)
                .iter()
                .map(|s| {
                    let (i, j, k) = (s[0], s[1], s[2]);
                    let t = |comp: u32, v: usize| Term {
                        comp,
                        mon: Monomial::var(nv, v),
                    };
                    // d(e_ijk) = x_i e_jk - x_j e_ik + x_k e_ij
                    ModVec::from_unsorted(
                        f,
                        [
                            (t(pos(j, k), i), 1),
                            (t(pos(i, k), j), f.neg(1)),
                            (t(pos(i, j), k), 1),
                        ],
                    )
                })
                .collect();
            PresentedModule::from_columns_unchecked(
                FreeModule::new(ring, vec![2; pairs.len()]),
                cols,
            )
        }
    };
    out.with_name(b.to_string())
}
