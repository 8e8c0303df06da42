//! Horizon-bounded decision procedures: t-ample filters, Frobenius
//! amplitude and p-ampleness.

pub mod filter;
pub mod suites;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functors::{frobenius_power, generation_cokernel, twist};
use crate::poly::GradedRing;
use crate::resolve::{tensor_module, PresentedModule};
use crate::sheafcoh::Sheaf;

pub use filter::{FilterKind, FilterSpec};
pub use suites::{
    check_level_bound, fujita_m0_search, restriction_sandwich, sid_fuzz_pair, sid_fuzz_suite,
    vanishing_onset, verify_positivity_chain, verify_sid_bound, ChainConfig, ChainRecord,
    FujitaMember, FujitaRecord, LevelBoundRecord, LevelBoundStatus, OnsetRow, PropertyVerdict,
    SandwichRecord, SidCase, SidRecord, SidSuiteReport,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HoldsWithWitness,
    FailsWithCounterexample,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::HoldsWithWitness => "HOLDS_WITH_WITNESS",
            Verdict::FailsWithCounterexample => "FAILS_WITH_COUNTEREXAMPLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

impl Verdict {
    /// Process exit code: 0 holds, 2 fails, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::HoldsWithWitness => 0,
            Verdict::FailsWithCounterexample => 2,
            Verdict::Inconclusive => 3,
        }
    }

    /// The first failure, else the first inconclusive, else holds.
    pub fn combine(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::HoldsWithWitness;
        for v in vs {
            out = match (out, v) {
                (Verdict::FailsWithCounterexample, _) | (_, Verdict::FailsWithCounterexample) => {
                    Verdict::FailsWithCounterexample
                }
                (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
                _ => Verdict::HoldsWithWitness,
            };
        }
        out
    }
}

/// One cell `dim H^q(X, test ⊗ element(index))`. For global generation
/// checks `q` is 0 and `dim` is `1 + dim Supp(coker)`, so 0 means generated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Observation {
    pub test: String,
    pub q: usize,
    pub index: usize,
    pub dim: u64,
}

/// The least index from which a test passes through the horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub test: String,
    pub n0: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmplitudeReport {
    pub schema: u32,
    pub verdict: Verdict,
    pub t: i64,
    pub horizon: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_hat: Option<i64>,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Observation>,
    pub observations: Vec<Observation>,
}

/// A test sheaf with a display label.
#[derive(Clone, Debug)]
pub struct TestSheaf {
    pub label: String,
    pub module: PresentedModule,
}

impl TestSheaf {
    pub fn new(module: PresentedModule) -> Self {
        let label = module
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| "M".into());
        TestSheaf { label, module }
    }

    /// `a` when the test is `O(a)`.
    pub fn line_twist(&self) -> Option<i64> {
        line_twist(&self.module)
    }
}

pub(crate) fn line_twist(m: &PresentedModule) -> Option<i64> {
    let t = m.generators().twists();
    (t.len() == 1 && m.is_free()).then(|| -(t[0] as i64))
}

/// `O(a)` for `a` in `[-n-3, 0]`.
pub fn default_tests(ring: GradedRing) -> Vec<TestSheaf> {
    let n = ring.projective_dim() as i32;
    (-n - 3..=0)
        .map(|a| TestSheaf::new(crate::functors::line(ring, a)))
        .collect()
}

/// `h ⊗ g`, cheap when `h` is a line bundle.
pub(crate) fn tensor_by(h: &PresentedModule, g: &PresentedModule) -> Result<PresentedModule> {
    match line_twist(h) {
        Some(a) => Ok(twist(g, a as i32)),
        None => tensor_module(h, g),
    }
}

/// Cells `dim H^q(test ⊗ g_index)` for `q` in `qs`, every test and index in `[0, horizon]`.
fn cohomology_grid(
    element: &(dyn Fn(usize) -> Result<PresentedModule> + Sync),
    tests: &[TestSheaf],
    qs: std::ops::RangeInclusive<usize>,
    horizon: usize,
) -> Result<Vec<Observation>> {
    let per_index: Vec<Vec<Observation>> = (0..=horizon)
        .into_par_iter()
        .map(|index| -> Result<Vec<Observation>> {
            let g = element(index)?;
            let mut line_sheaf: Option<Sheaf> = None;
            let mut out = Vec::new();
            for test in tests {
                let (sheaf_owned, d);
                let sheaf = match test.line_twist() {
                    Some(a) => {
                        if line_sheaf.is_none() {
                            line_sheaf = Some(Sheaf::new(&g)?);
                        }
                        d = a;
                        line_sheaf.as_ref().expect("just built")
                    }
                    None => {
                        sheaf_owned = Sheaf::new(&tensor_module(&test.module, &g)?)?;
                        d = 0;
                        &sheaf_owned
                    }
                };
                for q in qs.clone() {
                    out.push(Observation {
                        test: test.label.clone(),
                        q,
                        index,
                        dim: sheaf.h(q, d)?,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_index.into_iter().flatten().collect())
}

/// Classifies a grid: `bad(cell)` marks a cell that breaks the property.
pub(crate) fn classify(
    tests: &[TestSheaf],
    cells: &[Observation],
    horizon: usize,
    bad: impl Fn(&Observation) -> bool,
) -> (Verdict, Option<usize>, Vec<Witness>, Vec<Observation>) {
    let mut by_test: BTreeMap<&str, Vec<bool>> = BTreeMap::new();
    for t in tests {
        by_test.insert(t.label.as_str(), vec![false; horizon + 1]);
    }
    for c in cells.iter().filter(|c| bad(c)) {
        if let Some(v) = by_test.get_mut(c.test.as_str()) {
            v[c.index] = true;
        }
    }
    let mut verdicts = Vec::new();
    let mut witnesses = Vec::new();
    let mut counter = Vec::new();
    let mut n0_max = 0;
    // Report in the caller's test order.
    for t in tests {
        let flags = &by_test[t.label.as_str()];
        if !flags[horizon] {
            let n0 = flags.iter().rposition(|&b| b).map_or(0, |i| i + 1);
            n0_max = n0_max.max(n0);
            witnesses.push(Witness {
                test: t.label.clone(),
                n0,
            });
            verdicts.push(Verdict::HoldsWithWitness);
        } else {
            counter.extend(
                cells
                    .iter()
                    .filter(|c| c.test == t.label && c.index == horizon && bad(c))
                    .cloned(),
            );
            verdicts.push(if flags.iter().all(|&b| b) {
                Verdict::FailsWithCounterexample
            } else {
                Verdict::Inconclusive
            });
        }
    }
    let v = Verdict::combine(verdicts);
    let wi = (v == Verdict::HoldsWithWitness).then_some(n0_max);
    (v, wi, witnesses, counter)
}

fn check_tests(tests: &[TestSheaf]) -> Result<()> {
    if tests.is_empty() {
        return Err(Error::Precondition("the test set is empty".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for t in tests {
        if !seen.insert(&t.label) {
            return Err(Error::Precondition(format!(
                "duplicate test label {}",
                t.label
            )));
        }
    }
    Ok(())
}

/// Least `n0 <= N` with `H^q(test ⊗ element(n)) = 0` for `q > t`, `n in [n0, N]`.
pub fn t_ample_prefix(
    filter: &FilterSpec,
    t: i64,
    tests: &[TestSheaf],
    horizon: usize,
) -> Result<AmplitudeReport> {
    check_tests(tests)?;
    let n = filter.ring().projective_dim();
    let lo = (t + 1).max(0) as usize;
    let elem = |i: usize| filter.element(i).map(|m| (*m).clone());
    let cells = if lo > n {
        Vec::new()
    } else {
        cohomology_grid(&elem, tests, lo..=n, horizon)?
    };
    let (verdict, witness_index, witnesses, counterexamples) =
        classify(tests, &cells, horizon, |c| c.q as i64 > t && c.dim > 0);
    Ok(AmplitudeReport {
        schema: SCHEMA,
        verdict,
        t,
        horizon,
        witness_index,
        phi_hat: None,
        witnesses,
        counterexamples,
        observations: cells,
    })
}

/// Estimated Frobenius amplitude: the least `t` whose prefix check over
/// `F^{*k} M` holds; the counterexamples are those forcing every smaller `t`.
pub fn estimate_f_amplitude(
    m: &PresentedModule,
    tests: &[TestSheaf],
    horizon: usize,
) -> Result<AmplitudeReport> {
    check_tests(tests)?;
    let n = m.ring().projective_dim();
    let elem = |i: usize| frobenius_power(m, i as u32);
    let cells = cohomology_grid(&elem, tests, 1..=n, horizon)?;
    let mut counterexamples = Vec::new();
    let mut verdicts = Vec::new();
    for t in 0..=n as i64 {
        let (v, wi, witnesses, ce) =
            classify(tests, &cells, horizon, |c| c.q as i64 > t && c.dim > 0);
        if v == Verdict::HoldsWithWitness {
            // Any inconclusive smaller t leaves the estimate unconfirmed.
            let verdict = if verdicts.contains(&Verdict::Inconclusive) {
                Verdict::Inconclusive
            } else {
                Verdict::HoldsWithWitness
            };
            return Ok(AmplitudeReport {
                schema: SCHEMA,
                verdict,
                t,
                horizon,
                witness_index: wi,
                phi_hat: Some(t),
                witnesses,
                counterexamples,
                observations: cells,
            });
        }
        verdicts.push(v);
        counterexamples.extend(ce);
    }
    Err(Error::Internal(
        "no cohomology above n, yet the top check failed".into(),
    ))
}

/// `1 + dim Supp coker(H^0 ⊗ O -> M~)`, so 0 exactly when globally generated.
pub(crate) fn generation_defect(m: &PresentedModule) -> Result<u64> {
    Ok((crate::groebner::support_dim(&generation_cokernel(m)?)? + 1) as u64)
}

/// Least `n0 <= N` with `test ⊗ F^{*n} E` globally generated for `n in [n0, N]`.
pub fn p_ample_check(
    e: &PresentedModule,
    tests: &[TestSheaf],
    horizon: usize,
) -> Result<AmplitudeReport> {
    check_tests(tests)?;
    let per_index: Vec<Vec<Observation>> = (0..=horizon)
        .into_par_iter()
        .map(|index| -> Result<Vec<Observation>> {
            let g = frobenius_power(e, index as u32)?;
            tests
                .iter()
                .map(|t| {
                    Ok(Observation {
                        test: t.label.clone(),
                        q: 0,
                        index,
                        dim: generation_defect(&tensor_by(&t.module, &g)?)?,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let cells: Vec<Observation> = per_index.into_iter().flatten().collect();
    let (verdict, witness_index, witnesses, counterexamples) =
        classify(tests, &cells, horizon, |c| c.dim > 0);
    Ok(AmplitudeReport {
        schema: SCHEMA,
        verdict,
        t: 0,
        horizon,
        witness_index,
        phi_hat: None,
        witnesses,
        counterexamples,
        observations: cells,
    })
}
