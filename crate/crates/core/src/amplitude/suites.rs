//! Verification records for the inequalities and implication chains about
//! regularity and amplitude.

use rayon::prelude::*;
use serde::Serialize;

use crate::amplitude::{
    classify, default_tests, estimate_f_amplitude, generation_defect, p_ample_check,
    t_ample_prefix, tensor_by, FilterKind, FilterSpec, Observation, TestSheaf, Verdict, SCHEMA,
};
use crate::error::{Error, Result};
use crate::functors::{line, nlf_locus_dim, restrict_last, twist};
use crate::groebner::support_dim;
use crate::resolve::{direct_sum, ext_module, tensor_module, PresentedModule};
use crate::sheafcoh::{level, reg_t, Reg, Sheaf};

/// `⊕_{j >= 1} Ext^j(M, S)`, whose support is the non-locally-free locus.
fn higher_ext_sum(m: &PresentedModule) -> Result<Option<PresentedModule>> {
    let nv = m.ring().nvars();
    let mut parts = Vec::new();
    for j in 1..=nv {
        let e = ext_module(m, j, 0)?;
        if support_dim(&e)? >= 0 {
            parts.push(e);
        }
    }
    Ok(if parts.is_empty() {
        None
    } else {
        Some(direct_sum(&parts)?)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidRecord {
    pub schema: u32,
    pub t: usize,
    /// Dimension of the locus where neither sheaf is locally free.
    pub dim_y: i64,
    pub hypothesis_met: bool,
    pub reg0_f: Reg,
    pub regt_g: Reg,
    pub lhs: Reg,
    pub rhs: Reg,
    pub holds: bool,
}

/// `reg^t(F ⊗ G) <= reg^0(F) + reg^t(G)` when `dim Y <= t + 2`, with `Y`
/// the intersection of the two non-locally-free loci. Evaluated either way.
pub fn verify_sid_bound(f: &PresentedModule, g: &PresentedModule, t: usize) -> Result<SidRecord> {
    let dim_y = match (higher_ext_sum(f)?, higher_ext_sum(g)?) {
        (Some(a), Some(b)) => support_dim(&tensor_module(&a, &b)?)?,
        _ => -1,
    };
    let reg0_f = reg_t(f, 0)?;
    let regt_g = reg_t(g, t)?;
    let lhs = reg_t(&tensor_by(f, g)?, t)?;
    let rhs = reg0_f.add(regt_g);
    Ok(SidRecord {
        schema: SCHEMA,
        t,
        dim_y,
        hypothesis_met: dim_y <= t as i64 + 2,
        reg0_f,
        regt_g,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichRecord {
    pub schema: u32,
    pub bundle: String,
    pub horizon: usize,
    pub phi_hat: Option<i64>,
    pub phi_hat_restricted: Option<i64>,
    pub verdict_full: Verdict,
    pub verdict_restricted: Verdict,
    /// `φ̂(E|_H) <= φ̂(E) <= φ̂(E|_H) + 1`.
    pub holds: bool,
    pub verdict: Verdict,
}

/// Compares `φ̂(E)` with `φ̂(E|_H)` for the last coordinate hyperplane.
pub fn restriction_sandwich(e: &PresentedModule, horizon: usize) -> Result<SandwichRecord> {
    let ring = e.ring();
    if ring.projective_dim() < 2 {
        return Err(Error::Precondition("the restriction needs n >= 2".into()));
    }
    let nlf = nlf_locus_dim(e)?;
    if nlf >= 0 {
        return Err(Error::Precondition(format!(
            "not locally free: singular locus of dimension {nlf}"
        )));
    }
    let eh = restrict_last(e)?;
    let full = estimate_f_amplitude(e, &default_tests(ring), horizon)?;
    let res = estimate_f_amplitude(&eh, &default_tests(eh.ring()), horizon)?;
    let (a, b) = (
        full.phi_hat.expect("estimate"),
        res.phi_hat.expect("estimate"),
    );
    let holds = b <= a && a <= b + 1;
    let verdict = Verdict::combine([
        full.verdict,
        res.verdict,
        if holds {
            Verdict::HoldsWithWitness
        } else {
            Verdict::FailsWithCounterexample
        },
    ]);
    Ok(SandwichRecord {
        schema: SCHEMA,
        bundle: e.name().unwrap_or("E").to_string(),
        horizon,
        phi_hat: Some(a),
        phi_hat_restricted: Some(b),
        verdict_full: full.verdict,
        verdict_restricted: res.verdict,
        holds,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LevelBoundStatus {
    Consistent,
    /// `φ̂ > λ`; not a refutation, the needed positivity of `O(1)` is not certified.
    ObservedGap,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelBoundRecord {
    pub schema: u32,
    pub bundle: String,
    pub lambda: usize,
    pub phi_hat: i64,
    pub famp_verdict: Verdict,
    pub status: LevelBoundStatus,
}

/// Compares `φ̂(E)` with the level of `E(-n)`.
pub fn check_level_bound(e: &PresentedModule, horizon: usize) -> Result<LevelBoundRecord> {
    let ring = e.ring();
    let n = ring.projective_dim() as i32;
    let lambda = level(&twist(e, -n))?;
    let rep = estimate_f_amplitude(e, &default_tests(ring), horizon)?;
    let phi = rep.phi_hat.expect("estimate");
    let status = if rep.verdict == Verdict::Inconclusive {
        LevelBoundStatus::Inconclusive
    } else if phi <= lambda as i64 {
        LevelBoundStatus::Consistent
    } else {
        LevelBoundStatus::ObservedGap
    };
    Ok(LevelBoundRecord {
        schema: SCHEMA,
        bundle: e.name().unwrap_or("E").to_string(),
        lambda,
        phi_hat: phi,
        famp_verdict: rep.verdict,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FujitaMember {
    pub label: String,
    pub phi_hat: Option<i64>,
    /// `φ̂ <= t` confirmed at the certification horizon.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FujitaRecord {
    pub schema: u32,
    pub t: usize,
    pub cap: i64,
    pub verdict: Verdict,
    pub m0: Option<i64>,
    pub members: Vec<FujitaMember>,
    pub precondition_met: bool,
    /// `index` is the twist `m`.
    pub observations: Vec<Observation>,
}

/// Least `m0 <= cap` with `H^q(F ⊗ O(m) ⊗ G) = 0` for `q > t`, `m in [m0, cap]`
/// and every `G`. The amplitude bound on the members is measured and
/// recorded, not required.
pub fn fujita_m0_search(
    f: &PresentedModule,
    g_set: &[TestSheaf],
    t: usize,
    cap: i64,
    certify_horizon: usize,
) -> Result<FujitaRecord> {
    if cap < 0 {
        return Err(Error::Precondition(format!("twist cap {cap} is negative")));
    }
    let n = f.ring().projective_dim();
    let members: Vec<FujitaMember> = g_set
        .par_iter()
        .map(|g| -> Result<FujitaMember> {
            let rep = estimate_f_amplitude(&g.module, &default_tests(f.ring()), certify_horizon)?;
            Ok(FujitaMember {
                label: g.label.clone(),
                phi_hat: rep.phi_hat,
                certified: rep.verdict == Verdict::HoldsWithWitness
                    && rep.phi_hat.is_some_and(|p| p <= t as i64),
            })
        })
        .collect::<Result<_>>()?;
    let per_member: Vec<Vec<Observation>> = g_set
        .par_iter()
        .map(|g| -> Result<Vec<Observation>> {
            let s = Sheaf::new(&tensor_by(&g.module, f)?)?;
            let mut out = Vec::new();
            for m in 0..=cap {
                for q in t + 1..=n {
                    out.push(Observation {
                        test: g.label.clone(),
                        q,
                        index: m as usize,
                        dim: s.h(q, m)?,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let observations: Vec<Observation> = per_member.into_iter().flatten().collect();
    let bad_at = |m: i64| {
        observations
            .iter()
            .any(|c| c.index as i64 == m && c.dim > 0)
    };
    let (verdict, m0) = if bad_at(cap) {
        (Verdict::Inconclusive, None)
    } else {
        let last_bad = (0..=cap).rev().find(|&m| bad_at(m));
        (
            Verdict::HoldsWithWitness,
            Some(last_bad.map_or(0, |m| m + 1)),
        )
    };
    Ok(FujitaRecord {
        schema: SCHEMA,
        t,
        cap,
        verdict,
        m0,
        precondition_met: members.iter().all(|m| m.certified),
        members,
        observations,
    })
}

/// Per test sheaf: the first Frobenius index from which vanishing holds,
/// next to `ceil(log_p reg^0(test))`. Tabulated, not asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnsetRow {
    pub test: String,
    pub reg0: Reg,
    pub log_bound: Option<u32>,
    pub first_index: Option<usize>,
}

pub fn vanishing_onset(
    e: &PresentedModule,
    tests: &[TestSheaf],
    horizon: usize,
) -> Result<Vec<OnsetRow>> {
    let p = e.ring().p() as i64;
    let rep = t_ample_prefix(
        &FilterSpec::new(FilterKind::FrobeniusPowers(e.clone())),
        0,
        tests,
        horizon,
    )?;
    tests
        .iter()
        .map(|t| {
            let reg0 = reg_t(&t.module, 0)?;
            let log_bound = match reg0 {
                Reg::NegInf => Some(0),
                Reg::Finite(r) if r <= 1 => Some(0),
                Reg::Finite(r) => {
                    let mut k = 0u32;
                    let mut q = 1i64;
                    while q < r {
                        q *= p;
                        k += 1;
                    }
                    Some(k)
                }
            };
            let first_index = rep
                .witnesses
                .iter()
                .find(|w| w.test == t.label)
                .map(|w| w.n0);
            Ok(OnsetRow {
                test: t.label.clone(),
                reg0,
                log_bound,
                first_index,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct ChainConfig {
    pub horizon: usize,
    /// Frobenius horizon inside properties (2) and (4).
    pub frobenius_horizon: usize,
    /// Symmetric power horizon inside property (5).
    pub sym_horizon: usize,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            horizon: 5,
            frobenius_horizon: 3,
            sym_horizon: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: u8,
    pub name: &'static str,
    pub verdict: Verdict,
    /// One line per evaluated case.
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainRecord {
    pub schema: u32,
    pub filter: String,
    pub horizon: usize,
    pub properties: Vec<PropertyVerdict>,
    /// Implications whose premise holds while the conclusion fails.
    pub violations: Vec<String>,
    pub ok: bool,
}

/// The implications checked; `(1) <=> (2)` counts both ways.
const IMPLICATIONS: [(usize, usize); 6] = [(1, 2), (2, 1), (1, 3), (2, 3), (3, 4), (4, 5)];

/// Bounded proxies for the five equivalent-or-implied positivity properties
/// of a filter of locally free sheaves.
pub fn verify_positivity_chain(filter: &FilterSpec, cfg: ChainConfig) -> Result<ChainRecord> {
    let ring = filter.ring();
    let n_h = cfg.horizon;
    for i in 0..=n_h {
        let e = filter.element(i)?;
        let d = nlf_locus_dim(&e)?;
        if d >= 0 {
            return Err(Error::Precondition(format!(
                "member {i} is not locally free (singular locus of dimension {d})"
            )));
        }
    }
    let tests = default_tests(ring);
    let hs: Vec<PresentedModule> = [-1, 0, 1].iter().map(|&a| line(ring, a)).collect();
    let late: Vec<usize> = [n_h.saturating_sub(1), n_h]
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let cases: Vec<(String, PresentedModule)> = hs
        .iter()
        .flat_map(|h| late.iter().map(move |&i| (h, i)))
        .map(|(h, i)| -> Result<(String, PresentedModule)> {
            let m = tensor_by(h, &*filter.element(i)?)?;
            Ok((format!("{} ⊗ G_{i}", h.name().unwrap_or("H")), m))
        })
        .collect::<Result<_>>()?;

    let p1 = t_ample_prefix(filter, 0, &tests, n_h)?;
    let prop1 = PropertyVerdict {
        property: 1,
        name: "t-ample filter at t = 0",
        verdict: p1.verdict,
        details: vec![format!(
            "witness index {:?}, {} counterexample cells",
            p1.witness_index,
            p1.counterexamples.len()
        )],
    };

    let famp: Vec<(Verdict, String)> = cases
        .par_iter()
        .map(|(label, m)| -> Result<(Verdict, String)> {
            let r = estimate_f_amplitude(m, &tests, cfg.frobenius_horizon)?;
            let v = match (r.verdict, r.phi_hat) {
                (Verdict::HoldsWithWitness, Some(0)) => Verdict::HoldsWithWitness,
                (Verdict::HoldsWithWitness, _) => Verdict::FailsWithCounterexample,
                (v, _) => v,
            };
            Ok((
                v,
                format!("{label}: phi_hat {:?} ({:?})", r.phi_hat, r.verdict),
            ))
        })
        .collect::<Result<_>>()?;
    let prop2 = PropertyVerdict {
        property: 2,
        name: "H ⊗ G_n is F-ample at late n",
        verdict: Verdict::combine(famp.iter().map(|x| x.0)),
        details: famp.into_iter().map(|x| x.1).collect(),
    };

    let gg_cells: Vec<Vec<Observation>> = (0..=n_h)
        .into_par_iter()
        .map(|index| -> Result<Vec<Observation>> {
            let g = filter.element(index)?;
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
    let gg_cells: Vec<Observation> = gg_cells.into_iter().flatten().collect();
    let (v3, wi3, _, ce3) = classify(&tests, &gg_cells, n_h, |c| c.dim > 0);
    let prop3 = PropertyVerdict {
        property: 3,
        name: "test ⊗ G_n globally generated eventually",
        verdict: v3,
        details: vec![format!(
            "witness index {wi3:?}, {} counterexample cells",
            ce3.len()
        )],
    };

    let pamp: Vec<(Verdict, String)> = cases
        .par_iter()
        .map(|(label, m)| -> Result<(Verdict, String)> {
            let r = p_ample_check(m, &tests, cfg.frobenius_horizon)?;
            Ok((
                r.verdict,
                format!("{label}: {:?} from index {:?}", r.verdict, r.witness_index),
            ))
        })
        .collect::<Result<_>>()?;
    let prop4 = PropertyVerdict {
        property: 4,
        name: "H ⊗ G_n is p-ample at late n",
        verdict: Verdict::combine(pamp.iter().map(|x| x.0)),
        details: pamp.into_iter().map(|x| x.1).collect(),
    };

    let ample: Vec<(Verdict, String)> = cases
        .par_iter()
        .map(|(label, m)| -> Result<(Verdict, String)> {
            let sym = FilterSpec::new(FilterKind::SymPowers(m.clone()));
            let r = t_ample_prefix(&sym, 0, &tests, cfg.sym_horizon)?;
            Ok((
                r.verdict,
                format!(
                    "{label}: Sym filter {:?} from index {:?}",
                    r.verdict, r.witness_index
                ),
            ))
        })
        .collect::<Result<_>>()?;
    let prop5 = PropertyVerdict {
        property: 5,
        name: "H ⊗ G_n is ample at late n",
        verdict: Verdict::combine(ample.iter().map(|x| x.0)),
        details: ample.into_iter().map(|x| x.1).collect(),
    };

    let properties = vec![prop1, prop2, prop3, prop4, prop5];
    let violations: Vec<String> = IMPLICATIONS
        .iter()
        .filter(|&&(a, b)| {
            properties[a - 1].verdict == Verdict::HoldsWithWitness
                && properties[b - 1].verdict == Verdict::FailsWithCounterexample
        })
        .map(|(a, b)| format!("({a}) holds but ({b}) fails"))
        .collect();
    Ok(ChainRecord {
        schema: SCHEMA,
        filter: filter.label(),
        horizon: n_h,
        ok: violations.is_empty(),
        properties,
        violations,
    })
}

/// One fuzzed pair, with the stream index that rebuilds it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidCase {
    pub index: usize,
    pub f: String,
    pub g: String,
    #[serde(flatten)]
    pub record: SidRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidSuiteReport {
    pub schema: u32,
    pub seed: u64,
    pub n: usize,
    pub p: u32,
    pub count: usize,
    pub hypothesis_met: usize,
    /// Hypothesis-satisfying cases where the bound holds.
    pub holds: usize,
    pub verdict: Verdict,
    /// Indices that break the bound under its hypothesis.
    pub violations: Vec<usize>,
    /// Indices outside the hypothesis; kept for hunting counterexamples.
    pub outside_hypothesis: Vec<usize>,
    pub cases: Vec<SidCase>,
}

/// The pair at `index`: `F` and `G` come from two streams of the same seed,
/// with shapes rotating through every fuzz shape, and `t = index mod 2`.
pub fn sid_fuzz_pair(
    seed: u64,
    n: usize,
    p: u64,
    index: usize,
) -> Result<(PresentedModule, PresentedModule, usize)> {
    use crate::fuzz::{fuzz_instance, FuzzConfig, FuzzShape};
    const SHAPES: [FuzzShape; 4] = [
        FuzzShape::MonomialIdeal,
        FuzzShape::Quotient,
        FuzzShape::BinomialIdeal,
        FuzzShape::DirectSum,
    ];
    let cfg = |shape, s| FuzzConfig {
        seed: s,
        count: 0,
        nvars: n + 1,
        max_gen_degree: 2,
        max_gens: 2,
        shape,
        p,
    };
    let f = fuzz_instance(&cfg(SHAPES[index % 4], seed), index)?.module;
    let g = fuzz_instance(
        &cfg(SHAPES[(index / 4 + 1) % 4], seed ^ 0x9e37_79b9_7f4a_7c15),
        index,
    )?
    .module;
    Ok((f, g, index % 2))
}

/// Runs `count` fuzzed pairs through [`verify_sid_bound`].
pub fn sid_fuzz_suite(seed: u64, n: usize, p: u64, count: usize) -> Result<SidSuiteReport> {
    let cases: Vec<SidCase> = (0..count)
        .into_par_iter()
        .map(|k| {
            let (f, g, t) = sid_fuzz_pair(seed, n, p, k)?;
            let record = verify_sid_bound(&f, &g, t)?;
            Ok(SidCase {
                index: k,
                f: f.name().unwrap_or("F").to_string(),
                g: g.name().unwrap_or("G").to_string(),
                record,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let met: Vec<&SidCase> = cases.iter().filter(|c| c.record.hypothesis_met).collect();
    let violations: Vec<usize> = met
        .iter()
        .filter(|c| !c.record.holds)
        .map(|c| c.index)
        .collect();
    let outside_hypothesis = cases
        .iter()
        .filter(|c| !c.record.hypothesis_met)
        .map(|c| c.index)
        .collect();
    Ok(SidSuiteReport {
        schema: SCHEMA,
        seed,
        n,
        p: p as u32,
        count,
        hypothesis_met: met.len(),
        holds: met.len() - violations.len(),
        verdict: if violations.is_empty() {
            Verdict::HoldsWithWitness
        } else {
            Verdict::FailsWithCounterexample
        },
        violations,
        outside_hypothesis,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::line_twist;
    use crate::functors::{make_bundle, BundleCatalog};
    use crate::poly::{parse_polynomial, GradedRing};
    use crate::resolve::FreeModule;
    use crate::ModVec;

    fn point_ideal(r: GradedRing, a: &str, b: &str) -> PresentedModule {
        let names = r.default_names();
        let a = parse_polynomial(r, &names, a).unwrap();
        let b = parse_polynomial(r, &names, b).unwrap();
        PresentedModule::from_columns(
            FreeModule::new(r, vec![1, 1]),
            vec![ModVec::from_entries(&[b, -&a])],
        )
        .unwrap()
        .with_name("I_p")
    }

    #[test]
    fn two_point_ideals() {
        let r = GradedRing::projective(2, 2).unwrap();
        let rec =
            verify_sid_bound(&point_ideal(r, "x", "y"), &point_ideal(r, "y", "z"), 0).unwrap();
        assert_eq!(rec.dim_y, -1);
        assert!(rec.hypothesis_met && rec.holds);
        assert_eq!((rec.lhs, rec.rhs), (Reg::Finite(2), Reg::Finite(2)));
    }

    #[test]
    fn line_bundle_factor_is_exact() {
        let r = GradedRing::projective(2, 2).unwrap();
        let g = make_bundle(BundleCatalog::Tangent, r);
        let rec = verify_sid_bound(&line(r, 2), &g, 0).unwrap();
        assert_eq!(rec.lhs, rec.rhs);
        assert!(rec.holds);
    }

    #[test]
    fn two_planes_in_space_meet_on_a_plane() {
        let r = GradedRing::projective(2, 3).unwrap();
        let names = r.default_names();
        let x = parse_polynomial(r, &names, "x").unwrap();
        let q = PresentedModule::quotient_ring(r, &[x]).unwrap();
        let rec = verify_sid_bound(&q, &q, 0).unwrap();
        assert_eq!(rec.dim_y, 2);
        assert!(rec.hypothesis_met);
        assert!(rec.holds);
    }

    #[test]
    fn sandwich_examples() {
        let r = GradedRing::projective(2, 2).unwrap();
        let t = restriction_sandwich(&make_bundle(BundleCatalog::Tangent, r), 4).unwrap();
        assert_eq!((t.phi_hat_restricted, t.phi_hat), (Some(0), Some(1)));
        assert_eq!(t.verdict, Verdict::HoldsWithWitness);
        let o = restriction_sandwich(&line(r, 3), 4).unwrap();
        assert_eq!((o.phi_hat_restricted, o.phi_hat), (Some(0), Some(0)));
        let neg = restriction_sandwich(&line(r, -1), 4).unwrap();
        assert_eq!((neg.phi_hat_restricted, neg.phi_hat), (Some(1), Some(2)));
        assert!(neg.holds);
    }

    #[test]
    fn level_against_amplitude() {
        let r = GradedRing::projective(2, 2).unwrap();
        let c = check_level_bound(&line(r, 1), 4).unwrap();
        assert_eq!(
            (c.lambda, c.phi_hat, c.status),
            (1, 0, LevelBoundStatus::Consistent)
        );
        let c = check_level_bound(&line(r, 0), 4).unwrap();
        assert_eq!(
            (c.lambda, c.phi_hat, c.status),
            (2, 2, LevelBoundStatus::Consistent)
        );
        let c = check_level_bound(&make_bundle(BundleCatalog::Tangent, r), 4).unwrap();
        assert_eq!(
            (c.lambda, c.phi_hat, c.status),
            (1, 1, LevelBoundStatus::Consistent)
        );
    }

    #[test]
    fn uniform_twist_bounds() {
        let r = GradedRing::projective(2, 2).unwrap();
        let gs: Vec<TestSheaf> = [0, 1].iter().map(|&a| TestSheaf::new(line(r, a))).collect();
        let rec = fujita_m0_search(&line(r, 0), &gs, 0, 6, 3).unwrap();
        assert_eq!(rec.m0, Some(0));
        let g0 = [TestSheaf::new(line(r, 0))];
        assert_eq!(
            fujita_m0_search(&line(r, -5), &g0, 0, 6, 3).unwrap().m0,
            Some(3)
        );
        let gs: Vec<TestSheaf> = (0..=2).map(|a| TestSheaf::new(line(r, a))).collect();
        let ip = fujita_m0_search(&point_ideal(r, "x", "y"), &gs, 0, 6, 3).unwrap();
        assert_eq!((ip.verdict, ip.m0), (Verdict::HoldsWithWitness, Some(0)));
        // O(1) is F-ample, O is not.
        assert!(ip.members[1].certified && !ip.members[0].certified);
    }

    #[test]
    fn onset_table_for_a_line_bundle() {
        let r = GradedRing::projective(2, 2).unwrap();
        let rows = vanishing_onset(&line(r, 1), &default_tests(r), 4).unwrap();
        let last = rows.iter().find(|x| x.test == "O(-5)").unwrap();
        // H^2(O(2^k - 5)) = 0 once 2^k >= 3.
        assert_eq!(last.first_index, Some(2));
        assert_eq!(last.reg0, Reg::Finite(5));
        assert_eq!(last.log_bound, Some(3));
    }

    #[test]
    fn chain_on_line_powers() {
        let r = GradedRing::projective(2, 2).unwrap();
        let f = FilterSpec::new(FilterKind::LinePowers(line(r, 1)));
        let rec = verify_positivity_chain(
            &f,
            ChainConfig {
                horizon: 5,
                frobenius_horizon: 3,
                sym_horizon: 3,
            },
        )
        .unwrap();
        assert!(rec.ok, "{:?}", rec.violations);
        for p in &rec.properties {
            assert_eq!(
                p.verdict,
                Verdict::HoldsWithWitness,
                "property {}: {:?}",
                p.property,
                p.details
            );
        }
    }

    #[test]
    fn line_twists_detected() {
        let r = GradedRing::projective(2, 2).unwrap();
        assert_eq!(line_twist(&line(r, -4)), Some(-4));
        assert_eq!(line_twist(&make_bundle(BundleCatalog::Tangent, r)), None);
    }
}
