//! Fixture-driven verification suites behind `verify --suite`.

use std::fmt::Write as _;

use ample_forge_core::amplitude::{
    check_level_bound, fujita_m0_search, restriction_sandwich, sid_fuzz_suite,
    verify_positivity_chain, ChainConfig, FilterKind, FilterSpec, LevelBoundStatus, TestSheaf,
    Verdict, SCHEMA,
};
use ample_forge_core::functors::{ideal_module, line, make_bundle, BundleCatalog};
use ample_forge_core::resolve::direct_sum;
use ample_forge_core::{GradedRing, Polynomial};
use serde_json::{json, Value};

use crate::args::{Global, Suite};
use crate::commands::{CliResult, Outcome};

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// `I_p` for the point `[0:0:1]` (or its analogue on any `P^n`, `n >= 1`).
pub fn point_ideal(ring: GradedRing) -> CliResult<ample_forge_core::PresentedModule> {
    let gens: Vec<Polynomial> = (0..ring.projective_dim())
        .map(|i| Polynomial::var(ring, i))
        .collect();
    Ok(ideal_module(ring, &gens)?.with_name("I_p"))
}

pub fn run(
    suite: Suite,
    g: &Global,
    fuzz_count: usize,
    n: usize,
    p: u64,
    cap: i64,
) -> CliResult<Outcome> {
    let mut text = String::new();
    let (exit, json) = match suite {
        Suite::Sid => {
            let rep = sid_fuzz_suite(g.seed, n, p, fuzz_count)?;
            let _ = writeln!(
                text,
                "sid: {}/{} hold among {} pairs meeting the hypothesis ({} outside it), seed {}",
                rep.holds,
                rep.hypothesis_met,
                rep.count,
                rep.outside_hypothesis.len(),
                rep.seed
            );
            for k in &rep.violations {
                let _ = writeln!(text, "  violation at index {k}");
            }
            (rep.verdict.exit_code(), to_value(&rep))
        }
        Suite::Chain72 => {
            let ring = GradedRing::projective(p, 2)?;
            let sum = direct_sum(&[line(ring, 1), line(ring, 1)])?.with_name("O(1)+O(1)");
            let filters = [
                FilterSpec::new(FilterKind::LinePowers(line(ring, 1))),
                FilterSpec::new(FilterKind::SymPowers(sum)),
                FilterSpec::new(FilterKind::FrobeniusPowers(make_bundle(
                    BundleCatalog::Tangent,
                    ring,
                ))),
            ];
            let cfg = ChainConfig {
                horizon: g.horizon.unwrap_or(5),
                ..ChainConfig::default()
            };
            let mut records = Vec::new();
            for f in &filters {
                let r = verify_positivity_chain(f, cfg)?;
                let verdicts: Vec<String> = r
                    .properties
                    .iter()
                    .map(|pv| format!("({}) {}", pv.property, pv.verdict))
                    .collect();
                let _ = writeln!(
                    text,
                    "{}: {} | {}",
                    r.filter,
                    if r.ok { "ok" } else { "VIOLATED" },
                    verdicts.join(", ")
                );
                for v in &r.violations {
                    let _ = writeln!(text, "  {v}");
                }
                records.push(r);
            }
            let ok = records.iter().all(|r| r.ok);
            let exit = if ok {
                0
            } else {
                Verdict::FailsWithCounterexample.exit_code()
            };
            (
                exit,
                json!({"schema": SCHEMA, "suite": "chain72", "ok": ok, "filters": records}),
            )
        }
        Suite::Sandwich61 => {
            let ring = GradedRing::projective(p, 2)?;
            let fixtures = [
                make_bundle(BundleCatalog::Tangent, ring),
                line(ring, 2),
                line(ring, -1),
                direct_sum(&[line(ring, 1), line(ring, 2)])?.with_name("O(1)+O(2)"),
            ];
            let horizon = g.horizon.unwrap_or(4);
            let mut records = Vec::new();
            for e in &fixtures {
                let r = restriction_sandwich(e, horizon)?;
                let _ = writeln!(
                    text,
                    "{}: phi_hat(E|H) = {}, phi_hat(E) = {}, {}",
                    r.bundle,
                    opt(r.phi_hat_restricted),
                    opt(r.phi_hat),
                    r.verdict
                );
                records.push(r);
            }
            let v = Verdict::combine(records.iter().map(|r| r.verdict));
            (
                v.exit_code(),
                json!({"schema": SCHEMA, "suite": "sandwich61", "verdict": v, "records": records}),
            )
        }
        Suite::Cor42 => {
            let ring = GradedRing::projective(p, 2)?;
            let fixtures = [
                line(ring, 1),
                line(ring, 0),
                make_bundle(BundleCatalog::Tangent, ring),
            ];
            let horizon = g.horizon.unwrap_or(4);
            let mut records = Vec::new();
            for e in &fixtures {
                let r = check_level_bound(e, horizon)?;
                let _ = writeln!(
                    text,
                    "{}: lambda = {}, phi_hat = {}, {:?}",
                    r.bundle, r.lambda, r.phi_hat, r.status
                );
                records.push(r);
            }
            // A gap is not a refutation, so it never reports failure.
            let exit = if records
                .iter()
                .all(|r| r.status == LevelBoundStatus::Consistent)
            {
                0
            } else {
                Verdict::Inconclusive.exit_code()
            };
            (
                exit,
                json!({"schema": SCHEMA, "suite": "cor42", "records": records}),
            )
        }
        Suite::Fujita => {
            let ring = GradedRing::projective(p, 2)?;
            let f = point_ideal(ring)?;
            let gs: Vec<TestSheaf> = (0..=2).map(|a| TestSheaf::new(line(ring, a))).collect();
            let r = fujita_m0_search(&f, &gs, 0, cap, g.horizon.unwrap_or(3))?;
            let _ = writeln!(
                text,
                "I_p against O, O(1), O(2): m0 = {} ({}), cap {}",
                opt(r.m0),
                r.verdict,
                r.cap
            );
            for m in &r.members {
                let _ = writeln!(
                    text,
                    "  {}: phi_hat = {}, certified {}",
                    m.label,
                    opt(m.phi_hat),
                    m.certified
                );
            }
            (r.verdict.exit_code(), to_value(&r))
        }
    };
    Ok(Outcome {
        exit,
        json,
        text,
        tsv: None,
    })
}
