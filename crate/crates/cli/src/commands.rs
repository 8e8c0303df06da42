//! Verb implementations. Each returns an [`Outcome`]; rendering and exit
//! handling live in `main`.

use std::fmt::Write as _;
use std::path::Path;

use ample_forge_core::amplitude::{
    default_tests, estimate_f_amplitude, p_ample_check, t_ample_prefix, AmplitudeReport,
    FilterKind, FilterSpec, Observation, TestSheaf, Verdict, SCHEMA,
};
use ample_forge_core::functors::{
    frobenius_power, frobenius_pushforward, globally_generated, line, make_bundle, nlf_locus_dim,
    restrict_hyperplane, restrict_last, sym_power, twist, BundleCatalog,
};
use ample_forge_core::fuzz::{fuzz_instance, FuzzConfig, FuzzShape};
use ample_forge_core::io::{parse_module, print_module};
use ample_forge_core::resolve::{betti, min_free_resolution};
use ample_forge_core::sheafcoh::{cohomology_table, level_sheaf, reg_t_sheaf};
use ample_forge_core::{parse_polynomial, Error, GradedRing, ModuleFile, PresentedModule, Sheaf};
use serde_json::{json, Value};

use crate::args::{Command, FilterArg, Global, ShapeArg, Source};
use crate::verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 64 for anything the caller got wrong, 1 for a failed computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 64,
            CliError::Core(e) => match e {
                Error::Parse { .. }
                | Error::GradedIncompatible { .. }
                | Error::NotPrime(_)
                | Error::BadVariableCount(_)
                | Error::NotHomogeneous(_)
                | Error::OutOfRange { .. }
                | Error::Precondition(_) => 64,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a verb produced.
pub struct Outcome {
    pub exit: i32,
    pub json: Value,
    pub text: String,
    pub tsv: Option<String>,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome {
            exit: 0,
            json,
            text,
            tsv: None,
        }
    }
}

pub fn parse_bundle(name: &str) -> CliResult<BundleCatalog> {
    let lower = name.trim().to_ascii_lowercase();
    let b = match lower.as_str() {
        "tangent" | "t" => BundleCatalog::Tangent,
        "cotangent" | "omega1" => BundleCatalog::Cotangent,
        "canonical" => BundleCatalog::Canonical,
        "structure" | "o" => BundleCatalog::Structure(0),
        _ => match lower.strip_prefix("o(").and_then(|r| r.strip_suffix(')')) {
            Some(d) => BundleCatalog::Structure(
                d.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad twist in bundle '{name}'")))?,
            ),
            None => return Err(CliError::Usage(format!("unknown bundle '{name}'"))),
        },
    };
    Ok(b)
}

pub fn read_module(path: &Path) -> CliResult<ModuleFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(parse_module(&text)?)
}

pub fn load(src: &Source) -> CliResult<ModuleFile> {
    match (&src.module, &src.bundle) {
        (Some(path), _) => read_module(path),
        (None, Some(b)) => {
            let ring = GradedRing::projective(src.p, src.n)?;
            Ok(ModuleFile::new(make_bundle(parse_bundle(b)?, ring)))
        }
        (None, None) => Err(CliError::Usage(
            "give --module FILE or --bundle NAME".into(),
        )),
    }
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> CliResult<(i64, i64)> {
    let bad = || CliError::Usage(format!("bad range '{s}', expected a..b"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn tests_from(ring: GradedRing, ladder: Option<&str>) -> CliResult<Vec<TestSheaf>> {
    match ladder {
        None => Ok(default_tests(ring)),
        Some(s) => {
            let (lo, hi) = parse_range(s)?;
            (lo..=hi)
                .map(|a| {
                    let a = i32::try_from(a)
                        .map_err(|_| CliError::Usage(format!("test twist {a} too large")))?;
                    Ok(TestSheaf::new(line(ring, a)))
                })
                .collect()
        }
    }
}

fn label(m: &PresentedModule) -> String {
    m.name().unwrap_or("M").to_string()
}

fn as_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn module_outcome(verb: &str, out: PresentedModule, names: Option<Vec<String>>) -> Outcome {
    let file = match names {
        Some(names) if names.len() == out.ring().nvars() => ModuleFile { module: out, names },
        _ => ModuleFile::new(out),
    };
    let text = print_module(&file);
    Outcome::ok(
        json!({
            "schema": SCHEMA,
            "verb": verb,
            "name": file.module.name(),
            "module": text,
        }),
        text,
    )
}

fn observations_tsv(obs: &[Observation]) -> String {
    let mut out = String::from("test\tq\tindex\tdim\n");
    for o in obs {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", o.test, o.q, o.index, o.dim);
    }
    out
}

fn report_outcome(verb: &str, subject: &str, rep: &AmplitudeReport) -> Outcome {
    let mut json = as_json(rep);
    json["verb"] = json!(verb);
    json["subject"] = json!(subject);
    let mut text = format!(
        "{verb} {subject}: {} (t = {}, horizon {})\n",
        rep.verdict, rep.t, rep.horizon
    );
    if let Some(phi) = rep.phi_hat {
        let _ = writeln!(text, "phi_hat = {phi}");
    }
    if let Some(w) = rep.witness_index {
        let _ = writeln!(text, "witness index = {w}");
    }
    for w in &rep.witnesses {
        let _ = writeln!(text, "  witness {}: from index {}", w.test, w.n0);
    }
    for c in &rep.counterexamples {
        let _ = writeln!(
            text,
            "  counterexample {}: H^{} at index {} has dimension {}",
            c.test, c.q, c.index, c.dim
        );
    }
    Outcome {
        exit: rep.verdict.exit_code(),
        json,
        text,
        tsv: Some(observations_tsv(&rep.observations)),
    }
}

pub fn run(cmd: &Command, g: &Global) -> CliResult<Outcome> {
    match cmd {
        Command::Cohomology { src, i, d } => {
            let f = load(src)?;
            let n = f.module.ring().projective_dim() as i64;
            let (ilo, ihi) = match i {
                Some(s) => parse_range(s)?,
                None => (0, n),
            };
            if ilo < 0 || ihi > n {
                return Err(CliError::Usage(format!("--i must lie in 0..{n}")));
            }
            let drange = match d {
                Some(s) => parse_range(s)?,
                None => (-g.window, g.window),
            };
            let sheaf = Sheaf::new(&f.module)?;
            let table = cohomology_table(&sheaf, (ilo as usize, ihi as usize), drange)?;
            let mut json = as_json(&table);
            json["schema"] = json!(SCHEMA);
            json["verb"] = json!("cohomology");
            let tsv = table.to_tsv();
            let text = format!(
                "{}euler check: {}\n",
                tsv,
                if table.euler_check { "ok" } else { "FAILED" }
            );
            Ok(Outcome {
                exit: if table.euler_check { 0 } else { 1 },
                json,
                text,
                tsv: Some(tsv),
            })
        }
        Command::Regularity { src, t } => {
            let f = load(src)?;
            let sheaf = Sheaf::new(&f.module)?;
            let n = f.module.ring().projective_dim();
            let ts: Vec<usize> = match t {
                Some(t) => vec![*t],
                None => (0..=n).collect(),
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut tsv = String::from("t\treg\n");
            for &t in &ts {
                let r = reg_t_sheaf(&sheaf, t)?;
                rows.push(json!({"t": t, "reg": r}));
                let _ = writeln!(text, "reg_{t} = {r}");
                let _ = writeln!(tsv, "{t}\t{r}");
            }
            let json = json!({"schema": SCHEMA, "verb": "regularity", "module": label(&f.module), "values": rows});
            Ok(Outcome {
                tsv: Some(tsv),
                ..Outcome::ok(json, text)
            })
        }
        Command::Level { src } => {
            let f = load(src)?;
            let lvl = level_sheaf(&Sheaf::new(&f.module)?)?;
            Ok(Outcome::ok(
                json!({"schema": SCHEMA, "verb": "level", "module": label(&f.module), "level": lvl}),
                format!("level = {lvl}\n"),
            ))
        }
        Command::Betti { src } => {
            let f = load(src)?;
            let table = betti(&min_free_resolution(&f.module)?)?;
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|(&(i, j), &b)| json!({"i": i, "j": j, "b": b}))
                .collect();
            let tsv = table.to_tsv();
            let json = json!({
                "schema": SCHEMA,
                "verb": "betti",
                "module": label(&f.module),
                "regularity": table.regularity(),
                "entries": entries,
            });
            Ok(Outcome {
                tsv: Some(tsv.clone()),
                ..Outcome::ok(json, tsv)
            })
        }
        Command::Bundle { src } => {
            let f = load(src)?;
            Ok(module_outcome("bundle", f.module, Some(f.names)))
        }
        Command::Twist { src, by } => {
            let f = load(src)?;
            Ok(module_outcome(
                "twist",
                twist(&f.module, *by),
                Some(f.names),
            ))
        }
        Command::Sym { src, power } => {
            let f = load(src)?;
            Ok(module_outcome(
                "sym",
                sym_power(&f.module, *power)?,
                Some(f.names),
            ))
        }
        Command::Frob { src, power } => {
            let f = load(src)?;
            Ok(module_outcome(
                "frob",
                frobenius_power(&f.module, *power)?,
                Some(f.names),
            ))
        }
        Command::FrobPush { src } => {
            let f = load(src)?;
            Ok(module_outcome(
                "frob-push",
                frobenius_pushforward(&f.module)?,
                Some(f.names),
            ))
        }
        Command::Restrict { src, form } => {
            let f = load(src)?;
            let out = match form {
                Some(text) => {
                    let l = parse_polynomial(f.module.ring(), &f.names, text)?;
                    restrict_hyperplane(&f.module, &l)?
                }
                None => restrict_last(&f.module)?,
            };
            Ok(module_outcome("restrict", out, None))
        }
        Command::Nlf { src } => {
            let f = load(src)?;
            let d = nlf_locus_dim(&f.module)?;
            let text = if d < 0 {
                "locally free\n".to_string()
            } else {
                format!("not locally free along a locus of dimension {d}\n")
            };
            Ok(Outcome::ok(
                json!({"schema": SCHEMA, "verb": "nlf", "module": label(&f.module), "nlf_locus_dim": d}),
                text,
            ))
        }
        Command::Globgen { src } => {
            let f = load(src)?;
            let yes = globally_generated(&f.module)?;
            let verdict = if yes {
                Verdict::HoldsWithWitness
            } else {
                Verdict::FailsWithCounterexample
            };
            Ok(Outcome {
                exit: verdict.exit_code(),
                json: json!({
                    "schema": SCHEMA,
                    "verb": "globgen",
                    "module": label(&f.module),
                    "globally_generated": yes,
                    "verdict": verdict,
                }),
                text: format!("globally generated: {}\n", if yes { "yes" } else { "no" }),
                tsv: None,
            })
        }
        Command::FilterCheck {
            src,
            kind,
            t,
            by,
            tests,
        } => {
            let f = load(src)?;
            let ring = f.module.ring();
            let fk = match kind {
                FilterArg::Line => FilterKind::LinePowers(f.module),
                FilterArg::Sym => FilterKind::SymPowers(f.module),
                FilterArg::Frob => FilterKind::FrobeniusPowers(f.module),
                FilterArg::TwistedFrob => FilterKind::TwistedFrobenius(f.module, line(ring, *by)),
            };
            let filter = FilterSpec::new(fk);
            let tests = tests_from(ring, tests.as_deref())?;
            let rep = t_ample_prefix(&filter, *t, &tests, g.horizon.unwrap_or(4))?;
            Ok(report_outcome("filter-check", &filter.label(), &rep))
        }
        Command::Famp { src, tests } => {
            let f = load(src)?;
            let tests = tests_from(f.module.ring(), tests.as_deref())?;
            let rep = estimate_f_amplitude(&f.module, &tests, g.horizon.unwrap_or(4))?;
            Ok(report_outcome("famp", &label(&f.module), &rep))
        }
        Command::Pamp { src, tests } => {
            let f = load(src)?;
            let tests = tests_from(f.module.ring(), tests.as_deref())?;
            let rep = p_ample_check(&f.module, &tests, g.horizon.unwrap_or(4))?;
            Ok(report_outcome("pamp", &label(&f.module), &rep))
        }
        Command::Verify {
            suite,
            fuzz_count,
            n,
            p,
            cap,
        } => verify::run(*suite, g, *fuzz_count, *n, *p, *cap),
        Command::Fuzz {
            shape,
            count,
            n,
            p,
            max_gen_degree,
            max_gens,
            index,
            out_dir,
        } => {
            let cfg = FuzzConfig {
                seed: g.seed,
                count: *count,
                nvars: n + 1,
                max_gen_degree: *max_gen_degree,
                max_gens: *max_gens,
                shape: match shape {
                    ShapeArg::MonomialIdeal => FuzzShape::MonomialIdeal,
                    ShapeArg::BinomialIdeal => FuzzShape::BinomialIdeal,
                    ShapeArg::Quotient => FuzzShape::Quotient,
                    ShapeArg::DirectSum => FuzzShape::DirectSum,
                },
                p: *p,
            };
            let indices: Vec<usize> = match index {
                Some(k) => vec![*k],
                None => (0..*count).collect(),
            };
            let mut instances = Vec::new();
            let mut text = String::new();
            for k in indices {
                let inst = fuzz_instance(&cfg, k)?;
                let body = print_module(&ModuleFile::new(inst.module));
                if let Some(dir) = out_dir {
                    let path = dir.join(format!("fuzz-{}-{k:04}.mod", cfg.seed));
                    std::fs::create_dir_all(dir)
                        .and_then(|_| std::fs::write(&path, &body))
                        .map_err(|e| CliError::Io {
                            path: path.display().to_string(),
                            source: e,
                        })?;
                }
                let _ = writeln!(text, "# instance {k}\n{body}");
                instances.push(json!({"index": k, "module": body}));
            }
            Ok(Outcome::ok(
                json!({"schema": SCHEMA, "verb": "fuzz", "config": cfg, "instances": instances}),
                text,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-4..4").unwrap(), (-4, 4));
        assert_eq!(parse_range("2").unwrap(), (2, 2));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn bundle_names() {
        assert_eq!(parse_bundle("tangent").unwrap(), BundleCatalog::Tangent);
        assert_eq!(parse_bundle("O(-3)").unwrap(), BundleCatalog::Structure(-3));
        assert_eq!(
            parse_bundle("structure").unwrap(),
            BundleCatalog::Structure(0)
        );
        assert!(parse_bundle("O(x)").is_err());
        assert!(parse_bundle("spinor").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 64);
        assert_eq!(
            CliError::Core(Error::Parse {
                line: 1,
                col: 1,
                msg: "x".into()
            })
            .exit_code(),
            64
        );
        assert_eq!(CliError::Core(Error::Internal("x".into())).exit_code(), 1);
    }
}
