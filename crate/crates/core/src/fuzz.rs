//! Reproducible random modules.
//!
//! Instance `k` of a stream is drawn from a ChaCha8 generator seeded with
//! the config seed on stream `k`, so any single instance can be rebuilt
//! without replaying the ones before it.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::vector::ModVec;
use crate::poly::{monomials_of_degree, GradedRing, Monomial, Polynomial};
use crate::resolve::{direct_sum, FreeModule, PresentedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FuzzShape {
    /// `S/I`, `I` generated by monomials.
    MonomialIdeal,
    /// `S/I`, `I` generated by binomials `m - c m'` of equal degree.
    BinomialIdeal,
    /// Cokernel of a random homogeneous map into a small free module.
    Quotient,
    /// Direct sum of two instances of the other shapes.
    DirectSum,
}

impl std::str::FromStr for FuzzShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "monomial_ideal" => Ok(FuzzShape::MonomialIdeal),
            "binomial_ideal" => Ok(FuzzShape::BinomialIdeal),
            "quotient" => Ok(FuzzShape::Quotient),
            "direct_sum" => Ok(FuzzShape::DirectSum),
            _ => Err(Error::Precondition(format!("unknown fuzz shape '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    /// Number of ring variables, i.e. `n + 1`.
    pub nvars: usize,
    pub max_gen_degree: u32,
    /// Upper bound on ideal generators or relation columns.
    pub max_gens: usize,
    pub shape: FuzzShape,
    pub p: u64,
}

impl FuzzConfig {
    pub fn ring(&self) -> Result<GradedRing> {
        if self.nvars < 2 {
            return Err(Error::Precondition(
                "fuzzing needs at least two variables".into(),
            ));
        }
        GradedRing::new(self.p, self.nvars)
    }
}

/// One generated module with the stream index that rebuilds it.
#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub index: usize,
    pub module: PresentedModule,
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, d: u32) -> Monomial {
    let all = monomials_of_degree(nvars, d);
    all[rng.gen_range(0..all.len())].clone()
}

fn random_degree(rng: &mut ChaCha8Rng, max: u32) -> u32 {
    rng.gen_range(1..=max.max(1))
}

fn random_poly(rng: &mut ChaCha8Rng, ring: GradedRing, d: u32, terms: usize) -> Polynomial {
    let p = ring.p() as i64;
    let picks: Vec<(Monomial, i64)> = (0..terms)
        .map(|_| (random_monomial(rng, ring.nvars(), d), rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(ring, picks)
}

fn name_of(ring: GradedRing, gens: &[Polynomial]) -> String {
    let names = ring.default_names();
    let list: Vec<String> = gens.iter().map(|g| g.display_with(&names)).collect();
    format!("S/({})", list.join(", "))
}

fn ideal_quotient(ring: GradedRing, gens: Vec<Polynomial>) -> Result<PresentedModule> {
    let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(PresentedModule::free(FreeModule::new(ring, vec![0])).with_name("S"));
    }
    let name = name_of(ring, &gens);
    Ok(PresentedModule::quotient_ring(ring, &gens)?.with_name(name))
}

fn draw(
    cfg: &FuzzConfig,
    ring: GradedRing,
    shape: FuzzShape,
    rng: &mut ChaCha8Rng,
) -> Result<PresentedModule> {
    let nv = ring.nvars();
    match shape {
        FuzzShape::MonomialIdeal => {
            let k = rng.gen_range(1..=cfg.max_gens.max(1));
            let gens = (0..k)
                .map(|_| {
                    let d = random_degree(rng, cfg.max_gen_degree);
                    Polynomial::term(ring, random_monomial(rng, nv, d), 1)
                })
                .collect();
            ideal_quotient(ring, gens)
        }
        FuzzShape::BinomialIdeal => {
            let k = rng.gen_range(1..=cfg.max_gens.max(1));
            let gens = (0..k)
                .map(|_| {
                    let d = random_degree(rng, cfg.max_gen_degree);
                    random_poly(rng, ring, d, 2)
                })
                .collect();
            ideal_quotient(ring, gens)
        }
        FuzzShape::Quotient => {
            let rank = rng.gen_range(1..=2usize);
            let twists: Vec<i32> = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
            let top = *twists.iter().max().expect("rank >= 1");
            let ncols = if cfg.max_gens == 0 {
                0
            } else {
                rng.gen_range(1..=cfg.max_gens)
            };
            let mut cols = Vec::with_capacity(ncols);
            for _ in 0..ncols {
                // Column degree at least top + 1 so every entry has degree >= 1.
                let deg = top + random_degree(rng, cfg.max_gen_degree) as i32;
                let entries: Vec<Polynomial> = twists
                    .iter()
                    .map(|&t| {
                        let d = (deg - t) as u32;
                        if rng.gen_bool(0.25) {
                            Polynomial::zero(ring)
                        } else {
                            let terms = rng.gen_range(1..=2);
                            random_poly(rng, ring, d, terms)
                        }
                    })
                    .collect();
                cols.push(ModVec::from_entries(&entries));
            }
            let gens = FreeModule::new(ring, twists.clone());
            let m = PresentedModule::from_columns(gens, cols)?;
            let label = if m.is_free() { "free" } else { "coker" };
            let t: Vec<String> = twists.iter().map(|t| t.to_string()).collect();
            Ok(m.with_name(format!("{label}[{}]", t.join(","))))
        }
        FuzzShape::DirectSum => {
            let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
                0 => FuzzShape::MonomialIdeal,
                1 => FuzzShape::BinomialIdeal,
                _ => FuzzShape::Quotient,
            };
            let s1 = pick(rng);
            let a = draw(cfg, ring, s1, rng)?;
            let s2 = pick(rng);
            let b = draw(cfg, ring, s2, rng)?;
            let name = format!("{} + {}", a.name().unwrap_or("M"), b.name().unwrap_or("M"));
            Ok(direct_sum(&[a, b])?.with_name(name))
        }
    }
}

/// Instance `index` of the stream described by `cfg`.
pub fn fuzz_instance(cfg: &FuzzConfig, index: usize) -> Result<FuzzInstance> {
    let ring = cfg.ring()?;
    let mut rng = rng_for(cfg.seed, index);
    let module = draw(cfg, ring, cfg.shape, &mut rng)?;
    Ok(FuzzInstance { index, module })
}

/// The first `cfg.count` instances, in order.
pub fn fuzz_stream(cfg: &FuzzConfig) -> impl Iterator<Item = FuzzInstance> + '_ {
    // Every draw produces homogeneous data, so construction cannot fail.
    (0..cfg.count).map(move |k| fuzz_instance(cfg, k).expect("fuzz draw is graded"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::module_to_text;

    fn cfg(shape: FuzzShape) -> FuzzConfig {
        FuzzConfig {
            seed: 1,
            count: 3,
            nvars: 3,
            max_gen_degree: 3,
            max_gens: 3,
            shape,
            p: 3,
        }
    }

    #[test]
    fn monomial_golden_stream() {
        let texts: Vec<String> = fuzz_stream(&cfg(FuzzShape::MonomialIdeal))
            .map(|i| module_to_text(&i.module))
            .collect();
        let golden = include_str!("../tests/data/fuzz_seed1_monomial.txt");
        assert_eq!(texts.join("\n"), golden);
    }

    #[test]
    fn same_config_same_stream() {
        for shape in [
            FuzzShape::MonomialIdeal,
            FuzzShape::BinomialIdeal,
            FuzzShape::Quotient,
            FuzzShape::DirectSum,
        ] {
            let c = FuzzConfig {
                count: 8,
                ..cfg(shape)
            };
            let a: Vec<String> = fuzz_stream(&c).map(|i| module_to_text(&i.module)).collect();
            let b: Vec<String> = fuzz_stream(&c).map(|i| module_to_text(&i.module)).collect();
            assert_eq!(a, b);
            // Replay by index.
            assert_eq!(module_to_text(&fuzz_instance(&c, 5).unwrap().module), a[5]);
        }
    }

    #[test]
    fn zero_relations_give_free_modules() {
        let c = FuzzConfig {
            max_gens: 0,
            count: 10,
            ..cfg(FuzzShape::Quotient)
        };
        assert!(fuzz_stream(&c).all(|i| i.module.is_free()));
    }

    #[test]
    fn seeds_differ() {
        let a: Vec<String> = fuzz_stream(&FuzzConfig {
            count: 6,
            ..cfg(FuzzShape::Quotient)
        })
        .map(|i| module_to_text(&i.module))
        .collect();
        let b: Vec<String> = fuzz_stream(&FuzzConfig {
            seed: 2,
            count: 6,
            ..cfg(FuzzShape::Quotient)
        })
        .map(|i| module_to_text(&i.module))
        .collect();
        assert_ne!(a, b);
    }
}
