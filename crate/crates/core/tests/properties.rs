//! Randomized invariants over polynomials, presentations and cohomology.

use ample_forge_core::functors::{frobenius_pullback, frobenius_pushforward, nlf_locus_dim, twist};
use ample_forge_core::fuzz::{fuzz_instance, FuzzConfig, FuzzShape};
use ample_forge_core::groebner::buchberger_in;
use ample_forge_core::io::{module_to_text, parse_module};
use ample_forge_core::resolve::{dual, min_free_resolution, tor_dims};
use ample_forge_core::sheafcoh::cech_oracle;
use ample_forge_core::{
    buchberger, normal_form, GradedRing, Monomial, Polynomial, PresentedModule, Sheaf,
};
use proptest::prelude::*;

const SHAPES: [FuzzShape; 4] = [
    FuzzShape::MonomialIdeal,
    FuzzShape::BinomialIdeal,
    FuzzShape::Quotient,
    FuzzShape::DirectSum,
];

fn module(seed: u64, shape: usize, n: usize, p: u64) -> PresentedModule {
    let cfg = FuzzConfig {
        seed,
        count: 1,
        nvars: n + 1,
        max_gen_degree: 2,
        max_gens: 2,
        shape: SHAPES[shape],
        p,
    };
    fuzz_instance(&cfg, 0).unwrap().module
}

fn fuzzed() -> impl Strategy<Value = PresentedModule> {
    (
        any::<u64>(),
        0..4usize,
        1..=2usize,
        prop_oneof![Just(2u64), Just(3), Just(5)],
    )
        .prop_map(|(s, k, n, p)| module(s, k, n, p))
}

/// Polynomials in three variables over F_7.
fn poly() -> impl Strategy<Value = Polynomial> {
    let ring = GradedRing::new(7, 3).unwrap();
    prop::collection::vec((prop::array::uniform3(0u16..3), -20i64..20), 0..5).prop_map(
        move |terms| {
            Polynomial::from_terms(
                ring,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), c)),
            )
        },
    )
}

fn homogeneous(d: u16) -> impl Strategy<Value = Polynomial> {
    let ring = GradedRing::new(7, 3).unwrap();
    prop::collection::vec((0..=d, 0..=d, 1i64..7), 1..4).prop_map(move |terms| {
        Polynomial::from_terms(
            ring,
            terms
                .into_iter()
                .filter(|&(a, b, _)| a + b <= d)
                .map(|(a, b, c)| (Monomial::from_exponents(&[a, b, d - a - b]), c)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn ideal_members_reduce_to_zero(f in homogeneous(2), g in homogeneous(3), h in homogeneous(1), k in homogeneous(2)) {
        let gb = buchberger(&[f.clone(), g.clone()]).unwrap();
        let member = &(&h * &f) + &(&k * &(&h * &f));
        prop_assert!(normal_form(&member, &gb).unwrap().is_zero());
        prop_assert!(normal_form(&(&f * &k), &gb).unwrap().is_zero());
        let comb = &(&h * &g) + &(&(&h * &h) * &f);
        prop_assert!(normal_form(&comb, &gb).unwrap().is_zero());
        // The basis reproduces itself.
        let again = buchberger_in(gb.ring(), gb.generators()).unwrap();
        prop_assert_eq!(again.generators().len(), gb.generators().len());
    }

    #[test]
    fn printer_round_trip(m in fuzzed()) {
        let text = module_to_text(&m);
        let back = parse_module(&text).unwrap();
        prop_assert_eq!(&back.module, &m);
        prop_assert_eq!(module_to_text(&back.module), text);
    }

    #[test]
    fn resolution_is_a_minimal_complex(m in fuzzed()) {
        let res = min_free_resolution(&m).unwrap();
        prop_assert!(res.check_complex().is_ok());
        prop_assert!(res.is_minimal());
        prop_assert!(res.length() <= m.ring().nvars());
        let s = Sheaf::new(&m).unwrap();
        for d in -2..6 {
            prop_assert_eq!(res.euler_dim(d), s.series().value(d));
        }
    }

    #[test]
    fn twisting_shifts_cohomology_and_ext(m in fuzzed(), a in -3i32..=3) {
        let s = Sheaf::new(&m).unwrap();
        let st = Sheaf::new(&twist(&m, a)).unwrap();
        let n = m.ring().projective_dim();
        for d in -3i64..=3 {
            for i in 0..=n {
                prop_assert_eq!(st.h(i, d).unwrap(), s.h(i, d + a as i64).unwrap());
            }
            for j in 0..=n + 1 {
                prop_assert_eq!(st.ext_dim(j, d), s.ext_dim(j, d - a as i64));
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_hilbert_polynomial(m in fuzzed()) {
        let s = Sheaf::new(&m).unwrap();
        let n = m.ring().projective_dim();
        for d in -4i64..=4 {
            let chi: i64 = (0..=n).map(|i| if i % 2 == 0 { 1 } else { -1 } * s.h(i, d).unwrap() as i64).sum();
            prop_assert_eq!(num_rational::Ratio::from_integer(chi), s.euler_characteristic(d));
        }
    }

    #[test]
    fn serre_duality_for_split_bundles(twists in prop::collection::vec(-3i32..=3, 1..4), n in 1usize..=3) {
        let ring = GradedRing::projective(3, n).unwrap();
        let e = PresentedModule::free(ample_forge_core::FreeModule::new(ring, twists));
        let s = Sheaf::new(&e).unwrap();
        let sd = Sheaf::new(&dual(&e).unwrap()).unwrap();
        let ni = n as i64;
        for d in -5i64..=2 {
            for i in 0..=n {
                prop_assert_eq!(s.h(i, d).unwrap(), sd.h(n - i, -d - ni - 1).unwrap());
            }
        }
    }

    #[test]
    fn tor_is_symmetric(a in fuzzed(), seed in any::<u64>(), k in 0..3usize) {
        let r = a.ring();
        let b = module(seed, k, r.projective_dim(), r.p() as u64);
        for i in 0..=2 {
            let ab = tor_dims(&a, &b, i, (-1, 6)).unwrap();
            let ba = tor_dims(&b, &a, i, (-1, 6)).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn cech_oracle_agrees(seed in any::<u64>(), k in 0..3usize, n in 1usize..=2, p in prop_oneof![Just(2u64), Just(3)]) {
        let m = module(seed, k, n, p);
        let s = Sheaf::new(&m).unwrap();
        for d in -2i64..=2 {
            for i in 0..=n {
                prop_assert_eq!(s.h(i, d).unwrap(), cech_oracle(&m, i, d).unwrap(), "i={} d={}", i, d);
            }
        }
    }

    #[test]
    fn frobenius_keeps_locally_free_loci(m in fuzzed()) {
        let f = frobenius_pullback(&m).unwrap();
        prop_assert!(nlf_locus_dim(&f).unwrap() <= nlf_locus_dim(&m).unwrap());
    }

    #[test]
    fn pushforward_projection_formula(seed in any::<u64>(), k in 0..3usize) {
        let m = module(seed, k, 1, 2);
        let push = frobenius_pushforward(&m).unwrap();
        let s = Sheaf::new(&m).unwrap();
        let sp = Sheaf::new(&push).unwrap();
        for e in -2i64..=2 {
            for i in 0..=1 {
                prop_assert_eq!(sp.h(i, e).unwrap(), s.h(i, 2 * e).unwrap());
            }
        }
    }
}
