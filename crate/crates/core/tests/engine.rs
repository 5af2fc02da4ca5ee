use proptest::prelude::*;
use qcl_core::congruence::{
    lemma_a_symmetry_check, lemma_b_check, modulus_build, verify_target, watson_identity_check, Status, WatsonParams,
};
use qcl_core::exact::rat::{rat, ratio, BigRat};
use qcl_core::exact::RatFn;
use qcl_core::qseries::{catalog_sum, MMode, Param, Params, Side, TargetId};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pool() -> Vec<BigRat> {
    vec![rat(2), rat(3), rat(5), rat(7), rat(11), rat(13), ratio(3, 2), ratio(5, 3), ratio(7, 2), rat(-2), rat(-3)]
}

fn params_for(id: TargetId, seed: u64) -> Params {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = pool();
    values.shuffle(&mut rng);
    let mut p = Params::new();
    for (param, v) in id.target().params.iter().zip(values) {
        p.set(*param, v);
    }
    p
}

fn all_ones() -> Params {
    [Param::A, Param::B, Param::C, Param::D].into_iter().fold(Params::new(), |p, x| p.with(x, rat(1)))
}

fn lhs_term(id: TargetId, k: i64, n: i64, p: &Params) -> RatFn {
    let (lhs, _) = id.target().sides().unwrap();
    lhs.term_at(k, n, p).unwrap().to_ratfn()
}

#[test]
fn four_parameter_summand_specializes() {
    for n in [3, 5, 7] {
        for k in 0..n {
            assert_eq!(
                lhs_term(TargetId::Thm11, k, n, &all_ones()),
                lhs_term(TargetId::Cor15, k, n, &Params::new()),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn two_parameter_summand_specializes() {
    for n in [3, 5, 7] {
        for k in 0..n {
            assert_eq!(
                lhs_term(TargetId::GenCdq3, k, n, &all_ones()),
                lhs_term(TargetId::Eq13, k, n, &Params::new()),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn watson_transformation_terminates_exactly() {
    for seed in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = pool();
        v.shuffle(&mut rng);
        let w = WatsonParams { a: v[0].clone(), b: v[1].clone(), c: v[2].clone(), d: v[3].clone(), e: v[4].clone() };
        for nt in 0..=6 {
            let verdict = watson_identity_check(nt, &w).unwrap();
            assert_eq!(verdict.status, Status::Pass, "seed={seed} N={nt}: {}", verdict.diagnostics);
        }
    }
}

#[test]
fn lhs_alone_is_divisible_for_composite_n() {
    for n in [9, 15] {
        for mode in MMode::BOTH {
            let v = lemma_b_check(n, mode, &params_for(TargetId::Thm11, n as u64)).unwrap();
            assert!(v.is_pass(), "n={n} {mode:?}: {}", v.diagnostics);
        }
    }
}

#[test]
fn summands_pair_up_modulo_phi() {
    for n in [3, 5, 7, 9, 11] {
        let v = lemma_a_symmetry_check(n, &params_for(TargetId::Thm11, 1)).unwrap();
        assert!(v.is_pass(), "n={n}: {}", v.diagnostics);
    }
}

/// Targets whose sides are plain sums and which hold at every odd n tried here.
const SOUND: [TargetId; 11] = [
    TargetId::Thm11,
    TargetId::Thm12,
    TargetId::Thm31,
    TargetId::Eq12,
    TargetId::Eq13,
    TargetId::GenCdq3,
    TargetId::GenCdq3Ab,
    TargetId::Cor13,
    TargetId::Cor15,
    TargetId::WeiE,
    TargetId::WeiF,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cofactor_times_modulus_is_the_difference(
        id in prop::sample::select(SOUND.to_vec()),
        n in prop::sample::select(vec![3i64, 5, 7]),
        half in any::<bool>(),
        seed in 0u64..1000,
    ) {
        let mode = if half { MMode::Half } else { MMode::NMinus1 };
        let params = params_for(id, seed);
        let v = verify_target(id, n, mode, &params).unwrap();
        prop_assume!(v.status != Status::Skipped);
        prop_assert!(v.is_pass(), "{id} n={n}: {}", v.diagnostics);
        let delta = catalog_sum(id, Side::Lhs, n, mode, &params).unwrap()
            - catalog_sum(id, Side::Rhs, n, mode, &params).unwrap();
        let p = RatFn::from_poly(modulus_build(&id.target().modulus, n, &params).unwrap());
        let cofactor = v.cofactor.expect("passing verdict carries a cofactor").to_ratfn();
        prop_assert_eq!(cofactor * p, delta);
    }

    #[test]
    fn evaluation_orders_agree(
        id in prop::sample::select(SOUND.to_vec()),
        n in prop::sample::select(vec![3i64, 5, 7]),
        seed in 0u64..1000,
    ) {
        let params = params_for(id, seed);
        let (lhs, _) = id.target().sides().unwrap();
        prop_assume!(id.target().admits(n).is_ok());
        let mode = MMode::NMinus1;
        let pre = lhs.prefactor.eval(0, n, &params).unwrap().to_ratfn();
        let mut acc = RatFn::zero();
        for k in (0..=lhs.upper.value(n, mode)).rev() {
            acc = acc + lhs.term_at(k, n, &params).unwrap().to_ratfn();
        }
        prop_assert_eq!(acc * pre, lhs.evaluate(n, mode, &params).unwrap().to_ratfn());
    }
}
