use proptest::prelude::*;
use qcl_core::congruence::Status;
use qcl_core::exact::rat::{rat, ratio, BigRat};
use qcl_core::padic::{classical_check, factorial, rising, vp, PadicId};

/// `v_p(k!)` by counting multiples of p, p^2, ...
fn legendre(k: u32, p: u64) -> i64 {
    let (mut total, mut pk) = (0i64, p);
    while pk <= k as u64 {
        total += (k as u64 / pk) as i64;
        pk *= p;
    }
    total
}

#[test]
fn rising_and_factorial_agree() {
    for k in 0..=20u32 {
        assert_eq!(rising(&rat(1), k), factorial(k));
        for p in [2, 3, 5, 7] {
            assert_eq!(vp(&factorial(k), p).unwrap(), legendre(k, p), "k={k} p={p}");
        }
    }
}

#[test]
fn classical_displays_hold() {
    for id in PadicId::ALL {
        for (p, r) in [(5, 1), (7, 1), (11, 1)] {
            let v = classical_check(id, p, r).unwrap();
            assert_eq!(v.status, Status::Pass, "{} p={p} r={r}: {:?}", id.name(), v.notes);
        }
    }
    let v = classical_check(PadicId::Pad13, 5, 2).unwrap();
    assert_eq!(v.status, Status::Pass);
    assert!(v.valuation.is_none_or(|x| x >= 5));
}

#[test]
fn small_primes_are_skipped_where_required() {
    assert_eq!(classical_check(PadicId::Pad13, 3, 1).unwrap().status, Status::Skipped);
    assert_ne!(classical_check(PadicId::Pad15, 3, 1).unwrap().status, Status::Skipped);
    assert!(classical_check(PadicId::Pad13, 4, 1).is_err());
    assert!(classical_check(PadicId::Pad13, 9, 1).is_err());
}

fn half_integer() -> impl Strategy<Value = BigRat> {
    (-9i64..=9).prop_map(|m| ratio(2 * m + 1, 2))
}

proptest! {
    #[test]
    fn rising_steps(x in half_integer(), k in 0u32..=20) {
        prop_assert_eq!(rising(&x, k + 1), rising(&x, k) * (&x + rat(k as i64)));
    }

    #[test]
    fn valuation_is_additive(a in 1i64..5000, b in 1i64..5000, p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        let (x, y) = (ratio(a, b), ratio(b, a + 1));
        prop_assert_eq!(vp(&(&x * &y), p).unwrap(), vp(&x, p).unwrap() + vp(&y, p).unwrap());
    }
}
