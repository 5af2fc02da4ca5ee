use num_bigint::BigInt;
use proptest::prelude::*;
use qcl_core::exact::rat::{rat, BigRat};
use qcl_core::exact::{crt_pair, cyclotomic, poly_ext_gcd, LaurentPoly, RatFn};
use qcl_core::qseries::spec::poch_product;
use qcl_core::qseries::{qbinom, qint, qpoch, Monomial, Params};

/// Dense integer polynomials, kept deliberately naive.
type Dense = Vec<i128>;

fn dmul(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by `q^d - 1`.
fn ddiv_qd_minus_1(a: &Dense, d: usize) -> Dense {
    let mut r = a.clone();
    let mut quo = vec![0; a.len() - d];
    for i in (d..r.len()).rev() {
        let c = r[i];
        quo[i - d] = c;
        r[i] -= c;
        r[i - d] += c;
    }
    assert!(r.iter().all(|&c| c == 0), "not divisible");
    quo
}

fn mobius(mut n: u64) -> i32 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

fn qd_minus_1(d: usize) -> Dense {
    let mut v = vec![0; d + 1];
    v[0] = -1;
    v[d] = 1;
    v
}

/// `Phi_n = prod_{d|n} (q^d - 1)^{mu(n/d)}`.
fn cyclotomic_oracle(n: u64) -> Dense {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num: Dense = vec![1];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = dmul(&num, &qd_minus_1(d as usize));
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            num = ddiv_qd_minus_1(&num, d as usize);
        }
    }
    num
}

fn to_laurent(v: &Dense) -> LaurentPoly {
    LaurentPoly::from_coeffs(v.iter().map(|&c| BigRat::from_integer(BigInt::from(c))).collect())
}

/// Gaussian binomials by the Pascal recurrence.
fn qbinom_oracle(t: usize, s: usize) -> Dense {
    let mut rows: Vec<Vec<Dense>> = vec![vec![vec![1]]];
    for m in 1..=t {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut v: Dense = vec![0; j * (m - j) + 1];
            if j >= 1 {
                for (i, c) in rows[m - 1][j - 1].iter().enumerate() {
                    v[i] += c;
                }
            }
            if j < m {
                for (i, c) in rows[m - 1][j].iter().enumerate() {
                    v[i + j] += c;
                }
            }
            row.push(v);
        }
        rows.push(row);
    }
    rows[t][s].clone()
}

#[test]
fn cyclotomic_products_give_q_n_minus_1() {
    for n in 1..=50u64 {
        let mut prod = LaurentPoly::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            prod = &prod * &cyclotomic(d).unwrap();
        }
        assert_eq!(prod, LaurentPoly::binomial(rat(1), n as i64).scale(&rat(-1)), "n={n}");
        assert_eq!(cyclotomic(n).unwrap(), to_laurent(&cyclotomic_oracle(n)), "n={n}");
    }
}

#[test]
fn qint_is_product_of_cyclotomics() {
    for n in 1..=50u64 {
        let mut prod = LaurentPoly::one();
        for d in (2..=n).filter(|d| n % d == 0) {
            prod = &prod * &cyclotomic(d).unwrap();
        }
        assert_eq!(qint(n as i64), RatFn::from_poly(prod), "n={n}");
    }
}

#[test]
fn central_binomial_product_formula() {
    let p = Params::new();
    for t in 0..=30u64 {
        let lhs = poch_product(&rat(1), 1, 2, t)
            .div(&poch_product(&rat(1), 2, 2, t))
            .unwrap()
            .mul(&poch_product(&rat(-1), 1, 1, t).pow(2).unwrap());
        let b = qbinom(2 * t, t).unwrap();
        assert_eq!(lhs.to_ratfn(), b, "t={t}");
        if t <= 8 {
            let direct = qpoch(&Monomial::q(1), 2, t, &p).unwrap()
                * qpoch(&Monomial::q(2), 2, t, &p).unwrap().recip().unwrap()
                * qpoch(&Monomial::q(1).with_coeff(rat(-1)), 1, t, &p).unwrap().pow(2).unwrap();
            assert_eq!(direct, b, "t={t}");
        }
        assert!(b.is_polynomial());
        let oracle = to_laurent(&qbinom_oracle(2 * t as usize, t as usize));
        assert_eq!(b.num(), &oracle, "t={t}");
        assert!(b.num().coeffs().iter().all(|c| c.is_integer() && *c >= rat(0)));
    }
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|v| LaurentPoly::from_ints(&v))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = LaurentPoly> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn base() -> impl Strategy<Value = Monomial> {
    (prop::sample::select(vec![1i64, -1, 2, -3, 5]), prop::sample::select(vec![1i64, 2, 3]), -3i64..=3)
        .prop_map(|(n, d, e)| Monomial::q(e).with_coeff(qcl_core::exact::rat::ratio(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ext_gcd_certificate(a in small_poly(12), b in small_poly(12)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, u, v) = poly_ext_gcd(&a, &b).unwrap();
        prop_assert!((&(&(&u * &a) + &(&v * &b)) - &g).is_zero());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert!(g.lead() == rat(1));
    }

    #[test]
    fn crt_certificate(p in nonzero_poly(6), q in nonzero_poly(6), rp in small_poly(8), rq in small_poly(8)) {
        prop_assume!(p.degree() > 0 && q.degree() > 0);
        let (g, _, _) = poly_ext_gcd(&p, &q).unwrap();
        prop_assume!(g.is_one());
        let r = crt_pair(&p, &rp, &q, &rq).unwrap();
        prop_assert!((&r - &rp).rem(&p).unwrap().is_zero());
        prop_assert!((&r - &rq).rem(&q).unwrap().is_zero());
        prop_assert!(r.is_zero() || r.degree() < p.degree() + q.degree());
    }

    #[test]
    fn reduction_is_canonical(a in small_poly(8), b in nonzero_poly(8), c in nonzero_poly(4)) {
        let r = RatFn::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&r.reduce(), &r);
        prop_assert_eq!(&RatFn::new(&a * &c, &b * &c).unwrap(), &r);
        // value check at a point where nothing vanishes
        let x = rat(7);
        if let (Some(av), Some(bv)) = (a.eval(&x), b.eval(&x)) {
            if bv != rat(0) {
                prop_assert_eq!(r.eval(&x), Some(av / bv));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pochhammer_multiplicativity(x in base(), step in 1i64..=2, m in 0u64..=7, k in 0u64..=7) {
        let p = Params::new();
        let whole = qpoch(&x, step, m + k, &p).unwrap();
        let head = qpoch(&x, step, m, &p).unwrap();
        let tail = qpoch(&x.mul(&Monomial::q(step * m as i64)), step, k, &p).unwrap();
        prop_assert_eq!(whole, head * tail);
    }
}
