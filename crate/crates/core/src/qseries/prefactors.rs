//! The special prefactors: Omega, Theta, and the two proof-step
//! prefactors R and S.

use num_traits::{One, Zero};

use crate::exact::rat::{rat, rat_pow, BigRat};
use crate::exact::{LaurentPoly, Product, RatFn};

use super::spec::{poch_product, qint_product};
use super::SeriesError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProofStep {
    Rq,
    Sq,
}

pub(crate) fn require_odd(n: i64) -> Result<(), SeriesError> {
    if n <= 1 || n % 2 == 0 {
        return Err(SeriesError::InadmissibleN { n, reason: "n must be odd and greater than 1".into() });
    }
    Ok(())
}

fn poly(terms: &[(BigRat, i64)]) -> LaurentPoly {
    terms.iter().fold(LaurentPoly::zero(), |acc, (c, e)| acc + LaurentPoly::monomial(c.clone(), *e))
}

fn qint_r(m: i64) -> RatFn {
    qint_product(m).to_ratfn()
}

/// `(c q^e; q^2)_len` as a rational function.
fn poch2(c: &BigRat, e: i64, len: i64) -> Product {
    poch_product(c, e, 2, len as u64)
}

fn div(a: &RatFn, b: &RatFn) -> Result<RatFn, SeriesError> {
    Ok(a.checked_div(b)?)
}

/// `[n]^3 {(n^2(1-q)^2 - (1+22q+q^2))/24 - 1/(q[n]^2[n-1][n+1])} q^{(n+5)/2}/(1+q^2)`.
pub fn omega(n: i64) -> Result<RatFn, SeriesError> {
    require_odd(n)?;
    let qn = qint_r(n);
    let one_minus_q = LaurentPoly::binomial(rat(1), 1);
    let quad = (&one_minus_q * &one_minus_q).scale(&rat(n * n)) - LaurentPoly::from_ints(&[1, 22, 1]);
    let first = RatFn::from_poly(quad.scale(&BigRat::new(1.into(), 24.into())));
    let inner = RatFn::monomial(rat(1), 1) * &qn * &qn * qint_r(n - 1) * qint_r(n + 1);
    let bracket = first - inner.recip()?;
    let tail = div(&RatFn::monomial(rat(1), (n + 5) / 2), &RatFn::from_poly(LaurentPoly::from_ints(&[1, 0, 1])))?;
    Ok(&qn * &qn * &qn * bracket * tail)
}

/// The two-term Theta expression.
pub fn theta(n: i64, a: &BigRat, b: &BigRat) -> Result<RatFn, SeriesError> {
    require_odd(n)?;
    if a.is_zero() || b.is_zero() {
        return Err(SeriesError::Degenerate("theta needs nonzero a and b".into()));
    }
    let d = (a - b) * (BigRat::one() - a * b);
    if d.is_zero() {
        return Err(SeriesError::Degenerate("theta needs a != b and ab != 1".into()));
    }
    let h = (n + 1) / 2;
    let b_minus_qn = poly(&[(b.clone(), 0), (rat(-1), n)]);
    let middle = poly(&[(a * b - BigRat::one() - a * a, 0), (a.clone(), n)]);
    let first = RatFn::from_poly(b_minus_qn * middle).scale(&d.recip());
    let b_part = Product::monomial(rat_pow(b, h), h).mul(&poch2(&b.recip(), -2, h)).div(&poch2(b, 2, h))?;

    let second = RatFn::from_poly(a_factors(n, a)).scale(&d.recip());
    let a_part = poch2(b, 0, 2)
        .mul(&poch2(&rat(1), -1, h).pow(2)?)
        .div(&poch2(&rat(1), -1, 2).mul(&poch2(&a.recip(), 2, h)).mul(&poch2(a, 2, h)))?;
    Ok(first * b_part.to_ratfn() + second * a_part.to_ratfn())
}

/// `(1 - a q^n)(a - q^n)`.
pub(crate) fn a_factors(n: i64, a: &BigRat) -> LaurentPoly {
    poly(&[(rat(1), 0), (-a.clone(), n)]) * poly(&[(a.clone(), 0), (rat(-1), n)])
}

fn check_a(n: i64, a: &BigRat) -> Result<(), SeriesError> {
    require_odd(n)?;
    if a.is_zero() || a.is_one() {
        return Err(SeriesError::Degenerate("the proof prefactors need a not in {0, 1}".into()));
    }
    Ok(())
}

/// `q^{(n+7)/2} / (q^{n-1}; q^2)_2`.
fn r_tail(n: i64) -> Result<RatFn, SeriesError> {
    Ok(Product::monomial(rat(1), (n + 7) / 2).div(&poch2(&rat(1), n - 1, 2))?.to_ratfn())
}

/// Left side of the mod-Phi_n step between the R and S prefactors:
/// `q^5 (q^-1;q^2)_h^2 / ((q^-1;q^2)_2 (q^2/a, aq^2;q^2)_h) - q^{(n+7)/2}/(q^{n-1};q^2)_2`.
pub fn r_brace(n: i64, a: &BigRat) -> Result<RatFn, SeriesError> {
    check_a(n, a)?;
    let h = (n + 1) / 2;
    let first = Product::monomial(rat(1), 5)
        .mul(&poch2(&rat(1), -1, h).pow(2)?)
        .div(&poch2(&rat(1), -1, 2).mul(&poch2(&a.recip(), 2, h)).mul(&poch2(a, 2, h)))?;
    Ok(first.to_ratfn() - r_tail(n)?)
}

/// `1/(1-q)^2 - n(1-a)a^{(n-1)/2} / ((1-q/a)(1-aq)(1-a^n))`.
pub fn s_brace(n: i64, a: &BigRat) -> Result<RatFn, SeriesError> {
    check_a(n, a)?;
    let one_minus_q = RatFn::from_poly(LaurentPoly::binomial(rat(1), 1));
    let first = (&one_minus_q * &one_minus_q).recip()?;
    let c = rat(n) * (BigRat::one() - a) * rat_pow(a, (n - 1) / 2) / (BigRat::one() - rat_pow(a, n));
    let den = LaurentPoly::binomial(a.recip(), 1) * LaurentPoly::binomial(a.clone(), 1);
    Ok(first - RatFn::new(LaurentPoly::constant(c), den)?)
}

/// Right side of the same step: `q^{(n+9)/2}` times [`s_brace`].
pub fn r_brace_reduced(n: i64, a: &BigRat) -> Result<RatFn, SeriesError> {
    Ok(s_brace(n, a)?.shift((n + 9) / 2))
}

/// `R_q(a, n)` or `S_q(a, n)` as displayed.
pub fn proof_prefactor(step: ProofStep, n: i64, a: &BigRat) -> Result<RatFn, SeriesError> {
    check_a(n, a)?;
    let one_minus_a = BigRat::one() - a;
    let weight = RatFn::from_poly(a_factors(n, a)).scale(&(&one_minus_a * &one_minus_a).recip());
    match step {
        ProofStep::Rq => Ok(r_brace(n, a)? * weight - r_tail(n)?),
        ProofStep::Sq => {
            let tail = Product::monomial(rat(1), 1).mul(&poch2(&rat(1), n - 1, 2)).recip()?.to_ratfn();
            Ok(s_brace(n, a)? * weight - tail)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::ratio;

    #[test]
    fn omega_at_two() {
        let w = omega(3).unwrap();
        assert_eq!(w.eval(&rat(2)), Some(ratio(-411656, 225)));
    }

    #[test]
    fn omega_rejects_even() {
        assert!(omega(4).is_err());
        assert!(omega(1).is_err());
    }

    #[test]
    fn theta_rejects_degenerate() {
        assert!(theta(3, &rat(2), &rat(2)).is_err());
        assert!(theta(3, &rat(2), &ratio(1, 2)).is_err());
    }

    #[test]
    fn proof_prefactor_rejects_one() {
        assert!(proof_prefactor(ProofStep::Sq, 3, &rat(1)).is_err());
        assert!(proof_prefactor(ProofStep::Rq, 3, &rat(0)).is_err());
    }
}
