//! The basic q-objects as reduced rational functions.

use crate::exact::RatFn;

use super::monomial::{Monomial, Params};
use super::spec::{poch_product, qint_product};
use super::SeriesError;

/// `[m] = (1 - q^m)/(1 - q)`, extended to every integer `m`.
pub fn qint(m: i64) -> RatFn {
    qint_product(m).to_ratfn()
}

/// `(base; q^step)_k`.
pub fn qpoch(base: &Monomial, step: i64, k: u64, params: &Params) -> Result<RatFn, SeriesError> {
    let (c, e) = base.eval(params)?;
    Ok(poch_product(&c, e, step, k).to_ratfn())
}

/// Gaussian binomial coefficient `[t choose s]_q`.
pub fn qbinom(t: u64, s: u64) -> Result<RatFn, SeriesError> {
    if s > t {
        return Err(SeriesError::Degenerate(format!("q-binomial with s={s} > t={t}")));
    }
    let one = crate::exact::rat::rat(1);
    let qq = |m: u64| poch_product(&one, 1, 1, m);
    let value = qq(t).div(&qq(s).mul(&qq(t - s)))?;
    Ok(value.to_ratfn())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use crate::exact::LaurentPoly;
    use crate::qseries::monomial::Param;

    #[test]
    fn qints() {
        assert_eq!(qint(3), RatFn::from_poly(LaurentPoly::from_ints(&[1, 1, 1])));
        assert_eq!(qint(-1), RatFn::monomial(rat(-1), -1));
        assert_eq!(qint(1), RatFn::one());
        assert!(qint(0).is_zero());
    }

    #[test]
    fn pochhammers() {
        let p = Params::new().with(Param::A, rat(2));
        let q_inv = Monomial::q(-1);
        let expect = LaurentPoly::binomial(rat(1), -1) * LaurentPoly::binomial(rat(1), 1);
        assert_eq!(qpoch(&q_inv, 2, 2, &p).unwrap(), RatFn::from_poly(expect));
        assert_eq!(qpoch(&q_inv, 2, 0, &p).unwrap(), RatFn::one());
        let aq = Monomial::q(-1).times(Param::A, 1);
        assert_eq!(qpoch(&aq, 2, 1, &p).unwrap(), RatFn::from_poly(LaurentPoly::binomial(rat(2), -1)));
        assert!(qpoch(&Monomial::one().times(Param::B, 1), 2, 1, &p).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinom(2, 1).unwrap(), RatFn::from_poly(LaurentPoly::from_ints(&[1, 1])));
        assert_eq!(qbinom(7, 0).unwrap(), RatFn::one());
        assert_eq!(qbinom(4, 2).unwrap(), RatFn::from_poly(LaurentPoly::from_ints(&[1, 1, 2, 1, 1])));
        assert!(qbinom(1, 2).is_err());
    }
}
