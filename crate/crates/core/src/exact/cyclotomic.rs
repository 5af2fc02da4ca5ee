use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use super::laurent::LaurentPoly;
use super::rat::BigRat;
use super::ExactError;

fn memo() -> &'static Mutex<HashMap<u64, LaurentPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, LaurentPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, obtained as
/// `(q^n - 1) / prod_{d | n, d < n} Phi_d(q)`.
pub fn cyclotomic(n: u64) -> Result<LaurentPoly, ExactError> {
    if n == 0 {
        return Err(ExactError::InvalidArgument("cyclotomic index must be positive".into()));
    }
    if let Some(p) = memo().lock().expect("memo lock").get(&n) {
        return Ok(p.clone());
    }
    let mut acc = LaurentPoly::monomial(BigRat::one(), n as i64) - LaurentPoly::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        acc = acc.exact_div(&cyclotomic(d)?)?.expect("proper cyclotomic divisors divide q^n - 1");
    }
    memo().lock().expect("memo lock").insert(n, acc.clone());
    Ok(acc)
}
