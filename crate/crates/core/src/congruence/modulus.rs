use num_traits::Zero;

use crate::exact::rat::{rat, rat_pow, BigRat};
use crate::exact::zpoly::ZPoly;
use crate::exact::{cyclotomic, LaurentPoly};
use crate::qseries::catalog::ModFactor;
use crate::qseries::Params;

use super::CheckError;

/// A squarefree building block of a modulus with its exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    /// Primitive integer polynomial with positive constant term.
    pub poly: ZPoly,
    pub exp: u32,
    pub label: String,
    /// The recipe's factors multiply to `unit * poly^exp`.
    pub unit: BigRat,
}

/// `p = c * z` with `z` primitive and positive constant term.
fn primitive(p: &LaurentPoly) -> (BigRat, ZPoly) {
    let (c, z) = ZPoly::from_rational(p);
    let (g, z) = z.canonical_factor();
    (c * BigRat::from_integer(g), z)
}

fn param_binomial(f: ModFactor, n: i64, params: &Params) -> Result<LaurentPoly, CheckError> {
    let p = f.required_param().expect("parameter factor");
    let v = params.get(p).map_err(CheckError::Series)?;
    if v.is_zero() {
        return Err(CheckError::InvalidModulus(format!("parameter {} is zero", p.symbol())));
    }
    let qn = LaurentPoly::monomial(rat(1), n);
    Ok(match f {
        ModFactor::OneMinusAQn => LaurentPoly::one() - qn.scale(v),
        _ => LaurentPoly::constant(v.clone()) - qn,
    })
}

fn check_n(n: i64) -> Result<(), CheckError> {
    if n < 2 {
        return Err(CheckError::InvalidModulus(format!("n = {n} is too small")));
    }
    Ok(())
}

/// Expanded product of the recipe's factors.
pub fn modulus_build(recipe: &[ModFactor], n: i64, params: &Params) -> Result<LaurentPoly, CheckError> {
    check_n(n)?;
    let mut acc = LaurentPoly::one();
    for &f in recipe {
        let piece = match f {
            ModFactor::Cyclotomic(e) => cyclotomic(n as u64)?.pow(e),
            ModFactor::QInt(e) => LaurentPoly::from_coeffs(vec![rat(1); n as usize]).pow(e),
            _ => param_binomial(f, n, params)?,
        };
        acc = acc * piece;
    }
    Ok(acc)
}

/// The recipe split into coprime squarefree atoms: `[n]` becomes the
/// cyclotomic factors `Phi_t`, `t | n`, `t > 1`, merged with any `Phi_n`.
pub fn modulus_atoms(recipe: &[ModFactor], n: i64, params: &Params) -> Result<Vec<Atom>, CheckError> {
    check_n(n)?;
    let mut atoms: Vec<Atom> = Vec::new();
    let mut push = |(c, poly): (BigRat, ZPoly), exp: u32, label: String| {
        let unit = rat_pow(&c, exp as i64);
        if let Some(a) = atoms.iter_mut().find(|a| a.poly == poly) {
            a.exp += exp;
            a.unit *= unit;
        } else {
            atoms.push(Atom { poly, exp, label, unit });
        }
    };
    for &f in recipe {
        match f {
            ModFactor::Cyclotomic(e) => push(primitive(&cyclotomic(n as u64)?), e, format!("Phi_{n}")),
            ModFactor::QInt(e) => {
                for t in (2..=n).filter(|t| n % t == 0) {
                    push(primitive(&cyclotomic(t as u64)?), e, format!("Phi_{t}"));
                }
            }
            _ => {
                let label = f.render().replace('n', &n.to_string());
                push(primitive(&param_binomial(f, n, params)?), 1, label);
            }
        }
    }
    Ok(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Param;
    use ModFactor::*;

    #[test]
    fn examples() {
        let p = Params::new().with(Param::A, rat(2));
        let m = modulus_build(&[Cyclotomic(1), OneMinusAQn, AMinusQn], 3, &p).unwrap();
        let expect = LaurentPoly::from_ints(&[1, 1, 1])
            * LaurentPoly::from_ints(&[1, 0, 0, -2])
            * LaurentPoly::from_ints(&[2, 0, 0, -1]);
        assert_eq!(m, expect);
        let phi3 = cyclotomic(3).unwrap();
        assert_eq!(modulus_build(&[QInt(1), Cyclotomic(3)], 3, &p).unwrap(), phi3.pow(4));
        assert_eq!(modulus_build(&[QInt(1)], 9, &p).unwrap(), phi3 * cyclotomic(9).unwrap());
    }

    #[test]
    fn atoms_merge_cyclotomics() {
        let atoms = modulus_atoms(&[QInt(1), Cyclotomic(3)], 9, &Params::new()).unwrap();
        let exps: Vec<(String, u32)> = atoms.iter().map(|a| (a.label.clone(), a.exp)).collect();
        assert_eq!(exps, vec![("Phi_3".to_string(), 1), ("Phi_9".to_string(), 4)]);
    }

    #[test]
    fn zero_parameter_is_rejected() {
        let p = Params::new().with(Param::A, rat(0));
        assert!(modulus_build(&[OneMinusAQn], 3, &p).is_err());
        assert!(modulus_build(&[BMinusQn], 3, &p).is_err());
    }
}
