//! Exact multivariate Laurent polynomials with half-integer exponents, and
//! their quotients.

mod factored;
mod monomial;
mod parse;
mod poly;
mod rational;
mod var;

use thiserror::Error;

pub use factored::Factored;
pub use monomial::Monomial;
pub use poly::{Image, LaurentPolynomial, Substitution};
pub use rational::RationalFunction;
pub use var::Var;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymalgError {
    #[error("substitution maps {0} to zero")]
    ZeroImage(Var),
    #[error("half-integer power of {0} leaves the exponent lattice")]
    NonLatticeExponent(Var),
    #[error("half-integer power of {0} has no rational value")]
    IrrationalPower(Var),
    #[error("negative power of {0} evaluated at zero")]
    DivisionByZero(Var),
    #[error("no value assigned to {0}")]
    MissingAssignment(Var),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("parse error: {0}")]
    Parse(String),
}

/// `num/den` as a rational number.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational number.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for parsing a polynomial literal; panics on malformed input.
pub fn poly(s: &str) -> LaurentPolynomial {
    s.parse()
        .unwrap_or_else(|e| panic!("invalid polynomial literal `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn renders_canonically() {
        let p = poly("x1 + x1^-1 - 1/2*p*u^{1/2} + 3");
        assert_eq!(p.to_string(), "-1/2*p*u^{1/2} + x1 + 3 + x1^-1");
        assert_eq!(poly("x1^{-5/2}*x2^{-3/2}").to_string(), "x1^{-5/2}*x2^{-3/2}");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(poly("-x1").to_string(), "-x1");
    }

    #[test]
    fn parse_round_trip_on_mixed_names() {
        let s = "2*x1*t2*s3*m4*m0*th1*vth2*X1*X*p^{3/2}*u^-2 - 7/3";
        let p = poly(s);
        assert_eq!(poly(&p.to_string()), p);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("x1 +".parse::<LaurentPolynomial>().is_err());
        assert!("y1".parse::<LaurentPolynomial>().is_err());
        assert!("x1^{1/3}".parse::<LaurentPolynomial>().is_err());
        assert!("x0".parse::<LaurentPolynomial>().is_err());
    }

    #[test]
    fn basic_arithmetic() {
        let a = poly("x1 - 1");
        let b = poly("x1 + 1");
        assert_eq!(&a * &b, poly("x1^2 - 1"));
        assert!((&a - &a).is_zero());
        assert_eq!(poly("x1^{1/2}").pow(2), poly("x1"));
        assert_eq!(poly("x1*x1^-1"), LaurentPolynomial::one());
    }

    #[test]
    fn substitution_half_integer_rules() {
        let p = poly("u^{1/2}");
        let mut s = Substitution::new();
        s.insert(Var::U, Image::mono(poly_mono("u*p^2")));
        assert_eq!(p.substitute(&s).unwrap(), poly("u^{1/2}*p"));

        let mut bad = Substitution::new();
        bad.insert(Var::U, Image::new(qi(2), poly_mono("u")));
        assert_eq!(p.substitute(&bad), Err(SymalgError::IrrationalPower(Var::U)));

        let mut ok = Substitution::new();
        ok.insert(Var::U, Image::new(qi(4), poly_mono("u")));
        assert_eq!(p.substitute(&ok).unwrap(), poly("2*u^{1/2}"));

        let mut zero = Substitution::new();
        zero.insert(Var::U, Image::new(qi(0), Monomial::one()));
        assert_eq!(poly("u").substitute(&zero), Err(SymalgError::ZeroImage(Var::U)));
    }

    #[test]
    fn substitution_can_leave_lattice() {
        let p = poly("x1^{1/2}");
        let mut s = Substitution::new();
        s.insert(Var::Chi(1), Image::mono(poly_mono("x2^{1/2}")));
        assert_eq!(p.substitute(&s), Err(SymalgError::NonLatticeExponent(Var::Chi(1))));
    }

    #[test]
    fn evaluation_errors() {
        let p = poly("x1^-1 + u");
        let mut vals = HashMap::new();
        vals.insert(Var::Chi(1), qi(2));
        assert_eq!(p.evaluate(&vals), Err(SymalgError::MissingAssignment(Var::U)));
        vals.insert(Var::U, qi(1));
        vals.insert(Var::Chi(1), qi(0));
        assert_eq!(p.evaluate(&vals), Err(SymalgError::DivisionByZero(Var::Chi(1))));
        vals.insert(Var::Chi(1), q(1, 2));
        assert_eq!(p.evaluate(&vals).unwrap(), qi(3));
        vals.insert(Var::P, q(1, 9));
        assert_eq!(poly("p^{-1/2}").evaluate(&vals).unwrap(), qi(3));
        vals.insert(Var::P, q(1, 2));
        assert!(poly("p^{1/2}").evaluate(&vals).is_err());
    }

    #[test]
    fn rational_function_normal_form() {
        let a = RationalFunction::new(poly("x1^2 - 1"), poly("2*x1 - 2")).unwrap();
        let b = RationalFunction::new(poly("x1 + 1"), poly("2")).unwrap();
        assert_eq!(a, b);
        assert!(!a.structurally_equal(&b));
        let c = RationalFunction::new(poly("x1*u + u"), poly("2*u")).unwrap();
        assert!(c.structurally_equal(&b));
        assert_eq!(
            RationalFunction::new(poly("1"), LaurentPolynomial::zero()).unwrap_err(),
            SymalgError::ZeroDenominator
        );
        assert!(RationalFunction::from_poly(LaurentPolynomial::zero()).inv().is_err());
    }

    #[test]
    fn rational_function_arithmetic() {
        let a = RationalFunction::new(poly("1"), poly("1 - x1")).unwrap();
        let b = RationalFunction::new(poly("1"), poly("1 + x1")).unwrap();
        let sum = a.add(&b);
        let expected = RationalFunction::new(poly("2"), poly("1 - x1^2")).unwrap();
        assert_eq!(sum, expected);
        assert_eq!(a.mul(&b), RationalFunction::new(poly("1"), poly("1 - x1^2")).unwrap());
        assert_eq!(sum.sub(&b), a);
        assert_eq!(a.div(&a).unwrap(), RationalFunction::one());
    }

    fn poly_mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }
}
