use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LaurentPolynomial, Monomial, Substitution, SymalgError, Var};

/// A quotient of Laurent polynomials.
///
/// The denominator is kept monic with respect to its leading monomial, so the
/// representation is unique up to a common non-unit factor.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, SymalgError> {
        if den.is_zero() {
            return Err(SymalgError::ZeroDenominator);
        }
        let (m, c) = den.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let unit_inv = Monomial::inv(&m);
        let c_inv = BigRational::one() / c;
        Ok(RationalFunction {
            num: num.mul_monomial(&unit_inv).scale(&c_inv),
            den: den.mul_monomial(&unit_inv).scale(&c_inv),
        })
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(LaurentPolynomial::one())
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant one.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den).expect("product of non-zero denominators")
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, SymalgError> {
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn inv(&self) -> Result<RationalFunction, SymalgError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den).unwrap()
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<RationalFunction, SymalgError> {
        RationalFunction::new(self.num.substitute(sub)?, self.den.substitute(sub)?)
    }

    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> RationalFunction {
        RationalFunction::new(self.num.map_monomials(&mut f), self.den.map_monomials(&mut f))
            .expect("monomial maps preserve non-zero polynomials up to collisions")
    }

    pub fn evaluate(&self, values: &HashMap<Var, BigRational>) -> Result<BigRational, SymalgError> {
        let d = self.den.evaluate(values)?;
        if d.is_zero() {
            return Err(SymalgError::DenominatorVanishes);
        }
        Ok(self.num.evaluate(values)? / d)
    }

    /// Exact equality by cross multiplication.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// The cross-multiplication difference `num1*den2 - num2*den1`, zero iff equal.
    pub fn cross_difference(&self, other: &RationalFunction) -> LaurentPolynomial {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    /// Equality of the stored representations.
    pub fn structurally_equal(&self, other: &RationalFunction) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
