use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LaurentPolynomial, Monomial, RationalFunction, SymalgError, Var};

/// A rational function kept as a product of polynomial factors with integer multiplicities.
///
/// Each factor is stored with its leading term scaled to `1`; the units split
/// off that way are collected in `coeff * mono`. Identical factors in the
/// numerator and denominator cancel as soon as they meet, so comparing two
/// Euler products only expands what does not cancel.
#[derive(Clone, Debug)]
pub struct Factored {
    coeff: BigRational,
    mono: Monomial,
    factors: HashMap<LaurentPolynomial, i32>,
}

impl Default for Factored {
    fn default() -> Self {
        Factored::one()
    }
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            coeff: BigRational::one(),
            mono: Monomial::one(),
            factors: HashMap::new(),
        }
    }

    /// `p^k`. Fails on a zero polynomial.
    pub fn power(p: &LaurentPolynomial, k: i32) -> Result<Self, SymalgError> {
        let (m, c) = match p.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(SymalgError::ZeroDenominator),
        };
        let mut out = Factored::one();
        if k == 0 {
            return Ok(out);
        }
        let monic = p.mul_monomial(&m.inv()).scale(&(BigRational::one() / &c));
        out.coeff = num_traits::pow::Pow::pow(&c, k);
        out.mono = m.powi(k);
        if !monic.is_one() {
            out.factors.insert(monic, k);
        }
        Ok(out)
    }

    pub fn factor(p: &LaurentPolynomial) -> Result<Self, SymalgError> {
        Factored::power(p, 1)
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        out.mono = out.mono.mul(&other.mono);
        for (f, &k) in &other.factors {
            let e = out.factors.entry(f.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                out.factors.remove(f);
            }
        }
        out
    }

    pub fn inv(&self) -> Factored {
        Factored {
            coeff: BigRational::one() / &self.coeff,
            mono: self.mono.inv(),
            factors: self.factors.iter().map(|(f, &k)| (f.clone(), -k)).collect(),
        }
    }

    pub fn div(&self, other: &Factored) -> Factored {
        self.mul(&other.inv())
    }

    /// Number of distinct factors left after cancellation.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn expand_parts(&self) -> (LaurentPolynomial, LaurentPolynomial) {
        let mut num = LaurentPolynomial::term(self.coeff.clone(), self.mono.clone());
        let mut den = LaurentPolynomial::one();
        for (f, &k) in &self.factors {
            if k > 0 {
                num = &num * &f.pow(k as u32);
            } else {
                den = &den * &f.pow((-k) as u32);
            }
        }
        (num, den)
    }

    pub fn expand(&self) -> RationalFunction {
        let (num, den) = self.expand_parts();
        RationalFunction::new(num, den).expect("non-zero factors")
    }

    /// Exact equality: cancels common factors, then cross-multiplies what is left.
    pub fn equals(&self, other: &Factored) -> bool {
        let (num, den) = self.div(other).expand_parts();
        num == den
    }

    /// Exact value at a point, factor by factor.
    pub fn evaluate(&self, values: &HashMap<Var, BigRational>) -> Result<BigRational, SymalgError> {
        let mut acc = LaurentPolynomial::term(self.coeff.clone(), self.mono.clone()).evaluate(values)?;
        let mut zero = false;
        for (f, &k) in &self.factors {
            let v = f.evaluate(values)?;
            if v.is_zero() {
                if k < 0 {
                    return Err(SymalgError::DenominatorVanishes);
                }
                zero = true;
            } else {
                acc *= num_traits::pow::Pow::pow(&v, k);
            }
        }
        Ok(if zero { BigRational::zero() } else { acc })
    }
}
