use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, SymalgError, Var};

/// The image of a variable under a monomial substitution: `coeff * mono`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub coeff: BigRational,
    pub mono: Monomial,
}

impl Image {
    pub fn new(coeff: BigRational, mono: Monomial) -> Self {
        Image { coeff, mono }
    }

    pub fn mono(mono: Monomial) -> Self {
        Image {
            coeff: BigRational::one(),
            mono,
        }
    }
}

/// A monomial substitution `var -> coeff * monomial`. Variables not present map to themselves.
pub type Substitution = HashMap<Var, Image>;

/// Exact rational square root, if it exists.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// `c^(d/2)` in the rationals, if it exists.
pub(crate) fn rational_pow_half(c: &BigRational, d: i32) -> Option<BigRational> {
    let base = if d % 2 == 0 { c.clone() } else { rational_sqrt(c)? };
    let k = if d % 2 == 0 { d / 2 } else { d };
    if base.is_zero() {
        return if k > 0 { Some(BigRational::zero()) } else { None };
    }
    Some(num_traits::pow::Pow::pow(&base, k))
}

/// A Laurent polynomial with exact rational coefficients and half-integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPolynomial::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPolynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPolynomial::term(BigRational::one(), m)
    }

    pub fn var(v: Var) -> Self {
        LaurentPolynomial::monomial(Monomial::var(v))
    }

    /// `1 - c*m`.
    pub fn one_minus(c: &BigRational, m: &Monomial) -> Self {
        let mut p = LaurentPolynomial::one();
        p.add_term(-c.clone(), m.clone());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Returns the constant value if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, c: BigRational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPolynomial::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPolynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Rewrites every monomial through `f`, summing coefficients of collisions.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Self {
        let mut out = LaurentPolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(c.clone(), f(m));
        }
        out
    }

    /// Applies a monomial substitution.
    ///
    /// A half-integer power of a variable is only defined when its image
    /// has a rational square root coefficient and the resulting monomial stays on
    /// the half-integer lattice.
    pub fn substitute(&self, sub: &Substitution) -> Result<Self, SymalgError> {
        for (v, img) in sub {
            if img.coeff.is_zero() {
                return Err(SymalgError::ZeroImage(*v));
            }
        }
        let mut out = LaurentPolynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for &(v, d) in m.factors() {
                match sub.get(&v) {
                    None => mono = mono.mul(&Monomial::from_doubled(v, d)),
                    Some(img) => {
                        let part = img.mono.pow_half(d).ok_or(SymalgError::NonLatticeExponent(v))?;
                        let k = rational_pow_half(&img.coeff, d).ok_or(SymalgError::IrrationalPower(v))?;
                        coeff *= k;
                        mono = mono.mul(&part);
                    }
                }
            }
            out.add_term(coeff, mono);
        }
        Ok(out)
    }

    /// Evaluates at rational values for every variable that occurs.
    pub fn evaluate(&self, values: &HashMap<Var, BigRational>) -> Result<BigRational, SymalgError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, d) in m.factors() {
                let x = values.get(&v).ok_or(SymalgError::MissingAssignment(v))?;
                if x.is_zero() {
                    if d < 0 {
                        return Err(SymalgError::DivisionByZero(v));
                    }
                    t = BigRational::zero();
                    continue;
                }
                t *= rational_pow_half(x, d).ok_or(SymalgError::IrrationalPower(v))?;
            }
            total += t;
        }
        Ok(total)
    }

    /// All variables that occur with a non-zero exponent.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Largest absolute doubled exponent of `v`.
    pub fn max_abs_exponent(&self, v: Var) -> i32 {
        self.terms
            .keys()
            .map(|m| m.doubled_exponent(v).abs())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(-c.clone(), m.clone());
        }
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}
