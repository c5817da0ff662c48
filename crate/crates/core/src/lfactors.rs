//! Closed-form unramified L-factors and the polynomials built from them.
//!
//! Conventions: `p = q_E^{-1/2}` and `u = q_E^{-s}`. At inert places
//! `q_F^{-s} = u^{1/2}` and `q_F^{-1} = p`. Shifts in `s` act on `u` alone.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symalg::{Factored, Image, LaurentPolynomial, Monomial, RationalFunction, Substitution, Var};
use crate::weyl::{CharacterVector, GroupContext, Kind, Place};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Tau,
    Sigma,
    Pi,
}

/// Satake parameters of one of the representations in play.
///
/// At inert places, and for sigma at split places, `vars` is the single
/// parameter list. For a split tau, `vars` holds the parameters of the first
/// GL factor and `dual` those of the second. For a split pi, `vars` are the
/// upper parameters, `dual` the lower ones, and `mu0` marks the middle one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeDatum {
    pub role: Role,
    pub place: Place,
    pub vars: Vec<Var>,
    pub dual: Vec<Var>,
    pub mu0: bool,
}

fn range_vars(f: impl Fn(u16) -> Var, from: usize, len: usize) -> Vec<Var> {
    (from + 1..=from + len).map(|i| f(i as u16)).collect()
}

impl SatakeDatum {
    /// The parameters of tau, of size `j`.
    pub fn tau(ctx: &GroupContext) -> Self {
        SatakeDatum::tau_block(ctx, 0, ctx.j)
    }

    /// A block of tau occupying positions `offset + 1 ..= offset + size`.
    pub fn tau_block(ctx: &GroupContext, offset: usize, size: usize) -> Self {
        match ctx.place() {
            Place::Inert => SatakeDatum {
                role: Role::Tau,
                place: Place::Inert,
                vars: range_vars(Var::Chi, offset, size),
                dual: Vec::new(),
                mu0: false,
            },
            Place::Split => SatakeDatum {
                role: Role::Tau,
                place: Place::Split,
                vars: range_vars(Var::Theta, offset, size),
                dual: range_vars(Var::Xi, offset, size),
                mu0: false,
            },
        }
    }

    /// Splits tau into consecutive blocks of the given sizes.
    pub fn tau_blocks(ctx: &GroupContext, sizes: &[usize]) -> Result<Vec<Self>> {
        if sizes.iter().sum::<usize>() != ctx.j || sizes.contains(&0) {
            return Err(Error::Precondition(format!(
                "block sizes {sizes:?} must be positive and sum to j={}",
                ctx.j
            )));
        }
        let mut offset = 0;
        Ok(sizes
            .iter()
            .map(|&s| {
                let b = SatakeDatum::tau_block(ctx, offset, s);
                offset += s;
                b
            })
            .collect())
    }

    /// The parameters of sigma: `x_{j+1}..x_{mtilde}` (inert) or `x_{j+1}..x_{m-j}` (split).
    pub fn sigma(ctx: &GroupContext) -> Self {
        let len = match ctx.place() {
            Place::Inert => ctx.mtilde - ctx.j,
            Place::Split => ctx.m - 2 * ctx.j,
        };
        SatakeDatum {
            role: Role::Sigma,
            place: ctx.place(),
            vars: range_vars(Var::Chi, ctx.j, len),
            dual: Vec::new(),
            mu0: false,
        }
    }

    /// The parameters of pi on the group of dimension `m - 2 ell - 1`.
    pub fn pi(ctx: &GroupContext) -> Self {
        match ctx.place() {
            Place::Inert => SatakeDatum {
                role: Role::Pi,
                place: Place::Inert,
                vars: range_vars(Var::Mu, 0, ctx.mtilde_h),
                dual: Vec::new(),
                mu0: false,
            },
            Place::Split => SatakeDatum {
                role: Role::Pi,
                place: Place::Split,
                vars: range_vars(Var::PiTheta, 0, ctx.mtilde_h),
                dual: range_vars(Var::PiVartheta, 0, ctx.mtilde_h),
                mu0: ctx.m.is_multiple_of(2),
            },
        }
    }

    /// Number of parameters as recorded by the datum's size: `j`, the sigma length or `mtilde_H`.
    pub fn count(&self) -> usize {
        self.vars.len()
    }

    /// The Satake conjugacy class as a single list of monomials.
    ///
    /// For a split pi this is `theta_1..theta_h, [mu0], vartheta_h^-1..vartheta_1^-1`.
    pub fn entries(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.vars.iter().map(|&v| Monomial::var(v)).collect();
        if self.role == Role::Pi && self.place == Place::Split {
            if self.mu0 {
                out.push(Monomial::var(Var::Mu0));
            }
            out.extend(self.dual.iter().rev().map(|&v| Monomial::pow(v, -1)));
        }
        out
    }

    /// The two GL(F) components of a split tau, as single-list data.
    pub fn components(&self) -> Option<(SatakeDatum, SatakeDatum)> {
        if self.role != Role::Tau || self.place != Place::Split {
            return None;
        }
        let part = |vars: &Vec<Var>| SatakeDatum {
            role: Role::Tau,
            place: Place::Split,
            vars: vars.clone(),
            dual: Vec::new(),
            mu0: false,
        };
        Some((part(&self.vars), part(&self.dual)))
    }

    fn is_split_pair(&self) -> bool {
        self.place == Place::Split && self.role == Role::Tau && !self.dual.is_empty()
    }
}

/// Substitution `x -> u x` on every parameter of tau.
pub fn twist_by_s(tau: &SatakeDatum) -> Result<Substitution> {
    if tau.role != Role::Tau {
        return Err(Error::Precondition("twist_by_s needs a tau datum".into()));
    }
    let u = Monomial::var(Var::U);
    Ok(tau
        .vars
        .iter()
        .chain(&tau.dual)
        .map(|&v| (v, Image::mono(Monomial::var(v).mul(&u))))
        .collect())
}

/// A shift of the complex variable, realised on `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shift {
    /// `s`.
    S,
    /// `s + 1/2`: `u -> u p`.
    SPlusHalf,
    /// `s + 1`: `u -> u p^2`.
    SPlusOne,
    /// `2s + 1`: `u -> u^2 p^2`.
    TwoSPlusOne,
}

impl Shift {
    fn image(self) -> Monomial {
        let (eu, ep) = match self {
            Shift::S => (1, 0),
            Shift::SPlusHalf => (1, 1),
            Shift::SPlusOne => (1, 2),
            Shift::TwoSPlusOne => (2, 2),
        };
        Monomial::from_pairs([(Var::U, 2 * eu), (Var::P, 2 * ep)])
    }

    pub fn apply(self, m: &Monomial) -> Monomial {
        let d = m.doubled_exponent(Var::U);
        if d == 0 {
            return m.clone();
        }
        let rest = m.mul(&Monomial::from_doubled(Var::U, -d));
        rest.mul(&self.image().pow_half(d).expect("integral image"))
    }
}

/// Whether the `s`-carrying variable appears in an L-factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SVar {
    Present,
    Absent,
}

/// Index range of the extra product in the even-dimensional inert tensor L-factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraRange {
    /// `k` runs over the parameters of tau.
    #[default]
    Tau,
    /// `k` runs over `1..n`, taken literally.
    Literal,
}

/// `1 - coeff * mono`, one Euler factor of an L-function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTerm {
    pub coeff: BigRational,
    pub mono: Monomial,
}

impl EulerTerm {
    pub fn new(mono: Monomial) -> Self {
        EulerTerm {
            coeff: BigRational::one(),
            mono,
        }
    }

    pub fn with_coeff(coeff: BigRational, mono: Monomial) -> Self {
        EulerTerm { coeff, mono }
    }

    /// `1 - coeff * mono`.
    pub fn factor(&self) -> LaurentPolynomial {
        LaurentPolynomial::one_minus(&self.coeff, &self.mono)
    }
}

impl fmt::Display for EulerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.coeff.is_negative() { "+" } else { "-" };
        let a = self.coeff.abs();
        if a.is_one() {
            write!(f, "(1 {sign} {})", self.mono)
        } else {
            write!(f, "(1 {sign} {a}*{})", self.mono)
        }
    }
}

/// `prod (1 - a_k)^{-1}` with a provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LFactorExpr {
    pub label: String,
    pub terms: Vec<EulerTerm>,
}

impl LFactorExpr {
    pub fn new(label: impl Into<String>, terms: Vec<EulerTerm>) -> Self {
        LFactorExpr {
            label: label.into(),
            terms,
        }
    }

    /// The polynomial `prod (1 - a_k)`, i.e. `1/L`.
    pub fn reciprocal(&self) -> LaurentPolynomial {
        self.terms
            .iter()
            .fold(LaurentPolynomial::one(), |acc, t| &acc * &t.factor())
    }

    /// The value `1 / prod (1 - a_k)`.
    pub fn value(&self) -> RationalFunction {
        RationalFunction::new(LaurentPolynomial::one(), self.reciprocal()).expect("Euler products are non-zero")
    }

    /// The value as an unexpanded product.
    pub fn factored(&self) -> Factored {
        self.terms.iter().fold(Factored::one(), |acc, t| {
            acc.div(&Factored::factor(&t.factor()).expect("Euler factors are non-zero"))
        })
    }

    pub fn shifted(&self, shift: Shift) -> LFactorExpr {
        LFactorExpr {
            label: format!("{}@{shift:?}", self.label),
            terms: self
                .terms
                .iter()
                .map(|t| EulerTerm::with_coeff(t.coeff.clone(), shift.apply(&t.mono)))
                .collect(),
        }
    }

    pub fn times(&self, other: &LFactorExpr) -> LFactorExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LFactorExpr {
            label: format!("{}*{}", self.label, other.label),
            terms,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for LFactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        write!(f, "[")?;
        for t in &self.terms {
            write!(f, "{t}")?;
        }
        write!(f, "]^-1")
    }
}

fn u_mono(svar: SVar) -> Monomial {
    match svar {
        SVar::Present => Monomial::var(Var::U),
        SVar::Absent => Monomial::one(),
    }
}

fn check_role(d: &SatakeDatum, role: Role) -> Result<()> {
    if d.role != role {
        return Err(Error::Precondition(format!(
            "expected a {role:?} datum, got {:?}",
            d.role
        )));
    }
    Ok(())
}

/// `L(s, tau x pi)`.
pub fn tensor_l(tau: &SatakeDatum, pi: &SatakeDatum, ctx: &GroupContext, svar: SVar) -> Result<LFactorExpr> {
    tensor_l_with(tau, pi, ctx, svar, ExtraRange::Tau)
}

/// `L(s, tau x pi)` with an explicit choice of the extra even-dimensional range.
pub fn tensor_l_with(
    tau: &SatakeDatum,
    pi: &SatakeDatum,
    ctx: &GroupContext,
    svar: SVar,
    range: ExtraRange,
) -> Result<LFactorExpr> {
    check_role(tau, Role::Tau)?;
    check_role(pi, Role::Pi)?;
    if tau.place != pi.place {
        return Err(Error::PlaceMismatch);
    }
    let u = u_mono(svar);
    let mut terms = Vec::new();
    match tau.place {
        Place::Inert => {
            for &x in &tau.vars {
                for &mu in &pi.vars {
                    let base = Monomial::var(x).mul(&u);
                    terms.push(EulerTerm::new(base.mul(&Monomial::var(mu))));
                    terms.push(EulerTerm::new(base.mul(&Monomial::pow(mu, -1))));
                }
            }
            if ctx.kind == Kind::UnitaryInert && !ctx.m_is_odd() {
                let extra: Vec<Var> = match range {
                    ExtraRange::Tau => tau.vars.clone(),
                    ExtraRange::Literal => range_vars(Var::Chi, 0, ctx.n),
                };
                for x in extra {
                    terms.push(EulerTerm::new(Monomial::var(x).mul(&u)));
                }
            }
        }
        Place::Split => {
            let c = pi.entries();
            for &t in &tau.vars {
                for e in &c {
                    terms.push(EulerTerm::new(Monomial::var(t).mul(e).mul(&u)));
                }
            }
            for &s in &tau.dual {
                for e in &c {
                    terms.push(EulerTerm::new(Monomial::var(s).mul(&e.inv()).mul(&u)));
                }
            }
        }
    }
    Ok(LFactorExpr::new("L(tau x pi)", terms))
}

/// `L(s, tau x sigma)`.
///
/// Inert: `prod (1 - x_i y_k^{+-1} u)`, with `prod (1 - x_i u)` when the
/// dual group of sigma has odd rank. Split: `L(tau_1 x sigma~) L(tau_2 x sigma)`.
pub fn tensor_sigma_l(tau: &SatakeDatum, sigma: &SatakeDatum, ctx: &GroupContext, svar: SVar) -> Result<LFactorExpr> {
    check_role(tau, Role::Tau)?;
    check_role(sigma, Role::Sigma)?;
    if tau.place != sigma.place {
        return Err(Error::PlaceMismatch);
    }
    let u = u_mono(svar);
    let mut terms = Vec::new();
    match tau.place {
        Place::Inert => {
            for &x in &tau.vars {
                for &y in &sigma.vars {
                    let base = Monomial::var(x).mul(&u);
                    terms.push(EulerTerm::new(base.mul(&Monomial::var(y))));
                    terms.push(EulerTerm::new(base.mul(&Monomial::pow(y, -1))));
                }
            }
            if ctx.kind == Kind::UnitaryInert && ctx.m_is_odd() {
                for &x in &tau.vars {
                    terms.push(EulerTerm::new(Monomial::var(x).mul(&u)));
                }
            }
        }
        Place::Split => {
            for &t in &tau.vars {
                for &y in &sigma.vars {
                    terms.push(EulerTerm::new(Monomial::var(t).mul(&Monomial::pow(y, -1)).mul(&u)));
                }
            }
            for &s in &tau.dual {
                for &y in &sigma.vars {
                    terms.push(EulerTerm::new(Monomial::var(s).mul(&Monomial::var(y)).mul(&u)));
                }
            }
        }
    }
    Ok(LFactorExpr::new("L(tau x sigma)", terms))
}

/// Shift for [`gl_rankin_l`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankinShift {
    Unshifted,
    TwoSPlusOne,
}

/// `L(s, a x b)` for GL-type data.
///
/// Two single-list data give `prod (1 - alpha beta u)`. Two split tau blocks
/// give `L(a_1 x b_2) L(b_1 x a_2)`, the cross term of their Asai factors.
pub fn gl_rankin_l(a: &SatakeDatum, b: &SatakeDatum, shift: RankinShift) -> Result<LFactorExpr> {
    let u = Monomial::var(Var::U);
    let mut terms = Vec::new();
    let mut pairs = |xs: &[Var], ys: &[Var]| {
        for &x in xs {
            for &y in ys {
                terms.push(EulerTerm::new(Monomial::var(x).mul(&Monomial::var(y)).mul(&u)));
            }
        }
    };
    match (a.is_split_pair(), b.is_split_pair()) {
        (false, false) => pairs(&a.vars, &b.vars),
        (true, true) => {
            pairs(&a.vars, &b.dual);
            pairs(&b.vars, &a.dual);
        }
        _ => return Err(Error::PlaceMismatch),
    }
    let l = LFactorExpr::new("L(a x b)", terms);
    Ok(match shift {
        RankinShift::Unshifted => l,
        RankinShift::TwoSPlusOne => l.shifted(Shift::TwoSPlusOne),
    })
}

/// Twist of the Asai factor by a power of the quadratic character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AsaiTwist {
    None,
    XiM,
}

/// `L(s, tau, Asai)`, optionally twisted by `xi^m`.
pub fn asai_l(tau: &SatakeDatum, ctx: &GroupContext, twist: AsaiTwist) -> Result<LFactorExpr> {
    check_role(tau, Role::Tau)?;
    if ctx.kind.is_orthogonal() {
        return Err(Error::UnsupportedKind(ctx.kind.to_string()));
    }
    match tau.place {
        Place::Split => {
            let (t1, t2) = tau.components().expect("split tau");
            let mut l = gl_rankin_l(&t1, &t2, RankinShift::Unshifted)?;
            l.label = "L(tau, Asai)".into();
            Ok(l)
        }
        Place::Inert => {
            let u = Monomial::var(Var::U);
            let mut terms = Vec::new();
            for (a, &x) in tau.vars.iter().enumerate() {
                for &y in &tau.vars[a + 1..] {
                    terms.push(EulerTerm::new(Monomial::var(x).mul(&Monomial::var(y)).mul(&u)));
                }
            }
            let flip = twist == AsaiTwist::XiM && ctx.m_is_odd();
            let c = if flip { -BigRational::one() } else { BigRational::one() };
            for &x in &tau.vars {
                let m = Monomial::var(x).mul(&Monomial::from_doubled(Var::U, 1));
                terms.push(EulerTerm::with_coeff(c.clone(), m));
            }
            Ok(LFactorExpr::new("L(tau, Asai)", terms))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SquareKind {
    Exterior,
    Symmetric,
}

/// `L(s, tau, wedge^2)` or `L(s, tau, Sym^2)`.
pub fn so_square_l(tau: &SatakeDatum, which: SquareKind) -> Result<LFactorExpr> {
    check_role(tau, Role::Tau)?;
    let u = Monomial::var(Var::U);
    let mut terms = Vec::new();
    for (a, &x) in tau.vars.iter().enumerate() {
        for &y in &tau.vars[a + 1..] {
            terms.push(EulerTerm::new(Monomial::var(x).mul(&Monomial::var(y)).mul(&u)));
        }
    }
    if which == SquareKind::Symmetric {
        for &x in &tau.vars {
            terms.push(EulerTerm::new(Monomial::pow(x, 2).mul(&u)));
        }
    }
    Ok(LFactorExpr::new(
        match which {
            SquareKind::Exterior => "L(tau, wedge2)",
            SquareKind::Symmetric => "L(tau, Sym2)",
        },
        terms,
    ))
}

/// The square L-factor replacing the Asai factor for an orthogonal kind.
pub fn square_kind_for(kind: Kind) -> Option<SquareKind> {
    match kind {
        Kind::SoEvenSplit | Kind::SoEvenQuasisplit => Some(SquareKind::Exterior),
        Kind::SoOdd => Some(SquareKind::Symmetric),
        _ => None,
    }
}

fn one_minus(m: Monomial) -> LaurentPolynomial {
    LaurentPolynomial::one_minus(&BigRational::one(), &m)
}

fn one_plus(m: Monomial) -> LaurentPolynomial {
    LaurentPolynomial::one_minus(&-BigRational::one(), &m)
}

/// `zeta(chi, t)` on a slice of character variables.
///
/// The slice's own Witt index decides the degenerate case: its length at
/// inert places, half its length at split places. Witt index at most one
/// gives `1`.
pub fn zeta_poly(chi: &[Var], t: u32, ctx: &GroupContext) -> Result<LaurentPolynomial> {
    let witt = match ctx.place() {
        Place::Inert => chi.len(),
        Place::Split => chi.len() / 2,
    };
    if witt <= 1 {
        return Ok(LaurentPolynomial::one());
    }
    if ctx.kind.is_orthogonal() {
        return Err(Error::UnsupportedKind(ctx.kind.to_string()));
    }
    let t = t as i32;
    let p_t = Monomial::pow(Var::P, t);
    let p_2t = Monomial::pow(Var::P, 2 * t);
    let mut acc = LaurentPolynomial::one();
    for (a, &x) in chi.iter().enumerate() {
        for &y in &chi[a + 1..] {
            let ratio = Monomial::var(x).mul(&Monomial::pow(y, -1));
            acc = &acc * &one_minus(ratio.mul(&p_2t));
            if ctx.place() == Place::Inert {
                let prod = Monomial::var(x).mul(&Monomial::var(y));
                acc = &acc * &one_minus(prod.mul(&p_2t));
            }
        }
    }
    if ctx.place() == Place::Inert {
        for &x in chi {
            let xm = Monomial::var(x);
            if ctx.m_is_odd() {
                acc = &acc * &one_plus(xm.mul(&p_t));
                acc = &acc * &one_minus(xm.mul(&p_2t));
            } else {
                acc = &acc * &one_minus(xm.mul(&p_t));
            }
        }
    }
    Ok(acc)
}

/// `d(chi_tau, s)`: `prod (1 - p u x_i)^{-1}` for even-dimensional inert unitary groups, else `1`.
pub fn d_factor(tau: &SatakeDatum, ctx: &GroupContext, svar: SVar) -> Result<LFactorExpr> {
    check_role(tau, Role::Tau)?;
    Ok(d_on(&tau.vars, ctx, svar))
}

fn d_on(vars: &[Var], ctx: &GroupContext, svar: SVar) -> LFactorExpr {
    let mut terms = Vec::new();
    if ctx.kind == Kind::UnitaryInert && !ctx.m_is_odd() {
        let pu = Monomial::var(Var::P).mul(&u_mono(svar));
        terms = vars
            .iter()
            .map(|&x| EulerTerm::new(pu.mul(&Monomial::var(x))))
            .collect();
    }
    LFactorExpr::new("d", terms)
}

fn require_j_is_ell_plus_one(ctx: &GroupContext) -> Result<()> {
    if ctx.j != ctx.ell + 1 {
        return Err(Error::Precondition(format!(
            "needs j = ell + 1, got j={}, ell={}",
            ctx.j, ctx.ell
        )));
    }
    Ok(())
}

fn require_unitary(ctx: &GroupContext) -> Result<()> {
    if ctx.kind.is_orthogonal() {
        return Err(Error::UnsupportedKind(ctx.kind.to_string()));
    }
    Ok(())
}

/// Generic parameters `m_1..m_k` matching the size of pi's Satake class.
fn mu_vars(pi: &SatakeDatum) -> Vec<Var> {
    range_vars(Var::Mu, 0, pi.entries().len())
}

/// The denominator `Q(chi_s, mu)` of the local zeta integral.
pub fn q_poly(tau: &SatakeDatum, pi: &SatakeDatum, ctx: &GroupContext) -> Result<LaurentPolynomial> {
    require_unitary(ctx)?;
    require_j_is_ell_plus_one(ctx)?;
    check_role(tau, Role::Tau)?;
    check_role(pi, Role::Pi)?;
    if tau.place != pi.place {
        return Err(Error::PlaceMismatch);
    }
    let pu = Monomial::from_pairs([(Var::P, 2), (Var::U, 2)]);
    let mus = mu_vars(pi);
    let mut acc = LaurentPolynomial::one();
    let (first, second) = match tau.place {
        Place::Inert => (&tau.vars, &tau.vars),
        Place::Split => (&tau.vars, &tau.dual),
    };
    for (&a, &b) in first.iter().zip(second) {
        for &mu in &mus {
            acc = &acc * &one_minus(pu.mul(&Monomial::var(a)).mul(&Monomial::var(mu)));
            acc = &acc * &one_minus(pu.mul(&Monomial::var(b)).mul(&Monomial::pow(mu, -1)));
        }
    }
    Ok(acc)
}

/// Substitution sending the generic `m_k` to the `k`-th entry of pi's Satake class.
pub fn pi_specialization(pi: &SatakeDatum) -> Substitution {
    mu_vars(pi)
        .into_iter()
        .zip(pi.entries())
        .map(|(v, e)| (v, Image::mono(e)))
        .collect()
}

/// Result of comparing `Q` with `L(s + 1/2, tau x pi)^{-1} d(chi_tau, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QIdentityOutcome {
    pub holds: bool,
    /// Cross-multiplication difference; zero iff the identity holds.
    pub witness: LaurentPolynomial,
}

pub fn verify_q_identity(ctx: &GroupContext, range: ExtraRange) -> Result<QIdentityOutcome> {
    let tau = SatakeDatum::tau(ctx);
    let pi = SatakeDatum::pi(ctx);
    let q = q_poly(&tau, &pi, ctx)?;
    let lhs = RationalFunction::from_poly(q.substitute(&pi_specialization(&pi))?);
    let l = tensor_l_with(&tau, &pi, ctx, SVar::Present, range)?.shifted(Shift::SPlusHalf);
    let d = d_factor(&tau, ctx, SVar::Present)?;
    let rhs = RationalFunction::new(l.reciprocal(), d.reciprocal())?;
    let witness = lhs.cross_difference(&rhs);
    Ok(QIdentityOutcome {
        holds: witness.is_zero(),
        witness,
    })
}

/// `P*(chi, mu) = zeta(chi_sigma, 1) / d(chi_tau)`.
pub fn p_star(ctx: &GroupContext) -> Result<RationalFunction> {
    require_unitary(ctx)?;
    let chi = CharacterVector::for_context(ctx);
    let sigma = SatakeDatum::sigma(ctx);
    let z = zeta_poly(&sigma.vars, 1, ctx)?;
    let d = d_on(chi.slice(0..ctx.j), ctx, SVar::Absent);
    Ok(RationalFunction::from_poly(&z * &d.reciprocal()))
}

/// `gamma_{omega_i}` on the GL part, where it has a closed form.
pub fn gamma_gl(ctx: &GroupContext, i: usize) -> Result<RationalFunction> {
    require_unitary(ctx)?;
    let ell = ctx.ell;
    let (closed, analytic, top) = match ctx.place() {
        Place::Inert => ((1..=ell).contains(&i), (ell + 1..=ctx.mtilde).contains(&i), ctx.mtilde),
        Place::Split => (
            (1..=ell).contains(&i) || (ctx.m - ell..=ctx.m - 1).contains(&i),
            (ell + 1..=ctx.m - ell - 1).contains(&i),
            ctx.m - 1,
        ),
    };
    if analytic {
        return Err(Error::OutOfRecursionRange(i));
    }
    if !closed {
        return Err(Error::IndexOutOfRange {
            index: i,
            range: format!("1..={top}"),
        });
    }
    let xi = Monomial::var(Var::Chi(i as u16));
    let xn = Monomial::var(Var::Chi(i as u16 + 1));
    let num = one_minus(xn.mul(&xi.inv()).mul(&Monomial::pow(Var::P, 2)));
    let den = one_minus(xi.mul(&xn.inv()));
    Ok(RationalFunction::new(num, den)?)
}

/// The Hecke element `Phi_0` in the auxiliary variables `X`, `X_1..`.
pub fn phi0_element(tau: &SatakeDatum, ctx: &GroupContext) -> Result<LaurentPolynomial> {
    require_unitary(ctx)?;
    check_role(tau, Role::Tau)?;
    let count = match tau.place {
        Place::Inert => ctx.mtilde_h,
        Place::Split => ctx.m - 2 * ctx.ell - 1,
    };
    let px = Monomial::var(Var::P).mul(&Monomial::var(Var::HeckeX));
    let (first, second) = match tau.place {
        Place::Inert => (&tau.vars, &tau.vars),
        Place::Split => (&tau.vars, &tau.dual),
    };
    let mut acc = LaurentPolynomial::one();
    for (&a, &b) in first.iter().zip(second) {
        for k in 1..=count {
            let xk = Var::Hecke(k as u16);
            acc = &acc * &one_minus(px.mul(&Monomial::var(a)).mul(&Monomial::var(xk)));
            acc = &acc * &one_minus(px.mul(&Monomial::var(b)).mul(&Monomial::pow(xk, -1)));
        }
    }
    Ok(acc)
}

/// `c(chi) = zeta(chi, 1) / zeta(chi, 0)`.
pub fn c_function(ctx: &GroupContext) -> Result<RationalFunction> {
    require_unitary(ctx)?;
    let chi = CharacterVector::for_context(ctx);
    Ok(RationalFunction::new(
        zeta_poly(&chi.vars, 1, ctx)?,
        zeta_poly(&chi.vars, 0, ctx)?,
    )?)
}

/// `L(s+1/2, tau x pi) / (L(s+1, tau x sigma) L(2s+1, tau, Asai x xi^m))`.
///
/// Orthogonal kinds use the exterior or symmetric square in place of the Asai factor.
pub fn unramified_rhs(
    tau: &SatakeDatum,
    sigma: &SatakeDatum,
    pi: &SatakeDatum,
    ctx: &GroupContext,
) -> Result<RationalFunction> {
    Ok(unramified_rhs_factored(tau, sigma, pi, ctx)?.expand())
}

/// [`unramified_rhs`] as an unexpanded product of Euler factors.
pub fn unramified_rhs_factored(
    tau: &SatakeDatum,
    sigma: &SatakeDatum,
    pi: &SatakeDatum,
    ctx: &GroupContext,
) -> Result<Factored> {
    require_j_is_ell_plus_one(ctx)?;
    if sigma.vars.is_empty() {
        return Err(Error::Precondition("sigma has no parameters".into()));
    }
    if tau.place != sigma.place || tau.place != pi.place {
        return Err(Error::PlaceMismatch);
    }
    let top = tensor_l(tau, pi, ctx, SVar::Present)?.shifted(Shift::SPlusHalf);
    let mid = tensor_sigma_l(tau, sigma, ctx, SVar::Present)?.shifted(Shift::SPlusOne);
    let square = match square_kind_for(ctx.kind) {
        Some(which) => so_square_l(tau, which)?,
        None => asai_l(tau, ctx, AsaiTwist::XiM)?,
    }
    .shifted(Shift::TwoSPlusOne);
    Ok(top.factored().div(&mid.factored()).div(&square.factored()))
}

/// Product of the block right-hand sides times the inverse cross Rankin-Selberg factors.
pub fn eulerian_rhs(
    taus: &[SatakeDatum],
    sigma: &SatakeDatum,
    pi: &SatakeDatum,
    ctx: &GroupContext,
) -> Result<RationalFunction> {
    Ok(eulerian_rhs_factored(taus, sigma, pi, ctx)?.expand())
}

/// [`eulerian_rhs`] as an unexpanded product of Euler factors.
pub fn eulerian_rhs_factored(
    taus: &[SatakeDatum],
    sigma: &SatakeDatum,
    pi: &SatakeDatum,
    ctx: &GroupContext,
) -> Result<Factored> {
    if taus.is_empty() {
        return Err(Error::Precondition("needs at least one block".into()));
    }
    let mut acc = Factored::one();
    for t in taus {
        acc = acc.mul(&unramified_rhs_factored(t, sigma, pi, ctx)?);
    }
    for (a, ta) in taus.iter().enumerate() {
        for tb in &taus[a + 1..] {
            let cross = gl_rankin_l(ta, tb, RankinShift::TwoSPlusOne)?;
            acc = acc.div(&cross.factored());
        }
    }
    Ok(acc)
}
