//! The verification battery run by `zetaforge suite`.
//!
//! Each check is exact. Time limits are part of the pass condition.

use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use web_time::Instant;

use crate::error::Result;
use crate::identity::{
    check_delta_antisymmetry, clause_for, cstar_ratio_check, is_singular, main_delta_identity, vanishing_sum, Clause,
    Status,
};
use crate::lfactors::{
    eulerian_rhs_factored, unramified_rhs_factored, verify_q_identity, zeta_poly, ExtraRange, SatakeDatum,
};
use crate::orbits::{bessel_orbit_count, enumerate_eps, CosetDatum, FormFamily, OrbitCountQuery};
use crate::symalg::{q, qi, BigRational, Image, LaurentPolynomial, Monomial, RationalFunction, Substitution, Var};
use crate::weyl::{CharacterVector, GroupContext, Kind};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str) -> Self {
        CriterionResult {
            id,
            name,
            passed: true,
            details: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.passed = false;
            self.details.push(format!("FAILED: {what}"));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }

    fn finish(mut self, start: Instant, limit: Option<Duration>) -> Self {
        self.elapsed = start.elapsed();
        if let Some(limit) = limit {
            let ok = self.elapsed < limit;
            self.require(ok, format!("took {:?}, limit {:?}", self.elapsed, limit));
        }
        self
    }

    fn error(mut self, e: crate::Error) -> Self {
        self.passed = false;
        self.details.push(format!("FAILED: {e}"));
        self
    }
}

fn ctx(kind: Kind, m: usize, ell: usize, j: usize) -> Result<GroupContext> {
    GroupContext::new(kind, m, ell, j)
}

pub const NAMES: [&str; 10] = [
    "delta antisymmetry",
    "vanishing lemma",
    "main delta identity",
    "Q and L consistency",
    "P* ratio clauses",
    "orbit count table",
    "coset enumeration",
    "degenerate zeta",
    "eulerian composition",
    "symalg properties",
];

pub fn antisymmetry(max_rank: usize) -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(1, NAMES[0]);
    for m in [5, 7] {
        match ctx(Kind::UnitaryInert, m, 0, 0).and_then(|c| check_delta_antisymmetry(&c, max_rank)) {
            Ok(rep) => {
                r.require(rep.status == Status::Verified, format!("m={m}: {}", rep.witness));
                r.note(format!("m={m}: {} ({})", rep.status.as_str(), rep.notes.join("; ")));
            }
            Err(e) => return r.error(e),
        }
    }
    r.finish(start, Some(Duration::from_secs(5)))
}

pub fn vanishing(max_rank: usize) -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(2, NAMES[1]);
    for ell in [1, 2] {
        let c = match ctx(Kind::UnitaryInert, 7, ell, ell + 1) {
            Ok(c) => c,
            Err(e) => return r.error(e),
        };
        let (mut zero, mut nonzero) = (0, 0);
        for a in 0..5 {
            for b in 0..5 {
                for d in 0..5 {
                    let nvec = [a, b, d];
                    let sum = match vanishing_sum(&c, &nvec, max_rank) {
                        Ok(s) => s,
                        Err(e) => return r.error(e),
                    };
                    let singular = is_singular(&c, &nvec);
                    r.require(sum.is_zero() == singular, format!("ell={ell} n={nvec:?}"));
                    if sum.is_zero() {
                        zero += 1;
                    } else {
                        nonzero += 1;
                    }
                }
            }
        }
        r.note(format!("ell={ell}: {zero} vanishing, {nonzero} non-vanishing"));
    }
    r.finish(start, Some(Duration::from_secs(10)))
}

pub fn main_identity(max_rank: usize) -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(3, NAMES[2]);
    for (m, ell) in [(5, 1), (7, 1), (7, 2)] {
        match ctx(Kind::UnitaryInert, m, ell, ell + 1).and_then(|c| main_delta_identity(&c, max_rank)) {
            Ok(rep) => {
                r.require(rep.status == Status::Verified, format!("inert m={m} ell={ell}"));
                r.note(format!(
                    "inert m={m} ell={ell}: {} ({})",
                    rep.status.as_str(),
                    rep.notes.join("; ")
                ));
            }
            Err(e) => return r.error(e),
        }
    }
    for (m, ell) in [(5, 1), (7, 1), (7, 2)] {
        match ctx(Kind::UnitarySplit, m, ell, ell + 1).and_then(|c| main_delta_identity(&c, max_rank)) {
            Ok(rep) => r.note(format!("split m={m} ell={ell}: {}", rep.status.as_str())),
            Err(e) => r.note(format!("split m={m} ell={ell}: not run ({e})")),
        }
    }
    r.finish(start, Some(Duration::from_secs(30)))
}

pub fn q_consistency() -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(4, NAMES[3]);
    for kind in [Kind::UnitaryInert, Kind::UnitarySplit] {
        for m in [5, 6, 7] {
            for j in 1..=3 {
                let c = match ctx(kind, m, j - 1, j) {
                    Ok(c) => c,
                    Err(_) => {
                        r.note(format!("{kind} m={m} j={j}: no such context"));
                        continue;
                    }
                };
                let tau = match verify_q_identity(&c, ExtraRange::Tau) {
                    Ok(out) => out.holds,
                    Err(e) => return r.error(e),
                };
                r.require(tau, format!("{kind} m={m} j={j}"));
                if kind == Kind::UnitaryInert && m % 2 == 0 {
                    let lit = match verify_q_identity(&c, ExtraRange::Literal) {
                        Ok(out) => out.holds,
                        Err(e) => return r.error(e),
                    };
                    r.note(format!(
                        "{kind} m={m} j={j}: range over tau {}, literal 1..n {}",
                        verdict(tau),
                        verdict(lit)
                    ));
                }
            }
        }
    }
    r.finish(start, None)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

pub fn cstar_clauses() -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(5, NAMES[4]);
    let mut seen = [0usize; 3];
    for kind in [Kind::UnitaryInert, Kind::UnitarySplit] {
        for m in 2..=7 {
            for ell in 0..m {
                let Ok(c) = ctx(kind, m, ell, ell + 1) else { continue };
                for i in 1..=c.rank() {
                    let Ok(clause) = clause_for(&c, i) else { continue };
                    match cstar_ratio_check(&c, i) {
                        Ok(rep) => {
                            r.require(rep.status.holds(), format!("{c} i={i} {clause:?}"));
                            seen[clause as usize] += 1;
                        }
                        Err(e) => return r.error(e),
                    }
                }
            }
        }
    }
    for clause in [Clause::Invariance, Clause::Boundary, Clause::Interior] {
        let n = seen[clause as usize];
        r.require(n > 0, format!("no {clause:?} instance"));
        r.note(format!("{clause:?}: {n} reflections"));
    }
    r.finish(start, None)
}

/// The orbit-count inputs for each item of the table, with expected counts.
pub fn orbit_table() -> Vec<(&'static str, OrbitCountQuery, usize)> {
    let qy = |dim_x, witt_w, witt_w0perp, dim_w, family| OrbitCountQuery {
        dim_x,
        witt_w,
        witt_w0perp,
        dim_w,
        family,
    };
    use FormFamily::{Orthogonal, Unitary};
    vec![
        ("(1)", qy(1, 2, 2, 5, Unitary), 2),
        ("(2)(a)", qy(2, 2, 2, 5, Unitary), 2),
        ("(2)(b)", qy(2, 2, 2, 6, Orthogonal), 2),
        ("(2)(c)", qy(2, 2, 2, 5, Orthogonal), 3),
        ("(3)", qy(2, 2, 1, 5, Unitary), 1),
        ("(4)", qy(2, 2, 1, 4, Orthogonal), 1),
    ]
}

pub fn orbit_counts() -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(6, NAMES[5]);
    for (item, query, want) in orbit_table() {
        match bessel_orbit_count(&query) {
            Ok(got) => {
                r.require(got == want, format!("item {item}: got {got}, want {want}"));
                r.note(format!("item {item}: {got}"));
            }
            Err(e) => return r.error(e),
        }
    }
    r.finish(start, None)
}

pub fn coset_enumeration() -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(7, NAMES[6]);
    let mut contexts = 0;
    for kind in Kind::ALL {
        for m in 2..=12 {
            for ell in 0..m {
                for j in 0..=m {
                    let Ok(c) = ctx(kind, m, ell, j) else { continue };
                    contexts += 1;
                    let mut grid = Vec::new();
                    for beta in 0..=m {
                        for alpha in 0..=m {
                            let ok =
                                alpha <= beta && beta <= j && j + alpha <= ell + beta && ell + beta <= c.mtilde + alpha;
                            if ok {
                                grid.push(CosetDatum::new(alpha, beta));
                                if kind == Kind::SoEvenSplit && ell + beta - alpha == c.n {
                                    grid.push(CosetDatum {
                                        alpha,
                                        beta,
                                        twisted: true,
                                    });
                                }
                            }
                        }
                    }
                    grid.sort();
                    r.require(enumerate_eps(&c) == grid, format!("{c}"));
                }
            }
        }
    }
    r.note(format!("{contexts} contexts agree with the grid filter"));
    match GroupContext::from_mtilde(Kind::UnitaryInert, 3, 1, 2) {
        Ok(c) => {
            let got: Vec<(usize, usize)> = enumerate_eps(&c).iter().map(|d| (d.alpha, d.beta)).collect();
            r.require(
                got == vec![(0, 1), (0, 2), (1, 2)],
                format!("spot instance gave {got:?}"),
            );
        }
        Err(e) => return r.error(e),
    }
    r.finish(start, None)
}

pub fn degenerate_zeta() -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(8, NAMES[7]);
    for kind in Kind::ALL {
        for m in 2..=4 {
            for j in 0..=1 {
                let Ok(c) = ctx(kind, m, 0, j) else { continue };
                if c.mtilde != 1 {
                    continue;
                }
                let chi = CharacterVector::for_context(&c);
                for t in 0..=1 {
                    match zeta_poly(&chi.vars, t, &c) {
                        Ok(z) => r.require(z.is_one(), format!("{c} t={t}: {z}")),
                        Err(e) => return r.error(e),
                    }
                }
            }
        }
    }
    r.finish(start, None)
}

pub fn eulerian() -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(9, NAMES[8]);
    let cases = [
        (Kind::UnitaryInert, 7, 1),
        (Kind::UnitaryInert, 8, 1),
        (Kind::UnitaryInert, 9, 2),
        (Kind::UnitarySplit, 5, 1),
        (Kind::UnitarySplit, 7, 2),
        (Kind::SoOdd, 7, 1),
        (Kind::SoEvenSplit, 8, 1),
        (Kind::SoEvenQuasisplit, 8, 1),
    ];
    for (kind, m, ell) in cases {
        let res = (|| -> Result<(bool, bool)> {
            let c = ctx(kind, m, ell, ell + 1)?;
            let sizes = [1, c.j - 1];
            let blocks = SatakeDatum::tau_blocks(&c, &sizes)?;
            let sigma = SatakeDatum::sigma(&c);
            let pi = SatakeDatum::pi(&c);
            let lhs = eulerian_rhs_factored(&blocks, &sigma, &pi, &c)?;
            let cross =
                crate::lfactors::gl_rankin_l(&blocks[0], &blocks[1], crate::lfactors::RankinShift::TwoSPlusOne)?;
            let rhs = unramified_rhs_factored(&blocks[0], &sigma, &pi, &c)?
                .mul(&unramified_rhs_factored(&blocks[1], &sigma, &pi, &c)?)
                .div(&cross.factored());
            let whole = unramified_rhs_factored(&SatakeDatum::tau(&c), &sigma, &pi, &c)?;
            Ok((lhs.equals(&rhs), lhs.equals(&whole)))
        })();
        match res {
            Ok((blocks_ok, whole_ok)) => {
                r.require(blocks_ok, format!("{kind} m={m} ell={ell}: block product"));
                r.require(whole_ok, format!("{kind} m={m} ell={ell}: concatenated tau"));
            }
            Err(e) => return r.error(e),
        }
    }
    r.note(format!("{} contexts", cases.len()));
    r.finish(start, None)
}

const RING_VARS: [Var; 5] = [Var::Chi(1), Var::Chi(2), Var::Chi(3), Var::P, Var::U];

/// A random polynomial with up to `terms` terms and half-integer exponents.
pub fn random_poly(rng: &mut impl Rng, terms: usize) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let mono = Monomial::from_pairs(RING_VARS.iter().map(|&v| (v, rng.gen_range(-3..=3))));
        let c = q(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        p.add_term(c, mono);
    }
    p
}

/// A random substitution with integral images and square coefficients.
pub fn random_substitution(rng: &mut impl Rng) -> Substitution {
    let squares = [qi(1), qi(4), q(1, 9)];
    let mut s = Substitution::new();
    for &v in &RING_VARS {
        if rng.gen_bool(0.6) {
            let mono = Monomial::from_pairs(RING_VARS.iter().map(|&w| (w, 2 * rng.gen_range(-1..=1))));
            let c: BigRational = squares[rng.gen_range(0..squares.len())].clone();
            s.insert(v, Image::new(c, mono));
        }
    }
    s
}

fn random_nonzero(rng: &mut impl Rng, terms: usize) -> LaurentPolynomial {
    loop {
        let p = random_poly(rng, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn symalg_properties(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut r = CriterionResult::new(10, NAMES[9]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..1000 {
        let (a, b, c) = (
            random_poly(&mut rng, 4),
            random_poly(&mut rng, 4),
            random_poly(&mut rng, 4),
        );
        let s = random_substitution(&mut rng);
        let ring = (&(&a + &b) + &c) == (&a + &(&b + &c))
            && (&a * &b) == (&b * &a)
            && (&(&a * &b) * &c) == (&a * &(&b * &c))
            && (&a * &(&b + &c)) == (&(&a * &b) + &(&a * &c))
            && (&a + &(-&a)).is_zero()
            && (&a * &LaurentPolynomial::one()) == a;
        let hom = match (
            a.substitute(&s),
            b.substitute(&s),
            (&a * &b).substitute(&s),
            (&a + &b).substitute(&s),
        ) {
            (Ok(sa), Ok(sb), Ok(sab), Ok(sapb)) => sab == &sa * &sb && sapb == &sa + &sb,
            _ => false,
        };
        if !(ring && hom) {
            failures += 1;
        }
    }
    r.require(failures == 0, format!("{failures} of 1000 ring/substitution checks"));
    let mut disagreements = 0;
    for k in 0..200 {
        let f = random_nonzero(&mut rng, 3);
        let g = random_nonzero(&mut rng, 3);
        let h = random_nonzero(&mut rng, 3);
        let f2 = if k % 2 == 0 {
            f.clone()
        } else {
            &f + &random_nonzero(&mut rng, 2)
        };
        let (Ok(reducible), Ok(reduced), Ok(other)) = (
            RationalFunction::new(&f * &g, &h * &g),
            RationalFunction::new(f.clone(), h.clone()),
            RationalFunction::new(f2, h.clone()),
        ) else {
            disagreements += 1;
            continue;
        };
        let by_cross = reducible.equals(&other);
        let by_reduced = reduced.structurally_equal(&other);
        if by_cross != by_reduced || !reducible.equals(&reduced) {
            disagreements += 1;
        }
    }
    r.require(
        disagreements == 0,
        format!("{disagreements} of 200 rational-function pairs"),
    );
    r.note(format!("seed {seed}"));
    r.finish(start, None)
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Runs every check.
pub fn run_all(max_rank: usize) -> Vec<CriterionResult> {
    vec![
        antisymmetry(max_rank),
        vanishing(max_rank),
        main_identity(max_rank),
        q_consistency(),
        cstar_clauses(),
        orbit_counts(),
        coset_enumeration(),
        degenerate_zeta(),
        eulerian(),
        symalg_properties(DEFAULT_SEED),
    ]
}
