//! Double-coset representatives, the survival filter, Bessel orbit counts and
//! twisted Jacquet module constituent tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::{GroupContext, Kind};

/// A double-coset representative indexed by `(alpha, beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CosetDatum {
    pub alpha: usize,
    pub beta: usize,
    /// The second representative attached to a pair in the split even orthogonal case.
    pub twisted: bool,
}

impl CosetDatum {
    pub fn new(alpha: usize, beta: usize) -> Self {
        CosetDatum {
            alpha,
            beta,
            twisted: false,
        }
    }
}

/// All representatives `(alpha, beta)` with `0 <= alpha <= beta <= j` and
/// `j <= ell + beta - alpha <= mtilde`.
///
/// For split even orthogonal groups a pair with `ell + beta - alpha = n`
/// carries two representatives.
pub fn enumerate_eps(ctx: &GroupContext) -> Vec<CosetDatum> {
    let mut out = Vec::new();
    for beta in 0..=ctx.j {
        for alpha in 0..=beta {
            let dim = ctx.ell + beta - alpha;
            if dim < ctx.j || dim > ctx.mtilde {
                continue;
            }
            out.push(CosetDatum::new(alpha, beta));
            if ctx.kind == Kind::SoEvenSplit && dim == ctx.n {
                out.push(CosetDatum {
                    alpha,
                    beta,
                    twisted: true,
                });
            }
        }
    }
    out.sort();
    out
}

/// Which element of the representative carries the surviving summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representative {
    /// `j <= ell`: the Weyl element embedding the `j`-block into the `ell`-block, with trivial gamma.
    EpsilonEmbedding,
    /// `j > ell`: trivial epsilon, with gamma the block permutation moving the last `j - ell` coordinates.
    GammaBlockSwap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivingSummand {
    pub datum: CosetDatum,
    pub representative: Representative,
}

/// The unique summand left after the vanishing lemmas: `alpha = 0`, `beta = max(0, j - ell)`.
pub fn surviving_summand(ctx: &GroupContext) -> Result<SurvivingSummand> {
    if ctx.j >= ctx.n {
        return Err(Error::Precondition(format!("need j < n, got j={}, n={}", ctx.j, ctx.n)));
    }
    let beta = ctx.j.saturating_sub(ctx.ell);
    let representative = if ctx.j <= ctx.ell {
        Representative::EpsilonEmbedding
    } else {
        Representative::GammaBlockSwap
    };
    Ok(SurvivingSummand {
        datum: CosetDatum::new(0, beta),
        representative,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormFamily {
    Unitary,
    Orthogonal,
}

/// Input to [`bessel_orbit_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCountQuery {
    pub dim_x: usize,
    pub witt_w: usize,
    pub witt_w0perp: usize,
    pub dim_w: usize,
    pub family: FormFamily,
}

/// Number of orbits of the stabilizer on the flag variety of isotropic `X`-subspaces.
pub fn bessel_orbit_count(q: &OrbitCountQuery) -> Result<usize> {
    let bad = |why: &str| Error::UnclassifiedCase(format!("{q:?}: {why}"));
    if q.dim_x == 0 || q.dim_x > q.witt_w || q.witt_w > q.dim_w / 2 {
        return Err(bad("needs 0 < dim X <= witt W <= dim W / 2"));
    }
    if q.dim_w == 2 * q.dim_x {
        if q.witt_w0perp + 1 != q.dim_x {
            return Err(bad("hyperbolic W forces witt(w0perp) = dim X - 1"));
        }
        return Ok(1);
    }
    if q.dim_x < q.witt_w {
        return Ok(2);
    }
    if q.witt_w0perp == q.dim_x {
        return match q.family {
            FormFamily::Unitary => Ok(2),
            FormFamily::Orthogonal if q.dim_w >= 2 * q.dim_x + 2 => Ok(2),
            FormFamily::Orthogonal => Ok(3),
        };
    }
    if q.witt_w0perp + 1 == q.dim_x {
        return Ok(1);
    }
    Err(bad("no clause applies"))
}

/// The lemma that kills a coset summand at the top value `beta = mtilde - ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Killer {
    /// Cuspidality of sigma on the closed orbit.
    Cuspidality,
    /// Vanishing on the open orbit.
    OpenOrbit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopBetaCase {
    pub twisted: bool,
    pub orbits: usize,
    pub killers: Vec<Killer>,
}

/// Classifies the summands with `beta = mtilde - ell`, naming the lemma that kills each orbit.
///
/// `witt_w0perp` overrides the Witt index of the orthogonal complement of the
/// anisotropic vector; by default it is read off the kind.
pub fn classify_top_beta(ctx: &GroupContext, witt_w0perp: Option<usize>) -> Result<Vec<TopBetaCase>> {
    let dim_x = ctx.mtilde - ctx.ell;
    let dim_w = ctx.m - 2 * ctx.ell;
    if ctx.kind == Kind::SoEvenSplit {
        return Ok([false, true]
            .into_iter()
            .map(|twisted| TopBetaCase {
                twisted,
                orbits: 1,
                killers: vec![Killer::Cuspidality],
            })
            .collect());
    }
    let w0 = witt_w0perp.unwrap_or((dim_w - 1) / 2);
    let family = if ctx.kind.is_unitary() {
        FormFamily::Unitary
    } else {
        FormFamily::Orthogonal
    };
    let orbits = bessel_orbit_count(&OrbitCountQuery {
        dim_x,
        witt_w: dim_x,
        witt_w0perp: w0.min(dim_x),
        dim_w,
        family,
    })?;
    let killers = match orbits {
        1 => vec![Killer::Cuspidality],
        2 => vec![Killer::Cuspidality, Killer::OpenOrbit],
        _ => vec![Killer::Cuspidality, Killer::Cuspidality, Killer::OpenOrbit],
    };
    Ok(vec![TopBetaCase {
        twisted: false,
        orbits,
        killers,
    }])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Upsilon1,
    Upsilon2,
    Upsilon3,
    L1,
    L2,
    L3,
    L4,
    L5,
}

/// A formal constituent of a twisted Jacquet module.
///
/// Exponents are doubled, so `exp_shift = 1` means `|det|^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacquetConstituent {
    pub family: Family,
    /// The range index: `beta` for the first families, `r` for the second split family.
    pub index: Option<usize>,
    pub derivative_order: usize,
    pub exp_shift: i32,
    /// Exponent on the second GL factor at split places.
    pub second_shift: Option<i32>,
    pub description: String,
}

fn half(d: i32) -> String {
    if d % 2 == 0 {
        format!("{}", d / 2)
    } else {
        format!("{d}/2")
    }
}

/// Constituents at an inert place.
pub fn jacquet_constituents_inert(ctx: &GroupContext) -> Result<Vec<JacquetConstituent>> {
    let (j, ell, mt) = (ctx.j, ctx.ell, ctx.mtilde);
    if j < 1 || j >= ctx.m {
        return Err(Error::Precondition(format!("need 1 <= j < m, got j={j}")));
    }
    let mut out = Vec::new();
    let lo = j.saturating_sub(ell);
    for beta in lo..mt - ell {
        if beta > j {
            break;
        }
        let t = j - beta;
        let shift = 1 - t as i32;
        out.push(JacquetConstituent {
            family: Family::Upsilon1,
            index: Some(beta),
            derivative_order: t,
            exp_shift: shift,
            second_shift: None,
            description: format!("|det|^({}) tau^({t}) x J(sigma, beta={beta})", half(shift)),
        });
    }
    if ell < j {
        let shift = -(ell as i32);
        out.push(JacquetConstituent {
            family: Family::Upsilon2,
            index: None,
            derivative_order: ell,
            exp_shift: shift,
            second_shift: None,
            description: format!("|det|^({}) tau^({ell}) x sigma", half(shift)),
        });
    }
    out.push(JacquetConstituent {
        family: Family::Upsilon3,
        index: None,
        derivative_order: 0,
        exp_shift: 0,
        second_shift: None,
        description: "supported on the other double cosets".into(),
    });
    Ok(out)
}

/// Constituents at a split place for the partition `(l1, l2, l3)`.
pub fn jacquet_constituents_split(l1: usize, l2: usize, l3: usize, j: usize) -> Result<Vec<JacquetConstituent>> {
    if j > l1 + l2 + l3 {
        return Err(Error::Precondition(format!("need j <= l1 + l2 + l3, got j={j}")));
    }
    let (i1, i2, i3, ij) = (l1 as i64, l2 as i64, l3 as i64, j as i64);
    let mut out = Vec::new();
    let entry = |family, index, t: i64, a: i64, b: i64, what: String| JacquetConstituent {
        family,
        index,
        derivative_order: t as usize,
        exp_shift: a as i32,
        second_shift: Some(b as i32),
        description: format!("|det|^({}) x |det|^({}) {what}", half(a as i32), half(b as i32)),
    };
    for beta in 0..=ij {
        if ij - i3 < beta && beta < i2 {
            let t = ij - beta;
            out.push(entry(
                Family::L1,
                Some(beta as usize),
                t,
                1 - t + i3 - i1,
                t,
                format!("tau1^({t}) x tau2 block beta={beta}"),
            ));
        }
    }
    for r in 1..(ij - i3).max(1) {
        if ij - i2 - i3 <= r && r <= i1 {
            let t = i1 - r;
            out.push(entry(
                Family::L2,
                Some(r as usize),
                t,
                -t,
                i3 - r - 1,
                format!("tau1^({t}) x tau2 block r={r}"),
            ));
        }
    }
    let d = ij - i3;
    if 0 < d && d <= i2 {
        out.push(entry(Family::L3, None, i3, -i1, i3 - 1, format!("tau1 x tau2^({l3})")));
    } else if i3 == ij {
        out.push(entry(Family::L3, None, ij, 0, -i3, format!("tau1^({j}) x tau2[{l1}]")));
    }
    if 0 < d && d < i2 {
        out.push(entry(Family::L4, None, i3, 1 - i1, i3, format!("tau1 x tau2^({l3})")));
        out.push(entry(Family::L5, None, i3, -i1, i3, format!("tau1 x tau2^({l3})")));
    }
    Ok(out)
}
