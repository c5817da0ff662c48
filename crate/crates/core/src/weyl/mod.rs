//! Weyl groups as (signed) permutations acting on character variables, and
//! the alternating-sum engine.

mod context;

use serde::Serialize;

pub use context::{GroupContext, Kind, Place};

use crate::error::{Error, Result};
use crate::symalg::{LaurentPolynomial, Monomial, Var};

/// Default cap on the rank of an enumerated group.
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WeylType {
    /// Permutations of `k` letters.
    A(usize),
    /// Signed permutations of `k` letters.
    B(usize),
    /// Signed permutations with an even number of sign changes.
    D(usize),
}

impl WeylType {
    pub fn rank(self) -> usize {
        match self {
            WeylType::A(k) | WeylType::B(k) | WeylType::D(k) => k,
        }
    }

    /// The Weyl group acting on the character variables of `ctx`.
    pub fn for_context(ctx: &GroupContext) -> WeylType {
        match ctx.kind {
            Kind::UnitarySplit => WeylType::A(ctx.m),
            Kind::SoEvenSplit => WeylType::D(ctx.mtilde),
            _ => WeylType::B(ctx.mtilde),
        }
    }
}

/// A signed permutation. `perm` and `flips` are indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    flips: Vec<i8>,
}

impl WeylElement {
    pub fn identity(k: usize) -> Self {
        WeylElement {
            perm: (0..k).collect(),
            flips: vec![1; k],
        }
    }

    /// Builds an element from a zero-based permutation and sign vector.
    pub fn new(perm: Vec<usize>, flips: Vec<i8>) -> Option<Self> {
        let k = perm.len();
        if flips.len() != k || flips.iter().any(|&f| f != 1 && f != -1) {
            return None;
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(WeylElement { perm, flips })
    }

    /// The transposition of zero-based positions `a` and `b`.
    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut w = WeylElement::identity(k);
        w.perm.swap(a, b);
        w
    }

    /// The sign change of zero-based position `a`.
    pub fn flip(k: usize, a: usize) -> Self {
        let mut w = WeylElement::identity(k);
        w.flips[a] = -1;
        w
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[i8] {
        &self.flips
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let k = self.rank();
        let mut perm = vec![0; k];
        let mut flips = vec![1; k];
        for i in 0..k {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            flips[i] = other.flips[i] * self.flips[mid];
        }
        WeylElement { perm, flips }
    }

    pub fn inverse(&self) -> WeylElement {
        let k = self.rank();
        let mut perm = vec![0; k];
        let mut flips = vec![1; k];
        for i in 0..k {
            perm[self.perm[i]] = i;
            flips[self.perm[i]] = self.flips[i];
        }
        WeylElement { perm, flips }
    }

    /// The sign character: sign of the permutation times the product of flips.
    pub fn sign(&self) -> i32 {
        let k = self.rank();
        let mut seen = vec![false; k];
        let mut parity = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            parity += len - 1;
        }
        let flips: i32 = self.flips.iter().map(|&f| f as i32).product();
        if parity % 2 == 0 {
            flips
        } else {
            -flips
        }
    }

    /// Sends `x_i^e` to `x_{perm(i)}^{flip(i) e}`; other variables are untouched.
    pub fn act_monomial(&self, m: &Monomial) -> Monomial {
        let k = self.rank();
        let mut pairs: Vec<(Var, i32)> = m
            .factors()
            .iter()
            .map(|&(v, d)| match v {
                Var::Chi(i) if (i as usize) >= 1 && (i as usize) <= k => {
                    let idx = i as usize - 1;
                    (Var::Chi(self.perm[idx] as u16 + 1), d * self.flips[idx] as i32)
                }
                _ => (v, d),
            })
            .collect();
        pairs.sort_by_key(|a| a.0);
        Monomial::from_pairs(pairs)
    }

    pub fn act(&self, p: &LaurentPolynomial) -> LaurentPolynomial {
        p.map_monomials(|m| self.act_monomial(m))
    }
}

/// A finite Weyl group with random access to its elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    ty: WeylType,
    order: usize,
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

impl WeylGroup {
    pub fn new(ty: WeylType) -> Result<Self> {
        WeylGroup::with_bound(ty, DEFAULT_MAX_RANK)
    }

    /// Like [`WeylGroup::new`] with a caller-chosen rank bound.
    pub fn with_bound(ty: WeylType, max_rank: usize) -> Result<Self> {
        let k = ty.rank();
        if k > max_rank {
            return Err(Error::RankTooLarge {
                rank: k,
                bound: max_rank,
            });
        }
        if k == 0 {
            return Err(Error::InvalidContext("Weyl group of rank 0".into()));
        }
        let order = match ty {
            WeylType::A(k) => factorial(k),
            WeylType::B(k) => factorial(k) << k,
            WeylType::D(k) => factorial(k) << (k - 1),
        };
        Ok(WeylGroup { ty, order })
    }

    pub fn for_context(ctx: &GroupContext, max_rank: usize) -> Result<Self> {
        WeylGroup::with_bound(WeylType::for_context(ctx), max_rank)
    }

    pub fn weyl_type(&self) -> WeylType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The element with the given index in `0..order`.
    pub fn element(&self, idx: usize) -> WeylElement {
        assert!(idx < self.order, "element index out of range");
        let k = self.rank();
        let (perm_idx, mask) = match self.ty {
            WeylType::A(_) => (idx, 0usize),
            WeylType::B(_) => (idx >> k, idx & ((1 << k) - 1)),
            WeylType::D(_) => {
                let low = idx & ((1 << (k - 1)) - 1);
                let last = (low.count_ones() as usize) & 1;
                (idx >> (k - 1), low | (last << (k - 1)))
            }
        };
        let mut pool: Vec<usize> = (0..k).collect();
        let mut perm = Vec::with_capacity(k);
        let mut rest = perm_idx;
        for pos in 0..k {
            let f = factorial(k - 1 - pos);
            perm.push(pool.remove(rest / f));
            rest %= f;
        }
        let flips = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        WeylElement { perm, flips }
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    /// Simple reflections, in the standard order.
    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        let k = self.rank();
        let mut out: Vec<WeylElement> = (0..k.saturating_sub(1))
            .map(|i| WeylElement::transposition(k, i, i + 1))
            .collect();
        match self.ty {
            WeylType::A(_) => {}
            WeylType::B(_) => out.push(WeylElement::flip(k, k - 1)),
            WeylType::D(_) if k >= 2 => {
                let mut w = WeylElement::transposition(k, k - 2, k - 1);
                w.flips[k - 2] = -1;
                w.flips[k - 1] = -1;
                out.push(w);
            }
            WeylType::D(_) => {}
        }
        out
    }

    /// `sum over w of sign(w) * w(rho) * f(w)`.
    ///
    /// The group is split into contiguous shards that may be summed in
    /// parallel; the result does not depend on the sharding.
    pub fn alternating_sum<F>(&self, rho: &Monomial, f: F) -> LaurentPolynomial
    where
        F: Fn(&WeylElement) -> LaurentPolynomial + Sync,
    {
        let shard = |range: std::ops::Range<usize>| {
            let mut acc = LaurentPolynomial::zero();
            for idx in range {
                let w = self.element(idx);
                let fw = f(&w);
                if fw.is_zero() {
                    continue;
                }
                let mut term = fw.mul_monomial(&w.act_monomial(rho));
                if w.sign() < 0 {
                    term = -term;
                }
                acc += &term;
            }
            acc
        };
        let shards = self.order.min(64);
        let size = self.order.div_ceil(shards);
        let ranges: Vec<_> = (0..shards)
            .map(|s| s * size..((s + 1) * size).min(self.order))
            .collect();
        #[cfg(feature = "parallel")]
        let parts: Vec<LaurentPolynomial> = {
            use rayon::prelude::*;
            ranges.into_par_iter().map(shard).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<LaurentPolynomial> = ranges.into_iter().map(shard).collect();
        let mut total = LaurentPolynomial::zero();
        for part in &parts {
            total += part;
        }
        total
    }
}

/// The character variables `x_1..x_k` the Weyl group acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    pub vars: Vec<Var>,
}

impl CharacterVector {
    pub fn new(k: usize) -> Self {
        CharacterVector {
            vars: (1..=k).map(|i| Var::Chi(i as u16)).collect(),
        }
    }

    pub fn for_context(ctx: &GroupContext) -> Self {
        CharacterVector::new(ctx.rank())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> &[Var] {
        &self.vars[range]
    }
}

/// `prod x_i^{-((m+1)/2 - i)}` over the character variables of `ctx`.
pub fn rho_monomial(ctx: &GroupContext) -> Monomial {
    let m = ctx.m as i32;
    Monomial::from_pairs((1..=ctx.rank() as i32).map(|i| (Var::Chi(i as u16), -(m + 1 - 2 * i))))
}

/// `sum over w of sign(w) * w(rho) * f(w)` for the Weyl group of `ctx`.
pub fn alternating_sum<F>(ctx: &GroupContext, max_rank: usize, f: F) -> Result<LaurentPolynomial>
where
    F: Fn(&WeylElement) -> LaurentPolynomial + Sync,
{
    let g = WeylGroup::for_context(ctx, max_rank)?;
    Ok(g.alternating_sum(&rho_monomial(ctx), f))
}
