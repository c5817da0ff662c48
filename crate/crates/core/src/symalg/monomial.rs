use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// A Laurent monomial with half-integer exponents.
///
/// Exponents are stored doubled, so `2` means an exponent of one and `1`
/// means one half. Entries are sorted by variable and never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// `v^1`.
    pub fn var(v: Var) -> Self {
        Monomial::from_doubled(v, 2)
    }

    /// `v^e` for an integer exponent `e`.
    pub fn pow(v: Var, e: i32) -> Self {
        Monomial::from_doubled(v, 2 * e)
    }

    /// `v^(d/2)`.
    pub fn from_doubled(v: Var, d: i32) -> Self {
        if d == 0 {
            Monomial::one()
        } else {
            Monomial { factors: vec![(v, d)] }
        }
    }

    /// Builds a monomial from `(var, doubled exponent)` pairs in any order.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut m = Monomial::one();
        for (v, d) in pairs {
            m = m.mul(&Monomial::from_doubled(v, d));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.factors
    }

    /// Doubled exponent of `v`.
    pub fn doubled_exponent(&self, v: Var) -> i32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    /// Sum of doubled exponents.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&(_, d)| d as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let d = a[i].1 + b[j].1;
                    if d != 0 {
                        out.push((a[i].0, d));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|&(v, d)| (v, -d)).collect(),
        }
    }

    /// Raises to an integer power.
    pub fn powi(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|&(v, d)| (v, d * k)).collect(),
        }
    }

    /// Raises to the power `d/2`, or `None` if some exponent leaves the half-integer lattice.
    pub fn pow_half(&self, d: i32) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        for &(v, e) in &self.factors {
            let prod = e * d;
            if prod % 2 != 0 {
                return None;
            }
            out.push((v, prod / 2));
        }
        Some(Monomial { factors: out })
    }

    /// Applies `f` to every variable, merging collisions.
    pub fn map_vars(&self, mut f: impl FnMut(Var, i32) -> (Var, i32)) -> Monomial {
        Monomial::from_pairs(self.factors.iter().map(|&(v, d)| f(v, d)))
    }

    /// True when every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.factors.iter().all(|&(_, d)| d % 2 == 0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order on doubled exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, d)), None) => return d.cmp(&0),
                (None, Some(&(_, d))) => return 0.cmp(&d),
                (Some(&(va, da)), Some(&(vb, db))) => match va.cmp(&vb) {
                    Ordering::Less => return da.cmp(&0),
                    Ordering::Greater => return 0.cmp(&db),
                    Ordering::Equal => {
                        if da != db {
                            return da.cmp(&db);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_exponent(d: i32) -> String {
    if d % 2 == 0 {
        format!("{}", d / 2)
    } else {
        format!("{{{d}/2}}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, d)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if d == 2 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{}", fmt_exponent(d))?;
            }
        }
        Ok(())
    }
}
