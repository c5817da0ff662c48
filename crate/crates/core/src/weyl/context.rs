use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    UnitaryInert,
    UnitarySplit,
    SoOdd,
    SoEvenSplit,
    SoEvenQuasisplit,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::UnitaryInert,
        Kind::UnitarySplit,
        Kind::SoOdd,
        Kind::SoEvenSplit,
        Kind::SoEvenQuasisplit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::UnitaryInert => "unitary-inert",
            Kind::UnitarySplit => "unitary-split",
            Kind::SoOdd => "so-odd",
            Kind::SoEvenSplit => "so-even-split",
            Kind::SoEvenQuasisplit => "so-even-quasisplit",
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, Kind::UnitaryInert | Kind::UnitarySplit)
    }

    pub fn is_orthogonal(self) -> bool {
        !self.is_unitary()
    }

    pub fn place(self) -> Place {
        match self {
            Kind::UnitarySplit => Place::Split,
            _ => Place::Inert,
        }
    }

    /// Anisotropic kernel dimension for a space of dimension `m`.
    fn dim_v0(self, m: usize) -> usize {
        match self {
            Kind::UnitaryInert | Kind::UnitarySplit => m % 2,
            Kind::SoOdd => 1,
            Kind::SoEvenSplit => 0,
            Kind::SoEvenQuasisplit => 2,
        }
    }

    /// Dimension of the space whose Witt index is `mtilde`.
    fn dim_for_witt(self, mtilde: usize) -> usize {
        match self {
            Kind::UnitaryInert | Kind::UnitarySplit | Kind::SoOdd => 2 * mtilde + 1,
            Kind::SoEvenSplit => 2 * mtilde,
            Kind::SoEvenQuasisplit => 2 * mtilde + 2,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidContext(format!("unknown kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Place {
    Inert,
    Split,
}

/// Numerology of the group pair: dimensions, Witt indices and the indices ell and j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupContext {
    pub kind: Kind,
    pub m: usize,
    pub n: usize,
    pub mtilde: usize,
    pub ell: usize,
    pub j: usize,
    pub dim_v0: usize,
    pub mtilde_h: usize,
}

impl GroupContext {
    /// Builds and validates a context from the dimension `m`.
    pub fn new(kind: Kind, m: usize, ell: usize, j: usize) -> Result<Self> {
        let parity_ok = match kind {
            Kind::SoOdd => m % 2 == 1,
            Kind::SoEvenSplit | Kind::SoEvenQuasisplit => m.is_multiple_of(2),
            _ => true,
        };
        if !parity_ok {
            return Err(Error::InvalidContext(format!(
                "{kind} needs m of the other parity, got m={m}"
            )));
        }
        let dim_v0 = kind.dim_v0(m);
        if m < dim_v0 + 2 {
            return Err(Error::InvalidContext(format!("m={m} is too small for {kind}")));
        }
        let n = m / 2;
        let mtilde = (m - dim_v0) / 2;
        if ell >= mtilde {
            return Err(Error::InvalidContext(format!(
                "need ell < mtilde, got ell={ell}, mtilde={mtilde}"
            )));
        }
        if j > mtilde {
            return Err(Error::InvalidContext(format!(
                "need j <= mtilde, got j={j}, mtilde={mtilde}"
            )));
        }
        let mtilde_h = (m - 2 * ell - 1) / 2;
        Ok(GroupContext {
            kind,
            m,
            n,
            mtilde,
            ell,
            j,
            dim_v0,
            mtilde_h,
        })
    }

    /// Builds a context from the Witt index, choosing the smallest matching dimension.
    pub fn from_mtilde(kind: Kind, mtilde: usize, ell: usize, j: usize) -> Result<Self> {
        GroupContext::new(kind, kind.dim_for_witt(mtilde), ell, j)
    }

    pub fn place(&self) -> Place {
        self.kind.place()
    }

    pub fn m_is_odd(&self) -> bool {
        self.m % 2 == 1
    }

    /// Number of character variables: the Witt index at inert places, `m` at split places.
    pub fn rank(&self) -> usize {
        match self.place() {
            Place::Inert => self.mtilde,
            Place::Split => self.m,
        }
    }

    /// Same numerology with a different `j`.
    pub fn with_j(&self, j: usize) -> Result<Self> {
        GroupContext::new(self.kind, self.m, self.ell, j)
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} m={} mtilde={} ell={} j={}",
            self.kind, self.m, self.mtilde, self.ell, self.j
        )
    }
}
