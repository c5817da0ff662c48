use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SymalgError;

/// A formal variable of the ring.
///
/// The variant order fixes the lexicographic variable order used by the
/// canonical monomial ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    /// Satake parameter of the character on the torus, `x{i}`.
    Chi(u16),
    /// First block of a split GL(F) x GL(F) datum, `t{i}`.
    Theta(u16),
    /// Second block of a split GL(F) x GL(F) datum, `s{i}`.
    Xi(u16),
    /// Satake parameter of the generic representation at an inert place, `m{i}`.
    Mu(u16),
    /// Middle parameter of a split datum when the dimension is even, `m0`.
    Mu0,
    /// Upper parameters of a split generic datum, `th{i}`.
    PiTheta(u16),
    /// Lower parameters of a split generic datum, `vth{i}`.
    PiVartheta(u16),
    /// Auxiliary Hecke variable `X{i}`.
    Hecke(u16),
    /// Auxiliary Hecke variable `X`.
    HeckeX,
    /// `q^{-1/2}` of the residue field of E.
    P,
    /// `q^{-s}` of the residue field of E.
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Chi(i) => write!(f, "x{i}"),
            Var::Theta(i) => write!(f, "t{i}"),
            Var::Xi(i) => write!(f, "s{i}"),
            Var::Mu(i) => write!(f, "m{i}"),
            Var::Mu0 => write!(f, "m0"),
            Var::PiTheta(i) => write!(f, "th{i}"),
            Var::PiVartheta(i) => write!(f, "vth{i}"),
            Var::Hecke(i) => write!(f, "X{i}"),
            Var::HeckeX => write!(f, "X"),
            Var::P => write!(f, "p"),
            Var::U => write!(f, "u"),
        }
    }
}

impl FromStr for Var {
    type Err = SymalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SymalgError::Parse(format!("unknown variable `{s}`"));
        match s {
            "p" => return Ok(Var::P),
            "u" => return Ok(Var::U),
            "X" => return Ok(Var::HeckeX),
            "m0" => return Ok(Var::Mu0),
            _ => {}
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (name, idx) = s.split_at(split);
        let idx: u16 = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        Ok(match name {
            "x" => Var::Chi(idx),
            "t" => Var::Theta(idx),
            "s" => Var::Xi(idx),
            "m" => Var::Mu(idx),
            "th" => Var::PiTheta(idx),
            "vth" => Var::PiVartheta(idx),
            "X" => Var::Hecke(idx),
            _ => return Err(bad()),
        })
    }
}
