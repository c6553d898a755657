//! Coefficient rings.
//!
//! Every structure in this crate is defined over the integers; a [`Ring`]
//! only decides how coefficients are reduced and how ranks are computed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    Prime(u32),
}

impl Ring {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(Ring::Prime(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Ring::Prime(p) => p,
            _ => 0,
        }
    }

    /// Canonical representative of an integer coefficient.
    #[inline]
    pub fn reduce(self, c: i64) -> i64 {
        match self {
            Ring::Prime(p) => c.rem_euclid(p as i64),
            _ => c,
        }
    }

    #[inline]
    pub fn is_zero(self, c: i64) -> bool {
        self.reduce(c) == 0
    }

    /// Short tag used by the CLI and in reports: `z`, `q`, `f<p>`.
    pub fn tag(self) -> String {
        match self {
            Ring::Integers => "z".into(),
            Ring::Rationals => "q".into(),
            Ring::Prime(p) => format!("f{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "int" | "integers" => Ok(Ring::Integers),
            "q" | "rat" | "rationals" => Ok(Ring::Rationals),
            other => {
                let digits = other
                    .strip_prefix('f')
                    .ok_or_else(|| Error::Parse(format!("unknown ring spec '{s}' (expected z, q or f<p>)")))?;
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed prime in ring spec '{s}'")))?;
                Ring::prime(p)
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ring_specs() {
        assert_eq!("z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Q".parse::<Ring>().unwrap(), Ring::Rationals);
        assert_eq!("f2".parse::<Ring>().unwrap(), Ring::Prime(2));
        assert_eq!("f7".parse::<Ring>().unwrap(), Ring::Prime(7));
        assert!("f4".parse::<Ring>().is_err());
        assert!("f".parse::<Ring>().is_err());
        assert!("r".parse::<Ring>().is_err());
    }

    #[test]
    fn reduction() {
        assert_eq!(Ring::Prime(3).reduce(-1), 2);
        assert_eq!(Ring::Integers.reduce(-1), -1);
        assert!(Ring::Prime(2).is_zero(4));
    }
}
