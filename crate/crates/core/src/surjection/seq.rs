//! Surjection sequences and their linear combinations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// A nondegenerate surjection `{1..n+d} -> {1..n}` written as its sequence
/// of values; the degree is `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurjSeq {
    arity: u8,
    entries: Vec<u8>,
}

impl SurjSeq {
    pub fn new(arity: usize, entries: Vec<u8>) -> Result<Self> {
        let s = SurjSeq { arity: arity as u8, entries };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(arity: usize, entries: Vec<u8>) -> Self {
        SurjSeq { arity: arity as u8, entries }
    }

    fn validate(&self) -> Result<()> {
        let n = self.arity as usize;
        if self.entries.len() < n {
            return Err(Error::InvalidSequence(format!("{self} is shorter than its arity")));
        }
        let mut seen = vec![false; n + 1];
        for &e in &self.entries {
            if e == 0 || e as usize > n {
                return Err(Error::InvalidSequence(format!("{self} has value {e} outside 1..{n}")));
            }
            seen[e as usize] = true;
        }
        if seen[1..].iter().any(|&b| !b) {
            return Err(Error::InvalidSequence(format!("{self} is not surjective")));
        }
        if self.entries.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSequence(format!("{self} is degenerate")));
        }
        Ok(())
    }

    /// Surjective onto `1..arity` and no two equal neighbours.
    pub fn is_valid(arity: usize, entries: &[u8]) -> bool {
        if entries.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let mut seen = 0u64;
        for &e in entries {
            if e == 0 || e as usize > arity {
                return false;
            }
            seen |= 1 << e;
        }
        seen.count_ones() as usize == arity
    }

    /// `⟨1 2 … n⟩`.
    pub fn identity(n: usize) -> Self {
        SurjSeq { arity: n as u8, entries: (1..=n as u8).collect() }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn degree(&self) -> usize {
        self.entries.len() - self.arity as usize
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `r` is a caesura when its value occurs again later.
    pub fn caesuras(&self) -> Vec<bool> {
        let e = &self.entries;
        (0..e.len()).map(|r| e[r + 1..].contains(&e[r])).collect()
    }

    pub fn occurrences(&self, value: u8) -> usize {
        self.entries.iter().filter(|&&e| e == value).count()
    }

    /// Relabel values through `perm` (value k becomes `perm[k-1]`).
    pub fn relabel(&self, perm: &[u8]) -> SurjSeq {
        SurjSeq { arity: self.arity, entries: self.entries.iter().map(|&e| perm[e as usize - 1]).collect() }
    }

    /// All sequences of the given arity and degree, in lexicographic order.
    pub fn enumerate(arity: usize, degree: usize) -> Vec<SurjSeq> {
        let len = arity + degree;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fn rec(arity: usize, len: usize, cur: &mut Vec<u8>, out: &mut Vec<SurjSeq>) {
            if cur.len() == len {
                if SurjSeq::is_valid(arity, cur) {
                    out.push(SurjSeq { arity: arity as u8, entries: cur.clone() });
                }
                return;
            }
            // prune: values still missing must fit in the remaining slots
            let mut seen = 0u64;
            for &e in cur.iter() {
                seen |= 1 << e;
            }
            let missing = arity - (seen.count_ones() as usize);
            if missing > len - cur.len() {
                return;
            }
            for v in 1..=arity as u8 {
                if cur.last() == Some(&v) {
                    continue;
                }
                cur.push(v);
                rec(arity, len, cur, out);
                cur.pop();
            }
        }
        if arity == 0 {
            if degree == 0 {
                out.push(SurjSeq { arity: 0, entries: vec![] });
            }
            return out;
        }
        rec(arity, len, &mut cur, &mut out);
        out
    }

    /// Accepts `⟨3123⟩`, `<3 1 2 3>`, `3123` or `3,1,2,3`; the arity is the
    /// largest value.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches(['⟨', '<']).trim_end_matches(['⟩', '>']).trim();
        let parts: Vec<&str> = if t.contains([' ', ',']) {
            t.split([' ', ',']).filter(|s| !s.is_empty()).collect()
        } else {
            t.char_indices().map(|(i, c)| &t[i..i + c.len_utf8()]).collect()
        };
        let entries: Vec<u8> = parts
            .iter()
            .map(|p| p.parse::<u8>().map_err(|_| Error::Parse(format!("bad entry '{p}' in sequence '{text}'"))))
            .collect::<Result<_>>()?;
        let arity = entries.iter().copied().max().unwrap_or(0) as usize;
        SurjSeq::new(arity, entries)
    }
}

impl fmt::Display for SurjSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.arity >= 10 { " " } else { "" };
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(sep))
    }
}

impl fmt::Debug for SurjSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer linear combination of sequences sharing arity and degree.
#[derive(Clone, PartialEq, Eq)]
pub struct SurjElement {
    arity: usize,
    degree: usize,
    terms: BTreeMap<SurjSeq, i64>,
}

impl SurjElement {
    pub fn zero(arity: usize, degree: usize) -> Self {
        SurjElement { arity, degree, terms: BTreeMap::new() }
    }

    pub fn basis(u: SurjSeq) -> Self {
        let (arity, degree) = (u.arity(), u.degree());
        SurjElement { arity, degree, terms: BTreeMap::from([(u, 1)]) }
    }

    pub fn from_terms(arity: usize, degree: usize, terms: impl IntoIterator<Item = (SurjSeq, i64)>) -> Result<Self> {
        let mut e = Self::zero(arity, degree);
        for (u, c) in terms {
            if u.arity() != arity || u.degree() != degree {
                return Err(Error::Shape(format!("{u} does not have arity {arity} and degree {degree}")));
            }
            e.add_term(u, c);
        }
        Ok(e)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<SurjSeq, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &SurjSeq) -> i64 {
        self.terms.get(u).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, u: SurjSeq, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(u) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c).expect("coefficient overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_shape(&self, other: &SurjElement) -> Result<()> {
        if self.arity != other.arity || (self.degree != other.degree && !self.is_zero() && !other.is_zero()) {
            return Err(Error::Shape(format!(
                "combining elements of (arity, degree) ({}, {}) and ({}, {})",
                self.arity, self.degree, other.arity, other.degree
            )));
        }
        Ok(())
    }

    pub fn add_scaled(&self, c: i64, other: &SurjElement) -> Result<SurjElement> {
        self.check_shape(other)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (u, &x) in &other.terms {
            out.add_term(u.clone(), c.checked_mul(x).expect("coefficient overflow"));
        }
        Ok(out)
    }

    pub fn add(&self, other: &SurjElement) -> Result<SurjElement> {
        self.add_scaled(1, other)
    }

    pub fn sub(&self, other: &SurjElement) -> Result<SurjElement> {
        self.add_scaled(-1, other)
    }

    pub fn scale(&self, c: i64) -> SurjElement {
        let mut out = SurjElement::zero(self.arity, self.degree);
        for (u, &x) in &self.terms {
            out.add_term(u.clone(), c * x);
        }
        out
    }

    /// Reduce coefficients for a ring (drop those that vanish there).
    pub fn reduce(&self, ring: Ring) -> SurjElement {
        let mut out = SurjElement::zero(self.arity, self.degree);
        for (u, &x) in &self.terms {
            out.add_term(u.clone(), ring.reduce(x));
        }
        out
    }

    pub fn relabel(&self, perm: &[u8]) -> SurjElement {
        let mut out = SurjElement::zero(self.arity, self.degree);
        for (u, &x) in &self.terms {
            out.add_term(u.relabel(perm), x);
        }
        out
    }

    /// Support size and sum of absolute coefficients, for reports.
    pub fn weight(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for SurjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (u, &c) in &self.terms {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{u}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SurjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let u = SurjSeq::parse("⟨3123⟩").unwrap();
        assert_eq!((u.arity(), u.degree()), (3, 1));
        assert_eq!(u.to_string(), "⟨3123⟩");
        assert_eq!(SurjSeq::parse("<1 2 1>").unwrap().entries(), &[1, 2, 1]);
        assert!(SurjSeq::parse("⟨1123⟩").is_err());
        assert!(SurjSeq::parse("⟨13⟩").is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(SurjSeq::enumerate(2, 0).len(), 2);
        assert_eq!(SurjSeq::enumerate(2, 1).len(), 2);
        // arity 3, degree 0: the six permutations
        assert_eq!(SurjSeq::enumerate(3, 0).len(), 6);
        assert_eq!(SurjSeq::enumerate(0, 0).len(), 1);
        assert!(SurjSeq::enumerate(1, 1).is_empty());
    }
}
