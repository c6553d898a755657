//! Morphisms of the cyclic category in the direction of cyclic-object
//! operators. A morphism `[i] -> [j]` is a list of `j+1` lists whose
//! concatenation is a rotation of `0..=i`; on a cyclic bar construction it
//! multiplies each list of tensor factors, on cartesian powers it sends
//! `y` to `(y_{g(0)}, ..., y_{g(i)})` where `l` lies in list `g(l)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicMorphism {
    source: usize,
    target: usize,
    /// first entry of the concatenation
    rotation: usize,
    /// length of each list, `target + 1` of them summing to `source + 1`
    sizes: Vec<usize>,
}

/// One generator of a word: face, degeneracy or the cyclic operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Face(usize),
    Degeneracy(usize),
    Cyclic,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Face(i) => write!(f, "d{i}"),
            Generator::Degeneracy(i) => write!(f, "s{i}"),
            Generator::Cyclic => write!(f, "t"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator '{s}' (expected d<i>, s<i> or t)"));
        match s.trim() {
            "t" | "τ" => Ok(Generator::Cyclic),
            g => {
                let mut cs = g.chars();
                let head = cs.next().ok_or_else(bad)?;
                let i: usize = cs.as_str().parse().map_err(|_| bad())?;
                match head {
                    'd' | 'δ' => Ok(Generator::Face(i)),
                    's' | 'σ' => Ok(Generator::Degeneracy(i)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl CyclicMorphism {
    /// Build from explicit lists, checking that they concatenate to a rotation.
    pub fn from_lists(source: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let cat: Vec<usize> = lists.iter().flatten().copied().collect();
        let bad = || Error::CategoryLaw(format!("lists {lists:?} do not concatenate to a rotation of 0..={source}"));
        if cat.len() != source + 1 || lists.is_empty() {
            return Err(bad());
        }
        let r = cat[0];
        if r > source || cat.iter().enumerate().any(|(p, &x)| x != (r + p) % (source + 1)) {
            return Err(bad());
        }
        Ok(CyclicMorphism { source, target: lists.len() - 1, rotation: r, sizes: lists.iter().map(|l| l.len()).collect() })
    }

    pub fn identity(n: usize) -> Self {
        CyclicMorphism { source: n, target: n, rotation: 0, sizes: vec![1; n + 1] }
    }

    /// `d_i: [n] -> [n-1]`; `d_n` puts the last factor in front of the first.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::NotComposable { position: 0, reason: format!("no face d{i} out of [{n}]") });
        }
        let mut sizes = vec![1; n];
        if i < n {
            sizes[i] = 2;
            Ok(CyclicMorphism { source: n, target: n - 1, rotation: 0, sizes })
        } else {
            sizes[0] = 2;
            Ok(CyclicMorphism { source: n, target: n - 1, rotation: n, sizes })
        }
    }

    /// `s_i: [n] -> [n+1]` inserts an empty list (a unit) after position `i`.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::NotComposable { position: 0, reason: format!("no degeneracy s{i} out of [{n}]") });
        }
        let mut sizes = vec![1; n + 1];
        sizes.insert(i + 1, 0);
        Ok(CyclicMorphism { source: n, target: n + 1, rotation: 0, sizes })
    }

    /// `t: [n] -> [n]`, `(a_0, ..., a_n) -> (a_n, a_0, ..., a_{n-1})`.
    pub fn cyclic(n: usize) -> Self {
        CyclicMorphism { source: n, target: n, rotation: n, sizes: vec![1; n + 1] }
    }

    pub fn generator(n: usize, g: Generator) -> Result<Self> {
        match g {
            Generator::Face(i) => Self::face(n, i),
            Generator::Degeneracy(i) => Self::degeneracy(n, i),
            Generator::Cyclic => Ok(Self::cyclic(n)),
        }
    }

    /// Normal form of a word applied left to right starting at `[source]`.
    pub fn from_word(source: usize, word: &[Generator]) -> Result<Self> {
        let mut acc = Self::identity(source);
        for (pos, &g) in word.iter().enumerate() {
            let next = Self::generator(acc.target, g).map_err(|e| match e {
                Error::NotComposable { reason, .. } => Error::NotComposable { position: pos, reason },
                other => other,
            })?;
            acc = acc.then(&next)?;
        }
        Ok(acc)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.source)
    }

    /// Concatenation order of the source factors.
    pub fn order(&self) -> Vec<usize> {
        (0..=self.source).map(|p| (self.rotation + p) % (self.source + 1)).collect()
    }

    pub fn lists(&self) -> Vec<Vec<usize>> {
        let order = self.order();
        let mut out = Vec::with_capacity(self.target + 1);
        let mut at = 0;
        for &s in &self.sizes {
            out.push(order[at..at + s].to_vec());
            at += s;
        }
        out
    }

    /// `g(l)`: the list containing source index `l`.
    pub fn assignment(&self) -> Vec<usize> {
        let mut g = vec![0; self.source + 1];
        for (k, list) in self.lists().iter().enumerate() {
            for &l in list {
                g[l] = k;
            }
        }
        g
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &CyclicMorphism) -> Result<CyclicMorphism> {
        if self.target != after.source {
            return Err(Error::NotComposable {
                position: 0,
                reason: format!("[{}]->[{}] followed by [{}]->[{}]", self.source, self.target, after.source, after.target),
            });
        }
        let mine = self.lists();
        let lists: Vec<Vec<usize>> =
            after.lists().iter().map(|m| m.iter().flat_map(|&l| mine[l].iter().copied()).collect()).collect();
        CyclicMorphism::from_lists(self.source, &lists)
    }

    /// All morphisms `[i] -> [j]`, `(i+1)·C(i+1+j, j)` of them.
    pub fn enumerate(i: usize, j: usize) -> Vec<CyclicMorphism> {
        let mut comps = Vec::new();
        let mut cur = Vec::with_capacity(j + 1);
        fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if parts == 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for x in 0..=left {
                cur.push(x);
                rec(left - x, parts - 1, cur, out);
                cur.pop();
            }
        }
        rec(i + 1, j + 1, &mut cur, &mut comps);
        let mut out = Vec::with_capacity((i + 1) * comps.len());
        for r in 0..=i {
            for sizes in &comps {
                out.push(CyclicMorphism { source: i, target: j, rotation: r, sizes: sizes.clone() });
            }
        }
        out
    }

    /// Lists with no elements sit at these target positions.
    pub fn empty_positions(&self) -> Vec<usize> {
        self.sizes.iter().enumerate().filter(|(_, &s)| s == 0).map(|(k, _)| k).collect()
    }
}

impl fmt::Display for CyclicMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lists: Vec<String> = self
            .lists()
            .iter()
            .map(|l| format!("{{{}}}", l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]->[{}] {}", self.source, self.target, lists.join(""))
    }
}

impl fmt::Debug for CyclicMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_set_sizes() {
        let total: usize = (0..=2).flat_map(|i| (0..=2).map(move |j| CyclicMorphism::enumerate(i, j).len())).sum();
        assert_eq!(total, 71);
        assert_eq!(CyclicMorphism::enumerate(2, 2).len(), 30);
    }

    #[test]
    fn cyclic_operator_has_order_n_plus_1() {
        for n in 0..5 {
            let word = vec![Generator::Cyclic; n + 1];
            assert!(CyclicMorphism::from_word(n, &word).unwrap().is_identity());
        }
    }

    #[test]
    fn degeneracy_then_face() {
        let m = CyclicMorphism::from_word(0, &[Generator::Degeneracy(0), Generator::Face(0)]).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn word_errors_name_the_position() {
        let e = CyclicMorphism::from_word(1, &[Generator::Face(0), Generator::Face(0)]).unwrap_err();
        assert!(matches!(e, Error::NotComposable { position: 1, .. }));
    }

    #[test]
    fn last_face_wraps() {
        let d = CyclicMorphism::face(2, 2).unwrap();
        assert_eq!(d.lists(), vec![vec![2, 0], vec![1]]);
        assert_eq!(d.assignment(), vec![0, 1, 0]);
    }
}
