//! Finite categories and their nerves.

use std::collections::HashMap;
use std::fmt;

use crate::cyclic::CyclicMorphism;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `comp[f][g] = g∘f` when `target(f) = source(g)`
    comp: Vec<Vec<Option<u32>>>,
    outgoing: Vec<Vec<usize>>,
}

impl FinCat {
    /// `compose(f, g)` returns `g∘f`; it is only asked for composable pairs.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        if identities.len() != objects.len() {
            return Err(Error::CategoryLaw("one identity per object".into()));
        }
        for a in &arrows {
            if a.source >= objects.len() || a.target >= objects.len() {
                return Err(Error::Dangling(format!("arrow {} has an unknown end", a.name)));
            }
        }
        let mut comp = vec![vec![None; arrows.len()]; arrows.len()];
        for f in 0..arrows.len() {
            for g in 0..arrows.len() {
                if arrows[f].target == arrows[g].source {
                    let h = compose(f, g)?;
                    if h >= arrows.len() {
                        return Err(Error::Dangling(format!("composite {h}")));
                    }
                    comp[f][g] = Some(h as u32);
                }
            }
        }
        let mut outgoing = vec![Vec::new(); objects.len()];
        for (f, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(f);
        }
        let cat = FinCat { objects, arrows, identities, comp, outgoing };
        cat.check_laws()?;
        Ok(cat)
    }

    /// `0 -> 1`.
    pub fn arrow_category() -> Self {
        let arrows = vec![
            Arrow { source: 0, target: 0, name: "id0".into() },
            Arrow { source: 1, target: 1, name: "id1".into() },
            Arrow { source: 0, target: 1, name: "a".into() },
        ];
        FinCat::new(vec!["0".into(), "1".into()], arrows, vec![0, 1], |f, g| Ok(if f < 2 { g } else { f })).unwrap()
    }

    /// The cyclic category on objects `[0..=cap]`, with the morphisms in the
    /// order of their ids.
    pub fn cyclic(cap: usize) -> (Self, Vec<CyclicMorphism>) {
        let mut morphisms = Vec::new();
        for i in 0..=cap {
            for j in 0..=cap {
                morphisms.extend(CyclicMorphism::enumerate(i, j));
            }
        }
        let index: HashMap<CyclicMorphism, usize> = morphisms.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let arrows = morphisms
            .iter()
            .map(|m| Arrow { source: m.source(), target: m.target(), name: m.to_string() })
            .collect();
        let identities = (0..=cap).map(|n| index[&CyclicMorphism::identity(n)]).collect();
        let objects = (0..=cap).map(|n| format!("[{n}]")).collect();
        let cat = FinCat::new(objects, arrows, identities, |f, g| {
            let h = morphisms[f].then(&morphisms[g])?;
            index.get(&h).copied().ok_or_else(|| Error::CategoryLaw(format!("{h} escapes the truncation")))
        })
        .expect("the cyclic category is a category");
        (cat, morphisms)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].target
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.source(f)] == f
    }

    /// `g∘f`.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f][g].map(|h| h as usize)
    }

    pub fn outgoing(&self, o: usize) -> &[usize] {
        &self.outgoing[o]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.outgoing[a].iter().copied().filter(|&f| self.target(f) == b).collect()
    }

    pub fn check_laws(&self) -> Result<()> {
        let n = self.arrows.len();
        for f in 0..n {
            let (s, t) = (self.source(f), self.target(f));
            if self.then(self.identities[s], f) != Some(f) || self.then(f, self.identities[t]) != Some(f) {
                return Err(Error::CategoryLaw(format!("identity law fails at {}", self.arrows[f].name)));
            }
            for g in self.outgoing[t].iter().copied() {
                let fg = self.then(f, g).expect("composable");
                if self.source(fg) != s || self.target(fg) != self.target(g) {
                    return Err(Error::CategoryLaw(format!("composite of {} and {} has wrong ends", self.arrows[f].name, self.arrows[g].name)));
                }
                for h in self.outgoing[self.target(g)].iter().copied() {
                    let l = self.then(fg, h);
                    let r = self.then(f, self.then(g, h).expect("composable"));
                    if l != r {
                        return Err(Error::CategoryLaw(format!(
                            "associativity fails at {}, {}, {}",
                            self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// All composable chains of `n` arrows, in a fixed order.
    pub fn nerve(&self, n: usize) -> Vec<NerveSimplex> {
        let mut level: Vec<NerveSimplex> =
            (0..self.objects.len()).map(|o| NerveSimplex { start: o, arrows: Vec::new() }).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &level {
                for &f in &self.outgoing[s.last(self)] {
                    let mut t = s.clone();
                    t.arrows.push(f);
                    next.push(t);
                }
            }
            level = next;
        }
        level
    }
}

/// `i_0 -> … -> i_n`; `start` is `i_0`, which matters only when `n = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl NerveSimplex {
    pub fn object(o: usize) -> Self {
        NerveSimplex { start: o, arrows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    pub fn first(&self) -> usize {
        self.start
    }

    pub fn last(&self, cat: &FinCat) -> usize {
        self.arrows.last().map_or(self.start, |&f| cat.target(f))
    }

    /// `i_k`.
    pub fn vertex(&self, cat: &FinCat, k: usize) -> usize {
        if k == 0 {
            self.start
        } else {
            cat.target(self.arrows[k - 1])
        }
    }

    /// `d_i`: drop the first or last arrow, or compose two neighbours.
    pub fn face(&self, cat: &FinCat, i: usize) -> NerveSimplex {
        let n = self.dim();
        assert!(n > 0 && i <= n, "face d{i} of a {n}-simplex");
        let mut arrows = self.arrows.clone();
        if i == 0 {
            arrows.remove(0);
            NerveSimplex { start: self.vertex(cat, 1), arrows }
        } else if i == n {
            arrows.pop();
            NerveSimplex { start: self.start, arrows }
        } else {
            let g = arrows.remove(i);
            arrows[i - 1] = cat.then(arrows[i - 1], g).expect("composable chain");
            NerveSimplex { start: self.start, arrows }
        }
    }

    /// `s_i`: insert the identity at `i_i`.
    pub fn degeneracy(&self, cat: &FinCat, i: usize) -> NerveSimplex {
        assert!(i <= self.dim(), "degeneracy s{i} of a {}-simplex", self.dim());
        let mut arrows = self.arrows.clone();
        arrows.insert(i, cat.identity(self.vertex(cat, i)));
        NerveSimplex { start: self.start, arrows }
    }

    pub fn is_degenerate(&self, cat: &FinCat) -> bool {
        self.arrows.iter().any(|&f| cat.is_identity(f))
    }

    /// The composite `i_0 -> i_n`.
    pub fn composite(&self, cat: &FinCat) -> usize {
        self.arrows.iter().skip(1).fold(self.arrows.first().copied().unwrap_or(cat.identity(self.start)), |acc, &g| {
            cat.then(acc, g).expect("composable chain")
        })
    }

    pub fn label(&self, cat: &FinCat) -> String {
        if self.arrows.is_empty() {
            return cat.object_name(self.start).to_string();
        }
        self.arrows.iter().map(|&f| cat.arrow(f).name.clone()).collect::<Vec<_>>().join(" | ")
    }
}

impl fmt::Debug for NerveSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.start, self.arrows)
    }
}

/// The nerve up to a level cap, with lookup.
#[derive(Clone, Debug)]
pub struct Nerve {
    levels: Vec<Vec<NerveSimplex>>,
    index: Vec<HashMap<NerveSimplex, usize>>,
}

impl Nerve {
    pub fn new(cat: &FinCat, cap: usize) -> Self {
        let levels: Vec<Vec<NerveSimplex>> = (0..=cap).map(|n| cat.nerve(n)).collect();
        let index = levels.iter().map(|l| l.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect()).collect();
        Nerve { levels, index }
    }

    pub fn cap(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[NerveSimplex] {
        &self.levels[n]
    }

    pub fn index(&self, s: &NerveSimplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Simplicial identities on every simplex up to the cap.
    pub fn check_identities(&self, cat: &FinCat) -> Result<()> {
        for n in 1..=self.cap() {
            for s in &self.levels[n] {
                for j in 0..=n {
                    for i in 0..j {
                        if n >= 2 && s.face(cat, j).face(cat, i) != s.face(cat, i).face(cat, j - 1) {
                            return Err(Error::SimplicialIdentity(format!("d{i}d{j} on {}", s.label(cat))));
                        }
                    }
                }
            }
        }
        for n in 0..self.cap() {
            for s in &self.levels[n] {
                for j in 0..=n {
                    let t = s.degeneracy(cat, j);
                    if t.face(cat, j) != *s || t.face(cat, j + 1) != *s {
                        return Err(Error::SimplicialIdentity(format!("d s{j} on {}", s.label(cat))));
                    }
                    for i in 0..=n + 1 {
                        let lhs = t.face(cat, i);
                        let rhs = if i < j {
                            s.face(cat, i).degeneracy(cat, j - 1)
                        } else if i > j + 1 {
                            s.face(cat, i - 1).degeneracy(cat, j)
                        } else {
                            continue;
                        };
                        if n > 0 && lhs != rhs {
                            return Err(Error::SimplicialIdentity(format!("d{i}s{j} on {}", s.label(cat))));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
