//! The two-sided bar resolution `QF` and the identification of natural
//! transformations out of it with `hc(F,G)`.

use std::collections::{BTreeMap, HashMap};

use super::category::{FinCat, NerveSimplex};
use super::diagram::{Diagram, Hc, HcLevel};
use crate::complex::{is_quasi_iso_on, FinComplex, GradedMap};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::sign::pow_neg_one;
use crate::totalize::{totalize_simplicial, Tot};

/// A summand of `QF_n(i)` is indexed by a chain `i_0 -> … -> i_n -> i`,
/// stored as a nerve simplex of dimension n+1. Structure maps send a chain
/// to a chain and apply `F` of one arrow to the summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QTerm {
    pub chain: NerveSimplex,
    /// arrow from the old `i_0` to the new one
    pub apply: usize,
}

fn then_term(cat: &FinCat, first: &QTerm, second: QTerm) -> QTerm {
    QTerm { chain: second.chain, apply: cat.then(first.apply, second.apply).expect("composable") }
}

pub fn q_face(cat: &FinCat, c: &NerveSimplex, j: usize) -> QTerm {
    let n = c.dim() - 1;
    assert!(n >= 1 && j <= n, "face d{j} on Q level {n}");
    if j == 0 {
        QTerm { chain: c.face(cat, 0), apply: c.arrows[0] }
    } else {
        QTerm { chain: c.face(cat, j), apply: cat.identity(c.start) }
    }
}

pub fn q_degeneracy(cat: &FinCat, c: &NerveSimplex, j: usize) -> QTerm {
    assert!(j < c.dim(), "degeneracy s{j} on Q level {}", c.dim() - 1);
    QTerm { chain: c.degeneracy(cat, j), apply: cat.identity(c.start) }
}

/// The contracting map: append the identity of the end object.
pub fn q_extra(cat: &FinCat, c: &NerveSimplex) -> QTerm {
    let mut chain = c.clone();
    chain.arrows.push(cat.identity(c.last(cat)));
    QTerm { chain, apply: cat.identity(c.start) }
}

/// `QF(i) -> QF(k)` for `α: i -> k`.
pub fn q_push(cat: &FinCat, alpha: usize, c: &NerveSimplex) -> QTerm {
    let mut chain = c.clone();
    let last = chain.arrows.last_mut().expect("Q chains are nonempty");
    *last = cat.then(*last, alpha).expect("composable");
    QTerm { chain, apply: cat.identity(c.start) }
}

/// Chains `i_0 -> … -> i_n -> i`.
pub fn q_chains(cat: &FinCat, i: usize, n: usize) -> Vec<NerveSimplex> {
    cat.nerve(n + 1).into_iter().filter(|c| c.last(cat) == i).collect()
}

/// Simplicial identities of `Q`, the contraction by `q_extra` and
/// compatibility with the augmentation and with pushforward along arrows,
/// checked on chains up to level `cap`. These are identities of indexing
/// data, so they hold for every diagram.
pub fn check_q_identities(cat: &FinCat, cap: usize) -> Result<()> {
    let fail = |s: String| Err(Error::SimplicialIdentity(s));
    let id = |c: &NerveSimplex| QTerm { chain: c.clone(), apply: cat.identity(c.start) };
    for n in 0..=cap {
        for c in cat.nerve(n + 1) {
            let i = c.last(cat);
            let e = q_extra(cat, &c);
            if n >= 1 {
                for j in 0..=n {
                    for k in 0..j {
                        let a = q_face(cat, &c, j);
                        let b = q_face(cat, &c, k);
                        if n >= 2 && then_term(cat, &a, q_face(cat, &a.chain, k)) != then_term(cat, &b, q_face(cat, &b.chain, j - 1)) {
                            return fail(format!("d{k}d{j} on {}", c.label(cat)));
                        }
                    }
                    let x = then_term(cat, &e, q_face(cat, &e.chain, j));
                    let y = then_term(cat, &q_face(cat, &c, j), q_extra(cat, &q_face(cat, &c, j).chain));
                    if x != y {
                        return fail(format!("d{j} h = h d{j} on {}", c.label(cat)));
                    }
                }
            } else {
                let x = q_face(cat, &e.chain, 0);
                let y = QTerm { chain: NerveSimplex { start: i, arrows: vec![cat.identity(i)] }, apply: c.composite(cat) };
                if x != y {
                    return fail(format!("d0 h = section ∘ augmentation on {}", c.label(cat)));
                }
            }
            if q_face(cat, &e.chain, n + 1) != id(&c) {
                return fail(format!("d{} h = id on {}", n + 1, c.label(cat)));
            }
            for j in 0..=n {
                let s = q_degeneracy(cat, &c, j);
                for k in 0..=n + 1 {
                    let lhs = then_term(cat, &s, q_face(cat, &s.chain, k));
                    let ok = if k == j || k == j + 1 {
                        lhs == id(&c)
                    } else if k < j {
                        let f = q_face(cat, &c, k);
                        lhs == then_term(cat, &f, q_degeneracy(cat, &f.chain, j - 1))
                    } else {
                        let f = q_face(cat, &c, k - 1);
                        lhs == then_term(cat, &f, q_degeneracy(cat, &f.chain, j))
                    };
                    if !ok {
                        return fail(format!("d{k}s{j} on {}", c.label(cat)));
                    }
                }
            }
            if n == 1 {
                let a = q_face(cat, &c, 0);
                let b = q_face(cat, &c, 1);
                let ea = cat.then(a.apply, a.chain.composite(cat));
                let eb = cat.then(b.apply, b.chain.composite(cat));
                if ea != eb {
                    return fail(format!("augmentation is not simplicial on {}", c.label(cat)));
                }
            }
            for &alpha in cat.outgoing(i) {
                let p = q_push(cat, alpha, &c);
                if cat.then(c.composite(cat), alpha) != Some(p.chain.composite(cat)) {
                    return Err(Error::Naturality(format!("augmentation along {}", cat.arrow(alpha).name)));
                }
                for j in 1..=n {
                    let x = then_term(cat, &p, q_face(cat, &p.chain, j));
                    let f = q_face(cat, &c, j);
                    let y = then_term(cat, &f, q_push(cat, alpha, &f.chain));
                    if x != y {
                        return Err(Error::Naturality(format!("d{j} along {}", cat.arrow(alpha).name)));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `QF(i)` materialized up to level `cap`, with its totalization.
#[derive(Clone, Debug)]
pub struct QResolution {
    pub object: usize,
    pub chains: Vec<Vec<NerveSimplex>>,
    index: Vec<HashMap<NerveSimplex, usize>>,
    offsets: Vec<Vec<BTreeMap<i64, usize>>>,
    pub levels: Vec<FinComplex>,
    pub boundaries: Vec<GradedMap>,
    pub tot: Tot,
}

fn direct_sum(ring: crate::ring::Ring, parts: &[&FinComplex]) -> Result<(FinComplex, Vec<BTreeMap<i64, usize>>)> {
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for p in parts {
        let mut off = BTreeMap::new();
        for (&k, &d) in p.dims() {
            let e = dims.entry(k).or_insert(0);
            off.insert(k, *e);
            *e += d;
        }
        offsets.push(off);
    }
    let mut diff = BTreeMap::new();
    for (&k, &dim) in &dims {
        let Some(&tdim) = dims.get(&(k - 1)) else { continue };
        let mut blocks = Vec::new();
        for (p, off) in parts.iter().zip(&offsets) {
            if let (Some(m), Some(&so), Some(&to)) = (p.d_ref(k), off.get(&k), off.get(&(k - 1))) {
                blocks.push((to, so, m));
            }
        }
        diff.insert(k, SparseMatrix::from_blocks(tdim, dim, &blocks));
    }
    Ok((FinComplex::new_unchecked(ring, dims, diff)?, offsets))
}

impl QResolution {
    pub fn new(cat: &FinCat, f: &Diagram, object: usize, cap: usize) -> Result<Self> {
        let ring = f.object(object).ring();
        let chains: Vec<Vec<NerveSimplex>> = (0..=cap).map(|n| q_chains(cat, object, n)).collect();
        let index = chains.iter().map(|l| l.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect()).collect();
        let mut levels = Vec::new();
        let mut offsets = Vec::new();
        for l in &chains {
            let parts: Vec<&FinComplex> = l.iter().map(|c| f.object(c.start)).collect();
            let (c, o) = direct_sum(ring, &parts)?;
            levels.push(c);
            offsets.push(o);
        }
        let levels_head = vec![levels[0].clone()];
        let mut q = QResolution { object, chains, index, offsets, levels, boundaries: Vec::new(), tot: totalize_simplicial(&levels_head, &[])? };
        for n in 0..cap {
            let mut acc: Option<GradedMap> = None;
            for j in 0..=n + 1 {
                let m = q.term_map(cat, f, n + 1, n, |c| q_face(cat, c, j))?;
                acc = Some(match acc {
                    None => m,
                    Some(x) => x.add_scaled(pow_neg_one(j as i64), &m)?,
                });
            }
            q.boundaries.push(acc.expect("faces"));
        }
        q.tot = totalize_simplicial(&q.levels, &q.boundaries)?;
        Ok(q)
    }

    /// The map `level src -> level tgt` sending each summand along a term.
    pub fn term_map(&self, cat: &FinCat, f: &Diagram, src: usize, tgt: usize, term: impl Fn(&NerveSimplex) -> QTerm) -> Result<GradedMap> {
        let ring = self.levels[src].ring();
        let mut trip: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
        for (ci, c) in self.chains[src].iter().enumerate() {
            let t = term(c);
            let Some(&ti) = self.index[tgt].get(&t.chain) else {
                return Err(Error::OutOfTruncation(format!("chain {} above the Q cap", t.chain.label(cat))));
            };
            for (&k, m) in f.map(t.apply).components() {
                let (so, to) = (self.offsets[src][ci][&k], self.offsets[tgt][ti][&k]);
                let e = trip.entry(k).or_default();
                for (col, v) in m.columns().iter().enumerate() {
                    for &(row, x) in v {
                        e.push((to + row, so + col, x));
                    }
                }
            }
        }
        let (sd, td) = (self.levels[src].dims(), self.levels[tgt].dims());
        let comps = trip
            .into_iter()
            .map(|(k, t)| (k, SparseMatrix::from_triplets(ring, td[&k], sd[&k], t)))
            .collect();
        GradedMap::from_dims(ring, sd.clone(), td.clone(), 0, comps)
    }

    /// `Σ F(i_0 -> i)` on level 0, extended by zero over the totalization.
    pub fn augmentation(&self, cat: &FinCat, f: &Diagram) -> Result<GradedMap> {
        let target = f.object(self.object);
        let ring = target.ring();
        let mut comps = BTreeMap::new();
        for (&t, lay) in &self.tot.layout {
            let Some((_, off, _)) = lay.block(0) else { continue };
            let mut trip = Vec::new();
            for (ci, c) in self.chains[0].iter().enumerate() {
                let Some(m) = f.map(c.composite(cat)).comp_ref(t) else { continue };
                let so = off + self.offsets[0][ci][&t];
                for (col, v) in m.columns().iter().enumerate() {
                    for &(row, x) in v {
                        trip.push((row, so + col, x));
                    }
                }
            }
            comps.insert(t, SparseMatrix::from_triplets(ring, target.dim(t), lay.dim, trip));
        }
        GradedMap::from_dims(ring, self.tot.complex.dims().clone(), target.dims().clone(), 0, comps)
    }

    /// `F(i) -> QF_0(i)` onto the summand of the identity chain.
    pub fn section(&self, cat: &FinCat, f: &Diagram) -> Result<GradedMap> {
        let source = f.object(self.object);
        let ring = source.ring();
        let idc = NerveSimplex { start: self.object, arrows: vec![cat.identity(self.object)] };
        let ci = self.index[0][&idc];
        let mut comps = BTreeMap::new();
        for (&t, lay) in &self.tot.layout {
            let (Some((_, off, _)), d) = (lay.block(0), source.dim(t)) else { continue };
            if d == 0 {
                continue;
            }
            let so = off + self.offsets[0][ci][&t];
            comps.insert(t, SparseMatrix::from_triplets(ring, lay.dim, d, (0..d).map(|r| (so + r, r, 1))));
        }
        GradedMap::from_dims(ring, source.dims().clone(), self.tot.complex.dims().clone(), 0, comps)
    }

    /// The leg `Tot QF(i) -> G(i)` of a natural family `η^m: QF_m -> G` of
    /// degree m: `η^m_c` on the summand of the chain `c`. Coherence of the
    /// family is exactly the chain map condition.
    pub fn leg(&self, target: &FinComplex, family: &[NatLevel]) -> Result<GradedMap> {
        let ring = target.ring();
        let mut comps = BTreeMap::new();
        for (&t, lay) in &self.tot.layout {
            let mut trip = Vec::new();
            for &(m, k, off, _) in &lay.blocks {
                let Some(eta) = family.get(m) else { continue };
                for (ci, c) in self.chains[m].iter().enumerate() {
                    let map = eta.comps.get(c).ok_or_else(|| Error::Dangling(format!("chain at level {m}")))?;
                    let (Some(mat), Some(&o)) = (map.comp_ref(k), self.offsets[m][ci].get(&k)) else { continue };
                    let so = off + o;
                    for (col, v) in mat.columns().iter().enumerate() {
                        for &(row, x) in v {
                            trip.push((row, so + col, x));
                        }
                    }
                }
            }
            comps.insert(t, SparseMatrix::from_triplets(ring, target.dim(t), lay.dim, trip));
        }
        GradedMap::from_dims(ring, self.tot.complex.dims().clone(), target.dims().clone(), 0, comps)
    }

    /// Whether the augmentation is a quasi-isomorphism on the window of
    /// the truncated totalization.
    pub fn augmentation_is_quasi_iso(&self, cat: &FinCat, f: &Diagram) -> Result<bool> {
        let Some((lo, hi)) = self.tot.window else { return Ok(false) };
        let eps = self.augmentation(cat, f)?;
        is_quasi_iso_on(&eps, &self.tot.complex, f.object(self.object), lo, hi)
    }
}

/// One cosimplicial level of `Nat(QF_•, G)`: for every object `i` and
/// every chain of `QF_n(i)`, a map `F(i_0) -> G(i)`.
#[derive(Clone, Debug)]
pub struct NatLevel {
    pub level: usize,
    pub degree: i64,
    pub comps: BTreeMap<NerveSimplex, GradedMap>,
}

impl NatLevel {
    pub fn is_equal(&self, other: &NatLevel) -> Result<bool> {
        if self.comps.len() != other.comps.len() {
            return Ok(false);
        }
        for (c, m) in &self.comps {
            match other.comps.get(c) {
                Some(o) if m.add_scaled(-1, o)?.is_zero() => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

impl<'a> Hc<'a> {
    /// `α`: restrict to chains ending in an identity.
    pub fn alpha(&self, eta: &NatLevel) -> Result<HcLevel> {
        self.from_fn(eta.level, eta.degree, |s| {
            let mut c = s.clone();
            c.arrows.push(self.cat.identity(s.last(self.cat)));
            eta.comps.get(&c).cloned().ok_or_else(|| Error::Dangling(format!("chain {}", c.label(self.cat))))
        })
    }

    /// `α⁻¹`: postcompose with `G` of the last arrow.
    pub fn alpha_inv(&self, a: &HcLevel) -> Result<NatLevel> {
        let n = a.level;
        let mut comps = BTreeMap::new();
        for c in self.cat.nerve(n + 1) {
            let mut s = c.clone();
            let last = s.arrows.pop().expect("nonempty");
            let k = self.nerve.index(&s).expect("within the nerve cap");
            comps.insert(c, a.maps[k].then(self.g.map(last))?);
        }
        Ok(NatLevel { level: n, degree: a.degree, comps })
    }

    /// Naturality of a family; the error names the first violating arrow.
    pub fn check_naturality(&self, eta: &NatLevel) -> Result<()> {
        for (c, m) in &eta.comps {
            for &alpha in self.cat.outgoing(c.last(self.cat)) {
                let p = q_push(self.cat, alpha, c);
                let lhs = eta.comps.get(&p.chain).ok_or_else(|| Error::Dangling(p.chain.label(self.cat)))?;
                if !lhs.add_scaled(-1, &m.then(self.g.map(alpha))?)?.is_zero() {
                    return Err(Error::Naturality(format!("{} at {}", self.cat.arrow(alpha).name, c.label(self.cat))));
                }
            }
        }
        Ok(())
    }

    /// `δ^j η = η ∘ d_j`.
    pub fn nat_coface(&self, j: usize, eta: &NatLevel) -> Result<NatLevel> {
        let n = eta.level + 1;
        let mut comps = BTreeMap::new();
        for c in self.cat.nerve(n + 1) {
            let t = q_face(self.cat, &c, j);
            let inner = eta.comps.get(&t.chain).ok_or_else(|| Error::Dangling(t.chain.label(self.cat)))?;
            comps.insert(c, self.f.map(t.apply).then(inner)?);
        }
        Ok(NatLevel { level: n, degree: eta.degree, comps })
    }

    /// `σ^j η = η ∘ s_j`.
    pub fn nat_codegeneracy(&self, j: usize, eta: &NatLevel) -> Result<NatLevel> {
        let n = eta.level - 1;
        let mut comps = BTreeMap::new();
        for c in self.cat.nerve(n + 1) {
            let t = q_degeneracy(self.cat, &c, j);
            comps.insert(c, eta.comps[&t.chain].clone());
        }
        Ok(NatLevel { level: n, degree: eta.degree, comps })
    }

    /// Per object: does the level-0 component induce an isomorphism on
    /// homology in the given degrees.
    pub fn quasi_iso_verdicts(&self, a0: &HcLevel, windows: &[(i64, i64)]) -> Result<Vec<bool>> {
        (0..self.cat.object_count())
            .map(|o| {
                let k = self.nerve.index(&NerveSimplex::object(o)).expect("objects are 0-simplices");
                let (lo, hi) = windows[o];
                is_quasi_iso_on(&a0.maps[k], self.f.object(o), self.g.object(o), lo, hi)
            })
            .collect()
    }
}
