//! Cochains of cartesian powers `[n] -> C^*(X^{n+1})` as a cyclic chain
//! complex, and the simplicial circle.

use std::collections::BTreeMap;

use super::lambda::CyclicMorphism;
use crate::complex::{FinComplex, GradedMap, HomologyTable, Restrict};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::par;
use crate::ring::Ring;
use crate::sign::pow_neg_one;
use crate::simplicial::{pullback_map, Cochains, Product, SSet};
use crate::totalize::{totalize_simplicial, Tot};

#[derive(Clone, Debug)]
pub struct CocyclicSpace {
    x: SSet,
    ring: Ring,
    powers: Vec<Product>,
    cochains: Vec<Cochains>,
}

impl CocyclicSpace {
    /// Levels `0..=cap`; products are cut at cochain degree `degree_cap`.
    pub fn new(x: &SSet, ring: Ring, cap: usize, degree_cap: Option<usize>, ceiling: usize) -> Result<Self> {
        let powers: Vec<Product> =
            (0..=cap).map(|n| Product::power(x, n + 1, degree_cap, ceiling)).collect::<Result<_>>()?;
        let cochains = par::map(&powers, |p| Cochains::new(p.sset(), ring));
        Ok(CocyclicSpace { x: x.clone(), ring, powers, cochains })
    }

    pub fn space(&self) -> &SSet {
        &self.x
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn cap(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn power(&self, n: usize) -> &Product {
        &self.powers[n]
    }

    pub fn cochains(&self, n: usize) -> &Cochains {
        &self.cochains[n]
    }

    pub fn level(&self, n: usize) -> &FinComplex {
        self.cochains[n].complex()
    }

    /// `φ^*` for `φ: [i] -> [j]`: pullback along `X^{j+1} -> X^{i+1}`,
    /// `y ↦ (y_{g(l)})_l` with `g` the list assignment of `φ`.
    pub fn operator(&self, phi: &CyclicMorphism) -> Result<GradedMap> {
        let (i, j) = (phi.source(), phi.target());
        if i > self.cap() || j > self.cap() {
            return Err(Error::OutOfTruncation(format!("{phi} leaves levels 0..={}", self.cap())));
        }
        let f = self.powers[j].coordinate_map(&self.powers[i], &phi.assignment())?;
        Ok(pullback_map(&f, &self.cochains[j], &self.cochains[i]))
    }

    /// Simplices of `X^{n+1}` whose coordinates `1..=n` all avoid the base
    /// vertex, by homological degree.
    pub fn relative_basis(&self, n: usize) -> Result<BTreeMap<i64, Vec<usize>>> {
        if self.x.count(0) != 1 {
            return Err(Error::Unsupported("normalized loop levels need a single vertex".into()));
        }
        let p = &self.powers[n];
        let mut keep = BTreeMap::new();
        for d in 0..=p.max_dim() {
            let idx: Vec<usize> = (0..p.sset().count(d))
                .filter(|&s| p.coords(d, s)[1..].iter().all(|c| c.base_dim > 0))
                .collect();
            keep.insert(-(d as i64), idx);
        }
        Ok(keep)
    }
}

/// The normalized loop-side complex: relative cochains per level with the
/// alternating face sum, totalized.
#[derive(Clone, Debug)]
pub struct LoopComplex {
    pub bases: Vec<BTreeMap<i64, Vec<usize>>>,
    pub levels: Vec<FinComplex>,
    pub boundaries: Vec<GradedMap>,
    pub tot: Tot,
    /// lowest positive degree of reduced cohomology of `X`
    pub connectivity: Option<usize>,
}

fn restrict_map(m: &GradedMap, src: &BTreeMap<i64, Vec<usize>>, tgt: &BTreeMap<i64, Vec<usize>>) -> Result<GradedMap> {
    let empty = Vec::new();
    let mut comps = BTreeMap::new();
    for (&k, mat) in m.components() {
        let cols = src.get(&k).unwrap_or(&empty);
        let rows = tgt.get(&(k + m.degree())).unwrap_or(&empty);
        let kept: std::collections::HashSet<usize> = rows.iter().copied().collect();
        for &c in cols {
            if mat.column(c).iter().any(|e| !kept.contains(&e.0)) {
                return Err(Error::Shape(format!("relative cochains not preserved in degree {k}")));
            }
        }
        comps.insert(k, mat.submatrix(rows, cols));
    }
    let dims = |b: &BTreeMap<i64, Vec<usize>>| b.iter().map(|(&k, v)| (k, v.len())).collect();
    GradedMap::from_dims(m.ring(), dims(src), dims(tgt), m.degree(), comps)
}

impl LoopComplex {
    pub fn new(space: &CocyclicSpace) -> Result<Self> {
        let cap = space.cap();
        let bases: Vec<_> = (0..=cap).map(|n| space.relative_basis(n)).collect::<Result<_>>()?;
        let levels: Vec<FinComplex> =
            (0..=cap).map(|n| space.level(n).restrict(&bases[n], Restrict::Sub)).collect::<Result<_>>()?;
        let mut boundaries = Vec::with_capacity(cap);
        for n in 0..cap {
            let mut acc: Option<GradedMap> = None;
            for i in 0..=n + 1 {
                let f = restrict_map(&space.operator(&CyclicMorphism::face(n + 1, i)?)?, &bases[n + 1], &bases[n])?;
                acc = Some(match acc {
                    None => f,
                    Some(m) => m.add_scaled(pow_neg_one(i as i64), &f)?,
                });
            }
            boundaries.push(acc.expect("two faces"));
        }
        let mut tot = totalize_simplicial(&levels, &boundaries)?;
        let reduced = Cochains::new(space.space(), space.ring()).complex().full_homology()?;
        let connectivity = reduced.rows.iter().filter(|r| r.degree < 0 && (r.betti > 0 || !r.torsion.is_empty())).map(|r| (-r.degree) as usize).min();
        tot.window = loop_window(space, connectivity);
        Ok(LoopComplex { bases, levels, boundaries, tot, connectivity })
    }

    /// Per-level check behind the window: the homology of relative level `n`
    /// vanishes below cochain degree `r·n`.
    pub fn levels_are_connected(&self) -> Result<bool> {
        let Some(r) = self.connectivity else { return Ok(true) };
        for (n, l) in self.levels.iter().enumerate() {
            let h = l.full_homology()?;
            if h.rows.iter().any(|row| (-row.degree) < (r * n) as i64 && (row.betti > 0 || !row.torsion.is_empty())) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn homology(&self) -> Result<HomologyTable> {
        let (lo, hi) = self.tot.window.or(self.tot.complex.degree_range()).unwrap_or((0, 0));
        self.tot.complex.homology(lo, hi)
    }
}

/// Levels above the cap have homology in cohomological total degree at least
/// `(r-1)(cap+1)` when reduced cohomology starts in degree `r`, so the window
/// is `c <= (r-1)(cap+1) - 1`. A space with no reduced cohomology gives the
/// whole complex; `r = 1` gives nothing.
fn loop_window(space: &CocyclicSpace, connectivity: Option<usize>) -> Option<(i64, i64)> {
    let top = space.power(0).max_dim() as i64;
    match connectivity {
        None => Some((-top, 0)),
        Some(r) if r >= 2 && !space.power(space.cap()).is_truncated() => {
            let c = (r as i64 - 1) * (space.cap() as i64 + 1) - 1;
            Some((-c, 0))
        }
        _ => None,
    }
}

/// `S¹_n = Hom([0],[n])`, with structure maps by postcomposition.
#[derive(Clone, Debug)]
pub struct CircleSet {
    levels: Vec<Vec<CyclicMorphism>>,
}

impl CircleSet {
    pub fn new(cap: usize) -> Self {
        CircleSet { levels: (0..=cap).map(|n| CyclicMorphism::enumerate(0, n)).collect() }
    }

    pub fn level(&self, n: usize) -> &[CyclicMorphism] {
        &self.levels[n]
    }

    pub fn index(&self, x: &CyclicMorphism) -> Option<usize> {
        self.levels.get(x.target())?.iter().position(|y| y == x)
    }

    pub fn apply(&self, phi: &CyclicMorphism, x: &CyclicMorphism) -> Result<CyclicMorphism> {
        x.then(phi)
    }

    pub fn is_degenerate(&self, x: &CyclicMorphism) -> bool {
        let n = x.target();
        n > 0 && (0..n).any(|i| {
            CyclicMorphism::enumerate(0, n - 1)
                .iter()
                .any(|y| y.then(&CyclicMorphism::degeneracy(n - 1, i).expect("in range")).ok().as_ref() == Some(x))
        })
    }

    /// Normalized chains, truncated above the cap.
    pub fn chain_complex(&self, ring: Ring) -> Result<FinComplex> {
        let nd: Vec<Vec<usize>> = self
            .levels
            .iter()
            .map(|l| (0..l.len()).filter(|&k| !self.is_degenerate(&l[k])).collect())
            .collect();
        let dims = nd.iter().enumerate().map(|(n, v)| (n as i64, v.len())).collect();
        let mut diff = BTreeMap::new();
        for n in 1..self.levels.len() {
            let cols = nd[n]
                .iter()
                .map(|&k| {
                    let x = &self.levels[n][k];
                    let mut col = Vec::new();
                    for i in 0..=n {
                        let y = x.then(&CyclicMorphism::face(n, i).expect("in range")).expect("composable");
                        if let Some(r) = nd[n - 1].iter().position(|&m| self.levels[n - 1][m] == y) {
                            col.push((r, pow_neg_one(i as i64)));
                        }
                    }
                    col
                })
                .collect();
            diff.insert(n as i64, SparseMatrix::from_columns(ring, nd[n - 1].len(), cols));
        }
        FinComplex::new(ring, dims, diff)
    }
}
