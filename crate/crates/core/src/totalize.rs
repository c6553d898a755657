//! Truncated totalizations of cosimplicial and simplicial chain complexes.
//!
//! A cosimplicial level `n` in internal degree `k` sits in total degree
//! `k - n` and carries `D = d - (-1)^k Σ(-1)^i δ^i`. A simplicial level `n`
//! sits in total degree `k + n` with `D = (-1)^n (d - Σ(-1)^i d_i)`.

use std::collections::BTreeMap;

use crate::complex::{same_ring, FinComplex, GradedMap};
use crate::error::{Error, Result};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::sign::pow_neg_one;

/// Which levels and internal degrees make up one total degree.
#[derive(Clone, Debug, Default)]
pub struct TotDegree {
    /// (level, internal degree, offset, dim)
    pub blocks: Vec<(usize, i64, usize, usize)>,
    pub dim: usize,
}

impl TotDegree {
    pub fn block(&self, level: usize) -> Option<(i64, usize, usize)> {
        self.blocks.iter().find(|b| b.0 == level).map(|&(_, k, o, d)| (k, o, d))
    }

    /// Embed a vector of one level into the total degree.
    pub fn inject(&self, level: usize, v: &SparseVec) -> SparseVec {
        match self.block(level) {
            Some((_, off, _)) => v.iter().map(|&(i, c)| (i + off, c)).collect(),
            None => Vec::new(),
        }
    }

    /// Component of a total vector at one level.
    pub fn project(&self, level: usize, v: &SparseVec) -> SparseVec {
        match self.block(level) {
            Some((_, off, dim)) => v.iter().filter(|(i, _)| *i >= off && *i < off + dim).map(|&(i, c)| (i - off, c)).collect(),
            None => Vec::new(),
        }
    }
}

/// The assembled total complex with its layout and honest window.
#[derive(Clone, Debug)]
pub struct Tot {
    pub complex: FinComplex,
    pub layout: BTreeMap<i64, TotDegree>,
    /// Inclusive range of total degrees unaffected by the truncation.
    pub window: Option<(i64, i64)>,
}

impl Tot {
    pub fn window_contains(&self, t: i64) -> bool {
        matches!(self.window, Some((lo, hi)) if lo <= t && t <= hi)
    }
}

fn layout(levels: &[FinComplex], dir: i64) -> BTreeMap<i64, TotDegree> {
    let mut out: BTreeMap<i64, TotDegree> = BTreeMap::new();
    for (n, c) in levels.iter().enumerate() {
        for (&k, &dim) in c.dims() {
            if dim == 0 {
                continue;
            }
            let e = out.entry(k + dir * n as i64).or_default();
            e.blocks.push((n, k, e.dim, dim));
            e.dim += dim;
        }
    }
    out
}

fn check_levels(levels: &[FinComplex]) -> Result<Ring> {
    let ring = levels.first().map(|c| c.ring()).ok_or_else(|| Error::Shape("no levels".into()))?;
    for c in levels {
        same_ring(ring, c.ring())?;
    }
    Ok(ring)
}

fn internal_range(levels: &[FinComplex]) -> Option<(i64, i64)> {
    levels.iter().filter_map(|c| c.degree_range()).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
}

/// A cosimplicial chain complex truncated at level `levels.len() - 1`.
#[derive(Clone, Debug)]
pub struct Cosimplicial {
    pub levels: Vec<FinComplex>,
    /// `cofaces[n][i]: level n -> level n+1`, `i = 0..=n+1`
    pub cofaces: Vec<Vec<GradedMap>>,
    /// `codegeneracies[n][i]: level n+1 -> level n`, `i = 0..=n`; may be empty
    pub codegeneracies: Vec<Vec<GradedMap>>,
}

impl Cosimplicial {
    pub fn constant(c: &FinComplex, cap: usize) -> Self {
        let id = GradedMap::identity(c);
        Cosimplicial {
            levels: vec![c.clone(); cap + 1],
            cofaces: (0..cap).map(|n| vec![id.clone(); n + 2]).collect(),
            codegeneracies: (0..cap).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.levels.len() - 1
    }

    /// Cosimplicial identities and chain-map property of every structure map.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::CosimplicialIdentity(what));
        for (n, fs) in self.cofaces.iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                if !f.is_chain_map(&self.levels[n], &self.levels[n + 1])? {
                    return fail(format!("δ^{i} at level {n} is not a chain map"));
                }
            }
        }
        for (n, ss) in self.codegeneracies.iter().enumerate() {
            for (i, s) in ss.iter().enumerate() {
                if !s.is_chain_map(&self.levels[n + 1], &self.levels[n])? {
                    return fail(format!("σ^{i} at level {n} is not a chain map"));
                }
            }
        }
        // δ^j δ^i = δ^i δ^{j-1} for i < j
        for n in 0..self.cofaces.len().saturating_sub(1) {
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = self.cofaces[n][i].then(&self.cofaces[n + 1][j])?;
                    let rhs = self.cofaces[n][j - 1].then(&self.cofaces[n + 1][i])?;
                    if !lhs.add_scaled(-1, &rhs)?.is_zero() {
                        return fail(format!("δ^{j}δ^{i} = δ^{i}δ^{} fails at level {n}", j - 1));
                    }
                }
            }
        }
        if self.codegeneracies.is_empty() {
            return Ok(());
        }
        // σ^j δ^i: δ^i σ^{j-1} (i<j), id (i=j, j+1), δ^{i-1} σ^j (i>j+1)
        for n in 1..self.cofaces.len() {
            if self.codegeneracies.len() <= n {
                break;
            }
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.cofaces[n][i].then(&self.codegeneracies[n][j])?;
                    let rhs = if i < j {
                        self.codegeneracies[n - 1][j - 1].then(&self.cofaces[n - 1][i])?
                    } else if i == j || i == j + 1 {
                        GradedMap::identity(&self.levels[n])
                    } else {
                        self.codegeneracies[n - 1][j].then(&self.cofaces[n - 1][i - 1])?
                    };
                    if !lhs.add_scaled(-1, &rhs)?.is_zero() {
                        return fail(format!("σ^{j}δ^{i} relation fails at level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Alternating coface sum `Σ(-1)^i δ^i` from level n.
    pub fn coboundary(&self, n: usize) -> Result<GradedMap> {
        let fs = &self.cofaces[n];
        let mut acc = fs[0].clone();
        for (i, f) in fs.iter().enumerate().skip(1) {
            acc = acc.add_scaled(pow_neg_one(i as i64), f)?;
        }
        Ok(acc)
    }

    pub fn totalize(&self) -> Result<Tot> {
        let deltas: Vec<GradedMap> = (0..self.cofaces.len()).map(|n| self.coboundary(n)).collect::<Result<_>>()?;
        totalize_cosimplicial(&self.levels, &deltas)
    }
}

/// Product totalization from the levels and their alternating coface sums
/// `deltas[n]: level n -> level n+1`.
pub fn totalize_cosimplicial(levels: &[FinComplex], deltas: &[GradedMap]) -> Result<Tot> {
    let ring = check_levels(levels)?;
    let cap = levels.len() - 1;
    let lay = layout(levels, -1);
    let mut dims = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for (&t, td) in &lay {
        dims.insert(t, td.dim);
        let Some(tgt) = lay.get(&(t - 1)) else { continue };
        let mut blocks = Vec::new();
        for &(n, k, off, _) in &td.blocks {
            if let (Some(d), Some((_, toff, _))) = (levels[n].d_ref(k), tgt.block(n)) {
                blocks.push((toff, off, d.clone()));
            }
            if n < deltas.len() {
                if let (Some(m), Some((_, toff, _))) = (deltas[n].comp_ref(k), tgt.block(n + 1)) {
                    blocks.push((toff, off, m.scale(ring, -pow_neg_one(k))));
                }
            }
        }
        let refs: Vec<(usize, usize, &SparseMatrix)> = blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
        diff.insert(t, SparseMatrix::from_blocks(tgt.dim, td.dim, &refs).reduce(ring));
    }
    let complex = FinComplex::new(ring, dims, diff).map_err(|e| Error::SignConvention(format!("cosimplicial total complex: {e}")))?;
    // level cap+1 would add boundaries to degree hi - cap and below
    let window = internal_range(levels).map(|(_, hi)| (hi - cap as i64 + 1, hi));
    Ok(Tot { complex, layout: lay, window: window.filter(|(lo, hi)| lo <= hi) })
}

/// A simplicial chain complex truncated at level `levels.len() - 1`.
#[derive(Clone, Debug)]
pub struct Simplicial {
    pub levels: Vec<FinComplex>,
    /// `faces[n][i]: level n+1 -> level n`, `i = 0..=n+1`
    pub faces: Vec<Vec<GradedMap>>,
    /// `degeneracies[n][i]: level n -> level n+1`, `i = 0..=n`; may be empty
    pub degeneracies: Vec<Vec<GradedMap>>,
}

impl Simplicial {
    pub fn constant(c: &FinComplex, cap: usize) -> Self {
        let id = GradedMap::identity(c);
        Simplicial {
            levels: vec![c.clone(); cap + 1],
            faces: (0..cap).map(|n| vec![id.clone(); n + 2]).collect(),
            degeneracies: (0..cap).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::SimplicialIdentity(what));
        for (n, fs) in self.faces.iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                if !f.is_chain_map(&self.levels[n + 1], &self.levels[n])? {
                    return fail(format!("d_{i} at level {} is not a chain map", n + 1));
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j, from level n+2
        for n in 0..self.faces.len().saturating_sub(1) {
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = self.faces[n + 1][j].then(&self.faces[n][i])?;
                    let rhs = self.faces[n + 1][i].then(&self.faces[n][j - 1])?;
                    if !lhs.add_scaled(-1, &rhs)?.is_zero() {
                        return fail(format!("d_{i}d_{j} = d_{}d_{i} fails at level {}", j - 1, n + 2));
                    }
                }
            }
        }
        // d_i s_j: s_{j-1} d_i (i<j), id (i=j, j+1), s_j d_{i-1} (i>j+1)
        for (n, ss) in self.degeneracies.iter().enumerate() {
            if n >= self.faces.len() {
                break;
            }
            for (j, s) in ss.iter().enumerate() {
                for i in 0..=n + 1 {
                    let lhs = s.then(&self.faces[n][i])?;
                    let rhs = if i == j || i == j + 1 {
                        GradedMap::identity(&self.levels[n])
                    } else if n == 0 {
                        continue;
                    } else if i < j {
                        self.faces[n - 1][i].then(&self.degeneracies[n - 1][j - 1])?
                    } else {
                        self.faces[n - 1][i - 1].then(&self.degeneracies[n - 1][j])?
                    };
                    if !lhs.add_scaled(-1, &rhs)?.is_zero() {
                        return fail(format!("d_{i}s_{j} relation fails at level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ(-1)^i d_i` out of level n+1.
    pub fn boundary(&self, n: usize) -> Result<GradedMap> {
        let fs = &self.faces[n];
        let mut acc = fs[0].clone();
        for (i, f) in fs.iter().enumerate().skip(1) {
            acc = acc.add_scaled(pow_neg_one(i as i64), f)?;
        }
        Ok(acc)
    }

    pub fn totalize(&self) -> Result<Tot> {
        let bds: Vec<GradedMap> = (0..self.faces.len()).map(|n| self.boundary(n)).collect::<Result<_>>()?;
        totalize_simplicial(&self.levels, &bds)
    }
}

/// Direct-sum totalization from the levels and their alternating face sums
/// `boundaries[n]: level n+1 -> level n`.
pub fn totalize_simplicial(levels: &[FinComplex], boundaries: &[GradedMap]) -> Result<Tot> {
    let ring = check_levels(levels)?;
    let cap = levels.len() - 1;
    let lay = layout(levels, 1);
    let mut dims = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for (&t, td) in &lay {
        dims.insert(t, td.dim);
        let Some(tgt) = lay.get(&(t - 1)) else { continue };
        let mut blocks = Vec::new();
        for &(n, k, off, _) in &td.blocks {
            let s = pow_neg_one(n as i64);
            if let (Some(d), Some((_, toff, _))) = (levels[n].d_ref(k), tgt.block(n)) {
                blocks.push((toff, off, d.scale(ring, s)));
            }
            if n >= 1 {
                if let (Some(m), Some((_, toff, _))) = (boundaries[n - 1].comp_ref(k), tgt.block(n - 1)) {
                    blocks.push((toff, off, m.scale(ring, -s)));
                }
            }
        }
        let refs: Vec<(usize, usize, &SparseMatrix)> = blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
        diff.insert(t, SparseMatrix::from_blocks(tgt.dim, td.dim, &refs).reduce(ring));
    }
    let complex = FinComplex::new(ring, dims, diff).map_err(|e| Error::SignConvention(format!("simplicial total complex: {e}")))?;
    let window = internal_range(levels).map(|(lo, hi)| (lo, (hi + cap as i64).min(lo + cap as i64 - 1)));
    Ok(Tot { complex, layout: lay, window: window.filter(|(lo, hi)| lo <= hi) })
}
