//! The cyclic bar construction `[n] -> A^{⊗n+1}`, its normalized Hochschild
//! complex and Connes' operator.

use std::collections::{BTreeMap, HashMap};

use super::dga::Dga;
use super::lambda::CyclicMorphism;
use crate::complex::{FinComplex, GradedMap, HomologyTable};
use crate::error::{Error, Result};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::sign::{koszul_sign, pow_neg_one};
use crate::totalize::{totalize_simplicial, Tot};

/// Basis of a tensor power of a DGA: tuples of global basis indices grouped
/// by total degree, lexicographic within a degree.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    factors: usize,
    by_degree: BTreeMap<i64, Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, (i64, usize)>,
}

impl TensorBasis {
    pub fn new(a: &Dga, factors: usize, keep: impl Fn(&[u32]) -> bool) -> Self {
        let dim = a.dim() as u32;
        let mut by_degree: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
        let mut cur = vec![0u32; factors];
        'outer: loop {
            if keep(&cur) {
                let k: i64 = cur.iter().map(|&g| a.degree(g as usize)).sum();
                by_degree.entry(k).or_default().push(cur.clone());
            }
            for pos in (0..factors).rev() {
                cur[pos] += 1;
                if cur[pos] < dim {
                    continue 'outer;
                }
                cur[pos] = 0;
            }
            break;
        }
        let mut index = HashMap::new();
        for (&k, ts) in &by_degree {
            for (i, t) in ts.iter().enumerate() {
                index.insert(t.clone(), (k, i));
            }
        }
        TensorBasis { factors, by_degree, index }
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.by_degree.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn tuples(&self, k: i64) -> &[Vec<u32>] {
        self.by_degree.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn lookup(&self, t: &[u32]) -> Option<(i64, usize)> {
        self.index.get(t).copied()
    }

    /// Tensor complex `d(a_0⊗…) = Σ ±a_0⊗…⊗da_i⊗…`, dropping tuples outside
    /// the basis (a quotient when the basis spans a quotient).
    pub fn complex(&self, a: &Dga) -> Result<FinComplex> {
        let ring = a.ring();
        let dims = self.dims();
        let mut diff = BTreeMap::new();
        for (&k, ts) in &self.by_degree {
            let Some(&tdim) = dims.get(&(k - 1)) else { continue };
            let cols = ts
                .iter()
                .map(|t| {
                    let mut col = Vec::new();
                    let mut before = 0i64;
                    for i in 0..t.len() {
                        let s = pow_neg_one(before);
                        for &(h, c) in a.d(t[i] as usize) {
                            let mut u = t.clone();
                            u[i] = h as u32;
                            if let Some((_, j)) = self.lookup(&u) {
                                col.push((j, s * c));
                            }
                        }
                        before += a.degree(t[i] as usize);
                    }
                    col
                })
                .collect();
            diff.insert(k, SparseMatrix::from_columns(ring, tdim, cols));
        }
        FinComplex::new(ring, dims, diff)
    }
}

/// `φ_*` on one basis tensor: Koszul sign of reordering into concatenation
/// order, then the product of each list (the unit for an empty list).
pub fn bar_apply(a: &Dga, phi: &CyclicMorphism, t: &[u32]) -> Vec<(Vec<u32>, i64)> {
    let degs: Vec<i64> = t.iter().map(|&g| a.degree(g as usize)).collect();
    let sign = koszul_sign(&degs, &phi.order());
    let mut acc: Vec<(Vec<u32>, i64)> = vec![(Vec::with_capacity(phi.target() + 1), sign)];
    for list in phi.lists() {
        let mut prod: SparseVec = vec![(a.unit(), 1)];
        for &l in &list {
            prod = a.mul_vec(&prod, &[(t[l] as usize, 1)]);
            if prod.is_empty() {
                return Vec::new();
            }
        }
        let mut next = Vec::with_capacity(acc.len() * prod.len());
        for (u, c) in &acc {
            for &(g, x) in &prod {
                let mut v = u.clone();
                v.push(g as u32);
                next.push((v, c * x));
            }
        }
        acc = next;
    }
    acc
}

/// Matrix of `φ_*` between two tensor bases, dropping targets outside `tgt`.
pub fn bar_operator(a: &Dga, phi: &CyclicMorphism, src: &TensorBasis, tgt: &TensorBasis) -> Result<GradedMap> {
    if src.factors() != phi.source() + 1 || tgt.factors() != phi.target() + 1 {
        return Err(Error::Shape(format!("{phi} does not match tensor powers {} -> {}", src.factors(), tgt.factors())));
    }
    let ring = a.ring();
    let sdims = src.dims();
    let tdims = tgt.dims();
    let mut comps = BTreeMap::new();
    for (&k, ts) in &src.by_degree {
        let rows = tdims.get(&k).copied().unwrap_or(0);
        if rows == 0 {
            continue;
        }
        let cols = ts
            .iter()
            .map(|t| {
                let col: SparseVec = bar_apply(a, phi, t)
                    .into_iter()
                    .filter_map(|(u, c)| tgt.lookup(&u).map(|(_, j)| (j, c)))
                    .collect();
                col
            })
            .collect();
        comps.insert(k, SparseMatrix::from_columns(ring, rows, cols));
    }
    GradedMap::from_dims(ring, sdims, tdims, 0, comps)
}

/// `B^cyc(A)` up to level `cap`, unnormalized.
#[derive(Clone, Debug)]
pub struct CyclicBar {
    dga: Dga,
    bases: Vec<TensorBasis>,
    levels: Vec<FinComplex>,
}

impl CyclicBar {
    pub fn new(a: &Dga, cap: usize) -> Result<Self> {
        let bases: Vec<TensorBasis> = (0..=cap).map(|n| TensorBasis::new(a, n + 1, |_| true)).collect();
        let levels = bases.iter().map(|b| b.complex(a)).collect::<Result<_>>()?;
        Ok(CyclicBar { dga: a.clone(), bases, levels })
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn cap(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinComplex {
        &self.levels[n]
    }

    pub fn basis(&self, n: usize) -> &TensorBasis {
        &self.bases[n]
    }

    pub fn operator(&self, phi: &CyclicMorphism) -> Result<GradedMap> {
        if phi.source() > self.cap() || phi.target() > self.cap() {
            return Err(Error::OutOfTruncation(format!("{phi} leaves levels 0..={}", self.cap())));
        }
        bar_operator(&self.dga, phi, &self.bases[phi.source()], &self.bases[phi.target()])
    }
}

/// Normalized level: `A ⊗ Ā^{⊗n}`, with `Ā` spanned by the non-unit basis.
pub fn normalized_basis(a: &Dga, n: usize) -> TensorBasis {
    let u = a.unit() as u32;
    TensorBasis::new(a, n + 1, |t| t[1..].iter().all(|&g| g != u))
}

/// Alternating face sum from normalized level `n+1` to level `n`.
pub fn normalized_boundary(a: &Dga, src: &TensorBasis, tgt: &TensorBasis) -> Result<GradedMap> {
    let n = tgt.factors() - 1;
    let mut acc: Option<GradedMap> = None;
    for i in 0..=n + 1 {
        let f = bar_operator(a, &CyclicMorphism::face(n + 1, i)?, src, tgt)?;
        acc = Some(match acc {
            None => f,
            Some(m) => m.add_scaled(pow_neg_one(i as i64), &f)?,
        });
    }
    Ok(acc.expect("at least two faces"))
}

/// Normalized Hochschild complex truncated at `cap`, totalized.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub bases: Vec<TensorBasis>,
    pub levels: Vec<FinComplex>,
    pub boundaries: Vec<GradedMap>,
    pub tot: Tot,
}

impl HochschildComplex {
    pub fn new(a: &Dga, cap: usize) -> Result<Self> {
        let bases: Vec<TensorBasis> = (0..=cap).map(|n| normalized_basis(a, n)).collect();
        let levels: Vec<FinComplex> = bases.iter().map(|b| b.complex(a)).collect::<Result<_>>()?;
        let boundaries: Vec<GradedMap> =
            (0..cap).map(|n| normalized_boundary(a, &bases[n + 1], &bases[n])).collect::<Result<_>>()?;
        let mut tot = totalize_simplicial(&levels, &boundaries)?;
        tot.window = hochschild_window(a, cap);
        Ok(HochschildComplex { bases, levels, boundaries, tot })
    }
}

/// Total homological degrees that levels above `cap` cannot reach. Needs the
/// augmentation ideal to sit in degrees `<= -2` or `>= 0`.
pub fn hochschild_window(a: &Dga, cap: usize) -> Option<(i64, i64)> {
    let n1 = cap as i64 + 1;
    let (lo_all, hi_all) = a.complex().degree_range().unwrap_or((0, 0));
    match a.augmentation_degrees() {
        None => Some((0, 0)),
        Some((_, amax)) if amax <= -2 => Some((hi_all + n1 * (amax + 1) + 1, hi_all)),
        Some((amin, _)) if amin >= 0 => {
            let hi = lo_all + n1 * (amin + 1) - 2;
            (hi >= lo_all).then_some((lo_all, hi))
        }
        _ => None,
    }
}

/// Result of a Hochschild computation on its honest window.
#[derive(Clone, Debug)]
pub struct HochschildResult {
    /// homological total degrees
    pub table: HomologyTable,
    pub window: Option<(i64, i64)>,
    pub cap: usize,
    /// the window ranks agree with a recomputation at `cap + 1`
    pub stabilized: bool,
}

impl HochschildResult {
    /// The table in cohomological degrees (negated), for cochain algebras.
    pub fn cohomological(&self) -> HomologyTable {
        self.table.negated()
    }
}

pub fn hochschild(a: &Dga, cap: usize) -> Result<HochschildResult> {
    let h = HochschildComplex::new(a, cap)?;
    let (lo, hi) = match h.tot.window {
        Some(w) => w,
        None => {
            let (lo, hi) = h.tot.complex.degree_range().unwrap_or((0, 0));
            let table = h.tot.complex.homology(lo, hi)?;
            return Ok(HochschildResult { table, window: None, cap, stabilized: false });
        }
    };
    let table = h.tot.complex.homology(lo, hi)?;
    let next = HochschildComplex::new(a, cap + 1)?;
    let table2 = next.tot.complex.homology(lo, hi)?;
    let stabilized = table.rows == table2.rows;
    Ok(HochschildResult { table, window: Some((lo, hi)), cap, stabilized })
}

/// Connes' operator on normalized level `n`:
/// `B = Σ_i (-1)^{ni} s_{-1} t^i`, where `s_{-1}` puts the unit in front.
pub fn connes_b(a: &Dga, src: &TensorBasis, tgt: &TensorBasis) -> Result<GradedMap> {
    let n = src.factors() - 1;
    let extra = CyclicMorphism::from_lists(n, &std::iter::once(vec![]).chain((0..=n).map(|l| vec![l])).collect::<Vec<_>>())?;
    let mut acc: Option<GradedMap> = None;
    let mut rot = CyclicMorphism::identity(n);
    for i in 0..=n {
        let m = bar_operator(a, &rot.then(&extra)?, src, tgt)?.scale(pow_neg_one((n * i) as i64));
        acc = Some(match acc {
            None => m,
            Some(x) => x.add_scaled(1, &m)?,
        });
        rot = rot.then(&CyclicMorphism::cyclic(n))?;
    }
    Ok(acc.expect("nonempty"))
}

/// Connes' operator on the total normalized complex, `(-1)^n B` on level `n`,
/// which anticommutes with the total differential.
pub fn connes_b_total(a: &Dga, h: &HochschildComplex) -> Result<GradedMap> {
    let ring = a.ring();
    let cap = h.levels.len() - 1;
    let dims = h.tot.complex.dims().clone();
    let mut comps: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
    for n in 0..cap {
        let b = connes_b(a, &h.bases[n], &h.bases[n + 1])?.scale(pow_neg_one(n as i64));
        for (&k, m) in b.components() {
            let t = k + n as i64;
            let (Some(src), Some(tgt)) = (h.tot.layout.get(&t), h.tot.layout.get(&(t + 1))) else { continue };
            let (Some((_, so, _)), Some((_, to, _))) = (src.block(n), tgt.block(n + 1)) else { continue };
            let cur = comps.remove(&t).unwrap_or_else(|| SparseMatrix::zeros(tgt.dim, src.dim));
            let placed = SparseMatrix::from_blocks(tgt.dim, src.dim, &[(to, so, m)]);
            comps.insert(t, cur.add(ring, &placed));
        }
    }
    GradedMap::from_dims(ring, dims.clone(), dims, 1, comps)
}

/// Ranks of the truncated `(b, B)` bicomplex for negative cyclic homology:
/// columns `u^0, u^{-1}, …, u^{-columns+1}`, total differential `D + uB`.
/// Returned as a plain table; no convergence claim is made.
pub fn negative_cyclic_truncated(a: &Dga, cap: usize, columns: usize) -> Result<(HomologyTable, Option<(i64, i64)>)> {
    let h = HochschildComplex::new(a, cap)?;
    let ring = a.ring();
    let b = connes_b_total(a, &h)?;
    let c = &h.tot.complex;
    // column p holds a copy of C shifted by -2p; D acts within, B maps p -> p+1
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut offs: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); columns];
    for (p, off) in offs.iter_mut().enumerate() {
        for (&k, &d) in c.dims() {
            let t = k - 2 * p as i64;
            let e = dims.entry(t).or_insert(0);
            off.insert(k, *e);
            *e += d;
        }
    }
    let mut diff = BTreeMap::new();
    for (&t, &dim) in &dims {
        let Some(&tdim) = dims.get(&(t - 1)) else { continue };
        let mut blocks: Vec<(usize, usize, SparseMatrix)> = Vec::new();
        for p in 0..columns {
            let k = t + 2 * p as i64;
            let Some(&so) = offs[p].get(&k) else { continue };
            if let (Some(d), Some(&to)) = (c.d_ref(k), offs[p].get(&(k - 1))) {
                blocks.push((to, so, d.clone()));
            }
            if p + 1 < columns {
                if let (Some(m), Some(&to)) = (b.comp_ref(k), offs[p + 1].get(&(k + 1))) {
                    blocks.push((to, so, m.clone()));
                }
            }
        }
        let refs: Vec<(usize, usize, &SparseMatrix)> = blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
        diff.insert(t, SparseMatrix::from_blocks(tdim, dim, &refs).reduce(ring));
    }
    let total = FinComplex::new(ring, dims, diff)?;
    let (lo, hi) = total.degree_range().unwrap_or((0, 0));
    Ok((total.homology(lo, hi)?, None))
}
