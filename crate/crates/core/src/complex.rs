//! Bounded chain complexes with explicit bases, graded maps between them,
//! tensor and internal hom, mapping cones and homology.
//!
//! Grading is homological throughout: `d` lowers degree by one and cochains
//! of degree p sit in homological degree -p.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{SparseMatrix, SparseVec};
use crate::par;
use crate::ring::Ring;
use crate::sign::pow_neg_one;

#[derive(Clone, Debug)]
pub struct FinComplex {
    ring: Ring,
    dims: BTreeMap<i64, usize>,
    labels: BTreeMap<i64, Vec<String>>,
    /// `diff[k]`: C_k -> C_{k-1}
    diff: BTreeMap<i64, SparseMatrix>,
}

impl FinComplex {
    pub fn new(ring: Ring, dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(ring, dims, diff)?;
        c.check_d_squared()?;
        Ok(c)
    }

    /// Shape-checked but without the d∘d test; for complexes whose
    /// differential is zero-square by construction.
    pub fn new_unchecked(ring: Ring, mut dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        dims.retain(|_, n| *n > 0);
        let mut kept = BTreeMap::new();
        for (k, m) in diff {
            let (s, t) = (dims.get(&k).copied().unwrap_or(0), dims.get(&(k - 1)).copied().unwrap_or(0));
            if m.cols() != s || m.rows() != t {
                return Err(Error::Shape(format!(
                    "differential in degree {k} is {}x{}, expected {t}x{s}",
                    m.rows(),
                    m.cols()
                )));
            }
            let m = m.reduce(ring);
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        Ok(FinComplex { ring, dims, labels: BTreeMap::new(), diff: kept })
    }

    pub fn zero(ring: Ring) -> Self {
        FinComplex { ring, dims: BTreeMap::new(), labels: BTreeMap::new(), diff: BTreeMap::new() }
    }

    /// One basis element in degree 0, zero differential.
    pub fn unit(ring: Ring) -> Self {
        FinComplex::new_unchecked(ring, BTreeMap::from([(0, 1)]), BTreeMap::new()).unwrap()
    }

    pub fn with_labels(mut self, labels: BTreeMap<i64, Vec<String>>) -> Result<Self> {
        for (k, l) in &labels {
            if l.len() != self.dim(*k) {
                return Err(Error::Shape(format!("degree {k}: {} labels for {} basis elements", l.len(), self.dim(*k))));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Smallest and largest degree with a nonzero basis.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn d(&self, k: i64) -> SparseMatrix {
        self.diff.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(k - 1), self.dim(k)))
    }

    pub fn d_ref(&self, k: i64) -> Option<&SparseMatrix> {
        self.diff.get(&k)
    }

    pub fn label(&self, k: i64, i: usize) -> String {
        self.labels.get(&k).and_then(|l| l.get(i).cloned()).unwrap_or_else(|| format!("e{k}_{i}"))
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for (&k, m) in &self.diff {
            if let Some(next) = self.diff.get(&(k - 1)) {
                let dd = next.mul(self.ring, m);
                if !dd.is_zero() {
                    return Err(Error::NotAComplex { degree: k, nonzero: dd.nnz() });
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self, lo: i64, hi: i64) -> i64 {
        (lo..=hi).map(|k| pow_neg_one(k) * self.dim(k) as i64).sum()
    }

    pub fn homology(&self, lo: i64, hi: i64) -> Result<HomologyTable> {
        self.check_d_squared()?;
        let degrees: Vec<i64> = (lo..=hi + 1).collect();
        let ring = self.ring;
        let ranks: Vec<Result<usize>> = par::map(&degrees, |&k| match self.diff.get(&k) {
            Some(m) => linalg::rank(ring, m),
            None => Ok(0),
        });
        let ranks: Vec<usize> = ranks.into_iter().collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for (i, k) in (lo..=hi).enumerate() {
            let betti = self.dim(k) - ranks[i] - ranks[i + 1];
            let torsion = if ring == Ring::Integers {
                match self.diff.get(&(k + 1)) {
                    Some(m) => linalg::invariant_factors(m)?.into_iter().filter(|&x| x > 1).collect(),
                    None => Vec::new(),
                }
            } else {
                Vec::new()
            };
            rows.push(HomologyRow { degree: k, betti, torsion });
        }
        Ok(HomologyTable { ring, rows })
    }

    /// Homology over all degrees carrying a basis.
    pub fn full_homology(&self) -> Result<HomologyTable> {
        match self.degree_range() {
            Some((lo, hi)) => self.homology(lo, hi),
            None => Ok(HomologyTable { ring: self.ring, rows: Vec::new() }),
        }
    }

    /// The subcomplex (or quotient, see below) on a subset of each basis.
    ///
    /// With `Restrict::Sub` the kept elements must span a subcomplex; with
    /// `Restrict::Quotient` the dropped elements must. Either way the new
    /// differential is the corresponding submatrix.
    pub fn restrict(&self, keep: &BTreeMap<i64, Vec<usize>>, mode: Restrict) -> Result<FinComplex> {
        let empty = Vec::new();
        let mut dims = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for (&k, idx) in keep {
            dims.insert(k, idx.len());
        }
        for (&k, m) in &self.diff {
            let cols = keep.get(&k).unwrap_or(&empty);
            let rows = keep.get(&(k - 1)).unwrap_or(&empty);
            if mode == Restrict::Sub {
                let kept: std::collections::HashSet<usize> = rows.iter().copied().collect();
                for &c in cols {
                    if m.column(c).iter().any(|e| !kept.contains(&e.0)) {
                        return Err(Error::Shape(format!("kept basis in degree {k} is not closed under d")));
                    }
                }
            }
            diff.insert(k, m.submatrix(rows, cols));
        }
        let mut out = FinComplex::new_unchecked(self.ring, dims, diff)?;
        if !self.labels.is_empty() {
            out.labels = keep
                .iter()
                .map(|(&k, idx)| (k, idx.iter().map(|&i| self.label(k, i)).collect()))
                .collect();
        }
        if mode == Restrict::Quotient {
            out.check_d_squared()?;
        }
        Ok(out)
    }

    /// `C[s]`: degree k of the result is degree k - s of `self`; the
    /// differential picks up `(-1)^s`.
    pub fn shift(&self, s: i64) -> FinComplex {
        let dims = self.dims.iter().map(|(&k, &n)| (k + s, n)).collect();
        let diff = self.diff.iter().map(|(&k, m)| (k + s, m.scale(self.ring, pow_neg_one(s)))).collect();
        let labels = self.labels.iter().map(|(&k, l)| (k + s, l.clone())).collect();
        FinComplex { ring: self.ring, dims, labels, diff }
    }

    pub fn direct_sum(&self, other: &FinComplex) -> Result<FinComplex> {
        same_ring(self.ring, other.ring)?;
        let mut dims = self.dims.clone();
        for (&k, &n) in &other.dims {
            *dims.entry(k).or_insert(0) += n;
        }
        let mut diff = BTreeMap::new();
        for (&k, &n) in &dims {
            let _ = n;
            let (a, b) = (self.d(k), other.d(k));
            let rows = a.rows() + b.rows();
            let cols = a.cols() + b.cols();
            let m = SparseMatrix::from_blocks(rows, cols, &[(0, 0, &a), (a.rows(), a.cols(), &b)]);
            diff.insert(k, m);
        }
        FinComplex::new_unchecked(self.ring, dims, diff)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restrict {
    Sub,
    Quotient,
}

pub(crate) fn same_ring(a: Ring, b: Ring) -> Result<()> {
    if a != b {
        return Err(Error::RingMismatch(a.tag(), b.tag()));
    }
    Ok(())
}

/// Homogeneous linear map of some degree between two complexes.
#[derive(Clone, Debug)]
pub struct GradedMap {
    ring: Ring,
    degree: i64,
    src: BTreeMap<i64, usize>,
    tgt: BTreeMap<i64, usize>,
    /// `comps[k]`: source degree k -> target degree k + degree
    comps: BTreeMap<i64, SparseMatrix>,
}

impl GradedMap {
    pub fn new(source: &FinComplex, target: &FinComplex, degree: i64, comps: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        Self::from_dims(source.ring, source.dims.clone(), target.dims.clone(), degree, comps)
    }

    pub fn from_dims(
        ring: Ring,
        src: BTreeMap<i64, usize>,
        tgt: BTreeMap<i64, usize>,
        degree: i64,
        comps: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (k, m) in comps {
            let (s, t) = (src.get(&k).copied().unwrap_or(0), tgt.get(&(k + degree)).copied().unwrap_or(0));
            if m.cols() != s || m.rows() != t {
                return Err(Error::Shape(format!(
                    "component in degree {k} is {}x{}, expected {t}x{s}",
                    m.rows(),
                    m.cols()
                )));
            }
            let m = m.reduce(ring);
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        Ok(GradedMap { ring, degree, src, tgt, comps: kept })
    }

    pub fn zero(source: &FinComplex, target: &FinComplex, degree: i64) -> Self {
        GradedMap { ring: source.ring, degree, src: source.dims.clone(), tgt: target.dims.clone(), comps: BTreeMap::new() }
    }

    pub fn identity(c: &FinComplex) -> Self {
        let comps = c.dims.iter().map(|(&k, &n)| (k, SparseMatrix::identity(n))).collect();
        GradedMap { ring: c.ring, degree: 0, src: c.dims.clone(), tgt: c.dims.clone(), comps }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn source_dims(&self) -> &BTreeMap<i64, usize> {
        &self.src
    }

    pub fn target_dims(&self) -> &BTreeMap<i64, usize> {
        &self.tgt
    }

    pub fn comp(&self, k: i64) -> SparseMatrix {
        self.comps.get(&k).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(self.tgt.get(&(k + self.degree)).copied().unwrap_or(0), self.src.get(&k).copied().unwrap_or(0))
        })
    }

    pub fn comp_ref(&self, k: i64) -> Option<&SparseMatrix> {
        self.comps.get(&k)
    }

    pub fn components(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.comps.values().map(|m| m.nnz()).sum()
    }

    /// Image of a basis-coordinate vector in source degree `k`.
    pub fn apply(&self, k: i64, v: &SparseVec) -> SparseVec {
        match self.comps.get(&k) {
            Some(m) => m.apply(self.ring, v),
            None => Vec::new(),
        }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &GradedMap) -> Result<GradedMap> {
        same_ring(self.ring, after.ring)?;
        if self.tgt != after.src {
            return Err(Error::Shape("composition of maps with mismatched middle complex".into()));
        }
        let mut comps = BTreeMap::new();
        for (&k, m) in &self.comps {
            if let Some(a) = after.comps.get(&(k + self.degree)) {
                comps.insert(k, a.mul(self.ring, m));
            }
        }
        GradedMap::from_dims(self.ring, self.src.clone(), after.tgt.clone(), self.degree + after.degree, comps)
    }

    pub fn add_scaled(&self, c: i64, other: &GradedMap) -> Result<GradedMap> {
        same_ring(self.ring, other.ring)?;
        if self.degree != other.degree || self.src != other.src || self.tgt != other.tgt {
            return Err(Error::Shape("sum of maps with different shapes".into()));
        }
        let mut comps = self.comps.clone();
        for (&k, m) in &other.comps {
            let cur = self.comp(k);
            comps.insert(k, cur.add_scaled(self.ring, c, m));
        }
        GradedMap::from_dims(self.ring, self.src.clone(), self.tgt.clone(), self.degree, comps)
    }

    pub fn scale(&self, c: i64) -> GradedMap {
        let comps = self.comps.iter().map(|(&k, m)| (k, m.scale(self.ring, c))).collect();
        GradedMap::from_dims(self.ring, self.src.clone(), self.tgt.clone(), self.degree, comps).unwrap()
    }

    /// Internal-hom differential `d∘ψ - (-1)^n ψ∘d`.
    pub fn differential(&self, source: &FinComplex, target: &FinComplex) -> Result<GradedMap> {
        let n = self.degree;
        let ring = self.ring;
        let mut comps: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
        let mut degrees: Vec<i64> = self.comps.keys().copied().collect();
        degrees.extend(self.comps.keys().map(|k| k + 1));
        degrees.sort_unstable();
        degrees.dedup();
        for k in degrees {
            // component from source degree k to target degree k + n - 1
            let mut m = SparseMatrix::zeros(target.dim(k + n - 1), source.dim(k));
            if let (Some(psi), Some(dt)) = (self.comps.get(&k), target.d_ref(k + n)) {
                m = m.add(ring, &dt.mul(ring, psi));
            }
            if let (Some(psi), Some(ds)) = (self.comps.get(&(k - 1)), source.d_ref(k)) {
                m = m.add_scaled(ring, -pow_neg_one(n), &psi.mul(ring, ds));
            }
            comps.insert(k, m);
        }
        GradedMap::from_dims(ring, source.dims.clone(), target.dims.clone(), n - 1, comps)
    }

    pub fn is_chain_map(&self, source: &FinComplex, target: &FinComplex) -> Result<bool> {
        Ok(self.degree == 0 && self.differential(source, target)?.is_zero())
    }
}

/// Offsets of the pair blocks of a tensor product in one degree.
#[derive(Clone, Debug, Default)]
pub struct TensorDegree {
    /// (degree in first factor, block offset, dim of first, dim of second)
    pub blocks: Vec<(i64, usize, usize, usize)>,
    pub dim: usize,
}

impl TensorDegree {
    pub fn index(&self, i: i64, a: usize, b: usize) -> usize {
        let blk = self.blocks.iter().find(|blk| blk.0 == i).expect("no tensor block in that degree");
        blk.1 + a * blk.3 + b
    }

    /// Inverse of [`TensorDegree::index`]: (first degree, a, b).
    pub fn split(&self, idx: usize) -> (i64, usize, usize) {
        for &(i, off, na, nb) in &self.blocks {
            if idx < off + na * nb {
                let r = idx - off;
                return (i, r / nb, r % nb);
            }
        }
        panic!("tensor index {idx} out of range")
    }
}

/// Layout of `C ⊗ D` by total degree.
pub fn tensor_layout(c: &BTreeMap<i64, usize>, d: &BTreeMap<i64, usize>) -> BTreeMap<i64, TensorDegree> {
    let mut out: BTreeMap<i64, TensorDegree> = BTreeMap::new();
    for (&i, &na) in c {
        for (&j, &nb) in d {
            let t = out.entry(i + j).or_default();
            t.blocks.push((i, t.dim, na, nb));
            t.dim += na * nb;
        }
    }
    out
}

/// `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`, basis ordered by first-factor degree.
pub fn tensor(c: &FinComplex, d: &FinComplex) -> Result<FinComplex> {
    same_ring(c.ring, d.ring)?;
    let ring = c.ring;
    let layout = tensor_layout(&c.dims, &d.dims);
    let mut diff = BTreeMap::new();
    for (&k, td) in &layout {
        let Some(tgt) = layout.get(&(k - 1)) else { continue };
        let mut trip = Vec::new();
        for &(i, off, na, nb) in &td.blocks {
            let j = k - i;
            let dc = c.d_ref(i);
            let dd = d.d_ref(j);
            for a in 0..na {
                for b in 0..nb {
                    let col = off + a * nb + b;
                    if let Some(dc) = dc {
                        for &(a2, x) in dc.column(a) {
                            trip.push((tgt.index(i - 1, a2, b), col, x));
                        }
                    }
                    if let Some(dd) = dd {
                        let s = pow_neg_one(i);
                        for &(b2, y) in dd.column(b) {
                            trip.push((tgt.index(i, a, b2), col, s * y));
                        }
                    }
                }
            }
        }
        diff.insert(k, SparseMatrix::from_triplets(ring, tgt.dim, td.dim, trip));
    }
    let dims = layout.iter().map(|(&k, t)| (k, t.dim)).collect();
    let labels = if c.labels.is_empty() && d.labels.is_empty() {
        BTreeMap::new()
    } else {
        layout
            .iter()
            .map(|(&k, t)| {
                let mut l = Vec::with_capacity(t.dim);
                for &(i, _, na, nb) in &t.blocks {
                    for a in 0..na {
                        for b in 0..nb {
                            l.push(format!("{}⊗{}", c.label(i, a), d.label(k - i, b)));
                        }
                    }
                }
                (k, l)
            })
            .collect()
    };
    let mut out = FinComplex::new_unchecked(ring, dims, diff)?;
    out.labels = labels;
    Ok(out)
}

/// Tensor product of graded maps, `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`.
pub fn tensor_maps(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    same_ring(f.ring, g.ring)?;
    let ring = f.ring;
    let src = tensor_layout(&f.src, &g.src);
    let tgt = tensor_layout(&f.tgt, &g.tgt);
    let deg = f.degree + g.degree;
    let mut comps = BTreeMap::new();
    for (&k, sd) in &src {
        let Some(td) = tgt.get(&(k + deg)) else { continue };
        let mut trip = Vec::new();
        for &(i, off, na, nb) in &sd.blocks {
            let (Some(fm), Some(gm)) = (f.comps.get(&i), g.comps.get(&(k - i))) else { continue };
            let s = pow_neg_one(g.degree * i);
            for a in 0..na {
                for b in 0..nb {
                    for &(a2, x) in fm.column(a) {
                        for &(b2, y) in gm.column(b) {
                            trip.push((td.index(i + f.degree, a2, b2), off + a * nb + b, s * x * y));
                        }
                    }
                }
            }
        }
        comps.insert(k, SparseMatrix::from_triplets(ring, td.dim, sd.dim, trip));
    }
    let sdims = src.iter().map(|(&k, t)| (k, t.dim)).collect();
    let tdims = tgt.iter().map(|(&k, t)| (k, t.dim)).collect();
    GradedMap::from_dims(ring, sdims, tdims, deg, comps)
}

/// Internal hom. Degree n has basis the elementary maps `E(k; t, s)` sending
/// basis element s of `C_k` to basis element t of `D_{k+n}`, ordered by k,
/// then t, then s.
pub fn hom_complex(c: &FinComplex, d: &FinComplex) -> Result<FinComplex> {
    same_ring(c.ring, d.ring)?;
    let layout = hom_layout(c, d);
    let mut diff = BTreeMap::new();
    for (&n, hd) in &layout {
        let Some(tgt) = layout.get(&(n - 1)) else { continue };
        let mut cols = Vec::with_capacity(hd.dim);
        for idx in 0..hd.dim {
            let psi = hom_basis_map(c, d, n, hd, idx);
            let dpsi = psi.differential(c, d)?;
            cols.push(hom_vector(&dpsi, tgt));
        }
        diff.insert(n, SparseMatrix::from_columns(c.ring, tgt.dim, cols));
    }
    let dims = layout.iter().map(|(&n, h)| (n, h.dim)).collect();
    FinComplex::new_unchecked(c.ring, dims, diff)
}

#[derive(Clone, Debug, Default)]
pub struct HomDegree {
    /// (source degree k, offset, dim target block, dim source block)
    pub blocks: Vec<(i64, usize, usize, usize)>,
    pub dim: usize,
}

pub fn hom_layout(c: &FinComplex, d: &FinComplex) -> BTreeMap<i64, HomDegree> {
    let mut out: BTreeMap<i64, HomDegree> = BTreeMap::new();
    for (&k, &ns) in &c.dims {
        for (&j, &nt) in &d.dims {
            let h = out.entry(j - k).or_default();
            h.blocks.push((k, h.dim, nt, ns));
            h.dim += nt * ns;
        }
    }
    out
}

fn hom_basis_map(c: &FinComplex, d: &FinComplex, n: i64, hd: &HomDegree, idx: usize) -> GradedMap {
    let &(k, off, nt, ns) = hd.blocks.iter().find(|b| idx < b.1 + b.2 * b.3).unwrap();
    let r = idx - off;
    let m = SparseMatrix::from_triplets(c.ring, nt, ns, [(r / ns, r % ns, 1)]);
    GradedMap::new(c, d, n, BTreeMap::from([(k, m)])).unwrap()
}

/// Coordinates of a graded map in the basis of [`hom_complex`].
pub fn hom_vector(psi: &GradedMap, hd: &HomDegree) -> SparseVec {
    let mut v = Vec::new();
    for &(k, off, _nt, ns) in &hd.blocks {
        if let Some(m) = psi.comps.get(&k) {
            for (s, col) in m.columns().iter().enumerate() {
                for &(t, x) in col {
                    v.push((off + t * ns + s, x));
                }
            }
        }
    }
    v.sort_unstable_by_key(|e| e.0);
    v
}

/// Graded map with the given coordinates in degree n of the hom complex.
pub fn hom_element(c: &FinComplex, d: &FinComplex, n: i64, v: &SparseVec) -> Result<GradedMap> {
    let layout = hom_layout(c, d);
    let empty = HomDegree::default();
    let hd = layout.get(&n).unwrap_or(&empty);
    let mut comps: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for &(i, x) in v {
        let &(k, off, _nt, ns) = hd
            .blocks
            .iter()
            .find(|b| i >= b.1 && i < b.1 + b.2 * b.3)
            .ok_or_else(|| Error::Shape(format!("hom coordinate {i} out of range")))?;
        let r = i - off;
        comps.entry(k).or_default().push((r / ns, r % ns, x));
    }
    let comps = comps
        .into_iter()
        .map(|(k, t)| (k, SparseMatrix::from_triplets(c.ring, d.dim(k + n), c.dim(k), t)))
        .collect();
    GradedMap::new(c, d, n, comps)
}

/// Mapping cone of a degree-0 map: `Cone_k = C_{k-1} ⊕ D_k`,
/// `d(c, y) = (-dc, f(c) + dy)`.
pub fn cone(f: &GradedMap, c: &FinComplex, d: &FinComplex) -> Result<FinComplex> {
    if f.degree != 0 {
        return Err(Error::Shape("cone of a map of nonzero degree".into()));
    }
    let ring = c.ring;
    let mut dims = BTreeMap::new();
    for (&k, &n) in &c.dims {
        *dims.entry(k + 1).or_insert(0) += n;
    }
    for (&k, &n) in &d.dims {
        *dims.entry(k).or_insert(0) += n;
    }
    let mut diff = BTreeMap::new();
    for &k in dims.keys() {
        let (cs, ds) = (c.dim(k - 1), d.dim(k));
        let (ct, dt) = (c.dim(k - 2), d.dim(k - 1));
        let neg_dc = c.d(k - 1).scale(ring, -1);
        let fk = f.comp(k - 1);
        let dd = d.d(k);
        let m = SparseMatrix::from_blocks(ct + dt, cs + ds, &[(0, 0, &neg_dc), (ct, 0, &fk), (ct, cs, &dd)]);
        diff.insert(k, m);
    }
    FinComplex::new(ring, dims, diff)
}

/// Whether the degree-0 chain map `f` induces isomorphisms on homology in
/// degrees `lo..=hi` (over a field): sufficient and, for complexes whose
/// homology is the whole story, necessary condition is acyclicity of the
/// cone in degrees `lo..=hi+1`.
pub fn is_quasi_iso_on(f: &GradedMap, c: &FinComplex, d: &FinComplex, lo: i64, hi: i64) -> Result<bool> {
    if !f.is_chain_map(c, d)? {
        return Ok(false);
    }
    let h = cone(f, c, d)?.homology(lo, hi + 1)?;
    Ok(h.rows.iter().all(|r| r.betti == 0 && r.torsion.is_empty()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub degree: i64,
    pub betti: usize,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub ring: Ring,
    pub rows: Vec<HomologyRow>,
}

impl HomologyTable {
    pub fn betti(&self, degree: i64) -> usize {
        self.rows.iter().find(|r| r.degree == degree).map_or(0, |r| r.betti)
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.betti).collect()
    }

    /// Re-index by `degree -> -degree` (cochain degrees), ascending.
    pub fn negated(&self) -> HomologyTable {
        let mut rows: Vec<HomologyRow> =
            self.rows.iter().map(|r| HomologyRow { degree: -r.degree, betti: r.betti, torsion: r.torsion.clone() }).collect();
        rows.sort_by_key(|r| r.degree);
        HomologyTable { ring: self.ring, rows }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# ring {}\n# degree betti torsion\n", self.ring);
        for r in &self.rows {
            let t: Vec<String> = r.torsion.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{} {} {}", r.degree, r.betti, if t.is_empty() { "-".into() } else { t.join(",") });
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring.tag(),
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "degree": r.degree, "betti": r.betti, "torsion": r.torsion
            })).collect::<Vec<_>>()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(ring: Ring) -> FinComplex {
        // one vertex, one edge, zero differential
        FinComplex::new(ring, BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::new()).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let d = SparseMatrix::from_dense(Ring::Integers, &[vec![2]]);
        let c = FinComplex::new(Ring::Integers, BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, d)])).unwrap();
        let h = c.homology(0, 1).unwrap();
        assert_eq!(h.rows[0], HomologyRow { degree: 0, betti: 0, torsion: vec![2] });
        assert_eq!(h.rows[1], HomologyRow { degree: 1, betti: 0, torsion: vec![] });
    }

    #[test]
    fn zero_complex() {
        let h = FinComplex::zero(Ring::Rationals).homology(-2, 2).unwrap();
        assert!(h.bettis().iter().all(|&b| b == 0));
    }

    #[test]
    fn tensor_sign_rule() {
        // x in degree 1 with dx = a, y in degree 1 with dy = b
        let r = Ring::Integers;
        let dx = SparseMatrix::from_dense(r, &[vec![1]]);
        let c = FinComplex::new(r, BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, dx)])).unwrap();
        let t = tensor(&c, &c).unwrap();
        let lay = tensor_layout(c.dims(), c.dims());
        let xy = lay[&2].index(1, 0, 0);
        let ay = lay[&1].index(0, 0, 0);
        let xb = lay[&1].index(1, 0, 0);
        let col = t.d(2).column(xy).clone();
        assert_eq!(col, normalize_pair(vec![(ay, 1), (xb, -1)]));
    }

    fn normalize_pair(mut v: SparseVec) -> SparseVec {
        v.sort();
        v
    }

    #[test]
    fn torus_from_two_circles() {
        let c = circle(Ring::Rationals);
        let t = tensor(&c, &c).unwrap();
        assert_eq!(t.homology(0, 2).unwrap().bettis(), vec![1, 2, 1]);
    }

    #[test]
    fn unit_tensor_is_identity() {
        let r = Ring::Integers;
        let dx = SparseMatrix::from_dense(r, &[vec![3]]);
        let c = FinComplex::new(r, BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, dx)])).unwrap();
        let t = tensor(&c, &FinComplex::unit(r)).unwrap();
        assert_eq!(t.dims(), c.dims());
        assert_eq!(t.d(1), c.d(1));
    }

    #[test]
    fn hom_from_unit_is_the_complex() {
        let r = Ring::Integers;
        let dx = SparseMatrix::from_dense(r, &[vec![1, -1]]);
        let c = FinComplex::new(r, BTreeMap::from([(0, 1), (1, 2)]), BTreeMap::from([(1, dx)])).unwrap();
        let h = hom_complex(&FinComplex::unit(r), &c).unwrap();
        assert_eq!(h.dims(), c.dims());
        assert_eq!(h.d(1), c.d(1));
    }

    #[test]
    fn identity_is_a_cycle_in_hom() {
        let r = Ring::Integers;
        let dx = SparseMatrix::from_dense(r, &[vec![1, 1]]);
        let c = FinComplex::new(r, BTreeMap::from([(0, 1), (1, 2)]), BTreeMap::from([(1, dx)])).unwrap();
        let id = GradedMap::identity(&c);
        assert!(id.is_chain_map(&c, &c).unwrap());
        let h = hom_complex(&c, &c).unwrap();
        let v = hom_vector(&id, &hom_layout(&c, &c)[&0]);
        assert!(h.d(0).apply(r, &v).is_empty());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = circle(Ring::Prime(2));
        let id = GradedMap::identity(&c);
        assert!(is_quasi_iso_on(&id, &c, &c, -1, 2).unwrap());
        let z = FinComplex::zero(Ring::Prime(2));
        let zero = GradedMap::zero(&c, &z, 0);
        assert!(!is_quasi_iso_on(&zero, &c, &z, 0, 1).unwrap());
    }
}
