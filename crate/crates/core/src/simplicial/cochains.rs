//! Normalized chains and cochains, the Alexander–Whitney cup product and the
//! external Alexander–Whitney map.

use std::collections::BTreeMap;

use super::map::SimplicialMap;
use super::product::Product;
use super::sset::SSet;
use crate::complex::{tensor_layout, FinComplex, GradedMap};
use crate::error::{Error, Result};
use crate::matrix::{normalize, SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::sign::pow_neg_one;

/// Normalized chain complex, `∂ = Σ (-1)^i d_i`.
pub fn chain_complex(x: &SSet, ring: Ring) -> FinComplex {
    let top = x.max_dim();
    let mut dims = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for n in 0..=top {
        dims.insert(n as i64, x.count(n));
        if n > 0 {
            let mut trip = Vec::new();
            for idx in 0..x.count(n) {
                for i in 0..=n {
                    let f = x.face(n, idx, i);
                    if !f.is_degenerate() {
                        trip.push((f.index as usize, idx, pow_neg_one(i as i64)));
                    }
                }
            }
            diff.insert(n as i64, SparseMatrix::from_triplets(ring, x.count(n - 1), x.count(n), trip));
        }
    }
    let labels = (0..=top).map(|n| (n as i64, (0..x.count(n)).map(|i| x.label(n, i)).collect())).collect();
    FinComplex::new_unchecked(ring, dims, diff).unwrap().with_labels(labels).unwrap()
}

/// A homogeneous normalized cochain: coefficients on nondegenerate
/// p-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coeffs: SparseVec,
}

impl Cochain {
    pub fn basis(degree: usize, idx: usize) -> Self {
        Cochain { degree, coeffs: vec![(idx, 1)] }
    }

    pub fn zero(degree: usize) -> Self {
        Cochain { degree, coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn value(&self, idx: usize) -> i64 {
        self.coeffs.binary_search_by_key(&idx, |e| e.0).map_or(0, |k| self.coeffs[k].1)
    }
}

/// Normalized cochains with coefficients in a ring. Cochain degree p sits in
/// homological degree -p; the coboundary is `δa = (-1)^{p+1} a∘∂`, the
/// internal-hom differential into the ground ring.
#[derive(Clone, Debug)]
pub struct Cochains {
    ring: Ring,
    sset: SSet,
    complex: FinComplex,
}

impl Cochains {
    pub fn new(x: &SSet, ring: Ring) -> Self {
        let top = x.max_dim();
        let mut dims = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for p in 0..=top {
            dims.insert(-(p as i64), x.count(p));
        }
        for p in 0..top {
            let mut trip = Vec::new();
            let s = pow_neg_one(p as i64 + 1);
            for idx in 0..x.count(p + 1) {
                for i in 0..=p + 1 {
                    let f = x.face(p + 1, idx, i);
                    if !f.is_degenerate() {
                        trip.push((idx, f.index as usize, s * pow_neg_one(i as i64)));
                    }
                }
            }
            diff.insert(-(p as i64), SparseMatrix::from_triplets(ring, x.count(p + 1), x.count(p), trip));
        }
        let labels = (0..=top).map(|p| (-(p as i64), (0..x.count(p)).map(|i| format!("{}*", x.label(p, i))).collect())).collect();
        let complex = FinComplex::new_unchecked(ring, dims, diff).unwrap().with_labels(labels).unwrap();
        Cochains { ring, sset: x.clone(), complex }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn sset(&self) -> &SSet {
        &self.sset
    }

    pub fn complex(&self) -> &FinComplex {
        &self.complex
    }

    pub fn rank(&self, p: usize) -> usize {
        self.sset.count(p)
    }

    /// The unit: 1 on every vertex.
    pub fn unit(&self) -> Cochain {
        Cochain { degree: 0, coeffs: (0..self.sset.count(0)).map(|i| (i, 1)).collect() }
    }

    pub fn coboundary(&self, a: &Cochain) -> Cochain {
        let coeffs = match self.complex.d_ref(-(a.degree as i64)) {
            Some(m) => m.apply(self.ring, &a.coeffs),
            None => Vec::new(),
        };
        Cochain { degree: a.degree + 1, coeffs }
    }

    pub fn add(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        self.add_scaled(a, 1, b)
    }

    pub fn add_scaled(&self, a: &Cochain, c: i64, b: &Cochain) -> Result<Cochain> {
        if a.degree != b.degree {
            return Err(Error::Shape(format!("adding cochains of degrees {} and {}", a.degree, b.degree)));
        }
        Ok(Cochain { degree: a.degree, coeffs: crate::matrix::add_scaled(self.ring, &a.coeffs, c, &b.coeffs) })
    }

    pub fn scale(&self, a: &Cochain, c: i64) -> Cochain {
        Cochain { degree: a.degree, coeffs: normalize(self.ring, a.coeffs.iter().map(|&(i, x)| (i, c * x)).collect()) }
    }

    /// `(a ∪ b)(σ) = (-1)^{pq} a(front_p σ) b(back_q σ)`.
    pub fn cup(&self, a: &Cochain, b: &Cochain) -> Cochain {
        let (p, q) = (a.degree, b.degree);
        let n = p + q;
        let x = &self.sset;
        let s = pow_neg_one((p * q) as i64);
        let front: Vec<usize> = (0..=p).collect();
        let back: Vec<usize> = (p..=n).collect();
        let mut out = Vec::new();
        if a.is_zero() || b.is_zero() {
            return Cochain::zero(n);
        }
        for idx in 0..x.count(n) {
            let f = x.apply_nd(n, idx, &front);
            if f.is_degenerate() {
                continue;
            }
            let va = a.value(f.index as usize);
            if va == 0 {
                continue;
            }
            let g = x.apply_nd(n, idx, &back);
            if g.is_degenerate() {
                continue;
            }
            let vb = b.value(g.index as usize);
            if vb != 0 {
                out.push((idx, s * va * vb));
            }
        }
        Cochain { degree: n, coeffs: normalize(self.ring, out) }
    }

    /// `f^* a` for `f: source -> self.sset()`.
    pub fn pullback(&self, f: &SimplicialMap, a: &Cochain) -> Cochain {
        let m = f.pullback(self.ring, a.degree, self.sset.count(a.degree));
        Cochain { degree: a.degree, coeffs: m.apply(self.ring, &a.coeffs) }
    }
}

/// The graded map `f^*` between normalized cochain complexes.
pub fn pullback_map(f: &SimplicialMap, source: &Cochains, target: &Cochains) -> GradedMap {
    let ring = source.ring;
    let top = source.sset.max_dim().min(target.sset.max_dim());
    let comps = (0..=top)
        .map(|p| (-(p as i64), f.pullback(ring, p, target.sset.count(p))))
        .collect();
    GradedMap::new(target.complex(), source.complex(), 0, comps).unwrap()
}

/// The iterated external Alexander–Whitney map
/// `C^*(X_0) ⊗ … ⊗ C^*(X_k) -> C^*(X_0 × … × X_k)`,
/// `(a_0 × … × a_k)(σ) = (-1)^{Σ_{i<j} p_i p_j} Π a_i(pr_i σ|[n_i, n_{i+1}])`.
///
/// The source basis is the iterated tensor basis from [`tensor_power`].
pub fn aw_external(factors: &[&Cochains], target: &Product, target_cochains: &Cochains) -> Result<GradedMap> {
    let ring = target_cochains.ring;
    if factors.len() != target.arity() {
        return Err(Error::Arity { expected: target.arity(), got: factors.len() });
    }
    let src = tensor_power(&factors.iter().map(|c| c.complex().clone()).collect::<Vec<_>>())?;
    let tx = target.sset();
    let mut comps = BTreeMap::new();
    for (&k, &dim) in src.dims() {
        let n = (-k) as usize;
        if n > target.max_dim() {
            continue;
        }
        let mut trip = Vec::new();
        for col in 0..dim {
            let parts = tensor_power_split(&src_layouts(factors), k, col);
            let degs: Vec<usize> = parts.iter().map(|&(p, _)| p).collect();
            let mut sgn_exp = 0usize;
            for i in 0..degs.len() {
                for j in (i + 1)..degs.len() {
                    sgn_exp += degs[i] * degs[j];
                }
            }
            let s = pow_neg_one(sgn_exp as i64);
            for idx in 0..tx.count(n) {
                let t = target.coords(n, idx);
                let mut start = 0;
                let mut ok = true;
                for (j, &(p, b)) in parts.iter().enumerate() {
                    let theta: Vec<usize> = (start..=start + p).collect();
                    let f = factors[j].sset().apply(t[j], &theta);
                    if f.is_degenerate() || f.index as usize != b {
                        ok = false;
                        break;
                    }
                    start += p;
                }
                if ok {
                    trip.push((idx, col, s));
                }
            }
        }
        comps.insert(k, SparseMatrix::from_triplets(ring, tx.count(n), dim, trip));
    }
    GradedMap::new(&src, target_cochains.complex(), 0, comps)
}

/// Left-nested tensor power `((C_0 ⊗ C_1) ⊗ C_2) ⊗ …`.
pub fn tensor_power(cs: &[FinComplex]) -> Result<FinComplex> {
    let mut acc = cs.first().cloned().ok_or_else(|| Error::Shape("empty tensor power".into()))?;
    for c in &cs[1..] {
        acc = crate::complex::tensor(&acc, c)?;
    }
    Ok(acc)
}

fn src_layouts(factors: &[&Cochains]) -> Vec<BTreeMap<i64, usize>> {
    factors.iter().map(|c| c.complex().dims().clone()).collect()
}

/// Decompose an index of the left-nested tensor power in homological degree
/// `k` into `(cochain degree, basis index)` per factor.
pub fn tensor_power_split(dims: &[BTreeMap<i64, usize>], k: i64, idx: usize) -> Vec<(usize, usize)> {
    fn rec(dims: &[BTreeMap<i64, usize>], k: i64, idx: usize, out: &mut Vec<(usize, usize)>) {
        if dims.len() == 1 {
            out.push(((-k) as usize, idx));
            return;
        }
        let (head, last) = dims.split_at(dims.len() - 1);
        let head_dims = nested_dims(head);
        let lay = tensor_layout(&head_dims, &last[0]);
        let (i, a, b) = lay[&k].split(idx);
        rec(head, i, a, out);
        out.push(((-(k - i)) as usize, b));
    }
    let mut out = Vec::new();
    rec(dims, k, idx, &mut out);
    out
}

/// Inverse of [`tensor_power_split`].
pub fn tensor_power_index(dims: &[BTreeMap<i64, usize>], parts: &[(usize, usize)]) -> (i64, usize) {
    if parts.len() == 1 {
        return (-(parts[0].0 as i64), parts[0].1);
    }
    let (head, last) = dims.split_at(dims.len() - 1);
    let (i, a) = tensor_power_index(head, &parts[..parts.len() - 1]);
    let (pl, b) = parts[parts.len() - 1];
    let lay = tensor_layout(&nested_dims(head), &last[0]);
    let k = i - pl as i64;
    (k, lay[&k].index(i, a, b))
}

/// Degree dimensions of a left-nested tensor power.
pub fn nested_dims(dims: &[BTreeMap<i64, usize>]) -> BTreeMap<i64, usize> {
    let mut acc = dims[0].clone();
    for d in &dims[1..] {
        acc = tensor_layout(&acc, d).into_iter().map(|(k, t)| (k, t.dim)).collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coboundary_of_a_vertex() {
        let c = Cochains::new(&SSet::delta(1), Ring::Integers);
        let v0 = Cochain::basis(0, 0);
        assert_eq!(c.coboundary(&v0), Cochain { degree: 1, coeffs: vec![(0, 1)] });
        assert_eq!(c.coboundary(&c.unit()), Cochain::zero(1));
    }

    #[test]
    fn cup_of_vertices_on_an_edge() {
        let c = Cochains::new(&SSet::delta(1), Ring::Integers);
        let e = c.cup(&Cochain::basis(0, 0), &Cochain::basis(0, 1));
        assert!(e.is_zero());
        let a = Cochain::basis(0, 0);
        let edge = Cochain::basis(1, 0);
        assert_eq!(c.cup(&a, &edge), edge);
        assert_eq!(c.cup(&edge, &Cochain::basis(0, 1)), edge);
    }

    #[test]
    fn boundary_of_tetrahedron() {
        let b = SSet::boundary(3).unwrap();
        let h = chain_complex(&b, Ring::Integers).homology(0, 2).unwrap();
        assert_eq!(h.bettis(), vec![1, 0, 1]);
        assert!(h.rows.iter().all(|r| r.torsion.is_empty()));
    }
}
