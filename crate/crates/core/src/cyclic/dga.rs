//! Finite unital differential graded algebras with the unit as a basis element.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::complex::FinComplex;
use crate::error::{Error, Result};
use crate::matrix::{normalize, SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::simplicial::{Cochain, Cochains};

/// Basis elements are indexed globally in increasing homological degree, which
/// is also the order of the underlying complex.
#[derive(Clone, Debug)]
pub struct Dga {
    ring: Ring,
    complex: FinComplex,
    names: Vec<String>,
    degrees: Vec<i64>,
    offsets: BTreeMap<i64, usize>,
    diff: Vec<SparseVec>,
    mult: Vec<Vec<SparseVec>>,
    unit: usize,
}

impl Dga {
    /// `diff[g]` and `mult[a][b]` are given in the input order of `names`;
    /// the basis is re-sorted by degree and all laws are checked.
    pub fn new(
        ring: Ring,
        names: Vec<String>,
        degrees: Vec<i64>,
        diff: Vec<SparseVec>,
        mult: Vec<Vec<SparseVec>>,
        unit: usize,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || diff.len() != n || mult.len() != n || mult.iter().any(|r| r.len() != n) || unit >= n {
            return Err(Error::Shape("algebra tables do not match the basis size".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&g| (degrees[g], g));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let remap = |v: &SparseVec| -> SparseVec { normalize(ring, v.iter().map(|&(g, c)| (pos[g], c)).collect()) };
        let names: Vec<String> = order.iter().map(|&g| names[g].clone()).collect();
        let new_degrees: Vec<i64> = order.iter().map(|&g| degrees[g]).collect();
        let diff: Vec<SparseVec> = order.iter().map(|&g| remap(&diff[g])).collect();
        let mult: Vec<Vec<SparseVec>> = order.iter().map(|&a| order.iter().map(|&b| remap(&mult[a][b])).collect()).collect();
        let dga = Self::assemble(ring, names, new_degrees, diff, mult, pos[unit])?;
        dga.validate()?;
        Ok(dga)
    }

    fn assemble(
        ring: Ring,
        names: Vec<String>,
        degrees: Vec<i64>,
        diff: Vec<SparseVec>,
        mult: Vec<Vec<SparseVec>>,
        unit: usize,
    ) -> Result<Self> {
        let mut offsets = BTreeMap::new();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for (g, &k) in degrees.iter().enumerate() {
            offsets.entry(k).or_insert(g);
            *dims.entry(k).or_insert(0) += 1;
        }
        for (g, v) in diff.iter().enumerate() {
            if let Some(&(h, _)) = v.iter().find(|&&(h, _)| degrees[h] != degrees[g] - 1) {
                return Err(Error::Shape(format!("differential of {} hits {} of the wrong degree", names[g], names[h])));
            }
        }
        let mut dmats = BTreeMap::new();
        for (&k, &dim) in &dims {
            let Some(&tdim) = dims.get(&(k - 1)) else { continue };
            let (o, to) = (offsets[&k], offsets[&(k - 1)]);
            let cols = (0..dim).map(|i| diff[o + i].iter().map(|&(h, c)| (h - to, c)).collect()).collect();
            dmats.insert(k, SparseMatrix::from_columns(ring, tdim, cols));
        }
        let complex = FinComplex::new(ring, dims, dmats)?
            .with_labels(offsets.iter().map(|(&k, &o)| (k, names[o..o + complex_dim(&degrees, k)].to_vec())).collect())?;
        Ok(Dga { ring, complex, names, degrees, offsets, diff, mult, unit })
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let u = self.unit;
        if self.degrees[u] != 0 || !self.diff[u].is_empty() {
            return Err(Error::CheckFailed(format!("unit {} must be a degree-0 cycle", self.names[u])));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = &self.mult[a][b];
                if let Some(&(h, _)) = ab.iter().find(|&&(h, _)| self.degrees[h] != self.degrees[a] + self.degrees[b]) {
                    return Err(Error::Shape(format!(
                        "product {}·{} hits {} of the wrong degree",
                        self.names[a], self.names[b], self.names[h]
                    )));
                }
            }
            if self.mult[u][a] != vec![(a, 1)] || self.mult[a][u] != vec![(a, 1)] {
                return Err(Error::CheckFailed(format!("{} is not a two-sided unit on {}", self.names[u], self.names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                // d(ab) = da·b + (-1)^|a| a·db
                let lhs = self.d_vec(&self.mult[a][b]);
                let mut rhs = self.mul_vec(&self.diff[a], &[(b, 1)]);
                let s = if self.degrees[a] % 2 == 0 { 1 } else { -1 };
                rhs = crate::matrix::add_scaled(self.ring, &rhs, s, &self.mul_vec(&[(a, 1)], &self.diff[b]));
                if lhs != rhs {
                    return Err(Error::CheckFailed(format!("Leibniz rule fails on {}·{}", self.names[a], self.names[b])));
                }
                for c in 0..n {
                    let l = self.mul_vec(&self.mult[a][b], &[(c, 1)]);
                    let r = self.mul_vec(&[(a, 1)], &self.mult[b][c]);
                    if l != r {
                        return Err(Error::CheckFailed(format!(
                            "associativity fails on {}, {}, {}",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground ring as an algebra.
    pub fn unit_algebra(ring: Ring) -> Self {
        Self::new(ring, vec!["1".into()], vec![0], vec![vec![]], vec![vec![vec![(0, 1)]]], 0).expect("unit algebra")
    }

    /// `k[x]/x²` with `x` in homological degree `degree`.
    pub fn dual_numbers(ring: Ring, degree: i64) -> Self {
        let mult = vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![(1, 1)], vec![]]];
        Self::new(ring, vec!["1".into(), "x".into()], vec![0, degree], vec![vec![], vec![]], mult, 0).expect("dual numbers")
    }

    /// Normalized cochains with the cup product. When there are several
    /// vertices, the dual of the first vertex is traded for the unit so that
    /// the unit is a basis element.
    pub fn from_cochains(c: &Cochains) -> Result<Self> {
        let ring = c.ring();
        let x = c.sset();
        let top = x.max_dim();
        // old global order: cochain degree top down to 0
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut start = vec![0usize; top + 1];
        for p in (0..=top).rev() {
            start[p] = names.len();
            for i in 0..x.count(p) {
                names.push(format!("{}*", x.label(p, i)));
                degrees.push(-(p as i64));
            }
        }
        let n = names.len();
        let to_global = |a: &Cochain| -> SparseVec { a.coeffs.iter().map(|&(i, v)| (start[a.degree] + i, v)).collect() };
        let basis = |g: usize| -> Cochain {
            let p = (-degrees[g]) as usize;
            Cochain::basis(p, g - start[p])
        };
        let nv = x.count(0);
        let v0 = start[0];
        // old coordinates -> new: y_{v0} = x_{v0}, y_v = x_v - x_{v0} for other vertices
        let to_new = |v: SparseVec| -> SparseVec {
            let x0 = v.iter().find(|&&(g, _)| g == v0).map(|&(_, c)| c).unwrap_or(0);
            let mut out = v;
            if x0 != 0 {
                for w in 1..nv {
                    out.push((v0 + w, -x0));
                }
            }
            normalize(ring, out)
        };
        let new_basis = |g: usize| -> Cochain {
            if g == v0 && nv > 1 {
                c.unit()
            } else {
                basis(g)
            }
        };
        let diff: Vec<SparseVec> = (0..n).map(|g| to_new(to_global(&c.coboundary(&new_basis(g))))).collect();
        let mult: Vec<Vec<SparseVec>> = crate::par::map_range(n, |a| {
            (0..n)
                .map(|b| {
                    let (ca, cb) = (new_basis(a), new_basis(b));
                    if ca.degree + cb.degree > top {
                        Vec::new()
                    } else {
                        to_new(to_global(&c.cup(&ca, &cb)))
                    }
                })
                .collect()
        });
        if nv > 1 {
            names[v0] = "1".into();
        }
        let dga = Self::new(ring, names, degrees, diff, mult, v0)?;
        Ok(dga)
    }

    /// JSON input, see [`DgaSpec`].
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: DgaSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("DGA JSON: {e}")))?;
        spec.build()
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        let red = |v: &SparseVec| normalize(ring, v.clone());
        Self::new(
            ring,
            self.names.clone(),
            self.degrees.clone(),
            self.diff.iter().map(red).collect(),
            self.mult.iter().map(|r| r.iter().map(red).collect()).collect(),
            self.unit,
        )
    }

    pub fn complex(&self) -> &FinComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self, g: usize) -> i64 {
        self.degrees[g]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Position of global index `g` inside its degree of the complex.
    pub fn local(&self, g: usize) -> (i64, usize) {
        let k = self.degrees[g];
        (k, g - self.offsets[&k])
    }

    pub fn global(&self, k: i64, i: usize) -> usize {
        self.offsets[&k] + i
    }

    pub fn d(&self, g: usize) -> &SparseVec {
        &self.diff[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> &SparseVec {
        &self.mult[a][b]
    }

    pub fn d_vec(&self, v: &[(usize, i64)]) -> SparseVec {
        let mut out = Vec::new();
        for &(g, c) in v {
            out.extend(self.diff[g].iter().map(|&(h, x)| (h, c * x)));
        }
        normalize(self.ring, out)
    }

    pub fn mul_vec(&self, a: &[(usize, i64)], b: &[(usize, i64)]) -> SparseVec {
        let mut out = Vec::new();
        for &(x, cx) in a {
            for &(y, cy) in b {
                out.extend(self.mult[x][y].iter().map(|&(h, c)| (h, c * cx * cy)));
            }
        }
        normalize(self.ring, out)
    }

    /// Homological degrees of the basis elements other than the unit.
    pub fn augmentation_degrees(&self) -> Option<(i64, i64)> {
        let it = (0..self.dim()).filter(|&g| g != self.unit).map(|g| self.degrees[g]);
        it.clone().min().zip(it.max())
    }

    /// Reorder the basis by `perm` (old index -> new index).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let re = |v: &SparseVec| -> SparseVec { v.iter().map(|&(g, c)| (perm[g], c)).collect() };
        Self::new(
            self.ring,
            (0..n).map(|g| self.names[inv[g]].clone()).collect(),
            (0..n).map(|g| self.degrees[inv[g]]).collect(),
            (0..n).map(|g| re(&self.diff[inv[g]])).collect(),
            (0..n).map(|a| (0..n).map(|b| re(&self.mult[inv[a]][inv[b]])).collect()).collect(),
            perm[self.unit],
        )
    }
}

fn complex_dim(degrees: &[i64], k: i64) -> usize {
    degrees.iter().filter(|&&d| d == k).count()
}

/// JSON description of a DGA:
///
/// ```json
/// {"ring": "q", "grading": "cohomological",
///  "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}],
///  "unit": "1",
///  "product": [{"left": "x", "right": "x", "result": {}}],
///  "differential": [{"source": "x", "result": {}}]}
/// ```
///
/// Products with the unit are implied; unlisted products and differentials
/// are zero. With cohomological grading the differential raises degree.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaSpec {
    #[serde(default)]
    pub ring: Option<String>,
    #[serde(default)]
    pub grading: Option<String>,
    pub basis: Vec<BasisSpec>,
    pub unit: String,
    #[serde(default)]
    pub product: Vec<ProductSpec>,
    #[serde(default)]
    pub differential: Vec<DiffSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffSpec {
    pub source: String,
    pub result: BTreeMap<String, i64>,
}

impl DgaSpec {
    pub fn build(&self) -> Result<Dga> {
        let ring: Ring = self.ring.as_deref().unwrap_or("q").parse()?;
        let sign = match self.grading.as_deref().unwrap_or("cohomological") {
            "cohomological" => -1,
            "homological" => 1,
            other => return Err(Error::Parse(format!("grading must be 'cohomological' or 'homological', got '{other}'"))),
        };
        let names: Vec<String> = self.basis.iter().map(|b| b.name.clone()).collect();
        let find = |s: &str| -> Result<usize> {
            names.iter().position(|n| n == s).ok_or_else(|| Error::Parse(format!("unknown basis element '{s}'")))
        };
        let vec_of = |m: &BTreeMap<String, i64>| -> Result<SparseVec> {
            m.iter().map(|(k, &c)| Ok((find(k)?, c))).collect()
        };
        let n = names.len();
        let unit = find(&self.unit)?;
        let mut mult = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            mult[unit][a] = vec![(a, 1)];
            mult[a][unit] = vec![(a, 1)];
        }
        for p in &self.product {
            mult[find(&p.left)?][find(&p.right)?] = vec_of(&p.result)?;
        }
        let mut diff = vec![Vec::new(); n];
        for d in &self.differential {
            diff[find(&d.source)?] = vec_of(&d.result)?;
        }
        let degrees = self.basis.iter().map(|b| sign * b.degree).collect();
        Dga::new(ring, names, degrees, diff, mult, unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SSet;

    #[test]
    fn sphere_cochains_are_dual_numbers() {
        let c = Cochains::new(&SSet::sphere(2).unwrap(), Ring::Rationals);
        let a = Dga::from_cochains(&c).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.augmentation_degrees(), Some((-2, -2)));
        let x = (0..2).find(|&g| g != a.unit()).unwrap();
        assert!(a.mul(x, x).is_empty());
    }

    #[test]
    fn interval_cochains_rebase_the_unit() {
        let c = Cochains::new(&SSet::delta(1), Ring::Integers);
        let a = Dga::from_cochains(&c).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.name(a.unit()), "1");
        assert!(a.d(a.unit()).is_empty());
    }

    #[test]
    fn json_errors() {
        assert!(Dga::from_json(r#"{"basis":[{"name":"1","degree":0}],"unit":"u"}"#).is_err());
        let bad = r#"{"basis":[{"name":"1","degree":0},{"name":"x","degree":1}],"unit":"1",
            "product":[{"left":"x","right":"x","result":{"x":1}}]}"#;
        assert!(Dga::from_json(bad).is_err());
        let ok = r#"{"ring":"q","basis":[{"name":"1","degree":0},{"name":"x","degree":2}],"unit":"1"}"#;
        assert_eq!(Dga::from_json(ok).unwrap().augmentation_degrees(), Some((-2, -2)));
    }
}
