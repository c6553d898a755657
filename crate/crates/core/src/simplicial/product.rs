//! Cartesian products. A nondegenerate n-simplex of `X_1 × … × X_k` is a
//! tuple of n-simplices whose jump sets together cover `{1..n}`.

use std::collections::HashMap;

use super::map::SimplicialMap;
use super::simplex::{compress_jumps, full_jumps, jump_sets, Simplex};
use super::sset::SSet;
use crate::error::{Error, Result};

/// Default cap on the number of nondegenerate simplices of a product.
pub const DEFAULT_CEILING: usize = 200_000;

#[derive(Clone, Debug)]
pub struct Product {
    sset: SSet,
    factors: Vec<SSet>,
    /// `coords[n][idx]`: the tuple of factor n-simplices
    coords: Vec<Vec<Vec<Simplex>>>,
    index: Vec<HashMap<Vec<Simplex>, u32>>,
    max_dim: usize,
    truncated: bool,
}

/// All n-simplices (degenerate included) of `x`, in a fixed order.
pub fn all_simplices(x: &SSet, n: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    for m in 0..=n.min(x.max_dim()) {
        let js = jump_sets(n, m);
        for idx in 0..x.count(m) {
            for &j in &js {
                out.push(Simplex { dim: n as u8, base_dim: m as u8, index: idx as u32, jumps: j });
            }
        }
    }
    out
}

impl Product {
    /// Product of the factors, keeping simplices of dimension ≤ `dim_cap`
    /// (all of them when `None`).
    pub fn new(factors: &[&SSet], dim_cap: Option<usize>, ceiling: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape("product of no factors".into()));
        }
        let full_top: usize = factors.iter().map(|x| x.max_dim()).sum();
        let top = dim_cap.map_or(full_top, |c| c.min(full_top));
        let truncated = top < full_top;
        let mut coords: Vec<Vec<Vec<Simplex>>> = Vec::new();
        let mut index: Vec<HashMap<Vec<Simplex>, u32>> = Vec::new();
        let mut total = 0usize;
        for n in 0..=top {
            let lists: Vec<Vec<Simplex>> = factors.iter().map(|x| all_simplices(x, n)).collect();
            let full = full_jumps(n);
            let mut found = Vec::new();
            let mut cur = Vec::with_capacity(factors.len());
            enumerate(&lists, 0, 0, full, &mut cur, &mut found);
            total += found.len();
            if total > ceiling {
                return Err(Error::Resource(format!(
                    "product has more than {ceiling} nondegenerate simplices (reached dimension {n})"
                )));
            }
            let idx = found.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
            coords.push(found);
            index.push(idx);
        }
        let mut p = Product {
            sset: SSet::point(),
            factors: factors.iter().map(|&x| x.clone()).collect(),
            coords,
            index,
            max_dim: top,
            truncated,
        };
        let mut faces = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let tab: Vec<Vec<Simplex>> = p.coords[n]
                .iter()
                .map(|t| {
                    if n == 0 {
                        return vec![];
                    }
                    (0..=n)
                        .map(|i| {
                            let theta: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
                            p.apply_tuple(t, &theta).expect("faces stay below the cap")
                        })
                        .collect()
                })
                .collect();
            faces.push(tab);
        }
        let labels = if total <= 20_000 {
            p.coords
                .iter()
                .map(|l| l.iter().map(|t| p.tuple_label(t)).collect())
                .collect()
        } else {
            Vec::new()
        };
        let name = factors.iter().map(|x| x.name().to_string()).collect::<Vec<_>>().join(" × ");
        p.sset = SSet::from_faces_unchecked(name, labels, faces);
        Ok(p)
    }

    /// `X^k`.
    pub fn power(x: &SSet, k: usize, dim_cap: Option<usize>, ceiling: usize) -> Result<Self> {
        let fs: Vec<&SSet> = std::iter::repeat_n(x, k).collect();
        Self::new(&fs, dim_cap, ceiling)
    }

    pub fn sset(&self) -> &SSet {
        &self.sset
    }

    pub fn factors(&self) -> &[SSet] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Whether simplices above [`Product::max_dim`] were dropped.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn coords(&self, n: usize, idx: usize) -> &[Simplex] {
        &self.coords[n][idx]
    }

    fn tuple_label(&self, t: &[Simplex]) -> String {
        let parts: Vec<String> = t
            .iter()
            .zip(&self.factors)
            .map(|(s, x)| {
                let w: String = s.degeneracy_word().iter().map(|i| format!("s{i}")).collect();
                format!("{w}{}", x.label(s.base_dim as usize, s.index as usize))
            })
            .collect();
        format!("({})", parts.join(","))
    }

    /// Apply `θ` coordinatewise and bring the result to normal form.
    fn apply_tuple(&self, t: &[Simplex], theta: &[usize]) -> Option<Simplex> {
        let moved: Vec<Simplex> = t.iter().zip(&self.factors).map(|(&s, x)| x.apply(s, theta)).collect();
        self.normalize(&moved)
    }

    /// Normal form of a tuple of same-dimension factor simplices; `None`
    /// when its nondegenerate part lies above the dimension cap.
    pub fn normalize(&self, t: &[Simplex]) -> Option<Simplex> {
        let n = t[0].dim as usize;
        let joint = t.iter().fold(0u64, |a, s| a | s.jumps);
        let r = joint.count_ones() as usize;
        if r > self.max_dim {
            return None;
        }
        let key: Vec<Simplex> = t
            .iter()
            .map(|s| Simplex { dim: r as u8, base_dim: s.base_dim, index: s.index, jumps: compress_jumps(s.jumps, joint) })
            .collect();
        let &idx = self.index[r].get(&key)?;
        Some(Simplex { dim: n as u8, base_dim: r as u8, index: idx, jumps: joint })
    }

    /// Projection onto factor `j`.
    pub fn projection(&self, j: usize) -> SimplicialMap {
        let images = self.coords.iter().map(|l| l.iter().map(|t| t[j]).collect()).collect();
        SimplicialMap::new(images)
    }

    /// The map `self -> target` whose l-th coordinate is coordinate `g[l]`
    /// of the source tuple (`target` must be a product of the same factors
    /// in the order `g` dictates).
    pub fn coordinate_map(&self, target: &Product, g: &[usize]) -> Result<SimplicialMap> {
        if g.len() != target.arity() || g.iter().any(|&k| k >= self.arity()) {
            return Err(Error::Shape("coordinate map does not fit the products".into()));
        }
        let mut images = Vec::with_capacity(self.coords.len());
        for (n, l) in self.coords.iter().enumerate() {
            let mut row = Vec::with_capacity(l.len());
            for t in l {
                let pick: Vec<Simplex> = g.iter().map(|&k| t[k]).collect();
                let s = target.normalize(&pick).ok_or_else(|| {
                    Error::OutOfTruncation(format!("image of a {n}-simplex lies above the target cap {}", target.max_dim))
                })?;
                row.push(s);
            }
            images.push(row);
        }
        Ok(SimplicialMap::new(images))
    }

    /// `f × … × f: self -> target`, for `f` between the (common) factors.
    pub fn power_map(&self, f: &SimplicialMap, target: &Product) -> Result<SimplicialMap> {
        if self.arity() != target.arity() {
            return Err(Error::Arity { expected: target.arity(), got: self.arity() });
        }
        let y = &target.factors[0];
        let mut images = Vec::with_capacity(self.coords.len());
        for (n, l) in self.coords.iter().enumerate() {
            let mut row = Vec::with_capacity(l.len());
            for t in l {
                let pick: Vec<Simplex> = t
                    .iter()
                    .map(|c| {
                        let base = f.image(c.base_dim as usize, c.index as usize);
                        let theta: Vec<usize> = (0..=c.dim as usize).map(|v| c.eta(v)).collect();
                        y.apply(base, &theta)
                    })
                    .collect();
                let s = target
                    .normalize(&pick)
                    .ok_or_else(|| Error::OutOfTruncation(format!("image of a {n}-simplex lies above the target cap")))?;
                row.push(s);
            }
            images.push(row);
        }
        Ok(SimplicialMap::new(images))
    }

    /// Insert a tuple lookup: index of a nondegenerate tuple.
    pub fn lookup(&self, t: &[Simplex]) -> Option<usize> {
        let n = t.first()?.dim as usize;
        self.index.get(n)?.get(t).map(|&i| i as usize)
    }
}

fn enumerate(lists: &[Vec<Simplex>], k: usize, acc: u64, full: u64, cur: &mut Vec<Simplex>, out: &mut Vec<Vec<Simplex>>) {
    if k == lists.len() {
        if acc == full {
            out.push(cur.clone());
        }
        return;
    }
    for &s in &lists[k] {
        cur.push(s);
        enumerate(lists, k + 1, acc | s.jumps, full, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_has_two_triangles() {
        let d1 = SSet::delta(1);
        let p = Product::new(&[&d1, &d1], None, DEFAULT_CEILING).unwrap();
        assert_eq!(p.sset().counts(), vec![4, 5, 2]);
        p.sset().validate().unwrap();
    }

    #[test]
    fn product_with_point() {
        let s2 = SSet::sphere(2).unwrap();
        let pt = SSet::point();
        let p = Product::new(&[&s2, &pt], None, DEFAULT_CEILING).unwrap();
        assert_eq!(p.sset().counts(), s2.counts());
    }

    #[test]
    fn sphere_squared_is_valid() {
        let s2 = SSet::sphere(2).unwrap();
        let p = Product::power(&s2, 2, None, DEFAULT_CEILING).unwrap();
        p.sset().validate().unwrap();
        // vertices, no edges; 2 + (4 choose 2) nondegenerate top cells
        assert_eq!(p.sset().count(0), 1);
        assert_eq!(p.sset().count(1), 0);
        assert_eq!(p.sset().count(4), 6);
    }

    #[test]
    fn ceiling_is_enforced() {
        let s2 = SSet::sphere(2).unwrap();
        assert!(matches!(Product::power(&s2, 3, None, 10), Err(Error::Resource(_))));
    }
}
