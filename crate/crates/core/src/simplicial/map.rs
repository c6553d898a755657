use super::simplex::Simplex;
use super::sset::SSet;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::ring::Ring;

/// A simplicial map, given by the image of every nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(images: Vec<Vec<Simplex>>) -> Self {
        SimplicialMap { images }
    }

    pub fn image(&self, n: usize, idx: usize) -> Simplex {
        self.images[n][idx]
    }

    /// Compatibility with all face maps.
    pub fn check(&self, source: &SSet, target: &SSet) -> Result<()> {
        for n in 1..self.images.len() {
            for idx in 0..source.count(n) {
                let f = self.images[n][idx];
                for i in 0..=n {
                    let a = target.face_of(f, i);
                    let s = source.face(n, idx, i);
                    let b0 = self.images[s.base_dim as usize][s.index as usize];
                    let theta: Vec<usize> = (0..n).map(|v| s.eta(v)).collect();
                    let b = target.apply(b0, &theta);
                    if a != b {
                        return Err(Error::SimplicialIdentity(format!(
                            "map does not commute with d{i} on {}",
                            source.label(n, idx)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `f^*` on normalized p-cochains (rows: source simplices,
    /// columns: target simplices).
    pub fn pullback(&self, ring: Ring, p: usize, target_count: usize) -> SparseMatrix {
        let rows = self.images.get(p).map_or(0, |l| l.len());
        let trip = (0..rows).filter_map(|i| {
            let s = self.images[p][i];
            (!s.is_degenerate()).then_some((i, s.index as usize, 1))
        });
        SparseMatrix::from_triplets(ring, rows, target_count, trip)
    }
}
