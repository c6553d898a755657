//! Simplices in Eilenberg–Zilber form: a nondegenerate simplex together
//! with a monotone surjection onto its dimension.

use std::fmt;

/// An `n`-simplex `η^* x` where `x` is nondegenerate of dimension `m` and
/// `η: [n] -> [m]` is a monotone surjection, encoded by its jump set: bit
/// `q` (1 ≤ q ≤ n) is set when `η(q) = η(q-1) + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: u8,
    pub base_dim: u8,
    pub index: u32,
    pub jumps: u64,
}

pub const MAX_DIM: usize = 62;

#[inline]
pub fn full_jumps(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        ((1u64 << n) - 1) << 1
    }
}

impl Simplex {
    pub fn nondegenerate(dim: usize, index: usize) -> Self {
        Simplex { dim: dim as u8, base_dim: dim as u8, index: index as u32, jumps: full_jumps(dim) }
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim != self.base_dim
    }

    /// `η(v)` for a vertex `v` of `[dim]`.
    #[inline]
    pub fn eta(&self, v: usize) -> usize {
        (self.jumps & full_jumps(v)).count_ones() as usize
    }

    /// Degeneracy word `s_{i_1} … s_{i_k}` with `i_1 > … > i_k`.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let mut w: Vec<usize> = (1..=self.dim as usize).filter(|q| self.jumps & (1 << q) == 0).map(|q| q - 1).collect();
        w.reverse();
        w
    }

    /// Jump set for a degeneracy word applied to an `m`-simplex.
    pub fn jumps_from_word(m: usize, word: &[usize]) -> Option<u64> {
        let n = m + word.len();
        if word.windows(2).any(|w| w[0] <= w[1]) || word.iter().any(|&i| i >= n) {
            return None;
        }
        let mut j = full_jumps(n);
        for &i in word {
            j &= !(1 << (i + 1));
        }
        Some(j)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.degeneracy_word() {
            write!(f, "s{i}")?;
        }
        write!(f, "[{}:{}]", self.base_dim, self.index)
    }
}

/// Factor a monotone map given by its vertex list `θ: [k] -> [m]` as
/// `μ ∘ ε`: returns the jump set of the surjection `ε` and the image
/// vertices (the injection `μ`).
pub fn epi_mono(theta: &[usize]) -> (u64, Vec<usize>) {
    let mut jumps = 0u64;
    let mut image = Vec::with_capacity(theta.len());
    for (q, &v) in theta.iter().enumerate() {
        if q == 0 || v != theta[q - 1] {
            if q > 0 {
                jumps |= 1 << q;
            }
            image.push(v);
        }
    }
    (jumps, image)
}

/// Remove from `jumps` (a subset of `outer`) the non-jump positions of
/// `outer`, producing a jump set over `[popcount(outer)]`.
pub fn compress_jumps(jumps: u64, outer: u64) -> u64 {
    let mut out = 0u64;
    let mut pos = 1;
    let mut bits = outer;
    while bits != 0 {
        let q = bits.trailing_zeros();
        if jumps & (1 << q) != 0 {
            out |= 1 << pos;
        }
        pos += 1;
        bits &= bits - 1;
    }
    out
}

/// Enumerate all subsets of `{1..n}` of size `m` as bitmasks, in increasing
/// numeric order.
pub fn jump_sets(n: usize, m: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for q in start..=n {
            if n - q + 1 < left {
                break;
            }
            rec(q + 1, n, left - 1, acc | (1 << q), out);
        }
    }
    rec(1, n, m, 0, &mut out);
    out.sort_unstable();
    out
}
