//! Brute-force Hochschild homology of a small graded algebra over Q: the
//! normalized complex written out densely, ranks by exact elimination.

use std::collections::BTreeMap;

/// A graded algebra with basis `0..dim`, element 0 the unit, cohomological
/// degrees `deg`, and `mul[a][b]` a list of `(basis, coeff)`.
pub struct Algebra {
    pub deg: Vec<i64>,
    pub mul: Vec<Vec<Vec<(usize, i64)>>>,
}

impl Algebra {
    /// `Q[x]/x^2` with `|x| = e`.
    pub fn dual_numbers(e: i64) -> Self {
        let mul = vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![(1, 1)], vec![]]];
        Algebra { deg: vec![0, e], mul }
    }

    pub fn unit() -> Self {
        Algebra { deg: vec![0], mul: vec![vec![vec![(0, 1)]]] }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

#[derive(Clone, Copy, PartialEq)]
struct Frac(i128, i128);

impl Frac {
    fn new(n: i128, d: i128) -> Self {
        let g = gcd(n, d).max(1) * d.signum();
        Frac(n / g, d / g)
    }
    fn sub_mul(self, a: Frac, b: Frac) -> Frac {
        Frac::new(self.0 * a.1 * b.1 - a.0 * b.0 * self.1, self.1 * a.1 * b.1)
    }
    fn div(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1, self.1 * o.0)
    }
}

fn rank(rows: usize, cols: usize, entries: &BTreeMap<(usize, usize), i64>) -> usize {
    let mut m = vec![vec![Frac(0, 1); cols]; rows];
    for (&(r, c), &v) in entries {
        m[r][c] = Frac::new(v as i128, 1);
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c].0 != 0) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c].0 != 0 {
                let f = m[r][c].div(m[rank][c]);
                for k in 0..cols {
                    let pivot = m[rank][k];
                    m[r][k] = m[r][k].sub_mul(f, pivot);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Tensors `a_0 ⊗ a_1 ⊗ … ⊗ a_n` with `a_1..a_n` non-units.
fn level(alg: &Algebra, n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..alg.deg.len()).map(|a| vec![a]).collect();
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (1..alg.deg.len()).map(move |a| [t.clone(), vec![a]].concat())).collect();
    }
    out
}

fn degree(alg: &Algebra, t: &[usize]) -> i64 {
    t.iter().map(|&a| alg.deg[a]).sum::<i64>() - (t.len() as i64 - 1)
}

/// `b(a_0 ⊗ … ⊗ a_n) = Σ_{i<n} (-1)^i … a_i a_{i+1} … + (-1)^{n + |a_n|(|a_0|+…+|a_{n-1}|)} a_n a_0 ⊗ …`.
fn boundary(alg: &Algebra, t: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let n = t.len() - 1;
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for i in 0..n {
        for &(c, v) in &alg.mul[t[i]][t[i + 1]] {
            let mut s = t[..i].to_vec();
            s.push(c);
            s.extend_from_slice(&t[i + 2..]);
            out.push((s, if i % 2 == 0 { v } else { -v }));
        }
    }
    let before: i64 = t[..n].iter().map(|&a| alg.deg[a]).sum();
    let e = n as i64 + alg.deg[t[n]] * before;
    for &(c, v) in &alg.mul[t[n]][t[0]] {
        let mut s = vec![c];
        s.extend_from_slice(&t[1..n]);
        out.push((s, if e % 2 == 0 { v } else { -v }));
    }
    // the normalized quotient drops tensors with a unit past position 0
    out.retain(|(s, _)| s[1..].iter().all(|&a| a != 0));
    out
}

/// Ranks of HH^d for cohomological `d` in `0..=top`, from levels `0..=cap`.
pub fn hochschild_ranks(alg: &Algebra, cap: usize, top: i64) -> Vec<usize> {
    let levels: Vec<Vec<Vec<usize>>> = (0..=cap).map(|n| level(alg, n)).collect();
    let mut by_degree: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for l in &levels {
        for t in l {
            by_degree.entry(degree(alg, t)).or_default().push(t.clone());
        }
    }
    let index = |d: i64| -> BTreeMap<Vec<usize>, usize> {
        by_degree.get(&d).map(|v| v.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()).unwrap_or_default()
    };
    // b raises the cohomological degree by one
    let rank_from = |d: i64| -> usize {
        let (src, tgt) = (index(d), index(d + 1));
        let mut entries = BTreeMap::new();
        for (t, &c) in &src {
            for (s, v) in boundary(alg, t) {
                *entries.entry((tgt[&s], c)).or_insert(0) += v;
            }
        }
        rank(tgt.len(), src.len(), &entries)
    };
    (0..=top).map(|d| index(d).len() - rank_from(d) - rank_from(d - 1)).collect()
}
