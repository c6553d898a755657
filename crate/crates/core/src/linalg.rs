//! Exact rank and Smith normal form.
//!
//! Ranks over a prime field use sparse column reduction mod p. Ranks over the
//! rationals use fraction-free column reduction in `i128` with content
//! removal; an entry that outgrows `i128` is reported, never wrapped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::ring::Ring;

/// Rank of `m` over the fraction field of `ring` (the rationals for `Z`).
pub fn rank(ring: Ring, m: &SparseMatrix) -> Result<usize> {
    match ring {
        Ring::Prime(p) => Ok(rank_mod_p(p as i64, m)),
        Ring::Integers | Ring::Rationals => rank_rational(m),
    }
}

fn inv_mod(a: i64, p: i64) -> i64 {
    // Fermat; p is a small prime
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(p: i64, m: &SparseMatrix) -> usize {
    // pivot columns keyed by their last (largest) row, leading coefficient 1
    let mut pivots: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    let mut rank = 0;
    for col in m.columns() {
        let mut v: Vec<(usize, i64)> = col.iter().map(|&(r, x)| (r, x.rem_euclid(p))).filter(|e| e.1 != 0).collect();
        while let Some(&(lead, c)) = v.last() {
            match pivots.get(&lead) {
                Some(pv) => v = axpy_mod(p, &v, (p - c) % p, pv),
                None => {
                    let inv = inv_mod(c, p);
                    let pv: Vec<(usize, i64)> = v.iter().map(|&(r, x)| (r, x * inv % p)).collect();
                    pivots.insert(lead, pv);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a + c*b` mod p for sorted sparse vectors.
fn axpy_mod(p: i64, a: &[(usize, i64)], c: i64, b: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let x = c * b[j].1 % p;
            if x != 0 {
                out.push((b[j].0, x));
            }
            j += 1;
        } else {
            let x = (a[i].1 + c * b[j].1) % p;
            if x != 0 {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rank_rational(m: &SparseMatrix) -> Result<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, i128)>> = HashMap::new();
    let mut rank = 0;
    for col in m.columns() {
        let mut v: Vec<(usize, i128)> = col.iter().map(|&(r, x)| (r, x as i128)).collect();
        while let Some(&(lead, c)) = v.last() {
            match pivots.get(&lead) {
                Some(pv) => {
                    let pc = pv.last().unwrap().1;
                    let g = gcd(pc, c);
                    v = combine_rational(&v, pc / g, &pv[..], -(c / g))?;
                }
                None => {
                    pivots.insert(lead, v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(rank)
}

/// `(x*a + y*b) / content`.
fn combine_rational(a: &[(usize, i128)], x: i128, b: &[(usize, i128)], y: i128) -> Result<Vec<(usize, i128)>> {
    let ovf = || Error::Overflow("rational elimination");
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (r, val) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, a[i - 1].1.checked_mul(x).ok_or_else(ovf)?)
        } else if i >= a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, b[j - 1].1.checked_mul(y).ok_or_else(ovf)?)
        } else {
            let s = a[i].1.checked_mul(x).ok_or_else(ovf)?.checked_add(b[j].1.checked_mul(y).ok_or_else(ovf)?).ok_or_else(ovf)?;
            i += 1;
            j += 1;
            (a[i - 1].0, s)
        };
        if val != 0 {
            out.push((r, val));
        }
    }
    let g = out.iter().fold(0i128, |g, e| gcd(g, e.1));
    if g > 1 {
        for e in &mut out {
            e.1 /= g;
        }
    }
    Ok(out)
}

/// Largest matrix side accepted by the dense integer Smith form.
pub const SNF_DENSE_LIMIT: usize = 4000;

/// Nonzero invariant factors of an integer matrix (positive, each dividing
/// the next). Their count is the rank.
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<i64>> {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return Ok(Vec::new());
    }
    let (units, rest) = unit_pivots(m)?;
    let mut out = vec![1; units];
    out.extend(dense_invariant_factors(&rest)?);
    Ok(out)
}

/// Sparse elimination on `±1` pivots. Each pivot contributes an invariant
/// factor 1 and leaves the Schur complement, which keeps the remaining
/// factors; the complement is returned with empty rows and columns dropped.
fn unit_pivots(m: &SparseMatrix) -> Result<(usize, SparseMatrix)> {
    use std::collections::{BTreeMap, BTreeSet};
    let ovf = || Error::Overflow("unit pivot elimination");
    let mut cols: Vec<BTreeMap<usize, i128>> = m.columns().iter().map(|c| c.iter().map(|&(r, x)| (r, x as i128)).collect()).collect();
    let mut in_row: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows()];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            in_row[r].insert(c);
        }
    }
    let mut units = 0;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..cols.len() {
            // the unit entry whose row is sparsest
            let Some((r, u)) = cols[c].iter().filter(|e| e.1.abs() == 1).min_by_key(|e| in_row[*e.0].len()).map(|(&r, &u)| (r, u)) else {
                continue;
            };
            let pivot = std::mem::take(&mut cols[c]);
            for &rr in pivot.keys() {
                in_row[rr].remove(&c);
            }
            for c2 in std::mem::take(&mut in_row[r]) {
                let f = cols[c2][&r] * u;
                for (&rr, &v) in &pivot {
                    let e = cols[c2].entry(rr).or_insert(0);
                    *e = e.checked_sub(f.checked_mul(v).ok_or_else(ovf)?).ok_or_else(ovf)?;
                    if *e == 0 {
                        cols[c2].remove(&rr);
                        in_row[rr].remove(&c2);
                    } else {
                        in_row[rr].insert(c2);
                    }
                }
            }
            units += 1;
            progress = true;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| !in_row[r].is_empty()).collect();
    let row_pos: HashMap<usize, usize> = live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let live: Vec<&BTreeMap<usize, i128>> = cols.iter().filter(|c| !c.is_empty()).collect();
    let mut trip = Vec::new();
    for (j, col) in live.iter().enumerate() {
        for (r, &x) in col.iter() {
            trip.push((row_pos[r], j, i64::try_from(x).map_err(|_| ovf())?));
        }
    }
    Ok((units, SparseMatrix::from_triplets(Ring::Integers, live_rows.len(), live.len(), trip)))
}

fn dense_invariant_factors(m: &SparseMatrix) -> Result<Vec<i64>> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 || m.is_zero() {
        return Ok(Vec::new());
    }
    if rows.max(cols) > SNF_DENSE_LIMIT {
        return Err(Error::Resource(format!(
            "integer Smith form of a {rows}x{cols} matrix after unit pivots exceeds the dense limit {SNF_DENSE_LIMIT}; use a field"
        )));
    }
    let mut a: Vec<Vec<i128>> = vec![vec![0; cols]; rows];
    for (c, col) in m.columns().iter().enumerate() {
        for &(r, x) in col {
            a[r][c] = x as i128;
        }
    }
    let ovf = || Error::Overflow("Smith normal form");
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in (t + 1)..rows {
                if a[r][t] != 0 {
                    let q = a[r][t] / p;
                    for c in t..cols {
                        let v = a[t][c].checked_mul(q).ok_or_else(ovf)?;
                        a[r][c] = a[r][c].checked_sub(v).ok_or_else(ovf)?;
                    }
                    dirty |= a[r][t] != 0;
                }
            }
            for c in (t + 1)..cols {
                if a[t][c] != 0 {
                    let q = a[t][c] / p;
                    for row in a.iter_mut().skip(t) {
                        let v = row[t].checked_mul(q).ok_or_else(ovf)?;
                        row[c] = row[c].checked_sub(v).ok_or_else(ovf)?;
                    }
                    dirty |= a[t][c] != 0;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remainder in row/column t onto the diagonal
            let mut best = (t, t);
            for r in t..rows {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // enforce divisibility d_i | d_{i+1}
    let n = diag.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = gcd(diag[i], diag[j]);
            let l = (diag[i] / g).checked_mul(diag[j]).ok_or_else(ovf)?;
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.into_iter().map(|d| i64::try_from(d).map_err(|_| ovf())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_dense(Ring::Integers, d)
    }

    #[test]
    fn ranks_over_fields() {
        let a = m(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(rank(Ring::Rationals, &a).unwrap(), 3);
        assert_eq!(rank(Ring::Prime(2), &a).unwrap(), 2);
        assert_eq!(rank(Ring::Prime(3), &a).unwrap(), 3);
    }

    #[test]
    fn smith_form() {
        assert_eq!(invariant_factors(&m(&[vec![2]])).unwrap(), vec![2]);
        assert_eq!(invariant_factors(&m(&[vec![2, 0], vec![0, 3]])).unwrap(), vec![1, 6]);
        assert_eq!(invariant_factors(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])).unwrap(), vec![2, 6, 12]);
    }

    proptest::proptest! {
        #[test]
        fn unit_pivots_keep_the_smith_form(r in 1usize..6, c in 1usize..6, e in proptest::collection::vec(-3i64..4, 36)) {
            let a = SparseMatrix::from_triplets(Ring::Integers, r, c, (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| (i, j, e[i * 6 + j])));
            proptest::prop_assert_eq!(invariant_factors(&a).unwrap(), dense_invariant_factors(&a).unwrap());
        }
    }
}
