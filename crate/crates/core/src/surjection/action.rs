//! Interval-cut action of surjection sequences on normalized cochains.

use super::ops::cut_sign;
use super::seq::{SurjElement, SurjSeq};
use crate::error::{Error, Result};
use crate::matrix::normalize;
use crate::par;
use crate::sign::pow_neg_one;
use crate::simplicial::{Cochain, Cochains};

/// Sum over interval cuts of `[0, m]` of `ε · Π eval(k, vertices_k)`, without
/// the global sign. `degrees[k]` is the degree of input `k` (0-based) and
/// `eval` returns the value of input `k` on the face spanned by `vertices`.
pub fn cut_sum(u: &SurjSeq, degrees: &[usize], m: usize, eval: &mut dyn FnMut(usize, &[usize]) -> i64) -> i64 {
    let n = u.arity();
    let e = u.entries();
    let l = e.len();
    let mut remaining = vec![0i64; n];
    let mut occ = vec![0i64; n];
    for &x in e {
        occ[x as usize - 1] += 1;
    }
    let mut total = 0i64;
    for k in 0..n {
        remaining[k] = degrees[k] as i64 - (occ[k] - 1);
        if remaining[k] < 0 {
            return 0;
        }
        total += remaining[k];
    }
    if total != m as i64 {
        return 0;
    }
    let caes = u.caesuras();

    struct State<'a> {
        e: &'a [u8],
        caes: &'a [bool],
        remaining: Vec<i64>,
        raws: Vec<usize>,
        last_end: Vec<Option<usize>>,
        verts: Vec<Vec<usize>>,
        acc: i64,
    }
    fn rec(st: &mut State, r: usize, pos: usize, eval: &mut dyn FnMut(usize, &[usize]) -> i64) {
        if r == st.e.len() {
            let mut prod = cut_sign(st.e, st.caes, &st.raws);
            for k in 0..st.verts.len() {
                let v = eval(k, &st.verts[k]);
                if v == 0 {
                    return;
                }
                prod *= v;
            }
            st.acc += prod;
            return;
        }
        let k = st.e[r] as usize - 1;
        if let Some(end) = st.last_end[k] {
            if pos <= end {
                return;
            }
        }
        let budget = st.remaining[k] as usize;
        let lo = if st.caes[r] { 0 } else { budget };
        for raw in lo..=budget {
            st.remaining[k] -= raw as i64;
            st.raws[r] = raw;
            let saved_end = st.last_end[k];
            st.last_end[k] = Some(pos + raw);
            let before = st.verts[k].len();
            st.verts[k].extend(pos..=pos + raw);
            rec(st, r + 1, pos + raw, eval);
            st.verts[k].truncate(before);
            st.last_end[k] = saved_end;
            st.remaining[k] += raw as i64;
        }
    }
    let mut st = State {
        e,
        caes: &caes,
        remaining,
        raws: vec![0; l],
        last_end: vec![None; n],
        verts: vec![Vec::new(); n],
        acc: 0,
    };
    rec(&mut st, 0, 0, eval);
    st.acc
}

/// `(-1)^(d·Σp + Σ_{i<j} p_i p_j)`.
pub fn global_sign(degree: usize, degrees: &[usize]) -> i64 {
    let total: usize = degrees.iter().sum();
    let mut parity = degree * total;
    let mut run = 0usize;
    for &p in degrees {
        parity += run * p;
        run += p;
    }
    pow_neg_one(parity as i64)
}

/// Output degree of `x` on inputs of the given degrees, `None` if negative.
pub fn output_degree(x: &SurjElement, degrees: &[usize]) -> Option<usize> {
    degrees.iter().sum::<usize>().checked_sub(x.degree())
}

/// Evaluate `x(a_1, ..., a_n)` in one cochain algebra. Returns the zero
/// cochain of degree 0 when the output degree would be negative.
pub fn act(x: &SurjElement, alg: &Cochains, inputs: &[&Cochain]) -> Result<Cochain> {
    if inputs.len() != x.arity() {
        return Err(Error::Arity { expected: x.arity(), got: inputs.len() });
    }
    let degrees: Vec<usize> = inputs.iter().map(|a| a.degree).collect();
    let Some(m) = output_degree(x, &degrees) else {
        return Ok(Cochain::zero(0));
    };
    let sset = alg.sset();
    if m > sset.max_dim() || x.is_zero() || inputs.iter().any(|a| a.is_zero()) {
        return Ok(Cochain::zero(m));
    }
    let g = global_sign(x.degree(), &degrees);
    let terms: Vec<(&SurjSeq, i64)> = x.terms().iter().map(|(u, &c)| (u, c)).collect();
    let values = par::map_range(sset.count(m), |idx| {
        let mut eval = |k: usize, verts: &[usize]| {
            let f = sset.apply_nd(m, idx, verts);
            if f.is_degenerate() {
                0
            } else {
                inputs[k].value(f.index as usize)
            }
        };
        let mut v = 0i64;
        for &(u, c) in &terms {
            let s = cut_sum(u, &degrees, m, &mut eval);
            v += c * s;
        }
        alg.ring().reduce(g * v)
    });
    let coeffs = values.into_iter().enumerate().filter(|(_, v)| *v != 0).collect();
    Ok(Cochain { degree: m, coeffs: normalize(alg.ring(), coeffs) })
}
