//! Differential, partial composition and the contracting homotopy.

use std::collections::BTreeMap;

use super::seq::{SurjElement, SurjSeq};
use crate::complex::FinComplex;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::ring::Ring;
use super::action::global_sign;
use crate::sign::pow_neg_one;

fn sgn(n: usize) -> i64 {
    pow_neg_one(n as i64)
}

/// Deletion differential. Removing a caesura at position r costs
/// `(-1)^(caesuras before r)`; removing a final occurrence costs
/// `(-1)^(c+1)` where `c` counts caesuras before the previous occurrence of
/// the same value.
pub fn seq_differential(u: &SurjSeq) -> SurjElement {
    let n = u.arity();
    let mut out = SurjElement::zero(n, u.degree().saturating_sub(1));
    if u.degree() == 0 {
        return out;
    }
    let e = u.entries();
    let caes = u.caesuras();
    let mut before = vec![0usize; e.len() + 1];
    for r in 0..e.len() {
        before[r + 1] = before[r] + caes[r] as usize;
    }
    let mut buf = Vec::with_capacity(e.len() - 1);
    for r in 0..e.len() {
        let sign = if caes[r] {
            sgn(before[r])
        } else {
            match (0..r).rev().find(|&q| e[q] == e[r]) {
                Some(prev) => sgn(before[prev] + 1),
                None => continue, // sole occurrence: result not surjective
            }
        };
        buf.clear();
        buf.extend_from_slice(&e[..r]);
        buf.extend_from_slice(&e[r + 1..]);
        if buf.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.add_term(SurjSeq::new_unchecked(n, buf.clone()), sign);
    }
    out
}

pub fn differential(x: &SurjElement) -> SurjElement {
    let mut out = SurjElement::zero(x.arity(), x.degree().saturating_sub(1));
    for (u, &c) in x.terms() {
        for (v, &d) in seq_differential(u).terms() {
            out.add_term(v.clone(), c * d);
        }
    }
    out
}

/// Sign of a sequence given per-entry raw lengths: Koszul sign of stably
/// sorting the entries by value (an entry has degree raw + [caesura]) times
/// `(-1)^(sum over caesuras r of raw_0 + ... + raw_r)`.
pub(crate) fn cut_sign(entries: &[u8], caes: &[bool], raws: &[usize]) -> i64 {
    let mut parity = 0usize;
    let mut prefix = 0usize;
    for r in 0..entries.len() {
        prefix += raws[r];
        if caes[r] {
            parity += prefix;
        }
        let dr = raws[r] + caes[r] as usize;
        if dr.is_multiple_of(2) {
            continue;
        }
        for q in r + 1..entries.len() {
            if entries[q] < entries[r] && (raws[q] + caes[q] as usize) % 2 == 1 {
                parity += 1;
            }
        }
    }
    sgn(parity)
}

fn seq_compose(u: &SurjSeq, slot: usize, v: &SurjSeq, out: &mut SurjElement) {
    let k = slot as u8;
    let m = v.arity();
    let ue = u.entries();
    let occ: Vec<usize> = (0..ue.len()).filter(|&q| ue[q] == k).collect();
    let s = occ.len();
    let shift = |x: u8| if x > k { x + m as u8 - 1 } else { x };

    if m == 0 {
        // unit: the slot must occur once and disappear cleanly
        if s != 1 {
            return;
        }
        let w: Vec<u8> = ue.iter().filter(|&&x| x != k).map(|&x| if x > k { x - 1 } else { x }).collect();
        if SurjSeq::is_valid(u.arity() - 1, &w) {
            out.add_term(SurjSeq::new_unchecked(u.arity() - 1, w), 1);
        }
        return;
    }

    let ve = v.entries();
    let l = ve.len();
    let ucaes = u.caesuras();
    let vcaes = v.caesuras();
    let (du, dv) = (u.degree(), v.degree());

    // joints 0 <= j_1 <= ... <= j_{s-1} <= l-1 (0-based shared positions)
    let mut joints = vec![0usize; s.saturating_sub(1)];
    fn rec(t: usize, lo: usize, l: usize, joints: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if t == joints.len() {
            f(joints);
            return;
        }
        for j in lo..l {
            joints[t] = j;
            rec(t + 1, j, l, joints, f);
        }
    }
    let mut emit = |js: &[usize]| {
        let mut w = Vec::with_capacity(ue.len() + l - 1);
        let mut raws_u = vec![1usize; ue.len()];
        let mut piece = 0usize;
        for (q, &x) in ue.iter().enumerate() {
            if x == k {
                let a = if piece == 0 { 0 } else { js[piece - 1] };
                let b = if piece + 1 == s { l - 1 } else { js[piece] };
                w.extend(ve[a..=b].iter().map(|&y| y + k - 1));
                raws_u[q] = b - a + 1;
                piece += 1;
            } else {
                w.push(shift(x));
            }
        }
        if w.windows(2).any(|p| p[0] == p[1]) {
            return;
        }
        let ws = SurjSeq::new_unchecked(u.arity() + m - 1, w);
        out.add_term(ws.clone(), composition_sign(&ws, u, &ucaes, &raws_u, k, v, &vcaes, js, du, dv));
    };
    rec(0, 0, l, &mut joints, &mut emit);
}

/// Sign of one term of `u ∘_k v`, read off from the action: cut a simplex
/// for `w` with every interval of length 1, see the same cut as a `u`-cut
/// whose k-intervals swallow whole pieces followed by a `v`-cut of the k-face,
/// and compare the two action signs.
#[allow(clippy::too_many_arguments)]
fn composition_sign(
    w: &SurjSeq,
    u: &SurjSeq,
    ucaes: &[bool],
    raws_u: &[usize],
    k: u8,
    v: &SurjSeq,
    vcaes: &[bool],
    js: &[usize],
    du: usize,
    dv: usize,
) -> i64 {
    let m = v.arity();
    let pw: Vec<usize> = (1..=w.arity() as u8).map(|j| 2 * w.occurrences(j) - 1).collect();
    let ones = vec![1usize; w.len()];
    let eps_w = cut_sign(w.entries(), &w.caesuras(), &ones) * global_sign(du + dv, &pw);

    let block = &pw[k as usize - 1..k as usize - 1 + m];
    let pk = block.iter().sum::<usize>() - dv;
    let mut pu: Vec<usize> = pw[..k as usize - 1].to_vec();
    pu.push(pk);
    pu.extend_from_slice(&pw[k as usize - 1 + m..]);
    let eps_u = cut_sign(u.entries(), ucaes, raws_u) * global_sign(du, &pu);

    let mut raws_v = vec![1usize; v.len()];
    for &j in js {
        raws_v[j] += 2;
    }
    let eps_v = cut_sign(v.entries(), vcaes, &raws_v) * global_sign(dv, block);

    let pre: usize = pw[..k as usize - 1].iter().sum();
    sgn(dv * pre) * eps_u * eps_v * eps_w
}

/// Partial composition `u ∘_slot v` (slots are 1-based).
pub fn operad_compose(u: &SurjElement, slot: usize, v: &SurjElement) -> Result<SurjElement> {
    if slot == 0 || slot > u.arity() {
        return Err(Error::Slot { slot, arity: u.arity() });
    }
    let mut out = SurjElement::zero(u.arity() + v.arity() - 1, u.degree() + v.degree());
    for (a, &x) in u.terms() {
        for (b, &y) in v.terms() {
            let mut part = SurjElement::zero(out.arity(), out.degree());
            seq_compose(a, slot, b, &mut part);
            for (w, &c) in part.terms() {
                out.add_term(w.clone(), c * x * y);
            }
        }
    }
    Ok(out)
}

/// `u ∘ (v_1, ..., v_n)`, composing from the last slot so earlier slot
/// numbers stay put; `v_i` passing the later `v_j` costs a Koszul sign.
pub fn compose_all(u: &SurjElement, vs: &[SurjElement]) -> Result<SurjElement> {
    if vs.len() != u.arity() {
        return Err(Error::Arity { expected: u.arity(), got: vs.len() });
    }
    let mut acc = u.clone();
    let mut later = 0usize;
    for (i, v) in vs.iter().enumerate().rev() {
        acc = operad_compose(&acc, i + 1, v)?;
        if v.degree() * later % 2 == 1 {
            acc = acc.scale(-1);
        }
        later += v.degree();
    }
    Ok(acc)
}

/// The unit `⟨⟩` of arity 0.
pub fn unit_element() -> SurjElement {
    SurjElement::basis(SurjSeq::new_unchecked(0, vec![]))
}

/// The associative image `⟨1 2 ... n⟩`.
pub fn assoc(n: usize) -> SurjElement {
    SurjElement::basis(SurjSeq::identity(n))
}

/// Which retraction to use in the contraction identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Retraction {
    /// Nonzero exactly when the value 1 occurs once.
    Corrected,
    /// Nonzero only when the sequence starts with its only 1.
    Uncorrected,
}

/// `s(u) = ⟨1 u'⟩` with values of `u` shifted up, or 0 when `u` starts with 1.
pub fn contraction_s(u: &SurjSeq) -> SurjElement {
    let n = u.arity();
    let mut out = SurjElement::zero(n, u.degree() + 1);
    if n == 0 || u.entries()[0] == 1 {
        return out;
    }
    let mut w = Vec::with_capacity(u.len() + 1);
    w.push(1);
    w.extend_from_slice(u.entries());
    out.add_term(SurjSeq::new_unchecked(n, w), 1);
    out
}

/// `ι(v) = ⟨1 (v+1)⟩`, arity n-1 into arity n.
pub fn contraction_iota(v: &SurjSeq) -> SurjSeq {
    let mut w = Vec::with_capacity(v.len() + 1);
    w.push(1);
    w.extend(v.entries().iter().map(|&x| x + 1));
    SurjSeq::new_unchecked(v.arity() + 1, w)
}

/// `r(u) = -(u without its 1, values lowered)` when the rule applies.
pub fn contraction_r(u: &SurjSeq, kind: Retraction) -> SurjElement {
    let n = u.arity();
    let mut out = SurjElement::zero(n.saturating_sub(1), u.degree());
    if n == 0 || u.occurrences(1) != 1 {
        return out;
    }
    if kind == Retraction::Uncorrected && u.entries()[0] != 1 {
        return out;
    }
    let w: Vec<u8> = u.entries().iter().filter(|&&x| x != 1).map(|&x| x - 1).collect();
    if SurjSeq::is_valid(n - 1, &w) {
        out.add_term(SurjSeq::new_unchecked(n - 1, w), -1);
    }
    out
}

fn map_linear(x: &SurjElement, arity: usize, degree: usize, f: impl Fn(&SurjSeq) -> SurjElement) -> SurjElement {
    let mut out = SurjElement::zero(arity, degree);
    for (u, &c) in x.terms() {
        for (v, &d) in f(u).terms() {
            out.add_term(v.clone(), c * d);
        }
    }
    out
}

/// `∂s(u) + s∂(u) - u - ιr(u)`: zero exactly when the identity holds at u.
pub fn contraction_residual(u: &SurjSeq, kind: Retraction) -> SurjElement {
    let n = u.arity();
    let d = u.degree();
    let su = contraction_s(u);
    let lhs1 = differential(&su);
    let du = seq_differential(u);
    let lhs2 = map_linear(&du, n, d, contraction_s);
    let r = contraction_r(u, kind);
    let ir = map_linear(&r, n, d, |v| SurjElement::basis(contraction_iota(v)));
    let mut res = SurjElement::zero(n, d);
    for part in [&lhs1, &lhs2] {
        for (v, &c) in part.terms() {
            res.add_term(v.clone(), c);
        }
    }
    res.add_term(u.clone(), -1);
    for (v, &c) in ir.terms() {
        res.add_term(v.clone(), -c);
    }
    res
}

/// Basepoint `⟨1 2 … n⟩` of each arity, the fixed point of the contraction.
pub fn basepoint(n: usize) -> SurjSeq {
    SurjSeq::identity(n)
}

/// Augmentation: 1 on permutations, 0 elsewhere.
pub fn augmentation(x: &SurjElement) -> i64 {
    if x.degree() != 0 {
        return 0;
    }
    x.terms().values().sum()
}

/// Full contracting homotopy `H = s + ι H q` with `q = -r`, satisfying
/// `∂H + H∂ = id - I∘ε` where I is the basepoint and ε the augmentation.
pub fn homotopy(x: &SurjElement) -> SurjElement {
    let n = x.arity();
    let mut out = SurjElement::zero(n, x.degree() + 1);
    if n <= 1 {
        return out;
    }
    for (u, &c) in x.terms() {
        for (v, &d) in contraction_s(u).terms() {
            out.add_term(v.clone(), c * d);
        }
        let q = contraction_r(u, Retraction::Corrected).scale(-1);
        if q.is_zero() {
            continue;
        }
        for (v, &d) in homotopy(&q).terms() {
            out.add_term(contraction_iota(v), c * d);
        }
    }
    out
}

/// Deterministic bounding chain: returns S with ∂S = z.
pub fn lift_cycle(z: &SurjElement) -> Result<SurjElement> {
    let dz = differential(z);
    if let Some((u, c)) = dz.terms().iter().next() {
        return Err(Error::NotACycle(format!("∂z has coefficient {c} on {u}")));
    }
    if z.degree() == 0 && augmentation(z) != 0 {
        return Err(Error::NotABoundary(format!("degree-0 cycle with augmentation {}", augmentation(z))));
    }
    let s = homotopy(z);
    debug_assert_eq!(differential(&s), *z);
    Ok(s)
}

/// Chain complex of arity `n` in degrees `0..=max_degree` over a ring.
pub fn arity_complex(n: usize, max_degree: usize, ring: Ring) -> FinComplex {
    let bases: Vec<Vec<SurjSeq>> = (0..=max_degree).map(|d| SurjSeq::enumerate(n, d)).collect();
    let mut dims = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for (d, b) in bases.iter().enumerate() {
        dims.insert(d as i64, b.len());
    }
    for d in 1..=max_degree {
        let index: std::collections::HashMap<&SurjSeq, usize> =
            bases[d - 1].iter().enumerate().map(|(i, u)| (u, i)).collect();
        let cols: Vec<Vec<(usize, i64)>> = bases[d]
            .iter()
            .map(|u| seq_differential(u).terms().iter().map(|(v, &c)| (index[v], c)).collect())
            .collect();
        let m = SparseMatrix::from_columns(ring, bases[d - 1].len(), cols);
        diff.insert(d as i64, m);
    }
    FinComplex::new_unchecked(ring, dims, diff).expect("shapes are consistent")
}
