//! The homotopy coherent transformation from the cyclic bar construction of
//! `C^*(X)` to the cochains of the powers of `X`, built level by level from
//! lifts in the surjection operad.

use std::collections::BTreeMap;

use super::pi::LoopSetting;
use crate::complex::GradedMap;
use crate::cyclic::CyclicMorphism;
use crate::error::{Error, Result};
use crate::hc::{Diagram, FinCat, Hc, HcLevel, Nerve, NerveSimplex};
use crate::matrix::{normalize, SparseMatrix};
use crate::par;
use crate::sign::pow_neg_one;
use crate::simplicial::{aw_external, tensor_power_index, Cochain, SimplicialMap};
use crate::surjection::{act, assoc, compose_all, differential, lift_cycle, unit_element, SurjElement};

/// The operation `T` with `act(S) ∘ φ_* = act(T)` on a cochain algebra:
/// plug the associative operations of the list sizes into `S`, then move
/// inputs back to their source positions.
pub fn phi_recipe(s: &SurjElement, phi: &CyclicMorphism) -> Result<SurjElement> {
    if s.arity() != phi.target() + 1 {
        return Err(Error::Arity { expected: phi.target() + 1, got: s.arity() });
    }
    let mus: Vec<SurjElement> = phi.sizes().iter().map(|&k| if k == 0 { unit_element() } else { assoc(k) }).collect();
    let composed = compose_all(s, &mus)?;
    let perm: Vec<u8> = phi.order().iter().map(|&k| (k + 1) as u8).collect();
    Ok(composed.relabel(&perm))
}

/// `A = act(S) ∘ π_φ: F(i) -> G(j)` for `φ: [i] -> [j]`, of degree `deg S`.
pub fn assemble(setting: &LoopSetting, s: &SurjElement, phi: &CyclicMorphism) -> Result<GradedMap> {
    let (i, j) = (phi.source(), phi.target());
    let src = setting.bar().level(i);
    let tgt = setting.space().level(j);
    let alg = setting.space().cochains(j);
    let m = s.degree() as i64;
    let basis = setting.bar().basis(i);
    let mut comps = BTreeMap::new();
    if s.is_zero() {
        return Ok(GradedMap::zero(src, tgt, m));
    }
    for &k in basis.dims().keys() {
        let rows = tgt.dim(k + m);
        if rows == 0 {
            continue;
        }
        let cols = par::map(basis.tuples(k), |t| -> Result<Vec<(usize, i64)>> {
            let inputs = setting.pi(phi, &setting.tuple_cochains(t));
            let refs: Vec<&Cochain> = inputs.iter().collect();
            Ok(act(s, alg, &refs)?.coeffs)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        comps.insert(k, SparseMatrix::from_columns(setting.ring(), rows, cols));
    }
    GradedMap::new(src, tgt, m, comps)
}

/// The cyclic bar construction as a diagram on the truncated cyclic category.
pub fn bar_diagram(setting: &LoopSetting, cat: &FinCat, morphisms: &[CyclicMorphism]) -> Result<Diagram> {
    let bar = setting.bar();
    let objects = (0..=bar.cap()).map(|n| bar.level(n).clone()).collect();
    let maps = par::map(morphisms, |m| bar.operator(m)).into_iter().collect::<Result<_>>()?;
    Diagram::new(cat, objects, maps)
}

/// `[n] -> C^*(X^{n+1})` as a diagram.
pub fn space_diagram(setting: &LoopSetting, cat: &FinCat, morphisms: &[CyclicMorphism]) -> Result<Diagram> {
    let space = setting.space();
    let objects = (0..=space.cap()).map(|n| space.level(n).clone()).collect();
    let maps = par::map(morphisms, |m| space.operator(m)).into_iter().collect::<Result<_>>()?;
    Diagram::new(cat, objects, maps)
}

#[derive(Clone, Debug)]
pub struct HcTransformation {
    pub cat: FinCat,
    pub morphisms: Vec<CyclicMorphism>,
    pub nerve: Nerve,
    pub f: Diagram,
    pub g: Diagram,
    /// `operations[m][k]`: the operation on the k-th m-simplex of the nerve
    pub operations: Vec<Vec<SurjElement>>,
    pub family: Vec<HcLevel>,
    /// number of nondegenerate simplices that needed a lift
    pub lifts: usize,
}

/// The operations `S` on nerve simplices up to level `levels`:
/// `S_{[i]} = ⟨1 … i+1⟩`, zero on degenerate simplices, and otherwise
/// `S = H((-1)^{m-1} R)` with `R = T(S_{d_0}, φ_1) + Σ_{j≥1} (-1)^j S_{d_j}`,
/// so that `(-1)^{m-1} ∂S = R`.
pub fn coherent_operations(cat: &FinCat, morphisms: &[CyclicMorphism], nerve: &Nerve, levels: usize) -> Result<(Vec<Vec<SurjElement>>, usize)> {
    let mut ops: Vec<Vec<SurjElement>> = vec![nerve.level(0).iter().map(|s| assoc(s.first() + 1)).collect()];
    let mut lifts = 0;
    for m in 1..=levels {
        let prev = &ops[m - 1];
        let at = |s: &NerveSimplex| &prev[nerve.index(s).expect("face within the nerve")];
        let row = par::map(nerve.level(m), |s| -> Result<(SurjElement, bool)> {
            let arity = s.first() + 1;
            if s.is_degenerate(cat) {
                return Ok((SurjElement::zero(arity, m), false));
            }
            let mut r = phi_recipe(at(&s.face(cat, 0)), &morphisms[s.arrows[0]])?;
            for j in 1..=m {
                r = r.add_scaled(pow_neg_one(j as i64), at(&s.face(cat, j)))?;
            }
            if !differential(&r).is_zero() {
                return Err(Error::NotACycle(format!("obstruction at {}", s.label(cat))));
            }
            let sign = pow_neg_one(m as i64 - 1);
            let lifted = lift_cycle(&r.scale(sign))?;
            if differential(&lifted).scale(sign) != r {
                return Err(Error::CheckFailed(format!("lift at {}", s.label(cat))));
            }
            Ok((lifted, true))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        lifts += row.iter().filter(|(_, l)| *l).count();
        ops.push(row.into_iter().map(|(s, _)| s).collect());
    }
    Ok((ops, lifts))
}

/// Build the levels `0..=levels` of the transformation.
pub fn build_transformation(setting: &LoopSetting, levels: usize) -> Result<HcTransformation> {
    let (cat, morphisms) = FinCat::cyclic(setting.cap());
    let nerve = Nerve::new(&cat, levels);
    let f = bar_diagram(setting, &cat, &morphisms)?;
    let g = space_diagram(setting, &cat, &morphisms)?;
    let (operations, lifts) = coherent_operations(&cat, &morphisms, &nerve, levels)?;
    let family = {
        let hc = Hc::new(&cat, &nerve, &f, &g);
        (0..=levels)
            .map(|m| {
                let ops = &operations[m];
                hc.from_fn(m, m as i64, |s| {
                    let k = nerve.index(s).expect("simplex of the nerve");
                    assemble(setting, &ops[k], &morphisms[s.composite(&cat)])
                })
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(HcTransformation { cat, morphisms, nerve, f, g, operations, lifts, family })
}

impl HcTransformation {
    pub fn hc(&self) -> Hc<'_> {
        Hc::new(&self.cat, &self.nerve, &self.f, &self.g)
    }

    /// `dA^0` and `Σ(-1)^i δ^i A^{n-1} - (-1)^{n-1} dA^n`, largest entry count.
    pub fn coherence_residuals(&self) -> Result<Vec<usize>> {
        self.hc().coherence_residuals(&self.family)
    }

    /// Per level `m ≥ 1`: the largest entry count of
    /// `δ^0 A - act(T(S_{d_0}, φ_1)) π`, `δ^m A - act(S_{d_m}) π` and
    /// `δ^j A - act(S_{d_j}) π` over nondegenerate simplices, the
    /// projections taken along the full composite.
    pub fn coboundary_factorizations(&self, setting: &LoopSetting) -> Result<Vec<usize>> {
        let hc = self.hc();
        let mut out = Vec::new();
        for m in 1..self.family.len() {
            let cofaces: Vec<HcLevel> = (0..=m).map(|j| hc.coface(j, &self.family[m - 1])).collect::<Result<_>>()?;
            let worst = par::map_range(self.nerve.level(m).len(), |k| -> Result<usize> {
                let s = &self.nerve.level(m)[k];
                if s.is_degenerate(&self.cat) {
                    return Ok(0);
                }
                let phi = &self.morphisms[s.composite(&self.cat)];
                let mut worst = 0;
                for (j, cof) in cofaces.iter().enumerate() {
                    let face = s.face(&self.cat, j);
                    let op = &self.operations[m - 1][self.nerve.index(&face).expect("face")];
                    let op = if j == 0 { phi_recipe(op, &self.morphisms[s.arrows[0]])? } else { op.clone() };
                    let expected = assemble(setting, &op, phi)?;
                    worst = worst.max(cof.maps[k].add_scaled(-1, &expected)?.nnz());
                }
                Ok(worst)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            out.push(worst.into_iter().max().unwrap_or(0));
        }
        Ok(out)
    }
}

/// Change of basis from the algebra tensors of `F(i)` to the nested tensor
/// basis of `C^*(X)^{⊗(i+1)}` used by the external Alexander–Whitney map.
pub fn to_nested_basis(setting: &LoopSetting, i: usize) -> Result<GradedMap> {
    let basis = setting.bar().basis(i);
    let layer = setting.cochains().complex().dims().clone();
    let dims = vec![layer; i + 1];
    let mut cols_by_degree: BTreeMap<i64, Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    let mut rows_by_degree: BTreeMap<i64, usize> = BTreeMap::new();
    for &k in basis.dims().keys() {
        let mut cols = Vec::new();
        for t in basis.tuples(k) {
            let mut acc: Vec<(Vec<(usize, usize)>, i64)> = vec![(Vec::new(), 1)];
            for c in setting.tuple_cochains(t) {
                let mut next = Vec::new();
                for (parts, x) in &acc {
                    for &(idx, v) in &c.coeffs {
                        let mut p = parts.clone();
                        p.push((c.degree, idx));
                        next.push((p, x * v));
                    }
                }
                acc = next;
            }
            let col: Vec<(usize, i64)> = acc
                .into_iter()
                .map(|(parts, x)| {
                    let (kk, idx) = tensor_power_index(&dims, &parts);
                    debug_assert_eq!(kk, k);
                    (idx, x)
                })
                .collect();
            cols.push(normalize(setting.ring(), col));
        }
        cols_by_degree.insert(k, cols);
    }
    let nested = crate::simplicial::nested_dims(&dims);
    for (&k, &d) in &nested {
        rows_by_degree.insert(k, d);
    }
    let comps = cols_by_degree
        .into_iter()
        .map(|(k, cols)| (k, SparseMatrix::from_columns(setting.ring(), rows_by_degree.get(&k).copied().unwrap_or(0), cols)))
        .collect();
    GradedMap::from_dims(setting.ring(), basis.dims(), nested, 0, comps)
}

/// Entry count of `A^0_{[i]} - AW ∘ P` for each object.
pub fn aw_residuals(setting: &LoopSetting, a0: &HcLevel, nerve: &Nerve) -> Result<Vec<usize>> {
    (0..=setting.cap())
        .map(|i| {
            let k = nerve.index(&NerveSimplex::object(i)).expect("object");
            let factors = vec![setting.cochains(); i + 1];
            let aw = aw_external(&factors, setting.space().power(i), setting.space().cochains(i))?;
            let via = to_nested_basis(setting, i)?.then(&aw)?;
            Ok(a0.maps[k].add_scaled(-1, &via)?.nnz())
        })
        .collect()
}

/// Naturality of the operations in the space along `f: X -> Y`: the number
/// of (simplex, basis tensor) pairs where
/// `act_X(S)(π f^* y) ≠ (f^{j+1})^* act_Y(S)(π y)`.
pub fn naturality_in_space(
    x: &LoopSetting,
    y: &LoopSetting,
    f: &SimplicialMap,
    cat: &FinCat,
    morphisms: &[CyclicMorphism],
    nerve: &Nerve,
    operations: &[Vec<SurjElement>],
) -> Result<usize> {
    let power_maps: Vec<SimplicialMap> =
        (0..=x.cap()).map(|j| x.space().power(j).power_map(f, y.space().power(j))).collect::<Result<_>>()?;
    let mut bad = 0;
    for (m, ops) in operations.iter().enumerate() {
        for (s, op) in nerve.level(m).iter().zip(ops) {
            if op.is_zero() {
                continue;
            }
            let phi = &morphisms[s.composite(cat)];
            let (i, j) = (phi.source(), phi.target());
            let basis = y.bar().basis(i);
            for &k in basis.dims().keys() {
                let fails = par::map(basis.tuples(k), |t| -> Result<bool> {
                    let ys = y.tuple_cochains(t);
                    let pulled: Vec<Cochain> = ys.iter().map(|c| y.cochains().pullback(f, c)).collect();
                    let lhs_in = x.pi(phi, &pulled);
                    let lhs = act(op, x.space().cochains(j), &lhs_in.iter().collect::<Vec<_>>())?;
                    let rhs_in = y.pi(phi, &ys);
                    let up = act(op, y.space().cochains(j), &rhs_in.iter().collect::<Vec<_>>())?;
                    let rhs = if up.degree > x.space().power(j).max_dim() {
                        Cochain::zero(up.degree)
                    } else {
                        y.space().cochains(j).pullback(&power_maps[j], &up)
                    };
                    Ok(normalize(x.ring(), lhs.coeffs) != normalize(x.ring(), rhs.coeffs))
                })
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
                bad += fails.into_iter().filter(|&b| b).count();
            }
        }
    }
    Ok(bad)
}
