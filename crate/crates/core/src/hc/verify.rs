//! Exhaustive checks of the hc machinery on the truncated cyclic category and
//! on a small two-object diagram.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::category::{FinCat, Nerve};
use super::diagram::{Diagram, Hc, HcLevel};
use super::resolution::{check_q_identities, QResolution};
use crate::complex::{FinComplex, GradedMap};
use crate::cyclic::{CyclicBar, Dga};
use crate::error::Result;
use crate::matrix::SparseMatrix;
use crate::ring::Ring;

/// Over `0 -> 1`: `F(0)` is `Z` in degrees 0, 1, 2 with `d_1 = 1`, `F(1)` is
/// `Z` in degrees 0 and 2, and the arrow is the identity in degree 2.
pub fn two_object_diagram() -> (FinCat, Diagram) {
    let cat = FinCat::arrow_category();
    let r = Ring::Integers;
    let one = || SparseMatrix::from_dense(r, &[vec![1]]);
    let c0 = FinComplex::new(r, BTreeMap::from([(0, 1), (1, 1), (2, 1)]), BTreeMap::from([(1, one())])).expect("d² = 0");
    let c1 = FinComplex::new(r, BTreeMap::from([(0, 1), (2, 1)]), BTreeMap::new()).expect("no differential");
    let a = GradedMap::new(&c0, &c1, 0, BTreeMap::from([(2, one())])).expect("shapes agree");
    let maps = vec![GradedMap::identity(&c0), GradedMap::identity(&c1), a];
    let d = Diagram::new(&cat, vec![c0, c1], maps).expect("matches the arrow category");
    (cat, d)
}

/// Deterministic filler entries in `-2..=2`.
pub fn filler_map(src: &FinComplex, tgt: &FinComplex, degree: i64, seed: usize) -> GradedMap {
    let ring = src.ring();
    let comps = src
        .dims()
        .iter()
        .filter(|&(&k, _)| tgt.dim(k + degree) > 0)
        .map(|(&k, &cols)| {
            let rows = tgt.dim(k + degree);
            let s = seed + k.unsigned_abs() as usize;
            let trip = (0..rows).flat_map(move |r| (0..cols).map(move |c| (r, c, ((r * 7 + c * 13 + s * 31) % 5) as i64 - 2)));
            (k, SparseMatrix::from_triplets(ring, rows, cols, trip))
        })
        .collect();
    GradedMap::new(src, tgt, degree, comps).expect("shapes agree")
}

#[derive(Clone, Debug)]
pub struct HcVerifyReport {
    pub object_cap: usize,
    pub nerve_cap: usize,
    pub nerve_identities: bool,
    pub functor: bool,
    pub cosimplicial: Vec<bool>,
    pub q_identities: bool,
    pub alpha_round_trip: Vec<bool>,
    pub alpha_intertwines: Vec<bool>,
    /// per object of the two-object diagram
    pub augmentation_chain_map: Vec<bool>,
    pub section: Vec<bool>,
    pub resolution_homology: Vec<bool>,
    pub resolution_window: Vec<Option<(i64, i64)>>,
}

impl HcVerifyReport {
    pub fn passed(&self) -> bool {
        let all = |v: &[bool]| v.iter().all(|&b| b);
        self.nerve_identities
            && self.functor
            && self.q_identities
            && all(&self.cosimplicial)
            && all(&self.alpha_round_trip)
            && all(&self.alpha_intertwines)
            && all(&self.augmentation_chain_map)
            && all(&self.section)
            && all(&self.resolution_homology)
    }

    /// Every resolution window reaches the checked degrees `0..=3`.
    pub fn stabilized(&self) -> bool {
        self.resolution_window.iter().all(|w| w.is_some_and(|(lo, hi)| lo <= 0 && hi >= 3))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "object_cap": self.object_cap,
            "nerve_cap": self.nerve_cap,
            "nerve_identities": self.nerve_identities,
            "functor": self.functor,
            "cosimplicial_identities": self.cosimplicial,
            "q_identities": self.q_identities,
            "alpha_round_trip": self.alpha_round_trip,
            "alpha_intertwines": self.alpha_intertwines,
            "two_object_diagram": {
                "augmentation_chain_map": self.augmentation_chain_map,
                "section": self.section,
                "homology_matches": self.resolution_homology,
                "window": self.resolution_window.iter().map(|w| w.map(|(a, b)| json!([a, b])).unwrap_or(Value::Null)).collect::<Vec<_>>(),
            },
            "stabilized": self.stabilized(),
            "passed": self.passed(),
        })
    }
}

fn level_is_zero(a: &Result<HcLevel>) -> bool {
    a.as_ref().is_ok_and(|l| l.is_zero())
}

/// The cyclic bar construction of `k[x]/x²`, `|x| = 1`, as a diagram over the
/// truncated cyclic category, with filler cochains at every level of `hc`.
pub fn hc_verify(object_cap: usize, nerve_cap: usize) -> Result<HcVerifyReport> {
    let (cat, morphisms) = FinCat::cyclic(object_cap);
    let nerve = Nerve::new(&cat, nerve_cap);
    let nerve_identities = nerve.check_identities(&cat).is_ok();
    let bar = CyclicBar::new(&Dga::dual_numbers(Ring::Integers, -1), object_cap)?;
    let objects = (0..=object_cap).map(|n| bar.level(n).clone()).collect();
    let maps = morphisms.iter().map(|m| bar.operator(m)).collect::<Result<_>>()?;
    let f = Diagram::new(&cat, objects, maps)?;
    let functor = f.check_functor(&cat).is_ok();
    let hc = Hc::new(&cat, &nerve, &f, &f);
    let fill = |n: usize, degree: i64, seed: usize| {
        hc.from_fn(n, degree, |s| Ok(filler_map(f.object(s.first()), f.object(s.last(&cat)), degree, seed + s.first() * 3 + s.last(&cat))))
    };

    let mut cosimplicial = Vec::new();
    let mut alpha_round_trip = Vec::new();
    let mut alpha_intertwines = Vec::new();
    for n in 0..=nerve_cap {
        if n < nerve_cap {
            cosimplicial.push(hc.check_cosimplicial_identities(&fill(n, n as i64, 0)?).is_ok());
        }
        let a = fill(n, 1, 5)?;
        let eta = hc.alpha_inv(&a)?;
        let back = hc.alpha(&eta)?;
        alpha_round_trip.push(hc.check_naturality(&eta).is_ok() && back.add_scaled(-1, &a)?.is_zero() && hc.alpha_inv(&back)?.is_equal(&eta)?);
        let mut ok = true;
        if n < nerve_cap {
            for j in 0..=n + 1 {
                ok &= level_is_zero(&hc.alpha(&hc.nat_coface(j, &eta)?).and_then(|l| l.add_scaled(-1, &hc.coface(j, &a)?)));
            }
        }
        for j in 0..n {
            ok &= level_is_zero(&hc.alpha(&hc.nat_codegeneracy(j, &eta)?).and_then(|l| l.add_scaled(-1, &hc.codegeneracy(j, &a)?)));
        }
        alpha_intertwines.push(ok);
    }
    let q_identities = check_q_identities(&cat, nerve_cap.max(1)).is_ok();

    let (arrow, diagram) = two_object_diagram();
    let mut augmentation_chain_map = Vec::new();
    let mut section = Vec::new();
    let mut resolution_homology = Vec::new();
    let mut resolution_window = Vec::new();
    for i in 0..2 {
        let q = QResolution::new(&arrow, &diagram, i, 5)?;
        let eps = q.augmentation(&arrow, &diagram)?;
        augmentation_chain_map.push(eps.is_chain_map(&q.tot.complex, diagram.object(i))?);
        let sec = q.section(&arrow, &diagram)?;
        section.push(sec.then(&eps)?.add_scaled(-1, &GradedMap::identity(diagram.object(i)))?.is_zero());
        resolution_homology.push(
            q.augmentation_is_quasi_iso(&arrow, &diagram)?
                && q.tot.complex.homology(0, 3)? == diagram.object(i).homology(0, 3)?,
        );
        resolution_window.push(q.tot.window);
    }

    Ok(HcVerifyReport {
        object_cap,
        nerve_cap,
        nerve_identities,
        functor,
        cosimplicial,
        q_identities,
        alpha_round_trip,
        alpha_intertwines,
        augmentation_chain_map,
        section,
        resolution_homology,
        resolution_window,
    })
}
