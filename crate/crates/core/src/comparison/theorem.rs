//! End-to-end check of the comparison: the coherent transformation, its
//! level-0 component, and Hochschild homology against the loop side.

use serde_json::{json, Value};

use super::pi::LoopSetting;
use std::collections::BTreeMap;

use super::transform::{aw_residuals, build_transformation, HcTransformation};
use crate::complex::is_quasi_iso_on;
use crate::hc::{NatLevel, QResolution};
use crate::complex::HomologyTable;
use crate::cyclic::{hochschild, LoopComplex};
use crate::error::Result;
use crate::hc::check_q_identities;
use crate::ring::Ring;
use crate::simplicial::SSet;

#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub space: SSet,
    pub ring: Ring,
    /// objects `[0..=object_cap]` of the cyclic category
    pub object_cap: usize,
    /// levels of the coherent transformation
    pub nerve_cap: usize,
    /// cochain degree cap on the powers used by the transformation
    pub degree_cap: Option<usize>,
    /// levels of the loop-side complex
    pub loop_cap: usize,
    /// levels of the Hochschild complex
    pub hochschild_cap: usize,
    pub ceiling: usize,
    /// also materialize `QF(i)` and check both legs of the zigzag
    pub legs: bool,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub space: String,
    pub ring: Ring,
    pub q_identities: bool,
    pub functors: bool,
    pub lifts: usize,
    pub coherence: Vec<usize>,
    pub factorizations: Vec<usize>,
    pub aw: Vec<usize>,
    pub natural: bool,
    pub quasi_iso: Vec<bool>,
    /// per object: (augmentation, transformation leg) are quasi-isomorphisms
    pub legs: Option<Vec<(bool, bool)>>,
    pub hochschild: HomologyTable,
    pub hochschild_window: Option<(i64, i64)>,
    pub hochschild_stabilized: bool,
    pub loop_homology: HomologyTable,
    pub loop_window: Option<(i64, i64)>,
    pub loop_connected: bool,
    /// cohomological degrees compared, `None` when either side is unstabilized
    pub compared: Option<(i64, i64)>,
    pub agree: bool,
}

impl TheoremReport {
    pub fn stabilized(&self) -> bool {
        self.compared.is_some()
    }

    pub fn passed(&self) -> bool {
        self.q_identities
            && self.functors
            && self.coherence.iter().all(|&r| r == 0)
            && self.factorizations.iter().all(|&r| r == 0)
            && self.aw.iter().all(|&r| r == 0)
            && self.natural
            && self.quasi_iso.iter().all(|&q| q)
            && self.legs.as_ref().is_none_or(|l| l.iter().all(|&(a, b)| a && b))
            && self.loop_connected
            && self.agree
    }

    pub fn to_json(&self) -> Value {
        let window = |w: Option<(i64, i64)>| w.map(|(a, b)| json!([a, b])).unwrap_or(Value::Null);
        json!({
            "space": self.space,
            "ring": self.ring.tag(),
            "q_identities": self.q_identities,
            "functors": self.functors,
            "lifts": self.lifts,
            "coherence_residuals": self.coherence,
            "factorization_residuals": self.factorizations,
            "aw_residuals": self.aw,
            "natural": self.natural,
            "quasi_iso": self.quasi_iso,
            "legs": self.legs.as_ref().map(|l| l.iter().map(|&(a, b)| json!({"augmentation": a, "transformation": b})).collect::<Vec<_>>()),
            "hochschild": {
                "cohomology": self.hochschild.to_json(),
                "window": window(self.hochschild_window),
                "stabilized": self.hochschild_stabilized,
            },
            "loop": {
                "cohomology": self.loop_homology.to_json(),
                "window": window(self.loop_window),
                "levels_connected": self.loop_connected,
            },
            "compared": window(self.compared),
            "agree": self.agree,
            "passed": self.passed(),
        })
    }
}

/// Cohomological `[lo, hi]` for a homological window.
fn flip(w: (i64, i64)) -> (i64, i64) {
    (-w.1, -w.0)
}

/// Ranks and torsion agree degree by degree on `[lo, hi]`.
pub fn tables_agree(a: &HomologyTable, b: &HomologyTable, lo: i64, hi: i64) -> bool {
    let row = |t: &HomologyTable, d: i64| {
        t.rows.iter().find(|r| r.degree == d).map(|r| (r.betti, r.torsion.clone())).unwrap_or((0, Vec::new()))
    };
    (lo..=hi).all(|d| row(a, d) == row(b, d))
}

/// Both legs `F(i) <- Tot QF(i) -> G(i)` of the zigzag, per object: the
/// augmentation, and the map assembled from `α^{-1}` of the coherent
/// family, each tested as a quasi-isomorphism on the window of `Tot QF(i)`.
pub fn zigzag_legs(h: &HcTransformation, cap: usize) -> Result<Vec<(bool, bool)>> {
    let hc = h.hc();
    (0..h.cat.object_count())
        .map(|i| {
            let q = QResolution::new(&h.cat, &h.f, i, cap)?;
            let family: Vec<NatLevel> = (0..=cap)
                .map(|m| -> Result<NatLevel> {
                    let mut comps = BTreeMap::new();
                    for c in &q.chains[m] {
                        let mut s = c.clone();
                        let last = s.arrows.pop().expect("nonempty chain");
                        let k = h.nerve.index(&s).expect("within the nerve cap");
                        comps.insert(c.clone(), h.family[m].maps[k].then(h.g.map(last))?);
                    }
                    Ok(NatLevel { level: m, degree: m as i64, comps })
                })
                .collect::<Result<_>>()?;
            let target = hc.g.object(i);
            let leg = q.leg(target, &family)?;
            let Some((lo, hi)) = q.tot.window else { return Ok((false, false)) };
            let second = leg.is_chain_map(&q.tot.complex, target)? && is_quasi_iso_on(&leg, &q.tot.complex, target, lo, hi)?;
            Ok((q.augmentation_is_quasi_iso(&h.cat, &h.f)?, second))
        })
        .collect()
}

pub fn main_theorem_check(case: &TheoremCase) -> Result<TheoremReport> {
    let setting = LoopSetting::new(&case.space, case.ring, case.object_cap, case.degree_cap, case.ceiling)?;
    let h = build_transformation(&setting, case.nerve_cap)?;

    // (a) the resolution identities and the two diagrams
    let q_identities = check_q_identities(&h.cat, case.nerve_cap.max(1)).is_ok();
    let functors = h.f.check_functor(&h.cat).is_ok() && h.g.check_functor(&h.cat).is_ok();

    // (b) coherence, and the transported family is natural
    let coherence = h.coherence_residuals()?;
    let factorizations = h.coboundary_factorizations(&setting)?;
    let hc = h.hc();
    let mut natural = true;
    for m in 0..h.family.len().min(2) {
        let eta = hc.alpha_inv(&h.family[m])?;
        natural &= hc.check_naturality(&eta).is_ok();
        natural &= hc.alpha(&eta)?.add_scaled(-1, &h.family[m])?.is_zero();
    }

    // (c) the level-0 component is Alexander–Whitney, a quasi-isomorphism
    let aw = aw_residuals(&setting, &h.family[0], &h.nerve)?;
    let windows: Vec<(i64, i64)> = (0..=case.object_cap)
        .map(|i| {
            let p = setting.space().power(i);
            let top = p.max_dim() as i64;
            // a truncated power is only honest below its cap
            if p.is_truncated() {
                (-(top - 1), 0)
            } else {
                (-top, 0)
            }
        })
        .collect();
    let quasi_iso = hc.quasi_iso_verdicts(&h.family[0], &windows)?;

    let legs = if case.legs { Some(zigzag_legs(&h, case.nerve_cap)?) } else { None };

    // (d) Hochschild homology of the cochains against the loop side
    let hh = hochschild(setting.dga(), case.hochschild_cap)?;
    let loop_space = crate::cyclic::CocyclicSpace::new(&case.space, case.ring, case.loop_cap, None, case.ceiling)?;
    let lc = LoopComplex::new(&loop_space)?;
    let loop_homology = lc.homology()?.negated();
    let loop_connected = lc.levels_are_connected()?;
    let compared = match (hh.window, lc.tot.window) {
        (Some(a), Some(b)) if hh.stabilized => {
            let (a, b) = (flip(a), flip(b));
            let (lo, hi) = (a.0.max(b.0), a.1.min(b.1));
            (lo <= hi).then_some((lo, hi))
        }
        _ => None,
    };
    let hochschild = hh.cohomological();
    let agree = compared.is_some_and(|(lo, hi)| tables_agree(&hochschild, &loop_homology, lo, hi));

    Ok(TheoremReport {
        space: case.space.name().to_string(),
        ring: case.ring,
        q_identities,
        functors,
        lifts: h.lifts,
        coherence,
        factorizations,
        aw,
        natural,
        quasi_iso,
        legs,
        hochschild,
        hochschild_window: hh.window.map(flip),
        hochschild_stabilized: hh.stabilized,
        loop_homology,
        loop_window: lc.tot.window.map(flip),
        loop_connected,
        compared,
        agree,
    })
}
