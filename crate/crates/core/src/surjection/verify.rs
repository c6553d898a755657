//! Exhaustive checks over a box of surjection sequences.

use serde_json::{json, Value};

use super::ops::{arity_complex, contraction_residual, differential, Retraction};
use super::seq::{SurjElement, SurjSeq};
use crate::par;
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct OperadReport {
    pub max_arity: usize,
    pub max_degree: usize,
    pub checked: usize,
    pub d_squared_failures: Vec<SurjSeq>,
    pub corrected_failures: Vec<SurjSeq>,
    pub uncorrected_failures: Vec<SurjSeq>,
    /// per arity `n <= min(max_arity, 3)`: Betti numbers of `𝒳(n)` over Z in
    /// degrees `0..=3`
    pub arity_homology: Vec<Vec<usize>>,
}

impl OperadReport {
    pub fn passed(&self) -> bool {
        self.d_squared_failures.is_empty()
            && self.corrected_failures.is_empty()
            && self.arity_homology.iter().all(|b| b.iter().enumerate().all(|(d, &x)| x == usize::from(d == 0)))
    }

    /// The canonical counterexample for the uncorrected retraction, when it
    /// lies in the box and fails there.
    pub fn witness(&self) -> Option<&SurjSeq> {
        self.uncorrected_failures.iter().find(|u| u.entries() == [3, 1, 2, 3])
    }

    pub fn to_json(&self) -> Value {
        let names = |v: &[SurjSeq]| v.iter().map(|u| u.to_string()).collect::<Vec<_>>();
        json!({
            "max_arity": self.max_arity,
            "max_degree": self.max_degree,
            "sequences_checked": self.checked,
            "d_squared_failures": names(&self.d_squared_failures),
            "corrected_failures": names(&self.corrected_failures),
            "uncorrected_failure_count": self.uncorrected_failures.len(),
            "uncorrected_examples": names(&self.uncorrected_failures[..self.uncorrected_failures.len().min(20)]),
            "witness": self.witness().map(|u| u.to_string()),
            "arity_homology": self.arity_homology,
            "passed": self.passed(),
        })
    }
}

pub fn verify_box(max_arity: usize, max_degree: usize) -> OperadReport {
    let seqs: Vec<SurjSeq> =
        (1..=max_arity).flat_map(|n| (0..=max_degree).flat_map(move |d| SurjSeq::enumerate(n, d))).collect();
    let verdicts = par::map(&seqs, |u| {
        let x = SurjElement::basis(u.clone());
        (
            differential(&differential(&x)).is_zero(),
            contraction_residual(u, Retraction::Corrected).is_zero(),
            contraction_residual(u, Retraction::Uncorrected).is_zero(),
        )
    });
    let pick = |ok: fn(&(bool, bool, bool)) -> bool| -> Vec<SurjSeq> {
        seqs.iter().zip(&verdicts).filter(|(_, v)| !ok(v)).map(|(u, _)| u.clone()).collect()
    };
    let arity_homology = (1..=max_arity.min(3))
        .map(|n| {
            let h = arity_complex(n, 4, Ring::Integers).homology(0, 3).expect("finite complex");
            (0..=3).map(|d| h.betti(d)).collect()
        })
        .collect();
    OperadReport {
        max_arity,
        max_degree,
        checked: seqs.len(),
        d_squared_failures: pick(|v| v.0),
        corrected_failures: pick(|v| v.1),
        uncorrected_failures: pick(|v| v.2),
        arity_homology,
    }
}
