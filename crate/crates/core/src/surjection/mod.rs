//! The surjection operad: sequences, differential, composition, the action on
//! normalized cochains and the contracting homotopy.

mod action;
mod ops;
mod seq;
mod verify;

pub use action::{act, cut_sum, global_sign, output_degree};
pub use ops::{
    arity_complex, assoc, augmentation, basepoint, compose_all, contraction_iota, contraction_r, contraction_residual,
    contraction_s, differential, homotopy, lift_cycle, operad_compose, seq_differential, unit_element, Retraction,
};
pub use seq::{SurjElement, SurjSeq};
pub use verify::{verify_box, OperadReport};
