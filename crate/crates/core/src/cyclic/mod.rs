//! Connes' cyclic category, DGAs and the cyclic bar construction.

mod bar;
mod dga;
mod lambda;
mod space;

pub use bar::{
    bar_apply, bar_operator, connes_b, connes_b_total, hochschild, hochschild_window, negative_cyclic_truncated,
    normalized_basis, normalized_boundary, CyclicBar, HochschildComplex, HochschildResult, TensorBasis,
};
pub use dga::{Dga, DgaSpec};
pub use lambda::{CyclicMorphism, Generator};
pub use space::{CircleSet, CocyclicSpace, LoopComplex};
