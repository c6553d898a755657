//! Comparison of the cyclic bar construction of `C^*(X)` with the cochains
//! of the free loop space model `[n] -> C^*(X^{n+1})`.

mod pi;
mod theorem;
mod transform;

pub use pi::{bar_model_residual, interaction_residual, phi_star_pure, LoopSetting, PureTensor};
pub use transform::{
    assemble, aw_residuals, bar_diagram, build_transformation, coherent_operations, naturality_in_space, phi_recipe,
    space_diagram, to_nested_basis, HcTransformation,
};
pub use theorem::{main_theorem_check, tables_agree, TheoremCase, TheoremReport};
