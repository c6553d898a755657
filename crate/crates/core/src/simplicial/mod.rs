//! Finite simplicial sets, products, normalized cochains and
//! Alexander–Whitney structure.

mod cochains;
mod map;
mod product;
mod simplex;
mod sset;

pub use cochains::{
    aw_external, chain_complex, nested_dims, pullback_map, tensor_power, tensor_power_index, tensor_power_split, Cochain,
    Cochains,
};
pub use map::SimplicialMap;
pub use product::{all_simplices, Product, DEFAULT_CEILING};
pub use simplex::{compress_jumps, epi_mono, full_jumps, jump_sets, Simplex};
pub use sset::SSet;
