//! Exact homological algebra for comparing the cyclic bar construction of a
//! cochain algebra with cochains on the cosimplicial free loop space model.

pub mod comparison;
pub mod complex;
pub mod cyclic;
pub mod error;
pub mod hc;
pub mod linalg;
pub mod matrix;
pub mod par;
pub mod ring;
pub mod sign;
pub mod simplicial;
pub mod surjection;
pub mod totalize;

pub use complex::{FinComplex, GradedMap, HomologyRow, HomologyTable};
pub use error::{Error, Result};
pub use matrix::SparseMatrix;
pub use ring::Ring;
