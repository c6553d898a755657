//! Homotopy coherent natural transformations between diagrams of chain
//! complexes over finite categories, and the bar resolution `QF`.

mod category;
mod diagram;
mod resolution;
mod verify;

pub use category::{Arrow, FinCat, Nerve, NerveSimplex};
pub use diagram::{Diagram, Hc, HcLevel};
pub use resolution::{
    check_q_identities, q_chains, q_degeneracy, q_extra, q_face, q_push, NatLevel, QResolution, QTerm,
};
pub use verify::{filler_map, hc_verify, two_object_diagram, HcVerifyReport};
