//! Graph approximations of the gasket: canonical vertex addressing, exact
//! jet-transfer evaluation, the discrete-solve oracle, edge restrictions,
//! quadrature, and nodal analysis.

mod address;
mod analysis;
mod eval;
mod transfer;

pub use address::{cell_word, MeshHierarchy, MeshTopology, VertexAddress};
pub use analysis::{edge_restriction, nodal_domains, quadrature, zero_crossings, Edge, NodalDomains};
pub use eval::{evaluate_discrete, evaluate_exact, MeshValues, Provenance};
pub use transfer::{change_base, jet_len, jet_transfer_matrices, root_jet, scale_child, transfer, value_at};
