//! Exact enumeration of maximal dissociation sets in small graphs, with
//! isomorphism-free generators for trees and unicyclic graphs and a harness
//! that checks the extremal lower bound `φ(G) ≥ ⌊n/2⌋ + 2` for unicyclic
//! graphs together with its supporting lemmas.

pub mod corpus;
pub mod dissociation;
pub mod error;
pub mod families;
pub mod geniso;
pub mod graph;
pub mod graph6;
pub mod verify;

pub use dissociation::{
    enumerate_mds, enumerate_mds_naive, mds_profile, phi, phi_refined, MdsProfile,
    VertexConstraint, VertexStatus,
};
pub use error::{Error, Result};
pub use graph::{Classification, Graph, GraphClass, VertexSet};
