//! Finite graphs, their automorphism groups, the gadget transform with its
//! 7-coloring, and coding of finite structures as graphs.

pub mod aut;
pub mod corpus;
pub mod graph;
pub mod structure;
pub mod transform;

pub use aut::{aut_colored, aut_graph, aut_graph_with, is_automorphism, AutOptions};
pub use graph::{ColoredGraph, Graph, GraphJson};
pub use structure::{cayley_structure, code_structure, FiniteStructure};
pub use transform::{check_star_coloring, gadget, lift_aut, restrict_aut, transform};
