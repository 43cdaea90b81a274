//! Finite permutation groups: closures, normalizers, automorphism groups,
//! automorphism and normalizer towers, and the projective groups over small
//! finite fields.

pub mod autgroup;
pub mod gf;
pub mod group;
pub mod perm;
pub mod projective;
pub mod semidirect;
pub mod tower;
pub mod verify;

pub use autgroup::{aut_group, find_isomorphism, AutGroup, CayleyTable};
pub use gf::GFq;
pub use group::{closure, PermGroup};
pub use perm::Perm;
pub use projective::{pgammal2, pgl2, psl2, ProjectiveLine};
pub use semidirect::semidirect;
pub use tower::{automorphism_tower, normalizer_tower, TowerReport};
