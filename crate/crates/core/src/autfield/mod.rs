//! Automorphisms of `K_Γ` induced by graph automorphisms, minimal supports
//! and the element codec `Ψ`.

pub mod psi;
pub mod sigma;

pub use psi::{decode_element, encode_element, Code};
pub use sigma::{
    apply, check_substitution, minimal_support, sigma, verify_edge_image, verify_injectivity_sigma, EdgeImageReport,
    FieldAut, SigmaReport,
};
