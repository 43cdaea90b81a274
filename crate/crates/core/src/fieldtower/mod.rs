//! Exact arithmetic in finite-depth radical towers over rational function
//! fields: `K_Γ` for a colored graph and generic radical extensions of
//! `F(z_0)`.

pub mod checks;
pub mod element;
pub mod norm;
pub mod poly;
pub mod primes;
pub mod ratfunc;
pub mod serial;
pub mod tower;

pub use element::{generator_radical, generator_var, TowerElement};
pub use norm::{embed, field_norm};
pub use poly::Poly;
pub use primes::choose_primes;
pub use ratfunc::RatFunc;
pub use tower::{Ctx, Depths, RadicalSpec, TowerCtx, TowerProfile};
