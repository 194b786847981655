//! Exact arithmetic substrate: big-integer polynomials over ℤ, ℚ and 𝔽_p,
//! integer matrix normal forms and bounded lattice enumeration.

pub mod int;
pub mod lattice;
pub mod matrix;
pub mod modpoly;
pub mod poly;
pub mod sturm;

pub use lattice::{
    enumerate_bounded, enumerate_bounded_capped, lll_transform, Enumeration, GramMatrix,
};
pub use matrix::IntMatrix;
pub use modpoly::{factor_mod_p, factor_mod_p_seeded, ModPoly};
pub use poly::{discriminant, resultant, IntPoly, RatPoly};
pub use sturm::real_root_count;
