//! Toric sheaves on weighted projective planes P(a,b,c).
//!
//! Exact K-theory classes, orbifold Chern characters on the inertia stack,
//! Hilbert polynomials of twisted sheaves, colored-partition generating
//! functions and the enumeration of μ-stable rank-2 toric bundles.

pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod hilbert;
pub mod inertia;
pub mod kgroup;
pub mod partitions;
pub mod rank2;
pub mod sheaf_model;

pub use error::{Result, WppError};
pub use exact_arith::{Cyclotomic, Rational};
pub use hilbert::{hilb_top, hilb_top_e, GeneratingSheafSpec, HilbTop};
pub use inertia::{tch_of_kclass, ChernVector, SectorIndex};
pub use kgroup::{KClass, WppParams};
pub use partitions::{Partition, Series};
pub use sheaf_model::{check_gluing, ProjPoint, Rank1Sheaf, TruncatedSFamily, TypeIBundle};
