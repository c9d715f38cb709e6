//! Exact invariants of weighted projective spaces `P(a_0, ..., a_n)` and the
//! algebraic-hyperbolicity thresholds for very general hypersurfaces in them.
//!
//! - [`weights`]: validation, well-formedness, Picard generator degree
//! - [`strata`]: toric strata and cyclic quotient singularity types
//! - [`sections`]: monomial bases, section-space dimensions, normal generation
//! - [`hyperbolicity`]: thresholds, `Θ`, epsilon constants, threefold verdicts
//! - [`search`]: exhaustive checks of the supporting inequalities

pub mod error;
pub mod hyperbolicity;
pub mod rational;
pub mod search;
pub mod sections;
pub mod strata;
pub mod subsets;
pub mod weights;

pub use error::{Error, Result};
pub use rational::Rational;
pub use weights::WeightVector;
