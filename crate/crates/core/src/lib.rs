//! Exact computations with monomial F-graded systems of ideals in characteristic `p`.
//!
//! The ring is `S = k[x_1, ..., x_d]` (localized at the homogeneous maximal ideal
//! where F-singularities are concerned). Coefficients never enter the algorithms,
//! so the field `k` is implicit.

pub mod context;
pub mod error;
pub mod fsing;
pub mod lattice;
pub mod monomial;
pub mod pbody;
pub mod rational;
pub mod stabilization;
pub mod systems;
pub mod volume;

pub use context::SystemContext;
pub use error::{Error, Result};
pub use monomial::{Colength, ExponentVector, IdealKind, MonomialIdeal};
pub use rational::Rational;
pub use systems::{Certificate, ClaimedClass, FGradedSystem};
