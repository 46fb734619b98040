//! Exact arithmetic on monomial ideals of `k[x_1, ..., x_d]`.

mod exponent;
mod ideal;
pub mod lp;
pub mod newton;
pub mod text;

pub use exponent::ExponentVector;
pub use ideal::{Colength, IdealKind, MonomialIdeal, MonomialText};
pub use newton::{integral_closure, newton_dominates};
pub use text::{parse_ideal, parse_monomial};

use crate::context::SystemContext;

/// `I^{[p^e]}`.
pub fn bracket_power(ctx: &SystemContext, ideal: &MonomialIdeal, e: u32) -> MonomialIdeal {
    ideal.frobenius_power(&ctx.q(e))
}
