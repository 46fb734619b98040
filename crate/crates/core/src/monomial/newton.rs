//! Newton-polyhedron dominance and integral closure of monomial ideals.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{lp, ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};
use crate::lattice::{self, BoxBounds};
use crate::rational::{from_biguint, Rational};

/// Decides whether `alpha ∈ conv(V) + R_{>=0}^d`, i.e. whether some convex
/// combination `sum c_v v` lies termwise below `alpha`.
pub fn newton_dominates(alpha: &[Rational], v: &[ExponentVector]) -> Result<bool> {
    Ok(newton_weights(alpha, v)?.is_some())
}

/// Convex weights `c` with `sum c_v v <= alpha`, when they exist.
pub fn newton_weights(alpha: &[Rational], v: &[ExponentVector]) -> Result<Option<Vec<Rational>>> {
    if v.is_empty() {
        return Err(Error::EmptyGenerators("newton_dominates"));
    }
    let d = alpha.len();
    for g in v {
        if g.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.dim(),
            });
        }
    }
    if alpha.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    // Cheap exit: a single generator already below alpha.
    if let Some(i) = v
        .iter()
        .position(|g| g.coords().iter().zip(alpha).all(|(c, a)| from_biguint(c) <= *a))
    {
        let mut c = vec![Rational::zero(); v.len()];
        c[i] = Rational::one();
        return Ok(Some(c));
    }
    // Columns: one weight per generator, then one slack per coordinate.
    let n = v.len();
    let mut rows = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    let mut simplex_row = vec![Rational::one(); n];
    simplex_row.extend(std::iter::repeat_n(Rational::zero(), d));
    rows.push(simplex_row);
    rhs.push(Rational::one());
    for i in 0..d {
        let mut row: Vec<Rational> = v.iter().map(|g| from_biguint(&g[i])).collect();
        row.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(alpha[i].clone());
    }
    Ok(lp::feasible_point(&rows, &rhs).map(|mut x| {
        x.truncate(n);
        x
    }))
}

pub fn integer_point(alpha: &ExponentVector) -> Vec<Rational> {
    alpha.coords().iter().map(from_biguint).collect()
}

/// Integral closure: the lattice points of the Newton polyhedron.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal("integral_closure"));
    }
    if ideal.is_unit() || ideal.generators().len() == 1 {
        return Ok(ideal.clone());
    }
    let bounds = BoxBounds::from_corner(&ideal.max_corner())?;
    let gens = ideal.generators();
    let mut failure = None;
    let minimals = lattice::upward_closed_minimals(&bounds, |alpha| {
        let pt: Vec<Rational> = alpha
            .iter()
            .map(|&a| Rational::from_integer(BigInt::from(a)))
            .collect();
        match newton_dominates(&pt, gens) {
            Ok(b) => b,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    MonomialIdeal::minimalize(ideal.dim(), minimals)
}

/// `(p - 1) * mu` as a rational point.
pub fn scaled_point(mu: &[u64], factor: u64) -> Vec<Rational> {
    mu.iter()
        .map(|&m| Rational::from_integer(BigInt::from_biguint(Sign::Plus, num_bigint::BigUint::from(m) * factor)))
        .collect()
}
