//! F-splitting and strong F-regularity of monomial systems over `k[x_1..x_d]`
//! localized at the maximal ideal, where `A_e(m) = m^{[p^e]}`.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::stabilization::{stabilized_system_with, JForm};
use crate::systems::{verify_p_family, Certificate, FGradedSystem};

pub const DEFAULT_SLACK: u32 = 4;

/// The regular-ring Cartier contraction `A_e(I) = I^{[p^e]}`.
pub fn cartier_contraction(ideal: &MonomialIdeal, p: u64, e: u32) -> MonomialIdeal {
    ideal.frobenius_power(&BigUint::from(p).pow(e))
}

/// Outcome of a bounded search for the least degree with a property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DegreeSearch {
    Found { e: u32, witness: ExponentVector },
    /// Not found for any `e <= depth`; says nothing about larger `e`.
    NoneUpTo { depth: u32 },
}

impl DegreeSearch {
    pub fn degree(&self) -> Option<u32> {
        match self {
            DegreeSearch::Found { e, .. } => Some(*e),
            DegreeSearch::NoneUpTo { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FsingReport {
    pub depth: u32,
    pub split: DegreeSearch,
    pub sfr: DegreeSearch,
}

fn corner(sys: &FGradedSystem, e: u32) -> ExponentVector {
    let q = sys.ctx().q(e);
    ExponentVector::new(vec![q - BigUint::one(); sys.ctx().d()])
}

fn require_a1(sys: &FGradedSystem) -> Result<()> {
    if sys.term(1).is_zero() {
        return Err(Error::ZeroIdeal("a_1"));
    }
    Ok(())
}

/// Lowers each coordinate of `beta` as far as `pred` allows. For an upward
/// closed `pred` this ends at a minimal element.
fn minimize(mut beta: ExponentVector, pred: impl Fn(&ExponentVector) -> bool) -> ExponentVector {
    let mut coords = beta.clone().into_coords();
    for i in 0..coords.len() {
        // pred holds at coords[i] = hi; find the least such value.
        let (mut lo, mut hi) = (BigUint::ZERO, coords[i].clone());
        while lo < hi {
            let mid = (&lo + &hi) >> 1u32;
            let mut trial = coords.clone();
            trial[i] = mid.clone();
            if pred(&ExponentVector::new(trial)) {
                hi = mid;
            } else {
                lo = mid + 1u32;
            }
        }
        coords[i] = hi;
        beta = ExponentVector::new(coords.clone());
    }
    beta
}

/// Least `e <= depth` with `a_e ⊄ m^{[p^e]}`, i.e. `x^{(p^e - 1)𝟙} ∈ a_e`,
/// with a generator of `a_e` below that corner as witness.
pub fn f_split_degree(sys: &FGradedSystem, depth: u32) -> Result<DegreeSearch> {
    require_a1(sys)?;
    for e in 1..=depth {
        let c = corner(sys, e);
        if sys.contains(e, &c) {
            let witness = minimize(c, |b| sys.contains(e, b));
            return Ok(DegreeSearch::Found { e, witness });
        }
    }
    Ok(DegreeSearch::NoneUpTo { depth })
}

/// Least `e <= depth` with `a_1 a_e ⊄ m^{[p^e]}`, with a generator of `a_1 a_e`
/// below `(p^e - 1)𝟙` as witness.
pub fn sfr_degree(sys: &FGradedSystem, depth: u32) -> Result<DegreeSearch> {
    require_a1(sys)?;
    let a1 = sys.term(1);
    for e in 1..=depth {
        let c = corner(sys, e);
        let in_product = |b: &ExponentVector| {
            a1.generators()
                .iter()
                .filter_map(|g| b.checked_sub(g))
                .any(|rest| sys.contains(e, &rest))
        };
        if in_product(&c) {
            let witness = minimize(c, in_product);
            return Ok(DegreeSearch::Found { e, witness });
        }
    }
    Ok(DegreeSearch::NoneUpTo { depth })
}

pub fn fsing_report(sys: &FGradedSystem, depth: u32) -> Result<FsingReport> {
    Ok(FsingReport {
        depth,
        split: f_split_degree(sys, depth)?,
        sfr: sfr_degree(sys, depth)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    /// The two sides disagree within the searched depth; larger depths may settle it.
    UndecidedAtDepth,
    /// The searched degrees contradict a proven implication; indicates a bug.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub verdict: Verdict,
    pub depth: u32,
    pub extended_depth: u32,
    /// Left-hand property: F-split (A) or strongly F-regular (B).
    pub lhs: DegreeSearch,
    /// Right-hand property: strongly F-regular (A) or stabilization F-split (B).
    pub rhs: DegreeSearch,
}

/// For a p-family, F-split and strongly F-regular are equivalent. Splitting is
/// searched to `depth`, strong regularity to `depth + slack`.
pub fn theorem_a_check(sys: &FGradedSystem, depth: u32, slack: u32) -> Result<TheoremCheck> {
    if let Certificate::Violation { e, witness, .. } = verify_p_family(sys, depth) {
        return Err(Error::NotPFamily { index: e, witness });
    }
    let extended = depth + slack;
    let split = f_split_degree(sys, depth)?;
    let sfr = sfr_degree(sys, extended)?;
    let verdict = match (split.degree(), sfr.degree()) {
        (Some(_), Some(_)) => Verdict::Consistent,
        // a_1 a_e ⊆ a_e, so strong regularity at e forces splitting at e.
        (None, Some(s)) if s <= depth => Verdict::Counterexample,
        (None, Some(_)) => Verdict::UndecidedAtDepth,
        (Some(_), None) => Verdict::UndecidedAtDepth,
        (None, None) => Verdict::Consistent,
    };
    Ok(TheoremCheck {
        verdict,
        depth,
        extended_depth: extended,
        lhs: split,
        rhs: sfr,
    })
}

/// A system is strongly F-regular iff its p-stabilization is F-split. The
/// stabilization is taken in closed form, with the lattice `J` for minimal
/// systems since the convex-hull `J` can overshoot.
pub fn theorem_b_check(sys: &FGradedSystem, depth: u32, slack: u32) -> Result<TheoremCheck> {
    require_a1(sys)?;
    let stab = stabilized_system_with(sys, JForm::Lattice)?;
    let extended = depth + slack;
    let sfr = sfr_degree(sys, depth)?;
    let split = f_split_degree(&stab, depth)?;
    let (sfr, split, verdict) = if sfr.degree().is_some() == split.degree().is_some() {
        (sfr, split, Verdict::Consistent)
    } else {
        let sfr = sfr_degree(sys, extended)?;
        let split = f_split_degree(&stab, extended)?;
        let v = if sfr.degree().is_some() && split.degree().is_some() {
            Verdict::Consistent
        } else {
            Verdict::UndecidedAtDepth
        };
        (sfr, split, v)
    };
    Ok(TheoremCheck {
        verdict,
        depth,
        extended_depth: extended,
        lhs: sfr,
        rhs: split,
    })
}

#[cfg(test)]
mod tests;
