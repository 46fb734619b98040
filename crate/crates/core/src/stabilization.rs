//! p-stabilization: a windowed oracle, the standard-splitting stability test and
//! the closed forms for minimal, colon and rounding systems.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, BoxBounds};
use crate::monomial::newton::{newton_dominates, scaled_point};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::systems::{ceil_times, verify_p_family, Certificate, FGradedSystem, SystemKind};
use crate::pbody::{ScaledPoint, WDominance};

pub const DEFAULT_F0: u32 = 1;
pub const DEFAULT_DEPTH: u32 = 8;
pub const DEFAULT_CERT_STEPS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchBox {
    /// Componentwise max of the generators of `a_1 a_e`.
    Auto,
    Explicit(Vec<u64>),
}

/// The finite stand-in for "for all f ≫ 0".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabWindow {
    pub f0: u32,
    pub depth: u32,
    pub search_box: SearchBox,
    /// Number of smaller depths that must reproduce the answer for it to be certified.
    pub cert_steps: u32,
}

impl Default for StabWindow {
    fn default() -> Self {
        Self {
            f0: DEFAULT_F0,
            depth: DEFAULT_DEPTH,
            search_box: SearchBox::Auto,
            cert_steps: DEFAULT_CERT_STEPS,
        }
    }
}

impl StabWindow {
    pub fn new(f0: u32, depth: u32) -> Result<Self> {
        let w = Self {
            f0,
            depth,
            ..Self::default()
        };
        w.validate()?;
        Ok(w)
    }

    pub fn with_box(mut self, search_box: SearchBox) -> Self {
        self.search_box = search_box;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.f0 < 1 || self.f0 >= self.depth {
            return Err(Error::InvalidWindow(format!(
                "need 1 <= f0 < F, got f0={} F={}",
                self.f0, self.depth
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabResult {
    pub ideal: MonomialIdeal,
    /// The answer did not change when the depth was lowered by `1..=cert_steps`.
    pub certified: bool,
    pub window: StabWindow,
    /// The box actually searched.
    pub bounds: Vec<u64>,
    /// True when the lower bound `a_1 a_e` is not m-primary, so the answer is
    /// only meaningful inside `bounds`.
    pub box_relative: bool,
}

/// Image of `F_* I` under the standard splitting: `<x^{⌈g/p⌉}>`.
pub fn standard_splitting_image(ideal: &MonomialIdeal, p: u64) -> MonomialIdeal {
    if ideal.is_zero() || ideal.is_unit() {
        return ideal.clone();
    }
    let p = BigUint::from(p);
    let gens = ideal.generators().iter().map(|g| g.div_ceil(&p)).collect();
    MonomialIdeal::minimalize(ideal.dim(), gens).expect("same dimension")
}

/// Checks `φ(F_* b_{e+1}) ⊆ b_e` for `1 <= e < depth`, after confirming the
/// p-family axiom up to the same depth.
pub fn is_p_stable(sys: &FGradedSystem, depth: u32) -> Result<Certificate> {
    if let Certificate::Violation { e, witness, .. } = verify_p_family(sys, depth) {
        return Err(Error::NotPFamily { index: e, witness });
    }
    let p = sys.ctx().p();
    for e in 1..depth {
        let image = standard_splitting_image(&sys.term(e + 1), p);
        if let Some(w) = image.generators().iter().find(|g| !sys.contains(e, g)) {
            return Ok(Certificate::Violation {
                e,
                f: None,
                witness: w.clone(),
            });
        }
    }
    Ok(Certificate::Ok { depth })
}

/// Windowed p-stabilization `{α : x^{p^f α} ∈ a_{e+f} for f ≫ 0}`.
///
/// Membership is read off at the deepest index `f = F`, and the result is
/// certified when depths `F-1, ..., F-cert_steps` (not below `f0`) give the same
/// ideal. Everything in `a_1 a_e` is included without testing.
pub fn truncated_stabilization(sys: &FGradedSystem, e: u32, window: &StabWindow) -> Result<StabResult> {
    window.validate()?;
    let d = sys.ctx().d();
    let lower = sys.term(1).product(&sys.term(e))?;
    let box_relative = !lower.is_m_primary();
    let bounds = match &window.search_box {
        SearchBox::Auto => {
            if box_relative {
                return Err(Error::NotMPrimary { index: Some(e) });
            }
            BoxBounds::from_corner(&lower.max_corner())?
        }
        SearchBox::Explicit(b) => {
            if b.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: b.len(),
                });
            }
            BoxBounds::new(b.clone())?
        }
    };

    let ideal = stabilization_at_depth(sys, e, window.depth, &bounds, &lower)?;
    let lowest = window.depth.saturating_sub(window.cert_steps).max(window.f0);
    let mut certified = true;
    for depth in (lowest..window.depth).rev() {
        if stabilization_at_depth(sys, e, depth, &bounds, &lower)? != ideal {
            certified = false;
            break;
        }
    }
    Ok(StabResult {
        ideal,
        certified,
        window: window.clone(),
        bounds: bounds.bounds().to_vec(),
        box_relative,
    })
}

fn stabilization_at_depth(
    sys: &FGradedSystem,
    e: u32,
    f: u32,
    bounds: &BoxBounds,
    lower: &MonomialIdeal,
) -> Result<MonomialIdeal> {
    let d = sys.ctx().d();
    let q = sys.ctx().q(f);
    let found = lattice::upward_closed_minimals(bounds, |alpha| {
        let a = ExponentVector::from_u64s(alpha);
        lower.contains(&a) || sys.contains(e + f, &a.scale(&q))
    });
    // A generator on a face of the box that `lower` does not close off may be an
    // artifact of truncation.
    for g in &found {
        for (i, &b) in bounds.bounds().iter().enumerate() {
            let closed = lower.pure_power(i).is_some_and(|n| *n <= BigUint::from(b));
            if !closed && g.coords()[i] == BigUint::from(b) && !lower.contains(g) {
                return Err(Error::BoxTooSmall {
                    coordinate: i,
                    witness: g.clone(),
                });
            }
        }
    }
    let mut gens = found;
    gens.extend(lower.generators().iter().cloned());
    MonomialIdeal::minimalize(d, gens)
}

/// `J = <x^μ : (p-1)μ ∈ conv(V) + R^d_{>=0}>`.
///
/// This is the convex-hull form. It always contains the exact lattice form
/// [`compute_lattice_j`] and can be strictly larger: for `V = {(4,0),(0,4)}`
/// and `p = 3` it contains `xy`, yet no `ω ∈ W` satisfies `ω ≤ (1,1)`.
pub fn compute_j(v: &[ExponentVector], p: u64) -> Result<MonomialIdeal> {
    sweep_j(v, p, |mu| newton_dominates(&scaled_point(mu, p - 1), v))
}

/// `J_W = <x^μ : μ ≥ ω for some ω ∈ W>`, the integer slice of the p-body of
/// the minimal system. `J_W · a_e` is the exact p-stabilization.
pub fn compute_lattice_j(v: &[ExponentVector], p: u64) -> Result<MonomialIdeal> {
    let mut dom = WDominance::new(p, v);
    sweep_j(v, p, move |mu| Ok(dom.accepts(&ScaledPoint::new(ExponentVector::from_u64s(mu), 0))))
}

fn sweep_j(v: &[ExponentVector], p: u64, mut test: impl FnMut(&[u64]) -> Result<bool>) -> Result<MonomialIdeal> {
    let Some(first) = v.first() else {
        return Err(Error::EmptyGenerators("compute_j"));
    };
    let d = first.dim();
    if v.iter().any(ExponentVector::is_zero) {
        return Ok(MonomialIdeal::unit(d));
    }
    let mut corner = first.clone();
    for g in v {
        corner = corner.join(g);
    }
    let pm1 = BigUint::from(p - 1);
    let one = ExponentVector::new(vec![BigUint::from(1u32); d]);
    let bounds = BoxBounds::from_corner(&corner.div_ceil(&pm1).add(&one))?;
    let mut failure = None;
    let minimals = lattice::upward_closed_minimals(&bounds, |mu| match test(mu) {
        Ok(b) => b,
        Err(e) => {
            failure = Some(e);
            false
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    MonomialIdeal::minimalize(d, minimals)
}

/// Which `J` a minimal system is stabilized with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JForm {
    /// [`compute_j`], the convex-hull formula.
    Hull,
    /// [`compute_lattice_j`], exact.
    Lattice,
}

fn supported(sys: &FGradedSystem, form: JForm) -> Result<Option<MonomialIdeal>> {
    match sys.kind() {
        SystemKind::Minimal(i) => Ok(Some(match form {
            JForm::Hull => compute_j(i.generators(), sys.ctx().p())?,
            JForm::Lattice => compute_lattice_j(i.generators(), sys.ctx().p())?,
        })),
        SystemKind::Colon(_) => Ok(None),
        SystemKind::Rounding { base, .. } if base.is_maximal() => Ok(None),
        _ => Err(Error::Unsupported {
            op: "closed_form_stabilization",
            kind: sys.describe(),
        }),
    }
}

pub(crate) fn closed_form_term(source: &FGradedSystem, j: Option<&MonomialIdeal>, e: u32) -> Result<MonomialIdeal> {
    let q = source.ctx().q(e);
    match (source.kind(), j) {
        (SystemKind::Minimal(_), Some(j)) => j.product(&source.term(e)),
        (SystemKind::Colon(i), _) => Ok(i.frobenius_power(&q)),
        (SystemKind::Rounding { base, t }, _) if base.is_maximal() => {
            Ok(MonomialIdeal::maximal_power(source.ctx().d(), &ceil_times(t, &q)))
        }
        _ => Err(Error::Unsupported {
            op: "closed_form_stabilization",
            kind: source.describe(),
        }),
    }
}

/// Closed-form p-stabilization for minimal systems (`J · a_e` with the
/// convex-hull `J`), colon systems (`I^{[p^e]}`) and rounding systems of the
/// maximal ideal (`m^{⌈t p^e⌉}`). The last two are exact; for minimal systems
/// see [`exact_stabilization`].
pub fn closed_form_stabilization(sys: &FGradedSystem, e: u32) -> Result<MonomialIdeal> {
    stabilization_with(sys, e, JForm::Hull)
}

/// Like [`closed_form_stabilization`] but with the lattice `J_W`, which
/// agrees with the truncated computation on every minimal system.
pub fn exact_stabilization(sys: &FGradedSystem, e: u32) -> Result<MonomialIdeal> {
    stabilization_with(sys, e, JForm::Lattice)
}

pub fn stabilization_with(sys: &FGradedSystem, e: u32, form: JForm) -> Result<MonomialIdeal> {
    let j = supported(sys, form)?;
    closed_form_term(sys, j.as_ref(), e)
}

/// The whole stabilized system in closed form, as a lazily evaluated p-family.
pub fn stabilized_system(sys: &FGradedSystem) -> Result<FGradedSystem> {
    stabilized_system_with(sys, JForm::Hull)
}

pub fn stabilized_system_with(sys: &FGradedSystem, form: JForm) -> Result<FGradedSystem> {
    let j = supported(sys, form)?;
    Ok(FGradedSystem::stabilized(sys.clone(), j))
}
