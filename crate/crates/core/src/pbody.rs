//! Associated p-bodies `Δ(a_•) = ⋃_f ⋂_{e>=f} (1/p^e) log a_e`: windowed
//! membership, resolution-k slices and closed forms.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::context::SystemContext;
use crate::error::{Error, Result};
use crate::lattice::{self, BoxBounds};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::rational::{from_biguint, Rational};
use crate::stabilization::{truncated_stabilization, SearchBox, StabWindow};
use crate::systems::{ContainsFn, FGradedSystem, SystemKind};

/// The point `numerator / p^k` of `(N[1/p])^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ScaledPoint {
    pub numerator: ExponentVector,
    pub k: u32,
}

impl ScaledPoint {
    pub fn new(numerator: ExponentVector, k: u32) -> Self {
        Self { numerator, k }
    }

    pub fn coords(&self, p: u64) -> Vec<Rational> {
        let den = from_biguint(&BigUint::from(p).pow(self.k));
        self.numerator.coords().iter().map(|c| from_biguint(c) / &den).collect()
    }

    /// Numerator at the finer resolution `k' >= k`.
    pub fn numerator_at(&self, p: u64, k: u32) -> ExponentVector {
        assert!(k >= self.k, "cannot coarsen a scaled point");
        self.numerator.scale(&BigUint::from(p).pow(k - self.k))
    }

    /// Same point with the smallest possible `k`.
    pub fn reduced(&self, p: u64) -> Self {
        let p = BigUint::from(p);
        let mut out = self.clone();
        while out.k > 0 && out.numerator.coords().iter().all(|c| c.is_multiple_of(&p)) {
            out.numerator = out.numerator.div_floor(&p);
            out.k -= 1;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    In,
    /// Fails at the deepest tested index.
    OutWindow,
    /// Holds at the deepest index but fails somewhere earlier in the window.
    Undetermined,
}

/// Windowed test of `p^e α ∈ log a_e` for `e ∈ [max(f0, k), F]`.
pub fn pbody_membership(alpha: &ScaledPoint, sys: &FGradedSystem, f0: u32, depth: u32) -> Result<Membership> {
    if alpha.numerator.dim() != sys.ctx().d() {
        return Err(Error::DimensionMismatch {
            expected: sys.ctx().d(),
            found: alpha.numerator.dim(),
        });
    }
    if depth < alpha.k || depth < f0 {
        return Err(Error::InvalidWindow(format!(
            "depth {depth} is below the point resolution {} or f0 {f0}",
            alpha.k
        )));
    }
    let p = sys.ctx().p();
    let at = |e: u32| sys.contains(e, &alpha.numerator_at(p, e));
    if !at(depth) {
        return Ok(Membership::OutWindow);
    }
    if (f0.max(alpha.k)..depth).all(at) {
        Ok(Membership::In)
    } else {
        Ok(Membership::Undetermined)
    }
}

/// A monomial ideal read at resolution `1/p^k`: the region `⋃_g (g/p^k + R^d_{>=0})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledStaircase {
    pub p: u64,
    pub d: usize,
    pub k: u32,
    pub window: [u32; 2],
    pub generators: Vec<ExponentVector>,
    pub certified: bool,
    #[serde(skip)]
    pub ideal: MonomialIdeal,
}

impl ScaledStaircase {
    pub fn new(ctx: &SystemContext, k: u32, window: [u32; 2], ideal: MonomialIdeal, certified: bool) -> Self {
        Self {
            p: ctx.p(),
            d: ctx.d(),
            k,
            window,
            generators: ideal.generators().to_vec(),
            certified,
            ideal,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Whether the point lies in the region (at any resolution).
    pub fn contains_point(&self, alpha: &ScaledPoint) -> bool {
        if alpha.k <= self.k {
            self.ideal.contains(&alpha.numerator_at(self.p, self.k))
        } else {
            let s = BigUint::from(self.p).pow(alpha.k - self.k);
            self.ideal
                .generators()
                .iter()
                .any(|g| g.scale(&s).divides(&alpha.numerator))
        }
    }

    /// The same region described at resolution `k + 1`.
    pub fn refine(&self) -> Self {
        let ideal = self.ideal.frobenius_power(&BigUint::from(self.p));
        Self {
            generators: ideal.generators().to_vec(),
            ideal,
            k: self.k + 1,
            ..self.clone()
        }
    }
}

/// Resolution-`k` slice of the p-body through the stabilization oracle:
/// `(1/p^k) log pstab_k`.
pub fn pbody_approx(sys: &FGradedSystem, k: u32, window: &StabWindow) -> Result<ScaledStaircase> {
    let r = truncated_stabilization(sys, k, window)?;
    Ok(ScaledStaircase::new(
        sys.ctx(),
        k,
        [window.f0, window.depth],
        r.ideal,
        r.certified,
    ))
}

/// The same slice by direct point filtering: `β` is kept when
/// `p^f β ∈ log a_{k+f}` at every depth `f` the stabilization oracle consults.
/// Unlike [`pbody_approx`] nothing is assumed about `a_1 a_k`, so agreement of
/// the two paths also checks `a_1 a_k ⊆ pstab_k`.
pub fn pbody_approx_direct(sys: &FGradedSystem, k: u32, window: &StabWindow) -> Result<ScaledStaircase> {
    window.validate()?;
    let d = sys.ctx().d();
    let bounds = match &window.search_box {
        SearchBox::Auto => {
            let lower = sys.term(1).product(&sys.term(k))?;
            if !lower.is_m_primary() {
                return Err(Error::NotMPrimary { index: Some(k) });
            }
            BoxBounds::from_corner(&lower.max_corner())?
        }
        SearchBox::Explicit(b) => BoxBounds::new(b.clone())?,
    };
    let lowest = window.depth.saturating_sub(window.cert_steps).max(window.f0);
    let depths: Vec<(u32, BigUint)> = (lowest..=window.depth).map(|f| (f, sys.ctx().q(f))).collect();
    let found = lattice::upward_closed_minimals(&bounds, |beta| {
        let b = ExponentVector::from_u64s(beta);
        depths.iter().all(|(f, q)| sys.contains(k + f, &b.scale(q)))
    });
    let ideal = MonomialIdeal::minimalize(d, found)?;
    // Certified when the deepest index alone already gives the same slice.
    let (f, q) = depths.last().expect("nonempty window");
    let deepest = lattice::upward_closed_minimals(&bounds, |beta| {
        sys.contains(k + f, &ExponentVector::from_u64s(beta).scale(q))
    });
    let certified = MonomialIdeal::minimalize(d, deepest)? == ideal;
    Ok(ScaledStaircase::new(sys.ctx(), k, [window.f0, window.depth], ideal, certified))
}

/// Exact membership in the p-body of a minimal, colon or rounding-of-m system.
pub fn closed_form_pbody_membership(alpha: &ScaledPoint, sys: &FGradedSystem) -> Result<bool> {
    let p = sys.ctx().p();
    match sys.kind() {
        SystemKind::Colon(i) => {
            let s = BigUint::from(p).pow(alpha.k);
            Ok(i.generators().iter().any(|g| g.scale(&s).divides(&alpha.numerator)))
        }
        SystemKind::Rounding { base, t } if base.is_maximal() => {
            let den = BigUint::from(p).pow(alpha.k);
            Ok(from_biguint(&alpha.numerator.degree()) >= t * from_biguint(&den))
        }
        SystemKind::Minimal(i) => Ok(WDominance::new(p, i.generators()).accepts(alpha)),
        _ => Err(Error::Unsupported {
            op: "closed_form_pbody_membership",
            kind: sys.describe(),
        }),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    OnPath,
    Accept,
    Reject,
}

/// Decides `α ≥ ω` for some `ω ∈ W = {Σ_{i>=1} v(i)/p^i : v(i) ∈ V}`.
///
/// `α ≥ v/p + ω'/p` iff `pα - v ≥ ω'`, so states are points `σ`, and a
/// transition picks `v ∈ V` with `pσ - v ≥ 0`. An infinite walk spells out an
/// `ω ∈ W`; coordinates are capped where every `ω` is already dominated, which
/// makes the state space finite, so acceptance is reachability of a cycle.
pub struct WDominance<'a> {
    p: BigUint,
    v: &'a [ExponentVector],
    cap: BigUint,
    marks: HashMap<(u32, Vec<BigUint>), Mark>,
}

impl<'a> WDominance<'a> {
    pub fn new(p: u64, v: &'a [ExponentVector]) -> Self {
        let max = v
            .iter()
            .flat_map(|g| g.coords().iter().cloned())
            .max()
            .unwrap_or_default();
        let pm1 = BigUint::from(p - 1);
        Self {
            p: BigUint::from(p),
            v,
            cap: max.div_ceil(&pm1) + 1u32,
            marks: HashMap::new(),
        }
    }

    pub fn accepts(&mut self, alpha: &ScaledPoint) -> bool {
        if self.v.is_empty() {
            return false;
        }
        if self.v.iter().any(ExponentVector::is_zero) {
            return true;
        }
        let state = self.normalize(alpha.k, alpha.numerator.coords().to_vec());
        self.visit(state)
    }

    /// Reduces the resolution where possible and caps each coordinate at `cap`.
    fn normalize(&self, mut k: u32, mut n: Vec<BigUint>) -> (u32, Vec<BigUint>) {
        while k > 0 && n.iter().all(|c| c.is_multiple_of(&self.p)) {
            for c in &mut n {
                *c = &*c / &self.p;
            }
            k -= 1;
        }
        let cap = &self.cap * self.p.pow(k);
        for c in &mut n {
            if *c > cap {
                *c = cap.clone();
            }
        }
        (k, n)
    }

    fn visit(&mut self, state: (u32, Vec<BigUint>)) -> bool {
        match self.marks.get(&state) {
            Some(Mark::OnPath) | Some(Mark::Accept) => return true,
            Some(Mark::Reject) => return false,
            None => {}
        }
        self.marks.insert(state.clone(), Mark::OnPath);
        let (k, n) = &state;
        // pσ = n / p^{k-1}; subtracting v scales it by p^{k-1} at resolution k-1.
        let (nk, shift) = if *k == 0 {
            (0, None)
        } else {
            (k - 1, Some(self.p.pow(k - 1)))
        };
        let mut accepted = false;
        for v in self.v {
            let mut next = Vec::with_capacity(n.len());
            let mut ok = true;
            for (c, vi) in n.iter().zip(v.coords()) {
                let (top, sub) = match &shift {
                    Some(_) => (c.clone(), vi * shift.as_ref().expect("shift")),
                    None => (c * &self.p, vi.clone()),
                };
                if top < sub {
                    ok = false;
                    break;
                }
                next.push(top - sub);
            }
            if ok {
                let next = self.normalize(nk, next);
                if self.visit(next) {
                    accepted = true;
                    break;
                }
            }
        }
        self.marks
            .insert(state, if accepted { Mark::Accept } else { Mark::Reject });
        accepted
    }
}

/// The associated p-family `a^Δ_e = <x^β : β/p^e ∈ Δ>` of a closed-form
/// p-body. Terms are swept from the membership oracle inside the box of
/// `a_1 a_e`, which the p-body slice always contains.
pub fn associated_p_family(sys: &FGradedSystem) -> Result<FGradedSystem> {
    // Rejects unsupported kinds up front.
    closed_form_pbody_membership(&ScaledPoint::new(ExponentVector::zero(sys.ctx().d()), 0), sys)?;
    if !sys.term(1).is_m_primary() {
        return Err(Error::NotMPrimary { index: Some(1) });
    }
    let ctx = *sys.ctx();
    let source = sys.clone();
    let member = {
        let source = sys.clone();
        move |e: u32, beta: &ExponentVector| {
            closed_form_pbody_membership(&ScaledPoint::new(beta.clone(), e), &source).expect("supported kind")
        }
    };
    let contains: ContainsFn = std::sync::Arc::new(member.clone());
    Ok(FGradedSystem::from_fn(
        ctx,
        format!("assoc({})", sys.describe()),
        move |e| {
            let lower = source.term(1).product(&source.term(e)).expect("same dimension");
            let bounds = BoxBounds::from_corner(&lower.max_corner()).expect("box fits");
            let found = lattice::upward_closed_minimals(&bounds, |b| member(e, &ExponentVector::from_u64s(b)));
            let mut gens = found;
            gens.extend(lower.generators().iter().cloned());
            MonomialIdeal::minimalize(ctx.d(), gens).expect("same dimension")
        },
        Some(contains),
    ))
}
