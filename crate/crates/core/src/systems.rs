//! F-graded systems of monomial ideals: constructors, memoized terms, axiom checks,
//! splicing and termwise combinators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::context::SystemContext;
use crate::error::{Error, Result};
use crate::monomial::{integral_closure, ExponentVector, MonomialIdeal};
use crate::rational::{ceil_nonneg, format_rational, from_biguint, Rational};
use crate::stabilization;

/// What a system is asserted to be. Claims are checked only up to a finite depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimedClass {
    FGraded,
    PFamily,
    Unverified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerMode {
    /// `I^{p^e}`
    Pe,
    /// `I^{p^e - 1}`
    PeMinus1,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TermwiseOp {
    Product,
    Sum,
    Intersect,
    IntegralClosure,
    /// `a_e : f^{⌈t p^e⌉ - 1}`
    ColonTwist { f: ExponentVector, t: Rational },
}

pub type TermFn = Arc<dyn Fn(u32) -> MonomialIdeal + Send + Sync>;
pub type ContainsFn = Arc<dyn Fn(u32, &ExponentVector) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum SystemKind {
    /// `a_e = prod_{i<e} J^{[p^i]}`
    Minimal(MonomialIdeal),
    /// `b_e = J^{[p^e]} : J`
    Colon(MonomialIdeal),
    /// `c_e = J^{⌈t(p^e - 1)⌉}`
    Rounding { base: MonomialIdeal, t: Rational },
    /// `I^{[p^e]}`
    BracketFamily(MonomialIdeal),
    PowerFamily { base: MonomialIdeal, mode: PowerMode },
    /// `m^{⌈t p^e⌉}`
    RoundingStab { t: Rational },
    /// `I` in every positive degree.
    Constant(MonomialIdeal),
    /// Terms `1..=prefix.len()` given explicitly, the tail afterwards.
    Explicit { prefix: Vec<MonomialIdeal>, tail: FGradedSystem },
    Splice { first: FGradedSystem, second: FGradedSystem, index: u32 },
    Termwise { op: TermwiseOp, inputs: Vec<FGradedSystem> },
    /// Closed-form p-stabilization of a supported source system; `j` is the
    /// extra factor for minimal systems.
    Stabilized { source: FGradedSystem, j: Option<MonomialIdeal> },
    Custom { label: String, term: TermFn, contains: Option<ContainsFn> },
}

struct Inner {
    ctx: SystemContext,
    kind: SystemKind,
    class: ClaimedClass,
    cache: Mutex<HashMap<u32, Arc<MonomialIdeal>>>,
}

/// A lazily evaluated, memoized sequence of monomial ideals `a_0, a_1, ...`.
///
/// Cloning is cheap and clones share the memo table.
#[derive(Clone)]
pub struct FGradedSystem {
    inner: Arc<Inner>,
}

impl fmt::Debug for FGradedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FGradedSystem")
            .field("p", &self.ctx().p())
            .field("d", &self.ctx().d())
            .field("kind", &self.describe())
            .field("class", &self.class())
            .finish()
    }
}

fn check_ideal(ctx: &SystemContext, ideal: &MonomialIdeal) -> Result<()> {
    if ideal.dim() != ctx.d() {
        return Err(Error::DimensionMismatch {
            expected: ctx.d(),
            found: ideal.dim(),
        });
    }
    Ok(())
}

fn check_t(t: &Rational) -> Result<()> {
    if *t < Rational::zero() {
        return Err(Error::NegativeParameter(t.to_string()));
    }
    Ok(())
}

/// `⌈t q⌉` for non-negative `t`.
pub(crate) fn ceil_times(t: &Rational, q: &BigUint) -> BigUint {
    ceil_nonneg(&(t * from_biguint(q))).expect("t is non-negative")
}

impl FGradedSystem {
    fn build(ctx: SystemContext, kind: SystemKind, class: ClaimedClass) -> Self {
        Self {
            inner: Arc::new(Inner {
                ctx,
                kind,
                class,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn minimal(ctx: SystemContext, j: MonomialIdeal) -> Result<Self> {
        check_ideal(&ctx, &j)?;
        if j.is_zero() {
            return Err(Error::ZeroIdeal("minimal system"));
        }
        Ok(Self::build(ctx, SystemKind::Minimal(j), ClaimedClass::FGraded))
    }

    pub fn colon(ctx: SystemContext, j: MonomialIdeal) -> Result<Self> {
        check_ideal(&ctx, &j)?;
        if j.is_zero() {
            return Err(Error::ZeroIdeal("colon system"));
        }
        Ok(Self::build(ctx, SystemKind::Colon(j), ClaimedClass::FGraded))
    }

    pub fn rounding(ctx: SystemContext, base: MonomialIdeal, t: Rational) -> Result<Self> {
        check_ideal(&ctx, &base)?;
        check_t(&t)?;
        Ok(Self::build(ctx, SystemKind::Rounding { base, t }, ClaimedClass::FGraded))
    }

    pub fn bracket_family(ctx: SystemContext, ideal: MonomialIdeal) -> Result<Self> {
        check_ideal(&ctx, &ideal)?;
        Ok(Self::build(ctx, SystemKind::BracketFamily(ideal), ClaimedClass::PFamily))
    }

    pub fn power_family(ctx: SystemContext, base: MonomialIdeal, mode: PowerMode) -> Result<Self> {
        check_ideal(&ctx, &base)?;
        // I^{p^e} is a p-family; the p^e - 1 variant is only F-graded.
        let class = match mode {
            PowerMode::Pe => ClaimedClass::PFamily,
            PowerMode::PeMinus1 => ClaimedClass::FGraded,
        };
        Ok(Self::build(ctx, SystemKind::PowerFamily { base, mode }, class))
    }

    pub fn rounding_stab(ctx: SystemContext, t: Rational) -> Result<Self> {
        check_t(&t)?;
        Ok(Self::build(ctx, SystemKind::RoundingStab { t }, ClaimedClass::PFamily))
    }

    pub fn constant(ctx: SystemContext, ideal: MonomialIdeal) -> Result<Self> {
        check_ideal(&ctx, &ideal)?;
        Ok(Self::build(ctx, SystemKind::Constant(ideal), ClaimedClass::PFamily))
    }

    /// Terms `1..=prefix.len()` are given; the tail supplies all later terms.
    pub fn explicit(prefix: Vec<MonomialIdeal>, tail: FGradedSystem) -> Result<Self> {
        let ctx = *tail.ctx();
        for i in &prefix {
            check_ideal(&ctx, i)?;
        }
        Ok(Self::build(ctx, SystemKind::Explicit { prefix, tail }, ClaimedClass::Unverified))
    }

    /// A user-supplied family. `contains`, when given, must agree with `term`.
    pub fn from_fn(
        ctx: SystemContext,
        label: impl Into<String>,
        term: impl Fn(u32) -> MonomialIdeal + Send + Sync + 'static,
        contains: Option<ContainsFn>,
    ) -> Self {
        Self::build(
            ctx,
            SystemKind::Custom {
                label: label.into(),
                term: Arc::new(term),
                contains,
            },
            ClaimedClass::Unverified,
        )
    }

    pub(crate) fn stabilized(source: FGradedSystem, j: Option<MonomialIdeal>) -> Self {
        let ctx = *source.ctx();
        Self::build(ctx, SystemKind::Stabilized { source, j }, ClaimedClass::PFamily)
    }

    /// Splicing: `a_e` for `e <= index`, `b_e` afterwards. Requires `a_e ⊆ b_e`
    /// for all `e <= 2 index`.
    pub fn splice(first: &FGradedSystem, second: &FGradedSystem, index: u32) -> Result<Self> {
        if first.ctx() != second.ctx() {
            return Err(Error::ContextMismatch);
        }
        for e in 0..=2 * index {
            let a = first.term(e);
            if a.generators().iter().any(|g| !second.contains(e, g)) {
                return Err(Error::SpliceContainment { index: e });
            }
        }
        let class = if first.class() == ClaimedClass::Unverified || second.class() == ClaimedClass::Unverified {
            ClaimedClass::Unverified
        } else {
            ClaimedClass::FGraded
        };
        Ok(Self::build(
            *first.ctx(),
            SystemKind::Splice {
                first: first.clone(),
                second: second.clone(),
                index,
            },
            class,
        ))
    }

    pub fn termwise(op: TermwiseOp, inputs: &[FGradedSystem]) -> Result<Self> {
        let Some(head) = inputs.first() else {
            return Err(Error::InvalidArguments {
                op: "termwise",
                reason: "no input systems".into(),
            });
        };
        let ctx = *head.ctx();
        if inputs.iter().any(|s| *s.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        let unary = matches!(op, TermwiseOp::IntegralClosure | TermwiseOp::ColonTwist { .. });
        if unary && inputs.len() != 1 {
            return Err(Error::InvalidArguments {
                op: "termwise",
                reason: format!("unary operation given {} systems", inputs.len()),
            });
        }
        if let TermwiseOp::ColonTwist { f, t } = &op {
            if f.dim() != ctx.d() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.d(),
                    found: f.dim(),
                });
            }
            check_t(t)?;
        }
        let all = |c: ClaimedClass| inputs.iter().all(|s| s.class() == c);
        let graded = inputs.iter().all(|s| s.class() != ClaimedClass::Unverified);
        let class = match &op {
            _ if all(ClaimedClass::PFamily) => ClaimedClass::PFamily,
            TermwiseOp::Product | TermwiseOp::Intersect | TermwiseOp::IntegralClosure if graded => {
                ClaimedClass::FGraded
            }
            _ => ClaimedClass::Unverified,
        };
        Ok(Self::build(
            ctx,
            SystemKind::Termwise {
                op,
                inputs: inputs.to_vec(),
            },
            class,
        ))
    }

    pub fn ctx(&self) -> &SystemContext {
        &self.inner.ctx
    }

    pub fn kind(&self) -> &SystemKind {
        &self.inner.kind
    }

    pub fn class(&self) -> ClaimedClass {
        self.inner.class
    }

    /// Whether two handles share one memo table.
    pub fn same_instance(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind() {
            SystemKind::Minimal(_) => "minimal",
            SystemKind::Colon(_) => "colon",
            SystemKind::Rounding { .. } => "rounding",
            SystemKind::BracketFamily(_) => "bracket_family",
            SystemKind::PowerFamily { .. } => "power_family",
            SystemKind::RoundingStab { .. } => "rounding_stab",
            SystemKind::Constant(_) => "constant",
            SystemKind::Explicit { .. } => "explicit",
            SystemKind::Splice { .. } => "splice",
            SystemKind::Termwise { .. } => "termwise",
            SystemKind::Stabilized { .. } => "stabilized",
            SystemKind::Custom { .. } => "custom",
        }
    }

    /// Human-readable description for reports.
    pub fn describe(&self) -> String {
        match self.kind() {
            SystemKind::Minimal(j) => format!("minimal({j})"),
            SystemKind::Colon(j) => format!("colon({j})"),
            SystemKind::Rounding { base, t } => format!("round({base}; t={})", format_rational(t)),
            SystemKind::BracketFamily(i) => format!("bracket({i})"),
            SystemKind::PowerFamily { base, mode } => {
                let m = match mode {
                    PowerMode::Pe => "pe",
                    PowerMode::PeMinus1 => "pe_minus_1",
                };
                format!("powers({base}; {m})")
            }
            SystemKind::RoundingStab { t } => format!("round_stab(t={})", format_rational(t)),
            SystemKind::Constant(i) => format!("constant({i})"),
            SystemKind::Explicit { prefix, tail } => {
                let parts: Vec<String> = prefix.iter().map(|i| format!("<{i}>")).collect();
                format!("explicit([{}], {})", parts.join(", "), tail.describe())
            }
            SystemKind::Splice { first, second, index } => {
                format!("splice({}, {}, {index})", first.describe(), second.describe())
            }
            SystemKind::Termwise { op, inputs } => {
                let name = match op {
                    TermwiseOp::Product => "product".to_string(),
                    TermwiseOp::Sum => "sum".to_string(),
                    TermwiseOp::Intersect => "intersect".to_string(),
                    TermwiseOp::IntegralClosure => "closure".to_string(),
                    TermwiseOp::ColonTwist { f, t } => format!(
                        "twist[{}; t={}]",
                        crate::monomial::MonomialText(f),
                        format_rational(t)
                    ),
                };
                let parts: Vec<String> = inputs.iter().map(|s| s.describe()).collect();
                format!("{name}({})", parts.join(", "))
            }
            SystemKind::Stabilized { source, .. } => format!("stab({})", source.describe()),
            SystemKind::Custom { label, .. } => label.clone(),
        }
    }

    /// The degree-`e` ideal, memoized.
    pub fn term(&self, e: u32) -> Arc<MonomialIdeal> {
        if let Some(hit) = self.inner.cache.lock().expect("memo lock").get(&e) {
            return hit.clone();
        }
        // Computed outside the lock; terms are deterministic so racing writers agree.
        let value = Arc::new(self.compute_term(e));
        self.inner
            .cache
            .lock()
            .expect("memo lock")
            .entry(e)
            .or_insert(value)
            .clone()
    }

    fn compute_term(&self, e: u32) -> MonomialIdeal {
        let ctx = self.ctx();
        let d = ctx.d();
        let q = ctx.q(e);
        let unit = || MonomialIdeal::unit(d);
        match self.kind() {
            SystemKind::Custom { term, .. } => term(e),
            SystemKind::Stabilized { source, j } => {
                stabilization::closed_form_term(source, j.as_ref(), e).expect("supported source")
            }
            SystemKind::Termwise { op, inputs } => {
                let terms: Vec<Arc<MonomialIdeal>> = inputs.iter().map(|s| s.term(e)).collect();
                apply_termwise(ctx, op, &terms, e)
            }
            _ if e == 0 => unit(),
            SystemKind::Minimal(j) => {
                let prev = self.term(e - 1);
                j.product(&prev.frobenius_power(&BigUint::from(ctx.p())))
                    .expect("same dimension")
            }
            SystemKind::Colon(j) => j.frobenius_power(&q).colon(j).expect("same dimension"),
            SystemKind::Rounding { base, t } => base.power(&ceil_times(t, &(q - 1u32))),
            SystemKind::BracketFamily(i) => i.frobenius_power(&q),
            SystemKind::PowerFamily { base, mode } => match mode {
                PowerMode::Pe => base.power(&q),
                PowerMode::PeMinus1 => base.power(&(q - 1u32)),
            },
            SystemKind::RoundingStab { t } => MonomialIdeal::maximal_power(d, &ceil_times(t, &q)),
            SystemKind::Constant(i) => i.clone(),
            SystemKind::Explicit { prefix, tail } => match prefix.get(e as usize - 1) {
                Some(i) => i.clone(),
                None => (*tail.term(e)).clone(),
            },
            SystemKind::Splice { first, second, index } => {
                if e <= *index {
                    (*first.term(e)).clone()
                } else {
                    (*second.term(e)).clone()
                }
            }
        }
    }

    /// `Some(n)` when `a_e = m^n` by construction, so questions about the term
    /// reduce to comparing degrees.
    pub fn degree_form(&self, e: u32) -> Option<BigUint> {
        let q = || self.ctx().q(e);
        match self.kind() {
            SystemKind::Stabilized { source, .. } => match source.kind() {
                SystemKind::Rounding { base, t } if base.is_maximal() => Some(ceil_times(t, &q())),
                _ => None,
            },
            _ if e == 0 => match self.kind() {
                SystemKind::Custom { .. } | SystemKind::Termwise { .. } => None,
                _ => Some(BigUint::zero()),
            },
            SystemKind::Rounding { base, t } if base.is_maximal() => Some(ceil_times(t, &(q() - 1u32))),
            SystemKind::PowerFamily { base, mode } if base.is_maximal() => Some(match mode {
                PowerMode::Pe => q(),
                PowerMode::PeMinus1 => q() - 1u32,
            }),
            SystemKind::RoundingStab { t } => Some(ceil_times(t, &q())),
            SystemKind::BracketFamily(i) | SystemKind::Constant(i) if self.ctx().d() == 1 || i.is_unit() => {
                if i.is_zero() {
                    None
                } else if i.is_unit() {
                    Some(BigUint::zero())
                } else {
                    let n = i.generators()[0].degree();
                    Some(match self.kind() {
                        SystemKind::BracketFamily(_) => n * q(),
                        _ => n,
                    })
                }
            }
            SystemKind::Explicit { prefix, tail } if e as usize > prefix.len() => tail.degree_form(e),
            SystemKind::Splice { first, second, index } => {
                if e <= *index {
                    first.degree_form(e)
                } else {
                    second.degree_form(e)
                }
            }
            _ => None,
        }
    }

    /// `ℓ(S/a_e)`, without materializing powers of the maximal ideal.
    pub fn colength(&self, e: u32) -> crate::monomial::Colength {
        match self.degree_form(e) {
            // #{α ∈ N^d : |α| < n} = binom(n + d - 1, d)
            Some(n) => {
                let d = BigUint::from(self.ctx().d());
                if n.is_zero() {
                    crate::monomial::Colength::Finite(BigUint::zero())
                } else {
                    crate::monomial::Colength::Finite(num_integer::binomial(n + &d - 1u32, d))
                }
            }
            None => self.term(e).colength(),
        }
    }

    /// Largest degree of a standard monomial of `a_e`; `None` for the unit ideal.
    pub fn max_standard_degree(&self, e: u32) -> Result<Option<BigUint>> {
        match self.degree_form(e) {
            Some(n) if n.is_zero() => Ok(None),
            Some(n) => Ok(Some(n - 1u32)),
            None => self.term(e).max_standard_degree(),
        }
    }

    /// Membership `x^beta ∈ a_e`, using structure where it avoids materializing `a_e`.
    pub fn contains(&self, e: u32, beta: &ExponentVector) -> bool {
        let ctx = self.ctx();
        assert_eq!(beta.dim(), ctx.d(), "exponent dimension mismatch");
        let q = || ctx.q(e);
        match self.kind() {
            SystemKind::Custom { contains: Some(f), .. } => f(e, beta),
            SystemKind::Custom { .. } => self.term(e).contains(beta),
            SystemKind::Stabilized { source, j } => match (source.kind(), j) {
                (SystemKind::Minimal(_), Some(j)) => j
                    .generators()
                    .iter()
                    .filter_map(|mu| beta.checked_sub(mu))
                    .any(|rest| source.contains(e, &rest)),
                (SystemKind::Colon(i), _) => i.generators().iter().any(|g| g.scale(&q()).divides(beta)),
                (SystemKind::Rounding { t, .. }, _) => beta.degree() >= ceil_times(t, &q()),
                _ => self.term(e).contains(beta),
            },
            SystemKind::Termwise { op, inputs } => self.termwise_contains(op, inputs, e, beta),
            _ if e == 0 => true,
            SystemKind::Minimal(j) => MinimalMembership::new(ctx, j).contains(e, beta),
            SystemKind::Colon(j) => {
                let q = q();
                j.generators().iter().all(|g| {
                    let shifted = beta.add(g);
                    j.generators().iter().any(|h| h.scale(&q).divides(&shifted))
                })
            }
            SystemKind::Rounding { base, t } if base.is_maximal() => {
                beta.degree() >= ceil_times(t, &(q() - 1u32))
            }
            SystemKind::BracketFamily(i) => {
                let q = q();
                i.generators().iter().any(|g| g.scale(&q).divides(beta))
            }
            SystemKind::PowerFamily { base, mode } if base.is_maximal() => {
                let n = match mode {
                    PowerMode::Pe => q(),
                    PowerMode::PeMinus1 => q() - 1u32,
                };
                beta.degree() >= n
            }
            SystemKind::RoundingStab { t } => beta.degree() >= ceil_times(t, &q()),
            SystemKind::Constant(i) => i.contains(beta),
            SystemKind::Explicit { prefix, tail } => match prefix.get(e as usize - 1) {
                Some(i) => i.contains(beta),
                None => tail.contains(e, beta),
            },
            SystemKind::Splice { first, second, index } => {
                if e <= *index {
                    first.contains(e, beta)
                } else {
                    second.contains(e, beta)
                }
            }
            _ => self.term(e).contains(beta),
        }
    }

    fn termwise_contains(&self, op: &TermwiseOp, inputs: &[FGradedSystem], e: u32, beta: &ExponentVector) -> bool {
        match op {
            TermwiseOp::Sum => inputs.iter().any(|s| s.contains(e, beta)),
            TermwiseOp::Intersect => inputs.iter().all(|s| s.contains(e, beta)),
            TermwiseOp::Product => product_contains(inputs, e, beta),
            TermwiseOp::ColonTwist { f, t } => {
                let n = twist_exponent(t, &self.ctx().q(e));
                inputs[0].contains(e, &beta.add(&f.scale(&n)))
            }
            TermwiseOp::IntegralClosure => self.term(e).contains(beta),
        }
    }
}

fn product_contains(inputs: &[FGradedSystem], e: u32, beta: &ExponentVector) -> bool {
    match inputs {
        [] => true,
        [last] => last.contains(e, beta),
        [head, rest @ ..] => head
            .term(e)
            .generators()
            .iter()
            .filter_map(|g| beta.checked_sub(g))
            .any(|r| product_contains(rest, e, &r)),
    }
}

/// `max(⌈t q⌉ - 1, 0)`.
fn twist_exponent(t: &Rational, q: &BigUint) -> BigUint {
    let c = ceil_times(t, q);
    if c.is_zero() {
        c
    } else {
        c - BigUint::one()
    }
}

fn apply_termwise(ctx: &SystemContext, op: &TermwiseOp, terms: &[Arc<MonomialIdeal>], e: u32) -> MonomialIdeal {
    let d = ctx.d();
    match op {
        TermwiseOp::Product => terms
            .iter()
            .fold(MonomialIdeal::unit(d), |acc, t| acc.product(t).expect("same dimension")),
        TermwiseOp::Sum => terms
            .iter()
            .fold(MonomialIdeal::zero(d), |acc, t| acc.sum(t).expect("same dimension")),
        TermwiseOp::Intersect => terms
            .iter()
            .fold(MonomialIdeal::unit(d), |acc, t| acc.intersect(t).expect("same dimension")),
        TermwiseOp::IntegralClosure => {
            if terms[0].is_zero() {
                (*terms[0]).clone()
            } else {
                integral_closure(&terms[0]).expect("nonzero ideal")
            }
        }
        TermwiseOp::ColonTwist { f, t } => {
            let n = twist_exponent(t, &ctx.q(e));
            terms[0].colon_monomial(&f.scale(&n)).expect("same dimension")
        }
    }
}

/// Membership in `prod_{i<e} J^{[p^i]}` without expanding the product:
/// `beta ∈ a_e` iff some generator `v <= beta` has `⌊(beta - v)/p⌋ ∈ a_{e-1}`.
pub(crate) struct MinimalMembership<'a> {
    p: BigUint,
    gens: &'a [ExponentVector],
    max_gen: ExponentVector,
    memo: HashMap<(u32, ExponentVector), bool>,
}

impl<'a> MinimalMembership<'a> {
    pub(crate) fn new(ctx: &SystemContext, j: &'a MonomialIdeal) -> Self {
        Self {
            p: BigUint::from(ctx.p()),
            gens: j.generators(),
            max_gen: j.max_corner(),
            memo: HashMap::new(),
        }
    }

    /// Componentwise bound on the generators of `a_e`; coordinates above it are irrelevant.
    fn cap(&self, e: u32) -> ExponentVector {
        // max_gen * (p^e - 1) / (p - 1)
        let geometric: BigUint = (0..e).map(|i| self.p.pow(i)).sum();
        self.max_gen.scale(&geometric)
    }

    pub(crate) fn contains(&mut self, e: u32, beta: &ExponentVector) -> bool {
        if e == 0 {
            return true;
        }
        let beta = beta.cap(&self.cap(e));
        self.rec(e, beta)
    }

    fn rec(&mut self, e: u32, beta: ExponentVector) -> bool {
        if e == 0 {
            return true;
        }
        if let Some(&hit) = self.memo.get(&(e, beta.clone())) {
            return hit;
        }
        let cap = self.cap(e - 1);
        let mut found = false;
        for g in self.gens {
            if let Some(rest) = beta.checked_sub(g) {
                let next = rest.div_floor(&self.p).cap(&cap);
                if self.rec(e - 1, next) {
                    found = true;
                    break;
                }
            }
        }
        self.memo.insert((e, beta), found);
        found
    }
}

/// Result of a finite-depth axiom check. `Ok` certifies the axiom only up to `depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    Ok { depth: u32 },
    Violation { e: u32, f: Option<u32>, witness: ExponentVector },
}

impl Certificate {
    pub fn is_ok(&self) -> bool {
        matches!(self, Certificate::Ok { .. })
    }
}

/// Checks `a_e^{[p^f]} a_f ⊆ a_{e+f}` for `e, f >= 1`, `e + f <= depth`, in
/// lexicographic order of `(e + f, e)`.
pub fn verify_f_graded(sys: &FGradedSystem, depth: u32) -> Certificate {
    let ctx = sys.ctx();
    let d = ctx.d();
    for total in 2..=depth {
        for e in 1..total {
            let f = total - e;
            if let (Some(ne), Some(nf), Some(nt)) = (sys.degree_form(e), sys.degree_form(f), sys.degree_form(total)) {
                // m^{[p^f] ne} m^{nf} is generated in the single degree p^f ne + nf.
                let low = ne * ctx.q(f) + nf;
                if low < nt {
                    return Certificate::Violation {
                        e,
                        f: Some(f),
                        witness: last_axis(d, low),
                    };
                }
                continue;
            }
            let lhs = sys
                .term(e)
                .frobenius_power(&ctx.q(f))
                .product(&sys.term(f))
                .expect("same dimension");
            if let Some(w) = lhs.generators().iter().find(|g| !sys.contains(total, g)) {
                return Certificate::Violation {
                    e,
                    f: Some(f),
                    witness: w.clone(),
                };
            }
        }
    }
    Certificate::Ok { depth }
}

/// Checks `b_e^{[p]} ⊆ b_{e+1}` for `1 <= e < depth`; index 0 is not constrained.
pub fn verify_p_family(sys: &FGradedSystem, depth: u32) -> Certificate {
    let p = BigUint::from(sys.ctx().p());
    let d = sys.ctx().d();
    for e in 1..depth {
        if let (Some(n), Some(next)) = (sys.degree_form(e), sys.degree_form(e + 1)) {
            let low = n * &p;
            if low < next {
                return Certificate::Violation {
                    e,
                    f: None,
                    witness: last_axis(d, low),
                };
            }
            continue;
        }
        let term = sys.term(e);
        if let Some(w) = term
            .generators()
            .iter()
            .map(|g| g.scale(&p))
            .find(|g| !sys.contains(e + 1, g))
        {
            return Certificate::Violation { e, f: None, witness: w };
        }
    }
    Certificate::Ok { depth }
}

/// `x_d^n`, the lexicographically first monomial of degree `n`.
fn last_axis(d: usize, n: BigUint) -> ExponentVector {
    let mut c = vec![BigUint::zero(); d];
    c[d - 1] = n;
    ExponentVector::new(c)
}
