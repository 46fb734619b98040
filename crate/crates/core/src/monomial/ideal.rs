use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ExponentVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Zero,
    Unit,
    Proper,
}

/// A monomial ideal of `k[x_1, ..., x_d]`, stored by its minimal generators.
///
/// Generators are an antichain under the termwise order, sorted lexicographically,
/// so structural equality is ideal equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    dim: usize,
    kind: IdealKind,
    generators: Vec<ExponentVector>,
}

/// Number of standard monomials, or infinite when the ideal is not m-primary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(BigUint),
    Infinite,
}

impl Colength {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "INFINITE"),
        }
    }
}

fn check_dim(expected: usize, v: &ExponentVector) -> Result<()> {
    if v.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.dim(),
        });
    }
    Ok(())
}

/// Keeps the termwise-minimal elements. Input must be dimension-checked.
fn antichain(dim: usize, mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_unstable();
    gens.dedup();
    match dim {
        1 => gens.truncate(1),
        2 => {
            // Lex order: x ascending, then y ascending; keep strict new y minima.
            let mut kept: Vec<ExponentVector> = Vec::new();
            for g in gens {
                if kept.last().is_none_or(|k| g[1] < k[1]) {
                    kept.push(g);
                }
            }
            return kept;
        }
        _ => {
            let mut kept: Vec<ExponentVector> = Vec::new();
            for g in gens {
                // Any divisor of g is lexicographically smaller, hence already seen.
                if !kept.iter().any(|k| k.divides(&g)) {
                    kept.push(g);
                }
            }
            return kept;
        }
    }
    gens
}

impl MonomialIdeal {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            kind: IdealKind::Zero,
            generators: Vec::new(),
        }
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            kind: IdealKind::Unit,
            generators: vec![ExponentVector::zero(dim)],
        }
    }

    /// The homogeneous maximal ideal `m = <x_1, ..., x_d>`.
    pub fn maximal(dim: usize) -> Self {
        let mut generators: Vec<_> = (0..dim).map(|i| ExponentVector::unit(dim, i)).collect();
        generators.sort_unstable();
        Self {
            dim,
            kind: IdealKind::Proper,
            generators,
        }
    }

    pub fn principal(g: ExponentVector) -> Self {
        let dim = g.dim();
        Self::from_antichain(dim, vec![g])
    }

    /// Minimalizes an arbitrary generating set.
    pub fn minimalize(dim: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            check_dim(dim, g)?;
        }
        Ok(Self::from_antichain(dim, antichain(dim, gens)))
    }

    pub fn from_u64s(dim: usize, gens: &[&[u64]]) -> Result<Self> {
        Self::minimalize(dim, gens.iter().map(|g| ExponentVector::from_u64s(g)).collect())
    }

    fn from_antichain(dim: usize, generators: Vec<ExponentVector>) -> Self {
        let kind = if generators.is_empty() {
            IdealKind::Zero
        } else if generators.len() == 1 && generators[0].is_zero() {
            IdealKind::Unit
        } else {
            IdealKind::Proper
        };
        Self {
            dim,
            kind,
            generators,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.kind == IdealKind::Zero
    }

    pub fn is_unit(&self) -> bool {
        self.kind == IdealKind::Unit
    }

    pub fn is_maximal(&self) -> bool {
        *self == Self::maximal(self.dim)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Membership of `x^alpha`. Panics if the dimensions differ.
    pub fn contains(&self, alpha: &ExponentVector) -> bool {
        assert_eq!(alpha.dim(), self.dim, "exponent dimension mismatch");
        self.generators.iter().any(|g| g.divides(alpha))
    }

    pub fn contains_monomial(&self, alpha: &ExponentVector) -> Result<bool> {
        check_dim(self.dim, alpha)?;
        Ok(self.contains(alpha))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.same_dim(other)?;
        Ok(self.generators.iter().all(|g| other.contains(g)))
    }

    /// First generator of `self` outside `other`.
    pub fn first_escape(&self, other: &Self) -> Option<&ExponentVector> {
        self.generators.iter().find(|g| !other.contains(g))
    }

    /// `<g^q : g in gens>`; scaling preserves the antichain.
    pub fn frobenius_power(&self, q: &BigUint) -> Self {
        if q.is_zero() {
            return if self.is_zero() { self.clone() } else { Self::unit(self.dim) };
        }
        Self {
            dim: self.dim,
            kind: self.kind,
            generators: self.generators.iter().map(|g| g.scale(q)).collect(),
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.dim));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.add(b));
            }
        }
        Ok(Self::from_antichain(self.dim, antichain(self.dim, gens)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let gens = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        Ok(Self::from_antichain(self.dim, antichain(self.dim, gens)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.dim));
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.join(b));
            }
        }
        Ok(Self::from_antichain(self.dim, antichain(self.dim, gens)))
    }

    /// `self : x^g`.
    pub fn colon_monomial(&self, g: &ExponentVector) -> Result<Self> {
        check_dim(self.dim, g)?;
        let gens = self.generators.iter().map(|h| h.saturating_sub(g)).collect();
        Ok(Self::from_antichain(self.dim, antichain(self.dim, gens)))
    }

    /// `self : other`. Colon by the zero ideal is the unit ideal.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        if other.is_zero() || self.is_unit() {
            return Ok(Self::unit(self.dim));
        }
        let mut acc = Self::unit(self.dim);
        for g in &other.generators {
            acc = acc.intersect(&self.colon_monomial(g)?)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Ordinary power `self^n` by repeated squaring.
    pub fn power(&self, n: &BigUint) -> Self {
        if n.is_zero() {
            return Self::unit(self.dim);
        }
        if self.is_zero() || self.is_unit() {
            return self.clone();
        }
        if self.is_maximal() {
            return Self::maximal_power(self.dim, n);
        }
        if self.generators.len() == 1 {
            return Self::principal(self.generators[0].scale(n));
        }
        let mut result = Self::unit(self.dim);
        let mut base = self.clone();
        let bits = n.bits();
        for i in 0..bits {
            if n.bit(i) {
                result = result.product(&base).expect("same dimension");
            }
            if i + 1 < bits {
                base = base.product(&base).expect("same dimension");
            }
        }
        result
    }

    /// `m^n`: all monomials of degree exactly `n`.
    pub fn maximal_power(dim: usize, n: &BigUint) -> Self {
        if n.is_zero() {
            return Self::unit(dim);
        }
        let mut gens = Vec::new();
        let mut prefix = Vec::with_capacity(dim);
        compositions(dim, n.clone(), &mut prefix, &mut gens);
        gens.sort_unstable();
        Self::from_antichain(dim, gens)
    }

    pub fn is_m_primary(&self) -> bool {
        match self.kind {
            IdealKind::Unit => true,
            IdealKind::Zero => false,
            IdealKind::Proper => (0..self.dim).all(|i| self.pure_power(i).is_some()),
        }
    }

    /// Exponent `a` of a pure-power generator `x_i^a`, if present.
    pub fn pure_power(&self, i: usize) -> Option<&BigUint> {
        self.generators
            .iter()
            .find(|g| g.support_size() <= 1 && !g[i].is_zero())
            .map(|g| &g[i])
            .or_else(|| self.is_unit().then(|| &self.generators[0][i]))
    }

    /// Componentwise maximum over the generators.
    pub fn max_corner(&self) -> ExponentVector {
        self.generators
            .iter()
            .fold(ExponentVector::zero(self.dim), |acc, g| acc.join(g))
    }

    /// `ℓ(S/I)` by slicing on the last coordinate.
    pub fn colength(&self) -> Colength {
        if !self.is_m_primary() {
            return Colength::Infinite;
        }
        Colength::Finite(colength_rec(self.dim, &self.generators))
    }

    /// Largest total degree of a standard monomial; `None` for the unit ideal.
    /// `m^n ⊆ I` exactly when `n` exceeds this value.
    pub fn max_standard_degree(&self) -> Result<Option<BigUint>> {
        if !self.is_m_primary() {
            return Err(Error::NotMPrimary { index: None });
        }
        if self.is_unit() {
            return Ok(None);
        }
        Ok(Some(max_degree_rec(self.dim, &self.generators)))
    }
}

fn compositions(dim: usize, rest: BigUint, prefix: &mut Vec<BigUint>, out: &mut Vec<ExponentVector>) {
    if prefix.len() + 1 == dim {
        prefix.push(rest);
        out.push(ExponentVector::new(prefix.clone()));
        prefix.pop();
        return;
    }
    let mut k = BigUint::zero();
    while k <= rest {
        prefix.push(k.clone());
        compositions(dim, &rest - &k, prefix, out);
        prefix.pop();
        k += 1u32;
    }
}

/// Slabs `[c_j, c_{j+1})` of the last coordinate and the projected slice ideal
/// generated by everything with last coordinate `<= c_j`. Slices are m-primary
/// because the input is.
fn slabs(dim: usize, gens: &[ExponentVector]) -> Vec<(BigUint, BigUint, Vec<ExponentVector>)> {
    let last = dim - 1;
    let mut sorted: Vec<&ExponentVector> = gens.iter().collect();
    sorted.sort_by(|a, b| a[last].cmp(&b[last]));
    let mut out = Vec::new();
    let mut slice: Vec<ExponentVector> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let height = sorted[i][last].clone();
        while i < sorted.len() && sorted[i][last] == height {
            slice.push(ExponentVector::new(sorted[i].coords()[..last].to_vec()));
            i += 1;
        }
        slice = antichain(last, std::mem::take(&mut slice));
        if i < sorted.len() {
            let next = sorted[i][last].clone();
            out.push((height, next, slice.clone()));
        }
    }
    out
}

fn colength_rec(dim: usize, gens: &[ExponentVector]) -> BigUint {
    if gens.len() == 1 && gens[0].is_zero() {
        return BigUint::zero();
    }
    if dim == 1 {
        return gens.iter().map(|g| g[0].clone()).min().unwrap_or_default();
    }
    slabs(dim, gens)
        .into_iter()
        .map(|(lo, hi, slice)| (hi - lo) * colength_rec(dim - 1, &slice))
        .sum()
}

fn max_degree_rec(dim: usize, gens: &[ExponentVector]) -> BigUint {
    if dim == 1 {
        let a = gens.iter().map(|g| g[0].clone()).min().unwrap_or_default();
        return a - BigUint::one();
    }
    slabs(dim, gens)
        .into_iter()
        .filter(|(_, _, slice)| !(slice.len() == 1 && slice[0].is_zero()))
        .map(|(_, hi, slice)| (hi - BigUint::one()) + max_degree_rec(dim - 1, &slice))
        .max()
        .unwrap_or_default()
}

impl fmt::Display for MonomialIdeal {
    /// Ideal text format: `x1^3, x2^6`; `1` for the unit ideal and `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            IdealKind::Zero => return write!(f, "0"),
            IdealKind::Unit => return write!(f, "1"),
            IdealKind::Proper => {}
        }
        // Descending lex order lists x1-heavy generators first.
        for (n, g) in self.generators.iter().rev().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", MonomialText(g))?;
        }
        Ok(())
    }
}

/// Displays one exponent vector as `x1^a*x2^b`.
pub struct MonomialText<'a>(pub &'a ExponentVector);

impl fmt::Display for MonomialText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, c)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}
