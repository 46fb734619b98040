//! Volumes `lim ℓ(S/a_e) / p^{ed}` and the comparison with the p-body complement.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monomial::{Colength, MonomialIdeal};
use crate::pbody::{pbody_approx, ScaledStaircase};
use crate::rational::{ceil_nonneg, format_rational, from_biguint, to_decimal, Rational};
use crate::stabilization::StabWindow;
use crate::systems::FGradedSystem;

/// A Lebesgue measure that may be infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Finite(Rational),
    Infinite,
}

impl Measure {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Measure::Finite(r) => Some(r),
            Measure::Infinite => None,
        }
    }
}

/// Volume of `R^d_{>=0} \ (log I + R^d_{>=0})`, slicing on the last coordinate.
pub fn staircase_complement_volume(ideal: &MonomialIdeal) -> Measure {
    if ideal.is_zero() {
        return Measure::Infinite;
    }
    let gens: Vec<Vec<Rational>> = ideal
        .generators()
        .iter()
        .map(|g| g.coords().iter().map(from_biguint).collect())
        .collect();
    match slab_volume(ideal.dim(), &gens) {
        Some(v) => Measure::Finite(v),
        None => Measure::Infinite,
    }
}

/// `None` means infinite.
fn slab_volume(dim: usize, gens: &[Vec<Rational>]) -> Option<Rational> {
    if dim == 0 {
        return Some(if gens.is_empty() { Rational::one() } else { Rational::zero() });
    }
    let mut levels: Vec<Rational> = gens.iter().map(|g| g[dim - 1].clone()).collect();
    levels.sort();
    levels.dedup();
    // Below the lowest level the section is empty, which has finite measure only in dimension 0.
    let mut total = Rational::zero();
    let mut prev = Rational::zero();
    let mut section_empty = true;
    let mut section: Vec<Vec<Rational>> = Vec::new();
    let mut section_volume: Option<Rational> = if dim == 1 { Some(Rational::one()) } else { None };
    for level in &levels {
        let width = level - &prev;
        if !width.is_zero() {
            if section_empty && dim > 1 {
                return None;
            }
            total += width * section_volume.clone()?;
        }
        section.extend(
            gens.iter()
                .filter(|g| g[dim - 1] == *level)
                .map(|g| g[..dim - 1].to_vec()),
        );
        section_empty = false;
        section_volume = slab_volume(dim - 1, &minimal_points(section.clone()));
        prev = level.clone();
    }
    // Above the top level the section must already be everything.
    match section_volume {
        Some(v) if v.is_zero() => Some(total),
        _ => None,
    }
}

fn minimal_points(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    let leq = |a: &Vec<Rational>, b: &Vec<Rational>| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for p in pts {
        if !out.iter().any(|q| leq(q, &p)) {
            out.retain(|q| !leq(&p, q));
            out.push(p);
        }
    }
    out
}

/// Complement volume of a resolution-`k` slice: the staircase volume over `p^{kd}`.
pub fn pbody_complement_volume(s: &ScaledStaircase) -> Result<Rational> {
    match staircase_complement_volume(&s.ideal) {
        Measure::Finite(v) => {
            let scale = BigUint::from(s.p).pow(s.k * s.d as u32);
            Ok(v / from_biguint(&scale))
        }
        Measure::Infinite => Err(Error::NotMPrimary { index: Some(s.k) }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeEntry {
    pub e: u32,
    pub colength: BigUint,
    /// `colength / p^{ed}`.
    pub ratio: Rational,
}

/// `m^{⌈c p^e⌉} ⊆ a_e` with `c = N + B/(p-1)`, `B = binom(n+d-1, n)`, `m^n ⊆ a_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BblCertificate {
    pub n: BigUint,
    pub b: BigUint,
    pub big_n: BigUint,
    pub c: Rational,
    /// Whether the containment held for every checked `e`.
    pub verified: bool,
    /// First index where it failed.
    pub failure: Option<u32>,
    pub depth: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub p: u64,
    pub d: usize,
    pub entries: Vec<VolumeEntry>,
    /// The last ratio; no rate model is fitted.
    pub extrapolated: Option<Rational>,
    pub extrapolation: &'static str,
    pub pbody_k: Option<u32>,
    pub pbody_volume: Option<Rational>,
    pub discrepancy: Option<Rational>,
    pub bbl: Option<BblCertificate>,
}

fn rational_json(r: &Rational) -> Value {
    json!({ "exact": format_rational(r), "decimal": to_decimal(r, 6) })
}

impl VolumeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("e,colength,ratio_num,ratio_den,ratio_decimal\n");
        for en in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                en.e,
                en.colength,
                en.ratio.numer(),
                en.ratio.denom(),
                to_decimal(&en.ratio, 6)
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|en| {
                json!({
                    "e": en.e,
                    "colength": en.colength.to_string(),
                    "ratio": rational_json(&en.ratio),
                })
            })
            .collect();
        let opt = |r: &Option<Rational>| r.as_ref().map(rational_json).unwrap_or(Value::Null);
        let bbl = self.bbl.as_ref().map_or(Value::Null, |b| {
            json!({
                "n": b.n.to_string(),
                "binomial": b.b.to_string(),
                "N": b.big_n.to_string(),
                "c": rational_json(&b.c),
                "verified": b.verified,
                "failure": b.failure,
                "depth": b.depth,
            })
        });
        json!({
            "p": self.p,
            "d": self.d,
            "entries": entries,
            "extrapolated": opt(&self.extrapolated),
            "extrapolation": self.extrapolation,
            "pbody_k": self.pbody_k,
            "pbody_volume": opt(&self.pbody_volume),
            "discrepancy": opt(&self.discrepancy),
            "bbl": bbl,
        })
    }
}

/// Exact `ℓ(S/a_e)/p^{ed}` for `1 <= e <= depth`.
pub fn volume_sequence(sys: &FGradedSystem, depth: u32) -> Result<VolumeReport> {
    let ctx = sys.ctx();
    let mut entries = Vec::new();
    for e in 1..=depth {
        let colength = match sys.colength(e) {
            Colength::Finite(n) => n,
            Colength::Infinite => return Err(Error::NotMPrimary { index: Some(e) }),
        };
        let den = ctx.q(e).pow(ctx.d() as u32);
        let ratio = from_biguint(&colength) / from_biguint(&den);
        entries.push(VolumeEntry { e, colength, ratio });
    }
    let extrapolated = entries.last().map(|en| en.ratio.clone());
    Ok(VolumeReport {
        p: ctx.p(),
        d: ctx.d(),
        entries,
        extrapolated,
        extrapolation: "last ratio",
        pbody_k: None,
        pbody_volume: None,
        discrepancy: None,
        bbl: None,
    })
}

/// The BBL constant from the pigeonhole bound, checked for `e <= depth`.
pub fn bbl_certificate(sys: &FGradedSystem, depth: u32) -> Result<BblCertificate> {
    let ctx = sys.ctx();
    let n = match sys.max_standard_degree(1) {
        Ok(Some(s)) => s + 1u32,
        Ok(None) => BigUint::zero(),
        Err(_) => return Err(Error::NotMPrimary { index: Some(1) }),
    };
    let d = BigUint::from(ctx.d());
    let b = binomial(&n + &d - 1u32, n.clone());
    let pm1 = from_biguint(&BigUint::from(ctx.p() - 1));
    let slope = from_biguint(&b) / &pm1;
    // Least N with e + B((p^e-1)/(p-1) - e) <= (N + B/(p-1)) p^e for all e <= depth.
    let mut big_n = BigUint::zero();
    for e in 1..=depth {
        let q = from_biguint(&ctx.q(e));
        let ee = Rational::from_integer(e.into());
        let power = &ee + from_biguint(&b) * ((&q - Rational::one()) / &pm1 - &ee);
        let need = power / &q - &slope;
        if need > Rational::zero() {
            big_n = big_n.max(ceil_nonneg(&need)?);
        }
    }
    let c = from_biguint(&big_n) + &slope;
    let mut failure = None;
    for e in 1..=depth {
        let m = ceil_nonneg(&(&c * from_biguint(&ctx.q(e))))?;
        let ok = match sys.max_standard_degree(e) {
            Ok(Some(s)) => s < m,
            Ok(None) => true,
            Err(_) => false,
        };
        if !ok {
            failure = Some(e);
            break;
        }
    }
    Ok(BblCertificate {
        n,
        b,
        big_n,
        c,
        verified: failure.is_none(),
        failure,
        depth,
    })
}

/// Volume sequence to `depth`, the complement volume of the resolution-`k` p-body
/// slice, their discrepancy, and a BBL certificate.
pub fn das_meng_report(sys: &FGradedSystem, depth: u32, k: u32, window: &StabWindow) -> Result<VolumeReport> {
    if sys.max_standard_degree(1).is_err() {
        return Err(Error::NotMPrimary { index: Some(1) });
    }
    let mut report = volume_sequence(sys, depth)?;
    let slice = pbody_approx(sys, k, window)?;
    let pv = pbody_complement_volume(&slice)?;
    report.discrepancy = report.extrapolated.as_ref().map(|r| {
        let diff = r - &pv;
        if diff < Rational::zero() {
            -diff
        } else {
            diff
        }
    });
    report.pbody_k = Some(k);
    report.pbody_volume = Some(pv);
    report.bbl = Some(bbl_certificate(sys, depth)?);
    Ok(report)
}

#[cfg(test)]
mod tests;
