//! Enumeration of upward-closed lattice sets inside a finite box.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::monomial::ExponentVector;

/// Inclusive per-coordinate upper bounds `[0, b_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxBounds(Vec<u64>);

/// Boxes beyond this many coordinates per axis are not enumerable in practice.
const MAX_AXIS: u64 = 1 << 24;

impl BoxBounds {
    pub fn new(bounds: Vec<u64>) -> Result<Self> {
        if bounds.iter().any(|&b| b > MAX_AXIS) {
            return Err(Error::BoxTooLarge);
        }
        Ok(Self(bounds))
    }

    pub fn from_corner(corner: &ExponentVector) -> Result<Self> {
        let bounds = corner
            .coords()
            .iter()
            .map(|c| u64::try_from(c).map_err(|_| Error::BoxTooLarge))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bounds)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn bounds(&self) -> &[u64] {
        &self.0
    }

    pub fn corner(&self) -> ExponentVector {
        ExponentVector::from_u64s(&self.0)
    }
}

/// Minimal points of `{x in box : pred(x)}` for a predicate that is upward closed
/// inside the box. Every prefix of the first `d - 1` coordinates is visited and
/// its threshold in the last coordinate is found by binary search.
pub fn upward_closed_minimals(
    bounds: &BoxBounds,
    mut pred: impl FnMut(&[u64]) -> bool,
) -> Vec<ExponentVector> {
    let d = bounds.dim();
    let b = bounds.bounds();
    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut point = vec![0u64; d];
    loop {
        // Upper bound for the threshold: found points with a smaller prefix already
        // cap it, because the set is upward closed.
        let mut hi = b[d - 1];
        for f in &found {
            if f[..d - 1].iter().zip(&point[..d - 1]).all(|(a, c)| a <= c) {
                hi = hi.min(f[d - 1]);
            }
        }
        point[d - 1] = hi;
        if pred(&point) {
            let mut lo = 0u64;
            let mut top = hi;
            while lo < top {
                let mid = lo + (top - lo) / 2;
                point[d - 1] = mid;
                if pred(&point) {
                    top = mid;
                } else {
                    lo = mid + 1;
                }
            }
            point[d - 1] = lo;
            let dominated = found.iter().any(|f| f.iter().zip(&point).all(|(a, c)| a <= c));
            if !dominated {
                found.push(point.clone());
            }
        }
        // Advance the prefix odometer.
        let mut i = d - 1;
        loop {
            if i == 0 {
                return finish(found);
            }
            i -= 1;
            if point[i] < b[i] {
                point[i] += 1;
                for p in point.iter_mut().take(d - 1).skip(i + 1) {
                    *p = 0;
                }
                break;
            }
        }
    }
}

fn finish(found: Vec<Vec<u64>>) -> Vec<ExponentVector> {
    let mut out: Vec<ExponentVector> = found
        .iter()
        .filter(|f| {
            !found
                .iter()
                .any(|g| g != *f && g.iter().zip(f.iter()).all(|(a, c)| a <= c))
        })
        .map(|f| ExponentVector::from_u64s(f))
        .collect();
    out.sort_unstable();
    out
}

pub fn to_u64s(v: &ExponentVector) -> Option<Vec<u64>> {
    v.coords().iter().map(|c| u64::try_from(c).ok()).collect()
}

pub fn biguints(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&c| BigUint::from(c)).collect()
}
