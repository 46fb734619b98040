//! Independent brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use frobkit_core::monomial::ExponentVector;
use frobkit_core::rational::Rational;
use frobkit_core::{MonomialIdeal, SystemContext};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub fn ctx(p: u64, d: usize) -> SystemContext {
    SystemContext::new(p, d).unwrap()
}

pub fn ev(c: &[u64]) -> ExponentVector {
    ExponentVector::from_u64s(c)
}

pub fn to_u64s(v: &ExponentVector) -> Vec<u64> {
    v.coords().iter().map(|c| u64::try_from(c).unwrap()).collect()
}

/// Membership straight from a generator list, no antichain assumed.
pub fn divides_any(gens: &[Vec<u64>], a: &[u64]) -> bool {
    gens.iter().any(|g| g.iter().zip(a).all(|(x, y)| x <= y))
}

/// Every point of `[0, b_1] x ... x [0, b_d]`.
pub fn box_points(bounds: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Minimal elements of a finite point set under the termwise order.
pub fn minimal_elements(points: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let leq = |a: &Vec<u64>, b: &Vec<u64>| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<Vec<u64>> = points
        .iter()
        .filter(|p| !points.iter().any(|q| q != *p && leq(q, p)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn gens_of(ideal: &MonomialIdeal) -> Vec<Vec<u64>> {
    ideal.generators().iter().map(to_u64s).collect()
}

/// Number of lattice points outside the ideal, counted inside a box that must
/// contain every standard monomial.
pub fn brute_colength(ideal: &MonomialIdeal, bounds: &[u64]) -> usize {
    let gens = gens_of(ideal);
    box_points(bounds).iter().filter(|a| !divides_any(&gens, a)).count()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn qb(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Solves a square system by Gauss-Jordan elimination; `None` if singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some(b)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1)
        .into_iter()
        .map(|mut s| {
            s.push(n - 1);
            s
        })
        .collect();
    with.extend(subsets(n - 1, k));
    with
}

/// Decides `alpha ∈ conv(V) + R^d_{>=0}` by enumerating basic solutions of
/// `sum c = 1, sum c_v v + s = alpha` with `c, s >= 0`: a feasible polyhedron in
/// standard form has a basic feasible solution.
pub fn newton_by_bases(alpha: &[Rational], v: &[Vec<u64>]) -> bool {
    let d = alpha.len();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for g in v {
        let mut c = vec![q(1)];
        c.extend(g.iter().map(|&x| q(x as i64)));
        cols.push(c);
    }
    for i in 0..d {
        let mut c = vec![q(0); d + 1];
        c[i + 1] = q(1);
        cols.push(c);
    }
    let mut rhs = vec![q(1)];
    rhs.extend(alpha.iter().cloned());
    let rows = d + 1;
    for basis in subsets(cols.len(), rows) {
        let a: Vec<Vec<Rational>> = (0..rows).map(|r| basis.iter().map(|&c| cols[c][r].clone()).collect()).collect();
        if let Some(x) = solve(a, rhs.clone()) {
            if x.iter().all(|xi| !xi.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// W-dominance from truncated digit expansions. Returns `Some` when the
/// depth-`t` bounds decide:
///   necessary: α ≥ partial + min_v/(p^t (p-1)) for some prefix,
///   sufficient: α ≥ partial + max_v/(p^t (p-1)) for some prefix.
pub fn w_series_oracle(alpha: &[Rational], v: &[Vec<u64>], p: u64, t: u32) -> Option<bool> {
    let d = alpha.len();
    let pq = q(p as i64);
    let tail_scale = Rational::one() / (pq.pow(t as i32) * (&pq - q(1)));
    let min_v: Vec<Rational> = (0..d).map(|i| q(v.iter().map(|g| g[i]).min().unwrap() as i64)).collect();
    let max_v: Vec<Rational> = (0..d).map(|i| q(v.iter().map(|g| g[i]).max().unwrap() as i64)).collect();
    let mut partials = vec![vec![q(0); d]];
    for i in 1..=t {
        let w = Rational::one() / pq.pow(i as i32);
        let mut next = Vec::with_capacity(partials.len() * v.len());
        for s in &partials {
            for g in v {
                next.push(s.iter().zip(g).map(|(a, &b)| a + q(b as i64) * &w).collect::<Vec<_>>());
            }
        }
        partials = next;
        partials.sort();
        partials.dedup();
    }
    let dominated = |bound: &Vec<Rational>| {
        partials.iter().any(|s| {
            (0..d).all(|i| alpha[i] >= &s[i] + &bound[i] * &tail_scale)
        })
    };
    if dominated(&max_v) {
        Some(true)
    } else if !dominated(&min_v) {
        Some(false)
    } else {
        None
    }
}

pub fn rational_point(num: &[u64], den: u64) -> Vec<Rational> {
    num.iter().map(|&n| Rational::new(BigInt::from(n), BigInt::from(den))).collect()
}

pub fn bigs(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

pub fn as_rational(n: &BigUint) -> Rational {
    qb(n)
}

/// Random generator lists in dimension `d`.
pub fn gens_strategy(d: usize, max_gens: usize, max_exp: u64) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, d), 1..=max_gens)
}

/// Random nonzero ideal in dimension 1..=max_d.
pub fn ideal_strategy(max_d: usize, max_gens: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_d).prop_flat_map(move |d| {
        gens_strategy(d, max_gens, max_exp).prop_map(move |g| ideal_from(d, &g))
    })
}

/// Random m-primary ideal: a pure power on every axis plus extra generators.
pub fn m_primary_strategy(d: usize, max_extra: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    (
        prop::collection::vec(1..=max_exp, d),
        prop::collection::vec(prop::collection::vec(0..=max_exp, d), 0..=max_extra),
    )
        .prop_map(move |(pure, extra)| {
            let mut gens = extra;
            for (i, &a) in pure.iter().enumerate() {
                let mut g = vec![0; d];
                g[i] = a;
                gens.push(g);
            }
            ideal_from(d, &gens)
        })
}

pub fn ideal_from(d: usize, gens: &[Vec<u64>]) -> MonomialIdeal {
    MonomialIdeal::minimalize(d, gens.iter().map(|g| ev(g)).collect()).unwrap()
}

pub fn prime_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}
