//! Exact rational feasibility for `A x = b, x >= 0` by phase-one simplex.
//!
//! Bland's rule keeps the pivoting finite; all arithmetic is in `BigRational`.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Returns a feasible point of `A x = b, x >= 0`, or `None` if the system is infeasible.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "one right-hand side per row");
    let cols = a.first().map_or(0, Vec::len);
    let width = cols + rows;

    // Row layout: [original | artificial | rhs], each row sign-normalized so rhs >= 0.
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), cols, "rectangular constraint matrix");
        let flip = rhs.is_negative();
        let mut r: Vec<Rational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..rows).map(|j| if j == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
        r.push(if flip { -rhs } else { rhs.clone() });
        tab.push(r);
    }
    let mut basis: Vec<usize> = (cols..width).collect();

    // Reduced costs of the phase-one objective `sum of artificials`.
    let mut cost: Vec<Rational> = vec![Rational::zero(); width + 1];
    for r in &tab {
        for j in 0..cols {
            cost[j] -= &r[j];
        }
        cost[width] -= &r[width];
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, r) in tab.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase one is bounded below");
        let pivot = tab[pivot_row][enter].clone();
        for v in tab[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        let prow = tab[pivot_row].clone();
        for (i, r) in tab.iter_mut().enumerate() {
            if i != pivot_row && !r[enter].is_zero() {
                let factor = r[enter].clone();
                for (v, pv) in r.iter_mut().zip(&prow) {
                    *v -= &factor * pv;
                }
            }
        }
        let factor = cost[enter].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            *v -= &factor * pv;
        }
        basis[pivot_row] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &j) in basis.iter().enumerate() {
        if j < cols {
            x[j] = tab[i][width].clone();
        }
    }
    Some(x)
}

pub fn is_feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    feasible_point(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;

    fn r(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn simple_systems() {
        // x + y = 1, x - y = 0 -> (1/2, 1/2)
        let a = vec![vec![r(1), r(1)], vec![r(1), r(-1)]];
        let x = feasible_point(&a, &[r(1), r(0)]).unwrap();
        assert_eq!(x, vec![rational(1, 2), rational(1, 2)]);
        // x + y = 1, x + y = 2 is infeasible
        let a = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        assert!(!is_feasible(&a, &[r(1), r(2)]));
        // x - y = -3 with x, y >= 0 is feasible (y = 3)
        assert!(is_feasible(&[vec![r(1), r(-1)]], &[r(-3)]));
        // x + y = -1 is not
        assert!(!is_feasible(&[vec![r(1), r(1)]], &[r(-1)]));
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        let x = feasible_point(&a, &[r(6), r(12), r(2)]).unwrap();
        for (row, rhs) in a.iter().zip([6, 12, 2]) {
            let lhs: Rational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert_eq!(lhs, r(rhs));
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
