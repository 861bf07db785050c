//! Exact feasibility for systems `A x = b, x ≥ 0` over the rationals.
//!
//! Phase one of the simplex method on a dense tableau, with Bland's rule
//! so that degenerate pivots cannot cycle.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Returns a nonnegative solution of `A x = b`, or `None` when the system
/// is infeasible. Every row of `a` must have the same length.
pub fn find_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let rows = a.len();
    let vars = a.first().map_or(0, Vec::len);
    let cols = vars + rows;

    // tableau rows: [A | I | b], with every b made nonnegative
    let mut t: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            assert_eq!(row.len(), vars, "ragged constraint matrix");
            let flip = rhs.is_negative();
            let mut r: Vec<BigRational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
            r.extend((0..rows).map(|k| if k == i { one() } else { BigRational::zero() }));
            r.push(if flip { -rhs } else { rhs.clone() });
            r
        })
        .collect();
    let mut basis: Vec<usize> = (vars..cols).collect();

    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<BigRational> = (0..=cols)
        .map(|j| {
            if (vars..cols).contains(&j) {
                BigRational::zero()
            } else {
                -t.iter().map(|r| r[j].clone()).sum::<BigRational>()
            }
        })
        .collect();

    while let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[cols] / &row[enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !cost[cols].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); vars];
    for (i, &j) in basis.iter().enumerate() {
        if j < vars {
            x[j] = t[i][cols].clone();
        }
    }
    Some(x)
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x = &*x / &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, y) in r.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
    }
}
