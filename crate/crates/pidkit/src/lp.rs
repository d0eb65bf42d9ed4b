//! Exact fractional-covering optimum.
//!
//! The converse bounds come from programs of the form
//!
//! ```text
//! minimize   sum_n x_n
//! subject to sum_{n in S} x_n >= 1   for each constraint subset S
//!            x_n >= 0
//! ```
//!
//! solved here in exact rational arithmetic. Rather than running two-phase
//! simplex on the covering side, we solve the dual packing program
//! (`maximize sum y_S` subject to unit column caps), whose all-slack basis
//! is immediately feasible; strong duality gives the covering optimum. The
//! covering program is always feasible (all-ones) and bounded below, so the
//! dual optimum exists and the values coincide.

use num_traits::Zero;

use crate::ratio::{frac, Frac};

/// Exact optimum of the covering program over `n_vars` variables.
///
/// `constraints` lists the subsets S as 0-based variable indices. Bland's
/// rule keeps the pivoting cycle-free, and because every entry stays
/// rational the result is exact, not a tolerance.
#[allow(clippy::needless_range_loop)] // row eliminations index two rows at once
pub fn min_cover_value(n_vars: usize, constraints: &[Vec<usize>]) -> Frac {
    assert!(
        !constraints.is_empty(),
        "empty constraint list has optimum 0"
    );
    let m = constraints.len();
    // dual: rows = one cap per covering variable, columns = y then slacks
    let cols = m + n_vars;
    let mut tableau: Vec<Vec<Frac>> = vec![vec![Frac::zero(); cols]; n_vars];
    let mut rhs: Vec<Frac> = vec![frac(1, 1); n_vars];
    for (i, subset) in constraints.iter().enumerate() {
        for &var in subset {
            assert!(
                var < n_vars,
                "constraint references variable {var} of {n_vars}"
            );
            tableau[var][i] = frac(1, 1);
        }
    }
    for row in 0..n_vars {
        tableau[row][m + row] = frac(1, 1);
    }
    let mut basis: Vec<usize> = (m..m + n_vars).collect();
    // reduced costs for the maximization; slacks cost nothing
    let mut obj: Vec<Frac> = (0..cols)
        .map(|j| if j < m { frac(1, 1) } else { Frac::zero() })
        .collect();
    let mut value = Frac::zero();

    loop {
        // Bland: smallest improving column
        let Some(entering) = (0..cols).find(|&j| obj[j] > Frac::zero()) else {
            return value;
        };
        let mut pivot_row: Option<usize> = None;
        let mut best_ratio = Frac::zero();
        for r in 0..n_vars {
            if tableau[r][entering] > Frac::zero() {
                let ratio = rhs[r] / tableau[r][entering];
                let better = match pivot_row {
                    None => true,
                    Some(pr) => ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[pr]),
                };
                if better {
                    pivot_row = Some(r);
                    best_ratio = ratio;
                }
            }
        }
        let r = pivot_row.expect("packing program is bounded by the unit caps");
        let scale = tableau[r][entering];
        for v in tableau[r].iter_mut() {
            *v /= scale;
        }
        rhs[r] /= scale;
        for row in 0..n_vars {
            if row == r || tableau[row][entering].is_zero() {
                continue;
            }
            let factor = tableau[row][entering];
            for j in 0..cols {
                let delta = factor * tableau[r][j];
                tableau[row][j] -= delta;
            }
            rhs[row] = rhs[row] - factor * rhs[r];
        }
        let factor = obj[entering];
        for j in 0..cols {
            obj[j] -= factor * tableau[r][j];
        }
        value += factor * rhs[r];
        basis[r] = entering;
    }
}
