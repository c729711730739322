//! Dense exact-rational simplex with Bland's rule.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Optimal primal/dual pair of `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// Optimal solution of the dual `min b.y  s.t.  A^T y >= c, y >= 0`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

/// Solves a packing-form LP whose origin is feasible. Bland's rule (lowest
/// index entering and leaving) guarantees termination.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Result<LpSolution> {
    let rows = a.len();
    let cols = c.len();
    if b.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            actual: b.len(),
        });
    }
    if let Some(r) = a.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            expected: cols,
            actual: r.len(),
        });
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidArgument("right-hand side must be nonnegative".into()));
    }
    let width = cols + rows;
    // Tableau rows: [A | I | b]; basis starts at the slacks.
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..rows).map(|j| if i == j { one() } else { Rational::zero() }));
            r.push(b[i].clone());
            r
        })
        .collect();
    // Reduced costs c_j - c_B B^{-1} A_j, and the objective value at the end.
    let mut obj: Vec<Rational> = c.to_vec();
    obj.extend((0..=rows).map(|_| Rational::zero()));
    let mut basis: Vec<usize> = (cols..width).collect();
    let mut pivots = 0;
    while let Some(enter) = (0..width).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Unbounded);
        };
        let pv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pv;
        }
        let prow = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(prow.iter()) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(prow.iter()) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        basis[pr] = enter;
        pivots += 1;
    }
    let mut primal = vec![Rational::zero(); cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            primal[bv] = t[i][width].clone();
        }
    }
    let dual: Vec<Rational> = (0..rows).map(|i| -obj[cols + i].clone()).collect();
    let value = -obj[width].clone();
    Ok(LpSolution {
        value,
        primal,
        dual,
        pivots,
    })
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_instance() {
        // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6).
        let sol = maximize(&r(&[3, 5]), &[r(&[1, 0]), r(&[0, 2]), r(&[3, 2])], &r(&[4, 12, 18])).unwrap();
        assert_eq!(sol.value, int(36));
        assert_eq!(sol.primal, r(&[2, 6]));
        // Dual optimum (0, 3/2, 1) has the same value.
        assert_eq!(sol.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y  s.t. 2x + y <= 1, x + 2y <= 1  ->  2/3.
        let sol = maximize(&r(&[1, 1]), &[r(&[2, 1]), r(&[1, 2])], &r(&[1, 1])).unwrap();
        assert_eq!(sol.value, ratio(2, 3));
    }

    #[test]
    fn unbounded_detected() {
        assert_eq!(maximize(&r(&[1, 0]), &[r(&[0, 1])], &r(&[1])), Err(Error::Unbounded));
    }

    #[test]
    fn degenerate_cycling_instance_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let c = vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)];
        let a = vec![
            vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)],
            vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)],
            vec![int(0), int(0), int(1), int(0)],
        ];
        let sol = maximize(&c, &a, &r(&[0, 0, 1])).unwrap();
        assert_eq!(sol.value, ratio(1, 20));
    }

    #[test]
    fn rejects_negative_rhs() {
        assert!(maximize(&r(&[1]), &[r(&[1])], &r(&[-1])).is_err());
    }
}
