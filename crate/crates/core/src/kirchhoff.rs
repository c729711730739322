//! The Kirchhoff polynomial by two independent routes: the determinant of the
//! cycle intersection form, and the sum over spanning-tree complements.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{self, CycleBasis, Multigraph};
use crate::poly::{IntPolynomial, Monomial};

/// Symmetric `b x b` matrix of linear forms `a_ij = sum_e (c_i, c_j)_e x_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleForm {
    pub matrix: Vec<Vec<IntPolynomial>>,
    pub nvars: usize,
}

impl CycleForm {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Evaluates every entry at `point`.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|p| p.eval(point)).collect())
            .collect()
    }
}

pub fn cycle_form(g: &Multigraph, basis: &CycleBasis) -> Result<CycleForm> {
    let e = g.num_edges();
    let b = graph::betti(g);
    if basis.cycles.len() != b {
        return Err(Error::DimensionMismatch {
            expected: b,
            actual: basis.cycles.len(),
        });
    }
    if let Some(row) = basis.cycles.iter().find(|r| r.len() != e) {
        return Err(Error::DimensionMismatch {
            expected: e,
            actual: row.len(),
        });
    }
    let cycles = &basis.cycles;
    let mut matrix = vec![vec![IntPolynomial::zero(e); b]; b];
    for (i, ci) in cycles.iter().enumerate() {
        for (j, cj) in cycles.iter().enumerate().skip(i) {
            let mut p = IntPolynomial::zero(e);
            for (k, (&a, &c)) in ci.iter().zip(cj).enumerate() {
                let s = a as i64 * c as i64;
                if s != 0 {
                    p.add_term(Monomial::var(e, k), BigInt::from(s));
                }
            }
            matrix[j][i] = p.clone();
            matrix[i][j] = p;
        }
    }
    Ok(CycleForm { matrix, nvars: e })
}

/// Determinant by fraction-free (Bareiss) elimination over `Z[x]`.
pub fn psi_det(form: &CycleForm) -> IntPolynomial {
    det_bareiss(&form.matrix, form.nvars)
}

pub(crate) fn det_bareiss(matrix: &[Vec<IntPolynomial>], nvars: usize) -> IntPolynomial {
    let n = matrix.len();
    if n == 0 {
        return IntPolynomial::one(nvars);
    }
    let mut m: Vec<Vec<IntPolynomial>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = IntPolynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return IntPolynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss quotient is exact over an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

/// Determinant by Laplace expansion along the first row. Exponential in the
/// dimension; used as an independent check for small matrices.
pub fn det_cofactor(matrix: &[Vec<IntPolynomial>], nvars: usize) -> IntPolynomial {
    let n = matrix.len();
    if n == 0 {
        return IntPolynomial::one(nvars);
    }
    let cols: Vec<usize> = (0..n).collect();
    cofactor_rec(matrix, 0, &cols, nvars)
}

fn cofactor_rec(m: &[Vec<IntPolynomial>], row: usize, cols: &[usize], nvars: usize) -> IntPolynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = IntPolynomial::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_rec(m, row + 1, &rest, nvars);
        let term = m[row][c].mul(&minor);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Sum over spanning trees of the monomial on the complementary edges.
pub fn psi_trees(g: &Multigraph) -> IntPolynomial {
    let e = g.num_edges();
    let mut p = IntPolynomial::zero(e);
    for tree in graph::spanning_trees(g) {
        let mut in_tree = vec![false; e];
        for t in tree {
            in_tree[t] = true;
        }
        p.add_term(
            Monomial::squarefree(e, (0..e).filter(|&i| !in_tree[i])),
            BigInt::one(),
        );
    }
    p
}

/// Kirchhoff polynomial via the determinant of the fundamental cycle form.
pub fn psi(g: &Multigraph) -> IntPolynomial {
    let basis = graph::fundamental_cycle_basis(g);
    psi_det(&cycle_form(g, &basis).expect("fundamental basis matches its graph"))
}

pub fn eval_poly(p: &IntPolynomial, point: &[f64]) -> Result<f64> {
    p.eval(point)
}

/// For each `t`, the largest absolute entry of `A(t * direction)^{-1}`.
pub fn inverse_decay_check(form: &CycleForm, direction: &[f64], t_grid: &[f64]) -> Result<Vec<f64>> {
    if direction.len() != form.nvars {
        return Err(Error::DimensionMismatch {
            expected: form.nvars,
            actual: direction.len(),
        });
    }
    if direction.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
        return Err(Error::InvalidArgument("direction must be strictly positive".into()));
    }
    if t_grid.iter().any(|&t| !(t >= 1.0 && t.is_finite())) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "t grid must be increasing with entries >= 1".into(),
        ));
    }
    t_grid
        .iter()
        .map(|&t| {
            let point: Vec<f64> = direction.iter().map(|d| d * t).collect();
            let inv = invert(form.eval(&point)?)?;
            Ok(inv
                .iter()
                .flatten()
                .fold(0.0f64, |acc, x| acc.max(x.abs())))
        })
        .collect()
}

/// Gauss-Jordan inversion with partial pivoting and a condition-number guard.
pub(crate) fn invert(mut a: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let n = a.len();
    let norm_inf = |m: &[Vec<f64>]| {
        m.iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0f64, f64::max)
    };
    let a_norm = norm_inf(&a);
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty pivot range");
        if a[piv][col].abs() <= 1e-300 || a[piv][col].abs() < 1e-14 * a_norm {
            return Err(Error::Singular(format!("zero pivot in column {col}")));
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = a[i][col];
                if f != 0.0 {
                    for j in 0..n {
                        a[i][j] -= f * a[col][j];
                        inv[i][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    let cond = a_norm * norm_inf(&inv);
    if cond.is_nan() || cond >= 1e12 {
        return Err(Error::Singular(format!("condition number {cond:.3e}")));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_basis_for_tree, fundamental_cycle_basis, parse_graph};

    fn theta() -> Multigraph {
        Multigraph::from_pairs(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn triangle_form_and_psi() {
        let g = parse_graph("0 1\n1 2\n2 0").unwrap();
        let form = cycle_form(&g, &fundamental_cycle_basis(&g)).unwrap();
        assert_eq!(form.dim(), 1);
        assert_eq!(form.matrix[0][0].to_string(), "x0 + x1 + x2");
        assert_eq!(psi_det(&form).to_string(), "x0 + x1 + x2");
        assert_eq!(psi_trees(&g).to_string(), "x0 + x1 + x2");
    }

    #[test]
    fn theta_form_and_psi() {
        let g = theta();
        let form = cycle_form(&g, &fundamental_cycle_basis(&g)).unwrap();
        let shown: Vec<Vec<String>> = form
            .matrix
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect();
        assert_eq!(shown, vec![vec!["x0 + x1", "x0"], vec!["x0", "x0 + x2"]]);
        assert_eq!(psi_det(&form).to_string(), "x0*x1 + x0*x2 + x1*x2");
        assert_eq!(psi_trees(&g), psi_det(&form));
    }

    #[test]
    fn loop_and_tree() {
        let g = parse_graph("0 0").unwrap();
        let form = cycle_form(&g, &fundamental_cycle_basis(&g)).unwrap();
        assert_eq!(form.matrix[0][0].to_string(), "x0");
        let tree = parse_graph("0 1\n1 2").unwrap();
        let form = cycle_form(&tree, &fundamental_cycle_basis(&tree)).unwrap();
        assert_eq!(form.dim(), 0);
        assert_eq!(psi_det(&form).to_string(), "1");
        assert_eq!(psi_trees(&tree).to_string(), "1");
    }

    #[test]
    fn dimension_mismatch() {
        let g = theta();
        let tri = parse_graph("0 1\n1 2\n2 0").unwrap();
        let basis = fundamental_cycle_basis(&tri);
        assert!(matches!(cycle_form(&g, &basis), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn basis_independence_on_k4() {
        let k4 = parse_graph("0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        let a = psi_det(&cycle_form(&k4, &fundamental_cycle_basis(&k4)).unwrap());
        let other = cycle_basis_for_tree(&k4, &[0, 3, 5]).unwrap();
        let b = psi_det(&cycle_form(&k4, &other).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.num_terms(), 16);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let k4 = parse_graph("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 0").unwrap();
        let form = cycle_form(&k4, &fundamental_cycle_basis(&k4)).unwrap();
        assert_eq!(psi_det(&form), det_cofactor(&form.matrix, form.nvars));
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        // [[0, x0], [x1, 0]] has determinant -x0*x1.
        let n = 2;
        let z = IntPolynomial::zero(n);
        let m = vec![
            vec![z.clone(), IntPolynomial::var(n, 0)],
            vec![IntPolynomial::var(n, 1), z],
        ];
        assert_eq!(det_bareiss(&m, n).to_string(), "-x0*x1");
        assert_eq!(det_cofactor(&m, n).to_string(), "-x0*x1");
    }

    #[test]
    fn evaluation_examples() {
        let tri = parse_graph("0 1\n1 2\n2 0").unwrap();
        assert_eq!(eval_poly(&psi_trees(&tri), &[1.0, 1.0, 1.0]).unwrap(), 3.0);
        assert_eq!(eval_poly(&psi_trees(&theta()), &[1.0, 1.0, 1.0]).unwrap(), 3.0);
        assert_eq!(eval_poly(&psi_trees(&theta()), &[0.0; 3]).unwrap(), 0.0);
        assert!(eval_poly(&psi_trees(&theta()), &[1.0; 2]).is_err());
    }

    #[test]
    fn inverse_decay_on_triangle() {
        let g = parse_graph("0 1\n1 2\n2 0").unwrap();
        let form = cycle_form(&g, &fundamental_cycle_basis(&g)).unwrap();
        let v = inverse_decay_check(&form, &[1.0; 3], &[1.0, 10.0, 100.0]).unwrap();
        for (got, want) in v.iter().zip([1.0 / 3.0, 1.0 / 30.0, 1.0 / 300.0]) {
            assert!((got - want).abs() <= 1e-15 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn inverse_decay_scales_with_t() {
        let g = theta();
        let form = cycle_form(&g, &fundamental_cycle_basis(&g)).unwrap();
        let v = inverse_decay_check(&form, &[1.0; 3], &[1.0, 2.0, 10.0]).unwrap();
        assert!((v[0] / v[2] - 10.0).abs() < 1e-12);
        assert!((v[0] / v[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_decay_rejects_bad_input() {
        let g = theta();
        let form = cycle_form(&g, &fundamental_cycle_basis(&g)).unwrap();
        assert!(inverse_decay_check(&form, &[1.0, 0.0, 1.0], &[1.0]).is_err());
        assert!(inverse_decay_check(&form, &[1.0; 3], &[2.0, 1.0]).is_err());
        assert!(inverse_decay_check(&form, &[1.0; 3], &[0.5]).is_err());
    }

    #[test]
    fn singular_matrix_detected() {
        assert!(matches!(
            invert(vec![vec![1.0, 1.0], vec![1.0, 1.0]]),
            Err(Error::Singular(_))
        ));
    }
}
