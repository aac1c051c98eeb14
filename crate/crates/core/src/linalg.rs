//! Dense Gaussian elimination with partial pivoting for small square systems.

use crate::matrix::Matrix;

/// Pivots with magnitude at or below this (relative to the largest entry of
/// the system) mark the matrix as singular.
pub const SINGULAR_EPS: f64 = 1e-12;

/// Solves `a x = b`. Returns `None` when `a` is singular to working precision.
pub fn solve(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows();
    assert_eq!(a.cols(), n, "solve needs a square matrix");
    assert_eq!(b.len(), n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut m = a.to_rows();
    let mut rhs = b.to_vec();

    for k in 0..n {
        let (piv, piv_abs) = (k..n)
            .map(|r| (r, m[r][k].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs <= SINGULAR_EPS * scale {
            return None;
        }
        m.swap(k, piv);
        rhs.swap(k, piv);
        for r in k + 1..n {
            let f = m[r][k] / m[k][k];
            if f == 0.0 {
                continue;
            }
            for c in k..n {
                m[r][c] -= f * m[k][c];
            }
            rhs[r] -= f * rhs[k];
        }
    }

    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|c| m[k][c] * x[c]).sum();
        x[k] = (rhs[k] - s) / m[k][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn needs_row_exchange() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [2.0, 1.0]]).unwrap();
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn singular_is_none() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(solve(&a, &[1.0, 2.0]).is_none());
    }

    #[test]
    fn three_by_three() {
        let a = Matrix::from_rows(&[[2.0, 1.0, -1.0], [-3.0, -1.0, 2.0], [-2.0, 1.0, 2.0]]).unwrap();
        let x = solve(&a, &[8.0, -11.0, -3.0]).unwrap();
        for (got, want) in x.iter().zip([2.0, 3.0, -1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
