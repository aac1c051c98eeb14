//! Recognition of TPASS structure inside an arbitrary bimatrix game.
//!
//! A bimatrix game `(B, C)` is TPASS exactly when its payoff sum `S = B + C`
//! has the form `S_ij = pi_i + rho_j`. That holds iff every tetrad
//! `S_ij - S_i1 - S_1j + S_11` vanishes, which is an `O(mn)` check.
//!
//! The representation is unique only up to the gauge
//! `(pi, rho) -> (pi + c, rho - c)`. [`decompose`] fixes it with
//! `rho_1 = S_11 / 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::TpassGame;
use crate::matrix::Matrix;

/// Default separability tolerance before scaling by `max(1, max |S_ij|)`.
pub const TOL_SEPARABLE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BimatrixGame {
    #[serde(rename = "B")]
    b: Matrix,
    #[serde(rename = "C")]
    c: Matrix,
}

impl BimatrixGame {
    pub fn new(b: Matrix, c: Matrix) -> Result<Self> {
        if (b.rows(), b.cols()) != (c.rows(), c.cols()) {
            return Err(Error::input(format!(
                "B is {}x{} but C is {}x{}",
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        if b.rows() == 0 || b.cols() == 0 {
            return Err(Error::input("game needs at least one row and one column"));
        }
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::input("payoff entries must be finite"));
        }
        Ok(BimatrixGame { b, c })
    }

    pub fn from_rows<R: AsRef<[f64]>>(b: &[R], c: &[R]) -> Result<Self> {
        BimatrixGame::new(Matrix::from_rows(b)?, Matrix::from_rows(c)?)
    }

    /// Row player's payoffs.
    pub fn row_payoffs(&self) -> &Matrix {
        &self.b
    }

    /// Column player's payoffs.
    pub fn col_payoffs(&self) -> &Matrix {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }

    pub fn n(&self) -> usize {
        self.b.cols()
    }

    pub fn payoff_sum(&self) -> Matrix {
        &self.b + &self.c
    }

    /// The game with the same payoffs and rows/columns reordered:
    /// new row `k` is old row `rows[k]` (0-based permutations).
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> BimatrixGame {
        let pick = |m: &Matrix| Matrix::from_fn(self.m(), self.n(), |i, j| m.get(rows[i], cols[j]));
        BimatrixGame {
            b: pick(&self.b),
            c: pick(&self.c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionResult {
    pub game: TpassGame,
    /// `max |C - (-A + C(rho))|` after extraction.
    pub max_residual: f64,
}

/// Largest tetrad `|S_ij - S_i1 - S_1j + S_11|` of the payoff sum.
pub fn tetrad_residual(bg: &BimatrixGame) -> f64 {
    let s = bg.payoff_sum();
    let mut r = 0.0f64;
    for i in 1..s.rows() {
        for j in 1..s.cols() {
            let t = s.get(i, j) - s.get(i, 0) - s.get(0, j) + s.get(0, 0);
            r = r.max(t.abs());
        }
    }
    r
}

/// `(residual <= tol, residual)`, with `residual` from [`tetrad_residual`].
pub fn is_separable_sum(bg: &BimatrixGame, tol: f64) -> Result<(bool, f64)> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::input(format!("tolerance must be nonnegative, got {tol}")));
    }
    let r = tetrad_residual(bg);
    Ok((r <= tol, r))
}

/// The separability tolerance scaled to the payoff magnitude.
pub fn scaled_tolerance(bg: &BimatrixGame, tol: f64) -> f64 {
    tol * bg.payoff_sum().max_abs().max(1.0)
}

/// Extracts `(A, pi, rho)` with the gauge `rho_1 = S_11 / 2`.
pub fn decompose(bg: &BimatrixGame, tol: f64) -> Result<DecompositionResult> {
    let (ok, residual) = is_separable_sum(bg, tol)?;
    if !ok {
        return Err(Error::NotSeparable { residual });
    }
    let s = bg.payoff_sum();
    let (m, n) = (bg.m(), bg.n());
    let rho1 = s.get(0, 0) / 2.0;
    let pi: Vec<f64> = (0..m).map(|i| s.get(i, 0) - rho1).collect();
    let rho: Vec<f64> = (0..n).map(|j| s.get(0, j) - pi[0]).collect();
    let a = Matrix::from_fn(m, n, |i, j| bg.b.get(i, j) - pi[i]);
    let game = TpassGame::new(a, pi, rho)?;
    let (_, c) = game.payoff_matrices();
    let max_residual = c.max_abs_diff(&bg.c);
    let bound = (m + n) as f64 * tol;
    if max_residual > bound.max(4.0 * f64::EPSILON * s.max_abs().max(1.0)) {
        return Err(Error::CertificationFailure(format!(
            "decomposition residual {max_residual:e} exceeds (m+n)*tol = {bound:e}"
        )));
    }
    Ok(DecompositionResult { game, max_residual })
}

/// `(B, C) = (A + R(pi), -A + C(rho))`.
pub fn compose(game: &TpassGame) -> BimatrixGame {
    let (b, c) = game.payoff_matrices();
    BimatrixGame { b, c }
}
