//! Brute-force support enumeration for small bimatrix games.
//!
//! For every pair of equal-size supports the indifference conditions plus
//! normalization form a square linear system per player. Solutions that are
//! nonnegative and survive a best-response check are equilibria. This finds
//! every equilibrium of a nondegenerate game and is used as ground truth for
//! the LP route. It shares nothing with the LP code beyond the matrix type.

use serde::Serialize;

use crate::decompose::{compose, BimatrixGame};
use crate::equilibrium::EquilibriumSolution;
use crate::error::{Error, Result};
use crate::game::{MixedStrategy, TpassGame};
use crate::linalg;
use crate::matrix::{dot, Matrix};

/// Largest `m` or `n` accepted by default.
pub const DEFAULT_SIZE_CAP: usize = 5;

pub const DEDUP_EPS: f64 = 1e-7;

/// Row and column supports, 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SupportPair {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleEquilibrium {
    pub p: MixedStrategy,
    pub q: MixedStrategy,
    pub support: SupportPair,
    pub row_payoff: f64,
    pub col_payoff: f64,
}

pub fn enumerate_equilibria(bg: &BimatrixGame, tol: f64) -> Result<Vec<OracleEquilibrium>> {
    enumerate_equilibria_capped(bg, tol, DEFAULT_SIZE_CAP)
}

/// As [`enumerate_equilibria`] with an explicit size cap. Cost grows as
/// `4^max(m, n)` linear solves; caps above 8 get slow quickly.
pub fn enumerate_equilibria_capped(
    bg: &BimatrixGame,
    tol: f64,
    cap: usize,
) -> Result<Vec<OracleEquilibrium>> {
    let (m, n) = (bg.m(), bg.n());
    if m > cap || n > cap {
        return Err(Error::input(format!(
            "{m}x{n} game exceeds the enumeration cap of {cap}x{cap}"
        )));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::input(format!("tolerance must be nonnegative, got {tol}")));
    }
    let b = bg.row_payoffs();
    let c = bg.col_payoffs();
    let ct = c.transpose();

    let mut found: Vec<OracleEquilibrium> = Vec::new();
    for row_mask in 1u32..(1 << m) {
        let rows = members(row_mask, m);
        for col_mask in 1u32..(1 << n) {
            let cols = members(col_mask, n);
            if rows.len() != cols.len() {
                continue;
            }
            // Column mixture that makes the supported rows indifferent under B,
            // and row mixture that makes the supported columns indifferent under C.
            let Some(q) = indifferent_mixture(b, &rows, &cols, n, tol) else {
                continue;
            };
            let Some(p) = indifferent_mixture(&ct, &cols, &rows, m, tol) else {
                continue;
            };
            if !best_responses(b, c, &p, &q, tol) {
                continue;
            }
            if found
                .iter()
                .any(|e| max_diff(e.p.weights(), &p) <= DEDUP_EPS && max_diff(e.q.weights(), &q) <= DEDUP_EPS)
            {
                continue;
            }
            let support = SupportPair {
                rows: positive(&p),
                cols: positive(&q),
            };
            let row_payoff = b.bilinear(&p, &q);
            let col_payoff = c.bilinear(&p, &q);
            found.push(OracleEquilibrium {
                p: MixedStrategy::new(p)?,
                q: MixedStrategy::new(q)?,
                support,
                row_payoff,
                col_payoff,
            });
        }
    }
    found.sort_by(|a, b| a.support.cmp(&b.support));
    Ok(found)
}

fn members(mask: u32, len: usize) -> Vec<usize> {
    (0..len).filter(|k| mask & (1 << k) != 0).collect()
}

fn positive(w: &[f64]) -> Vec<usize> {
    (0..w.len()).filter(|&k| w[k] > 0.0).map(|k| k + 1).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Solves `sum_{j in cols} payoff[i][j] x_j = v` for `i in rows`,
/// `sum x_j = 1`, and returns `x` padded to length `len`. `None` when the
/// system is singular or the solution is not a distribution.
fn indifferent_mixture(
    payoff: &Matrix,
    rows: &[usize],
    cols: &[usize],
    len: usize,
    tol: f64,
) -> Option<Vec<f64>> {
    let k = cols.len();
    let mut sys = Matrix::zeros(k + 1, k + 1);
    let mut rhs = vec![0.0; k + 1];
    for (r, &i) in rows.iter().enumerate() {
        for (s, &j) in cols.iter().enumerate() {
            sys.set(r, s, payoff.get(i, j));
        }
        sys.set(r, k, -1.0);
    }
    for s in 0..k {
        sys.set(k, s, 1.0);
    }
    rhs[k] = 1.0;
    let sol = linalg::solve(&sys, &rhs)?;
    if sol[..k].iter().any(|&x| x < -tol) {
        return None;
    }
    let mut x = vec![0.0; len];
    for (s, &j) in cols.iter().enumerate() {
        x[j] = sol[s].max(0.0);
    }
    let total: f64 = x.iter().sum();
    if total <= 0.0 {
        return None;
    }
    x.iter_mut().for_each(|v| *v /= total);
    Some(x)
}

fn best_responses(b: &Matrix, c: &Matrix, p: &[f64], q: &[f64], tol: f64) -> bool {
    let row_value = dot(p, &b.mul_vec(q));
    let col_value = dot(&c.vec_mul(p), q);
    let row_best = b.mul_vec(q).into_iter().fold(f64::NEG_INFINITY, f64::max);
    let col_best = c.vec_mul(p).into_iter().fold(f64::NEG_INFINITY, f64::max);
    row_best <= row_value + tol && col_best <= col_value + tol
}

/// Whether the bimatrix game `bg` has `(p, q)` as an equilibrium, checked
/// directly on the payoff matrices.
pub fn is_bimatrix_equilibrium(bg: &BimatrixGame, p: &[f64], q: &[f64], tol: f64) -> bool {
    p.len() == bg.m()
        && q.len() == bg.n()
        && best_responses(bg.row_payoffs(), bg.col_payoffs(), p, q, tol)
}

/// Confirms an LP-produced pair against the enumerated equilibria of the
/// composed game, or failing that against a direct best-response check
/// (degenerate games can have equilibria the enumerator represents
/// differently).
pub fn cross_check(game: &TpassGame, sol: &EquilibriumSolution, tol: f64) -> Result<bool> {
    let bg = compose(game);
    let eqs = enumerate_equilibria(&bg, tol)?;
    let (p, q) = (sol.p.weights(), sol.q.weights());
    let listed = eqs
        .iter()
        .any(|e| max_diff(e.p.weights(), p) <= tol && max_diff(e.q.weights(), q) <= tol);
    Ok(listed || is_bimatrix_equilibrium(&bg, p, q, tol))
}
