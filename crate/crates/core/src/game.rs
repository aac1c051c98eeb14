//! TPASS games, mixed strategies and the best-response equilibrium test.
//!
//! A two-person additively-separable sum game is a triplet `(A, pi, rho)`.
//! When the row player picks row `i` and the column player picks column `j`
//! the row player receives `a_ij + pi_i` and the column player receives
//! `-a_ij + rho_j`, so the payoff sum `pi_i + rho_j` separates across the
//! two players' pure strategies. Constant `pi` and `rho` give a constant-sum
//! game.
//!
//! Indices in the public API are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::rng::SplitMix64;

/// Default tolerance for accepting a vector as a point of the simplex.
pub const TOL_SIMPLEX: f64 = 1e-9;

/// Default tolerance for equilibrium certification.
pub const TOL_EQUILIBRIUM: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TpassGame {
    #[serde(rename = "A")]
    a: Matrix,
    pi: Vec<f64>,
    rho: Vec<f64>,
}

impl TpassGame {
    pub fn new(a: Matrix, pi: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::input("game needs at least one row and one column"));
        }
        if a.rows() != pi.len() {
            return Err(Error::input(format!(
                "pi has length {} but A has {} rows",
                pi.len(),
                a.rows()
            )));
        }
        if a.cols() != rho.len() {
            return Err(Error::input(format!(
                "rho has length {} but A has {} columns",
                rho.len(),
                a.cols()
            )));
        }
        if !a.is_finite() || !pi.iter().chain(&rho).all(|x| x.is_finite()) {
            return Err(Error::input("game entries must be finite"));
        }
        Ok(TpassGame { a, pi, rho })
    }

    /// Convenience constructor from nested rows.
    pub fn from_rows<R: AsRef<[f64]>>(a: &[R], pi: &[f64], rho: &[f64]) -> Result<Self> {
        TpassGame::new(Matrix::from_rows(a)?, pi.to_vec(), rho.to_vec())
    }

    /// The 2x2 game with `A = [[0, 1], [-1, 0]]` and `pi = rho = (1/2, 3/4)`.
    /// Its unique equilibrium is mutual non-cooperation (row 1, column 1)
    /// while both players prefer mutual cooperation (row 2, column 2).
    pub fn prisoners_dilemma() -> Self {
        TpassGame::from_rows(&[[0.0, 1.0], [-1.0, 0.0]], &[0.5, 0.75], &[0.5, 0.75])
            .expect("demo game is valid")
    }

    pub fn zero(m: usize, n: usize) -> Result<Self> {
        TpassGame::new(Matrix::zeros(m, n), vec![0.0; m], vec![0.0; n])
    }

    pub fn kernel(&self) -> &Matrix {
        &self.a
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    /// Number of row strategies.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Number of column strategies.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Payoffs `(a_ij + pi_i, -a_ij + rho_j)` at the pure pair `(i, j)`, 1-based.
    pub fn pure_payoffs(&self, i: usize, j: usize) -> Result<(f64, f64)> {
        if i == 0 || i > self.m() || j == 0 || j > self.n() {
            return Err(Error::input(format!(
                "pure strategy ({i}, {j}) out of range for a {}x{} game",
                self.m(),
                self.n()
            )));
        }
        let a = self.a.get(i - 1, j - 1);
        Ok((a + self.pi[i - 1], -a + self.rho[j - 1]))
    }

    fn check_dims(&self, p: &MixedStrategy, q: &MixedStrategy) -> Result<()> {
        if p.len() != self.m() || q.len() != self.n() {
            return Err(Error::input(format!(
                "strategy lengths ({}, {}) do not match game dimensions ({}, {})",
                p.len(),
                q.len(),
                self.m(),
                self.n()
            )));
        }
        Ok(())
    }

    /// `f^R(p, q) = p^T A q + p^T pi`
    pub fn payoff_row(&self, p: &MixedStrategy, q: &MixedStrategy) -> Result<f64> {
        self.check_dims(p, q)?;
        Ok(self.a.bilinear(p.weights(), q.weights()) + dot(p.weights(), &self.pi))
    }

    /// `f^C(p, q) = -p^T A q + rho^T q`
    pub fn payoff_col(&self, p: &MixedStrategy, q: &MixedStrategy) -> Result<f64> {
        self.check_dims(p, q)?;
        Ok(-self.a.bilinear(p.weights(), q.weights()) + dot(&self.rho, q.weights()))
    }

    /// Row and column payoff matrices `B = A + R(pi)`, `C = -A + C(rho)`.
    pub fn payoff_matrices(&self) -> (Matrix, Matrix) {
        let b = Matrix::from_fn(self.m(), self.n(), |i, j| self.a.get(i, j) + self.pi[i]);
        let c = Matrix::from_fn(self.m(), self.n(), |i, j| -self.a.get(i, j) + self.rho[j]);
        (b, c)
    }

    /// Payoff of each pure row against `q`: `(A q + pi)_i`.
    pub fn row_deviation_payoffs(&self, q: &[f64]) -> Vec<f64> {
        self.a
            .mul_vec(q)
            .into_iter()
            .zip(&self.pi)
            .map(|(x, p)| x + p)
            .collect()
    }

    /// Payoff of each pure column against `p`: `(-A^T p + rho)_j`.
    pub fn col_deviation_payoffs(&self, p: &[f64]) -> Vec<f64> {
        self.a
            .vec_mul(p)
            .into_iter()
            .zip(&self.rho)
            .map(|(x, r)| -x + r)
            .collect()
    }

    /// Checks `(p, q)` against every pure deviation. Mixed deviations are
    /// convex combinations of pure ones, so this covers them too.
    pub fn is_equilibrium(
        &self,
        p: &MixedStrategy,
        q: &MixedStrategy,
        tol: f64,
    ) -> Result<EquilibriumReport> {
        check_tol(tol)?;
        self.check_dims(p, q)?;
        let f_row = self.payoff_row(p, q)?;
        let f_col = self.payoff_col(p, q)?;
        let row_violation = max_of(&self.row_deviation_payoffs(q.weights())) - f_row;
        let col_violation = max_of(&self.col_deviation_payoffs(p.weights())) - f_col;
        let simplex_violation = p.simplex_violation().max(q.simplex_violation());
        Ok(EquilibriumReport::new(
            row_violation,
            col_violation,
            simplex_violation,
            tol,
        ))
    }

    /// Pure cells `(i, j, row payoff, col payoff)`, 1-based, whose payoffs
    /// strictly exceed `(row, col)` for both players.
    pub fn pareto_superior_cells(&self, row: f64, col: f64) -> Vec<(usize, usize, f64, f64)> {
        let (b, c) = self.payoff_matrices();
        let mut out = Vec::new();
        for i in 0..self.m() {
            for j in 0..self.n() {
                let (u, v) = (b.get(i, j), c.get(i, j));
                if u > row && v > col {
                    out.push((i + 1, j + 1, u, v));
                }
            }
        }
        out
    }

    /// Shifts the gauge: `(A, pi + c, rho - c)`. Payoff sums are unchanged.
    pub fn gauge_shift(&self, c: f64) -> TpassGame {
        TpassGame {
            a: self.a.clone(),
            pi: self.pi.iter().map(|x| x + c).collect(),
            rho: self.rho.iter().map(|x| x - c).collect(),
        }
    }
}

/// Draws a game with every entry of `A`, `pi` and `rho` uniform on
/// `[lo, hi]`, consumed in that order (A row-major) from [`SplitMix64`].
pub fn random_tpass(m: usize, n: usize, lo: f64, hi: f64, seed: u64) -> Result<TpassGame> {
    if m == 0 || n == 0 {
        return Err(Error::input("m and n must be at least 1"));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::input(format!("invalid bounds [{lo}, {hi}]")));
    }
    let mut rng = SplitMix64::new(seed);
    let a = Matrix::from_fn(m, n, |_, _| rng.uniform(lo, hi));
    let pi = (0..m).map(|_| rng.uniform(lo, hi)).collect();
    let rho = (0..n).map(|_| rng.uniform(lo, hi)).collect();
    TpassGame::new(a, pi, rho)
}

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    /// Accepts `weights` if every coordinate is at least `-TOL_SIMPLEX` and
    /// the sum is within `TOL_SIMPLEX` of one; tiny negatives are clamped and
    /// the vector renormalized.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        MixedStrategy::with_tolerance(weights, TOL_SIMPLEX)
    }

    pub fn with_tolerance(mut weights: Vec<f64>, tol: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::input("strategy must have at least one coordinate"));
        }
        if let Some(k) = weights.iter().position(|x| !x.is_finite()) {
            return Err(Error::input(format!("strategy coordinate {} is not finite", k + 1)));
        }
        if let Some(k) = weights.iter().position(|&x| x < -tol) {
            return Err(Error::input(format!(
                "strategy coordinate {} is negative ({})",
                k + 1,
                weights[k]
            )));
        }
        weights.iter_mut().for_each(|x| *x = x.max(0.0));
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > tol {
            return Err(Error::input(format!(
                "strategy sums to {s}, not 1 (tolerance {tol:e})"
            )));
        }
        weights.iter_mut().for_each(|x| *x /= s);
        Ok(MixedStrategy(weights))
    }

    /// The pure strategy `k` (1-based) out of `len`.
    pub fn pure(len: usize, k: usize) -> Result<Self> {
        if k == 0 || k > len {
            return Err(Error::input(format!("pure strategy {k} out of range 1..={len}")));
        }
        let mut w = vec![0.0; len];
        w[k - 1] = 1.0;
        Ok(MixedStrategy(w))
    }

    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::input("strategy must have at least one coordinate"));
        }
        Ok(MixedStrategy(vec![1.0 / len as f64; len]))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based indices with weight above `eps`.
    pub fn support(&self, eps: f64) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&k| self.0[k] > eps)
            .map(|k| k + 1)
            .collect()
    }

    pub fn simplex_violation(&self) -> f64 {
        let neg = self.0.iter().fold(0.0f64, |m, &x| m.max(-x));
        neg.max((self.0.iter().sum::<f64>() - 1.0).abs())
    }

    pub fn max_abs_diff(&self, other: &MixedStrategy) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl<'de> Deserialize<'de> for MixedStrategy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Vec::<f64>::deserialize(d)?;
        MixedStrategy::new(w).map_err(serde::de::Error::custom)
    }
}

/// Verdict of the best-response test with the absolute gaps it measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub is_equilibrium: bool,
    /// `max_i (A q + pi)_i - f^R(p, q)`
    pub row_violation: f64,
    /// `max_j (-A^T p + rho)_j - f^C(p, q)`
    pub col_violation: f64,
    pub simplex_violation: f64,
}

impl EquilibriumReport {
    pub fn new(row_violation: f64, col_violation: f64, simplex_violation: f64, tol: f64) -> Self {
        let worst = row_violation.max(col_violation).max(simplex_violation);
        EquilibriumReport {
            is_equilibrium: worst <= tol,
            row_violation,
            col_violation,
            simplex_violation,
        }
    }

    pub fn max_violation(&self) -> f64 {
        self.row_violation
            .max(self.col_violation)
            .max(self.simplex_violation)
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::input(format!("tolerance must be positive, got {tol}")))
    }
}

pub(crate) fn max_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd() -> TpassGame {
        TpassGame::prisoners_dilemma()
    }

    fn s(w: &[f64]) -> MixedStrategy {
        MixedStrategy::new(w.to_vec()).unwrap()
    }

    fn pennies() -> TpassGame {
        TpassGame::from_rows(&[[1.0, -1.0], [-1.0, 1.0]], &[0.0, 0.0], &[0.0, 0.0]).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        assert!(TpassGame::from_rows(&[[1.0, 2.0]], &[0.0, 0.0], &[0.0, 0.0]).is_err());
        assert!(TpassGame::from_rows(&[[1.0, 2.0]], &[0.0], &[0.0]).is_err());
        assert!(TpassGame::from_rows::<[f64; 0]>(&[], &[], &[]).is_err());
        assert!(TpassGame::from_rows(&[[f64::NAN]], &[0.0], &[0.0]).is_err());
    }

    #[test]
    fn pure_payoffs_examples() {
        let g = TpassGame::from_rows(&[[0.0]], &[2.0], &[5.0]).unwrap();
        assert_eq!(g.pure_payoffs(1, 1).unwrap(), (2.0, 5.0));
        assert_eq!(pd().pure_payoffs(1, 1).unwrap(), (0.5, 0.5));
        assert_eq!(pd().pure_payoffs(1, 2).unwrap(), (1.5, -0.25));
        assert!(pd().pure_payoffs(0, 1).is_err());
        assert!(pd().pure_payoffs(1, 3).is_err());
    }

    #[test]
    fn payoff_examples() {
        let g = pd();
        assert_eq!(g.payoff_row(&s(&[1.0, 0.0]), &s(&[1.0, 0.0])).unwrap(), 0.5);
        // Uniform play: p^T A q = 0 and p^T pi = 5/8.
        let u = s(&[0.5, 0.5]);
        assert!((g.payoff_row(&u, &u).unwrap() - 0.625).abs() < 1e-15);
        assert_eq!(g.payoff_col(&s(&[1.0, 0.0]), &s(&[1.0, 0.0])).unwrap(), 0.5);
        assert_eq!(g.payoff_col(&s(&[1.0, 0.0]), &s(&[0.0, 1.0])).unwrap(), -0.25);
        assert!(g.payoff_row(&s(&[1.0]), &u).is_err());
    }

    #[test]
    fn payoff_matrices_examples() {
        let (b, c) = pd().payoff_matrices();
        assert_eq!(b.to_rows(), vec![vec![0.5, 1.5], vec![-0.25, 0.75]]);
        assert_eq!(c.to_rows(), vec![vec![0.5, -0.25], vec![1.5, 0.75]]);

        let z = TpassGame::from_rows(&[[0.0, 0.0], [0.0, 0.0]], &[1.0, 2.0], &[3.0, 4.0]).unwrap();
        let (b, c) = z.payoff_matrices();
        assert_eq!(b.to_rows(), vec![vec![1.0, 1.0], vec![2.0, 2.0]]);
        assert_eq!(c.to_rows(), vec![vec![3.0, 4.0], vec![3.0, 4.0]]);

        // Constant bonuses give a constant-sum game.
        let g = TpassGame::from_rows(&[[0.3, -2.0, 1.0], [4.0, 0.1, -0.7]], &[1.5, 1.5], &[-0.5; 3])
            .unwrap();
        let (b, c) = g.payoff_matrices();
        let sum = &b + &c;
        assert!(sum.as_slice().iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn equilibrium_examples() {
        let u = s(&[0.5, 0.5]);
        assert!(pennies().is_equilibrium(&u, &u, 1e-9).unwrap().is_equilibrium);

        let e1 = s(&[1.0, 0.0]);
        assert!(pd().is_equilibrium(&e1, &e1, 1e-9).unwrap().is_equilibrium);

        let e2 = s(&[0.0, 1.0]);
        let r = pd().is_equilibrium(&e2, &e2, 1e-9).unwrap();
        assert!(!r.is_equilibrium);
        assert_eq!(r.row_violation, 0.75);
        assert_eq!(r.col_violation, 0.75);

        assert!(pd().is_equilibrium(&e1, &e1, 0.0).is_err());
    }

    #[test]
    fn cooperation_is_pareto_superior() {
        assert_eq!(pd().pareto_superior_cells(0.5, 0.5), vec![(2, 2, 0.75, 0.75)]);
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new(vec![0.6, 0.5]).is_err());
        assert!(MixedStrategy::new(vec![1.1, -0.1]).is_err());
        assert!(MixedStrategy::new(vec![]).is_err());
        let p = MixedStrategy::new(vec![1.0 + 5e-10, -5e-10]).unwrap();
        assert_eq!(p.weights()[1], 0.0);
        assert!((p.weights()[0] - 1.0).abs() < 1e-15);
        assert_eq!(MixedStrategy::pure(3, 2).unwrap().weights(), &[0.0, 1.0, 0.0]);
        assert!(MixedStrategy::pure(3, 4).is_err());
    }

    #[test]
    fn random_tpass_contract() {
        let g = random_tpass(2, 2, 0.0, 0.0, 9).unwrap();
        assert_eq!(g, TpassGame::zero(2, 2).unwrap());
        let g1 = random_tpass(3, 4, -1.0, 1.0, 42).unwrap();
        let g2 = random_tpass(3, 4, -1.0, 1.0, 42).unwrap();
        assert_eq!(g1, g2);
        assert_eq!((g1.m(), g1.n()), (3, 4));
        assert!(g1
            .kernel()
            .as_slice()
            .iter()
            .chain(g1.pi())
            .chain(g1.rho())
            .all(|x| (-1.0..=1.0).contains(x)));
        assert_ne!(g1, random_tpass(3, 4, -1.0, 1.0, 43).unwrap());
        assert!(random_tpass(0, 1, 0.0, 1.0, 1).is_err());
        assert!(random_tpass(1, 1, 1.0, 0.0, 1).is_err());
    }
}
