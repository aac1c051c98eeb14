//! Equilibria of TPASS games from linear programs.
//!
//! Three programs are built here:
//!
//! * the row-bound program over `(q, alpha)`:
//!   maximize `rho^T q - alpha` subject to `A q - alpha 1 <= -pi`, `1^T q = 1`,
//!   `q >= 0`, `alpha` free;
//! * its dual over `(p, beta)`:
//!   minimize `-pi^T p + beta` subject to `A^T p + beta 1 >= rho`,
//!   `1^T p = 1`, `p >= 0`, `beta` free;
//! * the joint program over `(p, q, alpha, beta)`:
//!   maximize `pi^T p + rho^T q - alpha - beta` subject to
//!   `A q + pi - alpha 1 <= 0`, `-A^T p + rho - beta 1 <= 0`, both simplex
//!   equalities, `p, q >= 0`.
//!
//! The joint program's optimum is always zero and its optimal `(p, q)` are
//! exactly the equilibria. A single solve of the first program yields an
//! equilibrium: `q` and `alpha` from the primal, `p` and `beta` from the
//! simplex multipliers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{check_tol, max_of, EquilibriumReport, MixedStrategy, TpassGame};
use crate::lp::{self, LpModel, LpSolution, LpStatus, LpTolerances, Relation, Sense};
use crate::matrix::dot;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSolution {
    pub p: MixedStrategy,
    pub q: MixedStrategy,
    /// Row player's equilibrium payoff.
    pub alpha: f64,
    /// Column player's equilibrium payoff.
    pub beta: f64,
    /// Optimal value of the program that produced the pair.
    pub lp_value: f64,
    /// `max(|p^T A q - alpha + p^T pi|, |p^T A q + beta - rho^T q|)`
    pub slackness_residual: f64,
    pub iterations: usize,
}

pub fn build_lp1(game: &TpassGame) -> LpModel {
    let (m, n) = (game.m(), game.n());
    let mut objective = game.rho().to_vec();
    objective.push(-1.0);
    let mut model = LpModel::new(Sense::Maximize, objective);
    model.set_free(n);
    for i in 0..m {
        let mut row = game.kernel().row(i).to_vec();
        row.push(-1.0);
        model.add_constraint(row, Relation::Le, -game.pi()[i]);
    }
    let mut ones = vec![1.0; n];
    ones.push(0.0);
    model.add_constraint(ones, Relation::Eq, 1.0);
    model
}

pub fn build_dual_lp1(game: &TpassGame) -> LpModel {
    let (m, n) = (game.m(), game.n());
    let mut objective: Vec<f64> = game.pi().iter().map(|x| -x).collect();
    objective.push(1.0);
    let mut model = LpModel::new(Sense::Minimize, objective);
    model.set_free(m);
    for j in 0..n {
        let mut row: Vec<f64> = (0..m).map(|i| game.kernel().get(i, j)).collect();
        row.push(1.0);
        model.add_constraint(row, Relation::Ge, game.rho()[j]);
    }
    let mut ones = vec![1.0; m];
    ones.push(0.0);
    model.add_constraint(ones, Relation::Eq, 1.0);
    model
}

/// Variables are ordered `(p_1..p_m, q_1..q_n, alpha, beta)`.
pub fn build_prop3_lp(game: &TpassGame) -> LpModel {
    let (m, n) = (game.m(), game.n());
    let mut objective = game.pi().to_vec();
    objective.extend_from_slice(game.rho());
    objective.extend([-1.0, -1.0]);
    let mut model = LpModel::new(Sense::Maximize, objective);
    model.set_free(m + n);
    model.set_free(m + n + 1);
    let width = m + n + 2;
    // A q + pi - alpha <= 0
    for i in 0..m {
        let mut row = vec![0.0; width];
        row[m..m + n].copy_from_slice(game.kernel().row(i));
        row[m + n] = -1.0;
        model.add_constraint(row, Relation::Le, -game.pi()[i]);
    }
    // -A^T p + rho - beta <= 0
    for j in 0..n {
        let mut row = vec![0.0; width];
        for i in 0..m {
            row[i] = -game.kernel().get(i, j);
        }
        row[m + n + 1] = -1.0;
        model.add_constraint(row, Relation::Le, -game.rho()[j]);
    }
    let mut p_sum = vec![0.0; width];
    p_sum[..m].iter_mut().for_each(|x| *x = 1.0);
    model.add_constraint(p_sum, Relation::Eq, 1.0);
    let mut q_sum = vec![0.0; width];
    q_sum[m..m + n].iter_mut().for_each(|x| *x = 1.0);
    model.add_constraint(q_sum, Relation::Eq, 1.0);
    model
}

fn strategy_from(raw: &[f64], what: &str) -> Result<MixedStrategy> {
    // LP output is feasible to ~1e-9; accept that much drift before rejecting.
    MixedStrategy::with_tolerance(raw.to_vec(), 1e-7).map_err(|e| {
        Error::CertificationFailure(format!("{what} read from the LP is not a strategy: {e}"))
    })
}

fn optimal(sol: &LpSolution, what: &str) -> Result<()> {
    match sol.status {
        LpStatus::Optimal => Ok(()),
        s => Err(Error::SolverFailure(format!(
            "{what} reported {s:?} but is always feasible and bounded"
        ))),
    }
}

/// `max(|p^T A q - alpha + p^T pi|, |p^T A q + beta - rho^T q|)`
pub fn slackness_residual(
    game: &TpassGame,
    p: &MixedStrategy,
    q: &MixedStrategy,
    alpha: f64,
    beta: f64,
) -> f64 {
    let paq = game.kernel().bilinear(p.weights(), q.weights());
    let r1 = paq - alpha + dot(p.weights(), game.pi());
    let r2 = paq + beta - dot(game.rho(), q.weights());
    r1.abs().max(r2.abs())
}

/// One equilibrium from a single solve of the row-bound program.
pub fn solve_equilibrium(game: &TpassGame, tol: f64) -> Result<EquilibriumSolution> {
    check_tol(tol)?;
    let (m, n) = (game.m(), game.n());
    let model = build_lp1(game);
    let sol = lp::solve(&model, &LpTolerances::default())?;
    optimal(&sol, "row-bound program")?;

    let q = strategy_from(&sol.x[..n], "q")?;
    let alpha = sol.x[n];
    let p = strategy_from(&sol.duals[..m], "p")?;
    let beta = sol.duals[m];

    let report = game.is_equilibrium(&p, &q, tol)?;
    if !report.is_equilibrium {
        return Err(Error::CertificationFailure(format!(
            "LP pair fails best response by {:e}",
            report.max_violation()
        )));
    }
    Ok(EquilibriumSolution {
        slackness_residual: slackness_residual(game, &p, &q, alpha, beta),
        p,
        q,
        alpha,
        beta,
        lp_value: sol.objective_value,
        iterations: sol.iterations,
    })
}

/// Solves the joint program and returns the equilibrium at the optimal
/// vertex together with the optimal value, which must be zero.
pub fn solve_prop3(game: &TpassGame, tol: f64) -> Result<(EquilibriumSolution, f64)> {
    check_tol(tol)?;
    let (m, n) = (game.m(), game.n());
    let model = build_prop3_lp(game);
    let sol = lp::solve(&model, &LpTolerances::default())?;
    optimal(&sol, "joint program")?;
    let value = sol.objective_value;
    if value.abs() > tol {
        return Err(Error::CertificationFailure(format!(
            "joint program optimum {value:e} is not zero"
        )));
    }
    let p = strategy_from(&sol.x[..m], "p")?;
    let q = strategy_from(&sol.x[m..m + n], "q")?;
    let alpha = sol.x[m + n];
    let beta = sol.x[m + n + 1];
    let report = game.is_equilibrium(&p, &q, tol)?;
    if !report.is_equilibrium {
        return Err(Error::CertificationFailure(format!(
            "joint program vertex fails best response by {:e}",
            report.max_violation()
        )));
    }
    let solution = EquilibriumSolution {
        slackness_residual: slackness_residual(game, &p, &q, alpha, beta),
        p,
        q,
        alpha,
        beta,
        lp_value: value,
        iterations: sol.iterations,
    };
    Ok((solution, value))
}

/// Outcome of certifying a pair as an optimal primal/dual pair of the
/// row-bound program and its dual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prop2Report {
    /// `row_violation` is the worst row of `A q - alpha* <= -pi`,
    /// `col_violation` the worst row of `A^T p + beta* >= rho`.
    pub report: EquilibriumReport,
    pub alpha: f64,
    pub beta: f64,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub objective_gap: f64,
    pub passed: bool,
}

/// Sets `alpha* = f^R(p, q)` and `beta* = f^C(p, q)` and checks that
/// `(q, alpha*)` is primal feasible, `(p, beta*)` is dual feasible and the
/// two objective values coincide. Equal objectives at feasible points
/// certify joint optimality.
pub fn verify_prop2(
    game: &TpassGame,
    p: &MixedStrategy,
    q: &MixedStrategy,
    tol: f64,
) -> Result<Prop2Report> {
    check_tol(tol)?;
    let alpha = game.payoff_row(p, q)?;
    let beta = game.payoff_col(p, q)?;

    let primal = build_lp1(game);
    let mut xq = q.weights().to_vec();
    xq.push(alpha);
    let dual = build_dual_lp1(game);
    let mut xp = p.weights().to_vec();
    xp.push(beta);

    let report = EquilibriumReport::new(
        primal.primal_violation(&xq),
        dual.primal_violation(&xp),
        p.simplex_violation().max(q.simplex_violation()),
        tol,
    );
    let primal_objective = primal.objective_at(&xq);
    let dual_objective = dual.objective_at(&xp);
    let objective_gap = (primal_objective - dual_objective).abs();
    Ok(Prop2Report {
        passed: report.is_equilibrium && objective_gap <= tol,
        report,
        alpha,
        beta,
        primal_objective,
        dual_objective,
        objective_gap,
    })
}

/// Whether `(p, q, f^R(p,q), f^C(p,q))` is feasible for the joint program.
/// That choice of scalars makes the objective exactly zero, so feasibility
/// is optimality.
pub fn check_prop3(game: &TpassGame, p: &MixedStrategy, q: &MixedStrategy, tol: f64) -> Result<bool> {
    Ok(prop3_violation(game, p, q, tol)? <= tol)
}

/// Largest constraint violation of the joint program at
/// `(p, q, f^R(p,q), f^C(p,q))`.
pub fn prop3_violation(
    game: &TpassGame,
    p: &MixedStrategy,
    q: &MixedStrategy,
    tol: f64,
) -> Result<f64> {
    check_tol(tol)?;
    let alpha = game.payoff_row(p, q)?;
    let beta = game.payoff_col(p, q)?;
    let model = build_prop3_lp(game);
    let mut x = p.weights().to_vec();
    x.extend_from_slice(q.weights());
    x.extend([alpha, beta]);
    Ok(model.primal_violation(&x))
}

/// Joint-program scalars `(max_i (A q + pi)_i, max_j (-A^T p + rho)_j)` that
/// make any strategy pair feasible.
pub fn feasible_scalars(game: &TpassGame, p: &MixedStrategy, q: &MixedStrategy) -> (f64, f64) {
    (
        max_of(&game.row_deviation_payoffs(q.weights())),
        max_of(&game.col_deviation_payoffs(p.weights())),
    )
}
