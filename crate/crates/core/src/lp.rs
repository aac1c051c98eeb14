//! General-form linear programs and a dense two-phase primal simplex solver.
//!
//! Models carry a sense, an objective, a list of `<=`/`=`/`>=` rows and a
//! bound class per variable (nonnegative or free). Free variables are split
//! into positive and negative parts internally; the reported solution
//! recombines them.
//!
//! Dual values follow the sensitivity convention: `duals[i]` is the rate of
//! change of the optimal objective with respect to `rhs[i]`. For a maximize
//! model that makes `<=` rows nonnegative and `>=` rows nonpositive; for a
//! minimize model the signs flip. They come from the final basis, not from a
//! separate solve of the dual.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{dot, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub bounds: Vec<VarBound>,
    pub constraints: Vec<Constraint>,
}

impl LpModel {
    /// A model over `objective.len()` nonnegative variables with no rows.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let bounds = vec![VarBound::NonNegative; objective.len()];
        LpModel {
            sense,
            objective,
            bounds,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.bounds[var] = VarBound::Free;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::input(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        if !self.objective.iter().all(|x| x.is_finite()) {
            return Err(Error::input("objective coefficients must be finite"));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::input(format!(
                    "constraint {} has {} coefficients for {} variables",
                    i + 1,
                    c.coeffs.len(),
                    n
                )));
            }
            if !c.rhs.is_finite() || !c.coeffs.iter().all(|x| x.is_finite()) {
                return Err(Error::input(format!(
                    "constraint {} has non-finite entries",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        dot(&self.objective, x)
    }

    /// `b^T y`, the dual objective at multipliers `y`.
    pub fn dual_objective_at(&self, y: &[f64]) -> f64 {
        self.constraints.iter().zip(y).map(|(c, yi)| c.rhs * yi).sum()
    }

    /// `rhs_i - a_i x` for each row.
    pub fn slacks(&self, x: &[f64]) -> Vec<f64> {
        self.constraints
            .iter()
            .map(|c| c.rhs - dot(&c.coeffs, x))
            .collect()
    }

    /// `c_j - (A^T y)_j` for each variable.
    pub fn reduced_costs(&self, y: &[f64]) -> Vec<f64> {
        let mut rc = self.objective.clone();
        for (c, yi) in self.constraints.iter().zip(y) {
            for (r, a) in rc.iter_mut().zip(&c.coeffs) {
                *r -= a * yi;
            }
        }
        rc
    }

    /// Largest violation of rows and variable bounds at `x`.
    pub fn primal_violation(&self, x: &[f64]) -> f64 {
        let mut v = 0.0f64;
        for (c, s) in self.constraints.iter().zip(self.slacks(x)) {
            let viol = match c.relation {
                Relation::Le => -s,
                Relation::Ge => s,
                Relation::Eq => s.abs(),
            };
            v = v.max(viol);
        }
        for (b, xj) in self.bounds.iter().zip(x) {
            if *b == VarBound::NonNegative {
                v = v.max(-xj);
            }
        }
        v.max(0.0)
    }

    /// Largest violation of dual feasibility at `y` (sensitivity convention).
    pub fn dual_violation(&self, y: &[f64]) -> f64 {
        // Orientation: +1 when the sign pattern is that of a maximize model.
        let s = match self.sense {
            Sense::Maximize => 1.0,
            Sense::Minimize => -1.0,
        };
        let mut v = 0.0f64;
        for (c, yi) in self.constraints.iter().zip(y) {
            let viol = match c.relation {
                Relation::Le => -s * yi,
                Relation::Ge => s * yi,
                Relation::Eq => 0.0,
            };
            v = v.max(viol);
        }
        for (b, rc) in self.bounds.iter().zip(self.reduced_costs(y)) {
            let viol = match b {
                VarBound::NonNegative => s * rc,
                VarBound::Free => rc.abs(),
            };
            v = v.max(viol);
        }
        v.max(0.0)
    }

    /// Same program up to row order and row scaling by `-1`: rows are
    /// compared after rewriting `>=` as `<=` and giving each `=` row a
    /// positive leading coefficient.
    pub fn equivalent(&self, other: &LpModel, tol: f64) -> bool {
        if self.sense != other.sense
            || self.bounds != other.bounds
            || self.num_constraints() != other.num_constraints()
            || !close(&self.objective, &other.objective, tol)
        {
            return false;
        }
        let mut theirs: Vec<Option<Constraint>> =
            other.constraints.iter().map(|c| Some(normalized(c))).collect();
        for c in &self.constraints {
            let c = normalized(c);
            let hit = theirs.iter_mut().find(|o| {
                o.as_ref().is_some_and(|o| {
                    o.relation == c.relation
                        && (o.rhs - c.rhs).abs() <= tol
                        && close(&o.coeffs, &c.coeffs, tol)
                })
            });
            match hit {
                Some(slot) => *slot = None,
                None => return false,
            }
        }
        true
    }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn normalized(c: &Constraint) -> Constraint {
    let negate = match c.relation {
        Relation::Ge => true,
        Relation::Le => false,
        Relation::Eq => c
            .coeffs
            .iter()
            .find(|x| **x != 0.0)
            .map_or(c.rhs < 0.0, |x| *x < 0.0),
    };
    if negate {
        Constraint {
            coeffs: c.coeffs.iter().map(|x| -x).collect(),
            relation: c.relation.flipped(),
            rhs: -c.rhs,
        }
    } else {
        c.clone()
    }
}

/// The LP dual. Multipliers of `>=` rows in a maximize model (and `<=` rows
/// in a minimize model) are sign-restricted to be nonpositive; they appear
/// negated so every dual variable is either nonnegative or free.
pub fn dualize(model: &LpModel) -> LpModel {
    let (dual_sense, var_rel, flip_row) = match model.sense {
        Sense::Maximize => (Sense::Minimize, Relation::Ge, Relation::Ge),
        Sense::Minimize => (Sense::Maximize, Relation::Le, Relation::Le),
    };
    let k = model.num_constraints();
    let mut objective = Vec::with_capacity(k);
    let mut bounds = Vec::with_capacity(k);
    let mut sign = Vec::with_capacity(k);
    for c in &model.constraints {
        let s = if c.relation == flip_row { -1.0 } else { 1.0 };
        sign.push(s);
        objective.push(s * c.rhs);
        bounds.push(if c.relation == Relation::Eq {
            VarBound::Free
        } else {
            VarBound::NonNegative
        });
    }
    let constraints = (0..model.num_vars())
        .map(|j| Constraint {
            coeffs: model
                .constraints
                .iter()
                .zip(&sign)
                .map(|(c, s)| s * c.coeffs[j])
                .collect(),
            relation: match model.bounds[j] {
                VarBound::NonNegative => var_rel,
                VarBound::Free => Relation::Eq,
            },
            rhs: model.objective[j],
        })
        .collect();
    LpModel {
        sense: dual_sense,
        objective,
        bounds,
        constraints,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LpTolerances {
    /// Primal and dual feasibility.
    pub feas: f64,
    /// Primal/dual objective agreement.
    pub gap: f64,
    /// Smallest admissible pivot magnitude.
    pub pivot_eps: f64,
    /// Non-improving iterations, per row, before switching to Bland's rule.
    pub stall_per_row: usize,
}

impl Default for LpTolerances {
    fn default() -> Self {
        LpTolerances {
            feas: 1e-9,
            gap: 1e-8,
            pivot_eps: 1e-11,
            stall_per_row: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`solve`]. `x` and `duals` are empty unless the status is
/// `Optimal`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub duals: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// `max |dual_i * slack_i|` over rows and `max |x_j * reduced_cost_j|` over
/// variables, and whether that is within `tol`.
pub fn check_complementary_slackness(
    model: &LpModel,
    sol: &LpSolution,
    tol: f64,
) -> Result<(bool, f64)> {
    if !sol.is_optimal() {
        return Err(Error::input(format!(
            "complementary slackness needs an optimal solution, got {:?}",
            sol.status
        )));
    }
    if sol.x.len() != model.num_vars() || sol.duals.len() != model.num_constraints() {
        return Err(Error::input("solution does not match model dimensions"));
    }
    let rows = model
        .slacks(&sol.x)
        .iter()
        .zip(&sol.duals)
        .fold(0.0f64, |m, (s, y)| m.max((s * y).abs()));
    let cols = model
        .reduced_costs(&sol.duals)
        .iter()
        .zip(&sol.x)
        .fold(0.0f64, |m, (r, x)| m.max((r * x).abs()));
    let r = rows.max(cols);
    Ok((r <= tol, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

/// Standard-form working copy: `max c^T x, T x = b, x >= 0`, in tableau form.
struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows x (cols + 1)`; the last column is the right-hand side.
    t: Vec<f64>,
    /// Original standard-form columns, for refinement of the final basis.
    a0: Matrix,
    b0: Vec<f64>,
    kind: Vec<ColKind>,
    basis: Vec<usize>,
    /// Column that formed the initial identity for each row.
    unit_col: Vec<usize>,
    iterations: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * (self.cols + 1) + c]
    }

    #[inline]
    fn rhs(&self, r: usize) -> f64 {
        self.t[r * (self.cols + 1) + self.cols]
    }

    fn pivot(&mut self, pr: usize, pc: usize, obj: &mut [f64]) {
        let w = self.cols + 1;
        let p = self.t[pr * w + pc];
        for c in 0..w {
            self.t[pr * w + c] /= p;
        }
        self.t[pr * w + pc] = 1.0;
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.t[r * w + pc];
            if f == 0.0 {
                continue;
            }
            for c in 0..w {
                self.t[r * w + c] -= f * self.t[pr * w + c];
            }
            self.t[r * w + pc] = 0.0;
        }
        let f = obj[pc];
        if f != 0.0 {
            for c in 0..w {
                obj[c] -= f * self.t[pr * w + c];
            }
            obj[pc] = 0.0;
        }
        self.basis[pr] = pc;
        self.iterations += 1;
    }

    /// Reduced-cost row `c - c_B^T T` (last entry is `-c_B^T b`).
    fn objective_row(&self, cost: &[f64]) -> Vec<f64> {
        let w = self.cols + 1;
        let mut obj: Vec<f64> = cost.iter().copied().chain(std::iter::once(0.0)).collect();
        for r in 0..self.rows {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for c in 0..w {
                    obj[c] -= cb * self.t[r * w + c];
                }
            }
        }
        obj
    }

    fn run_phase(
        &mut self,
        obj: &mut [f64],
        allowed: &dyn Fn(ColKind) -> bool,
        tol: &LpTolerances,
        max_iter: usize,
    ) -> Result<PhaseEnd> {
        let opt_tol = tol.feas * 1e-1;
        let stall_limit = tol.stall_per_row * self.rows.max(1);
        let mut bland = false;
        let mut stall = 0usize;
        let mut best = -obj[self.cols];
        let start = self.iterations;
        loop {
            if self.iterations - start > max_iter {
                return Err(Error::SolverFailure(format!(
                    "iteration limit {max_iter} reached (bland={bland})"
                )));
            }
            let candidates = (0..self.cols).filter(|&c| allowed(self.kind[c]) && obj[c] > opt_tol);
            let entering = if bland {
                candidates.min()
            } else {
                candidates.fold(None, |acc: Option<usize>, c| match acc {
                    Some(a) if obj[a] >= obj[c] => Some(a),
                    _ => Some(c),
                })
            };
            let Some(pc) = entering else {
                return Ok(PhaseEnd::Optimal);
            };

            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a <= tol.pivot_eps {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        let tie = (ratio - lratio).abs() <= 1e-12 * (1.0 + lratio.abs());
                        if ratio < lratio && !tie
                            || tie && self.basis[r] < self.basis[lr]
                        {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
            let Some((pr, _)) = leave else {
                let max_entry = (0..self.rows).map(|r| self.at(r, pc)).fold(0.0, f64::max);
                if max_entry > 0.0 && bland {
                    return Err(Error::SolverFailure(format!(
                        "pivot magnitude {max_entry:e} below {:e} in column {pc}",
                        tol.pivot_eps
                    )));
                }
                return Ok(PhaseEnd::Unbounded);
            };
            self.pivot(pr, pc, obj);

            let value = -obj[self.cols];
            if value > best + 1e-12 * (1.0 + best.abs()) {
                best = value;
                stall = 0;
            } else {
                stall += 1;
                if stall >= stall_limit {
                    bland = true;
                }
            }
        }
    }

    /// Recomputes basic values and simplex multipliers from the original
    /// columns of the final basis.
    fn refine(&self, cost: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
        let m = self.rows;
        let basis_mat = Matrix::from_fn(m, m, |i, k| self.a0.get(i, self.basis[k]));
        let xb = linalg::solve(&basis_mat, &self.b0)?;
        let cb: Vec<f64> = self.basis.iter().map(|&c| cost[c]).collect();
        let y = linalg::solve(&basis_mat.transpose(), &cb)?;
        Some((xb, y))
    }
}

/// Solves `model` with a two-phase dense simplex. Dantzig's rule is used
/// until the objective stalls for `stall_per_row * rows` pivots, then
/// Bland's rule takes over.
pub fn solve(model: &LpModel, tol: &LpTolerances) -> Result<LpSolution> {
    model.validate()?;
    let n = model.num_vars();
    let k = model.num_constraints();

    // Standard-form columns: one per nonnegative variable, two per free one.
    let mut split: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut ncols = 0;
    for b in &model.bounds {
        match b {
            VarBound::NonNegative => {
                split.push((ncols, None));
                ncols += 1;
            }
            VarBound::Free => {
                split.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
    }
    let n_struct = ncols;
    let obj_sign = match model.sense {
        Sense::Maximize => 1.0,
        Sense::Minimize => -1.0,
    };

    let mut flipped = vec![false; k];
    let mut rels = Vec::with_capacity(k);
    for (i, c) in model.constraints.iter().enumerate() {
        if c.rhs < 0.0 {
            flipped[i] = true;
            rels.push(c.relation.flipped());
        } else {
            rels.push(c.relation);
        }
    }
    let n_slack = rels.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = rels.iter().filter(|r| **r != Relation::Le).count();
    let total = n_struct + n_slack + n_art;

    let mut kind = vec![ColKind::Structural; n_struct];
    kind.extend(std::iter::repeat_n(ColKind::Slack, n_slack));
    kind.extend(std::iter::repeat_n(ColKind::Artificial, n_art));

    let mut a0 = Matrix::zeros(k, total);
    let mut b0 = vec![0.0; k];
    let mut basis = vec![0; k];
    let mut next_slack = n_struct;
    let mut next_art = n_struct + n_slack;
    for (i, c) in model.constraints.iter().enumerate() {
        let s = if flipped[i] { -1.0 } else { 1.0 };
        for (j, &(plus, minus)) in split.iter().enumerate() {
            a0.set(i, plus, s * c.coeffs[j]);
            if let Some(mi) = minus {
                a0.set(i, mi, -s * c.coeffs[j]);
            }
        }
        b0[i] = s * c.rhs;
        match rels[i] {
            Relation::Le => {
                a0.set(i, next_slack, 1.0);
                basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                a0.set(i, next_slack, -1.0);
                next_slack += 1;
                a0.set(i, next_art, 1.0);
                basis[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                a0.set(i, next_art, 1.0);
                basis[i] = next_art;
                next_art += 1;
            }
        }
    }

    let mut t = Vec::with_capacity(k * (total + 1));
    for i in 0..k {
        t.extend_from_slice(a0.row(i));
        t.push(b0[i]);
    }
    let mut tab = Tableau {
        rows: k,
        cols: total,
        t,
        a0,
        b0,
        kind,
        unit_col: basis.clone(),
        basis,
        iterations: 0,
    };
    let max_iter = 50_000 + 200 * (k + total);

    // Phase 1: drive the artificials to zero.
    if n_art > 0 {
        let cost1: Vec<f64> = tab
            .kind
            .iter()
            .map(|&kd| if kd == ColKind::Artificial { -1.0 } else { 0.0 })
            .collect();
        let mut obj = tab.objective_row(&cost1);
        tab.run_phase(&mut obj, &|_| true, tol, max_iter)?;
        let infeasibility = obj[total];
        let scale = 1.0 + tab.b0.iter().fold(0.0f64, |m, b| m.max(b.abs()));
        if infeasibility > tol.feas * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                objective_value: -obj_sign * f64::INFINITY,
                duals: Vec::new(),
                iterations: tab.iterations,
            });
        }
        // Pivot remaining basic artificials out where a real column allows it.
        for r in 0..k {
            if tab.kind[tab.basis[r]] != ColKind::Artificial {
                continue;
            }
            let best = (0..total)
                .filter(|&c| tab.kind[c] != ColKind::Artificial)
                .map(|c| (c, tab.at(r, c).abs()))
                .fold(None, |acc: Option<(usize, f64)>, cur| match acc {
                    Some(a) if a.1 >= cur.1 => Some(a),
                    _ => Some(cur),
                });
            if let Some((c, mag)) = best {
                if mag > tol.pivot_eps {
                    tab.pivot(r, c, &mut obj);
                }
            }
        }
    }

    // Phase 2.
    let mut cost2 = vec![0.0; total];
    for (j, &(plus, minus)) in split.iter().enumerate() {
        cost2[plus] = obj_sign * model.objective[j];
        if let Some(mi) = minus {
            cost2[mi] = -obj_sign * model.objective[j];
        }
    }
    let mut obj = tab.objective_row(&cost2);
    let end = tab.run_phase(
        &mut obj,
        &|kd| kd != ColKind::Artificial,
        tol,
        max_iter,
    )?;
    if let PhaseEnd::Unbounded = end {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective_value: obj_sign * f64::INFINITY,
            duals: Vec::new(),
            iterations: tab.iterations,
        });
    }

    // Basic values and multipliers, refined from the original data when the
    // basis is well conditioned.
    let (xb, y_std) = tab.refine(&cost2).unwrap_or_else(|| {
        let xb = (0..k).map(|r| tab.rhs(r)).collect();
        let y = tab.unit_col.iter().map(|&c| cost2[c] - obj[c]).collect();
        (xb, y)
    });
    let mut x_std = vec![0.0; total];
    for (r, &c) in tab.basis.iter().enumerate() {
        x_std[c] = xb[r];
    }
    let mut x: Vec<f64> = split
        .iter()
        .map(|&(plus, minus)| x_std[plus] - minus.map_or(0.0, |mi| x_std[mi]))
        .collect();
    for (xj, b) in x.iter_mut().zip(&model.bounds) {
        if *b == VarBound::NonNegative && *xj < 0.0 && *xj > -tol.feas {
            *xj = 0.0;
        }
    }
    let duals: Vec<f64> = y_std
        .iter()
        .zip(&flipped)
        .map(|(y, &f)| obj_sign * if f { -y } else { *y })
        .collect();

    let sol = LpSolution {
        status: LpStatus::Optimal,
        objective_value: model.objective_at(&x),
        x,
        duals,
        iterations: tab.iterations,
    };
    certify(model, &sol, tol)?;
    Ok(sol)
}

pub fn solve_default(model: &LpModel) -> Result<LpSolution> {
    solve(model, &LpTolerances::default())
}

/// Refuses to hand back an "optimal" point that is not.
fn certify(model: &LpModel, sol: &LpSolution, tol: &LpTolerances) -> Result<()> {
    let scale = 1.0
        + model
            .constraints
            .iter()
            .fold(0.0f64, |m, c| m.max(c.rhs.abs()))
        + model.objective.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let pv = model.primal_violation(&sol.x);
    if pv > tol.feas * scale {
        return Err(Error::SolverFailure(format!(
            "primal violation {pv:e} after {} pivots",
            sol.iterations
        )));
    }
    let dv = model.dual_violation(&sol.duals);
    if dv > tol.feas * scale {
        return Err(Error::SolverFailure(format!(
            "dual violation {dv:e} after {} pivots",
            sol.iterations
        )));
    }
    let gap = (sol.objective_value - model.dual_objective_at(&sol.duals)).abs();
    if gap > tol.gap * scale {
        return Err(Error::SolverFailure(format!(
            "duality gap {gap:e} after {} pivots",
            sol.iterations
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box_problem() -> LpModel {
        let mut m = LpModel::new(Sense::Maximize, vec![1.0, 1.0]);
        m.add_constraint(vec![1.0, 0.0], Relation::Le, 1.0)
            .add_constraint(vec![0.0, 1.0], Relation::Le, 1.0);
        m
    }

    #[test]
    fn box_optimum() {
        let m = box_problem();
        let s = solve_default(&m).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.x, vec![1.0, 1.0]);
        assert_eq!(s.objective_value, 2.0);
        assert_eq!(s.duals, vec![1.0, 1.0]);
        assert_eq!(check_complementary_slackness(&m, &s, 1e-12).unwrap(), (true, 0.0));
    }

    #[test]
    fn contradictory_bounds_infeasible() {
        let mut m = LpModel::new(Sense::Maximize, vec![1.0]);
        m.add_constraint(vec![1.0], Relation::Ge, 2.0)
            .add_constraint(vec![1.0], Relation::Le, 1.0);
        let s = solve_default(&m).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(s.x.is_empty());
        assert!(check_complementary_slackness(&m, &s, 1e-9).is_err());
    }

    #[test]
    fn free_ray_unbounded() {
        let m = LpModel::new(Sense::Maximize, vec![1.0]);
        assert_eq!(solve_default(&m).unwrap().status, LpStatus::Unbounded);
        let mut m = LpModel::new(Sense::Minimize, vec![1.0]);
        m.set_free(0);
        m.add_constraint(vec![1.0], Relation::Le, 3.0);
        assert_eq!(solve_default(&m).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn minimize_with_ge_rows_and_free_variable() {
        // min x + y, x + y >= 2, x - y = 1, y free  ->  x = 3/2, y = 1/2.
        let mut m = LpModel::new(Sense::Minimize, vec![1.0, 1.0]);
        m.set_free(1);
        m.add_constraint(vec![1.0, 1.0], Relation::Ge, 2.0)
            .add_constraint(vec![1.0, -1.0], Relation::Eq, 1.0);
        let s = solve_default(&m).unwrap();
        assert!((s.x[0] - 1.5).abs() < 1e-12 && (s.x[1] - 0.5).abs() < 1e-12);
        assert!((s.objective_value - 2.0).abs() < 1e-12);
        assert!((s.duals[0] - 1.0).abs() < 1e-12);
        assert!(s.duals[1].abs() < 1e-12);
    }

    #[test]
    fn negative_rhs_rows() {
        // max -x s.t. -x <= -3  ->  x = 3, dual of the row = +1.
        let mut m = LpModel::new(Sense::Maximize, vec![-1.0]);
        m.add_constraint(vec![-1.0], Relation::Le, -3.0);
        let s = solve_default(&m).unwrap();
        assert_eq!(s.x, vec![3.0]);
        assert!((s.duals[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_equality_rows() {
        let mut m = LpModel::new(Sense::Maximize, vec![1.0, 2.0]);
        m.add_constraint(vec![1.0, 1.0], Relation::Eq, 1.0)
            .add_constraint(vec![2.0, 2.0], Relation::Eq, 2.0);
        let s = solve_default(&m).unwrap();
        assert!((s.objective_value - 2.0).abs() < 1e-12);
        assert!((s.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_dual() {
        let m = box_problem();
        let d = dualize(&m);
        assert_eq!(d.sense, Sense::Minimize);
        assert_eq!(d.objective, vec![1.0, 1.0]);
        assert_eq!(d.bounds, vec![VarBound::NonNegative; 2]);
        assert!(d.constraints.iter().all(|c| c.relation == Relation::Ge));
        assert!(dualize(&d).equivalent(&m, 0.0));
    }

    #[test]
    fn equivalence_ignores_row_order_and_sign() {
        let mut a = LpModel::new(Sense::Maximize, vec![1.0, 0.0]);
        a.add_constraint(vec![1.0, 2.0], Relation::Le, 3.0)
            .add_constraint(vec![-1.0, 1.0], Relation::Eq, -1.0);
        let mut b = LpModel::new(Sense::Maximize, vec![1.0, 0.0]);
        b.add_constraint(vec![1.0, -1.0], Relation::Eq, 1.0)
            .add_constraint(vec![-1.0, -2.0], Relation::Ge, -3.0);
        assert!(a.equivalent(&b, 0.0));
        b.constraints[0].rhs = 2.0;
        assert!(!a.equivalent(&b, 1e-9));
    }

    #[test]
    fn rejects_malformed_models() {
        let mut m = LpModel::new(Sense::Maximize, vec![1.0, 1.0]);
        m.add_constraint(vec![1.0], Relation::Le, 1.0);
        assert!(matches!(solve_default(&m), Err(Error::Input(_))));
    }
}
