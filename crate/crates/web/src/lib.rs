//! wasm-bindgen entry points for the browser demo.
//!
//! Each export takes a game file as JSON text and returns JSON text. Failures
//! come back as `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use tpass::decompose::{scaled_tolerance, TOL_SEPARABLE};
use tpass::gamefile::GameFile;
use tpass::oracle::DEFAULT_SIZE_CAP;
use tpass::{
    compose, decompose, enumerate_equilibria, is_separable_sum, solve_equilibrium, Error,
    TpassGame,
};
use wasm_bindgen::prelude::wasm_bindgen;

const TOL: f64 = 1e-8;

fn respond(result: Result<Value, Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn as_tpass(file: GameFile) -> Result<TpassGame, Error> {
    match file {
        GameFile::Tpass(g) => Ok(g),
        GameFile::Bimatrix(bg) => Ok(decompose(&bg, scaled_tolerance(&bg, TOL_SEPARABLE))?.game),
    }
}

/// One equilibrium from the row-bound program, with both payoff matrices.
pub fn solve_json(game: &str) -> String {
    respond((|| {
        let g = as_tpass(GameFile::parse(game)?)?;
        let sol = solve_equilibrium(&g, TOL)?;
        let (b, c) = g.payoff_matrices();
        let cells: Vec<Value> = g
            .pareto_superior_cells(sol.alpha, sol.beta)
            .into_iter()
            .map(|(i, j, u, v)| json!({ "row": i, "col": j, "payoffs": [u, v] }))
            .collect();
        Ok(json!({
            "p": sol.p.weights(),
            "q": sol.q.weights(),
            "alpha": sol.alpha,
            "beta": sol.beta,
            "B": b.to_rows(),
            "C": c.to_rows(),
            "pareto_superior": cells,
        }))
    })())
}

/// Separability test for a bimatrix game, with (A, pi, rho) when it passes.
pub fn decompose_json(game: &str) -> String {
    respond((|| {
        let bg = match GameFile::parse(game)? {
            GameFile::Bimatrix(bg) => bg,
            GameFile::Tpass(g) => compose(&g),
        };
        let tol = scaled_tolerance(&bg, TOL_SEPARABLE);
        let (separable, residual) = is_separable_sum(&bg, tol)?;
        let mut out = json!({ "separable": separable, "tetrad_residual": residual });
        if separable {
            let d = decompose(&bg, tol)?;
            out["A"] = json!(d.game.kernel().to_rows());
            out["pi"] = json!(d.game.pi());
            out["rho"] = json!(d.game.rho());
        }
        Ok(out)
    })())
}

/// Every equilibrium found by support enumeration.
pub fn enumerate_json(game: &str) -> String {
    respond((|| {
        let bg = match GameFile::parse(game)? {
            GameFile::Bimatrix(bg) => bg,
            GameFile::Tpass(g) => compose(&g),
        };
        let list: Vec<Value> = enumerate_equilibria(&bg, TOL)?
            .into_iter()
            .map(|e| {
                json!({
                    "p": e.p.weights(),
                    "q": e.q.weights(),
                    "payoffs": [e.row_payoff, e.col_payoff],
                })
            })
            .collect();
        Ok(json!({ "equilibria": list, "cap": DEFAULT_SIZE_CAP }))
    })())
}

#[wasm_bindgen]
pub fn solve(game: &str) -> String {
    solve_json(game)
}

#[wasm_bindgen(js_name = decompose)]
pub fn decompose_game(game: &str) -> String {
    decompose_json(game)
}

#[wasm_bindgen]
pub fn enumerate(game: &str) -> String {
    enumerate_json(game)
}
