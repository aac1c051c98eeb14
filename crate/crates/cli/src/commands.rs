use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use tpass::decompose::{scaled_tolerance, tetrad_residual, TOL_SEPARABLE};
use tpass::equilibrium::prop3_violation;
use tpass::gamefile::{parse_number, GameFile};
use tpass::oracle::{enumerate_equilibria, DEFAULT_SIZE_CAP};
use tpass::{
    check_prop3, compose, cross_check, decompose as split, is_separable_sum, random_tpass,
    solve_equilibrium, solve_prop3, verify_prop2, BimatrixGame, Error, MixedStrategy, TpassGame,
};

use crate::format::{matrix, num, vector};
use crate::{Format, Method};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub type CliResult = Result<u8, CliError>;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) => EXIT_INPUT,
            Error::NotSeparable { .. } => EXIT_NEGATIVE,
            Error::SolverFailure(_) | Error::CertificationFailure(_) => EXIT_INTERNAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(input_error(format!("--tol must be positive, got {tol}")))
    }
}

fn read_game(path: &Path) -> Result<GameFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    GameFile::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// A TPASS game from either file kind. Bimatrix input is decomposed with a
/// notice on stderr; non-separable input is a negative verdict.
fn read_tpass(path: &Path) -> Result<TpassGame, CliError> {
    match read_game(path)? {
        GameFile::Tpass(g) => Ok(g),
        GameFile::Bimatrix(bg) => {
            let tol = scaled_tolerance(&bg, TOL_SEPARABLE);
            let d = split(&bg, tol)?;
            eprintln!(
                "note: bimatrix input decomposed into (A, pi, rho); tetrad residual {}",
                num(tetrad_residual(&bg))
            );
            Ok(d.game)
        }
    }
}

fn within_oracle_cap(g: &TpassGame) -> bool {
    g.m() <= DEFAULT_SIZE_CAP && g.n() <= DEFAULT_SIZE_CAP
}

pub fn solve(path: &Path, tol: f64, method: Method, format: Format) -> CliResult {
    check_tol(tol)?;
    let game = read_tpass(path)?;
    let sol = match method {
        Method::Lp1 => solve_equilibrium(&game, tol)?,
        Method::Prop3 => solve_prop3(&game, tol)?.0,
    };
    let report = game.is_equilibrium(&sol.p, &sol.q, tol)?;
    let oracle = if within_oracle_cap(&game) {
        Some(cross_check(&game, &sol, tol)?)
    } else {
        None
    };
    let method_name = match method {
        Method::Lp1 => "lp1",
        Method::Prop3 => "prop3",
    };
    match format {
        Format::Json => {
            let out = json!({
                "status": "optimal",
                "method": method_name,
                "p": sol.p.weights(),
                "q": sol.q.weights(),
                "alpha": sol.alpha,
                "beta": sol.beta,
                "objective": sol.lp_value,
                "residuals": {
                    "slackness": sol.slackness_residual,
                    "row_violation": report.row_violation,
                    "col_violation": report.col_violation,
                    "simplex_violation": report.simplex_violation,
                },
                "checks": {
                    "best_response": report.is_equilibrium,
                    "oracle": oracle,
                },
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text => {
            println!("method     {method_name}");
            println!("p          {}", vector(sol.p.weights()));
            println!("q          {}", vector(sol.q.weights()));
            println!("alpha      {}", num(sol.alpha));
            println!("beta       {}", num(sol.beta));
            println!("objective  {}", num(sol.lp_value));
            println!("slackness  {}", num(sol.slackness_residual));
            println!(
                "best response  {} (row {}, col {})",
                verdict(report.is_equilibrium),
                num(report.row_violation),
                num(report.col_violation)
            );
            match oracle {
                Some(ok) => println!("oracle         {}", if ok { "confirmed" } else { "REJECTED" }),
                None => println!("oracle         skipped (larger than {DEFAULT_SIZE_CAP}x{DEFAULT_SIZE_CAP})"),
            }
        }
    }
    if oracle == Some(false) {
        return Err(CliError {
            code: EXIT_INTERNAL,
            message: "support enumeration does not confirm the LP equilibrium".into(),
        });
    }
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn parse_strategy(flag: &str, text: &str) -> Result<MixedStrategy, CliError> {
    let weights = text
        .split(',')
        .enumerate()
        .map(|(k, s)| {
            parse_number(s).map_err(|e| input_error(format!("--{flag} entry {}: {e}", k + 1)))
        })
        .collect::<Result<Vec<f64>, CliError>>()?;
    MixedStrategy::new(weights).map_err(|e| input_error(format!("--{flag}: {e}")))
}

pub fn verify(path: &Path, p: &str, q: &str, tol: f64) -> CliResult {
    check_tol(tol)?;
    let game = read_tpass(path)?;
    let p = parse_strategy("p", p)?;
    let q = parse_strategy("q", q)?;
    let br = game.is_equilibrium(&p, &q, tol)?;
    let lp = verify_prop2(&game, &p, &q, tol)?;
    let joint = check_prop3(&game, &p, &q, tol)?;
    let joint_violation = prop3_violation(&game, &p, &q, tol)?;

    println!("payoffs         ({}, {})", num(lp.alpha), num(lp.beta));
    println!(
        "best response   {}  row_violation {}  col_violation {}",
        verdict(br.is_equilibrium),
        num(br.row_violation),
        num(br.col_violation)
    );
    println!(
        "lp certificate  {}  primal_violation {}  dual_violation {}  objective_gap {}",
        verdict(lp.passed),
        num(lp.report.row_violation),
        num(lp.report.col_violation),
        num(lp.objective_gap)
    );
    println!(
        "joint program   {}  violation {}",
        verdict(joint),
        num(joint_violation)
    );
    Ok(if br.is_equilibrium && lp.passed && joint {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

pub fn decompose(path: &Path, tol: Option<f64>, format: Format) -> CliResult {
    let bg = match read_game(path)? {
        GameFile::Bimatrix(bg) => bg,
        GameFile::Tpass(_) => {
            return Err(input_error(format!(
                "{}: decompose expects a bimatrix game file",
                path.display()
            )))
        }
    };
    let tol = match tol {
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => return Err(input_error(format!("--tol must be nonnegative, got {t}"))),
        None => scaled_tolerance(&bg, TOL_SEPARABLE),
    };
    let (separable, residual) = is_separable_sum(&bg, tol)?;
    let result = if separable { Some(split(&bg, tol)?) } else { None };
    match format {
        Format::Json => {
            let mut out = json!({
                "separable": separable,
                "tetrad_residual": residual,
                "tol": tol,
            });
            if let Some(d) = &result {
                out["A"] = json!(d.game.kernel().to_rows());
                out["pi"] = json!(d.game.pi());
                out["rho"] = json!(d.game.rho());
                out["round_trip_residual"] = json!(d.max_residual);
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text => {
            println!(
                "separable       {}",
                if separable { "yes" } else { "no" }
            );
            println!("tetrad residual {}", num(residual));
            if let Some(d) = &result {
                println!("A =\n{}", matrix(&d.game.kernel().to_rows(), "  "));
                println!("pi  = {}", vector(d.game.pi()));
                println!("rho = {}", vector(d.game.rho()));
                println!("round-trip residual {}", num(d.max_residual));
            }
        }
    }
    Ok(if separable { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn enumerate(path: &Path, tol: f64) -> CliResult {
    check_tol(tol)?;
    let bg: BimatrixGame = match read_game(path)? {
        GameFile::Tpass(g) => compose(&g),
        GameFile::Bimatrix(bg) => bg,
    };
    for e in enumerate_equilibria(&bg, tol)? {
        println!(
            "p={} q={} payoffs=({}, {})",
            vector(e.p.weights()),
            vector(e.q.weights()),
            num(e.row_payoff),
            num(e.col_payoff)
        );
    }
    Ok(EXIT_OK)
}

pub fn demo(name: &str, format: Format) -> CliResult {
    if name != "pd" {
        return Err(input_error(format!("unknown demo {name:?} (available: pd)")));
    }
    let game = TpassGame::prisoners_dilemma();
    let (b, c) = game.payoff_matrices();
    let sol = solve_equilibrium(&game, 1e-8)?;
    let cells = game.pareto_superior_cells(sol.alpha, sol.beta);
    // The often-quoted misprint has 3/4 at B(1,2) and C(2,1).
    let misprint = BimatrixGame::from_rows(
        &[[0.5, 0.75], [-0.25, 0.75]],
        &[[0.5, -0.25], [0.75, 0.75]],
    )?;
    let misprint_residual = tetrad_residual(&misprint);

    match format {
        Format::Json => {
            let out = json!({
                "name": "pd",
                "A": game.kernel().to_rows(),
                "pi": game.pi(),
                "rho": game.rho(),
                "B": b.to_rows(),
                "C": c.to_rows(),
                "equilibrium": {
                    "p": sol.p.weights(),
                    "q": sol.q.weights(),
                    "alpha": sol.alpha,
                    "beta": sol.beta,
                },
                "pareto_superior": cells.iter().map(|&(i, j, u, v)| json!({
                    "row": i, "col": j, "payoffs": [u, v],
                })).collect::<Vec<Value>>(),
                "misprint": {
                    "B": misprint.row_payoffs().to_rows(),
                    "C": misprint.col_payoffs().to_rows(),
                    "tetrad_residual": misprint_residual,
                    "separable": false,
                },
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text => {
            println!("Prisoner's dilemma as a TPASS game");
            println!("strategy 1 = defect, strategy 2 = cooperate\n");
            println!("A =\n{}", matrix(&game.kernel().to_rows(), "  "));
            println!("pi = rho = {}\n", vector(game.pi()));
            println!("row payoffs B = A + R(pi):\n{}", matrix(&b.to_rows(), "  "));
            println!("column payoffs C = -A + C(rho):\n{}\n", matrix(&c.to_rows(), "  "));
            println!(
                "note: a commonly circulated version of these matrices shows 3/4 at B(1,2)\n\
                 and C(2,1). Those entries do not follow from (A, pi, rho), and that pair\n\
                 is not even separable (tetrad residual {}). The matrices above are\n\
                 computed from the definition.\n",
                num(misprint_residual)
            );
            println!(
                "unique equilibrium   p={} q={} payoffs=({}, {})",
                vector(sol.p.weights()),
                vector(sol.q.weights()),
                num(sol.alpha),
                num(sol.beta)
            );
            for (i, j, u, v) in cells {
                println!(
                    "pareto-superior cell (row {i}, col {j}) payoffs=({}, {}) is not an equilibrium",
                    num(u),
                    num(v)
                );
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn random(
    m: usize,
    n: usize,
    lo: f64,
    hi: f64,
    seed: u64,
    output: Option<&Path>,
) -> CliResult {
    let game = random_tpass(m, n, lo, hi, seed)?;
    let text = GameFile::Tpass(game).to_json();
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError {
            code: EXIT_INTERNAL,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}
