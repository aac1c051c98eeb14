//! The game file format.
//!
//! A game file is a UTF-8 JSON object discriminated by `kind`:
//!
//! ```json
//! { "kind": "tpass", "A": [[0, 1], [-1, 0]], "pi": ["1/2", "3/4"], "rho": [0.5, 0.75] }
//! { "kind": "bimatrix", "B": [[1, 0], [0, 1]], "C": [[0, 1], [1, 0]] }
//! ```
//!
//! Every number may be a JSON number or a string holding a decimal literal
//! or an exact fraction `"num/den"`.

use serde::Serialize;
use serde_json::Value;

use crate::decompose::BimatrixGame;
use crate::error::{Error, Result};
use crate::game::TpassGame;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub enum GameFile {
    Tpass(TpassGame),
    Bimatrix(BimatrixGame),
}

impl GameFile {
    pub fn kind(&self) -> &'static str {
        match self {
            GameFile::Tpass(_) => "tpass",
            GameFile::Bimatrix(_) => "bimatrix",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::input(format!("not valid JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::input("game file must be a JSON object"))?;
        let kind = obj
            .get("kind")
            .ok_or_else(|| Error::input("field `kind`: missing"))?
            .as_str()
            .ok_or_else(|| Error::input("field `kind`: expected a string"))?;
        match kind {
            "tpass" => {
                let a = matrix_field(obj, "A")?;
                let pi = vector_field(obj, "pi")?;
                let rho = vector_field(obj, "rho")?;
                if pi.len() != a.rows() {
                    return Err(Error::input(format!(
                        "field `pi`: length {} does not match {} rows of `A`",
                        pi.len(),
                        a.rows()
                    )));
                }
                if rho.len() != a.cols() {
                    return Err(Error::input(format!(
                        "field `rho`: length {} does not match {} columns of `A`",
                        rho.len(),
                        a.cols()
                    )));
                }
                Ok(GameFile::Tpass(TpassGame::new(a, pi, rho)?))
            }
            "bimatrix" => {
                let b = matrix_field(obj, "B")?;
                let c = matrix_field(obj, "C")?;
                if (b.rows(), b.cols()) != (c.rows(), c.cols()) {
                    return Err(Error::input(format!(
                        "field `C`: shape {}x{} does not match `B` ({}x{})",
                        c.rows(),
                        c.cols(),
                        b.rows(),
                        b.cols()
                    )));
                }
                Ok(GameFile::Bimatrix(BimatrixGame::new(b, c)?))
            }
            other => Err(Error::input(format!(
                "field `kind`: unknown kind {other:?} (expected \"tpass\" or \"bimatrix\")"
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Tpass<'a> {
            kind: &'a str,
            #[serde(rename = "A")]
            a: Vec<Vec<f64>>,
            pi: &'a [f64],
            rho: &'a [f64],
        }
        #[derive(Serialize)]
        struct Bimatrix<'a> {
            kind: &'a str,
            #[serde(rename = "B")]
            b: Vec<Vec<f64>>,
            #[serde(rename = "C")]
            c: Vec<Vec<f64>>,
        }
        let mut out = match self {
            GameFile::Tpass(g) => serde_json::to_string_pretty(&Tpass {
                kind: "tpass",
                a: g.kernel().to_rows(),
                pi: g.pi(),
                rho: g.rho(),
            }),
            GameFile::Bimatrix(g) => serde_json::to_string_pretty(&Bimatrix {
                kind: "bimatrix",
                b: g.row_payoffs().to_rows(),
                c: g.col_payoffs().to_rows(),
            }),
        }
        .expect("finite floats always serialize");
        out.push('\n');
        out
    }
}

/// Parses a decimal literal or a fraction `num/den` (both parts decimal).
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_decimal(num)?;
            let den = parse_decimal(den)?;
            if den == 0.0 {
                return Err(Error::input(format!("zero denominator in {s:?}")));
            }
            num / den
        }
        None => parse_decimal(s)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::input(format!("{s:?} is not a finite number")))
    }
}

fn parse_decimal(s: &str) -> Result<f64> {
    let s = s.trim();
    // f64::from_str accepts "inf" and "NaN"; only plain decimals are allowed.
    let ok = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    if !ok {
        return Err(Error::input(format!("{s:?} is not a decimal number")));
    }
    s.parse::<f64>()
        .map_err(|_| Error::input(format!("{s:?} is not a decimal number")))
}

fn number(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::input(format!("{n} is out of range"))),
        Value::String(s) => parse_number(s),
        other => Err(Error::input(format!("expected a number, got {other}"))),
    }
}

fn vector(v: &Value) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("expected an array of numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(k, x)| number(x).map_err(|e| Error::input(format!("entry {}: {}", k + 1, msg(&e)))))
        .collect()
}

fn msg(e: &Error) -> String {
    match e {
        Error::Input(m) => m.clone(),
        other => other.to_string(),
    }
}

fn vector_field(obj: &serde_json::Map<String, Value>, name: &str) -> Result<Vec<f64>> {
    let v = obj
        .get(name)
        .ok_or_else(|| Error::input(format!("field `{name}`: missing")))?;
    let out = vector(v).map_err(|e| Error::input(format!("field `{name}`: {}", msg(&e))))?;
    if out.is_empty() {
        return Err(Error::input(format!("field `{name}`: empty")));
    }
    Ok(out)
}

fn matrix_field(obj: &serde_json::Map<String, Value>, name: &str) -> Result<Matrix> {
    let field_err = |m: String| Error::input(format!("field `{name}`: {m}"));
    let v = obj.get(name).ok_or_else(|| field_err("missing".into()))?;
    let rows = v
        .as_array()
        .ok_or_else(|| field_err("expected an array of rows".into()))?;
    if rows.is_empty() {
        return Err(field_err("empty".into()));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r).map_err(|e| field_err(format!("row {}: {}", i + 1, msg(&e)))))
        .collect::<Result<Vec<_>>>()?;
    if rows[0].is_empty() {
        return Err(field_err("rows are empty".into()));
    }
    Matrix::from_rows(&rows).map_err(|e| field_err(msg(&e)))
}
