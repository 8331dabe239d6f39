//! The JSON game file format.
//!
//! ```json
//! { "rows": 2, "cols": 2, "parameter": null,
//!   "rowLabels": ["C", "D"], "colLabels": ["C", "D"],
//!   "payoffs": [[["3", "3"], ["0", "5"]],
//!               [["5", "0"], ["1", "1"]]] }
//! ```
//!
//! A payoff is a rational string (`"3"`, `"-1/2"`) or a coefficient list
//! `{"coeffs": ["c0", "c1", ...]}` in the game's parameter. Floats are
//! rejected; bare JSON integers are tolerated on input.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::game::{Bimatrix, PayoffPair};
use crate::poly::PayoffPoly;
use crate::rational::Rational;

pub fn parse_game(text: &[u8]) -> Result<Bimatrix> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse(format!("not UTF-8: {e}")))?;
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    parse_game_value(&value)
}

pub fn parse_game_value(value: &Value) -> Result<Bimatrix> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("a game must be a JSON object".into()))?;
    let parameter = match obj.get("parameter") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if is_identifier(s) => Some(s.as_str()),
        Some(other) => {
            return Err(Error::Parse(format!(
                "`parameter` must be an identifier or null, got {other}"
            )))
        }
    };
    let payoffs = obj
        .get("payoffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `payoffs` array".into()))?;

    let mut entries = Vec::with_capacity(payoffs.len());
    for (i, row) in payoffs.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("payoff row {} is not an array", i + 1)))?;
        let mut parsed = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            let pair = cell.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Parse(format!("payoff ({}, {}) must be a pair", i + 1, j + 1))
            })?;
            parsed.push(PayoffPair::new(
                parse_payoff(&pair[0], parameter)?,
                parse_payoff(&pair[1], parameter)?,
            ));
        }
        entries.push(parsed);
    }
    let game = Bimatrix::new(entries)?.with_parameter(parameter)?;

    for (key, actual) in [("rows", game.rows()), ("cols", game.cols())] {
        match obj.get(key) {
            None => {}
            Some(v) => match v.as_u64() {
                Some(n) if n as usize == actual => {}
                Some(n) => {
                    return Err(Error::Shape(format!(
                        "`{key}` says {n} but the payoffs have {actual}"
                    )))
                }
                None => return Err(Error::Parse(format!("`{key}` must be a positive integer"))),
            },
        }
    }
    let row_labels = parse_labels(obj, "rowLabels")?;
    let col_labels = parse_labels(obj, "colLabels")?;
    game.with_labels(row_labels, col_labels)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_labels(obj: &Map<String, Value>, key: &str) -> Result<Option<Vec<String>>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Parse(format!("`{key}` must hold strings")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Some(_) => Err(Error::Parse(format!("`{key}` must be an array"))),
    }
}

fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse(),
        Value::Number(n) => Err(Error::Parse(format!(
            "floating-point payoff {n}; write it as a fraction string"
        ))),
        other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
    }
}

fn parse_payoff(v: &Value, parameter: Option<&str>) -> Result<PayoffPoly> {
    let Value::Object(obj) = v else {
        return parse_rational(v).map(PayoffPoly::constant);
    };
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polynomial payoff needs a `coeffs` array".into()))?
        .iter()
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    let name = match obj.get("parameter") {
        None | Some(Value::Null) => parameter,
        Some(Value::String(own)) => {
            if parameter.is_some_and(|p| p != own) {
                return Err(Error::Param(format!(
                    "entry uses `{own}` but the game's parameter is `{}`",
                    parameter.unwrap_or_default()
                )));
            }
            Some(own.as_str())
        }
        Some(_) => return Err(Error::Parse("entry `parameter` must be a string".into())),
    };
    let poly = PayoffPoly::new(coeffs, name)?;
    if !poly.is_constant() && parameter.is_none() {
        return Err(Error::Param(
            "polynomial payoff in a game that declares no parameter".into(),
        ));
    }
    Ok(poly)
}

#[derive(Serialize)]
#[serde(untagged)]
enum PayoffJson {
    Constant(String),
    Poly { coeffs: Vec<String> },
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GameFile<'a> {
    rows: usize,
    cols: usize,
    parameter: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    row_labels: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    col_labels: Option<&'a [String]>,
    payoffs: Vec<Vec<[PayoffJson; 2]>>,
}

fn payoff_json(p: &PayoffPoly) -> PayoffJson {
    match p.as_constant() {
        Some(c) => PayoffJson::Constant(c.to_string()),
        None => PayoffJson::Poly {
            coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
        },
    }
}

fn game_file(g: &Bimatrix) -> GameFile<'_> {
    GameFile {
        rows: g.rows(),
        cols: g.cols(),
        parameter: g.parameter(),
        row_labels: g.row_labels(),
        col_labels: g.col_labels(),
        payoffs: g
            .entries()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| [payoff_json(&p.u1), payoff_json(&p.u2)])
                    .collect()
            })
            .collect(),
    }
}

pub fn game_to_value(g: &Bimatrix) -> Value {
    serde_json::to_value(game_file(g)).expect("game serialisation cannot fail")
}

/// Canonical text of a game: pretty JSON with a trailing newline.
pub fn serialize_game(g: &Bimatrix) -> String {
    let mut s = serde_json::to_string_pretty(&game_file(g)).expect("game serialisation cannot fail");
    s.push('\n');
    s
}
