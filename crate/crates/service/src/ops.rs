//! Engine calls shared by the HTTP handlers and the command line, so both
//! produce the same `result` payloads.

use serde_json::{json, Value};

use qegs_core::ewl::{ewl_payoff, ewl_weights, EwlPayoff, OutcomeWeights, UnitaryParams};
use qegs_core::format::game_to_value;
use qegs_core::solver::{Analyses, SolveResult};
use qegs_core::sweep::{sweep_allow_numeric, SweepResult};
use qegs_core::{extend, Bimatrix, ClassParam, Error, ExtensionClass, Rational, Result};

/// A rational from a JSON string (`"3/4"`) or integer.
pub fn rational_value(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse(),
        _ => Err(Error::Parse(format!("`{what}` must be a rational string like \"3/4\""))),
    }
}

fn option<'a>(options: &'a Value, key: &str) -> Option<&'a Value> {
    options.get(key).filter(|v| !v.is_null())
}

fn analyses_option(options: &Value) -> Result<Analyses> {
    match option(options, "analysis") {
        None => Ok(Analyses::ALL),
        Some(Value::String(s)) => s.parse(),
        Some(_) => Err(Error::Parse("`analysis` must be a string".into())),
    }
}

/// Solves `g`, substituting `param` first when given.
pub fn solve(g: &Bimatrix, analyses: Analyses, param: Option<&Rational>) -> Result<(Bimatrix, SolveResult)> {
    let game = match param {
        Some(x) => g.evaluate(x),
        None => g.clone(),
    };
    let result = qegs_core::solver::solve(&game, analyses)?;
    Ok((game, result))
}

pub fn solve_request(g: &Bimatrix, options: &Value) -> Result<Value> {
    let analyses = analyses_option(options)?;
    let param = option(options, "param")
        .map(|v| rational_value(v, "param"))
        .transpose()?;
    Ok(solve(g, analyses, param.as_ref())?.1.to_json())
}

pub fn extend_game(g: &Bimatrix, class: ExtensionClass, param: Option<ClassParam>) -> Result<Bimatrix> {
    let param = match (class.size(), param) {
        (3, _) => None,
        (_, p) => Some(p.unwrap_or(ClassParam::Symbolic)),
    };
    extend(g, class, param.as_ref())
}

pub fn extend_request(g: &Bimatrix, options: &Value) -> Result<Value> {
    let class: ExtensionClass = match option(options, "class") {
        Some(Value::String(s)) => s.parse()?,
        _ => return Err(Error::Parse("`class` is required, e.g. \"A1\"".into())),
    };
    let symbolic = option(options, "symbolic").and_then(Value::as_bool).unwrap_or(false);
    let param = match option(options, "param") {
        Some(_) if symbolic => {
            return Err(Error::Param("give either `param` or `symbolic`, not both".into()))
        }
        Some(v) => Some(ClassParam::Value(rational_value(v, "param")?)),
        None => None,
    };
    Ok(game_to_value(&extend_game(g, class, param)?))
}

/// Sweeps with the numeric fallback enabled for high-degree inputs.
pub fn sweep(g: &Bimatrix, lo: &Rational, hi: &Rational, analyses: Analyses) -> Result<SweepResult> {
    sweep_allow_numeric(g, lo, hi, analyses)
}

pub fn sweep_request(g: &Bimatrix, options: &Value) -> Result<Value> {
    let bound = |key: &str, default: i64| {
        option(options, key).map_or(Ok(Rational::from(default)), |v| rational_value(v, key))
    };
    let (lo, hi) = (bound("min", 0)?, bound("max", 1)?);
    Ok(sweep(g, &lo, &hi, analyses_option(options)?)?.to_json())
}

/// `θ,α,β` as multiples of π (`"1/3,1/2,1"`), or in radians.
pub fn parse_unitary(text: &str, radians: bool) -> Result<UnitaryParams> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [t, a, b] = parts[..] else {
        return Err(Error::Parse(format!("a strategy is three angles θ,α,β; got `{text}`")));
    };
    if radians {
        let f = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Parse(format!("`{s}` is not a number of radians")))
        };
        UnitaryParams::from_radians(f(t)?, f(a)?, f(b)?)
    } else {
        UnitaryParams::from_pi_multiples(t.parse()?, a.parse()?, b.parse()?)
    }
}

fn unitary_value(v: Option<&Value>, key: &str, radians: bool) -> Result<UnitaryParams> {
    let text = match v {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Array(items)) if items.len() == 3 => items
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) if radians || n.is_i64() => Ok(n.to_string()),
                _ => Err(Error::Parse(format!("`{key}` angles must be strings or numbers"))),
            })
            .collect::<Result<Vec<_>>>()?
            .join(","),
        _ => return Err(Error::Parse(format!("`{key}` must be three angles"))),
    };
    parse_unitary(&text, radians)
}

pub fn ewl(g: &Bimatrix, u1: &UnitaryParams, u2: &UnitaryParams) -> Result<(EwlPayoff, OutcomeWeights)> {
    Ok((ewl_payoff(g, u1, u2)?, ewl_weights(u1, u2)))
}

/// Exact values are rational strings, approximate ones plain numbers.
pub fn ewl_json(payoff: &EwlPayoff, weights: &OutcomeWeights) -> Value {
    let payoff = match payoff {
        EwlPayoff::Exact(a, b) => json!([a.to_string(), b.to_string()]),
        EwlPayoff::Approx(a, b) => json!([a, b]),
    };
    let w = match weights {
        OutcomeWeights::Exact(w) => json!(w.iter().map(ToString::to_string).collect::<Vec<_>>()),
        OutcomeWeights::Approx(w) => json!(w),
    };
    json!({"payoff": payoff, "weights": w, "exact": weights.is_exact()})
}

pub fn ewl_request(g: &Bimatrix, options: &Value) -> Result<Value> {
    let radians = option(options, "radians").and_then(Value::as_bool).unwrap_or(false);
    let u1 = unitary_value(option(options, "u1"), "u1", radians)?;
    let u2 = unitary_value(option(options, "u2"), "u2", radians)?;
    let (payoff, weights) = ewl(g, &u1, &u2)?;
    Ok(ewl_json(&payoff, &weights))
}
