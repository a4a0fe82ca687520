//! JSON wire formats for exact values.
//!
//! Rationals travel as `{"num": int, "den": int}` with an optional advisory
//! `"decimal"` field; Gaussian rationals as `{"re": {...}, "im": {...}}`.
//! Integers outside the `i64` range are written as decimal strings and
//! accepted back in either form.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::ParseError;
use crate::scalar::{gauss, parse_rat, rat_to_f64, GaussRat, Rat, Scalar};
use crate::series::{GaussSeries, TruncatedSeries};

pub const SCHEMA_VERSION: u32 = 1;

fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_value(v: &Value) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ParseError::Shape(format!("expected an integer, got {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| ParseError::Shape(format!("expected an integer, got {s:?}"))),
        other => Err(ParseError::Shape(format!("expected an integer, got {other}"))),
    }
}

/// `{"num", "den", "decimal"}`.
pub fn rat_to_json(r: &Rat) -> Value {
    json!({
        "num": int_value(r.numer()),
        "den": int_value(r.denom()),
        "decimal": rat_to_f64(r),
    })
}

/// `{"num", "den"}` only, the canonical series-literal coefficient form.
pub fn rat_to_json_plain(r: &Rat) -> Value {
    json!({ "num": int_value(r.numer()), "den": int_value(r.denom()) })
}

pub fn gauss_to_json(z: &GaussRat) -> Value {
    if z.im.is_zero() {
        rat_to_json(&z.re)
    } else {
        json!({ "re": rat_to_json(&z.re), "im": rat_to_json(&z.im) })
    }
}

fn gauss_to_json_plain(z: &GaussRat) -> Value {
    if z.im.is_zero() {
        rat_to_json_plain(&z.re)
    } else {
        json!({ "re": rat_to_json_plain(&z.re), "im": rat_to_json_plain(&z.im) })
    }
}

/// Accepts `{"num","den"}`, a JSON integer, or a string like `"-3/4"`/`"0.25"`.
pub fn rat_from_json(v: &Value) -> Result<Rat, ParseError> {
    match v {
        Value::Object(map) => {
            let num = map
                .get("num")
                .ok_or_else(|| ParseError::Shape("rational object needs \"num\"".into()))?;
            let den = map
                .get("den")
                .map(int_from_value)
                .transpose()?
                .unwrap_or_else(|| BigInt::from(1));
            if den.is_zero() {
                return Err(ParseError::Shape("zero denominator".into()));
            }
            Ok(Rat::new(int_from_value(num)?, den))
        }
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(BigInt::from(i))),
            None => parse_rat(&n.to_string()),
        },
        Value::String(s) => parse_rat(s),
        other => Err(ParseError::Shape(format!("expected a rational, got {other}"))),
    }
}

/// Accepts every rational form plus `{"re": r, "im": r}`.
pub fn gauss_from_json(v: &Value) -> Result<GaussRat, ParseError> {
    if let Value::Object(map) = v {
        if map.contains_key("re") || map.contains_key("im") {
            let part = |k: &str| {
                map.get(k)
                    .map(rat_from_json)
                    .transpose()
                    .map(|r| r.unwrap_or_else(Rat::zero))
            };
            return Ok(gauss(part("re")?, part("im")?));
        }
    }
    rat_from_json(v).map(GaussRat::from_real)
}

#[derive(Serialize, Deserialize)]
struct SeriesLiteral {
    order: usize,
    coeffs: Vec<Value>,
}

pub fn series_to_json(s: &GaussSeries) -> Value {
    json!({
        "order": s.order(),
        "coeffs": s.coeffs().iter().map(gauss_to_json_plain).collect::<Vec<_>>(),
    })
}

pub fn series_from_json(v: &Value) -> Result<GaussSeries, ParseError> {
    let lit: SeriesLiteral = serde_json::from_value(v.clone())?;
    let coeffs = lit
        .coeffs
        .iter()
        .map(gauss_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    TruncatedSeries::from_coeffs(lit.order, coeffs).map_err(|e| ParseError::Shape(e.to_string()))
}

pub fn series_from_str(s: &str) -> Result<GaussSeries, ParseError> {
    series_from_json(&serde_json::from_str(s)?)
}
