//! JSON form: a list of `{exponents: {s: e}, coeff: "num/den"}` in canonical order.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{DiffPoly, JetError, JetMonomial, LogExtendedPoly, Rational};

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: BTreeMap<String, i32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct LogPolyJson {
    terms: Vec<TermJson>,
    logs: BTreeMap<String, String>,
}

pub fn rational_to_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn rational_from_str(s: &str) -> Result<Rational, JetError> {
    let bad = || JetError::Parse(format!("bad rational `{s}`"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn terms_json(p: &DiffPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson {
            exponents: m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(s, &e)| (s.to_string(), e))
                .collect(),
            coeff: rational_to_string(c),
        })
        .collect()
}

fn poly_from_terms(terms: Vec<TermJson>) -> Result<DiffPoly, JetError> {
    let mut p = DiffPoly::zero();
    for t in terms {
        let mut exps = Vec::new();
        for (s, e) in t.exponents {
            let s: usize = s.parse().map_err(|_| JetError::Parse(format!("bad jet order `{s}`")))?;
            if exps.len() <= s {
                exps.resize(s + 1, 0);
            }
            exps[s] = e;
        }
        p.add_term(JetMonomial::from_exponents(exps)?, rational_from_str(&t.coeff)?);
    }
    Ok(p)
}

pub fn poly_to_json(p: &DiffPoly) -> Value {
    serde_json::to_value(terms_json(p)).expect("plain data serializes")
}

pub fn poly_from_json(v: &Value) -> Result<DiffPoly, JetError> {
    let terms: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| JetError::Parse(e.to_string()))?;
    poly_from_terms(terms)
}

pub fn log_poly_to_json(p: &LogExtendedPoly) -> Value {
    let logs =
        (0..2).filter(|&s| !p.logs[s].is_zero()).map(|s| (s.to_string(), rational_to_string(&p.logs[s]))).collect();
    serde_json::to_value(LogPolyJson { terms: terms_json(&p.rational), logs }).expect("plain data serializes")
}

pub fn log_poly_from_json(v: &Value) -> Result<LogExtendedPoly, JetError> {
    let raw: LogPolyJson = serde_json::from_value(v.clone()).map_err(|e| JetError::Parse(e.to_string()))?;
    let mut out = LogExtendedPoly::from_poly(poly_from_terms(raw.terms)?);
    for (s, c) in raw.logs {
        let s: usize = s.parse().map_err(|_| JetError::Parse(format!("bad log order `{s}`")))?;
        if s > 1 {
            return Err(JetError::LogOutOfRange { order: s });
        }
        out.logs[s] = rational_from_str(&c)?;
    }
    Ok(out)
}
