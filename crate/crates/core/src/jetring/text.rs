//! Canonical text form, e.g. `-(7/960)*v3*v2*v*vx^-3`, and its parser.

use num_traits::{One, Signed, Zero};

use super::{Chart, DiffPoly, JetError, JetMonomial, LogExtendedPoly, Rational};

impl Chart {
    pub fn var_name(self, s: usize) -> String {
        match (self, s) {
            (Chart::V, 0) => "v".into(),
            (Chart::V, 1) => "vx".into(),
            (Chart::V, s) => format!("v{s}"),
            (Chart::U, 0) => "U".into(),
            (Chart::U, 1) => "Ux".into(),
            (Chart::U, s) => format!("U{s}"),
            (Chart::W, 0) => "exp(w)".into(),
            (Chart::W, 1) => "wx".into(),
            (Chart::W, s) => format!("w{s}"),
        }
    }

    pub fn log_name(self, s: usize) -> String {
        match (self, s) {
            (Chart::W, 0) => "w".into(),
            _ => format!("log({})", self.var_name(s)),
        }
    }

    fn lookup(self, name: &str) -> Option<usize> {
        let (base, first) = match self {
            Chart::V => ("v", "vx"),
            Chart::U => ("U", "Ux"),
            Chart::W => ("w", "wx"),
        };
        if self == Chart::W && name == "exp(w)" {
            return Some(0);
        }
        if self != Chart::W && name == base {
            return Some(0);
        }
        if name == first {
            return Some(1);
        }
        if name == format!("{first}x") {
            return Some(2);
        }
        let rest = name.strip_prefix(base)?;
        let s: usize = rest.parse().ok()?;
        if self == Chart::W && s == 0 {
            return None;
        }
        Some(s)
    }
}

fn coeff_prefix(c: &Rational, has_factors: bool) -> String {
    let a = c.abs();
    if has_factors && a.is_one() {
        String::new()
    } else if a.is_integer() {
        if has_factors {
            format!("{}*", a.numer())
        } else {
            format!("{}", a.numer())
        }
    } else if has_factors {
        format!("({}/{})*", a.numer(), a.denom())
    } else {
        format!("({}/{})", a.numer(), a.denom())
    }
}

pub fn monomial_text(m: &JetMonomial, chart: Chart) -> String {
    let exps = m.exponents();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for s in (0..exps.len()).rev() {
        let e = exps[s];
        if e == 0 {
            continue;
        }
        let name = chart.var_name(s);
        let f = if e == 1 { name } else { format!("{name}^{e}") };
        if e > 0 {
            pos.push(f);
        } else {
            neg.push(f);
        }
    }
    pos.extend(neg);
    if pos.is_empty() {
        "1".into()
    } else {
        pos.join("*")
    }
}

fn push_term(out: &mut String, c: &Rational, body: &str) {
    let neg = c.is_negative();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&coeff_prefix(c, !body.is_empty()));
    out.push_str(body);
}

/// Terms printed from the highest canonical monomial downwards.
pub fn poly_text(p: &DiffPoly, chart: Chart) -> String {
    let mut out = String::new();
    for (m, c) in p.terms().rev() {
        let body = if m.is_one() { String::new() } else { monomial_text(m, chart) };
        push_term(&mut out, c, &body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn log_poly_text(p: &LogExtendedPoly, chart: Chart) -> String {
    let mut out = String::new();
    for s in [1usize, 0] {
        if !p.logs[s].is_zero() {
            push_term(&mut out, &p.logs[s], &chart.log_name(s));
        }
    }
    if !p.rational.is_zero() {
        let body = poly_text(&p.rational, chart);
        if out.is_empty() {
            out = body;
        } else if let Some(rest) = body.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn parse_err(msg: impl Into<String>) -> JetError {
    JetError::Parse(msg.into())
}

fn parse_rational(s: &str) -> Option<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn split_top(s: &str, sep: impl Fn(char, Option<char>) -> bool) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut prev: Option<char> = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && ch != '(' && ch != ')' && sep(ch, prev) && i > start {
            spans.push((start, i));
            start = i;
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    spans.push((start, s.len()));
    spans
}

/// Parses the canonical text form (including `log(..)` terms) in `chart`.
pub fn parse_log_poly(text: &str, chart: Chart) -> Result<LogExtendedPoly, JetError> {
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(LogExtendedPoly::zero());
    }
    let mut out = LogExtendedPoly::zero();
    let spans = split_top(text, |c, prev| (c == '+' || c == '-') && !matches!(prev, Some('^') | Some('*') | Some('/')));
    for (a, b) in spans {
        let raw = text[a..b].trim();
        if raw.is_empty() {
            continue;
        }
        let (sign, body) = match raw.chars().next() {
            Some('-') => (-Rational::one(), raw[1..].trim()),
            Some('+') => (Rational::one(), raw[1..].trim()),
            _ => (Rational::one(), raw),
        };
        if body.is_empty() {
            return Err(parse_err(format!("empty term in `{raw}`")));
        }
        let mut coeff = sign;
        let mut exps: Vec<i32> = Vec::new();
        let mut log_slot: Option<usize> = None;
        for (fa, fb) in split_top(body, |c, _| c == '*' || c == '/') {
            let mut factor = body[fa..fb].trim();
            let divide = factor.starts_with('/');
            factor = factor.trim_start_matches(['*', '/']).trim();
            if factor.is_empty() {
                continue;
            }
            if let Some(c) = parse_rational(factor) {
                if divide {
                    if c.is_zero() {
                        return Err(parse_err("division by zero"));
                    }
                    coeff /= c;
                } else {
                    coeff *= c;
                }
                continue;
            }
            if divide && (factor.starts_with("log(") || (chart == Chart::W && factor == "w")) {
                return Err(parse_err(format!("division by a logarithm in `{raw}`")));
            }
            if let Some(inner) = factor.strip_prefix("log(").and_then(|x| x.strip_suffix(')')) {
                let s = chart.lookup(inner.trim()).ok_or_else(|| parse_err(format!("unknown variable `{inner}`")))?;
                if s > 1 || log_slot.is_some() {
                    return Err(parse_err(format!("unsupported logarithm `{factor}`")));
                }
                log_slot = Some(s);
                continue;
            }
            if chart == Chart::W && factor == "w" {
                if log_slot.is_some() {
                    return Err(parse_err("two logarithms in one term"));
                }
                log_slot = Some(0);
                continue;
            }
            let (name, e) = match factor.rfind('^') {
                Some(k) if factor[..k].matches('(').count() == factor[..k].matches(')').count() => {
                    let e_txt = factor[k + 1..].trim();
                    let e_txt = e_txt.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e_txt);
                    let e: i32 = e_txt.parse().map_err(|_| parse_err(format!("bad exponent in `{factor}`")))?;
                    (factor[..k].trim(), e)
                }
                _ => (factor, 1),
            };
            let s = chart.lookup(name).ok_or_else(|| parse_err(format!("unknown variable `{name}`")))?;
            if exps.len() <= s {
                exps.resize(s + 1, 0);
            }
            exps[s] += if divide { -e } else { e };
        }
        match log_slot {
            Some(s) => {
                if exps.iter().any(|&e| e != 0) {
                    return Err(parse_err(format!("logarithm multiplied by a jet in `{raw}`")));
                }
                out.logs[s] += coeff;
            }
            None => {
                let m = JetMonomial::from_exponents(exps)?;
                out.rational.add_term(m, coeff);
            }
        }
    }
    Ok(out)
}

pub fn parse_poly(text: &str, chart: Chart) -> Result<DiffPoly, JetError> {
    let p = parse_log_poly(text, chart)?;
    if p.has_logs() {
        return Err(parse_err("logarithm in a rational differential polynomial"));
    }
    Ok(p.rational)
}
