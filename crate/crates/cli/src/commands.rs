//! The subcommands. Each returns `Ok(true)` on success, `Ok(false)` when a
//! requested check failed, and `Err` for usage or engine errors.

use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use qkdv_core::epsops::{series_to_json, EpsSeries};
use qkdv_core::hierarchy::{
    dispersionless_match, fvh_correspondence, fvh_flow, hamiltonian as first_hamiltonian, principal_flow, qkdv_flow,
    second_hamiltonian, volterra_flow, FlowIndex,
};
use qkdv_core::jetring::Chart;
use qkdv_core::lattice::Shift;
use qkdv_core::loopeq::{build_residual, fixtures, matches_reference, LoopModel};
use qkdv_core::verify::{catalogue, Depth, Solutions, Suite};

use crate::cache::{engine_key, write_atomic, SCHEMA_VERSION};
use crate::{ExportArgs, Family, FlowArgs, Format, Global, HamiltonianArgs, Kind, LoopsolveArgs, SuiteArg, VerifyArgs};

fn header() -> Value {
    json!({ "schema": SCHEMA_VERSION, "engine": engine_key() })
}

fn with_header(mut body: Value) -> Value {
    if let (Value::Object(b), Value::Object(h)) = (&mut body, header()) {
        for (k, v) in h {
            b.insert(k, v);
        }
    }
    body
}

/// Prints to stdout, or writes atomically to `out`.
fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(format: Format, value: Value, text: String) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Text => text,
    })
}

fn unsigned(name: &str, p: i64, min: i64) -> Result<u32> {
    if p < min {
        bail!("--{name} must be at least {min} for this family, got {p}");
    }
    u32::try_from(p).map_err(|_| anyhow!("--{name} is too large"))
}

/// `"3"` is `T_3`; `"-5/2"` is `T_{-5/2}`.
pub fn parse_fvh_time(s: &str) -> Result<Shift> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, "2")) => Ok(Shift::half(num.trim().parse()?)),
        Some(_) => bail!("FVH time `{s}` must be an integer or a fraction over 2"),
        None => Ok(Shift::int(s.parse()?)),
    }
}

/// The lattice index named by `family` and `p`.
fn lattice_index(family: Family, p: i64) -> Result<FlowIndex> {
    Ok(match family {
        Family::T1 => FlowIndex::T1(unsigned("p", p, 0)?),
        Family::T0neg => FlowIndex::T0Neg(unsigned("p", p, 1)?),
        Family::T0 => FlowIndex::T0(unsigned("p", p, 0)?),
        other => bail!("family {other:?} has no lattice index here; use t1, t0neg or t0"),
    })
}

struct FlowResult {
    label: String,
    chart: Chart,
    var: &'static str,
    series: EpsSeries,
    checks: Vec<(String, Result<String, String>)>,
}

fn compute_flow(a: &FlowArgs) -> Result<FlowResult> {
    let mut checks = Vec::new();
    let (label, chart, var, series) = match a.family {
        Family::T1 | Family::T0neg | Family::T0 => {
            let idx = lattice_index(a.family, a.p)?;
            if a.check {
                let r = dispersionless_match(idx).map(|r| r.detail).map_err(|e| e.to_string());
                checks.push((format!("dispersionless limit of {idx}"), r));
            }
            (idx.to_string(), Chart::U, "U", qkdv_flow(idx, a.eps)?)
        }
        Family::Principal => {
            let idx = FlowIndex::Principal { alpha: a.alpha, p: a.p };
            let flow = principal_flow(a.alpha, a.p)?;
            (idx.to_string(), Chart::V, "v", EpsSeries::from_poly(flow, 0))
        }
        Family::Fvh => {
            let text = a.s.as_deref().ok_or_else(|| anyhow!("--s is required for the fvh family"))?;
            let s = parse_fvh_time(text)?;
            if a.check {
                let r = fvh_correspondence(s, a.eps).map(|r| r.detail).map_err(|e| e.to_string());
                checks.push((format!("lattice correspondence of T_{s}"), r));
            }
            (FlowIndex::Fvh(s).to_string(), Chart::W, "w", fvh_flow(s, a.eps)?)
        }
        Family::Volterra => {
            let p = unsigned("p", a.p, 1)?;
            (FlowIndex::Volterra(p).to_string(), Chart::W, "w", volterra_flow(p, a.eps)?)
        }
    };
    if a.check && checks.is_empty() {
        checks.push(("cross-checks".into(), Ok("none available for this family".into())));
    }
    Ok(FlowResult { label, chart, var, series, checks })
}

pub fn flow(g: &Global, a: &FlowArgs) -> Result<bool> {
    let r = compute_flow(a)?;
    let passed = r.checks.iter().all(|(_, c)| c.is_ok());
    let mut text = format!("d{}/d{} = {}\n", r.var, r.label, r.series.to_text(r.chart));
    for (name, c) in &r.checks {
        match c {
            Ok(d) => text.push_str(&format!("PASS {name}: {d}\n")),
            Err(e) => text.push_str(&format!("FAIL {name}: {e}\n")),
        }
    }
    let value = with_header(json!({
        "kind": "flow",
        "index": r.label,
        "variable": r.var,
        "series": series_to_json(&r.series),
        "checks": r.checks.iter().map(|(n, c)| json!({
            "name": n,
            "passed": c.is_ok(),
            "detail": match c { Ok(d) => d, Err(e) => e },
        })).collect::<Vec<_>>(),
    }));
    emit(&render(g.format, value, text)?, a.out.as_deref())?;
    Ok(passed)
}

pub fn hamiltonian(g: &Global, a: &HamiltonianArgs) -> Result<bool> {
    let idx = lattice_index(a.family, a.p)?;
    let record = match a.kind {
        Kind::First => first_hamiltonian(idx, a.eps)?,
        Kind::Second => second_hamiltonian(idx, a.eps)?,
    };
    let text = format!(
        "{:?} Hamiltonian of {idx}\n  density  = {}\n  gradient = {}\n",
        a.kind,
        record.density_text(Chart::U),
        record.gradient.to_text(Chart::U)
    );
    let value = with_header(json!({ "kind": "hamiltonian", "record": record.to_json() }));
    emit(&render(g.format, value, text)?, a.out.as_deref())?;
    Ok(true)
}

pub fn loopsolve(g: &Global, a: &LoopsolveArgs) -> Result<bool> {
    let model: LoopModel = a.model.parse()?;
    if a.genus == 0 {
        bail!("--genus must be at least 1");
    }
    let sols = g.cache().solutions(model, a.genus)?;
    let residual = build_residual(model, &sols, a.genus);
    let mut text = String::new();
    let mut checks = Vec::new();
    for s in &sols {
        text.push_str(&s.to_text());
        if fixtures::reference(model, s.genus).is_some() {
            let r = matches_reference(s).map(|r| r.detail).map_err(|e| e.to_string());
            checks.push((format!("genus {} reference", s.genus), r));
        }
    }
    let residual_ok = residual.values().all(|c| c.is_zero());
    checks.push((
        "loop equation residual".into(),
        if residual_ok { Ok(format!("zero through genus {}", a.genus)) } else { Err("nonzero".into()) },
    ));
    for (name, c) in &checks {
        match c {
            Ok(d) => text.push_str(&format!("PASS {name}: {d}\n")),
            Err(e) => text.push_str(&format!("FAIL {name}: {e}\n")),
        }
    }
    let value = with_header(json!({
        "kind": "loopsolve",
        "model": model,
        "solutions": sols.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        "checks": checks.iter().map(|(n, c)| json!({
            "name": n,
            "passed": c.is_ok(),
            "detail": match c { Ok(d) => d, Err(e) => e },
        })).collect::<Vec<_>>(),
    }));
    emit(&render(g.format, value, text)?, a.out.as_deref())?;
    Ok(checks.iter().all(|(_, c)| c.is_ok()))
}

pub fn verify(g: &Global, a: &VerifyArgs) -> Result<bool> {
    if a.genus == 0 {
        bail!("--genus must be at least 1");
    }
    if a.eps + 2 < 2 * a.genus as usize {
        bail!("--eps {} is below 2*genus-2 = {}", a.eps, 2 * a.genus - 2);
    }
    let suite = match a.suite {
        SuiteArg::Paper => Suite::Formulas,
        SuiteArg::Properties => Suite::Properties,
        SuiteArg::All => Suite::All,
    };
    let depth = Depth::scaled(a.eps, a.genus);
    let cache = g.cache();
    let mut sols = Solutions::with_provider(move |m, genus| cache.solutions(m, genus).map_err(|e| format!("{e:#}")));
    let mut rows = Vec::new();
    let mut all_passed = true;
    for c in catalogue(suite) {
        let t = Instant::now();
        let outcome = c.run(&depth, &mut sols);
        let secs = t.elapsed().as_secs_f64();
        all_passed &= outcome.is_ok();
        if g.format == Format::Text {
            // streamed, since the slow criteria take seconds
            match &outcome {
                Ok(d) => println!("criterion {:>2} PASS {} [{secs:.1}s]: {d}", c.number, c.name),
                Err(e) => println!("criterion {:>2} FAIL {} [{secs:.1}s]: {e}", c.number, c.name),
            }
        }
        rows.push(json!({
            "criterion": c.number,
            "name": c.name,
            "passed": outcome.is_ok(),
            "detail": match &outcome { Ok(d) => d, Err(e) => e },
        }));
    }
    match g.format {
        Format::Text => println!("{}", if all_passed { "all checks passed" } else { "SOME CHECKS FAILED" }),
        Format::Json => {
            let value = with_header(json!({ "kind": "verify", "passed": all_passed, "criteria": rows }));
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(all_passed)
}

pub fn export(g: &Global, a: &ExportArgs) -> Result<bool> {
    let mut flows = serde_json::Map::new();
    for idx in [FlowIndex::T1(0), FlowIndex::T1(1), FlowIndex::T0Neg(1), FlowIndex::T0Neg(2), FlowIndex::T0(0)] {
        flows.insert(idx.to_string(), series_to_json(&qkdv_flow(idx, a.eps)?));
    }
    let doc = with_header(json!({ "kind": "flows", "variable": "U", "flows": flows }));
    let mut written = vec![a.out.join("flows.json")];
    write_atomic(&written[0], (serde_json::to_string_pretty(&doc)? + "\n").as_bytes())?;
    let cache = g.cache();
    for model in [LoopModel::GfmV4, LoopModel::Fvh] {
        let sols = cache.solutions(model, a.genus)?;
        let doc = with_header(json!({
            "kind": "solutions",
            "model": model,
            "solutions": sols.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        }));
        let path = a.out.join(format!("solutions-{model}.json"));
        write_atomic(&path, (serde_json::to_string_pretty(&doc)? + "\n").as_bytes())?;
        written.push(path);
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fvh_times() {
        assert_eq!(parse_fvh_time("-1/2").unwrap(), Shift::half(-1));
        assert_eq!(parse_fvh_time("-5/2").unwrap(), Shift::half(-5));
        assert_eq!(parse_fvh_time("2").unwrap(), Shift::int(2));
        assert!(parse_fvh_time("1/3").is_err());
        assert!(parse_fvh_time("x").is_err());
    }

    #[test]
    fn lattice_indices_respect_ranges() {
        assert_eq!(lattice_index(Family::T0neg, 2).unwrap(), FlowIndex::T0Neg(2));
        assert!(lattice_index(Family::T0neg, 0).is_err());
        assert!(lattice_index(Family::T1, -1).is_err());
        assert!(lattice_index(Family::Principal, 0).is_err());
    }
}
