//! End-to-end runs of the `qkdv` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qkdv(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkdv")).args(args).env("QKDV_CACHE_DIR", cache).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn principal_flow_is_two_v_vx() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["flow", "--family", "principal", "--alpha", "1", "--p", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "dv/dprincipal(1,0) = (2*vx*v) + O(eps^1)\n");
}

#[test]
fn dispersionless_t10_is_two_u_ux() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["flow", "--family", "t1", "--p", "0", "--eps", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "dU/dt1,0 = (2*Ux*U) + O(eps^1)\n");
}

#[test]
fn negative_flow_json_with_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["--format", "json", "flow", "--family", "t0neg", "--p", "1", "--eps", "4", "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["index"], "t0,-1");
    assert_eq!(v["series"]["order"], 4);
    assert_eq!(v["checks"][0]["passed"], true);
    // odd ε-powers vanish
    let coeffs = v["series"]["coeffs"].as_object().unwrap();
    for k in ["1", "3"] {
        assert!(coeffs.get(k).is_none_or(|c| c.as_array().is_some_and(|a| a.is_empty())), "{k}: {:?}", coeffs.get(k));
    }
}

#[test]
fn fvh_flow_needs_its_time() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["flow", "--family", "fvh", "--eps", "2"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--s is required"));
    let o = qkdv(dir.path(), &["flow", "--family", "fvh", "--s", "-1/2", "--eps", "2", "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS lattice correspondence"));
}

#[test]
fn usage_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let missing = qkdv(dir.path(), &["flow"]);
    assert_eq!(missing.status.code(), Some(2));
    let range = qkdv(dir.path(), &["flow", "--family", "t0neg", "--p", "0"]);
    assert_eq!(range.status.code(), Some(1));
    let model = qkdv(dir.path(), &["loopsolve", "--model", "nope"]);
    assert!(stderr(&model).contains("unknown loop model"));
    let depth = qkdv(dir.path(), &["verify", "--eps", "2", "--genus", "3"]);
    assert!(!depth.status.success());
}

#[test]
fn hamiltonian_density_and_gradient() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["hamiltonian", "--family", "t1", "--p", "0", "--eps", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("density  = ((1/3)*U^3)"), "{text}");
    assert!(text.contains("gradient = (U^2)"), "{text}");
}

#[test]
fn loopsolve_genus_two_matches_reference() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["loopsolve", "--model", "gfm-v4", "--genus", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("F_2 = (1/576)*v4*v*vx^-2"), "{text}");
    assert!(text.contains("PASS genus 2 reference"));
    assert!(text.contains("PASS loop equation residual"));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "loopsolve", "--model", "fvh", "--genus", "3"];
    let fresh = qkdv(dir.path(), &args);
    let files = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 3);
    let hit = qkdv(dir.path(), &args);
    let mut uncached_args = vec!["--no-cache"];
    uncached_args.extend(args);
    let uncached = qkdv(dir.path(), &uncached_args);
    assert!(fresh.status.success() && hit.status.success() && uncached.status.success());
    assert_eq!(fresh.stdout, hit.stdout);
    assert_eq!(fresh.stdout, uncached.stdout);
}

#[test]
fn corrupt_cache_reports_checksum_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    assert!(qkdv(dir.path(), &["loopsolve", "--model", "gfm-v4", "--genus", "1"]).status.success());
    let entry = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen("1/12", "1/13", 1)).unwrap();
    let o = qkdv(dir.path(), &["loopsolve", "--model", "gfm-v4", "--genus", "1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("checksum mismatch"), "{}", stderr(&o));
}

#[test]
fn quick_formula_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = qkdv(dir.path(), &["verify", "--suite", "paper", "--eps", "4", "--genus", "2"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains(" PASS ")).count(), 11);
    assert!(text.ends_with("all checks passed\n"));
}

#[test]
fn export_writes_versioned_documents() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("export");
    let o = qkdv(dir.path(), &["export", "--out", out.to_str().unwrap(), "--eps", "2", "--genus", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["flows.json", "solutions-gfm-v4.json", "solutions-fvh.json"] {
        let v: Value = serde_json::from_str(&fs::read_to_string(out.join(name)).unwrap()).unwrap();
        assert_eq!(v["schema"], 1, "{name}");
    }
    let sols: Value = serde_json::from_str(&fs::read_to_string(out.join("solutions-fvh.json")).unwrap()).unwrap();
    assert_eq!(sols["solutions"].as_array().unwrap().len(), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flow.txt");
    let o = qkdv(dir.path(), &["flow", "--family", "t1", "--p", "0", "--eps", "0", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), "dU/dt1,0 = (2*Ux*U) + O(eps^1)\n");
}
