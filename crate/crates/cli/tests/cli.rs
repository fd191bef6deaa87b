use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cadproj"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

struct Triple {
    _dir: TempDir,
    f: String,
    g: String,
    h: String,
}

fn triple() -> Triple {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", "# first\ny^2 + z^2 + x + z - 1\n");
    let g = write(dir.path(), "g.txt", "-x^2 + y^2 + z^2 - 1\n");
    let h = write(dir.path(), "h.txt", "x^2 + y + z # last\n");
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    Triple {
        f: s(f),
        g: s(g),
        h: s(h),
        _dir: dir,
    }
}

#[test]
fn multires_on_files() {
    let t = triple();
    let o = run(&["multires", "--elim", "y,z", "--order", "z,y,x", &t.f, &t.g, &t.h]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "x^4 + 2*x^3 + x^2 - 1\n");
}

#[test]
fn resultants_and_discriminant() {
    let t = triple();
    let o = run(&["rawres", "--var", "z", &t.f, &t.g]);
    assert_eq!(stdout(&o), "x^4 + 2*x^3 + y^2 - 1\n");
    let o = run(&["res", "--var", "z", &t.f, &t.h]);
    assert!(o.status.success());
    let o = run(&["disc", "--var", "z", &t.f]);
    assert_eq!(stdout(&o), "4*y^2 + 4*x - 5\n");
}

#[test]
fn groebner_both_orders() {
    let t = triple();
    let o = run(&["groebner", &t.f, &t.g, &t.h]);
    assert_eq!(stdout(&o), "x^4 + 2*x^3 + x^2 - 1\ny - x\nx^2 + z + x\n");
    let o = run(&["groebner", "--order", "x,y,z", &t.f, &t.g, &t.h]);
    assert_eq!(stdout(&o), "z^2 - 1\ny^2 + y + z\nx - y\n");
}

#[test]
fn generalized_elimination() {
    let t = triple();
    let o = run(&["genres", "--elim", "y,z", &t.f, &t.g, &t.h]);
    assert_eq!(stdout(&o), "x^4 + 2*x^3 + x^2 - 1\n");
    let o = run(&["gendisc", "--elim", "y,z", &t.f, &t.g]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn stdin_polynomials() {
    let o = run_stdin(&["sqfree"], "(x - 1)^2*(x + 2)\n");
    assert_eq!(stdout(&o), "content 1\n(x + 2)^1\n(x - 1)^2\n");
    let o = run_stdin(&["factor"], "2*x^4 - 2");
    assert_eq!(stdout(&o), "content 2\n(x + 1)^1\n(x - 1)^1\n(x^2 + 1)^1\n");
    let o = run_stdin(&["rawres", "--var", "x"], "x^2 - 2; x - a");
    assert_eq!(stdout(&o), "a^2 - 2\n");
    let o = run_stdin(&["roots", "--eps", "1/1000"], "x^2 - 2");
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
}

#[test]
fn predict_table() {
    let o = run(&["predict", "--d", "2", "--m", "4", "--k", "3"]);
    let s = stdout(&o);
    let iterated = s.lines().find(|l| l.starts_with("level 3")).unwrap();
    let multires = s.lines().filter(|l| l.starts_with("level 3")).nth(1).unwrap();
    assert!(iterated.contains("128d^8 = 32768"), "{iterated}");
    assert!(multires.contains("96d^7 = 12288"), "{multires}");
    let o = run(&["predict", "--d", "3", "--m", "3", "--k", "2", "--strategy", "iterated", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["levels"][1]["resultant_degree"], "8d^4");
}

#[test]
fn rewrite_file() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.smt2", "(forall ((x Real)) (>= (/ 1 (^ x 2)) 0))\n");
    let p = p.to_str().unwrap();
    let o = run(&["rewrite", "--mode", "product", p]);
    assert_eq!(stdout(&o), "(forall ((x Real)) (or (= (* x x) 0) (>= (* x x) 0)))\n");
    let o = run(&["rewrite", "--mode", "sign-split", "--dialect", "native", p]);
    assert_eq!(stdout(&o), "forall x. x^2 = 0 or (x^2 > 0 and 1 >= 0)\n");
    let o = run_stdin(&["rewrite"], "free x; x^2/x = 0");
    assert_eq!(stdout(&o), "free x;\nx = 0\n");
    assert!(stderr(&o).contains("warning: removed common factor x"));
}

#[test]
fn split_and_bezout() {
    let dir = TempDir::new().unwrap();
    let it = write(dir.path(), "it", "5*x^8 + 16*x^7 + 14*x^6 - 2*x^5 - 12*x^4 - 8*x^3 + 3*x^2 + 2*x");
    let mr = write(dir.path(), "mr", "x^4 + 2*x^3 + x^2 - 1");
    let o = run(&["split", "--iterated", it.to_str().unwrap(), "--multires", mr.to_str().unwrap()]);
    let s = stdout(&o);
    assert!(s.contains("genuine x^4 + 2*x^3 + x^2 - 1\n"), "{s}");
    assert!(s.contains("spurious 5*x^4 + 6*x^3 - 3*x^2 - 2*x\n"), "{s}");
    let o = run(&["bezout", "--d", "2", "--k", "2", it.to_str().unwrap(), mr.to_str().unwrap()]);
    assert_eq!(stdout(&o), "bound 4\nspurious degree 8: 5*x^8 + 16*x^7 + 14*x^6 - 2*x^5 - 12*x^4 - 8*x^3 + 3*x^2 + 2*x\nunknown degree 4: x^4 + 2*x^3 + x^2 - 1\n");
}

#[test]
fn project_trace() {
    let t = triple();
    let o = run(&["project", "--ecs", "3", "--strategy", "multires", "--json", &t.f, &t.g, &t.h]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);
    assert_eq!(v["levels"][0]["pivot_kind"], "explicit-ec");
    let o = run(&["project", "--ecs", "3", &t.f, &t.g, &t.h]);
    assert!(stdout(&o).contains("5*x^8 + 16*x^7 + 14*x^6 - 2*x^5 - 12*x^4 - 8*x^3 + 3*x^2 + 2*x"));
}

#[test]
fn stats_report() {
    let t = triple();
    let o = run(&["--stats", "rawres", "--var", "z", &t.f, &t.g]);
    let line = stderr(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["operation"], "rawres");
    assert_eq!(v["inputs"][0]["terms"], 5);
    assert_eq!(v["outputs"][0]["degree"], 4);
    assert_eq!(v["outputs"][0]["terms"], 4);
    assert_eq!(v["outputs"][0]["content"], "1");
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, ["inputs", "operation", "outputs", "wall_time_ms"]);
    assert!(line.starts_with("{\"operation\":"));
}

#[test]
fn stats_match_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/stats.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let t = triple();
    let runs = [
        run(&["--stats", "res", "--var", "z", &t.f, &t.g]),
        run(&["--stats", "multires", "--elim", "y,z", &t.f, &t.g, &t.h]),
        run(&["--stats", "groebner", &t.f, &t.g, &t.h]),
        run(&["--stats", "project", "--ecs", "2", &t.f, &t.g, &t.h]),
        run_stdin(&["--stats", "factor"], "6*x^3 - 6*x"),
    ];
    for o in runs {
        assert!(o.status.success(), "{}", stderr(&o));
        let line = stderr(&o).lines().last().unwrap().to_string();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{line}: {errors:?}");
    }
}

#[test]
fn exit_codes() {
    let t = triple();
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["res", &t.f, &t.g]).status.code(), Some(2));
    assert_eq!(run(&["res", "--var", "z", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "sec9"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "sec4.4-heavy"]).status.code(), Some(2));
    assert_eq!(run(&["res", "--var", "z", &t.f]).status.code(), Some(2));
    let o = run(&["rawres", "--var", "q", &t.f, &t.g]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o).lines().count(), 1);
    assert_eq!(run_stdin(&["factor"], "x*y").status.code(), Some(1));
    assert_eq!(run_stdin(&["sqfree"], "x^^2").status.code(), Some(1));
    assert_eq!(run_stdin(&["rewrite"], "forall x. exists y. 1/(x + y) > 0").status.code(), Some(1));
    assert_eq!(run(&["predict", "--d", "1", "--m", "3", "--k", "2"]).status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let t = triple();
    let a = run(&["project", "--ecs", "2", "--json", &t.f, &t.g, &t.h]);
    let b = run(&["project", "--ecs", "2", "--json", &t.f, &t.g, &t.h]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reproduce_light_sections() {
    for s in ["eq2-4", "sec3.2", "sec4.4-light", "sec6.5"] {
        let o = run(&["reproduce", s]);
        let out = stdout(&o);
        assert!(o.status.success(), "{out}");
        assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    }
    let o = run(&["reproduce"]);
    assert!(stdout(&o).contains("sec4.7"));
}

#[test]
#[ignore = "takes a few minutes"]
fn reproduce_degree_five_triple() {
    let o = run(&["reproduce", "sec4.7"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
