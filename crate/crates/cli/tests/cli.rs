use std::fs;
use std::process::{Command, Output};

use ybe_fox::models::io::parse_export;
use ybe_fox::models::presets::parse_preset;
use ybe_fox::models::{braid_sides, extended_solution, SquareMap};
use ybe_fox::wada::WadaPair;

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe-fox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn derive_examples() {
    for (word, gen, expected) in [
        ("yxy", "y", "1 + yx\n"),
        ("x", "y", "0\n"),
        ("x^-1 y^-1 x", "x", "-x^-1 + x^-1 y^-1\n"),
    ] {
        let o = ybe(&["derive", word, gen]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), expected);
    }
}

#[test]
fn derive_reports_parse_offsets() {
    let o = ybe(&["derive", "x y^", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte 4"), "{}", stderr(&o));

    let o = ybe(&["derive", "x", "w"]);
    assert_eq!(o.status.code(), Some(2));

    let o = ybe(&["derive", "a1 b1^2", "b1", "--gens", "a1,b1"]);
    assert_eq!(stdout(&o), "a1 + a1 b1\n");
}

#[test]
fn verify_all_passes_with_informational_rack_rows() {
    let o = ybe(&["verify", "y^-1", "yxy", "--mode", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let pass_lines = text
        .lines()
        .filter(|l| l.starts_with('(') || l.starts_with("L1-"))
        .filter(|l| l.split('\t').nth(1) == Some("PASS"))
        .count();
    assert_eq!(pass_lines, 12);
    assert!(text.contains("SD\tFAIL"));
    assert!(text.ends_with("result\tPASS\n"));
}

#[test]
fn verify_braid_failure() {
    let o = ybe(&["verify", "y", "x y", "--mode", "braid"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(3)\tFAIL\txyz\txzyz\n"));
}

#[test]
fn verify_rack_mode() {
    let o = ybe(&["verify", "y", "y x^-1 y", "--mode", "rack"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("SD\tPASS"));
    assert!(text.contains("eta=v1\t-y x^-1\n"));
    assert!(text.contains("tau=v2\t1 + y x^-1\n"));

    let o = ybe(&["verify", "y^-1,yxy", "--mode", "rack"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_parse_error_is_usage() {
    let o = ybe(&["verify", "y", "x z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("in v"));
    assert_eq!(ybe(&["verify", "y,x,y"]).status.code(), Some(2));
}

#[test]
fn catalog_listing() {
    let o = ybe(&["catalog", "--m", "-2..2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|l| l.ends_with("braid=PASS")));
    assert!(text.contains("W4[m=-2]\ty,y^-2 x y^2\t"));
    assert_eq!(ybe(&["catalog", "--m", "3..1"]).status.code(), Some(2));
}

#[test]
fn build_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.txt");
    let path_s = path.to_str().unwrap();
    let o = ybe(&[
        "build", "--pair", "y^-1,yxy", "--preset", "C3:Z7x2", "--out", path_s,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let (g, v) = parse_preset("C3:Z7x2").unwrap();
    let sol = extended_solution(&WadaPair::parse("y^-1", "yxy").unwrap(), &g, &v, "m").unwrap();
    let table = parse_export(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table.map, sol.map);
    assert_eq!(table.carrier, sol.carrier);

    let o = ybe(&["check", path_s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sybe\tPASS\t9261 triples\n"));
    assert!(stdout(&o).contains("bijective\t"));
}

fn first_failure(r: &SquareMap) -> Option<[usize; 3]> {
    let n = r.size();
    (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
        .find(|&[a, b, c]| {
            let (l, r) = braid_sides(r, a, b, c);
            l != r
        })
}

#[test]
fn check_locates_a_swapped_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.txt");
    let path_s = path.to_str().unwrap();
    ybe(&[
        "build", "--pair", "y^-1,yxy", "--preset", "C3:Z7x2", "--out", path_s,
    ]);
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // line for input (1 3, 2 5): swap its two output points
    let target = 1 + (7 + 3) * 21 + (14 + 5);
    let (input, output) = lines[target].split_once(" -> ").unwrap();
    let f: Vec<&str> = output.split(' ').collect();
    assert_eq!(input, "1 3 2 5");
    lines[target] = format!("{input} -> {} {} {} {}", f[2], f[3], f[0], f[1]);
    let perturbed = lines.join("\n") + "\n";
    fs::write(&path, &perturbed).unwrap();

    let map = parse_export(&perturbed).unwrap().map;
    let expected = first_failure(&map).expect("perturbed table fails");

    let o = ybe(&["check", path_s]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("sybe\tFAIL"));
    assert!(out.contains(&format!("witness\t{expected:?}")), "{out}");

    let o = ybe(&["--format", "structured", "check", path_s]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["sybe"]["verdict"], "FAIL");
    let input: Vec<usize> =
        serde_json::from_value(json["sybe"]["witness"]["input"].clone()).unwrap();
    assert_eq!(input, expected);
}

#[test]
fn check_pair_and_model_verbose() {
    let o = ybe(&[
        "check",
        "--pair",
        "x^-1 y^-1 x,y^2 x",
        "--preset",
        "S3:Z7sign",
        "--verbose",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("sybe\tPASS\t74088 triples\n"));
    assert!(text.contains("decomposition\tPASS\t74088 triples\n"));
    assert!(text.contains("mismatches\tgroup=0 A=0 B=0 C=0\n"));
}

#[test]
fn unchecked_build_of_a_non_braid_pair_fails_the_check() {
    let o = ybe(&["build", "--pair", "y,xy", "--preset", "C3:Z7x2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unchecked"));

    let o = ybe(&[
        "check",
        "--pair",
        "y,xy",
        "--preset",
        "C3:Z7x2",
        "--unchecked",
        "--verbose",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("sybe\tFAIL"));
    assert!(text.contains("decomposition\tFAIL"));
    assert!(text.contains("consistency\tdisagreements=0 table=0\n"));
}

#[test]
fn model_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.model");
    fs::write(
        &path,
        "# cyclic group of order 2 acting by -1 on Z/3\n\
         group 2\n0 1\n1 0\n\
         module 3 1\n1\n2\n\
         pair\nu y^-1\nv yxy\n",
    )
    .unwrap();
    let o = ybe(&["check", "--model-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("sybe\tPASS\t216 triples\n"));

    fs::write(&path, "group 2\n0 1\n1 1\nmodule 3 1\n1\n1\n").unwrap();
    let o = ybe(&[
        "check",
        "--pair",
        "x,y",
        "--model-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ybe(&[]).status.code(), Some(2));
    assert_eq!(ybe(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        ybe(&["check", "/nonexistent/export.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ybe(&["check", "--pair", "x,y", "--preset", "Q8:Z2triv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ybe(&["check", "--pair", "x,y"]).status.code(), Some(2));
    let o = ybe(&[
        "check", "--pair", "x,y", "--preset", "C3:Z7x2", "--budget", "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"));
    assert_eq!(ybe(&["--help"]).status.code(), Some(0));
}

#[test]
fn structured_output_is_stable() {
    let args = [
        "--format",
        "structured",
        "export-report",
        "--pair",
        "y^-1,yxy",
        "--preset",
        "S3:Z3std",
    ];
    let a = ybe(&args);
    let b = ybe(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["coefficients"]["v2"], "1 + yx");
    assert_eq!(json["check"]["sybe"]["verdict"], "PASS");
    assert_eq!(json["passed"], true);
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ybe_fox_cli::run(["ybe-fox", "derive", "yxy", "y"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, ybe(&["derive", "yxy", "y"]).stdout);
}
