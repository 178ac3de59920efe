use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use catmap_cli::payload::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn catmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catmap")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = catmap(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    catmap(args).status.code().unwrap()
}

/// Parses `--json` output and checks that re-emitting it reproduces it.
fn json<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.push("--json");
    let text = stdout(&full);
    let value: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), text.trim_end(), "{args:?} does not round-trip");
    value
}

/// 3×3 PPM whose pixel k (row-major) has every channel equal to k.
fn labelled_ppm(path: &Path) -> Vec<u8> {
    let mut bytes = b"P6\n3 3\n255\n".to_vec();
    for k in 0..9u8 {
        bytes.extend([k, k, k]);
    }
    fs::write(path, &bytes).unwrap();
    bytes
}

fn labels(ppm: &[u8]) -> String {
    ppm[ppm.len() - 27..].chunks(3).map(|c| (b'A' + c[0]) as char).collect()
}

#[test]
fn matrix_examples() {
    assert_eq!(stdout(&["matrix", "3"]), "1 1 1\n2 3 2\n3 4 4\n");
    assert_eq!(stdout(&["matrix", "2"]), "1 1\n1 2\n");
    assert_eq!(code(&["matrix", "1"]), 1);
    let m: MatrixOutput = json(&["matrix", "4"]);
    assert_eq!(m.rows[3], ["432", "585", "460", "122"]);
}

#[test]
fn large_entries_are_strings() {
    let m: MatrixOutput = json(&["matrix", "6"]);
    assert!(m.max_bits > 64);
    assert!(m.rows.iter().flatten().any(|e| e.len() > 20));
}

#[test]
fn period_examples() {
    assert_eq!(stdout(&["period", "300", "--quiet"]), "300\n");
    assert_eq!(stdout(&["period", "1", "--quiet"]), "1\n");
    assert_eq!(stdout(&["period", "183", "--quiet"]), "60\n");
    let p: PeriodOutput = json(&["period", "5", "--dim", "3"]);
    assert_eq!((p.dimension, p.period), (3, 31));
    assert_eq!(code(&["period", "3", "--dim", "3", "--cap", "5"]), 2);
    assert_eq!(code(&["period", "0"]), 1);
}

#[test]
fn table_rows() {
    let t: TableOutput = json(&["table", "--from", "100", "--to", "300"]);
    let period = |n: u64| t.rows.iter().find(|r| r.n == n).unwrap().period;
    for (n, m) in [(300, 300), (257, 258), (183, 60), (150, 300), (147, 56), (124, 15), (100, 150)] {
        assert_eq!(period(n), m, "N={n}");
    }
    // brute-force order of the matrix is the referee for the remaining row
    let brute = catmap::matrix_order(&catmap::cat_map_2d(), 157, catmap::DEFAULT_CAP).unwrap();
    assert_eq!(period(157), brute);
    assert!(t.rows.windows(2).all(|w| w[0].n + 1 == w[1].n));
    assert!(t.violations.is_empty());

    assert_eq!(stdout(&["table", "--from", "5", "--to", "5", "--quiet"]), "5 10\n");
    assert_eq!(code(&["table", "--from", "10", "--to", "3"]), 1);
    assert_eq!(code(&["table", "--from", "1", "--to", "3"]), 1);
}

#[test]
fn scramble_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("grid.ppm");
    let original = labelled_ppm(&input);
    let run = |t: &str, out: &Path| {
        stdout(&["scramble", input.to_str().unwrap(), "--iters", t, "--out", out.to_str().unwrap()]);
        fs::read(out).unwrap()
    };
    assert_eq!(run("4", &dir.path().join("four.ppm")), original);
    assert_eq!(run("0", &dir.path().join("zero.ppm")), original);
    assert_eq!(labels(&run("1", &dir.path().join("one.ppm"))), "BDIFHAGCE");

    // t then M - t more restores the bytes
    let first = dir.path().join("first.ppm");
    stdout(&["scramble", input.to_str().unwrap(), "--iters", "3", "--out", first.to_str().unwrap()]);
    let back = dir.path().join("back.ppm");
    stdout(&["scramble", first.to_str().unwrap(), "--iters", "1", "--out", back.to_str().unwrap()]);
    assert_eq!(fs::read(&back).unwrap(), original);
}

#[test]
fn scramble_default_output_and_frames() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("grid.ppm");
    labelled_ppm(&input);
    let s: ScrambleOutput = json(&["scramble", input.to_str().unwrap(), "--iters", "4", "--emit-frames"]);
    assert_eq!(s.period, 4);
    assert_eq!(s.frames.len(), 4);
    assert!(dir.path().join("grid_t4.ppm").exists());
    let second = fs::read(dir.path().join("grid_t2.ppm")).unwrap();
    assert_eq!(labels(&second), "DFEACBGIH");
    assert_eq!(stdout(&["scramble", input.to_str().unwrap(), "--quiet"]), "");
}

#[test]
fn scramble_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let rect = dir.path().join("rect.ppm");
    let mut bytes = b"P6\n2 1\n255\n".to_vec();
    bytes.extend([0u8; 6]);
    fs::write(&rect, bytes).unwrap();
    assert_eq!(code(&["scramble", rect.to_str().unwrap()]), 1);
    assert_eq!(code(&["scramble", dir.path().join("missing.ppm").to_str().unwrap()]), 1);
    let text = dir.path().join("notes.txt");
    fs::write(&text, "hello").unwrap();
    assert_eq!(code(&["scramble", text.to_str().unwrap()]), 1);
}

#[test]
fn png_scramble_restores() {
    let dir = tempfile::tempdir().unwrap();
    let ppm = dir.path().join("grid.ppm");
    labelled_ppm(&ppm);
    let png = dir.path().join("grid.png");
    stdout(&["scramble", ppm.to_str().unwrap(), "--iters", "0", "--out", png.to_str().unwrap()]);
    let out = dir.path().join("back.png");
    stdout(&["scramble", png.to_str().unwrap(), "--iters", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&png).unwrap());
}

#[test]
fn orbit_example() {
    assert_eq!(stdout(&["orbit", "1,1", "3"]), "(1,1) → (2,0) → (2,2) → (1,0) → (1,1)\nlength 4\n");
    let o: OrbitOutput = json(&["orbit", "1,2,0", "5"]);
    assert_eq!(o.dimension, 3);
    assert_eq!(o.points[1], [3, 3, 1]);
    assert_eq!(code(&["orbit", "1,x", "3"]), 1);
    assert_eq!(code(&["orbit", "3,1", "3"]), 1);
    assert_eq!(code(&["orbit", "1", "3"]), 1);
}

#[test]
fn fibonacci() {
    assert_eq!(stdout(&["fib", "4", "--quiet"]), "3\n");
    assert_eq!(stdout(&["fib", "10", "--mod", "7", "--quiet"]), "6\n");
    let f: FibOutput = json(&["fib", "100"]);
    assert_eq!(f.value, "354224848179261915075");
    assert_eq!(code(&["fib", "3", "--mod", "0"]), 1);
}

#[test]
fn spectral_commands() {
    assert_eq!(stdout(&["charpoly", "4", "--quiet"]), "1 -562 410 -66 1\n");
    let c: CharPolyOutput = json(&["charpoly", "3"]);
    assert_eq!(c.alternate_sign, ["-1", "8", "-6", "1"]);

    let e: EigenOutput = json(&["eigen", "2"]);
    assert_eq!(e.roots.len(), 2);
    assert!(e.chaotic && e.no_unit_eigenvalue && e.expanding_eigenvalue);
    assert!(e.dominant.starts_with("2.618033"));
    assert_eq!(code(&["eigen", "3", "--tol", "0"]), 1);

    let t: TrendOutput = json(&["trend", "5"]);
    assert_eq!(t.entries.len(), 4);
    assert!(t.increasing);
    assert_eq!(code(&["trend", "1"]), 1);
}

#[test]
fn density_report() {
    let d: DensityOutput = json(&["density", "3"]);
    assert_eq!(d.max_cycle_length, 4);
    assert_eq!(d.cycle_length_histogram, [(1, 1), (4, 2)]);
    let d3: DensityOutput = json(&["density", "3", "--dim", "3"]);
    assert_eq!(d3.cells, 27);
    assert_eq!(code(&["density", "100000"]), 1);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["period"]), 1);
    assert_eq!(code(&["period", "abc"]), 1);
    assert_eq!(code(&["nonsense"]), 1);
    assert_eq!(code(&["--help"]), 0);
}
