//! Acceptance criteria, one test each. Every test writes a single
//! `criterion NN PASS|FAIL` line to stdout before asserting.

use std::io::Write;
use std::time::{Duration, Instant};

use catmap::{
    build_dcm, cat_map_2d, char_poly, dcm_period_2d, dcm_period_nd, density_report, det, dominant_trend,
    dyson_falk_class, estimate_roots, first_repeat_pair, first_zero_fib_index, matrix_order, pixel_orbit,
    residue_cycle, scramble_image, scramble_lattice, union_basis, DysonFalkClass, ExactMatrix, Lattice, LatticePoint,
    RasterImage, DEFAULT_CAP,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, ok: bool, detail: &str) {
    let line = format!("criterion {id:02} {} {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    // bypasses libtest capture so the line is always visible
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

fn m(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_rows(rows).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

#[test]
fn criterion_01_period_table() {
    let expected = [(300, 300), (257, 258), (183, 60), (157, 157), (150, 300), (147, 56), (124, 15), (100, 150)];
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (n, want) in expected {
        let got = dcm_period_2d(n).unwrap().period;
        if got != want {
            mismatches.push(format!("N={n}: expected {want}, computed {got}"));
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(5);
    let detail = if mismatches.is_empty() {
        format!("8/8 rows match in {elapsed:.2?}")
    } else {
        format!("{} in {elapsed:.2?}", mismatches.join("; "))
    };
    verdict(1, "period table", mismatches.is_empty() && fast, &detail);
}

#[test]
fn criterion_02_three_by_three_example() {
    let period = dcm_period_2d(3).unwrap().period;
    let orbit = pixel_orbit(&LatticePoint::new(vec![1, 1], 3).unwrap(), &cat_map_2d(), 3).unwrap();
    let visited: Vec<String> =
        orbit.points.iter().skip(1).chain(std::iter::once(&orbit.start)).map(|p| p.to_string()).collect();
    let orbit_ok = visited == ["(2,0)", "(2,2)", "(1,0)", "(1,1)"];

    let grid = |rows: [&str; 3]| RasterImage::from_rows(rows.iter().map(|r| r.chars().collect()).collect()).unwrap();
    let original = grid(["ABC", "DEF", "GHI"]);
    let once = scramble_image(&original, 1).unwrap();
    let first_ok = once == grid(["BDI", "FHA", "GCE"]);
    let mut img = original.clone();
    for _ in 0..4 {
        img = scramble_image(&img, 1).unwrap();
    }
    let restored = img == original;
    let ok = period == 4 && orbit_ok && first_ok && restored;
    verdict(
        2,
        "3x3 example",
        ok,
        &format!("M={period}, orbit {}, first scramble ok={first_ok}, restored after 4={restored}", visited.join("->")),
    );
}

#[test]
fn criterion_03_matrix_construction() {
    let a3_ok = build_dcm(3).unwrap() == m(&[&[1, 1, 1], &[2, 3, 2], &[3, 4, 4]]);
    let a4_ok = build_dcm(4).unwrap()
        == m(&[&[17, 23, 18, 5], &[110, 149, 117, 31], &[257, 348, 274, 72], &[432, 585, 460, 122]]);
    let printed = [
        m(&[&[1, 0, 0, 0], &[0, 1, 1, 1], &[0, 2, 3, 2], &[0, 3, 4, 4]]),
        m(&[&[1, 0, 1, 1], &[0, 1, 0, 0], &[2, 0, 3, 2], &[3, 0, 4, 4]]),
        m(&[&[1, 1, 0, 1], &[2, 3, 0, 2], &[0, 0, 1, 0], &[3, 4, 0, 4]]),
        m(&[&[1, 1, 1, 0], &[2, 3, 2, 0], &[3, 4, 4, 0], &[0, 0, 0, 1]]),
    ];
    let basis = union_basis(&build_dcm(3).unwrap()).unwrap();
    let basis_ok = basis.len() == 4 && basis.iter().zip(&printed).all(|(b, p)| b.matrix() == p);
    verdict(3, "matrix construction", a3_ok && a4_ok && basis_ok, &format!("A3 {a3_ok}, A4 {a4_ok}, basis {basis_ok}"));
}

#[test]
fn criterion_04_characteristic_polynomials() {
    // as printed, i.e. det(A - λI)
    let printed: [&[i64]; 3] = [&[1, -3, 1], &[-1, 8, -6, 1], &[1, -562, 410, -66, 1]];
    let mut ok = true;
    let mut shown = Vec::new();
    for (n, want) in (2..=4).zip(printed) {
        let p = char_poly(&build_dcm(n).unwrap());
        ok &= p.alternate_sign_form() == big(want);
        shown.push(p.to_string());
    }
    verdict(4, "characteristic polynomials", ok, &shown.join(" | "));
}

#[test]
fn criterion_05_eigenvalues() {
    let printed: [&[f64]; 3] =
        [&[0.381966, 2.61803], &[0.243019, 0.572771, 7.18421], &[0.0168808, 0.209427, 0.50397, 561.27]];
    let mut ok = true;
    let mut worst = 0.0f64;
    for (n, want) in (2..=4).zip(printed) {
        let got = estimate_roots(&char_poly(&build_dcm(n).unwrap()), 1e-10).unwrap().approximations();
        ok &= got.len() == want.len();
        for (g, w) in got.iter().zip(want) {
            let tol = if *w < 10.0 { 1e-4 } else { 1e-2 };
            let err = (g - w).abs();
            ok &= err <= tol;
            worst = worst.max(err / tol);
        }
    }
    verdict(5, "eigenvalues", ok, &format!("worst error is {:.3} of its tolerance", worst));
}

#[test]
fn criterion_06_half_square_bound() {
    let start = Instant::now();
    let violations: Vec<u64> = (3..=1000u64).filter(|&n| 2 * dcm_period_2d(n).unwrap().period > n * n).collect();
    let elapsed = start.elapsed();
    let ok = violations.is_empty() && elapsed < Duration::from_secs(60);
    verdict(6, "M <= N^2/2", ok, &format!("{} violations over N=3..1000 in {elapsed:.2?}", violations.len()));
}

#[test]
fn criterion_07_dyson_falk_cases() {
    let three = [10u64, 50, 250];
    let two = [5u64, 25, 125, 6, 30, 150];
    let mut bad = Vec::new();
    for n in three {
        if dcm_period_2d(n).unwrap().period != 3 * n {
            bad.push(n);
        }
    }
    for n in two {
        if dcm_period_2d(n).unwrap().period != 2 * n {
            bad.push(n);
        }
    }
    let mut others = 0;
    for n in (3..=500u64).filter(|n| !three.contains(n) && !two.contains(n)) {
        others += 1;
        if dcm_period_2d(n).unwrap().period > 12 * n / 7 {
            bad.push(n);
        }
        if dyson_falk_class(n).unwrap().0 != DysonFalkClass::Other {
            bad.push(n);
        }
    }
    verdict(7, "Dyson-Falk cases", bad.is_empty(), &format!("9 special N, {others} others, failures {bad:?}"));
}

#[test]
fn criterion_08_residue_invariants() {
    let repeat: Vec<u64> = (2..=500).filter(|&n| first_repeat_pair(n).unwrap().1 != (1, 1)).collect();
    let zero: Vec<u64> = (1..=500).filter(|&n| first_zero_fib_index(n).unwrap() > n * n).collect();
    let odd: Vec<u64> = (3..=500).filter(|&n| !residue_cycle(n).unwrap().cycle_length.is_multiple_of(2)).collect();
    let ok = repeat.is_empty() && zero.is_empty() && odd.is_empty();
    verdict(
        8,
        "residue invariants",
        ok,
        &format!("violations: repeat pair {repeat:?}, zero within N^2 {zero:?}, even cycle {odd:?}"),
    );
}

#[test]
fn criterion_09_density() {
    let a2 = cat_map_2d();
    let mut bad = Vec::new();
    for n in 3..=100u64 {
        let r = density_report(n, &a2).unwrap();
        let covered: u64 = r.cycle_length_histogram.iter().map(|(len, count)| len * count).sum();
        if 2 * r.max_cycle_length > n * n || covered != n * n {
            bad.push(n);
        }
    }
    verdict(9, "orbit density", bad.is_empty(), &format!("N=3..100, failures {bad:?}"));
}

#[test]
fn criterion_10_cross_method() {
    let a2 = cat_map_2d();
    let bad: Vec<(u64, u64, u64)> = (1..=300u64)
        .filter_map(|n| {
            let fib = dcm_period_2d(n).unwrap().period;
            let brute = matrix_order(&a2, n, DEFAULT_CAP).unwrap();
            (fib != brute).then_some((n, fib, brute))
        })
        .collect();
    verdict(10, "Fibonacci vs matrix order", bad.is_empty(), &format!("N=1..300, disagreements {bad:?}"));
}

#[test]
fn criterion_11_higher_dimension_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = true;
    let mut periods = Vec::new();
    for (dim, n) in [(3usize, 2u64), (3, 3), (3, 5), (4, 2), (4, 3)] {
        let period = dcm_period_nd(dim, n, DEFAULT_CAP).unwrap().period;
        periods.push(format!("({dim},{n})->{period}"));
        let a = build_dcm(dim).unwrap();
        let cells = (n as usize).pow(dim as u32);
        let original = Lattice::new(n as usize, dim, (0..cells).map(|_| rng.gen::<u32>()).collect()).unwrap();
        let mut cube = original.clone();
        for _ in 0..period {
            cube = scramble_lattice(&cube, &a, 1).unwrap();
        }
        ok &= cube == original;
        ok &= scramble_lattice(&original, &a, period).unwrap() == original;
    }
    let dets: Vec<bool> = (2..=8).map(|n| det(&build_dcm(n).unwrap()) == BigInt::from(1)).collect();
    ok &= dets.iter().all(|&d| d);
    verdict(
        11,
        "n-dimensional round trip",
        ok,
        &format!("{}; det=1 for n=2..8: {}", periods.join(" "), dets.iter().all(|&d| d)),
    );
}

#[test]
fn criterion_12_dominant_trend() {
    let report = dominant_trend(6).unwrap();
    let dims: Vec<usize> = report.entries.iter().map(|e| e.dimension).collect();
    let known = [2.61803, 7.18421, 561.27];
    let values: Vec<f64> = report.entries.iter().map(|e| e.dominant.approx()).collect();
    let mut ok = dims == [2, 3, 4, 5, 6];
    for (g, w) in values.iter().zip(known) {
        ok &= (g - w).abs() <= if w < 10.0 { 1e-4 } else { 1e-2 };
    }
    ok &= values[0] < values[1] && values[1] < values[2];
    let shown: Vec<String> =
        report.entries.iter().map(|e| format!("n={}:{}", e.dimension, e.dominant.midpoint())).collect();
    verdict(
        12,
        "dominant eigenvalue trend",
        ok,
        &format!("{}; increasing through n=6: {}", shown.join(" "), report.increasing),
    );
}
