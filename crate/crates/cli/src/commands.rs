use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use catmap::raster::{frame_path, read_raster, write_raster, RasterError, RasterFormat};
use catmap::{
    build_dcm, chaos_check, char_poly, dcm_period_2d, dcm_period_nd, density_report, dominant_trend, dyson_falk_class,
    estimate_roots, fib, fib_mod, pixel_orbit, scramble_image, verify_bounds, DysonFalkClass, LatticePoint,
    PeriodReport, Prediction,
};
use num_bigint::BigInt;
use serde::Serialize;

use crate::payload::*;
use crate::{Cli, CliError, Command, Rendered};

type Outcome = Result<Rendered, CliError>;

pub(crate) fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Matrix { n } => matrix(*n),
        Command::Period { n, dim, cap } => period(*n, *dim, *cap),
        Command::Table { from, to } => table(*from, *to),
        Command::Scramble { input, iters, emit_frames, out } => scramble(input, *iters, *emit_frames, out.as_deref()),
        Command::Orbit { point, n } => orbit(point, *n),
        Command::Fib { i, modulus } => fibonacci(*i, *modulus),
        Command::Charpoly { n } => charpoly(*n),
        Command::Eigen { n, tol } => eigen(*n, *tol),
        Command::Trend { n_max } => trend(*n_max),
        Command::Density { n, dim } => density(*n, *dim),
    }
}

fn rendered<T: Serialize>(text: String, brief: String, payload: &T) -> Outcome {
    let json =
        serde_json::to_string_pretty(payload).map_err(|e| CliError::Compute(format!("serializing output: {e}")))?;
    Ok(Rendered { text, brief, json })
}

fn strings(values: impl IntoIterator<Item = BigInt>) -> Vec<String> {
    values.into_iter().map(|v| v.to_string()).collect()
}

fn class_name(c: DysonFalkClass) -> &'static str {
    match c {
        DysonFalkClass::ThreeN => "3N",
        DysonFalkClass::TwoN => "2N",
        DysonFalkClass::Other => "other",
        DysonFalkClass::SmallNSpecial => "small-N",
    }
}

fn matrix(n: usize) -> Outcome {
    let a = build_dcm(n)?;
    let text = a.to_string();
    let payload = MatrixOutput {
        dimension: n,
        rows: a.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        max_bits: a.max_bits(),
    };
    rendered(text.clone(), text, &payload)
}

fn period_payload(r: &PeriodReport) -> PeriodOutput {
    PeriodOutput {
        n: r.n,
        dimension: r.dimension,
        period: r.period,
        method: r.method,
        dyson_falk_class: r.dyson_falk_class,
        prediction: dyson_falk_class(r.n).ok().map(|(_, p)| p),
        bound_satisfied: r.bound_satisfied,
    }
}

fn period(n: u64, dim: usize, cap: u64) -> Outcome {
    let report = if dim == 2 { dcm_period_2d(n)? } else { dcm_period_nd(dim, n, cap)? };
    let p = period_payload(&report);
    let mut text = format!("N          {}\ndimension  {}\nperiod     {}\n", p.n, p.dimension, p.period);
    let method = match p.method {
        catmap::PeriodMethod::Fibonacci => "Fibonacci residue cycle",
        catmap::PeriodMethod::MatrixOrder => "matrix order",
    };
    let _ = writeln!(text, "method     {method}");
    if dim == 2 {
        let prediction = match p.prediction {
            Some(Prediction::Exact(m)) => format!(" (predicts {m})"),
            Some(Prediction::AtMost(m)) => format!(" (predicts at most {m})"),
            None => String::new(),
        };
        let _ = writeln!(text, "class      {}{prediction}", class_name(p.dyson_falk_class));
        let _ = writeln!(text, "M <= N²/2  {}", if p.bound_satisfied { "yes" } else { "no" });
    }
    rendered(text.trim_end().to_string(), p.period.to_string(), &p)
}

fn table(from: u64, to: u64) -> Outcome {
    let summary = verify_bounds(from, to)?;
    let rows: Vec<TableRow> = summary
        .rows
        .iter()
        .map(|r| TableRow {
            n: r.n,
            period: r.period,
            dyson_falk_class: r.dyson_falk_class,
            bound_satisfied: r.bound_satisfied,
        })
        .collect();
    let mut text = format!("{:>8} {:>8}  {:<6} {}\n", "N", "M", "class", "M<=N²/2");
    let mut brief = String::new();
    for r in &rows {
        let ok = if r.bound_satisfied { "yes" } else { "no" };
        let _ = writeln!(text, "{:>8} {:>8}  {:<6} {ok}", r.n, r.period, class_name(r.dyson_falk_class));
        let _ = writeln!(brief, "{} {}", r.n, r.period);
    }
    let _ = write!(
        text,
        "{} rows: {} of class 3N, {} of class 2N, {} other; {} violations",
        summary.checked,
        summary.three_n,
        summary.two_n,
        summary.other,
        summary.violations.len()
    );
    let payload = TableOutput { from, to, rows, violations: summary.violations };
    rendered(text, brief.trim_end().to_string(), &payload)
}

fn read_error(path: &Path, e: RasterError) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

fn write_error(path: &Path, e: RasterError) -> CliError {
    match e {
        RasterError::Unsupported(_) => CliError::Usage(format!("{}: {e}", path.display())),
        _ => CliError::Compute(format!("{}: {e}", path.display())),
    }
}

fn scramble(input: &Path, iters: u64, emit_frames: bool, out: Option<&Path>) -> Outcome {
    let format = RasterFormat::from_path(input).map_err(|e| read_error(input, e))?;
    let bitmap = read_raster(input).map_err(|e| read_error(input, e))?;
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("frame").to_string();
    let out: PathBuf = match out {
        Some(p) => p.to_path_buf(),
        None => frame_path(input.parent().unwrap_or(Path::new(".")), &stem, iters, format.extension()),
    };
    let out_format = RasterFormat::from_path(&out).map_err(|e| write_error(&out, e))?;
    let side = bitmap.image.side();
    let mut frames = Vec::new();
    let image = if emit_frames {
        let dir = out.parent().unwrap_or(Path::new("."));
        let mut current = bitmap.image.clone();
        for k in 1..=iters {
            current = scramble_image(&current, 1)?;
            let path = frame_path(dir, &stem, k, out_format.extension());
            write_raster(&path, &bitmap.with_image(current.clone())).map_err(|e| write_error(&path, e))?;
            frames.push(path.display().to_string());
        }
        current
    } else {
        scramble_image(&bitmap.image, iters)?
    };
    write_raster(&out, &bitmap.with_image(image)).map_err(|e| write_error(&out, e))?;
    let period = dcm_period_2d(side as u64)?.period;
    let payload = ScrambleOutput {
        input: input.display().to_string(),
        output: out.display().to_string(),
        side,
        iterations: iters,
        period,
        frames,
    };
    let mut text = format!(
        "scrambled {} ({side}×{side}) {iters} times into {}; period {period}, {} more restore it",
        payload.input,
        payload.output,
        (period - iters % period) % period
    );
    if !payload.frames.is_empty() {
        let _ = write!(text, "\nwrote {} frames", payload.frames.len());
    }
    rendered(text, String::new(), &payload)
}

fn orbit(point: &str, n: u64) -> Outcome {
    let coords =
        point.split(',').map(|c| c.trim().parse::<u64>()).collect::<Result<Vec<_>, _>>().map_err(|e| {
            CliError::Usage(format!("point {point:?} is not a comma-separated list of coordinates: {e}"))
        })?;
    let start = LatticePoint::new(coords, n)?;
    let a = build_dcm(start.arity())?;
    let record = pixel_orbit(&start, &a, n)?;
    let mut chain: Vec<String> = record.points.iter().map(ToString::to_string).collect();
    chain.push(record.start.to_string());
    let text = format!("{}\nlength {}", chain.join(" → "), record.length);
    let payload = OrbitOutput {
        modulus: n,
        dimension: start.arity(),
        length: record.length,
        points: record.points.iter().map(|p| p.coords().to_vec()).collect(),
    };
    rendered(text, record.length.to_string(), &payload)
}

fn fibonacci(i: u64, modulus: Option<u64>) -> Outcome {
    let (value, text) = match modulus {
        Some(m) => {
            let r = fib_mod(i, m)?.to_string();
            let text = format!("u_{i} mod {m} = {r}");
            (r, text)
        }
        None => {
            let v = fib(i).to_string();
            let text = format!("u_{i} = {v}");
            (v, text)
        }
    };
    let payload = FibOutput { index: i, modulus, value: value.clone() };
    rendered(text, value, &payload)
}

fn charpoly(n: usize) -> Outcome {
    let p = char_poly(&build_dcm(n)?);
    let coefficients = strings(p.descending());
    let brief = coefficients.join(" ");
    let payload = CharPolyOutput {
        dimension: n,
        alternate_sign: strings(p.alternate_sign_form()),
        coefficients,
        polynomial: p.to_string(),
    };
    let text = format!("χ(λ) = det(λI − A) = {}\ncoefficients: {brief}", payload.polynomial);
    rendered(text, brief, &payload)
}

fn eigen(n: usize, tol: f64) -> Outcome {
    let a = build_dcm(n)?;
    let spectrum = estimate_roots(&char_poly(&a), tol)?;
    let verdict = chaos_check(&a)?;
    let passed = |e| e == catmap::spectral::Evaluation::Passed;
    let payload = EigenOutput {
        dimension: n,
        tolerance: tol,
        roots: spectrum
            .roots
            .iter()
            .map(|r| RootOutput {
                lower: r.lower.to_sci_string(20),
                upper: r.upper.to_sci_string(20),
                estimate: r.midpoint().to_string(),
                multiplicity: r.multiplicity,
            })
            .collect(),
        dominant: spectrum.dominant_root().midpoint().to_string(),
        chi_at_one: verdict.chi_at_one.to_string(),
        no_unit_eigenvalue: passed(verdict.no_unit_eigenvalue),
        expanding_eigenvalue: passed(verdict.expanding_eigenvalue),
        not_asymptotically_periodic: None,
        chaotic: verdict.chaotic,
    };
    let mut text = String::from("eigenvalues:\n");
    for r in &payload.roots {
        let mult = if r.multiplicity > 1 { format!(" (×{})", r.multiplicity) } else { String::new() };
        let _ = writeln!(text, "  {}{mult}", r.estimate);
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = write!(
        text,
        "dominant: {}\nχ(1) = {} (eigenvalue 1 absent: {})\n|λ| > 1 present: {}\nasymptotic periodicity: not evaluated\nchaotic (evaluated conditions): {}",
        payload.dominant,
        payload.chi_at_one,
        yes_no(payload.no_unit_eigenvalue),
        yes_no(payload.expanding_eigenvalue),
        yes_no(payload.chaotic)
    );
    let brief = payload.roots.iter().map(|r| r.estimate.clone()).collect::<Vec<_>>().join("\n");
    rendered(text, brief, &payload)
}

fn trend(n_max: usize) -> Outcome {
    let report = dominant_trend(n_max)?;
    let entries: Vec<TrendRow> = report
        .entries
        .iter()
        .map(|e| TrendRow { dimension: e.dimension, dominant: e.dominant.midpoint().to_string() })
        .collect();
    let mut text = String::new();
    let mut brief = String::new();
    for e in &entries {
        let _ = writeln!(text, "n={:<3} λ_max ≈ {}", e.dimension, e.dominant);
        let _ = writeln!(brief, "{} {}", e.dimension, e.dominant);
    }
    let _ = write!(text, "strictly increasing: {}", if report.increasing { "yes" } else { "no" });
    rendered(text, brief.trim_end().to_string(), &TrendOutput { entries, increasing: report.increasing })
}

fn density(n: u64, dim: usize) -> Outcome {
    let r = density_report(n, &build_dcm(dim)?)?;
    let payload = DensityOutput {
        modulus: r.modulus,
        dimension: r.dimension,
        cells: r.cells,
        cycle_count: r.cycle_count,
        max_cycle_length: r.max_cycle_length,
        coverage: r.coverage_ratio(),
        at_most_half: r.at_most_half,
        cycle_length_histogram: r.cycle_length_histogram,
    };
    let mut text = format!(
        "cells {}\ncycles {}\nlongest cycle {} ({:.4} of the lattice)\nat most half: {}\ncycle lengths:",
        payload.cells,
        payload.cycle_count,
        payload.max_cycle_length,
        payload.coverage,
        if payload.at_most_half { "yes" } else { "no" }
    );
    for (len, count) in &payload.cycle_length_histogram {
        let _ = write!(text, "\n  {len:>8} × {count}");
    }
    rendered(text, payload.max_cycle_length.to_string(), &payload)
}
