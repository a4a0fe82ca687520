//! `hankel`: command-line front end for the verification pipelines.
//!
//! Exit codes: 0 on success or a certified claim, 1 when a certification
//! or property check fails, 2 on usage or input errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hankel::bernstein::{certify_upper_bound, BivariatePoly, CertifyOptions, Rectangle, Strategy};
use hankel::functionals::{
    coeffs_from_caratheodory, coeffs_from_schwarz, h2_normalized_from_p, h3_normalized_from_c,
    hankel_h2, hankel_h3, CaratheodoryCoeffs, CoefficientVector, SchwarzCoeffs,
};
use hankel::json::{gauss_from_json, gauss_to_json, rat_to_json, series_from_str, series_to_json, SCHEMA_VERSION};
use hankel::params::{sample_at, AnglePolicy, SampleMode};
use hankel::phi::{build_f_from_schwarz, check_phi_properties, convexity_expression, power_schwarz, PhiFunction};
use hankel::pipelines::{verify_h2, verify_h3, H2Config, H3Config, TheoremReport};
use hankel::scalar::{fmt_gauss, fmt_rat, parse_rat, rat_to_f64, GaussRat};
use hankel::series::{GaussSeries, TruncatedSeries};
use hankel::ykc::{ykc_brute_force, ykc_closed_form, YkcValue};

#[derive(Parser, Debug)]
#[command(name = "hankel", version, about = "Exact Hankel determinant bounds and their certificates")]
struct Cli {
    /// Seed for every randomized component.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads. Accepted for interface stability; work runs on the
    /// calling thread and results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grid check of the properties of φ(z) = (1 + z/2)².
    PhiCheck {
        #[arg(long, default_value_t = 64)]
        radial: usize,
        #[arg(long, default_value_t = 256)]
        angular: usize,
    },
    /// a2..a5 and both Hankel determinants from four coefficients.
    Coeffs {
        #[arg(long, value_enum)]
        from: CoeffSource,
        /// JSON list of four numbers, e.g. '[1, "1/2", {"re": 0, "im": 1}, 0]'.
        #[arg(long)]
        values: String,
    },
    /// Stream seeded parameter tuples as JSON lines.
    Sample {
        #[arg(long, value_enum, default_value_t = Mode::Ps)]
        mode: Mode,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Angles::Exact)]
        angles: Angles,
    },
    /// max over the closed disk of |A + Bz + Cz²| + 1 − |z|².
    Ykc {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Also run the brute-force disk maximizer.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 512)]
        radial: usize,
        #[arg(long, default_value_t = 1024)]
        angular: usize,
    },
    /// Certify poly ≤ bound on a rectangle by Bernstein subdivision.
    Bernstein {
        /// Polynomial file: {"bidegree": [m, n], "terms": [{"i", "j", "num", "den"}]}.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value = "0,1,0,1")]
        rect: String,
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Close failing rectangles at the origin with a corner certificate.
        #[arg(long)]
        corner: bool,
    },
    /// Second Hankel determinant pipeline.
    H2 {
        #[command(subcommand)]
        action: H2Action,
    },
    /// Third Hankel determinant pipeline.
    H3 {
        #[command(subcommand)]
        action: H3Action,
    },
    /// Series of the extremal function for ω = z² or z³.
    Extremal {
        #[arg(long, value_enum)]
        omega: Omega,
        #[arg(long, default_value_t = 9)]
        order: usize,
    },
    /// Build f from a Schwarz function given as a series literal.
    Series {
        /// {"order": N, "coeffs": [...]} with coefficients from z⁰.
        #[arg(long)]
        omega: String,
        /// Order of f; defaults to one more than the order of ω.
        #[arg(long)]
        order: Option<usize>,
    },
    /// phi-check, h2 verify and h3 verify with default settings.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum H2Action {
    Verify(H2Args),
}

#[derive(Subcommand, Debug)]
enum H3Action {
    Verify(H3Args),
}

#[derive(Args, Debug)]
struct H2Args {
    /// Randomized search samples.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Interior p1 grid points.
    #[arg(long, default_value_t = 199)]
    grid: usize,
    /// Exact identity samples.
    #[arg(long, default_value_t = 500)]
    exact_samples: usize,
}

#[derive(Args, Debug)]
struct H3Args {
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 500)]
    exact_samples: usize,
    /// Points per side of the (p1, x) grid; the y axis uses `y_grid`.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[arg(long, default_value_t = 11)]
    y_grid: usize,
    #[arg(long, default_value_t = 12)]
    depth: usize,
    #[arg(long, default_value = "paper-quadrants")]
    strategy: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffSource {
    Caratheodory,
    Schwarz,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Lz,
    Ps,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Angles {
    Exact,
    Dense,
    Mixed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Omega {
    Z2,
    Z3,
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Command::Sample { mode, count, angles } = cli.command {
        return finish(stream_samples(&cli, mode, count, angles));
    }
    let result = run(&cli).and_then(|out| {
        let body = if cli.json {
            let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
            s.push('\n');
            s
        } else {
            out.text.clone()
        };
        write_output(cli.out.as_ref(), &body)?;
        Ok(out.ok)
    });
    finish(result)
}

fn finish(result: Result<bool, String>) -> ExitCode {
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_output(path: Option<&PathBuf>, body: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::PhiCheck { radial, angular } => phi_check(*radial, *angular),
        Command::Coeffs { from, values } => coeffs(*from, values),
        Command::Sample { .. } => unreachable!("streamed separately"),
        Command::Ykc {
            a,
            b,
            c,
            oracle,
            radial,
            angular,
        } => ykc(a, b, c, *oracle, *radial, *angular),
        Command::Bernstein {
            poly,
            rect,
            bound,
            depth,
            strategy,
            corner,
        } => bernstein(poly, rect, bound, *depth, strategy, *corner),
        Command::H2 {
            action: H2Action::Verify(args),
        } => {
            let cfg = H2Config {
                seed: cli.seed,
                grid: args.grid,
                exact_samples: args.exact_samples,
                search_samples: args.samples,
            };
            Ok(theorem_output(&verify_h2(&cfg)))
        }
        Command::H3 {
            action: H3Action::Verify(args),
        } => {
            let strategy = parse_strategy(&args.strategy)?;
            let cfg = H3Config {
                seed: cli.seed,
                exact_samples: args.exact_samples,
                search_samples: args.samples,
                cuboid_grid: (args.grid, args.grid, args.y_grid),
                y_coefficient_grid: 2 * args.grid - 1,
                strategy,
                max_depth: args.depth,
            };
            Ok(theorem_output(&verify_h3(&cfg)))
        }
        Command::Extremal { omega, order } => extremal(*omega, *order),
        Command::Series { omega, order } => series(omega, *order),
        Command::VerifyAll => verify_all(cli.seed),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).ok_or_else(|| {
        format!("unknown strategy '{s}' (expected paper-quadrants, bisect-longest or auto)")
    })
}

fn phi_check(radial: usize, angular: usize) -> Result<Output, String> {
    let report = check_phi_properties(radial, angular)
        .map_err(|_| "phi-check needs at least 2 radial and 2 angular steps".to_string())?;
    let mut text = format!("φ(z) = (1 + z/2)² on a {radial}×{angular} polar grid\n");
    for c in &report.checks {
        text += &format!("  {:<40} {}  {}\n", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
    }
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["schema_version"] = json!(SCHEMA_VERSION);
    Ok(Output {
        text,
        json: v,
        ok: report.all_passed,
    })
}

fn parse_four(values: &str) -> Result<[GaussRat; 4], String> {
    let v: Value = serde_json::from_str(values).map_err(|e| format!("--values is not JSON: {e}"))?;
    let list = v.as_array().ok_or("--values must be a JSON list")?;
    if list.len() != 4 {
        return Err(format!("--values needs 4 entries, got {}", list.len()));
    }
    let parsed = list
        .iter()
        .map(gauss_from_json)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(parsed.try_into().expect("four entries"))
}

fn coeffs(from: CoeffSource, values: &str) -> Result<Output, String> {
    let [v1, v2, v3, v4] = parse_four(values)?;
    let (a, normalized, within, label) = match from {
        CoeffSource::Caratheodory => {
            let p = CaratheodoryCoeffs::new(v1, v2, v3, v4);
            let n = h2_normalized_from_p(&p.p1, &p.p2, &p.p3);
            (coeffs_from_caratheodory(&p), ("2304·H₂(2)", n), p.within_bounds(), "|p_n| ≤ 2")
        }
        CoeffSource::Schwarz => {
            let w = SchwarzCoeffs::new(v1, v2, v3, v4);
            let n = h3_normalized_from_c(&w);
            (coeffs_from_schwarz(&w), ("69120·H₃(1)", n), w.within_bounds(), "|c_n| ≤ 1")
        }
    };
    let h2 = hankel_h2(&a);
    let h3 = hankel_h3(&a);
    let names = ["a2", "a3", "a4", "a5"];
    let CoefficientVector { a2, a3, a4, a5 } = &a;
    let vals = [a2, a3, a4, a5];
    let mut text = String::new();
    for (n, v) in names.iter().zip(vals) {
        text += &format!("{n} = {}\n", fmt_gauss(v));
    }
    text += &format!("H₂(2) = {}\nH₃(1) = {}\n{} = {}\n", fmt_gauss(&h2), fmt_gauss(&h3), normalized.0, fmt_gauss(&normalized.1));
    if !within {
        text += &format!("note: input violates {label}\n");
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "coefficients": names.iter().zip(vals).map(|(n, v)| (n.to_string(), gauss_to_json(v))).collect::<serde_json::Map<_, _>>(),
        "h2": gauss_to_json(&h2),
        "h3": gauss_to_json(&h3),
        "normalized": { "name": normalized.0, "value": gauss_to_json(&normalized.1) },
        "within_bounds": within,
    });
    Ok(Output::ok(text, json))
}

fn stream_samples(cli: &Cli, mode: Mode, count: usize, angles: Angles) -> Result<bool, String> {
    let mode = match mode {
        Mode::Lz => SampleMode::Lz,
        Mode::Ps => SampleMode::Ps,
    };
    let policy = match angles {
        Angles::Exact => AnglePolicy::Exact,
        Angles::Dense => AnglePolicy::Dense,
        Angles::Mixed => AnglePolicy::Mixed,
    };
    let sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(fs::File::create(p).map_err(|e| format!("cannot write {}: {e}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    for i in 0..count {
        let s = sample_at(cli.seed, i, mode, policy);
        writeln!(w, "{}", s.to_json()).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;
    Ok(true)
}

fn ykc(a: &str, b: &str, c: &str, oracle: bool, radial: usize, angular: usize) -> Result<Output, String> {
    let parse = |name: &str, s: &str| parse_rat(s).map_err(|e| format!("--{name}: {e}"));
    let (ra, rb, rc) = (parse("a", a)?, parse("b", b)?, parse("c", c)?);
    let closed = ykc_closed_form(&ra, &rb, &rc);
    let branch = closed.branch.map(|b| b.label()).unwrap_or("none");
    let value_text = match &closed.value {
        YkcValue::Exact(r) => fmt_rat(r),
        YkcValue::Approx(x) => format!("{x:.15}"),
    };
    let mut text = format!("Y({}, {}, {}) = {value_text}  [branch {branch}]\n", fmt_rat(&ra), fmt_rat(&rb), fmt_rat(&rc));
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "a": rat_to_json(&ra),
        "b": rat_to_json(&rb),
        "c": rat_to_json(&rc),
        "branch": branch,
        "value": match &closed.value {
            YkcValue::Exact(r) => rat_to_json(r),
            YkcValue::Approx(x) => json!({ "decimal": x }),
        },
    });
    if oracle {
        let o = ykc_brute_force(rat_to_f64(&ra), rat_to_f64(&rb), rat_to_f64(&rc), radial, angular);
        let dev = (o.value.to_f64() - closed.value.to_f64()).abs();
        text += &format!("oracle ({radial}×{angular} grid, refined) = {:.15}  deviation {dev:.3e}\n", o.value.to_f64());
        v["oracle"] = json!({
            "value": o.value.to_f64(),
            "argmax": o.argmax_hint.map(|(x, y)| [x, y]),
            "deviation": dev,
        });
    }
    Ok(Output::ok(text, v))
}

fn bernstein(poly: &PathBuf, rect: &str, bound: &str, depth: usize, strategy: &str, corner: bool) -> Result<Output, String> {
    let src = fs::read_to_string(poly).map_err(|e| format!("cannot read {}: {e}", poly.display()))?;
    let f = BivariatePoly::from_json_str(&src).map_err(|e| format!("{}: {e}", poly.display()))?;
    let rect = Rectangle::parse(rect).map_err(|e| e.to_string())?;
    let bound = parse_rat(bound).map_err(|e| format!("--bound: {e}"))?;
    let options = CertifyOptions {
        max_depth: depth,
        strategy: parse_strategy(strategy)?,
        corner_fallback: corner,
    };
    let report = certify_upper_bound(&f, &rect, &bound, &options);
    let leaves = report.root.leaves();
    let failed: Vec<_> = leaves.iter().filter(|n| !n.certified()).collect();
    let mut text = format!(
        "{} ≤ {} on {}: {}\n  strategy {}, depth ≤ {}, {} nodes, {} leaves\n",
        f,
        fmt_rat(&bound),
        rect,
        if report.certified { "CERTIFIED" } else { "NOT CERTIFIED" },
        options.strategy.name(),
        depth,
        report.node_count(),
        leaves.len()
    );
    for n in failed.iter().take(10) {
        text += &format!("  failed leaf {} (Bernstein max {})\n", n.rect, fmt_rat(&n.bernstein_max));
    }
    let mut v = report.to_json();
    v["schema_version"] = json!(SCHEMA_VERSION);
    v["rect"] = rect.to_json();
    Ok(Output {
        text,
        json: v,
        ok: report.certified,
    })
}

fn theorem_output(report: &TheoremReport) -> Output {
    Output {
        text: report.summary(),
        json: report.to_json(true),
        ok: report.certified,
    }
}

fn series_text(label: &str, s: &GaussSeries) -> String {
    format!("{label} = {s}\n")
}

fn extremal(omega: Omega, order: usize) -> Result<Output, String> {
    let (k, name) = match omega {
        Omega::Z2 => (2, "z^2"),
        Omega::Z3 => (3, "z^3"),
    };
    if order < 1 {
        return Err("--order must be at least 1".into());
    }
    let w = power_schwarz::<GaussRat>(k, order - 1);
    let f = build_f_from_schwarz(&w, order).map_err(|e| e.to_string())?;
    Ok(Output::ok(
        series_text(&format!("f (ω = {name})"), &f),
        json!({ "schema_version": SCHEMA_VERSION, "omega": name, "f": series_to_json(&f) }),
    ))
}

fn series(omega: &str, order: Option<usize>) -> Result<Output, String> {
    let w = series_from_str(omega).map_err(|e| format!("--omega: {e}"))?;
    let order = order.unwrap_or(w.order() + 1);
    let f = build_f_from_schwarz(&w, order).map_err(|e| e.to_string())?;
    // 1 + z f''/f' must equal φ∘ω to the order that survives.
    let lhs = convexity_expression(&f).map_err(|e| e.to_string())?;
    let n = lhs.order();
    let rhs = TruncatedSeries::compose(&PhiFunction::series::<GaussRat>(n), &w.truncate(n.min(w.order())))
        .map_err(|e| e.to_string())?
        .truncate(n);
    let consistent = lhs.truncate(rhs.order()) == rhs;
    let mut text = series_text("f", &f);
    text += &format!("1 + z f''/f' = φ(ω) through order {}: {}\n", rhs.order(), if consistent { "yes" } else { "NO" });
    Ok(Output {
        text,
        json: json!({
            "schema_version": SCHEMA_VERSION,
            "omega": series_to_json(&w),
            "f": series_to_json(&f),
            "subordination_identity": consistent,
        }),
        ok: consistent,
    })
}

fn verify_all(seed: u64) -> Result<Output, String> {
    let phi = phi_check(64, 256)?;
    let h2 = verify_h2(&H2Config { seed, ..Default::default() });
    let h3 = verify_h3(&H3Config { seed, ..Default::default() });
    let ok = phi.ok && h2.certified && h3.certified;
    let text = format!("{}\n{}\n{}", phi.text, h2.summary(), h3.summary());
    Ok(Output {
        text,
        json: json!({
            "schema_version": SCHEMA_VERSION,
            "verdict": if ok { "certified" } else { "not-certified" },
            "phi_check": phi.json,
            "h2": h2.to_json(true),
            "h3": h3.to_json(true),
        }),
        ok,
    })
}
