//! Command-line front end: a text format for rings and modules, one
//! subcommand per verifier, and chart tooling.
//!
//! Exit codes: 0 when every verdict passes, 1 on a verification failure,
//! 2 on usage or parse errors, 3 on computational errors.

pub mod dsl;

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gordual_core::chart::{self, ChartError, Dot};
use gordual_core::complex::ext_into_ring;
use gordual_core::degreewise::{expand_degreewise, matlis_dual};
use gordual_core::duality::{gorenstein_check, k_level_ses, uct_verify};
use gordual_core::local_cohomology::{local_cohomology_with_cap, DEFAULT_T_MAX};
use gordual_core::ring::{bp_degree_sum, bp_generator_degree, bp_ring, gorenstein_shift_symbolic, johnson_wilson_ring, lubin_tate_ring};
use gordual_core::{AlgebraError, GradedRing, ModulePresentation, Poly};
use serde::Serialize;

pub use dsl::{parse_dsl, parse_poly, DslError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

/// Window used when `--window` is not given.
pub const DEFAULT_WINDOW: (i64, i64) = (-10, 10);

#[derive(Parser, Debug)]
#[command(name = "gordual", version, about = "Gorenstein duality and universal coefficient checks")]
struct Cli {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbolic Gorenstein shift of a coefficient ring
    Shift(ShiftArgs),
    /// Compute Ext(k, A) and compare with the symbolic shift
    CheckGorenstein(GorensteinArgs),
    /// Ext_A(M, A) on a window
    Ext(ExtArgs),
    /// Local cohomology H^i_I(M) on a window
    LocalCohomology(LocalArgs),
    /// Degreewise Matlis dual of a torsion module
    MatlisDual(ModuleArgs),
    /// Compare Ext^n_A(M, A) with the shifted Matlis dual of M
    UctVerify(ModuleArgs),
    /// Composition factors of the short exact sequence over the coefficients
    SesK(ModuleArgs),
    /// Chart tools
    #[command(subcommand)]
    Chart(ChartCommand),
}

#[derive(Args, Debug)]
struct ShiftArgs {
    /// Ring file; the ring declaration is used
    #[arg(short = 'm', long = "module", value_name = "FILE")]
    file: Option<String>,
    /// BP<n> at the prime p
    #[arg(long, num_args = 2, value_names = ["P", "N"])]
    bp: Option<Vec<u64>>,
    /// Johnson-Wilson E(n+1) at the prime p
    #[arg(long, num_args = 2, value_names = ["P", "N"])]
    jw: Option<Vec<u64>>,
    /// Lubin-Tate theory of height n at the prime p
    #[arg(long = "lubin-tate", num_args = 2, value_names = ["P", "N"])]
    lubin_tate: Option<Vec<u64>>,
    /// Eilenberg-MacLane spectrum of Z_(p)
    #[arg(long, value_name = "P")]
    hz: Option<u64>,
}

#[derive(Args, Debug)]
struct Input {
    /// Ring and module file, `-` for standard input
    #[arg(short = 'm', long = "module", value_name = "FILE")]
    file: String,
    /// Module to use when the file declares several
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
struct WindowArg {
    /// Internal degree window
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct GorensteinArgs {
    #[arg(short = 'm', long = "module", value_name = "FILE")]
    file: String,
    /// Highest homological degree to compute
    #[arg(long)]
    max_i: Option<usize>,
    #[command(flatten)]
    window: WindowArg,
}

#[derive(Args, Debug)]
struct ExtArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    max_i: Option<usize>,
    #[command(flatten)]
    window: WindowArg,
}

#[derive(Args, Debug)]
struct LocalArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated ideal generators; defaults to the maximal ideal
    #[arg(long)]
    ideal: Option<String>,
    /// Give up once the stable Koszul level exceeds this
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    t_max: u32,
    #[command(flatten)]
    window: WindowArg,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    window: WindowArg,
}

#[derive(Subcommand, Debug)]
enum ChartCommand {
    /// Upside-down dual of a chart
    Dual {
        file: String,
        #[arg(long, allow_negative_numbers = true)]
        shift: i64,
        /// Add a comment line recording where each dot goes
        #[arg(long)]
        trace: bool,
    },
    /// Module-level comparison of two charts
    Compare { left: String, right: String },
    /// Render a chart as SVG
    Render { file: String },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::NotPrime(_)
            | AlgebraError::DuplicateName(_)
            | AlgebraError::NonPositiveDegree { .. }
            | AlgebraError::NonHomogeneousInput(_)
            | AlgebraError::InvalidWindow(..)
            | AlgebraError::UnknownGenerator(_) => EXIT_USAGE,
            _ => EXIT_COMPUTE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Algebra(a) => a.into(),
            e => Failure { code: EXIT_USAGE, message: e.to_string() },
        }
    }
}

impl From<ChartError> for Failure {
    fn from(e: ChartError) -> Self {
        match e {
            ChartError::Algebra(a) => a.into(),
            ChartError::AmbiguousTower { .. } => Failure { code: EXIT_COMPUTE, message: e.to_string() },
            e => Failure { code: EXIT_USAGE, message: e.to_string() },
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Output of a subcommand: the report and whether its verdict passed.
struct Outcome {
    text: String,
    passed: bool,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(usage("standard input can only be read once"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| usage(format!("reading standard input: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| usage(format!("reading {path}: {e}")))
        }
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: String) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(text),
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure { code: EXIT_COMPUTE, message: format!("serializing report: {e}") }),
    }
}

fn window(w: &WindowArg) -> Result<(i64, i64), Failure> {
    match w.window.as_deref() {
        None => Ok(DEFAULT_WINDOW),
        Some(&[lo, hi]) if lo <= hi => Ok((lo, hi)),
        Some(_) => Err(usage("window must satisfy lo <= hi")),
    }
}

fn load_module(io: &mut Io, input: &Input) -> Result<ModulePresentation, Failure> {
    let (_, modules) = parse_dsl(&io.read(&input.file)?)?;
    match &input.name {
        Some(n) => modules.into_iter().find(|m| &m.name == n).ok_or_else(|| usage(format!("no module named `{n}`"))),
        None => modules.into_iter().next().ok_or_else(|| usage(format!("{} declares no module", input.file))),
    }
}

#[derive(Serialize)]
struct ShiftReport {
    ring: String,
    b: i64,
    n: i64,
    c: i64,
    a: i64,
    modulus: Option<i64>,
    /// `D = sum |v_i|` for BP-type rings, by closed formula and by summation
    degree_sum: Option<(i64, i64)>,
    verdict: bool,
}

fn shift(io: &mut Io, args: &ShiftArgs, format: Format) -> Result<Outcome, Failure> {
    let two = |v: &Vec<u64>| -> Result<(u64, u32), Failure> {
        let n = u32::try_from(v[1]).map_err(|_| usage("n is too large"))?;
        Ok((v[0], n))
    };
    let sources = [args.file.is_some(), args.bp.is_some(), args.jw.is_some(), args.lubin_tate.is_some(), args.hz.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(usage("give exactly one of -m, --bp, --jw, --lubin-tate, --hz"));
    }
    let mut degree_sum = None;
    let ring: GradedRing = if let Some(f) = &args.file {
        parse_dsl(&io.read(f)?)?.0
    } else if let Some(v) = &args.bp {
        let (p, n) = two(v)?;
        let explicit: i64 = (1..=n).map(|i| bp_generator_degree(p, i)).sum();
        degree_sum = Some((bp_degree_sum(p, n), explicit));
        bp_ring(p, n)?
    } else if let Some(v) = &args.jw {
        let (p, n) = two(v)?;
        let explicit: i64 = (1..=n).map(|i| bp_generator_degree(p, i)).sum();
        degree_sum = Some((bp_degree_sum(p, n), explicit));
        johnson_wilson_ring(p, n)?
    } else if let Some(v) = &args.lubin_tate {
        let (p, n) = two(v)?;
        lubin_tate_ring(p, n)?
    } else {
        let p = args.hz.expect("one source is present");
        GradedRing::polynomial(gordual_core::CoefficientRing::p_local(p)?, &[])?
    };
    let s = gorenstein_shift_symbolic(&ring);
    let verdict = degree_sum.is_none_or(|(closed, explicit)| closed == explicit);
    let mut text = String::new();
    let _ = writeln!(text, "ring {ring}");
    if let Some((closed, explicit)) = degree_sum {
        let _ = writeln!(text, "D={closed} (explicit sum {explicit})");
    }
    let _ = writeln!(text, "{s}");
    let _ = writeln!(text, "verdict: {}", if verdict { "PASS" } else { "FAIL" });
    let report = ShiftReport { ring: ring.to_string(), b: s.b, n: s.n, c: s.c, a: s.a, modulus: s.modulus, degree_sum, verdict };
    Ok(Outcome { text: render(format, &report, text)?, passed: verdict })
}

fn maximal_ideal(ring: &GradedRing) -> Vec<Poly> {
    let mut ideal: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
    if !ring.coeff.is_field() {
        ideal.push(Poly::constant(ring, ring.coeff.from_int(ring.coeff.p() as i64)));
    }
    ideal
}

#[derive(Serialize)]
struct TableReport<'a, T: Serialize> {
    command: &'a str,
    module: String,
    ring: String,
    settings: Vec<(&'a str, String)>,
    result: T,
}

fn table_text<T: Serialize>(r: &TableReport<T>, body: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} over {}", r.command, r.module, r.ring);
    for (k, v) in &r.settings {
        let _ = writeln!(s, "{k}: {v}");
    }
    s.push_str(body);
    s
}

fn dispatch(io: &mut Io, cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Shift(a) => shift(io, a, format),
        Command::CheckGorenstein(a) => {
            let (ring, _) = parse_dsl(&io.read(&a.file)?)?;
            let w = a.window.window.as_ref().map(|_| window(&a.window)).transpose()?;
            let report = gorenstein_check(&ring, a.max_i, w)?;
            Ok(Outcome { text: render(format, &report, report.to_text())?, passed: report.passed() })
        }
        Command::Ext(a) => {
            let m = load_module(io, &a.input)?;
            let w = window(&a.window)?;
            let max_i = a.max_i.unwrap_or(m.ring.krull_dimension() + 1);
            let ext = ext_into_ring(&m, max_i, w)?;
            let r = TableReport {
                command: "ext",
                module: m.name.clone(),
                ring: m.ring.to_string(),
                settings: vec![("window", format!("[{}, {}]", w.0, w.1)), ("max_i", max_i.to_string())],
                result: &ext,
            };
            let text = table_text(&r, &format!("Ext^i_t(M, A), entries [i, t]:\n{ext}"));
            Ok(Outcome { text: render(format, &r, text)?, passed: true })
        }
        Command::LocalCohomology(a) => {
            let m = load_module(io, &a.input)?;
            let w = window(&a.window)?;
            let (ideal, label) = match &a.ideal {
                Some(s) => {
                    let gens = s.split(',').map(|g| parse_poly(&m.ring, g)).collect::<Result<Vec<_>, _>>()?;
                    (gens, s.clone())
                }
                None => (maximal_ideal(&m.ring), "maximal".to_string()),
            };
            let h = local_cohomology_with_cap(&m, &ideal, w, a.t_max)?;
            let r = TableReport {
                command: "local-cohomology",
                module: m.name.clone(),
                ring: m.ring.to_string(),
                settings: vec![
                    ("window", format!("[{}, {}]", w.0, w.1)),
                    ("ideal", label),
                    ("t_max", a.t_max.to_string()),
                ],
                result: &h,
            };
            let text = table_text(&r, &format!("H^i_I(M)_t, entries [i, t]:\n{h}"));
            Ok(Outcome { text: render(format, &r, text)?, passed: true })
        }
        Command::MatlisDual(a) => {
            let m = load_module(io, &a.input)?;
            let w = window(&a.window)?;
            let dual = matlis_dual(&expand_degreewise(&m, w)?);
            let mut body = String::from("degree | M^v\n");
            for d in (-w.1..=-w.0).rev() {
                let g = dual.group(d);
                if !g.is_zero() {
                    let _ = writeln!(body, "{d:>6} | {}", g.format(&dual.coeff));
                }
            }
            let r = TableReport {
                command: "matlis-dual",
                module: m.name.clone(),
                ring: m.ring.to_string(),
                settings: vec![("window", format!("[{}, {}]", w.0, w.1)), ("dual degrees", format!("[{}, {}]", -w.1, -w.0))],
                result: &dual,
            };
            let text = table_text(&r, &body);
            Ok(Outcome { text: render(format, &r, text)?, passed: true })
        }
        Command::UctVerify(a) => {
            let m = load_module(io, &a.input)?;
            let report = uct_verify(&m, window(&a.window)?)?;
            Ok(Outcome { text: render(format, &report, report.to_text())?, passed: report.verdict })
        }
        Command::SesK(a) => {
            let m = load_module(io, &a.input)?;
            let report = k_level_ses(&m, window(&a.window)?)?;
            Ok(Outcome { text: render(format, &report, report.to_text())?, passed: report.verdict })
        }
        Command::Chart(c) => chart_command(io, c, format),
    }
}

fn chart_command(io: &mut Io, c: &ChartCommand, format: Format) -> Result<Outcome, Failure> {
    match c {
        ChartCommand::Dual { file, shift, trace } => {
            let src = chart::parse_chart(&io.read(file)?)?;
            let dual = chart::dual_chart(&src, *shift)?;
            let mut text = String::new();
            if *trace {
                for &d in &src.dots {
                    let Dot { x, y } = chart::dual_position(&src, d, *shift).expect("dot is on the chart");
                    let _ = writeln!(text, "# ({},{}) -> ({x},{y})", d.x, d.y);
                }
            }
            text.push_str(&dual.emit());
            Ok(Outcome { text: render(format, &dual, text)?, passed: true })
        }
        ChartCommand::Compare { left, right } => {
            let a = chart::parse_chart(&io.read(left)?)?;
            let b = chart::parse_chart(&io.read(right)?)?;
            let diff = chart::compare_charts(&a, &b)?;
            Ok(Outcome { text: render(format, &diff, diff.to_text())?, passed: diff.is_empty() })
        }
        ChartCommand::Render { file } => {
            let c = chart::parse_chart(&io.read(file)?)?;
            Ok(Outcome { text: chart::emit_chart_svg(&c), passed: true })
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { stdin, stdin_used: false };
    match dispatch(&mut io, &cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
