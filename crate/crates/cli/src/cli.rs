//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::Value;
use tanglerep_core::diagram::Sign;
use tanglerep_core::families::{dim2_family, manifold_gallery, variety_samples};
use tanglerep_core::kirby::{
    certify_invariance, compat_kernel, fr_defect, CompatVariant, Outcome, Strategy, DEFAULT_SIZE_CAP,
};
use tanglerep_core::skein::{skein_relation, verify_skein, BetaSequence};
use tanglerep_core::{certify_smatrix, EngineKind, Gaussian, KirbyError, LinearMap, SMatrix, Scalar, DEFAULT_EPSILON};

use crate::formats::{
    format_map, format_scalar, parse_braid_word, parse_link, parse_sequence, parse_tangle, read_smatrix, FormatError,
    MatrixData,
};
use crate::report::{self, ScanRow};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tanglerep", version, about = "Certify S-matrices and evaluate framed tangles and links")]
pub struct Cli {
    /// Scalar engine; defaults to the engine named in the S-matrix file
    #[arg(long, global = true, value_enum)]
    pub engine: Option<EngineArg>,
    /// Float tolerance; ignored by the exact engine
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Largest number of unknowns in a compatibility system
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    pub size_cap: usize,
    /// Also write a JSON report to this path
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Evaluate with an invertible matrix that does not certify
    #[arg(long, global = true)]
    pub unchecked: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Float,
    Exact,
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Float => EngineKind::Float,
            EngineArg::Exact => EngineKind::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Zentral,
    Sym,
    Irreducible,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Zentral => Strategy::Zentral,
            StrategyArg::Sym => Strategy::Symmetric,
            StrategyArg::Irreducible => Strategy::Irreducible,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the S-matrix conditions
    Certify { smatrix: PathBuf },
    /// Evaluate a tangle word
    Eval { smatrix: PathBuf, tangle: PathBuf },
    /// Evaluate a framed link
    Invariant { smatrix: PathBuf, link: PathBuf },
    /// Certify invariance under Kirby moves
    Kirby {
        smatrix: PathBuf,
        #[arg(long, value_enum, default_value = "irreducible")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
    },
    /// Kernel of the compatibility system
    Compat {
        smatrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        symmetric: bool,
    },
    /// Skein relation from the minimal polynomial of a braid
    Skein {
        smatrix: PathBuf,
        /// Braid letters, e.g. "1 -2 1"
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        /// Strand count; defaults to one more than the largest letter
        #[arg(long)]
        strands: Option<usize>,
        /// Sequence context file to verify the relation on
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Sweep the two-dimensional family on the constraint surface
    ScanDim2 {
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Values on links with known closed forms
    Gallery {
        smatrix: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Format(PathBuf, FormatError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Format(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// What a subcommand produced.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

struct Config {
    engine: Option<EngineKind>,
    epsilon: Option<f64>,
    size_cap: usize,
    unchecked: bool,
}

/// Runs the tool. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(eps) = cli.epsilon {
        if !(eps.is_finite() && eps >= 0.0) {
            let _ = writeln!(err, "error: --epsilon must be a finite nonnegative number");
            return EXIT_USAGE;
        }
    }
    let config = Config {
        engine: cli.engine.map(Into::into),
        epsilon: cli.epsilon,
        size_cap: cli.size_cap,
        unchecked: cli.unchecked,
    };
    match dispatch(&cli.command, &config) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            if let Some(path) = &cli.json {
                let mut body = serde_json::to_string_pretty(&output.json).expect("plain JSON values");
                body.push('\n');
                if let Err(e) = std::fs::write(path, body) {
                    let _ = writeln!(err, "error: {}", CliError::Io(path.clone(), e));
                    return EXIT_USAGE;
                }
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

struct Loaded {
    data: MatrixData,
    epsilon: f64,
}

fn load_smatrix(path: &Path, config: &Config) -> Result<Loaded, CliError> {
    let file = read_smatrix(&read_file(path)?).map_err(|e| CliError::Format(path.to_path_buf(), e))?;
    let engine = config.engine.unwrap_or(file.data.engine());
    let data = file.data.with_engine(engine);
    let epsilon = match engine {
        EngineKind::Exact => 0.0,
        EngineKind::Float => config.epsilon.or(file.epsilon).unwrap_or(DEFAULT_EPSILON),
    };
    Ok(Loaded { data, epsilon })
}

fn check_size_cap(v: usize, cap: usize) -> Result<(), CliError> {
    match v.checked_pow(4) {
        Some(min) if cap >= min => Ok(()),
        _ => Err(CliError::Usage(format!("--size-cap must be at least dim^4 = {}", v.saturating_pow(4)))),
    }
}

fn dispatch(command: &Command, config: &Config) -> Result<Output, CliError> {
    if let Command::ScanDim2 { samples } = command {
        return match config.engine.unwrap_or(EngineKind::Exact) {
            EngineKind::Exact => scan_dim2::<Gaussian>(*samples, 0.0),
            EngineKind::Float => scan_dim2::<Complex64>(*samples, config.epsilon.unwrap_or(DEFAULT_EPSILON)),
        };
    }
    let path = match command {
        Command::Certify { smatrix }
        | Command::Eval { smatrix, .. }
        | Command::Invariant { smatrix, .. }
        | Command::Kirby { smatrix, .. }
        | Command::Compat { smatrix, .. }
        | Command::Skein { smatrix, .. }
        | Command::Gallery { smatrix, .. } => smatrix,
        Command::ScanDim2 { .. } => unreachable!("handled above"),
    };
    let loaded = load_smatrix(path, config)?;
    match loaded.data {
        MatrixData::Float(m) => run_command::<Complex64>(command, config, m, loaded.epsilon),
        MatrixData::Exact(m) => run_command::<Gaussian>(command, config, m, loaded.epsilon),
    }
}

/// A certified matrix, or the failed report.
fn prepare<S: Scalar>(s: LinearMap<S>, epsilon: f64, unchecked: bool) -> Result<Result<SMatrix<S>, Output>, CliError> {
    if unchecked {
        return Ok(SMatrix::unchecked(s, epsilon).map_err(|e| Output {
            text: format!("FAIL: {e}\n"),
            json: serde_json::json!({ "kind": "error", "message": e.to_string() }),
            code: EXIT_FAIL,
        }));
    }
    let (sm, report) = certify_smatrix(s, epsilon).map_err(usage)?;
    Ok(sm.ok_or_else(|| Output {
        text: format!("{report}not an S-matrix; pass --unchecked to evaluate anyway\n"),
        json: report::cert_json(&report),
        code: EXIT_FAIL,
    }))
}

fn run_command<S: Scalar>(command: &Command, config: &Config, s: LinearMap<S>, epsilon: f64) -> Result<Output, CliError> {
    macro_rules! certified {
        ($s:expr) => {
            match prepare($s, epsilon, config.unchecked)? {
                Ok(sm) => sm,
                Err(output) => return Ok(output),
            }
        };
    }
    match command {
        Command::Certify { .. } => {
            let (_, report) = certify_smatrix(s, epsilon).map_err(usage)?;
            Ok(Output {
                text: report.to_string(),
                json: report::cert_json(&report),
                code: if report.overall { EXIT_PASS } else { EXIT_FAIL },
            })
        }
        Command::Eval { tangle, .. } => {
            let sm = certified!(s);
            let word = parse_tangle(&read_file(tangle)?).map_err(|e| CliError::Format(tangle.clone(), e.into()))?;
            let map = sm.evaluate(&word).map_err(usage)?;
            Ok(Output { text: format_map(&map), json: report::map_json(&map), code: EXIT_PASS })
        }
        Command::Invariant { link, .. } => {
            let sm = certified!(s);
            let link = parse_link(&read_file(link)?).map_err(|e| CliError::Format(link.clone(), e.into()))?;
            let value = sm.link_invariant(&link).map_err(usage)?;
            Ok(Output {
                text: format!("{}\n", format_scalar(&value)),
                json: serde_json::json!({ "kind": "invariant", "link": link.to_string(), "value": report::scalar_json(&value) }),
                code: EXIT_PASS,
            })
        }
        Command::Kirby { strategy, nmax, .. } => {
            check_size_cap(s.dim(), config.size_cap)?;
            let sm = match SMatrix::unchecked(s, epsilon) {
                Ok(sm) => sm,
                Err(e) => {
                    return Ok(Output {
                        text: format!("FAIL at invertibility ({e})\n"),
                        json: serde_json::json!({ "kind": "invariance certificate", "outcome": "FAIL", "headline": "FAIL at invertibility" }),
                        code: EXIT_FAIL,
                    })
                }
            };
            let cert = certify_invariance(&sm, (*strategy).into(), *nmax, config.size_cap).map_err(usage)?;
            Ok(Output {
                text: cert.to_string(),
                json: report::invariance_json(&cert),
                code: match cert.outcome {
                    Outcome::Pass => EXIT_PASS,
                    Outcome::Fail => EXIT_FAIL,
                    Outcome::Inconclusive => EXIT_INCONCLUSIVE,
                },
            })
        }
        Command::Compat { n, symmetric, .. } => {
            check_size_cap(s.dim(), config.size_cap)?;
            let sm = certified!(s);
            let variant = if *symmetric { CompatVariant::Symmetric } else { CompatVariant::Plain };
            match compat_kernel(&sm, *n, variant, config.size_cap) {
                Ok(r) => Ok(Output {
                    text: r.to_string(),
                    json: report::compat_json(&r),
                    code: if r.is_trivial() { EXIT_PASS } else { EXIT_FAIL },
                }),
                Err(KirbyError::SizeCap { unknowns, cap }) => Ok(Output {
                    text: format!("INCONCLUSIVE ({unknowns} unknowns exceed the size cap of {cap})\n"),
                    json: serde_json::json!({ "kind": "compatibility kernel", "n": n, "size_cap": cap, "unknowns": unknowns }),
                    code: EXIT_INCONCLUSIVE,
                }),
                Err(e) => Err(usage(e)),
            }
        }
        Command::Skein { braid, strands, verify, .. } => {
            let sm = certified!(s);
            let letters = parse_braid_word(braid).map_err(usage)?;
            let strands = strands.unwrap_or_else(|| letters.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1));
            let rel = skein_relation(&sm, strands, &letters).map_err(usage)?;
            let mut text = format!("{rel}\n");
            let mut code = EXIT_PASS;
            let mut checked = None;
            if let Some(path) = verify {
                let spec = parse_sequence(&read_file(path)?).map_err(|e| CliError::Format(path.clone(), e.into()))?;
                let seq = BetaSequence::closure_context(
                    spec.strands,
                    spec.hole,
                    &spec.below,
                    &spec.above,
                    strands,
                    letters.clone(),
                    spec.powers.clone(),
                )
                .map_err(usage)?;
                let shift = spec.powers.iter().copied().min().unwrap_or(0);
                let shifted = rel.shifted(shift);
                let residual = verify_skein(&sm, &shifted, &seq).map_err(usage)?;
                let pass = match S::ENGINE {
                    EngineKind::Exact => residual == 0.0,
                    EngineKind::Float => residual <= epsilon,
                };
                let _ = writeln!(text, "verified on powers {:?}: residual {residual:e} {}", spec.powers, if pass { "ok" } else { "FAIL" });
                code = if pass { EXIT_PASS } else { EXIT_FAIL };
                checked = Some((residual, pass));
            }
            Ok(Output { text, json: report::skein_json(&rel, checked), code })
        }
        Command::Gallery { nmax, .. } => {
            check_size_cap(s.dim(), config.size_cap)?;
            let sm = certified!(s);
            let gallery = manifold_gallery(&sm, *nmax).map_err(usage)?;
            let cert = certify_invariance(&sm, Strategy::Irreducible, 0, config.size_cap).map_err(usage)?;
            let warning = (cert.outcome != Outcome::Pass).then(|| {
                format!("no invariance certificate ({}); values are framed-link invariants only", cert.headline())
            });
            let text = gallery_text(&gallery, epsilon, warning.as_deref());
            let pass = gallery.all_pass(epsilon);
            Ok(Output {
                text,
                json: report::gallery_json(&gallery, epsilon, warning.as_deref()),
                code: if pass { EXIT_PASS } else { EXIT_FAIL },
            })
        }
        Command::ScanDim2 { .. } => unreachable!("dispatched without a matrix"),
    }
}

fn gallery_text<S: Scalar>(gallery: &tanglerep_core::families::Gallery<S>, epsilon: f64, warning: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(w) = warning {
        let _ = writeln!(out, "warning: {w}");
    }
    let rows: Vec<[String; 4]> = gallery
        .rows
        .iter()
        .map(|r| {
            [
                r.presentation.clone(),
                r.manifold.clone().unwrap_or_else(|| "-".into()),
                format_scalar(&r.value),
                r.expected.as_ref().map(format_scalar).unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let header = ["presentation", "manifold", "value", "expected"];
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: [&str; 4]| {
        cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header));
    for r in &rows {
        let _ = writeln!(out, "{}", line([&r[0], &r[1], &r[2], &r[3]]));
    }
    let passed = gallery.products.iter().filter(|p| p.3).count();
    let worst = gallery.products.iter().map(|p| p.2).fold(0.0, f64::max);
    let _ = writeln!(
        out,
        "multiplicativity: {passed}/{} disjoint unions match, max residual {worst:e}",
        gallery.products.len()
    );
    let _ = writeln!(out, "{}", if gallery.all_pass(epsilon) { "PASS" } else { "FAIL" });
    out
}

fn scan_dim2<S: Scalar>(samples: usize, epsilon: f64) -> Result<Output, CliError> {
    let mut rows = Vec::with_capacity(samples);
    for params in variety_samples::<S>(samples) {
        let s = dim2_family(&params);
        let (_, cert) = certify_smatrix(s.clone(), epsilon).map_err(usage)?;
        let sm = SMatrix::unchecked(s, epsilon).map_err(usage)?;
        let scalar = |sign| -> Result<S, CliError> {
            let d = fr_defect(&sm, 0, sign).map_err(usage)?;
            Ok(d.as_scalar().cloned().expect("arity 0"))
        };
        let (a0, b0) = (scalar(Sign::Pos)?, scalar(Sign::Neg)?);
        rows.push(ScanRow { params, cert, a0, b0 });
    }
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "k={} p={} q={}  A_0={} B_0={}  {}",
            format_scalar(&r.params.k),
            format_scalar(&r.params.p),
            format_scalar(&r.params.q),
            format_scalar(&r.a0),
            format_scalar(&r.b0),
            r.cert.headline()
        );
    }
    let certified = rows.iter().filter(|r| r.cert.overall).count();
    let _ = writeln!(text, "{certified}/{} samples certify", rows.len());
    Ok(Output { json: report::scan_json(&rows), text, code: EXIT_PASS })
}
