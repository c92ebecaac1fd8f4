//! Command-line front end. Every subcommand renders its report to bytes
//! first, so repeated runs with the same arguments produce identical output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    boundary_band_count, cm_value_scan, distinct_values_count, first_sign_change, integrality_scan, pair_sign_density,
    quadrants, sign_density, st_histogram, BandReport, Check, CmScanReport, CsvReport, DistinctReport, JointReport,
    SatoTateReport, SignDensityReport,
};
use crate::eigen::{load_eigenform, ApCache, Backend, Eigenform, FormSpec, LoadOptions};
use crate::error::{Error, Result};
use crate::exponents::{exponents_from_eigenform, PrimeExponents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Curve,
    Eta,
}

/// Validated run configuration.
#[derive(Debug, Parser)]
#[command(
    name = "gmf",
    version,
    about = "q-exponents of eigenform-derived products and their sign statistics"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for a_p tables; reused and extended across runs.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the counting kernels.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Coefficient source for catalogue forms.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Curve)]
    pub backend: BackendArg,
    /// Compare both backends on b(n) for n up to this bound (0 disables).
    #[arg(long, global = true, default_value_t = 1000)]
    pub cross_check: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FormArgs {
    /// Catalogue level, or the level of the form in --form-file.
    #[arg(long)]
    pub level: u64,
    /// `n,bn` coefficient file to use instead of the catalogue.
    #[arg(long)]
    pub form_file: Option<PathBuf>,
    /// Mark the --form-file form as having complex multiplication.
    #[arg(long, requires = "form_file")]
    pub cm: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponents c(1..=limit) as `n,num,den` rows.
    Exponents {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "10000", value_parser = parse_count)]
        limit: u64,
    },
    /// Histogram of b(p)/(2√p) against the Sato-Tate measure.
    Satotate {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "100000", value_parser = parse_count)]
        xmax: u64,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        /// Allowed sup discrepancy.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
    /// Sign densities of c(p), plus b(p) = 0 band counts and distinct values.
    Signs {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "100000", value_parser = parse_count)]
        xmax: u64,
        /// Allowed distance of the positive and negative ratios from 1/2.
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        /// Upper bound for the zero ratio.
        #[arg(long, default_value_t = 0.01)]
        zero_tol: f64,
    },
    /// Sign densities of c1(p)·c2(p) and the joint sign quadrants of two forms.
    Pair {
        /// Two catalogue levels, e.g. `11,14`.
        #[arg(long, value_delimiter = ',', value_name = "L1,L2", required = true)]
        levels: Vec<u64>,
        #[arg(long, default_value = "100000", value_parser = parse_count)]
        xmax: u64,
        /// Allowed distance of the product-sign ratios from 1/2.
        #[arg(long, default_value_t = 0.03)]
        tol: f64,
        /// Allowed distance of each quadrant mass from 1/4.
        #[arg(long, default_value_t = 0.05)]
        quad_tol: f64,
    },
    /// Integral exponents c(n) ∈ ℤ \ {0} for n <= limit.
    Integrality {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "10000", value_parser = parse_count)]
        limit: u64,
    },
    /// First sign changes of c(n) against the (4N)^(3/8) and N0 bounds.
    Firstsign {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "10000", value_parser = parse_count)]
        limit: u64,
    },
    /// Primes with b(p) = 0 of a CM form and their exponents c(p) = 1/p.
    Cmscan {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "100000", value_parser = parse_count)]
        xmax: u64,
        /// Allowed distance of the vanishing fraction from 1/2.
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
    },
}

/// Accepts `100000` as well as `1e5`.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) => Ok(x as u64),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.threads == Some(0) {
            return bad("--threads must be at least 1".into());
        }
        let tol_ok = |t: f64| t.is_finite() && t > 0.0;
        match &self.command {
            Command::Exponents { limit, .. }
            | Command::Integrality { limit, .. }
            | Command::Firstsign { limit, .. } => {
                if *limit < 1 {
                    return bad("--limit must be at least 1".into());
                }
            }
            Command::Satotate { xmax, bins, tol, .. } => {
                if *xmax < 2 {
                    return bad("--xmax must be at least 2".into());
                }
                if *bins < 1 {
                    return bad("--bins must be at least 1".into());
                }
                if !tol_ok(*tol) {
                    return bad(format!("--tol {tol} must be positive"));
                }
            }
            Command::Signs {
                xmax, tol, zero_tol, ..
            } => {
                if *xmax < 2 {
                    return bad("--xmax must be at least 2".into());
                }
                if !tol_ok(*tol) || !tol_ok(*zero_tol) {
                    return bad("tolerances must be positive".into());
                }
            }
            Command::Pair {
                levels,
                xmax,
                tol,
                quad_tol,
            } => {
                if levels.len() != 2 {
                    return bad(format!("--levels takes exactly two levels, got {}", levels.len()));
                }
                if *xmax < 2 {
                    return bad("--xmax must be at least 2".into());
                }
                if !tol_ok(*tol) || !tol_ok(*quad_tol) {
                    return bad("tolerances must be positive".into());
                }
            }
            Command::Cmscan { xmax, tol, .. } => {
                if *xmax < 2 {
                    return bad("--xmax must be at least 2".into());
                }
                if !tol_ok(*tol) {
                    return bad(format!("--tol {tol} must be positive"));
                }
            }
        }
        Ok(())
    }

    fn load_options(&self) -> LoadOptions {
        LoadOptions {
            backend: match self.backend {
                BackendArg::Curve => Backend::Curve,
                BackendArg::Eta => Backend::Eta,
            },
            cache: self.cache_dir.clone().map(ApCache::new),
            cross_check: self.cross_check,
        }
    }

    fn load(&self, form: &FormArgs, bound: u64) -> Result<Eigenform> {
        let spec = match &form.form_file {
            Some(path) => FormSpec::File {
                path: path.clone(),
                level: form.level,
            },
            None => FormSpec::Catalogue(form.level),
        };
        let bound = usize::try_from(bound).map_err(|_| Error::Config(format!("bound {bound} is too large")))?;
        let g = load_eigenform(&spec, bound, &self.load_options())?;
        if form.cm {
            return Eigenform::new(g.level(), g.coeffs().to_vec(), true, g.source());
        }
        Ok(g)
    }
}

#[derive(Serialize)]
struct ExponentRow {
    n: usize,
    num: String,
    den: String,
}

#[derive(Serialize)]
struct ExponentsOutput {
    level: u64,
    limit: u64,
    exponents: Vec<ExponentRow>,
}

#[derive(Serialize)]
struct Checked<'a, R> {
    #[serde(flatten)]
    report: &'a R,
    checks: Vec<Check>,
}

#[derive(Serialize)]
struct SignsOutput<'a> {
    #[serde(flatten)]
    signs: &'a SignDensityReport,
    band: BandReport,
    distinct: DistinctReport,
    checks: Vec<Check>,
}

#[derive(Serialize)]
struct PairOutput<'a> {
    #[serde(flatten)]
    signs: &'a SignDensityReport,
    quadrants: Vec<JointReport>,
    checks: Vec<Check>,
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| Error::format("<report>", e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn csv_bytes(report: &dyn CsvReport) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    report.write_csv(&mut out)?;
    Ok(out)
}

fn render<T: Serialize>(format: Format, json_value: &T, table: &dyn CsvReport) -> Result<Vec<u8>> {
    match format {
        Format::Json => json(json_value),
        Format::Csv => csv_bytes(table),
    }
}

/// Runs one subcommand and returns the rendered report.
pub fn execute(cfg: &RunConfig) -> Result<Vec<u8>> {
    cfg.validate()?;
    match &cfg.command {
        Command::Exponents { form, limit } => {
            let g = cfg.load(form, *limit)?;
            let c = exponents_from_eigenform(&g, *limit as usize)?;
            match cfg.format {
                Format::Csv => {
                    let mut out = Vec::new();
                    c.write_csv(&mut out)
                        .map_err(|e| Error::format("<report>", e.to_string()))?;
                    Ok(out)
                }
                Format::Json => json(&ExponentsOutput {
                    level: c.level(),
                    limit: *limit,
                    exponents: c
                        .iter()
                        .map(|(n, v)| ExponentRow {
                            n,
                            num: v.numer().to_string(),
                            den: v.denom().to_string(),
                        })
                        .collect(),
                }),
            }
        }
        Command::Satotate { form, xmax, bins, tol } => {
            let g = cfg.load(form, *xmax)?;
            let report: SatoTateReport = st_histogram(&g, *xmax, *bins)?;
            let checks = vec![Check::below("discrepancy", report.discrepancy, *tol)];
            render(
                cfg.format,
                &Checked {
                    report: &report,
                    checks,
                },
                &report,
            )
        }
        Command::Signs {
            form,
            xmax,
            tol,
            zero_tol,
        } => {
            let g = cfg.load(form, *xmax)?;
            let c = PrimeExponents::from_eigenform(&g, *xmax)?;
            let signs = sign_density(&c, *xmax)?;
            let checks = vec![
                Check::near("ratios.positive", signs.ratios.positive, 0.5, *tol),
                Check::near("ratios.negative", signs.ratios.negative, 0.5, *tol),
                Check::below("ratios.zero", signs.ratios.zero, *zero_tol),
            ];
            let out = SignsOutput {
                signs: &signs,
                band: boundary_band_count(&g, *xmax)?,
                distinct: distinct_values_count(&c, *xmax)?,
                checks,
            };
            render(cfg.format, &out, &signs)
        }
        Command::Pair {
            levels,
            xmax,
            tol,
            quad_tol,
        } => {
            let form = |level: u64| FormArgs {
                level,
                form_file: None,
                cm: false,
            };
            let g1 = cfg.load(&form(levels[0]), *xmax)?;
            let g2 = cfg.load(&form(levels[1]), *xmax)?;
            let signs = pair_sign_density(
                &PrimeExponents::from_eigenform(&g1, *xmax)?,
                &PrimeExponents::from_eigenform(&g2, *xmax)?,
                *xmax,
            )?;
            let quads = quadrants(&g1, &g2, *xmax)?;
            let mut checks = vec![
                Check::near("ratios.negative", signs.ratios.negative, 0.5, *tol),
                Check::near("ratios.positive", signs.ratios.positive, 0.5, *tol),
            ];
            for (i, q) in quads.iter().enumerate() {
                checks.push(Check::near(
                    format!("quadrants[{i}].empirical"),
                    q.empirical,
                    0.25,
                    *quad_tol,
                ));
            }
            checks.push(Check::above(
                "disagreement_ratio",
                signs.disagreement_ratio.unwrap_or(0.0),
                6.0 / 25.0,
            ));
            let out = PairOutput {
                signs: &signs,
                quadrants: quads,
                checks,
            };
            render(cfg.format, &out, &signs)
        }
        Command::Integrality { form, limit } => {
            let g = cfg.load(form, *limit)?;
            let c = exponents_from_eigenform(&g, *limit as usize)?;
            let report = integrality_scan(&c, *limit as usize)?;
            render(cfg.format, &report, &report)
        }
        Command::Firstsign { form, limit } => {
            let g = cfg.load(form, *limit)?;
            let c = exponents_from_eigenform(&g, *limit as usize)?;
            let report = first_sign_change(&c)?;
            render(cfg.format, &report, &report)
        }
        Command::Cmscan { form, xmax, tol } => {
            let g = cfg.load(form, *xmax)?;
            let c = PrimeExponents::from_eigenform(&g, *xmax)?;
            let report: CmScanReport = cm_value_scan(&c, *xmax)?;
            let checks = vec![Check::near("good_fraction", report.good_fraction, 0.5, *tol)];
            render(
                cfg.format,
                &Checked {
                    report: &report,
                    checks,
                },
                &report,
            )
        }
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Shape(_) | Error::EmptyRange(_) => 2,
        Error::Catalogue(_) => 3,
        Error::Integrity(_) | Error::MissingData(_) => 4,
        Error::Io { .. } | Error::Format { .. } => 5,
        Error::CmForm(_) | Error::NotCm(_) | Error::DegeneratePair(_) => 6,
        Error::NonUnit | Error::UnsupportedQuotient(_) => 1,
    }
}

fn run(cfg: &RunConfig) -> Result<()> {
    let bytes = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(|| execute(cfg))?,
        None => execute(cfg)?,
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("gmf: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("gmf").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("100000"), Ok(100_000));
        assert_eq!(parse_count("1e5"), Ok(100_000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn defaults() {
        let cfg = parse(&["satotate", "--level", "11"]);
        match cfg.command {
            Command::Satotate { xmax, bins, tol, .. } => assert_eq!((xmax, bins, tol), (100_000, 20, 0.05)),
            _ => unreachable!(),
        }
        assert_eq!(cfg.format, Format::Json);
        let cfg = parse(&["integrality", "--level", "11"]);
        assert!(matches!(cfg.command, Command::Integrality { limit: 10_000, .. }));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            parse(&["satotate", "--level", "11", "--bins", "0"]).validate(),
            Err(Error::Config(_))
        ));
        assert!(parse(&["signs", "--level", "11", "--xmax", "1"]).validate().is_err());
        assert!(parse(&["exponents", "--level", "11", "--limit", "0"])
            .validate()
            .is_err());
        assert!(parse(&["firstsign", "--level", "11", "--threads", "0"])
            .validate()
            .is_err());
        assert!(parse(&["pair", "--levels", "11"]).validate().is_err());
        assert!(parse(&["pair", "--levels", "11,14,15"]).validate().is_err());
        assert!(parse(&["pair", "--levels", "11,14"]).validate().is_ok());
        assert!(RunConfig::try_parse_from(["gmf", "exponents", "--level", "11", "--cm"]).is_err());
    }

    #[test]
    fn exponents_csv() {
        let out = execute(&parse(&[
            "exponents",
            "--level",
            "11",
            "--limit",
            "4",
            "--format",
            "csv",
        ]))
        .unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "n,num,den\n1,-1,1\n2,3,2\n3,2,3\n4,-1,1\n"
        );
    }

    #[test]
    fn error_codes() {
        let code = |args: &[&str]| main_with_args(std::iter::once("gmf").chain(args.iter().copied()));
        assert_eq!(code(&["exponents", "--level", "9999", "--limit", "4"]), 3);
        assert_eq!(code(&["satotate", "--level", "36", "--xmax", "100"]), 6);
        assert_eq!(code(&["cmscan", "--level", "11", "--xmax", "100"]), 6);
        assert_eq!(code(&["pair", "--levels", "11,11", "--xmax", "100"]), 6);
        assert_eq!(code(&["nonsense"]), 2);
        assert_eq!(code(&["satotate", "--level", "11", "--bins", "0"]), 2);
    }
}
