//! The `bruhat` command line: enumeration, constructions, verification and
//! poset metrics behind one binary.
//!
//! Exit codes: 0 success, 1 refuted antichain or failed self-check,
//! 2 invalid input (infeasible margins, parity, parse errors, mixed classes,
//! empty input), 3 budget or resource limit, 4 product hypothesis violated.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::class_enum::{self, count_class, enumeration_budget, feasible, ClassCount};
use crate::constructions::{
    even_antichain, g_bound, half_regular_product, odd_antichain, product_antichain, remark_bound,
    remark_improved_product, ConstructedAntichain, Predictions, ProductAntichain, ProductOptions,
    Provenance, DEFAULT_MATERIALIZE_CAP,
};
use crate::error::{Error, Result};
use crate::io::{parse_matrices, MatrixJson, TextWriter};
use crate::matrix::{BinaryMatrix, Margins};
use crate::order::{verify_antichain, verify_sampled_by_index, AntichainCertificate, VerifyMode};
use crate::poset_metrics::{
    class_histogram, class_summary, exact_width, nu_problem_search, reproduce_table1,
    width_bounds_report, Family, HistogramOptions, HEIGHT_CAP, HEIGHT_CAP_LONG,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        Error::BudgetExceeded { .. } | Error::ResourceLimit { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "bruhat",
    version,
    about = "Antichains in the Bruhat order of (0,1)-matrix classes"
)]
struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration shards (default: available parallelism)
    #[arg(long, global = true)]
    shards: Option<usize>,
    /// Seed for sampled verification
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count the members of a class A(R,S)
    Enumerate(EnumerateArgs),
    /// Build an antichain
    Construct(ConstructArgs),
    /// Check that a file of matrices is an antichain
    Verify(VerifyArgs),
    /// Histograms, exact width/height and width bounds
    Metrics(MetricsArgs),
}

#[derive(Args, Debug, Clone)]
struct MarginArgs {
    /// Row sums, comma separated
    #[arg(
        long,
        value_delimiter = ',',
        requires = "col_sums",
        conflicts_with = "regular"
    )]
    row_sums: Option<Vec<u32>>,
    /// Column sums, comma separated
    #[arg(long, value_delimiter = ',', requires = "row_sums")]
    col_sums: Option<Vec<u32>>,
    /// Regular class A(n,k)
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    regular: Option<Vec<u32>>,
}

impl MarginArgs {
    fn margins(&self) -> Result<Margins> {
        let margins = match (&self.row_sums, &self.col_sums, &self.regular) {
            (Some(r), Some(s), None) => Margins::new(r.clone(), s.clone()),
            (None, None, Some(nk)) => {
                let (n, k) = (nk[0] as usize, nk[1]);
                if n == 0 || k as usize > n {
                    return Err(Error::InvalidParameter(format!(
                        "A({n},{k}) needs 1 <= k <= n"
                    )));
                }
                Margins::regular(n, k)
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "give either --row-sums and --col-sums, or --regular N K".into(),
                ))
            }
        };
        let (m, n) = margins.dims();
        if m == 0 || n == 0 {
            return Err(Error::EmptyDimensions { rows: m, cols: n });
        }
        Ok(margins)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    margins: MarginArgs,
    /// Print only the class size
    #[arg(long)]
    count_only: bool,
    /// Output format for members
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json
    #[arg(long)]
    json: bool,
    /// Write members here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    /// Write members (text format) here; predictions go to FILE.predictions.json
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit members one at a time without materializing the antichain
    #[arg(long, global = true)]
    stream: bool,
    /// Check P random member pairs and report the certificate
    #[arg(long, global = true, value_name = "P")]
    sample: Option<u64>,
    /// Print predictions only; do not emit members
    #[arg(long, global = true)]
    predict_only: bool,
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    /// Antichain in A(n,2) for even n
    Even {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Antichain in A(n,2) for odd n
    Odd {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Block product antichain in A(2k,k)
    HalfRegular {
        #[arg(short = 'k')]
        k: usize,
    },
    /// Larger block product antichain in A(2k,k), k a multiple of 4
    Remark {
        #[arg(short = 'k')]
        k: usize,
    },
    /// Block product of three antichain files
    Product {
        /// Pattern antichain
        #[arg(long)]
        d1: PathBuf,
        /// Blocks placed at pattern 1-cells
        #[arg(long)]
        d2: PathBuf,
        /// Blocks placed at pattern 0-cells
        #[arg(long)]
        d3: PathBuf,
        /// Accept equal block totals when D1 has a single member
        #[arg(long)]
        allow_degenerate_case1: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Matrices in text or JSON format
    file: PathBuf,
    /// Check this many random pairs instead of all pairs
    #[arg(long, value_name = "N")]
    sampled: Option<u64>,
    /// Write the certificate here as well as to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MetricsArgs {
    /// Recompute a published table
    #[arg(long, value_enum)]
    reproduce: Option<Reproduce>,
    #[command(subcommand)]
    kind: Option<MetricsKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Reproduce {
    Table1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    An2,
    A2kk,
}

#[derive(Subcommand, Debug)]
enum MetricsKind {
    /// Inversion histogram (CSV) of A(n,2), or of any class
    Histogram {
        #[arg(short = 'n', conflicts_with_all = ["row_sums", "regular"])]
        n: Option<usize>,
        #[command(flatten)]
        margins: MarginArgs,
        /// Lift the enumeration budget
        #[arg(long)]
        long_running: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Width of a class
    Width {
        #[command(flatten)]
        margins: MarginArgs,
        /// Compute the exact width by bipartite matching
        #[arg(long)]
        exact: bool,
        /// Print the largest antichain found
        #[arg(long)]
        witness: bool,
    },
    /// Exact height of a class
    Height {
        #[command(flatten)]
        margins: MarginArgs,
        /// Raise the member cap for the chain computation
        #[arg(long)]
        long_running: bool,
    },
    /// Closed-form width lower bounds
    Bounds {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short = 'n', required_if_eq("family", "an2"))]
        n: Option<usize>,
        #[arg(short = 'k', required_if_eq("family", "a2kk"))]
        k: Option<usize>,
        /// Include the largest inversion level (A(n,2) only)
        #[arg(long)]
        with_histogram: bool,
    },
    /// Search a class for comparable pairs with equal inversion counts
    ProblemSearch {
        #[command(flatten)]
        margins: MarginArgs,
    },
}

/// Written next to every `--out` artifact as `<out>.manifest.json`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub shards: usize,
    pub threads: usize,
    pub wall_time_ms: u128,
    pub version: String,
    pub outputs: Vec<OutputDigest>,
}

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

struct Ctx<'a> {
    argv: Vec<String>,
    shards: usize,
    threads: usize,
    seed: u64,
    started: Instant,
    stdout: &'a mut (dyn Write + Send),
    stderr: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn write_manifest(&self, primary: &Path, artifacts: &[PathBuf], seed_used: bool) -> Result<()> {
        let outputs = artifacts
            .iter()
            .map(|p| {
                Ok(OutputDigest {
                    path: p.display().to_string(),
                    sha256: sha256_file(p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let manifest = RunManifest {
            command: self.argv.clone(),
            seed: seed_used.then_some(self.seed),
            shards: self.shards,
            threads: self.threads,
            wall_time_ms: self.started.elapsed().as_millis(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs,
        };
        let path = suffixed(primary, ".manifest.json");
        std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
        Ok(())
    }
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s: OsString = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn available() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let threads = cli.threads.unwrap_or_else(available).max(1);
    let mut ctx = Ctx {
        argv: args
            .iter()
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        shards: cli.shards.unwrap_or(threads).max(1),
        threads,
        seed: cli.seed,
        started: Instant::now(),
        stdout,
        stderr,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: cannot start thread pool: {e}");
            return EXIT_INPUT;
        }
    };
    let result = pool.install(|| match cli.command {
        Command::Enumerate(args) => cmd_enumerate(&mut ctx, args),
        Command::Construct(args) => cmd_construct(&mut ctx, args),
        Command::Verify(args) => cmd_verify(&mut ctx, args),
        Command::Metrics(args) => cmd_metrics(&mut ctx, args),
    });
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            exit_code(&e)
        }
    };
    let _ = ctx.stdout.flush();
    code
}

fn open_out(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

#[derive(Serialize)]
struct CountReport<'a> {
    class: &'a Margins,
    count: ClassCount,
}

fn cmd_enumerate(ctx: &mut Ctx, args: EnumerateArgs) -> Result<i32> {
    let margins = args.margins.margins()?;
    if !feasible(&margins) {
        return Err(Error::Infeasible(margins.to_string()));
    }
    if args.count_only {
        let count = count_class(&margins)?;
        let line = serde_json::to_string(&CountReport {
            class: &margins,
            count,
        })?;
        writeln!(ctx.stdout, "{line}")?;
        if let Some(path) = &args.out {
            std::fs::write(path, format!("{line}\n"))?;
            ctx.write_manifest(path, std::slice::from_ref(path), false)?;
        }
        return Ok(EXIT_OK);
    }
    class_enum::check_budget(&margins, enumeration_budget())?;
    let json = args.json || args.format == Format::Json;
    let count = {
        let mut sink: Box<dyn Write + '_> = match &args.out {
            Some(path) => Box::new(open_out(path)?),
            None => Box::new(&mut *ctx.stdout),
        };
        let mut io_err: Option<std::io::Error> = None;
        let mut first = true;
        let count = class_enum::enumerate_class(&margins, |a| {
            if io_err.is_some() {
                return;
            }
            let res = if json {
                serde_json::to_string(&MatrixJson::from(a))
                    .map_err(std::io::Error::from)
                    .and_then(|s| writeln!(sink, "{s}"))
            } else {
                let sep = if first { Ok(()) } else { writeln!(sink) };
                sep.and_then(|_| crate::io::write_matrix(&mut sink, a))
            };
            first = false;
            if let Err(e) = res {
                io_err = Some(e);
            }
        })?;
        if let Some(e) = io_err {
            return Err(e.into());
        }
        sink.flush()?;
        count
    };
    let line = serde_json::to_string(&CountReport {
        class: &margins,
        count,
    })?;
    match &args.out {
        Some(path) => {
            writeln!(ctx.stdout, "{line}")?;
            ctx.write_manifest(path, std::slice::from_ref(path), false)?;
        }
        None => writeln!(ctx.stderr, "{line}")?,
    }
    Ok(EXIT_OK)
}

/// What a construction run reports next to the members.
#[derive(Serialize)]
struct ConstructReport {
    #[serde(flatten)]
    predictions: Predictions,
    emitted: Option<String>,
    audit: Vec<String>,
    certificate: Option<AntichainCertificate>,
}

enum Built {
    Small(ConstructedAntichain),
    Product {
        product: ProductAntichain,
        provenance: Provenance,
        predicted: BigUint,
    },
}

fn read_antichain(path: &Path) -> Result<Vec<BinaryMatrix>> {
    let members = parse_matrices(&std::fs::read_to_string(path)?)?;
    if members.is_empty() {
        return Err(Error::EmptyInput(format!(
            "{} contains no matrices",
            path.display()
        )));
    }
    Ok(members)
}

fn build(kind: &ConstructKind) -> Result<Built> {
    Ok(match kind {
        ConstructKind::Even { n } => Built::Small(even_antichain(*n)?),
        ConstructKind::Odd { n } => Built::Small(odd_antichain(*n)?),
        ConstructKind::HalfRegular { k } => Built::Product {
            product: half_regular_product(*k)?,
            provenance: Provenance::HalfRegular,
            predicted: g_bound(*k as u64)?,
        },
        ConstructKind::Remark { k } => Built::Product {
            product: remark_improved_product(*k)?,
            provenance: Provenance::RemarkImproved,
            predicted: remark_bound(*k as u64),
        },
        ConstructKind::Product {
            d1,
            d2,
            d3,
            allow_degenerate_case1,
        } => {
            let (d1, d2, d3) = (
                read_antichain(d1)?,
                read_antichain(d2)?,
                read_antichain(d3)?,
            );
            for (name, set) in [("--d1", &d1), ("--d2", &d2), ("--d3", &d3)] {
                let cert = verify_antichain(set, VerifyMode::Exhaustive)?;
                if let Some([i, j]) = cert.witness {
                    return Err(Error::InvalidParameter(format!(
                        "{name} is not an antichain: members {i} and {j} are comparable"
                    )));
                }
            }
            let product = product_antichain(
                &d1,
                &d2,
                &d3,
                ProductOptions {
                    allow_degenerate_case1: *allow_degenerate_case1,
                },
            )?;
            let predicted = product.predicted_size();
            Built::Product {
                product,
                provenance: Provenance::Product,
                predicted,
            }
        }
    })
}

fn cmd_construct(ctx: &mut Ctx, args: ConstructArgs) -> Result<i32> {
    let built = build(&args.kind)?;
    // Materialize unless streaming was asked for, then every check runs on
    // the real member list.
    let built = match built {
        Built::Product {
            product,
            provenance,
            predicted,
        } if !args.stream => Built::Small(product.into_constructed(
            provenance,
            predicted,
            DEFAULT_MATERIALIZE_CAP,
        )?),
        other => other,
    };

    let seed = ctx.seed;
    let (predictions, emitted, audit, certificate) = {
        let mut sink: Option<Box<dyn Write + '_>> = if args.predict_only {
            None
        } else {
            Some(match &args.out {
                Some(path) => Box::new(open_out(path)?),
                None => Box::new(&mut *ctx.stdout),
            })
        };

        let result = match &built {
            Built::Small(c) => {
                if let Some(w) = sink.as_mut() {
                    let mut tw = TextWriter::new(&mut **w);
                    for a in &c.members {
                        tw.write(a)?;
                    }
                }
                let certificate = match args.sample {
                    Some(pairs) => Some(verify_antichain(
                        &c.members,
                        VerifyMode::Sampled { pairs, seed },
                    )?),
                    None => None,
                };
                (
                    c.predictions(),
                    Some(c.len().to_string()),
                    c.audit(),
                    certificate,
                )
            }
            Built::Product {
                product,
                provenance,
                predicted,
            } => {
                let mut audit = Vec::new();
                if product.predicted_size() != *predicted {
                    audit.push(format!(
                        "predicted size {predicted} but the product has {} members",
                        product.predicted_size()
                    ));
                }
                let mut emitted = None;
                if let Some(w) = sink.as_mut() {
                    let mut tw = TextWriter::new(&mut **w);
                    for a in product.iter() {
                        if a.margins() != *product.margins() {
                            audit.push(format!(
                                "member {} has margins {}",
                                tw.count(),
                                a.margins()
                            ));
                            break;
                        }
                        tw.write(&a)?;
                    }
                    emitted = Some(tw.count().to_string());
                }
                let certificate = match args.sample {
                    Some(pairs) => {
                        let len = product.len_u128().ok_or(Error::ResourceLimit {
                            what: "sampled product size",
                            limit: u128::MAX,
                        })?;
                        Some(verify_sampled_by_index(len, pairs, seed, |i| {
                            product.member_u128(i)
                        })?)
                    }
                    None => None,
                };
                let predictions = Predictions {
                    provenance: *provenance,
                    size: predicted.to_string(),
                    nu: None,
                    class: product.margins().clone(),
                };
                (predictions, emitted, audit, certificate)
            }
        };
        if let Some(mut w) = sink {
            w.flush()?;
        }
        result
    };

    let refuted = certificate
        .as_ref()
        .is_some_and(AntichainCertificate::is_refuted);
    let report = ConstructReport {
        predictions,
        emitted,
        audit,
        certificate,
    };
    let line = serde_json::to_string(&report)?;
    match &args.out {
        Some(path) => {
            writeln!(ctx.stdout, "{line}")?;
            let pred_path = suffixed(path, ".predictions.json");
            std::fs::write(&pred_path, format!("{line}\n"))?;
            let mut artifacts = vec![pred_path];
            if !args.predict_only {
                artifacts.insert(0, path.clone());
            }
            ctx.write_manifest(path, &artifacts, args.sample.is_some())?;
        }
        None => writeln!(ctx.stderr, "{line}")?,
    }
    for problem in &report.audit {
        writeln!(ctx.stderr, "audit: {problem}")?;
    }
    Ok(if report.audit.is_empty() && !refuted {
        EXIT_OK
    } else {
        EXIT_REFUTED
    })
}

fn cmd_verify(ctx: &mut Ctx, args: VerifyArgs) -> Result<i32> {
    let members = read_antichain(&args.file)?;
    let mode = match args.sampled {
        Some(pairs) => VerifyMode::Sampled {
            pairs,
            seed: ctx.seed,
        },
        None => VerifyMode::Exhaustive,
    };
    let cert = verify_antichain(&members, mode)?;
    let line = cert.to_json();
    writeln!(ctx.stdout, "{line}")?;
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{line}\n"))?;
        ctx.write_manifest(path, std::slice::from_ref(path), args.sampled.is_some())?;
    }
    Ok(if cert.is_refuted() {
        EXIT_REFUTED
    } else {
        EXIT_OK
    })
}

fn cmd_metrics(ctx: &mut Ctx, args: MetricsArgs) -> Result<i32> {
    let mut code = EXIT_OK;
    if let Some(Reproduce::Table1) = args.reproduce {
        code = reproduce(ctx)?;
    }
    match args.kind {
        None if args.reproduce.is_none() => Err(Error::InvalidParameter(
            "metrics needs a subcommand or --reproduce table1".into(),
        )),
        None => Ok(code),
        Some(kind) => {
            let sub = metrics_kind(ctx, kind)?;
            Ok(code.max(sub))
        }
    }
}

/// Largest inversion levels for n = 3..7. The n = 6 row is published with two different
/// values; a mismatch there is accepted when the enumeration agrees with
/// the other one.
fn reproduce(ctx: &mut Ctx) -> Result<i32> {
    let options = HistogramOptions {
        shards: ctx.shards,
        budget: enumeration_budget(),
    };
    let report = reproduce_table1(&[3, 4, 5, 6, 7], options)?;
    writeln!(ctx.stdout, "{}", serde_json::to_string_pretty(&report)?)?;
    let mut ok = true;
    for row in &report.rows {
        let note = if row.matches {
            "ok".to_string()
        } else if row.n == 6 && report.n6.as_ref().is_some_and(|r| r.matches != "neither") {
            let r = report.n6.as_ref().unwrap();
            format!(
                "differs from the table's {}; the stated level |nu^-1(27)| = {} agrees with the computed {}",
                r.table_value, r.text_value, r.computed_max
            )
        } else {
            ok = false;
            "MISMATCH".to_string()
        };
        writeln!(
            ctx.stderr,
            "n={}: computed {} at nu={:?}, published {}: {note}",
            row.n, row.computed_max, row.argmax, row.published
        )?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_REFUTED })
}

fn metrics_kind(ctx: &mut Ctx, kind: MetricsKind) -> Result<i32> {
    match kind {
        MetricsKind::Histogram {
            n,
            margins,
            long_running,
            out,
        } => {
            let class = match n {
                Some(n) if n >= 2 => Margins::regular(n, 2),
                Some(n) => {
                    return Err(Error::InvalidParameter(format!(
                        "A(n,2) needs n >= 2, got {n}"
                    )))
                }
                None => margins.margins()?,
            };
            if !feasible(&class) {
                return Err(Error::Infeasible(class.to_string()));
            }
            let options = HistogramOptions {
                shards: ctx.shards,
                budget: if long_running {
                    u128::MAX
                } else {
                    enumeration_budget()
                },
            };
            let report = class_histogram(&class, options)?;
            let csv = report.to_csv();
            match &out {
                Some(path) => {
                    std::fs::write(path, &csv)?;
                    ctx.write_manifest(path, std::slice::from_ref(path), false)?;
                }
                None => ctx.stdout.write_all(csv.as_bytes())?,
            }
            writeln!(
                ctx.stderr,
                "{}: {} members, largest level {} at nu={:?}",
                report.class,
                report.total,
                report.max_bucket.1,
                report.argmax()
            )?;
            Ok(EXIT_OK)
        }
        MetricsKind::Width {
            margins,
            exact,
            witness,
        } => {
            let class = margins.margins()?;
            if !feasible(&class) {
                return Err(Error::Infeasible(class.to_string()));
            }
            let summary = class_summary(&class, exact, false, HEIGHT_CAP)?;
            summary_out(ctx, &summary)?;
            if witness && exact {
                let members = class_enum::class_members(&class)?;
                let result = exact_width(&members, crate::poset_metrics::WIDTH_CAP)?;
                let chosen: Vec<BinaryMatrix> = result
                    .antichain
                    .iter()
                    .map(|&i| members[i].clone())
                    .collect();
                let mut tw = TextWriter::new(&mut *ctx.stdout);
                for a in &chosen {
                    tw.write(a)?;
                }
            }
            Ok(consistency(ctx, &summary)?)
        }
        MetricsKind::Height {
            margins,
            long_running,
        } => {
            let class = margins.margins()?;
            if !feasible(&class) {
                return Err(Error::Infeasible(class.to_string()));
            }
            let cap = if long_running {
                HEIGHT_CAP_LONG
            } else {
                HEIGHT_CAP
            };
            let summary = class_summary(&class, false, true, cap)?;
            summary_out(ctx, &summary)?;
            if let (Some(h), Ok(expected)) = (summary.height, summary.height_formula.parse::<u64>())
            {
                if h != expected {
                    writeln!(
                        ctx.stderr,
                        "height {h} differs from the formula value {expected}"
                    )?;
                    return Ok(EXIT_REFUTED);
                }
            }
            Ok(consistency(ctx, &summary)?)
        }
        MetricsKind::Bounds {
            family,
            n,
            k,
            with_histogram,
        } => {
            let fam = match family {
                FamilyArg::An2 => Family::An2(n.expect("required by clap")),
                FamilyArg::A2kk => Family::A2kk(k.expect("required by clap")),
            };
            let hist = match (with_histogram, fam) {
                (false, _) => None,
                (true, Family::An2(n)) if n >= 2 => Some(class_histogram(
                    &Margins::regular(n, 2),
                    HistogramOptions {
                        shards: ctx.shards,
                        budget: enumeration_budget(),
                    },
                )?),
                (true, Family::A2kk(k)) if k >= 1 => Some(class_histogram(
                    &Margins::regular(2 * k, k as u32),
                    HistogramOptions {
                        shards: ctx.shards,
                        budget: enumeration_budget(),
                    },
                )?),
                (true, _) => None,
            };
            let summary = width_bounds_report(fam, hist.as_ref())?;
            summary_out(ctx, &summary)?;
            Ok(EXIT_OK)
        }
        MetricsKind::ProblemSearch { margins } => {
            let class = margins.margins()?;
            if !feasible(&class) {
                return Err(Error::Infeasible(class.to_string()));
            }
            let found = nu_problem_search(&class, enumeration_budget())?;
            let witness = found.map(|w| {
                json!({
                    "lower": MatrixJson::from(&w.lower),
                    "upper": MatrixJson::from(&w.upper),
                    "nu": w.nu,
                })
            });
            let out = json!({ "class": class, "witness": witness });
            writeln!(ctx.stdout, "{}", serde_json::to_string(&out)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn summary_out(ctx: &mut Ctx, summary: &crate::poset_metrics::PosetSummary) -> Result<()> {
    writeln!(ctx.stdout, "{}", serde_json::to_string(summary)?)?;
    Ok(())
}

fn consistency(ctx: &mut Ctx, summary: &crate::poset_metrics::PosetSummary) -> Result<i32> {
    let problems = summary.consistency_problems();
    for p in &problems {
        writeln!(ctx.stderr, "inconsistent: {p}")?;
    }
    Ok(if problems.is_empty() {
        EXIT_OK
    } else {
        EXIT_REFUTED
    })
}
