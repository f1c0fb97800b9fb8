//! Command-line front end for the latwork library: enumeration into
//! listings, structural classification, composition and decomposition
//! of listings, and the bounds pipeline from count tables through root
//! brackets to verified growth certificates.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;

use latwork::certify::{certify, verify_certificate};
use latwork::compose::{vertical_2sums_all, vertical_decompose, vertical_sum, ComposeError};
use latwork::enumerate::{classify_listing, enumerate, Family, CAP_ENV_VAR};
use latwork::io::{
    ingest_external, parse_certificate, parse_listing, render_certificate, render_listing,
};
use latwork::ratio::{format_decimal_floor, parse_rational};
use latwork::recurrence::{
    build_recurrence_v2sum, build_recurrence_vsum, eval_sequence_exact, Recurrence, Shape,
};
use latwork::root::dominant_root;
use latwork::suite::{run_reference_suite, SuiteConfig};
use latwork::table::{CountTable, TableKind};
use latwork::Lattice;

/// Overrides the default cap on certificate window searches.
const SEARCH_CAP_ENV_VAR: &str = "LATWORK_SEARCH_CAP";
const DEFAULT_SEARCH_CAP: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "latwork",
    version,
    about = "Finite-lattice workbench: enumeration, composition, and certified counting bounds",
    after_help = format!(
        "Environment:\n  {CAP_ENV_VAR}     overrides the per-family enumeration size caps\n  \
         {SEARCH_CAP_ENV_VAR}   overrides the certificate window search cap (default {DEFAULT_SEARCH_CAP})"
    )
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write every n-element lattice of a family as a listing
    Gen {
        /// Number of elements
        n: usize,
        #[arg(long, default_value = "all", value_parser = Family::from_str)]
        family: Family,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print structural flags for each record of a listing, then aggregates
    Classify {
        /// Listing file; stdin when omitted
        file: Option<PathBuf>,
        /// Print only the number of gluing pieces
        #[arg(long)]
        pieces: bool,
    },
    /// Vertical sums of every pair from two listings, lower below upper
    Sum {
        lower: PathBuf,
        upper: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertical 2-sums of every compatible pair from two listings,
    /// under every matching that gives a distinct result
    Sum2 {
        lower: PathBuf,
        upper: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split each record into its vertically indecomposable parts
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the growth recurrence of a count table and evaluate it
    Recur {
        /// TSV count table: one `n<TAB>count` row per size, from n = 1
        #[arg(long)]
        table: PathBuf,
        /// vsum for a vi table, v2sum for a piece table
        #[arg(long, default_value = "vsum", value_parser = Shape::from_str)]
        shape: Shape,
        /// Family label recorded on the ingested table
        #[arg(long, default_value = "all", value_parser = Family::from_str)]
        family: Family,
        /// Build from the first N rows only; defaults to the whole table
        #[arg(long = "N")]
        n: Option<usize>,
        /// Print f(1)..f(K) as TSV rows
        #[arg(long)]
        eval: Option<usize>,
    },
    /// Bracket the dominant root of a table's growth recurrence
    Root {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value = "vsum", value_parser = Shape::from_str)]
        shape: Shape,
        #[arg(long, default_value = "all", value_parser = Family::from_str)]
        family: Family,
        #[arg(long = "N")]
        n: Option<usize>,
        /// Bracket width to bisect down to, e.g. 1e-6
        #[arg(long, default_value = "1e-6")]
        tol: String,
    },
    /// Certify an exponential lower bound and write the certificate
    Certify {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_parser = Shape::from_str)]
        shape: Shape,
        /// Growth rate to certify, e.g. 2.2726 or 11363/5000
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "all", value_parser = Family::from_str)]
        family: Family,
        #[arg(long = "N")]
        n: Option<usize>,
        /// Pin the window start instead of searching for the smallest
        #[arg(long)]
        n0: Option<usize>,
        /// Cap on the window search
        #[arg(long)]
        search_cap: Option<usize>,
        /// Certificate file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file from scratch
    Verify { file: PathBuf },
    /// Recompute every bundled reference value and print a report
    Repro {
        /// Run only the checks whose id contains this substring
        #[arg(long)]
        only: Option<String>,
        /// Largest size for the enumeration checks
        #[arg(long, default_value_t = 12)]
        enum_max: usize,
        #[arg(long)]
        search_cap: Option<usize>,
    },
}

/// Failure that ends the run with a usage or I/O exit, carrying a
/// category tag for the machine-readable record on stderr.
struct CliError {
    kind: &'static str,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            kind: "usage",
            msg: msg.into(),
        }
    }

    fn record(&self) -> String {
        serde_json::json!({ "kind": self.kind, "error": self.msg }).to_string()
    }
}

macro_rules! from_error {
    ($ty:ty, $kind:literal) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError {
                    kind: $kind,
                    msg: e.to_string(),
                }
            }
        }
    };
}

from_error!(latwork::io::ListingError, "parse");
from_error!(latwork::io::TableFileError, "parse");
from_error!(latwork::io::CertificateFileError, "parse");
from_error!(latwork::dataset::DatasetError, "data");
from_error!(latwork::enumerate::EnumError, "usage");
from_error!(latwork::compose::ComposeError, "compose");
from_error!(latwork::recurrence::RecurrenceError, "usage");
from_error!(latwork::certify::CertifyError, "certify");

/// How a completed run ends: clean, or with a failed check whose
/// explanation goes into the exit-1 record.
enum Outcome {
    Clean,
    CheckFailed(String),
}

/// Prints to stdout. A closed pipe downstream ends the run quietly
/// instead of panicking; any other write failure is an I/O exit.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        let err = CliError {
            kind: "io",
            msg: format!("stdout: {e}"),
        };
        eprintln!("{}", err.record());
        std::process::exit(2);
    }
}

macro_rules! emitln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed(msg)) => {
            eprintln!(
                "{}",
                serde_json::json!({ "kind": "check-failed", "error": msg })
            );
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<Outcome, CliError> {
    match cmd {
        Cmd::Gen { n, family, out } => {
            let lattices = enumerate(n, family)?;
            write_out(&out, &render_listing(&lattices))?;
            Ok(Outcome::Clean)
        }
        Cmd::Classify { file, pieces } => {
            let lattices = parse_listing(&read_source(&file)?)?;
            classify(&lattices, pieces);
            Ok(Outcome::Clean)
        }
        Cmd::Sum { lower, upper, out } => {
            let lower = parse_listing(&read_text(&lower)?)?;
            let upper = parse_listing(&read_text(&upper)?)?;
            let mut sums = Vec::with_capacity(lower.len() * upper.len());
            for l in &lower {
                for u in &upper {
                    sums.push(vertical_sum(l, u));
                }
            }
            write_out(&out, &render_listing(&sums))?;
            Ok(Outcome::Clean)
        }
        Cmd::Sum2 { lower, upper, out } => {
            let lower = parse_listing(&read_text(&lower)?)?;
            let upper = parse_listing(&read_text(&upper)?)?;
            let mut sums = Vec::new();
            let mut skipped = 0usize;
            for l in &lower {
                for u in &upper {
                    match vertical_2sums_all(l, u) {
                        Ok(v) => sums.extend(v),
                        Err(ComposeError::PreconditionViolated(_)) => skipped += 1,
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            if skipped > 0 {
                eprintln!(
                    "note: skipped {skipped} pair(s); the 2-sum needs \
                     2 coatoms below and 2 atoms above"
                );
            }
            write_out(&out, &render_listing(&sums))?;
            Ok(Outcome::Clean)
        }
        Cmd::Decompose { file, out } => {
            let lattices = parse_listing(&read_text(&file)?)?;
            let mut parts = Vec::new();
            for l in &lattices {
                parts.extend(vertical_decompose(l)?);
            }
            write_out(&out, &render_listing(&parts))?;
            Ok(Outcome::Clean)
        }
        Cmd::Recur {
            table,
            shape,
            family,
            n,
            eval,
        } => {
            let rec = load_recurrence(&table, shape, family, n)?;
            emitln!(
                "shape {}, order {}, horizon {}",
                rec.shape,
                rec.order(),
                rec.horizon()
            );
            if let Some(k) = eval {
                for (i, v) in eval_sequence_exact(&rec, k)?.iter().enumerate() {
                    emitln!("{}\t{v}", i + 1);
                }
            }
            Ok(Outcome::Clean)
        }
        Cmd::Root {
            table,
            shape,
            family,
            n,
            tol,
        } => {
            let rec = load_recurrence(&table, shape, family, n)?;
            let tol = parse_rational(&tol)
                .map_err(|e| CliError::usage(format!("bad --tol: {e}")))?;
            if tol <= BigRational::zero() {
                return Err(CliError::usage("--tol must be positive"));
            }
            if rec.coeffs.iter().all(|a| a.is_zero()) {
                return Err(CliError::usage(
                    "the table has no positive counts past the unit row; \
                     the growth recurrence is degenerate",
                ));
            }
            let bracket = dominant_root(&rec, &tol);
            let places = decimal_places_for(&tol);
            let (lo, hi) = bracket.decimal_interval(places);
            emitln!("dominant root in [{lo}, {hi}]");
            emitln!(
                "exact bracket [{}, {}], aux-polynomial signs ({}, {})",
                bracket.lo, bracket.hi, bracket.sign_lo, bracket.sign_hi
            );
            Ok(Outcome::Clean)
        }
        Cmd::Certify {
            table,
            shape,
            c,
            family,
            n,
            n0,
            search_cap,
            out,
        } => {
            let rec = load_recurrence(&table, shape, family, n)?;
            let c = parse_rational(&c).map_err(|e| CliError::usage(format!("bad --c: {e}")))?;
            let cap = effective_search_cap(search_cap);
            let cert = certify(&rec, &c, cap, n0)?;
            if out.is_some() {
                emitln!(
                    "certified f(n) >= {}^n for all n >= {}",
                    format_decimal_floor(&c, 4),
                    cert.window_start
                );
            }
            write_out(&out, &render_certificate(&cert))?;
            Ok(Outcome::Clean)
        }
        Cmd::Verify { file } => {
            let cert = parse_certificate(&read_text(&file)?)?;
            if verify_certificate(&cert)? {
                emitln!(
                    "pass: f(n) >= {}^n for all n >= {}, window of {} values checked exactly",
                    format_decimal_floor(&cert.c, 4),
                    cert.window_start,
                    cert.recurrence.order()
                );
                Ok(Outcome::Clean)
            } else {
                emitln!("fail: certificate does not prove its claim");
                Ok(Outcome::CheckFailed(format!(
                    "certificate {} failed verification",
                    file.display()
                )))
            }
        }
        Cmd::Repro {
            only,
            enum_max,
            search_cap,
        } => {
            let cfg = SuiteConfig {
                only,
                enum_max,
                search_cap: effective_search_cap(search_cap),
            };
            let report = run_reference_suite(&cfg)?;
            emit(&report.render());
            if report.all_passed() {
                Ok(Outcome::Clean)
            } else {
                let (_, failed, _) = report.counts();
                Ok(Outcome::CheckFailed(format!("{failed} checks failed")))
            }
        }
    }
}

fn decimal_places_for(tol: &BigRational) -> usize {
    let mut places = 1;
    let mut step = BigRational::new(1.into(), 10.into());
    while &step > tol && places < 18 {
        places += 1;
        step /= BigRational::from_integer(10.into());
    }
    places
}

fn effective_search_cap(flag: Option<usize>) -> usize {
    if let Some(v) = flag {
        return v;
    }
    std::env::var(SEARCH_CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(DEFAULT_SEARCH_CAP)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError {
        kind: "io",
        msg: format!("{}: {e}", path.display()),
    })
}

/// Reads the named file, or stdin when no file is given.
fn read_source(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => read_text(p),
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| CliError {
            kind: "io",
            msg: format!("stdin: {e}"),
        }),
    }
}

/// Prints to stdout, or writes the file through a temporary sibling so
/// a failed run never leaves a partial output behind.
fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    let Some(path) = out else {
        emit(text);
        return Ok(());
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    let finish = fs::write(&tmp, text).and_then(|()| fs::rename(&tmp, path));
    if let Err(e) = finish {
        let _ = fs::remove_file(&tmp);
        return Err(CliError {
            kind: "io",
            msg: format!("{}: {e}", path.display()),
        });
    }
    Ok(())
}

fn load_recurrence(
    table: &Path,
    shape: Shape,
    family: Family,
    n: Option<usize>,
) -> Result<Recurrence, CliError> {
    let kind = match shape {
        Shape::VSum => TableKind::Vi,
        Shape::V2Sum => TableKind::Piece,
    };
    let table: CountTable = ingest_external(&read_text(table)?, family, kind)?;
    let n = n.unwrap_or(table.max_n());
    let min = match shape {
        Shape::VSum => 2,
        Shape::V2Sum => 6,
    };
    if n < min || n > table.max_n() {
        return Err(CliError::usage(format!(
            "--N must lie in {min}..={} for this table and shape, got {n}",
            table.max_n()
        )));
    }
    Ok(match shape {
        Shape::VSum => build_recurrence_vsum(&table, n),
        Shape::V2Sum => build_recurrence_v2sum(&table, n),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "y"
    } else {
        "n"
    }
}

fn join_or_dash(xs: &[usize]) -> String {
    if xs.is_empty() {
        "-".to_string()
    } else {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn classify(lattices: &[Lattice], pieces_only: bool) {
    let c = classify_listing(lattices);
    if pieces_only {
        emitln!("{}", c.piece);
        return;
    }
    emitln!("# idx\tn\tgraded\tmodular\tsemimod\tdistrib\tvi\tpiece\theight\tnecks");
    for (i, rep) in c.reports.iter().enumerate() {
        let height = rep
            .rank
            .as_ref()
            .map(|r| r.height().to_string())
            .unwrap_or_else(|_| "-".to_string());
        emitln!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            i + 1,
            rep.n,
            yes_no(rep.rank.is_ok()),
            yes_no(rep.modular_violation.is_none()),
            yes_no(rep.semimodular_violation.is_none()),
            yes_no(rep.distributive_violation.is_none()),
            yes_no(rep.knots.is_empty()),
            yes_no(rep.piece_failure.is_none()),
            height,
            join_or_dash(&rep.necks),
        );
    }
    emitln!(
        "# total {}  graded {}  modular {}  semimodular {}  distributive {}  vi {}  piece {}",
        c.total, c.graded, c.modular, c.semimodular, c.distributive, c.vi, c.piece
    );
}
