//! Command-line front end for the prime inequality catalog.
//!
//! [`run`] parses an argument vector, executes one command and writes a
//! single [`ReportDocument`] to the output stream. The exit code is
//! 0 when every record holds, 1 when any fails, 2 when none fails but some
//! are undecided, 3 for usage errors and 4 when a resource limit is hit.

mod report;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primeineq::{
    scan_family, thirty_property, Comparator, Error, InequalityId, Params, Verifier, TABLE_FIRST_ROW,
    TABLE_LAST_ROW,
};

pub use report::{
    format_report, parse_json, records_from_csv, Format, Record, ReportDocument, ReportError, Summary, ThirtyRecord,
};

pub const EXIT_USAGE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "primeineq", version, about = "Certified checks of inequalities between primes, primorials and pi(x)")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Precision cap for interval comparisons before falling back to exact arithmetic.
    #[arg(long, default_value_t = 4096, global = true, value_parser = clap::value_parser!(u32).range(64..=1 << 20))]
    max_precision_bits: u32,
    /// Largest scan endpoint or limit accepted.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    scan_limit_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct IndexFlags {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    x: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
}

impl IndexFlags {
    fn get(&self, name: &str) -> Option<u64> {
        match name {
            "n" => self.n,
            "r" => self.r,
            "x" => self.x,
            "k" => self.k,
            _ => None,
        }
    }

    fn given(&self) -> impl Iterator<Item = &'static str> + '_ {
        [("n", self.n), ("r", self.r), ("x", self.x), ("k", self.k)]
            .into_iter()
            .filter_map(|(name, v)| v.map(|_| name))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one instance of an inequality.
    Verify {
        id: String,
        #[command(flatten)]
        flags: IndexFlags,
        #[arg(long)]
        variant: Option<u8>,
    },
    /// Check an inequality over an index range and report where it stabilizes.
    Scan {
        id: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        variant: Option<u8>,
    },
    /// Recompute rows of the 0.7-multiplier table.
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Empirical start of the Bonse-Posa or Reich inequality for fixed k.
    Threshold {
        #[arg(value_enum)]
        family: ThresholdFamily,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        limit: u64,
    },
    /// List integers whose smaller coprimes above 1 are all prime.
    Thirty {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ThresholdFamily {
    Posa,
    Reich,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Resource(e.to_string()),
        }
    }
}

/// Resolve a catalog id, accepting family names that select a member by `--variant`.
fn resolve_id(name: &str, variant: Option<u8>) -> Result<InequalityId, Failure> {
    let members: &[InequalityId] = match name {
        "mamangakis" => &[InequalityId::MamangakisV1, InequalityId::MamangakisV2],
        "sandor" => &[InequalityId::SandorV1, InequalityId::SandorV2, InequalityId::SandorV3],
        "rosser" => &[InequalityId::RosserUpper, InequalityId::RosserLower],
        "proof_helper" => &[InequalityId::ProofHelperA, InequalityId::ProofHelperB],
        _ => {
            let id: InequalityId = name.parse().map_err(|_| {
                let known: Vec<&str> = InequalityId::ALL.iter().map(|i| i.as_str()).collect();
                Failure::Usage(format!("unknown inequality {name:?}; known: {}", known.join(", ")))
            })?;
            if variant.is_some() {
                return Err(Failure::Usage(format!("{name} does not take --variant")));
            }
            return Ok(id);
        }
    };
    let v = variant.ok_or_else(|| Failure::Usage(format!("{name} needs --variant 1..={}", members.len())))?;
    members
        .get(usize::from(v).wrapping_sub(1))
        .copied()
        .ok_or_else(|| Failure::Usage(format!("{name} has variants 1..={}, got {v}", members.len())))
}

fn fixed_params(id: InequalityId, k: Option<u64>) -> Result<Params, Failure> {
    let mut fixed = Params::new();
    for &name in id.fixed_param_names() {
        // every fixed parameter in the catalog is k
        let v = k.ok_or_else(|| Failure::Usage(format!("{id} needs --{name}")))?;
        fixed.insert(name.to_owned(), v);
    }
    Ok(fixed)
}

fn within_cap(what: &str, value: u64, cap: u64) -> Result<(), Failure> {
    if value > cap {
        return Err(Failure::Resource(format!(
            "{what} {value} exceeds --scan-limit-cap {cap}"
        )));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<ReportDocument, Failure> {
    let mut verifier = Verifier::new(Comparator::with_max_bits(cli.max_precision_bits))?;
    let mut params = BTreeMap::new();
    params.insert("max_precision_bits".to_owned(), cli.max_precision_bits.to_string());
    let mut put = |k: &str, v: String| {
        params.insert(k.to_owned(), v);
    };

    let (command, records) = match &cli.command {
        Command::Verify { id, flags, variant } => {
            let id = resolve_id(id, *variant)?;
            let index_name = id.index_name();
            let index = flags
                .get(index_name)
                .ok_or_else(|| Failure::Usage(format!("{id} needs --{index_name}")))?;
            let fixed = fixed_params(id, flags.k)?;
            if let Some(extra) = flags.given().find(|f| *f != index_name && !fixed.contains_key(*f)) {
                return Err(Failure::Usage(format!("{id} does not take --{extra}")));
            }
            put("id", id.to_string());
            put(index_name, index.to_string());
            for (k, v) in &fixed {
                put(k, v.to_string());
            }
            let record = verifier.check(id, index, &fixed)?;
            ("verify", vec![Record::Check(record)])
        }
        Command::Scan { id, from, to, k, variant } => {
            let id = resolve_id(id, *variant)?;
            let fixed = fixed_params(id, *k)?;
            if k.is_some() && fixed.is_empty() {
                return Err(Failure::Usage(format!("{id} does not take --k")));
            }
            within_cap("--to", *to, cli.scan_limit_cap)?;
            put("id", id.to_string());
            put("from", from.to_string());
            put("to", to.to_string());
            for (k, v) in &fixed {
                put(k, v.to_string());
            }
            let report = scan_family(&mut verifier, id, &fixed, *from, *to)?;
            ("scan", vec![Record::Threshold(report)])
        }
        Command::Table { from, to } => {
            if from > to || *from < TABLE_FIRST_ROW || *to > TABLE_LAST_ROW {
                return Err(Failure::Usage(format!(
                    "table rows run from {TABLE_FIRST_ROW} to {TABLE_LAST_ROW}, got {from}..{to}"
                )));
            }
            put("from", from.to_string());
            put("to", to.to_string());
            let rows = (*from..=*to)
                .map(|r| verifier.table_row(r).map(Record::TableRow))
                .collect::<Result<Vec<_>, _>>()?;
            ("table", rows)
        }
        Command::Threshold { family, k, limit } => {
            within_cap("--limit", *limit, cli.scan_limit_cap)?;
            let id = match family {
                ThresholdFamily::Posa => InequalityId::BonsePosa,
                ThresholdFamily::Reich => InequalityId::Reich,
            };
            put("family", id.to_string());
            put("k", k.to_string());
            put("limit", limit.to_string());
            let fixed = fixed_params(id, Some(*k))?;
            let report = scan_family(&mut verifier, id, &fixed, 1, *limit)?;
            ("threshold", vec![Record::Threshold(report)])
        }
        Command::Thirty { limit } => {
            within_cap("--limit", *limit, cli.scan_limit_cap)?;
            put("limit", limit.to_string());
            let members = thirty_property(*limit);
            ("thirty", vec![Record::ThirtyProperty(ThirtyRecord { limit: *limit, members })])
        }
    };
    Ok(ReportDocument::new(command, params, records))
}

/// Run one command. `argv` excludes the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("primeineq")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            if let Err(e) = out.write_all(&format_report(&doc, cli.format)).and_then(|()| out.flush()) {
                let _ = writeln!(err, "error: writing report: {e}");
                return EXIT_RESOURCE;
            }
            doc.summary.exit_code()
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
