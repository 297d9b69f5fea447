use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comatroid::canonical::{canonical_key, CANONICAL_RANK_CAP};
use comatroid::census::{
    enumerate_colorings, hyperplane_scan, minimal_non_comatroids, ColoringFilter, Sampling,
};
use comatroid::constructions::{catalog_names, named};
use comatroid::decide::{decide, replay, Certificate, ForbiddenCatalog, Method, DECIDER_RANK_CAP};
use comatroid::manifest::{run_check, CHECKS, DEFAULT_SEED};
use comatroid::matroid::BRUTE_FORCE_CAP;
use comatroid::presentation::{parse_matroid_text, to_point_text};
use comatroid::{Embedded, EmbeddedMatroid, Error, FieldOrder, MatrixPresentation, PointSpace};

/// Print to stdout, exiting quietly if the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => {
        if write!(io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

macro_rules! outln {
    ($($t:tt)*) => {
        if writeln!(io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

#[derive(Parser)]
#[command(
    name = "comatroid",
    version,
    about = "Binary and ternary comatroid toolkit"
)]
struct Cli {
    /// Worker threads for censuses and checks (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Decide whether a matroid is a comatroid (exit 0 yes, 1 no).
    Decide(DecideArgs),
    /// Print the complement of a matroid in a projective geometry.
    Complement {
        input: String,
        /// Rank of the ambient geometry (default: the matroid's rank).
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Contract an element and simplify.
    Contract {
        input: String,
        /// Column label, or `p<index>` for point-set input.
        #[arg(long)]
        element: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Restrict to the flat spanned by the given elements.
    Restrict {
        input: String,
        /// Comma-separated column labels.
        #[arg(long)]
        flat: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List connected hyperplanes.
    Hyperplanes {
        input: String,
        /// Print only the number of connected hyperplanes.
        #[arg(long)]
        count: bool,
        /// List every hyperplane, marking the connected ones.
        #[arg(long)]
        all: bool,
    },
    /// Named matroids and excluded lists.
    #[command(subcommand)]
    Catalog(CatalogVerb),
    /// Exhaustive and targeted searches.
    #[command(subcommand)]
    Census(CensusVerb),
    /// Run the verification checks, printing PASS or FAIL for each.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run only these checks (1 to 12).
        #[arg(long)]
        only: Vec<usize>,
    },
    /// Summary of a matroid's basic invariants.
    Info { input: String },
}

#[derive(Args)]
struct DecideArgs {
    input: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
    method: MethodArg,
    /// Print a replayable certificate after each verdict.
    #[arg(long)]
    certificate: bool,
    /// Check a certificate file instead of deciding.
    #[arg(long, conflicts_with_all = ["certificate"])]
    replay: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Recursive,
    Flats,
    Forbidden,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Points,
    Matrix,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Points)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum CatalogVerb {
    /// Names accepted after `catalog:`.
    List,
    /// Print a named matroid in the matrix text format.
    Show { name: String },
    /// The excluded flats used by the forbidden-flat decider.
    Forbidden {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand)]
enum CensusVerb {
    /// Minimal non-comatroids of one rank.
    Minimal {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        tsv: bool,
    },
    /// Extend a rank-5 binary seed by up to `max-extra` points and count
    /// connected hyperplanes.
    Scan {
        /// Seed matroid: a file or `catalog:<name>`.
        #[arg(long)]
        seed: String,
        #[arg(long)]
        max_extra: usize,
        /// Report every scanned extension, not only survivors.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        tsv: bool,
    },
    /// Colorings of PG(rank-1, q) passing a named filter.
    Colorings {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "all")]
        filter: String,
        /// Keep one coloring per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Sample this many random colorings instead of scanning all.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        tsv: bool,
    },
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read_input(input: &str) -> Result<Embedded, Failure> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(named(name)?.embed()?);
    }
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?
    };
    Ok(parse_matroid_text(&text)?.into_embedded()?)
}

fn field(q: u32) -> Result<FieldOrder, Failure> {
    Ok(FieldOrder::new(q)?)
}

fn emit(text: &str, out: &OutputArgs) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => out!("{text}"),
    }
    Ok(())
}

fn matroid_text(m: &EmbeddedMatroid, format: Format) -> String {
    match format {
        Format::Points => to_point_text(m),
        Format::Matrix => MatrixPresentation::from_matroid(m).to_text(),
    }
}

fn run_decide(args: &DecideArgs) -> Outcome {
    let e = read_input(&args.input)?;
    let m = &e.matroid;
    if let Some(path) = &args.replay {
        let text =
            fs::read_to_string(path).map_err(|err| Failure::Usage(format!("{path}: {err}")))?;
        let universe = m.reembed().0.space().len();
        let cert = Certificate::parse(&text, universe)?;
        let verdict = replay(m, &cert)?;
        outln!(
            "certificate verified: {}",
            if verdict {
                "comatroid"
            } else {
                "not a comatroid"
            }
        );
        return Ok(ExitCode::from(if verdict { 0 } else { 1 }));
    }
    let methods: Vec<Method> = match args.method {
        MethodArg::Recursive => vec![Method::Recursive],
        MethodArg::Flats => vec![Method::FlatCriterion],
        MethodArg::Forbidden => vec![Method::ForbiddenFlats],
        MethodArg::All => Method::ALL.to_vec(),
    };
    let mut answers = Vec::new();
    for method in methods {
        let v = decide(m, method)?;
        outln!(
            "{method}: {}",
            if v.is_comatroid {
                "comatroid"
            } else {
                "not a comatroid"
            }
        );
        if args.certificate {
            out!("{}", v.certificate.to_text());
        }
        answers.push(v.is_comatroid);
    }
    if answers.iter().any(|&a| a != answers[0]) {
        return Err(Failure::Usage("deciders disagree".into()));
    }
    Ok(ExitCode::from(if answers[0] { 0 } else { 1 }))
}

fn element_index(e: &Embedded, label: &str) -> Result<usize, Failure> {
    e.point(label)
        .ok_or_else(|| Failure::Usage(format!("no element labelled `{label}`")))
}

fn run_hyperplanes(input: &str, count: bool, all: bool) -> Outcome {
    let e = read_input(input)?;
    let m = &e.matroid;
    let connected = m.connected_hyperplanes();
    if count {
        outln!("{}", connected.len());
        return Ok(ExitCode::SUCCESS);
    }
    let list = if all {
        m.hyperplanes()
    } else {
        connected.clone()
    };
    for h in &list {
        let labels = e.labels_of(h).join(",");
        if all {
            let tag = if connected.contains(h) {
                "connected"
            } else {
                "disconnected"
            };
            outln!("{tag} {labels}");
        } else {
            outln!("{labels}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_catalog(verb: &CatalogVerb) -> Outcome {
    match verb {
        CatalogVerb::List => {
            for n in catalog_names() {
                outln!("{n}");
            }
            outln!("PG(r,q) AG(r,q) U(r,n)@q circuit(k)@q family(n)");
        }
        CatalogVerb::Show { name } => out!("{}", named(name)?.to_text()),
        CatalogVerb::Forbidden { q } => {
            let q = field(*q)?;
            let cat = ForbiddenCatalog::standard(q);
            match q {
                FieldOrder::Two => outln!("family circuit(k) for k >= 6"),
                FieldOrder::Three => {
                    outln!("family circuit(k) for k >= 4");
                    outln!("family circuit(k)+dU24 for k >= 3 and 1 <= d <= k");
                }
            }
            for n in cat.fixed_names() {
                outln!("fixed {n}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_census(verb: &CensusVerb) -> Outcome {
    match verb {
        CensusVerb::Minimal { q, rank, tsv } => {
            let report = minimal_non_comatroids(field(*q)?, *rank)?;
            out!(
                "{}",
                if *tsv {
                    report.to_tsv()
                } else {
                    report.to_text()
                }
            );
            eprintln!("elapsed {:.2}s", report.elapsed.as_secs_f64());
        }
        CensusVerb::Scan {
            seed,
            max_extra,
            all,
            tsv,
        } => {
            let e = read_input(seed)?;
            let scan = hyperplane_scan(&e.matroid, *max_extra, *all)?;
            out!("{}", if *tsv { scan.to_tsv()? } else { scan.to_text() });
            eprintln!("elapsed {:.2}s", scan.elapsed.as_secs_f64());
        }
        CensusVerb::Colorings {
            rank,
            q,
            filter,
            dedup,
            samples,
            seed,
            tsv,
        } => {
            let space = PointSpace::get(field(*q)?, *rank)?;
            let f = ColoringFilter::named(filter)?;
            let sampling = match samples {
                Some(n) => Sampling::Random {
                    samples: *n,
                    seed: *seed,
                },
                None => Sampling::Exhaustive,
            };
            let report = enumerate_colorings(&space, &f, *dedup, sampling)?;
            out!(
                "{}",
                if *tsv {
                    report.to_tsv()
                } else {
                    report.to_text()
                }
            );
            eprintln!("elapsed {:.2}s", report.elapsed.as_secs_f64());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(seed: u64, only: &[usize]) -> Outcome {
    let ids: Vec<usize> = if only.is_empty() {
        (1..=CHECKS.len()).collect()
    } else {
        only.to_vec()
    };
    let mut failed = 0;
    for id in ids {
        let o = run_check(id, seed);
        outln!("{}", o.line());
        eprintln!("check {id} took {:.2}s", o.elapsed.as_secs_f64());
        failed += usize::from(!o.passed);
    }
    Ok(ExitCode::from(if failed == 0 { 0 } else { 1 }))
}

fn run_info(input: &str) -> Outcome {
    let e = read_input(input)?;
    let m = &e.matroid;
    outln!("field GF({})", m.field().q());
    outln!("ambient-rank {}", m.ambient_rank());
    outln!("rank {}", m.rank());
    outln!("elements {}", m.len());
    outln!("components {}", m.components(m.green()).len());
    outln!("connected {}", m.is_connected());
    outln!("hyperplanes {}", m.hyperplanes().len());
    outln!("connected-hyperplanes {}", m.connected_hyperplanes().len());
    outln!("min-cocircuit {}", m.cocircuits_min_size());
    if m.len() <= BRUTE_FORCE_CAP {
        outln!(
            "vertical-connectivity {}",
            m.vertical_connectivity(m.green())?
        );
    }
    if m.rank() <= CANONICAL_RANK_CAP {
        outln!("key {}", canonical_key(m)?);
    }
    if m.rank() <= DECIDER_RANK_CAP {
        outln!("comatroid {}", decide(m, Method::Recursive)?.is_comatroid);
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.verb {
        Verb::Decide(args) => run_decide(args),
        Verb::Complement { input, rank, out } => {
            let m = read_input(input)?.matroid;
            let c = match rank {
                Some(t) => m.complement(*t)?,
                None => m.complement_default(),
            };
            emit(&matroid_text(&c, out.format), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Verb::Contract {
            input,
            element,
            out,
        } => {
            let e = read_input(input)?;
            let idx = element_index(&e, element)?;
            let c = e.matroid.si_contract(idx)?;
            emit(&matroid_text(&c, out.format), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Verb::Restrict { input, flat, out } => {
            let e = read_input(input)?;
            let labels: Vec<&str> = flat
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let span = e.matroid.closure_of(&e.label_set(&labels)?);
            let r = e.matroid.restrict_to_flat(&span)?;
            eprintln!("flat {}", e.labels_of(&span).join(","));
            emit(&matroid_text(&r, out.format), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Verb::Hyperplanes { input, count, all } => run_hyperplanes(input, *count, *all),
        Verb::Catalog(v) => run_catalog(v),
        Verb::Census(v) => run_census(v),
        Verb::Verify { seed, only } => run_verify(*seed, only),
        Verb::Info { input } => run_info(input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let code = match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    };
    let _ = io::stdout().flush();
    code
}
