//! `blc`: counts, ranks, samples and types binary lambda calculus terms.
//!
//! Exit codes: 0 success, 2 usage or malformed input, 3 empty class or rank
//! out of range, 4 size guard exceeded.

use std::io::{self, Write};
use std::process::ExitCode;

use blc_census::asymptotics::{self, ConvergencePoint};
use blc_census::typing;
use blc_census::unrank::{self, Sampler, UnrankError};
use blc_census::{BitString, CountTable, FreeBound, Strategy, Term};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "blc", version, about = "Binary lambda calculus term census")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of terms of a given size.
    Count {
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
    /// Counts for every size up to `--max-n`, as CSV or JSON.
    Table {
        #[arg(long)]
        max_n: usize,
        /// Comma-separated bounds, each a number or `inf`.
        #[arg(long, value_delimiter = ',', default_value = "0,inf")]
        m: Vec<FreeBound>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// The term with a given rank.
    Unrank {
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long)]
        index: BigUint,
        #[arg(long, value_enum, default_value_t = TermFormat::Binary)]
        term_format: TermFormat,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
    /// The rank of a term.
    Rank {
        #[command(flatten)]
        bound: BoundArgs,
        #[command(flatten)]
        input: TermInput,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
    /// Uniformly random terms.
    Sample {
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Keep only simply typable draws.
        #[arg(long)]
        typable: bool,
        #[arg(long, default_value_t = 100_000)]
        max_attempts: u64,
        #[arg(long, value_enum, default_value_t = TermFormat::Binary)]
        term_format: TermFormat,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
    /// Principal simple type of a term.
    Typecheck {
        #[command(flatten)]
        input: TermInput,
        /// Context slots for free indices; defaults to the term's own need.
        #[arg(long)]
        free: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Number of simply typable terms of a given size.
    CountTypable {
        #[arg(long)]
        size: usize,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        closed: bool,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
    /// Growth constants of the number of all terms, as JSON.
    Asymptotics {
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// `S(m, n) ρ^n n^{3/2}` as CSV.
    Convergence {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,inf")]
        m: Vec<FreeBound>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Args)]
struct BoundArgs {
    /// Maximum free index.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    free: Option<usize>,
    /// All terms, without a bound on free indices.
    #[arg(long)]
    all: bool,
}

impl BoundArgs {
    fn bound(&self) -> FreeBound {
        match self.free {
            Some(m) if !self.all => FreeBound::AtMost(m),
            _ => FreeBound::Unbounded,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TermInput {
    /// Term as a string of `0`/`1`.
    #[arg(long)]
    term: Option<String>,
    /// Term in text form, e.g. `\(1 1)`.
    #[arg(long)]
    text: Option<String>,
}

impl TermInput {
    fn parse(&self) -> Result<Term, CliError> {
        match (&self.term, &self.text) {
            (Some(bits), _) => {
                let bits: BitString = bits.trim().parse().map_err(|e| CliError::Usage(format!("{e}")))?;
                bits.decode().map_err(|e| CliError::Usage(format!("cannot decode term: {e}")))
            }
            (_, Some(text)) => Term::parse_text(text).map_err(|e| CliError::Usage(e.to_string())),
            _ => Err(CliError::Usage("a term is required".into())),
        }
    }
}

#[derive(Args)]
struct Guard {
    /// Largest term size the tables may grow to.
    #[arg(long = "max-n", default_value_t = 2000)]
    max_n: usize,
}

impl Guard {
    fn check(&self, n: usize) -> Result<(), CliError> {
        if n > self.max_n {
            return Err(CliError::Resource(format!(
                "size {n} exceeds the table guard {}; raise --max-n to allow it",
                self.max_n
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TermFormat {
    Binary,
    Text,
}

impl TermFormat {
    fn show(self, t: &Term) -> String {
        match self {
            TermFormat::Binary => t.encode().to_string(),
            TermFormat::Text => t.render(),
        }
    }
}

enum CliError {
    Usage(String),
    Domain(String),
    Resource(String),
}

impl From<UnrankError> for CliError {
    fn from(e: UnrankError) -> Self {
        match e {
            UnrankError::Capacity { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn bound_json(b: FreeBound) -> Value {
    match b {
        FreeBound::AtMost(m) => json!(m),
        FreeBound::Unbounded => json!("inf"),
    }
}

fn unsupported(format: Format) -> CliError {
    let name = match format {
        Format::Plain => "plain",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    CliError::Usage(format!("--format {name} is not supported by this subcommand"))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(|e| CliError::Resource(e.to_string()));
    match cli.command {
        Command::Count { size, bound, format, guard } => {
            guard.check(size)?;
            let bound = bound.bound();
            let table = CountTable::new(size);
            let count = table.get(bound, size).unwrap();
            match format {
                Format::Plain => w(out, count.to_string()),
                Format::Csv => w(out, format!("n,m,count\n{size},{bound},{count}")),
                Format::Json => w(
                    out,
                    json!({"n": size, "m": bound_json(bound), "count": count.to_string(), "version": VERSION})
                        .to_string(),
                ),
            }
        }
        Command::Table { max_n, m, format } => {
            Guard { max_n: 2000 }.check(max_n)?;
            let table = CountTable::new(max_n);
            match format {
                Format::Csv => {
                    let mut s = String::from("n,m,count");
                    for &bound in &m {
                        for (n, c) in table.row(bound, max_n).unwrap().iter().enumerate() {
                            s.push_str(&format!("\n{n},{bound},{c}"));
                        }
                    }
                    w(out, s)
                }
                Format::Json => {
                    let rows: Vec<Value> = m
                        .iter()
                        .map(|&bound| {
                            let counts: Vec<String> =
                                table.row(bound, max_n).unwrap().iter().map(|c| c.to_string()).collect();
                            json!({"m": bound_json(bound), "counts": counts})
                        })
                        .collect();
                    w(out, json!({"max_n": max_n, "rows": rows, "version": VERSION}).to_string())
                }
                Format::Plain => Err(unsupported(format)),
            }
        }
        Command::Unrank { size, bound, index, term_format, format, guard } => {
            guard.check(size)?;
            let bound = bound.bound();
            let table = CountTable::new(size);
            let t = unrank::unrank(&table, bound, size, &index)?;
            match format {
                Format::Plain => w(out, term_format.show(&t)),
                Format::Json => w(
                    out,
                    json!({
                        "n": size, "m": bound_json(bound), "index": index.to_string(),
                        "term": term_format.show(&t), "version": VERSION,
                    })
                    .to_string(),
                ),
                Format::Csv => Err(unsupported(format)),
            }
        }
        Command::Rank { bound, input, format, guard } => {
            let t = input.parse()?;
            guard.check(t.size())?;
            let bound = bound.bound();
            let table = CountTable::new(t.size());
            let k = unrank::rank(&table, bound, &t)?;
            match format {
                Format::Plain => w(out, k.to_string()),
                Format::Json => w(
                    out,
                    json!({"n": t.size(), "m": bound_json(bound), "index": k.to_string(), "version": VERSION})
                        .to_string(),
                ),
                Format::Csv => Err(unsupported(format)),
            }
        }
        Command::Sample { size, bound, seed, count, typable, max_attempts, term_format, format, guard } => {
            guard.check(size)?;
            let bound = bound.bound();
            let table = CountTable::new(size);
            let mut sampler = Sampler::new(seed);
            let mut terms = Vec::with_capacity(count);
            for _ in 0..count {
                let t = if typable {
                    unrank::sample_typable(&table, bound, size, &mut sampler, max_attempts)?
                } else {
                    unrank::sample(&table, bound, size, &mut sampler)?
                };
                terms.push(term_format.show(&t));
            }
            match format {
                Format::Plain => {
                    eprintln!("# generator={} seed={seed}", Sampler::GENERATOR);
                    w(out, terms.join("\n"))
                }
                Format::Json => w(
                    out,
                    json!({
                        "n": size, "m": bound_json(bound), "typable": typable, "terms": terms,
                        "generator": Sampler::GENERATOR, "seed": seed, "version": VERSION,
                    })
                    .to_string(),
                ),
                Format::Csv => Err(unsupported(format)),
            }
        }
        Command::Typecheck { input, free, format } => {
            let t = input.parse()?;
            let free = free.unwrap_or_else(|| t.max_free_index());
            let typing = typing::infer(&t, free).map_err(|e| CliError::Usage(e.to_string()))?;
            match format {
                Format::Plain => w(
                    out,
                    typing.map_or_else(|| "untypable".to_string(), |ty| ty.ty.to_string()),
                ),
                Format::Json => {
                    let v = match typing {
                        Some(ty) => json!({
                            "typable": true,
                            "type": ty.ty.to_string(),
                            "context": ty.context.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "version": VERSION,
                        }),
                        None => json!({"typable": false, "version": VERSION}),
                    };
                    w(out, v.to_string())
                }
                Format::Csv => Err(unsupported(format)),
            }
        }
        Command::CountTypable { size, closed, all: _, jobs, format, guard } => {
            guard.check(size)?;
            let table = CountTable::new(size);
            let n = typing::count_typable(&table, size, closed, Strategy::with_jobs(jobs));
            match format {
                Format::Plain => w(out, n.to_string()),
                Format::Json => w(
                    out,
                    json!({"n": size, "closed": closed, "count": n.to_string(), "version": VERSION}).to_string(),
                ),
                Format::Csv => Err(unsupported(format)),
            }
        }
        Command::Asymptotics { tolerance } => {
            if !(tolerance > 0.0 && tolerance.is_finite()) {
                return Err(CliError::Usage("--tolerance must be positive".into()));
            }
            let r = asymptotics::constants(tolerance);
            let digits = |x: &blc_census::real::Fixed| x.to_decimal(30);
            let v = json!({
                "rho": r.rho.to_f64(),
                "growth": r.growth.to_f64(),
                "q_at_rho": r.q_at_rho.to_f64(),
                "c_tilde": r.c_tilde.to_f64(),
                "c": r.c.to_f64(),
                "gamma_minus_half": r.gamma_minus_half.to_f64(),
                "real_roots": r.real_roots.iter().map(|x| x.to_f64()).collect::<Vec<_>>(),
                "real_root_count": r.real_root_count,
                "digits": {
                    "rho": digits(&r.rho),
                    "growth": digits(&r.growth),
                    "c_tilde": digits(&r.c_tilde),
                    "c": digits(&r.c),
                },
                "c_tilde_reference": asymptotics::REFERENCE_C_TILDE,
                "c_tilde_ratio": r.c_tilde_ratio(),
                "note": "c = c_tilde / gamma(-1/2) with c_tilde from the closed form; \
                         the reference c_tilde differs from it by the factor c_tilde_ratio (about 4*pi)",
                "version": VERSION,
            });
            w(out, serde_json::to_string_pretty(&v).unwrap())
        }
        Command::Convergence { max_n, m, jobs } => {
            Guard { max_n: 2000 }.check(max_n)?;
            if max_n < 2 {
                return Err(CliError::Usage("--max-n must be at least 2".into()));
            }
            let strategy = Strategy::with_jobs(jobs);
            let table = CountTable::with_strategy(max_n, strategy);
            let rho = asymptotics::constants(1e-12).rho;
            let points = asymptotics::convergence_series(&table, &m, max_n, &rho, strategy);
            let mut s = String::from("m,n,value");
            for ConvergencePoint { bound, n, value } in points {
                s.push_str(&format!("\n{bound},{n},{value:.11e}"));
            }
            w(out, s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, msg) = match e {
                CliError::Usage(m) => (2, m),
                CliError::Domain(m) => (3, m),
                CliError::Resource(m) => (4, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
