mod output;
mod svg;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use pyramidal::census::{candidates_with_at_most, run_census_over};
use pyramidal::geometry::{
    construct_chainsaw, construct_generic, inward_turns, validate, Tolerances, TurnSequence,
};
use pyramidal::pell::{generate_with, pell_context};
use pyramidal::search::{enumerate_up_to, solve_fixed_length};
use pyramidal::{Error, SolutionTriple};

use output::{
    write_csv, write_json, CensusCsvRow, CensusPayload, ContextSummary, GeneratePayload,
    GeneratedRow, OutputRecord, PolygonPayload, SolutionRow,
};

#[derive(Parser)]
#[command(
    name = "pyramidal",
    version,
    about = "Sums of consecutive squares and arithmetic polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List solutions by span c - a.
    Solve {
        /// Every solution with c - a at most this bound.
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        max_n: Option<BigInt>,
        /// Every solution with c - a exactly this.
        #[arg(long)]
        n: Option<BigInt>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Generate a coplanar family of solutions from a base solution.
    Generate {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        #[arg(long, default_value_t = 5)]
        count: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build and validate an arithmetic polygon.
    Polygon {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        #[arg(long, value_enum, default_value_t = Mode::Chainsaw)]
        mode: Mode,
        /// Turn bits for `--mode turns`: a 0/1 string of length c-a-2, or `inward`.
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, value_enum, default_value_t = PolygonFormat::Svg)]
        out: PolygonFormat,
        /// Write here instead of stdout.
        #[arg(long)]
        out_path: Option<PathBuf>,
    },
    /// Check which candidate solutions give convex polygons.
    Census {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Candidates whose polygons could have at most this many reflex angles.
        #[arg(long, default_value_t = 0)]
        max_reflex: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Chainsaw,
    Turns,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolygonFormat {
    Svg,
    Json,
}

enum Failure {
    Usage(String),
    InvalidTriple(String),
    Validation(String),
    Census(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::InvalidTriple(_) => 3,
            Failure::Validation(_) => 4,
            Failure::Census(_) => 5,
            Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::InvalidTriple(m)
            | Failure::Validation(m)
            | Failure::Census(m)
            | Failure::Io(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("PYRAMIDAL_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Solve { max_n, n, format } => solve(&mut out, max_n, n, format),
        Command::Generate {
            a,
            b,
            c,
            count,
            format,
        } => gen(&mut out, a, b, c, count, format),
        Command::Polygon {
            a,
            b,
            c,
            mode,
            bits,
            out: fmt,
            out_path,
        } => polygon(&mut out, (a, b, c), mode, bits, fmt, out_path),
        Command::Census { format, max_reflex } => census(&mut out, format, max_reflex),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("pyramidal: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

const SOLVE_HEADER: [&str; 7] = ["a", "b", "c", "N", "ell", "m", "k"];

fn solve(
    out: &mut impl Write,
    max_n: Option<BigInt>,
    n: Option<BigInt>,
    format: Format,
) -> Result<(), Failure> {
    let (solutions, command) = match (max_n, n) {
        (Some(bound), _) => {
            if bound <= BigInt::ZERO {
                return Err(Failure::Usage(format!(
                    "--max-n must be positive, got {bound}"
                )));
            }
            (enumerate_up_to(&bound), "solve")
        }
        (None, Some(n)) => {
            if n <= BigInt::ZERO {
                return Err(Failure::Usage(format!("--n must be positive, got {n}")));
            }
            let mut v = solve_fixed_length(&n);
            v.sort();
            (v, "solve")
        }
        (None, None) => return Err(Failure::Usage("one of --max-n or --n is required".into())),
    };
    let rows: Vec<SolutionRow> = solutions.iter().map(SolutionRow::from).collect();
    match format {
        Format::Csv => write_csv(out, &rows, &SOLVE_HEADER)?,
        Format::Json => write_json(out, &OutputRecord::new(command, rows))?,
    }
    Ok(())
}

fn triple(a: BigInt, b: BigInt, c: BigInt) -> Result<SolutionTriple, Failure> {
    SolutionTriple::new(a, b, c).map_err(|e| Failure::InvalidTriple(e.to_string()))
}

const GENERATE_HEADER: [&str; 8] = ["n", "a", "b", "c", "p_n", "q_n", "valid", "parity"];

fn gen(
    out: &mut impl Write,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    count: u32,
    format: Format,
) -> Result<(), Failure> {
    let base = triple(a, b, c)?;
    let ctx = pell_context(&base).map_err(|e| Failure::InvalidTriple(e.to_string()))?;
    let family = if count == 0 {
        Vec::new()
    } else {
        generate_with(&ctx, 1, i64::from(count)).map_err(|e| Failure::Validation(e.to_string()))?
    };
    let rows: Vec<GeneratedRow> = family.iter().map(GeneratedRow::from).collect();
    match format {
        Format::Csv => write_csv(out, &rows, &GENERATE_HEADER)?,
        Format::Json => {
            let payload = GeneratePayload {
                context: ContextSummary::from(&ctx),
                rows,
            };
            write_json(out, &OutputRecord::new("generate", payload))?
        }
    }
    Ok(())
}

fn polygon(
    out: &mut impl Write,
    (a, b, c): (BigInt, BigInt, BigInt),
    mode: Mode,
    bits: Option<String>,
    format: PolygonFormat,
    out_path: Option<PathBuf>,
) -> Result<(), Failure> {
    let t = triple(a, b, c)?;
    let geometry_error = |e: Error| match e {
        Error::TurnCount { .. } => Failure::Usage(e.to_string()),
        Error::TooLarge(_) => Failure::InvalidTriple(e.to_string()),
        other => Failure::Validation(other.to_string()),
    };
    let (path, turns, mode_name) = match mode {
        Mode::Chainsaw => {
            if bits.is_some() {
                return Err(Failure::Usage("--bits only applies to --mode turns".into()));
            }
            (
                construct_chainsaw(&t).map_err(geometry_error)?,
                None,
                "chainsaw",
            )
        }
        Mode::Turns => {
            let turns = match bits.as_deref() {
                None => return Err(Failure::Usage("--mode turns needs --bits".into())),
                Some("inward") => inward_turns(&t).map_err(geometry_error)?,
                Some(s) => s.parse::<TurnSequence>().map_err(Failure::Usage)?,
            };
            let path = construct_generic(&t, &turns).map_err(geometry_error)?;
            (path, Some(turns.to_string()), "turns")
        }
    };
    let report = validate(&path, &t);

    let mut buf = Vec::new();
    match format {
        PolygonFormat::Svg => buf.extend_from_slice(svg::render(&t, &path, &report).as_bytes()),
        PolygonFormat::Json => {
            let payload = PolygonPayload::new(&t, mode_name, turns, &path, &report);
            write_json(&mut buf, &OutputRecord::new("polygon", payload))?;
        }
    }
    match out_path {
        Some(p) => File::create(p)?.write_all(&buf)?,
        None => out.write_all(&buf)?,
    }

    let mut problems = Vec::new();
    if !report.is_arithmetic(&Tolerances::default()) {
        problems.push("not an arithmetic polygon within tolerance");
    }
    if matches!(mode, Mode::Chainsaw) && report.self_intersecting {
        problems.push("chainsaw polygon self-intersects");
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(format!(
            "{t}: {}; {report:?}",
            problems.join(", ")
        )))
    }
}

const CENSUS_HEADER: [&str; 9] = [
    "a",
    "b",
    "c",
    "N",
    "k",
    "candidate_built",
    "convex",
    "mu",
    "self_intersecting",
];

fn census(out: &mut impl Write, format: Format, max_reflex: u64) -> Result<(), Failure> {
    let rows = run_census_over(&candidates_with_at_most(max_reflex));
    let convex: Vec<String> = rows
        .iter()
        .filter(|r| r.convex)
        .map(|r| r.triple.to_string())
        .collect();
    let csv_rows: Vec<CensusCsvRow> = rows.iter().map(CensusCsvRow::from).collect();
    match format {
        Format::Csv => write_csv(out, &csv_rows, &CENSUS_HEADER)?,
        Format::Json => {
            let payload = CensusPayload {
                candidates: rows.len(),
                convex: convex.len(),
                rows: csv_rows,
            };
            write_json(out, &OutputRecord::new("census", payload))?
        }
    }
    eprintln!(
        "{} candidates, {} convex: {}",
        rows.len(),
        convex.len(),
        convex.join(" ")
    );
    if max_reflex == 0 && convex != ["(2, 4, 5)", "(9, 12, 14)"] {
        return Err(Failure::Census(format!(
            "expected exactly (2, 4, 5) and (9, 12, 14) convex, found [{}]",
            convex.join(", ")
        )));
    }
    Ok(())
}
