use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tangletwist::tangle::{BlockPattern, TangleBlock};
use tangletwist::twist::{generate_family, replace_crossing, TwistSpec};
use tangletwist::verify::{diagram_report, run_suite, DiagramReport, FamilyRecord, Suite};
use tangletwist::{catalog, parse_pd, Diagram, Error};

const EXIT_INPUT: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "tangletwist", version, about = "Link diagrams, rational tangle twisting and class checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the adequate, homogeneous, alternative and positive checks.
    Check {
        /// PD file or catalog name.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Print determinant, bracket and its extreme powers.
    Invariants {
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Replace one crossing by a block and print the resulting PD code.
    Twist {
        input: String,
        /// 1-based crossing id.
        #[arg(long)]
        crossing: usize,
        #[arg(long)]
        block: String,
        #[arg(long)]
        oriented: bool,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Stream one record per member of a family, `?` running over the range.
    Family {
        input: String,
        #[arg(long)]
        crossing: usize,
        #[arg(long)]
        pattern: String,
        /// Inclusive range `a..b`.
        #[arg(long)]
        range: String,
        #[arg(long)]
        oriented: bool,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Run a randomized verification suite.
    Verify {
        /// adequacy, homogeneity, alternativity, positivity, det-lemma or bracket-prop.
        suite: String,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_crossings: u64,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// List the shipped diagrams.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
}

enum Failure {
    Input(String),
    Resource(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn load(input: &str) -> Result<Diagram, Failure> {
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input)?;
        return Ok(parse_pd(&text)?);
    }
    catalog::load(input).map_err(|_| Failure::Input(format!("{input}: no such file or catalog entry")))
}

fn crossing_index(d: &Diagram, id: usize) -> Result<usize, Failure> {
    if id == 0 || id > d.crossing_count() {
        return Err(Failure::Input(format!("crossing {id} out of range 1..={}", d.crossing_count())));
    }
    Ok(id - 1)
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>, Failure> {
    let bad = || Failure::Input(format!("range {text:?} is not of the form a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok(a..=b)
}

fn json_line(out: &mut impl Write, value: &impl serde::Serialize) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))
}

fn check(out: &mut impl Write, d: &Diagram, emit: Emit) -> Outcome {
    let adequate = d.is_adequate();
    let homogeneous = tangletwist::seifert::is_homogeneous(d);
    let alternative = tangletwist::checkerboard::is_alternative(d);
    let positive = tangletwist::seifert::is_positive(d);
    match emit {
        Emit::Json => json_line(
            out,
            &serde_json::json!({
                "name": d.name(), "crossings": d.crossing_count(), "adequate": adequate,
                "homogeneous": homogeneous, "alternative": alternative, "positive": positive,
            }),
        )?,
        Emit::Text => {
            writeln!(out, "adequate={adequate}")?;
            writeln!(out, "homogeneous={homogeneous}")?;
            writeln!(out, "alternative={alternative}")?;
            writeln!(out, "positive={positive}")?;
        }
    }
    Ok(())
}

fn report_text(out: &mut impl Write, r: &DiagramReport) -> io::Result<()> {
    let rows: [(&str, String); 8] = [
        ("name", r.name.clone().unwrap_or_default()),
        ("crossings", r.crossings.to_string()),
        ("components", r.components.to_string()),
        ("writhe", r.writhe.to_string()),
        ("determinant", r.determinant.to_string()),
        ("bracket", r.bracket.clone()),
        ("max_power", r.extremes[0].to_string()),
        ("min_power", r.extremes[1].to_string()),
    ];
    for (k, v) in rows {
        writeln!(out, "{k:<12}{v}")?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Check { input, emit } => check(out, &load(&input)?, emit),
        Command::Invariants { input, emit } => {
            let r = diagram_report(&load(&input)?)?;
            match emit {
                Emit::Json => json_line(out, &r)?,
                Emit::Text => report_text(out, &r)?,
            }
            Ok(())
        }
        Command::Twist { input, crossing, block, oriented, emit } => {
            let d = load(&input)?;
            let c = crossing_index(&d, crossing)?;
            let block = TangleBlock::parse(&block)?;
            let t = replace_crossing(&d, &TwistSpec { crossing: c, block: block.clone(), oriented })?;
            match emit {
                Emit::Text => write!(out, "{}", t.to_pd_text())?,
                Emit::Json => json_line(
                    out,
                    &serde_json::json!({
                        "crossing": crossing, "block": block.to_string(),
                        "crossings": t.crossing_count(), "pd": t.to_pd_text(),
                    }),
                )?,
            }
            Ok(())
        }
        Command::Family { input, crossing, pattern, range, oriented, emit } => {
            let d = load(&input)?;
            let c = crossing_index(&d, crossing)?;
            let pattern = BlockPattern::parse(&pattern)?;
            let range = parse_range(&range)?;
            if emit == Emit::Text {
                writeln!(out, "{:>6} {:>9} {:>5} {:>5} {:>5} {:>5} {:>11}  block", "k", "crossings", "adq", "hom", "alt", "pos", "determinant")?;
            }
            for member in generate_family(&d, c, &pattern, range, oriented) {
                let (k, block, t) = member?;
                let report = diagram_report(&t)?;
                match emit {
                    Emit::Json => json_line(out, &FamilyRecord { k, block: block.to_string(), report })?,
                    Emit::Text => writeln!(
                        out,
                        "{k:>6} {:>9} {:>5} {:>5} {:>5} {:>5} {:>11}  {block}",
                        report.crossings, report.adequate, report.homogeneous, report.alternative, report.positive, report.determinant
                    )?,
                }
            }
            Ok(())
        }
        Command::Verify { suite, trials, seed, max_crossings, emit } => {
            let suite = Suite::from_name(&suite)?;
            let report = run_suite(suite, seed, trials, max_crossings as usize);
            let s = &report.summary;
            match emit {
                Emit::Json => write!(out, "{}", report.to_json_lines())?,
                Emit::Text => {
                    writeln!(out, "suite     {}", suite.name())?;
                    writeln!(out, "seed      {} (per trial: {})", s.master_seed, s.seed_derivation)?;
                    writeln!(out, "trials    {}", s.trials)?;
                    writeln!(out, "passed    {}/{}", s.passed, s.passed + s.failed)?;
                    writeln!(out, "failed    {}", s.failed)?;
                    writeln!(out, "excluded  {} (outside the checked statement, not counted)", s.excluded)?;
                    for r in report.records.iter().filter(|r| r.outcome == tangletwist::verify::Outcome::Fail) {
                        json_line(out, r)?;
                    }
                }
            }
            if report.is_success() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Catalog { emit } => {
            for name in catalog::names() {
                let d = catalog::load(name)?;
                match emit {
                    Emit::Text => writeln!(out, "{name:<16}{:>3} crossings", d.crossing_count())?,
                    Emit::Json => json_line(out, &serde_json::json!({ "name": name, "crossings": d.crossing_count() }))?,
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY),
    }
}
