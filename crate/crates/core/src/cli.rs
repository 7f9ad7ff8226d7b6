//! The `blfkit` command line. [`run`] does all the work and returns the exit
//! code with the text for stdout and stderr, so the binary is a thin wrapper.

use std::fmt::Write;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::fibration::{global_monodromy, round_parities, validate, BrokenFibration, RoundParityStatus};
use crate::format::{parse, serialize};
use crate::invariants::{
    compute_invariants, homeo_report, homology_from_presentation, pi1_presentation, tietze_simplify,
};
use crate::surface::CurveWord;
use crate::surgery::{
    blow_down, broken_fiber_sum, connected_sum_model, example42_family, step_fibration, trade_negative_node,
    BrokenFiberSumSpec,
};
use crate::sw::{
    adjunction_check, section_constraint, simple_type_check, sw_symmetry, vanishing_pipeline, wall_crossing,
    ChamberData, Sign,
};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "blfkit", version, about = "Broken Lefschetz fibration toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a document and list violations and warnings.
    Validate { file: String },
    /// Print e, sigma, chi_h, b_plus, pi1, H1 and the declared data.
    Invariants {
        file: String,
        /// Extra relator for pi1, as a curve word on the higher fiber.
        #[arg(long = "relator")]
        relators: Vec<String>,
        /// Compute pi1 even without a section.
        #[arg(long)]
        assume_section: bool,
    },
    /// Print the homological monodromy of every level.
    Monodromy { file: String },
    /// Classify every round cobordism.
    Parity { file: String },
    /// Broken fiber sum of two documents.
    Sum {
        left: String,
        right: String,
        #[arg(long)]
        g1: usize,
        #[arg(long)]
        g2: usize,
        /// Attaching curve on the higher-genus fiber; repeat once per round.
        #[arg(long = "gamma")]
        gammas: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        gluing1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        gluing2: Option<i64>,
    },
    /// Connected-sum model of two documents.
    Csum { first: String, second: String },
    /// Trade a negative node for a round singularity on the blow-up.
    Trade {
        file: String,
        /// Cycle index counted from the bottom level.
        #[arg(long)]
        index: usize,
    },
    /// Blow down a section of square -1.
    Blowdown {
        file: String,
        #[arg(long)]
        section: usize,
    },
    /// The step fibration for genus g with a section of square k.
    Step {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
    },
    /// The genus-1 twisted family with a section of square k.
    Example42 {
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
    },
    /// Seiberg-Witten bookkeeping.
    Sw {
        #[command(subcommand)]
        check: SwCommand,
    },
    /// Homeomorphism type of the total space, when pi1 is trivial.
    Report { file: String },
}

#[derive(Args, Debug)]
struct Totals {
    #[arg(long, allow_hyphen_values = true)]
    e: i64,
    #[arg(long, allow_hyphen_values = true)]
    sigma: i64,
}

#[derive(Subcommand, Debug)]
enum SwCommand {
    /// SW in the chamber of H' from its value in the chamber of H.
    WallCrossing {
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Sign of A.H: + or -.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        h: Sign,
        /// Sign of A.H'.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        h_prime: Sign,
    },
    /// 2g - 2 >= square + |pairing|.
    Adjunction {
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
        #[arg(long, allow_hyphen_values = true)]
        square: i64,
        #[arg(long, allow_hyphen_values = true)]
        pairing: i64,
    },
    /// square = 2e + 3 sigma.
    SimpleType {
        #[arg(long, allow_hyphen_values = true)]
        square: i64,
        #[command(flatten)]
        totals: Totals,
    },
    /// SW(-beta) from SW(beta).
    Symmetry {
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
        #[command(flatten)]
        totals: Totals,
    },
    /// Whether a section of square k is allowed.
    Section {
        #[arg(long, allow_hyphen_values = true)]
        b_plus: i64,
        #[arg(long)]
        nontrivial: bool,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Sphere of square 0 meeting a torus once: blow up, blow down, adjunction.
    Vanishing {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        torus_square: i64,
        #[arg(long, allow_hyphen_values = true)]
        b_plus: i64,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::Validation(_) | Error::Dimension(_) => EXIT_VALIDATION,
        };
        Failure(code, e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn load_unchecked(path: &str) -> Res<BrokenFibration> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("cannot read {path}: {e}")))?;
    parse(&text).map_err(|e| Failure(EXIT_PARSE, format!("{path}:{e}")))
}

fn load(path: &str) -> Res<BrokenFibration> {
    let f = load_unchecked(path)?;
    let report = validate(&f);
    if !report.is_ok() {
        let mut msg = format!("{path}: invalid fibration\n");
        for v in &report.violations {
            let _ = writeln!(msg, "violation: {v}");
        }
        return Err(Failure(EXIT_VALIDATION, msg));
    }
    Ok(f)
}

fn word(s: &str) -> Res<CurveWord> {
    CurveWord::parse(s).map_err(|e| Failure(EXIT_USAGE, format!("bad curve word {s:?}: {e}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn dispatch(cmd: Command) -> Res<String> {
    let mut out = String::new();
    match cmd {
        Command::Validate { file } => {
            let f = load_unchecked(&file)?;
            let report = validate(&f);
            for v in &report.violations {
                let _ = writeln!(out, "violation: {v}");
            }
            for w in &report.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            if !report.is_ok() {
                return Err(Failure(EXIT_VALIDATION, out));
            }
            out.push_str("ok\n");
        }
        Command::Invariants { file, relators, assume_section } => {
            let f = load(&file)?;
            let mut record = compute_invariants(&f)?;
            if !relators.is_empty() || assume_section {
                let extra = relators.iter().map(|s| word(s)).collect::<Res<Vec<_>>>()?;
                let p = tietze_simplify(&pi1_presentation(&f, &extra, assume_section)?);
                record.h1 = Some(homology_from_presentation(&p));
                record.pi1 = Some(p);
            }
            out = record.to_key_value();
        }
        Command::Monodromy { file } => {
            let f = load(&file)?;
            for (i, level) in f.levels().iter().enumerate() {
                let m = global_monodromy(level)?;
                match m.matrix() {
                    None => {
                        let _ = writeln!(out, "level[{i}]: genus 0");
                    }
                    Some(mat) => {
                        let tag = if m.is_identity() { " (identity)" } else { "" };
                        let _ = writeln!(out, "level[{i}]: {mat}{tag}");
                    }
                }
            }
        }
        Command::Parity { file } => {
            let f = load_unchecked(&file)?;
            for (j, status) in round_parities(&f)?.iter().enumerate() {
                let text = match status {
                    RoundParityStatus::Separating => "separating".to_string(),
                    RoundParityStatus::Undetermined => "undetermined".to_string(),
                    RoundParityStatus::Computed(p) => p.to_string(),
                };
                let _ = writeln!(out, "round[{j}]: {text}");
            }
        }
        Command::Sum { left, right, g1, g2, gammas, gluing1, gluing2 } => {
            let spec = BrokenFiberSumSpec {
                left: load(&left)?,
                g1,
                right: load(&right)?,
                g2,
                gammas: gammas.iter().map(|s| word(s)).collect::<Res<_>>()?,
                gluing: (gluing1, gluing2),
            };
            out = serialize(&broken_fiber_sum(&spec)?);
        }
        Command::Csum { first, second } => {
            out = serialize(&connected_sum_model(&load(&first)?, &load(&second)?)?);
        }
        Command::Trade { file, index } => out = serialize(&trade_negative_node(&load(&file)?, index)?),
        Command::Blowdown { file, section } => out = serialize(&blow_down(&load(&file)?, section)?),
        Command::Step { genus, framing } => out = serialize(&step_fibration(genus, framing)),
        Command::Example42 { framing } => out = serialize(&example42_family(framing)),
        Command::Sw { check } => match check {
            SwCommand::WallCrossing { value, d, h, h_prime } => {
                let v = wall_crossing(value, d, ChamberData::new(h, h_prime))?;
                let _ = writeln!(out, "sw={v}");
            }
            SwCommand::Adjunction { genus, square, pairing } => {
                let _ = writeln!(out, "adjunction={}", yes_no(adjunction_check(genus, square, pairing)?));
            }
            SwCommand::SimpleType { square, totals } => {
                let _ = writeln!(out, "simple_type={}", yes_no(simple_type_check(square, totals.e, totals.sigma)));
            }
            SwCommand::Symmetry { value, totals } => {
                let _ = writeln!(out, "sw_negated={}", sw_symmetry(value, totals.e, totals.sigma)?);
            }
            SwCommand::Section { b_plus, nontrivial, k } => {
                let _ = writeln!(out, "section={}", section_constraint(b_plus, nontrivial, k));
            }
            SwCommand::Vanishing { torus_square, b_plus } => {
                out = vanishing_pipeline(torus_square, b_plus)?.to_string();
            }
        },
        Command::Report { file } => {
            let f = load(&file)?;
            out = homeo_report(&compute_invariants(&f)?);
        }
    }
    Ok(out)
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(EXIT_USAGE, text) } else { Outcome::ok(text) };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => Outcome::ok(out),
        Err(Failure(code, mut msg)) => {
            if !msg.ends_with('\n') {
                msg.push('\n');
            }
            Outcome::fail(code, msg)
        }
    }
}
