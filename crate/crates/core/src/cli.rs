//! Command-line front end.
//!
//! Exit codes: 0 success, valid or member; 1 invalid, non-member or a failed
//! verification; 2 usage error; 3 unreadable or malformed input file.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{Configuration, Configuration3};
use crate::cube::{random_word, CubeState, Mode, MoveSequence};
use crate::groups::{self, Check};
use crate::law::{check_cube3, check_revenge, config_space_size, group_order_closed_form, orbit_count};
use crate::sampler::{closed_form_probability, count_cube3_patterns, monte_carlo_sharded, AssemblyMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "revenge", version, about = "Group theory of the 4x4x4 cube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StateMode {
    Labeled,
    Colored,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EstimateMode {
    Theoretical,
    Market,
    Cube3,
}

impl From<EstimateMode> for AssemblyMode {
    fn from(m: EstimateMode) -> Self {
        match m {
            EstimateMode::Theoretical => AssemblyMode::RevengeTheoretical,
            EstimateMode::Market => AssemblyMode::RevengeMarket,
            EstimateMode::Cube3 => AssemblyMode::Cube3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Order,
    Subgroups,
    Lemmas,
    Witnesses,
    Membership,
    ClRelation,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Random move word and the state it produces
    Scramble {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "labeled")]
        mode: StateMode,
    },
    /// Apply a move word to a state file
    Apply {
        /// State file, `-` for stdin
        #[arg(long)]
        state: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        moves: String,
    },
    /// Configuration of a labeled state
    Extract {
        #[arg(long)]
        state: PathBuf,
    },
    /// Labeled state of a configuration
    Realize {
        #[arg(long)]
        config: PathBuf,
    },
    /// First-law verdict for a configuration
    Check {
        #[arg(long)]
        config: PathBuf,
    },
    /// Verdict for a 3x3x3 configuration
    Check3 {
        #[arg(long)]
        config: PathBuf,
    },
    /// Monte Carlo solvability estimate
    Estimate {
        #[arg(long, value_enum)]
        mode: EstimateMode,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: u64,
    },
    /// Exact counts
    Counts,
    /// Verify group-theoretic claims
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Required by the lemmas, membership and all suites
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Membership in the move group
    Member {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "config", required_unless_present = "config")]
        moves: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn bad_input(path: &Path, message: impl Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {message}", path.display()),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| bad_input(path, e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| bad_input(path, e))
}

fn read_state(path: &Path) -> Result<CubeState, Failure> {
    read_input(path)?.parse().map_err(|e| bad_input(path, e))
}

fn read_config(path: &Path) -> Result<Configuration, Failure> {
    read_input(path)?.parse().map_err(|e| bad_input(path, e))
}

fn parse_moves(text: &str) -> Result<MoveSequence, Failure> {
    MoveSequence::parse(text).map_err(|e| usage(format!("--moves: {e}")))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_NO,
        message: e.to_string(),
    };
    match command {
        Command::Scramble { length, seed, mode } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_word(&mut rng, length);
            let mode = match mode {
                StateMode::Labeled => Mode::Labeled,
                StateMode::Colored => Mode::Colored,
            };
            let s = crate::cube::apply(&CubeState::solved(mode), &w);
            write!(out, "# moves: {w}\n{s}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Apply { state, moves } => {
            let w = parse_moves(&moves)?;
            let s = read_state(&state)?;
            write!(out, "{}", crate::cube::apply(&s, &w)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Extract { state } => {
            let s = read_state(&state)?;
            let c = Configuration::extract(&s).map_err(|e| bad_input(&state, e))?;
            write!(out, "{c}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Realize { config } => {
            let c = read_config(&config)?;
            write!(out, "{}", c.realize()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Check { config } => {
            let v = check_revenge(&read_config(&config)?);
            write!(out, "{v}").map_err(io)?;
            Ok(if v.valid { EXIT_OK } else { EXIT_NO })
        }
        Command::Check3 { config } => {
            let c: Configuration3 = read_input(&config)?.parse().map_err(|e| bad_input(&config, e))?;
            let v = check_cube3(&c);
            write!(out, "{v}").map_err(io)?;
            Ok(if v.valid { EXIT_OK } else { EXIT_NO })
        }
        Command::Estimate {
            mode,
            samples,
            seed,
            shards,
        } => {
            let mode = AssemblyMode::from(mode);
            let e = monte_carlo_sharded(mode, samples, seed, shards).map_err(usage)?;
            let exact = closed_form_probability(mode);
            writeln!(
                out,
                "p_hat={:.9} se={:.9} exact={}/{}",
                e.p_hat,
                e.std_error,
                exact.numer(),
                exact.denom()
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Counts => {
            writeln!(out, "config_space={}", config_space_size()).map_err(io)?;
            writeln!(out, "orbits={}", orbit_count()).map_err(io)?;
            writeln!(out, "group_order={}", group_order_closed_form()).map_err(io)?;
            writeln!(out, "cube3_patterns={}", count_cube3_patterns()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            seed,
            trials,
            samples,
        } => verify(suite, seed, trials, samples, out).map_err(|e| match e {
            VerifyError::Io(e) => io(e),
            VerifyError::Usage(m) => usage(m),
        }),
        Command::Member { moves, config } => {
            let p = match (moves, config) {
                (Some(m), _) => parse_moves(&m)?.permutation(),
                (None, Some(path)) => read_config(&path)?.to_facelet_permutation(),
                (None, None) => return Err(usage("one of --moves or --config is required")),
            };
            let member = groups::move_group().contains(&p).expect("degree 96");
            writeln!(out, "member={member}").map_err(io)?;
            Ok(if member { EXIT_OK } else { EXIT_NO })
        }
    }
}

enum VerifyError {
    Io(std::io::Error),
    Usage(String),
}

impl From<std::io::Error> for VerifyError {
    fn from(e: std::io::Error) -> Self {
        VerifyError::Io(e)
    }
}

fn verify(suite: Suite, seed: Option<u64>, trials: usize, samples: usize, out: &mut dyn Write) -> Result<i32, VerifyError> {
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let randomized = matches!(suite, Suite::Lemmas | Suite::Membership | Suite::All);
    let seed = match (randomized, seed) {
        (true, None) => return Err(VerifyError::Usage("this suite needs --seed".into())),
        (_, s) => s.unwrap_or(0),
    };
    if trials == 0 || samples == 0 {
        return Err(VerifyError::Usage("--trials and --samples must be positive".into()));
    }
    let mut checks: Vec<Check> = Vec::new();
    let mut emit = |out: &mut dyn Write, heading: &str, new: Vec<Check>| -> std::io::Result<()> {
        writeln!(out, "# {heading}")?;
        for c in &new {
            writeln!(out, "{c}")?;
        }
        checks.extend(new);
        Ok(())
    };
    if wants(Suite::Order) {
        let r = groups::verify_group_order().iter().map(|r| r.check()).collect();
        emit(out, "group order", r)?;
    }
    if wants(Suite::Subgroups) {
        let r = groups::verify_subgroups().iter().map(|r| r.check()).collect();
        emit(out, "subgroup orders", r)?;
    }
    if wants(Suite::Witnesses) {
        let mut r: Vec<Check> = groups::witness_reports()
            .into_iter()
            .map(|w| Check {
                name: format!("witness_{}", w.name),
                pass: w.matches_claim,
                detail: format!("order={} {} word=\"{}\"", w.order, w.structure, w.word),
            })
            .collect();
        r.push(groups::verify_conjugates(50, seed));
        emit(out, "witnesses", r)?;
    }
    if wants(Suite::Lemmas) {
        emit(out, "orbit invariants", groups::verify_lemmas(trials, seed).checks())?;
    }
    if wants(Suite::Membership) {
        emit(out, "first law and membership", groups::verify_first_law_membership(samples, seed).checks())?;
    }
    if wants(Suite::ClRelation) {
        emit(out, "CL relation", groups::verify_cl_relation().checks())?;
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    writeln!(out, "summary checks={} failed={failed}", checks.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_NO })
}
