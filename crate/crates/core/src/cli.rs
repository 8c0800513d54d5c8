//! Command-line front end. `run` takes the argument list and I/O handles so
//! it can be driven in-process; it returns the exit status: 0 success,
//! 1 verification failure, 2 usage or parse error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bbs::{format_trajectory, parse_state, render_diagram, BbsState};
use crate::checks::{self, CheckConfig, Invariant};
use crate::error::{Error, Result};
use crate::rmatrix::apply_r;
use crate::soliton::{detect, run_experiment};
use crate::tableau::Tableau;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bbs", version, about = "Box-ball systems on rectangular-tableau crystals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// State file; standard input when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a state under T_l and print the trajectory.
    Evolve {
        #[command(flatten)]
        input: InputArg,
        /// Carrier width.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        l: u32,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Also print a time-space diagram.
        #[arg(long)]
        render: bool,
    },
    /// Print the energy E_l.
    Energy {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        l: u32,
    },
    /// Print the soliton content N_d.
    Spectrum {
        #[command(flatten)]
        input: InputArg,
    },
    /// Run a scattering experiment and compare with the predicted outcome.
    Scatter {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        l: u32,
        /// Step budget.
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Apply the combinatorial R to a pair of rectangular tableaux.
    Rmatrix {
        /// Rows separated by `/`, e.g. "1 2 4 / 2 3 5".
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Alphabet bound; the largest letter present when omitted.
        #[arg(long)]
        n: Option<u8>,
    },
    /// Run an invariant suite on seeded random or exhaustive instances.
    Check {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        invariant: String,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Perturb every compared value; the suite must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

enum Outcome {
    Pass,
    Fail,
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(Outcome::Pass) => EXIT_OK,
        Ok(Outcome::Fail) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_state(input: &InputArg, stdin: &mut dyn Read) -> Result<BbsState> {
    let text = match &input.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
            s
        }
    };
    parse_state(&text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Invalid(format!("write failed: {e}")))
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Evolve { input, l, steps, render } => {
            let mut states = vec![read_state(&input, stdin)?];
            for _ in 0..steps {
                let next = states.last().expect("nonempty").evolve(l as usize)?.0;
                states.push(next);
            }
            let mut text = format_trajectory(&states);
            if render {
                text.push('\n');
                text.push_str(&render_diagram(&states));
            }
            emit(out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Energy { input, l } => {
            let p = read_state(&input, stdin)?;
            emit(out, &format!("E_{l}={}\n", p.energy(l as usize)?))?;
            Ok(Outcome::Pass)
        }
        Command::Spectrum { input } => {
            let p = read_state(&input, stdin)?;
            let mut text = String::new();
            for (d, count) in p.spectrum()? {
                text.push_str(&format!("N_{d}={count}\n"));
            }
            emit(out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Scatter { input, l, steps } => scatter(read_state(&input, stdin)?, l as usize, steps, out),
        Command::Rmatrix { left, right, n } => {
            let (x, y) = (Tableau::parse_infer(&left)?, Tableau::parse_infer(&right)?);
            let n = n.unwrap_or(x.n().max(y.n()));
            let r = apply_r(&x.with_alphabet(n)?, &y.with_alphabet(n)?)?;
            emit(out, &format!("left_out={}\nright_out={}\nH={}\n", r.left_out, r.right_out, r.energy))?;
            Ok(Outcome::Pass)
        }
        Command::Check { invariant, trials, seed, inject_fault } => {
            let suites: Vec<Invariant> =
                if invariant == "all" { Invariant::ALL.to_vec() } else { vec![invariant.parse()?] };
            let cfg = CheckConfig { trials: trials as usize, seed, inject: inject_fault };
            let mut all_pass = true;
            for inv in suites {
                let report = checks::run(inv, &cfg)?;
                all_pass &= report.passed();
                emit(out, &report.to_string())?;
            }
            Ok(if all_pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn scatter(p: BbsState, l: usize, steps: usize, out: &mut dyn Write) -> Result<Outcome> {
    let cfg = detect(&p)?;
    let exp = run_experiment(&cfg, l, steps)?;
    let mut text = format_trajectory(&exp.states);
    for (j, s) in cfg.solitons.iter().enumerate() {
        text.push_str(&format!("initial {}: phase={} d={} internal=[{}]\n", j + 1, s.phase(), s.length(), s.internal()));
    }
    for c in &exp.collisions {
        text.push_str(&format!("collision {} {}: delta={}\n", c.faster + 1, c.slower + 1, c.delta));
    }
    let observed = exp.settled.as_ref().map(|(_, c)| c);
    let matches = exp.soliton_matches();
    for (j, s) in exp.predicted.solitons.iter().enumerate() {
        let src = &cfg.solitons[exp.predicted_ids[j]];
        text.push_str(&format!("soliton {}: phase={} d={} internal=[{}]\n", j + 1, s.phase(), s.length(), s.internal()));
        let obs = observed
            .and_then(|c| c.solitons.get(j))
            .map_or_else(|| "none".to_string(), |o| o.to_string());
        text.push_str(&format!(
            "delta={} predicted={} observed={} match={}\n",
            s.phase() - src.phase(),
            s,
            obs,
            matches[j]
        ));
    }
    match &exp.settled {
        Some((t, _)) => text.push_str(&format!("settled at t={t}\n")),
        None => text.push_str(&format!("not settled within {steps} steps\n")),
    }
    emit(out, &text)?;
    Ok(if exp.matches() { Outcome::Pass } else { Outcome::Fail })
}
