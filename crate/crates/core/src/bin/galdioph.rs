//! Command-line front end.
//!
//! Exit codes: 0 success or accepted, 1 rejected or unsolvable, 2 parse,
//! structural or invalid-group errors, 3 cap exceeded, 4 contract
//! violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galdioph::algebra::{RingDescriptor, Scalar};
use galdioph::encoder::{system_from_text, system_to_text, Witness};
use galdioph::group::{library, GroupTable};
use galdioph::oracle::{brute_force_enumerate, verify_witness, SolveStatus, DEFAULT_BRUTE_CAP};
use galdioph::par::Exec;
use galdioph::pipeline::{check_scenario, run_encode, scenario, scenarios, EncodeRequest, Problem, ScenarioCheck};
use galdioph::Error;

#[derive(Parser)]
#[command(name = "galdioph", version, about = "Encode group realizability questions as polynomial systems")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a group table file.
    ValidateGroup { file: PathBuf },
    /// Emit the polynomial system for a problem.
    Encode {
        #[arg(long, default_value = "igp")]
        problem: String,
        #[arg(long)]
        ring: String,
        /// Extension degree for the automorphism problem.
        #[arg(long)]
        degree: Option<usize>,
        /// Encode disequations and append the conjunction of all equations.
        #[arg(long)]
        single_equation: bool,
        /// With --single-equation, first replace predicates by their
        /// Diophantine definitions where one is available.
        #[arg(long, requires = "single_equation")]
        splice: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Group table files (or bundled group names).
        #[arg(required = true)]
        groups: Vec<String>,
    },
    /// Check a witness against a system file.
    Verify { system: PathBuf, witness: PathBuf },
    /// Exhaustive search over a prime field.
    BruteForce {
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        cap: u128,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the bundled scenarios, or emit one of them.
    Demo {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        scenario: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Structural(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Structural(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_group(arg: &str) -> Result<GroupTable, Error> {
    let path = Path::new(arg);
    if path.exists() {
        return GroupTable::parse(&read(path)?);
    }
    let name = arg.trim_end_matches(".grp");
    let name = Path::new(name).file_name().and_then(|s| s.to_str()).unwrap_or(name);
    library::group(name).ok_or_else(|| Error::Structural(format!("no group file or bundled group `{arg}`")))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::ValidateGroup { file } => {
            let g = GroupTable::parse(&read(&file)?)?;
            println!(
                "group {} order {} abelian {} cyclic {}",
                g.name(),
                g.order(),
                g.is_abelian(),
                g.is_cyclic()
            );
            Ok(0)
        }
        Command::Encode { problem, ring, degree, single_equation, splice, output, groups } => {
            let req = EncodeRequest {
                problem: Problem::parse(&problem)?,
                ring: RingDescriptor::parse(&ring)?,
                groups: groups.iter().map(|g| load_group(g)).collect::<Result<_, _>>()?,
                degree,
                single_equation,
                splice,
            };
            let sys = run_encode(&req)?;
            write_out(output.as_deref(), &system_to_text(&sys))?;
            Ok(0)
        }
        Command::Verify { system, witness } => {
            let sys = system_from_text(&read(&system)?)?;
            let w = Witness::from_text(&read(&witness)?)?;
            let report = verify_witness(&sys, &w)?;
            print!("{report}");
            Ok(if report.accepted { 0 } else { 1 })
        }
        Command::BruteForce { system, cap, output } => {
            let sys = system_from_text(&read(&system)?)?;
            let report = brute_force_enumerate(&sys, cap, Exec::Auto)?;
            print!("{report}");
            if let Some(w) = report.witnesses.first() {
                write_out(output.as_deref(), &w.to_text(Some(&sys.registry)))?;
            }
            Ok(if report.status == SolveStatus::SolvableWithWitness { 0 } else { 1 })
        }
        Command::Demo { list, scenario: name, output } => {
            if list {
                for s in scenarios() {
                    println!("{}", s.name);
                }
                return Ok(0);
            }
            if let Some(name) = name {
                let sc = scenario(&name).ok_or_else(|| Error::Structural(format!("no scenario `{name}`")))?;
                let sys = run_encode(&sc.request)?;
                write_out(output.as_deref(), &system_to_text(&sys))?;
                return Ok(0);
            }
            run_demo(cli.seed)
        }
    }
}

/// Encodes every scenario and checks the text round trip. Scenarios with
/// a witness verify it against the re-parsed system and confirm that a
/// randomly perturbed copy is rejected; the others confirm unsolvability.
fn run_demo(seed: u64) -> Result<u8, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for sc in scenarios() {
        let sys = run_encode(&sc.request)?;
        let text = system_to_text(&sys);
        let back = system_from_text(&text)?;
        let stable = system_to_text(&back) == text;
        let (ok, verdict) = match check_scenario(&sc, &sys)? {
            ScenarioCheck::Witness(w) => {
                let r = verify_witness(&back, &w)?;
                let names: Vec<String> = back.registry.iter().map(|(_, v)| v.name.clone()).collect();
                let victim = &names[rng.gen_range(0..names.len())];
                let mut bad = w.clone();
                let old = w.get(victim).cloned().unwrap_or_default();
                bad.set(victim.clone(), old + Scalar::from_integer(1.into()));
                let perturbed = verify_witness(&back, &bad)?;
                let msg = format!(
                    "witness {}, perturbed `{victim}` {}",
                    if r.accepted { "accepted" } else { "REJECTED" },
                    if perturbed.accepted { "still accepted" } else { "rejected" }
                );
                (r.accepted, msg)
            }
            ScenarioCheck::ProvenUnsolvable(why) => (true, format!("unsolvable: {why}")),
            ScenarioCheck::Failed(why) => (false, why),
        };
        let ok = ok && stable;
        println!(
            "{} {}: {} variables, {} equations, round trip {}, {verdict}",
            if ok { "ok  " } else { "FAIL" },
            sc.name,
            sys.registry.len(),
            sys.equations.len(),
            if stable { "stable" } else { "UNSTABLE" }
        );
        if !ok {
            failures += 1;
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
