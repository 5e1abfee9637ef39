use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use vecnet_core::analyze::{self, Family};
use vecnet_core::search::{greedy_cover_search, SearchParams, Strategy};
use vecnet_core::solver::{self, Method};
use vecnet_core::subspace::{alpha_cover_check, binary_cover_51};
use vecnet_core::verify::{self, Sample};
use vecnet_core::{Assignment, CoverCode, NetworkFile, NetworkSpec};

#[derive(Parser)]
#[command(name = "vecnet", version, about = "Scalar and vector network codes for generalized combination networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a network file and classify the network.
    Build {
        #[arg(long)]
        network: PathBuf,
    },
    /// Build an assignment for a network file.
    Solve {
        #[arg(long)]
        network: PathBuf,
        /// mds, blocks, c1, c2, c3, cover or 3msg
        #[arg(long)]
        method: Method,
        /// Cover certificate, for --method cover.
        #[arg(long)]
        cover_file: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the transfer-matrix rank of every receiver.
    Verify {
        #[arg(long)]
        assignment: PathBuf,
        /// Check a seeded sample of this many receivers.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print one `receiver <id> rank <k> <pass|fail>` line per receiver.
        #[arg(long)]
        lines: bool,
    },
    /// Decode random messages at every receiver.
    Simulate {
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Simulate a seeded sample of this many receivers.
        #[arg(long)]
        sample: Option<u64>,
    },
    /// Search for a cover code and write its certificate.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        q: u64,
        /// exhaustive, greedy or randomized
        #[arg(long, default_value = "greedy")]
        strategy: Strategy,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the cover property of a certificate.
    Checkcover {
        #[arg(long)]
        file: PathBuf,
    },
    /// Field-size gap table.
    Analyze {
        /// Message counts, `a..b` or a single value.
        #[arg(long, value_parser = parse_range)]
        h_range: RangeInclusive<usize>,
        #[arg(long)]
        q: u64,
        /// Vector dimensions, `a..b` or a single value.
        #[arg(long, value_parser = parse_range)]
        t_range: RangeInclusive<usize>,
        #[arg(long)]
        csv: bool,
    },
    /// The 51-subspace code of F_2^6 against the best scalar solution.
    Demo51,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|_| format!("bad bound {v:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_assignment(path: &Path) -> Result<Assignment> {
    Assignment::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { network } => {
            let file = NetworkFile::parse(&read(&network)?).with_context(|| format!("parsing {}", network.display()))?;
            let spec = file.spec;
            println!("network {spec}");
            println!("s {} receivers {}", spec.s(), spec.num_receivers());
            println!("alphabet GF({})^{}", file.q, file.t);
            println!("{}", spec.classification());
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            network,
            method,
            cover_file,
            out,
        } => {
            let file = NetworkFile::parse(&read(&network)?).with_context(|| format!("parsing {}", network.display()))?;
            let cover = match &cover_file {
                Some(p) => Some(CoverCode::from_certificate(&read(p)?).with_context(|| format!("parsing {}", p.display()))?),
                None => None,
            };
            let a = solver::solve(&file, method, cover.as_ref())?;
            write(&out, &a.to_text()?)?;
            println!("{method} assignment for {} written to {}", a.spec(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            assignment,
            sample,
            seed,
            lines,
        } => {
            let a = load_assignment(&assignment)?;
            let report = verify::check_all(&a, sample.map(|count| Sample { count, seed }))?;
            print!("{}", report.summary());
            if lines {
                print!("{}", report.lines());
            }
            Ok(verdict(report.all_pass()))
        }
        Command::Simulate {
            assignment,
            trials,
            seed,
            sample,
        } => {
            let a = load_assignment(&assignment)?;
            let rep = verify::simulate_trials(&a, trials, seed, sample.map(|count| Sample { count, seed }))?;
            println!("seed {seed}");
            println!("trials {} receivers per trial {}", rep.trials, rep.receivers);
            for (trial, id, outcome) in &rep.failures {
                println!("trial {trial} receiver {id} {outcome:?}");
            }
            println!("mismatches {}", rep.failures.len());
            Ok(verdict(rep.failures.is_empty()))
        }
        Command::Search {
            n,
            k,
            alpha,
            dim,
            q,
            strategy,
            budget,
            seed,
            out,
        } => {
            let outcome = greedy_cover_search(SearchParams {
                n,
                k,
                alpha,
                min_dim: dim,
                q,
                strategy,
                budget,
                seed,
            })?;
            write(&out, &outcome.code.to_certificate())?;
            println!("seed {seed}");
            println!(
                "{strategy} search: {} members, {} steps{}",
                outcome.code.len(),
                outcome.steps,
                if outcome.exhausted { ", budget exhausted" } else { "" }
            );
            println!("certificate written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Checkcover { file } => {
            let code = CoverCode::from_certificate(&read(&file)?).with_context(|| format!("parsing {}", file.display()))?;
            let check = alpha_cover_check(code.members(), code.alpha(), code.min_dim())?;
            println!(
                "{} members of dimension <= {} in GF({})^{}; alpha {} D {}",
                code.len(),
                code.member_dim(),
                code.ctx().order(),
                code.ambient(),
                code.alpha(),
                code.min_dim()
            );
            match &check.violation {
                None => println!("cover OK, {} subsets checked", check.checked),
                Some((members, d)) => println!("cover FAILS: members {members:?} span {d} < {}", code.min_dim()),
            }
            Ok(verdict(check.holds))
        }
        Command::Analyze { h_range, q, t_range, csv } => {
            let rows = analyze::gap_table(h_range, q, t_range)?;
            if csv {
                print!("{}", analyze::to_csv(&rows));
            } else {
                print!("{}", analyze::to_table(&rows));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Demo51 => demo51(),
    }
}

fn demo51() -> Result<ExitCode> {
    let code = binary_cover_51();
    let cover = code.check()?;
    let members_ok = code.members().iter().filter(|m| m.dim() == 2).count();
    let spec = NetworkSpec::new(3, code.len(), 1, 1, 3)?;
    let a = solver::vector_from_cover_code(&spec, &code, 2, 2)?;
    let report = verify::check_all(&a, None)?;
    let scalar_max = solver::three_msg_max_r(4)?;
    let ok = cover.holds && members_ok == code.len() && report.all_pass() && scalar_max < code.len() as u128;
    if !analyze::scalar_bound_holds(Family::ThreeMsg, scalar_max, 4) {
        bail!("scalar bound inconsistent");
    }
    let mark = |b: bool| if b { "OK" } else { "FAIL" };
    println!(
        "cover {}/{} {}, receivers {}/{} {}, scalar max r at q_s=4 is {}",
        members_ok,
        code.len(),
        mark(cover.holds && members_ok == code.len()),
        report.passed(),
        report.total,
        mark(report.all_pass()),
        scalar_max
    );
    Ok(verdict(ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
