use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hopull_cli::format::{
    parse_instance_file, resolve, to_canonical_json, InstanceBuilder, Resolved,
};
use hopull_cli::gen::GenConfig;
use hopull_cli::suite::{all_pass, run_suite, SuiteName};
use hopull_core::cospan::{
    fibrant_replace, is_cofibration_sigma, is_fibrant_sigma, is_fibration_sigma, is_weq_cospan,
    ReplaceMode, SigmaTag,
};
use hopull_core::hopull::{
    homotopy_pullback, is_homotopy_fiber_square, is_model_square, is_model_square_full,
    is_model_square_rp, paste, Leg,
};

/// Exact homotopy pullbacks of chain complexes over a prime field.
#[derive(Parser)]
#[command(name = "hopull", version, about)]
struct Cli {
    /// Instance file (JSON) declaring the named objects.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for the generator suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of trials for the generator suites.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Inj,
    ReeI,
    ReeD,
}

impl From<Structure> for SigmaTag {
    fn from(s: Structure) -> SigmaTag {
        match s {
            Structure::Inj => SigmaTag::Inj,
            Structure::ReeI => SigmaTag::ReeI,
            Structure::ReeD => SigmaTag::ReeD,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// Quasi-isomorphism (objectwise for cospan morphisms).
    Weq,
    /// Fibration (needs --structure on cospan morphisms).
    Fib,
    /// Cofibration (needs --structure on cospan morphisms).
    Cofib,
    /// Fibrancy of a cospan (needs --structure).
    Fibrant,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichLeg {
    First,
    Second,
}

impl From<WhichLeg> for Leg {
    fn from(l: WhichLeg) -> Leg {
        match l {
            WhichLeg::First => Leg::First,
            WhichLeg::Second => Leg::Second,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Homology dimensions of a named complex.
    Homology { name: String },
    /// Check a property of a named map, cospan morphism or cospan.
    Check {
        kind: CheckKind,
        name: String,
        #[arg(long)]
        structure: Option<Structure>,
    },
    /// Fibrant replacement of a named cospan; prints the replacement as
    /// an instance file.
    Replace {
        name: String,
        #[arg(long)]
        structure: Structure,
        /// Return the identity when the cospan is already fibrant.
        #[arg(long)]
        local: bool,
    },
    /// Homotopy pullback of a named cospan.
    Hopb {
        name: String,
        #[arg(long)]
        structure: Structure,
        #[arg(long)]
        local: bool,
    },
    /// Model-square verdict for a named square (canonical representative
    /// by default; a specific structure with --structure; one-leg
    /// replacement with --rp).
    ModelSquare {
        name: String,
        #[arg(long)]
        structure: Option<Structure>,
        #[arg(long)]
        local: bool,
        /// Replace only this leg (right-proper variant).
        #[arg(long, value_enum)]
        rp: Option<WhichLeg>,
    },
    /// Homotopy fiber square verdict for a named square.
    FiberSquare { name: String },
    /// Paste two named squares sharing their middle column; prints the
    /// total square as an instance file.
    Paste { left: String, right: String },
    /// Run a verification suite.
    Suite {
        name: String,
        /// Prime modulus for generated instances.
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = -3)]
        deg_min: i64,
        #[arg(long, default_value_t = 6)]
        deg_max: i64,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Embed the instance dump in every trial report, not only on
        /// failures.
        #[arg(long)]
        dump_all: bool,
    },
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

fn load(input: &Option<PathBuf>) -> Result<Resolved> {
    let path = input
        .as_ref()
        .ok_or_else(|| anyhow!("--input <FILE> is required"))?;
    let file = parse_instance_file(path)?;
    Ok(resolve(&file)?)
}

fn verdict_output(json_mode: bool, verdict: bool, what: &str) -> ExitCode {
    if json_mode {
        println!("{}", json!({ "check": what, "verdict": verdict }));
    } else {
        println!("{verdict}");
    }
    if verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn homology_output(json_mode: bool, h: &BTreeMap<i64, usize>) {
    if json_mode {
        let obj: BTreeMap<String, usize> = h.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        println!("{}", json!({ "homology": obj }));
    } else if h.is_empty() {
        println!("0");
    } else {
        let parts: Vec<String> = h.iter().map(|(n, d)| format!("H_{n} = F^{d}")).collect();
        println!("{}", parts.join(", "));
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Homology { name } => {
            let r = load(&cli.input)?;
            let x = r.complex(&name)?;
            homology_output(cli.json, &x.homology_dims());
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            kind,
            name,
            structure,
        } => {
            let r = load(&cli.input)?;
            let sigma = structure.map(SigmaTag::from);
            let need_sigma =
                || sigma.ok_or_else(|| anyhow!("--structure is required for this check"));
            let verdict = match kind {
                CheckKind::Weq => {
                    if let Ok(f) = r.map(&name) {
                        f.is_weq()
                    } else if let Ok(m) = r.morphism(&name) {
                        is_weq_cospan(m)
                    } else {
                        bail!("no map or morphism named '{name}'");
                    }
                }
                CheckKind::Fib => {
                    if let Ok(f) = r.map(&name) {
                        f.is_fibration()
                    } else if let Ok(m) = r.morphism(&name) {
                        is_fibration_sigma(m, need_sigma()?)?
                    } else {
                        bail!("no map or morphism named '{name}'");
                    }
                }
                CheckKind::Cofib => {
                    if let Ok(f) = r.map(&name) {
                        f.is_cofibration()
                    } else if let Ok(m) = r.morphism(&name) {
                        is_cofibration_sigma(m, need_sigma()?)?
                    } else {
                        bail!("no map or morphism named '{name}'");
                    }
                }
                CheckKind::Fibrant => is_fibrant_sigma(r.cospan(&name)?, need_sigma()?),
            };
            Ok(verdict_output(cli.json, verdict, &name))
        }
        Command::Replace {
            name,
            structure,
            local,
        } => {
            let r = load(&cli.input)?;
            let x = r.cospan(&name)?;
            let mode = if local {
                ReplaceMode::Local
            } else {
                ReplaceMode::Functorial
            };
            let replacement = fibrant_replace(x, structure.into(), mode)?;
            let mut builder = InstanceBuilder::new(x.ctx().modulus());
            builder.cospan_full("source", replacement.src());
            builder.cospan_full("replaced", replacement.tgt());
            builder.map("map.c", "source.C", "replaced.C", replacement.map().phi_c());
            builder.map("map.d", "source.D", "replaced.D", replacement.map().phi_d());
            builder.map("map.b", "source.B", "replaced.B", replacement.map().phi_b());
            builder.morphism("map", "source", "replaced", "map.c", "map.d", "map.b");
            println!("{}", to_canonical_json(&builder.finish()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Hopb {
            name,
            structure,
            local,
        } => {
            let r = load(&cli.input)?;
            let x = r.cospan(&name)?;
            let mode = if local {
                ReplaceMode::Local
            } else {
                ReplaceMode::Functorial
            };
            let result = homotopy_pullback(x, structure.into(), mode)?;
            if cli.json {
                let mut builder = InstanceBuilder::new(x.ctx().modulus());
                builder.complex("apex", &result.apex);
                let obj: BTreeMap<String, usize> = result
                    .homology
                    .iter()
                    .map(|(k, v)| (k.to_string(), *v))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "homology": obj,
                        "apex": serde_json::to_value(builder.finish())?,
                    })
                );
            } else {
                homology_output(false, &result.homology);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ModelSquare {
            name,
            structure,
            local,
            rp,
        } => {
            let r = load(&cli.input)?;
            let s = r.square(&name)?;
            let verdict = match (rp, structure) {
                (Some(leg), None) => is_model_square_rp(s, leg.into())?,
                (Some(_), Some(_)) => bail!("--rp and --structure are mutually exclusive"),
                (None, Some(st)) => {
                    let mode = if local {
                        ReplaceMode::Local
                    } else {
                        ReplaceMode::Functorial
                    };
                    is_model_square(s, st.into(), mode)?
                }
                (None, None) => is_model_square_full(s)?,
            };
            Ok(verdict_output(cli.json, verdict, &name))
        }
        Command::FiberSquare { name } => {
            let r = load(&cli.input)?;
            let verdict = is_homotopy_fiber_square(r.square(&name)?)?;
            Ok(verdict_output(cli.json, verdict, &name))
        }
        Command::Paste { left, right } => {
            let r = load(&cli.input)?;
            let total = paste(r.square(&left)?, r.square(&right)?)?;
            let mut builder = InstanceBuilder::new(total.corner().ctx().modulus());
            builder.square_full("total", &total);
            println!("{}", to_canonical_json(&builder.finish()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite {
            name,
            p,
            deg_min,
            deg_max,
            max_dim,
            dump_all,
        } => {
            let suite = SuiteName::parse(&name)
                .ok_or_else(|| anyhow!("unknown suite '{name}'; one of: axioms, sigma, lifting, fibersq, pasting, transfer, rightproper, corlur, pastlem"))?;
            let cfg = GenConfig {
                seed: cli.seed,
                p,
                deg_min,
                deg_max,
                max_dim,
                trials: cli.trials,
            };
            let reports = run_suite(suite, &cfg, dump_all)?;
            for report in &reports {
                if cli.json {
                    println!("{}", serde_json::to_string(report)?);
                } else {
                    println!(
                        "{} trial {:>3} [seed {}]: {}",
                        report.suite,
                        report.trial,
                        report.seed,
                        if report.pass { "pass" } else { "FAIL" }
                    );
                }
            }
            let ok = all_pass(&reports);
            if !cli.json {
                println!(
                    "{}: {}/{} trials passed",
                    suite.as_str(),
                    reports.iter().filter(|r| r.pass).count(),
                    reports.len()
                );
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
