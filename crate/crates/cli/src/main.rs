use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use loophh::comparison::{main_theorem_check, TheoremCase};
use loophh::cyclic::{hochschild, Dga};
use loophh::hc::hc_verify;
use loophh::ring::Ring;
use loophh::simplicial::{chain_complex, Cochains, SSet, DEFAULT_CEILING};
use loophh::surjection::verify_box;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "loophh", version, about = "Exact cochain, Hochschild and free loop space computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// write the JSON report here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,
    /// exit 0 even when a window did not stabilize
    #[arg(long)]
    allow_unstabilized: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the normalized chains (or cochains) of a simplicial set
    Homology {
        /// built-in name (point, delta:n, boundary:n, sphere:n) or a JSON file
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long)]
        cochains: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Hochschild homology of a DGA given as JSON, or of the cochains of a space
    Hochschild {
        #[arg(long, conflicts_with = "space", required_unless_present = "space")]
        dga: Option<PathBuf>,
        #[arg(long)]
        space: Option<String>,
        /// overrides the ring of the input
        #[arg(long)]
        ring: Option<String>,
        /// number of cyclic bar levels
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Differential, contraction identity and arity homology over a box of
    /// surjection sequences
    OperadVerify {
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Identities of hc(F,G), the resolution QF and the map α
    HcVerify {
        #[arg(long, default_value_t = 2)]
        object_cap: usize,
        #[arg(long, default_value_t = 2)]
        nerve_cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Coherent transformation from the cyclic bar construction of C^*(X) to
    /// the cochains of the powers of X, and both sides' homology
    Compare {
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "f2")]
        ring: String,
        #[arg(long, default_value_t = 2)]
        object_cap: usize,
        #[arg(long, default_value_t = 2)]
        nerve_cap: usize,
        /// cochain degree cap on the powers; 0 for none
        #[arg(long, default_value_t = 6)]
        degree_cap: usize,
        #[arg(long, default_value_t = 3)]
        loop_cap: usize,
        #[arg(long, default_value_t = 4)]
        hochschild_cap: usize,
        /// also check both legs of the zigzag
        #[arg(long)]
        legs: bool,
        #[command(flatten)]
        out: Output,
    },
}

struct Outcome {
    command: &'static str,
    config: Value,
    result: Value,
    summary: String,
    passed: bool,
    stabilized: bool,
}

fn load_space(spec: &str) -> Result<SSet> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return SSet::from_json(&text).with_context(|| format!("in {spec}"));
    }
    Ok(SSet::builtin(spec)?)
}

fn parse_ring(s: &str) -> Result<Ring> {
    Ok(s.parse::<Ring>()?)
}

fn ceiling() -> Result<usize> {
    match std::env::var("LOOPHH_CEILING") {
        Ok(v) => v.trim().parse().with_context(|| format!("LOOPHH_CEILING must be a positive integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    anyhow::ensure!(v > 0, "--{name} must be positive");
    Ok(())
}

fn run(command: &Command) -> Result<Outcome> {
    Ok(match command {
        Command::Homology { space, ring, cochains, .. } => {
            let x = load_space(space)?;
            let ring = parse_ring(ring)?;
            let table = if *cochains {
                Cochains::new(&x, ring).complex().full_homology()?.negated()
            } else {
                chain_complex(&x, ring).full_homology()?
            };
            Outcome {
                command: "homology",
                config: json!({"space": x.name(), "ring": ring.tag(), "cochains": cochains}),
                summary: format!("{} of {} over {ring}\n{}", if *cochains { "cohomology" } else { "homology" }, x.name(), table.to_text()),
                result: json!({"simplices": x.counts(), "table": table.to_json()}),
                passed: true,
                stabilized: true,
            }
        }
        Command::Hochschild { dga, space, ring, cap, .. } => {
            positive("cap", *cap)?;
            let (name, mut a) = match (dga, space) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    (path.display().to_string(), Dga::from_json(&text).with_context(|| format!("in {}", path.display()))?)
                }
                (None, Some(s)) => {
                    let x = load_space(s)?;
                    let r = parse_ring(ring.as_deref().unwrap_or("q"))?;
                    (x.name().to_string(), Dga::from_cochains(&Cochains::new(&x, r))?)
                }
                (None, None) => anyhow::bail!("give --dga or --space"),
            };
            if let Some(r) = ring {
                a = a.with_ring(parse_ring(r)?)?;
            }
            let h = hochschild(&a, *cap)?;
            let window = |w: Option<(i64, i64)>| w.map(|(lo, hi)| json!([lo, hi])).unwrap_or(Value::Null);
            let cohomological = h.cohomological();
            Outcome {
                command: "hochschild",
                config: json!({"input": name, "ring": a.ring().tag(), "cap": cap}),
                summary: format!(
                    "Hochschild homology of {name} over {}, levels 0..={cap}, window {:?}, {}\n{}",
                    a.ring(),
                    h.window,
                    if h.stabilized { "stabilized" } else { "NOT stabilized" },
                    h.table.to_text()
                ),
                result: json!({
                    "homological": {"table": h.table.to_json(), "window": window(h.window)},
                    "cohomological": {"table": cohomological.to_json(), "window": window(h.window.map(|(lo, hi)| (-hi, -lo)))},
                    "stabilized": h.stabilized,
                }),
                passed: true,
                stabilized: h.stabilized,
            }
        }
        Command::OperadVerify { arity, degree, .. } => {
            positive("arity", *arity)?;
            let r = verify_box(*arity, *degree);
            let witness = r.witness().map(|u| format!("{u} fails the uncorrected retraction")).unwrap_or_else(|| "no ⟨3123⟩ witness in the box".into());
            Outcome {
                command: "operad-verify",
                config: json!({"arity": arity, "degree": degree}),
                summary: format!(
                    "{} sequences up to arity {arity}, degree {degree}\n∂∂ = 0 failures: {}\ncorrected contraction failures: {}\nuncorrected contraction failures: {} ({witness})\narity homology (degrees 0..3): {:?}",
                    r.checked,
                    r.d_squared_failures.len(),
                    r.corrected_failures.len(),
                    r.uncorrected_failures.len(),
                    r.arity_homology
                ),
                result: r.to_json(),
                passed: r.passed(),
                stabilized: true,
            }
        }
        Command::HcVerify { object_cap, nerve_cap, .. } => {
            positive("nerve-cap", *nerve_cap)?;
            let r = hc_verify(*object_cap, *nerve_cap)?;
            Outcome {
                command: "hc-verify",
                config: json!({"object_cap": object_cap, "nerve_cap": nerve_cap}),
                summary: format!(
                    "cyclic category on [0..={object_cap}], nerve levels <= {nerve_cap}\ncosimplicial identities: {:?}\nQ identities: {}\nα round trip: {:?}\nα intertwines: {:?}\ntwo-object diagram: augmentation {:?}, section {:?}, homology {:?}",
                    r.cosimplicial, r.q_identities, r.alpha_round_trip, r.alpha_intertwines, r.augmentation_chain_map, r.section, r.resolution_homology
                ),
                result: r.to_json(),
                passed: r.passed(),
                stabilized: r.stabilized(),
            }
        }
        Command::Compare { space, ring, object_cap, nerve_cap, degree_cap, loop_cap, hochschild_cap, legs, .. } => {
            positive("loop-cap", *loop_cap)?;
            positive("hochschild-cap", *hochschild_cap)?;
            let case = TheoremCase {
                space: load_space(space)?,
                ring: parse_ring(ring)?,
                object_cap: *object_cap,
                nerve_cap: *nerve_cap,
                degree_cap: (*degree_cap > 0).then_some(*degree_cap),
                loop_cap: *loop_cap,
                hochschild_cap: *hochschild_cap,
                ceiling: ceiling()?,
                legs: *legs,
            };
            let r = main_theorem_check(&case)?;
            Outcome {
                command: "compare",
                config: json!({
                    "space": r.space, "ring": r.ring.tag(), "object_cap": object_cap, "nerve_cap": nerve_cap,
                    "degree_cap": degree_cap, "loop_cap": loop_cap, "hochschild_cap": hochschild_cap, "legs": legs,
                }),
                summary: format!(
                    "{} over {}: coherence residuals {:?}, factorization residuals {:?}, A^0 - AW {:?}, quasi-isomorphisms {:?}\ncompared cohomological degrees {:?}: {}\nHochschild side\n{}loop side\n{}",
                    r.space,
                    r.ring,
                    r.coherence,
                    r.factorizations,
                    r.aw,
                    r.quasi_iso,
                    r.compared,
                    if r.agree { "agree" } else { "DISAGREE" },
                    r.hochschild.to_text(),
                    r.loop_homology.to_text()
                ),
                result: r.to_json(),
                passed: r.passed(),
                stabilized: r.stabilized(),
            }
        }
    })
}

fn output(command: &Command) -> &Output {
    match command {
        Command::Homology { out, .. }
        | Command::Hochschild { out, .. }
        | Command::OperadVerify { out, .. }
        | Command::HcVerify { out, .. }
        | Command::Compare { out, .. } => out,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = output(&cli.command);
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = json!({
        "schema": SCHEMA,
        "command": outcome.command,
        "config": outcome.config,
        "result": outcome.result,
        "passed": outcome.passed,
        "stabilized": outcome.stabilized,
    });
    let text = serde_json::to_string_pretty(&report).expect("reports are plain JSON") + "\n";
    match &out.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{}", outcome.summary.trim_end());
        }
        None => {
            eprintln!("{}", outcome.summary.trim_end());
            print!("{text}");
        }
    }
    let ok = outcome.passed && (outcome.stabilized || out.allow_unstabilized);
    if !outcome.stabilized {
        eprintln!("warning: a window did not stabilize");
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
