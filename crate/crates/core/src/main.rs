//! Command-line surface: structure analysis, family classification, the
//! small-graph atlas, kernelization, exact solving, instance generation, and
//! kernel verification.
//!
//! Exit codes: 0 success / yes, 1 negative answer (no, or a family with no
//! polynomial kernel, or a failed verification), 2 usage or parse error,
//! 3 cap exceeded, 4 kernelization ended in the trivial-yes certificate.

use clap::{Args, Parser, Subcommand};
use eds_core::atlas::atlas;
use eds_core::exact::decide_eds;
use eds_core::graph::{parse_graph, Graph};
use eds_core::instance::{parse_instance, serialize_instance, ModInstance};
use eds_core::kernel::{kernelize, KernelOutcome};
use eds_core::profile::{classify_family, find_control_pair, profile, strongly_beneficial_sets, Verdict};
use eds_core::reductions::{
    compose_control_pair, compose_cost, compose_p3, gen_random_instance, gen_random_mcc,
    parse_cnf, sat_to_eds, vc_to_eds, CnfFormula, MccInstance,
};
use eds_core::verify::verify_kernel;
use eds_core::{Caps, EdsError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eds", version, about = "edge-domination structure toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Largest component accepted for isomorphism and family matching.
    #[arg(long, global = true, default_value_t = 12)]
    max_component_size: usize,
    /// Largest whole instance the exact decision oracle accepts.
    #[arg(long, global = true, default_value_t = 22)]
    oracle_cap: usize,
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Structure profile of one connected graph.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Kernelizability verdict for a family of component graphs.
    Classify {
        /// Graph file; repeat for multi-member families.
        #[arg(long, required = true)]
        family: Vec<PathBuf>,
    },
    /// Profile every connected graph up to a vertex bound.
    Atlas {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce an instance; writes the reduced instance and a rule trace.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, required = true)]
        family: Vec<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Skip the path-of-five fast path.
        #[arg(long)]
        general: bool,
    },
    /// Decide an instance exactly (modulator included).
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Write the instance with the witness appended on yes.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate reduction outputs or random instances.
    Generate(GenerateArgs),
    /// Kernelize and check oracle equivalence plus size bounds.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, required = true)]
        family: Vec<PathBuf>,
        #[arg(long)]
        general: bool,
        /// Verify a seeded random batch instead of a single file.
        #[arg(long)]
        batch: Option<usize>,
        #[arg(long, default_value_t = 4)]
        x_size: usize,
        #[arg(long, default_value_t = 3)]
        components: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = ["p3", "control", "cost", "sat", "vc", "random"])]
    reduction: String,
    #[arg(long)]
    output: PathBuf,
    /// Component graph for the control/cost compositions.
    #[arg(long)]
    component: Option<PathBuf>,
    /// Number of source instances to compose.
    #[arg(long, default_value_t = 2)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    mcc_k: usize,
    #[arg(long, default_value_t = 2)]
    mcc_n: usize,
    #[arg(long, default_value_t = 0.6)]
    edge_prob: f64,
    /// 3-CNF file (minimal DIMACS subset) for the satisfiability reduction.
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    vars: usize,
    #[arg(long, default_value_t = 2)]
    clauses: usize,
    /// Source graph for the vertex-cover reduction.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Family files for random instances.
    #[arg(long)]
    family: Vec<PathBuf>,
    #[arg(long, default_value_t = 4)]
    x_size: usize,
    #[arg(long, default_value_t = 4)]
    components: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
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

fn read_graph(path: &PathBuf) -> eds_core::Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

fn read_family(paths: &[PathBuf]) -> eds_core::Result<Vec<Graph>> {
    paths.iter().map(read_graph).collect()
}

fn read_instance(path: &PathBuf, family: Vec<Graph>) -> eds_core::Result<ModInstance> {
    let (inst, _) = parse_instance(&fs::read_to_string(path)?)?;
    ModInstance::new(inst.graph, inst.k, inst.modulator, family)
}

fn emit(json: bool, value: &serde_json::Value, human: &str) {
    use std::io::Write;
    let out = std::io::stdout();
    let text = if json {
        serde_json::to_string_pretty(value).unwrap()
    } else {
        human.to_string()
    };
    // tolerate closed pipes
    let _ = writeln!(out.lock(), "{text}");
}

fn run(cli: Cli) -> eds_core::Result<u8> {
    let caps = Caps {
        max_component_size: cli.max_component_size,
        oracle_cap: cli.oracle_cap,
        ..Caps::default()
    };
    match cli.command {
        Command::Analyze { input } => {
            let g = read_graph(&input)?;
            let p = profile(&g, &caps)?;
            let v = p.to_json();
            emit(
                cli.json,
                &v,
                &format!(
                    "n={} m={} meds={} |Q|={} |W|={} |U|={} d={} verdict={}",
                    p.n,
                    p.m,
                    p.meds,
                    p.extendable.len(),
                    p.free.len(),
                    p.uncovered.len(),
                    p.d,
                    v["verdict"]
                ),
            );
            Ok(0)
        }
        Command::Classify { family } => {
            let members = read_family(&family)?;
            let verdict = classify_family(&members, &caps)?;
            let v = verdict.to_json();
            emit(cli.json, &v, &format!("verdict={v}"));
            Ok(match verdict {
                Verdict::NoPolyKernel { .. } => 1,
                _ => 0,
            })
        }
        Command::Atlas { n_max, output } => {
            let rows = atlas(n_max, &caps)?;
            let v = serde_json::to_value(&rows).unwrap();
            let text = serde_json::to_string_pretty(&v).unwrap();
            match output {
                Some(path) => fs::write(path, text)?,
                None => emit(
                    cli.json,
                    &v,
                    &format!("{} connected graphs up to {} vertices", rows.len(), n_max),
                ),
            }
            Ok(0)
        }
        Command::Kernelize {
            input,
            family,
            output,
            general,
        } => {
            let inst = read_instance(&input, read_family(&family)?)?;
            let report = kernelize(&inst, general, &caps)?;
            let code = match &report.outcome {
                KernelOutcome::Reduced(reduced) => {
                    if let Some(path) = &output {
                        fs::write(path, serialize_instance(reduced, None))?;
                    }
                    0
                }
                KernelOutcome::TrivialYes { witness } => {
                    if let Some(path) = &output {
                        fs::write(path, serialize_instance(&inst, Some(witness)))?;
                    }
                    4
                }
            };
            let v = report.to_json();
            emit(
                cli.json,
                &v,
                &format!(
                    "path={} {:?} -> {:?} budget_delta={}",
                    report.path, report.size_before, report.size_after, report.budget_delta
                ),
            );
            Ok(code)
        }
        Command::Solve { input, output } => {
            let (inst, _) = parse_instance(&fs::read_to_string(&input)?)?;
            let answer = decide_eds(&inst.graph, inst.k, &caps)?;
            let yes = answer.is_some();
            let v = serde_json::json!({
                "answer": yes,
                "k": inst.k,
                "witness": answer.as_ref().map(|w| w.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect::<Vec<_>>()),
            });
            if let Some(path) = output {
                fs::write(path, serialize_instance(&inst, answer.as_ref()))?;
            }
            emit(cli.json, &v, &format!("answer={yes}"));
            Ok(if yes { 0 } else { 1 })
        }
        Command::Generate(args) => generate(args, cli.json, cli.seed, &caps),
        Command::Verify {
            input,
            family,
            general,
            batch,
            x_size,
            components,
            density,
        } => {
            let members = read_family(&family)?;
            let mut reports = Vec::new();
            match (input, batch) {
                (Some(path), None) => {
                    let inst = read_instance(&path, members)?;
                    reports.push(verify_kernel(
                        path.to_string_lossy().as_ref(),
                        &inst,
                        general,
                        &caps,
                    )?);
                }
                (None, Some(count)) => {
                    for i in 0..count {
                        let inst = gen_random_instance(
                            &members,
                            x_size,
                            components,
                            density,
                            cli.seed.wrapping_add(i as u64),
                            &caps,
                        )?;
                        reports.push(verify_kernel(&format!("seed{}", cli.seed + i as u64), &inst, general, &caps)?);
                    }
                }
                _ => {
                    return Err(EdsError::InvalidInput(
                        "verify needs exactly one of --input or --batch".into(),
                    ))
                }
            }
            let all_pass = reports.iter().all(|r| r.pass);
            let v = serde_json::to_value(&reports).unwrap();
            emit(
                cli.json,
                &v,
                &format!(
                    "{}/{} pass",
                    reports.iter().filter(|r| r.pass).count(),
                    reports.len()
                ),
            );
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn generate(args: GenerateArgs, json: bool, seed: u64, caps: &Caps) -> eds_core::Result<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let write_instance = |inst: &ModInstance| -> eds_core::Result<()> {
        fs::write(&args.output, serialize_instance(inst, None))?;
        Ok(())
    };
    let manifest_path = args.output.with_extension("manifest.json");
    match args.reduction.as_str() {
        "p3" | "control" | "cost" => {
            let sources: Vec<MccInstance> = (0..args.count.max(1))
                .map(|_| gen_random_mcc(args.mcc_k, args.mcc_n, args.edge_prob, &mut rng))
                .collect();
            let (inst, manifest) = match args.reduction.as_str() {
                "p3" => compose_p3(&sources)?,
                "control" => {
                    let h = read_graph(args.component.as_ref().ok_or_else(|| {
                        EdsError::InvalidInput("--component is required".into())
                    })?)?;
                    let cp = find_control_pair(&h, caps)?.ok_or_else(|| {
                        EdsError::InvalidInput(
                            "component graph has no control pair (family may admit a kernel)"
                                .into(),
                        )
                    })?;
                    compose_control_pair(&h, &cp, &sources, caps)?
                }
                _ => {
                    let h = read_graph(args.component.as_ref().ok_or_else(|| {
                        EdsError::InvalidInput("--component is required".into())
                    })?)?;
                    let strong = strongly_beneficial_sets(&h, caps)?;
                    let largest = strong
                        .iter()
                        .max_by_key(|(set, _)| set.len())
                        .ok_or_else(|| {
                            EdsError::InvalidInput(
                                "component graph has no strongly beneficial set".into(),
                            )
                        })?;
                    compose_cost(&h, &largest.0, &sources, caps)?
                }
            };
            write_instance(&inst)?;
            let v = serde_json::to_value(&manifest).unwrap();
            fs::write(&manifest_path, serde_json::to_string_pretty(&v).unwrap())?;
            emit(json, &v, &format!("wrote {:?} (|X'|={} k'={})", args.output, manifest.x_size, manifest.k_prime));
            Ok(0)
        }
        "sat" => {
            let f = match &args.cnf {
                Some(path) => parse_cnf(&fs::read_to_string(path)?)?,
                None => {
                    let clauses = (0..args.clauses)
                        .map(|_| {
                            [0, 1, 2].map(|_| (rng.gen_range(0..args.vars), rng.gen_bool(0.5)))
                        })
                        .collect();
                    CnfFormula::new(args.vars, clauses)?
                }
            };
            let (g, matching, target) = sat_to_eds(&f)?;
            let inst = ModInstance::new(g, target, vec![], vec![])?;
            fs::write(&args.output, serialize_instance(&inst, Some(&matching)))?;
            let v = serde_json::json!({
                "reduction": "sat",
                "vars": f.n_vars,
                "clauses": f.clauses.len(),
                "graph_n": inst.graph.n(),
                "matching_size": matching.len(),
                "target": target,
            });
            fs::write(&manifest_path, serde_json::to_string_pretty(&v).unwrap())?;
            emit(json, &v, &format!("wrote {:?} (target={target})", args.output));
            Ok(0)
        }
        "vc" => {
            let g = read_graph(args.input.as_ref().ok_or_else(|| {
                EdsError::InvalidInput("--input graph is required".into())
            })?)?;
            let (out, k) = vc_to_eds(&g, args.k)?;
            let inst = ModInstance::new(out, k, vec![], vec![])?;
            write_instance(&inst)?;
            let v = serde_json::json!({
                "reduction": "vc",
                "graph_n": inst.graph.n(),
                "k": k,
            });
            fs::write(&manifest_path, serde_json::to_string_pretty(&v).unwrap())?;
            emit(json, &v, &format!("wrote {:?}", args.output));
            Ok(0)
        }
        "random" => {
            let family = read_family(&args.family)?;
            let inst = gen_random_instance(
                &family,
                args.x_size,
                args.components,
                args.density,
                seed,
                caps,
            )?;
            write_instance(&inst)?;
            let v = serde_json::json!({
                "reduction": "random",
                "graph_n": inst.graph.n(),
                "k": inst.k,
                "x_size": inst.modulator.len(),
            });
            fs::write(&manifest_path, serde_json::to_string_pretty(&v).unwrap())?;
            emit(json, &v, &format!("wrote {:?}", args.output));
            Ok(0)
        }
        _ => unreachable!("clap restricts the value"),
    }
}
