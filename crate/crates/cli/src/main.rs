//! `distinguish`: generate, transform, solve and verify instances.
//!
//! Exit status: 0 for yes/pass, 1 for no/fail, 2 for usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distinguish::codes::{brute_force_min_with, first_violation, BruteForce, BruteForceOptions};
use distinguish::decomposition::build_path_decomposition;
use distinguish::fpt::{fpt_metric_dimension_with, FptOptions, FptOutcome};
use distinguish::generators::{make_family, Family, FamilySpec, Fixture};
use distinguish::interval_model::{random_model, RandomStyle};
use distinguish::reductions::{self, build_reduction, matching_from_text, standard_solution, GadgetKind, ThreeDMInstance};
use distinguish::{Graph, IntModel, Model, ProblemKind, VertexSet};
use serde_json::json;

#[derive(Parser)]
#[command(name = "distinguish", version, about = "Distinguishing sets on interval graphs")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of the text formats.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the solvers.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Random interval model.
    GenRandom {
        #[arg(long)]
        n: usize,
        /// uniform-endpoints, unit-length, long-thin or long-thin:<w>.
        #[arg(long, default_value = "uniform-endpoints")]
        style: String,
    },
    /// Named fixture: path and clique give models, cycle-graph and
    /// chordal-fig7 give edge lists.
    GenFamily {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        /// Where to write the marked vertices of chordal-fig7.
        #[arg(long)]
        black_out: Option<PathBuf>,
    },
    /// Hardness construction from a 3-dimensional matching instance.
    GenReduction {
        #[arg(long, value_enum)]
        kind: GadgetArg,
        #[arg(long)]
        instance: PathBuf,
        /// Perfect matching (triple indices) to certify.
        #[arg(long)]
        matching: Option<PathBuf>,
        /// Output prefix: writes PREFIX.model, PREFIX.roles.json,
        /// PREFIX.manifest.json and, with a matching, PREFIX.solution.
        #[arg(long)]
        out: PathBuf,
    },
    /// Diameter-2 transformation of an edge list.
    Transform {
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long)]
        input: PathBuf,
    },
    /// Endpoint-sweep path decomposition of a model.
    Decompose {
        #[arg(long)]
        model: PathBuf,
        /// Decompose the power of the model instead.
        #[arg(long)]
        power: Option<u32>,
    },
    /// Order-preserving model of the d-th power.
    Power {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// Minimum solution of at most k vertices.
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum, default_value = "brute")]
        algo: Algo,
        /// Budget; defaults to the number of vertices.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Check a vertex set against a problem.
    Verify {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Per-event configuration counts of the metric dimension DP, as CSV.
    TraceDp {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Interval model (text or JSON).
    #[arg(long)]
    model: Option<PathBuf>,
    /// Edge list.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Md,
    Ld,
    Id,
    Old,
}

impl From<ProblemArg> for ProblemKind {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Md => ProblemKind::Md,
            ProblemArg::Ld => ProblemKind::Ld,
            ProblemArg::Id => ProblemKind::Id,
            ProblemArg::Old => ProblemKind::Old,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    Ld,
    Id,
    Old,
}

impl From<GadgetArg> for GadgetKind {
    fn from(g: GadgetArg) -> Self {
        match g {
            GadgetArg::Ld => GadgetKind::P4Ld,
            GadgetArg::Id => GadgetKind::P5Id,
            GadgetArg::Old => GadgetKind::P6Old,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Brute,
    Fpt,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformOp {
    F1,
    F2,
    F3,
}

/// Input or validation problem; reported on stderr with exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<Model, Failure> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(&text)?;
        Model::from_json(&value, false)
    } else {
        Model::from_text(&text, false)
    };
    parsed.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::from_edge_list(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_input(input: &GraphInput) -> Result<(Graph, Option<Model>), Failure> {
    match (&input.model, &input.graph) {
        (Some(m), _) => {
            let model = load_model(m)?;
            Ok((model.build_graph(), Some(model)))
        }
        (None, Some(g)) => Ok((load_graph(g)?, None)),
        (None, None) => unreachable!("clap requires one input"),
    }
}

fn print_model<C: distinguish::Coordinate>(model: &distinguish::IntervalModel<C>, as_json: bool) {
    if as_json {
        println!("{}", model.to_json());
    } else {
        print!("{}", model.to_text());
    }
}

fn print_solution(size: usize, witness: &VertexSet, as_json: bool) {
    if as_json {
        println!("{}", json!({ "status": "yes", "size": size, "witness": witness.members() }));
    } else {
        println!("size {size}");
        print!("{}", witness.to_text());
    }
}

fn print_no(reason: &str, as_json: bool) {
    if as_json {
        println!("{}", json!({ "status": "no", "reason": reason }));
    } else {
        println!("no ({reason})");
    }
}

fn run(cli: Cli) -> Outcome {
    let as_json = cli.json;
    match cli.command {
        Command::GenRandom { n, style } => {
            if n == 0 {
                return Err(Failure("--n must be at least 1".into()));
            }
            let style: RandomStyle = style.parse()?;
            let model: IntModel = random_model(n, cli.seed, style);
            print_model(&model, as_json);
            Ok(true)
        }
        Command::GenFamily { family, size, black_out } => {
            let family: Family = family.parse()?;
            match make_family(FamilySpec { family, size })? {
                Fixture::Model(m) => print_model(&m, as_json),
                Fixture::Graph { graph, black } => {
                    print!("{}", graph.to_edge_list());
                    if let (Some(path), Some(black)) = (black_out, black) {
                        write(&path, &black.to_text())?;
                    }
                }
            }
            Ok(true)
        }
        Command::GenReduction { kind, instance, matching, out } => {
            let inst = ThreeDMInstance::from_text(&read(&instance)?)
                .map_err(|e| Failure(format!("{}: {e}", instance.display())))?;
            let built = build_reduction(&inst, kind.into())?;
            let with_ext = |ext: &str| PathBuf::from(format!("{}.{ext}", out.display()));
            write(&with_ext("model"), &built.model.to_text())?;
            write(&with_ext("roles.json"), &serde_json::to_string_pretty(&built.roles_json())?)?;
            write(&with_ext("manifest.json"), &serde_json::to_string_pretty(&built.manifest_json())?)?;
            println!("order {}", built.order);
            println!("expected_solution_size {}", built.expected_solution_size);
            if let Some(path) = matching {
                let chosen = matching_from_text(&read(&path)?)?;
                let s = standard_solution(&built, &chosen)?;
                write(&with_ext("solution"), &s.to_text())?;
                let ok = distinguish::codes::is_valid(&built.model.build_graph(), built.gadget.problem(), &s);
                println!("certified {} {}", s.len(), if ok { "pass" } else { "fail" });
                return Ok(ok);
            }
            Ok(true)
        }
        Command::Transform { op, input } => {
            let g = load_graph(&input)?;
            let h = match op {
                TransformOp::F1 => reductions::f1(&g),
                TransformOp::F2 => reductions::f2(&g),
                TransformOp::F3 => reductions::f3(&g),
            };
            print!("{}", h.to_edge_list());
            Ok(true)
        }
        Command::Decompose { model, power } => {
            let mut m = load_model(&model)?;
            if let Some(d) = power {
                m = m.power_model(d)?;
            }
            let dec = build_path_decomposition(&m)?;
            if as_json {
                let events: Vec<_> = dec
                    .events()
                    .iter()
                    .zip(dec.bags())
                    .map(|(e, bag)| json!({ "event": format!("{e:?}"), "bag": bag }))
                    .collect();
                println!("{}", json!({ "width": dec.width(), "events": events }));
            } else {
                print!("{}", dec.dump());
            }
            Ok(true)
        }
        Command::Power { model, d } => {
            let m = load_model(&model)?;
            print_model(&m.power_model(d)?, as_json);
            Ok(true)
        }
        Command::Solve { problem, algo, k, input } => {
            let kind = ProblemKind::from(problem);
            let (graph, model) = load_input(&input)?;
            let k = k.unwrap_or(graph.n());
            match algo {
                Algo::Fpt => {
                    if kind != ProblemKind::Md {
                        return Err(Failure("the fpt algorithm solves metric dimension only".into()));
                    }
                    let model = model.ok_or_else(|| Failure("the fpt algorithm needs --model".into()))?;
                    let opts = FptOptions { threads: cli.threads, trace: false };
                    match fpt_metric_dimension_with(&model, k, &opts)?.outcome {
                        FptOutcome::Found(w) => {
                            print_solution(w.len(), &w, as_json);
                            Ok(true)
                        }
                        FptOutcome::Exceeded | FptOutcome::EarlyReject { .. } => {
                            print_no("k exceeded", as_json);
                            Ok(false)
                        }
                    }
                }
                Algo::Brute => {
                    if graph.n() > distinguish::codes::BRUTE_FORCE_MAX_N {
                        return Err(Failure(format!(
                            "brute force handles at most {} vertices",
                            distinguish::codes::BRUTE_FORCE_MAX_N
                        )));
                    }
                    let opts = BruteForceOptions { threads: cli.threads, ..Default::default() };
                    match brute_force_min_with(&graph, kind, k, opts) {
                        BruteForce::Found(w) => {
                            print_solution(w.len(), &w, as_json);
                            Ok(true)
                        }
                        BruteForce::BudgetExceeded => {
                            print_no("k exceeded", as_json);
                            Ok(false)
                        }
                        BruteForce::Impossible(why) => {
                            print_no(&format!("no solution exists: {why}"), as_json);
                            Ok(false)
                        }
                    }
                }
            }
        }
        Command::Verify { problem, set, input } => {
            let kind = ProblemKind::from(problem);
            let (graph, _) = load_input(&input)?;
            let s = VertexSet::from_text(&read(&set)?, graph.n())
                .map_err(|e| Failure(format!("{}: {e}", set.display())))?;
            let violation = first_violation(&graph, kind, &s);
            if as_json {
                println!(
                    "{}",
                    json!({ "valid": violation.is_none(), "violation": violation.map(|v| v.to_string()) })
                );
            } else {
                match &violation {
                    None => println!("pass"),
                    Some(v) => println!("fail: {v}"),
                }
            }
            Ok(violation.is_none())
        }
        Command::TraceDp { model, k } => {
            let m = load_model(&model)?;
            let opts = FptOptions { threads: cli.threads, trace: true };
            let report = fpt_metric_dimension_with(&m, k, &opts)?;
            print!("{}", report.trace_csv());
            Ok(report.size().is_some())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
