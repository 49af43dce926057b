//! Command-line front end.
//!
//! Exit codes: 0 on success or a VALID verdict, 1 on violations, infeasible
//! instances or a found counterexample, 2 on usage and precondition errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::discharging::discharging_report;
use crate::gen::{gen_2degenerate, gen_clawfree_3deg, gen_lists, gen_planar_triangulation};
use crate::graph::Graph;
use crate::oracle::{
    oracle_equitable_point_arboricity, oracle_feasible, oracle_list_sweep, DEFAULT_SWEEP_BUDGET,
    DEFAULT_VERTEX_LIMIT,
};
use crate::plane::{trace_faces, RotationSystem};
use crate::solvers::{detect_class, solve_in_class, GraphClassKind};
use crate::verify::{verify_equitable_arboreal, Coloring, ListAssignment};

#[derive(Parser)]
#[command(
    name = "arboeq",
    version,
    about = "Equitable list forest colorings: solve, verify, brute-force, discharge, generate"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance, verify the coloring, and print the verdict.
    Solve(SolveArgs),
    /// Check a coloring against a graph and a list assignment.
    Verify(VerifyArgs),
    /// Exhaustive search at desk scale.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Charge-bookkeeping report for a plane graph.
    Discharge(DischargeArgs),
    /// Emit graph, rotation and list files.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Complete,
    #[value(name = "2deg")]
    TwoDeg,
    Clawfree3,
    Planar,
    Auto,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list file; omit for --class complete together with --n.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Rotation file; validates the embedding and declares planarity.
    #[arg(long)]
    rotation: Option<PathBuf>,
    /// Lists file; mutually exclusive with --random-lists.
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Generate the lists from --universe and --seed instead.
    #[arg(long, default_value_t = false)]
    random_lists: bool,
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// List size; defaults to the class minimum.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = ClassArg::Auto)]
    class: ClassArg,
    /// Attempt k below the class minimum anyway.
    #[arg(long, default_value_t = false)]
    force: bool,
    /// Coloring output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Order of the complete graph when no --graph is given.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact feasibility of a (graph, lists) instance.
    Feasible {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        /// Witness output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest feasible k with identical lists {1..=k}, scanning up to --k.
    Arboricity {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Enumerate all k-lists over {1..=U}, hunting for an infeasible one.
    Sweep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        universe: usize,
    },
}

#[derive(Args)]
struct DischargeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    rotation: PathBuf,
    /// Report output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Generate a graph (and, for planar, its rotation system).
    Graph {
        #[arg(long, value_enum)]
        class: GenClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge-deletion probability for the planar generator.
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        /// Graph output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rotation output path (planar only).
        #[arg(long)]
        rotation: Option<PathBuf>,
    },
    /// Generate a random list assignment for an existing graph.
    Lists {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        universe: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClassArg {
    Complete,
    #[value(name = "2deg")]
    TwoDeg,
    Clawfree3,
    Planar,
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    fn usage<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::parse(&read(path)?).map_err(CliError::usage)
}

fn load_lists(path: &Path) -> Result<ListAssignment, CliError> {
    ListAssignment::parse(&read(path)?).map_err(CliError::usage)
}

fn run_solve(args: SolveArgs) -> CliResult {
    let graph = match (&args.graph, args.n) {
        (Some(path), _) => load_graph(path)?,
        (None, Some(n)) if args.class == ClassArg::Complete => Graph::complete(n),
        _ => {
            return Err(CliError::Usage(
                "need --graph, or --n with --class complete".into(),
            ))
        }
    };

    // A rotation file both validates the embedding and declares planarity.
    let mut planar_declared = args.class == ClassArg::Planar;
    if let Some(rot_path) = &args.rotation {
        let rotation = RotationSystem::parse(&read(rot_path)?).map_err(CliError::usage)?;
        trace_faces(graph.clone(), rotation).map_err(CliError::usage)?;
        planar_declared = true;
    }

    let class = detect_class(&graph, planar_declared);
    let kind = match args.class {
        ClassArg::Complete => GraphClassKind::Complete,
        ClassArg::TwoDeg => GraphClassKind::TwoDegenerate,
        ClassArg::Clawfree3 => GraphClassKind::ClawFreeThreeDegenerate,
        ClassArg::Planar => GraphClassKind::Planar,
        ClassArg::Auto => class.kind,
    };
    let file_lists = match (&args.lists, args.random_lists) {
        (Some(path), false) => Some(load_lists(path)?),
        (None, _) => None,
        (Some(_), true) => {
            return Err(CliError::Usage(
                "--lists and --random-lists are mutually exclusive".into(),
            ))
        }
    };

    // k precedence: explicit flag, then the lists file, then the class
    // minimum.
    let k = match (args.k, &file_lists, kind.default_k_for(&graph)) {
        (Some(k), _, _) => k,
        (None, Some(lists), _) => lists.k(),
        (None, None, Some(k)) => k,
        (None, None, None) => {
            return Err(CliError::Usage(
                "no class minimum available; pass --k explicitly".into(),
            ))
        }
    };

    let lists = match file_lists {
        Some(lists) => lists,
        None if args.random_lists => {
            let universe = args.universe.unwrap_or(2 * k);
            gen_lists(&graph, k, universe, args.seed).map_err(CliError::usage)?
        }
        None => ListAssignment::uniform(graph.vertices(), k).map_err(CliError::usage)?,
    };
    if lists.k() != k {
        return Err(CliError::Usage(format!(
            "lists have size {}, but k = {k} was requested",
            lists.k()
        )));
    }

    let coloring = solve_in_class(&graph, &lists, kind, args.force).map_err(|e| {
        if e.is_precondition() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Failed(format!("solve failed: {e}"))
        }
    })?;
    let verdict = verify_equitable_arboreal(&graph, &lists, &coloring).map_err(CliError::usage)?;
    if let Some(out) = &args.out {
        write_or_print(Some(out), &coloring.to_text())?;
        println!("{verdict}");
    } else {
        print!("{}", coloring.to_text());
        println!("{verdict}");
    }
    Ok(if verdict.ok() { 0 } else { 1 })
}

fn run_verify(args: VerifyArgs) -> CliResult {
    let graph = load_graph(&args.graph)?;
    let lists = load_lists(&args.lists)?;
    let coloring = Coloring::parse(&read(&args.coloring)?).map_err(CliError::usage)?;
    let verdict = verify_equitable_arboreal(&graph, &lists, &coloring).map_err(CliError::usage)?;
    println!("{verdict}");
    Ok(if verdict.ok() { 0 } else { 1 })
}

fn run_oracle(cmd: OracleCommand) -> CliResult {
    match cmd {
        OracleCommand::Feasible { graph, lists, out } => {
            let g = load_graph(&graph)?;
            let lists = load_lists(&lists)?;
            let result =
                oracle_feasible(&g, &lists, DEFAULT_VERTEX_LIMIT).map_err(CliError::usage)?;
            println!(
                "{} (nodes explored: {})",
                if result.feasible {
                    "feasible"
                } else {
                    "infeasible"
                },
                result.nodes_explored
            );
            if let (Some(witness), Some(path)) = (&result.witness, &out) {
                write_or_print(Some(path), &witness.to_text())?;
            }
            Ok(if result.feasible { 0 } else { 1 })
        }
        OracleCommand::Arboricity { graph, k } => {
            let g = load_graph(&graph)?;
            match oracle_equitable_point_arboricity(&g, k, DEFAULT_VERTEX_LIMIT)
                .map_err(CliError::usage)?
            {
                Some(value) => {
                    println!("equitable_point_arboricity {value}");
                    Ok(0)
                }
                None => {
                    println!("equitable_point_arboricity > {k}");
                    Ok(1)
                }
            }
        }
        OracleCommand::Sweep { graph, k, universe } => {
            let g = load_graph(&graph)?;
            match oracle_list_sweep(&g, k, universe, DEFAULT_SWEEP_BUDGET)
                .map_err(CliError::usage)?
            {
                Some(lists) => {
                    println!("counterexample within universe {universe}:");
                    print!("{}", lists.to_text());
                    Ok(1)
                }
                None => {
                    println!("no counterexample within universe {universe}");
                    Ok(0)
                }
            }
        }
    }
}

fn run_discharge(args: DischargeArgs) -> CliResult {
    let graph = load_graph(&args.graph)?;
    let rotation = RotationSystem::parse(&read(&args.rotation)?).map_err(CliError::usage)?;
    let pg = trace_faces(graph, rotation).map_err(CliError::usage)?;
    let report = discharging_report(&pg);
    write_or_print(args.out.as_ref(), &report.to_string())?;
    Ok(0)
}

fn run_gen(cmd: GenCommand) -> CliResult {
    match cmd {
        GenCommand::Graph {
            class,
            n,
            seed,
            p,
            out,
            rotation,
        } => {
            match class {
                GenClassArg::Complete => {
                    write_or_print(out.as_ref(), &Graph::complete(n).to_text())?;
                }
                GenClassArg::TwoDeg => {
                    let g = gen_2degenerate(n, seed).map_err(CliError::usage)?;
                    write_or_print(out.as_ref(), &g.to_text())?;
                }
                GenClassArg::Clawfree3 => {
                    let g = gen_clawfree_3deg(n, seed).map_err(CliError::usage)?;
                    write_or_print(out.as_ref(), &g.to_text())?;
                }
                GenClassArg::Planar => {
                    let (g, rot) = gen_planar_triangulation(n, seed, p).map_err(CliError::usage)?;
                    write_or_print(out.as_ref(), &g.to_text())?;
                    if let Some(rot_path) = &rotation {
                        write_or_print(Some(rot_path), &rot.to_text())?;
                    }
                }
            }
            Ok(0)
        }
        GenCommand::Lists {
            graph,
            k,
            universe,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let lists = gen_lists(&g, k, universe, seed).map_err(CliError::usage)?;
            write_or_print(out.as_ref(), &lists.to_text())?;
            Ok(0)
        }
    }
}

/// Parses the process arguments and runs the selected subcommand,
/// returning the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
        Command::Oracle(cmd) => run_oracle(cmd),
        Command::Discharge(args) => run_discharge(args),
        Command::Gen(cmd) => run_gen(cmd),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
