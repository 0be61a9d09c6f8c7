use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pohpp::cost::DisplayCost;
use pohpp::format::{emit_instance_with_comments, parse_matrix, parse_mcp};
use pohpp::generate::gadget_comments;
use pohpp::reductions::{bipartite_pohpp_encode, matrix_to_poset, mcp_to_pohpp};
use pohpp::{
    generate, parse_instance_file, solve, tsppc_reduce, verify_solution, GenKind, GenParams,
    Instance, InstanceStats, Status, Strategy, DEFAULT_STATE_BUDGET,
};

/// Solvers for Hamiltonian paths that respect a partial order.
#[derive(Parser)]
#[command(name = "pohpp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a cheapest ordered Hamiltonian path.
    Solve(SolveArgs),
    /// Print structural statistics of an instance.
    Info {
        file: PathBuf,
        /// Print the graph in Graphviz format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Check a candidate path and print its cost.
    Verify {
        file: PathBuf,
        /// Whitespace-separated vertex sequence.
        #[arg(long)]
        path: String,
    },
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Build instances from hardness constructions.
    #[command(subcommand)]
    Gadget(GadgetCommand),
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Maximum number of DP states.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: usize,
    /// Also write the path, one line of vertices, to this file.
    #[arg(long)]
    path_out: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Auto,
    Oracle,
    Width,
    Dlo,
    Outerplanar,
}

impl Algo {
    fn strategy(self) -> Option<Strategy> {
        match self {
            Algo::Auto => None,
            Algo::Oracle => Some(Strategy::Oracle),
            Algo::Width => Some(Strategy::Width),
            Algo::Dlo => Some(Strategy::Dlo),
            Algo::Outerplanar => Some(Strategy::Outerplanar),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// random, bipartite, split, outerplanar or gadget.
    kind: GenKind,
    #[arg(long)]
    seed: u64,
    #[arg(short = 'n', long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0.1)]
    order_density: f64,
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    #[arg(long, default_value_t = 0.0)]
    delete: f64,
    #[arg(short = 'k', long, default_value_t = 2)]
    k: usize,
    #[arg(short = 'q', long, default_value_t = 2)]
    q: usize,
    #[arg(long)]
    weighted: bool,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Multicolored clique graph to ordered path instance.
    Mcp {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Tour with precedence from `start` to ordered path instance.
    Tsppc {
        file: PathBuf,
        #[arg(long)]
        start: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// 0/1 matrix to complete bipartite instance.
    Bipartite {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Info { file, dot } => {
            let inst = load(&file)?;
            if dot {
                print!("{}", inst.graph().to_dot());
            } else {
                print_stats(&InstanceStats::of(&inst));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, path } => {
            let inst = load(&file)?;
            let seq = parse_path(&path)?;
            match verify_solution(&inst, &seq) {
                Ok(p) => {
                    println!("VALID cost {}", DisplayCost(&p.cost));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("INVALID {e}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Gen(args) => {
            let params = GenParams {
                n: args.n,
                p: args.p,
                order_density: args.order_density,
                blocks: args.blocks,
                delete: args.delete,
                k: args.k,
                q: args.q,
                weighted: args.weighted,
            };
            let g = generate(args.kind, &params, args.seed)?;
            write_out(
                args.output.as_deref(),
                &emit_instance_with_comments(&g.instance, &g.comments),
            )
        }
        Command::Gadget(GadgetCommand::Mcp { file, output }) => {
            let mcp = parse_mcp(&read(&file)?)?;
            let (inst, layout) = mcp_to_pohpp(&mcp)?;
            let comments = gadget_comments(&mcp, &layout.names());
            write_out(
                output.as_deref(),
                &emit_instance_with_comments(&inst, &comments),
            )
        }
        Command::Gadget(GadgetCommand::Tsppc {
            file,
            start,
            output,
        }) => {
            let inst = load(&file)?;
            let reduced = tsppc_reduce(&inst, start)?;
            let comments = [format!("vertex {} is a copy of {start}", inst.n())];
            write_out(
                output.as_deref(),
                &emit_instance_with_comments(&reduced, &comments),
            )
        }
        Command::Gadget(GadgetCommand::Bipartite { file, output }) => {
            let m = parse_matrix(&read(&file)?)?;
            let inst = bipartite_pohpp_encode(&matrix_to_poset(&m), None);
            let n = m.n();
            let comments = [format!("A = 0..{n}, B = {n}..{}", 2 * n)];
            write_out(
                output.as_deref(),
                &emit_instance_with_comments(&inst, &comments),
            )
        }
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode> {
    let inst = load(&args.file)?;
    let report = solve(&inst, args.algo.strategy(), args.budget)?;
    if let (Some(out), Some(path)) = (&args.path_out, &report.path) {
        fs::write(out, format!("{}\n", join(path)))
            .with_context(|| format!("writing {}", out.display()))?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        match report.status {
            Status::Feasible => println!("FEASIBLE"),
            Status::Infeasible => println!("INFEASIBLE"),
        }
        if let (Some(cost), Some(path)) = (&report.cost, &report.path) {
            println!("cost {}", DisplayCost(cost));
            println!("path {}", join(path));
        }
        println!("algorithm {}", report.algorithm.name());
        eprintln!("time {} ms", report.millis);
    }
    Ok(match report.status {
        Status::Feasible => ExitCode::SUCCESS,
        Status::Infeasible => ExitCode::from(2),
    })
}

fn print_stats(s: &InstanceStats) {
    println!("n {}", s.n);
    println!("m {}", s.m);
    println!("width {}", s.width);
    println!("height {}", s.height);
    println!("dlo {}", s.dlo);
    println!("outerplanar {}", s.outerplanar);
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Instance> {
    Ok(parse_instance_file(path)?)
}

fn parse_path(text: &str) -> Result<Vec<usize>> {
    let seq = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad vertex `{t}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    if seq.is_empty() {
        bail!("empty path");
    }
    Ok(seq)
}

fn join(path: &[usize]) -> String {
    path.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_out(output: Option<&Path>, text: &str) -> Result<ExitCode> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
