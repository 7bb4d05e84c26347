use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twovc::ear::EarDecomposition;
use twovc::emit::{write_dot, write_file, write_report, write_trace};
use twovc::gadget::degree2_to_k4;
use twovc::generate::{generate_instance, InstanceKind, LiftBase};
use twovc::io::{parse_graph, read_graph, serialize_graph, Format};
use twovc::oracle::{opt_2vcss_bruteforce, DEFAULT_OPT_GUARD};
use twovc::{approximate_2vcss, Error, PipelineConfig};

#[derive(Parser)]
#[command(name = "twovc", version, about = "Sparse 2-vertex-connected spanning subgraphs via ear decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a 2-vertex-connected spanning subgraph of a graph file.
    Solve {
        file: PathBuf,
        /// `edgelist` or `dimacs`; detected from the content when omitted.
        #[arg(long)]
        format: Option<Format>,
        /// Also compute the exact optimum (exponential; small graphs only).
        #[arg(long)]
        oracle: bool,
        /// Exit with status 3 if any bound check fails.
        #[arg(long)]
        check_claims: bool,
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting ear decomposition as JSON: `{"root": r, "ears": [[..], ..]}`.
        #[arg(long, value_name = "PATH")]
        init: Option<PathBuf>,
        /// Edge limit for the exact even-ear search.
        #[arg(long, default_value_t = PipelineConfig::default().phi_guard)]
        phi_guard: usize,
        /// Edge limit for --oracle.
        #[arg(long, default_value_t = DEFAULT_OPT_GUARD)]
        oracle_guard: usize,
    },
    /// Generate an instance and print it.
    ///
    /// Kinds: `regular3 N`, `wheel K`, `hypercube D`, `named NAME`,
    /// `gadget-lift cycle K | named NAME | cubic N S | sparse N M`.
    Gen {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "edgelist")]
        format: Format,
    },
    /// Replace degree-2 vertices by K4 gadgets and print the result in the input format.
    Gadget {
        file: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        /// Write the gadget map as JSON.
        #[arg(long, value_name = "PATH")]
        map: Option<PathBuf>,
    },
    /// Exact minimum 2-vertex-connected spanning subgraph by exhaustive search.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long, default_value_t = DEFAULT_OPT_GUARD)]
        guard: usize,
    },
}

/// Exit statuses: 1 infeasible input, 2 unreadable input, 3 internal failure.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NotTwoConnected
        | Error::MinDegreeTooLow { .. }
        | Error::InstanceTooLarge { .. }
        | Error::GenerationFailed { .. } => 1,
        Error::Parse { .. }
        | Error::NotSimple(_)
        | Error::VertexOutOfRange { .. }
        | Error::Io { .. }
        | Error::Json(_)
        | Error::PreconditionViolated(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn read_text(path: &Path) -> twovc::Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_init(path: &Path) -> twovc::Result<EarDecomposition> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

fn run(command: Command) -> twovc::Result<u8> {
    match command {
        Command::Solve {
            file,
            format,
            oracle,
            check_claims,
            emit_dot,
            report,
            trace,
            seed,
            init,
            phi_guard,
            oracle_guard,
        } => {
            let g = read_graph(&file, format)?;
            let config = PipelineConfig {
                phi_guard,
                oracle_guard: oracle.then_some(oracle_guard),
                seed,
                init: init.as_deref().map(read_init).transpose()?,
                ..PipelineConfig::default()
            };
            let mut out = approximate_2vcss(&g, &config)?;
            if let Some(path) = &trace {
                write_trace(path, &out.trace)?;
                out.report.trace_path = Some(path.display().to_string());
            }
            if let Some(path) = &report {
                write_report(path, &out.report)?;
            }
            if let Some(path) = &emit_dot {
                write_dot(path, &g, &out.decomposition)?;
            }
            let r = &out.report;
            let mut summary = format!(
                "n={} m={} output_edges={} phi={} certified={} pi={} l_phi={}",
                r.n, r.m, r.output_edges, r.phi, r.phi_certified, r.pi, r.l_phi
            );
            if let (Some(opt), Some(ratio)) = (r.opt, r.ratio) {
                summary.push_str(&format!(" opt={opt} ratio={ratio:.4}"));
            }
            println!("{summary}");
            let violations = out.claim_violations();
            if check_claims && !violations.is_empty() {
                for v in violations {
                    eprintln!(
                        "violated {} (ear {:?}): {} vs {} (scaled by 4)",
                        v.claim, v.ear, v.lhs, v.rhs
                    );
                }
                return Ok(3);
            }
            Ok(0)
        }
        Command::Gen {
            kind,
            params,
            seed,
            format,
        } => {
            let kind = parse_kind(&kind, &params)?;
            let g = generate_instance(&kind, seed)?;
            print!("{}", serialize_graph(&g, format));
            Ok(0)
        }
        Command::Gadget { file, format, map } => {
            let text = read_text(&file)?;
            let format = format.unwrap_or_else(|| Format::detect(&text));
            let g = parse_graph(&text, format)?;
            let (lifted, gadgets) = degree2_to_k4(&g)?;
            if let Some(path) = map {
                write_file(&path, &(serde_json::to_string_pretty(&gadgets)? + "\n"))?;
            }
            print!("{}", serialize_graph(&lifted, format));
            Ok(0)
        }
        Command::Oracle {
            file,
            format,
            guard,
        } => {
            let g = read_graph(&file, format)?;
            let sol = opt_2vcss_bruteforce(&g, guard)?;
            println!("opt={}", sol.size);
            for id in sol.witness {
                let (u, v) = g.edge(id);
                println!("{u} {v}");
            }
            Ok(0)
        }
    }
}

fn parse_kind(kind: &str, params: &[String]) -> twovc::Result<InstanceKind> {
    let bad = || Error::PreconditionViolated(format!("bad parameters {params:?} for kind {kind:?}"));
    let num = |i: usize| -> twovc::Result<usize> {
        params.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad)
    };
    let text = |i: usize| -> twovc::Result<String> { params.get(i).cloned().ok_or_else(bad) };
    Ok(match kind {
        "regular3" => InstanceKind::Regular3 { n: num(0)? },
        "wheel" => InstanceKind::Wheel { spokes: num(0)? },
        "hypercube" => InstanceKind::Hypercube { dim: num(0)? as u32 },
        "named" => InstanceKind::Named(text(0)?),
        "gadget-lift" => {
            let base = match params.first().map(String::as_str) {
                Some("cycle") => LiftBase::Cycle(num(1)?),
                Some("named") => LiftBase::Named(text(1)?),
                Some("cubic") => LiftBase::SubdividedCubic {
                    n: num(1)?,
                    subdivisions: num(2)?,
                },
                Some("sparse") => LiftBase::Sparse { n: num(1)?, m: num(2)? },
                _ => return Err(bad()),
            };
            InstanceKind::GadgetLift(base)
        }
        other => {
            return Err(Error::PreconditionViolated(format!(
                "unknown kind {other:?}; expected regular3, wheel, hypercube, named or gadget-lift"
            )))
        }
    })
}
