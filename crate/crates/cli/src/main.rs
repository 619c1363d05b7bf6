use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use regmatch_cli::{
    cmd_ak_table, cmd_cd, cmd_ladder, cmd_necklace, cmd_poly, cmd_polytope, cmd_remez, cmd_verify,
    lambda_grid, named_graph, parse_rational, read_graph6, read_ladder, CliError, CliResult, Format, Labelled, Report,
    Sweep,
};

#[derive(Parser)]
#[command(name = "regmatch", version, about = "Matching polynomials of regular graphs: sweeps and tables")]
struct Cli {
    /// Starting working precision in bits for certified comparisons.
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// File of graph6 lines; `-` reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl GraphInput {
    fn read(&self) -> CliResult<Vec<Labelled>> {
        match &self.input {
            None => Ok(Vec::new()),
            Some(p) => read_graph6(&read_source(p)?),
        }
    }
}

fn read_source(p: &PathBuf) -> CliResult<String> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(p)?)
    }
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of M_G(λ) for each graph6 line.
    Poly {
        /// graph6 strings; with none, lines are read from --input or stdin.
        graphs: Vec<String>,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Regenerate the 2a_k table for K_{d+1}, T_d and the necklaces N_3, N_2.
    AkTable {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long = "k", default_value_t = 10)]
        k: usize,
    },
    /// Certify the per-vertex log inequality against K_{d+1}.
    Verify {
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Sweep every connected d-regular graph with at most this many vertices.
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        input: GraphInput,
        /// λ values (`p/q` or decimal); repeatable.
        #[arg(long = "lambda", value_parser = rational, allow_hyphen_values = true)]
        lambdas: Vec<BigRational>,
        /// Add the grid step, 2·step, ... up to --grid-max.
        #[arg(long, value_parser = rational)]
        grid_step: Option<BigRational>,
        #[arg(long, value_parser = rational, default_value = "0.3575")]
        grid_max: BigRational,
        /// Add the K_{d+1} necklaces N_2..N_K.
        #[arg(long, default_value_t = 0)]
        necklaces: usize,
    },
    /// Run the Remez ladder for cubic graphs and check coverage.
    Ladder {
        /// File with one A per line; defaults to the built-in ladder.
        #[arg(long)]
        ladder: Option<PathBuf>,
        #[arg(long, value_parser = rational, default_value = "1/144")]
        base_cap: BigRational,
        #[arg(long, value_parser = rational, default_value = "0.3575")]
        target: BigRational,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Best uniform polynomial approximation of ln(1+x) on [0, A].
    Remez {
        #[arg(long, value_parser = rational)]
        a: BigRational,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Certified brackets of the critical constants c_d for odd d.
    Cd {
        #[arg(long, default_value_t = 15)]
        dmax: usize,
        #[arg(long, value_parser = rational, default_value = "1/10000000000")]
        width: BigRational,
    },
    /// Transfer matrix and trace identity for necklaces of a graph.
    Necklace {
        /// Named graph (K4, K3,3, C5, prism, petersen, Q3, DN3, circ8:1,2) or graph6.
        #[arg(long, default_value = "K4")]
        graph: String,
        /// Cut edge as `u,v`.
        #[arg(long, default_value = "0,1")]
        edge: String,
        #[arg(long = "k", value_delimiter = ',', default_value = "2,3,4")]
        ks: Vec<usize>,
        #[arg(long, value_parser = rational)]
        lambda: Option<BigRational>,
    },
    /// Matching bound and fractional perfect matching for even d.
    Polytope {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        input: GraphInput,
    },
}

fn graph_arg(s: &str) -> CliResult<regmatch::Graph> {
    named_graph(s).or_else(|_| regmatch::graph::parse_graph6(s).map_err(|source| CliError::Input { line: 1, source }))
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Poly { graphs, input } => {
            let gs = if !graphs.is_empty() {
                read_graph6(&graphs.join("\n"))?
            } else if input.input.is_some() {
                input.read()?
            } else {
                read_graph6(&read_source(&PathBuf::from("-"))?)?
            };
            Ok(cmd_poly(&gs))
        }
        Command::AkTable { d, k } => cmd_ak_table(*d, *k),
        Command::Verify {
            d,
            nmax,
            input,
            lambdas,
            grid_step,
            grid_max,
            necklaces,
        } => {
            let mut ls = lambdas.clone();
            if let Some(step) = grid_step {
                ls.extend(lambda_grid(step, grid_max)?);
            }
            let inputs = input.read()?;
            if nmax.is_none() && inputs.is_empty() && *necklaces < 2 {
                return Err(CliError::Usage("verify needs --nmax, --input or --necklaces".into()));
            }
            cmd_verify(&Sweep {
                d: *d,
                nmax: *nmax,
                inputs,
                lambdas: ls,
                necklaces: *necklaces,
                precision: cli.precision_bits,
            })
        }
        Command::Ladder {
            ladder,
            base_cap,
            target,
            tol,
        } => {
            let values = match ladder {
                Some(p) => read_ladder(&read_source(p)?)?,
                None => Vec::new(),
            };
            cmd_ladder(&values, base_cap, target, *tol)
        }
        Command::Remez { a, degree, tol } => cmd_remez(a, *degree, *tol),
        Command::Cd { dmax, width } => cmd_cd(*dmax, width),
        Command::Necklace { graph, edge, ks, lambda } => {
            let g = graph_arg(graph)?;
            let bad = || CliError::Usage(format!("edge must be `u,v`, got {edge:?}"));
            let (u, v) = edge.split_once(',').ok_or_else(bad)?;
            let e = (u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?);
            cmd_necklace(&g, e, ks, lambda.as_ref())
        }
        Command::Polytope { d, nmax, input } => {
            let inputs = input.read()?;
            if nmax.is_none() && inputs.is_empty() {
                return Err(CliError::Usage("polytope needs --nmax or --input".into()));
            }
            cmd_polytope(*d, *nmax, &inputs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
