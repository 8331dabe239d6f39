//! `qegs`: command-line access to extensions, solving, sweeps, EWL payoffs,
//! reports and the HTTP service.

use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qegs_core::ewl::UnitaryParams;
use qegs_core::format::{parse_game, serialize_game};
use qegs_core::report::generate_report;
use qegs_core::solver::{Analyses, SolutionSets, SolveResult};
use qegs_core::sweep::{Span, SweepResult};
use qegs_core::{Bimatrix, ClassParam, Error, ExtensionClass, Rational};
use qegs_service::ops;

#[derive(Parser)]
#[command(name = "qegs", version, about = "Exact analysis of EWL quantum extensions of bimatrix games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GameArg {
    /// Game file, or `-` for standard input
    #[arg(long, value_name = "PATH")]
    game: String,
}

#[derive(Subcommand)]
enum Command {
    /// Build a quantum extension of a 2x2 game; prints the game file
    Extend {
        #[command(flatten)]
        game: GameArg,
        #[arg(long, value_name = "A0..E2")]
        class: ExtensionClass,
        /// Value of the class parameter in [0, 1]
        #[arg(long, value_name = "RATIONAL", conflicts_with = "symbolic", allow_hyphen_values = true)]
        param: Option<Rational>,
        /// Keep the class parameter symbolic (the default)
        #[arg(long)]
        symbolic: bool,
        /// Write the game file here instead of standard output
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Accepted for symmetry; the output is always JSON
        #[arg(long)]
        json: bool,
    },
    /// Nash equilibria, maximin and dominated strategies
    Solve {
        #[command(flatten)]
        game: GameArg,
        #[arg(long, value_name = "ne|maximin|dominated|all", default_value = "all")]
        analysis: Analyses,
        /// Substitute this value for the game's parameter first
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        param: Option<Rational>,
        #[arg(long)]
        json: bool,
    },
    /// Exact breakpoints of the solution sets over a parameter range
    Sweep {
        #[command(flatten)]
        game: GameArg,
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        min: Rational,
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        max: Rational,
        #[arg(long, value_name = "ne|maximin|dominated|all", default_value = "all")]
        analysis: Analyses,
        #[arg(long)]
        json: bool,
    },
    /// Expected payoffs of a pair of EWL strategies
    Ewl {
        #[command(flatten)]
        game: GameArg,
        /// θ,α,β of player 1 as multiples of π
        #[arg(long, value_name = "T,A,B", allow_hyphen_values = true)]
        u1: String,
        #[arg(long, value_name = "T,A,B", allow_hyphen_values = true)]
        u2: String,
        /// Read the angles as radians
        #[arg(long)]
        radians: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write a Markdown report
    Report {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        name: String,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Run the HTTP API
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
    },
}

/// Failure of a command: caller input problems exit with 2, the rest with 1.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QEGS_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_game(arg: &GameArg) -> Result<Bimatrix, Failure> {
    let bytes = if arg.game == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        std::fs::read(&arg.game).map_err(|e| Failure::Input(format!("cannot read {}: {e}", arg.game)))?
    };
    Ok(parse_game(&bytes)?)
}

fn print_json(v: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(io::stdout(), "{text}")?;
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Extend {
            game,
            class,
            param,
            symbolic: _,
            out,
            json: _,
        } => {
            let g = read_game(&game)?;
            let ext = ops::extend_game(&g, class, param.map(ClassParam::Value))?;
            let text = serialize_game(&ext);
            match out {
                Some(path) => std::fs::write(&path, text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::Solve {
            game,
            analysis,
            param,
            json,
        } => {
            let g = read_game(&game)?;
            let (solved, result) = ops::solve(&g, analysis, param.as_ref())?;
            if json {
                print_json(&result.to_json())?;
            } else {
                print!("{}", render_solution(&solved, &result));
            }
        }
        Command::Sweep {
            game,
            min,
            max,
            analysis,
            json,
        } => {
            let g = read_game(&game)?;
            let s = ops::sweep(&g, &min, &max, analysis)?;
            if json {
                print_json(&s.to_json())?;
            } else {
                print!("{}", render_sweep(&s));
            }
        }
        Command::Ewl {
            game,
            u1,
            u2,
            radians,
            json,
        } => {
            let g = read_game(&game)?;
            let u1: UnitaryParams = ops::parse_unitary(&u1, radians)?;
            let u2: UnitaryParams = ops::parse_unitary(&u2, radians)?;
            let (payoff, weights) = ops::ewl(&g, &u1, &u2)?;
            if json {
                print_json(&ops::ewl_json(&payoff, &weights))?;
            } else {
                let v = ops::ewl_json(&payoff, &weights);
                let show = |x: &serde_json::Value| x.as_str().map_or_else(|| x.to_string(), str::to_owned);
                let p = &v["payoff"];
                println!("payoff ({}, {})", show(&p[0]), show(&p[1]));
                let w: Vec<String> = v["weights"].as_array().unwrap().iter().map(show).collect();
                println!("weights {}", w.join(", "));
                if !weights.is_exact() {
                    println!("(floating point)");
                }
            }
        }
        Command::Report { game, name, out } => {
            let g = read_game(&game)?;
            let path = generate_report(&g, &name, &out)?;
            println!("{}", path.display());
        }
        Command::Serve { port, bind } => {
            let runtime = tokio::runtime::Runtime::new()?;
            let addr = SocketAddr::new(bind, port);
            eprintln!("serving on http://{addr}");
            runtime.block_on(qegs_service::serve(addr, qegs_service::Config::from_env()))?;
        }
    }
    Ok(())
}

fn label(labels: Option<&[String]>, i: usize) -> String {
    labels.map_or_else(|| (i + 1).to_string(), |l| l[i].clone())
}

fn one_based(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", s.join(", "))
}

/// The matrix with `*` on equilibria, `+` on maximin and `x` on dominated
/// strategies, followed by the sets themselves.
fn render_solution(g: &Bimatrix, r: &SolveResult) -> String {
    let sets = &r.sets;
    let has = |v: &Option<Vec<usize>>, i: usize| v.as_ref().is_some_and(|v| v.contains(&i));
    let marks = |mm: bool, dom: bool| format!("{}{}", if mm { "+" } else { "" }, if dom { "x" } else { "" });

    let mut header = vec![String::new()];
    header.extend((0..g.cols()).map(|j| {
        format!(
            "{}{}",
            label(g.col_labels(), j),
            marks(has(&sets.maximin_cols, j), has(&sets.dominated_cols, j))
        )
    }));
    let mut rows = vec![header];
    for i in 0..g.rows() {
        let mut row = vec![format!(
            "{}{}",
            label(g.row_labels(), i),
            marks(has(&sets.maximin_rows, i), has(&sets.dominated_rows, i))
        )];
        for j in 0..g.cols() {
            let ne = sets
                .nash
                .as_ref()
                .is_some_and(|n| n.iter().any(|p| p.row == i && p.col == j));
            row.push(format!("{}{}", g.entry(i, j), if ne { "*" } else { "" }));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..=g.cols())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out.push('\n');
    out.push_str(&describe_sets(sets));
    if let Some((v1, v2)) = &r.security_levels {
        out.push_str(&format!("security levels: ({v1}, {v2})\n"));
    }
    out
}

fn describe_sets(sets: &SolutionSets) -> String {
    let mut out = String::new();
    if let Some(ne) = &sets.nash {
        let s: Vec<String> = ne.iter().map(ToString::to_string).collect();
        out.push_str(&format!("NE: {{{}}}\n", s.join(", ")));
    }
    if let (Some(r), Some(c)) = (&sets.dominated_rows, &sets.dominated_cols) {
        out.push_str(&format!("dominated rows: {}, cols: {}\n", one_based(r), one_based(c)));
    }
    if let (Some(r), Some(c)) = (&sets.maximin_rows, &sets.maximin_cols) {
        out.push_str(&format!("maximin rows: {}, cols: {}\n", one_based(r), one_based(c)));
    }
    out
}

fn render_sweep(s: &SweepResult) -> String {
    let mut out = format!(
        "parameter {} over [{}, {}], {} breakpoint(s){}\n",
        s.parameter,
        s.lo,
        s.hi,
        s.breakpoints.len(),
        if s.approximate { " (approximate)" } else { "" }
    );
    let indent = |text: String| text.lines().map(|l| format!("  {l}\n")).collect::<String>();
    out.push_str(&format!("{} = {}\n{}", s.parameter, s.lo, indent(describe_sets(&s.at_lo))));
    for seg in &s.segments {
        match &seg.span {
            Span::Open { from, to, .. } => out.push_str(&format!("({from}, {to})\n")),
            Span::Point(x) => out.push_str(&format!("{} = {x}\n", s.parameter)),
        }
        out.push_str(&indent(describe_sets(&seg.sets)));
    }
    out.push_str(&format!("{} = {}\n{}", s.parameter, s.hi, indent(describe_sets(&s.at_hi))));
    out
}

