use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qbg_core::diagrams::{
    equations, equations_with_x, find_flat, pairs, render_diagram, tilted_rothe, DiagramKind,
    EquationSet,
};
use qbg_core::geom::{member_t_plucker, sample_in_open_stratum, stratum, Flag, RationalMatrix};
use qbg_core::qbg::{formula_weight, path_length};
use qbg_core::tilted::{interval, interval_graph_free};
use qbg_core::verify::{self, Suite, VerifyOptions};
use qbg_core::{Error, Format, Permutation, QuantumBruhatGraph, ShiftSequence};

#[derive(Parser)]
#[command(
    name = "qbg",
    version,
    about = "Quantum Bruhat graph and tilted Richardson toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length and minimal weight of paths u -> v.
    Dist(DistArgs),
    /// Export the whole graph for S_n.
    Graph(GraphArgs),
    /// Members of the tilted interval [u, v] by rank.
    Interval(IntervalArgs),
    /// Tilted Rothe diagrams and the Plücker equations they define.
    Diagram(DiagramArgs),
    /// Locate the open stratum of T_{u,v} containing a flag.
    Stratify(StratifyArgs),
    /// Write a random flag from the open stratum of (u, v).
    Sample(SampleArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DistArgs {
    u: String,
    v: String,
    /// Closed formula from lattice path depths (default).
    #[arg(long, conflicts_with_all = ["oracle", "both"])]
    formula: bool,
    /// Breadth-first search on the graph (n <= 7).
    #[arg(long, conflicts_with = "both")]
    oracle: bool,
    /// Run both and report whether they agree.
    #[arg(long)]
    both: bool,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "dot")]
    format: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IntervalArgs {
    u: String,
    v: String,
    /// Also write the Hasse diagram.
    #[arg(long)]
    hasse: bool,
    #[arg(long, default_value = "dot")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    u: String,
    v: String,
    /// `auto` for the flat sequence, or a comma list a_1,...,a_{n-1}.
    #[arg(long, default_value = "auto")]
    a: String,
    /// A coatom x of [u, v]; adds the equations of the coatom stratum.
    #[arg(long)]
    x: Option<String>,
}

#[derive(Args)]
struct StratifyArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    u: String,
    #[arg(long)]
    v: String,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    u: String,
    #[arg(long)]
    v: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

type CliResult = Result<ExitCode, CliError>;

/// Either a literal permutation or `id` / `w0`, optionally sized as `id:5`.
fn resolve(token: &str, n: Option<usize>) -> Result<Permutation, Error> {
    let (name, size) = match token.split_once(':') {
        Some((name, size)) => {
            let size = size.parse::<usize>().map_err(|_| Error::Parse {
                token: token.to_string(),
                reason: "size after ':' must be a number".into(),
            })?;
            (name, Some(size))
        }
        None => (token, None),
    };
    let symbolic = |make: fn(usize) -> Permutation| match size.or(n) {
        Some(k) if k > 0 => Ok(make(k)),
        _ => Err(Error::Precondition(format!(
            "cannot infer n for {token:?}; write it as {name}:N"
        ))),
    };
    let w = match name {
        "id" | "e" => symbolic(Permutation::identity)?,
        "w0" => symbolic(Permutation::longest)?,
        _ => token.parse::<Permutation>()?,
    };
    if let Some(k) = size.filter(|&k| k != w.n()) {
        return Err(Error::SizeMismatch(format!(
            "{token} has n = {}, not {k}",
            w.n()
        )));
    }
    Ok(w)
}

fn is_symbolic(token: &str) -> bool {
    let name = token.split(':').next().unwrap_or(token);
    matches!(name, "id" | "e" | "w0") && !token.contains(':')
}

/// Parse several permutation arguments that must share `n`.
fn perms(tokens: &[&str]) -> Result<Vec<Permutation>, Error> {
    perms_or(tokens, None)
}

/// As `perms`, with `fallback` sizing `id` / `w0` when no argument is literal.
fn perms_or(tokens: &[&str], fallback: Option<usize>) -> Result<Vec<Permutation>, Error> {
    let mut n = fallback;
    for t in tokens {
        if !is_symbolic(t) {
            n = Some(resolve(t, None)?.n());
            break;
        }
    }
    let out = tokens
        .iter()
        .map(|t| resolve(t, n))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = out.iter().find(|w| w.n() != out[0].n()) {
        return Err(Error::SizeMismatch(format!(
            "{} has n = {} but {} has n = {}",
            out[0],
            out[0].n(),
            w,
            w.n()
        )));
    }
    Ok(out)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    let text = text.as_str();
    let (path, result) = match out {
        Some(path) => (path, fs::write(path, text)),
        None => (
            Path::new("<stdout>"),
            std::io::stdout().lock().write_all(text.as_bytes()),
        ),
    };
    result.map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn dist(args: &DistArgs) -> CliResult {
    let p = perms(&[&args.u, &args.v])?;
    let (u, v) = (&p[0], &p[1]);
    let formula = || -> Result<String, Error> {
        Ok(format!(
            "ell={} weight={}",
            path_length(u, v)?,
            formula_weight(u, v)?
        ))
    };
    let oracle = || -> Result<String, Error> {
        let g = QuantumBruhatGraph::build(u.n())?;
        let (len, weight) = g.oracle_distance(u, v)?;
        Ok(format!("ell={len} weight={weight}"))
    };
    if args.both {
        let (a, b) = (formula()?, oracle()?);
        println!("formula: {a}");
        println!("oracle: {b}");
        let agree = a == b;
        println!("agree: {}", if agree { "yes" } else { "no" });
        return Ok(if agree {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        });
    }
    println!("{}", if args.oracle { oracle()? } else { formula()? });
    Ok(ExitCode::SUCCESS)
}

fn graph(args: &GraphArgs) -> CliResult {
    let format: Format = args.format.parse()?;
    let g = QuantumBruhatGraph::build(args.n)?;
    emit(args.out.as_deref(), &g.export(format)?)?;
    if let Some(path) = &args.out {
        eprintln!(
            "wrote {} vertices, {} edges to {}",
            g.vertex_count(),
            g.edge_count(),
            path.display()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn interval_cmd(args: &IntervalArgs) -> CliResult {
    let p = perms(&[&args.u, &args.v])?;
    let (u, v) = (&p[0], &p[1]);
    let format: Format = args.format.parse()?;
    let iv = if u.n() <= qbg_core::qbg::MAX_GRAPH_N {
        interval(&QuantumBruhatGraph::build(u.n())?, u, v)?
    } else {
        interval_graph_free(u, v)?
    };
    let noun = if iv.len() == 1 { "member" } else { "members" };
    let mut text = format!(
        "interval [{u}, {v}]: {} {noun}, ell={}\n",
        iv.len(),
        path_length(u, v)?
    );
    let by_rank = iv.by_rank();
    let top = by_rank.last().map(|x| x.1).unwrap_or(0);
    for r in 0..=top {
        let row: Vec<String> = by_rank
            .iter()
            .filter(|(_, k)| *k == r)
            .map(|(w, _)| w.to_string())
            .collect();
        text.push_str(&format!("rank {r}: {}\n", row.join(" ")));
    }
    print!("{text}");
    if args.hasse {
        let diagram = iv.hasse().export(format)?;
        match &args.out {
            Some(path) => {
                emit(Some(path), &diagram)?;
                println!("hasse diagram written to {}", path.display());
            }
            None => print!("{diagram}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn diagram(args: &DiagramArgs) -> CliResult {
    let mut tokens = vec![args.u.as_str(), args.v.as_str()];
    if let Some(x) = &args.x {
        tokens.push(x);
    }
    let p = perms(&tokens)?;
    let (u, v) = (&p[0], &p[1]);
    let n = u.n();
    let a = if args.a == "auto" {
        find_flat(u, v)?
    } else {
        ShiftSequence::for_pair(u, v, ShiftSequence::parse(&args.a, n)?.0)?
    };
    print!(
        "{}",
        render_diagram(&tilted_rothe(u, &a, DiagramKind::Down)?)
    );
    println!();
    print!("{}", render_diagram(&tilted_rothe(v, &a, DiagramKind::Up)?));
    let set: EquationSet = match p.get(2) {
        Some(x) => {
            println!();
            print!("{}", render_diagram(&tilted_rothe(x, &a, DiagramKind::Up)?));
            equations_with_x(u, v, &a, x)?
        }
        None => equations(u, v, &a)?,
    };
    let ell = path_length(u, v)?;
    println!();
    match &set.x {
        Some(x) => println!("equations of ({u}, {v}) with a = {a}, x = {x}:"),
        None => println!("equations of ({u}, {v}) with a = {a}:"),
    }
    for e in &set.equations {
        println!(
            "  {:<8} ({},{})  {}",
            format!("{:?}", e.source),
            e.cell.0,
            e.cell.1,
            e.equation
        );
    }
    println!(
        "count: {} = C({n},2) - ell = {} - {ell}",
        set.len(),
        pairs(n)
    );
    Ok(ExitCode::SUCCESS)
}

fn read_flag(path: &Path) -> Result<Flag, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Flag::from_matrix(RationalMatrix::parse_text(&text)?)?)
}

fn stratify_cmd(args: &StratifyArgs) -> CliResult {
    let f = read_flag(&args.matrix)?;
    let p = perms_or(&[&args.u, &args.v], Some(f.n()))?;
    let (u, v) = (&p[0], &p[1]);
    if f.n() != u.n() {
        return Err(Error::SizeMismatch(format!(
            "matrix has n = {}, permutations n = {}",
            f.n(),
            u.n()
        ))
        .into());
    }
    if !member_t_plucker(u, v, &f, false)? {
        println!("not a member: the flag is not in T_({u},{v})");
        return Ok(ExitCode::FAILURE);
    }
    let label = stratum(u, v, &f)?;
    let open = member_t_plucker(&label.x, &label.y, &f, true)?;
    println!("x={} y={}", label.x, label.y);
    println!("shifts: {}", label.shifts);
    println!(
        "open membership in T°_({},{}): {}",
        label.x,
        label.y,
        if open { "verified" } else { "FAILED" }
    );
    Ok(if open {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn sample(args: &SampleArgs) -> CliResult {
    let p = perms(&[&args.u, &args.v])?;
    let (u, v) = (&p[0], &p[1]);
    let f = sample_in_open_stratum(u, v, args.seed)?;
    emit(args.out.as_deref(), &f.matrix().to_text())?;
    if let Some(path) = &args.out {
        println!("wrote a flag in T°_({u},{v}) to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: &VerifyArgs) -> CliResult {
    let suite: Suite = args.suite.parse()?;
    let report = verify::run(
        suite,
        &VerifyOptions {
            n: args.n,
            seed: args.seed,
            samples: args.samples,
        },
    )?;
    println!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dist(a) => dist(a),
        Command::Graph(a) => graph(a),
        Command::Interval(a) => interval_cmd(a),
        Command::Diagram(a) => diagram(a),
        Command::Stratify(a) => stratify_cmd(a),
        Command::Sample(a) => sample(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Core(Error::SamplingFailed { .. } | Error::Internal(_)) => {
                    ExitCode::from(1)
                }
                CliError::Io { .. } => ExitCode::from(1),
                CliError::Core(_) => ExitCode::from(2),
            }
        }
    }
}
