//! The `pglcs` command line: argument definitions and dispatch. [`run`] is
//! the whole program minus process I/O, so tests can drive it in-process.

mod commands;
mod input;
mod render;

use std::ffi::OsString;
use std::io::Read;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use pangenome_lcs::GapLimit;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

/// Everything one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Input(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

impl From<pangenome_lcs::Error> for CliError {
    fn from(e: pangenome_lcs::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pglcs",
    version,
    about = "Longest common subsequence and seed chaining against pangenome graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Longest common subsequence between each query and the graph.
    Lcs(LcsArgs),
    /// LCS with bounded gaps in the query (k1) and along the graph (k2).
    Fglcs(FglcsArgs),
    /// Chain a seed set by total length (MEMC) or by count (MSP).
    Chain(ChainArgs),
    /// Longest path in a DAG given as `N`/`A` records.
    Lp(LpArgs),
    /// Brute-force optimum for small instances.
    Oracle(OracleArgs),
    /// Seeded random instance as a bundle (graph, query, seeds).
    Gen(GenArgs),
    /// Maximal exact matches between a query and the vertex labels.
    Mems(MemsArgs),
    /// Preprocessing products: reachability, character distances, H.
    Dump(DumpArgs),
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file, or `-` for stdin.
    #[arg(long, value_name = "FILE", required_unless_present = "instance")]
    graph: Option<String>,
    /// Graph format. Defaults to gfa for `.gfa` files, tsv otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Bundle written by `gen`, or `-` for stdin. Its query and seeds are
    /// used unless given separately.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["graph", "format"])]
    instance: Option<String>,
}

#[derive(Args, Debug)]
struct QueryInput {
    /// Query string.
    #[arg(long, conflicts_with = "query_file")]
    query: Option<String>,
    /// File with one query per line, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    query_file: Option<String>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputMode::Human)]
    output: OutputMode,
    /// Same as `--output json`.
    #[arg(long, conflicts_with = "output")]
    json: bool,
}

impl OutputArgs {
    fn mode(&self) -> OutputMode {
        if self.json {
            OutputMode::Json
        } else {
            self.output
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Tsv,
    Gfa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum OutputMode {
    Json,
    Tsv,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    /// Total seed length.
    Len,
    /// Number of seeds.
    Count,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Edge,
    Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Lcs,
    Fglcs,
    Memc,
    Msp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DumpWhat {
    /// Reachable vertex pairs.
    Reach,
    /// Finite distances between distinct characters.
    Chars,
    /// The match DAG `H` for the query, as `N`/`A` records.
    H,
    /// The gap-constrained match DAG, as `N`/`A` records.
    Hgap,
}

fn parse_limit(s: &str) -> Result<GapLimit, String> {
    s.parse().map_err(|e: pangenome_lcs::Error| e.to_string())
}

#[derive(Args, Debug)]
struct LcsArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    query: QueryInput,
    #[command(flatten)]
    out: OutputArgs,
    /// Also run the brute-force oracle and fail on disagreement.
    #[arg(long)]
    oracle_check: bool,
    /// Worker threads for multiple queries.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Args, Debug)]
struct FglcsArgs {
    #[command(flatten)]
    lcs: LcsArgs,
    /// Query-side gap bound: a positive integer or `inf`.
    #[arg(long, value_parser = parse_limit)]
    k1: GapLimit,
    /// Graph-side gap bound: a positive integer or `inf`.
    #[arg(long, value_parser = parse_limit)]
    k2: GapLimit,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Seed TSV (`vertex i i' j j'`, optional `mem`), or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    seeds: Option<String>,
    /// Query to validate the seeds against.
    #[arg(long)]
    query: Option<String>,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Len)]
    objective: ObjectiveArg,
    #[command(flatten)]
    out: OutputArgs,
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Args, Debug)]
struct LpArgs {
    /// DAG file with `N <idx> <weight>` and `A <src> <dst> [weight]` records.
    #[arg(long, value_name = "FILE")]
    dag: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Vertex)]
    mode: ModeArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    query: QueryInput,
    #[arg(long, value_name = "FILE")]
    seeds: Option<String>,
    #[arg(long, value_parser = parse_limit, required_if_eq("problem", "fglcs"))]
    k1: Option<GapLimit>,
    #[arg(long, value_parser = parse_limit, required_if_eq("problem", "fglcs"))]
    k2: Option<GapLimit>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = pangenome_lcs::generate::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    vertices: Option<usize>,
    /// Total label length.
    #[arg(long)]
    total_len: Option<usize>,
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long)]
    query_len: Option<usize>,
    /// Allow edges in both directions, so cycles can appear.
    #[arg(long)]
    cyclic: bool,
    #[arg(long)]
    edge_prob: Option<f64>,
    #[arg(long)]
    max_seeds: Option<usize>,
}

#[derive(Args, Debug)]
struct MemsArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    query: QueryInput,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[arg(long, value_enum)]
    what: DumpWhat,
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    query: QueryInput,
    #[arg(long, value_parser = parse_limit, required_if_eq("what", "hgap"))]
    k1: Option<GapLimit>,
    #[arg(long, value_parser = parse_limit, required_if_eq("what", "hgap"))]
    k2: Option<GapLimit>,
}

/// Runs one invocation. `args` includes the program name; `stdin` is read
/// at most once, for whichever input is `-`. `color` enables ANSI styling
/// in human output.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, color: bool) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut ctx = commands::Ctx::new(stdin, color);
    let result = match cli.command {
        Command::Lcs(a) => commands::lcs(&mut ctx, a, None),
        Command::Fglcs(a) => commands::lcs(&mut ctx, a.lcs, Some((a.k1, a.k2))),
        Command::Chain(a) => commands::chain(&mut ctx, a),
        Command::Lp(a) => commands::lp(&mut ctx, a),
        Command::Oracle(a) => commands::oracle(&mut ctx, a),
        Command::Gen(a) => commands::gen(&mut ctx, a),
        Command::Mems(a) => commands::mems(&mut ctx, a),
        Command::Dump(a) => commands::dump(&mut ctx, a),
    };
    let (code, stdout) = match result {
        Ok(out) => (EXIT_OK, out),
        Err(e) => {
            let code = e.code();
            let (kind, msg) = match e {
                CliError::Usage(m) => ("usage", m),
                CliError::Input(m) => ("input", m),
                CliError::Mismatch(m) => ("oracle mismatch", m),
            };
            ctx.warn(&format!("error ({kind}): {msg}"));
            (code, String::new())
        }
    };
    Output {
        code,
        stdout,
        stderr: ctx.into_stderr(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        assert_eq!(CliError::Usage(String::new()).code(), 2);
        assert_eq!(CliError::Input(String::new()).code(), 3);
        assert_eq!(CliError::Mismatch(String::new()).code(), 4);
        let e = commands::check_oracle("q", 3, 2).unwrap_err();
        assert!(matches!(e, CliError::Mismatch(ref m) if m.contains("solver score 3, oracle score 2")));
        assert!(commands::check_oracle("q", 2, 2).is_ok());
    }
}
