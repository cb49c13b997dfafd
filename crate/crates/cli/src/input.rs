use std::io::Read;

use pangenome_lcs::chain::parse_seeds;
use pangenome_lcs::graph::{parse_gfa, parse_tsv};
use pangenome_lcs::{Instance, MemSet, PangenomeGraph};

use crate::{CliError, FormatArg, GraphInput, QueryInput};

/// Per-invocation state: the one-shot stdin, color setting and collected
/// diagnostics.
pub(crate) struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    pub color: bool,
    stderr: String,
}

impl<'a> Ctx<'a> {
    pub fn new(stdin: &'a mut dyn Read, color: bool) -> Self {
        Ctx {
            stdin,
            stdin_used: false,
            color,
            stderr: String::new(),
        }
    }

    pub fn warn(&mut self, msg: &str) {
        self.stderr.push_str(msg);
        self.stderr.push('\n');
    }

    pub fn into_stderr(self) -> String {
        self.stderr
    }

    /// Reads a file, or stdin for `-`.
    pub fn read(&mut self, path: &str) -> Result<Vec<u8>, CliError> {
        if path == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                return Err(CliError::Usage("only one input can come from stdin".into()));
            }
            let mut buf = Vec::new();
            self.stdin
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            return Ok(buf);
        }
        std::fs::read(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }

    pub fn read_text(&mut self, path: &str) -> Result<String, CliError> {
        String::from_utf8(self.read(path)?)
            .map_err(|_| CliError::Input(format!("{path}: not valid UTF-8")))
    }
}

/// A graph plus whatever query and seeds came bundled with it.
pub(crate) struct Loaded {
    pub graph: PangenomeGraph,
    pub query: Option<Vec<u8>>,
    pub seeds: Option<MemSet>,
}

pub(crate) fn load_graph(ctx: &mut Ctx, input: &GraphInput) -> Result<Loaded, CliError> {
    if let Some(path) = &input.instance {
        let inst = Instance::parse_bundle(&ctx.read(path)?)?;
        return Ok(Loaded {
            graph: inst.graph,
            query: Some(inst.query),
            seeds: Some(inst.seeds),
        });
    }
    let path = input
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage("--graph or --instance is required".into()))?;
    let format = input.format.unwrap_or(if path.ends_with(".gfa") {
        FormatArg::Gfa
    } else {
        FormatArg::Tsv
    });
    let text = ctx.read(path)?;
    let graph = match format {
        FormatArg::Tsv => parse_tsv(&text)?,
        FormatArg::Gfa => {
            let p = parse_gfa(&text)?;
            if p.skipped_records > 0 {
                ctx.warn(&format!("skipped {} unsupported GFA records", p.skipped_records));
            }
            p.graph
        }
    };
    Ok(Loaded {
        graph,
        query: None,
        seeds: None,
    })
}

/// Queries from `--query`, `--query-file` (one per line) or the bundle, in
/// that order of preference.
pub(crate) fn load_queries(
    ctx: &mut Ctx,
    input: &QueryInput,
    loaded: &Loaded,
) -> Result<Vec<Vec<u8>>, CliError> {
    if let Some(q) = &input.query {
        return Ok(vec![q.as_bytes().to_vec()]);
    }
    if let Some(path) = &input.query_file {
        let text = ctx.read(path)?;
        let mut lines: Vec<&[u8]> = text.split(|&b| b == b'\n').collect();
        if lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        return Ok(lines
            .into_iter()
            .map(|l| l.strip_suffix(b"\r").unwrap_or(l).to_vec())
            .collect());
    }
    loaded
        .query
        .clone()
        .map(|q| vec![q])
        .ok_or_else(|| CliError::Usage("a query is required (--query or --query-file)".into()))
}

pub(crate) fn load_single_query(
    ctx: &mut Ctx,
    input: &QueryInput,
    loaded: &Loaded,
) -> Result<Vec<u8>, CliError> {
    let mut qs = load_queries(ctx, input, loaded)?;
    if qs.len() != 1 {
        return Err(CliError::Usage(format!("expected one query, got {}", qs.len())));
    }
    Ok(qs.pop().unwrap())
}

pub(crate) fn load_seeds(
    ctx: &mut Ctx,
    path: Option<&str>,
    loaded: &Loaded,
) -> Result<MemSet, CliError> {
    if let Some(path) = path {
        let text = ctx.read_text(path)?;
        return Ok(parse_seeds(&text, &loaded.graph)?);
    }
    loaded
        .seeds
        .clone()
        .ok_or_else(|| CliError::Usage("--seeds is required".into()))
}
