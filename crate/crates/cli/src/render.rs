//! Text renderings of the report records. JSON is one compact object per
//! line; TSV and human output carry the same fields.

use std::fmt::Write as _;

use pangenome_lcs::report::{
    to_json, AlignmentReport, ChainReport, PathReport, ScoreReport, SeedListReport, SeedRecord,
};

use crate::OutputMode;

fn bold(s: impl std::fmt::Display, color: bool) -> String {
    if color {
        format!("\x1b[1m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn joined<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(",")
}

fn seed_line(s: &SeedRecord) -> String {
    format!("{}\t{}\t{}\t{}\t{}", s.vertex, s.i, s.i2, s.j, s.j2)
}

pub fn alignment(r: &AlignmentReport, mode: OutputMode, color: bool) -> String {
    match mode {
        OutputMode::Json => to_json(r) + "\n",
        OutputMode::Tsv => {
            let mut line = format!(
                "{}\t{}\t{}",
                r.score,
                r.subsequence,
                joined(&r.embedding, |e| format!("{}:{}:{}", e.q, e.vertex, e.offset))
            );
            if let Some(gaps) = &r.gaps {
                write!(line, "\t{}", joined(gaps, |g| format!("{}:{}", g.dq, g.dg))).unwrap();
            }
            line + "\n"
        }
        OutputMode::Human => {
            let mut s = format!(
                "{} score {}  {:?}\n",
                r.problem,
                bold(r.score, color),
                r.subsequence
            );
            for (j, e) in r.embedding.iter().enumerate() {
                write!(s, "  Q[{}] -> {}[{}]", e.q, e.vertex, e.offset).unwrap();
                if let Some(g) = j.checked_sub(1).and_then(|p| r.gaps.as_ref().map(|gs| gs[p])) {
                    write!(s, "  (dq {}, dg {})", g.dq, g.dg).unwrap();
                }
                s.push('\n');
            }
            s
        }
    }
}

pub fn chain(r: &ChainReport, mode: OutputMode, color: bool) -> String {
    match mode {
        OutputMode::Json => to_json(r) + "\n",
        // Comment header plus seed records: readable back as a seed file.
        OutputMode::Tsv => {
            let mut s = format!("# {} score {}\n", r.problem, r.score);
            for c in &r.chain {
                s += &(seed_line(c) + "\n");
            }
            s
        }
        OutputMode::Human => {
            let mut s = format!(
                "{} score {}  ({} seeds)\n",
                r.problem,
                bold(r.score, color),
                r.chain.len()
            );
            for c in &r.chain {
                writeln!(s, "  {}[{}..={}] ~ Q[{}..={}]", c.vertex, c.i, c.i2, c.j, c.j2).unwrap();
            }
            s
        }
    }
}

pub fn path(r: &PathReport, mode: OutputMode, color: bool) -> String {
    let nodes = joined(&r.path, |v| v.to_string());
    match mode {
        OutputMode::Json => to_json(r) + "\n",
        OutputMode::Tsv => format!("{}\t{}\n", r.score, nodes),
        OutputMode::Human => format!(
            "{}-weighted longest path: score {}  path [{}]\n",
            r.mode,
            bold(r.score, color),
            nodes
        ),
    }
}

pub fn score(r: &ScoreReport, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => to_json(r) + "\n",
        _ => format!("{}\n", r.score),
    }
}

/// `seed_tsv` is the reloadable seed-file form of the same set.
pub fn seeds(r: &SeedListReport, seed_tsv: &str, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => to_json(r) + "\n",
        _ => seed_tsv.to_string(),
    }
}
