use std::fmt::Write as _;
use std::str::FromStr;

use super::{GraphBuilder, PangenomeGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `V <id> <label>` / `E <src> <dst>` records.
    Tsv,
    /// `S` and `L` records of GFA 1, forward orientation only.
    Gfa,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(GraphFormat::Tsv),
            "gfa" => Ok(GraphFormat::Gfa),
            other => Err(Error::Malformed(format!("unknown graph format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GfaParse {
    pub graph: PangenomeGraph,
    /// Records other than `S`/`L` that were ignored.
    pub skipped_records: usize,
}

pub fn parse_graph(text: &[u8], format: GraphFormat) -> Result<PangenomeGraph> {
    match format {
        GraphFormat::Tsv => parse_tsv(text),
        GraphFormat::Gfa => parse_gfa(text).map(|p| p.graph),
    }
}

fn utf8(field: &[u8]) -> Result<&str> {
    std::str::from_utf8(field).map_err(|_| Error::Malformed("id is not valid UTF-8".into()))
}

fn lines(text: &[u8]) -> impl Iterator<Item = (usize, &[u8])> {
    text.split(|&b| b == b'\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix(b"\r").unwrap_or(l)))
}

fn is_blank_or_comment(line: &[u8]) -> bool {
    match line.iter().position(|b| !b.is_ascii_whitespace()) {
        None => true,
        Some(p) => line[p] == b'#',
    }
}

pub fn parse_tsv(text: &[u8]) -> Result<PangenomeGraph> {
    let mut b = GraphBuilder::default();
    for (no, line) in lines(text) {
        if is_blank_or_comment(line) {
            continue;
        }
        tsv_record(&mut b, line).map_err(|e| e.at_line(no))?;
    }
    b.build()
}

fn tsv_record(b: &mut GraphBuilder, line: &[u8]) -> Result<()> {
    let fields: Vec<&[u8]> = line
        .split(|c| c.is_ascii_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    match fields.as_slice() {
        [b"V", id] => Err(Error::EmptyLabel(utf8(id)?.to_string())),
        [b"V", id, label] => b.add_vertex(utf8(id)?, label).map(|_| ()),
        [b"E", from, to] => {
            b.add_edge(utf8(from)?, utf8(to)?);
            Ok(())
        }
        [b"V", ..] | [b"E", ..] => Err(Error::Malformed(format!(
            "wrong field count in `{}`",
            String::from_utf8_lossy(line)
        ))),
        _ => Err(Error::Malformed(format!(
            "unknown record `{}`",
            String::from_utf8_lossy(line)
        ))),
    }
}

pub fn parse_gfa(text: &[u8]) -> Result<GfaParse> {
    let mut b = GraphBuilder::default();
    let mut skipped = 0;
    for (no, line) in lines(text) {
        if line.is_empty() || line[0] == b'#' {
            continue;
        }
        let fields: Vec<&[u8]> = line.split(|&c| c == b'\t').collect();
        let res = match fields[0] {
            b"S" => gfa_segment(&mut b, &fields),
            b"L" => gfa_link(&mut b, &fields, line),
            _ => {
                skipped += 1;
                Ok(())
            }
        };
        res.map_err(|e| e.at_line(no))?;
    }
    Ok(GfaParse {
        graph: b.build()?,
        skipped_records: skipped,
    })
}

fn gfa_segment(b: &mut GraphBuilder, fields: &[&[u8]]) -> Result<()> {
    match fields {
        [_, id] => Err(Error::EmptyLabel(utf8(id)?.to_string())),
        [_, id, seq, ..] => {
            let id = utf8(id)?;
            if seq.is_empty() || *seq == b"*" {
                return Err(Error::EmptyLabel(id.to_string()));
            }
            b.add_vertex(id, seq).map(|_| ())
        }
        _ => Err(Error::Malformed("S record needs an id and a sequence".into())),
    }
}

fn gfa_link(b: &mut GraphBuilder, fields: &[&[u8]], line: &[u8]) -> Result<()> {
    let [_, from, from_orient, to, to_orient, ..] = fields else {
        return Err(Error::Malformed("L record needs from, orient, to, orient".into()));
    };
    for orient in [from_orient, to_orient] {
        match *orient {
            b"+" => {}
            b"-" => {
                return Err(Error::UnsupportedOrientation(
                    String::from_utf8_lossy(line).into_owned(),
                ))
            }
            other => {
                return Err(Error::Malformed(format!(
                    "bad orientation `{}`",
                    String::from_utf8_lossy(other)
                )))
            }
        }
    }
    b.add_edge(utf8(from)?, utf8(to)?);
    Ok(())
}

/// Inverse of [`parse_tsv`]: vertices in index order, then edges in
/// ascending order. Labels are written lossily if they are not UTF-8.
pub fn write_tsv(g: &PangenomeGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "V\t{}\t{}", v.id, String::from_utf8_lossy(&v.label)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "E\t{}\t{}", g.id(u), g.id(v)).unwrap();
    }
    out
}
