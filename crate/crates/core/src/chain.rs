//! Seeds, the strict order `≺`, and longest chains over seed sets.
//!
//! `H_MEM` has one node per seed weighted by its length and an arc `a -> b`
//! iff `a ≺ b`; `H_MSP` is the same graph with unit weights. Because `≺`
//! forces strictly increasing query intervals both are acyclic for any
//! pangenome graph, cyclic ones included.

use std::fmt::Write as _;

use crate::dag::{longest_path_vertex, MatchDag};
use crate::error::{Error, Result};
use crate::graph::{PangenomeGraph, ReachMatrix};

/// An inclusive index interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }

    /// Number of indices covered; 0 for a reversed interval.
    pub fn len(&self) -> usize {
        (self.end + 1).saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }
}

/// An exact match `(vertex, label interval, query interval)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed {
    pub vertex: usize,
    pub label: Interval,
    pub query: Interval,
}

impl Seed {
    pub fn new(vertex: usize, label: (usize, usize), query: (usize, usize)) -> Self {
        Seed {
            vertex,
            label: Interval::new(label.0, label.1),
            query: Interval::new(query.0, query.1),
        }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    /// Structure checks against `g`, plus sequence equality and bounds
    /// against `q` when the query is known.
    pub fn validate(&self, g: &PangenomeGraph, q: Option<&[u8]>) -> std::result::Result<(), String> {
        if self.label.is_empty() || self.query.is_empty() {
            return Err("reversed interval".into());
        }
        if self.label.len() != self.query.len() {
            return Err(format!(
                "label interval length {} != query interval length {}",
                self.label.len(),
                self.query.len()
            ));
        }
        if self.vertex >= g.vertex_count() {
            return Err(format!("vertex index {} out of range", self.vertex));
        }
        let label = g.label(self.vertex);
        if self.label.end >= label.len() {
            return Err(format!(
                "label interval ends at {} past label length {}",
                self.label.end,
                label.len()
            ));
        }
        if let Some(q) = q {
            if self.query.end >= q.len() {
                return Err(format!(
                    "query interval ends at {} past query length {}",
                    self.query.end,
                    q.len()
                ));
            }
            if label[self.label.start..=self.label.end] != q[self.query.start..=self.query.end] {
                return Err("label and query substrings differ".into());
            }
        }
        Ok(())
    }

    pub fn is_left_maximal(&self, g: &PangenomeGraph, q: &[u8]) -> bool {
        let (i, j) = (self.label.start, self.query.start);
        i == 0 || j == 0 || g.label(self.vertex)[i - 1] != q[j - 1]
    }

    pub fn is_right_maximal(&self, g: &PangenomeGraph, q: &[u8]) -> bool {
        let label = g.label(self.vertex);
        let (i, j) = (self.label.end, self.query.end);
        i + 1 == label.len() || j + 1 == q.len() || label[i + 1] != q[j + 1]
    }
}

/// `a ≺ b`: `a`'s query interval ends before `b`'s starts, and either both
/// lie on one vertex with `a`'s label interval ending before `b`'s starts,
/// or `a`'s vertex reaches `b`'s.
pub fn strictly_precedes(a: &Seed, b: &Seed, r: &ReachMatrix) -> bool {
    a.query.end < b.query.start
        && if a.vertex == b.vertex {
            a.label.end < b.label.start
        } else {
            r.reaches(a.vertex, b.vertex)
        }
}

/// A seed set; entries flagged maximal must be MEMs against the query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MemSet {
    seeds: Vec<Seed>,
    maximal: Vec<bool>,
}

impl MemSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, seed: Seed, maximal: bool) {
        self.seeds.push(seed);
        self.maximal.push(maximal);
    }

    pub fn from_seeds(seeds: impl IntoIterator<Item = Seed>) -> Self {
        let mut ms = Self::new();
        for s in seeds {
            ms.push(s, false);
        }
        ms
    }

    /// Seeds all flagged maximal.
    pub fn from_mems(seeds: impl IntoIterator<Item = Seed>) -> Self {
        let mut ms = Self::new();
        for s in seeds {
            ms.push(s, true);
        }
        ms
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn is_maximal(&self, idx: usize) -> bool {
        self.maximal[idx]
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    /// `len(M)`: total seed length.
    pub fn total_len(&self) -> usize {
        total_len(&self.seeds)
    }

    /// Validates every seed; maximality flags are checked only when `q` is
    /// given, since it is undefined without the query.
    pub fn validate(&self, g: &PangenomeGraph, q: Option<&[u8]>) -> Result<()> {
        for (index, s) in self.seeds.iter().enumerate() {
            let fail = |reason: String| Error::InvalidSeed { index, reason };
            s.validate(g, q).map_err(fail)?;
            if let (Some(q), true) = (q, self.maximal[index]) {
                if !s.is_left_maximal(g, q) {
                    return Err(fail("flagged maximal but not left-maximal".into()));
                }
                if !s.is_right_maximal(g, q) {
                    return Err(fail("flagged maximal but not right-maximal".into()));
                }
            }
        }
        Ok(())
    }
}

pub fn total_len(seeds: &[Seed]) -> usize {
    seeds.iter().map(Seed::len).sum()
}

/// What a chain maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Total seed length (MEM chaining).
    Length,
    /// Number of seeds (max seed problem).
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub objective: Objective,
    pub seeds: Vec<Seed>,
    /// Indices of the chosen seeds in the input set.
    pub members: Vec<usize>,
    pub total_len: usize,
}

impl Chain {
    pub fn count(&self) -> usize {
        self.seeds.len()
    }

    /// The optimized quantity.
    pub fn score(&self) -> usize {
        match self.objective {
            Objective::Length => self.total_len,
            Objective::Count => self.count(),
        }
    }

    pub fn validate(&self, r: &ReachMatrix) -> std::result::Result<(), String> {
        if self.members.len() != self.seeds.len() {
            return Err("member list does not match seeds".into());
        }
        if let Some(j) = self
            .seeds
            .windows(2)
            .position(|w| !strictly_precedes(&w[0], &w[1], r))
        {
            return Err(format!("seeds {j} and {} are not strictly ordered", j + 1));
        }
        let recount = total_len(&self.seeds);
        if recount != self.total_len {
            return Err(format!("reported length {} != recomputed {recount}", self.total_len));
        }
        Ok(())
    }
}

fn build_seed_dag(ms: &MemSet, r: &ReachMatrix, weight: impl Fn(&Seed) -> u64) -> MatchDag<Seed> {
    let mut dag = MatchDag::new();
    for s in ms.seeds() {
        dag.add_node(*s, weight(s));
    }
    for (a, sa) in ms.seeds().iter().enumerate() {
        for (b, sb) in ms.seeds().iter().enumerate() {
            if strictly_precedes(sa, sb, r) {
                dag.add_arc(a, b).expect("node indices in range");
            }
        }
    }
    dag
}

/// `H_MEM`: node weight `|m1|`, arc `a -> b` iff `a ≺ b`.
pub fn build_h_mem(ms: &MemSet, g: &PangenomeGraph, r: &ReachMatrix) -> Result<MatchDag<Seed>> {
    ms.validate(g, None)?;
    Ok(build_seed_dag(ms, r, |s| s.len() as u64))
}

/// `H_MSP`: as [`build_h_mem`] with unit weights.
pub fn build_h_msp(ss: &MemSet, g: &PangenomeGraph, r: &ReachMatrix) -> Result<MatchDag<Seed>> {
    ss.validate(g, None)?;
    Ok(build_seed_dag(ss, r, |_| 1))
}

fn chain_from_path(dag: &MatchDag<Seed>, path: &[usize], objective: Objective) -> Chain {
    let seeds: Vec<Seed> = path.iter().map(|&v| *dag.payload(v)).collect();
    Chain {
        objective,
        total_len: total_len(&seeds),
        members: path.to_vec(),
        seeds,
    }
}

pub fn solve_chain_with(
    ms: &MemSet,
    g: &PangenomeGraph,
    r: &ReachMatrix,
    objective: Objective,
) -> Result<Chain> {
    let dag = match objective {
        Objective::Length => build_h_mem(ms, g, r)?,
        Objective::Count => build_h_msp(ms, g, r)?,
    };
    let lp = longest_path_vertex(&dag)?;
    Ok(chain_from_path(&dag, &lp.path, objective))
}

/// Strictly ordered subset of maximum total length.
pub fn solve_memc(ms: &MemSet, g: &PangenomeGraph) -> Result<Chain> {
    solve_chain_with(ms, g, &ReachMatrix::new(g), Objective::Length)
}

/// Strictly ordered subset with the most seeds.
pub fn solve_msp(ss: &MemSet, g: &PangenomeGraph) -> Result<Chain> {
    solve_chain_with(ss, g, &ReachMatrix::new(g), Objective::Count)
}

/// Reads seed TSV: `<vertex-id> <i> <i'> <j> <j'>` with inclusive bounds and
/// an optional sixth column `mem` declaring the seed maximal.
pub fn parse_seeds(text: &str, g: &PangenomeGraph) -> Result<MemSet> {
    let mut ms = MemSet::new();
    for (no, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() || fields[0].starts_with('#') {
            continue;
        }
        let rec = (|| {
            let (vertex, nums, maximal) = match fields.as_slice() {
                [v, a, b, c, d] => (v, [a, b, c, d], false),
                [v, a, b, c, d, flag] if *flag == "mem" => (v, [a, b, c, d], true),
                _ => return Err(Error::Malformed(format!("bad seed record `{line}`"))),
            };
            let vertex = g
                .index_of(vertex)
                .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
            let mut n = [0usize; 4];
            for (slot, s) in n.iter_mut().zip(nums) {
                *slot = s
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad seed coordinate `{s}`")))?;
            }
            ms.push(Seed::new(vertex, (n[0], n[1]), (n[2], n[3])), maximal);
            Ok(())
        })();
        rec.map_err(|e| e.at_line(no + 1))?;
    }
    Ok(ms)
}

pub fn write_seeds(ms: &MemSet, g: &PangenomeGraph) -> String {
    let mut out = String::new();
    for (idx, s) in ms.seeds().iter().enumerate() {
        write!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            g.id(s.vertex),
            s.label.start,
            s.label.end,
            s.query.start,
            s.query.end
        )
        .unwrap();
        out.push_str(if ms.is_maximal(idx) { "\tmem\n" } else { "\n" });
    }
    out
}
