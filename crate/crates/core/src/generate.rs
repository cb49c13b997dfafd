//! Seeded random instances: a pangenome graph, a query and a seed set.

use std::fmt::Write as _;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{parse_seeds, write_seeds, MemSet};
use crate::error::{Error, Result};
use crate::graph::{write_tsv, GraphBuilder, PangenomeGraph};
use crate::oracle::{Oracle, OracleBudget};

const ALPHABET: &[u8] = b"ACGTBDEFHIJKLMNOPQRSUVWXYZ";

/// Default seed when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub vertices: usize,
    /// Total label length `N`, split at random over the vertices.
    pub total_len: usize,
    /// Labels and query draw from the first `alphabet` letters of `ACGT…`.
    pub alphabet: usize,
    pub query_len: usize,
    /// Acyclic graphs only get arcs forward along a random vertex order.
    pub acyclic: bool,
    /// Probability of each candidate edge.
    pub edge_prob: f64,
    /// MEMs are subsampled down to this many seeds.
    pub max_seeds: usize,
}

impl Default for Profile {
    /// Sized to fit the default oracle budget.
    fn default() -> Self {
        Profile {
            vertices: 4,
            total_len: 12,
            alphabet: 3,
            query_len: 8,
            acyclic: true,
            edge_prob: 0.4,
            max_seeds: 10,
        }
    }
}

impl Profile {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidProfile(m.to_string()));
        if self.vertices == 0 {
            return bad("at least one vertex is required");
        }
        if self.total_len < self.vertices {
            return bad("total length must be at least the vertex count (labels are non-empty)");
        }
        if self.alphabet == 0 || self.alphabet > ALPHABET.len() {
            return bad("alphabet size must be between 1 and 26");
        }
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return bad("edge probability must lie in [0, 1]");
        }
        Ok(())
    }

    pub fn fits(&self, budget: &OracleBudget) -> bool {
        self.vertices <= budget.max_vertices
            && self.total_len <= budget.max_total_len
            && self.query_len <= budget.max_query
            && self.max_seeds <= budget.max_seeds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: PangenomeGraph,
    pub query: Vec<u8>,
    pub seeds: MemSet,
}

pub fn generate_instance(seed: u64, profile: &Profile) -> Result<Instance> {
    profile.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = &ALPHABET[..profile.alphabet];

    let n = profile.vertices;
    let mut lens = vec![1usize; n];
    for _ in n..profile.total_len {
        lens[rng.gen_range(0..n)] += 1;
    }
    let mut b = GraphBuilder::default();
    for (v, &len) in lens.iter().enumerate() {
        let label: Vec<u8> = (0..len).map(|_| *letters.choose(&mut rng).unwrap()).collect();
        b.add_vertex(&(v + 1).to_string(), &label)?;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for a in 0..n {
        for c in 0..n {
            let candidate = if profile.acyclic { a < c } else { a != c };
            if candidate && rng.gen_bool(profile.edge_prob) {
                b.add_edge(&(order[a] + 1).to_string(), &(order[c] + 1).to_string());
            }
        }
    }
    let graph = b.build()?;
    let query: Vec<u8> = (0..profile.query_len)
        .map(|_| *letters.choose(&mut rng).unwrap())
        .collect();

    let mems = Oracle::new(OracleBudget::unlimited()).enumerate_mems(&query, &graph)?;
    let seeds = if mems.len() > profile.max_seeds {
        let mut keep = index::sample(&mut rng, mems.len(), profile.max_seeds).into_vec();
        keep.sort_unstable();
        MemSet::from_mems(keep.into_iter().map(|i| mems.seeds()[i]))
    } else {
        mems
    };
    Ok(Instance {
        graph,
        query,
        seeds,
    })
}

impl Instance {
    /// Self-contained text form: graph TSV records, then `Q <query>`, then
    /// one `M <seed fields>` record per seed.
    pub fn to_bundle(&self) -> String {
        let mut out = write_tsv(&self.graph);
        writeln!(out, "Q\t{}", String::from_utf8_lossy(&self.query)).unwrap();
        for line in write_seeds(&self.seeds, &self.graph).lines() {
            writeln!(out, "M\t{line}").unwrap();
        }
        out
    }

    pub fn parse_bundle(text: &[u8]) -> Result<Self> {
        let mut graph_text = Vec::new();
        let mut seed_text = String::new();
        let mut query = None;
        for (no, line) in text.split(|&b| b == b'\n').enumerate() {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            match line {
                [b'Q'] => query = Some(Vec::new()),
                [b'Q', sep, rest @ ..] if sep.is_ascii_whitespace() => {
                    query = Some(rest.trim_ascii().to_vec())
                }
                [b'M', sep, rest @ ..] if sep.is_ascii_whitespace() => {
                    let rest = std::str::from_utf8(rest).map_err(|_| {
                        Error::Malformed("seed record is not UTF-8".into()).at_line(no + 1)
                    })?;
                    seed_text.push_str(rest);
                    seed_text.push('\n');
                }
                _ => graph_text.extend_from_slice(line),
            }
            graph_text.push(b'\n');
        }
        let graph = crate::graph::parse_tsv(&graph_text)?;
        let query = query.ok_or_else(|| Error::Malformed("bundle has no Q record".into()))?;
        let seeds = parse_seeds(&seed_text, &graph)?;
        Ok(Instance {
            graph,
            query,
            seeds,
        })
    }
}
