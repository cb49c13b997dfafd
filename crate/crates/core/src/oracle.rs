//! Brute-force references for the four problems.
//!
//! Nothing here touches the product DAGs, the longest-path solvers or the
//! Floyd–Warshall preprocessing: distances come from breadth-first search
//! over a private character split, reachability from depth-first search,
//! and optima from explicit enumeration of subsequences or seed subsets.

use std::collections::VecDeque;

use itertools::Itertools;

use crate::chain::{MemSet, Seed};
use crate::error::{Error, Result};
use crate::gap::{GapLimit, GapParams};
use crate::graph::PangenomeGraph;

/// Textbook `O(|a||b|)` LCS length.
pub fn classic_lcs_dp(a: &[u8], b: &[u8]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut row = vec![0usize; b.len() + 1];
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            row[j + 1] = if ca == cb {
                prev[j] + 1
            } else {
                row[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev[b.len()]
}

/// Instance size limits beyond which the oracle refuses to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_query: usize,
    pub max_vertices: usize,
    pub max_total_len: usize,
    pub max_seeds: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_query: 12,
            max_vertices: 6,
            max_total_len: 16,
            max_seeds: 12,
        }
    }
}

impl OracleBudget {
    pub fn unlimited() -> Self {
        OracleBudget {
            max_query: usize::MAX,
            max_vertices: usize::MAX,
            max_total_len: usize::MAX,
            max_seeds: usize::MAX,
        }
    }

    fn check(&self, what: &str, value: usize, limit: usize) -> Result<()> {
        if limit == 0 {
            return Err(Error::BudgetExceeded(format!("{what} limit must be positive")));
        }
        if value > limit {
            return Err(Error::BudgetExceeded(format!("{what} {value} > {limit}")));
        }
        Ok(())
    }

    fn check_graph(&self, g: &PangenomeGraph) -> Result<()> {
        self.check("vertex count", g.vertex_count(), self.max_vertices)?;
        self.check("total label length", g.total_len(), self.max_total_len)
    }

    fn check_query(&self, q: &[u8]) -> Result<()> {
        self.check("query length", q.len(), self.max_query)
    }

    fn check_seeds(&self, ms: &MemSet) -> Result<()> {
        self.check("seed count", ms.len(), self.max_seeds)
    }
}

/// Fixed-width bit set over character positions.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Every label character of the graph with `step[s][t]`, the fewest arcs
/// (at least one) leading from character `s` to character `t`.
struct Spelled {
    chars: Vec<u8>,
    step: Vec<Vec<Option<usize>>>,
}

impl Spelled {
    fn new(g: &PangenomeGraph) -> Self {
        let mut chars = Vec::new();
        let mut first = Vec::new();
        for v in g.vertices() {
            first.push(chars.len());
            chars.extend_from_slice(&v.label);
        }
        let n = chars.len();
        let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, vert) in g.vertices().iter().enumerate() {
            let base = first[v];
            for f in 0..vert.label.len() - 1 {
                next[base + f].push(base + f + 1);
            }
            let last = base + vert.label.len() - 1;
            for &w in g.successors(v) {
                next[last].push(first[w]);
            }
        }
        let step = (0..n)
            .map(|s| {
                let mut d = vec![None; n];
                let mut queue = VecDeque::new();
                for &t in &next[s] {
                    if d[t].is_none() {
                        d[t] = Some(1);
                        queue.push_back(t);
                    }
                }
                while let Some(u) = queue.pop_front() {
                    let du = d[u].unwrap();
                    for &t in &next[u] {
                        if d[t].is_none() {
                            d[t] = Some(du + 1);
                            queue.push_back(t);
                        }
                    }
                }
                d
            })
            .collect();
        Spelled { chars, step }
    }

    fn with_char(&self, c: u8) -> Bits {
        let mut b = Bits::new(self.chars.len());
        for (i, &x) in self.chars.iter().enumerate() {
            if x == c {
                b.set(i);
            }
        }
        b
    }

    /// For every character, the set reachable within `limit` arcs (>= 1).
    fn closures(&self, limit: GapLimit) -> Vec<Bits> {
        self.step
            .iter()
            .map(|row| {
                let mut b = Bits::new(self.chars.len());
                for (t, d) in row.iter().enumerate() {
                    if d.is_some_and(|d| limit.allows(d)) {
                        b.set(t);
                    }
                }
                b
            })
            .collect()
    }
}

fn image(frontier: &Bits, closures: &[Bits], n: usize) -> Bits {
    let mut out = Bits::new(n);
    for s in frontier.ones() {
        out.or_assign(&closures[s]);
    }
    out
}

fn dfs_reach(g: &PangenomeGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = g.successors(s).to_vec();
            while let Some(u) = stack.pop() {
                if !std::mem::replace(&mut seen[u], true) {
                    stack.extend_from_slice(g.successors(u));
                }
            }
            seen
        })
        .collect()
}

fn has_cycle(g: &PangenomeGraph) -> bool {
    dfs_reach(g).iter().enumerate().any(|(v, row)| row[v])
}

fn ordered(a: &Seed, b: &Seed, reach: &[Vec<bool>]) -> bool {
    if a.query.end >= b.query.start {
        return false;
    }
    if a.vertex == b.vertex {
        a.label.end < b.label.start
    } else {
        reach[a.vertex][b.vertex]
    }
}

/// Shared subsequence search: picks query positions left to right, keeping
/// the set of graph characters the last pick can sit on.
struct SubseqSearch<'a> {
    q: &'a [u8],
    k1: GapLimit,
    spelled: &'a Spelled,
    closures: Vec<Bits>,
    by_char: Vec<Option<Bits>>,
    best: usize,
}

impl SubseqSearch<'_> {
    fn run(&mut self) -> usize {
        self.best = 0;
        for j in 0..self.q.len() {
            let start = self.candidates(self.q[j]).clone();
            if !start.is_empty() {
                self.extend(j, &start, 1);
            }
        }
        self.best
    }

    fn candidates(&mut self, c: u8) -> &Bits {
        let slot = &mut self.by_char[c as usize];
        slot.get_or_insert_with(|| self.spelled.with_char(c))
    }

    fn extend(&mut self, last: usize, frontier: &Bits, len: usize) {
        self.best = self.best.max(len);
        let n = self.spelled.chars.len();
        let reachable = image(frontier, &self.closures, n);
        if reachable.is_empty() {
            return;
        }
        for j in last + 1..self.q.len() {
            if !self.k1.allows(j - last) || len + (self.q.len() - j) <= self.best {
                break;
            }
            let next = reachable.and(self.candidates(self.q[j]));
            if !next.is_empty() {
                self.extend(j, &next, len + 1);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub budget: OracleBudget,
}

impl Oracle {
    pub fn new(budget: OracleBudget) -> Self {
        Oracle { budget }
    }

    /// Whether `s` can be read, in order, along some walk of `g`.
    pub fn embeddable(&self, s: &[u8], g: &PangenomeGraph) -> Result<bool> {
        self.budget.check_graph(g)?;
        self.budget.check_query(s)?;
        let Some((&first, rest)) = s.split_first() else {
            return Ok(true);
        };
        let spelled = Spelled::new(g);
        let closures = spelled.closures(GapLimit::Unbounded);
        let mut frontier = spelled.with_char(first);
        for &c in rest {
            if frontier.is_empty() {
                return Ok(false);
            }
            frontier = image(&frontier, &closures, spelled.chars.len()).and(&spelled.with_char(c));
        }
        Ok(!frontier.is_empty())
    }

    fn search(&self, q: &[u8], g: &PangenomeGraph, k: GapParams) -> Result<usize> {
        k.validate()?;
        self.budget.check_graph(g)?;
        self.budget.check_query(q)?;
        if has_cycle(g) {
            return Err(Error::CyclicGraph);
        }
        let spelled = Spelled::new(g);
        let mut search = SubseqSearch {
            q,
            k1: k.k1,
            closures: spelled.closures(k.k2),
            spelled: &spelled,
            by_char: vec![None; 256],
            best: 0,
        };
        Ok(search.run())
    }

    /// Longest subsequence of `q` that is embeddable in the acyclic `g`.
    pub fn lcs_sg(&self, q: &[u8], g: &PangenomeGraph) -> Result<usize> {
        self.search(q, g, GapParams::UNBOUNDED)
    }

    /// Longest subsequence of `q` with query steps `<= k1` that embeds in the
    /// acyclic `g` with character steps `<= k2`.
    pub fn fglcs(&self, q: &[u8], g: &PangenomeGraph, k: GapParams) -> Result<usize> {
        self.search(q, g, k)
    }

    /// `(subset mask, seeds in chain order)` for every strictly ordered subset.
    fn ordered_subsets<'m>(
        &self,
        ms: &'m MemSet,
        g: &PangenomeGraph,
    ) -> Result<impl Iterator<Item = Vec<&'m Seed>> + 'm> {
        self.budget.check_seeds(ms)?;
        if ms.len() > 40 {
            return Err(Error::BudgetExceeded(format!("subset enumeration of {} seeds", ms.len())));
        }
        let reach = dfs_reach(g);
        let seeds = ms.seeds();
        if let Some(s) = seeds.iter().find(|s| s.vertex >= g.vertex_count()) {
            return Err(Error::InvalidSeed {
                index: seeds.iter().position(|x| x == s).unwrap(),
                reason: "vertex out of range".into(),
            });
        }
        Ok((0u64..1 << seeds.len()).filter_map(move |mask| {
            let mut chosen: Vec<&Seed> = (0..seeds.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &seeds[i])
                .collect();
            chosen.sort_by_key(|s| s.query.start);
            chosen
                .windows(2)
                .all(|w| ordered(w[0], w[1], &reach))
                .then_some(chosen)
        }))
    }

    /// Largest total length over strictly ordered subsets.
    pub fn memc(&self, ms: &MemSet, g: &PangenomeGraph) -> Result<usize> {
        Ok(self
            .ordered_subsets(ms, g)?
            .map(|c| c.iter().map(|s| s.len()).sum())
            .max()
            .unwrap_or(0))
    }

    /// Largest strictly ordered subset.
    pub fn msp(&self, ss: &MemSet, g: &PangenomeGraph) -> Result<usize> {
        Ok(self.ordered_subsets(ss, g)?.map(|c| c.len()).max().unwrap_or(0))
    }

    /// Second reference for seed chaining: tries every arrangement of every
    /// subset rather than sorting. Limited to 8 seeds.
    pub fn memc_by_permutation(&self, ms: &MemSet, g: &PangenomeGraph) -> Result<(usize, usize)> {
        self.budget.check_seeds(ms)?;
        if ms.len() > 8 {
            return Err(Error::BudgetExceeded(format!(
                "permutation enumeration of {} seeds",
                ms.len()
            )));
        }
        let reach = dfs_reach(g);
        let seeds = ms.seeds();
        let (mut best_len, mut best_count) = (0, 0);
        for mask in 0u32..1 << seeds.len() {
            let chosen: Vec<&Seed> = (0..seeds.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &seeds[i])
                .collect();
            let k = chosen.len();
            let arrangeable = k <= 1
                || chosen
                    .iter()
                    .copied()
                    .permutations(k)
                    .any(|p| p.windows(2).all(|w| ordered(w[0], w[1], &reach)));
            if arrangeable {
                best_len = best_len.max(chosen.iter().map(|s| s.len()).sum());
                best_count = best_count.max(k);
            }
        }
        Ok((best_len, best_count))
    }

    /// All maximal exact matches inside single vertex labels, by extending
    /// every left-maximal character match as far right as it goes. Ordered
    /// by vertex, then label start, then query start.
    pub fn enumerate_mems(&self, q: &[u8], g: &PangenomeGraph) -> Result<MemSet> {
        self.budget.check_graph(g)?;
        self.budget.check_query(q)?;
        let mut out = Vec::new();
        for (v, vert) in g.vertices().iter().enumerate() {
            let label = &vert.label;
            for i in 0..label.len() {
                for j in 0..q.len() {
                    if label[i] != q[j] || (i > 0 && j > 0 && label[i - 1] == q[j - 1]) {
                        continue;
                    }
                    let mut len = 1;
                    while i + len < label.len() && j + len < q.len() && label[i + len] == q[j + len]
                    {
                        len += 1;
                    }
                    out.push(Seed::new(v, (i, i + len - 1), (j, j + len - 1)));
                }
            }
        }
        Ok(MemSet::from_mems(out))
    }
}
