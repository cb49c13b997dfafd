//! Gap-constrained LCS: consecutive matches may be at most `k1` apart in
//! the query and at most `k2` characters apart along the spelled path.
//!
//! The cross-vertex gap is tested against shortest character distances in
//! `G^s`; a bounded-gap path between two characters exists iff the shortest
//! one is within the bound. Within one vertex the offset difference is used.

use std::fmt;
use std::str::FromStr;

use crate::dag::{longest_path_vertex, MatchDag};
use crate::error::{Error, Result};
use crate::graph::{CharDistMatrix, CharGraph, PangenomeGraph, ReachMatrix};
use crate::lcs::{block_starts, match_nodes, Alignment, HNode};

/// A gap bound: a positive integer or no limit at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapLimit {
    Bounded(u32),
    Unbounded,
}

impl GapLimit {
    pub fn bounded(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidGap(k.to_string()));
        }
        Ok(GapLimit::Bounded(k))
    }

    #[inline]
    pub fn allows(self, gap: usize) -> bool {
        match self {
            GapLimit::Bounded(k) => gap <= k as usize,
            GapLimit::Unbounded => true,
        }
    }
}

impl FromStr for GapLimit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "unbounded" => Ok(GapLimit::Unbounded),
            _ => s
                .parse::<u32>()
                .map_err(|_| Error::InvalidGap(s.to_string()))
                .and_then(GapLimit::bounded),
        }
    }
}

impl fmt::Display for GapLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapLimit::Bounded(k) => write!(f, "{k}"),
            GapLimit::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GapParams {
    /// Largest allowed step between consecutive query positions.
    pub k1: GapLimit,
    /// Largest allowed step along the spelled path.
    pub k2: GapLimit,
}

impl GapParams {
    pub const UNBOUNDED: GapParams = GapParams {
        k1: GapLimit::Unbounded,
        k2: GapLimit::Unbounded,
    };

    pub fn new(k1: GapLimit, k2: GapLimit) -> Self {
        GapParams { k1, k2 }
    }

    pub fn validate(&self) -> Result<()> {
        for k in [self.k1, self.k2] {
            if k == GapLimit::Bounded(0) {
                return Err(Error::InvalidGap("0".into()));
            }
        }
        Ok(())
    }
}

/// Realized steps between two consecutive matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    pub dq: usize,
    pub dg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapAlignment {
    pub alignment: Alignment,
    /// One entry per consecutive pair, `score - 1` in total.
    pub gaps: Vec<Gap>,
}

/// The graph-side step from `(u, f)` to `(u2, f2)` as `H_gap` measures it.
fn graph_gap(cd: &CharDistMatrix, (u, f): (usize, usize), (u2, f2): (usize, usize)) -> Option<usize> {
    if u == u2 {
        (f2 > f).then(|| f2 - f)
    } else {
        cd.between((u, f), (u2, f2)).map(|d| d as usize)
    }
}

impl GapAlignment {
    pub fn from_path(
        q: &[u8],
        dag: &MatchDag<HNode>,
        path: &[usize],
        cd: &CharDistMatrix,
    ) -> Self {
        let alignment = Alignment::from_path(q, dag, path);
        let gaps = alignment
            .q_positions
            .windows(2)
            .zip(alignment.g_positions.windows(2))
            .map(|(qw, gw)| Gap {
                dq: qw[1] - qw[0],
                dg: graph_gap(cd, gw[0], gw[1]).expect("arc implies a graph step"),
            })
            .collect();
        GapAlignment { alignment, gaps }
    }

    /// [`Alignment::validate`] plus: every recorded gap matches the
    /// embedding and satisfies `0 < dq <= k1`, `0 < dg <= k2`.
    pub fn validate(
        &self,
        q: &[u8],
        g: &PangenomeGraph,
        k: GapParams,
        r: &ReachMatrix,
        cd: &CharDistMatrix,
    ) -> std::result::Result<(), String> {
        self.alignment.validate(q, g, r)?;
        let a = &self.alignment;
        if self.gaps.len() != a.score.saturating_sub(1) {
            return Err(format!("{} gaps for {} matches", self.gaps.len(), a.score));
        }
        for (j, gap) in self.gaps.iter().enumerate() {
            let dq = a.q_positions[j + 1] - a.q_positions[j];
            let dg = graph_gap(cd, a.g_positions[j], a.g_positions[j + 1]);
            if gap.dq != dq || Some(gap.dg) != dg {
                return Err(format!("gap {j} does not match the embedding"));
            }
            if gap.dq == 0 || !k.k1.allows(gap.dq) {
                return Err(format!("gap {j}: dq = {} outside (0, {}]", gap.dq, k.k1));
            }
            if gap.dg == 0 || !k.k2.allows(gap.dg) {
                return Err(format!("gap {j}: dg = {} outside (0, {}]", gap.dg, k.k2));
            }
        }
        Ok(())
    }
}

/// Builds `H_gap`: the node set of `H`, with an arc iff
/// `0 < i' - i <= k1` and the graph-side step is in `(0, k2]`.
pub fn build_h_gap(
    q: &[u8],
    g: &PangenomeGraph,
    k: GapParams,
    cd: &CharDistMatrix,
) -> Result<MatchDag<HNode>> {
    k.validate()?;
    let nodes = match_nodes(q, g);
    let starts = block_starts(&nodes, q.len());
    let mut dag = MatchDag::new();
    for &n in &nodes {
        dag.add_node(n, 1);
    }
    let mut targets = Vec::new();
    for (a, na) in nodes.iter().enumerate() {
        let hi = match k.k1 {
            GapLimit::Bounded(k1) => (na.i + k1 as usize).min(q.len() - 1),
            GapLimit::Unbounded => q.len() - 1,
        };
        let range = starts[na.i + 1]..starts[hi + 1];
        targets.clear();
        for (b, nb) in nodes[range.clone()].iter().enumerate() {
            let step = graph_gap(cd, (na.vertex, na.offset), (nb.vertex, nb.offset));
            if step.is_some_and(|d| d > 0 && k.k2.allows(d)) {
                targets.push(range.start + b);
            }
        }
        dag.add_arcs(a, &targets)?;
    }
    Ok(dag)
}

/// Longest `(k1, k2)`-gap common subsequence between `q` and `g`.
pub fn solve_fglcs_sg(q: &[u8], g: &PangenomeGraph, k: GapParams) -> Result<GapAlignment> {
    k.validate()?;
    let cd = CharDistMatrix::new(&CharGraph::new(g));
    solve_fglcs_sg_with(q, g, k, &cd)
}

pub fn solve_fglcs_sg_with(
    q: &[u8],
    g: &PangenomeGraph,
    k: GapParams,
    cd: &CharDistMatrix,
) -> Result<GapAlignment> {
    let h = build_h_gap(q, g, k, cd)?;
    let lp = longest_path_vertex(&h)?;
    Ok(GapAlignment::from_path(q, &h, &lp.path, cd))
}
