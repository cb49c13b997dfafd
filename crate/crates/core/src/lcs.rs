//! Longest common subsequence between a query and a pangenome graph.
//!
//! The product graph `H` has one node per character match `Q_i = δ(u)_f`
//! and an arc `(i,u,f) -> (i',u',f')` whenever `i < i'` and either
//! `u ≠ u'` with `u` reaching `u'`, or `u = u'` with `f < f'`. Every path in
//! `H` reads off a common subsequence and every common subsequence has a
//! path, so a longest path (unit node weights) is an LCS.

use crate::dag::{longest_path_vertex, MatchDag};
use crate::graph::{PangenomeGraph, ReachMatrix};

/// A node of `H`: query index `i` matched to offset `f` of vertex `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HNode {
    pub i: usize,
    pub vertex: usize,
    pub offset: usize,
}

/// A common subsequence together with one embedding into both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub score: usize,
    pub subsequence: Vec<u8>,
    /// Strictly increasing indices into the query.
    pub q_positions: Vec<usize>,
    /// `(vertex, offset)` of each matched graph character.
    pub g_positions: Vec<(usize, usize)>,
}

impl Alignment {
    pub fn empty() -> Self {
        Alignment {
            score: 0,
            subsequence: Vec::new(),
            q_positions: Vec::new(),
            g_positions: Vec::new(),
        }
    }

    /// Reads the alignment off a path of `H` (or `H_gap`) node indices.
    pub fn from_path(q: &[u8], dag: &MatchDag<HNode>, path: &[usize]) -> Self {
        let nodes: Vec<HNode> = path.iter().map(|&v| *dag.payload(v)).collect();
        Alignment {
            score: nodes.len(),
            subsequence: nodes.iter().map(|n| q[n.i]).collect(),
            q_positions: nodes.iter().map(|n| n.i).collect(),
            g_positions: nodes.iter().map(|n| (n.vertex, n.offset)).collect(),
        }
    }

    /// Checks lengths, character equality on both sides, strictly increasing
    /// query positions, and the `H` arc rule between consecutive graph
    /// positions.
    pub fn validate(&self, q: &[u8], g: &PangenomeGraph, r: &ReachMatrix) -> Result<(), String> {
        let k = self.score;
        if self.subsequence.len() != k || self.q_positions.len() != k || self.g_positions.len() != k
        {
            return Err(format!(
                "length mismatch: score {k}, subsequence {}, q {}, g {}",
                self.subsequence.len(),
                self.q_positions.len(),
                self.g_positions.len()
            ));
        }
        for (j, (&c, (&qi, &(v, f)))) in self
            .subsequence
            .iter()
            .zip(self.q_positions.iter().zip(&self.g_positions))
            .enumerate()
        {
            if q.get(qi) != Some(&c) {
                return Err(format!("position {j}: Q[{qi}] is not `{}`", c as char));
            }
            if v >= g.vertex_count() || g.label(v).get(f) != Some(&c) {
                return Err(format!("position {j}: graph ({v},{f}) is not `{}`", c as char));
            }
        }
        if self.q_positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err("query positions not strictly increasing".into());
        }
        for (j, w) in self.g_positions.windows(2).enumerate() {
            let ((u, f), (u2, f2)) = (w[0], w[1]);
            let ordered = if u == u2 { f < f2 } else { r.reaches(u, u2) };
            if !ordered {
                return Err(format!("graph positions {j} and {} are not ordered", j + 1));
            }
        }
        Ok(())
    }
}

/// All character matches ordered by `(i, vertex, offset)`.
pub(crate) fn match_nodes(q: &[u8], g: &PangenomeGraph) -> Vec<HNode> {
    let mut nodes = Vec::new();
    for (i, &c) in q.iter().enumerate() {
        for (vertex, v) in g.vertices().iter().enumerate() {
            for (offset, _) in v.label.iter().enumerate().filter(|&(_, &ch)| ch == c) {
                nodes.push(HNode { i, vertex, offset });
            }
        }
    }
    nodes
}

/// Index of the first node with query index `>= i`, for every `i` in `0..=|Q|`.
pub(crate) fn block_starts(nodes: &[HNode], qlen: usize) -> Vec<usize> {
    let mut starts = vec![nodes.len(); qlen + 1];
    for (idx, n) in nodes.iter().enumerate().rev() {
        starts[n.i] = idx;
    }
    for i in (0..qlen).rev() {
        starts[i] = starts[i].min(starts[i + 1]);
    }
    starts
}

/// Builds `H` with unit node weights by scanning every node pair with
/// increasing query index.
pub fn build_h(q: &[u8], g: &PangenomeGraph, r: &ReachMatrix) -> MatchDag<HNode> {
    let nodes = match_nodes(q, g);
    let starts = block_starts(&nodes, q.len());
    let mut dag = MatchDag::new();
    for &n in &nodes {
        dag.add_node(n, 1);
    }
    let mut targets = Vec::new();
    for (a, na) in nodes.iter().enumerate() {
        targets.clear();
        for (b, nb) in nodes.iter().enumerate().skip(starts[na.i + 1]) {
            let linked = if na.vertex == nb.vertex {
                na.offset < nb.offset
            } else {
                r.reaches(na.vertex, nb.vertex)
            };
            if linked {
                targets.push(b);
            }
        }
        dag.add_arcs(a, &targets).expect("node indices in range");
    }
    dag
}

pub fn solve_lcs_sg(q: &[u8], g: &PangenomeGraph) -> Alignment {
    solve_lcs_sg_with(q, g, &ReachMatrix::new(g))
}

/// Like [`solve_lcs_sg`] with a precomputed reachability matrix, for many
/// queries against one graph.
pub fn solve_lcs_sg_with(q: &[u8], g: &PangenomeGraph, r: &ReachMatrix) -> Alignment {
    let h = build_h(q, g, r);
    let lp = longest_path_vertex(&h).expect("H is acyclic by construction");
    Alignment::from_path(q, &h, &lp.path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::topo_sort;
    use crate::graph::parse_tsv;

    fn two_vertex() -> PangenomeGraph {
        parse_tsv(b"V a ab\nV b ba\nE a b\n").unwrap()
    }

    #[test]
    fn node_for_indexing_example() {
        let g = parse_tsv(b"V v acah\n").unwrap();
        let h = build_h(b"xyabcahde", &g, &ReachMatrix::new(&g));
        assert!(h.payloads().contains(&HNode { i: 2, vertex: 0, offset: 0 }));
        assert!(h.payloads().iter().all(|n| b"xyabcahde"[n.i] == b"acah"[n.offset]));
    }

    #[test]
    fn no_matching_character() {
        let g = two_vertex();
        let h = build_h(b"z", &g, &ReachMatrix::new(&g));
        assert!(h.is_empty());
        assert_eq!(solve_lcs_sg(b"z", &g), Alignment::empty());
    }

    #[test]
    fn h_for_two_vertex_example() {
        let g = two_vertex();
        let r = ReachMatrix::new(&g);
        let h = build_h(b"aba", &g, &r);
        let mut nodes = h.payloads().to_vec();
        nodes.sort();
        let expect = |i, vertex, offset| HNode { i, vertex, offset };
        let mut want = vec![
            expect(0, 0, 0),
            expect(2, 0, 0),
            expect(1, 0, 1),
            expect(0, 1, 1),
            expect(2, 1, 1),
            expect(1, 1, 0),
        ];
        want.sort();
        assert_eq!(nodes, want);

        // Every ordered node pair against the arc rule written out directly.
        let p = h.payloads();
        let mut brute = 0;
        for a in p {
            for b in p {
                let graph_ok = if a.vertex != b.vertex {
                    r.reaches(a.vertex, b.vertex)
                } else {
                    a.offset < b.offset
                };
                if a.i < b.i && graph_ok {
                    brute += 1;
                }
            }
        }
        assert_eq!(h.arc_count(), brute);
        assert_eq!(h.arc_count(), 5);
        topo_sort(&h).unwrap();
    }

    #[test]
    fn single_vertex_reduces_to_two_sequence_lcs() {
        let g = PangenomeGraph::single_vertex(b"ab").unwrap();
        let a = solve_lcs_sg(b"aba", &g);
        assert_eq!(a.score, 2);
        assert_eq!(a.subsequence, b"ab");
    }

    #[test]
    fn empty_query() {
        assert_eq!(solve_lcs_sg(b"", &two_vertex()).score, 0);
    }

    #[test]
    fn crosses_an_edge() {
        let g = two_vertex();
        let a = solve_lcs_sg(b"aba", &g);
        assert_eq!(a.score, 3);
        assert_eq!(a.subsequence, b"aba");
        a.validate(b"aba", &g, &ReachMatrix::new(&g)).unwrap();
    }

    #[test]
    fn validate_rejects_unordered_positions() {
        let g = two_vertex();
        let r = ReachMatrix::new(&g);
        let bad = Alignment {
            score: 2,
            subsequence: b"aa".to_vec(),
            q_positions: vec![0, 2],
            g_positions: vec![(1, 1), (0, 0)],
        };
        assert!(bad.validate(b"aba", &g, &r).is_err());
        let bad = Alignment {
            q_positions: vec![2, 0],
            g_positions: vec![(0, 0), (1, 1)],
            ..bad
        };
        assert!(bad.validate(b"aba", &g, &r).is_err());
    }
}
