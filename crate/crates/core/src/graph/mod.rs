//! Vertex-labeled pangenome graphs and the preprocessing products the
//! solvers consult: vertex reachability and character-level distances.
//!
//! Vertices are addressed internally by a dense `usize` index in insertion
//! order; the textual id from the input file is kept for reporting.

mod chars;
mod parse;
mod reach;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use chars::{CharDistMatrix, CharGraph, CharNode};
pub use parse::{parse_gfa, parse_graph, parse_tsv, write_tsv, GfaParse, GraphFormat};
pub use reach::ReachMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub label: Vec<u8>,
}

/// A directed graph `G = (V, E, δ)` whose vertices carry non-empty byte
/// labels. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PangenomeGraph {
    vertices: Vec<Vertex>,
    index: HashMap<String, usize>,
    // sorted and deduplicated
    succ: Vec<Vec<usize>>,
    edge_count: usize,
    total_len: usize,
}

impl PangenomeGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// The edgeless one-vertex graph whose only label is `label`.
    pub fn single_vertex(label: &[u8]) -> Result<Self> {
        let mut b = Self::builder();
        b.add_vertex("v", label)?;
        b.build()
    }

    /// Number of vertices, `n`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Total label length, `N`.
    pub fn total_len(&self) -> usize {
        self.total_len
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &[u8] {
        &self.vertices[v].label
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// All edges in ascending `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    /// Kahn's algorithm; true iff every vertex gets dequeued.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.edges() {
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        seen == n
    }

    pub fn spell(&self, path: &GraphPath) -> Vec<u8> {
        path.vertices()
            .iter()
            .flat_map(|&v| self.label(v).iter().copied())
            .collect()
    }

    /// Recomputes the cached counts and structural invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let total: usize = self.vertices.iter().map(|v| v.label.len()).sum();
        if total != self.total_len {
            return Err(Error::Malformed(format!(
                "cached total length {} != recomputed {}",
                self.total_len, total
            )));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.label.is_empty()) {
            return Err(Error::EmptyLabel(v.id.clone()));
        }
        let edges: usize = self.succ.iter().map(Vec::len).sum();
        if edges != self.edge_count || self.index.len() != self.vertices.len() {
            return Err(Error::Malformed("cached counts out of date".into()));
        }
        for out in &self.succ {
            if out.windows(2).any(|w| w[0] >= w[1]) || out.iter().any(|&v| v >= self.vertices.len())
            {
                return Err(Error::Malformed("adjacency not sorted or out of range".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    index: HashMap<String, usize>,
    edges: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn add_vertex(&mut self, id: &str, label: &[u8]) -> Result<usize> {
        if label.is_empty() {
            return Err(Error::EmptyLabel(id.to_string()));
        }
        if self.index.contains_key(id) {
            return Err(Error::DuplicateVertex(id.to_string()));
        }
        let idx = self.vertices.len();
        self.index.insert(id.to_string(), idx);
        self.vertices.push(Vertex {
            id: id.to_string(),
            label: label.to_vec(),
        });
        Ok(idx)
    }

    /// Endpoints are resolved in [`GraphBuilder::build`], so edges may be
    /// added before their vertices.
    pub fn add_edge(&mut self, from: &str, to: &str) {
        self.edges.push((from.to_string(), to.to_string()));
    }

    pub fn build(self) -> Result<PangenomeGraph> {
        let n = self.vertices.len();
        let mut succ = vec![Vec::new(); n];
        for (from, to) in &self.edges {
            let resolve = |id: &String| {
                self.index.get(id).copied().ok_or_else(|| Error::DanglingEdge {
                    from: from.clone(),
                    to: to.clone(),
                    missing: id.clone(),
                })
            };
            let u = resolve(from)?;
            let v = resolve(to)?;
            succ[u].push(v);
        }
        for out in &mut succ {
            out.sort_unstable();
            out.dedup();
        }
        let edge_count = succ.iter().map(Vec::len).sum();
        let total_len = self.vertices.iter().map(|v| v.label.len()).sum();
        Ok(PangenomeGraph {
            vertices: self.vertices,
            index: self.index,
            succ,
            edge_count,
            total_len,
        })
    }
}

/// A non-empty vertex walk `u_0..u_k` whose consecutive pairs are edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPath(Vec<usize>);

impl GraphPath {
    pub fn new(g: &PangenomeGraph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPath);
        }
        if let Some(&bad) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::NotAnEdge {
                    from: g.id(w[0]).to_string(),
                    to: g.id(w[1]).to_string(),
                });
            }
        }
        Ok(GraphPath(vertices))
    }

    pub fn from_ids(g: &PangenomeGraph, ids: &[&str]) -> Result<Self> {
        let vertices = ids
            .iter()
            .map(|id| g.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex() -> PangenomeGraph {
        parse_tsv(b"V a ab\nV b ba\nE a b\n").unwrap()
    }

    #[test]
    fn spell_concatenates_labels() {
        let g = two_vertex();
        let p = GraphPath::from_ids(&g, &["a", "b"]).unwrap();
        assert_eq!(g.spell(&p), b"abba");
    }

    #[test]
    fn spell_single_vertex() {
        let g = parse_tsv(b"V a xyz\n").unwrap();
        let p = GraphPath::from_ids(&g, &["a"]).unwrap();
        assert_eq!(g.spell(&p), b"xyz");
    }

    #[test]
    fn path_over_missing_edge_is_rejected() {
        let g = parse_tsv(b"V a x\nV b y\nV c z\nE a b\nE b c\n").unwrap();
        let err = GraphPath::from_ids(&g, &["a", "c"]).unwrap_err();
        assert!(matches!(err, Error::NotAnEdge { .. }));
        assert_eq!(GraphPath::new(&g, vec![]).unwrap_err(), Error::EmptyPath);
    }

    #[test]
    fn duplicate_edges_collapse_and_self_loops_stay() {
        let g = parse_tsv(b"V a x\nV b y\nE a b\nE a b\nE b b\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 1));
        assert!(!g.is_acyclic());
        g.check_invariants().unwrap();
    }

    #[test]
    fn builder_rejects_bad_vertices() {
        let mut b = PangenomeGraph::builder();
        assert_eq!(b.add_vertex("a", b""), Err(Error::EmptyLabel("a".into())));
        b.add_vertex("a", b"x").unwrap();
        assert_eq!(b.add_vertex("a", b"y"), Err(Error::DuplicateVertex("a".into())));
        b.add_edge("a", "zz");
        assert!(matches!(b.build(), Err(Error::DanglingEdge { missing, .. }) if missing == "zz"));
    }
}
