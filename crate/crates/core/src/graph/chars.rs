use super::PangenomeGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharNode {
    pub vertex: usize,
    pub offset: usize,
    pub ch: u8,
}

/// The character-split graph `G^s`: one node per label character, chained
/// inside each vertex, with one arc from the last character of `u` to the
/// first character of `u'` for every edge `(u, u')`.
///
/// Nodes are numbered vertex-major, so `(v, f)` has id `start(v) + f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharGraph {
    nodes: Vec<CharNode>,
    starts: Vec<usize>,
    succ: Vec<Vec<usize>>,
    arc_count: usize,
}

impl CharGraph {
    pub fn new(g: &PangenomeGraph) -> Self {
        let mut nodes = Vec::with_capacity(g.total_len());
        let mut starts = Vec::with_capacity(g.vertex_count());
        for (v, vert) in g.vertices().iter().enumerate() {
            starts.push(nodes.len());
            nodes.extend(vert.label.iter().enumerate().map(|(offset, &ch)| CharNode {
                vertex: v,
                offset,
                ch,
            }));
        }
        let mut succ = vec![Vec::new(); nodes.len()];
        for (id, node) in nodes.iter().enumerate() {
            if node.offset + 1 < g.label(node.vertex).len() {
                succ[id].push(id + 1);
            }
        }
        for (u, v) in g.edges() {
            let last = starts[u] + g.label(u).len() - 1;
            succ[last].push(starts[v]);
        }
        for out in &mut succ {
            out.sort_unstable();
        }
        let arc_count = succ.iter().map(Vec::len).sum();
        CharGraph {
            nodes,
            starts,
            succ,
            arc_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn nodes(&self) -> &[CharNode] {
        &self.nodes
    }

    pub fn node_id(&self, vertex: usize, offset: usize) -> usize {
        self.starts[vertex] + offset
    }

    pub fn successors(&self, id: usize) -> &[usize] {
        &self.succ[id]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }
}

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs minimum arc counts in `G^s` (Floyd–Warshall, `O(N³)` time and
/// `N²` memory).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharDistMatrix {
    n: usize,
    starts: Vec<usize>,
    cells: Vec<u32>,
}

impl CharDistMatrix {
    pub fn new(cg: &CharGraph) -> Self {
        let n = cg.node_count();
        let mut cells = vec![UNREACHABLE; n * n];
        for i in 0..n {
            cells[i * n + i] = 0;
        }
        for (u, v) in cg.arcs() {
            let c = &mut cells[u * n + v];
            *c = (*c).min(1);
        }
        for k in 0..n {
            for i in 0..n {
                let ik = cells[i * n + k];
                if ik == UNREACHABLE {
                    continue;
                }
                for j in 0..n {
                    let kj = cells[k * n + j];
                    if kj != UNREACHABLE && ik + kj < cells[i * n + j] {
                        cells[i * n + j] = ik + kj;
                    }
                }
            }
        }
        CharDistMatrix {
            n,
            starts: cg.starts.clone(),
            cells,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance between node ids, `None` if unreachable.
    #[inline]
    pub fn get(&self, from: usize, to: usize) -> Option<u32> {
        match self.cells[from * self.n + to] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Distance from `(u, f)` to `(u', f')`.
    #[inline]
    pub fn between(&self, from: (usize, usize), to: (usize, usize)) -> Option<u32> {
        self.get(self.starts[from.0] + from.1, self.starts[to.0] + to.1)
    }
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use std::collections::VecDeque;

    use super::*;
    use crate::graph::parse_tsv;

    fn bfs(cg: &CharGraph, s: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; cg.node_count()];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let d = dist[u].unwrap();
            for &v in cg.successors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    #[test]
    fn split_two_vertices() {
        let g = parse_tsv(b"V a ab\nV b c\nE a b\n").unwrap();
        let cg = CharGraph::new(&g);
        assert_eq!(cg.node_count(), 3);
        assert_eq!(cg.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(cg.arc_count(), g.edge_count() + g.total_len() - g.vertex_count());
        let cd = CharDistMatrix::new(&cg);
        assert_eq!(cd.between((0, 0), (1, 0)), Some(2));
    }

    #[test]
    fn split_single_character() {
        let g = parse_tsv(b"V a x\n").unwrap();
        let cg = CharGraph::new(&g);
        assert_eq!(cg.node_count(), 1);
        assert_eq!(cg.arc_count(), 0);
    }

    #[test]
    fn split_self_loop() {
        let g = parse_tsv(b"V a aa\nE a a\n").unwrap();
        let cg = CharGraph::new(&g);
        assert_eq!(cg.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!(cg.arc_count(), 1 + 2 - 1);
        let cd = CharDistMatrix::new(&cg);
        assert_eq!(cd.get(1, 0), Some(1));
        assert_eq!(cd.get(0, 0), Some(0));
    }

    #[test]
    fn node_characters_match_labels() {
        let g = parse_tsv(b"V a acg\nV b tt\nE a b\nE b a\n").unwrap();
        let cg = CharGraph::new(&g);
        for n in cg.nodes() {
            assert_eq!(n.ch, g.label(n.vertex)[n.offset]);
            assert_eq!(cg.nodes()[cg.node_id(n.vertex, n.offset)], *n);
        }
    }

    #[test]
    fn intra_vertex_distance() {
        let g = parse_tsv(b"V v abcd\n").unwrap();
        let cd = CharDistMatrix::new(&CharGraph::new(&g));
        assert_eq!(cd.between((0, 0), (0, 3)), Some(3));
        assert_eq!(cd.between((0, 3), (0, 0)), None);
    }

    #[test]
    fn unreachable_between_components() {
        let g = parse_tsv(b"V a x\nV b y\n").unwrap();
        let cd = CharDistMatrix::new(&CharGraph::new(&g));
        assert_eq!(cd.get(0, 1), None);
        assert_eq!(cd.get(1, 0), None);
    }

    #[test]
    fn matches_bfs_with_cycles() {
        let g = parse_tsv(
            b"V a abc\nV b d\nV c ef\nV d g\nE a b\nE a c\nE b d\nE c d\nE d a\nE c c\n",
        )
        .unwrap();
        let cg = CharGraph::new(&g);
        let cd = CharDistMatrix::new(&cg);
        for s in 0..cg.node_count() {
            let oracle = bfs(&cg, s);
            for t in 0..cg.node_count() {
                assert_eq!(cd.get(s, t), oracle[t]);
            }
        }
    }
}
