use super::PangenomeGraph;

/// Dense `n × n` reachability over paths of at least one edge. A vertex
/// reaches itself only through a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl ReachMatrix {
    /// Warshall's transitive closure of the adjacency relation, `O(n³)`.
    pub fn new(g: &PangenomeGraph) -> Self {
        let n = g.vertex_count();
        let mut cells = vec![false; n * n];
        for (u, v) in g.edges() {
            cells[u * n + v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !cells[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if cells[k * n + j] {
                        cells[i * n + j] = true;
                    }
                }
            }
        }
        ReachMatrix { n, cells }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.cells[u * self.n + v]
    }
}
