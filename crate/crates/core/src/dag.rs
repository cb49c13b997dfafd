//! Product DAGs and the two longest-path dynamic programs over them.
//!
//! Both solvers process nodes in a depth-first topological order and relax
//! every out-arc once. `dist[v]` is only raised on a strict improvement; on
//! an exact tie the parent pointer moves to the smaller in-neighbor index,
//! and among equally good end nodes the smallest index is reported. That
//! makes the returned optimum independent of the topological order chosen.

use std::borrow::Cow;

use crate::error::{Error, Result};

/// A DAG whose nodes carry a payload and a non-negative weight. Arcs carry
/// a weight only if the DAG was created with [`MatchDag::with_arc_weights`].
#[derive(Debug, Clone)]
pub struct MatchDag<P> {
    payloads: Vec<P>,
    weights: Vec<u64>,
    succ: Vec<Vec<u32>>,
    arc_weights: Option<Vec<Vec<u64>>>,
    arc_count: usize,
}

impl<P> Default for MatchDag<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P> MatchDag<P> {
    pub fn new() -> Self {
        MatchDag {
            payloads: Vec::new(),
            weights: Vec::new(),
            succ: Vec::new(),
            arc_weights: None,
            arc_count: 0,
        }
    }

    pub fn with_arc_weights() -> Self {
        MatchDag {
            arc_weights: Some(Vec::new()),
            ..Self::new()
        }
    }

    pub fn add_node(&mut self, payload: P, weight: u64) -> usize {
        let id = self.payloads.len();
        assert!(id < u32::MAX as usize, "too many nodes");
        self.payloads.push(payload);
        self.weights.push(weight);
        self.succ.push(Vec::new());
        if let Some(aw) = &mut self.arc_weights {
            aw.push(Vec::new());
        }
        id
    }

    fn check_range(&self, from: usize, to: usize) -> Result<()> {
        let nodes = self.node_count();
        if from >= nodes || to >= nodes {
            return Err(Error::ArcOutOfRange { from, to, nodes });
        }
        Ok(())
    }

    pub fn add_arc(&mut self, from: usize, to: usize) -> Result<()> {
        self.check_range(from, to)?;
        if self.arc_weights.is_some() {
            return Err(Error::MissingArcWeight { from, to });
        }
        self.succ[from].push(to as u32);
        self.arc_count += 1;
        Ok(())
    }

    /// Adds unweighted arcs `from -> t` for every `t` in `targets`, sizing
    /// the out-list once.
    pub fn add_arcs(&mut self, from: usize, targets: &[usize]) -> Result<()> {
        for &to in targets {
            self.check_range(from, to)?;
            if self.arc_weights.is_some() {
                return Err(Error::MissingArcWeight { from, to });
            }
        }
        let out = &mut self.succ[from];
        out.reserve_exact(targets.len());
        out.extend(targets.iter().map(|&t| t as u32));
        self.arc_count += targets.len();
        Ok(())
    }

    pub fn add_weighted_arc(&mut self, from: usize, to: usize, weight: u64) -> Result<()> {
        self.check_range(from, to)?;
        let Some(aw) = &mut self.arc_weights else {
            return Err(Error::Malformed(format!(
                "weighted arc {from} -> {to} on a DAG without arc weights"
            )));
        };
        aw[from].push(weight);
        self.succ[from].push(to as u32);
        self.arc_count += 1;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.payloads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payloads.is_empty()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc_weights(&self) -> bool {
        self.arc_weights.is_some()
    }

    pub fn payload(&self, v: usize) -> &P {
        &self.payloads[v]
    }

    pub fn payloads(&self) -> &[P] {
        &self.payloads
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Replaces every node weight with `f(old)`.
    pub fn map_weights(mut self, f: impl Fn(u64) -> u64) -> Self {
        for w in &mut self.weights {
            *w = f(*w);
        }
        self
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[v].iter().map(|&t| t as usize)
    }

    /// Out-arcs of `v` with their weight (`None` on an unweighted DAG).
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, Option<u64>)> + '_ {
        let weights = self.arc_weights.as_ref().map(|aw| aw[v].as_slice());
        self.succ[v]
            .iter()
            .enumerate()
            .map(move |(k, &t)| (t as usize, weights.map(|w| w[k])))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| self.successors(u).map(move |v| (u, v)))
    }

    /// In-neighbor lists `N⁻(v)`, each with the weight of the arc.
    pub fn predecessors(&self) -> Vec<Vec<(usize, Option<u64>)>> {
        let mut pred = vec![Vec::new(); self.node_count()];
        for u in 0..self.node_count() {
            for (v, w) in self.out_arcs(u) {
                pred[v].push((u, w));
            }
        }
        pred
    }

    /// Best weight of a direct arc `from -> to`, if any.
    fn arc_weight(&self, from: usize, to: usize) -> Option<Option<u64>> {
        self.out_arcs(from)
            .filter(|&(t, _)| t == to)
            .map(|(_, w)| w)
            .max()
    }
}

/// Which of the two longest-path objectives a result was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Sum of arc weights; a lone node scores 0.
    Edge,
    /// Sum of node weights.
    Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPathResult {
    pub score: u64,
    /// One optimal path; empty only for an empty DAG.
    pub path: Vec<usize>,
    pub dist: Vec<u64>,
    pub parent: Vec<Option<usize>>,
}

/// Depth-first topological order: each node is put at the front of the list
/// once it finishes. Roots and out-neighbors are explored from the highest
/// index down, so unconstrained nodes come out in ascending index order.
pub fn topo_sort<P>(dag: &MatchDag<P>) -> Result<Vec<usize>> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;

    let n = dag.node_count();
    let adj: Vec<Cow<'_, [u32]>> = dag
        .succ
        .iter()
        .map(|out| {
            if out.is_sorted() {
                Cow::Borrowed(out.as_slice())
            } else {
                let mut s = out.clone();
                s.sort_unstable();
                Cow::Owned(s)
            }
        })
        .collect();

    let mut color = vec![WHITE; n];
    let mut finished = Vec::with_capacity(n);
    // (node, number of out-neighbors still to examine)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in (0..n).rev() {
        if color[root] != WHITE {
            continue;
        }
        color[root] = GRAY;
        stack.push((root, adj[root].len()));
        while let Some(top) = stack.last_mut() {
            let (u, remaining) = *top;
            if remaining == 0 {
                color[u] = BLACK;
                finished.push(u);
                stack.pop();
                continue;
            }
            top.1 -= 1;
            let v = adj[u][remaining - 1] as usize;
            match color[v] {
                WHITE => {
                    color[v] = GRAY;
                    stack.push((v, adj[v].len()));
                }
                GRAY => return Err(Error::Cycle { from: u, to: v }),
                _ => {}
            }
        }
    }
    finished.reverse();
    Ok(finished)
}

fn relax(cand: u64, u: usize, v: usize, dist: &mut [u64], parent: &mut [Option<usize>]) {
    if cand > dist[v] || (cand == dist[v] && parent[v].is_some_and(|p| u < p)) {
        dist[v] = cand;
        parent[v] = Some(u);
    }
}

fn finish(dist: Vec<u64>, parent: Vec<Option<usize>>) -> LongestPathResult {
    let Some(score) = dist.iter().copied().max() else {
        return LongestPathResult {
            score: 0,
            path: Vec::new(),
            dist,
            parent,
        };
    };
    let end = dist.iter().position(|&d| d == score).unwrap();
    let mut path = vec![end];
    let mut cur = end;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    LongestPathResult {
        score,
        path,
        dist,
        parent,
    }
}

/// Edge-weighted longest path: `dist[v] = max over u ∈ N⁻(v) of dist[u] + w(u,v)`,
/// or 0 for a node without in-neighbors.
pub fn longest_path_edge<P>(dag: &MatchDag<P>) -> Result<LongestPathResult> {
    let Some(arc_weights) = &dag.arc_weights else {
        return match dag.arcs().next() {
            Some((from, to)) => Err(Error::MissingArcWeight { from, to }),
            None => Ok(finish(vec![0; dag.node_count()], vec![None; dag.node_count()])),
        };
    };
    let order = topo_sort(dag)?;
    let n = dag.node_count();
    let mut dist = vec![0u64; n];
    let mut parent = vec![None; n];
    for &u in &order {
        for (&v, &w) in dag.succ[u].iter().zip(&arc_weights[u]) {
            relax(dist[u] + w, u, v as usize, &mut dist, &mut parent);
        }
    }
    let res = finish(dist, parent);
    debug_assert_eq!(path_weight(dag, &res.path, Weighting::Edge), Some(res.score));
    Ok(res)
}

/// Vertex-weighted longest path: `dist[v] = weight(v) + max over u ∈ N⁻(v) of dist[u]`,
/// or `weight(v)` for a node without in-neighbors.
pub fn longest_path_vertex<P>(dag: &MatchDag<P>) -> Result<LongestPathResult> {
    let order = topo_sort(dag)?;
    let n = dag.node_count();
    let mut dist = dag.weights.clone();
    let mut parent = vec![None; n];
    for &u in &order {
        for &v in &dag.succ[u] {
            let v = v as usize;
            relax(dist[u] + dag.weights[v], u, v, &mut dist, &mut parent);
        }
    }
    let res = finish(dist, parent);
    debug_assert_eq!(path_weight(dag, &res.path, Weighting::Vertex), Some(res.score));
    Ok(res)
}

/// Recomputes the objective along `path`; `None` if it does not follow arcs.
pub fn path_weight<P>(dag: &MatchDag<P>, path: &[usize], mode: Weighting) -> Option<u64> {
    if path.iter().any(|&v| v >= dag.node_count()) {
        return None;
    }
    let mut total = match (mode, path.first()) {
        (_, None) => return Some(0),
        (Weighting::Edge, Some(_)) => 0,
        (Weighting::Vertex, Some(&v)) => dag.weight(v),
    };
    for w in path.windows(2) {
        let arc = dag.arc_weight(w[0], w[1])?;
        total += match mode {
            Weighting::Edge => arc?,
            Weighting::Vertex => dag.weight(w[1]),
        };
    }
    Some(total)
}

/// Checks a solved result against the recurrence it claims to satisfy:
/// every `dist[v]` equals the recurrence applied to its in-neighbors' final
/// values, the score is the table maximum, and the path realizes the score.
pub fn verify_recurrence<P>(
    dag: &MatchDag<P>,
    res: &LongestPathResult,
    mode: Weighting,
) -> std::result::Result<(), String> {
    let n = dag.node_count();
    if res.dist.len() != n || res.parent.len() != n {
        return Err("table sizes do not match the DAG".into());
    }
    for (v, pred) in dag.predecessors().into_iter().enumerate() {
        let expected = match mode {
            Weighting::Edge => pred
                .iter()
                .map(|&(u, w)| res.dist[u] + w.unwrap_or(0))
                .max()
                .unwrap_or(0),
            Weighting::Vertex => {
                dag.weight(v) + pred.iter().map(|&(u, _)| res.dist[u]).max().unwrap_or(0)
            }
        };
        if res.dist[v] != expected {
            return Err(format!(
                "dist[{v}] = {} but recurrence gives {expected}",
                res.dist[v]
            ));
        }
        if let Some(p) = res.parent[v] {
            let step = match mode {
                Weighting::Edge => dag.arc_weight(p, v).flatten(),
                Weighting::Vertex => dag.arc_weight(p, v).map(|_| dag.weight(v)),
            };
            if step.map(|s| res.dist[p] + s) != Some(res.dist[v]) {
                return Err(format!("parent[{v}] = {p} does not realize dist[{v}]"));
            }
        }
    }
    let max = res.dist.iter().copied().max().unwrap_or(0);
    if res.score != max {
        return Err(format!("score {} != max dist {max}", res.score));
    }
    match path_weight(dag, &res.path, mode) {
        Some(w) if w == res.score => Ok(()),
        Some(w) => Err(format!("path weight {w} != score {}", res.score)),
        None => Err("reported path does not follow arcs".into()),
    }
}

/// Reads the debug DAG format: `N <idx> <weight>` and
/// `A <src> <dst> [weight]` records. Node indices must cover `0..n` exactly
/// once; arc weights must be given on all arcs or none.
pub fn parse_dag_tsv(text: &str) -> Result<MatchDag<usize>> {
    let mut nodes: Vec<Option<u64>> = Vec::new();
    let mut arcs: Vec<(usize, usize, Option<u64>)> = Vec::new();
    let num = |s: &str, what: &str| {
        s.parse::<u64>()
            .map_err(|_| Error::Malformed(format!("bad {what} `{s}`")))
    };
    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let rec = match fields.as_slice() {
            [] => Ok(()),
            [c, ..] if c.starts_with('#') => Ok(()),
            ["N", idx, w] => (|| {
                let idx = num(idx, "node index")? as usize;
                let w = num(w, "node weight")?;
                if nodes.len() <= idx {
                    nodes.resize(idx + 1, None);
                }
                if nodes[idx].replace(w).is_some() {
                    return Err(Error::Malformed(format!("node {idx} declared twice")));
                }
                Ok(())
            })(),
            ["A", s, d, rest @ ..] if rest.len() <= 1 => (|| {
                let w = rest.first().map(|w| num(w, "arc weight")).transpose()?;
                arcs.push((num(s, "arc source")? as usize, num(d, "arc target")? as usize, w));
                Ok(())
            })(),
            _ => Err(Error::Malformed(format!("unknown record `{line}`"))),
        };
        rec.map_err(|e| e.at_line(line_no))?;
    }
    let weighted = arcs.iter().any(|a| a.2.is_some());
    let mut dag = if weighted {
        MatchDag::with_arc_weights()
    } else {
        MatchDag::new()
    };
    for (idx, w) in nodes.into_iter().enumerate() {
        let w = w.ok_or_else(|| Error::Malformed(format!("node {idx} missing")))?;
        dag.add_node(idx, w);
    }
    for (s, d, w) in arcs {
        match w {
            Some(w) => dag.add_weighted_arc(s, d, w)?,
            None if weighted => return Err(Error::MissingArcWeight { from: s, to: d }),
            None => dag.add_arc(s, d)?,
        }
    }
    Ok(dag)
}
