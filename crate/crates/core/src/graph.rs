//! Simple undirected graphs and the basic invariants: BFS distance,
//! diameter, inverse degree, fitness, level decomposition and articulation
//! vertices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::rational::{frac, recip, Rational};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric; there are no loops or
/// parallel edges. Graphs are immutable once built: every transformation
/// returns a new graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds the simple graph on `n` vertices with the given edges.
    /// Duplicate edges (in either orientation) collapse into one.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count(), "permutation length");
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (u, v) in self.edges() {
            adj[perm[u]].push(perm[v]);
            adj[perm[v]].push(perm[u]);
        }
        Graph::from_raw_adjacency(adj)
    }

    /// Adds edges, collapsing duplicates.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = self.edge_list();
        edges.extend_from_slice(extra);
        Graph::new(self.vertex_count(), &edges)
    }

    /// Appends `count` isolated vertices.
    pub fn with_new_vertices(&self, count: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj.extend(std::iter::repeat_with(Vec::new).take(count));
        Graph {
            adj,
            edge_count: self.edge_count,
        }
    }

    /// Deletes the marked vertices. Survivors are renumbered in increasing
    /// order; the returned map sends old ids to new ids.
    pub fn remove_vertices(&self, removed: &[bool]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed[v] {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut adj = vec![Vec::new(); next];
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        (Graph::from_raw_adjacency(adj), map)
    }

    /// BFS distances from `s`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Diameter and the lexicographically smallest pair attaining it.
    pub fn diameter(&self) -> Result<(usize, (usize, usize))> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut best = (0, (0, 0));
        for u in 0..n {
            let dist = self.bfs_distances(u);
            for (v, d) in dist.iter().enumerate().skip(u + 1) {
                let d = d.ok_or(Error::Disconnected)?;
                if d > best.0 {
                    best = (d, (u, v));
                }
            }
        }
        Ok(best)
    }

    pub fn diameter_value(&self) -> Result<usize> {
        self.diameter().map(|(d, _)| d)
    }

    /// Sum of `1/d(v)` over all vertices.
    pub fn inverse_degree(&self) -> Result<Rational> {
        let mut by_degree = vec![0i64; self.vertex_count()];
        for v in 0..self.vertex_count() {
            let d = self.degree(v);
            if d == 0 {
                return Err(Error::IsolatedVertex(v));
            }
            by_degree[d] += 1;
        }
        Ok(by_degree
            .iter()
            .enumerate()
            .filter(|(_, &count)| count > 0)
            .map(|(d, &count)| frac(count, d as i64))
            .sum())
    }

    /// `(2/5) D - r`.
    pub fn fitness(&self) -> Result<Rational> {
        let d = self.diameter_value()?;
        let r = self.inverse_degree()?;
        Ok(frac(2 * d as i64, 5) - r)
    }

    pub fn level_decomposition(&self, s: usize) -> Result<LevelDecomposition> {
        self.check_vertex(s)?;
        let dist = self.bfs_distances(s);
        let mut level_of = Vec::with_capacity(dist.len());
        for d in dist {
            level_of.push(d.ok_or(Error::Disconnected)?);
        }
        let depth = level_of.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); depth + 1];
        for (v, &l) in level_of.iter().enumerate() {
            levels[l].push(v);
        }
        Ok(LevelDecomposition {
            source: s,
            levels,
            level_of,
        })
    }

    /// Vertices whose removal disconnects the graph.
    pub fn articulation_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative Tarjan: (vertex, parent, next neighbor index).
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let v = self.adj[u][*idx];
                    *idx += 1;
                    if disc[v] == usize::MAX {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else if v != parent {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }
}

/// Partition of the vertices by BFS distance from a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    source: usize,
    levels: Vec<Vec<usize>>,
    level_of: Vec<usize>,
}

impl LevelDecomposition {
    pub fn source(&self) -> usize {
        self.source
    }

    /// Eccentricity of the source, i.e. the index of the last level.
    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &[usize] {
        self.levels.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn level_of(&self, v: usize) -> usize {
        self.level_of[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Edges of `g` joining `V_i` and `V_j`.
    pub fn edges_between(&self, g: &Graph, i: usize, j: usize) -> Vec<(usize, usize)> {
        g.edges()
            .filter(|&(u, v)| {
                let (a, b) = (self.level_of[u], self.level_of[v]);
                (a == i && b == j) || (a == j && b == i)
            })
            .collect()
    }

    /// True iff no edge of `g` skips a level.
    pub fn is_layered(&self, g: &Graph) -> bool {
        g.edges()
            .all(|(u, v)| self.level_of[u].abs_diff(self.level_of[v]) <= 1)
    }

    /// Number of neighbors of `v` lying in level `i` (0 for missing levels).
    pub fn neighbors_in_level(&self, g: &Graph, v: usize, i: isize) -> usize {
        if i < 0 {
            return 0;
        }
        let i = i as usize;
        g.neighbors(v).iter().filter(|&&w| self.level_of[w] == i).count()
    }
}

/// Inverse-degree sum restricted to `subset`.
pub fn inverse_degree_of(g: &Graph, subset: &[usize]) -> Result<Rational> {
    let mut total = Rational::from_integer(0.into());
    for &v in subset {
        g.check_vertex(v)?;
        let d = g.degree(v);
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        total += recip(d as i64);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn build_triangle_and_collapse_duplicates() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let e = Graph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(e.edge_count(), 1);
    }

    #[test]
    fn build_rejects_loops_and_out_of_range() {
        assert_eq!(Graph::new(1, &[(0, 0)]), Err(Error::LoopEdge(0)));
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn bfs_examples() {
        let p5 = path(5);
        let d: Vec<_> = p5.bfs_distances(0).into_iter().map(Option::unwrap).collect();
        assert_eq!(d, vec![0, 1, 2, 3, 4]);
        let k4 = complete(4);
        let d: Vec<_> = k4.bfs_distances(0).into_iter().map(Option::unwrap).collect();
        assert_eq!(d, vec![0, 1, 1, 1]);
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.bfs_distances(0), vec![Some(0), Some(1), None, None]);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(path(5).diameter().unwrap(), (4, (0, 4)));
        assert_eq!(path(1).diameter().unwrap(), (0, (0, 0)));
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.diameter(), Err(Error::Disconnected));
        assert_eq!(Graph::empty(0).diameter(), Err(Error::EmptyGraph));
        // C_6: every vertex has an antipode; smallest pair wins.
        let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(c6.diameter().unwrap(), (3, (0, 3)));
    }

    #[test]
    fn inverse_degree_examples() {
        assert_eq!(complete(4).inverse_degree().unwrap(), frac(4, 3));
        let k5m = complete(5).remove_one_edge(0, 1);
        assert_eq!(k5m.inverse_degree().unwrap(), frac(17, 12));
        assert_eq!(
            Graph::new(3, &[(0, 1)]).unwrap().inverse_degree(),
            Err(Error::IsolatedVertex(2))
        );
    }

    #[test]
    fn fitness_examples() {
        let k5m = complete(5).remove_one_edge(3, 4);
        assert_eq!(k5m.fitness().unwrap(), frac(-37, 60));
        assert_eq!(path(2).fitness().unwrap(), frac(-8, 5));
    }

    #[test]
    fn level_decomposition_examples() {
        assert_eq!(path(5).level_decomposition(0).unwrap().sizes(), vec![1; 5]);
        for s in 0..4 {
            assert_eq!(complete(4).level_decomposition(s).unwrap().sizes(), vec![1, 3]);
        }
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.level_decomposition(0), Err(Error::Disconnected));
    }

    #[test]
    fn articulation_examples() {
        assert_eq!(path(3).articulation_vertices(), vec![1]);
        assert!(complete(4).articulation_vertices().is_empty());
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(bowtie.articulation_vertices(), vec![2]);
        assert_eq!(path(5).articulation_vertices(), vec![1, 2, 3]);
    }

    #[test]
    fn remove_vertices_renumbers() {
        let p4 = path(4);
        let (g, map) = p4.remove_vertices(&[false, true, false, false]);
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(g.edge_list(), vec![(1, 2)]);
    }

    impl Graph {
        fn remove_one_edge(&self, a: usize, b: usize) -> Graph {
            let edges: Vec<_> = self.edges().filter(|&e| e != (a.min(b), a.max(b))).collect();
            Graph::new(self.vertex_count(), &edges).unwrap()
        }
    }
}
