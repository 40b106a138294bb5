//! Canonical labeling by equitable refinement and individualization, with
//! automorphism pruning. The canonical form is the lexicographically
//! largest relabeled adjacency matrix reachable in the search tree.

use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::graph::Graph;

pub const MAX_CANON_VERTICES: usize = 16;

/// Byte string identifying a graph up to isomorphism: the vertex count
/// followed by the packed upper triangle of the canonical adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Canonical form plus a canonical labeling: `order[i]` is the original
/// vertex placed at canonical position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canon {
    pub form: CanonicalForm,
    pub order: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(canonical_labeling(g)?.form)
}

pub fn canonical_labeling(g: &Graph) -> Result<Canon> {
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(invalid(format!(
            "canonical labeling supports at most {MAX_CANON_VERTICES} vertices, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    Ok(canon_masks(&adj))
}

pub(crate) fn canon_masks(adj: &[u32]) -> Canon {
    let n = adj.len();
    let mut search = Search { adj, n, best: None, gens: Vec::new() };
    if n > 0 {
        let mut cells = vec![(0..n).collect::<Vec<_>>()];
        refine(adj, &mut cells);
        search.descend(cells, &mut Vec::new());
    }
    let (rows, order) = search.best.map_or((Vec::new(), Vec::new()), |b| (b.rows, b.order));
    Canon { form: encode(n, &rows), order }
}

fn encode(n: usize, rows: &[u32]) -> CanonicalForm {
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, &row) in rows.iter().enumerate().take(n) {
        for j in i + 1..n {
            acc = acc << 1 | ((row >> j) & 1) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    CanonicalForm(bytes)
}

/// Splits cells until every vertex of a cell has the same number of
/// neighbors in every cell. Fragments are ordered by neighbor count.
fn refine(adj: &[u32], cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for wi in 0..cells.len() {
            let mask = cells[wi].iter().fold(0u32, |m, &v| m | 1 << v);
            for xi in 0..cells.len() {
                if cells[xi].len() < 2 {
                    continue;
                }
                let count = |v: usize| (adj[v] & mask).count_ones();
                let first = count(cells[xi][0]);
                if cells[xi].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut cell = std::mem::take(&mut cells[xi]);
                cell.sort_by_key(|&v| (count(v), v));
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for v in cell {
                    let c = count(v);
                    if last != Some(c) {
                        parts.push(Vec::new());
                        last = Some(c);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(xi..=xi, parts);
                continue 'outer;
            }
        }
        return;
    }
}

struct Leaf {
    rows: Vec<u32>,
    order: Vec<usize>,
    prefix: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u32],
    n: usize,
    best: Option<Leaf>,
    gens: Vec<Vec<usize>>,
}

/// Outcome of exploring a subtree: `Abort(k)` unwinds to the node at
/// depth `k`, whose current branch is equivalent to one already explored.
enum Step {
    Done,
    Abort(usize),
}

impl Search<'_> {
    fn relabeled(&self, order: &[usize]) -> Vec<u32> {
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order
            .iter()
            .map(|&v| {
                let mut row = 0u32;
                let mut m = self.adj[v];
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    row |= 1 << pos[u];
                    m &= m - 1;
                }
                row
            })
            .collect()
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) -> Step {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(cells.into_iter().map(|c| c[0]).collect(), prefix);
        };
        let depth = prefix.len();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| self.same_orbit(prefix, u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            refine(self.adj, &mut child);
            prefix.push(v);
            let step = self.descend(child, prefix);
            prefix.pop();
            if let Step::Abort(k) = step {
                if k < depth {
                    return step;
                }
            }
        }
        Step::Done
    }

    fn leaf(&mut self, order: Vec<usize>, prefix: &[usize]) -> Step {
        let rows = self.relabeled(&order);
        match &self.best {
            Some(best) if rows == best.rows => {
                let mut gamma = vec![0usize; self.n];
                for (i, &v) in best.order.iter().enumerate() {
                    gamma[v] = order[i];
                }
                let common = best.prefix.iter().zip(prefix).take_while(|(a, b)| a == b).count();
                self.gens.push(gamma);
                Step::Abort(common)
            }
            Some(best) if rows < best.rows => Step::Done,
            _ => {
                self.best = Some(Leaf { rows, order, prefix: prefix.to_vec() });
                Step::Done
            }
        }
    }

    /// Whether some product of known automorphisms fixing `prefix`
    /// pointwise maps `u` to `v`.
    fn same_orbit(&self, prefix: &[usize], u: usize, v: usize) -> bool {
        let usable: Vec<&Vec<usize>> = self
            .gens
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if usable.is_empty() {
            return false;
        }
        let mut seen = 1u32 << u;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if x == v {
                return true;
            }
            for g in &usable {
                let y = g[x];
                if seen & 1 << y == 0 {
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn shuffled(g: &Graph, rng: &mut impl Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn cycle_relabelings_agree() {
        let c5 = cycle(5);
        let form = canonical_form(&c5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            assert_eq!(canonical_form(&shuffled(&c5, &mut rng)).unwrap(), form);
        }
    }

    #[test]
    fn distinguishes_path_and_star() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let k13 = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&k13).unwrap());
    }

    #[test]
    fn symmetric_graphs_at_the_cap() {
        for g in [complete(16), Graph::new(16, &[]).unwrap(), cycle(16)] {
            let c = canonical_labeling(&g).unwrap();
            let mut order = c.order.clone();
            order.sort_unstable();
            assert_eq!(order, (0..16).collect::<Vec<_>>());
        }
        assert!(canonical_form(&Graph::new(17, &[]).unwrap()).is_err());
    }

    #[test]
    fn labeling_reproduces_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 9, 0.4);
            let c = canonical_labeling(&g).unwrap();
            let mut inverse = vec![0; 9];
            for (i, &v) in c.order.iter().enumerate() {
                inverse[v] = i;
            }
            let h = g.relabel(&inverse);
            let c2 = canonical_labeling(&h).unwrap();
            assert_eq!(c2.form, c.form);
            assert_eq!(c2.order, (0..9).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_graph_classes_by_brute_force() {
        // Oracle: distinct forms over all labeled graphs on 5 vertices
        // equals the 34 isomorphism classes.
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let mut forms = std::collections::HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            forms.insert(canonical_form(&Graph::new(5, &edges).unwrap()).unwrap());
        }
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn petersen_relabelings() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let g = Graph::new(10, &[outer, spokes, inner].concat()).unwrap();
        let form = canonical_form(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), form);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn invariant_under_relabeling(seed in any::<u64>(), n in 1usize..=12, p in 0.1f64..0.9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, p);
            let h = shuffled(&g, &mut rng);
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }

        #[test]
        fn detects_edge_changes(seed in any::<u64>(), n in 4usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, 0.5);
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            prop_assume!(a != b);
            let h = if g.has_edge(a, b) {
                Graph::new(n, &g.edges().filter(|&e| e != (a.min(b), a.max(b))).collect::<Vec<_>>()).unwrap()
            } else {
                g.with_edges(&[(a, b)]).unwrap()
            };
            prop_assert_ne!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }
}
