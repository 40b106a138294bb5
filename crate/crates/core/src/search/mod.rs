//! Isomorph-free enumeration of small connected planar graphs by canonical
//! augmentation, and exhaustive verification of the diameter bounds.

pub mod canon;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

pub use canon::{canonical_form, canonical_labeling, Canon, CanonicalForm, MAX_CANON_VERTICES};

use crate::certify::{bounds_unchecked, BoundsReport};
use crate::error::{invalid, Result};
use crate::families::gen_k5_minus;
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::planarity::test_planarity;
use crate::rational::{int, Frac, Rational};
use crate::workers::pool;

/// Largest supported enumeration order.
pub const MAX_SEARCH_N: usize = 9;

/// Largest order enumerated without an explicit opt-in.
pub const DEFAULT_SEARCH_N: usize = 8;

/// Connected planar graphs on `n = 1, 2, …, 9` vertices up to isomorphism.
pub const CONNECTED_PLANAR_COUNTS: [usize; 9] = [1, 1, 2, 6, 20, 99, 646, 5974, 71885];

/// One isomorphism class with its canonical form.
#[derive(Debug, Clone)]
pub struct Class {
    pub form: CanonicalForm,
    pub graph: Graph,
}

fn single_vertex() -> Class {
    let graph = Graph::new(1, &[]).expect("single vertex");
    Class { form: canonical_form(&graph).expect("tiny graph"), graph }
}

/// Accepts `child` (built by adding its last vertex) iff deleting the
/// non-cut vertex with the largest canonical label yields the parent class.
fn is_canonical_child(child: &Graph, canon: &Canon, parent: &CanonicalForm) -> Result<bool> {
    let mut cut = vec![false; child.vertex_count()];
    for v in child.articulation_vertices() {
        cut[v] = true;
    }
    let &v = canon
        .order
        .iter()
        .rev()
        .find(|&&v| !cut[v])
        .expect("a connected graph with two or more vertices has non-cut vertices");
    let last = child.vertex_count() - 1;
    if v == last {
        return Ok(true);
    }
    let mut removed = vec![false; child.vertex_count()];
    removed[v] = true;
    let (reduced, _) = child.remove_vertices(&removed);
    Ok(canonical_form(&reduced)? == *parent)
}

fn children(parent: &Class) -> Result<Vec<Class>> {
    let g = &parent.graph;
    let n = g.vertex_count();
    let m = g.edge_count();
    let max_edges = if n + 1 >= 3 { 3 * (n + 1) - 6 } else { n };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let deg = mask.count_ones() as usize;
        if m + deg > max_edges {
            continue;
        }
        let extra: Vec<(usize, usize)> = (0..n).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n)).collect();
        let child = g.with_new_vertices(1).with_edges(&extra)?;
        if !test_planarity(&child) {
            continue;
        }
        let canon = canonical_labeling(&child)?;
        if seen.contains(&canon.form) {
            continue;
        }
        if is_canonical_child(&child, &canon, &parent.form)? {
            seen.insert(canon.form.clone());
            out.push(Class { form: canon.form, graph: child });
        }
    }
    Ok(out)
}

/// Classes for every order `1..=n_max`, each level sorted by canonical form.
pub fn enumerate_up_to(n_max: usize) -> Result<Vec<Vec<Class>>> {
    if n_max == 0 || n_max > MAX_SEARCH_N {
        return Err(invalid(format!("enumeration supports 1 <= n <= {MAX_SEARCH_N}, got {n_max}")));
    }
    let mut levels = vec![vec![single_vertex()]];
    while levels.len() < n_max {
        let prev = levels.last().unwrap();
        let batches: Vec<Vec<Class>> =
            pool().install(|| prev.par_iter().map(children).collect::<Result<_>>())?;
        let mut next: Vec<Class> = batches.into_iter().flatten().collect();
        next.sort_by(|a, b| a.form.cmp(&b.form));
        levels.push(next);
    }
    Ok(levels)
}

/// One connected planar graph per isomorphism class on `n` vertices.
pub fn enumerate_connected_planar(n: usize) -> Result<Vec<Graph>> {
    let mut levels = enumerate_up_to(n)?;
    Ok(levels.pop().unwrap().into_iter().map(|c| c.graph).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: Frac,
}

impl GraphRecord {
    fn new(g: &Graph, b: &BoundsReport) -> Self {
        GraphRecord { graph6: to_graph6(g), n: b.n, m: b.m, d: b.d, r: b.r.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub bound: &'static str,
    pub graph: GraphRecord,
    pub slack: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackWitness {
    pub slack: Frac,
    pub graph: GraphRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n_max: usize,
    /// `(n, classes)` for every enumerated order.
    pub counts: Vec<(usize, usize)>,
    pub counts_match_reference: bool,
    pub examined: usize,
    pub notes: Vec<String>,
    pub violations: Vec<Violation>,
    /// Graphs with `r − (2/5)D = 37/60` exactly.
    pub equality_witnesses: Vec<GraphRecord>,
    pub equality_is_k5_minus_only: bool,
    /// Smallest `r − (2/5)D − 37/60` seen.
    pub min_slack: Option<SlackWitness>,
}

impl SearchReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.counts_match_reference && self.equality_is_k5_minus_only
    }
}

pub fn verify_small_graphs(n_max: usize) -> Result<SearchReport> {
    let levels = enumerate_up_to(n_max)?;
    let k5m = canonical_form(&gen_k5_minus())?;
    let mut notes = Vec::new();
    let mut violations = Vec::new();
    let mut equality = Vec::new();
    let mut equality_forms = Vec::new();
    let mut min_slack: Option<(Rational, GraphRecord)> = None;
    let mut examined = 0;
    for level in &levels {
        if level[0].graph.vertex_count() == 1 {
            notes.push("n = 1 skipped: the single vertex has degree 0, so r is undefined".into());
            continue;
        }
        let reports: Vec<BoundsReport> =
            pool().install(|| level.par_iter().map(|c| bounds_unchecked(&c.graph)).collect::<Result<_>>())?;
        for (class, b) in level.iter().zip(reports) {
            examined += 1;
            let record = GraphRecord::new(&class.graph, &b);
            for (name, check) in [("aux", &b.aux), ("quad", &b.quad), ("main", &b.main), ("strong_main", &b.strong_main)] {
                if !check.holds {
                    violations.push(Violation { bound: name, graph: record.clone(), slack: check.slack.clone() });
                }
            }
            let slack = &b.strong_main.slack.0;
            if *slack == int(0) {
                equality.push(record.clone());
                equality_forms.push(class.form.clone());
            }
            if min_slack.as_ref().is_none_or(|(s, _)| slack < s) {
                min_slack = Some((slack.clone(), record));
            }
        }
    }
    let counts: Vec<(usize, usize)> = levels.iter().enumerate().map(|(i, l)| (i + 1, l.len())).collect();
    let counts_match_reference = counts.iter().all(|&(n, c)| CONNECTED_PLANAR_COUNTS[n - 1] == c);
    let equality_is_k5_minus_only = if n_max >= 5 {
        equality_forms == [k5m]
    } else {
        equality_forms.is_empty()
    };
    Ok(SearchReport {
        n_max,
        counts,
        counts_match_reference,
        examined,
        notes,
        violations,
        equality_witnesses: equality,
        equality_is_k5_minus_only,
        min_slack: min_slack.map(|(s, graph)| SlackWitness { slack: Frac(s), graph }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_seven() {
        let levels = enumerate_up_to(7).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, CONNECTED_PLANAR_COUNTS[..7]);
    }

    #[test]
    fn enumerated_graphs_are_distinct_connected_planar() {
        for n in 1..=6 {
            let graphs = enumerate_connected_planar(n).unwrap();
            let forms: HashSet<_> = graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
            assert_eq!(forms.len(), graphs.len());
            for g in &graphs {
                assert_eq!(g.vertex_count(), n);
                assert!(g.is_connected());
                assert!(test_planarity(g));
            }
        }
    }

    #[test]
    fn enumeration_bounds() {
        assert!(enumerate_connected_planar(0).is_err());
        assert!(enumerate_connected_planar(10).is_err());
        assert_eq!(enumerate_connected_planar(1).unwrap().len(), 1);
    }

    #[test]
    fn small_search_report() {
        let report = verify_small_graphs(5).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.holds());
        assert_eq!(report.equality_witnesses.len(), 1);
        assert_eq!(report.examined, 1 + 2 + 6 + 20);
        assert_eq!(report.min_slack.unwrap().slack, Frac(int(0)));

        let tiny = verify_small_graphs(1).unwrap();
        assert_eq!(tiny.examined, 0);
        assert_eq!(tiny.notes.len(), 1);
    }
}
