//! Surgery on level decompositions: boundary-level classification, the
//! delete-and-join operation, and the local "bonus" transformations, each
//! with exact before/after accounting.

use serde::Serialize;

use crate::certify::TypeClass;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, LevelDecomposition};
use crate::planarity::test_planarity;
use crate::rational::{frac, recip, Frac, Rational};

/// The seven boundary-level types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelType {
    Omega,
    Alpha,
    Beta,
    BetaPrime,
    Mu,
    Nu,
    NuPrime,
}

impl LevelType {
    pub const ALL: [LevelType; 7] = [
        LevelType::Omega,
        LevelType::Alpha,
        LevelType::Beta,
        LevelType::BetaPrime,
        LevelType::Mu,
        LevelType::Nu,
        LevelType::NuPrime,
    ];

    /// Parameter class; the primed variants share their unprimed
    /// counterpart's parameters.
    pub fn class(self) -> TypeClass {
        match self {
            LevelType::Omega => TypeClass::Omega,
            LevelType::Alpha => TypeClass::Alpha,
            LevelType::Beta | LevelType::BetaPrime => TypeClass::Beta,
            LevelType::Mu => TypeClass::Mu,
            LevelType::Nu | LevelType::NuPrime => TypeClass::Nu,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LevelType::Omega => "ω",
            LevelType::Alpha => "α",
            LevelType::Beta => "β",
            LevelType::BetaPrime => "β′",
            LevelType::Mu => "μ",
            LevelType::Nu => "ν",
            LevelType::NuPrime => "ν′",
        }
    }
}

/// Which end of a surgery window a level sits on. A left level looks
/// outward toward `V_{i-1}`; a right level looks outward toward `V_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Every type that level `i` satisfies on the given side, in
/// `LevelType::ALL` order.
pub fn classify_level_all(
    ld: &LevelDecomposition,
    g: &Graph,
    i: usize,
    side: Side,
) -> Result<Vec<LevelType>> {
    let depth = ld.eccentricity();
    if i > depth {
        return Err(invalid(format!("level {i} does not exist (last level is {depth})")));
    }
    let at_end = match side {
        Side::Left => i == 0,
        Side::Right => i == depth,
    };
    if at_end {
        return Ok(vec![LevelType::Omega]);
    }
    let (outer, inner) = match side {
        Side::Left => (i as isize - 1, i as isize + 1),
        Side::Right => (i as isize + 1, i as isize - 1),
    };
    let level = ld.level(i);
    let out_count = |v: usize| ld.neighbors_in_level(g, v, outer);
    let in_count = |v: usize| ld.neighbors_in_level(g, v, inner);
    let mut found = Vec::new();
    match *level {
        [v] => {
            let (a, b) = (out_count(v), in_count(v));
            if a == 1 {
                found.push(LevelType::Alpha);
            }
            if a == 2 {
                found.push(LevelType::Beta);
            }
            if a >= 2 && b >= 2 {
                found.push(LevelType::BetaPrime);
            }
        }
        [u, v] if g.has_edge(u, v) => {
            let outer_nbrs = |x: usize| -> Vec<usize> {
                g.neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&w| outer >= 0 && ld.level_of(w) == outer as usize)
                    .collect()
            };
            let (nu, nv) = (outer_nbrs(u), outer_nbrs(v));
            if nu.len() == 1 && nu == nv {
                found.push(LevelType::Mu);
            }
            if nu.len() == 2 && nv.len() == 2 {
                found.push(LevelType::Nu);
            }
            if nu.len() >= 2 && nv.len() >= 2 && in_count(u) >= 2 && in_count(v) >= 2 {
                found.push(LevelType::NuPrime);
            }
        }
        _ => {}
    }
    Ok(found)
}

/// The single reported type: primed variants take priority over the
/// unprimed ones when both match.
pub fn classify_level(
    ld: &LevelDecomposition,
    g: &Graph,
    i: usize,
    side: Side,
) -> Result<Option<LevelType>> {
    let all = classify_level_all(ld, g, i, side)?;
    let pick = [LevelType::BetaPrime, LevelType::NuPrime]
        .into_iter()
        .find(|t| all.contains(t))
        .or_else(|| all.first().copied());
    Ok(pick)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: Frac,
    pub fitness: Frac,
}

impl GraphMetrics {
    pub fn of(g: &Graph) -> Result<Self> {
        let d = g.diameter_value()?;
        let r = g.inverse_degree()?;
        Ok(GraphMetrics {
            n: g.vertex_count(),
            m: g.edge_count(),
            d,
            fitness: Frac(frac(2 * d as i64, 5) - &r),
            r: Frac(r),
        })
    }
}

/// Before minus after.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deltas {
    pub n: i64,
    pub m: i64,
    pub d: i64,
    pub r: Frac,
    pub fitness: Frac,
}

impl Deltas {
    pub fn between(before: &GraphMetrics, after: &GraphMetrics) -> Self {
        Deltas {
            n: before.n as i64 - after.n as i64,
            m: before.m as i64 - after.m as i64,
            d: before.d as i64 - after.d as i64,
            r: Frac(&before.r.0 - &after.r.0),
            fitness: Frac(&before.fitness.0 - &after.fitness.0),
        }
    }
}

/// Outcome of the diameter/planarity guarantee for small connected
/// boundary levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryContract {
    pub expected_d: usize,
    pub diameter_holds: bool,
    pub planar_holds: bool,
}

impl SurgeryContract {
    pub fn holds(&self) -> bool {
        self.diameter_holds && self.planar_holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryReport {
    pub source: usize,
    pub left: usize,
    pub right: usize,
    pub left_type: Option<LevelType>,
    pub right_type: Option<LevelType>,
    pub removed_level_sizes: Vec<usize>,
    pub before: GraphMetrics,
    pub after: GraphMetrics,
    pub deltas: Deltas,
    pub result_planar: bool,
    /// Present when both boundary levels have size at most 2 and are
    /// connected.
    pub contract: Option<SurgeryContract>,
}

fn level_is_connected(g: &Graph, level: &[usize]) -> bool {
    match *level {
        [_] => true,
        [u, v] => g.has_edge(u, v),
        _ => false,
    }
}

/// Deletes `V_{L+1} .. V_{R-1}` (levels from `s`) and joins every vertex
/// of `V_L` to every vertex of `V_R`.
pub fn apply_surgery(g: &Graph, s: usize, left: usize, right: usize) -> Result<(Graph, SurgeryReport)> {
    if right <= left {
        return Err(invalid(format!("surgery needs L < R, got L = {left}, R = {right}")));
    }
    let ld = g.level_decomposition(s)?;
    if right > ld.eccentricity() {
        return Err(invalid(format!(
            "level {right} does not exist (last level is {})",
            ld.eccentricity()
        )));
    }
    let mut removed = vec![false; g.vertex_count()];
    for i in left + 1..right {
        for &v in ld.level(i) {
            removed[v] = true;
        }
    }
    let (trimmed, map) = g.remove_vertices(&removed);
    let mut join = Vec::new();
    for &u in ld.level(left) {
        for &v in ld.level(right) {
            join.push((map[u].unwrap(), map[v].unwrap()));
        }
    }
    let result = trimmed.with_edges(&join)?;
    if !result.is_connected() {
        return Err(Error::Disconnected);
    }
    let before = GraphMetrics::of(g)?;
    let after = GraphMetrics::of(&result)?;
    let result_planar = test_planarity(&result);
    let small_connected = |i: usize| level_is_connected(g, ld.level(i));
    let contract = (small_connected(left) && small_connected(right)).then(|| {
        let expected_d = before.d - (right - left - 1);
        SurgeryContract {
            expected_d,
            diameter_holds: after.d == expected_d,
            planar_holds: result_planar,
        }
    });
    let report = SurgeryReport {
        source: s,
        left,
        right,
        left_type: classify_level(&ld, g, left, Side::Left)?,
        right_type: classify_level(&ld, g, right, Side::Right)?,
        removed_level_sizes: (left + 1..right).map(|i| ld.level(i).len()).collect(),
        deltas: Deltas::between(&before, &after),
        before,
        after,
        result_planar,
        contract,
    };
    Ok((result, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortcut {
    pub graph: Graph,
    /// `r(G) - r(G')`; exactly 1/2 since the endpoints keep their degrees.
    pub delta_r: Rational,
}

/// Removes a degree-2 vertex `v` whose neighbors `a, b` are non-adjacent
/// and joins `a` to `b`.
pub fn shortcut_degree2(g: &Graph, v: usize) -> Result<Shortcut> {
    g.check_vertex(v)?;
    let &[a, b] = g.neighbors(v) else {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {}, not 2",
            g.degree(v)
        )));
    };
    if g.has_edge(a, b) {
        return Err(Error::Precondition(format!(
            "neighbors {a} and {b} of vertex {v} are already adjacent"
        )));
    }
    let mut removed = vec![false; g.vertex_count()];
    removed[v] = true;
    let (trimmed, map) = g.remove_vertices(&removed);
    let graph = trimmed.with_edges(&[(map[a].unwrap(), map[b].unwrap())])?;
    let delta_r = g.inverse_degree()? - graph.inverse_degree()?;
    Ok(Shortcut { graph, delta_r })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub graph: Graph,
    pub new_vertex: usize,
    /// Decrease of `r` counted over `s, u, v` and the new vertex only.
    pub delta_r_excluding_w: Rational,
    /// Decrease of `r` over the whole graph.
    pub delta_r: Rational,
    pub planar: bool,
}

/// Adds a vertex adjacent to `u, v, w, s` on the local pattern left by an
/// ω–μ surgery: `s ~ u`, `s ~ v`, `u ~ v`, `w ~ u`, `w ~ v`.
pub fn omega_mu_augment(g: &Graph, s: usize, u: usize, v: usize, w: usize) -> Result<Augmentation> {
    for x in [s, u, v, w] {
        g.check_vertex(x)?;
    }
    let distinct = [s, u, v, w]
        .iter()
        .enumerate()
        .all(|(i, a)| [s, u, v, w][i + 1..].iter().all(|b| a != b));
    if !distinct {
        return Err(Error::Precondition("s, u, v, w must be distinct".into()));
    }
    for (a, b) in [(s, u), (s, v), (u, v), (w, u), (w, v)] {
        if !g.has_edge(a, b) {
            return Err(Error::Precondition(format!("missing edge ({a}, {b})")));
        }
    }
    let x = g.vertex_count();
    let graph = g
        .with_new_vertices(1)
        .with_edges(&[(x, u), (x, v), (x, w), (x, s)])?;
    let local_before: Rational = [s, u, v].iter().map(|&y| recip(g.degree(y) as i64)).sum();
    let local_after: Rational = [s, u, v]
        .iter()
        .map(|&y| recip(graph.degree(y) as i64))
        .sum::<Rational>()
        + recip(4);
    let delta_r = g.inverse_degree()? - graph.inverse_degree()?;
    Ok(Augmentation {
        planar: test_planarity(&graph),
        graph,
        new_vertex: x,
        delta_r_excluding_w: local_before - local_after,
        delta_r,
    })
}
