//! Extremal families and their closed-form metrics.
//!
//! * `L_n`: two rows of `n/2` vertices, `v^i_j` adjacent to `v^i'_j'`
//!   whenever `|j - j'| <= 1`. Vertex `v^i_j` has id `2(j-1) + (i-1)`.
//! * `T_n`: `n/3` triangle layers; layer `j` vertex `c` (id `3j + c`) is
//!   joined to layer `j+1` vertices `c` and `c+1 mod 3`, so consecutive
//!   layers span an octahedron.
//! * paths, `L_n` with a pendant path, `T_n` with a pendant path, and
//!   `K5` minus an edge.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rational::{frac, int, Frac, Rational};

pub fn gen_l(n: usize) -> Result<Graph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(invalid(format!("L_n needs an even n >= 4, got {n}")));
    }
    let cols = n / 2;
    let id = |row: usize, col: usize| 2 * col + row;
    let mut edges = Vec::new();
    for col in 0..cols {
        edges.push((id(0, col), id(1, col)));
        if col + 1 < cols {
            for a in 0..2 {
                for b in 0..2 {
                    edges.push((id(a, col), id(b, col + 1)));
                }
            }
        }
    }
    Graph::new(n, &edges)
}

pub fn gen_t(n: usize) -> Result<Graph> {
    if n < 6 || !n.is_multiple_of(3) {
        return Err(invalid(format!("T_n needs n >= 6 divisible by 3, got {n}")));
    }
    Graph::new(n, &t_edges(n / 3))
}

fn t_edges(layers: usize) -> Vec<(usize, usize)> {
    let id = |j: usize, c: usize| 3 * j + c;
    let mut edges = Vec::new();
    for j in 0..layers {
        for c in 0..3 {
            edges.push((id(j, c), id(j, (c + 1) % 3)));
            if j + 1 < layers {
                edges.push((id(j, c), id(j + 1, c)));
                edges.push((id(j, c), id(j + 1, (c + 1) % 3)));
            }
        }
    }
    edges
}

pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("a path needs at least one vertex"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

/// `L_{2n/3}` with a path of `n/3` extra vertices hanging from `v^1_1`.
pub fn gen_l_with_tail(n: usize) -> Result<Graph> {
    if !n.is_multiple_of(3) || n < 6 {
        return Err(invalid(format!(
            "tailed L needs n divisible by 3 with 2n/3 >= 4, got {n}"
        )));
    }
    let core = 2 * n / 3;
    let mut edges = gen_l(core)?.edge_list();
    let mut prev = 0;
    for v in core..n {
        edges.push((prev, v));
        prev = v;
    }
    Graph::new(n, &edges)
}

/// Result of the general tightness construction for a target `(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailedT {
    pub graph: Graph,
    /// Vertices in the triangulated part (0 when the construction
    /// degenerates to a bare path).
    pub t_part: usize,
    pub tail: usize,
    pub requested_m: usize,
    pub achieved_m: usize,
    pub diameter: usize,
}

impl TailedT {
    /// `(4(n-1) - m)/3 - D` using the requested `m`.
    pub fn slack_vs_requested(&self) -> Rational {
        let n = self.graph.vertex_count() as i64;
        frac(4 * (n - 1) - self.requested_m as i64, 3) - int(self.diameter as i64)
    }

    /// `(4(n-1) - m)/3 - D` using the achieved edge count; never negative
    /// for a connected planar graph.
    pub fn slack_vs_achieved(&self) -> Rational {
        let n = self.graph.vertex_count() as i64;
        frac(4 * (n - 1) - self.achieved_m as i64, 3) - int(self.diameter as i64)
    }
}

/// `T_t` with `t = 3 ceil((m + 2 - n)/6)` plus a path of `n - t` vertices
/// attached at vertex `u_{0,0}`. When `t < 6` there is no octahedral chain
/// to build and the result is the path `P_n`.
pub fn gen_t_with_tail(n: usize, m: usize) -> Result<TailedT> {
    if n == 0 {
        return Err(invalid("need at least one vertex"));
    }
    let max_m = if n >= 3 { 3 * n - 6 } else { n - 1 };
    if m + 1 < n || m > max_m {
        return Err(invalid(format!(
            "no connected planar graph on {n} vertices has {m} edges"
        )));
    }
    let surplus = m + 2 - n;
    let mut t_part = 3 * surplus.div_ceil(6);
    if t_part < 6 {
        t_part = 0;
    }
    debug_assert!(t_part <= n);
    let mut edges = if t_part == 0 {
        Vec::new()
    } else {
        t_edges(t_part / 3)
    };
    let start = t_part.max(1);
    let mut prev = 0;
    for v in start..n {
        edges.push((prev, v));
        prev = v;
    }
    let graph = Graph::new(n, &edges)?;
    let diameter = graph.diameter_value()?;
    Ok(TailedT {
        achieved_m: graph.edge_count(),
        graph,
        t_part,
        tail: n - t_part,
        requested_m: m,
        diameter,
    })
}

pub fn gen_k5_minus() -> Graph {
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            if (u, v) != (3, 4) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(5, &edges).expect("static edge list")
}

/// `n`, `m`, `D`, `r` of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMetrics {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: Frac,
}

impl FamilyMetrics {
    pub fn measure(g: &Graph) -> Result<Self> {
        Ok(FamilyMetrics {
            n: g.vertex_count(),
            m: g.edge_count(),
            d: g.diameter_value()?,
            r: Frac(g.inverse_degree()?),
        })
    }
}

/// Closed forms for `L_n`: `m = 5n/2 - 4`, `D = n/2 - 1`,
/// `r = (n-4)/5 + 4/3`.
pub fn l_closed_form(n: usize) -> FamilyMetrics {
    FamilyMetrics {
        n,
        m: 5 * n / 2 - 4,
        d: n / 2 - 1,
        r: Frac(frac(n as i64 - 4, 5) + frac(4, 3)),
    }
}

/// Closed forms for `T_n`: `m = 3n - 6`, `D = n/3 - 1`, and
/// `r = n/6 + 1/2` (six vertices of degree 4, the rest of degree 6).
/// The diameter formula is exact for `n >= 9`; the single octahedron
/// `T_6` has diameter 2.
pub fn t_closed_form(n: usize) -> FamilyMetrics {
    FamilyMetrics {
        n,
        m: 3 * n - 6,
        d: n / 3 - 1,
        r: Frac(frac(n as i64, 6) + frac(1, 2)),
    }
}

/// Closed forms for `P_n`, `n >= 2`: `m = D = n - 1`, `r = 2 + (n-2)/2`.
pub fn path_closed_form(n: usize) -> FamilyMetrics {
    FamilyMetrics {
        n,
        m: n - 1,
        d: n - 1,
        r: Frac(int(2) + frac(n as i64 - 2, 2)),
    }
}

/// `(4(n-1) - m)/3 - D`.
pub fn aux_slack(n: usize, m: usize, d: usize) -> Rational {
    frac(4 * (n as i64 - 1) - m as i64, 3) - int(d as i64)
}

/// `4n^2 / (3 m D)`; `m` and `D` must be positive.
pub fn corollary_ratio(n: usize, m: usize, d: usize) -> Rational {
    let n = n as i64;
    frac(4 * n * n, 3 * m as i64 * d as i64)
}

/// A family member whose measured metrics differ from the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub expected: FamilyMetrics,
    pub measured: FamilyMetrics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LFamilyCheck {
    pub n_values: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
    /// Distinct values of `(5/2) r - D`; a single value means the gap is
    /// constant (it is 7/3 by the closed forms).
    pub gaps: Vec<Frac>,
}

impl LFamilyCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.gaps.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Octahedron {
    pub n: usize,
    pub d: usize,
    pub closed_form_d: usize,
    pub aux_slack: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TFamilyCheck {
    pub n_values: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
    /// Distinct aux-bound slacks over `n_values`.
    pub aux_slacks: Vec<Frac>,
    /// `T_6` lies outside the closed-form range and is reported apart.
    pub octahedron: Octahedron,
}

impl TFamilyCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.aux_slacks == [Frac(frac(5, 3))]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCheck {
    pub n_values: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
    pub aux_slacks: Vec<Frac>,
}

impl PathCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.aux_slacks == [Frac(int(0))]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioPoint {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub ratio: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryCheck {
    pub points: Vec<RatioPoint>,
    pub strictly_decreasing: bool,
    /// Last ratio lies in `(1, 1.02)`.
    pub last_in_window: bool,
}

impl CorollaryCheck {
    pub fn holds(&self) -> bool {
        self.strictly_decreasing && self.last_in_window
    }
}

pub const COROLLARY_NS: [usize; 10] = [30, 60, 90, 120, 150, 180, 210, 240, 270, 300];

pub fn check_l_family(ns: impl IntoIterator<Item = usize>) -> Result<LFamilyCheck> {
    let mut check = LFamilyCheck { n_values: Vec::new(), mismatches: Vec::new(), gaps: Vec::new() };
    for n in ns {
        let measured = FamilyMetrics::measure(&gen_l(n)?)?;
        let expected = l_closed_form(n);
        let gap = Frac(frac(5, 2) * &measured.r.0 - int(measured.d as i64));
        if !check.gaps.contains(&gap) {
            check.gaps.push(gap);
        }
        if measured != expected {
            check.mismatches.push(Mismatch { n, expected, measured });
        }
        check.n_values.push(n);
    }
    Ok(check)
}

pub fn check_t_family(ns: impl IntoIterator<Item = usize>) -> Result<TFamilyCheck> {
    let octa = FamilyMetrics::measure(&gen_t(6)?)?;
    let mut check = TFamilyCheck {
        n_values: Vec::new(),
        mismatches: Vec::new(),
        aux_slacks: Vec::new(),
        octahedron: Octahedron {
            n: 6,
            d: octa.d,
            closed_form_d: t_closed_form(6).d,
            aux_slack: Frac(aux_slack(6, octa.m, octa.d)),
        },
    };
    for n in ns {
        let measured = FamilyMetrics::measure(&gen_t(n)?)?;
        let expected = t_closed_form(n);
        let slack = Frac(aux_slack(n, measured.m, measured.d));
        if !check.aux_slacks.contains(&slack) {
            check.aux_slacks.push(slack);
        }
        if measured != expected {
            check.mismatches.push(Mismatch { n, expected, measured });
        }
        check.n_values.push(n);
    }
    Ok(check)
}

pub fn check_paths(ns: impl IntoIterator<Item = usize>) -> Result<PathCheck> {
    let mut check = PathCheck { n_values: Vec::new(), mismatches: Vec::new(), aux_slacks: Vec::new() };
    for n in ns {
        let measured = FamilyMetrics::measure(&gen_path(n)?)?;
        let expected = path_closed_form(n);
        let slack = Frac(aux_slack(n, measured.m, measured.d));
        if !check.aux_slacks.contains(&slack) {
            check.aux_slacks.push(slack);
        }
        if measured != expected {
            check.mismatches.push(Mismatch { n, expected, measured });
        }
        check.n_values.push(n);
    }
    Ok(check)
}

pub fn check_corollary(ns: &[usize]) -> Result<CorollaryCheck> {
    let mut points = Vec::new();
    for &n in ns {
        let g = gen_l_with_tail(n)?;
        let (m, d) = (g.edge_count(), g.diameter_value()?);
        points.push(RatioPoint { n, m, d, ratio: Frac(corollary_ratio(n, m, d)) });
    }
    let strictly_decreasing = points.windows(2).all(|w| w[1].ratio.0 < w[0].ratio.0);
    let last_in_window = points
        .last()
        .is_some_and(|p| p.ratio.0 > int(1) && p.ratio.0 < frac(102, 100));
    Ok(CorollaryCheck { points, strictly_decreasing, last_in_window })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailedTCheck {
    pub n_max: usize,
    pub instances: usize,
    /// Range of `(4(n-1) - m)/3 - D` with the requested `m`.
    pub min_slack_vs_requested: Frac,
    pub max_slack_vs_requested: Frac,
    pub min_slack_vs_achieved: Frac,
}

impl TailedTCheck {
    /// Requested-`m` slack stays in `[-5/3, 7/3)` and the achieved graph
    /// never beats the aux bound.
    pub fn holds(&self) -> bool {
        self.min_slack_vs_requested.0 >= frac(-5, 3)
            && self.max_slack_vs_requested.0 < frac(7, 3)
            && self.min_slack_vs_achieved.0 >= int(0)
    }
}

/// Runs `gen_t_with_tail` over every feasible `(n, m)` with `n <= n_max`.
pub fn check_tailed_t(n_max: usize) -> Result<TailedTCheck> {
    let mut instances = 0;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut achieved: Option<Rational> = None;
    for n in 3..=n_max {
        for m in n - 1..=3 * n - 6 {
            let t = gen_t_with_tail(n, m)?;
            let req = t.slack_vs_requested();
            let ach = t.slack_vs_achieved();
            lo = Some(lo.map_or(req.clone(), |x| x.min(req.clone())));
            hi = Some(hi.map_or(req.clone(), |x| x.max(req)));
            achieved = Some(achieved.map_or(ach.clone(), |x| x.min(ach)));
            instances += 1;
        }
    }
    let get = |x: Option<Rational>| Frac(x.unwrap_or_else(|| int(0)));
    Ok(TailedTCheck {
        n_max,
        instances,
        min_slack_vs_requested: get(lo),
        max_slack_vs_requested: get(hi),
        min_slack_vs_achieved: get(achieved),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamiliesReport {
    pub max_n: usize,
    pub l_family: LFamilyCheck,
    pub t_family: TFamilyCheck,
    pub paths: PathCheck,
    pub corollary: CorollaryCheck,
    pub tailed_t: TailedTCheck,
}

impl FamiliesReport {
    pub fn holds(&self) -> bool {
        self.l_family.holds()
            && self.t_family.holds()
            && self.paths.holds()
            && self.corollary.holds()
            && self.tailed_t.holds()
    }
}

/// Checks every family against its closed forms for `n <= max_n`. The
/// `T` closed form is checked from `n = 9`; `T_6` is reported apart.
pub fn check_families(max_n: usize) -> Result<FamiliesReport> {
    if max_n < 9 {
        return Err(invalid(format!("max_n must be at least 9, got {max_n}")));
    }
    Ok(FamiliesReport {
        max_n,
        l_family: check_l_family((4..=max_n).step_by(2))?,
        t_family: check_t_family((9..=max_n).step_by(3))?,
        paths: check_paths(2..=max_n)?,
        corollary: check_corollary(&COROLLARY_NS)?,
        tailed_t: check_tailed_t(max_n.min(40))?,
    })
}
