//! Exact evaluation and finite verification of the surgery inequalities,
//! the bonus table, the AM-HM bound, the simple-case inequality and the
//! diameter bounds for connected planar graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::test_planarity;
use crate::rational::{frac, int, recip, Frac, Rational};
use crate::workers::pool;

/// Boundary-level parameter classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeClass {
    Omega,
    Alpha,
    Beta,
    Mu,
    Nu,
}

/// `(n, o, ō, z)`: level size, outside-neighbor count, `o + n - 1`, and
/// the endpoint cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeParams {
    pub n: i64,
    pub o: i64,
    pub o_bar: i64,
    pub z: i64,
}

impl TypeClass {
    pub const ALL: [TypeClass; 5] = [
        TypeClass::Omega,
        TypeClass::Alpha,
        TypeClass::Beta,
        TypeClass::Mu,
        TypeClass::Nu,
    ];

    pub fn params(self) -> TypeParams {
        let (n, o, o_bar, z) = match self {
            TypeClass::Omega => (1, 0, 0, 3),
            TypeClass::Alpha => (1, 1, 1, 3),
            TypeClass::Beta => (1, 2, 2, 3),
            TypeClass::Mu => (2, 1, 2, 5),
            TypeClass::Nu => (2, 2, 3, 5),
        };
        TypeParams { n, o, o_bar, z }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TypeClass::Omega => "ω",
            TypeClass::Alpha => "α",
            TypeClass::Beta => "β",
            TypeClass::Mu => "μ",
            TypeClass::Nu => "ν",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "ω" | "omega" => TypeClass::Omega,
            "α" | "alpha" => TypeClass::Alpha,
            "β" | "β′" | "beta" | "beta'" => TypeClass::Beta,
            "μ" | "mu" => TypeClass::Mu,
            "ν" | "ν′" | "nu" | "nu'" => TypeClass::Nu,
            _ => return None,
        })
    }
}

impl Serialize for TypeClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// The 14 unordered surgery pairs: all pairs with repetition except ω–ω.
pub fn surgery_pairs() -> Vec<(TypeClass, TypeClass)> {
    let mut pairs = Vec::with_capacity(14);
    for (i, &a) in TypeClass::ALL.iter().enumerate() {
        for &b in &TypeClass::ALL[i..] {
            if (a, b) != (TypeClass::Omega, TypeClass::Omega) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Guaranteed post-surgery fitness gain; 0 for unlisted pairs.
pub fn bonus(a: TypeClass, b: TypeClass) -> Rational {
    use TypeClass::*;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (Alpha, Beta) => frac(1, 10),
        (Alpha, Alpha) => frac(1, 5),
        (Omega, Beta) => frac(13, 30),
        (Omega, Alpha) => frac(8, 15),
        (Omega, Mu) => frac(1, 12),
        _ => int(0),
    }
}

/// The general surgery lower bound (★) with `w` deleted levels and `x`
/// deleted vertices.
pub fn eval_star(a: TypeClass, b: TypeClass, w: u64, x: u64) -> Rational {
    star_base(a, b, x) - frac(2 * w as i64, 5)
}

/// (★) with the `-2w/5` term omitted.
fn star_base(a: TypeClass, b: TypeClass, x: u64) -> Rational {
    let (l, r) = (a.params(), b.params());
    let total = l.n + x as i64 + r.n;
    let degree_sum = l.n * l.o + 2 * (3 * total - 6) + r.n * r.o;
    frac(total * total, degree_sum) - frac(l.n, l.o_bar + r.n) - frac(r.n, r.o_bar + l.n) + bonus(a, b)
}

/// The surgery bound (✠) for two deleted levels of size 3 (w = 2, x = 6).
pub fn eval_maltese(a: TypeClass, b: TypeClass) -> Rational {
    let (l, r) = (a.params(), b.params());
    let (w, x) = (2i64, 6i64);
    frac(l.n * l.n, l.n * l.o_bar + l.z)
        + frac(x * x, l.z + 2 * (3 * x - 6) + r.z)
        + frac(r.n * r.n, r.n * r.o_bar + r.z)
        - frac(l.n, l.o_bar + r.n)
        - frac(r.n, r.o_bar + l.n)
        + bonus(a, b)
        - frac(2 * w, 5)
}

pub const STAR_EXCEPTIONAL_POINTS: [(u64, u64); 2] = [(1, 3), (2, 6)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridCell {
    pub pair: (TypeClass, TypeClass),
    pub w: u64,
    pub x: u64,
    pub value: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarGridReport {
    pub x_min: u64,
    pub x_max: u64,
    pub w_rule: &'static str,
    pub pairs: usize,
    pub cells: u64,
    /// Every cell with a non-positive value.
    pub exceptions: Vec<GridCell>,
    /// The distinct `(w, x)` points among the exceptions.
    pub exception_points: Vec<(u64, u64)>,
    pub only_expected_points: bool,
    pub every_expected_point_hit: bool,
}

impl StarGridReport {
    pub fn holds(&self) -> bool {
        self.only_expected_points && self.every_expected_point_hit
    }
}

fn grid_points(x_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=x_max).flat_map(|x| (0..=x / 3).map(move |w| (w, x)))
}

pub fn verify_star_grid(x_max: u64) -> Result<StarGridReport> {
    verify_star_grid_with(x_max, eval_star)
}

/// Grid verification against an arbitrary evaluator; exposed so mutated
/// evaluators can be checked to fail.
pub fn verify_star_grid_with<F>(x_max: u64, eval: F) -> Result<StarGridReport>
where
    F: Fn(TypeClass, TypeClass, u64, u64) -> Rational + Sync + Send,
{
    if x_max < 6 {
        return Err(Error::InvalidParameter(format!("x_max must be at least 6, got {x_max}")));
    }
    let pairs = surgery_pairs();
    let points: Vec<_> = grid_points(x_max).collect();
    let eval = &eval;
    let exceptions: Vec<GridCell> = pool().install(|| {
        points
            .par_iter()
            .flat_map_iter(|&(w, x)| {
                pairs.iter().filter_map(move |&(a, b)| {
                    let value = eval(a, b, w, x);
                    (value <= int(0)).then_some(GridCell { pair: (a, b), w, x, value: Frac(value) })
                })
            })
            .collect()
    });
    let exception_points: Vec<_> = exceptions
        .iter()
        .map(|c| (c.w, c.x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(StarGridReport {
        x_min: 2,
        x_max,
        w_rule: "0 <= w <= floor(x/3)",
        pairs: pairs.len(),
        cells: (points.len() * pairs.len()) as u64,
        only_expected_points: exception_points.iter().all(|p| STAR_EXCEPTIONAL_POINTS.contains(p)),
        every_expected_point_hit: STAR_EXCEPTIONAL_POINTS.iter().all(|p| exception_points.contains(p)),
        exceptions,
        exception_points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarTailReport {
    pub x_max: u64,
    pub cells: u64,
    /// (★) > x/6 − 4 − 2w/5 on every grid cell.
    pub linear_bound_holds: bool,
    /// x/6 − 2x/15 − 4 > 0 for every 120 < x ≤ x_max.
    pub tail_positive: bool,
    pub first_failure: Option<GridCell>,
    /// Finite grid up to 120, linear bound everywhere, and x/30 > 4 iff
    /// x > 120 together cover every x.
    pub chain: Vec<&'static str>,
}

impl StarTailReport {
    pub fn holds(&self) -> bool {
        self.linear_bound_holds && self.tail_positive
    }
}

/// Base values of (★) for one `x`, cached across `w`.
fn star_row(pairs: &[(TypeClass, TypeClass)], x: u64) -> Vec<Rational> {
    pairs.iter().map(|&(a, b)| star_base(a, b, x)).collect()
}

pub fn verify_star_tail(x_max: u64) -> StarTailReport {
    let pairs = surgery_pairs();
    let xs: Vec<u64> = (2..=x_max).collect();
    let failures: Vec<GridCell> = pool().install(|| {
        xs.par_iter()
            .filter_map(|&x| {
                let row = star_row(&pairs, x);
                let linear = frac(x as i64, 6) - int(4);
                for w in 0..=x / 3 {
                    let penalty = frac(2 * w as i64, 5);
                    let bound = &linear - &penalty;
                    for (k, base) in row.iter().enumerate() {
                        let value = base - &penalty;
                        if value <= bound {
                            return Some(GridCell { pair: pairs[k], w, x, value: Frac(value) });
                        }
                    }
                }
                None
            })
            .collect()
    });
    let tail_positive = (121..=x_max.max(120))
        .all(|x| frac(x as i64, 6) - frac(2 * x as i64, 15) - int(4) > int(0));
    StarTailReport {
        x_max,
        cells: grid_points(x_max).count() as u64 * pairs.len() as u64,
        linear_bound_holds: failures.is_empty(),
        tail_positive,
        first_failure: failures.into_iter().next(),
        chain: vec![
            "(★) > 0 on 2 <= x <= 120 except (w,x) in {(1,3),(2,6)} (grid)",
            "(★) > x/6 - 4 - 2w/5 >= x/6 - 2x/15 - 4 using w <= x/3",
            "x/6 - 2x/15 - 4 = x/30 - 4 > 0 iff x > 120",
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalteseEntry {
    pub pair: (TypeClass, TypeClass),
    pub value: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalteseReport {
    pub w: u64,
    pub x: u64,
    pub values: Vec<MalteseEntry>,
    pub minimum: Frac,
    pub all_positive: bool,
}

pub fn maltese_report() -> MalteseReport {
    let values: Vec<_> = surgery_pairs()
        .into_iter()
        .map(|(a, b)| MalteseEntry { pair: (a, b), value: Frac(eval_maltese(a, b)) })
        .collect();
    let minimum = values.iter().map(|e| e.value.0.clone()).min().expect("14 pairs");
    MalteseReport {
        w: 2,
        x: 6,
        all_positive: minimum > int(0),
        minimum: Frac(minimum),
        values,
    }
}

pub fn verify_maltese_all() -> bool {
    maltese_report().all_positive
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    pub slack: Frac,
}

impl BoundCheck {
    fn non_strict(slack: Rational) -> Self {
        BoundCheck { holds: slack >= int(0), slack: Frac(slack) }
    }

    fn strict(slack: Rational) -> Self {
        BoundCheck { holds: slack > int(0), slack: Frac(slack) }
    }
}

pub fn strong_main_constant() -> Rational {
    frac(37, 60)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: Frac,
    /// D ≤ (4(n−1)−m)/3; slack is the right side minus D.
    pub aux: BoundCheck,
    /// D ≤ 4n²/(3m).
    pub quad: BoundCheck,
    /// D < (5/2)r.
    pub main: BoundCheck,
    /// r ≥ (2/5)D + 37/60; slack is r − (2/5)D − 37/60.
    pub strong_main: BoundCheck,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.aux.holds && self.quad.holds && self.main.holds && self.strong_main.holds
    }
}

/// All four diameter bounds of a connected planar graph on at least two
/// vertices, with exact slacks.
pub fn check_bounds(g: &Graph) -> Result<BoundsReport> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !test_planarity(g) {
        return Err(Error::NotPlanar);
    }
    bounds_unchecked(g)
}

/// `check_bounds` for input already known to be connected and planar.
pub(crate) fn bounds_unchecked(g: &Graph) -> Result<BoundsReport> {
    let (n, m) = (g.vertex_count() as i64, g.edge_count() as i64);
    let d = g.diameter_value()?;
    let r = g.inverse_degree()?;
    let dr = int(d as i64);
    Ok(BoundsReport {
        n: n as usize,
        m: m as usize,
        d,
        aux: BoundCheck::non_strict(frac(4 * (n - 1) - m, 3) - &dr),
        quad: BoundCheck::non_strict(frac(4 * n * n, 3 * m) - &dr),
        main: BoundCheck::strict(frac(5, 2) * &r - &dr),
        strong_main: BoundCheck::non_strict(&r - frac(2, 5) * &dr - strong_main_constant()),
        r: Frac(r),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmHm {
    pub lhs: Frac,
    pub rhs: Frac,
    pub holds: bool,
}

/// `Σ_{v∈S} 1/d(v) ≥ |S|² / Σ_{v∈S} d(v)`.
pub fn check_amhm(g: &Graph, subset: &[usize]) -> Result<AmHm> {
    if subset.is_empty() {
        return Err(Error::InvalidParameter("subset must be nonempty".into()));
    }
    let mut lhs = int(0);
    let mut degree_sum = 0i64;
    for &v in subset {
        g.check_vertex(v)?;
        let d = g.degree(v);
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        lhs += recip(d as i64);
        degree_sum += d as i64;
    }
    let k = subset.len() as i64;
    let rhs = frac(k * k, degree_sum);
    Ok(AmHm { holds: lhs >= rhs, lhs: Frac(lhs), rhs: Frac(rhs) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleCaseReport {
    pub n_max: u64,
    pub holds: bool,
    pub min_slack: Frac,
    pub argmin: u64,
    pub first_failure: Option<u64>,
}

/// Slack of `n²/(6n−12) ≥ (2/5)(n+1)/3`.
pub fn simplecase_slack(n: u64) -> Rational {
    let n = n as i64;
    frac(n * n, 6 * n - 12) - frac(2 * (n + 1), 15)
}

pub fn simplecase_report(n_max: u64) -> Result<SimpleCaseReport> {
    if n_max < 3 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 3, got {n_max}")));
    }
    let mut min: Option<(Rational, u64)> = None;
    let mut first_failure = None;
    for n in 3..=n_max {
        let s = simplecase_slack(n);
        if s < int(0) && first_failure.is_none() {
            first_failure = Some(n);
        }
        if min.as_ref().is_none_or(|(m, _)| s < *m) {
            min = Some((s, n));
        }
    }
    let (min_slack, argmin) = min.expect("n_max >= 3");
    Ok(SimpleCaseReport {
        n_max,
        holds: first_failure.is_none(),
        min_slack: Frac(min_slack),
        argmin,
        first_failure,
    })
}

pub fn check_simplecase_inequality(n_max: u64) -> Result<bool> {
    Ok(simplecase_report(n_max)?.holds)
}
