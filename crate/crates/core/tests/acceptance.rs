//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use invdeg::certify::{check_amhm, eval_maltese, maltese_report, surgery_pairs, TypeClass};
use invdeg::families::{
    aux_slack, check_corollary, gen_k5_minus, gen_l, gen_l_with_tail, gen_path, gen_t, FamilyMetrics, COROLLARY_NS,
};
use invdeg::io::from_graph6;
use invdeg::lowerbound::{digraph_report, gen_structured_graph, verify_structured_theorem, LevelSequence, DEFAULT_SEED};
use invdeg::planarity::test_planarity;
use invdeg::rational::{frac, int, Frac};
use invdeg::search::{canonical_form, verify_small_graphs};
use invdeg::surgery::apply_surgery;
use invdeg::{Graph, Rational};

type Check = Result<String, String>;

fn criterion(id: u32, name: &str, limit: Duration, run: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(detail) if elapsed < limit => (true, detail),
        Ok(detail) => (false, format!("{detail}; took {elapsed:?}, limit {limit:?}")),
        Err(detail) => (false, detail),
    };
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id} {name}: {verdict} ({detail}; {} ms)", elapsed.as_millis());
    pass
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_invdeg"))
        .arg("--json")
        .args(args)
        .output()
        .map_err(|e| format!("cannot run the binary: {e}"))?;
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("report is not JSON: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), v))
}

fn star_grid() -> Check {
    let (code, v) = cli_json(&["certify", "star", "--x-max", "120"])?;
    ensure(code == 0 && v["verdict"] == "pass", || format!("exit {code}, verdict {}", v["verdict"]))?;
    let points = &v["details"]["exceptions"];
    ensure(*points == serde_json::json!([[1, 3], [2, 6]]), || format!("non-positive points {points}"))?;
    let cells = v["details"]["grid"]["cells"].as_u64().unwrap_or(0);
    let expected: u64 = (2..=120u64).map(|x| x / 3 + 1).sum::<u64>() * 14;
    ensure(cells == expected, || format!("{cells} cells evaluated, expected {expected}"))?;
    Ok(format!("{cells} cells, non-positive only at {points}"))
}

fn star_tail() -> Check {
    let (code, v) = cli_json(&["certify", "tail", "--x-max", "2000"])?;
    let d = &v["details"];
    ensure(
        code == 0 && d["linear_bound_holds"] == true && d["tail_positive"] == true,
        || format!("exit {code}, details {d}"),
    )?;
    Ok(format!("{} cells", d["grid"]["cells"]))
}

fn maltese() -> Check {
    let report = maltese_report();
    ensure(report.values.len() == 14, || format!("{} pairs", report.values.len()))?;
    for e in &report.values {
        ensure(e.value.0 > int(0), || format!("{:?} gives {}", e.pair, e.value))?;
    }
    // Alpha: n = 1, o-bar = 1, z = 3; 2 deleted levels of 6 vertices; bonus 1/5.
    let hand = frac(1, 1 + 3) + frac(36, 3 + 2 * (18 - 6) + 3) + frac(1, 1 + 3) - frac(1, 2) - frac(1, 2) + frac(1, 5)
        - frac(4, 5);
    ensure(hand == frac(1, 10), || format!("hand value {}", Frac(hand.clone())))?;
    let alpha = eval_maltese(TypeClass::Alpha, TypeClass::Alpha);
    ensure(alpha == hand, || format!("eval_maltese(α, α) = {}", Frac(alpha.clone())))?;
    Ok(format!("minimum {}, (α, α) = 1/10", report.minimum))
}

fn shortest_path() -> Check {
    let report = digraph_report();
    ensure(report.nodes.len() == 10 && report.arcs.len() == 28, || {
        format!("{} nodes, {} arcs", report.nodes.len(), report.arcs.len())
    })?;
    ensure(report.negative_cycle.is_none(), || format!("negative cycle {:?}", report.negative_cycle))?;
    ensure(report.shortest_path == Some(Frac(frac(37, 60))), || {
        format!("distance {:?}", report.shortest_path)
    })?;
    Ok("distance 37/60, no negative cycle".into())
}

fn first_failures(failures: &[String]) -> String {
    let mut groups: Vec<(&str, usize, &str)> = Vec::new();
    for f in failures {
        let family = &f[..1];
        match groups.iter_mut().find(|g| g.0 == family) {
            Some(g) => g.1 += 1,
            None => groups.push((family, 1, f)),
        }
    }
    let parts: Vec<String> = groups.iter().map(|(_, count, first)| format!("{count} like {first}")).collect();
    format!("{} failures: {}", failures.len(), parts.join("; "))
}

fn family_tightness() -> Check {
    let mut failures = Vec::new();
    for n in (4..=200).step_by(2) {
        let got = FamilyMetrics::measure(&gen_l(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = frac(n as i64 - 4, 5) + frac(4, 3);
        if got.d != n / 2 - 1 || got.r.0 != r {
            failures.push(format!("L_{n}: D = {}, r = {}", got.d, got.r));
        }
        let gap = frac(5, 2) * &got.r.0 - int(got.d as i64);
        if gap != frac(4, 3) {
            failures.push(format!("L_{n}: gap {}", Frac(gap)));
        }
    }
    for n in (6..=300).step_by(3) {
        let got = FamilyMetrics::measure(&gen_t(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let slack = aux_slack(got.n, got.m, got.d);
        if got.m != 3 * n - 6 || got.d != n / 3 - 1 || slack != frac(5, 3) {
            failures.push(format!("T_{n}: m = {}, D = {}, aux slack {}", got.m, got.d, Frac(slack)));
        }
    }
    for n in 2..=300 {
        let got = FamilyMetrics::measure(&gen_path(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let slack = aux_slack(got.n, got.m, got.d);
        if slack != int(0) {
            failures.push(format!("P_{n}: aux slack {}", Frac(slack)));
        }
    }
    if failures.is_empty() {
        Ok("L, T and path families match exactly".into())
    } else {
        Err(first_failures(&failures))
    }
}

fn corollary() -> Check {
    let mut ratios: Vec<Rational> = Vec::new();
    for &n in &COROLLARY_NS {
        let got = FamilyMetrics::measure(&gen_l_with_tail(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ratios.push(frac(4 * (n * n) as i64, 3 * (got.m * got.d) as i64));
    }
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    ensure(decreasing, || "ratios are not strictly decreasing".into())?;
    let last = ratios.last().unwrap();
    ensure(*last > int(1) && *last < frac(51, 50), || format!("ratio at 300 is {}", Frac(last.clone())))?;
    let lib = check_corollary(&COROLLARY_NS).map_err(|e| e.to_string())?;
    ensure(lib.holds(), || "library corollary check disagrees".into())?;
    Ok(format!("ratio at 300 is {}", Frac(last.clone())))
}

fn k5_minus_by_hand() -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).filter(|&e| e != (3, 4)).collect();
    Graph::new(5, &edges).unwrap()
}

fn small_graph_search() -> Check {
    let report = verify_small_graphs(8).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = report.counts.iter().map(|&(_, c)| c).collect();
    ensure(counts == [1, 1, 2, 6, 20, 99, 646, 5974], || format!("counts {counts:?}"))?;
    ensure(report.violations.is_empty(), || format!("{} violations", report.violations.len()))?;
    ensure(report.equality_witnesses.len() == 1, || {
        format!("{} equality cases", report.equality_witnesses.len())
    })?;
    let witness = from_graph6(&report.equality_witnesses[0].graph6).map_err(|e| e.to_string())?;
    let same = canonical_form(&witness).unwrap() == canonical_form(&k5_minus_by_hand()).unwrap();
    ensure(same, || format!("equality case {}", report.equality_witnesses[0].graph6))?;
    ensure(canonical_form(&gen_k5_minus()).unwrap() == canonical_form(&witness).unwrap(), || {
        "generator K5⁻ differs".into()
    })?;
    Ok(format!("{} graphs, equality only at K5⁻", report.examined))
}

fn structured_theorem() -> Check {
    let report = verify_structured_theorem(200, 30, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(report.samples == 200, || format!("{} samples", report.samples))?;
    ensure(report.holds(), || format!("failures {:?}", report.failures))?;
    ensure(report.min_slack.0 >= int(0), || format!("min slack {}", report.min_slack))?;
    Ok(format!("min slack {} at {:?}", report.min_slack, report.min_slack_sizes))
}

fn random_planar(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut g = Graph::new(n, &edges).unwrap();
    for _ in 0..rng.gen_range(0..=2 * n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || g.has_edge(u, v) {
            continue;
        }
        edges.push((u, v));
        let h = Graph::new(n, &edges).unwrap();
        if test_planarity(&h) {
            g = h;
        } else {
            edges.pop();
        }
    }
    g
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, &edges).unwrap()
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..1000 {
        let n = rng.gen_range(2..=40);
        let g = random_planar(&mut rng, n);
        let mut subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if subset.is_empty() {
            subset.push(rng.gen_range(0..n));
        }
        let amhm = check_amhm(&g, &subset).map_err(|e| e.to_string())?;
        ensure(amhm.holds, || format!("AM-HM fails on sample {k}: {} < {}", amhm.lhs, amhm.rhs))?;
    }
    for k in 0..1000 {
        let n = rng.gen_range(1..=16);
        let g = random_graph(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        let same = canonical_form(&g).unwrap() == canonical_form(&h).unwrap();
        ensure(same, || format!("canonical form changes under relabeling on sample {k}"))?;
    }
    for k in 0..100 {
        let depth = rng.gen_range(3..=20);
        let mut sizes = vec![1];
        sizes.extend((1..depth).map(|_| rng.gen_range(1..=2)));
        sizes.push(1);
        let seq = LevelSequence::new(sizes.clone()).map_err(|e| e.to_string())?;
        let g = gen_structured_graph(&seq);
        let left = rng.gen_range(0..depth - 1);
        let right = rng.gen_range(left + 2..=depth);
        let (after, report) = apply_surgery(&g, 0, left, right).map_err(|e| e.to_string())?;
        let expected = g.diameter_value().unwrap() - (right - left - 1);
        let d = after.diameter_value().map_err(|e| e.to_string())?;
        ensure(d == expected && test_planarity(&after), || {
            format!("surgery {k} on {sizes:?} with L = {left}, R = {right}: D = {d}, expected {expected}")
        })?;
        ensure(report.contract.as_ref().is_some_and(|c| c.holds()), || {
            format!("surgery {k}: contract not reported as holding")
        })?;
    }
    Ok(format!("1000 AM-HM pairs, 1000 relabelings, 100 surgeries over {} type pairs", surgery_pairs().len()))
}

fn main() -> ExitCode {
    let minute = Duration::from_secs(60);
    let results = [
        criterion(1, "star grid certificate", minute, star_grid),
        criterion(2, "star tail certificate", Duration::from_secs(300), star_tail),
        criterion(3, "maltese certificate", Duration::from_secs(1), maltese),
        criterion(4, "shortest-path certificate", Duration::from_secs(1), shortest_path),
        criterion(5, "family tightness", minute, family_tightness),
        criterion(6, "corollary tightness", Duration::from_secs(1), corollary),
        criterion(7, "small-graph search", Duration::from_secs(900), small_graph_search),
        criterion(8, "structured-theorem suite", minute, structured_theorem),
        criterion(9, "property suites", minute, property_suites),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
