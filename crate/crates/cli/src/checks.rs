//! The acceptance criteria, shared by `check-all` and the acceptance tests.

use num_complex::Complex64 as C;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use tischler_core::curves::{
    certify_levy, find_levy_cycle, is_peripheral, iterate_pullback, parse_word, pullback,
    random_simple_curve, OrbitEnd,
};
use tischler_core::dynamics::{
    builtin, extract_tischler, incomplete_beta_coefficients, verify_map, AntiRationalMap,
    FixedKind, Tolerances,
};
use tischler_core::enumerate::{
    enumerate_graphs, enumerate_trees, trees_of_degree, verify_icosahedral, Catalog,
};
use tischler_core::rotation_graph::library::{cube, fig6, k4, octahedron, prism, theta};
use tischler_core::rotation_graph::{GraphError, Orientation, PlaneGraph};
use tischler_core::tischler::{validate, BranchingData, TischlerGraph, TischlerTree};

pub const FIG7_SEED: &str = include_str!("../../../data/k4_fig7_seed.word");

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    run: fn(u64) -> Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl CheckResult {
    /// One line: verdict, id, name, runtime against its limit, detail.
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2} s, limit {} s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, run| Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
        run,
    };
    vec![
        c(
            1,
            "degree-3 uniqueness",
            1,
            degree_three_uniqueness as fn(u64) -> Check,
        ),
        c(
            2,
            "degree-4 non-polynomial catalog",
            60,
            degree_four_catalog,
        ),
        c(3, "tree catalogs", 10, tree_catalogs),
        c(4, "obstruction dichotomy", 120, obstruction_dichotomy),
        c(5, "complexity monotonicity", 60, complexity_monotonicity),
        c(6, "K4 pull-back orbit 12 -> 8 -> 4", 5, k4_orbit),
        c(7, "fixed-point counting", 30, fixed_point_counting),
        c(8, "graph extraction round-trip", 120, extraction_round_trip),
        c(9, "incomplete-beta coefficients", 1, beta_coefficients),
        c(10, "icosahedral verification", 60, icosahedral),
        c(11, "graph kernel property suites", 30, property_suites),
    ]
}

/// Runs one criterion; a panic or an overrun of the time limit is a failure.
pub fn run_criterion(c: &Criterion, seed: u64) -> CheckResult {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(seed)))
        .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if pass && elapsed > c.limit {
        pass = false;
        detail = format!("exceeded time limit; {detail}");
    }
    CheckResult {
        id: c.id,
        name: c.name.to_string(),
        pass,
        detail,
        elapsed,
        limit: c.limit,
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".to_string())
}

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    criteria().iter().map(|c| run_criterion(c, seed)).collect()
}

fn degree_three_uniqueness(_: u64) -> Check {
    let c = enumerate_graphs(3).map_err(err)?;
    let np = c.filter(|e| !e.obstructed && !e.antipolynomial);
    ensure(np.len() == 1, || {
        format!("{} classes, expected 1", np.len())
    })?;
    let k4_code = k4().canonical_code(Orientation::Preserve);
    ensure(np[0].canonical_code == k4_code, || {
        "the class is not K4".to_string()
    })?;
    ensure(np[0].branching.0 == vec![1, 1, 1, 1], || {
        format!("branching {}", np[0].branching)
    })?;
    Ok("1 class, equal to K4, branching (1,1,1,1)".to_string())
}

fn degree_four_catalog(_: u64) -> Check {
    let c = enumerate_graphs(4).map_err(err)?;
    let np = c.filter(|e| !e.obstructed && !e.antipolynomial);
    let hist = c.histogram(np.iter().copied());
    let expected = vec![
        (BranchingData(vec![1; 6]), 1),
        (BranchingData(vec![2, 1, 1, 1, 1]), 2),
        (BranchingData(vec![2, 2, 1, 1]), 4),
        (BranchingData(vec![2, 2, 2]), 1),
    ];
    let show = |h: &[(BranchingData, usize)]| {
        h.iter()
            .map(|(b, n)| format!("{b}:{n}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    ensure(np.len() == 8, || {
        format!("{} classes, expected 8", np.len())
    })?;
    ensure(hist == expected, || format!("histogram {}", show(&hist)))?;
    Ok(format!("8 classes, {}", show(&hist)))
}

fn mirror_pairs(trees: &[TischlerTree]) -> usize {
    let codes: Vec<_> = trees
        .iter()
        .map(|t| t.canonical_code(Orientation::Preserve))
        .collect();
    codes
        .iter()
        .zip(trees)
        .filter(|(c, t)| &t.mirror().canonical_code(Orientation::Preserve) != *c)
        .count()
        / 2
}

fn tree_catalogs(_: u64) -> Check {
    let count = |m: &[usize]| enumerate_trees(&BranchingData(m.to_vec())).len();
    for m in 1..=4 {
        ensure(count(&[m]) == 1, || {
            format!("({m}) has {} trees", count(&[m]))
        })?;
    }
    for m in [[1, 1], [2, 1], [3, 1], [2, 2]] {
        ensure(count(&m) == 1, || format!("{m:?} has {} trees", count(&m)))?;
    }
    ensure(count(&[1, 1, 1]) == 1, || {
        "(1,1,1) is not unique".to_string()
    })?;
    for m in [vec![2, 1, 1], vec![1, 1, 1, 1]] {
        let t = enumerate_trees(&BranchingData(m.clone()));
        let pairs = mirror_pairs(&t);
        ensure(t.len() == 4 && pairs == 1, || {
            format!("{m:?}: {} trees, {pairs} mirror pairs", t.len())
        })?;
    }
    let totals: Vec<usize> = (2..=5)
        .map(|d| trees_of_degree(d).iter().map(|(_, t)| t.len()).sum())
        .collect();
    ensure(totals == [1, 2, 3, 11], || format!("totals {totals:?}"))?;
    Ok("per-branching counts match; totals 1, 2, 3, 11 for d = 2..5".to_string())
}

fn obstruction_dichotomy(_: u64) -> Check {
    let mut graphs = 0;
    let mut obstructed = 0;
    for d in 2..=4 {
        for e in &enumerate_graphs(d).map_err(err)?.entries {
            let t = e.tischler();
            let witness = t.is_obstructed();
            let levy = find_levy_cycle(&t).map_err(err)?;
            ensure(witness.is_some() == levy.is_some(), || {
                format!("disagreement on {}", e.canonical_code.to_hex())
            })?;
            if let Some(l) = levy {
                let certified = certify_levy(&t, &l.curves()[0]).map_err(err)?;
                ensure(certified, || {
                    format!("uncertified cycle on {}", e.canonical_code.to_hex())
                })?;
                obstructed += 1;
            }
            graphs += 1;
        }
    }
    let t = validate(&fig6()).map_err(|v| format!("{v:?}"))?;
    let w = t.is_obstructed().ok_or("fig6 graph is unobstructed")?;
    let ends = |e: usize| {
        let (u, v) = t.graph().edge_endpoints(e);
        (u.min(v), u.max(v))
    };
    let mut edges = [ends(w.edge_a), ends(w.edge_b)];
    edges.sort();
    ensure(edges == [(0, 1), (2, 3)], || {
        format!("fig6 witness edges {edges:?}")
    })?;
    Ok(format!(
        "{graphs} graphs, {obstructed} obstructed, all Levy cycles certified; fig6 witness AB, CD"
    ))
}

fn monotone_trials(
    t: &TischlerGraph,
    rng: &mut ChaCha8Rng,
    trials: usize,
) -> Result<usize, String> {
    let mut strict = 0;
    for _ in 0..trials {
        let w = random_simple_curve(t, rng, 10);
        let total: usize = pullback(t, &w)
            .map_err(err)?
            .iter()
            .map(|c| c.complexity())
            .sum();
        ensure(total <= w.complexity(), || {
            format!(
                "{total} > {} for {}",
                w.complexity(),
                tischler_core::curves::format_word(&w)
            )
        })?;
        strict += usize::from(total < w.complexity());
    }
    Ok(strict)
}

fn complexity_monotonicity(seed: u64) -> Check {
    let mut notes = Vec::new();
    for (name, g, salt) in [("K4", k4(), 1u64), ("prism", prism(), 2)] {
        let t = validate(&g).map_err(|v| format!("{v:?}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (salt << 32));
        let strict = monotone_trials(&t, &mut rng, 1000)?;
        ensure(strict > 0, || format!("no strict decrease on {name}"))?;
        notes.push(format!("{name}: 1000/1000, {strict} strict"));
    }
    Ok(notes.join("; "))
}

/// Complexities along the orbit of the stored seed curve on K4.
pub fn k4_orbit_complexities() -> Result<(Vec<usize>, OrbitEnd, bool), String> {
    let t = validate(&k4()).map_err(|v| format!("{v:?}"))?;
    let seed = parse_word(&t, FIG7_SEED).map_err(err)?;
    let (orbit, end) = iterate_pullback(&t, &seed, 8).map_err(err)?;
    let cx = orbit.iter().map(|s| s.curve.complexity()).collect();
    let fixed = match orbit.last() {
        Some(last) => {
            let ess = last.essential();
            ess.len() == 1
                && tischler_core::curves::homotopic(&last.components[ess[0]].reduced, &last.curve)
        }
        None => false,
    };
    ensure(!is_peripheral(&t, &seed).map_err(err)?, || {
        "seed is peripheral".to_string()
    })?;
    Ok((cx, end, fixed))
}

fn k4_orbit(_: u64) -> Check {
    let (cx, end, fixed) = k4_orbit_complexities()?;
    ensure(cx == [12, 8, 4], || format!("complexities {cx:?}"))?;
    ensure(fixed && end == OrbitEnd::Cycle { from: 2, to: 3 }, || {
        format!("orbit ends with {end:?}")
    })?;
    Ok("12 -> 8 -> 4, then the class pulls back to itself".to_string())
}

fn builtin_maps() -> Result<Vec<(String, AntiRationalMap)>, String> {
    let mut out = Vec::new();
    for d in 2..=5 {
        out.push((format!("zbar^{d}"), builtin("zbar", Some(d)).map_err(err)?));
    }
    for name in ["f_1_1", "f_2_1", "f_3_1", "f_2_2", "tetrahedral"] {
        out.push((name.to_string(), builtin(name, None).map_err(err)?));
    }
    Ok(out)
}

fn fixed_point_counting(_: u64) -> Check {
    let tol = Tolerances::default();
    let mut notes = Vec::new();
    for (name, f) in builtin_maps()? {
        let r = verify_map(&f, &tol).map_err(err)?;
        ensure(r.identity_ok, || format!("{name}: counts {:?}", r.counts))?;
        ensure(r.max_residual < 1e-10, || {
            format!("{name}: residual {:e}", r.max_residual)
        })?;
        notes.push(format!(
            "{name} {}-{}",
            r.counts.repelling,
            r.counts.attracting_total()
        ));
        if name == "tetrahedral" {
            ensure(
                r.counts.superattracting == 4 && r.counts.repelling == 6,
                || format!("tetrahedral counts {:?}", r.counts),
            )?;
            let targets: Vec<C> = (0..3)
                .map(|k| C::from_polar(1.0, 2.0 * PI * k as f64 / 3.0))
                .chain([C::new(0.0, 0.0)])
                .collect();
            for p in r
                .fixed_points
                .iter()
                .filter(|p| p.kind == FixedKind::Superattracting)
            {
                let z = p
                    .location
                    .finite()
                    .ok_or("superattracting point at infinity")?;
                ensure(targets.iter().any(|t| (z - t).norm() < 1e-9), || {
                    format!("unexpected superattracting point {}", p.location)
                })?;
            }
        }
    }
    Ok(format!("N_rep-N_attr = d-1 for all: {}", notes.join(", ")))
}

fn extraction_round_trip(_: u64) -> Check {
    let tol = Tolerances::default();
    let tetra = extract_tischler(&builtin("tetrahedral", None).map_err(err)?, &tol).map_err(err)?;
    let k4_full = validate(&k4()).map_err(|v| format!("{v:?}"))?.expand_full();
    ensure(
        tetra.full.canonical_code(Orientation::Preserve)
            == k4_full.canonical_code(Orientation::Preserve),
        || "tetrahedral graph is not the expanded K4".to_string(),
    )?;
    for (m0, m1) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
        let x = extract_tischler(&builtin(&format!("f_{m0}_{m1}"), None).map_err(err)?, &tol)
            .map_err(err)?;
        let trees = enumerate_trees(&BranchingData::from_multiplicities(vec![m0, m1]));
        ensure(trees.len() == 1, || {
            format!("({m0},{m1}) has {} trees", trees.len())
        })?;
        let compact = trees[0].compactify().0;
        ensure(
            x.tischler.canonical_code() == compact.canonical_code(),
            || format!("f_{m0}_{m1} does not reduce to the ({m0},{m1}) tree"),
        )?;
    }
    Ok("tetrahedral = expanded K4; f_1_1, f_2_1, f_3_1, f_2_2 reduce to their trees".to_string())
}

fn beta_coefficients(_: u64) -> Check {
    let expected: [((usize, usize), Vec<i64>); 4] = [
        ((1, 1), vec![0, 0, 3, -2]),
        ((2, 1), vec![0, 0, 0, 4, -3]),
        ((3, 1), vec![0, 0, 0, 0, 5, -4]),
        ((2, 2), vec![0, 0, 0, 10, -15, 6]),
    ];
    for ((m0, m1), coeffs) in expected {
        let exact = incomplete_beta_coefficients(m0, m1);
        ensure(exact == coeffs, || format!("f_{m0}_{m1}: {exact:?}"))?;
        let f = builtin(&format!("f_{m0}_{m1}"), None).map_err(err)?;
        let num: Vec<C> = coeffs.iter().map(|&c| C::new(c as f64, 0.0)).collect();
        ensure(
            f.numerator() == num.as_slice() && f.denominator() == [C::new(1.0, 0.0)],
            || format!("builtin f_{m0}_{m1} differs"),
        )?;
    }
    Ok("3z^2-2z^3, 4z^3-3z^4, 5z^4-4z^5, 10z^3-15z^4+6z^5".to_string())
}

fn icosahedral(_: u64) -> Check {
    let r = verify_icosahedral().map_err(err)?;
    for p in &r.polyhedra {
        ensure(p.pass, || format!("{}: {p:?}", p.name))?;
    }
    Ok(format!(
        "{}: degree 31, unobstructed, rotation group order 60",
        r.polyhedra
            .iter()
            .map(|p| p.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

/// Twenty connected plane graphs: named ones and the start of the degree-4
/// catalog.
pub fn sample_graphs() -> Vec<PlaneGraph> {
    let mut out = vec![
        k4(),
        theta(3),
        theta(5),
        prism(),
        cube(),
        octahedron(),
        fig6(),
    ];
    let catalog = enumerate_graphs(4).expect("degree-4 catalog");
    out.extend(
        catalog
            .entries
            .iter()
            .take(20 - out.len())
            .map(|e| e.graph()),
    );
    out
}

fn cycle_count(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for s in 0..p.len() {
        if !seen[s] {
            count += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = p[d];
            }
        }
    }
    count
}

fn property_suites(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    // Euler: random rotation systems are accepted exactly when V - E + F = 2
    // on a connected system.
    let mut accepted = 0;
    for _ in 0..500 {
        let n = 2 * rng.gen_range(1..8);
        let mut pairing: Vec<usize> = (0..n).collect();
        pairing.shuffle(&mut rng);
        let mut alpha = vec![0; n];
        for p in pairing.chunks(2) {
            alpha[p[0]] = p[1];
            alpha[p[1]] = p[0];
        }
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        let phi: Vec<usize> = (0..n).map(|d| sigma[alpha[d]]).collect();
        let chi = cycle_count(&sigma) - cycle_count(&alpha) + cycle_count(&phi);
        match PlaneGraph::new_connected(alpha, sigma) {
            Ok(g) => {
                ensure(chi == 2 && g.euler_characteristic() == 2, || {
                    format!("chi {chi} accepted")
                })?;
                accepted += 1;
            }
            Err(GraphError::NotSphere { .. }) => {}
            Err(GraphError::Disconnected(_)) => {}
            Err(e) => return Err(format!("unexpected error {e}")),
        }
    }
    let graphs = sample_graphs();
    for _ in 0..100 {
        for g in &graphs {
            let mut perm: Vec<usize> = (0..g.dart_count()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            ensure(
                h.canonical_code(Orientation::Preserve) == g.canonical_code(Orientation::Preserve),
                || "canonical code changed under relabeling".to_string(),
            )?;
        }
    }
    for g in &graphs {
        let d = g.dual();
        ensure(&d.dual() == g && d.vertex_count() == g.face_count(), || {
            "dual is not an involution".to_string()
        })?;
        let group = g.automorphism_group().map_err(err)?;
        let set: HashSet<_> = group.iter().cloned().collect();
        for a in &group {
            ensure(
                a.is_automorphism_of(g) && set.contains(&a.inverse()),
                || "group not closed".to_string(),
            )?;
            for b in &group {
                ensure(set.contains(&a.compose(b)), || {
                    "group not closed under composition".to_string()
                })?;
            }
        }
    }
    Ok(format!(
        "Euler on 500 systems ({accepted} spherical), 100 relabelings x 20 graphs, dual involution, automorphism closure"
    ))
}

/// Directory holding the golden catalogs.
pub fn catalog_dir() -> PathBuf {
    std::env::var_os("TISCHLER_CATALOGS")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalogs"))
}

/// Compares freshly enumerated catalogs with the golden files.
pub fn golden_catalogs(max_degree: usize) -> Check {
    for d in 2..=max_degree {
        let path = catalog_dir().join(format!("d{d}.json"));
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let golden: Catalog =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let fresh = enumerate_graphs(d).map_err(err)?;
        ensure(golden == fresh, || {
            format!("degree {d} differs from {}", path.display())
        })?;
    }
    Ok(format!("d2..d{max_degree} match"))
}
