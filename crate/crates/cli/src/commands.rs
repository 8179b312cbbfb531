use crate::checks;
use crate::report::{to_value, Report};
use crate::{Cli, Command, Expect, MapSource, Outcome, UsageError};
use serde_json::json;
use std::path::{Path, PathBuf};
use tischler_core::curves::{
    certify_levy, find_levy_cycle, format_word, iterate_pullback, parse_word, pullback,
    ThurstonMatrix,
};
use tischler_core::dynamics::{
    builtin, extract_tischler, parse_map, verify_map, AntiRationalMap, Tolerances,
};
use tischler_core::enumerate::{
    enumerate_graphs, enumerate_trees, trees_of_degree, verify_icosahedral,
};
use tischler_core::rotation_graph::{parse_graph, GraphJson, Orientation, PlaneGraph};
use tischler_core::tischler::{validate, BranchingData, TischlerGraph, TischlerTree};

type Run = Result<(Report, Vec<String>), UsageError>;

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

pub(crate) fn execute(cli: &Cli) -> Result<Outcome, UsageError> {
    let g = &cli.global;
    let (report, lines) = match &cli.command {
        Command::Validate { file } => cmd_validate(file)?,
        Command::Obstruct { file, expect } => cmd_obstruct(file, *expect)?,
        Command::Levy { file, expect } => cmd_levy(file, *expect)?,
        Command::Enumerate {
            degree,
            branching,
            unobstructed,
            nonpolynomial,
            antipolynomial,
            golden,
        } => {
            if *golden {
                if branching.is_some() || *unobstructed || *nonpolynomial || *antipolynomial {
                    return Err(usage("--golden takes no filters"));
                }
                return golden_catalog(*degree, g.out.as_deref());
            }
            cmd_enumerate(
                *degree,
                branching.as_deref(),
                *unobstructed,
                *nonpolynomial,
                *antipolynomial,
            )?
        }
        Command::Trees { degree, branching } => cmd_trees(*degree, branching.as_deref())?,
        Command::Pullback {
            file,
            graph,
            curve,
            iterate,
        } => {
            let file = file.as_ref().or(graph.as_ref()).expect("clap requires one");
            cmd_pullback(file, curve, *iterate)?
        }
        Command::VerifyMap { source } => cmd_verify_map(source, tolerances(g.tol)?)?,
        Command::ExtractGraph { source, full } => {
            let (report, lines, graph) = cmd_extract(source, tolerances(g.tol)?, *full)?;
            if let (Some(path), Some(graph)) = (&g.out, graph) {
                std::fs::write(path, graph)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            let stdout = if g.json {
                report.to_json()
            } else {
                report.to_human(&lines)
            };
            return Ok(Outcome { report, stdout });
        }
        Command::VerifyIcosahedral => cmd_icosahedral()?,
        Command::Symmetry { file } => cmd_symmetry(file)?,
        Command::CheckAll { golden_degree } => cmd_check_all(g.seed, *golden_degree),
    };
    let text = if g.json {
        report.to_json()
    } else {
        report.to_human(&lines)
    };
    let stdout = match &g.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome { report, stdout })
}

fn tolerances(tol: Option<f64>) -> Result<Tolerances, UsageError> {
    let mut t = Tolerances::default();
    if let Some(x) = tol {
        if !(x > 0.0 && x < 1.0) {
            return Err(usage("--tol must lie in (0, 1)"));
        }
        t.residual = x;
    }
    Ok(t)
}

/// Reads `path`, falling back to `$TISCHLER_DATA/path` for relative paths.
fn read_input(path: &Path) -> Result<String, UsageError> {
    let mut candidates = vec![path.to_path_buf()];
    if let Some(dir) = std::env::var_os("TISCHLER_DATA") {
        if path.is_relative() {
            candidates.push(PathBuf::from(dir).join(path));
        }
    }
    for p in &candidates {
        if let Ok(s) = std::fs::read_to_string(p) {
            return Ok(s);
        }
    }
    Err(usage(format!("cannot read {}", path.display())))
}

/// A graph in the text format or as JSON.
fn load_graph(path: &Path) -> Result<PlaneGraph, UsageError> {
    let text = read_input(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        let j: GraphJson =
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        PlaneGraph::try_from(j)
    } else {
        parse_graph(&text)
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn check_valid(report: &mut Report, g: &PlaneGraph) -> Option<TischlerGraph> {
    match validate(g) {
        Ok(t) => {
            report.verdict(
                "valid",
                true,
                format!("degree {}, branching {}", t.degree(), t.branching_data()),
            );
            Some(t)
        }
        Err(v) => {
            let msg = v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            report.verdict("valid", false, msg);
            report.results = json!({ "violations": v });
            None
        }
    }
}

fn cmd_validate(file: &Path) -> Run {
    let g = load_graph(file)?;
    let mut r = Report::new("validate");
    r.input("file", file);
    let mut lines = vec![format!(
        "V = {}, E = {}, F = {}",
        g.vertex_count(),
        g.edge_count(),
        g.face_count()
    )];
    if let Some(t) = check_valid(&mut r, &g) {
        lines.push(format!("canonical code {}", t.canonical_code().to_hex()));
        r.results = json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "faces": g.face_count(),
            "tischler": t.to_json(),
            "violations": [],
        });
    }
    Ok((r, lines))
}

fn cmd_obstruct(file: &Path, expect: Expect) -> Run {
    let g = load_graph(file)?;
    let mut r = Report::new("obstruct");
    r.input("file", file)
        .input("expect", format!("{expect:?}").to_lowercase());
    let Some(t) = check_valid(&mut r, &g) else {
        return Ok((r, vec![]));
    };
    let witness = t.is_obstructed();
    let ends = |e: usize| {
        let (u, v) = t.graph().edge_endpoints(e);
        [u.min(v), u.max(v)]
    };
    let lines = match &witness {
        Some(w) => vec![format!(
            "faces {} and {} share edges {} {:?} and {} {:?}",
            w.face_a,
            w.face_b,
            w.edge_a,
            ends(w.edge_a),
            w.edge_b,
            ends(w.edge_b)
        )],
        None => vec!["no two faces share two edges".to_string()],
    };
    r.results = json!({
        "obstructed": witness.is_some(),
        "witness": witness,
        "witness_edge_endpoints": witness.map(|w| [ends(w.edge_a), ends(w.edge_b)]),
    });
    let obstructed = witness.is_some();
    r.verdict(
        "expectation",
        obstructed == (expect == Expect::Obstructed),
        if obstructed {
            "obstructed"
        } else {
            "unobstructed"
        },
    );
    Ok((r, lines))
}

fn cmd_levy(file: &Path, expect: Expect) -> Run {
    let g = load_graph(file)?;
    let mut r = Report::new("levy");
    r.input("file", file)
        .input("expect", format!("{expect:?}").to_lowercase());
    let Some(t) = check_valid(&mut r, &g) else {
        return Ok((r, vec![]));
    };
    match find_levy_cycle(&t) {
        Err(e) => {
            r.verdict("search", false, e.to_string());
            Ok((r, vec![]))
        }
        Ok(None) => {
            r.results = json!({ "levy_cycle": null, "hyperbolic": t.is_hyperbolic() });
            r.verdict(
                "expectation",
                expect == Expect::Unobstructed,
                "no Levy cycle",
            );
            Ok((r, vec!["no Levy cycle".to_string()]))
        }
        Ok(Some(m)) => {
            let c = &m.curves()[0];
            let certified = certify_levy(&t, c).unwrap_or(false);
            let matrix = ThurstonMatrix::new(&t, &m).ok();
            let entries: Option<Vec<Vec<String>>> = matrix.as_ref().map(|m| {
                m.entries()
                    .iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect())
                    .collect()
            });
            r.results = json!({
                "levy_cycle": format_word(c),
                "certified": certified,
                "thurston_matrix": entries,
                "leading_eigenvalue": matrix.as_ref().map(|m| m.leading_eigenvalue()),
            });
            r.verdict(
                "certified",
                certified,
                "degree-1 pull-back homotopic to the curve",
            );
            r.verdict(
                "expectation",
                expect == Expect::Obstructed,
                "Levy cycle found",
            );
            Ok((r, vec![format!("Levy cycle {}", format_word(c))]))
        }
    }
}

fn parse_branching(s: &str) -> Result<BranchingData, UsageError> {
    BranchingData::parse(s).ok_or_else(|| usage(format!("bad branching data `{s}`")))
}

fn golden_catalog(degree: usize, out: Option<&Path>) -> Result<Outcome, UsageError> {
    let mut r = Report::new("enumerate");
    r.input("degree", degree);
    let text = match enumerate_graphs(degree) {
        Ok(c) => {
            let mut s = serde_json::to_string_pretty(&c).expect("catalogs serialize");
            s.push('\n');
            s
        }
        Err(e) => {
            r.verdict("enumeration", false, e.to_string());
            r.to_json()
        }
    };
    let stdout = match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome { report: r, stdout })
}

fn cmd_enumerate(
    degree: usize,
    branching: Option<&str>,
    unobstructed: bool,
    nonpolynomial: bool,
    antipolynomial: bool,
) -> Run {
    let b = branching.map(parse_branching).transpose()?;
    if degree < 2 {
        return Err(usage("--degree must be at least 2"));
    }
    let mut r = Report::new("enumerate");
    r.input("degree", degree)
        .input("branching", &b)
        .input("unobstructed", unobstructed)
        .input("nonpolynomial", nonpolynomial)
        .input("antipolynomial", antipolynomial);
    let c = match enumerate_graphs(degree) {
        Ok(c) => c,
        Err(e) => {
            r.verdict("enumeration", false, e.to_string());
            return Ok((r, vec![]));
        }
    };
    let selected = c.filter(|e| {
        (!unobstructed || !e.obstructed)
            && (!nonpolynomial || !e.antipolynomial)
            && (!antipolynomial || e.antipolynomial)
            && b.as_ref().is_none_or(|b| &e.branching == b)
    });
    let hist = c.histogram(selected.iter().copied());
    let lines: Vec<String> = std::iter::once(format!("{} of {} classes", selected.len(), c.len()))
        .chain(hist.iter().map(|(b, n)| format!("{b}: {n}")))
        .collect();
    r.results = json!({
        "degree": degree,
        "total": c.len(),
        "count": selected.len(),
        "histogram": hist.iter().map(|(b, n)| json!({"branching": b, "count": n})).collect::<Vec<_>>(),
        "entries": selected,
    });
    r.verdict(
        "mirror-pairing",
        c.mirror_pairing_ok(),
        "catalog is closed under mirroring",
    );
    Ok((r, lines))
}

fn tree_group(b: &BranchingData, trees: &[TischlerTree]) -> serde_json::Value {
    let codes: Vec<_> = trees
        .iter()
        .map(|t| t.canonical_code(Orientation::Preserve))
        .collect();
    let chiral = trees
        .iter()
        .zip(&codes)
        .filter(|(t, c)| &t.mirror().canonical_code(Orientation::Preserve) != *c)
        .count();
    json!({
        "branching": b,
        "count": trees.len(),
        "mirror_pairs": chiral / 2,
        "trees": trees.iter().map(|t| t.to_text()).collect::<Vec<_>>(),
    })
}

fn cmd_trees(degree: Option<usize>, branching: Option<&str>) -> Run {
    let mut r = Report::new("trees");
    let groups: Vec<(BranchingData, Vec<TischlerTree>)> = match branching {
        Some(s) => {
            let b = parse_branching(s)?;
            r.input("branching", &b);
            let trees = enumerate_trees(&b);
            vec![(b, trees)]
        }
        None => {
            let d = degree.expect("clap requires one of the two");
            if d < 2 {
                return Err(usage("--degree must be at least 2"));
            }
            r.input("degree", d);
            trees_of_degree(d)
        }
    };
    let total: usize = groups.iter().map(|(_, t)| t.len()).sum();
    let values: Vec<_> = groups.iter().map(|(b, t)| tree_group(b, t)).collect();
    let mut lines = vec![format!("{total} trees")];
    for v in &values {
        lines.push(format!(
            "{}: {} ({} mirror pairs)",
            v["branching"], v["count"], v["mirror_pairs"]
        ));
    }
    r.results = json!({ "total": total, "groups": values });
    r.verdict("enumerated", true, format!("{total} trees"));
    Ok((r, lines))
}

fn cmd_pullback(file: &Path, curve: &str, iterate: Option<usize>) -> Run {
    let g = load_graph(file)?;
    let word_text = match curve.strip_prefix('@') {
        Some(p) => read_input(Path::new(p))?,
        None => read_input(Path::new(curve)).unwrap_or_else(|_| curve.to_string()),
    };
    let mut r = Report::new("pullback");
    let bare: Vec<&str> = word_text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    r.input("file", file)
        .input("curve", bare.join(" "))
        .input("iterate", iterate);
    let Some(t) = check_valid(&mut r, &g) else {
        return Ok((r, vec![]));
    };
    let w = parse_word(&t, &word_text).map_err(|e| usage(format!("curve: {e}")))?;
    let component = |c: &tischler_core::curves::PullbackComponent| {
        json!({
            "word": format_word(&c.reduced),
            "raw": format_word(&c.raw),
            "degree": c.degree,
            "peripheral": c.peripheral,
            "complexity": c.complexity(),
        })
    };
    match iterate {
        None => match pullback(&t, &w) {
            Err(e) => {
                r.verdict("pullback", false, e.to_string());
                Ok((r, vec![]))
            }
            Ok(comps) => {
                let total: usize = comps.iter().map(|c| c.complexity()).sum();
                let mut lines = vec![format!("curve complexity {}", w.complexity())];
                for c in &comps {
                    lines.push(format!(
                        "degree {} {} {}",
                        c.degree,
                        if c.peripheral {
                            "peripheral"
                        } else {
                            "essential "
                        },
                        format_word(&c.reduced)
                    ));
                }
                r.results = json!({
                    "complexity": w.complexity(),
                    "components": comps.iter().map(component).collect::<Vec<_>>(),
                    "total_complexity": total,
                });
                r.verdict(
                    "monotone",
                    total <= w.complexity(),
                    format!("{total} <= {}", w.complexity()),
                );
                Ok((r, lines))
            }
        },
        Some(n) => match iterate_pullback(&t, &w, n) {
            Err(e) => {
                r.verdict("pullback", false, e.to_string());
                Ok((r, vec![]))
            }
            Ok((orbit, end)) => {
                let cx: Vec<usize> = orbit.iter().map(|s| s.curve.complexity()).collect();
                let lines = vec![
                    format!("complexities {cx:?}"),
                    format!("end {}", serde_json::to_string(&end).expect("serializes")),
                ];
                r.results = json!({
                    "orbit": orbit.iter().map(|s| json!({
                        "step": s.step,
                        "curve": format_word(&s.curve),
                        "complexity": s.curve.complexity(),
                        "components": s.components.iter().map(component).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "end": end,
                });
                let monotone = cx.windows(2).all(|p| p[1] <= p[0]);
                r.verdict("monotone", monotone, format!("{cx:?}"));
                Ok((r, lines))
            }
        },
    }
}

fn load_map(source: &MapSource, r: &mut Report) -> Result<AntiRationalMap, UsageError> {
    match (&source.name, &source.map) {
        (Some(name), None) => {
            r.input("name", name);
            if source.d.is_some() {
                r.input("d", source.d);
            }
            if source.d.is_some() && name != "zbar" {
                return Err(usage("--d applies to zbar only"));
            }
            builtin(name, source.d).map_err(|e| usage(e.to_string()))
        }
        (None, Some(path)) => {
            r.input("map", path);
            parse_map(&read_input(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        _ => Err(usage("give exactly one of --name and --map")),
    }
}

fn cmd_verify_map(source: &MapSource, tol: Tolerances) -> Run {
    let mut r = Report::new("verify-map");
    let f = load_map(source, &mut r)?;
    r.input("tol", tol.residual);
    match verify_map(&f, &tol) {
        Err(e) => {
            r.verdict("fixed-points", false, e.to_string());
            Ok((r, vec![]))
        }
        Ok(rep) => {
            let c = rep.counts;
            let lines = vec![
                format!("degree {}", rep.degree),
                format!(
                    "superattracting {}, attracting {}, repelling {}",
                    c.superattracting, c.attracting, c.repelling
                ),
            ];
            r.verdict(
                "identity",
                rep.identity_ok,
                format!(
                    "{} - {} = {}, d - 1 = {}",
                    c.repelling,
                    c.attracting_total(),
                    c.repelling as i64 - c.attracting_total() as i64,
                    rep.degree - 1
                ),
            );
            r.verdict(
                "residual",
                rep.max_residual < tol.residual,
                format!("max {:.3e}", rep.max_residual),
            );
            r.results = to_value(&rep);
            Ok((r, lines))
        }
    }
}

fn cmd_extract(
    source: &MapSource,
    tol: Tolerances,
    full: bool,
) -> Result<(Report, Vec<String>, Option<String>), UsageError> {
    let mut r = Report::new("extract-graph");
    let f = load_map(source, &mut r)?;
    r.input("full", full);
    match extract_tischler(&f, &tol) {
        Err(e) => {
            r.verdict("extraction", false, e.to_string());
            Ok((r, vec![], None))
        }
        Ok(x) => {
            let rays: Vec<_> = x
                .rays
                .iter()
                .map(|ray| {
                    json!({
                        "source": ray.source,
                        "ray": ray.ray,
                        "angle": ray.angle,
                        "landing": ray.landing,
                        "landing_index": ray.landing_index,
                        "max_residual": ray.max_residual,
                        "segments": ray.segments,
                        "samples": ray.samples.len(),
                    })
                })
                .collect();
            let worst = x
                .rays
                .iter()
                .map(|ray| ray.max_residual)
                .fold(0.0, f64::max);
            r.results = json!({
                "degree": f.degree(),
                "critical_points": x.critical,
                "repelling": x.repelling,
                "rays": rays,
                "full_canonical_code": x.full.canonical_code(Orientation::Preserve),
                "tischler": x.tischler.to_json(),
            });
            r.verdict(
                "graph",
                true,
                format!(
                    "{} vertices, {} faces, branching {}",
                    x.tischler.graph().vertex_count(),
                    x.tischler.graph().face_count(),
                    x.tischler.branching_data()
                ),
            );
            r.verdict(
                "ray-invariance",
                worst < 1e-8,
                format!("max residual {worst:.3e}"),
            );
            let lines = vec![
                format!(
                    "{} rays from {} critical points",
                    x.rays.len(),
                    x.critical.len()
                ),
                format!("canonical code {}", x.tischler.canonical_code().to_hex()),
            ];
            let graph = if full {
                x.full.to_text()
            } else {
                x.tischler.graph().to_text()
            };
            Ok((r, lines, Some(graph)))
        }
    }
}

fn cmd_icosahedral() -> Run {
    let mut r = Report::new("verify-icosahedral");
    match verify_icosahedral() {
        Err(e) => {
            r.verdict("data", false, e.to_string());
            Ok((r, vec![]))
        }
        Ok(rep) => {
            for p in &rep.polyhedra {
                r.verdict(
                    &p.name,
                    p.pass,
                    format!(
                        "degree {:?}, unobstructed {}, rotation group {}, branching {}",
                        p.degree,
                        p.unobstructed,
                        p.aut_preserving,
                        p.branching
                            .as_ref()
                            .map_or("-".to_string(), |b| b.to_string())
                    ),
                );
            }
            let lines = vec![rep.note.clone()];
            r.results = to_value(&rep);
            Ok((r, lines))
        }
    }
}

fn cmd_symmetry(file: &Path) -> Run {
    let g = load_graph(file)?;
    let mut r = Report::new("symmetry");
    r.input("file", file);
    match g.automorphism_orders() {
        Err(e) => {
            r.verdict("connected", false, e.to_string());
            Ok((r, vec![]))
        }
        Ok((pres, total)) => {
            r.results = json!({
                "aut_preserving": pres,
                "aut_full": total,
                "chiral": pres == total,
                "canonical_code": g.canonical_code(Orientation::Preserve),
                "canonical_code_unoriented": g.canonical_code(Orientation::Either),
            });
            r.verdict("connected", true, format!("orders {pres} / {total}"));
            let chirality = if pres == total { "chiral" } else { "achiral" };
            Ok((
                r,
                vec![format!(
                    "orientation-preserving {pres}, full {total}, {chirality}"
                )],
            ))
        }
    }
}

fn cmd_check_all(seed: u64, golden_degree: usize) -> (Report, Vec<String>) {
    let mut r = Report::new("check-all");
    r.input("seed", seed).input("golden_degree", golden_degree);
    let results = checks::run_all(seed);
    let mut lines: Vec<String> = results.iter().map(|c| c.line()).collect();
    for c in &results {
        r.verdict(&format!("criterion-{}", c.id), c.pass, c.name.clone());
    }
    let golden = checks::golden_catalogs(golden_degree);
    let (ok, detail) = match &golden {
        Ok(d) => (true, d.clone()),
        Err(d) => (false, d.clone()),
    };
    lines.push(format!(
        "{} golden catalogs: {detail}",
        if ok { "PASS" } else { "FAIL" }
    ));
    r.verdict("golden-catalogs", ok, detail);
    r.results = json!({ "criteria": results });
    (r, lines)
}
