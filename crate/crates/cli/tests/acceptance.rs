//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#[path = "../../core/tests/support/splice.rs"]
mod splice;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use hamcube::analysis::{
    conjecture_check, exhaustive_search, intersection_graph, intersection_profile,
    necessary_conditions, random_cyclic_order, IntersectionClass, ShapeKind, DEFAULT_SEARCH_BUDGET,
};
use hamcube::embedding::{
    rotation_with_convention, verify_hamiltonian_embedding, RotationConvention,
};
use hamcube::matching::{cycle_edge_set, merge_cycles};
use hamcube::{
    construct, trace_faces, Graph, HypercubeGraph, MatchingDecomposition, RotationSystem,
    SimpleGraph, Vertex,
};
use hamcube_cli::format::{
    parse_decomposition, parse_rotation, serialize_decomposition, serialize_rotation,
    DecompositionFile, Family,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

type Built = (MatchingDecomposition, RotationSystem);
type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn built(n: u32) -> &'static Built {
    static CELLS: [OnceLock<Built>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    CELLS[n.trailing_zeros() as usize].get_or_init(|| construct(n).expect("construction succeeds"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn hamcube_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hamcube"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn base_case() -> Check {
    let start = Instant::now();
    let (dec, rot) = construct(2).map_err(|e| e.to_string())?;
    let g = dec.graph();
    let faces = trace_faces(&g, &rot).map_err(|e| e.to_string())?;
    let genus = faces.genus().map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_millis(100), "construct(2)")?;

    let m: Vec<_> = dec.matchings().iter().map(|m| m.edges()).collect();
    ensure(
        m == vec![vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)]],
        || format!("matchings {m:?}"),
    )?;
    ensure(faces.face_count() == 2 && genus == 0, || {
        format!("f={} genus={genus}", faces.face_count())
    })?;

    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let (d, r) = (dir.path().join("d"), dir.path().join("r"));
    let out = hamcube_bin(&[
        "construct",
        "--n",
        "2",
        "--out-decomposition",
        path(&d),
        "--out-rotation",
        path(&r),
    ]);
    ensure(out.status.code() == Some(0), || {
        "construct --n 2 failed".into()
    })?;
    let text = fs::read_to_string(&d).map_err(|e| e.to_string())?;
    ensure(
        text == "decomposition 2 2\nmatching 1\n00 01\n10 11\nmatching 2\n00 10\n01 11\n",
        || format!("decomposition file:\n{text}"),
    )?;
    Ok("M1={00-01,10-11} M2={00-10,01-11} f=2 genus=0".into())
}

fn construction_and_verification() -> Check {
    let mut summary = Vec::new();
    for (n, expected) in [(2u32, 0u64), (4, 7), (8, 381), (16, 229369)] {
        let start = Instant::now();
        let (dec, rot) = built(n);
        let g = dec.graph();
        let (report, faces) =
            verify_hamiltonian_embedding(&g, rot, Some(dec)).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if n == 16 {
            within(
                elapsed,
                Duration::from_secs(60),
                "Q16 construction and verification",
            )?;
        }
        ensure(report.passed(), || {
            format!("Q{n}: failed {:?}", report.failed_clause)
        })?;
        ensure(dec.matchings().len() == n as usize, || {
            format!("Q{n}: matching count")
        })?;
        ensure(faces.walks.iter().all(|w| w.len() == 1 << n), || {
            format!("Q{n}: face length")
        })?;
        ensure(report.genus == Some(expected), || {
            format!("Q{n}: genus {:?}", report.genus)
        })?;
        summary.push(format!("Q{n} genus={expected}"));
    }
    Ok(summary.join(", "))
}

fn determinism() -> Check {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let d = dir.path().join(format!("d{run}"));
        let r = dir.path().join(format!("r{run}"));
        let out = hamcube_bin(&[
            "construct",
            "--n",
            "8",
            "--out-decomposition",
            path(&d),
            "--out-rotation",
            path(&r),
        ]);
        ensure(out.status.code() == Some(0), || {
            "construct --n 8 failed".into()
        })?;
        files.push((
            fs::read(&d).map_err(|e| e.to_string())?,
            fs::read(&r).map_err(|e| e.to_string())?,
        ));
    }
    ensure(files[0] == files[1], || "files differ between runs".into())?;
    Ok(format!(
        "{} + {} bytes identical",
        files[0].0.len(),
        files[0].1.len()
    ))
}

fn splice_oracle() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let inst = splice::valid_instance(&mut rng, 8, 10);
        let g = SimpleGraph::complete(inst.vertex_count);
        let out = merge_cycles(&g, &inst.cover, &inst.marker, &inst.patch)
            .map_err(|e| format!("instance {trial}: {e}"))?;
        let got = cycle_edge_set(&out).map_err(|e| format!("instance {trial}: {e}"))?;
        let want = splice::expected_edges(&inst);
        ensure(got == want, || {
            format!("instance {trial}: edge sets differ")
        })?;
        ensure(
            splice::is_hamiltonian_cycle(inst.vertex_count, &got),
            || format!("instance {trial}: not a single cycle"),
        )?;
    }
    for (i, kind) in splice::VIOLATIONS.iter().cycle().take(100).enumerate() {
        let inst = splice::violate(&mut rng, *kind, 8, 10);
        let g = SimpleGraph::complete(inst.vertex_count);
        match merge_cycles(&g, &inst.cover, &inst.marker, &inst.patch) {
            Err(e) if splice::matches(*kind, &e) => {}
            other => return Err(format!("violation {i} ({kind:?}) gave {other:?}")),
        }
    }
    within(start.elapsed(), Duration::from_secs(10), "splice checks")?;
    Ok("1000 valid, 100 violations (25 per error)".into())
}

fn face_tracing() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [3, 4] {
        let g = HypercubeGraph::new(n).expect("small dimension");
        for trial in 0..100 {
            let rot = RotationSystem::from_orders(
                (0..g.vertex_count() as Vertex)
                    .map(|v| random_cyclic_order(&g.neighbors(v), &mut rng))
                    .collect(),
            );
            let faces = trace_faces(&g, &rot).map_err(|e| e.to_string())?;
            let total: usize = faces.walks.iter().map(|w| w.len()).sum();
            let darts: BTreeSet<_> = faces.walks.iter().flat_map(|w| w.darts()).collect();
            ensure(total == 2 * g.edge_count() && darts.len() == total, || {
                format!("Q{n} trial {trial}: darts not partitioned")
            })?;
            let chi = g.vertex_count() as i64 - g.edge_count() as i64 + faces.face_count() as i64;
            ensure(chi % 2 == 0, || {
                format!("Q{n} trial {trial}: odd characteristic")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(5), "face tracing")?;
    Ok("200 random rotation systems".into())
}

fn exhaustive_counts() -> Check {
    let hypercube = |n| SimpleGraph::from_graph(&HypercubeGraph::new(n).expect("small dimension"));
    let cases = [
        ("Q3", hypercube(3), 256u64, 0usize),
        ("K4", SimpleGraph::complete(4), 16, 0),
        ("Q2", hypercube(2), 1, 1),
    ];
    let mut summary = Vec::new();
    for (name, g, candidates, found) in cases {
        let start = Instant::now();
        let out = exhaustive_search(&g, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
        within(start.elapsed(), Duration::from_secs(1), name)?;
        ensure(
            out.candidates_examined == candidates && out.embeddings_found.len() == found,
            || {
                format!(
                    "{name}: {} candidates, {} found",
                    out.candidates_examined,
                    out.embeddings_found.len()
                )
            },
        )?;
        summary.push(format!("{name} {candidates}/{found}"));
    }
    Ok(summary.join(", "))
}

fn congruence_cross_check() -> Check {
    let mut checked = 0;
    for n in 3..=64u64 {
        for d in 2..n {
            if n * d % 2 != 0 {
                continue;
            }
            let twice = 2 - n as i64 + (n * d / 2) as i64 - d as i64;
            let integral = twice % 2 == 0;
            let r = necessary_conditions(n, d);
            ensure(r.congruence_holds == integral, || {
                format!("mismatch at n={n} d={d}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs, 0 mismatches"))
}

fn intersection_structure() -> Check {
    for n in [4u32, 8, 16] {
        let (dec, rot) = built(n);
        let g = dec.graph();
        let faces = trace_faces(&g, rot).map_err(|e| e.to_string())?;
        let profile = intersection_profile(&g, &faces);
        let half = 1u64 << (n - 1);
        for p in &profile.pairs {
            let ok = match p.class {
                IntersectionClass::PerfectMatching => p.size == half,
                IntersectionClass::Empty => true,
                IntersectionClass::Other => false,
            };
            ensure(ok, || {
                format!("Q{n}: pair {}-{} has size {}", p.i, p.j, p.size)
            })?;
        }
        let (graph, shape) = intersection_graph(&profile);
        ensure(
            shape.kind == ShapeKind::Cycle
                && graph.node_count == n as usize
                && graph.edges.len() == n as usize
                && shape.common_weight == Some(half),
            || format!("Q{n}: shape {:?}", shape),
        )?;
    }
    let (dec, rot) = built(2);
    let g = dec.graph();
    let faces = trace_faces(&g, rot).map_err(|e| e.to_string())?;
    let profile = intersection_profile(&g, &faces);
    let (_, shape) = intersection_graph(&profile);
    let check = conjecture_check(&profile, &shape);
    ensure(
        check.degenerate && shape.kind == ShapeKind::Degenerate,
        || "Q2 not degenerate".into(),
    )?;
    Ok("Q4/Q8/Q16 n-cycles with weight 2^(n-1); Q2 degenerate".into())
}

fn negative_control() -> Check {
    let (dec, _) = built(4);
    let g = dec.graph();
    let rot = rotation_with_convention(dec, RotationConvention::Uniform);
    let (report, _) = verify_hamiltonian_embedding(&g, &rot, None).map_err(|e| e.to_string())?;
    ensure(!report.is_hamiltonian_embedding, || {
        "uniform rotation is Hamiltonian".into()
    })?;

    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let r = dir.path().join("uniform.txt");
    fs::write(
        &r,
        serialize_rotation(Family::Hypercube { dimension: 4 }, &rot),
    )
    .map_err(|e| e.to_string())?;
    let out = hamcube_bin(&["verify", "--rotation", path(&r)]);
    ensure(out.status.code() == Some(1), || {
        format!("verify exited {:?}", out.status.code())
    })?;
    let ham = report.faces.iter().filter(|f| f.hamiltonian).count();
    Ok(format!(
        "{ham} of {} faces Hamiltonian, verify exit 1",
        report.face_count
    ))
}

fn serialization_roundtrip() -> Check {
    for n in [2u32, 4, 8, 16] {
        let (dec, rot) = built(n);
        let dec_file = DecompositionFile::from_decomposition(dec);
        let dec_text = serialize_decomposition(&dec_file);
        let parsed = parse_decomposition(&dec_text).map_err(|e| format!("Q{n}: {e}"))?;
        ensure(
            parsed == dec_file && serialize_decomposition(&parsed) == dec_text,
            || format!("Q{n}: decomposition round-trip"),
        )?;

        let family = Family::Hypercube { dimension: n };
        let rot_text = serialize_rotation(family, rot);
        let parsed = parse_rotation(&rot_text).map_err(|e| format!("Q{n}: {e}"))?;
        ensure(
            serialize_rotation(parsed.family, &parsed.rotation) == rot_text,
            || format!("Q{n}: rotation round-trip"),
        )?;
    }
    // Rotation files exist for every dimension; use random rotations where
    // there is no construction.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 2..=16u32 {
        let g = HypercubeGraph::new(n).expect("small dimension");
        let rot = RotationSystem::from_orders(
            (0..g.vertex_count() as Vertex)
                .map(|v| random_cyclic_order(&g.neighbors(v), &mut rng))
                .collect(),
        );
        let family = Family::Hypercube { dimension: n };
        let text = serialize_rotation(family, &rot);
        let parsed = parse_rotation(&text).map_err(|e| format!("Q{n}: {e}"))?;
        ensure(
            serialize_rotation(parsed.family, &parsed.rotation) == text,
            || format!("Q{n}: random rotation round-trip"),
        )?;
    }
    Ok("Q2..Q16 byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("base case", base_case),
        (
            "construction and verification for n = 2, 4, 8, 16",
            construction_and_verification,
        ),
        ("determinism", determinism),
        ("splice oracle equivalence", splice_oracle),
        ("face-tracing invariants", face_tracing),
        ("exhaustive search counts", exhaustive_counts),
        ("congruence cross-validation", congruence_cross_check),
        ("intersection structure", intersection_structure),
        ("rotation convention negative control", negative_control),
        ("serialization round-trip", serialization_roundtrip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
