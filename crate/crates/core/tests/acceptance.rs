//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.
//!
//! Run alone with `cargo test -p fanflip --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fanflip::fan::{alpha_counts, relabel_move, tucker_witness, validate_fan, FanLabelling};
use fanflip::generators::{cross_polytope, random_antipodal_labelling, random_fan_labelling, simplex_boundary};
use fanflip::moves::{apply_move, enumerate_moves, enumerate_z2_moves};
use fanflip::recognition::{reduce_to_boundary_simplex, replay_verify, z2_reduce_to_cross_polytope, ReductionConfig};
use fanflip::{Simplex, SimplicialComplex, Vertex, Z2Complex};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Up to `want` Fan labellings of `m` with labels in ±1..±bound, skipping
/// seeds for which the sampler gives up.
fn fan_labellings(m: &Z2Complex, bound: i64, want: usize, seed: u64) -> Vec<FanLabelling> {
    (0..want as u64 * 20)
        .filter_map(|i| random_fan_labelling(m, bound, seed * 1000 + i).ok())
        .take(want)
        .collect()
}

fn fan_parity() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for (dim, max_steps) in [(2usize, 40usize), (3, 25)] {
        for (i, m) in common::corpus(dim, 100, max_steps, 10_000 * dim as u64).iter().enumerate() {
            let labellings = fan_labellings(m, dim as i64 + 2, 5, i as u64);
            ensure(labellings.len() == 5, || format!("dim {dim} sphere {i}: only {} labellings sampled", labellings.len()))?;
            for l in &labellings {
                ensure(validate_fan(m, l).map_err(|e| e.to_string())?.is_empty(), || "sampler returned an invalid labelling".into())?;
                let c = alpha_counts(m.complex(), l);
                ensure(c.alpha_plus % 2 == 1, || format!("dim {dim} sphere {i}: α⁺ = {} is even", c.alpha_plus))?;
                ensure(c.alpha_plus == c.alpha_minus, || format!("dim {dim} sphere {i}: α⁺ = {} ≠ α⁻ = {}", c.alpha_plus, c.alpha_minus))?;
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} labelled spheres, α⁺ odd and α⁺ = α⁻ in all, {elapsed:.1?}"))
}

fn cross_polytope_uniqueness() -> Outcome {
    let mut summary = Vec::new();
    for k in 2..=5usize {
        let m = cross_polytope(k).unwrap();
        let choices: Vec<i64> = (1..=k as i64).flat_map(|l| [l, -l]).collect();
        let total = choices.len().pow(k as u32);
        let mut valid = 0usize;
        for code in 0..total {
            let mut c = code;
            let mut pos = Vec::with_capacity(k);
            for v in 1..=k as Vertex {
                pos.push((v, choices[c % choices.len()]));
                c /= choices.len();
            }
            let l = FanLabelling::antipodal(pos);
            if !validate_fan(&m, &l).unwrap().is_empty() {
                continue;
            }
            valid += 1;
            let a = alpha_counts(m.complex(), &l);
            ensure(a.alpha_plus == 1, || format!("k = {k}: labelling {l:?} has α⁺ = {}", a.alpha_plus))?;
        }
        let expected: usize = (1..=k).product::<usize>() << k;
        ensure(valid == expected, || format!("k = {k}: {valid} Fan labellings, expected k!·2^k = {expected}"))?;
        summary.push(format!("k={k}: {valid}"));
    }
    Ok(format!("every Fan labelling has α⁺ = 1 ({})", summary.join(", ")))
}

fn relabel_parity() -> Outcome {
    let mut steps_checked = 0usize;
    for walk in 0..100u64 {
        let dim = 2 + (walk % 2) as usize;
        let mut m = cross_polytope(dim + 1).unwrap();
        let mut l = fan_labellings(&m, dim as i64 + 2, 1, walk).pop().ok_or("no labelling")?;
        let mut parity = alpha_counts(m.complex(), &l).alpha_plus % 2;
        let mut rng = ChaCha8Rng::seed_from_u64(walk);
        for step in 0..30 {
            let moves = enumerate_z2_moves(&m);
            let mv = &moves[rng.gen_range(0..moves.len())];
            let r = relabel_move(&m, &l, mv).map_err(|e| format!("walk {walk} step {step}: {e}"))?;
            let violations = validate_fan(&r.complex, &r.labels).map_err(|e| e.to_string())?;
            ensure(violations.is_empty(), || format!("walk {walk} step {step}: {violations:?}"))?;
            let next = alpha_counts(r.complex.complex(), &r.labels).alpha_plus % 2;
            ensure(next == parity, || format!("walk {walk} step {step}: parity changed under {mv}"))?;
            parity = next;
            m = r.complex;
            l = r.labels;
            steps_checked += 1;
        }
    }
    Ok(format!("{steps_checked} relabelled Z2-moves over 100 walks, parity constant"))
}

/// Non-decreasing sequences over ±1..±n with no value and its negative both present.
fn label_multisets(n: usize) -> Vec<Vec<i64>> {
    fn rec(len: usize, from: usize, vals: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..vals.len() {
            let x = vals[i];
            if cur.contains(&-x) {
                continue;
            }
            cur.push(x);
            rec(len, i, vals, cur, out);
            cur.pop();
        }
    }
    let vals: Vec<i64> = (1..=n as i64).flat_map(|l| [-l, l]).collect();
    let mut out = Vec::new();
    rec(n, 0, &vals, &mut Vec::new(), &mut out);
    out
}

fn claim_case_analysis() -> Outcome {
    let allowed: BTreeSet<(usize, usize)> = [(0, 0), (1, 1), (2, 0), (0, 2)].into();
    let mut seen = BTreeSet::new();
    let mut cases = 0usize;
    for n in 3..=7usize {
        let sigma = Simplex::new(1..=n as Vertex);
        let boundary = SimplicialComplex::simplex_boundary_of(&sigma);
        for labels in label_multisets(n) {
            let l = FanLabelling::from_integers((1..=n as Vertex).zip(labels.iter().copied()));
            let c = alpha_counts(&boundary, &l);
            let pair = (c.alpha_plus, c.alpha_minus);
            ensure(allowed.contains(&pair), || format!("labels {labels:?} give {pair:?}"))?;
            seen.insert(pair);
            cases += 1;
        }
    }
    Ok(format!("{cases} labelled simplices on 3..7 vertices, observed {seen:?}"))
}

fn tucker_witnesses() -> Outcome {
    let mut found = 0usize;
    for (dim, max_steps) in [(2usize, 40usize), (3, 25)] {
        for (i, m) in common::corpus(dim, 100, max_steps, 10_000 * dim as u64).iter().enumerate() {
            for s in 0..3u64 {
                let l = random_antipodal_labelling(m, dim as i64, i as u64 * 10 + s);
                let (u, v) = tucker_witness(m, &l).map_err(|e| format!("dim {dim} sphere {i}: {e}"))?;
                let edge = Simplex::new([u, v]);
                ensure(m.complex().contains_face(&edge) && edge.len() == 2, || format!("{edge} is not an edge"))?;
                ensure(l.get(u).unwrap() + l.get(v).unwrap() == num_rational::BigRational::from_integer(0.into()), || {
                    format!("{edge} is not complementary")
                })?;
                found += 1;
            }
        }
    }
    Ok(format!("{found} labellings into ±1..±n, a complementary edge in each"))
}

fn move_mechanics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut corpus: Vec<SimplicialComplex> = common::corpus(2, 20, 40, 600)
        .into_iter()
        .chain(common::corpus(3, 20, 25, 700))
        .map(Z2Complex::into_complex)
        .chain((1..=4).map(|k| simplex_boundary(k).unwrap()))
        .collect();
    let mut applied = 0usize;
    while applied < 10_000 {
        let idx = rng.gen_range(0..corpus.len());
        let k = &corpus[idx];
        let moves = enumerate_moves(k);
        let mv = &moves[rng.gen_range(0..moves.len())];
        let n = k.dim() as i64;
        let (next, inverse) = apply_move(k, mv).map_err(|e| e.to_string())?;
        let delta = next.num_facets() as i64 - k.num_facets() as i64;
        ensure(delta == 2 * mv.r() as i64 - n, || format!("{mv}: facet delta {delta}"))?;
        ensure(next.euler_characteristic() == k.euler_characteristic(), || format!("{mv}: χ changed"))?;
        let (back, _) = apply_move(&next, &inverse).map_err(|e| e.to_string())?;
        ensure(&back == k, || format!("{mv}: inverse does not restore"))?;
        corpus[idx] = next;
        applied += 1;
    }
    Ok(format!("{applied} random moves: facet delta 2r−n, χ invariant, exact inversion"))
}

fn quotients() -> Outcome {
    let mut summary = Vec::new();
    for (k, chi) in [(2usize, 0i64), (3, 1), (4, 0)] {
        let (sd, _) = cross_polytope(k).unwrap().equivariant_sd();
        let (q, _) = sd.quotient().map_err(|e| format!("k = {k}: {e}"))?;
        let f_sd = sd.complex().f_vector().counts;
        let f_q = q.f_vector().counts;
        ensure(f_sd.iter().zip(&f_q).all(|(a, b)| *a == 2 * b) && f_sd.len() == f_q.len(), || {
            format!("k = {k}: f(sd) = {f_sd:?}, f(quotient) = {f_q:?}")
        })?;
        ensure(q.euler_characteristic() == chi, || format!("k = {k}: χ = {}", q.euler_characteristic()))?;
        summary.push(format!("k={k}: f={f_q:?} χ={chi}"));
    }
    Ok(summary.join("; "))
}

fn reduction_engine() -> Outcome {
    let mut summary = Vec::new();

    let start = Instant::now();
    let (sd, _) = simplex_boundary(3).unwrap().barycentric_subdivide();
    let report = reduce_to_boundary_simplex(&sd, &ReductionConfig::new(10_000, 1)).map_err(|e| e.to_string())?;
    ensure(report.is_reduced(), || format!("sd(∂Δ³) inconclusive after {} flips", report.stats.flips_tried))?;
    ensure(report.final_complex.is_isomorphic(&simplex_boundary(3).unwrap()), || "end state is not ∂Δ³".into())?;
    ensure(replay_verify(&sd, &report.sequence, &report.target).map_err(|e| e.to_string())?, || "replay failed".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("sd(∂Δ³) took {elapsed:?}"))?;
    summary.push(format!("sd(∂Δ³) in {} moves ({elapsed:.1?})", report.sequence.len()));

    let start = Instant::now();
    let octahedron = cross_polytope(3).unwrap();
    let (sd, _) = octahedron.equivariant_sd();
    let report = z2_reduce_to_cross_polytope(&sd, &ReductionConfig::new(100_000, 1)).map_err(|e| e.to_string())?;
    ensure(report.is_reduced(), || format!("sd(octahedron) inconclusive after {} flips", report.stats.flips_tried))?;
    let end = Z2Complex::new(report.final_complex.clone()).map_err(|e| e.to_string())?;
    ensure(end.is_z2_isomorphic(&octahedron), || "end state is not the octahedron".into())?;
    ensure(replay_verify(sd.complex(), &report.sequence, &report.target).map_err(|e| e.to_string())?, || "replay failed".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("sd(octahedron) took {elapsed:?}"))?;
    summary.push(format!("sd(octahedron) in {} Z2-moves ({elapsed:.1?})", report.sequence.len()));

    Ok(summary.join("; "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 fan parity on walked spheres", fan_parity),
        ("2 cross polytope labellings", cross_polytope_uniqueness),
        ("3 relabel parity along walks", relabel_parity),
        ("4 alternating facets of a labelled simplex", claim_case_analysis),
        ("5 tucker witnesses", tucker_witnesses),
        ("6 move mechanics", move_mechanics),
        ("7 antipodal quotients", quotients),
        ("8 reduction engine", reduction_engine),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
