//! Heuristic bistellar reduction and the Fan certificate pipeline.
//!
//! The search walks the flip graph looking for the smallest triangulation:
//! `∂Δ^{n+1}` for plain complexes, the cross polytope for Z2-complexes.
//! Success is certified by an explicit, replayable flip sequence. Failure
//! within the budget proves nothing and is reported as inconclusive.
//!
//! Each step takes the steepest energy-decreasing move when one exists.
//! Otherwise it proposes a uniformly random move and accepts it with the
//! Metropolis rule under a geometrically cooling temperature. The energy is
//! `Σ f_k 10^{-k}`, which orders f-vectors lexicographically for the sizes
//! handled here. A chain that stagnates or freezes restarts from the best
//! state seen so far.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{FVector, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::fan::{alpha_counts, integerize, relabel_move, validate_fan, FanLabelling, RelabelRule};
use crate::generators::{cross_polytope, simplex_boundary};
use crate::moves::{apply_move, apply_z2_move, enumerate_moves, enumerate_z2_moves, BistellarMove, FlipSequence};
use crate::z2::Z2Complex;

/// Default move budget for a reduction.
pub const DEFAULT_BUDGET: usize = 100_000;

const ENERGY_BASE: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionConfig {
    /// Maximum number of proposed moves.
    pub budget: usize,
    pub seed: u64,
    pub initial_temperature: f64,
    /// Temperature multiplier per proposal.
    pub cooling: f64,
    /// Below this temperature the chain restarts.
    pub min_temperature: f64,
    /// Proposals without a new best state before a restart.
    pub stagnation_limit: usize,
}

impl ReductionConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        ReductionConfig { budget, seed, ..Self::default() }
    }
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            budget: DEFAULT_BUDGET,
            seed: 0,
            initial_temperature: 1.0,
            cooling: 0.999,
            min_temperature: 0.02,
            stagnation_limit: 2_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Reduced,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub flips_tried: usize,
    pub flips_accepted: usize,
    pub restarts: usize,
    pub best_f_vector: FVector,
    /// Best f-vector at the start of each restart.
    pub best_history: Vec<FVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub outcome: Outcome,
    pub sequence: FlipSequence,
    pub final_complex: SimplicialComplex,
    pub target: SimplicialComplex,
    pub stats: SearchStats,
    pub config: ReductionConfig,
}

impl ReductionReport {
    pub fn is_reduced(&self) -> bool {
        self.outcome == Outcome::Reduced
    }
}

/// Pure, every ridge in exactly two facets, and connected through ridges.
pub fn check_closed_pseudomanifold(k: &SimplicialComplex) -> Result<()> {
    if !k.is_pure() || k.dim() < 0 {
        return Err(Error::NotClosedPseudomanifold("complex is not pure".into()));
    }
    let facets: Vec<&Simplex> = k.facets().iter().collect();
    let mut ridges: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary_facets() {
            ridges.entry(r).or_default().push(i);
        }
    }
    if let Some((r, fs)) = ridges.iter().find(|(_, fs)| fs.len() != 2) {
        return Err(Error::NotClosedPseudomanifold(format!("ridge {r} lies in {} facets", fs.len())));
    }
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for fs in ridges.values() {
        let (a, b) = (root(&mut parent, fs[0]), root(&mut parent, fs[1]));
        parent[a] = b;
    }
    let r0 = root(&mut parent, 0);
    if (0..facets.len()).any(|i| root(&mut parent, i) != r0) {
        return Err(Error::NotClosedPseudomanifold("complex is disconnected".into()));
    }
    Ok(())
}

trait MoveSystem {
    fn z2(&self) -> bool;
    fn moves(&self, k: &SimplicialComplex) -> Vec<BistellarMove>;
    fn apply(&self, k: &SimplicialComplex, m: &BistellarMove) -> Result<(SimplicialComplex, BistellarMove)>;
    fn target(&self) -> &SimplicialComplex;
    fn is_target(&self, k: &SimplicialComplex) -> bool;
}

struct Plain {
    target: SimplicialComplex,
}

impl MoveSystem for Plain {
    fn z2(&self) -> bool {
        false
    }
    fn moves(&self, k: &SimplicialComplex) -> Vec<BistellarMove> {
        enumerate_moves(k)
    }
    fn apply(&self, k: &SimplicialComplex, m: &BistellarMove) -> Result<(SimplicialComplex, BistellarMove)> {
        apply_move(k, m)
    }
    fn target(&self) -> &SimplicialComplex {
        &self.target
    }
    fn is_target(&self, k: &SimplicialComplex) -> bool {
        k.is_isomorphic(&self.target)
    }
}

struct Symmetric {
    target: Z2Complex,
}

impl MoveSystem for Symmetric {
    fn z2(&self) -> bool {
        true
    }
    fn moves(&self, k: &SimplicialComplex) -> Vec<BistellarMove> {
        enumerate_z2_moves(&Z2Complex::trusted(k.clone()))
    }
    fn apply(&self, k: &SimplicialComplex, m: &BistellarMove) -> Result<(SimplicialComplex, BistellarMove)> {
        apply_z2_move(&Z2Complex::trusted(k.clone()), m).map(|(c, inv)| (c.into_complex(), inv))
    }
    fn target(&self) -> &SimplicialComplex {
        self.target.complex()
    }
    fn is_target(&self, k: &SimplicialComplex) -> bool {
        Z2Complex::trusted(k.clone()).is_z2_isomorphic(&self.target)
    }
}

fn energy_delta(m: &BistellarMove, scale: f64) -> f64 {
    m.f_delta()
        .iter()
        .enumerate()
        .map(|(k, d)| *d as f64 * ENERGY_BASE.powi(k as i32))
        .sum::<f64>()
        * scale
}

fn add_delta(f: &mut [i64], m: &BistellarMove, scale: i64) {
    for (x, d) in f.iter_mut().zip(m.f_delta()) {
        *x += d * scale;
    }
}

fn to_fvector(f: &[i64]) -> FVector {
    FVector { counts: f.iter().map(|x| *x as u64).collect() }
}

fn search(input: &SimplicialComplex, system: &dyn MoveSystem, config: &ReductionConfig) -> ReductionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let scale = if system.z2() { 2 } else { 1 };
    let target_f: Vec<i64> = system.target().f_vector().counts.iter().map(|x| *x as i64).collect();

    let mut cur = input.clone();
    let mut f: Vec<i64> = cur.f_vector().counts.iter().map(|x| *x as i64).collect();
    let mut seq = FlipSequence::new(input, system.z2());
    let mut best = cur.clone();
    let mut best_f = f.clone();
    let mut best_len = 0;
    let mut stats = SearchStats {
        flips_tried: 0,
        flips_accepted: 0,
        restarts: 0,
        best_f_vector: to_fvector(&f),
        best_history: Vec::new(),
    };
    let finish = |outcome, seq: FlipSequence, cur: SimplicialComplex, mut stats: SearchStats, best_f: &[i64]| {
        stats.best_f_vector = to_fvector(best_f);
        ReductionReport {
            outcome,
            sequence: seq,
            final_complex: cur,
            target: system.target().clone(),
            stats,
            config: config.clone(),
        }
    };

    if f == target_f && system.is_target(&cur) {
        return finish(Outcome::Reduced, seq, cur, stats, &best_f);
    }

    let mut temperature = config.initial_temperature;
    let mut since_best = 0usize;
    let mut last_inverse: Option<BistellarMove> = None;
    while stats.flips_tried < config.budget {
        let mut moves = system.moves(&cur);
        if moves.len() > 1 {
            if let Some(inv) = &last_inverse {
                moves.retain(|m| m != inv);
            }
        }
        if moves.is_empty() {
            break;
        }
        let deltas: Vec<f64> = moves.iter().map(|m| energy_delta(m, scale as f64)).collect();
        let min = deltas.iter().copied().fold(f64::INFINITY, f64::min);
        stats.flips_tried += 1;

        let chosen = if min < -1e-9 {
            let ties: Vec<usize> = (0..moves.len()).filter(|&i| deltas[i] <= min + 1e-9).collect();
            Some(ties[rng.gen_range(0..ties.len())])
        } else {
            let i = rng.gen_range(0..moves.len());
            let accept = deltas[i] <= 1e-9 || rng.gen::<f64>() < (-deltas[i] / temperature).exp();
            accept.then_some(i)
        };

        if let Some(i) = chosen {
            let m = &moves[i];
            let (next, inverse) = system.apply(&cur, m).expect("enumerated moves are admissible");
            seq.push(&cur, m, &next);
            add_delta(&mut f, m, scale);
            cur = next;
            last_inverse = Some(inverse);
            stats.flips_accepted += 1;
            if f < best_f {
                best = cur.clone();
                best_f = f.clone();
                best_len = seq.len();
                since_best = 0;
            } else {
                since_best += 1;
            }
            if f == target_f && system.is_target(&cur) {
                return finish(Outcome::Reduced, seq, cur, stats, &best_f);
            }
        } else {
            since_best += 1;
        }

        temperature *= config.cooling;
        if since_best > config.stagnation_limit || temperature < config.min_temperature {
            stats.best_history.push(to_fvector(&best_f));
            stats.restarts += 1;
            cur = best.clone();
            f = best_f.clone();
            seq.truncate(best_len, &cur);
            temperature = config.initial_temperature;
            since_best = 0;
            last_inverse = None;
        }
    }
    finish(Outcome::Inconclusive, seq, cur, stats, &best_f)
}

/// Searches for bistellar moves taking `k` to `∂Δ^{n+1}`.
pub fn reduce_to_boundary_simplex(k: &SimplicialComplex, config: &ReductionConfig) -> Result<ReductionReport> {
    check_closed_pseudomanifold(k)?;
    let n = k.dim() as usize;
    let target = simplex_boundary(n + 1)?;
    Ok(search(k, &Plain { target }, config))
}

/// Searches for Z2-bistellar moves taking `m` to the cross polytope of the
/// same dimension.
pub fn z2_reduce_to_cross_polytope(m: &Z2Complex, config: &ReductionConfig) -> Result<ReductionReport> {
    check_closed_pseudomanifold(m.complex())?;
    let n = m.complex().dim() as usize;
    let target = cross_polytope(n + 1)?;
    Ok(search(m.complex(), &Symmetric { target }, config))
}

/// Replays `sequence` from `source` and checks that it ends at a complex
/// equal or isomorphic to `target` (Z2-isomorphic for Z2 sequences).
pub fn replay_verify(source: &SimplicialComplex, sequence: &FlipSequence, target: &SimplicialComplex) -> Result<bool> {
    let end = sequence.replay(source)?;
    if &end == target {
        return Ok(true);
    }
    Ok(if sequence.z2 {
        Z2Complex::trusted(end).is_z2_isomorphic(&Z2Complex::trusted(target.clone()))
    } else {
        end.is_isomorphic(target)
    })
}

/// Heuristic sphere recognition: true when a reduction to `∂Δ^{n+1}` is
/// found. False means only that the search was inconclusive.
pub fn is_certified_sphere(k: &SimplicialComplex, config: &ReductionConfig) -> bool {
    if k.dim() == 0 {
        return k.num_facets() == 2;
    }
    reduce_to_boundary_simplex(k, config).is_ok_and(|r| r.is_reduced())
}

/// Checks the vertex links of `k` with [`is_certified_sphere`]; meant for
/// complexes of dimension at most 3.
pub fn vertex_links_are_spheres(k: &SimplicialComplex, vertices: impl IntoIterator<Item = Vertex>, config: &ReductionConfig) -> bool {
    vertices.into_iter().all(|v| match k.link(&Simplex::from([v])) {
        Ok(link) => is_certified_sphere(&link, config),
        Err(_) => false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: usize,
    #[serde(rename = "move", skip_serializing_if = "Option::is_none")]
    pub flip: Option<BistellarMove>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RelabelRule>,
    pub alpha_plus: usize,
    pub alpha_plus_parity: u8,
}

/// Parity certificate for a Fan labelling: a Z2 reduction to the cross
/// polytope with the labelling carried along every step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanCertificate {
    pub alpha_plus: usize,
    pub alpha_minus: usize,
    pub trace: Vec<TraceEntry>,
    pub sequence: FlipSequence,
    pub final_complex: SimplicialComplex,
    pub final_labels: BTreeMap<Vertex, i64>,
    pub stats: SearchStats,
}

/// Reduces `m` to the cross polytope, relabels along the way and checks
/// that `α⁺ mod 2` is constant and equals 1 at the end.
pub fn fan_certificate(m: &Z2Complex, labels: &FanLabelling, config: &ReductionConfig) -> Result<FanCertificate> {
    let violations = validate_fan(m, labels)?;
    if let Some(v) = violations.first() {
        return Err(Error::InvalidLabelling(v.to_string()));
    }
    let counts = alpha_counts(m.complex(), labels);
    let report = z2_reduce_to_cross_polytope(m, config)?;
    if !report.is_reduced() {
        return Err(Error::CertificateUnavailable { alpha_plus: counts.alpha_plus });
    }

    let parity = (counts.alpha_plus % 2) as u8;
    let mut trace = vec![TraceEntry {
        step: 0,
        flip: None,
        rule: None,
        alpha_plus: counts.alpha_plus,
        alpha_plus_parity: parity,
    }];
    let mut cur = m.clone();
    let mut cur_labels = labels.clone();
    for (i, mv) in report.sequence.moves().enumerate() {
        let step = relabel_move(&cur, &cur_labels, &mv)
            .map_err(|_| Error::CorruptSequence { step: i })?;
        let a = alpha_counts(step.complex.complex(), &step.labels).alpha_plus;
        trace.push(TraceEntry {
            step: i + 1,
            flip: Some(mv),
            rule: Some(step.rule),
            alpha_plus: a,
            alpha_plus_parity: (a % 2) as u8,
        });
        if (a % 2) as u8 != parity {
            return Err(Error::ParityViolation { step: i + 1 });
        }
        cur = step.complex;
        cur_labels = step.labels;
    }
    let final_alpha = trace.last().map(|t| t.alpha_plus).unwrap_or(counts.alpha_plus);
    if final_alpha != 1 {
        return Err(Error::ParityViolation { step: trace.len() - 1 });
    }
    let final_labels = integerize(&cur_labels).to_integers().expect("integerized labels are integers");
    Ok(FanCertificate {
        alpha_plus: counts.alpha_plus,
        alpha_minus: counts.alpha_minus,
        trace,
        sequence: report.sequence,
        final_complex: cur.into_complex(),
        final_labels,
        stats: report.stats,
    })
}
