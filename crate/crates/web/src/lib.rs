//! Browser bindings for the demo page in `www/`.
//!
//! Each entry point takes plain numbers and returns a JSON string, so the
//! same functions are exercised by native tests and by the page.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use fanflip::fan::{alpha_counts, FanLabelling};
use fanflip::generators::{cross_polytope, random_fan_labelling};
use fanflip::moves::random_z2_walk;
use fanflip::recognition::{fan_certificate, ReductionConfig};
use fanflip::{Error, Vertex, Z2Complex};

#[derive(Serialize)]
struct Sphere {
    dimension: isize,
    f_vector: Vec<u64>,
    euler_characteristic: i64,
    facets: Vec<Vec<Vertex>>,
    moves: Vec<String>,
}

#[derive(Serialize)]
struct Labelled {
    f_vector: Vec<u64>,
    labels: Vec<(Vertex, String)>,
    alpha_plus: usize,
    alpha_minus: usize,
}

#[derive(Serialize)]
struct Certificate {
    certified: bool,
    alpha_plus: usize,
    start_f_vector: Vec<u64>,
    trace: Vec<TracePoint>,
    message: Option<String>,
}

#[derive(Serialize)]
struct TracePoint {
    step: usize,
    flip: Option<String>,
    rule: Option<String>,
    alpha_plus: usize,
    facets: usize,
}

fn walked(dim: usize, steps: usize, seed: u64) -> Result<(Z2Complex, Vec<String>), String> {
    if !(1..=4).contains(&dim) {
        return Err(format!("dimension must be between 1 and 4, got {dim}"));
    }
    let start = cross_polytope(dim + 1).map_err(|e| e.to_string())?;
    let (m, seq) = random_z2_walk(&start, steps, seed).map_err(|e| e.to_string())?;
    Ok((m, seq.moves().map(|mv| mv.to_string()).collect()))
}

fn labelled(dim: usize, steps: usize, seed: u64, bound: i64, label_seed: u64) -> Result<(Z2Complex, FanLabelling), String> {
    let (m, _) = walked(dim, steps, seed)?;
    let l = random_fan_labelling(&m, bound, label_seed).map_err(|e| e.to_string())?;
    Ok((m, l))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("value serializes")
}

/// Walks `steps` random Z2-moves from the cross polytope of dimension `dim`.
pub fn walk_sphere_json(dim: usize, steps: usize, seed: u64) -> Result<String, String> {
    let (m, moves) = walked(dim, steps, seed)?;
    let k = m.complex();
    Ok(json(&Sphere {
        dimension: k.dim(),
        f_vector: k.f_vector().counts,
        euler_characteristic: k.euler_characteristic(),
        facets: k.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        moves,
    }))
}

/// Draws a random Fan labelling of the walked sphere and counts its
/// alternating facets.
pub fn fan_counts_json(dim: usize, steps: usize, seed: u64, bound: i64, label_seed: u64) -> Result<String, String> {
    let (m, l) = labelled(dim, steps, seed, bound, label_seed)?;
    let c = alpha_counts(m.complex(), &l);
    Ok(json(&Labelled {
        f_vector: m.complex().f_vector().counts,
        labels: l.iter().filter(|(v, _)| *v > 0).map(|(v, x)| (v, x.to_string())).collect(),
        alpha_plus: c.alpha_plus,
        alpha_minus: c.alpha_minus,
    }))
}

/// Reduces the labelled walked sphere back to the cross polytope and
/// reports `α⁺` after every move.
pub fn certify_json(dim: usize, steps: usize, seed: u64, bound: i64, label_seed: u64, budget: usize) -> Result<String, String> {
    let (m, l) = labelled(dim, steps, seed, bound, label_seed)?;
    let start_f_vector = m.complex().f_vector().counts;
    let config = ReductionConfig::new(budget, seed);
    let out = match fan_certificate(&m, &l, &config) {
        Ok(cert) => {
            let mut current = m.complex().clone();
            let mut trace = Vec::with_capacity(cert.trace.len());
            let mut moves = cert.sequence.moves();
            for entry in &cert.trace {
                if entry.step > 0 {
                    let mv = moves.next().expect("one move per step");
                    current = fanflip::moves::apply_z2_move(&Z2Complex::new(current).map_err(|e| e.to_string())?, &mv)
                        .map_err(|e| e.to_string())?
                        .0
                        .into_complex();
                }
                trace.push(TracePoint {
                    step: entry.step,
                    flip: entry.flip.as_ref().map(|f| f.to_string()),
                    rule: entry.rule.map(|r| format!("{r:?}")),
                    alpha_plus: entry.alpha_plus,
                    facets: current.num_facets(),
                });
            }
            Certificate { certified: true, alpha_plus: cert.alpha_plus, start_f_vector, trace, message: None }
        }
        Err(Error::CertificateUnavailable { alpha_plus }) => Certificate {
            certified: false,
            alpha_plus,
            start_f_vector,
            trace: Vec::new(),
            message: Some(format!("reduction inconclusive within {budget} flips")),
        },
        Err(e) => return Err(e.to_string()),
    };
    Ok(json(&out))
}

#[wasm_bindgen]
pub fn walk_sphere(dim: usize, steps: usize, seed: u32) -> Result<String, JsError> {
    walk_sphere_json(dim, steps, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fan_counts(dim: usize, steps: usize, seed: u32, bound: i32, label_seed: u32) -> Result<String, JsError> {
    fan_counts_json(dim, steps, seed as u64, bound as i64, label_seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn certify(dim: usize, steps: usize, seed: u32, bound: i32, label_seed: u32, budget: usize) -> Result<String, JsError> {
    certify_json(dim, steps, seed as u64, bound as i64, label_seed as u64, budget).map_err(|e| JsError::new(&e))
}
