//! JSON-in, JSON-out entry points for the browser page in `www/`.
//!
//! The plain functions are what the tests call; the `wasm_*` wrappers only
//! turn errors into JavaScript exceptions.

use adjunction_core::geometry::{self, sample, DomainPoint, WarpConvention};
use adjunction_core::lattice::{make_example_collection, ExampleKind, ExampleSpec};
use adjunction_core::simplicial::{homology, reduced_homology};
use adjunction_core::wall_crossing::{certify, collection_complex, fundamental_cycle};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Out = Result<Value, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The warp profile on `[2λ, 5λ]`, the line element it induces for radius `r`
/// and the resulting cylinder lengths.
pub fn warp(lambda: f64, r: f64, convention: &str, samples: usize) -> Out {
    let conv: WarpConvention = convention.parse().map_err(err)?;
    let samples = samples.clamp(2, 4000);
    let profile = (0..samples)
        .map(|i| {
            let x = lambda * (2.0 + 3.0 * i as f64 / (samples - 1) as f64);
            geometry::warp_profile(lambda, x).map(|w| {
                let element = match conv {
                    WarpConvention::Claimed => 1.0 + r * w,
                    WarpConvention::Printed => (1.0 + r * w).sqrt(),
                };
                [x, w, element]
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(json!({
        "lambda": lambda,
        "r": r,
        "convention": conv.to_string(),
        "inner_length": geometry::inner_length(lambda, r, conv).map_err(err)?,
        "total_length": geometry::total_length(lambda, r, conv).map_err(err)?,
        "profile": profile,
    }))
}

fn explore(n: usize, radius: f64, p: DomainPoint) -> Out {
    let x = geometry::psi_forward(n, radius, &p).map_err(err)?;
    let pinned = geometry::pinned_vertex(n, radius, &x).map_err(err)?;
    let piece = geometry::decompose_cube_point(n, pinned, radius, &x).map_err(err)?;
    let back = geometry::psi_inverse(n, radius, &x).map_err(err)?;
    let (a, b) = (geometry::canonical_form(n, &p).map_err(err)?, geometry::canonical_form(n, &back).map_err(err)?);
    let error = a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
    Ok(json!({ "n": n, "radius": radius, "point": p, "cube": x, "pinned": pinned, "piece": piece, "round_trip_error": error }))
}

/// A random parameter point, its image in ext∂[0,R]ⁿ⁺¹ and the piece it lands in.
pub fn psi_sample(n: usize, radius: f64, seed: u64) -> Out {
    if n > 6 {
        return Err(format!("n = {n} is too large for the page (at most 6)"));
    }
    let p = sample::domain_point(n, radius, &mut sample::rng(seed));
    explore(n, radius, p)
}

/// Same report for a parameter point given as JSON.
pub fn psi_point(n: usize, radius: f64, point: &str) -> Out {
    let p: DomainPoint = serde_json::from_str(point).map_err(err)?;
    explore(n, radius, p)
}

/// Pulls a cube-boundary point back to the parameter space.
pub fn cube_point(n: usize, radius: f64, x: &str) -> Out {
    let x: Vec<f64> = serde_json::from_str(x).map_err(err)?;
    let p = geometry::psi_inverse(n, radius, &x).map_err(err)?;
    let pinned = geometry::pinned_vertex(n, radius, &x).map_err(err)?;
    let piece = geometry::decompose_cube_point(n, pinned, radius, &x).map_err(err)?;
    Ok(json!({ "n": n, "radius": radius, "cube": x, "pinned": pinned, "piece": piece, "point": p }))
}

/// Builds an example family and reports certification and the homology of the
/// complex spanned by the collection.
pub fn example(kind: &str, k: usize, d: u64, l: u64) -> Out {
    if k == 0 || k > 5 {
        return Err(format!("k = {k} is outside 1..=5"));
    }
    let kind: ExampleKind = kind.parse().map_err(err)?;
    let (cat, coll) = make_example_collection(&ExampleSpec::uniform(kind, k, d, l)).map_err(err)?;
    let cert = certify(&cat, &coll).map_err(err)?;
    let z = fundamental_cycle(&coll).map_err(err)?;
    let c = collection_complex(&cat, &coll).map_err(err)?;
    let top = c.dim().unwrap_or(0);
    let groups: Vec<Value> = (0..=top)
        .map(|q| json!({ "degree": q, "homology": homology(&c, q).to_string(), "reduced": reduced_homology(&c, q).to_string() }))
        .collect();
    Ok(json!({
        "catalog_hash": cat.hash(),
        "manifold": cat.manifold.name,
        "certified": cert.certified,
        "cycle": z.to_string(),
        "cycle_terms": z.len(),
        "f_vector": c.f_vector(),
        "groups": groups,
    }))
}

fn to_js(v: Out) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn wasm_warp(lambda: f64, r: f64, convention: &str, samples: usize) -> Result<String, JsError> {
    to_js(warp(lambda, r, convention, samples))
}

#[wasm_bindgen]
pub fn wasm_psi_sample(n: usize, radius: f64, seed: u64) -> Result<String, JsError> {
    to_js(psi_sample(n, radius, seed))
}

#[wasm_bindgen]
pub fn wasm_psi_point(n: usize, radius: f64, point: &str) -> Result<String, JsError> {
    to_js(psi_point(n, radius, point))
}

#[wasm_bindgen]
pub fn wasm_cube_point(n: usize, radius: f64, x: &str) -> Result<String, JsError> {
    to_js(cube_point(n, radius, x))
}

#[wasm_bindgen]
pub fn wasm_example(kind: &str, k: usize, d: u64, l: u64) -> Result<String, JsError> {
    to_js(example(kind, k, d, l))
}
