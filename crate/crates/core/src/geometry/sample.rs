//! Seeded samplers for the property checks.

use super::cube::DomainPoint;
use super::cylinder::StretchPoint;
use super::weights::BaryPoint;
use super::Face;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A strictly increasing chain of faces of the `n`-simplex.
pub fn chain<R: Rng>(n: usize, rng: &mut R) -> Vec<Face> {
    let mut perm: Vec<usize> = (0..=n).collect();
    perm.shuffle(rng);
    let mut sizes: Vec<usize> = (1..=n + 1).filter(|_| rng.gen_bool(0.5)).collect();
    if sizes.is_empty() {
        sizes.push(rng.gen_range(1..=n + 1));
    }
    sizes
        .into_iter()
        .map(|k| {
            let mut f = perm[..k].to_vec();
            f.sort_unstable();
            f
        })
        .collect()
}

/// Weights on `len` points, with exact zeros mixed in now and then.
pub fn weights<R: Rng>(len: usize, rng: &mut R) -> Vec<f64> {
    let mut t: Vec<f64> = (0..len).map(|_| if rng.gen_bool(0.15) { 0.0 } else { -rng.gen::<f64>().max(1e-300).ln() }).collect();
    if t.iter().all(|w| *w == 0.0) {
        t[rng.gen_range(0..len)] = 1.0;
    }
    let s: f64 = t.iter().sum();
    t.iter_mut().for_each(|w| *w /= s);
    t
}

/// Stretch parameters in `[0, R]` on `face`, one of them equal to `R`.
pub fn ext_stretch<R: Rng>(face: &[usize], radius: f64, rng: &mut R) -> BTreeMap<usize, f64> {
    let top = face[rng.gen_range(0..face.len())];
    face.iter()
        .map(|v| {
            let r = if *v == top {
                radius
            } else {
                match rng.gen_range(0..8) {
                    0 => 0.0,
                    1 => radius,
                    _ => rng.gen_range(0.0..=radius),
                }
            };
            (*v, r)
        })
        .collect()
}

pub fn domain_point<R: Rng>(n: usize, radius: f64, rng: &mut R) -> DomainPoint {
    let chain = chain(n, rng);
    let t = weights(chain.len(), rng);
    let r = ext_stretch(&chain[0], radius, rng);
    DomainPoint { chain, t, r }
}

/// A tower of sub-chains of `s`, with weights.
pub fn bary_point<R: Rng>(s: &[Face], rng: &mut R) -> BaryPoint {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.shuffle(rng);
    let start = rng.gen_range(1..=s.len());
    let mut current: Vec<usize> = order[..start].to_vec();
    let mut tower = Vec::new();
    let pick = |idx: &[usize]| {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| s[i].clone()).collect::<Vec<Face>>()
    };
    tower.push(pick(&current));
    for &i in &order[start..] {
        current.push(i);
        if rng.gen_bool(0.6) {
            tower.push(pick(&current));
        }
    }
    let t = weights(tower.len(), rng);
    BaryPoint { tower, t }
}

/// A point of ext∂ on the stretch side: base in `|s|`, some `r_Σ = R`.
pub fn stretch_point<R: Rng>(n: usize, radius: f64, rng: &mut R) -> StretchPoint {
    let s = chain(n, rng);
    let base = bary_point(&s, rng);
    let r = ext_stretch(&s[0], radius, rng);
    StretchPoint { chain: s, base, r }
}

/// A point of `ext∂(σ, R)`, with coordinates snapped to `0`, `R/2`, `R`
/// now and then.
pub fn ext_point<R: Rng>(n: usize, radius: f64, rng: &mut R) -> Vec<f64> {
    let mut x: Vec<f64> = (0..=n)
        .map(|_| match rng.gen_range(0..10) {
            0 => 0.0,
            1 => radius / 2.0,
            2 => radius,
            _ => rng.gen_range(0.0..=radius),
        })
        .collect();
    x[rng.gen_range(0..=n)] = radius;
    x
}
