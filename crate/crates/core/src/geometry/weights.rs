use super::{chain_masks, check_weights, dim_of, face_of, full, mask_of, Face, Mask};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The size function `a(·)` on faces of `σ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weights {
    /// `a(τ) = 2^{−dim τ}`.
    Dyadic,
    /// `1` on vertices, `value` on every other face.
    Constant { value: f64 },
    /// Explicit values; every face that is queried must be listed.
    Table { values: Vec<(Face, f64)> },
}

impl Default for Weights {
    fn default() -> Self {
        Weights::Dyadic
    }
}

impl Weights {
    pub(crate) fn at(&self, m: Mask) -> Result<f64> {
        let d = dim_of(m);
        match self {
            Weights::Dyadic => Ok((0.5f64).powi(d as i32)),
            Weights::Constant { value } => Ok(if d == 0 { 1.0 } else { *value }),
            Weights::Table { values } => {
                let f = face_of(m);
                values
                    .iter()
                    .find(|(g, _)| *g == f)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| Error::Precondition(format!("no weight given for face {f:?}")))
            }
        }
    }

    pub fn value(&self, n: usize, face: &[usize]) -> Result<f64> {
        self.at(mask_of(n, face)?)
    }

    /// Vertices weigh 1, every value lies in `(0, 1]`, and `τ ⊊ ρ` implies
    /// `a(ρ) ≤ a(τ)`.
    pub fn check(&self, n: usize) -> Result<()> {
        let top = full(n);
        for m in 1..=top {
            let v = self.at(m)?;
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Precondition(format!("a({:?}) = {v} is outside (0, 1]", face_of(m))));
            }
            if dim_of(m) == 0 && v != 1.0 {
                return Err(Error::Precondition(format!("vertex weight a({:?}) = {v}, expected 1", face_of(m))));
            }
            for bit in 0..=n {
                let bigger = m | (1 << bit);
                if bigger != m && self.at(bigger)? > v {
                    return Err(Error::Precondition(format!(
                        "a({:?}) = {} exceeds a({:?}) = {v}",
                        face_of(bigger),
                        self.at(bigger)?,
                        face_of(m)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A point of `|𝒮|` for a tower `𝒮 = {s_0 ⊊ … ⊊ s_l}` of chains of faces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaryPoint {
    pub tower: Vec<Vec<Face>>,
    pub t: Vec<f64>,
}

impl BaryPoint {
    /// Chain masks of each `s_j`, after checking strict inclusion.
    pub(crate) fn masks(&self, n: usize) -> Result<Vec<Vec<Mask>>> {
        if self.tower.is_empty() {
            return Err(Error::OutOfDomain("empty tower".into()));
        }
        check_weights(&self.t, self.tower.len())?;
        let ms: Vec<Vec<Mask>> = self.tower.iter().map(|s| chain_masks(n, s)).collect::<Result<_>>()?;
        for w in ms.windows(2) {
            if w[0].len() >= w[1].len() || !w[0].iter().all(|f| w[1].contains(f)) {
                return Err(Error::OutOfDomain("tower is not strictly increasing".into()));
            }
        }
        Ok(ms)
    }
}

/// `λ(𝒮, t) = Σ_j t_j a(simax s_j)`, checked against `λ ≤ a(simin s_i)`.
pub fn lambda_of(n: usize, p: &BaryPoint, w: &Weights) -> Result<f64> {
    let ms = p.masks(n)?;
    let mut lambda = 0.0;
    for (s, t) in ms.iter().zip(&p.t) {
        lambda += t * w.at(*s.last().expect("nonempty chain"))?;
    }
    for s in &ms {
        let bound = w.at(s[0])?;
        if lambda > bound * (1.0 + 1e-12) {
            return Err(Error::Precondition(format!(
                "λ = {lambda} exceeds a({:?}) = {bound}; the weights are not monotone",
                face_of(s[0])
            )));
        }
    }
    Ok(lambda)
}

/// `λ(σ)`: equal to `a(σ)` for monotone weights.
pub fn lambda_min(n: usize, w: &Weights) -> Result<f64> {
    w.check(n)?;
    w.at(full(n))
}

/// Every strictly increasing chain of faces of the `n`-simplex.
pub fn chains_of(n: usize) -> Vec<Vec<Face>> {
    fn grow(n: usize, chain: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
        out.push(chain.clone());
        let last = *chain.last().expect("nonempty");
        for m in (last + 1)..=full(n) {
            if m & last == last {
                chain.push(m);
                grow(n, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    for m in 1..=full(n) {
        grow(n, &mut vec![m], &mut out);
    }
    out.into_iter().map(|c| c.into_iter().map(face_of).collect()).collect()
}

/// `λ(σ)` by brute force: `λ(𝒮, ·)` is affine on `|𝒮|`, so its minimum is a
/// vertex value `a(simax c)` for some sub-chain `c` of some chain `s`.
pub fn lambda_min_enumerated(n: usize, w: &Weights) -> Result<f64> {
    let mut best = f64::INFINITY;
    for s in chains_of(n) {
        let ms = chain_masks(n, &s)?;
        for pick in 1u32..(1 << ms.len()) {
            let top = (0..ms.len()).rev().find(|i| pick & (1 << i) != 0).expect("nonempty pick");
            best = best.min(w.at(ms[top])?);
        }
    }
    Ok(best)
}
