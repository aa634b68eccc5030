//! Geometry of the stretching parameter space over one simplex.
//!
//! The simplex is `σ = {0, …, n}`; its faces are vertex sets and a simplex `s`
//! of the barycentric subdivision `Bd(σ)` is a strictly increasing chain of
//! faces. Cube points are full-length vectors indexed by the vertices of `σ`.
//! Metrics never appear as tensors: a metric is a descriptor listing which
//! surfaces are stretched, by how much, and the resulting cylinder lengths.

mod cube;
mod cutoff;
mod cylinder;
pub mod sample;
pub mod selftest;
mod vanishing;
mod weights;

pub use cube::{
    boundary_corner, canonical_form, decompose_cube_point, in_piece, in_q_tau, inverse_in_piece, pinned_vertex,
    psi_forward, psi_inverse, q_cover_check, CoverReport, Decomposition, DomainPoint,
};
pub use cutoff::{cutoff, rho0, warp_profile};
pub use cylinder::{
    inner_length, metric_descriptor, total_length, total_length_quadrature, CylinderSegment, MetricDescriptor,
    MetricTerm, StretchPoint, WarpConvention,
};
pub use vanishing::{
    vanishing_certificate, vanishing_data, CurvatureModel, FaceData, SampleMargin, VanishingCertificate, VanishingData,
    VertexData,
};
pub use weights::{chains_of, lambda_min, lambda_min_enumerated, lambda_of, BaryPoint, Weights};

use crate::{Error, Result};

/// A face of `σ`: a nonempty increasing list of vertices.
pub type Face = Vec<usize>;

pub(crate) type Mask = u32;

/// Largest supported `dim σ`; faces are stored as bit masks.
pub const MAX_DIM: usize = 16;

pub(crate) fn full(n: usize) -> Mask {
    (1 << (n + 1)) - 1
}

pub(crate) fn mask_of(n: usize, face: &[usize]) -> Result<Mask> {
    if n > MAX_DIM {
        return Err(Error::Precondition(format!("dim σ = {n} exceeds {MAX_DIM}")));
    }
    if face.is_empty() {
        return Err(Error::OutOfDomain("empty face".into()));
    }
    let mut m: Mask = 0;
    for &v in face {
        if v > n {
            return Err(Error::OutOfDomain(format!("vertex {v} is not in the {n}-simplex")));
        }
        if m & (1 << v) != 0 {
            return Err(Error::RepeatedVertex(v.to_string()));
        }
        m |= 1 << v;
    }
    Ok(m)
}

pub(crate) fn face_of(m: Mask) -> Face {
    (0..32).filter(|v| m & (1 << v) != 0).collect()
}

pub(crate) fn dim_of(m: Mask) -> usize {
    m.count_ones() as usize - 1
}

/// Masks of a strictly increasing chain of faces.
pub(crate) fn chain_masks(n: usize, chain: &[Face]) -> Result<Vec<Mask>> {
    if chain.is_empty() {
        return Err(Error::OutOfDomain("empty chain of faces".into()));
    }
    let ms: Vec<Mask> = chain.iter().map(|f| mask_of(n, f)).collect::<Result<_>>()?;
    for w in ms.windows(2) {
        if w[0] & !w[1] != 0 || w[0] == w[1] {
            return Err(Error::OutOfDomain(format!(
                "{:?} is not a proper face of {:?}",
                face_of(w[0]),
                face_of(w[1])
            )));
        }
    }
    Ok(ms)
}

/// Barycentric weights: nonnegative, summing to one.
pub(crate) fn check_weights(t: &[f64], len: usize) -> Result<()> {
    if t.len() != len {
        return Err(Error::OutOfDomain(format!("expected {len} weights, got {}", t.len())));
    }
    if t.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::OutOfDomain(format!("weights {t:?} are not all nonnegative")));
    }
    let s: f64 = t.iter().sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::OutOfDomain(format!("weights sum to {s}, not 1")));
    }
    Ok(())
}
