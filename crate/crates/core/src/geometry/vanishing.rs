use super::cylinder::{metric_descriptor, StretchPoint, WarpConvention};
use super::weights::Weights;
use super::{face_of, full, mask_of, Face};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Aggregate stand-in for the curvature of the metrics in the family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureModel {
    /// Upper bound for `‖κ(h)‖²` over the family on `σ`.
    pub baseline_sup: f64,
    /// `∫ c₁(𝔰)²`.
    pub c1_square: i64,
    /// Per-face replacements for `baseline_sup`.
    #[serde(default)]
    pub overrides: Vec<(Face, f64)>,
}

impl CurvatureModel {
    /// `C = 6` everywhere: `‖κ‖² ≤ 10 (4π)²` and `c₁² = 4`.
    pub fn toy() -> Self {
        CurvatureModel { baseline_sup: 160.0 * PI * PI, c1_square: 4, overrides: Vec::new() }
    }

    fn baseline(&self, n: usize, m: u32) -> Result<f64> {
        for (f, v) in &self.overrides {
            if mask_of(n, f)? == m {
                return Ok(*v);
            }
        }
        Ok(self.baseline_sup)
    }

    fn check(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !ok(self.baseline_sup) || self.overrides.iter().any(|(_, v)| !ok(*v)) {
            return Err(Error::Precondition("curvature bounds must be finite and nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceData {
    pub face: Face,
    pub lambda: f64,
    pub c: f64,
    pub r_bar: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingData {
    pub n: usize,
    /// `λ(σ)`.
    pub lambda: f64,
    /// `C(σ) = sup ‖κ‖² / (4π)² − c₁²`.
    pub c: f64,
    /// `R̄(σ) = max(C(σ)/λ(σ), 0)`.
    pub r_bar: f64,
    /// `R(σ)`, the largest `R̄` over all faces.
    pub r: f64,
    pub faces: Vec<FaceData>,
}

/// `λ`, `C`, `R̄` for every face of `σ`, and `R(σ)`.
pub fn vanishing_data(n: usize, w: &Weights, model: &CurvatureModel) -> Result<VanishingData> {
    w.check(n)?;
    model.check()?;
    let scale = (4.0 * PI).powi(2);
    let mut faces = Vec::new();
    for m in 1..=full(n) {
        // λ(τ) = a(τ) for monotone weights.
        let lambda = w.at(m)?;
        let c = model.baseline(n, m)? / scale - model.c1_square as f64;
        faces.push(FaceData { face: face_of(m), lambda, c, r_bar: (c / lambda).max(0.0) });
    }
    let top = faces.last().expect("σ itself").clone();
    let r = faces.iter().map(|f| f.r_bar).fold(0.0, f64::max);
    Ok(VanishingData { n, lambda: top.lambda, c: top.c, r_bar: top.r_bar, r, faces })
}

/// Genus and pairing of the surface at one vertex of `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub vertex: usize,
    pub chi_minus: u64,
    pub c1_pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleMargin {
    pub index: usize,
    pub lambda: f64,
    /// `(Σ, r'_Σ)` for `Σ ∈ simin s`, with `r'_Σ = Λ(λ, r_Σ)`.
    pub stretched: Vec<(usize, f64)>,
    /// `Σ r'_Σ − C(σ)`.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub data: VanishingData,
    pub radius: f64,
    pub convention: WarpConvention,
    pub samples: Vec<SampleMargin>,
    pub min_margin: f64,
    /// Every sample has positive margin, so no solution exists at any of them.
    pub certified: bool,
}

/// Checks `Σ_{simin s} Λ(λ(𝒮,t), r_Σ) > C(σ)` at sampled points of ext∂.
///
/// Requires `R ≥ R̄(σ)` and `χ⁻(Σ)² + 1 ≤ |c₁·Σ|²` at every vertex.
pub fn vanishing_certificate(
    n: usize,
    w: &Weights,
    model: &CurvatureModel,
    vertices: &[VertexData],
    radius: f64,
    samples: &[StretchPoint],
    conv: WarpConvention,
) -> Result<VanishingCertificate> {
    let data = vanishing_data(n, w, model)?;
    if !(radius >= data.r_bar) {
        return Err(Error::Precondition(format!("R = {radius} is below R̄(σ) = {}", data.r_bar)));
    }
    for v in 0..=n {
        let d = vertices
            .iter()
            .find(|d| d.vertex == v)
            .ok_or_else(|| Error::Hypothesis(format!("no surface data for vertex {v}")))?;
        let lhs = u128::from(d.chi_minus).pow(2) + 1;
        let rhs = u128::from(d.c1_pairing.unsigned_abs()).pow(2);
        if lhs > rhs {
            return Err(Error::Hypothesis(format!(
                "vertex {v}: χ⁻² + 1 = {lhs} exceeds |c₁·Σ|² = {rhs}"
            )));
        }
    }
    let mut out = Vec::with_capacity(samples.len());
    for (index, p) in samples.iter().enumerate() {
        if p.r.values().any(|r| *r > radius * (1.0 + 1e-12)) || !p.r.values().any(|r| *r >= radius * (1.0 - 1e-12)) {
            return Err(Error::OutOfDomain(format!("sample {index} is not on ext∂ for R = {radius}")));
        }
        let d = metric_descriptor(n, w, p, conv)?;
        let stretched: Vec<(usize, f64)> = d.segments.iter().map(|s| (s.surface, s.total_length)).collect();
        let sum: f64 = stretched.iter().map(|(_, l)| l).sum();
        out.push(SampleMargin { index, lambda: d.lambda, stretched, margin: sum - data.c });
    }
    let min_margin = out.iter().map(|s| s.margin).fold(f64::INFINITY, f64::min);
    Ok(VanishingCertificate {
        certified: out.iter().all(|s| s.margin > 0.0),
        data,
        radius,
        convention: conv,
        samples: out,
        min_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BaryPoint;

    fn half() -> Weights {
        Weights::Constant { value: 0.5 }
    }

    fn good_vertices(n: usize) -> Vec<VertexData> {
        (0..=n).map(|vertex| VertexData { vertex, chi_minus: 2, c1_pairing: 3 }).collect()
    }

    #[test]
    fn toy_numbers() {
        let d = vanishing_data(2, &half(), &CurvatureModel::toy()).unwrap();
        assert!((d.c - 6.0).abs() < 1e-12);
        assert!((d.r_bar - 12.0).abs() < 1e-12);
        assert!((d.r - 12.0).abs() < 1e-12);
        let flat = CurvatureModel { baseline_sup: 0.0, c1_square: 1, overrides: vec![] };
        assert_eq!(vanishing_data(2, &half(), &flat).unwrap().r, 0.0);
    }

    #[test]
    fn overrides_feed_the_face_maximum() {
        let model = CurvatureModel { baseline_sup: 0.0, c1_square: 0, overrides: vec![(vec![1], 16.0 * PI * PI * 3.0)] };
        let d = vanishing_data(3, &Weights::Dyadic, &model).unwrap();
        assert_eq!(d.r_bar, 0.0);
        assert!((d.r - 3.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_on_the_toy_model() {
        let p = StretchPoint {
            chain: vec![vec![0], vec![0, 1]],
            base: BaryPoint { tower: vec![vec![vec![0]], vec![vec![0], vec![0, 1]]], t: vec![0.5, 0.5] },
            r: [(0, 12.0)].into_iter().collect(),
        };
        let c = vanishing_certificate(1, &half(), &CurvatureModel::toy(), &good_vertices(1), 12.0, &[p.clone()], WarpConvention::Claimed).unwrap();
        assert!(c.certified);
        // λ = 3/4, Λ = 3/4 · 27.
        assert!((c.min_margin - (0.75 * 27.0 - 6.0)).abs() < 1e-9);
        assert!(vanishing_certificate(1, &half(), &CurvatureModel::toy(), &good_vertices(1), 11.0, &[p.clone()], WarpConvention::Claimed).is_err());
        let bad = vec![VertexData { vertex: 0, chi_minus: 3, c1_pairing: 3 }, VertexData { vertex: 1, chi_minus: 0, c1_pairing: 1 }];
        assert!(matches!(
            vanishing_certificate(1, &half(), &CurvatureModel::toy(), &bad, 12.0, &[p], WarpConvention::Claimed),
            Err(Error::Hypothesis(_))
        ));
    }
}
