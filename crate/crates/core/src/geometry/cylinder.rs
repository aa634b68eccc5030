use super::weights::{BaryPoint, Weights};
use super::{chain_masks, face_of, lambda_of, warp_profile, Face};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// How the stretch coefficient `r ρ_λ + 1` enters the cylinder length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarpConvention {
    /// Length element `(r ρ_λ + 1) dt`: inner length `λ(r+1)`, total `λ(2r+3)`.
    #[default]
    Claimed,
    /// Metric coefficient `(r ρ_λ + 1) dt²`: inner length `λ√(r+1)`.
    Printed,
}

impl FromStr for WarpConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "claimed" => Ok(WarpConvention::Claimed),
            "printed" => Ok(WarpConvention::Printed),
            _ => Err(Error::Precondition(format!("unknown warp convention `{s}` (claimed, printed)"))),
        }
    }
}

impl fmt::Display for WarpConvention {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            WarpConvention::Claimed => "claimed",
            WarpConvention::Printed => "printed",
        })
    }
}

fn check_lr(lambda: f64, r: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) || !(r >= 0.0 && r.is_finite()) {
        return Err(Error::OutOfDomain(format!("need λ > 0 and r ≥ 0, got λ = {lambda}, r = {r}")));
    }
    Ok(())
}

/// Length of the fully stretched part over `[3λ, 4λ]`.
pub fn inner_length(lambda: f64, r: f64, conv: WarpConvention) -> Result<f64> {
    check_lr(lambda, r)?;
    Ok(match conv {
        WarpConvention::Claimed => lambda * (r + 1.0),
        WarpConvention::Printed => lambda * (r + 1.0).sqrt(),
    })
}

/// `Λ(λ, r)`, the length of the whole warped segment over `[2λ, 5λ]`.
///
/// Closed form under the claimed convention (the ramps integrate to `λ/2`
/// each by the symmetry of `ρ₀`); quadrature otherwise.
pub fn total_length(lambda: f64, r: f64, conv: WarpConvention) -> Result<f64> {
    check_lr(lambda, r)?;
    match conv {
        WarpConvention::Claimed => Ok(lambda * (2.0 * r + 3.0)),
        WarpConvention::Printed => total_length_quadrature(lambda, r, conv),
    }
}

/// `Λ(λ, r)` by double-exponential quadrature, split at the ramp ends.
pub fn total_length_quadrature(lambda: f64, r: f64, conv: WarpConvention) -> Result<f64> {
    check_lr(lambda, r)?;
    let element = move |x: f64| {
        let c = r * warp_profile(lambda, x).unwrap_or(0.0) + 1.0;
        match conv {
            WarpConvention::Claimed => c,
            WarpConvention::Printed => c.sqrt(),
        }
    };
    let mut total = 0.0;
    for (a, b) in [(2.0, 3.0), (3.0, 4.0), (4.0, 5.0)] {
        total += quadrature::integrate(element, a * lambda, b * lambda, 1e-13 * lambda.max(1.0)).integral;
    }
    Ok(total)
}

/// Base point in `|s|` plus stretch parameters on `simin s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchPoint {
    /// The chain `s` of faces.
    pub chain: Vec<Face>,
    /// Point of `|𝒮|` for a tower of sub-chains of `s`.
    pub base: BaryPoint,
    /// `r_Σ` for every `Σ ∈ simin s`.
    pub r: BTreeMap<usize, f64>,
}

/// One term `t_i · G(simin s_i, λ, {r})` of the convex combination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricTerm {
    pub weight: f64,
    pub stretched_face: Face,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CylinderSegment {
    pub surface: usize,
    pub lambda: f64,
    pub r: f64,
    /// Collar `[2λ, 5λ]` inside the tubular neighbourhood of this surface.
    pub collar: [f64; 2],
    pub inner: [f64; 2],
    pub inner_length: f64,
    pub total_length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricDescriptor {
    pub lambda: f64,
    pub convention: WarpConvention,
    pub terms: Vec<MetricTerm>,
    pub segments: Vec<CylinderSegment>,
    /// Every term stretches every surface of `simin s`, so all terms agree
    /// on the collars.
    pub terms_agree: bool,
    /// `λ ≤ a(simin s)`, so the collars sit in disjoint neighbourhoods.
    pub segments_disjoint: bool,
}

/// The symbolic metric `Σ t_i G(simin s_i, λ(𝒮, t), {r})` at a point.
pub fn metric_descriptor(n: usize, w: &Weights, p: &StretchPoint, conv: WarpConvention) -> Result<MetricDescriptor> {
    let s = chain_masks(n, &p.chain)?;
    let tower = p.base.masks(n)?;
    for sj in &tower {
        if let Some(f) = sj.iter().find(|f| !s.contains(f)) {
            return Err(Error::OutOfDomain(format!("face {:?} of the tower is not in s", face_of(*f))));
        }
    }
    let simin = face_of(s[0]);
    let keys: Vec<usize> = p.r.keys().copied().collect();
    if keys != simin {
        return Err(Error::OutOfDomain(format!("stretch parameters on {keys:?}, expected simin s = {simin:?}")));
    }
    let lambda = lambda_of(n, &p.base, w)?;
    let terms: Vec<MetricTerm> = tower
        .iter()
        .zip(&p.base.t)
        .map(|(sj, t)| MetricTerm { weight: *t, stretched_face: face_of(sj[0]) })
        .collect();
    let terms_agree = tower.iter().all(|sj| sj[0] & s[0] == s[0]);
    let mut segments = Vec::new();
    for (&v, &r) in &p.r {
        segments.push(CylinderSegment {
            surface: v,
            lambda,
            r,
            collar: [2.0 * lambda, 5.0 * lambda],
            inner: [3.0 * lambda, 4.0 * lambda],
            inner_length: inner_length(lambda, r, conv)?,
            total_length: total_length(lambda, r, conv)?,
        });
    }
    Ok(MetricDescriptor {
        lambda,
        convention: conv,
        terms,
        segments,
        terms_agree,
        segments_disjoint: lambda <= w.at(s[0])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(total_length(1.0, 0.0, WarpConvention::Claimed).unwrap(), 3.0);
        assert_eq!(total_length(1.0, 2.0, WarpConvention::Claimed).unwrap(), 7.0);
        assert_eq!(inner_length(1.0, 2.0, WarpConvention::Claimed).unwrap(), 3.0);
        let q = total_length_quadrature(1.0, 2.0, WarpConvention::Claimed).unwrap();
        assert!((q - 7.0).abs() < 1e-10, "{q}");
    }

    #[test]
    fn printed_convention_is_shorter() {
        let p = total_length(1.0, 8.0, WarpConvention::Printed).unwrap();
        assert!(p > inner_length(1.0, 8.0, WarpConvention::Printed).unwrap());
        assert!(p < total_length(1.0, 8.0, WarpConvention::Claimed).unwrap());
        assert_eq!(inner_length(1.0, 8.0, WarpConvention::Printed).unwrap(), 3.0);
    }

    #[test]
    fn edge_descriptor() {
        let p = StretchPoint {
            chain: vec![vec![0, 1]],
            base: BaryPoint { tower: vec![vec![vec![0, 1]]], t: vec![1.0] },
            r: [(0, 1.0), (1, 2.0)].into_iter().collect(),
        };
        let d = metric_descriptor(1, &Weights::Constant { value: 1.0 }, &p, WarpConvention::Claimed).unwrap();
        let lens: Vec<f64> = d.segments.iter().map(|s| s.total_length).collect();
        assert_eq!(lens, vec![5.0, 7.0]);
        assert!(d.terms_agree && d.segments_disjoint);
    }

    #[test]
    fn unstretched_segments_have_length_three_lambda() {
        let p = StretchPoint {
            chain: vec![vec![0], vec![0, 1, 2]],
            base: BaryPoint {
                tower: vec![vec![vec![0, 1, 2]], vec![vec![0], vec![0, 1, 2]]],
                t: vec![0.5, 0.5],
            },
            r: [(0, 0.0)].into_iter().collect(),
        };
        let d = metric_descriptor(2, &Weights::Dyadic, &p, WarpConvention::Claimed).unwrap();
        assert_eq!(d.lambda, 0.25);
        assert_eq!(d.segments[0].total_length, 0.75);
        assert_eq!(d.terms[0].stretched_face, vec![0, 1, 2]);
    }

    #[test]
    fn wrong_stretch_keys() {
        let p = StretchPoint {
            chain: vec![vec![0], vec![0, 1]],
            base: BaryPoint { tower: vec![vec![vec![0]]], t: vec![1.0] },
            r: [(1, 0.0)].into_iter().collect(),
        };
        assert!(metric_descriptor(1, &Weights::Dyadic, &p, WarpConvention::Claimed).is_err());
    }
}
