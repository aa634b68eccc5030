//! Numerical property checks over the whole geometry module, as one report.

use super::sample;
use super::*;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfTestConfig {
    pub seed: u64,
    pub warp: WarpConvention,
    /// Samples per ψ check.
    pub samples: usize,
    /// Bound on ψ round-trip and piece-agreement errors.
    pub psi_tolerance: f64,
    /// Bound on closed form vs quadrature for `Λ`.
    pub quadrature_tolerance: f64,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            seed: 0,
            warp: WarpConvention::Claimed,
            samples: 10_000,
            psi_tolerance: 1e-12,
            quadrature_tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst value seen; compared against `tolerance` unless `detail` says otherwise.
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfTestReport {
    pub config: SelfTestConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn upper(name: &str, measured: f64, tolerance: f64, detail: String) -> Check {
    Check { name: name.into(), passed: measured <= tolerance, measured, tolerance, detail }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

/// Radius used by the ψ checks.
const RADIUS: f64 = 1.0;

pub fn rho_symmetry() -> Result<Check> {
    let mut worst = 0.0f64;
    for i in 0..=10_000 {
        let t = i as f64 / 10_000.0;
        worst = worst.max((rho0(t)? + rho0(1.0 - t)? - 1.0).abs());
    }
    Ok(upper("rho_symmetry", worst, 1e-15, "|ρ₀(t) + ρ₀(1−t) − 1| on 10001 grid points".into()))
}

pub fn cutoff_example() -> Result<Check> {
    let v = cutoff(0.0, 1.0, 0.25, 0.75, 0.125)?;
    Ok(upper("cutoff_ramp_midpoint", (v - 0.5).abs(), 1e-15, "cutoff(0, 1, 1/4, 3/4; 1/8) = 1/2".into()))
}

/// `λ(𝒮, t) ≤ a(simin s_i)` at random points, reported as the worst excess.
pub fn lambda_bound(seed: u64, samples: usize) -> Result<Check> {
    let mut rng = sample::rng(seed);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..samples {
        let n = k % 5;
        let w = if k % 2 == 0 { Weights::Dyadic } else { Weights::Constant { value: 0.5 } };
        let s = sample::chain(n, &mut rng);
        let p = sample::bary_point(&s, &mut rng);
        let mut lambda = 0.0;
        for (sj, t) in p.tower.iter().zip(&p.t) {
            lambda += t * w.value(n, sj.last().expect("nonempty"))?;
        }
        for sj in &p.tower {
            worst = worst.max(lambda - w.value(n, &sj[0])?);
        }
    }
    Ok(upper("lambda_bound", worst, 1e-15, format!("max of λ(𝒮,t) − a(simin s_i) over {samples} points")))
}

/// `λ(σ) = a(σ)` against enumeration of all chains and sub-chains.
pub fn lambda_min_check() -> Result<Check> {
    let mut worst = 0.0f64;
    let families = [Weights::Dyadic, Weights::Constant { value: 1.0 }, Weights::Constant { value: 1.0 / 3.0 }];
    for n in 0..=4 {
        for w in &families {
            worst = worst.max((lambda_min(n, w)? - lambda_min_enumerated(n, w)?).abs());
        }
    }
    Ok(upper("lambda_min_equals_top_weight", worst, 0.0, "dim σ ≤ 4, three weight families".into()))
}

/// The 20 × 20 grid `λ ∈ {0.05, …, 1}`, `r ∈ {0, 0.5, …, 9.5}`.
pub fn cylinder_grid() -> impl Iterator<Item = (f64, f64)> {
    (1..=20).flat_map(|i| (0..20).map(move |j| (i as f64 * 0.05, j as f64 * 0.5)))
}

pub fn cylinder_checks(tol: f64, conv: WarpConvention) -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    let mut slack = f64::INFINITY;
    for (lambda, r) in cylinder_grid() {
        let closed = total_length(lambda, r, WarpConvention::Claimed)?;
        worst = worst.max((closed - total_length_quadrature(lambda, r, WarpConvention::Claimed)?).abs());
        slack = slack.min(total_length(lambda, r, conv)? - inner_length(lambda, r, conv)?);
    }
    Ok(vec![
        upper("cylinder_closed_form_vs_quadrature", worst, tol, "λ(2r+3) vs quadrature on the 20×20 grid".into()),
        Check {
            name: "cylinder_total_exceeds_inner".into(),
            passed: slack > 0.0,
            measured: slack,
            tolerance: 0.0,
            detail: format!("min of Λ(λ,r) − inner length on the grid, {conv} convention; must be positive"),
        },
    ])
}

pub fn psi_checks(seed: u64, samples: usize, tol: f64) -> Result<Vec<Check>> {
    let mut rng = sample::rng(seed);
    let mut round = 0.0f64;
    let mut inverse = 0.0f64;
    let mut agree = 0.0f64;
    let mut outside = 0usize;
    for k in 0..samples {
        let n = k % 4;
        let p = sample::domain_point(n, RADIUS, &mut rng);
        let x = psi_forward(n, RADIUS, &p)?;
        let in_ext = x.iter().all(|v| (0.0..=RADIUS).contains(v)) && x.iter().any(|v| *v == RADIUS);
        if !in_ext {
            outside += 1;
        }
        let q = psi_inverse(n, RADIUS, &x)?;
        round = round.max(max_diff(&canonical_form(n, &p)?, &canonical_form(n, &q)?));

        let y = sample::ext_point(n, RADIUS, &mut rng);
        inverse = inverse.max(max_diff(&psi_forward(n, RADIUS, &psi_inverse(n, RADIUS, &y)?)?, &y));

        agree = agree.max(shared_face_gap(n, &p)?);
    }
    Ok(vec![
        upper("psi_round_trip", round, tol, format!("ψ⁻¹∘ψ on {samples} domain points, dim σ ≤ 3, canonical coordinates")),
        upper("psi_inverse_round_trip", inverse, tol, format!("ψ∘ψ⁻¹ on {samples} points of ext∂")),
        upper("psi_piece_agreement", agree, tol, "adjacent piece formulas on shared faces".into()),
        Check {
            name: "psi_image_in_ext_boundary".into(),
            passed: outside == 0,
            measured: outside as f64,
            tolerance: 0.0,
            detail: "number of images outside ext∂(σ, R)".into(),
        },
    ])
}

/// Pushes `p` to a face shared with a neighbouring piece and compares the two
/// piece formulas there, forwards and backwards.
fn shared_face_gap(n: usize, p: &DomainPoint) -> Result<f64> {
    let mut gap = 0.0f64;
    if p.chain.len() < 2 {
        return Ok(gap);
    }
    // t_0 = 0: the piece of s meets the piece of s ∖ {simin s}, whose
    // stretch parameters gain zeros on the new surfaces.
    let mut t = p.t.clone();
    t[0] = 0.0;
    let s: f64 = t.iter().sum();
    if s == 0.0 {
        return Ok(gap);
    }
    t.iter_mut().for_each(|w| *w /= s);
    let on_face = DomainPoint { chain: p.chain.clone(), t: t.clone(), r: p.r.clone() };
    let mut r = p.r.clone();
    for v in &p.chain[1] {
        r.entry(*v).or_insert(0.0);
    }
    let other = DomainPoint { chain: p.chain[1..].to_vec(), t: t[1..].to_vec(), r };
    let x = psi_forward(n, RADIUS, &on_face)?;
    gap = gap.max(max_diff(&x, &psi_forward(n, RADIUS, &other)?));

    // Both pieces invert the common image to the same point.
    let pinned = x.iter().position(|v| *v == RADIUS).expect("image in ext∂");
    let tol = 1e-12;
    let a = inverse_in_piece(n, pinned, &on_face.chain, RADIUS, &x, tol)?;
    let b = inverse_in_piece(n, pinned, &other.chain, RADIUS, &x, tol)?;
    gap = gap.max(max_diff(&canonical_form(n, &a)?, &canonical_form(n, &b)?));
    Ok(gap)
}

pub fn q_cover(max_n: usize, steps: usize) -> Result<Check> {
    let mut points = 0;
    let mut uncovered = 0;
    for n in 0..=max_n {
        for pinned in 0..=n {
            let r = q_cover_check(n, pinned, RADIUS, steps)?;
            points += r.points;
            uncovered += r.uncovered;
        }
    }
    Ok(Check {
        name: "q_decomposition_cover".into(),
        passed: uncovered == 0,
        measured: uncovered as f64,
        tolerance: 0.0,
        detail: format!("uncovered grid points out of {points}, dim σ ≤ {max_n}, step R/{steps}"),
    })
}

/// `C = 6`, `a ≡ 1/2`, `R = R̄(σ) = 12`.
pub fn toy_vanishing(seed: u64, samples: usize, conv: WarpConvention) -> Result<(Check, VanishingCertificate)> {
    let n = 2;
    let w = Weights::Constant { value: 0.5 };
    let model = CurvatureModel::toy();
    let radius = vanishing_data(n, &w, &model)?.r_bar;
    let vertices: Vec<VertexData> = (0..=n).map(|vertex| VertexData { vertex, chi_minus: 2, c1_pairing: 3 }).collect();
    let mut rng = sample::rng(seed);
    let pts: Vec<StretchPoint> = (0..samples).map(|_| sample::stretch_point(n, radius, &mut rng)).collect();
    let cert = vanishing_certificate(n, &w, &model, &vertices, radius, &pts, conv)?;
    let check = Check {
        name: "toy_vanishing_margin".into(),
        passed: cert.certified,
        measured: cert.min_margin,
        tolerance: 0.0,
        detail: format!("min of Σ r' − C(σ) over {samples} points at R = {radius}; must be positive"),
    };
    Ok((check, cert))
}

pub fn run(config: &SelfTestConfig) -> Result<SelfTestReport> {
    let mut checks = vec![rho_symmetry()?, cutoff_example()?, lambda_bound(config.seed, 2000)?, lambda_min_check()?];
    checks.extend(cylinder_checks(config.quadrature_tolerance, config.warp)?);
    checks.extend(psi_checks(config.seed, config.samples, config.psi_tolerance)?);
    checks.push(q_cover(4, 8)?);
    checks.push(toy_vanishing(config.seed, 1000, config.warp)?.0);
    let passed = checks.iter().all(|c| c.passed);
    Ok(SelfTestReport { config: config.clone(), checks, passed })
}
