use super::{chain_masks, check_weights, face_of, full, mask_of, Face, Mask};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A point of the ext∂-side domain: `p = Σ t_i σ_i ∈ |s|` for a chain `s`,
/// plus stretch parameters `r ∈ [0, R]^{simin s}` with some `r_Σ = R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub chain: Vec<Face>,
    pub t: Vec<f64>,
    pub r: BTreeMap<usize, f64>,
}

/// The piece `Q(σ, Σ, τ, s, R)` a cube point was assigned to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pinned: usize,
    pub tau: Face,
    /// `τ ⊊ τ ∪ {o_1} ⊊ … ⊊ σ`.
    pub chain: Vec<Face>,
    /// Vertices outside `τ` by descending coordinate, ties to the lower index.
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub n: usize,
    pub pinned: usize,
    pub steps: usize,
    pub points: usize,
    pub uncovered: usize,
    pub first_uncovered: Option<Vec<f64>>,
}

fn check_r(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition(format!("R must be positive, got {radius}")));
    }
    Ok(())
}

fn check_point(n: usize, radius: f64, x: &[f64]) -> Result<()> {
    if x.len() != n + 1 {
        return Err(Error::OutOfDomain(format!("cube point has {} coordinates, expected {}", x.len(), n + 1)));
    }
    let slack = 1e-12 * radius;
    if let Some(v) = x.iter().find(|v| !(**v >= -slack && **v <= radius + slack)) {
        return Err(Error::OutOfDomain(format!("coordinate {v} is outside [0, {radius}]")));
    }
    Ok(())
}

fn check_pinned(n: usize, pinned: usize, tau: Mask) -> Result<()> {
    if pinned > n {
        return Err(Error::OutOfDomain(format!("vertex {pinned} is not in the {n}-simplex")));
    }
    if tau & (1 << pinned) == 0 {
        return Err(Error::OutOfDomain(format!("{pinned} is not in τ = {:?}", face_of(tau))));
    }
    Ok(())
}

/// `b(τ)`: `R` on `τ ∖ {Σ}`, `0` elsewhere; the pinned entry is `R`.
pub fn boundary_corner(n: usize, pinned: usize, tau: &[usize], radius: f64) -> Result<Vec<f64>> {
    check_r(radius)?;
    let m = mask_of(n, tau)?;
    check_pinned(n, pinned, m)?;
    Ok((0..=n).map(|v| if m & (1 << v) != 0 { radius } else { 0.0 }).collect())
}

/// Assigns `x ∈ [0, R]^{σ∖{Σ}}` to a piece: `τ` collects `Σ` and the
/// coordinates `≥ R/2`, the chain adds the rest in descending order.
///
/// The entry `x[pinned]` is ignored.
pub fn decompose_cube_point(n: usize, pinned: usize, radius: f64, x: &[f64]) -> Result<Decomposition> {
    check_r(radius)?;
    check_point(n, radius, x)?;
    check_pinned(n, pinned, full(n))?;
    let mut tau: Mask = 1 << pinned;
    let mut rest = Vec::new();
    for v in (0..=n).filter(|v| *v != pinned) {
        if x[v] >= radius / 2.0 {
            tau |= 1 << v;
        } else {
            rest.push(v);
        }
    }
    // Stable sort keeps the lower index first on ties.
    rest.sort_by(|a, b| x[*b].total_cmp(&x[*a]));
    let mut chain = vec![face_of(tau)];
    let mut m = tau;
    for v in &rest {
        m |= 1 << v;
        chain.push(face_of(m));
    }
    Ok(Decomposition { pinned, tau: face_of(tau), chain, order: rest })
}

/// `x ∈ Q(σ, Σ, τ, R)`: every coordinate within `R/2` of the corner `b(τ)`.
pub fn in_q_tau(n: usize, pinned: usize, tau: &[usize], radius: f64, x: &[f64], tol: f64) -> Result<bool> {
    let b = boundary_corner(n, pinned, tau, radius)?;
    check_point(n, radius, x)?;
    Ok((0..=n).filter(|v| *v != pinned).all(|v| (x[v] - b[v]).abs() <= radius / 2.0 + tol))
}

/// Barycentric and stretch coordinates of `x` read off in the piece
/// `(τ, s)`, without clamping. `t` is fitted layer by layer.
fn piece_coords(n: usize, pinned: usize, chain: &[Face], radius: f64, x: &[f64]) -> Result<(Vec<f64>, BTreeMap<usize, f64>)> {
    let ms = chain_masks(n, chain)?;
    check_pinned(n, pinned, ms[0])?;
    check_point(n, radius, x)?;
    let u = |v: usize| 2.0 * x[v] / radius;
    let mut layer_mean = vec![0.0; ms.len()];
    for i in 1..ms.len() {
        let layer = face_of(ms[i] & !ms[i - 1]);
        layer_mean[i] = layer.iter().map(|v| u(*v)).sum::<f64>() / layer.len() as f64;
    }
    let k = ms.len() - 1;
    let mut t = vec![0.0; ms.len()];
    for i in 0..=k {
        let here = if i == 0 { 1.0 } else { layer_mean[i] };
        let next = if i == k { 0.0 } else { layer_mean[i + 1] };
        t[i] = here - next;
    }
    let r = face_of(ms[0])
        .into_iter()
        .map(|v| (v, if v == pinned { radius } else { 2.0 * x[v] - radius }))
        .collect();
    Ok((t, r))
}

/// `x ∈ Q(σ, Σ, τ, s, R) = △ × □`, where `s` starts at `τ`.
pub fn in_piece(n: usize, pinned: usize, tau: &[usize], chain: &[Face], radius: f64, x: &[f64], tol: f64) -> Result<bool> {
    if chain.first().map(|f| f.as_slice()) != Some(tau) {
        return Err(Error::OutOfDomain(format!("chain must start at τ = {tau:?}")));
    }
    if !in_q_tau(n, pinned, tau, radius, x, tol)? {
        return Ok(false);
    }
    let (t, r) = piece_coords(n, pinned, chain, radius, x)?;
    if t.iter().any(|w| *w < -tol) || r.values().any(|v| *v < -tol) {
        return Ok(false);
    }
    let back = triangle_part(n, chain, &t, radius)?;
    let tau_m = mask_of(n, tau)?;
    Ok((0..=n).filter(|v| tau_m & (1 << v) == 0).all(|v| (back[v] - x[v]).abs() <= tol))
}

/// `ψ^△`: `x_{Σ'} = (R/2) Σ_{i : Σ' ∈ σ_i} t_i`.
fn triangle_part(n: usize, chain: &[Face], t: &[f64], radius: f64) -> Result<Vec<f64>> {
    let ms = chain_masks(n, chain)?;
    let mut x = vec![0.0; n + 1];
    for (v, xv) in x.iter_mut().enumerate() {
        let s: f64 = ms.iter().zip(t).filter(|(m, _)| *m & (1 << v) != 0).map(|(_, w)| *w).sum();
        *xv = radius / 2.0 * s;
    }
    Ok(x)
}

fn check_domain(n: usize, radius: f64, p: &DomainPoint) -> Result<Vec<Mask>> {
    check_r(radius)?;
    let ms = chain_masks(n, &p.chain)?;
    check_weights(&p.t, ms.len())?;
    let simin = face_of(ms[0]);
    let keys: Vec<usize> = p.r.keys().copied().collect();
    if keys != simin {
        return Err(Error::OutOfDomain(format!("stretch parameters on {keys:?}, expected simin s = {simin:?}")));
    }
    if let Some(v) = p.r.values().find(|v| !(**v >= 0.0 && **v <= radius)) {
        return Err(Error::OutOfDomain(format!("r = {v} is outside [0, {radius}]")));
    }
    let top = p.r.values().copied().fold(f64::NEG_INFINITY, f64::max);
    if top < radius * (1.0 - 1e-12) {
        return Err(Error::OutOfDomain(format!("no stretch parameter equals R = {radius} (max {top})")));
    }
    Ok(ms)
}

/// `ψ = ψ^△ × ψ^□` on the piece of `(s, p, r)`; `ψ^□(r) = (r + R)/2`.
pub fn psi_forward(n: usize, radius: f64, p: &DomainPoint) -> Result<Vec<f64>> {
    check_domain(n, radius, p)?;
    let mut x = triangle_part(n, &p.chain, &p.t, radius)?;
    for (&v, &r) in &p.r {
        x[v] = if r >= radius * (1.0 - 1e-12) { radius } else { (r + radius) / 2.0 };
    }
    Ok(x)
}

/// Lowest index whose coordinate equals `R`: the face of ext∂ a point is read on.
pub fn pinned_vertex(n: usize, radius: f64, x: &[f64]) -> Result<usize> {
    check_r(radius)?;
    check_point(n, radius, x)?;
    x.iter()
        .position(|v| *v >= radius * (1.0 - 1e-12))
        .ok_or_else(|| Error::OutOfDomain(format!("no coordinate equals R = {radius}; the point is not in ext∂")))
}

/// `ψ⁻¹`: pins the lowest coordinate equal to `R`, then inverts on the piece
/// chosen by [`decompose_cube_point`].
pub fn psi_inverse(n: usize, radius: f64, x: &[f64]) -> Result<DomainPoint> {
    let pinned = pinned_vertex(n, radius, x)?;
    let d = decompose_cube_point(n, pinned, radius, x)?;
    inverse_in_piece(n, pinned, &d.chain, radius, x, 1e-12 * radius.max(1.0))
}

/// Inverts `ψ` on a prescribed piece `(τ = chain[0], chain)`; fails when `x`
/// lies outside it by more than `tol`.
pub fn inverse_in_piece(n: usize, pinned: usize, chain: &[Face], radius: f64, x: &[f64], tol: f64) -> Result<DomainPoint> {
    let tau = chain.first().ok_or_else(|| Error::OutOfDomain("empty chain".into()))?;
    if !in_piece(n, pinned, tau, chain, radius, x, tol)? {
        return Err(Error::OutOfDomain(format!("{x:?} is not in the piece of {chain:?}")));
    }
    let (t, r) = piece_coords(n, pinned, chain, radius, x)?;
    let mut t: Vec<f64> = t.into_iter().map(|w| w.max(0.0)).collect();
    let s: f64 = t.iter().sum();
    t.iter_mut().for_each(|w| *w /= s);
    let r = r.into_iter().map(|(v, r)| (v, r.clamp(0.0, radius))).collect();
    Ok(DomainPoint { chain: chain.to_vec(), t, r })
}

/// Representation-free coordinates of a domain point: the position
/// `Σ t_i · barycenter(σ_i)` in `|σ|`, then `r` extended by zero to all of `σ`.
///
/// Two points of the glued domain are equal iff these vectors are.
pub fn canonical_form(n: usize, p: &DomainPoint) -> Result<Vec<f64>> {
    let ms = chain_masks(n, &p.chain)?;
    check_weights(&p.t, ms.len())?;
    let mut out = vec![0.0; 2 * (n + 1)];
    for (m, w) in ms.iter().zip(&p.t) {
        let f = face_of(*m);
        for v in &f {
            out[*v] += w / f.len() as f64;
        }
    }
    for (&v, &r) in &p.r {
        if v > n {
            return Err(Error::OutOfDomain(format!("vertex {v} is not in the {n}-simplex")));
        }
        out[n + 1 + v] = r;
    }
    Ok(out)
}

/// Brute-force coverage of `[0, R]^{σ∖{Σ}}` on the grid of step `R/steps`:
/// each point must lie in `Q(σ, Σ, τ, R)` and in `Q(σ, Σ, τ, s, R)` for the
/// piece it is assigned.
pub fn q_cover_check(n: usize, pinned: usize, radius: f64, steps: usize) -> Result<CoverReport> {
    check_r(radius)?;
    check_pinned(n, pinned, full(n))?;
    if steps == 0 {
        return Err(Error::Precondition("grid needs at least one step".into()));
    }
    let free: Vec<usize> = (0..=n).filter(|v| *v != pinned).collect();
    let tol = 1e-12 * radius;
    let mut idx = vec![0usize; free.len()];
    let mut report = CoverReport { n, pinned, steps, points: 0, uncovered: 0, first_uncovered: None };
    loop {
        let mut x = vec![radius; n + 1];
        for (v, i) in free.iter().zip(&idx) {
            x[*v] = radius * *i as f64 / steps as f64;
        }
        let d = decompose_cube_point(n, pinned, radius, &x)?;
        let ok = in_q_tau(n, pinned, &d.tau, radius, &x, tol)? && in_piece(n, pinned, &d.tau, &d.chain, radius, &x, tol)?;
        report.points += 1;
        if !ok {
            report.uncovered += 1;
            report.first_uncovered.get_or_insert(x);
        }
        // Odometer increment.
        let mut j = 0;
        while j < idx.len() && idx[j] == steps {
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
        idx[j] += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(chain: Vec<Face>, t: Vec<f64>, r: &[(usize, f64)]) -> DomainPoint {
        DomainPoint { chain, t, r: r.iter().copied().collect() }
    }

    #[test]
    fn corners() {
        assert_eq!(boundary_corner(2, 0, &[0], 1.0).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(boundary_corner(2, 0, &[0, 1, 2], 1.0).unwrap(), vec![1.0, 1.0, 1.0]);
        assert_eq!(boundary_corner(2, 0, &[0, 2], 1.0).unwrap(), vec![1.0, 0.0, 1.0]);
        assert!(boundary_corner(2, 1, &[0, 2], 1.0).is_err());
    }

    #[test]
    fn decompositions() {
        let d = decompose_cube_point(2, 0, 1.0, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(d.tau, vec![0]);
        assert_eq!(d.chain, vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
        let d = decompose_cube_point(2, 0, 1.0, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(d.chain, vec![vec![0, 1, 2]]);
        let d = decompose_cube_point(3, 0, 1.0, &[1.0, 0.9, 0.3, 0.1]).unwrap();
        assert_eq!(d.tau, vec![0, 1]);
        assert_eq!(d.order, vec![2, 3]);
        assert_eq!(d.chain, vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn forward_examples() {
        let x = psi_forward(1, 1.0, &dp(vec![vec![0], vec![0, 1]], vec![0.5, 0.5], &[(0, 1.0)])).unwrap();
        assert_eq!(x, vec![1.0, 0.25]);
        let x = psi_forward(1, 1.0, &dp(vec![vec![0, 1]], vec![1.0], &[(0, 1.0), (1, 0.0)])).unwrap();
        assert_eq!(x, vec![1.0, 0.5]);
        assert!(psi_forward(1, 1.0, &dp(vec![vec![0, 1]], vec![1.0], &[(0, 0.5), (1, 0.0)])).is_err());
    }

    #[test]
    fn round_trip() {
        let p = dp(vec![vec![1], vec![1, 2], vec![0, 1, 2]], vec![0.2, 0.3, 0.5], &[(1, 2.0)]);
        let x = psi_forward(2, 2.0, &p).unwrap();
        let q = psi_inverse(2, 2.0, &x).unwrap();
        let (a, b) = (canonical_form(2, &p).unwrap(), canonical_form(2, &q).unwrap());
        assert!(a.iter().zip(&b).all(|(u, v)| (u - v).abs() < 1e-12), "{a:?} {b:?}");
    }

    #[test]
    fn shared_face_agrees() {
        let s = dp(vec![vec![0], vec![0, 1], vec![0, 1, 2]], vec![0.0, 0.4, 0.6], &[(0, 1.0)]);
        let s2 = dp(vec![vec![0, 1], vec![0, 1, 2]], vec![0.4, 0.6], &[(0, 1.0), (1, 0.0)]);
        assert_eq!(psi_forward(2, 1.0, &s).unwrap(), psi_forward(2, 1.0, &s2).unwrap());
        assert_eq!(canonical_form(2, &s).unwrap(), canonical_form(2, &s2).unwrap());
    }

    #[test]
    fn small_grids_are_covered() {
        for n in 0..=3 {
            for pinned in 0..=n {
                let r = q_cover_check(n, pinned, 1.0, 8).unwrap();
                assert_eq!(r.uncovered, 0, "{r:?}");
                assert_eq!(r.points, 9usize.pow(n as u32));
            }
        }
    }

    #[test]
    fn not_in_ext_boundary() {
        assert!(psi_inverse(1, 1.0, &[0.5, 0.5]).is_err());
        assert!(psi_inverse(1, 1.0, &[1.5, 0.5]).is_err());
    }
}
