use crate::{Error, Result};

/// `ρ₀(t) = ρ̄₀(t) / (ρ̄₀(t) + ρ̄₀(1 − t))` with `ρ̄₀(t) = e^{−1/t}`.
///
/// Evaluated as `1 / (1 + e^{1/t − 1/(1−t)})`, which avoids the underflow of
/// both exponentials near the ends.
pub fn rho0(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfDomain(format!("ρ₀ is defined on [0, 1], got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 / (1.0 + (1.0 / t - 1.0 / (1.0 - t)).exp()))
}

/// The cut-off on `([a, b], [a2, b2])`: zero at the ends, one on `[a2, b2]`,
/// affine copies of `ρ₀` in between.
pub fn cutoff(a: f64, b: f64, a2: f64, b2: f64, x: f64) -> Result<f64> {
    if !(a < a2 && a2 < b2 && b2 < b) {
        return Err(Error::Precondition(format!("need a < a' < b' < b, got {a}, {a2}, {b2}, {b}")));
    }
    if !(a..=b).contains(&x) {
        return Err(Error::OutOfDomain(format!("{x} is outside [{a}, {b}]")));
    }
    if x < a2 {
        rho0((x - a) / (a2 - a))
    } else if x <= b2 {
        Ok(1.0)
    } else {
        rho0(1.0 - (x - b2) / (b - b2))
    }
}

/// `ρ_λ`, the cut-off on `([2λ, 5λ], [3λ, 4λ])`.
pub fn warp_profile(lambda: f64, x: f64) -> Result<f64> {
    cutoff(2.0 * lambda, 5.0 * lambda, 3.0 * lambda, 4.0 * lambda, x)
}
