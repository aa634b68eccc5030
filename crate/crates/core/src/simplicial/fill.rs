//! Explicit null-homotopies: the cone construction and the prism that
//! swaps a vertex for a parallel copy.

use super::{Chain, Complex, OrientedSimplex};
use crate::{Error, Result};
use std::fmt;

/// Fills an n-cycle by coning it off from `apex`.
///
/// Every term `a⟨σ⟩` contributes `a⟨apex, σ⟩`. In degree 0 the construction
/// still works when the augmentation vanishes, so that case is accepted too.
pub fn cone_fill<V: Ord + Clone + fmt::Debug>(k: &Complex<V>, z: &Chain<V>, apex: &V) -> Result<Chain<V>> {
    if !z.is_cycle() {
        return Err(Error::NotACycle);
    }
    let mut w = Chain::zero(z.deg() + 1);
    for (s, a) in z.terms() {
        if s.contains(apex) {
            return Err(Error::NotJoinable(format!("apex {apex:?} is a vertex of {:?}", s.vertices())));
        }
        let mut ordered = vec![apex.clone()];
        ordered.extend(s.vertices().iter().cloned());
        let (sign, tau) = OrientedSimplex::new(ordered)?.normalize();
        if !k.contains(&tau) {
            return Err(Error::NotJoinable(format!(
                "{:?} joined with {apex:?} is not a simplex",
                s.vertices()
            )));
        }
        w.add_term(tau, a * sign)?;
    }
    Ok(w)
}

/// Replaces `v` by its parallel copy `copy` in a cycle.
///
/// Returns `(z', w)` with `z'` the cycle after the swap and `∂w = z − z'`.
/// For each term through `v`, written as `(-1)^p⟨v, rest⟩`, the prism
/// contributes `(-1)^p⟨copy, v, rest⟩`.
pub fn prism_fill<V: Ord + Clone + fmt::Debug>(
    k: &Complex<V>,
    z: &Chain<V>,
    v: &V,
    copy: &V,
) -> Result<(Chain<V>, Chain<V>)> {
    if !z.is_cycle() {
        return Err(Error::NotACycle);
    }
    let mut z2 = Chain::zero(z.deg());
    let mut w = Chain::zero(z.deg() + 1);
    for (s, a) in z.terms() {
        if s.contains(copy) {
            return Err(Error::NotJoinable(format!(
                "copy {copy:?} already occurs in {:?}",
                s.vertices()
            )));
        }
        let Some(p) = s.position(v) else {
            z2.add_term(s.clone(), a.clone())?;
            continue;
        };
        let coeff = if p % 2 == 0 { a.clone() } else { -a };
        let rest: Vec<V> = s.vertices().iter().filter(|x| *x != v).cloned().collect();
        let mut prism = vec![copy.clone(), v.clone()];
        prism.extend(rest.iter().cloned());
        let (sign, tau) = OrientedSimplex::new(prism)?.normalize();
        if !k.contains(&tau) {
            return Err(Error::NotJoinable(format!(
                "{copy:?} is not joinable with {:?}",
                s.vertices()
            )));
        }
        w.add_term(tau, &coeff * sign)?;
        let mut swapped = vec![copy.clone()];
        swapped.extend(rest);
        let (sign, moved) = OrientedSimplex::new(swapped)?.normalize();
        z2.add_term(moved, coeff * sign)?;
    }
    Ok((z2, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::simplicial::Simplex;

    fn s(v: &[u32]) -> Simplex<u32> {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn square_cycle() -> Chain<u32> {
        let mut z = Chain::zero(1);
        for (e, c) in [([0, 1], 1), ([1, 2], 1), ([2, 3], 1), ([0, 3], -1)] {
            z.add_term(s(&e), BigInt::from(c)).unwrap();
        }
        assert!(z.is_cycle());
        z
    }

    #[test]
    fn cone_over_triangle_boundary() {
        let k = Complex::from_simplices([s(&[0, 1, 2, 3])]);
        let z = Chain::simplex(s(&[0, 1, 2])).boundary();
        let w = cone_fill(&k, &z, &3).unwrap();
        assert_eq!(w.boundary(), z);
    }

    #[test]
    fn cone_of_zero_is_zero() {
        let k = Complex::from_simplices([s(&[0])]);
        assert!(cone_fill(&k, &Chain::zero(2), &0).unwrap().is_zero());
    }

    #[test]
    fn cone_rejects_non_cycles_and_bad_apex() {
        let k = Complex::from_simplices([s(&[0, 1, 2])]);
        assert!(matches!(cone_fill(&k, &Chain::simplex(s(&[0, 1])), &2), Err(Error::NotACycle)));
        let z = Chain::simplex(s(&[0])) - Chain::simplex(s(&[1]));
        assert!(matches!(cone_fill(&k, &z, &7), Err(Error::NotJoinable(_))));
        assert!(matches!(cone_fill(&k, &z, &0), Err(Error::NotJoinable(_))));
        let w = cone_fill(&k, &z, &2).unwrap();
        assert_eq!(w.boundary(), z);
    }

    #[test]
    fn prism_on_square() {
        // Vertex 4 copies vertex 0: adjacent to 0, 1, 3 and to nothing else.
        let k = Complex::from_simplices([s(&[0, 1, 4]), s(&[0, 3, 4]), s(&[1, 2]), s(&[2, 3])]);
        let z = square_cycle();
        let (z2, w) = prism_fill(&k, &z, &0, &4).unwrap();
        assert!(z2.is_cycle());
        assert_eq!(w.boundary(), z.clone() - z2.clone());
        assert!(z2.support().all(|t| !t.contains(&0)));
    }

    #[test]
    fn prism_avoiding_vertex_is_trivial() {
        let k = Complex::from_simplices([s(&[0, 1]), s(&[1, 2]), s(&[2, 3]), s(&[0, 3])]);
        let (z2, w) = prism_fill(&k, &square_cycle(), &9, &10).unwrap();
        assert_eq!(z2, square_cycle());
        assert!(w.is_zero());
    }
}
