use super::{fundamental_cycle, Sign, WallCrossingCollection};
use crate::adjunction::{is_simplex, Which};
use crate::lattice::Catalog;
use crate::simplicial::{cone_fill, Chain, Complex, OrientedSimplex};
use crate::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// `c · ⟨v_0, …, v_k⟩` with the vertices in the caller's order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingTerm {
    #[serde(with = "crate::int")]
    pub coeff: BigInt,
    pub simplex: Vec<String>,
}

/// A signed family of k-simplices meant to fill the fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingCollection {
    /// Complex the simplices must live in: square-zero surfaces by default,
    /// nonnegative squares for the positive-square variant.
    #[serde(default = "default_ambient")]
    pub ambient: Which,
    pub terms: Vec<BoundingTerm>,
}

fn default_ambient() -> Which {
    Which::Ambient
}

impl BoundingCollection {
    pub fn chain(&self) -> Result<Chain<String>> {
        let deg = self.terms.first().map_or(0, |t| t.simplex.len().saturating_sub(1));
        let mut w = Chain::zero(deg);
        for t in &self.terms {
            w.add_oriented(&OrientedSimplex::new(t.simplex.clone())?, t.coeff.clone())?;
        }
        Ok(w)
    }

    /// Every vertex used, minus the collection itself.
    pub fn members(&self, coll: &WallCrossingCollection) -> Vec<String> {
        let sigma: BTreeSet<String> = coll.ids().into_iter().collect();
        let used: BTreeSet<String> = self.terms.iter().flat_map(|t| t.simplex.iter().cloned()).collect();
        used.difference(&sigma).cloned().collect()
    }

    /// Removes the term at `index`; used to build negative controls.
    pub fn without_term(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.terms.remove(index);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingReport {
    pub catalog_hash: String,
    pub verified: bool,
    /// `+1` when `∂w = K(Σ)`, `-1` when `∂w = −K(Σ)`; the global orientation
    /// of the collection is a convention, so both count.
    pub orientation: Option<i32>,
    pub covers_collection: bool,
    pub members: Vec<String>,
    /// `∂w ∓ K(Σ)`, whichever is smaller; zero when verified.
    pub residual: Chain<String>,
}

/// Checks `∂(Σ c_λ⟨σ_λ⟩) = ±K(Σ)` exactly.
///
/// Each `σ_λ` must be a k-simplex of the stated complex of `cat`; anything
/// else is an input error rather than a failed verification.
pub fn verify_bounding(cat: &Catalog, coll: &WallCrossingCollection, b: &BoundingCollection) -> Result<BoundingReport> {
    let k = coll.k();
    for t in &b.terms {
        if t.simplex.len() != k + 1 {
            return Err(Error::DegreeMismatch { expected: k, got: t.simplex.len().saturating_sub(1) });
        }
        let ids: Vec<&str> = t.simplex.iter().map(String::as_str).collect();
        if !is_simplex(cat, &ids, b.ambient)? {
            return Err(Error::NotASimplex(format!("{:?} in the {:?} complex", t.simplex, b.ambient)));
        }
    }
    let z = fundamental_cycle(coll)?;
    let dw = if b.terms.is_empty() { Chain::zero(k - 1) } else { b.chain()?.boundary() };
    let plus = dw.clone() - z.clone();
    let minus = dw + z;
    let (orientation, residual) = if plus.is_zero() {
        (Some(1), plus)
    } else if minus.is_zero() {
        (Some(-1), minus)
    } else if plus.len() <= minus.len() {
        (None, plus)
    } else {
        (None, minus)
    };
    let used: BTreeSet<&String> = b.terms.iter().flat_map(|t| t.simplex.iter()).collect();
    let covers = coll.ids().iter().all(|id| used.contains(id));
    let members = b.members(coll);
    Ok(BoundingReport {
        catalog_hash: cat.hash(),
        verified: orientation.is_some() && covers && !members.is_empty(),
        orientation,
        covers_collection: covers,
        members,
        residual,
    })
}

/// The cone on `K(Σ)` from a surface disjoint from every member.
pub fn cone_bounding(cat: &Catalog, coll: &WallCrossingCollection, apex: &str) -> Result<BoundingCollection> {
    let q = cat.self_intersection(apex)?;
    let ambient = if q == BigInt::from(0) { Which::Ambient } else { Which::NonNegative };
    let mut verts = coll.ids();
    verts.push(apex.to_string());
    let k = Complex::flag(verts, |a, b| cat.are_disjoint(a, b), coll.k());
    let w = cone_fill(&k, &fundamental_cycle(coll)?, &apex.to_string())?;
    Ok(BoundingCollection {
        ambient,
        terms: w
            .terms()
            .map(|(s, c)| BoundingTerm { coeff: c.clone(), simplex: s.vertices().to_vec() })
            .collect(),
    })
}

/// For `k = 2`: six triangles through `S` (avoiding `Σ_1^±, Σ_2^+`) and `S'`
/// (avoiding `Σ_1^±, Σ_2^-`), with `S ∩ S' = ∅`.
pub fn pair_bounding(coll: &WallCrossingCollection, s: &str, s2: &str) -> Result<BoundingCollection> {
    if coll.k() != 2 {
        return Err(Error::Precondition(format!("the two-surface filling needs k = 2, got {}", coll.k())));
    }
    let p1 = coll.surface(1, Sign::Plus);
    let m1 = coll.surface(1, Sign::Minus);
    let p2 = coll.surface(2, Sign::Plus);
    let m2 = coll.surface(2, Sign::Minus);
    let tri = |a: &str, b: &str, c: &str| BoundingTerm {
        coeff: BigInt::from(1),
        simplex: vec![a.to_string(), b.to_string(), c.to_string()],
    };
    Ok(BoundingCollection {
        ambient: Which::Ambient,
        terms: vec![
            tri(p1, p2, s),
            tri(p2, m1, s),
            tri(m1, s2, s),
            tri(m1, m2, s2),
            tri(m2, p1, s2),
            tri(p1, s, s2),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_example_collection, ExampleKind, ExampleSpec, HomologyClass, SurfaceClass};
    use num_traits::Zero;

    fn k2() -> (Catalog, WallCrossingCollection) {
        make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 2, 2, 4)).unwrap()
    }

    fn with_cone(cat: &Catalog) -> Catalog {
        let all = ["Sigma1+", "Sigma1-", "Sigma2+", "Sigma2-"];
        cat.with_surface(SurfaceClass::new("S", HomologyClass::zero(), 0), &all).unwrap()
    }

    fn with_pair(cat: &Catalog) -> Catalog {
        cat.with_surface(SurfaceClass::new("S", HomologyClass::zero(), 0), &["Sigma1+", "Sigma1-", "Sigma2+"])
            .unwrap()
            .with_surface(SurfaceClass::new("T", HomologyClass::zero(), 0), &["Sigma1+", "Sigma1-", "Sigma2-", "S"])
            .unwrap()
    }

    #[test]
    fn single_cone_bounds() {
        let (cat, coll) = k2();
        let cat = with_cone(&cat);
        let b = cone_bounding(&cat, &coll, "S").unwrap();
        let r = verify_bounding(&cat, &coll, &b).unwrap();
        assert!(r.verified);
        assert_eq!(r.members, vec!["S".to_string()]);
    }

    #[test]
    fn pair_bounds_with_positive_orientation() {
        let (cat, coll) = k2();
        let cat = with_pair(&cat);
        let b = pair_bounding(&coll, "S", "T").unwrap();
        let r = verify_bounding(&cat, &coll, &b).unwrap();
        assert!(r.verified, "{}", r.residual);
        assert_eq!(r.orientation, Some(1));
        assert_eq!(r.members, vec!["S".to_string(), "T".to_string()]);
    }

    #[test]
    fn dropping_a_triangle_leaves_a_residual() {
        let (cat, coll) = k2();
        let cat = with_pair(&cat);
        let b = pair_bounding(&coll, "S", "T").unwrap().without_term(2);
        let r = verify_bounding(&cat, &coll, &b).unwrap();
        assert!(!r.verified);
        assert!(!r.residual.is_zero());
    }

    #[test]
    fn pair_filling_needs_the_relations() {
        let (cat, coll) = k2();
        let cat = with_cone(&cat);
        let cat = cat
            .with_surface(SurfaceClass::new("T", HomologyClass::zero(), 0), &["Sigma1+"])
            .unwrap();
        let b = pair_bounding(&coll, "S", "T").unwrap();
        assert!(matches!(verify_bounding(&cat, &coll, &b), Err(Error::NotASimplex(_))));
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let (cat, coll) = k2();
        let b = BoundingCollection {
            ambient: Which::Ambient,
            terms: vec![BoundingTerm { coeff: 1.into(), simplex: vec!["Sigma1+".into(), "Sigma2+".into()] }],
        };
        assert!(matches!(verify_bounding(&cat, &coll, &b), Err(Error::DegreeMismatch { .. })));
        let zero = BoundingCollection { ambient: Which::Ambient, terms: vec![] };
        let r = verify_bounding(&cat, &coll, &zero).unwrap();
        assert!(!r.verified);
        assert!(r.residual.len() == 4 && r.residual.coeff(r.residual.support().next().unwrap()) != BigInt::zero());
    }
}
