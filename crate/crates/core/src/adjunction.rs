//! The complex of surfaces of a catalog and its adjunction subcomplex.
//!
//! Both are flag complexes of the catalog's disjointness relation. The true
//! complexes have infinitely many vertices; everything here, homology
//! included, is relative to the finite catalog.

use crate::lattice::{Catalog, SurfaceReport};
use crate::simplicial::{Complex, Simplex};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Which of the catalog complexes a query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    /// Surfaces of square zero.
    Ambient,
    /// Surfaces of square zero violating the adjunction inequality.
    Adjunction,
    /// Surfaces of nonnegative square.
    NonNegative,
}

impl FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ambient" => Ok(Which::Ambient),
            "adjunction" => Ok(Which::Adjunction),
            "nonneg" | "non_negative" => Ok(Which::NonNegative),
            _ => Err(Error::Precondition(format!("unknown complex `{s}` (ambient, adjunction, nonneg)"))),
        }
    }
}

/// Why a surface is or is not a vertex of the adjunction complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    #[serde(flatten)]
    pub data: SurfaceReport,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdjunctionComplex {
    pub catalog_hash: String,
    pub max_dim: usize,
    pub ambient: Complex<String>,
    pub adjunction: Complex<String>,
    pub nonneg_ambient: Complex<String>,
    pub vertices: Vec<VertexReport>,
    /// Surfaces with nonzero square, excluded from both main complexes.
    pub nonzero_square: Vec<String>,
}

impl AdjunctionComplex {
    pub fn build(cat: &Catalog, max_dim: usize) -> Result<Self> {
        let mut zero = Vec::new();
        let mut nonneg = Vec::new();
        let mut violators = BTreeSet::new();
        let mut side = Vec::new();
        let mut vertices = Vec::new();
        for s in &cat.surfaces {
            let data = cat.surface_report(&s.id)?;
            let q = &data.self_intersection;
            let verdict = if !q.is_zero() {
                side.push(s.id.clone());
                if q.is_positive() {
                    nonneg.push(s.id.clone());
                }
                format!("excluded: square {q}")
            } else {
                zero.push(s.id.clone());
                nonneg.push(s.id.clone());
                if data.violator == Some(true) {
                    violators.insert(s.id.clone());
                    format!("violator: χ⁻ = {} < |c1·Σ| = {}", data.chi_minus, data.c1_pairing.abs())
                } else {
                    format!("satisfies: χ⁻ = {} ≥ |c1·Σ| = {}", data.chi_minus, data.c1_pairing.abs())
                }
            };
            vertices.push(VertexReport { data, verdict });
        }
        let rel = |a: &String, b: &String| cat.are_disjoint(a, b);
        let ambient = Complex::flag(zero, rel, max_dim);
        let adjunction = ambient.full_subcomplex(|v| violators.contains(v));
        let nonneg_ambient = Complex::flag(nonneg, rel, max_dim);
        Ok(AdjunctionComplex {
            catalog_hash: cat.hash(),
            max_dim,
            ambient,
            adjunction,
            nonneg_ambient,
            vertices,
            nonzero_square: side,
        })
    }

    pub fn complex(&self, which: Which) -> &Complex<String> {
        match which {
            Which::Ambient => &self.ambient,
            Which::Adjunction => &self.adjunction,
            Which::NonNegative => &self.nonneg_ambient,
        }
    }

    /// Clique test on the catalog, independent of the `max_dim` cap.
    pub fn is_simplex(&self, cat: &Catalog, ids: &[&str], which: Which) -> Result<bool> {
        is_simplex(cat, ids, which)
    }

    /// Tab-separated vertex table for terminals.
    pub fn vertices_report(&self) -> String {
        let mut out = String::from("id\tgenus\tchi-\tc1.S\tS.S\tverdict\n");
        for v in &self.vertices {
            let d = &v.data;
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                d.id, d.genus, d.chi_minus, d.c1_pairing, d.self_intersection, v.verdict
            ));
        }
        out
    }
}

/// Whether `ids` span a simplex of the chosen complex of `cat`.
pub fn is_simplex(cat: &Catalog, ids: &[&str], which: Which) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for id in ids {
        let q = cat.self_intersection(id)?;
        if !seen.insert(*id) {
            return Err(Error::RepeatedVertex(id.to_string()));
        }
        let ok = match which {
            Which::Ambient => q.is_zero(),
            Which::NonNegative => !q.is_negative(),
            Which::Adjunction => q.is_zero() && cat.is_violator(id)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    for (i, a) in ids.iter().enumerate() {
        for b in &ids[i + 1..] {
            if !cat.are_disjoint(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(!ids.is_empty())
}

/// `Simplex` over surface ids, rejecting repeats.
pub fn id_simplex<S: AsRef<str> + fmt::Debug>(ids: &[S]) -> Result<Simplex<String>> {
    Simplex::new(ids.iter().map(|s| s.as_ref().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_example_collection, ExampleKind, ExampleSpec, HomologyClass, SurfaceClass};

    fn ex46_k2() -> Catalog {
        make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 2, 2, 4)).unwrap().0
    }

    #[test]
    fn ex46_k2_is_a_square() {
        let a = AdjunctionComplex::build(&ex46_k2(), 4).unwrap();
        assert_eq!(a.adjunction.f_vector(), vec![4, 4]);
        assert_eq!(a.ambient, a.adjunction);
    }

    #[test]
    fn high_genus_surface_only_in_ambient() {
        let cat = ex46_k2();
        let class = HomologyClass::from_terms([("H1", 1), ("E1", -1)]);
        let cat = cat.with_surface(SurfaceClass::new("G", class, 5), &[]).unwrap();
        assert_eq!(cat.c1_pairing("G").unwrap(), num_bigint::BigInt::from(2));
        let a = AdjunctionComplex::build(&cat, 3).unwrap();
        assert!(a.ambient.contains(&Simplex::vertex("G".to_string())));
        assert!(!a.adjunction.contains(&Simplex::vertex("G".to_string())));
        assert!(a.adjunction.is_subcomplex_of(&a.ambient));
    }

    #[test]
    fn empty_catalog() {
        let cat = ex46_k2();
        let empty = Catalog::new(cat.manifold.clone(), cat.spinc.clone(), vec![], []).unwrap();
        let a = AdjunctionComplex::build(&empty, 3).unwrap();
        assert!(a.ambient.is_empty() && a.adjunction.is_empty());
    }

    #[test]
    fn simplex_queries() {
        let cat = ex46_k2();
        assert!(is_simplex(&cat, &["Sigma1+", "Sigma2-"], Which::Adjunction).unwrap());
        assert!(!is_simplex(&cat, &["Sigma1+", "Sigma1-"], Which::Adjunction).unwrap());
        assert!(is_simplex(&cat, &["Sigma2+"], Which::Ambient).unwrap());
        assert!(matches!(is_simplex(&cat, &["nope"], Which::Ambient), Err(Error::UnknownSurface(_))));
    }

    #[test]
    fn positive_squares_go_to_the_side_list() {
        let cat = ex46_k2()
            .with_surface(SurfaceClass::new("L", HomologyClass::basis("H1"), 0), &[])
            .unwrap();
        let a = AdjunctionComplex::build(&cat, 3).unwrap();
        assert_eq!(a.nonzero_square, vec!["L".to_string()]);
        assert!(a.nonneg_ambient.contains(&Simplex::vertex("L".to_string())));
        assert!(!a.ambient.contains(&Simplex::vertex("L".to_string())));
        assert!(a.vertices_report().contains("excluded: square 1"));
    }
}
