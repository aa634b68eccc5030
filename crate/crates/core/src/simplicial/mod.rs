//! Abstract simplicial complexes with integer chain algebra.
//!
//! Simplices are stored in canonical form (vertices strictly increasing);
//! orientations supplied by callers are normalized on the way in, carrying
//! the permutation sign into the coefficient.

mod chain;
mod complex;
mod fill;
mod homology;
pub mod snf;
mod subdivision;

pub use chain::{Chain, Cochain};
pub use complex::Complex;
pub use fill::{cone_fill, prism_fill};
pub use homology::{boundary_matrix, homology, reduced_homology, HomologyGroup};
pub use subdivision::barycentric_subdivision;

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A nonempty finite set of vertices in increasing order.
///
/// Simplices compare first by size and then lexicographically, so a strictly
/// increasing chain of faces is automatically sorted by inclusion. This is
/// what makes [`Simplex::simin`] and [`Simplex::simax`] cheap on the
/// vertices of a barycentric subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Simplex<V>(Vec<V>);

impl<V: Ord> Ord for Simplex<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<V: Ord> PartialOrd for Simplex<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Ord + Clone + fmt::Debug> Simplex<V> {
    /// Builds a simplex from vertices in any order; repeats are rejected.
    pub fn new(vertices: impl IntoIterator<Item = V>) -> Result<Self> {
        let mut v: Vec<V> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::Precondition("a simplex needs at least one vertex".into()));
        }
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(format!("{:?}", w[0])));
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: V) -> Self {
        Simplex(vec![v])
    }

    /// Trusts the caller that `v` is nonempty and strictly increasing.
    pub(crate) fn from_sorted(v: Vec<V>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[V] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<V> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &V) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_face_of(&self, other: &Self) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    /// Codimension-one faces with their boundary signs `(-1)^i`.
    pub fn facets(&self) -> impl Iterator<Item = (i32, Simplex<V>)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(f))
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex<V>> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n.min(20)) - 1);
        for mask in 1u64..(1u64 << n) {
            let f: Vec<V> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.0[i].clone())
                .collect();
            out.push(Simplex(f));
        }
        out
    }

    pub fn with_vertex(&self, v: V) -> Result<Self> {
        Simplex::new(self.0.iter().cloned().chain(std::iter::once(v)))
    }

    pub fn without_vertex(&self, v: &V) -> Option<Self> {
        let rest: Vec<V> = self.0.iter().filter(|w| *w != v).cloned().collect();
        (!rest.is_empty() && rest.len() < self.0.len()).then_some(Simplex(rest))
    }

    pub fn position(&self, v: &V) -> Option<usize> {
        self.0.binary_search(v).ok()
    }
}

impl<'de, V> Deserialize<'de> for Simplex<V>
where
    V: Deserialize<'de> + Ord + Clone + fmt::Debug,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<V>::deserialize(d)?;
        let s = Simplex::new(raw.clone()).map_err(serde::de::Error::custom)?;
        if s.0 != raw {
            return Err(serde::de::Error::custom(
                "simplex vertices must be listed in increasing order (use an oriented term for other orders)",
            ));
        }
        Ok(s)
    }
}

impl<V: fmt::Display> fmt::Display for Simplex<V> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

/// Vertices of a barycentric subdivision are simplices of the original
/// complex; a simplex of the subdivision is a strict chain of faces.
impl<V: Ord + Clone + fmt::Debug> Simplex<Simplex<V>> {
    /// The smallest face in the chain.
    pub fn simin(&self) -> &Simplex<V> {
        &self.0[0]
    }

    /// The largest face in the chain.
    pub fn simax(&self) -> &Simplex<V> {
        &self.0[self.0.len() - 1]
    }

    /// True when consecutive entries are strict face inclusions.
    pub fn is_chain(&self) -> bool {
        self.0.windows(2).all(|w| w[0].is_face_of(&w[1]) && w[0] != w[1])
    }
}

/// An ordered vertex list; equals `sign` times its canonical simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSimplex<V> {
    vertices: Vec<V>,
}

impl<V: Ord + Clone + fmt::Debug> OrientedSimplex<V> {
    pub fn new(vertices: Vec<V>) -> Result<Self> {
        Simplex::new(vertices.clone())?;
        Ok(OrientedSimplex { vertices })
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    /// Splits into the permutation sign and the canonical simplex.
    pub fn normalize(&self) -> (i32, Simplex<V>) {
        let v = &self.vertices;
        let mut inversions = 0usize;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inversions += 1;
                }
            }
        }
        let mut sorted = v.clone();
        sorted.sort();
        (if inversions % 2 == 0 { 1 } else { -1 }, Simplex(sorted))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_repeats() {
        let s = Simplex::new(["c", "a", "b"]).unwrap();
        assert_eq!(s.vertices(), &["a", "b", "c"]);
        assert!(matches!(Simplex::new(["a", "a"]), Err(Error::RepeatedVertex(_))));
        assert!(Simplex::<u32>::new([]).is_err());
    }

    #[test]
    fn ordering_is_by_size_first() {
        let big = Simplex::new([0, 1]).unwrap();
        let small = Simplex::vertex(5);
        assert!(small < big);
    }

    #[test]
    fn permutation_sign() {
        let o = OrientedSimplex::new(vec![2, 0, 1]).unwrap();
        assert_eq!(o.normalize().0, 1);
        let o = OrientedSimplex::new(vec![1, 0, 2]).unwrap();
        assert_eq!(o.normalize().0, -1);
    }

    #[test]
    fn facets_carry_alternating_signs() {
        let s = Simplex::new([0, 1, 2]).unwrap();
        let f: Vec<_> = s.facets().collect();
        assert_eq!(f[0], (1, Simplex::new([1, 2]).unwrap()));
        assert_eq!(f[1], (-1, Simplex::new([0, 2]).unwrap()));
        assert_eq!(f[2], (1, Simplex::new([0, 1]).unwrap()));
        assert_eq!(Simplex::vertex(0).facets().count(), 0);
        assert_eq!(s.faces().len(), 7);
    }

    #[test]
    fn chain_extremes() {
        let a = Simplex::vertex(0);
        let e = Simplex::new([0, 1]).unwrap();
        let t = Simplex::new([0, 1, 2]).unwrap();
        let c = Simplex::new([t.clone(), a.clone(), e]).unwrap();
        assert_eq!(c.simin(), &a);
        assert_eq!(c.simax(), &t);
        assert!(c.is_chain());
    }

    #[test]
    fn deserialize_rejects_unsorted() {
        assert!(serde_json::from_str::<Simplex<u32>>("[0,2,5]").is_ok());
        assert!(serde_json::from_str::<Simplex<u32>>("[2,0]").is_err());
    }
}
