use super::Simplex;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A finite downward-closed set of simplices, bucketed by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<V> {
    by_dim: Vec<BTreeSet<Simplex<V>>>,
}

impl<V: Ord + Clone + fmt::Debug> Default for Complex<V> {
    fn default() -> Self {
        Complex { by_dim: Vec::new() }
    }
}

impl<V: Ord + Clone + fmt::Debug> Complex<V> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The closure of the given simplices under taking faces.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex<V>>) -> Self {
        let mut k = Self::new();
        for s in simplices {
            k.insert(s);
        }
        k
    }

    /// Inserts a simplex together with all its faces.
    pub fn insert(&mut self, s: Simplex<V>) {
        if self.contains(&s) {
            return;
        }
        for f in s.faces() {
            let d = f.dim();
            while self.by_dim.len() <= d {
                self.by_dim.push(BTreeSet::new());
            }
            self.by_dim[d].insert(f);
        }
    }

    pub fn contains(&self, s: &Simplex<V>) -> bool {
        self.by_dim.get(s.dim()).is_some_and(|set| set.contains(s))
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.first().is_none_or(|s| s.is_empty())
    }

    /// Highest dimension present, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn simplices(&self, n: usize) -> impl Iterator<Item = &Simplex<V>> {
        self.by_dim.get(n).into_iter().flat_map(|s| s.iter())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex<V>> {
        self.by_dim.iter().flat_map(|s| s.iter())
    }

    pub fn count(&self, n: usize) -> usize {
        self.by_dim.get(n).map_or(0, |s| s.len())
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top).map(|n| self.count(n)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &V> {
        self.simplices(0).map(|s| &s.vertices()[0])
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex<V>> {
        let mut out = Vec::new();
        for s in self.all_simplices() {
            let covered = self
                .simplices(s.dim() + 1)
                .any(|t| s.is_face_of(t));
            if !covered {
                out.push(s.clone());
            }
        }
        out
    }

    /// The clique complex of a symmetric relation, truncated at `max_dim`.
    ///
    /// Each clique is grown only by vertices larger than its last vertex, so
    /// every simplex is generated exactly once.
    pub fn flag(
        vertices: impl IntoIterator<Item = V>,
        adjacent: impl Fn(&V, &V) -> bool,
        max_dim: usize,
    ) -> Self {
        let verts: BTreeSet<V> = vertices.into_iter().collect();
        let verts: Vec<V> = verts.into_iter().collect();
        let mut k = Self::new();
        if verts.is_empty() {
            return k;
        }
        let mut layer: Vec<Vec<usize>> = (0..verts.len()).map(|i| vec![i]).collect();
        k.by_dim.push(verts.iter().cloned().map(Simplex::vertex).collect());
        for _ in 0..max_dim {
            let mut next = Vec::new();
            for clique in &layer {
                let last = *clique.last().unwrap();
                for j in last + 1..verts.len() {
                    if clique.iter().all(|&i| adjacent(&verts[i], &verts[j])) {
                        let mut c = clique.clone();
                        c.push(j);
                        next.push(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            k.by_dim.push(
                next.iter()
                    .map(|c| Simplex::from_sorted(c.iter().map(|&i| verts[i].clone()).collect()))
                    .collect(),
            );
            layer = next;
        }
        k
    }

    /// Simplices all of whose vertices lie in `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(&V) -> bool) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex<V>>> = self
            .by_dim
            .iter()
            .map(|set| set.iter().filter(|s| s.vertices().iter().all(&keep)).cloned().collect())
            .collect();
        while by_dim.last().is_some_and(|s| s.is_empty()) {
            by_dim.pop();
        }
        Complex { by_dim }
    }

    /// The cone on this complex with a fresh apex.
    pub fn cone(&self, apex: V) -> Result<Self> {
        if self.contains(&Simplex::vertex(apex.clone())) {
            return Err(Error::Precondition(format!("cone apex {apex:?} is already a vertex")));
        }
        let mut k = self.clone();
        k.insert(Simplex::vertex(apex.clone()));
        for s in self.all_simplices() {
            k.insert(s.with_vertex(apex.clone())?);
        }
        Ok(k)
    }

    /// Every simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.all_simplices().all(|s| other.contains(s))
    }

    /// Checks downward closure; holds for every complex built through the API.
    pub fn is_closed(&self) -> bool {
        self.all_simplices().all(|s| s.facets().all(|(_, f)| self.contains(&f)))
    }

    /// Maps vertices through an injective relabeling.
    pub fn map_vertices<W: Ord + Clone + fmt::Debug>(&self, f: impl Fn(&V) -> W) -> Result<Complex<W>> {
        let mut k = Complex::new();
        for s in self.all_simplices() {
            k.insert(Simplex::new(s.vertices().iter().map(&f))?);
        }
        Ok(k)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc<V: Ord + Clone + fmt::Debug> {
    simplices: Vec<Simplex<V>>,
}

impl<V: Ord + Clone + fmt::Debug + Serialize> Serialize for Complex<V> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexDoc { simplices: self.all_simplices().cloned().collect() }.serialize(s)
    }
}

impl<'de, V> Deserialize<'de> for Complex<V>
where
    V: Ord + Clone + fmt::Debug + Deserialize<'de>,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDoc::<V>::deserialize(d)?;
        Ok(Complex::from_simplices(doc.simplices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> Complex<u32> {
        Complex::flag(0..4, |a, b| (a + 1) % 4 == *b || (b + 1) % 4 == *a, 5)
    }

    #[test]
    fn flag_of_four_cycle() {
        let k = cycle4();
        assert_eq!(k.f_vector(), vec![4, 4]);
    }

    #[test]
    fn flag_of_complete_relation() {
        let k = Complex::flag(0..3, |_, _| true, 2);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        let capped = Complex::flag(0..4, |_, _| true, 1);
        assert_eq!(capped.f_vector(), vec![4, 6]);
    }

    #[test]
    fn flag_of_empty_relation() {
        let k = Complex::flag(0..5, |_, _| false, 3);
        assert_eq!(k.f_vector(), vec![5]);
    }

    #[test]
    fn full_subcomplex_cases() {
        let tri = Complex::from_simplices([Simplex::new([0, 1, 2]).unwrap()]);
        assert_eq!(tri.full_subcomplex(|_| true), tri);
        assert!(tri.full_subcomplex(|_| false).is_empty());
        let edge = tri.full_subcomplex(|v| *v != 0);
        assert_eq!(edge, Complex::from_simplices([Simplex::new([1, 2]).unwrap()]));
    }

    #[test]
    fn cone_adds_apex_joins() {
        let c = cycle4().cone(9).unwrap();
        assert_eq!(c.f_vector(), vec![5, 8, 4]);
        assert!(c.is_closed());
        assert!(cycle4().cone(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = cycle4();
        let s = serde_json::to_string(&k).unwrap();
        let back: Complex<u32> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
        let closed: Complex<u32> = serde_json::from_str(r#"{"simplices":[[0,1,2]]}"#).unwrap();
        assert_eq!(closed.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn maximal_simplices_of_triangle_plus_edge() {
        let k = Complex::from_simplices([
            Simplex::new([0, 1, 2]).unwrap(),
            Simplex::new([2, 3]).unwrap(),
        ]);
        assert_eq!(k.maximal_simplices().len(), 2);
        assert_eq!(k.euler_characteristic(), 1);
    }
}
