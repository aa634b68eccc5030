use super::snf::{smith_divisors, IntMatrix};
use super::Complex;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A finitely generated abelian group `ℤ^betti ⊕ ⊕ ℤ/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup { betti: 0, torsion: Vec::new() }
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            b => parts.push(format!("ℤ^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("ℤ/{t}"));
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

mod torsion_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "crate::int")] BigInt);

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| W(x.clone())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<W>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

/// Matrix of `∂_n : C_n → C_{n-1}`, rows indexed by (n-1)-simplices and
/// columns by n-simplices, both in the complex's canonical order.
pub fn boundary_matrix<V: Ord + Clone + fmt::Debug>(k: &Complex<V>, n: usize) -> IntMatrix {
    if n == 0 {
        return IntMatrix::zeros(0, k.count(0));
    }
    let rows: BTreeMap<_, usize> = k.simplices(n - 1).enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntMatrix::zeros(rows.len(), k.count(n));
    for (j, s) in k.simplices(n).enumerate() {
        for (sign, f) in s.facets() {
            m.set(rows[&f], j, BigInt::from(sign));
        }
    }
    m
}

/// `H_n(K; ℤ)` from the Smith forms of `∂_n` and `∂_{n+1}`.
pub fn homology<V: Ord + Clone + fmt::Debug>(k: &Complex<V>, n: usize) -> HomologyGroup {
    let rank_n = if n == 0 { 0 } else { smith_divisors(&boundary_matrix(k, n)).rank };
    let next = smith_divisors(&boundary_matrix(k, n + 1));
    HomologyGroup {
        betti: k.count(n) - rank_n - next.rank,
        torsion: next.divisors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Reduced homology: degree 0 loses one free summand on nonempty complexes.
pub fn reduced_homology<V: Ord + Clone + fmt::Debug>(k: &Complex<V>, n: usize) -> HomologyGroup {
    let mut h = homology(k, n);
    if n == 0 && !k.is_empty() {
        h.betti -= 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Simplex;

    fn complex(tris: &[[u32; 3]]) -> Complex<u32> {
        Complex::from_simplices(tris.iter().map(|t| Simplex::new(*t).unwrap()))
    }

    #[test]
    fn point() {
        let k = Complex::from_simplices([Simplex::vertex(0u32)]);
        assert_eq!(homology(&k, 0), HomologyGroup::free(1));
        assert!(homology(&k, 1).is_zero());
    }

    #[test]
    fn octahedron_is_a_sphere() {
        // Cross-polytope boundary: vertices ±e_i, antipodes never adjacent.
        let k = Complex::flag(0..6u32, |a, b| a / 2 != b / 2, 3);
        assert_eq!(k.f_vector(), vec![6, 12, 8]);
        assert_eq!(homology(&k, 0), HomologyGroup::free(1));
        assert!(homology(&k, 1).is_zero());
        assert_eq!(homology(&k, 2), HomologyGroup::free(1));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        let k = complex(&[
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ]);
        assert_eq!(k.f_vector(), vec![6, 15, 10]);
        let h1 = homology(&k, 1);
        assert_eq!(h1.betti, 0);
        assert_eq!(h1.torsion, vec![BigInt::from(2)]);
        assert!(homology(&k, 2).is_zero());
        assert_eq!(h1.to_string(), "ℤ/2");
    }

    #[test]
    fn circle_display() {
        let k = Complex::flag(0..4u32, |a, b| (a + 1) % 4 == *b || (b + 1) % 4 == *a, 3);
        assert_eq!(homology(&k, 1).to_string(), "ℤ");
        assert!(reduced_homology(&k, 0).is_zero());
    }
}
