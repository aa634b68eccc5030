use super::{Complex, OrientedSimplex, Simplex};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A finitely supported integer combination of canonically oriented
/// n-simplices. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<V> {
    deg: usize,
    terms: BTreeMap<Simplex<V>, BigInt>,
}

impl<V: Ord + Clone + fmt::Debug> Chain<V> {
    pub fn zero(deg: usize) -> Self {
        Chain { deg, terms: BTreeMap::new() }
    }

    pub fn simplex(s: Simplex<V>) -> Self {
        let mut c = Self::zero(s.dim());
        c.terms.insert(s, BigInt::one());
        c
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex<V>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &Simplex<V>) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex<V>> {
        self.terms.keys()
    }

    /// Adds `coeff` times a canonical simplex.
    pub fn add_term(&mut self, s: Simplex<V>, coeff: BigInt) -> Result<()> {
        if s.dim() != self.deg {
            return Err(Error::DegreeMismatch { expected: self.deg, got: s.dim() });
        }
        self.add_unchecked(s, coeff);
        Ok(())
    }

    /// Adds `coeff` times an ordered simplex, normalizing the orientation.
    pub fn add_oriented(&mut self, o: &OrientedSimplex<V>, coeff: BigInt) -> Result<()> {
        let (sign, s) = o.normalize();
        self.add_term(s, coeff * sign)
    }

    pub(crate) fn add_unchecked(&mut self, s: Simplex<V>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.deg);
        for (s, c) in &self.terms {
            out.add_unchecked(s.clone(), c * k);
        }
        out
    }

    /// The alternating face sum. `C_{-1}` is zero, which is returned as the
    /// empty degree-0 chain; use [`Chain::augmentation`] for the reduced
    /// complex.
    pub fn boundary(&self) -> Self {
        let mut out = Self::zero(self.deg.saturating_sub(1));
        if self.deg == 0 {
            return out;
        }
        for (s, c) in &self.terms {
            for (sign, f) in s.facets() {
                out.add_unchecked(f, c * sign);
            }
        }
        out
    }

    /// Sum of coefficients of a 0-chain; zero for higher degrees.
    pub fn augmentation(&self) -> BigInt {
        if self.deg != 0 {
            return BigInt::zero();
        }
        self.terms.values().sum()
    }

    /// Zero boundary, with the augmentation standing in for it in degree 0.
    pub fn is_cycle(&self) -> bool {
        if self.deg == 0 {
            self.augmentation().is_zero()
        } else {
            self.boundary().is_zero()
        }
    }

    pub fn is_supported_in(&self, k: &Complex<V>) -> bool {
        self.terms.keys().all(|s| k.contains(s))
    }

    fn combine(mut self, rhs: &Self, sign: i32) -> Self {
        assert_eq!(self.deg, rhs.deg, "adding chains of different degree");
        for (s, c) in &rhs.terms {
            self.add_unchecked(s.clone(), c * sign);
        }
        self
    }
}

impl<V: Ord + Clone + fmt::Debug> Add for Chain<V> {
    type Output = Chain<V>;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, 1)
    }
}

impl<V: Ord + Clone + fmt::Debug> Sub for Chain<V> {
    type Output = Chain<V>;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, -1)
    }
}

impl<V: Ord + Clone + fmt::Debug> Neg for Chain<V> {
    type Output = Chain<V>;
    fn neg(self) -> Self {
        self.scale(&BigInt::from(-1))
    }
}

impl<V: fmt::Display + Ord + Clone + fmt::Debug> fmt::Display for Chain<V> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term<V> {
    simplex: Vec<V>,
    #[serde(with = "crate::int")]
    coeff: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ChainDoc<V> {
    deg: usize,
    terms: Vec<Term<V>>,
}

impl<V: Ord + Clone + fmt::Debug + Serialize> Serialize for Chain<V> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainDoc {
            deg: self.deg,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| Term { simplex: k.vertices().to_vec(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

/// Terms may list vertices in any order; each is normalized with its
/// permutation sign, and repeated simplices are summed.
impl<'de, V> Deserialize<'de> for Chain<V>
where
    V: Ord + Clone + fmt::Debug + Deserialize<'de>,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = ChainDoc::<V>::deserialize(d)?;
        let mut c = Chain::zero(doc.deg);
        for t in doc.terms {
            let o = OrientedSimplex::new(t.simplex).map_err(D::Error::custom)?;
            c.add_oriented(&o, t.coeff).map_err(D::Error::custom)?;
        }
        Ok(c)
    }
}

/// An integer-valued function on the n-simplices of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<V> {
    deg: usize,
    values: BTreeMap<Simplex<V>, BigInt>,
}

impl<V: Ord + Clone + fmt::Debug> Cochain<V> {
    pub fn zero(deg: usize) -> Self {
        Cochain { deg, values: BTreeMap::new() }
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn set(&mut self, s: Simplex<V>, v: BigInt) -> Result<()> {
        if s.dim() != self.deg {
            return Err(Error::DegreeMismatch { expected: self.deg, got: s.dim() });
        }
        if v.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
        Ok(())
    }

    pub fn value(&self, s: &Simplex<V>) -> BigInt {
        self.values.get(s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `(δc)(τ) = Σ (-1)^i c(τ without its i-th vertex)` over the
    /// (n+1)-simplices of `k`.
    pub fn coboundary(&self, k: &Complex<V>) -> Self {
        let mut out = Self::zero(self.deg + 1);
        for t in k.simplices(self.deg + 1) {
            let mut v = BigInt::zero();
            for (sign, f) in t.facets() {
                if let Some(x) = self.values.get(&f) {
                    v += x * sign;
                }
            }
            if !v.is_zero() {
                out.values.insert(t.clone(), v);
            }
        }
        out
    }

    /// The Kronecker pairing `⟨c, z⟩`.
    pub fn evaluate(&self, z: &Chain<V>) -> Result<BigInt> {
        if z.deg() != self.deg {
            return Err(Error::DegreeMismatch { expected: self.deg, got: z.deg() });
        }
        Ok(z.terms().map(|(s, c)| c * self.value(s)).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex<u32> {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn boundary_of_edge() {
        let b = Chain::simplex(s(&[0, 1])).boundary();
        assert_eq!(b.coeff(&s(&[1])), BigInt::from(1));
        assert_eq!(b.coeff(&s(&[0])), BigInt::from(-1));
    }

    #[test]
    fn boundary_squared_vanishes_on_triangle() {
        let c = Chain::simplex(s(&[0, 1, 2]));
        assert_eq!(c.boundary().len(), 3);
        assert!(c.boundary().boundary().is_zero());
    }

    #[test]
    fn oriented_terms_normalize() {
        let mut c = Chain::zero(1);
        c.add_oriented(&OrientedSimplex::new(vec![1, 0]).unwrap(), BigInt::from(1)).unwrap();
        c.add_oriented(&OrientedSimplex::new(vec![0, 1]).unwrap(), BigInt::from(1)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn coboundary_on_edge() {
        let k = Complex::from_simplices([s(&[0, 1])]);
        let mut c = Cochain::zero(0);
        c.set(s(&[0]), BigInt::from(3)).unwrap();
        c.set(s(&[1]), BigInt::from(10)).unwrap();
        let d = c.coboundary(&k);
        assert_eq!(d.value(&s(&[0, 1])), BigInt::from(7));
    }

    #[test]
    fn evaluate_checks_degree() {
        let c = Cochain::<u32>::zero(1);
        assert!(matches!(
            c.evaluate(&Chain::simplex(s(&[0]))),
            Err(Error::DegreeMismatch { expected: 1, got: 0 })
        ));
    }

    #[test]
    fn json_accepts_any_vertex_order() {
        let c: Chain<String> =
            serde_json::from_str(r#"{"deg":1,"terms":[{"simplex":["b","a"],"coeff":2}]}"#).unwrap();
        let e = Simplex::new(["a".to_string(), "b".to_string()]).unwrap();
        assert_eq!(c.coeff(&e), BigInt::from(-2));
        let back: Chain<String> = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn display() {
        let mut c = Chain::zero(1);
        c.add_term(s(&[0, 1]), BigInt::from(1)).unwrap();
        c.add_term(s(&[1, 2]), BigInt::from(-2)).unwrap();
        assert_eq!(c.to_string(), "<0,1> - 2<1,2>");
    }
}
