//! Exact arithmetic on second homology of connected sums of ±CP² with
//! optional opaque summands, spin^c structures and surface catalogs.

mod catalog;
mod examples;

pub use catalog::{is_adjunction_violator, Catalog, SurfaceClass, SurfaceReport};
pub use examples::{make_example_collection, ExampleKind, ExampleSpec};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One generator of the diagonal part of the intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub square: i64,
}

/// A summand known only through its aggregate invariants, such as K3.
///
/// `c1_square` belongs to the spin^c structure restricted to this summand;
/// `sw_seed` is its Seiberg–Witten invariant when the caller knows it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateSummand {
    pub name: String,
    pub b_plus: u64,
    pub b_minus: u64,
    pub euler: i64,
    pub signature: i64,
    #[serde(with = "crate::int")]
    pub c1_square: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_int")]
    pub sw_seed: Option<BigInt>,
}

impl AggregateSummand {
    /// The K3 surface with its canonical (spin) structure, invariant 1.
    pub fn k3() -> Self {
        AggregateSummand {
            name: "K3".into(),
            b_plus: 3,
            b_minus: 19,
            euler: 24,
            signature: -16,
            c1_square: BigInt::zero(),
            sw_seed: Some(BigInt::from(1)),
        }
    }
}

mod opt_int {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "crate::int")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(W).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

/// A closed oriented 4-manifold described by its intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldModel {
    #[serde(default)]
    pub name: String,
    pub basis: Vec<BasisElement>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aggregate_summands: Vec<AggregateSummand>,
    pub euler: i64,
    pub signature: i64,
}

impl ManifoldModel {
    /// `k CP² # l (−CP²)` with basis `H1..Hk, E1..El`.
    pub fn rational(k: usize, l: usize) -> Self {
        let mut basis: Vec<BasisElement> =
            (1..=k).map(|i| BasisElement { label: format!("H{i}"), square: 1 }).collect();
        basis.extend((1..=l).map(|j| BasisElement { label: format!("E{j}"), square: -1 }));
        ManifoldModel {
            name: format!("{k}CP2#{l}(-CP2)"),
            basis,
            aggregate_summands: Vec::new(),
            euler: 2 + k as i64 + l as i64,
            signature: k as i64 - l as i64,
        }
    }

    /// A manifold with no diagonal part, only one opaque summand.
    pub fn opaque(summand: AggregateSummand) -> Self {
        ManifoldModel {
            name: summand.name.clone(),
            basis: Vec::new(),
            euler: summand.euler,
            signature: summand.signature,
            aggregate_summands: vec![summand],
        }
    }

    pub fn k3() -> Self {
        Self::opaque(AggregateSummand::k3())
    }

    /// The 4-sphere: unit for connected sum.
    pub fn sphere() -> Self {
        ManifoldModel {
            name: "S4".into(),
            basis: Vec::new(),
            aggregate_summands: Vec::new(),
            euler: 2,
            signature: 0,
        }
    }

    /// Checks squares, label uniqueness and the signature bookkeeping.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for b in &self.basis {
            if b.square != 1 && b.square != -1 {
                return Err(Error::BadSquare { label: b.label.clone(), square: b.square });
            }
            if !seen.insert(b.label.as_str()) {
                return Err(Error::LabelCollision(b.label.clone()));
            }
        }
        let expected = self.b_plus() as i64 - self.b_minus() as i64;
        if self.signature != expected {
            return Err(Error::InconsistentSignature { signature: self.signature, expected });
        }
        Ok(())
    }

    pub fn square_of(&self, label: &str) -> Option<i64> {
        self.basis.iter().find(|b| b.label == label).map(|b| b.square)
    }

    pub fn b_plus(&self) -> u64 {
        self.basis.iter().filter(|b| b.square > 0).count() as u64
            + self.aggregate_summands.iter().map(|a| a.b_plus).sum::<u64>()
    }

    pub fn b_minus(&self) -> u64 {
        self.basis.iter().filter(|b| b.square < 0).count() as u64
            + self.aggregate_summands.iter().map(|a| a.b_minus).sum::<u64>()
    }

    /// The diagonal intersection form `Σ a_x b_x (x·x)`.
    pub fn pairing(&self, a: &HomologyClass, b: &HomologyClass) -> Result<BigInt> {
        let squares: BTreeMap<&str, i64> = self.basis.iter().map(|e| (e.label.as_str(), e.square)).collect();
        for l in a.0.keys().chain(b.0.keys()) {
            if !squares.contains_key(l.as_str()) {
                return Err(Error::MismatchedBasis(l.clone()));
            }
        }
        let mut sum = BigInt::zero();
        for (l, x) in &a.0 {
            if let Some(y) = b.0.get(l) {
                sum += x * y * squares[l.as_str()];
            }
        }
        Ok(sum)
    }

    pub fn self_intersection(&self, a: &HomologyClass) -> Result<BigInt> {
        self.pairing(a, a)
    }

    fn fresh_labels(&self, count: usize) -> Vec<String> {
        let used: BTreeSet<&str> = self.basis.iter().map(|b| b.label.as_str()).collect();
        (1..)
            .map(|n| format!("B{n}"))
            .filter(|l| !used.contains(l.as_str()))
            .take(count)
            .collect()
    }
}

/// An integral class, stored as its coefficients on basis labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct HomologyClass(#[serde(with = "crate::int::map")] BTreeMap<String, BigInt>);

impl<'de> Deserialize<'de> for HomologyClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(HomologyClass(crate::int::map::deserialize(d)?).normalized())
    }
}

impl HomologyClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<L: Into<String>, C: Into<BigInt>>(terms: impl IntoIterator<Item = (L, C)>) -> Self {
        let mut h = Self::zero();
        for (l, c) in terms {
            h.add_term(l, c.into());
        }
        h
    }

    pub fn basis(label: impl Into<String>) -> Self {
        Self::from_terms([(label.into(), 1)])
    }

    pub fn add_term(&mut self, label: impl Into<String>, c: BigInt) {
        let label = label.into();
        let v = self.0.remove(&label).unwrap_or_default() + c;
        if !v.is_zero() {
            self.0.insert(label, v);
        }
    }

    pub fn coeff(&self, label: &str) -> BigInt {
        self.0.get(label).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &BigInt)> {
        self.0.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.0 {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self::from_terms(self.0.iter().map(|(l, c)| (l.clone(), c * k)))
    }

    /// Drops zero entries that a deserialized map may contain.
    fn normalized(self) -> Self {
        Self::from_terms(self.0)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != BigInt::from(1) {
                write!(f, "{mag}")?;
            }
            f.write_str(l)?;
        }
        Ok(())
    }
}

/// A spin^c structure recorded through its first Chern class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCStructure {
    c1: HomologyClass,
}

impl SpinCStructure {
    /// Rejects labels outside the basis and any non-characteristic class.
    pub fn new(m: &ManifoldModel, c1: HomologyClass) -> Result<Self> {
        let s = SpinCStructure { c1: c1.normalized() };
        s.check(m)?;
        Ok(s)
    }

    /// `c1 = Σ H_i + Σ E_j`: every coefficient 1.
    pub fn all_ones(m: &ManifoldModel) -> Result<Self> {
        Self::new(m, HomologyClass::from_terms(m.basis.iter().map(|b| (b.label.clone(), 1))))
    }

    pub fn c1(&self) -> &HomologyClass {
        &self.c1
    }

    /// `c1·x ≡ x·x (mod 2)` on every basis element.
    pub fn check(&self, m: &ManifoldModel) -> Result<()> {
        for l in self.c1.support() {
            if m.square_of(l).is_none() {
                return Err(Error::MismatchedBasis(l.clone()));
            }
        }
        for b in &m.basis {
            let p = self.c1.coeff(&b.label) * b.square;
            if (&p - b.square).is_odd() {
                return Err(Error::NotCharacteristic {
                    label: b.label.clone(),
                    pairing: p.to_string(),
                    square: b.square,
                });
            }
        }
        Ok(())
    }

    /// `c1²`, including the contributions of opaque summands.
    pub fn c1_square(&self, m: &ManifoldModel) -> Result<BigInt> {
        let diag = m.pairing(&self.c1, &self.c1)?;
        Ok(diag + m.aggregate_summands.iter().map(|a| &a.c1_square).sum::<BigInt>())
    }

    pub fn pair(&self, m: &ManifoldModel, x: &HomologyClass) -> Result<BigInt> {
        m.pairing(&self.c1, x)
    }
}

/// `χ⁻ = max(2g − 2, 0)`.
pub fn chi_minus(genus: u64) -> u64 {
    (2 * genus).saturating_sub(2)
}

/// `d = (c1² − 2χ − 3σ)/4`.
pub fn formal_dimension(m: &ManifoldModel, s: &SpinCStructure) -> Result<BigInt> {
    let num = s.c1_square(m)? - BigInt::from(2 * m.euler) - BigInt::from(3 * m.signature);
    let (q, r) = num.div_rem(&BigInt::from(4));
    if !r.is_zero() {
        return Err(Error::NonIntegralDimension(num.to_string()));
    }
    Ok(q)
}

/// `(M1 # M2, s1 # s2)`: bases concatenate, χ adds minus two, σ adds.
pub fn connected_sum(
    m1: &ManifoldModel,
    s1: &SpinCStructure,
    m2: &ManifoldModel,
    s2: &SpinCStructure,
) -> Result<(ManifoldModel, SpinCStructure)> {
    for b in &m2.basis {
        if m1.square_of(&b.label).is_some() {
            return Err(Error::LabelCollision(b.label.clone()));
        }
    }
    let name = match (m1.name.is_empty(), m2.name.is_empty()) {
        (false, false) => format!("{}#{}", m1.name, m2.name),
        (true, _) => m2.name.clone(),
        (_, true) => m1.name.clone(),
    };
    let m = ManifoldModel {
        name,
        basis: m1.basis.iter().chain(&m2.basis).cloned().collect(),
        aggregate_summands: m1.aggregate_summands.iter().chain(&m2.aggregate_summands).cloned().collect(),
        euler: m1.euler + m2.euler - 2,
        signature: m1.signature + m2.signature,
    };
    m.validate()?;
    let s = SpinCStructure::new(&m, s1.c1.plus(&s2.c1))?;
    Ok((m, s))
}

/// Blows up `count` points, adding `sign · B_j` to `c1` for each new
/// exceptional class `B_j`.
pub fn blowup(
    m: &ManifoldModel,
    s: &SpinCStructure,
    count: usize,
    sign: i8,
) -> Result<(ManifoldModel, SpinCStructure, Vec<String>)> {
    if sign != 1 && sign != -1 {
        return Err(Error::Precondition(format!("blow-up sign must be ±1, got {sign}")));
    }
    let labels = m.fresh_labels(count);
    let mut out = m.clone();
    let mut c1 = s.c1.clone();
    for l in &labels {
        out.basis.push(BasisElement { label: l.clone(), square: -1 });
        c1.add_term(l.clone(), BigInt::from(sign));
    }
    out.euler += count as i64;
    out.signature -= count as i64;
    if count > 0 && !out.name.is_empty() {
        out.name = format!("{}#{count}(-CP2)", out.name);
    }
    let s = SpinCStructure::new(&out, c1)?;
    Ok((out, s, labels))
}

/// Tubes a surface of self-intersection `q > 0` to `q` exceptional spheres:
/// the class gains `+ Σ B_j` over the block and its square drops to zero.
pub fn blowup_resolve_surface(m: &ManifoldModel, s: &SurfaceClass, block: &[String]) -> Result<SurfaceClass> {
    let q = m.self_intersection(&s.class)?;
    if q.is_negative() {
        return Err(Error::Precondition(format!("surface `{}` has negative self-intersection {q}", s.id)));
    }
    if BigInt::from(block.len()) != q {
        return Err(Error::BlockSize { expected: q.to_string(), got: block.len() });
    }
    let mut class = s.class.clone();
    for l in block {
        match m.square_of(l) {
            Some(-1) => {}
            Some(_) => return Err(Error::Precondition(format!("block label `{l}` does not square to -1"))),
            None => return Err(Error::MismatchedBasis(l.clone())),
        }
        if !s.class.coeff(l).is_zero() {
            return Err(Error::Precondition(format!("block label `{l}` already meets `{}`", s.id)));
        }
        class.add_term(l.clone(), BigInt::from(1));
    }
    let mut out = s.clone();
    out.class = class;
    out.support.extend(block.iter().cloned());
    Ok(out)
}
