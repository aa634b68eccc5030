//! Wall-crossing collections: certification, the fundamental cycle of the
//! collection, bounding collections and the inequalities they force.

mod bounding;
mod constraints;
mod invariant;

pub use bounding::{cone_bounding, pair_bounding, verify_bounding, BoundingCollection, BoundingReport, BoundingTerm};
pub use constraints::{derive_constraints, BlowupTransform, ConstraintReport, MemberBound, SignedDisjunction};
pub use invariant::{evaluate_invariant, host_hypotheses, HostSummary, HypothesisCheck, InvariantReport, SwSeed, Verdicts};

use crate::lattice::{Catalog, HomologyClass};
use crate::simplicial::{Chain, Complex, OrientedSimplex};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// The two surfaces at one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub plus: String,
    pub minus: String,
}

/// `2k` surface ids `Σ_i^±` plus the labels `H_i` they are measured against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCrossingCollection {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    h_labels: Vec<String>,
    members: Vec<Member>,
}

impl WallCrossingCollection {
    /// `pairs[i-1] = (Σ_i^+, Σ_i^-)`, measured against `H1..Hk`.
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Precondition("a wall-crossing collection needs k ≥ 1".into()));
        }
        Ok(WallCrossingCollection {
            h_labels: Vec::new(),
            members: pairs.into_iter().map(|(plus, minus)| Member { plus, minus }).collect(),
        })
    }

    pub fn with_h_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.k() {
            return Err(Error::Precondition(format!("expected {} H labels, got {}", self.k(), labels.len())));
        }
        self.h_labels = labels;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    /// The label `H_i` for `1 ≤ i ≤ k`.
    pub fn h_label(&self, i: usize) -> String {
        self.h_labels.get(i - 1).cloned().unwrap_or_else(|| format!("H{i}"))
    }

    pub fn h_labels(&self) -> Vec<String> {
        (1..=self.k()).map(|i| self.h_label(i)).collect()
    }

    /// `Σ_i^ε` for `1 ≤ i ≤ k`.
    pub fn surface(&self, i: usize, e: Sign) -> &str {
        let m = &self.members[i - 1];
        match e {
            Sign::Plus => &m.plus,
            Sign::Minus => &m.minus,
        }
    }

    pub fn ids(&self) -> Vec<String> {
        self.members.iter().flat_map(|m| [m.plus.clone(), m.minus.clone()]).collect()
    }

    /// Reorders the index set: position `j` of the result is old index `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let set: BTreeSet<_> = perm.iter().copied().collect();
        if perm.len() != self.k() || set != (1..=self.k()).collect() {
            return Err(Error::Precondition(format!("{perm:?} is not a permutation of 1..{}", self.k())));
        }
        Ok(WallCrossingCollection {
            h_labels: perm.iter().map(|&i| self.h_label(i)).collect(),
            members: perm.iter().map(|&i| self.members[i - 1].clone()).collect(),
        })
    }

    /// Exchanges the roles of `Σ_i^+` and `Σ_i^-`.
    pub fn swapped(&self, i: usize) -> Self {
        let mut out = self.clone();
        let m = &mut out.members[i - 1];
        std::mem::swap(&mut m.plus, &mut m.minus);
        out
    }

    fn check_distinct(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for id in self.ids() {
            if !seen.insert(id.clone()) {
                return Err(Error::RepeatedVertex(id));
            }
        }
        Ok(())
    }
}

/// One checked condition of the certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub condition: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

/// `(c1·Σ_i^±)(H_i·Σ_i^±)` for one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignProducts {
    pub index: usize,
    #[serde(with = "crate::int")]
    pub plus: BigInt,
    #[serde(with = "crate::int")]
    pub minus: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub catalog_hash: String,
    pub certified: bool,
    pub conditions: Vec<ConditionCheck>,
    pub products: Vec<SignProducts>,
}

impl Certificate {
    pub fn violations(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

/// Checks every defining condition and reports each one.
///
/// Missing surfaces or `H_i` labels are input errors; failed conditions are
/// returned inside the certificate.
pub fn certify(cat: &Catalog, coll: &WallCrossingCollection) -> Result<Certificate> {
    let k = coll.k();
    let h: Vec<HomologyClass> = coll
        .h_labels()
        .into_iter()
        .map(|l| match cat.manifold.square_of(&l) {
            Some(_) => Ok(HomologyClass::basis(l)),
            None => Err(Error::MismatchedBasis(l)),
        })
        .collect::<Result<_>>()?;
    for id in coll.ids() {
        cat.surface(&id)?;
    }
    let mut conditions = Vec::new();
    let mut push = |condition: &str, subject: String, passed: bool, detail: String| {
        conditions.push(ConditionCheck { condition: condition.into(), subject, passed, detail });
    };

    let distinct: BTreeSet<String> = coll.ids().into_iter().collect();
    push(
        "distinct_members",
        "collection".into(),
        distinct.len() == 2 * k,
        format!("{} distinct ids among {}", distinct.len(), 2 * k),
    );

    for i in 1..=k {
        for e in [Sign::Plus, Sign::Minus] {
            let id = coll.surface(i, e);
            let q = cat.self_intersection(id)?;
            push("square_zero", id.into(), q.is_zero(), format!("[Σ]² = {q}"));
            if q.is_zero() {
                let r = cat.surface_report(id)?;
                push(
                    "violator",
                    id.into(),
                    r.violator == Some(true),
                    format!("χ⁻ = {}, |c1·Σ| = {}", r.chi_minus, r.c1_pairing.abs()),
                );
            }
        }
    }

    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                continue;
            }
            for e in [Sign::Plus, Sign::Minus] {
                let id = coll.surface(i, e);
                let p = cat.manifold.pairing(&h[j - 1], &cat.surface(id)?.class)?;
                push(
                    "orthogonal_to_other_h",
                    format!("{id} vs {}", coll.h_label(j)),
                    p.is_zero(),
                    format!("{}·Σ = {p}", coll.h_label(j)),
                );
            }
        }
    }

    let mut products = Vec::new();
    for i in 1..=k {
        let prod = |e: Sign| -> Result<BigInt> {
            let s = &cat.surface(coll.surface(i, e))?.class;
            Ok(cat.spinc.pair(&cat.manifold, s)? * cat.manifold.pairing(&h[i - 1], s)?)
        };
        let (p, m) = (prod(Sign::Plus)?, prod(Sign::Minus)?);
        let ok = !p.is_zero() && !m.is_zero() && p.signum() != m.signum();
        push(
            "opposite_signs",
            format!("index {i}"),
            ok,
            format!("(c1·Σ⁺)(H·Σ⁺) = {p}, (c1·Σ⁻)(H·Σ⁻) = {m}"),
        );
        products.push(SignProducts { index: i, plus: p, minus: m });
    }

    for i in 1..=k {
        for j in i + 1..=k {
            for a in [Sign::Plus, Sign::Minus] {
                for b in [Sign::Plus, Sign::Minus] {
                    let (x, y) = (coll.surface(i, a), coll.surface(j, b));
                    push(
                        "disjoint",
                        format!("{x} / {y}"),
                        cat.are_disjoint(x, y),
                        if cat.are_disjoint(x, y) { "declared disjoint".into() } else { "not declared disjoint".into() },
                    );
                }
            }
        }
    }

    let certified = conditions.iter().all(|c| c.passed);
    Ok(Certificate { catalog_hash: cat.hash(), certified, conditions, products })
}

/// `Σ_ε (∏ ε_i) ⟨Σ_1^{ε_1}, …, Σ_k^{ε_k}⟩`, normalized to canonical order.
pub fn fundamental_cycle(coll: &WallCrossingCollection) -> Result<Chain<String>> {
    coll.check_distinct()?;
    let k = coll.k();
    let mut z = Chain::zero(k - 1);
    for mask in 0u64..(1u64 << k) {
        let mut coeff = 1i32;
        let mut vs = Vec::with_capacity(k);
        for i in 1..=k {
            let e = if mask >> (i - 1) & 1 == 1 { Sign::Minus } else { Sign::Plus };
            coeff *= e.value();
            vs.push(coll.surface(i, e).to_string());
        }
        z.add_oriented(&OrientedSimplex::new(vs)?, BigInt::from(coeff))?;
    }
    Ok(z)
}

/// The full subcomplex of the catalog complex spanned by the collection.
pub fn collection_complex(cat: &Catalog, coll: &WallCrossingCollection) -> Result<Complex<String>> {
    coll.check_distinct()?;
    for id in coll.ids() {
        cat.surface(&id)?;
    }
    let ids = coll.ids();
    Ok(Complex::flag(ids.clone(), |a, b| cat.are_disjoint(a, b), ids.len()))
}

/// Sign vectors `{+,-}^k` in binary order, plus first.
pub fn sign_vectors(k: usize) -> Vec<Vec<Sign>> {
    (0u64..(1u64 << k))
        .map(|mask| {
            (0..k)
                .map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_example_collection, ExampleKind, ExampleSpec};
    use crate::simplicial::{reduced_homology, HomologyGroup};

    fn ex(kind: ExampleKind, k: usize, d: u64, l: u64) -> (Catalog, WallCrossingCollection) {
        make_example_collection(&ExampleSpec::uniform(kind, k, d, l)).unwrap()
    }

    #[test]
    fn ex46_k1_products() {
        let (cat, coll) = ex(ExampleKind::Ex46, 1, 2, 4);
        let c = certify(&cat, &coll).unwrap();
        assert!(c.certified, "{:?}", c.violations().collect::<Vec<_>>());
        assert_eq!(c.products[0].plus, BigInt::from(-4));
        assert_eq!(c.products[0].minus, BigInt::from(12));
    }

    #[test]
    fn same_sign_violation() {
        let (cat, _) = ex(ExampleKind::Ex46, 1, 2, 4);
        let bad = WallCrossingCollection::new(vec![("Sigma1+".into(), "Sigma1+".into())]).unwrap();
        let c = certify(&cat, &bad).unwrap();
        assert!(!c.certified);
        assert!(c.violations().any(|v| v.condition == "opposite_signs"));
    }

    #[test]
    fn ex48_minus_product() {
        let (cat, coll) = ex(ExampleKind::Ex48, 1, 2, 4);
        let c = certify(&cat, &coll).unwrap();
        assert!(c.certified);
        assert_eq!(c.products[0].minus, BigInt::from(48));
        assert!(c.products[0].plus < BigInt::zero());
    }

    #[test]
    fn missing_surface_is_an_error() {
        let (cat, _) = ex(ExampleKind::Ex46, 1, 2, 4);
        let coll = WallCrossingCollection::new(vec![("Sigma1+".into(), "nope".into())]).unwrap();
        assert!(matches!(certify(&cat, &coll), Err(Error::UnknownSurface(_))));
    }

    #[test]
    fn small_cycles() {
        let (_, c1) = ex(ExampleKind::Ex46, 1, 2, 4);
        let z = fundamental_cycle(&c1).unwrap();
        assert_eq!(z.to_string(), "<Sigma1+> - <Sigma1->");
        assert!(z.is_cycle());
        let (_, c2) = ex(ExampleKind::Ex46, 2, 2, 4);
        let z = fundamental_cycle(&c2).unwrap();
        assert_eq!(z.len(), 4);
        assert!(z.boundary().is_zero());
        let (_, c3) = ex(ExampleKind::Ex46, 3, 2, 4);
        let z = fundamental_cycle(&c3).unwrap();
        assert_eq!(z.len(), 8);
        assert!(z.boundary().is_zero());
    }

    #[test]
    fn collection_complex_is_a_sphere() {
        for k in 1..=3 {
            let (cat, coll) = ex(ExampleKind::Ex46, k, 2, 4);
            let kc = collection_complex(&cat, &coll).unwrap();
            assert_eq!(reduced_homology(&kc, k - 1), HomologyGroup::free(1));
            assert!(fundamental_cycle(&coll).unwrap().is_supported_in(&kc));
        }
    }

    #[test]
    fn permutations_resign_the_cycle() {
        let (_, coll) = ex(ExampleKind::Ex46, 3, 2, 4);
        let z = fundamental_cycle(&coll).unwrap();
        let p = fundamental_cycle(&coll.permuted(&[2, 3, 1]).unwrap()).unwrap();
        assert!(p == z || p == -z.clone());
        let s = fundamental_cycle(&coll.swapped(2)).unwrap();
        assert_eq!(s, -z);
    }
}
