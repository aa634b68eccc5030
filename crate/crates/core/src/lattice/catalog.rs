use super::{chi_minus, HomologyClass, ManifoldModel, SpinCStructure};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};

/// A labeled embedded-surface model.
///
/// `support` holds opaque tags (for example the summands the surface lives
/// in); [`Catalog::infer_disjoint_from_support`] reads them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub id: String,
    pub class: HomologyClass,
    pub genus: u64,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub support: BTreeSet<String>,
}

impl SurfaceClass {
    pub fn new(id: impl Into<String>, class: HomologyClass, genus: u64) -> Self {
        let support = class.support().cloned().collect();
        SurfaceClass { id: id.into(), class, genus, support }
    }

    pub fn chi_minus(&self) -> u64 {
        chi_minus(self.genus)
    }
}

/// `χ⁻(Σ) < |c1·[Σ]|`, defined only for self-intersection zero.
///
/// A nonzero square is reported as an error so the caller decides how to
/// treat it.
pub fn is_adjunction_violator(m: &ManifoldModel, s: &SurfaceClass, spinc: &SpinCStructure) -> Result<bool> {
    let q = m.self_intersection(&s.class)?;
    if !q.is_zero() {
        return Err(Error::NonzeroSelfIntersection { id: s.id.clone(), value: q.to_string() });
    }
    Ok(BigInt::from(s.chi_minus()) < spinc.pair(m, &s.class)?.abs())
}

/// A finite list of surfaces in one spin^c manifold, with the disjointness
/// relation supplied as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub manifold: ManifoldModel,
    pub spinc: SpinCStructure,
    pub surfaces: Vec<SurfaceClass>,
    disjoint: BTreeSet<(String, String)>,
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl Catalog {
    pub fn new(
        manifold: ManifoldModel,
        spinc: SpinCStructure,
        surfaces: Vec<SurfaceClass>,
        disjoint: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        for (a, b) in disjoint {
            if a == b {
                return Err(Error::InvalidCatalog(format!("surface `{a}` declared disjoint from itself")));
            }
            pairs.insert(ordered(&a, &b));
        }
        let c = Catalog { manifold, spinc, surfaces, disjoint: pairs };
        c.validate()?;
        Ok(c)
    }

    /// Re-checks every invariant; run after deserialization.
    pub fn validate(&self) -> Result<()> {
        self.manifold.validate()?;
        self.spinc.check(&self.manifold)?;
        let mut ids = BTreeSet::new();
        for s in &self.surfaces {
            if !ids.insert(s.id.as_str()) {
                return Err(Error::InvalidCatalog(format!("duplicate surface id `{}`", s.id)));
            }
            self.manifold.self_intersection(&s.class)?;
        }
        for (a, b) in &self.disjoint {
            let (sa, sb) = (self.surface(a)?, self.surface(b)?);
            if a == b {
                return Err(Error::InvalidCatalog(format!("surface `{a}` declared disjoint from itself")));
            }
            let p = self.manifold.pairing(&sa.class, &sb.class)?;
            if !p.is_zero() {
                return Err(Error::InvalidCatalog(format!(
                    "`{a}` and `{b}` are declared disjoint but their classes pair to {p}"
                )));
            }
        }
        Ok(())
    }

    pub fn surface(&self, id: &str) -> Result<&SurfaceClass> {
        self.surfaces
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownSurface(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.surfaces.iter().any(|s| s.id == id)
    }

    pub fn are_disjoint(&self, a: &str, b: &str) -> bool {
        a != b && self.disjoint.contains(&ordered(a, b))
    }

    pub fn disjoint_pairs(&self) -> impl Iterator<Item = &(String, String)> {
        self.disjoint.iter()
    }

    pub fn self_intersection(&self, id: &str) -> Result<BigInt> {
        self.manifold.self_intersection(&self.surface(id)?.class)
    }

    pub fn c1_pairing(&self, id: &str) -> Result<BigInt> {
        self.spinc.pair(&self.manifold, &self.surface(id)?.class)
    }

    pub fn is_violator(&self, id: &str) -> Result<bool> {
        is_adjunction_violator(&self.manifold, self.surface(id)?, &self.spinc)
    }

    /// Adds a surface declared disjoint from the listed ids.
    pub fn with_surface(&self, s: SurfaceClass, disjoint_from: &[&str]) -> Result<Self> {
        let mut out = self.clone();
        for other in disjoint_from {
            out.disjoint.insert(ordered(&s.id, other));
        }
        out.surfaces.push(s);
        out.validate()?;
        Ok(out)
    }

    /// Declares an extra disjoint pair.
    pub fn with_disjoint(&self, a: &str, b: &str) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidCatalog(format!("surface `{a}` declared disjoint from itself")));
        }
        let mut out = self.clone();
        out.disjoint.insert(ordered(a, b));
        out.validate()?;
        Ok(out)
    }

    /// A push-off of a square-zero surface: same class and genus, disjoint
    /// from the original and from everything the original avoids.
    pub fn parallel_copy(&self, id: &str) -> Result<(Self, String)> {
        let orig = self.surface(id)?.clone();
        let q = self.manifold.self_intersection(&orig.class)?;
        if !q.is_zero() {
            return Err(Error::NonzeroSelfIntersection { id: id.to_string(), value: q.to_string() });
        }
        let mut new_id = format!("{id}'");
        while self.contains(&new_id) {
            new_id.push('\'');
        }
        let mut out = self.clone();
        let inherited: Vec<String> = self
            .surfaces
            .iter()
            .filter(|s| self.are_disjoint(id, &s.id))
            .map(|s| s.id.clone())
            .collect();
        for other in inherited {
            out.disjoint.insert(ordered(&new_id, &other));
        }
        out.disjoint.insert(ordered(&new_id, id));
        out.surfaces.push(SurfaceClass { id: new_id.clone(), ..orig });
        Ok((out, new_id))
    }

    /// Adds every pair whose support tags are disjoint and whose classes
    /// pair to zero. Only a heuristic: tags say nothing about isotopy.
    pub fn infer_disjoint_from_support(&self) -> Result<Self> {
        let mut out = self.clone();
        for (i, a) in self.surfaces.iter().enumerate() {
            for b in &self.surfaces[i + 1..] {
                if a.support.is_disjoint(&b.support)
                    && self.manifold.pairing(&a.class, &b.class)?.is_zero()
                {
                    out.disjoint.insert(ordered(&a.id, &b.id));
                }
            }
        }
        Ok(out)
    }

    /// The same surfaces inside `(M # X, s0 # s)`, with `M` an extra summand
    /// they do not meet. Classes and the relation carry over unchanged.
    pub fn summed_with(&self, m: &ManifoldModel, s: &SpinCStructure) -> Result<Self> {
        let (manifold, spinc) = super::connected_sum(m, s, &self.manifold, &self.spinc)?;
        let c = Catalog { manifold, spinc, surfaces: self.surfaces.clone(), disjoint: self.disjoint.clone() };
        c.validate()?;
        Ok(c)
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("catalog serializes");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogDoc {
    manifold: ManifoldModel,
    spinc: SpinCStructure,
    #[serde(default)]
    surfaces: Vec<SurfaceClass>,
    #[serde(default)]
    disjoint: Vec<[String; 2]>,
}

impl Serialize for Catalog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CatalogDoc {
            manifold: self.manifold.clone(),
            spinc: self.spinc.clone(),
            surfaces: self.surfaces.clone(),
            disjoint: self.disjoint.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
        }
        .serialize(s)
    }
}

/// Structural decoding only; call [`Catalog::validate`] (or use
/// [`Catalog::from_json`]) to enforce the invariants.
impl<'de> Deserialize<'de> for Catalog {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CatalogDoc::deserialize(d)?;
        let mut disjoint = BTreeSet::new();
        for [a, b] in doc.disjoint {
            disjoint.insert(ordered(&a, &b));
        }
        Ok(Catalog { manifold: doc.manifold, spinc: doc.spinc, surfaces: doc.surfaces, disjoint })
    }
}

/// Per-surface adjunction data, used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub id: String,
    pub genus: u64,
    pub chi_minus: u64,
    #[serde(with = "crate::int")]
    pub c1_pairing: BigInt,
    #[serde(with = "crate::int")]
    pub self_intersection: BigInt,
    pub violator: Option<bool>,
}

impl Catalog {
    pub fn surface_report(&self, id: &str) -> Result<SurfaceReport> {
        let s = self.surface(id)?;
        let q = self.self_intersection(id)?;
        Ok(SurfaceReport {
            id: s.id.clone(),
            genus: s.genus,
            chi_minus: s.chi_minus(),
            c1_pairing: self.c1_pairing(id)?,
            violator: if q.is_zero() { Some(self.is_violator(id)?) } else { None },
            self_intersection: q,
        })
    }

    /// Surface ids grouped by the sign of their self-intersection.
    pub fn by_square_sign(&self) -> Result<BTreeMap<i8, Vec<String>>> {
        let mut out: BTreeMap<i8, Vec<String>> = BTreeMap::new();
        for s in &self.surfaces {
            let q = self.manifold.self_intersection(&s.class)?;
            let key = if q.is_positive() { 1 } else if q.is_negative() { -1 } else { 0 };
            out.entry(key).or_default().push(s.id.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Catalog {
        let m = ManifoldModel::rational(2, 8);
        let s = SpinCStructure::all_ones(&m).unwrap();
        let a = SurfaceClass::new(
            "A",
            HomologyClass::from_terms([("H1", 2), ("E1", 1), ("E2", 1), ("E3", 1), ("E4", 1)]),
            0,
        );
        let b = SurfaceClass::new(
            "B",
            HomologyClass::from_terms([("H2", 2), ("E5", -1), ("E6", -1), ("E7", -1), ("E8", -1)]),
            0,
        );
        Catalog::new(m, s, vec![a, b], [("A".to_string(), "B".to_string())]).unwrap()
    }

    #[test]
    fn violators() {
        let c = small();
        assert!(c.is_violator("A").unwrap());
        assert!(c.is_violator("B").unwrap());
        let g5 = SurfaceClass::new("G", HomologyClass::zero(), 5);
        assert!(!is_adjunction_violator(&c.manifold, &g5, &c.spinc).unwrap());
        let pos = SurfaceClass::new("P", HomologyClass::basis("H1"), 0);
        assert!(matches!(
            is_adjunction_violator(&c.manifold, &pos, &c.spinc),
            Err(Error::NonzeroSelfIntersection { .. })
        ));
    }

    #[test]
    fn genus_five_pairing_eight_is_not_a_violator() {
        // 4H1 - (E1+..+E10) + (E11+..+E16): square 16 - 16, c1-pairing 4 + 10 - 6.
        let m = ManifoldModel::rational(1, 16);
        let s = SpinCStructure::all_ones(&m).unwrap();
        let mut terms = vec![("H1".to_string(), 4i64)];
        terms.extend((1..=16).map(|j| (format!("E{j}"), if j <= 10 { -1 } else { 1 })));
        let x = SurfaceClass::new("X", HomologyClass::from_terms(terms), 5);
        assert_eq!(m.self_intersection(&x.class).unwrap(), BigInt::zero());
        assert_eq!(s.pair(&m, &x.class).unwrap(), BigInt::from(8));
        assert!(!is_adjunction_violator(&m, &x, &s).unwrap());
    }

    #[test]
    fn disjoint_pairs_must_pair_to_zero() {
        let c = small();
        let m = c.manifold.clone();
        let err = Catalog::new(
            m,
            c.spinc.clone(),
            c.surfaces.clone(),
            [("A".to_string(), "A".to_string())],
        );
        assert!(err.is_err());
        let h = SurfaceClass::new("H", HomologyClass::basis("H1"), 0);
        assert!(c.with_surface(h, &["A"]).is_err());
    }

    #[test]
    fn parallel_copies() {
        let c = small();
        let (c2, id) = c.parallel_copy("A").unwrap();
        assert_eq!(id, "A'");
        assert!(c2.are_disjoint("A", "A'"));
        assert!(c2.are_disjoint("A'", "B"));
        assert_eq!(c2.surface("A'").unwrap().class, c2.surface("A").unwrap().class);
        let (c3, id2) = c2.parallel_copy("A").unwrap();
        assert_eq!(id2, "A''");
        assert!(c3.are_disjoint("A'", "A''"));
    }

    #[test]
    fn json_round_trip_and_hash() {
        let c = small();
        let text = serde_json::to_string(&c).unwrap();
        let back = Catalog::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash(), c.hash());
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn support_heuristic() {
        let c = small();
        let bare = Catalog::new(c.manifold.clone(), c.spinc.clone(), c.surfaces.clone(), []).unwrap();
        assert!(!bare.are_disjoint("A", "B"));
        assert!(bare.infer_disjoint_from_support().unwrap().are_disjoint("A", "B"));
    }
}
