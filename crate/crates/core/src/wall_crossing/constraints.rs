use super::{certify, verify_bounding, BoundingCollection, SwSeed, WallCrossingCollection};
use crate::adjunction::Which;
use crate::lattice::{blowup, blowup_resolve_surface, chi_minus, Catalog};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The inequality one member of the bounding collection is asked to meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberBound {
    pub id: String,
    pub genus: u64,
    pub chi_minus: u64,
    #[serde(with = "crate::int")]
    pub c1_pairing: BigInt,
    #[serde(with = "crate::int")]
    pub self_intersection: BigInt,
    /// Lower bound on `χ⁻` in the disjunction.
    #[serde(with = "crate::int")]
    pub required: BigInt,
    /// The catalog genus already meets the bound.
    pub satisfied_by_catalog: bool,
}

impl MemberBound {
    fn new(id: &str, genus: u64, c1_pairing: BigInt, self_intersection: BigInt, required: BigInt) -> Self {
        let chi = chi_minus(genus);
        MemberBound {
            id: id.to_string(),
            genus,
            chi_minus: chi,
            satisfied_by_catalog: BigInt::from(chi) >= required,
            c1_pairing,
            self_intersection,
            required,
        }
    }
}

/// The disjunction obtained after blowing up with one global sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedDisjunction {
    pub sign: i8,
    pub bounds: Vec<MemberBound>,
    #[serde(with = "crate::int")]
    pub total: BigInt,
}

/// Positive-square members tubed to fresh exceptional spheres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupTransform {
    pub points: usize,
    /// The sign whose disjunction has the largest total bound.
    pub sign: i8,
    pub options: Vec<SignedDisjunction>,
    /// `(id, new class)` for each resolved member.
    pub resolved: Vec<(String, String)>,
    pub blown_up_catalog_hash: String,
    /// The same chain bounds `K(Σ)` in the square-zero complex of the
    /// blown-up catalog.
    pub re_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub catalog_hash: String,
    pub seed: SwSeed,
    pub members: Vec<MemberBound>,
    /// Human-readable disjunction over the members.
    pub disjunction: String,
    /// Only set when there is exactly one member.
    pub per_surface: Option<String>,
    /// No member meets its bound, so the catalog cannot be realized.
    pub contradiction: bool,
    pub blowup: Option<BlowupTransform>,
}

/// Genus constraints forced on the members of a verified bounding collection.
///
/// At least one member `S` satisfies `χ⁻(S) ≥ |c1·S|`; members of positive
/// square are first blown up so the bound gains `[S]²`.
pub fn derive_constraints(
    cat: &Catalog,
    coll: &WallCrossingCollection,
    b: &BoundingCollection,
    seed: &SwSeed,
) -> Result<ConstraintReport> {
    if seed.value.is_zero() {
        return Err(Error::NoConclusion("the seed invariant is zero, so the hypothesis of the non-vanishing identity fails".into()));
    }
    let cert = certify(cat, coll)?;
    if !cert.certified {
        let failed: Vec<String> = cert.violations().map(|c| format!("{} ({})", c.condition, c.subject)).collect();
        return Err(Error::Hypothesis(format!("collection is not certified: {}", failed.join(", "))));
    }
    let report = verify_bounding(cat, coll, b)?;
    if !report.verified {
        return Err(Error::Hypothesis(format!("bounding collection does not verify; residual {}", report.residual)));
    }
    let ids = report.members;
    if ids.is_empty() {
        return Err(Error::Precondition("bounding collection has no members outside the collection".into()));
    }

    let mut plain = Vec::new();
    for id in &ids {
        let s = cat.surface(id)?;
        let p = cat.c1_pairing(id)?;
        let q = cat.self_intersection(id)?;
        if q.is_negative() {
            return Err(Error::Precondition(format!("member `{id}` has negative square {q}")));
        }
        plain.push(MemberBound::new(id, s.genus, p.clone(), q, p.abs()));
    }

    let blowup = if plain.iter().any(|m| m.self_intersection.is_positive()) {
        Some(blowup_transform(cat, coll, b, &plain)?)
    } else {
        None
    };
    let members = match &blowup {
        Some(t) => {
            let chosen = t.options.iter().find(|o| o.sign == t.sign).expect("chosen sign present");
            plain
                .iter()
                .zip(&chosen.bounds)
                .map(|(m, bb)| MemberBound::new(&m.id, m.genus, m.c1_pairing.clone(), m.self_intersection.clone(), bb.required.clone()))
                .collect()
        }
        None => plain,
    };

    let clauses: Vec<String> = members.iter().map(|m| format!("χ⁻({}) ≥ {}", m.id, m.required)).collect();
    let disjunction = clauses.join(" or ");
    let per_surface = (members.len() == 1).then(|| clauses[0].clone());
    let contradiction = members.iter().all(|m| !m.satisfied_by_catalog);
    Ok(ConstraintReport {
        catalog_hash: cat.hash(),
        seed: seed.clone(),
        members,
        disjunction,
        per_surface,
        contradiction,
        blowup,
    })
}

/// Blows up once per unit of positive square, for both global signs.
///
/// With sign `s`, the new structure has `c1' = c1 + s Σ B_j` and the
/// resolved class `S' = S + Σ_{block} B_j`, so `c1'·S' = c1·S − s [S]²`.
fn blowup_transform(
    cat: &Catalog,
    coll: &WallCrossingCollection,
    b: &BoundingCollection,
    members: &[MemberBound],
) -> Result<BlowupTransform> {
    let total: usize = members
        .iter()
        .map(|m| m.self_intersection.to_usize().ok_or_else(|| Error::Precondition(format!("square of `{}` is too large to blow up", m.id))))
        .sum::<Result<usize>>()?;

    let mut options = Vec::new();
    let mut built = Vec::new();
    for sign in [1i8, -1] {
        let (m2, s2, labels) = blowup(&cat.manifold, &cat.spinc, total, sign)?;
        let mut surfaces = cat.surfaces.clone();
        let mut resolved = Vec::new();
        let mut next = 0usize;
        for m in members.iter().filter(|m| m.self_intersection.is_positive()) {
            let q = m.self_intersection.to_usize().expect("checked above");
            let pos = surfaces.iter().position(|s| s.id == m.id).expect("member in catalog");
            let new = blowup_resolve_surface(&m2, &surfaces[pos], &labels[next..next + q])?;
            next += q;
            resolved.push((m.id.clone(), new.class.to_string()));
            surfaces[pos] = new;
        }
        let blown = Catalog::new(m2, s2, surfaces, cat.disjoint_pairs().cloned())?;
        let bounds: Vec<MemberBound> = members
            .iter()
            .map(|m| {
                let s = blown.surface(&m.id)?;
                let p = blown.c1_pairing(&m.id)?;
                let q = blown.self_intersection(&m.id)?;
                Ok(MemberBound::new(&m.id, s.genus, p.clone(), q, p.abs()))
            })
            .collect::<Result<_>>()?;
        let total_bound = bounds.iter().map(|m| m.required.clone()).sum();
        options.push(SignedDisjunction { sign, bounds, total: total_bound });
        built.push((blown, resolved));
    }
    let pick = usize::from(options[1].total > options[0].total);
    let sign = options[pick].sign;
    let (blown, resolved) = built.swap_remove(pick);
    let mut moved = b.clone();
    moved.ambient = Which::Ambient;
    let re_verified = match verify_bounding(&blown, coll, &moved) {
        Ok(r) => r.verified,
        Err(Error::NotASimplex(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(BlowupTransform {
        points: total,
        sign,
        options,
        resolved,
        blown_up_catalog_hash: blown.hash(),
        re_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_example_collection, ExampleKind, ExampleSpec, HomologyClass, SpinCStructure, SurfaceClass};
    use crate::lattice::ManifoldModel;
    use crate::wall_crossing::cone_bounding;

    /// The k = 2 example inside `3CP² # 9(−CP²)`, leaving `H3, E9` free.
    fn roomy() -> (Catalog, WallCrossingCollection) {
        let (cat, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 2, 2, 4)).unwrap();
        let m = ManifoldModel::rational(3, 9);
        let t = SpinCStructure::all_ones(&m).unwrap();
        let pairs: Vec<_> = cat.disjoint_pairs().cloned().collect();
        (Catalog::new(m, t, cat.surfaces.clone(), pairs).unwrap(), coll)
    }

    const ALL: [&str; 4] = ["Sigma1+", "Sigma1-", "Sigma2+", "Sigma2-"];

    #[test]
    fn sphere_with_pairing_two_is_a_contradiction() {
        let (cat, coll) = roomy();
        let s = SurfaceClass::new("S", HomologyClass::from_terms([("H3", 1), ("E9", -1)]), 0);
        let cat = cat.with_surface(s, &ALL).unwrap();
        let b = cone_bounding(&cat, &coll, "S").unwrap();
        let r = derive_constraints(&cat, &coll, &b, &SwSeed::k3()).unwrap();
        assert_eq!(r.members[0].required, BigInt::from(2));
        assert!(r.contradiction);
        assert_eq!(r.per_surface.as_deref(), Some("χ⁻(S) ≥ 2"));
        assert!(r.blowup.is_none());
    }

    #[test]
    fn positive_square_gains_its_square() {
        let (cat, coll) = roomy();
        let s = SurfaceClass::new("S", HomologyClass::from_terms([("H3", 2), ("E9", -1)]), 4);
        let cat = cat.with_surface(s, &ALL).unwrap();
        assert_eq!(cat.c1_pairing("S").unwrap(), BigInt::from(3));
        let b = cone_bounding(&cat, &coll, "S").unwrap();
        assert_eq!(b.ambient, Which::NonNegative);
        let r = derive_constraints(&cat, &coll, &b, &SwSeed::k3()).unwrap();
        let t = r.blowup.as_ref().unwrap();
        assert_eq!(t.points, 3);
        assert_eq!(t.sign, -1);
        assert!(t.re_verified);
        assert_eq!(r.members[0].required, BigInt::from(6));
        assert!(r.members[0].satisfied_by_catalog);
        assert!(!r.contradiction);
        for o in &t.options {
            assert!(o.bounds.iter().all(|m| m.self_intersection.is_zero() && m.genus == 4));
        }
    }

    #[test]
    fn zero_seed_is_refused() {
        let (cat, coll) = roomy();
        let cat = cat.with_surface(SurfaceClass::new("S", HomologyClass::zero(), 0), &ALL).unwrap();
        let b = cone_bounding(&cat, &coll, "S").unwrap();
        assert!(matches!(derive_constraints(&cat, &coll, &b, &SwSeed::new(0, "none")), Err(Error::NoConclusion(_))));
    }

    #[test]
    fn empty_bounding_is_refused() {
        let (cat, coll) = roomy();
        let b = BoundingCollection { ambient: Which::Ambient, terms: vec![] };
        assert!(derive_constraints(&cat, &coll, &b, &SwSeed::k3()).is_err());
    }
}
