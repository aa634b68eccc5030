use super::{certify, WallCrossingCollection};
use crate::lattice::{formal_dimension, Catalog, ManifoldModel, SpinCStructure};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// The invariant of the extra summand `(M, s0)`, supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwSeed {
    #[serde(with = "crate::int")]
    pub value: BigInt,
    pub note: String,
}

impl SwSeed {
    pub fn new(value: impl Into<BigInt>, note: impl Into<String>) -> Self {
        SwSeed { value: value.into(), note: note.into() }
    }

    /// The K3 surface with its canonical structure.
    pub fn k3() -> Self {
        SwSeed::new(1, "K3 canonical")
    }

    /// Product of the seeds recorded on the aggregate summands of `m`, if
    /// every summand carries one.
    pub fn from_model(m: &ManifoldModel) -> Option<Self> {
        if m.aggregate_summands.is_empty() {
            return None;
        }
        let mut value = BigInt::from(1);
        let mut names = Vec::new();
        for a in &m.aggregate_summands {
            value *= a.sw_seed.clone()?;
            names.push(a.name.clone());
        }
        Some(SwSeed { value, note: format!("recorded on summand {}", names.join(", ")) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub hypothesis: String,
    pub passed: bool,
    pub detail: String,
}

/// Aggregate data of `X = M # N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostSummary {
    /// `aCP2#b(-CP2)`, the rational surface with the same `b±`.
    pub form: String,
    pub b_plus: u64,
    pub b_minus: u64,
    pub euler: i64,
    pub signature: i64,
    #[serde(with = "crate::int")]
    pub formal_dimension: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub invariant_nonzero: bool,
    pub cycle_class_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub catalog_hash: String,
    pub k: usize,
    pub host: HostSummary,
    pub hypotheses: Vec<HypothesisCheck>,
    pub seed: SwSeed,
    /// `|⟨SW(X), [K(Σ)]⟩|`; the sign is not determined.
    #[serde(with = "crate::int")]
    pub pairing_magnitude: BigInt,
    pub sign_ambiguous: bool,
    /// `None` when the seed vanishes: nothing follows.
    pub verdicts: Option<Verdicts>,
}

/// Checks the numerical hypotheses on `(M, s0)`, `(N, t)` and their sum.
///
/// `n` is the catalog over `N = kCP² # l(−CP²)`; `m` is the extra summand.
pub fn host_hypotheses(
    n: &Catalog,
    coll: &WallCrossingCollection,
    m: &ManifoldModel,
    s0: &SpinCStructure,
) -> Result<(HostSummary, Vec<HypothesisCheck>)> {
    let k = coll.k();
    let mut checks = Vec::new();
    let mut push = |hypothesis: &str, passed: bool, detail: String| {
        checks.push(HypothesisCheck { hypothesis: hypothesis.into(), passed, detail });
    };

    let dm = formal_dimension(m, s0)?;
    push("b+(M) >= 2", m.b_plus() >= 2, format!("b+(M) = {}", m.b_plus()));
    push("d(M) = 0", dm.is_zero(), format!("d(M) = {dm}"));

    let nm = &n.manifold;
    let positive = nm.basis.iter().filter(|b| b.square == 1).count();
    push(
        "N has k positive classes",
        positive == k && nm.aggregate_summands.is_empty(),
        format!("{positive} classes of square +1, k = {k}"),
    );
    let expected_euler = 2 + nm.basis.len() as i64;
    push(
        "N is a rational surface",
        nm.euler == expected_euler && nm.aggregate_summands.is_empty(),
        format!("χ(N) = {}, expected {expected_euler}", nm.euler),
    );

    let x = n.summed_with(m, s0)?;
    let d = formal_dimension(&x.manifold, &x.spinc)?;
    let host = HostSummary {
        form: format!("{}CP2#{}(-CP2)", x.manifold.b_plus(), x.manifold.b_minus()),
        b_plus: x.manifold.b_plus(),
        b_minus: x.manifold.b_minus(),
        euler: x.manifold.euler,
        signature: x.manifold.signature,
        formal_dimension: d.clone(),
    };
    push("d(X) = -k", d == BigInt::from(-(k as i64)), format!("d(X) = {d}, k = {k}"));
    push(
        "b+(X) >= k+2",
        host.b_plus >= k as u64 + 2,
        format!("b+(X) = {} vs k + 2 = {}", host.b_plus, k + 2),
    );
    Ok((host, checks))
}

/// `⟨SW(X, s0 # t), [K(Σ)]⟩ = ±SW(M, s0)`, taken as an identity.
///
/// Errors if the collection does not certify or any host hypothesis fails.
pub fn evaluate_invariant(
    n: &Catalog,
    coll: &WallCrossingCollection,
    m: &ManifoldModel,
    s0: &SpinCStructure,
    seed: &SwSeed,
) -> Result<InvariantReport> {
    let cert = certify(n, coll)?;
    if !cert.certified {
        let failed: Vec<String> = cert.violations().map(|c| format!("{} ({})", c.condition, c.subject)).collect();
        return Err(Error::Hypothesis(format!("collection is not certified: {}", failed.join(", "))));
    }
    let (host, hypotheses) = host_hypotheses(n, coll, m, s0)?;
    if let Some(h) = hypotheses.iter().find(|h| !h.passed) {
        return Err(Error::Hypothesis(format!("{}: {}", h.hypothesis, h.detail)));
    }
    let nonzero = !seed.value.is_zero();
    Ok(InvariantReport {
        catalog_hash: n.hash(),
        k: coll.k(),
        host,
        hypotheses,
        seed: seed.clone(),
        pairing_magnitude: seed.value.abs(),
        sign_ambiguous: true,
        verdicts: nonzero.then_some(Verdicts { invariant_nonzero: true, cycle_class_nonzero: true }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_example_collection, ExampleKind, ExampleSpec, HomologyClass};

    fn k3() -> (ManifoldModel, SpinCStructure) {
        let m = ManifoldModel::k3();
        let s = SpinCStructure::new(&m, HomologyClass::zero()).unwrap();
        (m, s)
    }

    #[test]
    fn k3_k1_host() {
        let (n, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 1, 2, 4)).unwrap();
        let (m, s0) = k3();
        let r = evaluate_invariant(&n, &coll, &m, &s0, &SwSeed::k3()).unwrap();
        assert_eq!(r.host.form, "4CP2#23(-CP2)");
        assert_eq!(r.pairing_magnitude, BigInt::from(1));
        assert!(r.sign_ambiguous);
        assert_eq!(r.verdicts, Some(Verdicts { invariant_nonzero: true, cycle_class_nonzero: true }));
    }

    #[test]
    fn zero_seed_gives_no_verdict() {
        let (n, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 1, 2, 4)).unwrap();
        let (m, s0) = k3();
        let r = evaluate_invariant(&n, &coll, &m, &s0, &SwSeed::new(0, "test")).unwrap();
        assert_eq!(r.verdicts, None);
    }

    #[test]
    fn k2_passes_b_plus() {
        let (n, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 2, 2, 4)).unwrap();
        let (m, s0) = k3();
        let (host, checks) = host_hypotheses(&n, &coll, &m, &s0).unwrap();
        assert_eq!(host.b_plus, 5);
        assert_eq!(host.formal_dimension, BigInt::from(-2));
        assert!(checks.iter().all(|c| c.passed));
    }

    #[test]
    fn sphere_summand_fails_b_plus() {
        let (n, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 1, 2, 4)).unwrap();
        let m = ManifoldModel::sphere();
        let s0 = SpinCStructure::new(&m, HomologyClass::zero()).unwrap();
        let e = evaluate_invariant(&n, &coll, &m, &s0, &SwSeed::new(1, "test")).unwrap_err();
        assert!(e.to_string().contains("b+(M) >= 2"), "{e}");
    }

    #[test]
    fn seed_from_model() {
        assert_eq!(SwSeed::from_model(&ManifoldModel::k3()).unwrap().value, BigInt::from(1));
        assert!(SwSeed::from_model(&ManifoldModel::sphere()).is_none());
    }
}
