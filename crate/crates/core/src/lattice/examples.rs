//! Constructors for the standard wall-crossing families in
//! `k CP² # l (−CP²)`: degree-d curves in the i-th CP² tubed to exceptional
//! spheres drawn from a private window of E-labels.

use super::{Catalog, HomologyClass, ManifoldModel, SpinCStructure, SurfaceClass};
use crate::wall_crossing::WallCrossingCollection;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleKind {
    /// `d H_i ± Σ E_j` over `d²` labels, genus `(d−1)(d−2)/2`.
    Ex46,
    /// `d H_i + 2E + ± Σ E_j` over `d² − 4` further labels.
    Ex47,
    /// Plus side as `Ex46`; minus side `2d H_i − 2 Σ E_j`.
    Ex48,
}

impl FromStr for ExampleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ex46" => Ok(ExampleKind::Ex46),
            "ex47" => Ok(ExampleKind::Ex47),
            "ex48" => Ok(ExampleKind::Ex48),
            _ => Err(Error::Precondition(format!("unknown example kind `{s}` (ex46, ex47, ex48)"))),
        }
    }
}

impl fmt::Display for ExampleKind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            ExampleKind::Ex46 => "ex46",
            ExampleKind::Ex47 => "ex47",
            ExampleKind::Ex48 => "ex48",
        })
    }
}

/// Parameters of one family member: per-index degrees and block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleSpec {
    pub kind: ExampleKind,
    pub d_plus: Vec<u64>,
    pub d_minus: Vec<u64>,
    pub l: Vec<u64>,
}

impl ExampleSpec {
    /// Same degree on both sides at every index, block size `l` everywhere.
    pub fn uniform(kind: ExampleKind, k: usize, d: u64, l: u64) -> Self {
        ExampleSpec { kind, d_plus: vec![d; k], d_minus: vec![d; k], l: vec![l; k] }
    }

    pub fn k(&self) -> usize {
        self.l.len()
    }

    fn check(&self) -> Result<()> {
        let k = self.k();
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        if self.d_plus.len() != k || self.d_minus.len() != k {
            return Err(Error::Precondition(format!(
                "expected {k} plus and {k} minus degrees, got {} and {}",
                self.d_plus.len(),
                self.d_minus.len()
            )));
        }
        for i in 0..k {
            let l = self.l[i];
            for (sign, d) in [("+", self.d_plus[i]), ("-", self.d_minus[i])] {
                let idx = i + 1;
                match self.kind {
                    ExampleKind::Ex46 | ExampleKind::Ex48 => {
                        if d * d < 4 {
                            return Err(Error::Precondition(format!(
                                "d_{{{sign},{idx}}}² = {} < 4",
                                d * d
                            )));
                        }
                        if l < d * d {
                            return Err(Error::Precondition(format!(
                                "l_{idx} = {l} < d_{{{sign},{idx}}}² = {}",
                                d * d
                            )));
                        }
                    }
                    ExampleKind::Ex47 => {
                        if d < 3 {
                            return Err(Error::Precondition(format!("d_{{{sign},{idx}}} = {d} < 3")));
                        }
                        if l + 3 < d * d {
                            return Err(Error::Precondition(format!(
                                "l_{idx} = {l} < d_{{{sign},{idx}}}² - 3 = {}",
                                d * d - 3
                            )));
                        }
                    }
                }
            }
            if self.kind == ExampleKind::Ex48 && !matches!(self.d_minus[i], 2 | 3) {
                return Err(Error::Precondition(format!(
                    "d_{{-,{}}} = {} is not in {{2, 3}}",
                    i + 1,
                    self.d_minus[i]
                )));
            }
        }
        Ok(())
    }
}

fn plane_curve_genus(d: u64) -> u64 {
    (d - 1) * (d - 2) / 2
}

/// `d H_i + sign · Σ_{j=from}^{to} E_j`.
fn curve_class(i: usize, d: i64, sign: i64, from: u64, to: u64) -> HomologyClass {
    let mut c = HomologyClass::from_terms([(format!("H{i}"), d)]);
    for j in from..=to {
        c.add_term(format!("E{j}"), sign.into());
    }
    c
}

/// Builds `(N, 𝔱)` with `c1 = Σ H + Σ E`, the 2k surfaces
/// `Sigma{i}+` / `Sigma{i}-`, and the disjointness relation that pairs every
/// surface at index `i` with every surface at a different index.
pub fn make_example_collection(spec: &ExampleSpec) -> Result<(Catalog, WallCrossingCollection)> {
    spec.check()?;
    let k = spec.k();
    let l_total: u64 = spec.l.iter().sum();
    let m = ManifoldModel::rational(k, l_total as usize);
    let t = SpinCStructure::all_ones(&m)?;
    let mut surfaces = Vec::with_capacity(2 * k);
    let mut offset = 0u64;
    for i in 1..=k {
        let (dp, dm) = (spec.d_plus[i - 1], spec.d_minus[i - 1]);
        let (plus, minus) = match spec.kind {
            ExampleKind::Ex46 => (
                (curve_class(i, dp as i64, 1, offset + 1, offset + dp * dp), plane_curve_genus(dp)),
                (curve_class(i, dm as i64, -1, offset + 1, offset + dm * dm), plane_curve_genus(dm)),
            ),
            ExampleKind::Ex47 => {
                let side = |d: u64, sign: i64| {
                    let mut c = curve_class(i, d as i64, sign, offset + 2, offset + d * d - 3);
                    c.add_term(format!("E{}", offset + 1), 2.into());
                    (c, plane_curve_genus(d))
                };
                (side(dp, 1), side(dm, -1))
            }
            ExampleKind::Ex48 => (
                (curve_class(i, dp as i64, 1, offset + 1, offset + dp * dp), plane_curve_genus(dp)),
                (
                    curve_class(i, 2 * dm as i64, -2, offset + 1, offset + dm * dm),
                    plane_curve_genus(2 * dm),
                ),
            ),
        };
        surfaces.push(SurfaceClass::new(format!("Sigma{i}+"), plus.0, plus.1));
        surfaces.push(SurfaceClass::new(format!("Sigma{i}-"), minus.0, minus.1));
        offset += spec.l[i - 1];
    }
    let mut disjoint = Vec::new();
    for a in &surfaces {
        for b in &surfaces {
            if a.id < b.id && index_of(&a.id) != index_of(&b.id) {
                disjoint.push((a.id.clone(), b.id.clone()));
            }
        }
    }
    let collection = WallCrossingCollection::new(
        (1..=k).map(|i| (format!("Sigma{i}+"), format!("Sigma{i}-"))).collect(),
    )?;
    Ok((Catalog::new(m, t, surfaces, disjoint)?, collection))
}

fn index_of(id: &str) -> &str {
    id.trim_start_matches("Sigma").trim_end_matches(['+', '-'])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ex46_k1_d2() {
        let (cat, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 1, 2, 4)).unwrap();
        let plus = cat.surface("Sigma1+").unwrap();
        assert_eq!(plus.class.to_string(), "E1 + E2 + E3 + E4 + 2H1");
        assert_eq!(plus.genus, 0);
        assert_eq!(cat.c1_pairing("Sigma1+").unwrap(), BigInt::from(-2));
        assert_eq!(cat.c1_pairing("Sigma1-").unwrap(), BigInt::from(6));
        assert_eq!(coll.k(), 1);
    }

    #[test]
    fn ex46_index_windows_do_not_overlap() {
        let spec = ExampleSpec {
            kind: ExampleKind::Ex46,
            d_plus: vec![2, 3],
            d_minus: vec![2, 2],
            l: vec![4, 9],
        };
        let (cat, _) = make_example_collection(&spec).unwrap();
        let s2 = cat.surface("Sigma2+").unwrap();
        assert_eq!(s2.class.coeff("E5"), BigInt::from(1));
        assert_eq!(s2.class.coeff("E13"), BigInt::from(1));
        assert_eq!(s2.class.coeff("E4"), BigInt::from(0));
        assert_eq!(s2.genus, 1);
        assert!(cat.are_disjoint("Sigma1+", "Sigma2-"));
        assert!(!cat.are_disjoint("Sigma1+", "Sigma1-"));
    }

    #[test]
    fn ex48_minus_side() {
        let (cat, _) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex48, 1, 2, 4)).unwrap();
        let m = cat.surface("Sigma1-").unwrap();
        assert_eq!(m.class.coeff("H1"), BigInt::from(4));
        assert_eq!(m.class.coeff("E3"), BigInt::from(-2));
        assert_eq!(m.genus, 3);
        assert_eq!(cat.self_intersection("Sigma1-").unwrap(), BigInt::from(0));
    }

    #[test]
    fn ex47_classes() {
        let (cat, _) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex47, 1, 3, 6)).unwrap();
        assert_eq!(cat.c1_pairing("Sigma1+").unwrap(), BigInt::from(-4));
        assert_eq!(cat.c1_pairing("Sigma1-").unwrap(), BigInt::from(6));
        assert_eq!(cat.self_intersection("Sigma1+").unwrap(), BigInt::from(0));
    }

    #[test]
    fn preconditions_name_the_inequality() {
        let e = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, 1, 3, 4)).unwrap_err();
        assert!(e.to_string().contains("l_1 = 4 < d_{+,1}² = 9"), "{e}");
        let e = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex47, 1, 2, 9)).unwrap_err();
        assert!(e.to_string().contains("< 3"), "{e}");
        let e = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex48, 1, 4, 16)).unwrap_err();
        assert!(e.to_string().contains("{2, 3}"), "{e}");
    }
}
