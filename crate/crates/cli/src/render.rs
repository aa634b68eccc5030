//! Extra report types and the plain-text rendering of every report.

use adjunction_core::adjunction::AdjunctionComplex;
use adjunction_core::geometry::selftest::SelfTestReport;
use adjunction_core::simplicial::{Chain, HomologyGroup};
use adjunction_core::wall_crossing::{BoundingReport, Certificate, ConstraintReport, InvariantReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub group: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub catalog_hash: String,
    pub complex: String,
    pub f_vector: Vec<usize>,
    pub groups: Vec<DegreeGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub catalog_hash: String,
    pub k: usize,
    pub terms: usize,
    pub is_cycle: bool,
    pub cycle: Chain<String>,
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

pub fn complex(c: &AdjunctionComplex) -> String {
    let mut s = format!("catalog {}\n", c.catalog_hash);
    let _ = writeln!(s, "ambient f-vector     {:?}", c.ambient.f_vector());
    let _ = writeln!(s, "adjunction f-vector  {:?}", c.adjunction.f_vector());
    let _ = writeln!(s, "nonneg f-vector      {:?}", c.nonneg_ambient.f_vector());
    s.push_str(&c.vertices_report());
    s.trim_end().to_string()
}

pub fn homology(r: &HomologyReport) -> String {
    let mut s = format!("catalog {}\n{} complex, f-vector {:?}\n", r.catalog_hash, r.complex, r.f_vector);
    for g in &r.groups {
        let _ = writeln!(s, "H{} = {}", subscript(g.degree), g.group);
    }
    s.trim_end().to_string()
}

pub fn certificate(c: &Certificate) -> String {
    let mut s = format!("catalog {}\n", c.catalog_hash);
    for p in &c.products {
        let _ = writeln!(s, "index {}: products {} / {}", p.index, p.plus, p.minus);
    }
    for v in c.violations() {
        let _ = writeln!(s, "FAILED {} ({}): {}", v.condition, v.subject, v.detail);
    }
    let _ = write!(s, "{}", if c.certified { "certified" } else { "not certified" });
    s
}

pub fn cycle(r: &CycleReport) -> String {
    format!(
        "catalog {}\nk = {}, {} terms, boundary {}\n{}",
        r.catalog_hash,
        r.k,
        r.terms,
        if r.is_cycle { "zero" } else { "NONZERO" },
        r.cycle
    )
}

pub fn bounding(r: &BoundingReport) -> String {
    let mut s = format!("catalog {}\n", r.catalog_hash);
    let _ = writeln!(s, "members: {}", if r.members.is_empty() { "(none)".into() } else { r.members.join(", ") });
    let _ = writeln!(s, "covers the collection: {}", r.covers_collection);
    match r.orientation {
        Some(o) => {
            let _ = writeln!(s, "boundary = {}K(Σ)", if o > 0 { "+" } else { "−" });
        }
        None => {
            let _ = writeln!(s, "residual: {}", r.residual);
        }
    }
    let _ = write!(s, "{}", if r.verified { "verified" } else { "not verified" });
    s
}

pub fn constraints(r: &ConstraintReport) -> String {
    let mut s = format!("catalog {}\nseed {} ({})\n", r.catalog_hash, r.seed.value, r.seed.note);
    for m in &r.members {
        let _ = writeln!(
            s,
            "{}: genus {}, χ⁻ = {}, c1·S = {}, S·S = {}, needs χ⁻ ≥ {}{}",
            m.id,
            m.genus,
            m.chi_minus,
            m.c1_pairing,
            m.self_intersection,
            m.required,
            if m.satisfied_by_catalog { "" } else { " (not met)" }
        );
    }
    if let Some(t) = &r.blowup {
        let _ = writeln!(s, "blown up at {} points, sign {:+}, re-verified {}", t.points, t.sign, t.re_verified);
        for (id, class) in &t.resolved {
            let _ = writeln!(s, "  {id} -> {class}");
        }
    }
    let _ = writeln!(s, "{}", r.disjunction);
    let _ = write!(s, "{}", if r.contradiction { "contradiction: no member meets its bound" } else { "consistent" });
    s
}

pub fn invariant(r: &InvariantReport) -> String {
    let mut s = format!("catalog {}\nhost {} (d = {})\n", r.catalog_hash, r.host.form, r.host.formal_dimension);
    for h in &r.hypotheses {
        let _ = writeln!(s, "{} {}: {}", if h.passed { "ok  " } else { "FAIL" }, h.hypothesis, h.detail);
    }
    let _ = writeln!(s, "|pairing| = {}{}", r.pairing_magnitude, if r.sign_ambiguous { " (sign not determined)" } else { "" });
    let _ = write!(
        s,
        "{}",
        match &r.verdicts {
            Some(_) => "invariant nonzero; fundamental cycle nonzero in homology",
            None => "seed is zero: no verdict",
        }
    );
    s
}

pub fn selftest(r: &SelfTestReport) -> String {
    let mut s = format!("seed {}, warp {}\n", r.config.seed, r.config.warp);
    for c in &r.checks {
        let _ = writeln!(s, "{} {:<36} {:>12.3e}  (tol {:.0e})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.measured, c.tolerance);
    }
    let _ = write!(s, "{}", if r.passed { "all checks passed" } else { "some checks FAILED" });
    s
}
