//! Serializable reports, in the ambient coordinates of the input.
//!
//! Vectors are written in the coordinates the datum was given in (product
//! coordinates for builder input, `lattice_basis` coordinates for raw input),
//! rationals as `"p/q"` strings. Field order is fixed, so output is
//! deterministic.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::action::{HyperellipticDatum, ValidationReport};
use crate::albanese::{AlbaneseReport, FiberClass};
use crate::analysis::Analysis;
use crate::catalog::{EntryRun, Mismatch};
use crate::document::{ambient, export_document, InputDocument};
use crate::exactlin::RatVector;
use crate::invariants::{HodgeDiamond, InvariantsReport, PullbackDiagnostic};
use crate::serde_exact::format_vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointDoc {
    pub element: String,
    #[serde(with = "crate::serde_exact::rat_list")]
    pub point: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub passed: bool,
    pub group_order: usize,
    pub elements: Vec<String>,
    pub fixed_points: Vec<FixedPointDoc>,
    pub translations: Vec<String>,
    pub form_invariant: bool,
    pub eigenvalue_failures: Vec<String>,
}

impl ValidationDoc {
    pub fn new(d: &HyperellipticDatum, v: &ValidationReport) -> Self {
        ValidationDoc {
            passed: v.passed,
            group_order: v.group_order,
            elements: (0..d.group.order()).map(|i| d.group.label(i)).collect(),
            fixed_points: v
                .fixed_points
                .iter()
                .map(|w| FixedPointDoc {
                    element: w.label.clone(),
                    point: ambient(d, &w.point),
                })
                .collect(),
            translations: v.translations.clone(),
            form_invariant: v.form_invariant,
            eigenvalue_failures: v.eigenvalue_failures.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        line(
            &mut s,
            "status",
            if self.passed { "hyperelliptic datum" } else { "invalid" },
        );
        line(&mut s, "group order", &self.group_order.to_string());
        line(&mut s, "elements", &self.elements.join(", "));
        for w in &self.fixed_points {
            line(
                &mut s,
                "fixed point",
                &format!("{} fixes {}", w.element, format_vector(&w.point)),
            );
        }
        for t in &self.translations {
            line(&mut s, "translation", t);
        }
        if !self.form_invariant {
            line(&mut s, "form", "not invariant");
        }
        for e in &self.eigenvalue_failures {
            line(&mut s, "eigenvalues", e);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FiberClassDoc {
    Point,
    Abelian {
        dim: usize,
    },
    Hyperelliptic {
        dim: usize,
        holonomy_order: usize,
        holonomy_invariants: Option<Vec<u64>>,
        cyclic: bool,
    },
}

impl FiberClassDoc {
    fn new(c: &FiberClass) -> Self {
        match c {
            FiberClass::Abelian { dim: 0 } => FiberClassDoc::Point,
            FiberClass::Abelian { dim } => FiberClassDoc::Abelian { dim: *dim },
            FiberClass::Hyperelliptic {
                dim,
                order,
                invariants,
                cyclic,
            } => FiberClassDoc::Hyperelliptic {
                dim: *dim,
                holonomy_order: *order,
                holonomy_invariants: invariants.clone(),
                cyclic: *cyclic,
            },
        }
    }

    fn describe(&self) -> String {
        match self {
            FiberClassDoc::Point => "a point".into(),
            FiberClassDoc::Abelian { dim } => format!("abelian variety of dimension {dim}"),
            FiberClassDoc::Hyperelliptic {
                dim,
                holonomy_order,
                cyclic,
                ..
            } => format!(
                "hyperelliptic of dimension {dim}, {} holonomy of order {holonomy_order}",
                if *cyclic { "cyclic" } else { "non-cyclic" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlbaneseDoc {
    pub dim: usize,
    pub q: usize,
    /// Invariant factors of `K = Λ/(Λ₀ + Λ₁)`.
    pub k_factors: Vec<u64>,
    #[serde(with = "crate::serde_exact::rat_columns")]
    pub k0_gens: Vec<RatVector>,
    #[serde(with = "crate::serde_exact::rat_columns")]
    pub k1_gens: Vec<RatVector>,
    /// Basis of `Λ₀`.
    #[serde(with = "crate::serde_exact::rat_columns")]
    pub lambda0: Vec<RatVector>,
    /// Basis of `Λ_B`, the lattice of the Albanese variety `V₀/Λ_B`.
    #[serde(with = "crate::serde_exact::rat_columns")]
    pub albanese_lattice: Vec<RatVector>,
    pub albanese_isogeny_factors: Vec<u64>,
    pub subgroup_h: Vec<String>,
    pub fiber_class: FiberClassDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<InputDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_report: Option<Box<AlbaneseDoc>>,
    pub j_stability_assumed: bool,
}

impl AlbaneseDoc {
    pub fn new(d: &HyperellipticDatum, r: &AlbaneseReport) -> Self {
        let amb = |vs: &[RatVector]| vs.iter().map(|v| ambient(d, v)).collect::<Vec<_>>();
        let fiber_report = match (&r.fiber, &r.fiber_report) {
            (Some(f), Some(fr)) => Some(Box::new(AlbaneseDoc::new(f, fr))),
            _ => None,
        };
        AlbaneseDoc {
            dim: r.dim,
            q: r.q,
            k_factors: r.decomposition.k.factors_u64(),
            k0_gens: amb(&r.decomposition.k0.generators),
            k1_gens: amb(&r.decomposition.k1.generators),
            lambda0: amb(r.decomposition.lambda0.basis()),
            albanese_lattice: amb(r.albanese_lattice.basis()),
            albanese_isogeny_factors: r.albanese_isogeny_factors(),
            subgroup_h: r.subgroup_h_labels.clone(),
            fiber_class: FiberClassDoc::new(&r.fiber_class),
            fiber: r.fiber.as_ref().map(|f| export_document(f, Some("fiber".into()))),
            fiber_report,
            j_stability_assumed: r.j_stability_assumed,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        self.write_text(&mut s, "");
        s
    }

    fn write_text(&self, s: &mut String, indent: &str) {
        let vecs = |v: &[RatVector]| {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter().map(|x| format_vector(x)).collect::<Vec<_>>().join(", ")
            }
        };
        let factors = |f: &[u64]| {
            if f.is_empty() {
                "trivial".to_string()
            } else {
                f.iter().map(|x| format!("ℤ/{x}")).collect::<Vec<_>>().join(" × ")
            }
        };
        let mut put = |k: &str, v: &str| {
            let _ = writeln!(s, "{indent}{k:<18} {v}");
        };
        put("dimension", &self.dim.to_string());
        put("q", &self.q.to_string());
        put("K", &factors(&self.k_factors));
        put("K0 generators", &vecs(&self.k0_gens));
        put("K1 generators", &vecs(&self.k1_gens));
        put("Albanese lattice", &vecs(&self.albanese_lattice));
        put("isogeny kernel", &factors(&self.albanese_isogeny_factors));
        put("H", &self.subgroup_h.join(", "));
        put("fiber", &self.fiber_class.describe());
        if self.j_stability_assumed {
            put("note", "complex structure not given; stability of V0, V1 assumed");
        }
        if let Some(fr) = &self.fiber_report {
            let _ = writeln!(s, "{indent}fiber report:");
            fr.write_text(s, &format!("{indent}  "));
        }
    }
}

fn line(s: &mut String, k: &str, v: &str) {
    let _ = writeln!(s, "{k:<18} {v}");
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub dim: usize,
    pub q: usize,
    /// Row `k` lists `h^{k,0}, …, h^{0,k}`.
    pub hodge_diamond: Vec<Vec<u64>>,
    pub canonical_order: u64,
    pub euler_char_o: i64,
    pub group_order: usize,
    pub cyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_canonical_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_pulled_back: Option<bool>,
}

impl InvariantsDoc {
    pub fn new(inv: &InvariantsReport, canonical: Option<&PullbackDiagnostic>) -> Self {
        InvariantsDoc {
            dim: inv.dim,
            q: inv.q,
            hodge_diamond: inv.diamond.rows(),
            canonical_order: inv.canonical_order,
            euler_char_o: inv.euler_char_o,
            group_order: inv.group_order,
            cyclic: inv.cyclic,
            fiber_canonical_order: canonical.map(|c| c.fiber_order),
            canonical_pulled_back: canonical.map(|c| c.pulled_back),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        line(&mut s, "dimension", &self.dim.to_string());
        line(&mut s, "q", &self.q.to_string());
        line(&mut s, "canonical order", &self.canonical_order.to_string());
        if let Some(f) = self.fiber_canonical_order {
            line(&mut s, "fiber canonical", &f.to_string());
        }
        if let Some(p) = self.canonical_pulled_back {
            line(&mut s, "ω from Albanese", if p { "yes" } else { "no" });
        }
        line(&mut s, "χ(O)", &self.euler_char_o.to_string());
        line(&mut s, "group order", &self.group_order.to_string());
        let _ = writeln!(s, "Hodge diamond:");
        let mut h = vec![vec![0; self.dim + 1]; self.dim + 1];
        for (k, row) in self.hodge_diamond.iter().enumerate() {
            let hi = k.min(self.dim);
            for (i, x) in row.iter().enumerate() {
                let p = hi - i;
                h[p][k - p] = *x;
            }
        }
        s.push_str(&HodgeDiamond { n: self.dim, h }.to_string());
        s
    }
}

/// Everything about one datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub validation: ValidationDoc,
    pub albanese: AlbaneseDoc,
    pub invariants: InvariantsDoc,
}

impl AnalysisDoc {
    pub fn new(name: Option<String>, a: &Analysis) -> Self {
        AnalysisDoc {
            name,
            validation: ValidationDoc::new(&a.datum, &a.validation),
            albanese: AlbaneseDoc::new(&a.datum, &a.albanese),
            invariants: InvariantsDoc::new(&a.invariants, Some(&a.canonical)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRunDoc {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
    pub analysis: AnalysisDoc,
}

impl CatalogRunDoc {
    pub fn new(run: &EntryRun) -> Self {
        CatalogRunDoc {
            name: run.name.to_string(),
            passed: run.passed(),
            mismatches: run.mismatches.clone(),
            analysis: AnalysisDoc::new(Some(run.name.to_string()), &run.analysis),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        line(&mut s, "entry", &self.name);
        line(&mut s, "result", if self.passed { "matches" } else { "MISMATCH" });
        for m in &self.mismatches {
            let _ = writeln!(s, "  {m}");
        }
        s
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::catalog;

    #[test]
    fn analysis_round_trips() {
        for name in ["z4-threefold", "z2z2-threefold", "bielliptic-6"] {
            let d = catalog::entry(name).unwrap().input().to_datum().unwrap();
            let a = analyze(&d, true).unwrap();
            let doc = AnalysisDoc::new(Some(name.into()), &a);
            let text = to_json(&doc);
            let back: AnalysisDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn z4_albanese_document() {
        let d = catalog::entry("z4-threefold").unwrap().input().to_datum().unwrap();
        let a = analyze(&d, true).unwrap();
        let doc = AlbaneseDoc::new(&a.datum, &a.albanese);
        assert_eq!(doc.subgroup_h, vec!["e", "g^2"]);
        assert_eq!(
            doc.fiber_class,
            FiberClassDoc::Hyperelliptic {
                dim: 2,
                holonomy_order: 2,
                holonomy_invariants: Some(vec![2]),
                cyclic: true
            }
        );
        assert_eq!(doc.fiber_report.as_ref().unwrap().q, 1);
        let fiber = doc.fiber.as_ref().unwrap().to_datum().unwrap();
        assert_eq!(fiber.group.order(), 2);
        assert!(doc.to_text().contains("fiber report:"));
    }

    #[test]
    fn diamond_text_is_triangular() {
        let d = catalog::entry("z2z2-threefold").unwrap().input().to_datum().unwrap();
        let a = analyze(&d, false).unwrap();
        let text = InvariantsDoc::new(&a.invariants, None).to_text();
        let diamond: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("Hodge")).skip(1).collect();
        assert_eq!(diamond.len(), 7);
        assert_eq!(diamond[3].trim(), "1 3 3 1");
        assert_eq!(diamond[0].trim(), "1");
    }

    #[test]
    fn invalid_datum_reports_fixed_points_in_input_coordinates() {
        let fx = catalog::negative_fixtures()
            .into_iter()
            .find(|f| f.name == "z4-threefold-corrupted")
            .unwrap();
        let mut d = InputDocument::Builder(fx.document).to_datum().unwrap();
        let v = d.validate();
        let doc = ValidationDoc::new(&d, &v);
        assert!(!doc.passed);
        let labels: Vec<&str> = doc.fixed_points.iter().map(|w| w.element.as_str()).collect();
        assert!(labels.contains(&"g^2"));
        let back: ValidationDoc = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
        assert!(doc.to_text().contains("invalid"));
    }
}
