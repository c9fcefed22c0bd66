//! Named constructions with their known Albanese data, used as regression
//! fixtures and as worked examples.
//!
//! Coordinates: each elliptic factor `ℂ/(ℤ + τℤ)` contributes the pair
//! (coefficient of 1, coefficient of τ), so a point such as τ/2 is written
//! (0, 1/2) on its factor, `(1 − ζ₃)/3` is (1/3, −1/3) on an Eisenstein
//! factor and `(1 + i)/2` is (1/2, 1/2) on the Gaussian factor.
//!
//! `expected` holds published values only. `derived` holds values this
//! library computed and that were then checked by hand or by the
//! enumeration oracle; they guard against regressions, not against errors
//! in the published data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::albanese::FiberClass;
use crate::analysis::{analyze, Analysis};
use crate::cyclotomic::RootOfUnity;
use crate::document::{BuilderDocument, BuilderGenerator, InputDocument, Rotation};
use crate::error::{Error, Result};
use crate::exactlin::{rat, RatVector, Sublattice};
use crate::torus::EllipticFactor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedFiber {
    Abelian,
    Hyperelliptic { order: usize, cyclic: bool },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub dim: Option<usize>,
    pub group_order: Option<usize>,
    pub group_invariants: Option<Vec<u64>>,
    pub q: Option<usize>,
    pub albanese_factors: Option<Vec<u64>>,
    /// Generators of `Λ_B` over `Λ₀`, product coordinates.
    pub albanese_gens: Option<Vec<RatVector>>,
    pub k0_gens: Option<Vec<RatVector>>,
    pub k1_gens: Option<Vec<RatVector>>,
    /// Element labels of `H` in closure order.
    pub subgroup_h: Option<Vec<String>>,
    pub fiber: Option<ExpectedFiber>,
    pub fiber_dim: Option<usize>,
    /// Labels of the elliptic factors of the fiber torus.
    pub fiber_factors: Option<Vec<String>>,
    pub canonical_order: Option<u64>,
    pub fiber_canonical_order: Option<u64>,
    pub pulled_back: Option<bool>,
    pub diamond: Option<Vec<Vec<u64>>>,
    pub euler_char_o: Option<i64>,
    pub cyclic: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub provenance: &'static str,
    pub document: BuilderDocument,
    pub expected: Expected,
    pub derived: Expected,
}

impl CatalogEntry {
    pub fn input(&self) -> InputDocument {
        InputDocument::Builder(self.document.clone())
    }
}

/// A datum that must be rejected, with the elements expected to have fixed
/// points.
#[derive(Clone, Debug)]
pub struct NegativeFixture {
    pub name: &'static str,
    pub description: &'static str,
    pub document: BuilderDocument,
    pub fixed_point_elements: Vec<&'static str>,
}

fn generic(label: &str) -> EllipticFactor {
    EllipticFactor::generic(label)
}

/// `(a, b)` on one factor: the coefficients of 1 and τ as fractions.
type Pair = ((i64, i64), (i64, i64));

/// Product-coordinate vector with `(a, b)` pairs per factor.
fn point(pairs: &[Pair]) -> RatVector {
    pairs
        .iter()
        .flat_map(|&(a, b)| [rat(a.0, a.1), rat(b.0, b.1)])
        .collect()
}

const Z: ((i64, i64), (i64, i64)) = ((0, 1), (0, 1));

fn generator(name: &str, rotations: &[&str], translation: RatVector) -> BuilderGenerator {
    BuilderGenerator {
        name: name.into(),
        rotations: rotations
            .iter()
            .map(|s| Rotation::Root(RootOfUnity::from_str(s).expect("catalog roots parse")))
            .collect(),
        translation,
    }
}

fn document(
    name: &str,
    factors: Vec<EllipticFactor>,
    k_gens: Vec<RatVector>,
    generators: Vec<BuilderGenerator>,
) -> BuilderDocument {
    BuilderDocument {
        name: Some(name.into()),
        factors,
        k_gens,
        generators,
    }
}

fn labels(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

#[allow(clippy::type_complexity)]
fn bielliptic(row: usize) -> CatalogEntry {
    let eis = EllipticFactor::eisenstein;
    let (second, k, order, rot, shift, alb_gens, factors, fiber_label): (
        EllipticFactor,
        Option<RatVector>,
        u64,
        &str,
        (i64, i64),
        Vec<RatVector>,
        Vec<u64>,
        &str,
    ) = match row {
        1 => (
            generic("tau'"),
            None,
            2,
            "-1",
            (1, 2),
            vec![point(&[((1, 2), (0, 1)), Z])],
            vec![2],
            "tau'",
        ),
        2 => (
            generic("tau'"),
            Some(point(&[((0, 1), (1, 2)), ((1, 2), (0, 1))])),
            2,
            "-1",
            (1, 2),
            vec![point(&[((1, 2), (0, 1)), Z]), point(&[((0, 1), (1, 2)), Z])],
            vec![2, 2],
            "tau'",
        ),
        3 => (
            eis(),
            None,
            3,
            "zeta3",
            (1, 3),
            vec![point(&[((1, 3), (0, 1)), Z])],
            vec![3],
            "zeta3",
        ),
        4 => (
            eis(),
            Some(point(&[((0, 1), (1, 3)), ((1, 3), (-1, 3))])),
            3,
            "zeta3",
            (1, 3),
            vec![point(&[((1, 3), (0, 1)), Z]), point(&[((0, 1), (1, 3)), Z])],
            vec![3, 3],
            "zeta3",
        ),
        5 => (
            EllipticFactor::gauss(),
            None,
            4,
            "i",
            (1, 4),
            vec![point(&[((1, 4), (0, 1)), Z])],
            vec![4],
            "i",
        ),
        6 => (
            EllipticFactor::gauss(),
            Some(point(&[((0, 1), (1, 2)), ((1, 2), (1, 2))])),
            4,
            "i",
            (1, 4),
            vec![point(&[((1, 4), (0, 1)), Z]), point(&[((0, 1), (1, 2)), Z])],
            vec![2, 4],
            "i",
        ),
        7 => (
            eis(),
            None,
            6,
            "zeta6",
            (1, 6),
            vec![point(&[((1, 6), (0, 1)), Z])],
            vec![6],
            "zeta3",
        ),
        _ => unreachable!("seven bielliptic families"),
    };
    let name: &'static str = [
        "bielliptic-1",
        "bielliptic-2",
        "bielliptic-3",
        "bielliptic-4",
        "bielliptic-5",
        "bielliptic-6",
        "bielliptic-7",
    ][row - 1];
    let doc = document(
        name,
        vec![generic("tau"), second],
        k.into_iter().collect(),
        vec![generator("g", &["1", rot], point(&[(shift, (0, 1)), Z]))],
    );
    CatalogEntry {
        name,
        description: "bielliptic surface (E_tau x E')/K with g(z1, z2) = (z1 + 1/#G, rot * z2)",
        provenance: "seven families of bielliptic surfaces: Albanese E_tau/<generators>, fiber E'",
        document: doc,
        expected: Expected {
            dim: Some(2),
            group_order: Some(order as usize),
            q: Some(1),
            albanese_factors: Some(factors),
            albanese_gens: Some(alb_gens),
            fiber: Some(ExpectedFiber::Abelian),
            fiber_dim: Some(1),
            fiber_factors: labels(&[fiber_label]),
            fiber_canonical_order: Some(1),
            pulled_back: Some(true),
            cyclic: Some(true),
            ..Default::default()
        },
        derived: Expected {
            canonical_order: Some(order),
            subgroup_h: labels(&["e"]),
            euler_char_o: Some(0),
            ..Default::default()
        },
    }
}

fn z4_document(shift: (i64, i64), name: &str) -> BuilderDocument {
    document(
        name,
        vec![generic("tau0"), generic("tau1"), EllipticFactor::gauss()],
        vec![point(&[((1, 2), (0, 1)), ((1, 2), (0, 1)), Z])],
        vec![generator("g", &["1", "-1", "i"], point(&[(shift, (0, 1)), Z, Z]))],
    )
}

fn z4_threefold() -> CatalogEntry {
    CatalogEntry {
        name: "z4-threefold",
        description: "(E_tau0 x E_tau1 x E_i)/K, K = <(1/2, 1/2, 0)>, g = (z0 + 1/4, -z1, i z2)",
        provenance: "threefold with cyclic holonomy of order 4 whose Albanese fiber is a bielliptic surface",
        document: z4_document((1, 4), "z4-threefold"),
        expected: Expected {
            dim: Some(3),
            group_order: Some(4),
            q: Some(1),
            k0_gens: Some(vec![point(&[((1, 2), (0, 1)), Z, Z])]),
            k1_gens: Some(vec![point(&[Z, ((1, 2), (0, 1)), Z])]),
            subgroup_h: labels(&["e", "g^2"]),
            fiber: Some(ExpectedFiber::Hyperelliptic { order: 2, cyclic: true }),
            fiber_dim: Some(2),
            fiber_factors: labels(&["tau1", "i"]),
            cyclic: Some(true),
            ..Default::default()
        },
        derived: Expected {
            albanese_factors: Some(vec![4]),
            albanese_gens: Some(vec![point(&[((1, 4), (0, 1)), Z, Z])]),
            canonical_order: Some(4),
            fiber_canonical_order: Some(2),
            pulled_back: Some(false),
            euler_char_o: Some(0),
            ..Default::default()
        },
    }
}

fn zmzm_threefold(m: i64) -> CatalogEntry {
    let (name, factors, t, rot): (&'static str, Vec<EllipticFactor>, Pair, &str) = if m == 2 {
        (
            "zmzm-threefold-m2",
            vec![generic("tau0"), generic("tau1"), generic("tau2")],
            ((1, 2), (0, 1)),
            "-1",
        )
    } else {
        (
            "zmzm-threefold-m3",
            vec![
                generic("tau0"),
                EllipticFactor::eisenstein(),
                EllipticFactor::eisenstein(),
            ],
            ((1, 3), (-1, 3)),
            "zeta3",
        )
    };
    let doc = document(
        name,
        factors,
        vec![point(&[((1, m), (0, 1)), Z, t])],
        vec![
            generator("g1", &["1", rot, "1"], point(&[((1, m), (0, 1)), Z, Z])),
            generator("g2", &["1", "1", rot], point(&[((0, 1), (1, m)), Z, Z])),
        ],
    );
    let h = if m == 2 {
        labels(&["e", "g1"])
    } else {
        labels(&["e", "g1", "g1^2"])
    };
    CatalogEntry {
        name,
        description:
            "(E0 x E1 x E2)/K, K = <(1/m, 0, t)>, g1 = (z0 + 1/m, zeta_m z1, z2), g2 = (z0 + tau0/m, z1, zeta_m z2)",
        provenance: "threefold with holonomy (Z/m)^2 whose Albanese fibers are bielliptic with holonomy Z/m",
        document: doc,
        expected: Expected {
            dim: Some(3),
            group_order: Some((m * m) as usize),
            group_invariants: Some(vec![m as u64, m as u64]),
            q: Some(1),
            k0_gens: Some(vec![point(&[((1, m), (0, 1)), Z, Z])]),
            k1_gens: Some(vec![point(&[Z, Z, t])]),
            subgroup_h: h,
            fiber: Some(ExpectedFiber::Hyperelliptic {
                order: m as usize,
                cyclic: true,
            }),
            fiber_dim: Some(2),
            cyclic: Some(false),
            ..Default::default()
        },
        derived: Expected {
            euler_char_o: Some(0),
            ..Default::default()
        },
    }
}

fn z2z2_threefold() -> CatalogEntry {
    let half = ((1, 2), (0, 1));
    CatalogEntry {
        name: "z2z2-threefold",
        description: "E1 x E2 x E3 with g1 = (-z1, -z2 + 1/2, z3 + 1/2), g2 = (z1 + 1/2, -z2, -z3)",
        provenance: "regular hyperelliptic threefold with holonomy Z/2 x Z/2 and trivial canonical bundle",
        document: document(
            "z2z2-threefold",
            vec![generic("tau1"), generic("tau2"), generic("tau3")],
            vec![],
            vec![
                generator("g1", &["-1", "-1", "1"], point(&[Z, half, half])),
                generator("g2", &["1", "-1", "-1"], point(&[half, Z, Z])),
            ],
        ),
        expected: Expected {
            dim: Some(3),
            group_order: Some(4),
            group_invariants: Some(vec![2, 2]),
            q: Some(0),
            diamond: Some(vec![
                vec![1],
                vec![0, 0],
                vec![0, 3, 0],
                vec![1, 3, 3, 1],
                vec![0, 3, 0],
                vec![0, 0],
                vec![1],
            ]),
            canonical_order: Some(1),
            euler_char_o: Some(0),
            cyclic: Some(false),
            ..Default::default()
        },
        derived: Expected {
            albanese_factors: Some(vec![]),
            fiber_dim: Some(3),
            ..Default::default()
        },
    }
}

fn abelian_fiber_construction() -> CatalogEntry {
    CatalogEntry {
        name: "abelian-fiber-construction",
        description: "(E0 x A1)/(Z/2), A1 = E1 x E2, generator (z0 + 1/2, -z1)",
        provenance: "construction of a hyperelliptic variety with a prescribed abelian Albanese fiber, n = 1, m = 2",
        document: document(
            "abelian-fiber-construction",
            vec![generic("tau0"), generic("tau1"), generic("tau2")],
            vec![],
            vec![generator("g", &["1", "-1", "-1"], point(&[((1, 2), (0, 1)), Z, Z]))],
        ),
        expected: Expected {
            dim: Some(3),
            group_order: Some(2),
            q: Some(1),
            fiber: Some(ExpectedFiber::Abelian),
            fiber_dim: Some(2),
            fiber_factors: labels(&["tau1", "tau2"]),
            ..Default::default()
        },
        derived: Expected {
            albanese_factors: Some(vec![2]),
            subgroup_h: labels(&["e"]),
            canonical_order: Some(1),
            ..Default::default()
        },
    }
}

fn low_irregularity_cyclic() -> CatalogEntry {
    CatalogEntry {
        name: "low-irregularity-cyclic",
        description: "(T x E)/(Z/2), T = E1 x E2, generator (a, z) -> (-a, z + 1/2)",
        provenance: "cyclic hyperelliptic threefold of irregularity 1 (n = 2)",
        document: document(
            "low-irregularity-cyclic",
            vec![generic("a1"), generic("a2"), generic("e")],
            vec![],
            vec![generator("g", &["-1", "-1", "1"], point(&[Z, Z, ((1, 2), (0, 1))]))],
        ),
        expected: Expected {
            dim: Some(3),
            group_order: Some(2),
            q: Some(1),
            cyclic: Some(true),
            ..Default::default()
        },
        derived: Expected {
            fiber: Some(ExpectedFiber::Abelian),
            fiber_factors: labels(&["a1", "a2"]),
            canonical_order: Some(1),
            ..Default::default()
        },
    }
}

fn small_irregularity_cyclic() -> CatalogEntry {
    CatalogEntry {
        name: "small-irregularity-cyclic",
        description: "product of bielliptic covers with holonomy Z/2 and Z/3: g = (z1 + 1/2, -z2, z3 + 1/3, zeta3 z4)",
        provenance: "cyclic hyperelliptic fourfold of irregularity 2 with holonomy Z/6",
        document: document(
            "small-irregularity-cyclic",
            vec![generic("a"), generic("b"), generic("c"), EllipticFactor::eisenstein()],
            vec![],
            vec![generator(
                "g",
                &["1", "-1", "1", "zeta3"],
                point(&[((1, 2), (0, 1)), Z, ((1, 3), (0, 1)), Z]),
            )],
        ),
        expected: Expected {
            dim: Some(4),
            group_order: Some(6),
            q: Some(2),
            cyclic: Some(true),
            ..Default::default()
        },
        derived: Expected {
            albanese_factors: Some(vec![6]),
            fiber: Some(ExpectedFiber::Abelian),
            subgroup_h: labels(&["e"]),
            canonical_order: Some(6),
            ..Default::default()
        },
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (1..=7).map(bielliptic).collect();
    out.push(z4_threefold());
    out.push(zmzm_threefold(2));
    out.push(zmzm_threefold(3));
    out.push(z2z2_threefold());
    out.push(abelian_fiber_construction());
    out.push(low_irregularity_cyclic());
    out.push(small_irregularity_cyclic());
    out
}

pub fn list_entries() -> Vec<&'static str> {
    entries().into_iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn negative_fixtures() -> Vec<NegativeFixture> {
    let third = ((1, 3), (0, 1));
    vec![
        NegativeFixture {
            name: "z4-threefold-corrupted",
            description: "z4-threefold with the translation 1/4 replaced by 1/2",
            document: z4_document((1, 2), "z4-threefold-corrupted"),
            fixed_point_elements: vec!["g^2"],
        },
        NegativeFixture {
            name: "z2z6-forced-h3",
            description: "holonomy Z/2 x Z/6 with linear parts diag(1, -1, 1), diag(1, 1, zeta6) and K forcing |H| = 3",
            document: document(
                "z2z6-forced-h3",
                vec![generic("tau'"), generic("tau"), EllipticFactor::eisenstein()],
                vec![point(&[third, Z, Z])],
                vec![
                    generator("g1", &["1", "-1", "1"], point(&[((1, 2), (0, 1)), Z, Z])),
                    generator(
                        "g2",
                        &["1", "1", "zeta6"],
                        point(&[((1, 6), (0, 1)), ((1, 2), (0, 1)), Z]),
                    ),
                ],
            ),
            fixed_point_elements: vec!["g2^2"],
        },
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Published,
    Derived,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Published => "published",
            Source::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub field: String,
    pub source: Source,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}): expected {}, computed {}",
            self.field, self.source, self.expected, self.computed
        )
    }
}

#[derive(Clone, Debug)]
pub struct EntryRun {
    pub name: &'static str,
    pub analysis: Analysis,
    pub mismatches: Vec<Mismatch>,
}

impl EntryRun {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn ambient_lattice(a: &Analysis, l: &Sublattice, extra: &[RatVector]) -> Result<Sublattice> {
    let b = a.datum.torus.basis_matrix();
    let mut gens: Vec<RatVector> = l.basis().iter().map(|v| b.mul_vec(v)).collect();
    gens.extend(extra.iter().cloned());
    Sublattice::from_generators(a.datum.rank(), &gens)
}

fn fmt_vectors(v: &[RatVector]) -> String {
    let parts: Vec<String> = v.iter().map(|x| crate::serde_exact::format_vector(x)).collect();
    format!("<{}>", parts.join(", "))
}

struct Checker<'a> {
    out: Vec<Mismatch>,
    source: Source,
    analysis: &'a Analysis,
}

impl Checker<'_> {
    fn eq<T: PartialEq + fmt::Debug>(&mut self, field: &str, expected: &Option<T>, computed: T) {
        if let Some(e) = expected {
            if *e != computed {
                self.out.push(Mismatch {
                    field: field.into(),
                    source: self.source,
                    expected: format!("{e:?}"),
                    computed: format!("{computed:?}"),
                });
            }
        }
    }

    /// `base + ℤ·expected` and `base + ℤ·computed` agree as lattices.
    fn lattice(
        &mut self,
        field: &str,
        base: &Sublattice,
        expected: &Option<Vec<RatVector>>,
        computed: &[RatVector],
    ) -> Result<()> {
        let Some(e) = expected else {
            return Ok(());
        };
        let b = self.analysis.datum.torus.basis_matrix();
        let computed_ambient: Vec<RatVector> = computed.iter().map(|v| b.mul_vec(v)).collect();
        let want = ambient_lattice(self.analysis, base, e)?;
        let have = ambient_lattice(self.analysis, base, &computed_ambient)?;
        if want != have {
            self.out.push(Mismatch {
                field: field.into(),
                source: self.source,
                expected: fmt_vectors(e),
                computed: fmt_vectors(&computed_ambient),
            });
        }
        Ok(())
    }

    fn run(&mut self, exp: &Expected) -> Result<()> {
        let a = self.analysis;
        let r = &a.albanese;
        let dec = &r.decomposition;
        self.eq("dim", &exp.dim, a.datum.dim());
        self.eq("group_order", &exp.group_order, a.datum.group.order());
        self.eq(
            "group_invariants",
            &exp.group_invariants,
            a.datum.group.abelian_invariants().unwrap_or_default(),
        );
        self.eq("q", &exp.q, r.q);
        self.eq("albanese_factors", &exp.albanese_factors, r.albanese_isogeny_factors());
        self.lattice(
            "albanese_gens",
            &dec.lambda0,
            &exp.albanese_gens,
            r.albanese_lattice.basis(),
        )?;
        self.lattice("k0_gens", &dec.lambda0, &exp.k0_gens, &dec.k0.generators)?;
        self.lattice("k1_gens", &dec.lambda1, &exp.k1_gens, &dec.k1.generators)?;
        self.eq("subgroup_h", &exp.subgroup_h, r.subgroup_h_labels.clone());
        let fiber = match &r.fiber_class {
            FiberClass::Abelian { .. } => ExpectedFiber::Abelian,
            FiberClass::Hyperelliptic { order, cyclic, .. } => ExpectedFiber::Hyperelliptic {
                order: *order,
                cyclic: *cyclic,
            },
        };
        self.eq("fiber", &exp.fiber, fiber);
        self.eq("fiber_dim", &exp.fiber_dim, r.fiber_class.dim());
        let fiber_labels = r
            .fiber
            .as_ref()
            .and_then(|f| f.torus.factors.as_ref())
            .map(|fs| fs.iter().map(|f| f.label.clone()).collect::<Vec<_>>())
            .unwrap_or_default();
        self.eq("fiber_factors", &exp.fiber_factors, fiber_labels);
        self.eq("canonical_order", &exp.canonical_order, a.invariants.canonical_order);
        self.eq(
            "fiber_canonical_order",
            &exp.fiber_canonical_order,
            a.canonical.fiber_order,
        );
        self.eq("pulled_back", &exp.pulled_back, a.canonical.pulled_back);
        self.eq("diamond", &exp.diamond, a.invariants.diamond.rows());
        self.eq("euler_char_o", &exp.euler_char_o, a.invariants.euler_char_o);
        self.eq("cyclic", &exp.cyclic, a.invariants.cyclic);
        Ok(())
    }
}

/// Differences between computed and recorded values (empty on success).
pub fn compare(e: &CatalogEntry, a: &Analysis) -> Result<Vec<Mismatch>> {
    let mut c = Checker {
        out: Vec::new(),
        source: Source::Published,
        analysis: a,
    };
    c.run(&e.expected)?;
    c.source = Source::Derived;
    c.run(&e.derived)?;
    Ok(c.out)
}

pub fn run_entry(name: &str) -> Result<EntryRun> {
    let e = entry(name)?;
    let datum = e.input().to_datum()?;
    let analysis = analyze(&datum, true)?;
    let mismatches = compare(&e, &analysis)?;
    Ok(EntryRun {
        name: e.name,
        analysis,
        mismatches,
    })
}

/// Exported document for `name`.
pub fn export_entry(name: &str) -> Result<InputDocument> {
    Ok(entry(name)?.input())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_matches() {
        for name in list_entries() {
            let run = run_entry(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            for m in &run.mismatches {
                eprintln!("{name}: {m}");
            }
            assert!(run.passed(), "{name}");
        }
    }

    #[test]
    fn negative_fixtures_are_rejected() {
        for fx in negative_fixtures() {
            let mut d = InputDocument::Builder(fx.document.clone()).to_datum().unwrap();
            let report = d.validate();
            assert!(!report.passed, "{}", fx.name);
            let labels: Vec<&str> = report.fixed_points.iter().map(|w| w.label.as_str()).collect();
            for e in &fx.fixed_point_elements {
                assert!(labels.contains(e), "{}: {labels:?}", fx.name);
            }
        }
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(run_entry("nope"), Err(Error::UnknownEntry(_))));
    }
}
