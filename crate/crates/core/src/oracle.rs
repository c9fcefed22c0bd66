//! Brute-force checks on the `N`-torsion points of `A`.
//!
//! Points of `(1/N)Λ/Λ` are stored as tuples `y ∈ (ℤ/N)^{2n}` in the
//! Λ-basis, so `g = (M, t)` acts by `y ↦ My + Nt mod N`. Everything here is
//! plain enumeration with machine integers and shares no code path with the
//! lattice algorithms it checks beyond reading the datum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{has_fixed_point, AffineAut, HyperellipticDatum};
use crate::albanese::AlbaneseReport;
use crate::error::{Error, Result};
use crate::exactlin::{smith_normal_form, vector_denominator_lcm, RatMatrix};

pub const DEFAULT_POINT_CAP: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct TorsionModel {
    pub level: u64,
    pub rank: usize,
    linear: Vec<Vec<Vec<i64>>>,
    shifts: Vec<Vec<i64>>,
}

fn small(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Internal(format!("{what} does not fit in 64 bits")))
}

fn element_data(a: &AffineAut, level: u64) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let n = BigRational::from_integer(BigInt::from(level));
    let mut shift = Vec::with_capacity(a.rank());
    for t in &a.translation {
        let s = t * &n;
        if !s.is_integer() {
            return Err(Error::BadLevel(format!(
                "level {level} does not clear the translation denominator {}",
                t.denom()
            )));
        }
        shift.push(small(&s.to_integer().mod_floor(&BigInt::from(level)), "a shift")?);
    }
    let linear = a
        .linear
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| small(x, "a matrix entry")).collect())
        .collect::<Result<_>>()?;
    Ok((linear, shift))
}

fn model_size(level: u64, rank: usize) -> u128 {
    (0..rank)
        .try_fold(1u128, |acc, _| acc.checked_mul(level as u128))
        .unwrap_or(u128::MAX)
}

pub fn build_model(d: &HyperellipticDatum, level: u64, cap: u128) -> Result<TorsionModel> {
    if level == 0 {
        return Err(Error::BadLevel("level must be positive".into()));
    }
    let points = model_size(level, d.rank());
    if points > cap {
        return Err(Error::CapExceeded { points, cap });
    }
    let mut linear = Vec::new();
    let mut shifts = Vec::new();
    for a in &d.group.elements {
        let (m, s) = element_data(a, level)?;
        linear.push(m);
        shifts.push(s);
    }
    Ok(TorsionModel {
        level,
        rank: d.rank(),
        linear,
        shifts,
    })
}

fn apply_raw(m: &[Vec<i64>], s: &[i64], n: i64, y: &[i64], out: &mut [i64]) {
    for (i, row) in m.iter().enumerate() {
        let v = row.iter().zip(y).fold(s[i], |acc, (a, b)| acc + a * b);
        out[i] = v.rem_euclid(n);
    }
}

/// Advances `y` through `(ℤ/n)^len` in index order; false after the last.
fn step(y: &mut [i64], n: i64) -> bool {
    for c in y.iter_mut() {
        *c += 1;
        if *c < n {
            return true;
        }
        *c = 0;
    }
    false
}

fn count_fixed(m: &[Vec<i64>], s: &[i64], n: i64) -> u64 {
    let mut y = vec![0i64; s.len()];
    let mut out = vec![0i64; s.len()];
    let mut count = 0;
    loop {
        apply_raw(m, s, n, &y, &mut out);
        if out == y {
            count += 1;
        }
        if !step(&mut y, n) {
            return count;
        }
    }
}

impl TorsionModel {
    pub fn size(&self) -> u128 {
        model_size(self.level, self.rank)
    }

    pub fn index(&self, y: &[i64]) -> usize {
        y.iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.level as usize + c as usize)
    }

    pub fn point(&self, mut idx: usize) -> Vec<i64> {
        let n = self.level as usize;
        (0..self.rank)
            .map(|_| {
                let c = idx % n;
                idx /= n;
                c as i64
            })
            .collect()
    }

    pub fn apply(&self, element: usize, y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        apply_raw(
            &self.linear[element],
            &self.shifts[element],
            self.level as i64,
            y,
            &mut out,
        );
        out
    }

    /// The action of one element as a permutation of point indices.
    pub fn permutation(&self, element: usize) -> Vec<usize> {
        (0..self.size() as usize)
            .map(|i| self.index(&self.apply(element, &self.point(i))))
            .collect()
    }
}

pub fn oracle_fixed_points(model: &TorsionModel, element: usize) -> u64 {
    count_fixed(&model.linear[element], &model.shifts[element], model.level as i64)
}

/// Least common multiple of the denominators of all translations.
pub fn translation_level(d: &HyperellipticDatum) -> u64 {
    let l = d
        .group
        .elements
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(&vector_denominator_lcm(&a.translation)));
    l.to_u64().expect("small denominators")
}

pub fn default_level(d: &HyperellipticDatum) -> u64 {
    let orders = (0..d.group.order()).fold(1u64, |acc, i| acc.lcm(&(d.group.element_order(i) as u64)));
    translation_level(d) * orders
}

/// A level at which every fixed point class of `g` has a representative:
/// solving `(M − I)x ≡ −t` through the Smith form of `M − I` only divides
/// by its invariant factors, so `den(t) · s_max` clears every denominator.
pub fn exhaustive_level(a: &AffineAut) -> u64 {
    let smith = smith_normal_form(&a.linear.sub_identity());
    let s_max = smith
        .invariant_factors()
        .into_iter()
        .filter(|s| !s.is_zero())
        .map(|s| s.abs())
        .max();
    let den = vector_denominator_lcm(&a.translation);
    (den * s_max.unwrap_or_else(BigInt::one)).to_u64().expect("small level")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// All `N^{2n}` points enumerated at once.
    Full,
    /// `M` is block diagonal in the Λ-basis; blocks are enumerated
    /// separately and the counts multiplied. Still exhaustive.
    Blockwise,
}

/// Connected components of the coordinate graph with an edge `{i, j}`
/// whenever `M_ij ≠ 0`.
fn coordinate_blocks(m: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let r = m.len();
    let mut comp = vec![usize::MAX; r];
    let mut blocks = Vec::new();
    for start in 0..r {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < block.len() {
            let i = block[k];
            for j in 0..r {
                if comp[j] == usize::MAX && (m[i][j] != 0 || m[j][i] != 0) {
                    comp[j] = id;
                    block.push(j);
                }
            }
            k += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Fixed points of one element at `level`, splitting into coordinate blocks
/// when the whole model would exceed `cap`.
pub fn count_fixed_points(a: &AffineAut, level: u64, cap: u128) -> Result<(u64, CountMode)> {
    let (m, s) = element_data(a, level)?;
    let n = level as i64;
    if model_size(level, a.rank()) <= cap {
        return Ok((count_fixed(&m, &s, n), CountMode::Full));
    }
    let mut total = 1u64;
    for block in coordinate_blocks(&m) {
        let points = model_size(level, block.len());
        if points > cap {
            return Err(Error::CapExceeded { points, cap });
        }
        let bm: Vec<Vec<i64>> = block
            .iter()
            .map(|&i| block.iter().map(|&j| m[i][j]).collect())
            .collect();
        let bs: Vec<i64> = block.iter().map(|&i| s[i]).collect();
        total = total.saturating_mul(count_fixed(&bm, &bs, n));
        if total == 0 {
            break;
        }
    }
    Ok((total, CountMode::Blockwise))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCheck {
    pub element: String,
    pub level: u64,
    /// `den(t)·s_max`; the level used is always a multiple of it.
    pub exhaustive_bound: u64,
    pub mode: CountMode,
    pub fixed_points: u64,
    pub has_fixed_point: bool,
    pub agree: bool,
}

/// Compares enumeration with `has_fixed_point` for every non-identity
/// element. The level for `g` is `lcm(denominators)·ord(g)`, enlarged to a
/// multiple of its exhaustive bound when that does not already divide it.
pub fn fixed_point_agreement(d: &HyperellipticDatum, cap: u128) -> Result<Vec<ElementCheck>> {
    let base = translation_level(d);
    let mut out = Vec::new();
    for (i, a) in d.group.elements.iter().enumerate() {
        if a.is_identity() {
            continue;
        }
        let bound = exhaustive_level(a);
        let level = (base * d.group.element_order(i) as u64).lcm(&bound);
        let (count, mode) = count_fixed_points(a, level, cap)?;
        let exact = has_fixed_point(a);
        out.push(ElementCheck {
            element: d.group.label(i),
            level,
            exhaustive_bound: bound,
            mode,
            fixed_points: count,
            has_fixed_point: exact,
            agree: (count > 0) == exact,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberVerdict {
    pub level: u64,
    pub points: u64,
    pub orbits: u64,
    /// Distinct values of the Albanese map on orbits.
    pub fibers: u64,
    /// Model points in `V₁ + Λ`.
    pub fiber_points: u64,
    pub h_order: usize,
    pub expected_orbits_per_fiber: Option<u64>,
    pub orbit_sizes_divide: bool,
    pub passed: bool,
    /// A point of a fiber with the wrong number of orbits, as a tuple mod `level`.
    pub witness: Option<Vec<i64>>,
    pub message: String,
}

/// Integer matrix `Q` and modulus `D·N` with `Qy mod DN` the coordinates of
/// `P₀(y/N)` modulo the lattice spanned by `basis` (a basis of a lattice in
/// the image of `P₀`).
fn key_map(p0: &RatMatrix, basis: &RatMatrix, level: u64) -> Result<(Vec<Vec<i64>>, i64)> {
    let r0 = basis.cols();
    if r0 == 0 {
        return Ok((Vec::new(), 1));
    }
    let bt = basis.transpose();
    let gram = (&bt * basis)
        .inverse()
        .ok_or_else(|| Error::Internal("lattice basis is dependent".into()))?;
    let coords = &(&gram * &bt) * p0;
    let (den, q) = coords.clear_denominators();
    let modulus = small(&(den * BigInt::from(level)), "the key modulus")?;
    let rows = q
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| small(x, "a key entry")).collect())
        .collect::<Result<_>>()?;
    Ok((rows, modulus))
}

fn key(q: &[Vec<i64>], modulus: i64, y: &[i64]) -> Vec<i64> {
    q.iter()
        .map(|r| {
            r.iter()
                .zip(y)
                .fold(0i64, |acc, (a, b)| acc + a * b)
                .rem_euclid(modulus)
        })
        .collect()
}

/// Checks the Albanese map orbit by orbit: over every value it takes, the
/// number of `G`-orbits must be `|model ∩ (V₁ + Λ)| / |H|`.
pub fn oracle_fiber_count(model: &TorsionModel, report: &AlbaneseReport) -> Result<FiberVerdict> {
    let dec = &report.decomposition;
    let (qb, mb) = key_map(&dec.p0, &report.albanese_lattice.basis_matrix(), model.level)?;
    let (ql, ml) = key_map(&dec.p0, &dec.projected_lattice()?.basis_matrix(), model.level)?;
    let size = usize::try_from(model.size()).map_err(|_| Error::Internal("model too large".into()))?;
    let g = model.linear.len();
    let h_order = report.subgroup_h.len();
    let mut seen = vec![false; size];
    let mut per_fiber: std::collections::BTreeMap<Vec<i64>, (u64, usize)> = Default::default();
    let mut orbits = 0u64;
    let mut fiber_points = 0u64;
    let mut orbit_sizes_divide = true;
    let mut orbit = Vec::with_capacity(g);
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let y = model.point(start);
        orbit.clear();
        for e in 0..g {
            let idx = model.index(&model.apply(e, &y));
            if !seen[idx] {
                seen[idx] = true;
                orbit.push(idx);
            }
        }
        if !g.is_multiple_of(orbit.len()) {
            orbit_sizes_divide = false;
        }
        orbits += 1;
        for &idx in &orbit {
            if key(&ql, ml, &model.point(idx)).iter().all(|&c| c == 0) {
                fiber_points += 1;
            }
        }
        per_fiber.entry(key(&qb, mb, &y)).or_insert((0, start)).0 += 1;
    }
    let expected = (h_order > 0 && fiber_points.is_multiple_of(h_order as u64)).then(|| fiber_points / h_order as u64);
    let bad = per_fiber.values().find(|(count, _)| Some(*count) != expected);
    let passed = orbit_sizes_divide && bad.is_none();
    let message = match (bad, expected) {
        (None, _) if !orbit_sizes_divide => "an orbit size does not divide |G|".to_string(),
        (None, _) => format!("{} fibers, each with {} orbits", per_fiber.len(), expected.unwrap_or(0)),
        (Some((count, _)), Some(e)) => format!("a fiber has {count} orbits instead of {e}"),
        (Some((count, _)), None) => {
            format!("{fiber_points} points in V₁ + Λ are not divisible by |H| = {h_order}; a fiber has {count} orbits")
        }
    };
    Ok(FiberVerdict {
        level: model.level,
        points: size as u64,
        orbits,
        fibers: per_fiber.len() as u64,
        fiber_points,
        h_order,
        expected_orbits_per_fiber: expected,
        orbit_sizes_divide,
        passed,
        witness: bad.map(|&(_, idx)| model.point(idx)),
        message,
    })
}

/// Fiber check at the smallest admissible level, the translation level.
pub fn fiber_check(d: &HyperellipticDatum, report: &AlbaneseReport, cap: u128) -> Result<FiberVerdict> {
    let model = build_model(d, translation_level(d), cap)?;
    oracle_fiber_count(&model, report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub elements: Vec<ElementCheck>,
    pub fiber: FiberVerdict,
    pub passed: bool,
}

/// Fixed-point agreement for every element plus the fiber check; the fiber
/// check runs at `level` when given.
pub fn run_oracle(
    d: &HyperellipticDatum,
    report: &AlbaneseReport,
    level: Option<u64>,
    cap: u128,
) -> Result<OracleVerdict> {
    let elements = fixed_point_agreement(d, cap)?;
    let fiber = match level {
        Some(n) => oracle_fiber_count(&build_model(d, n, cap)?, report)?,
        None => fiber_check(d, report, cap)?,
    };
    let passed = fiber.passed && elements.iter().all(|e| e.agree);
    Ok(OracleVerdict {
        elements,
        fiber,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albanese::run_pipeline;
    use crate::catalog;

    fn datum(name: &str) -> HyperellipticDatum {
        catalog::entry(name).unwrap().input().to_datum().unwrap()
    }

    #[test]
    fn small_models() {
        let d = datum("bielliptic-1");
        let m = build_model(&d, 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(m.size(), 16);
        assert_eq!(oracle_fixed_points(&m, 1), 0);
        for e in 0..d.group.order() {
            let mut p = m.permutation(e);
            p.sort_unstable();
            assert_eq!(p, (0..16).collect::<Vec<_>>());
        }
        let m4 = build_model(&d, 4, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(oracle_fixed_points(&m4, 1), 0);
        assert!(matches!(build_model(&d, 3, DEFAULT_POINT_CAP), Err(Error::BadLevel(_))));
        assert!(matches!(
            build_model(&d, 2, 10),
            Err(Error::CapExceeded { points: 16, cap: 10 })
        ));
    }

    #[test]
    fn minus_one_has_two_torsion_fixed() {
        let a = AffineAut::new(
            crate::exactlin::IntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]]),
            vec![BigRational::zero(); 2],
            vec![crate::cyclotomic::RootOfUnity::new(1, 2)],
        )
        .unwrap();
        assert_eq!(
            count_fixed_points(&a, 2, DEFAULT_POINT_CAP).unwrap(),
            (4, CountMode::Full)
        );
        assert_eq!(count_fixed_points(&a, 2, 3).unwrap(), (4, CountMode::Blockwise));
        assert_eq!(exhaustive_level(&a), 2);
    }

    #[test]
    fn z4_at_level_four() {
        let d = datum("z4-threefold");
        let m = build_model(&d, 4, DEFAULT_POINT_CAP).unwrap();
        for e in 1..d.group.order() {
            assert_eq!(oracle_fixed_points(&m, e), 0, "{}", d.group.label(e));
        }
        let report = run_pipeline(&d, false).unwrap();
        let v = oracle_fiber_count(&m, &report).unwrap();
        assert!(v.passed, "{}", v.message);
        assert_eq!(v.h_order, 2);
    }

    #[test]
    fn corrupted_h_fails_with_witness() {
        let d = datum("z4-threefold");
        let mut report = run_pipeline(&d, false).unwrap();
        report.subgroup_h.pop();
        let v = oracle_fiber_count(&build_model(&d, 4, DEFAULT_POINT_CAP).unwrap(), &report).unwrap();
        assert!(!v.passed);
        assert!(v.witness.is_some());
    }

    #[test]
    fn corrupted_fixture_is_caught() {
        let fx = catalog::negative_fixtures()
            .into_iter()
            .find(|f| f.name == "z4-threefold-corrupted")
            .unwrap();
        let d = crate::document::InputDocument::Builder(fx.document).to_datum().unwrap();
        let checks = fixed_point_agreement(&d, DEFAULT_POINT_CAP).unwrap();
        assert!(checks.iter().all(|c| c.agree));
        assert!(checks.iter().any(|c| c.element == "g^2" && c.fixed_points > 0));
    }
}
