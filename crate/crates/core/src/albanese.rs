//! Albanese variety and Albanese fiber of `X = A/G`.
//!
//! With `V₀` the fixed space of the linear parts and `V₁` its orthogonal
//! complement for the invariant form, `Λ₀ = Λ ∩ V₀` and `Λ₁ = Λ ∩ V₁` give
//! abelian subvarieties `A₀`, `A₁` with `A₀ × A₁ → A` an isogeny with kernel
//! `K = Λ/(Λ₀ ⊕ Λ₁)`. Splitting each translation along `V₀ ⊕ V₁` gives
//! the cocycle `τ(g) = t₀(g) + t₁(g)`. The Albanese variety is
//! `(A₀/K₀)/G = V₀/Λ_B` where `Λ_B = P₀(Λ) + Σ ℤ t₀(g)`, and the fiber over
//! the origin is `A₁/H` with `H = {g : t₀(g) ∈ P₀(Λ)}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::action::{
    close_group, quotient_by_translations, transform_aut, AffineAut, HyperellipticDatum, DEFAULT_GROUP_CAP,
};
use crate::error::{Error, Result};
use crate::exactlin::{
    is_zero_vector, kernel_lattice, quotient_group, rational_kernel_lattice, solve_integer, vec_sub,
    FiniteAbelianGroup, RatMatrix, RatVector, Sublattice,
};
use crate::torus::{build_product_torus, raw_torus, AlternatingForm, TorusDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub lambda0: Sublattice,
    pub lambda1: Sublattice,
    /// `K = Λ/(Λ₀ ⊕ Λ₁)`.
    pub k: FiniteAbelianGroup,
    /// Projections of the generators of `K` to `V₀` (mod Λ₀) and `V₁`
    /// (mod Λ₁); `k0.generators[i]` is paired with `k1.generators[i]`.
    pub k0: FiniteAbelianGroup,
    pub k1: FiniteAbelianGroup,
    /// Projection onto `V₀` along `V₁`, and its complement.
    pub p0: RatMatrix,
    pub p1: RatMatrix,
    /// Complex coordinates on which every element acts trivially.
    pub trivial_coordinates: Vec<usize>,
}

impl Decomposition {
    pub fn rank(&self) -> usize {
        self.lambda0.ambient()
    }

    /// `P₀(Λ) = Λ₀ + ℤ·K₀`.
    pub fn projected_lattice(&self) -> Result<Sublattice> {
        self.k0.lift_lattice()
    }

    /// `[B₀ | B₁]`, the basis adapted to `V₀ ⊕ V₁`.
    pub fn adapted_basis(&self) -> RatMatrix {
        let mut cols = self.lambda0.basis().to_vec();
        cols.extend(self.lambda1.basis().iter().cloned());
        RatMatrix::from_columns(self.rank(), &cols)
    }
}

/// Per element: `t₀(g) = P₀ τ(g)` and `t₁(g) = τ(g) − t₀(g)`, Λ-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    pub t0: Vec<RatVector>,
    pub t1: Vec<RatVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberClass {
    Abelian {
        dim: usize,
    },
    Hyperelliptic {
        dim: usize,
        order: usize,
        invariants: Option<Vec<u64>>,
        cyclic: bool,
    },
}

impl FiberClass {
    pub fn is_abelian(&self) -> bool {
        matches!(self, FiberClass::Abelian { .. })
    }

    pub fn dim(&self) -> usize {
        match self {
            FiberClass::Abelian { dim } | FiberClass::Hyperelliptic { dim, .. } => *dim,
        }
    }

    pub fn holonomy_order(&self) -> usize {
        match self {
            FiberClass::Abelian { .. } => 1,
            FiberClass::Hyperelliptic { order, .. } => *order,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbaneseReport {
    pub dim: usize,
    /// Irregularity, the dimension of the Albanese variety.
    pub q: usize,
    pub decomposition: Decomposition,
    pub cocycles: CocycleTable,
    /// Element indices of `H`.
    pub subgroup_h: Vec<usize>,
    pub subgroup_h_labels: Vec<String>,
    pub albanese_lattice: Sublattice,
    /// `Λ_B/Λ₀`, the kernel of `A₀ → Alb(X)`.
    pub albanese_isogeny: FiniteAbelianGroup,
    /// The fiber over the origin, normalized; `None` when it is a point.
    pub fiber: Option<HyperellipticDatum>,
    pub fiber_class: FiberClass,
    pub fiber_report: Option<Box<AlbaneseReport>>,
    /// Raw-mode input: the complex structure is not known, so stability of
    /// `V₀` and `V₁` under it is assumed rather than checked.
    pub j_stability_assumed: bool,
}

impl AlbaneseReport {
    pub fn albanese_isogeny_factors(&self) -> Vec<u64> {
        self.albanese_isogeny.factors_u64()
    }
}

/// Saturated `Λ ∩ ⋂ ker(M_g − I)` over the generators.
pub fn compute_a0(d: &HyperellipticDatum) -> Result<Sublattice> {
    let r = d.rank();
    let mut gens = d.group.generators.iter();
    let Some(first) = gens.next() else {
        return Ok(Sublattice::standard(r));
    };
    let stacked = gens.fold(first.linear.sub_identity(), |acc, g| {
        acc.vstack(&g.linear.sub_identity())
    });
    let l0 = kernel_lattice(&stacked);
    if !l0.rank().is_multiple_of(2) {
        return Err(Error::OddRank(l0.rank()));
    }
    Ok(l0)
}

/// `Λ ∩ V₁` for `V₁` the form-orthogonal complement of `V₀`.
pub fn compute_a1(d: &HyperellipticDatum, lambda0: &Sublattice) -> Result<Sublattice> {
    let r = d.rank();
    if lambda0.rank() == r {
        return Ok(Sublattice::zero(r));
    }
    if lambda0.rank() == 0 {
        return Ok(Sublattice::standard(r));
    }
    let b0 = lambda0.basis_matrix();
    let b0te = &b0.transpose() * d.form.matrix();
    if (&b0te * &b0).determinant().is_zero() {
        return Err(Error::DegenerateRestriction);
    }
    let l1 = rational_kernel_lattice(&b0te);
    for g in &d.group.generators {
        let m = g.linear.to_rational();
        if l1.basis().iter().any(|v| !is_zero_vector(&b0te.mul_vec(&m.mul_vec(v)))) {
            return Err(Error::Inconsistent(
                "the complement V₁ is not stable under the group".into(),
            ));
        }
    }
    Ok(l1)
}

/// `K`, `K₀`, `K₁` and the projections along `V₀ ⊕ V₁`.
pub fn compute_k(d: &HyperellipticDatum, lambda0: Sublattice, lambda1: Sublattice) -> Result<Decomposition> {
    let r = d.rank();
    let (r0, r1) = (lambda0.rank(), lambda1.rank());
    if r0 + r1 != r {
        return Err(Error::RankMismatch { big: r, small: r0 + r1 });
    }
    let sum = lambda0.sum(&lambda1)?;
    let k = quotient_group(&Sublattice::standard(r), &sum)?;
    let mut cols = lambda0.basis().to_vec();
    cols.extend(lambda1.basis().iter().cloned());
    let c = RatMatrix::from_columns(r, &cols);
    let cinv = c
        .inverse()
        .ok_or(Error::Inconsistent("V₀ and V₁ do not span V".into()))?;
    let mask: Vec<BigRational> = (0..r)
        .map(|i| {
            if i < r0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let p0 = &(&c * &RatMatrix::diagonal(&mask)) * &cinv;
    let p1 = &RatMatrix::identity(r) - &p0;
    let g0: Vec<RatVector> = k.generators.iter().map(|v| p0.mul_vec(v)).collect();
    let g1: Vec<RatVector> = k.generators.iter().map(|v| p1.mul_vec(v)).collect();
    let k0 = FiniteAbelianGroup {
        invariant_factors: k.invariant_factors.clone(),
        generators: g0,
        reference: lambda0.clone(),
    };
    let k1 = FiniteAbelianGroup {
        invariant_factors: k.invariant_factors.clone(),
        generators: g1,
        reference: lambda1.clone(),
    };
    for (name, part) in [("K₀", &k0), ("K₁", &k1)] {
        let actual = quotient_group(&part.lift_lattice()?, &part.reference)?;
        if actual.order() != k.order() {
            return Err(Error::Inconsistent(format!(
                "|{name}| = {} but |K| = {}",
                actual.order(),
                k.order()
            )));
        }
    }
    let trivial_coordinates = trivial_coordinates(d);
    if 2 * trivial_coordinates.len() != r0 {
        return Err(Error::Inconsistent(format!(
            "{} complex coordinates carry the trivial character but Λ₀ has rank {r0}",
            trivial_coordinates.len()
        )));
    }
    Ok(Decomposition {
        lambda0,
        lambda1,
        k,
        k0,
        k1,
        p0,
        p1,
        trivial_coordinates,
    })
}

fn trivial_coordinates(d: &HyperellipticDatum) -> Vec<usize> {
    (0..d.dim())
        .filter(|&i| d.group.generators.iter().all(|g| g.eigenvalues[i].is_one()))
        .collect()
}

pub fn decompose(d: &HyperellipticDatum) -> Result<Decomposition> {
    let l0 = compute_a0(d)?;
    let l1 = compute_a1(d, &l0)?;
    compute_k(d, l0, l1)
}

/// Splits every translation and checks the cocycle identity
/// `t₀(gh) ≡ t₀(g) + t₀(h) mod P₀(Λ)`.
pub fn decompose_cocycle(d: &HyperellipticDatum, dec: &Decomposition) -> Result<CocycleTable> {
    let mut t0 = Vec::with_capacity(d.group.order());
    let mut t1 = Vec::with_capacity(d.group.order());
    for a in &d.group.elements {
        let x = dec.p0.mul_vec(&a.translation);
        t1.push(vec_sub(&a.translation, &x));
        t0.push(x);
    }
    let p0_lattice = dec.projected_lattice()?;
    let gen_idx: Vec<usize> = generator_indices(d);
    for i in 0..d.group.order() {
        for &j in &gen_idx {
            let prod = d.group.table[i][j];
            let defect = vec_sub(&vec_sub(&t0[prod], &t0[i]), &t0[j]);
            if !p0_lattice.contains(&defect)? {
                return Err(Error::Internal(format!(
                    "cocycle identity fails for {} and {}",
                    d.group.label(i),
                    d.group.label(j)
                )));
            }
        }
    }
    Ok(CocycleTable { t0, t1 })
}

fn generator_indices(d: &HyperellipticDatum) -> Vec<usize> {
    d.group
        .generators
        .iter()
        .map(|g| {
            d.group
                .elements
                .iter()
                .position(|e| e.key() == g.key())
                .expect("generator in closure")
        })
        .collect()
}

/// `H = {g : t₀(g) ∈ P₀(Λ)}`.
pub fn compute_h(d: &HyperellipticDatum, dec: &Decomposition, table: &CocycleTable) -> Result<Vec<usize>> {
    let p0_lattice = dec.projected_lattice()?;
    let mut h = Vec::new();
    for (i, t0) in table.t0.iter().enumerate() {
        if p0_lattice.contains(t0)? {
            h.push(i);
        }
    }
    if !d.group.is_subgroup(&h) {
        let labels: Vec<String> = h.iter().map(|&i| d.group.label(i)).collect();
        return Err(Error::NotASubgroup(labels.join(", ")));
    }
    Ok(h)
}

/// `Λ_B = P₀(Λ) + Σ ℤ t₀(g)` and `Λ_B/Λ₀`.
pub fn compute_albanese(
    d: &HyperellipticDatum,
    dec: &Decomposition,
    table: &CocycleTable,
) -> Result<(Sublattice, FiniteAbelianGroup)> {
    let extra: Vec<RatVector> = generator_indices(d).into_iter().map(|i| table.t0[i].clone()).collect();
    let lb = dec.projected_lattice()?.extended(&extra)?;
    let iso = quotient_group(&lb, &dec.lambda0)?;
    Ok((lb, iso))
}

fn subgroup_generated(d: &HyperellipticDatum, gens: &[usize]) -> Vec<usize> {
    let mut span = vec![0];
    let mut i = 0;
    while i < span.len() {
        for &g in gens {
            let y = d.group.table[span[i]][g];
            if !span.contains(&y) {
                span.push(y);
            }
        }
        i += 1;
    }
    span.sort_unstable();
    span
}

/// Torus structure on `V₁/Λ₁` in coordinates `y ↦ B₁y`, together with the
/// change of coordinates to the new torus's own Λ-basis.
fn fiber_torus(d: &HyperellipticDatum, lambda1: &Sublattice) -> Result<(TorusDatum, RatMatrix)> {
    let r1 = lambda1.rank();
    let product_basis = &d.torus.basis_matrix() * &lambda1.basis_matrix();
    if let Some(factors) = &d.torus.factors {
        // V₁ may be a sum of factor blocks, in which case the fiber is again
        // a product of those elliptic curves modulo a finite group.
        let blocks: Vec<usize> = (0..factors.len())
            .filter(|&f| {
                (0..r1).any(|j| !product_basis[(2 * f, j)].is_zero() || !product_basis[(2 * f + 1, j)].is_zero())
            })
            .collect();
        if 2 * blocks.len() == r1 {
            let rows: Vec<usize> = blocks.iter().flat_map(|&f| [2 * f, 2 * f + 1]).collect();
            let restricted = RatMatrix::from_fn(r1, r1, |i, j| product_basis[(rows[i], j)].clone());
            let gens: Vec<RatVector> = restricted
                .columns()
                .into_iter()
                .filter(|c| !crate::exactlin::is_integral(c))
                .collect();
            let fs = blocks.iter().map(|&f| factors[f].clone()).collect();
            let torus = build_product_torus(fs, gens)?;
            let c = &torus.basis_matrix().inverse().expect("full rank") * &restricted;
            return Ok((torus, c));
        }
    }
    let id: Vec<RatVector> = RatMatrix::identity(r1).columns();
    Ok((raw_torus(r1, &id)?, RatMatrix::identity(r1)))
}

/// The datum `(A₁, H)`: `h` acts by `a₁ ↦ ρ(h)a₁ + t₁(h) − P₁λ` for a lattice
/// vector λ with `P₀λ = t₀(h)`, then normalized by its translations.
pub fn compute_fiber(
    d: &HyperellipticDatum,
    dec: &Decomposition,
    table: &CocycleTable,
    h: &[usize],
) -> Result<Option<HyperellipticDatum>> {
    let (r, r0) = (d.rank(), dec.lambda0.rank());
    let r1 = r - r0;
    if r1 == 0 {
        return Ok(None);
    }
    let cinv = dec.adapted_basis().inverse().expect("adapted basis");
    let b1 = dec.lambda1.basis_matrix();
    let tail = |v: &RatVector| -> RatVector { cinv.mul_vec(v)[r0..].to_vec() };
    let (den, p0_int) = dec.p0.clear_denominators();
    let den = BigRational::from_integer(den);

    let mut gens_idx = Vec::new();
    let mut span = vec![0];
    for &x in h {
        if !span.contains(&x) {
            gens_idx.push(x);
            span = subgroup_generated(d, &gens_idx);
        }
    }
    let fiber_coords: Vec<usize> = (0..d.dim()).filter(|i| !dec.trivial_coordinates.contains(i)).collect();
    let (torus, c) = fiber_torus(d, &dec.lambda1)?;
    let c_inv = c.inverse().expect("change of basis");

    let mut gens = Vec::new();
    for &i in &gens_idx {
        let a = &d.group.elements[i];
        let n = (&cinv * &(&a.linear.to_rational() * &b1)).to_rows()[r0..].to_vec();
        let n = RatMatrix::from_rows(n)?
            .to_integer()
            .ok_or_else(|| Error::Internal("linear part does not preserve Λ₁".into()))?;
        let rhs: Vec<BigInt> = table.t0[i]
            .iter()
            .map(|x| {
                let y = x * &den;
                y.is_integer().then(|| y.to_integer())
            })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Internal("t₀(h) is not in P₀(Λ)".into()))?;
        let lambda = solve_integer(&p0_int, &rhs).ok_or_else(|| Error::Internal("t₀(h) is not in P₀(Λ)".into()))?;
        let lambda: RatVector = lambda.into_iter().map(BigRational::from_integer).collect();
        let shift = vec_sub(&table.t1[i], &dec.p1.mul_vec(&lambda));
        let eig = fiber_coords.iter().map(|&k| a.eigenvalues[k]).collect();
        let y = AffineAut::new(n, tail(&shift), eig)?;
        gens.push(transform_aut(&y, &c, &c_inv)?);
    }
    let names = gens_idx.iter().map(|&i| d.group.label(i)).collect();
    let group = close_group(gens, names, r1, DEFAULT_GROUP_CAP)?;
    let form_y = &(&b1.transpose() * d.form.matrix()) * &b1;
    let form = AlternatingForm::new(&(&c_inv.transpose() * &form_y) * &c_inv)?;
    let builder = d.builder_mode && torus.factors.is_some();
    let fiber = HyperellipticDatum::new(torus, group, form, builder)?;
    let mut fiber = quotient_by_translations(&fiber)?;
    let report = fiber.validate();
    if !report.passed {
        return Err(Error::Internal(format!(
            "fiber datum fails validation: {}",
            report.failures().join("; ")
        )));
    }
    Ok(Some(fiber))
}

pub fn classify_fiber(fiber: Option<&HyperellipticDatum>) -> FiberClass {
    let Some(f) = fiber else {
        return FiberClass::Abelian { dim: 0 };
    };
    let order = f.group.order();
    if order == 1 {
        return FiberClass::Abelian { dim: f.dim() };
    }
    let invariants = f.group.abelian_invariants();
    let cyclic = invariants.as_ref().is_some_and(|v| v.len() == 1);
    FiberClass::Hyperelliptic {
        dim: f.dim(),
        order,
        invariants,
        cyclic,
    }
}

/// The whole pipeline; with `recurse`, hyperelliptic fibers of smaller
/// dimension get their own report.
pub fn run_pipeline(d: &HyperellipticDatum, recurse: bool) -> Result<AlbaneseReport> {
    run_at_depth(d, recurse, d.dim())
}

fn run_at_depth(d: &HyperellipticDatum, recurse: bool, budget: usize) -> Result<AlbaneseReport> {
    let mut d = d.clone();
    if !d.validated {
        let report = d.validate();
        if !report.passed {
            return Err(Error::InvalidDatum(report.failures().join("; ")));
        }
    }
    let dec = decompose(&d)?;
    let q = dec.lambda0.rank() / 2;
    if d.group.order() > 1 && q >= d.dim() {
        return Err(Error::Inconsistent(format!(
            "irregularity {q} is not below the dimension {}",
            d.dim()
        )));
    }
    let cocycles = decompose_cocycle(&d, &dec)?;
    let h = compute_h(&d, &dec, &cocycles)?;
    let (albanese_lattice, albanese_isogeny) = compute_albanese(&d, &dec, &cocycles)?;
    let fiber = compute_fiber(&d, &dec, &cocycles, &h)?;
    let fiber_class = classify_fiber(fiber.as_ref());
    let fiber_report = match (&fiber, &fiber_class) {
        (Some(f), FiberClass::Hyperelliptic { .. }) if recurse && q > 0 && budget > 1 => {
            Some(Box::new(run_at_depth(f, true, budget - 1)?))
        }
        _ => None,
    };
    Ok(AlbaneseReport {
        dim: d.dim(),
        q,
        subgroup_h_labels: h.iter().map(|&i| d.group.label(i)).collect(),
        subgroup_h: h,
        decomposition: dec,
        cocycles,
        albanese_lattice,
        albanese_isogeny,
        fiber,
        fiber_class,
        fiber_report,
        j_stability_assumed: !d.builder_mode,
    })
}
