//! JSON input documents, their conversion to data, and export back.
//!
//! Builder documents describe `(E₁ × … × E_n)/K` with one rotation per
//! factor and translations in product coordinates. Raw documents give the
//! linear parts, translations and form directly in a basis of Λ; the
//! optional `lattice_basis` records how that basis sits in ℚ^{2n}.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::action::{close_group, transform_aut, AffineAut, HyperellipticDatum, DEFAULT_GROUP_CAP};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, RatMatrix, RatVector};
use crate::torus::{
    average_form, build_product_torus, factor_automorphism_matrix, raw_torus, standard_form, AlternatingForm,
    EllipticFactor,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum InputDocument {
    Builder(BuilderDocument),
    Raw(RawDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuilderDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub factors: Vec<EllipticFactor>,
    #[serde(default, with = "crate::serde_exact::rat_columns")]
    pub k_gens: Vec<RatVector>,
    pub generators: Vec<BuilderGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuilderGenerator {
    pub name: String,
    /// One entry per factor: the root of unity multiplying that coordinate.
    pub rotations: Vec<Rotation>,
    #[serde(with = "crate::serde_exact::rat_list")]
    pub translation: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rotation {
    Root(RootOfUnity),
    /// An explicit 2×2 integer block on (1, τ) with its complex eigenvalue.
    Block {
        #[serde(with = "crate::serde_exact::int_rows")]
        matrix: Vec<Vec<BigInt>>,
        eigenvalue: RootOfUnity,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(
        default,
        skip_serializing_if = "Vec::is_empty",
        with = "crate::serde_exact::rat_columns"
    )]
    pub lattice_basis: Vec<RatVector>,
    pub generators: Vec<RawGenerator>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::serde_exact::opt_rat_rows"
    )]
    pub form: Option<Vec<RatVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGenerator {
    pub name: String,
    #[serde(with = "crate::serde_exact::int_rows")]
    pub matrix: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_exact::rat_list")]
    pub translation: RatVector,
    pub eigenvalues: Vec<RootOfUnity>,
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

impl InputDocument {
    pub fn name(&self) -> Option<&str> {
        match self {
            InputDocument::Builder(b) => b.name.as_deref(),
            InputDocument::Raw(r) => r.name.as_deref(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn to_datum(&self) -> Result<HyperellipticDatum> {
        match self {
            InputDocument::Builder(b) => builder_datum(b),
            InputDocument::Raw(r) => raw_datum(r),
        }
    }
}

fn int_matrix(rows: &[Vec<BigInt>], size: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::DimensionMismatch(format!("{what} must be {size}×{size}")));
    }
    IntMatrix::from_rows(rows.to_vec())
}

fn builder_datum(doc: &BuilderDocument) -> Result<HyperellipticDatum> {
    let n = doc.factors.len();
    let rank = 2 * n;
    for k in &doc.k_gens {
        if k.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "k_gen of length {} for {n} factors",
                k.len()
            )));
        }
    }
    let torus = build_product_torus(doc.factors.clone(), doc.k_gens.clone())?;
    let mut gens = Vec::new();
    for g in &doc.generators {
        if g.rotations.len() != n || g.translation.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "generator {} needs {n} rotations and {rank} translation coordinates",
                g.name
            )));
        }
        let mut blocks = Vec::with_capacity(n);
        let mut eig = Vec::with_capacity(n);
        for (f, rot) in doc.factors.iter().zip(&g.rotations) {
            match rot {
                Rotation::Root(z) => {
                    blocks.push(factor_automorphism_matrix(f, *z)?);
                    eig.push(*z);
                }
                Rotation::Block { matrix, eigenvalue } => {
                    blocks.push(int_matrix(matrix, 2, "a rotation block")?);
                    eig.push(*eigenvalue);
                }
            }
        }
        let product = IntMatrix::block_diagonal(&blocks);
        let linear = torus.linear_in_lattice_basis(&product)?;
        let translation = torus.to_lattice_coords(&g.translation)?;
        gens.push(AffineAut::new(linear, translation, eig)?);
    }
    let names = doc.generators.iter().map(|g| g.name.clone()).collect();
    let group = close_group(gens, names, rank, DEFAULT_GROUP_CAP)?;
    let b = torus.basis_matrix();
    let form = AlternatingForm::new(standard_form(&torus)?.pullback(&b))?;
    let linear: Vec<IntMatrix> = group.generators.iter().map(|a| a.linear.clone()).collect();
    let form = average_form(&form, &linear)?;
    HyperellipticDatum::new(torus, group, form, true)
}

fn raw_datum(doc: &RawDocument) -> Result<HyperellipticDatum> {
    let rank = doc.rank;
    let given = if doc.lattice_basis.is_empty() {
        RatMatrix::identity(rank).columns()
    } else {
        doc.lattice_basis.clone()
    };
    if given.len() != rank || given.iter().any(|v| v.len() != rank) {
        return Err(Error::DimensionMismatch(format!(
            "lattice_basis must list {rank} vectors of length {rank}"
        )));
    }
    let torus = raw_torus(rank, &given)?;
    // given basis → canonical basis of the same lattice
    let c = &torus.basis_matrix().inverse().expect("full rank") * &RatMatrix::from_columns(rank, &given);
    let cinv = c
        .inverse()
        .ok_or_else(|| Error::InvalidDatum("lattice_basis is not a basis".into()))?;
    if !c.to_integer().is_some_and(|m| m.is_unimodular()) {
        return Err(Error::InvalidDatum(
            "lattice_basis vectors are not a basis of the lattice they span".into(),
        ));
    }
    let rows = doc.form.as_ref().ok_or(Error::NoProvenance)?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(Error::DimensionMismatch(format!("form must be {rank}×{rank}")));
    }
    let form = RatMatrix::from_rows(rows.clone())?;
    let form = AlternatingForm::new(&(&cinv.transpose() * &form) * &cinv)?;
    let mut gens = Vec::new();
    for g in &doc.generators {
        let m = int_matrix(&g.matrix, rank, &format!("matrix of {}", g.name))?;
        if g.translation.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "translation of {} must have length {rank}",
                g.name
            )));
        }
        let a = AffineAut::new(m, g.translation.clone(), g.eigenvalues.clone())?;
        gens.push(transform_aut(&a, &c, &cinv)?);
    }
    let names = doc.generators.iter().map(|g| g.name.clone()).collect();
    let group = close_group(gens, names, rank, DEFAULT_GROUP_CAP)?;
    HyperellipticDatum::new(torus, group, form, false)
}

/// Builder document when the datum came from elliptic factors and every
/// generator is block diagonal over them; raw document otherwise.
pub fn export_document(d: &HyperellipticDatum, name: Option<String>) -> InputDocument {
    if let (true, Some(doc)) = (d.builder_mode, builder_export(d, name.clone())) {
        return InputDocument::Builder(doc);
    }
    let to_rows = |m: &IntMatrix| m.to_rows();
    InputDocument::Raw(RawDocument {
        name,
        rank: d.rank(),
        lattice_basis: d.torus.lattice.basis().to_vec(),
        generators: d
            .group
            .generators
            .iter()
            .zip(&d.group.names)
            .map(|(a, n)| RawGenerator {
                name: n.clone(),
                matrix: to_rows(&a.linear),
                translation: a.translation.clone(),
                eigenvalues: a.eigenvalues.clone(),
            })
            .collect(),
        form: Some(d.form.matrix().to_rows()),
    })
}

fn builder_export(d: &HyperellipticDatum, name: Option<String>) -> Option<BuilderDocument> {
    let factors = d.torus.factors.clone()?;
    let b = d.torus.basis_matrix();
    let binv = b.inverse()?;
    let mut generators = Vec::new();
    for (a, gname) in d.group.generators.iter().zip(&d.group.names) {
        let product = (&(&b * &a.linear.to_rational()) * &binv).to_integer()?;
        let mut rotations = Vec::new();
        for (f, factor) in factors.iter().enumerate() {
            for other in 0..factors.len() {
                if other != f && !(0..2).all(|i| (0..2).all(|j| product[(2 * f + i, 2 * other + j)] == BigInt::from(0)))
                {
                    return None;
                }
            }
            let block = IntMatrix::from_fn(2, 2, |i, j| product[(2 * f + i, 2 * f + j)].clone());
            let z = a.eigenvalues[f];
            if factor_automorphism_matrix(factor, z).is_ok_and(|m| m == block) {
                rotations.push(Rotation::Root(z));
            } else {
                rotations.push(Rotation::Block {
                    matrix: block.to_rows(),
                    eigenvalue: z,
                });
            }
        }
        let translation = b.mul_vec(&a.translation);
        generators.push(BuilderGenerator {
            name: gname.clone(),
            rotations,
            translation,
        });
    }
    Some(BuilderDocument {
        name,
        factors,
        k_gens: d.torus.quotient_gens.clone(),
        generators,
    })
}

/// Vector in Λ-coordinates written in the ambient coordinates of the torus.
pub fn ambient(d: &HyperellipticDatum, v: &[BigRational]) -> RatVector {
    d.torus.to_product_coords(v)
}
