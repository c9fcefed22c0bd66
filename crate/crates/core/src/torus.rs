//! Abelian varieties `A = V/Λ` presented by rational lattice data.
//!
//! The builder presentation is `A = (E₁ × … × E_n)/K`: every elliptic factor
//! contributes the real basis (1, τ) of its period lattice, so a point of the
//! product is a vector in ℚ^{2n} ("product coordinates") and the product
//! lattice is ℤ^{2n}. Periods are formal: a generic factor only ever admits
//! the automorphisms ±1, while the Gaussian and Eisenstein factors carry the
//! extra units i and ζ₃. A point written τ/2 on a factor is the coordinate
//! pair (0, 1/2).

use std::collections::{HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, RatMatrix, RatVector, Sublattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// ℂ/(ℤ + τℤ) for a formal, arbitrary τ in the upper half-plane.
    Generic,
    /// ℂ/(ℤ + iℤ).
    Gauss,
    /// ℂ/(ℤ + ζ₃ℤ).
    Eisenstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticFactor {
    pub kind: FactorKind,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
}

impl EllipticFactor {
    pub fn generic(label: &str) -> Self {
        EllipticFactor {
            kind: FactorKind::Generic,
            label: label.to_string(),
        }
    }

    pub fn gauss() -> Self {
        EllipticFactor {
            kind: FactorKind::Gauss,
            label: "i".into(),
        }
    }

    pub fn eisenstein() -> Self {
        EllipticFactor {
            kind: FactorKind::Eisenstein,
            label: "zeta3".into(),
        }
    }

    /// Orders of the roots of unity acting on this curve by multiplication.
    pub fn unit_orders(&self) -> &'static [u64] {
        match self.kind {
            FactorKind::Generic => &[1, 2],
            FactorKind::Gauss => &[1, 2, 4],
            FactorKind::Eisenstein => &[1, 2, 3, 6],
        }
    }
}

/// Matrix of `z ↦ ζ·z` on the basis (1, τ) of the factor's lattice.
pub fn factor_automorphism_matrix(f: &EllipticFactor, zeta: RootOfUnity) -> Result<IntMatrix> {
    if !f.unit_orders().contains(&zeta.order()) {
        return Err(Error::InvalidAutomorphism(format!(
            "{zeta} is not an automorphism of the {:?} curve {}",
            f.kind, f.label
        )));
    }
    let (generator, base_order) = match f.kind {
        FactorKind::Generic => (IntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]]), 2),
        // i·1 = i, i·i = −1
        FactorKind::Gauss => (IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]), 4),
        // ζ₆·1 = 1 + ζ₃, ζ₆·ζ₃ = −1
        FactorKind::Eisenstein => (IntMatrix::from_i64_rows(&[&[1, -1], &[1, 0]]), 6),
    };
    let e = zeta.numerator() * (base_order / zeta.order());
    Ok(generator.pow(e as u32))
}

/// `A = V/Λ` with Λ given inside ℚ^{2n} in product coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDatum {
    /// Elliptic-factor provenance (absent for raw lattices).
    pub factors: Option<Vec<EllipticFactor>>,
    /// Torsion points (product coordinates) added to ℤ^{2n}.
    #[serde(with = "crate::serde_exact::rat_columns")]
    pub quotient_gens: Vec<RatVector>,
    pub lattice: Sublattice,
}

impl TorusDatum {
    /// Real rank 2n.
    pub fn rank(&self) -> usize {
        self.lattice.ambient()
    }

    /// Complex dimension n.
    pub fn dim(&self) -> usize {
        self.rank() / 2
    }

    /// Columns: the canonical basis of Λ in product coordinates.
    pub fn basis_matrix(&self) -> RatMatrix {
        self.lattice.basis_matrix()
    }

    pub fn to_lattice_coords(&self, v: &[BigRational]) -> Result<RatVector> {
        self.lattice
            .coordinates(v)?
            .ok_or_else(|| Error::DimensionMismatch("point outside V".into()))
    }

    pub fn to_product_coords(&self, y: &[BigRational]) -> RatVector {
        self.basis_matrix().mul_vec(y)
    }

    /// Rewrite a linear map given in product coordinates in the Λ-basis.
    /// Fails with `LatticeNotPreserved` unless the map preserves Λ.
    pub fn linear_in_lattice_basis(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let b = self.basis_matrix();
        let binv = b.inverse().expect("lattice basis has full rank");
        let conj = &(&binv * &m.to_rational()) * &b;
        let conj = conj
            .to_integer()
            .ok_or_else(|| Error::LatticeNotPreserved(format!("linear part {m} does not map Λ into Λ")))?;
        if !conj.is_unimodular() {
            return Err(Error::LatticeNotPreserved(format!(
                "linear part {m} is not invertible on Λ"
            )));
        }
        Ok(conj)
    }

    /// Index [Λ : ℤ^{2n}] (1 for raw lattices that do not contain ℤ^{2n}).
    pub fn index_over_product(&self) -> BigRational {
        let det = self.basis_matrix().determinant();
        let d = if det < BigRational::zero() { -det } else { det };
        d.recip()
    }
}

/// `Λ = ℤ^{2n} + ℤ·k_gens`.
pub fn build_product_torus(factors: Vec<EllipticFactor>, k_gens: Vec<RatVector>) -> Result<TorusDatum> {
    let rank = 2 * factors.len();
    if rank == 0 {
        return Err(Error::InvalidDatum("a torus needs at least one factor".into()));
    }
    let lattice = Sublattice::standard(rank).extended(&k_gens)?;
    Ok(TorusDatum {
        factors: Some(factors),
        quotient_gens: k_gens,
        lattice,
    })
}

/// A raw full-rank lattice spanned by `generators` in ℚ^{2n}.
pub fn raw_torus(rank: usize, generators: &[RatVector]) -> Result<TorusDatum> {
    if rank == 0 || !rank.is_multiple_of(2) {
        return Err(Error::InvalidDatum(format!(
            "real rank {rank} must be positive and even"
        )));
    }
    let lattice = Sublattice::from_generators(rank, generators)?;
    if lattice.rank() != rank {
        return Err(Error::InvalidDatum(format!(
            "lattice generators span rank {} < {rank}",
            lattice.rank()
        )));
    }
    Ok(TorusDatum {
        factors: None,
        quotient_gens: Vec::new(),
        lattice,
    })
}

/// Rational alternating form, stored by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    matrix: RatMatrix,
}

impl AlternatingForm {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.transpose() != -&matrix {
            return Err(Error::InvalidDatum(
                "alternating form must be an antisymmetric square matrix".into(),
            ));
        }
        if matrix.determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(AlternatingForm { matrix })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn eval(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let ew = self.matrix.mul_vec(w);
        v.iter().zip(&ew).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Pull back along a change of coordinates: `Bᵀ E B`.
    pub fn pullback(&self, b: &RatMatrix) -> RatMatrix {
        &(&b.transpose() * &self.matrix) * b
    }

    pub fn is_invariant_under(&self, m: &IntMatrix) -> bool {
        self.pullback(&m.to_rational()) == self.matrix
    }
}

/// Block-diagonal product form, `E((a,b),(c,d)) = ad − bc` per factor.
pub fn standard_form(t: &TorusDatum) -> Result<AlternatingForm> {
    let factors = t.factors.as_ref().ok_or(Error::NoProvenance)?;
    let block = RatMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
    let blocks = vec![block; factors.len()];
    AlternatingForm::new(RatMatrix::block_diagonal(&blocks))
}

/// Closure of a set of invertible integer matrices under multiplication.
pub fn matrix_group_closure(gens: &[IntMatrix], n: usize, cap: usize) -> Result<Vec<IntMatrix>> {
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::NotClosedWithinCap { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// `Σ_g M_gᵀ E M_g` over the group generated by `mats`.
pub fn average_form(form: &AlternatingForm, mats: &[IntMatrix]) -> Result<AlternatingForm> {
    let n = form.matrix.rows();
    let group = matrix_group_closure(mats, n, crate::action::DEFAULT_GROUP_CAP)?;
    let mut acc = RatMatrix::zeros(n, n);
    for m in &group {
        acc = &acc + &form.pullback(&m.to_rational());
    }
    if acc.determinant().is_zero() {
        return Err(Error::Degenerate);
    }
    AlternatingForm::new(acc)
}

/// Convenience: the scalar `q` as a 1×1 multiple check, `E' = q·E`.
pub fn is_scalar_multiple(a: &AlternatingForm, b: &AlternatingForm) -> Option<BigRational> {
    let (ma, mb) = (a.matrix(), b.matrix());
    let mut ratio: Option<BigRational> = None;
    for i in 0..ma.rows() {
        for j in 0..ma.cols() {
            match (ma[(i, j)].is_zero(), mb[(i, j)].is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = &ma[(i, j)] / &mb[(i, j)];
                    if ratio.as_ref().is_some_and(|q| *q != r) {
                        return None;
                    }
                    ratio = Some(r);
                }
                _ => return None,
            }
        }
    }
    ratio.or_else(|| Some(BigRational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, rat_vector};

    #[test]
    fn automorphism_matrices() {
        let g = EllipticFactor::generic("t");
        assert_eq!(
            factor_automorphism_matrix(&g, RootOfUnity::minus_one()).unwrap(),
            IntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]])
        );
        assert_eq!(
            factor_automorphism_matrix(&EllipticFactor::gauss(), RootOfUnity::new(1, 4)).unwrap(),
            IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]])
        );
        assert_eq!(
            factor_automorphism_matrix(&EllipticFactor::eisenstein(), RootOfUnity::primitive(3)).unwrap(),
            IntMatrix::from_i64_rows(&[&[0, -1], &[1, -1]])
        );
        assert!(matches!(
            factor_automorphism_matrix(&g, RootOfUnity::new(1, 4)),
            Err(Error::InvalidAutomorphism(_))
        ));
        assert!(factor_automorphism_matrix(&EllipticFactor::gauss(), RootOfUnity::primitive(3)).is_err());
    }

    #[test]
    fn automorphism_orders_match_roots() {
        let cases = [
            (EllipticFactor::generic("t"), vec![1u64, 2]),
            (EllipticFactor::gauss(), vec![1, 2, 4]),
            (EllipticFactor::eisenstein(), vec![1, 2, 3, 6]),
        ];
        for (f, orders) in cases {
            for n in orders {
                for k in 0..n {
                    let z = RootOfUnity::new(k as i64, n);
                    let m = factor_automorphism_matrix(&f, z).unwrap();
                    assert_eq!(m.multiplicative_order(12), Some(z.order() as u32), "{f:?} {z}");
                }
            }
        }
    }

    #[test]
    fn product_torus_index() {
        let t = build_product_torus(vec![EllipticFactor::generic("t")], vec![]).unwrap();
        assert_eq!(t.lattice, Sublattice::standard(2));
        let three = vec![
            EllipticFactor::generic("t0"),
            EllipticFactor::generic("t1"),
            EllipticFactor::gauss(),
        ];
        let k = rat_vector(&[(1, 2), (0, 1), (1, 2), (0, 1), (0, 1), (0, 1)]);
        let t = build_product_torus(three, vec![k]).unwrap();
        assert_eq!(t.index_over_product(), rat(2, 1));
    }

    #[test]
    fn standard_forms() {
        let one = build_product_torus(vec![EllipticFactor::generic("t")], vec![]).unwrap();
        assert_eq!(
            standard_form(&one).unwrap().matrix(),
            &RatMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]])
        );
        let two = build_product_torus(vec![EllipticFactor::generic("a"), EllipticFactor::gauss()], vec![]).unwrap();
        let e = standard_form(&two).unwrap();
        assert_eq!(e.matrix()[(2, 3)], rat(1, 1));
        assert_eq!(e.matrix()[(0, 2)], rat(0, 1));
        let mi = factor_automorphism_matrix(&EllipticFactor::gauss(), RootOfUnity::new(1, 4)).unwrap();
        let m = IntMatrix::block_diagonal(&[IntMatrix::identity(2), mi]);
        assert!(e.is_invariant_under(&m));
        let raw = raw_torus(2, &[rat_vector(&[(1, 1), (0, 1)]), rat_vector(&[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(standard_form(&raw), Err(Error::NoProvenance));
    }

    #[test]
    fn averaging() {
        let t = build_product_torus(vec![EllipticFactor::generic("a"), EllipticFactor::generic("b")], vec![]).unwrap();
        let e = standard_form(&t).unwrap();
        let avg = average_form(&e, &[]).unwrap();
        assert_eq!(avg, e);
        let flip = IntMatrix::block_diagonal(&[IntMatrix::identity(2), (-&IntMatrix::identity(2))]);
        let avg = average_form(&e, std::slice::from_ref(&flip)).unwrap();
        assert!(avg.is_invariant_under(&flip));
        assert_eq!(is_scalar_multiple(&avg, &e), Some(rat(2, 1)));
        // a swap of the two basis vectors of one factor reverses orientation
        let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let one = build_product_torus(vec![EllipticFactor::generic("a")], vec![]).unwrap();
        assert_eq!(
            average_form(&standard_form(&one).unwrap(), &[swap]),
            Err(Error::Degenerate)
        );
    }
}
