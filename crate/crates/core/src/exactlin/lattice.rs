use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{is_integral, to_rational_vector, vector_denominator_lcm, IntMatrix, RatMatrix, RatVector};
use super::normal_form::{hermite_normal_form, smith_normal_form};
use crate::error::{Error, Result};

/// A lattice inside ℚ^ambient, stored by a canonical basis (columns).
///
/// The canonical basis is the row-style Hermite normal form of the basis
/// vectors after clearing denominators, so two lattices are equal iff their
/// stored bases are equal. Bases produced by [`saturate`] and
/// [`kernel_lattice`] are integral and saturated.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sublattice {
    ambient: usize,
    #[serde(with = "crate::serde_exact::rat_columns")]
    basis: Vec<RatVector>,
}

impl std::fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sublattice(ambient={}, basis=[", self.ambient)?;
        for (k, b) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let s: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, "({})", s.join(","))?;
        }
        write!(f, "])")
    }
}

impl Sublattice {
    /// ℤ-span of an arbitrary finite generating set (may be dependent or empty).
    pub fn from_generators(ambient: usize, gens: &[RatVector]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in ambient dimension {}",
                g.len(),
                ambient
            )));
        }
        if gens.is_empty() {
            return Ok(Sublattice {
                ambient,
                basis: Vec::new(),
            });
        }
        let d = gens.iter().fold(BigInt::one(), |acc, g| {
            num_integer::Integer::lcm(&acc, &vector_denominator_lcm(g))
        });
        let dq = BigRational::from_integer(d.clone());
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * &dq).to_integer()).collect())
            .collect();
        let m = IntMatrix::from_rows(rows)?;
        let (h, _) = hermite_normal_form(&m);
        let basis = h
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.into_iter().map(|x| BigRational::new(x, d.clone())).collect())
            .collect();
        Ok(Sublattice { ambient, basis })
    }

    pub fn from_int_columns(m: &IntMatrix) -> Self {
        let gens: Vec<RatVector> = m.columns().iter().map(|c| to_rational_vector(c)).collect();
        Self::from_generators(m.rows(), &gens).expect("columns have ambient length")
    }

    /// The full lattice ℤ^n.
    pub fn standard(n: usize) -> Self {
        Self::from_int_columns(&IntMatrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Sublattice {
            ambient: n,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVector] {
        &self.basis
    }

    /// Basis as the columns of an `ambient × rank` matrix.
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient, &self.basis)
    }

    pub fn is_integral(&self) -> bool {
        self.basis.iter().all(|b| is_integral(b))
    }

    /// Integral basis matrix spanning the same ℚ-subspace (columns scaled).
    pub fn integral_span_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|b| {
                let d = BigRational::from_integer(vector_denominator_lcm(b));
                b.iter().map(|x| (x * &d).to_integer()).collect()
            })
            .collect();
        IntMatrix::from_columns(self.ambient, &cols)
    }

    pub fn is_saturated(&self) -> bool {
        self.is_integral() && saturate(self) == *self
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the ℚ-span.
    pub fn coordinates(&self, v: &[BigRational]) -> Result<Option<RatVector>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        if self.basis.is_empty() {
            return Ok(v.iter().all(Zero::is_zero).then(Vec::new));
        }
        Ok(self.basis_matrix().solve(v))
    }

    pub fn in_span(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some_and(|c| is_integral(&c)))
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> Result<bool> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lattice sum `self + other`.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Sublattice::from_generators(self.ambient, &gens)
    }

    /// `self + ℤ·extra₁ + …`.
    pub fn extended(&self, extra: &[RatVector]) -> Result<Sublattice> {
        let mut gens = self.basis.clone();
        gens.extend(extra.iter().cloned());
        Sublattice::from_generators(self.ambient, &gens)
    }

    /// Image under a linear map given in ambient coordinates.
    pub fn image(&self, m: &RatMatrix) -> Result<Sublattice> {
        let gens: Vec<RatVector> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Sublattice::from_generators(m.rows(), &gens)
    }
}

/// Saturation `(s ⊗ ℚ) ∩ ℤ^ambient`.
pub fn saturate(s: &Sublattice) -> Sublattice {
    if s.rank() == 0 {
        return Sublattice::zero(s.ambient());
    }
    let w = s.integral_span_matrix();
    let sm = smith_normal_form(&w);
    let r = sm.rank();
    let uinv = sm.u.integer_inverse().expect("SNF row transform is unimodular");
    Sublattice::from_int_columns(&uinv.column_slice(0, r))
}

/// `{v ∈ ℤ^cols : m·v = 0}`, saturated.
pub fn kernel_lattice(m: &IntMatrix) -> Sublattice {
    let sm = smith_normal_form(m);
    let r = sm.rank();
    Sublattice::from_int_columns(&sm.v.column_slice(r, m.cols()))
}

/// Kernel lattice of a rational matrix (rows rescaled to integers).
pub fn rational_kernel_lattice(m: &RatMatrix) -> Sublattice {
    let (_, mi) = m.clear_denominators();
    kernel_lattice(&mi)
}

/// Whether the affine subspace `t + span_ℚ(w)` contains a point of ℤ^n.
pub fn coset_meets_lattice(w: &Sublattice, t: &[BigRational]) -> Result<bool> {
    Ok(coset_lattice_point(w, t)?.is_some())
}

/// A point of `(t + span_ℚ(w)) ∩ ℤ^n`, if there is one.
///
/// Writes ℤ^n in a basis whose first vectors span the saturation of `w`;
/// the coset meets ℤ^n iff the remaining coordinates of `t` are integral.
pub fn coset_lattice_point(w: &Sublattice, t: &[BigRational]) -> Result<Option<Vec<BigInt>>> {
    let n = w.ambient();
    if t.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} in ambient dimension {}",
            t.len(),
            n
        )));
    }
    let (u, r) = if w.rank() == 0 {
        (IntMatrix::identity(n), 0)
    } else {
        let sm = smith_normal_form(&w.integral_span_matrix());
        let r = sm.rank();
        (sm.u, r)
    };
    let c = u.to_rational().mul_vec(t);
    if !is_integral(&c[r..]) {
        return Ok(None);
    }
    let mut tail = vec![BigInt::zero(); n];
    for i in r..n {
        tail[i] = c[i].to_integer();
    }
    let uinv = u.integer_inverse().expect("SNF row transform is unimodular");
    Ok(Some(uinv.mul_vec(&tail)))
}

/// Some integer solution of `a·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let sm = smith_normal_form(a);
    let c = sm.u.mul_vec(b);
    let d = sm.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < d.len() {
            if !num_integer::Integer::is_multiple_of(ci, &d[i]) {
                return None;
            }
            y[i] = ci / &d[i];
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(sm.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::{rat, rat_vector};

    fn ivec(v: &[i64]) -> RatVector {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn saturate_index_two() {
        let s = Sublattice::from_generators(2, &[ivec(&[2, 0])]).unwrap();
        let sat = saturate(&s);
        assert_eq!(sat, Sublattice::from_generators(2, &[ivec(&[1, 0])]).unwrap());
        assert!(sat.is_saturated());
        assert!(!s.is_saturated());
        assert_eq!(saturate(&sat), sat);
    }

    #[test]
    fn saturate_full_rank_gives_standard() {
        let s = Sublattice::from_generators(2, &[ivec(&[2, 2]), ivec(&[0, 4])]).unwrap();
        assert_eq!(saturate(&s), Sublattice::standard(2));
    }

    #[test]
    fn kernel_examples() {
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(kernel_lattice(&z), Sublattice::standard(2));
        assert_eq!(kernel_lattice(&IntMatrix::identity(2)).rank(), 0);
        let m = IntMatrix::from_i64_rows(&[&[1, -1], &[0, 0]]);
        assert_eq!(
            kernel_lattice(&m),
            Sublattice::from_generators(2, &[ivec(&[1, 1])]).unwrap()
        );
    }

    #[test]
    fn coset_examples() {
        let w = Sublattice::from_generators(2, &[ivec(&[1, 0])]).unwrap();
        assert!(!coset_meets_lattice(&w, &rat_vector(&[(0, 1), (1, 2)])).unwrap());
        assert!(coset_meets_lattice(&w, &rat_vector(&[(1, 3), (1, 1)])).unwrap());
        let p = coset_lattice_point(&w, &rat_vector(&[(1, 3), (1, 1)]))
            .unwrap()
            .unwrap();
        assert_eq!(p[1], BigInt::from(1));
        let zero = Sublattice::zero(2);
        assert!(coset_meets_lattice(&zero, &ivec(&[3, -1])).unwrap());
        assert!(!coset_meets_lattice(&zero, &rat_vector(&[(1, 2), (0, 1)])).unwrap());
    }

    #[test]
    fn rational_lattice_membership() {
        let l = Sublattice::from_generators(4, &[ivec(&[1, 0, 0, 0]), rat_vector(&[(1, 2), (1, 2), (0, 1), (0, 1)])])
            .unwrap();
        assert!(l.contains(&rat_vector(&[(0, 1), (1, 1), (0, 1), (0, 1)])).unwrap());
        assert!(!l.contains(&rat_vector(&[(1, 2), (0, 1), (0, 1), (0, 1)])).unwrap());
        assert!(!l.contains(&ivec(&[0, 0, 1, 0])).unwrap());
        assert!(l.contains(&rat_vector(&[(1, 2), (-1, 2), (0, 1), (0, 1)])).unwrap());
    }

    #[test]
    fn canonical_basis_is_basis_independent() {
        let a = Sublattice::from_generators(2, &[ivec(&[1, 1]), ivec(&[0, 2])]).unwrap();
        let b = Sublattice::from_generators(2, &[ivec(&[1, -1]), ivec(&[1, 1]), ivec(&[2, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn integer_solve() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4]]);
        assert!(solve_integer(&a, &[BigInt::from(3)]).is_none());
        let x = solve_integer(&a, &[BigInt::from(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(6)]);
    }
}
