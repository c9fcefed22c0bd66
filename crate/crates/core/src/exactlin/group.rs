use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::lattice::Sublattice;
use super::matrix::RatVector;
use super::normal_form::smith_normal_form;
use crate::error::{Error, Result};

/// Finite abelian group `big / reference`, presented by invariant factors
/// d₁ | d₂ | … (all > 1) and one coset representative per factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    #[serde(with = "crate::serde_exact::int_list")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(with = "crate::serde_exact::rat_columns")]
    pub generators: Vec<RatVector>,
    pub reference: Sublattice,
}

impl FiniteAbelianGroup {
    pub fn trivial(reference: Sublattice) -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
            reference,
        }
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// The lattice `reference + ℤ·generators`.
    pub fn lift_lattice(&self) -> Result<Sublattice> {
        self.reference.extended(&self.generators)
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| u64::try_from(d).expect("small invariant factor"))
            .collect()
    }
}

/// Structure of `big / small` via the Smith form of the inclusion matrix.
pub fn quotient_group(big: &Sublattice, small: &Sublattice) -> Result<FiniteAbelianGroup> {
    if big.ambient() != small.ambient() {
        return Err(Error::DimensionMismatch("lattices in different ambient spaces".into()));
    }
    if big.rank() != small.rank() {
        return Err(Error::RankMismatch {
            big: big.rank(),
            small: small.rank(),
        });
    }
    let k = big.rank();
    if k == 0 {
        return Ok(FiniteAbelianGroup::trivial(small.clone()));
    }
    let mut coords = Vec::with_capacity(k);
    for b in small.basis() {
        match big.coordinates(b)? {
            Some(c) if c.iter().all(BigRational::is_integer) => {
                coords.push(c.into_iter().map(|x| x.to_integer()).collect::<Vec<_>>())
            }
            _ => return Err(Error::NotContained),
        }
    }
    let inclusion = crate::exactlin::IntMatrix::from_columns(k, &coords);
    let sm = smith_normal_form(&inclusion);
    let uinv = sm.u.integer_inverse().expect("unimodular");
    let new_basis = &big.basis_matrix() * &uinv.to_rational();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in sm.invariant_factors().into_iter().enumerate() {
        if !d.is_one() {
            invariant_factors.push(d);
            generators.push(new_basis.column(i));
        }
    }
    Ok(FiniteAbelianGroup {
        invariant_factors,
        generators,
        reference: small.clone(),
    })
}

/// Whether `p mod reference` is an element of `g`.
pub fn member_of_finite_group(g: &FiniteAbelianGroup, reference: &Sublattice, p: &[BigRational]) -> Result<bool> {
    if p.len() != reference.ambient() || g.generators.iter().any(|x| x.len() != p.len()) {
        return Err(Error::DimensionMismatch(
            "point and group live in different ambient spaces".into(),
        ));
    }
    reference.extended(&g.generators)?.contains(p)
}

/// Order of the image of `v` in ℚ^n / `lattice`, or `None` if infinite.
pub fn torsion_order(lattice: &Sublattice, v: &[BigRational]) -> Result<Option<BigInt>> {
    let Some(c) = lattice.coordinates(v)? else {
        return Ok(None);
    };
    let d = super::matrix::vector_denominator_lcm(&c);
    Ok(Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::{rat, rat_vector};

    #[test]
    fn quotient_by_twice() {
        let big = Sublattice::standard(2);
        let small =
            Sublattice::from_generators(2, &[rat_vector(&[(2, 1), (0, 1)]), rat_vector(&[(0, 1), (2, 1)])]).unwrap();
        let g = quotient_group(&big, &small).unwrap();
        assert_eq!(g.factors_u64(), vec![2, 2]);
        assert!(quotient_group(&big, &big).unwrap().is_trivial());
    }

    #[test]
    fn quotient_errors() {
        let big = Sublattice::standard(2);
        let line = Sublattice::from_generators(2, &[rat_vector(&[(1, 1), (0, 1)])]).unwrap();
        assert!(matches!(quotient_group(&big, &line), Err(Error::RankMismatch { .. })));
        let half =
            Sublattice::from_generators(2, &[rat_vector(&[(1, 2), (0, 1)]), rat_vector(&[(0, 1), (1, 1)])]).unwrap();
        assert!(matches!(quotient_group(&big, &half), Err(Error::NotContained)));
    }

    #[test]
    fn half_point_quotient() {
        let z4 = Sublattice::standard(4);
        let big = z4.extended(&[rat_vector(&[(1, 2), (1, 2), (0, 1), (0, 1)])]).unwrap();
        let g = quotient_group(&big, &z4).unwrap();
        assert_eq!(g.factors_u64(), vec![2]);
        // the generator is the half point up to ℤ⁴
        let diff: RatVector = g.generators[0]
            .iter()
            .zip(rat_vector(&[(1, 2), (1, 2), (0, 1), (0, 1)]))
            .map(|(a, b)| a - b)
            .collect();
        assert!(z4.contains(&diff).unwrap());
    }

    #[test]
    fn membership_mod_z() {
        let z = Sublattice::standard(1);
        let half = FiniteAbelianGroup {
            invariant_factors: vec![BigInt::from(2)],
            generators: vec![vec![rat(1, 2)]],
            reference: z.clone(),
        };
        assert!(member_of_finite_group(&half, &z, &[rat(1, 2)]).unwrap());
        assert!(member_of_finite_group(&half, &z, &[rat(3, 2)]).unwrap());
        assert!(!member_of_finite_group(&half, &z, &[rat(1, 3)]).unwrap());
        let trivial = FiniteAbelianGroup::trivial(z.clone());
        assert!(member_of_finite_group(&trivial, &z, &[rat(2, 1)]).unwrap());
        assert!(member_of_finite_group(&trivial, &z, &[rat(1, 1), rat(0, 1)]).is_err());
    }
}
