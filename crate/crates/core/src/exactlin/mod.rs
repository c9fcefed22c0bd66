//! Exact integer and rational linear algebra: normal forms, lattices,
//! finite abelian quotients and lattice-coset membership.

mod group;
mod lattice;
mod matrix;
mod normal_form;

pub use group::{member_of_finite_group, quotient_group, torsion_order, FiniteAbelianGroup};
pub use lattice::{
    coset_lattice_point, coset_meets_lattice, kernel_lattice, rational_kernel_lattice, saturate, solve_integer,
    Sublattice,
};
pub use matrix::{
    int_vector, is_integral, is_zero_vector, rat, rat_vector, reduce_mod_one, to_rational_vector, vec_add, vec_scale,
    vec_sub, vector_denominator_lcm, IntMatrix, Matrix, RatMatrix, RatVector,
};
pub use normal_form::{hermite_normal_form, smith_normal_form, Smith};
