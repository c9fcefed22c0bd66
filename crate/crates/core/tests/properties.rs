//! Randomized checks of the integer linear algebra against small,
//! independent reference computations in machine integers.

use albanese_core::exactlin::{
    coset_meets_lattice, hermite_normal_form, quotient_group, rat, saturate, smith_normal_form, IntMatrix, RatMatrix,
    RatVector, Sublattice,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect()
}

fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .unwrap()
}

fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free elimination: (rank, determinant when square).
fn bareiss(m: &[Vec<i128>]) -> (usize, i128) {
    let mut a = m.to_vec();
    let (rows, cols) = (a.len(), a[0].len());
    let (mut rank, mut prev, mut sign) = (0usize, 1i128, 1i128);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[r][k] * a[rank][c] - a[rank][k] * a[r][c]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    let det = if rows == cols && rank == rows {
        sign * a[rows - 1][cols - 1]
    } else {
        0
    };
    (rank, det)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
fn minor_gcd(m: &[Vec<i128>], k: usize) -> i128 {
    let mut g = 0;
    for rs in subsets(m.len(), k) {
        for cs in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, bareiss(&sub).1);
        }
    }
    g
}

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_transform(rows in matrix(4, 4, 5)) {
        let m = from_rows(&rows);
        let (h, u) = hermite_normal_form(&m);
        let (hi, ui, mi) = (to_i128(&h), to_i128(&u), to_i128(&m));
        prop_assert_eq!(mul(&ui, &mi), hi.clone());
        prop_assert_eq!(bareiss(&ui).1.abs(), 1);
        prop_assert_eq!(bareiss(&hi).1.abs(), bareiss(&mi).1.abs());
        // echelon shape with reduced entries above pivots
        let mut last: Option<usize> = None;
        for (i, row) in hi.iter().enumerate() {
            match row.iter().position(|&x| x != 0) {
                None => prop_assert!(hi[i..].iter().all(|r| r.iter().all(|&x| x == 0))),
                Some(p) => {
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(row[p] > 0);
                    for above in &hi[..i] {
                        prop_assert!(0 <= above[p] && above[p] < row[p]);
                    }
                    last = Some(p);
                }
            }
        }
    }

    #[test]
    fn smith_matches_minor_gcds(rows in matrix(3, 4, 6)) {
        let m = from_rows(&rows);
        let sm = smith_normal_form(&m);
        let (u, s, v, mi) = (to_i128(&sm.u), to_i128(&sm.s), to_i128(&sm.v), to_i128(&m));
        prop_assert_eq!(mul(&mul(&u, &mi), &v), s.clone());
        prop_assert_eq!(bareiss(&u).1.abs(), 1);
        prop_assert_eq!(bareiss(&v).1.abs(), 1);
        let d: Vec<i128> = sm.invariant_factors().iter().map(|x| x.to_i128().unwrap()).collect();
        prop_assert_eq!(d.len(), bareiss(&mi).0);
        for w in d.windows(2) {
            prop_assert!(w[1] % w[0] == 0);
        }
        let mut product = 1;
        for (k, dk) in d.iter().enumerate() {
            product *= dk;
            prop_assert_eq!(product, minor_gcd(&mi, k + 1));
        }
    }

    #[test]
    fn saturation_is_idempotent_and_complete(cols in matrix(2, 3, 4)) {
        let gens: Vec<RatVector> = cols.iter().map(|c| c.iter().map(|&x| rat(x, 1)).collect()).collect();
        let s = Sublattice::from_generators(3, &gens).unwrap();
        let sat = saturate(&s);
        prop_assert_eq!(saturate(&sat), sat.clone());
        prop_assert_eq!(sat.rank(), s.rank());
        prop_assert!(sat.contains_lattice(&s).unwrap());
        let span = RatMatrix::from_columns(3, &gens);
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                for z in -3i64..=3 {
                    let p = vec![rat(x, 1), rat(y, 1), rat(z, 1)];
                    let mut with = gens.clone();
                    with.push(p.clone());
                    let in_span = RatMatrix::from_columns(3, &with).rank() == span.rank();
                    prop_assert_eq!(in_span, sat.contains(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn quotient_order_is_determinant(rows in matrix(3, 3, 5)) {
        let m = from_rows(&rows);
        let det = bareiss(&to_i128(&m)).1;
        prop_assume!(det != 0);
        let small = Sublattice::from_int_columns(&m);
        let q = quotient_group(&Sublattice::standard(3), &small).unwrap();
        prop_assert_eq!(q.order().to_i128().unwrap(), det.abs());
    }

    #[test]
    fn coset_membership_matches_search(
        cols in matrix(2, 3, 3),
        rank in 1usize..=2,
        t in prop::collection::vec((0i64..4, 1i64..=4), 3),
    ) {
        let gens: Vec<RatVector> = cols[..rank].iter().map(|c| c.iter().map(|&x| rat(x, 1)).collect()).collect();
        let w = Sublattice::from_generators(3, &gens).unwrap();
        let t: RatVector = t.iter().map(|&(n, d)| rat(n % d, d)).collect();
        // a lattice point, if any, can be moved into t + [0,1)·(basis of w ∩ ℤ³)
        let span = RatMatrix::from_columns(3, &gens);
        let mut found = false;
        'search: for x in -7i64..=7 {
            for y in -7i64..=7 {
                for z in -7i64..=7 {
                    let d: Vec<BigRational> =
                        [x, y, z].iter().zip(&t).map(|(&a, b)| rat(a, 1) - b).collect();
                    if d.iter().all(Zero::is_zero) {
                        found = true;
                        break 'search;
                    }
                    let mut with = gens.clone();
                    with.push(d);
                    if RatMatrix::from_columns(3, &with).rank() == span.rank() {
                        found = true;
                        break 'search;
                    }
                }
            }
        }
        prop_assert_eq!(coset_meets_lattice(&w, &t).unwrap(), found);
    }
}

#[test]
fn saturation_of_a_plane_example() {
    let s = Sublattice::from_generators(2, &[vec![rat(2, 1), rat(2, 1)], vec![rat(0, 1), rat(4, 1)]]).unwrap();
    let sat = saturate(&s);
    assert_eq!(sat, Sublattice::standard(2));
    let line = Sublattice::from_generators(2, &[vec![rat(2, 1), rat(2, 1)]]).unwrap();
    assert_eq!(
        saturate(&line),
        Sublattice::from_generators(2, &[vec![rat(1, 1), rat(1, 1)]]).unwrap()
    );
}
