//! Hermite and Smith normal forms over ℤ, with the unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

fn row_combine(m: &mut IntMatrix, target: usize, src: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = &m[(target, j)] + &(factor * &m[(src, j)]);
        m[(target, j)] = v;
    }
}

fn col_combine(m: &mut IntMatrix, target: usize, src: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = &m[(i, target)] + &(factor * &m[(i, src)]);
        m[(i, target)] = v;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -&m[(r, j)];
        m[(r, j)] = v;
    }
}

/// Replace rows (a, b) by (x·a + y·b, -q·a + p·b) where (p, q) = (ma/g, mb/g).
fn row_gcd_step(m: &mut IntMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
    for j in 0..m.cols() {
        let ra = m[(a, j)].clone();
        let rb = m[(b, j)].clone();
        m[(a, j)] = x * &ra + y * &rb;
        m[(b, j)] = p * &rb - q * &ra;
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and `U·m = H`.
///
/// `H` is in upper echelon form, pivots are positive and the entries above
/// each pivot lie in `[0, pivot)`. Zero rows are collected at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        let Some(p) = (r..h.rows()).find(|&i| !h[(i, c)].is_zero()) else {
            continue;
        };
        h.swap_rows(r, p);
        u.swap_rows(r, p);
        for i in r + 1..h.rows() {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let pa = &a / &g;
            let pb = &b / &g;
            row_gcd_step(&mut h, r, i, &x, &y, &pa, &pb);
            row_gcd_step(&mut u, r, i, &x, &y, &pa, &pb);
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            let nq = -q;
            row_combine(&mut h, i, r, &nq);
            row_combine(&mut u, i, r, &nq);
        }
        r += 1;
    }
    (h, u)
}

/// Result of [`smith_normal_form`]: `u · m · v = s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries d₁ | d₂ | … in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_abs_position(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with transforms: `U·m·V = S`, `S` diagonal with
/// nonnegative entries and d₁ | d₂ | … .
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = s.rows().min(s.cols());
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_abs_position(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..s.rows() {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                row_combine(&mut s, i, t, &q);
                row_combine(&mut u, i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..s.cols() {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                col_combine(&mut s, j, t, &q);
                col_combine(&mut v, j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a nonzero remainder is smaller than the pivot; move it in
                let mut best = (t, t);
                for i in t + 1..s.rows() {
                    if !s[(i, t)].is_zero() && s[(i, t)].abs() < s[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..s.cols() {
                    if !s[(t, j)].is_zero() && s[(t, j)].abs() < s[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                }
                if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..s.rows()).find(|&i| (t + 1..s.cols()).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    row_combine(&mut s, t, i, &BigInt::one());
                    row_combine(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    Smith { u, s, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let m = IntMatrix::from_i64_rows(&[&[2, 3], &[4, 1]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(&u * &m, h);
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[2, 3], &[0, 5]]));
    }

    #[test]
    fn snf_small_cases() {
        let d = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&d).s, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).s, id);
        let two = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(smith_normal_form(&two).s, two);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let sm = smith_normal_form(&m);
        assert_eq!(&(&sm.u * &m) * &sm.v, sm.s);
        let f: Vec<i64> = sm.invariant_factors().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(f, vec![2, 6, 12]);
        let r = IntMatrix::from_i64_rows(&[&[1, -1, 0]]);
        let sm = smith_normal_form(&r);
        assert_eq!(&(&sm.u * &r) * &sm.v, sm.s);
        assert_eq!(sm.rank(), 1);
    }
}
