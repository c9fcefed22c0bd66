//! Finite groups of affine automorphisms of `A = V/Λ`, closure and the
//! hyperelliptic conditions (free action, no translations).
//!
//! Everything here is written in the Λ-basis, so the lattice is ℤ^{2n},
//! linear parts are unimodular integer matrices and translations are
//! rational vectors reduced into [0, 1)^{2n}.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::{cyclotomic_polynomial, euler_phi, RootOfUnity};
use crate::error::{Error, Result};
use crate::exactlin::{
    coset_lattice_point, reduce_mod_one, to_rational_vector, vec_add, vec_sub, IntMatrix, RatMatrix, RatVector,
    Sublattice,
};
use crate::torus::{AlternatingForm, TorusDatum};

pub const DEFAULT_GROUP_CAP: usize = 1024;

/// `x ↦ linear·x + translation`, with the diagonal entries of the complex
/// representation in a fixed coordinate system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAut {
    pub linear: IntMatrix,
    pub translation: RatVector,
    pub eigenvalues: Vec<RootOfUnity>,
}

impl AffineAut {
    pub fn new(linear: IntMatrix, translation: RatVector, eigenvalues: Vec<RootOfUnity>) -> Result<Self> {
        let r = linear.rows();
        if !linear.is_square() || translation.len() != r || 2 * eigenvalues.len() != r {
            return Err(Error::DimensionMismatch(format!(
                "linear part {}×{}, translation of length {}, {} eigenvalues",
                linear.rows(),
                linear.cols(),
                translation.len(),
                eigenvalues.len()
            )));
        }
        if !linear.is_unimodular() {
            return Err(Error::LatticeNotPreserved(format!(
                "linear part {linear} is not unimodular"
            )));
        }
        Ok(AffineAut {
            linear,
            translation: reduce_mod_one(&translation),
            eigenvalues,
        })
    }

    pub fn identity(rank: usize) -> Self {
        AffineAut {
            linear: IntMatrix::identity(rank),
            translation: vec![BigRational::zero(); rank],
            eigenvalues: vec![RootOfUnity::one(); rank / 2],
        }
    }

    pub fn rank(&self) -> usize {
        self.linear.rows()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineAut) -> AffineAut {
        let t = vec_add(
            &self.linear.to_rational().mul_vec(&other.translation),
            &self.translation,
        );
        AffineAut {
            linear: &self.linear * &other.linear,
            translation: reduce_mod_one(&t),
            eigenvalues: self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .map(|(a, b)| *a * *b)
                .collect(),
        }
    }

    pub fn apply(&self, x: &[BigRational]) -> RatVector {
        vec_add(&self.linear.to_rational().mul_vec(x), &self.translation)
    }

    pub fn key(&self) -> (IntMatrix, RatVector) {
        (self.linear.clone(), self.translation.clone())
    }

    pub fn is_identity(&self) -> bool {
        is_translation(self) && self.translation.iter().all(Zero::is_zero)
    }

    /// Order of the complex representation (lcm of eigenvalue orders).
    pub fn linear_order(&self) -> u64 {
        self.eigenvalues
            .iter()
            .fold(1u64, |acc, z| num_integer::lcm(acc, z.order()))
    }

    /// Checks the eigenvalues against the characteristic polynomial.
    ///
    /// For a matrix of finite order, each primitive d-th root of unity occurs
    /// among the eigenvalues of the real representation exactly
    /// `(2n − rank Φ_d(M)) / φ(d)` times; those eigenvalues are the complex
    /// ones together with their conjugates.
    pub fn check_eigenvalues(&self) -> Result<()> {
        let order = self.linear_order();
        if !self.linear.pow(order as u32).is_identity() {
            return Err(Error::EigenvalueMismatch(format!(
                "linear part does not have order dividing {order} implied by eigenvalues {}",
                format_eigenvalues(&self.eigenvalues)
            )));
        }
        let mut counts: HashMap<RootOfUnity, usize> = HashMap::new();
        for z in &self.eigenvalues {
            *counts.entry(*z).or_default() += 1;
            *counts.entry(z.conj()).or_default() += 1;
        }
        let r = self.rank();
        let mut total = 0usize;
        for d in (1..=order).filter(|d| order.is_multiple_of(*d)) {
            let phi_m = eval_poly(&cyclotomic_polynomial(d), &self.linear);
            let dim = r - phi_m.to_rational().rank();
            total += dim;
            let phi = euler_phi(d) as usize;
            for k in (1..=d).filter(|k| num_integer::gcd(*k, d) == 1) {
                let z = RootOfUnity::new(k as i64, d);
                let have = counts.get(&z).copied().unwrap_or(0);
                if have * phi != dim {
                    return Err(Error::EigenvalueMismatch(format!(
                        "{z} occurs {have} times among eigenvalues and conjugates, characteristic polynomial needs {dim}/{phi}"
                    )));
                }
            }
        }
        if total != r {
            return Err(Error::EigenvalueMismatch("linear part is not of finite order".into()));
        }
        Ok(())
    }
}

fn eval_poly(p: &[BigInt], m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = &(&acc * m) + &IntMatrix::diagonal(&vec![c.clone(); n]);
    }
    acc
}

pub fn format_eigenvalues(z: &[RootOfUnity]) -> String {
    let parts: Vec<String> = z.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn is_translation(a: &AffineAut) -> bool {
    a.linear.is_identity()
}

/// A fixed point of `a` in `V/Λ` (Λ-coordinates), if one exists.
///
/// `Mx + t ≡ x` means `t + (M − I)x ∈ Λ`, i.e. the coset `t + im(M − I)`
/// meets Λ. M and t are rational, so a real solution exists iff a rational
/// one does and the answer is a certificate either way.
pub fn fixed_point(a: &AffineAut) -> Option<RatVector> {
    let n = a.rank();
    let m1 = a.linear.sub_identity();
    let image = Sublattice::from_int_columns(&m1);
    let lambda = coset_lattice_point(&image, &a.translation).expect("dimensions agree")?;
    // (M − I)x = λ − t
    let rhs = vec_sub(&to_rational_vector(&lambda), &a.translation);
    let x = if n == 0 || image.rank() == 0 {
        vec![BigRational::zero(); n]
    } else {
        m1.to_rational().solve(&rhs).expect("λ − t lies in the image")
    };
    debug_assert!(crate::exactlin::is_integral(&vec_sub(&a.apply(&x), &x)));
    Some(reduce_mod_one(&x))
}

pub fn has_fixed_point(a: &AffineAut) -> bool {
    fixed_point(a).is_some()
}

/// A finite group of affine automorphisms with its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionGroup {
    pub generators: Vec<AffineAut>,
    pub names: Vec<String>,
    /// `elements[0]` is the identity.
    pub elements: Vec<AffineAut>,
    /// Shortest word in the generators for each element.
    pub words: Vec<Vec<usize>>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

/// Closure under composition; `names` label the generators in reports.
pub fn close_group(gens: Vec<AffineAut>, names: Vec<String>, rank: usize, cap: usize) -> Result<ActionGroup> {
    assert_eq!(gens.len(), names.len());
    for g in &gens {
        if g.rank() != rank {
            return Err(Error::DimensionMismatch(format!(
                "generator of rank {} on a torus of rank {rank}",
                g.rank()
            )));
        }
        if !g.linear.is_unimodular() {
            return Err(Error::LatticeNotPreserved(format!(
                "linear part {} is not unimodular",
                g.linear
            )));
        }
    }
    let id = AffineAut::identity(rank);
    let mut index: HashMap<(IntMatrix, RatVector), usize> = HashMap::from([(id.key(), 0)]);
    let mut elements = vec![id];
    let mut words = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let y = elements[i].compose(g);
            match index.get(&y.key()) {
                Some(&j) => {
                    if elements[j].eigenvalues != y.eigenvalues {
                        return Err(Error::EigenvalueMismatch(format!(
                            "element {} has eigenvalues {} and {} along different words",
                            word_label(&names, &words[j]),
                            format_eigenvalues(&elements[j].eigenvalues),
                            format_eigenvalues(&y.eigenvalues)
                        )));
                    }
                }
                None => {
                    if elements.len() >= cap {
                        return Err(Error::NotClosedWithinCap { cap });
                    }
                    let mut w = words[i].clone();
                    w.push(gi);
                    index.insert(y.key(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                    words.push(w);
                }
            }
        }
    }
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.compose(b).key()]).collect())
        .collect();
    Ok(ActionGroup {
        generators: gens,
        names,
        elements,
        words,
        table,
    })
}

/// Compact word such as `g1^2 g2`; the identity is `e`.
pub fn word_label(names: &[String], word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let name = &names[word[i]];
        parts.push(if j - i == 1 {
            name.clone()
        } else {
            format!("{name}^{}", j - i)
        });
        i = j;
    }
    parts.join(" ")
}

impl ActionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.elements[0].rank()
    }

    pub fn label(&self, i: usize) -> String {
        word_label(&self.names, &self.words[i])
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.table[i].iter().position(|&k| k == 0).expect("finite group")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let (mut k, mut x) = (1, i);
        while x != 0 {
            x = self.table[x][i];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Whether `subset` is closed under the group law (hence a subgroup).
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        subset.contains(&0)
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| subset.contains(&self.table[a][b])))
    }

    pub fn translation_indices(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| is_translation(&self.elements[i]))
            .collect()
    }

    /// Invariant factors of the group when it is abelian (ascending, each
    /// dividing the next); `None` otherwise.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let orders: Vec<u64> = (0..self.order()).map(|i| self.element_order(i) as u64).collect();
        Some(abelian_invariants_from_orders(self.order() as u64, &orders))
    }
}

/// Invariant factors of a finite abelian group from its order statistics:
/// for each prime p the number of elements of order dividing p^k determines
/// the p-primary part.
pub fn abelian_invariants_from_orders(order: u64, element_orders: &[u64]) -> Vec<u64> {
    let mut primes = Vec::new();
    let (mut n, mut p) = (order, 2u64);
    while n > 1 {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    // exponents of p in each cyclic factor, largest first
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        let count = |k: u32| element_orders.iter().filter(|&&o| p.pow(k) % o == 0).count() as u64;
        // log_p of #{x : p^k x = 0} = Σ_i min(k, e_i)
        let mut logs = vec![0u32];
        let mut k = 1;
        loop {
            let c = count(k);
            let l = c.ilog(p);
            logs.push(l);
            if l == logs[logs.len() - 2] {
                break;
            }
            k += 1;
        }
        // number of factors with e_i ≥ k is logs[k] − logs[k−1]
        let mut exps = Vec::new();
        let kmax = logs.len() - 1;
        for k in 1..=kmax {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k < kmax { logs[k + 1] - logs[k] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                exps.push(k as u32);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, exps) in &per_prime {
        for (i, e) in exps.iter().enumerate() {
            factors[i] *= p.pow(*e);
        }
    }
    factors.reverse();
    factors
}

/// `X = A/G`: a torus, a finite group acting on it and an invariant form,
/// all in Λ-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticDatum {
    pub torus: TorusDatum,
    pub group: ActionGroup,
    pub form: AlternatingForm,
    pub builder_mode: bool,
    pub validated: bool,
}

impl HyperellipticDatum {
    pub fn new(torus: TorusDatum, group: ActionGroup, form: AlternatingForm, builder_mode: bool) -> Result<Self> {
        if group.rank() != torus.rank() || form.matrix().rows() != torus.rank() {
            return Err(Error::DimensionMismatch("torus, group and form ranks differ".into()));
        }
        Ok(HyperellipticDatum {
            torus,
            group,
            form,
            builder_mode,
            validated: false,
        })
    }

    pub fn rank(&self) -> usize {
        self.torus.rank()
    }

    pub fn dim(&self) -> usize {
        self.torus.dim()
    }

    /// Runs [`validate`] and records the outcome.
    pub fn validate(&mut self) -> ValidationReport {
        let report = validate(self);
        self.validated = report.passed;
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointWitness {
    pub element: usize,
    pub label: String,
    pub point: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub group_order: usize,
    pub fixed_points: Vec<FixedPointWitness>,
    /// Nonidentity elements with identity linear part.
    pub translations: Vec<String>,
    pub form_invariant: bool,
    pub eigenvalue_failures: Vec<String>,
    pub faithful: bool,
    pub passed: bool,
}

impl ValidationReport {
    pub fn is_free(&self) -> bool {
        self.fixed_points.is_empty()
    }

    /// Passed with a nontrivial group.
    pub fn is_hyperelliptic(&self) -> bool {
        self.passed && self.group_order > 1
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in &self.fixed_points {
            out.push(format!(
                "{} has a fixed point {}",
                w.label,
                crate::serde_exact::format_vector(&w.point)
            ));
        }
        for t in &self.translations {
            out.push(format!("{t} is a translation"));
        }
        if !self.form_invariant {
            out.push("alternating form is not invariant".into());
        }
        out.extend(self.eigenvalue_failures.iter().cloned());
        out
    }
}

pub fn validate(d: &HyperellipticDatum) -> ValidationReport {
    let g = &d.group;
    let mut fixed_points = Vec::new();
    let mut translations = Vec::new();
    let mut eigenvalue_failures = Vec::new();
    for (i, a) in g.elements.iter().enumerate().skip(1) {
        if let Some(point) = fixed_point(a) {
            fixed_points.push(FixedPointWitness {
                element: i,
                label: g.label(i),
                point,
            });
        }
        if is_translation(a) {
            translations.push(g.label(i));
        }
    }
    for (i, a) in g.elements.iter().enumerate() {
        if let Err(e) = a.check_eigenvalues() {
            eigenvalue_failures.push(format!("{}: {e}", g.label(i)));
        }
    }
    let form_invariant = g.generators.iter().all(|a| d.form.is_invariant_under(&a.linear));
    let faithful = translations.is_empty();
    let passed = fixed_points.is_empty() && translations.is_empty() && form_invariant && eigenvalue_failures.is_empty();
    ValidationReport {
        group_order: g.order(),
        fixed_points,
        translations,
        form_invariant,
        eigenvalue_failures,
        faithful,
        passed,
    }
}

/// Change Λ-coordinates by `c` (old → new), `c` rational invertible.
pub(crate) fn transform_aut(a: &AffineAut, c: &RatMatrix, cinv: &RatMatrix) -> Result<AffineAut> {
    let m = (&(c * &a.linear.to_rational()) * cinv)
        .to_integer()
        .ok_or_else(|| Error::LatticeNotPreserved("linear part does not preserve the enlarged lattice".into()))?;
    AffineAut::new(m, c.mul_vec(&a.translation), a.eigenvalues.clone())
}

/// Replace the torus by `A/T` for the translation subgroup `T` and the group
/// by `G/T`. Returns the input unchanged when `T` is trivial.
pub fn quotient_by_translations(d: &HyperellipticDatum) -> Result<HyperellipticDatum> {
    let tr = d.group.translation_indices();
    if tr.len() == 1 {
        return Ok(d.clone());
    }
    let r = d.rank();
    let vecs: Vec<RatVector> = tr.iter().map(|&i| d.group.elements[i].translation.clone()).collect();
    // new Λ-basis = old basis · (enlarged basis); product-coordinate view
    let b_old = d.torus.basis_matrix();
    let product_vecs: Vec<RatVector> = vecs.iter().map(|v| b_old.mul_vec(v)).collect();
    let mut quotient_gens = d.torus.quotient_gens.clone();
    quotient_gens.extend(product_vecs.iter().cloned());
    let lattice = d.torus.lattice.extended(&product_vecs)?;
    let torus = TorusDatum {
        factors: d.torus.factors.clone(),
        quotient_gens,
        lattice,
    };
    let b_new = torus.basis_matrix();
    let c = &b_new.inverse().expect("full rank") * &b_old;
    let cinv = c.inverse().expect("invertible");
    let gens = d
        .group
        .generators
        .iter()
        .map(|a| transform_aut(a, &c, &cinv))
        .collect::<Result<Vec<_>>>()?;
    let group = close_group(gens, d.group.names.clone(), r, DEFAULT_GROUP_CAP)?;
    let form = AlternatingForm::new(&(&cinv.transpose() * d.form.matrix()) * &cinv)?;
    let mut out = HyperellipticDatum::new(torus, group, form, d.builder_mode)?;
    out.validated = false;
    debug_assert_eq!(out.group.order() * tr.len(), d.group.order());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, rat_vector};
    use crate::torus::{build_product_torus, standard_form, EllipticFactor};

    fn minus_one_on(rank: usize) -> AffineAut {
        AffineAut::new(
            -&IntMatrix::identity(rank),
            vec![rat(0, 1); rank],
            vec![RootOfUnity::minus_one(); rank / 2],
        )
        .unwrap()
    }

    fn shift(v: &[(i64, i64)]) -> AffineAut {
        let r = v.len();
        AffineAut::new(IntMatrix::identity(r), rat_vector(v), vec![RootOfUnity::one(); r / 2]).unwrap()
    }

    fn datum(rank: usize, gens: Vec<AffineAut>) -> HyperellipticDatum {
        let factors = (0..rank / 2)
            .map(|i| EllipticFactor::generic(&format!("t{i}")))
            .collect();
        let torus = build_product_torus(factors, vec![]).unwrap();
        let form = standard_form(&torus).unwrap();
        let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
        let group = close_group(gens, names, rank, DEFAULT_GROUP_CAP).unwrap();
        HyperellipticDatum::new(torus, group, form, true).unwrap()
    }

    #[test]
    fn involution_closes_to_order_two() {
        let g = close_group(vec![minus_one_on(2)], vec!["g".into()], 2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inverse(1), 1);
        assert_eq!(g.label(1), "g");
    }

    #[test]
    fn translation_predicate() {
        assert!(is_translation(&shift(&[(1, 2), (0, 1)])));
        assert!(!is_translation(&minus_one_on(2)));
        assert!(is_translation(&AffineAut::identity(2)));
    }

    #[test]
    fn fixed_points() {
        let w = fixed_point(&minus_one_on(2)).unwrap();
        assert_eq!(w, rat_vector(&[(0, 1), (0, 1)]));
        assert!(!has_fixed_point(&shift(&[(1, 2), (0, 1)])));
        assert!(has_fixed_point(&shift(&[(0, 1), (0, 1)])));
        // (z1 + 1/2, −z2) is free; (z1, −z2 + 1/2) is not
        let mut m = IntMatrix::identity(4);
        m[(2, 2)] = BigInt::from(-1);
        m[(3, 3)] = BigInt::from(-1);
        let eig = vec![RootOfUnity::one(), RootOfUnity::minus_one()];
        let free = AffineAut::new(m.clone(), rat_vector(&[(1, 2), (0, 1), (0, 1), (0, 1)]), eig.clone()).unwrap();
        assert!(!has_fixed_point(&free));
        let fixed = AffineAut::new(m, rat_vector(&[(0, 1), (0, 1), (1, 2), (0, 1)]), eig).unwrap();
        let x = fixed_point(&fixed).unwrap();
        assert_eq!(reduce_mod_one(&fixed.apply(&x)), x);
    }

    #[test]
    fn eigenvalue_checks() {
        assert!(minus_one_on(4).check_eigenvalues().is_ok());
        let i = IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let rot = AffineAut::new(i.clone(), rat_vector(&[(0, 1), (0, 1)]), vec![RootOfUnity::new(1, 4)]).unwrap();
        assert!(rot.check_eigenvalues().is_ok());
        let wrong = AffineAut::new(i, rat_vector(&[(0, 1), (0, 1)]), vec![RootOfUnity::minus_one()]).unwrap();
        assert!(matches!(wrong.check_eigenvalues(), Err(Error::EigenvalueMismatch(_))));
    }

    #[test]
    fn validation_and_translations() {
        let mut d = datum(2, vec![shift(&[(1, 2), (0, 1)])]);
        let report = d.validate();
        assert!(!report.passed);
        assert_eq!(report.translations, vec!["g1".to_string()]);
        let q = quotient_by_translations(&d).unwrap();
        assert_eq!(q.group.order(), 1);
        assert_eq!(q.torus.index_over_product(), rat(2, 1));
        assert_eq!(quotient_by_translations(&q).unwrap(), q);

        let mut m = IntMatrix::identity(4);
        m[(2, 2)] = BigInt::from(-1);
        m[(3, 3)] = BigInt::from(-1);
        let g = AffineAut::new(
            m,
            rat_vector(&[(1, 2), (0, 1), (0, 1), (0, 1)]),
            vec![RootOfUnity::one(), RootOfUnity::minus_one()],
        )
        .unwrap();
        let mut d = datum(4, vec![g]);
        let report = d.validate();
        assert!(report.passed, "{:?}", report.failures());
        assert!(report.is_hyperelliptic());
        assert!(d.validated);
        assert_eq!(quotient_by_translations(&d).unwrap(), d);
    }

    #[test]
    fn runaway_closure_is_capped() {
        let shear = AffineAut {
            linear: IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]),
            translation: rat_vector(&[(0, 1), (0, 1)]),
            eigenvalues: vec![RootOfUnity::one()],
        };
        assert_eq!(
            close_group(vec![shear], vec!["s".into()], 2, 64),
            Err(Error::NotClosedWithinCap { cap: 64 })
        );
    }

    #[test]
    fn invariants_from_orders() {
        // ℤ/2 × ℤ/4: orders 1,2,2,2,4,4,4,4
        assert_eq!(abelian_invariants_from_orders(8, &[1, 2, 2, 2, 4, 4, 4, 4]), vec![2, 4]);
        assert_eq!(abelian_invariants_from_orders(6, &[1, 2, 3, 3, 6, 6]), vec![6]);
        assert_eq!(
            abelian_invariants_from_orders(9, &[1, 3, 3, 3, 3, 3, 3, 3, 3]),
            vec![3, 3]
        );
        assert_eq!(abelian_invariants_from_orders(1, &[1]), Vec::<u64>::new());
    }
}
