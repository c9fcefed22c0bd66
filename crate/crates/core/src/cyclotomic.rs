//! Exact arithmetic in cyclotomic fields ℚ(ζ_N), used for character sums.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// exp(2πi·k/N), stored with `k/N` in lowest terms and `0 ≤ k < N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    k: u64,
    n: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u64) -> Self {
        assert!(n >= 1, "root of unity needs a positive order");
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        if k == 0 {
            RootOfUnity { k: 0, n: 1 }
        } else {
            RootOfUnity { k: k / g, n: n / g }
        }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, n: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { k: 1, n: 2 }
    }

    /// Primitive root exp(2πi/n).
    pub fn primitive(n: u64) -> Self {
        Self::new(1, n)
    }

    pub fn numerator(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.k as i64), self.n)
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = ((self.k as i128 * e as i128).rem_euclid(self.n as i128)) as i64;
        Self::new(k, self.n)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let n = self.n.lcm(&rhs.n);
        let k = self.k * (n / self.n) + rhs.k * (n / rhs.n);
        RootOfUnity::new((k % n) as i64, n)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (1, n) => write!(f, "zeta{n}"),
            (k, n) => write!(f, "zeta{n}^{k}"),
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Accepts `1`, `-1`, `i`, `-i`, `zetaN`, `zetaN^k` and `e(k/N)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("malformed root of unity {s:?}"));
        match t {
            "1" => return Ok(Self::one()),
            "-1" => return Ok(Self::minus_one()),
            "i" => return Ok(Self::new(1, 4)),
            "-i" => return Ok(Self::new(3, 4)),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("zeta") {
            let rest = rest.trim_start_matches('_');
            let (n, k) = match rest.split_once('^') {
                Some((n, k)) => (n, k),
                None => (rest, "1"),
            };
            let n: u64 = n.parse().map_err(|_| bad())?;
            let k: i64 = k.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Self::new(k, n));
        }
        if let Some(inner) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let (k, n) = inner.split_once('/').ok_or_else(bad)?;
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Self::new(k, n));
        }
        Err(bad())
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer polynomial, coefficients from the constant term upward.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division by a monic polynomial; panics if the division is not exact.
fn divide_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let (q, r) = divide_monic(num, den);
    assert!(r.iter().all(Zero::is_zero), "non-exact polynomial division");
    q
}

/// Quotient and remainder of division by a monic integer polynomial.
pub fn divide_monic(num: &IntPoly, den: &IntPoly) -> (IntPoly, IntPoly) {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut r = num.clone();
    trim(&mut r);
    if r.len() <= dd {
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    r.truncate(dd.max(1));
    trim(&mut q);
    (q, r)
}

pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Φ_N, obtained by dividing x^N − 1 by Φ_d for every proper divisor d of N.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            p = divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Element of ℚ(ζ_N) in the power basis 1, x, …, x^{φ(N)−1} of ℚ[x]/Φ_N.
#[derive(Clone)]
pub struct CycloNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
    modulus: Arc<IntPoly>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (mod Φ_{})", self.conductor)
        } else {
            write!(f, "{} (mod Φ_{})", terms.join(" + "), self.conductor)
        }
    }
}

/// Reduce a rational polynomial modulo the monic integer polynomial `m`.
fn reduce_rational(mut p: Vec<BigRational>, m: &IntPoly) -> Vec<BigRational> {
    let deg = m.len() - 1;
    for i in (deg..p.len()).rev() {
        let c = p[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, mj) in m.iter().enumerate() {
            let t = &c * BigRational::from_integer(mj.clone());
            p[i - deg + j] -= t;
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

impl CycloNumber {
    fn with_modulus(conductor: u64, modulus: Arc<IntPoly>, coeffs: Vec<BigRational>) -> Self {
        let coeffs = reduce_rational(coeffs, &modulus);
        CycloNumber {
            conductor,
            coeffs,
            modulus,
        }
    }

    pub fn from_rational(conductor: u64, q: BigRational) -> Self {
        let modulus = Arc::new(cyclotomic_polynomial(conductor));
        Self::with_modulus(conductor, modulus, vec![q])
    }

    pub fn zero(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::zero())
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same_field(&self, coeffs: Vec<BigRational>) -> Self {
        Self::with_modulus(self.conductor, Arc::clone(&self.modulus), coeffs)
    }

    /// x^e in this field (e taken mod N).
    fn monomial(&self, e: u64) -> Self {
        let e = (e % self.conductor) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        self.same_field(c)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.same_field(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let mut acc = self.same_field(vec![BigRational::zero()]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = self.monomial((n - (i as u64 % n)) % n).scale(c);
            acc = &acc + &m;
        }
        acc
    }

    /// The rational value, if this is a constant.
    pub fn rational_part(&self) -> Result<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Ok(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            Err(Error::NonRational)
        }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic numbers from different fields"
        );
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        let c = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        self.same_field(c)
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        let c = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        self.same_field(c)
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.same_field(out)
    }
}

/// Image of `z` in ℚ(ζ_conductor), where ζ_conductor ↦ x.
pub fn embed(z: RootOfUnity, conductor: u64) -> Result<CycloNumber> {
    if conductor == 0 || !conductor.is_multiple_of(z.order()) {
        return Err(Error::ConductorMismatch {
            order: z.order(),
            conductor,
        });
    }
    let e = z.numerator() * (conductor / z.order());
    Ok(CycloNumber::one(conductor).monomial(e))
}

/// e_p of the inputs (e_0 = 1).
pub fn elementary_symmetric(values: &[CycloNumber], p: usize, conductor: u64) -> CycloNumber {
    if p > values.len() {
        return CycloNumber::zero(conductor);
    }
    let mut e: Vec<CycloNumber> = vec![CycloNumber::one(conductor)];
    e.resize(p + 1, CycloNumber::zero(conductor));
    for v in values {
        for j in (1..=p).rev() {
            let t = &e[j - 1] * v;
            e[j] = &e[j] + &t;
        }
    }
    e.swap_remove(p)
}

/// Least common multiple of the orders of the given roots (1 if empty).
pub fn common_conductor<'a>(roots: impl IntoIterator<Item = &'a RootOfUnity>) -> u64 {
    roots.into_iter().fold(1u64, |acc, z| acc.lcm(&z.order()))
}
