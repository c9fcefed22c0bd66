//! Numerical invariants of `X = A/G` from the complex representation.
//!
//! Holomorphic forms on `X` are the `G`-invariant forms on `A`, and
//! translations act trivially on those. In coordinates diagonalizing the
//! complex representation, `g` acts on `Λ^p T* ⊗ Λ^q T̄*` with trace
//! `e_p(χ(g))·conj(e_q(χ(g)))`, so averaging over the group gives
//! `h^{p,q}(X)`. These averages are computed exactly in a cyclotomic field
//! and must come out as nonnegative integers.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::action::HyperellipticDatum;
use crate::albanese::AlbaneseReport;
use crate::cyclotomic::{common_conductor, embed, CycloNumber, RootOfUnity};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    pub n: usize,
    /// `h[p][q] = h^{p,q}`.
    pub h: Vec<Vec<u64>>,
}

impl HodgeDiamond {
    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.h[p][q]
    }

    /// Rows of constant `p + q`, from `h^{0,0}` down to `h^{n,n}`; row `k`
    /// lists `h^{k,0}, h^{k−1,1}, …, h^{0,k}` (clipped to the square).
    pub fn rows(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        (0..=2 * n)
            .map(|k| {
                let lo = k.saturating_sub(n);
                let hi = k.min(n);
                (lo..=hi).rev().map(|p| self.h[p][k - p]).collect()
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..=n).all(|p| (0..=n).all(|q| self.h[p][q] == self.h[q][p] && self.h[p][q] == self.h[n - p][n - q]))
    }

    pub fn betti(&self, k: usize) -> u64 {
        self.rows().get(k).map_or(0, |r| r.iter().sum())
    }
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        let longest = self.n + 1;
        for row in &rows {
            let pad = (longest - row.len()) * (width + 1) / 2;
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}{}", " ".repeat(pad), cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantsReport {
    pub dim: usize,
    pub q: usize,
    pub diamond: HodgeDiamond,
    /// Order of ω_X in the Picard group.
    pub canonical_order: u64,
    /// χ(O_X).
    pub euler_char_o: i64,
    pub group_order: usize,
    pub cyclic: bool,
}

/// Exact `(1/|G|) Σ_g f(g)` as an integer.
fn certified_average(values: impl Iterator<Item = CycloNumber>, order: usize, what: &str) -> Result<u64> {
    let mut acc: Option<CycloNumber> = None;
    for v in values {
        acc = Some(match acc {
            None => v,
            Some(a) => &a + &v,
        });
    }
    let sum = acc
        .map(|a| a.rational_part())
        .transpose()?
        .unwrap_or_else(BigRational::zero);
    let avg = sum / BigRational::from_integer(BigInt::from(order));
    if !avg.is_integer() || avg.is_negative() {
        return Err(Error::Inconsistent(format!(
            "{what} averages to {avg}, not a nonnegative integer"
        )));
    }
    Ok(u64::try_from(avg.to_integer()).expect("small"))
}

/// `e_0, …, e_n` of the eigenvalues of one element.
fn all_elementary(eig: &[RootOfUnity], conductor: u64) -> Result<Vec<CycloNumber>> {
    let mut e = vec![CycloNumber::one(conductor)];
    e.resize(eig.len() + 1, CycloNumber::zero(conductor));
    for z in eig {
        let v = embed(*z, conductor)?;
        for j in (1..e.len()).rev() {
            let t = &e[j - 1] * &v;
            e[j] = &e[j] + &t;
        }
    }
    Ok(e)
}

fn conductor_of(d: &HyperellipticDatum) -> u64 {
    common_conductor(d.group.elements.iter().flat_map(|a| a.eigenvalues.iter()))
}

/// `q = (1/|G|) Σ_g tr ρ̃(g)`, cross-checked against the fixed lattice.
pub fn irregularity(d: &HyperellipticDatum) -> Result<usize> {
    let conductor = conductor_of(d);
    let traces = d
        .group
        .elements
        .iter()
        .map(|a| {
            a.eigenvalues
                .iter()
                .map(|z| embed(*z, conductor))
                .try_fold(CycloNumber::zero(conductor), |acc, v| v.map(|v| &acc + &v))
        })
        .collect::<Result<Vec<_>>>()?;
    let q = certified_average(traces.into_iter(), d.group.order(), "the trace character")? as usize;
    let lattice_q = crate::albanese::compute_a0(d)?.rank() / 2;
    if q != lattice_q {
        return Err(Error::Inconsistent(format!(
            "character average gives q = {q}, fixed lattice gives {lattice_q}"
        )));
    }
    Ok(q)
}

pub fn hodge_diamond(d: &HyperellipticDatum) -> Result<HodgeDiamond> {
    let n = d.dim();
    let conductor = conductor_of(d);
    let sym: Vec<Vec<CycloNumber>> = d
        .group
        .elements
        .iter()
        .map(|a| all_elementary(&a.eigenvalues, conductor))
        .collect::<Result<_>>()?;
    let conj: Vec<Vec<CycloNumber>> = sym.iter().map(|e| e.iter().map(CycloNumber::conj).collect()).collect();
    let mut h = vec![vec![0u64; n + 1]; n + 1];
    for p in 0..=n {
        for q in 0..=n {
            let terms = sym.iter().zip(&conj).map(|(e, c)| &e[p] * &c[q]);
            h[p][q] = certified_average(terms, d.group.order(), &format!("h^{{{p},{q}}}"))?;
        }
    }
    Ok(HodgeDiamond { n, h })
}

/// Order of the determinant character `g ↦ Π eigᵢ(g)`.
pub fn canonical_order(d: &HyperellipticDatum) -> u64 {
    d.group
        .elements
        .iter()
        .map(|a| a.eigenvalues.iter().fold(RootOfUnity::one(), |acc, z| acc * *z).order())
        .fold(1, num_integer::lcm)
}

pub fn compute_invariants(d: &HyperellipticDatum) -> Result<InvariantsReport> {
    let q = irregularity(d)?;
    let diamond = hodge_diamond(d)?;
    if diamond.get(1, 0) as usize != q {
        return Err(Error::Inconsistent(format!(
            "h^{{1,0}} = {} but q = {q}",
            diamond.get(1, 0)
        )));
    }
    if !diamond.is_symmetric() {
        return Err(Error::Inconsistent("Hodge diamond is not symmetric".into()));
    }
    let canonical_order = canonical_order(d);
    if (diamond.get(d.dim(), 0) == 1) != (canonical_order == 1) {
        return Err(Error::Inconsistent(format!(
            "h^{{n,0}} = {} but the canonical order is {canonical_order}",
            diamond.get(d.dim(), 0)
        )));
    }
    let euler_char_o = (0..=d.dim())
        .map(|k| if k % 2 == 0 { 1 } else { -1 } * diamond.get(0, k) as i64)
        .sum();
    let cyclic = d.group.abelian_invariants().is_some_and(|v| v.len() <= 1);
    Ok(InvariantsReport {
        dim: d.dim(),
        q,
        diamond,
        canonical_order,
        euler_char_o,
        group_order: d.group.order(),
        cyclic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackDiagnostic {
    pub x_order: u64,
    pub fiber_order: u64,
    /// ω_X is pulled back from the Albanese variety.
    pub pulled_back: bool,
}

/// The canonical order of the fiber divides that of `X`; ω_X comes from
/// the Albanese variety exactly when the fiber has trivial canonical bundle.
pub fn canonical_report(
    report: &AlbaneseReport,
    inv_x: &InvariantsReport,
    inv_f: Option<&InvariantsReport>,
) -> Result<PullbackDiagnostic> {
    let fiber_order = match (inv_f, &report.fiber) {
        (Some(f), _) => f.canonical_order,
        (None, Some(f)) => canonical_order(f),
        (None, None) => 1,
    };
    if !inv_x.canonical_order.is_multiple_of(fiber_order) {
        return Err(Error::DivisibilityViolation {
            fiber: fiber_order,
            total: inv_x.canonical_order,
        });
    }
    Ok(PullbackDiagnostic {
        x_order: inv_x.canonical_order,
        fiber_order,
        pulled_back: fiber_order == 1,
    })
}
