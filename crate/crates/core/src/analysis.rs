//! One-call evaluation of a datum: validation, Albanese pipeline and
//! invariants of `X` and of its Albanese fiber.

use crate::action::{HyperellipticDatum, ValidationReport};
use crate::albanese::{run_pipeline, AlbaneseReport};
use crate::error::{Error, Result};
use crate::invariants::{canonical_report, compute_invariants, InvariantsReport, PullbackDiagnostic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub datum: HyperellipticDatum,
    pub validation: ValidationReport,
    pub albanese: AlbaneseReport,
    pub invariants: InvariantsReport,
    pub fiber_invariants: Option<InvariantsReport>,
    pub canonical: PullbackDiagnostic,
}

/// Validates `d` and, if it is a valid datum, runs everything else.
pub fn analyze(d: &HyperellipticDatum, recurse: bool) -> Result<Analysis> {
    let mut datum = d.clone();
    let validation = datum.validate();
    if !validation.passed {
        return Err(Error::InvalidDatum(validation.failures().join("; ")));
    }
    let albanese = run_pipeline(&datum, recurse)?;
    let invariants = compute_invariants(&datum)?;
    let fiber_invariants = albanese.fiber.as_ref().map(compute_invariants).transpose()?;
    let canonical = canonical_report(&albanese, &invariants, fiber_invariants.as_ref())?;
    if invariants.q != albanese.q {
        return Err(Error::Inconsistent(format!(
            "invariants give q = {}, the pipeline {}",
            invariants.q, albanese.q
        )));
    }
    Ok(Analysis {
        datum,
        validation,
        albanese,
        invariants,
        fiber_invariants,
        canonical,
    })
}
