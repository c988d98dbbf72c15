//! Fixed-size and minimal-size model search.
//!
//! Every witness is read back from the solver, put in canonical form and
//! re-checked with [`evaluate`] before it is returned.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::corpus::{all_patterns, signed_set, AxiomSystem, SignPattern};
use crate::formula::Formula;
use crate::model::{canonical_form, evaluate, FiniteModel};
use crate::pool::{Pool, Sequential};
use crate::solver::{add_symmetry_breaking, extract_model, ground_over_domain, solve_all, SatResult};
use crate::Error;

pub const DEFAULT_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeVerdict {
    Satisfiable(FiniteModel),
    Unsatisfiable,
}

impl SizeVerdict {
    pub fn model(&self) -> Option<&FiniteModel> {
        match self {
            SizeVerdict::Satisfiable(m) => Some(m),
            SizeVerdict::Unsatisfiable => None,
        }
    }
}

/// Searches for a model of `formulas` with exactly `n` elements. The
/// witness is in canonical form.
pub fn find_model(formulas: &[Formula], n: usize) -> Result<SizeVerdict, Error> {
    let mut p = ground_over_domain(formulas, n)?;
    add_symmetry_breaking(&mut p, n);
    match solve_all(&p) {
        SatResult::Unsat(_) => Ok(SizeVerdict::Unsatisfiable),
        SatResult::Sat(assignment) => {
            let model = canonical_form(&extract_model(&p, &assignment));
            validate(&model, formulas)?;
            Ok(SizeVerdict::Satisfiable(model))
        }
    }
}

/// Checks every formula in `model` with the evaluator.
pub fn validate(model: &FiniteModel, formulas: &[Formula]) -> Result<(), Error> {
    for f in formulas {
        if !evaluate(model, f)? {
            return Err(Error::InvalidWitness(f.to_string()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityResult {
    /// Set when the search came from a sign pattern.
    pub pattern: Option<SignPattern>,
    pub cap: usize,
    /// The least satisfiable size, or `None` if every size up to `cap` is
    /// unsatisfiable.
    pub size: Option<usize>,
    pub witness: Option<FiniteModel>,
    /// Sizes refuted on the way, in increasing order (all of `1..size`).
    pub refuted: Vec<usize>,
}

impl MinimalityResult {
    /// Least size not yet refuted: a proven lower bound on any model.
    pub fn lower_bound(&self) -> usize {
        self.refuted.last().map_or(1, |n| n + 1)
    }
}

/// Tries `n = 1..=cap` in order and stops at the first satisfiable size.
pub fn minimal_model_size(formulas: &[Formula], cap: usize) -> Result<MinimalityResult, Error> {
    let mut result = MinimalityResult { pattern: None, cap, size: None, witness: None, refuted: Vec::new() };
    for n in 1..=cap {
        match find_model(formulas, n)? {
            SizeVerdict::Unsatisfiable => result.refuted.push(n),
            SizeVerdict::Satisfiable(m) => {
                result.size = Some(n);
                result.witness = Some(m);
                break;
            }
        }
    }
    Ok(result)
}

/// Minimal model size of the signed set for every sign pattern of
/// `system`, in pattern order.
pub fn independence_scan(system: &AxiomSystem, cap: usize) -> Result<Vec<MinimalityResult>, Error> {
    independence_scan_with(system, cap, &Sequential)
}

pub fn independence_scan_with(system: &AxiomSystem, cap: usize, pool: &impl Pool) -> Result<Vec<MinimalityResult>, Error> {
    let patterns = all_patterns(system);
    let results = pool.run(patterns.len(), &|i| {
        let formulas = signed_set(system, &patterns[i])?;
        let mut r = minimal_model_size(&formulas, cap)?;
        r.pattern = Some(patterns[i].clone());
        Ok(r)
    });
    results.into_iter().collect()
}

/// True when every pattern found a model within the cap.
pub fn completely_independent(scan: &[MinimalityResult]) -> bool {
    scan.iter().all(|r| r.size.is_some())
}
