//! Cycle counts for the equitable transition graphs via the divisor
//! recursion: b_k = (C(k, k/2) - sum over proper even divisors d of d*b_d) / k,
//! with a_k the sum of b_d over all even divisors of k. The division is
//! exact; a nonzero remainder means the formula was transcribed wrong and
//! is reported as an internal error, never rounded.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::{binomial, Integer};
use num_traits::Zero;

use crate::classes::{ClassName, ClassSpec};
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub k: usize,
    /// Total cycles in the decomposition.
    pub a_k: BigUint,
    /// Cycles of full length k.
    pub b_k: BigUint,
    /// b_d for every even divisor d of k, k included.
    pub divisor_detail: BTreeMap<usize, BigUint>,
    pub equitable_count: BigUint,
}

fn even_divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k.is_multiple_of(*d) && d % 2 == 0).collect()
}

pub fn census(k: usize) -> Result<CensusReport> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("census needs an even k >= 2, got {k}")));
    }
    let mut b: BTreeMap<usize, BigUint> = BTreeMap::new();
    for d in even_divisors(k) {
        let central = binomial(BigUint::from(d), BigUint::from(d / 2));
        let smaller: BigUint = even_divisors(d)
            .iter()
            .filter(|&&e| e < d)
            .map(|&e| BigUint::from(e) * &b[&e])
            .sum();
        let (q, r) = (central - smaller).div_rem(&BigUint::from(d));
        if !r.is_zero() {
            return Err(Error::InternalConsistency(format!(
                "divisor recursion left remainder {r} at d={d}"
            )));
        }
        b.insert(d, q);
    }
    let a_k: BigUint = b.values().sum();
    let b_k = b[&k].clone();
    Ok(CensusReport {
        k,
        a_k,
        b_k,
        divisor_detail: b,
        equitable_count: binomial(BigUint::from(k), BigUint::from(k / 2)),
    })
}

pub fn census_table(max_k: usize) -> Result<Vec<CensusReport>> {
    if max_k < 2 || !max_k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "census table needs an even max k >= 2, got {max_k}"
        )));
    }
    (1..=max_k / 2).map(|i| census(2 * i)).collect()
}

pub struct CrossCheck {
    pub k: usize,
    pub ok: bool,
    pub report: CensusReport,
    pub mismatches: Vec<String>,
}

/// Compares the recursion against the actual cycle decomposition of the
/// equitable graph: total cycles against a_k and per-even-divisor cycle
/// counts against b_d.
pub fn cross_check(k: usize) -> Result<CrossCheck> {
    let report = census(k)?;
    let spec = ClassSpec::new(ClassName::Equitable, k, 2)?;
    let graph = TransitionGraph::build(&spec)?;
    let decomposition = graph.decompose_cycles()?;

    let mut mismatches = Vec::new();
    if BigUint::from(decomposition.total_cycles) != report.a_k {
        mismatches.push(format!(
            "total cycles {} != a_{k} = {}",
            decomposition.total_cycles, report.a_k
        ));
    }
    for (&d, expected) in &report.divisor_detail {
        let observed = decomposition.length_histogram.get(&d).copied().unwrap_or(0);
        if BigUint::from(observed) != *expected {
            mismatches.push(format!("{observed} cycles of length {d} != b_{d} = {expected}"));
        }
    }
    for (&len, &count) in &decomposition.length_histogram {
        if !report.divisor_detail.contains_key(&len) {
            mismatches.push(format!("{count} cycles of unexpected length {len}"));
        }
    }
    let ok = mismatches.is_empty();
    Ok(CrossCheck { k, ok, report, mismatches })
}
