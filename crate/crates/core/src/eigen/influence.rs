//! Recursive journal influence.
//!
//! The influence weight of journal `j` is the influence-weighted count of
//! citations it receives divided by the number of references it gives:
//!
//! ```text
//! w_j = (sum_i w_i * C[i][j]) / r_j,    r_j = sum_k C[j][k]
//! ```
//!
//! The map `F(w)` preserves `sum_j r_j w_j`, so the fixed point is scaled to
//! make that sum equal `sum_j r_j` (a journal citing and cited in the same
//! proportion as everyone else gets weight 1).

use crate::error::{Error, Result};
use crate::graph::JournalCitationMatrix;
use crate::par::{map_indices, Execution};
use crate::score::ScoreVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceParams {
    /// Stop once `max_j |w_j - F(w)_j|` falls below this.
    pub tol: f64,
    pub max_iter: usize,
    pub exec: Execution,
}

impl Default for InfluenceParams {
    fn default() -> Self {
        InfluenceParams {
            tol: 1e-12,
            max_iter: 10_000,
            exec: Execution::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceWeights {
    pub weights: ScoreVector,
    pub iterations: usize,
    /// `max_j |w_j - F(w)_j|` for the returned weights.
    pub residual: f64,
    pub converged: bool,
}

/// Weights, per-publication influence and total influence for every journal.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceResult {
    pub weight: ScoreVector,
    pub per_publication: ScoreVector,
    pub total: ScoreVector,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Weighted citations received, `sum_i w_i * C[i][j]`, for every `j`.
fn weighted_inflow(transposed: &[f64], n: usize, weights: &[f64], exec: Execution) -> Vec<f64> {
    map_indices(n, exec, |j| {
        transposed[j * n..(j + 1) * n]
            .iter()
            .zip(weights)
            .map(|(c, w)| c * w)
            .sum()
    })
}

fn transpose(matrix: &JournalCitationMatrix) -> Vec<f64> {
    let n = matrix.len();
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for (j, &c) in matrix.row(i).iter().enumerate() {
            t[j * n + i] = c as f64;
        }
    }
    t
}

/// Fixed point of the influence recursion by damped power iteration.
///
/// Each step moves halfway towards `F(w)`. The half step has the same fixed
/// point but keeps periodic citation patterns (two journals citing only each
/// other) from oscillating.
pub fn influence_weights(
    matrix: &JournalCitationMatrix,
    params: &InfluenceParams,
) -> Result<InfluenceWeights> {
    super::check_tolerance(params.tol, params.max_iter)?;
    let n = matrix.len();
    if n == 0 {
        return Err(Error::InvalidMatrix("no journals".into()));
    }
    let refs: Vec<f64> = (0..n).map(|i| matrix.references_given(i) as f64).collect();
    let silent: Vec<String> = (0..n)
        .filter(|&i| refs[i] == 0.0)
        .map(|i| matrix.journals()[i].clone())
        .collect();
    if !silent.is_empty() {
        return Err(Error::ZeroReferences(silent));
    }
    let total_refs: f64 = refs.iter().sum();
    let transposed = transpose(matrix);

    let apply = |w: &[f64]| -> Vec<f64> {
        let inflow = weighted_inflow(&transposed, n, w, params.exec);
        inflow.iter().zip(&refs).map(|(x, r)| x / r).collect()
    };

    let mut w = vec![1.0; n];
    let mut iterations = 0;
    let residual = loop {
        let fw = apply(&w);
        let residual = w
            .iter()
            .zip(&fw)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if residual < params.tol || iterations == params.max_iter {
            break residual;
        }
        iterations += 1;
        for (wi, fi) in w.iter_mut().zip(&fw) {
            *wi = 0.5 * (*wi + fi);
        }
        let scale = total_refs / w.iter().zip(&refs).map(|(a, r)| a * r).sum::<f64>();
        w.iter_mut().for_each(|x| *x *= scale);
    };

    Ok(InfluenceWeights {
        weights: ScoreVector::new(matrix.journals().to_vec(), w)?,
        iterations,
        residual,
        converged: residual < params.tol,
    })
}

fn check_keys(matrix: &JournalCitationMatrix, scores: &ScoreVector) -> Result<()> {
    if scores.ids() != matrix.journals() {
        return Err(Error::DimensionMismatch(format!(
            "weights cover {} journals, matrix has {}",
            scores.len(),
            matrix.len()
        )));
    }
    Ok(())
}

/// `I_j = (sum_i w_i * C[i][j]) / pubs_j`.
pub fn influence_per_publication(
    matrix: &JournalCitationMatrix,
    weights: &ScoreVector,
) -> Result<ScoreVector> {
    check_keys(matrix, weights)?;
    let n = matrix.len();
    let inflow = weighted_inflow(&transpose(matrix), n, weights.values(), Execution::Auto);
    let values = inflow
        .iter()
        .zip(matrix.pubs())
        .map(|(x, &p)| x / p as f64)
        .collect();
    ScoreVector::new(matrix.journals().to_vec(), values)
}

/// Element-wise `per_publication * pubs`, matched by id.
pub fn total_influence<S: AsRef<str>>(
    per_publication: &ScoreVector,
    pubs: &[(S, u64)],
) -> Result<ScoreVector> {
    if pubs.len() != per_publication.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} publication counts for {} journals",
            pubs.len(),
            per_publication.len()
        )));
    }
    let mut values = Vec::with_capacity(pubs.len());
    for (id, ipp) in per_publication.iter() {
        let count = pubs
            .iter()
            .find(|(k, _)| k.as_ref() == id)
            .map(|&(_, p)| p)
            .ok_or_else(|| Error::UnknownJournal(id.to_string()))?;
        values.push(ipp * count as f64);
    }
    ScoreVector::new(per_publication.ids().to_vec(), values)
}

/// All three influence measures in one pass.
pub fn influence(
    matrix: &JournalCitationMatrix,
    params: &InfluenceParams,
) -> Result<InfluenceResult> {
    let weights = influence_weights(matrix, params)?;
    let per_publication = influence_per_publication(matrix, &weights.weights)?;
    let pubs: Vec<(&str, u64)> = matrix
        .journals()
        .iter()
        .map(String::as_str)
        .zip(matrix.pubs().iter().copied())
        .collect();
    let total = total_influence(&per_publication, &pubs)?;
    Ok(InfluenceResult {
        weight: weights.weights,
        per_publication,
        total,
        iterations: weights.iterations,
        residual: weights.residual,
        converged: weights.converged,
    })
}
