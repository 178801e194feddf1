use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::par::{map_indices, Execution};
use crate::score::ScoreVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HitsParams {
    /// Stop once both vectors move less than this in L2.
    pub tol: f64,
    pub max_iter: usize,
    pub exec: Execution,
}

impl Default for HitsParams {
    fn default() -> Self {
        HitsParams {
            tol: 1e-10,
            max_iter: 1000,
            exec: Execution::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub authority: ScoreVector,
    pub hub: ScoreVector,
    pub iterations: usize,
    /// Larger of the two L2 changes in the last iteration.
    pub residual: f64,
    pub converged: bool,
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn l2_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Hub and authority scores by alternating `a <- A'h`, `h <- Aa`.
///
/// Both vectors are L2-normalised after every half step. A node nobody
/// cites has authority exactly 0; a node citing nothing has hub exactly 0.
pub fn hits(graph: &CitationGraph, params: &HitsParams) -> Result<HitsResult> {
    super::check_tolerance(params.tol, params.max_iter)?;
    if graph.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = graph.node_count();
    let mut hub = vec![1.0 / (n as f64).sqrt(); n];
    let mut authority = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;

    while iterations < params.max_iter {
        iterations += 1;
        let mut next_auth = map_indices(n, params.exec, |j| {
            graph.in_edges(j).map(|(i, m)| f64::from(m) * hub[i]).sum()
        });
        normalize(&mut next_auth);
        let mut next_hub = map_indices(n, params.exec, |i| {
            graph
                .out_edges(i)
                .map(|(j, m)| f64::from(m) * next_auth[j])
                .sum()
        });
        normalize(&mut next_hub);

        residual = l2_distance(&next_auth, &authority).max(l2_distance(&next_hub, &hub));
        authority = next_auth;
        hub = next_hub;
        if residual < params.tol {
            break;
        }
    }

    Ok(HitsResult {
        authority: ScoreVector::new(graph.ids().to_vec(), authority)?,
        hub: ScoreVector::new(graph.ids().to_vec(), hub)?,
        iterations,
        residual,
        converged: residual < params.tol,
    })
}
