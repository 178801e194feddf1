use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::par::{map_indices, Execution};
use crate::score::ScoreVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    /// Probability of following a link rather than jumping to a uniformly
    /// chosen node.
    pub damping: f64,
    /// Stop once the L1 change between iterations falls below this.
    pub tol: f64,
    pub max_iter: usize,
    pub exec: Execution,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 200,
            exec: Execution::Auto,
        }
    }
}

impl PageRankParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        super::check_tolerance(self.tol, self.max_iter)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankResult {
    pub scores: ScoreVector,
    pub iterations: usize,
    /// L1 change of the last iteration.
    pub residual: f64,
    pub converged: bool,
}

/// Stationary distribution of the damped random surfer.
///
/// `r = (1 - d) / N + d * (M r + dangling mass / N)`, where `M` spreads each
/// node's rank over its references in proportion to multiplicity and nodes
/// without references spread theirs uniformly.
pub fn pagerank(graph: &CitationGraph, params: &PageRankParams) -> Result<PageRankResult> {
    params.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = params.damping;
    let nf = n as f64;
    let inv_out: Vec<f64> = (0..n)
        .map(|i| match graph.out_degree_at(i) {
            0 => 0.0,
            k => 1.0 / k as f64,
        })
        .collect();
    let dangling: Vec<usize> = (0..n).filter(|&i| graph.out_degree_at(i) == 0).collect();

    let mut rank = vec![1.0 / nf; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling_mass: f64 = dangling.iter().map(|&i| rank[i]).sum();
        let base = (1.0 - d) / nf + d * dangling_mass / nf;
        let share: Vec<f64> = rank.iter().zip(&inv_out).map(|(r, w)| r * w).collect();
        let next = map_indices(n, params.exec, |j| {
            let inflow: f64 = graph
                .in_edges(j)
                .map(|(i, m)| f64::from(m) * share[i])
                .sum();
            base + d * inflow
        });
        residual = next.iter().zip(&rank).map(|(a, b)| (a - b).abs()).sum();
        rank = next;
        if residual < params.tol {
            break;
        }
    }

    Ok(PageRankResult {
        scores: ScoreVector::new(graph.ids().to_vec(), rank)?,
        iterations,
        residual,
        converged: residual < params.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_uniform() {
        let g =
            CitationGraph::from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
                .unwrap();
        let r = pagerank(&g, &PageRankParams::default()).unwrap();
        assert!(r.converged);
        for v in r.scores.values() {
            assert!((v - 0.2).abs() < 1e-10, "{v}");
        }
    }

    #[test]
    fn two_nodes_closed_form() {
        // a -> b, b dangling. With s = d/2 spread from b:
        //   r_a = (1-d)/2 + d r_b / 2
        //   r_b = (1-d)/2 + d r_a + d r_b / 2
        // and r_a + r_b = 1 gives r_a = 1 / (2 + d).
        let g = CitationGraph::from_edges([("a", "b")]).unwrap();
        let d = 0.85;
        let r = pagerank(&g, &PageRankParams::default()).unwrap();
        let ra = 1.0 / (2.0 + d);
        assert!((r.scores.get("a").unwrap() - ra).abs() < 1e-10);
        assert!((r.scores.get("b").unwrap() - (1.0 - ra)).abs() < 1e-10);
    }

    #[test]
    fn flags_non_convergence() {
        let g =
            CitationGraph::from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")]).unwrap();
        let params = PageRankParams {
            max_iter: 2,
            tol: 1e-15,
            ..Default::default()
        };
        let r = pagerank(&g, &params).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 2);
        assert!(r.residual > 0.0);
    }

    #[test]
    fn rejects_bad_params_and_empty_graph() {
        let g = CitationGraph::from_edges([("a", "b")]).unwrap();
        for damping in [0.0, 1.0, -0.1, f64::NAN] {
            let p = PageRankParams {
                damping,
                ..Default::default()
            };
            assert!(pagerank(&g, &p).is_err());
        }
        let p = PageRankParams {
            tol: 0.0,
            ..Default::default()
        };
        assert!(pagerank(&g, &p).is_err());
        let empty = CitationGraph::from_edges(Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(
            pagerank(&empty, &PageRankParams::default()),
            Err(Error::EmptyGraph)
        );
    }
}
