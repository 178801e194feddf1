//! Power-iteration solvers for recursive authority measures.
//!
//! Each solver reports whether it converged instead of failing on
//! `max_iter`, so a partial result can still be inspected.

mod hits;
mod influence;
mod pagerank;

pub use hits::{hits, HitsParams, HitsResult};
pub use influence::{
    influence, influence_per_publication, influence_weights, total_influence, InfluenceParams,
    InfluenceResult, InfluenceWeights,
};
pub use pagerank::{pagerank, PageRankParams, PageRankResult};

fn check_tolerance(tol: f64, max_iter: usize) -> crate::Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(crate::Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(crate::Error::InvalidParameter(
            "max_iter must be at least 1".into(),
        ));
    }
    Ok(())
}
