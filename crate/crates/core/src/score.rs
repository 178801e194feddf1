use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};

/// Real-valued scores keyed by node or journal id.
///
/// Entries keep the order they were created in (node order for graph
/// measures, matrix order for journal measures). [`ScoreVector::ranked`]
/// gives the deterministic descending view.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    ids: Vec<String>,
    values: Vec<f64>,
}

/// One row of a ranked view. Ranks start at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedEntry<'a> {
    pub rank: usize,
    pub id: &'a str,
    pub value: f64,
}

impl ScoreVector {
    pub fn new(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if ids.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ids for {} values",
                ids.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "non-finite score for `{}`",
                ids[i]
            )));
        }
        Ok(ScoreVector { ids, values })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.ids
            .iter()
            .position(|x| x == id)
            .map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.ids
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Descending by score, ties broken by ascending id.
    pub fn ranked(&self) -> Vec<RankedEntry<'_>> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| match self.values[b].total_cmp(&self.values[a]) {
            Ordering::Equal => self.ids[a].cmp(&self.ids[b]),
            other => other,
        });
        order
            .into_iter()
            .enumerate()
            .map(|(r, i)| RankedEntry {
                rank: r + 1,
                id: &self.ids[i],
                value: self.values[i],
            })
            .collect()
    }
}
