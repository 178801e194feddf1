//! Bradford zones and concentration statistics over ranked counts.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// `(id, count)` pairs sorted by count descending, ties by id ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedCounts {
    items: Vec<(String, u64)>,
    total: u64,
}

impl RankedCounts {
    pub fn new(mut items: Vec<(String, u64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (id, _) in &items {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate id `{id}`")));
            }
        }
        items.sort_by(|a, b| match b.1.cmp(&a.1) {
            Ordering::Equal => a.0.cmp(&b.0),
            other => other,
        });
        let total = items.iter().map(|(_, c)| c).sum();
        Ok(RankedCounts { items, total })
    }

    pub fn items(&self) -> &[(String, u64)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.items.iter().map(|(_, c)| *c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Zone {
    pub journals: Vec<String>,
    pub items: u64,
}

impl Zone {
    pub fn journal_count(&self) -> usize {
        self.journals.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BradfordPartition {
    pub zones: Vec<Zone>,
    /// Geometric mean of successive zone-size ratios.
    pub multiplier: f64,
}

impl BradfordPartition {
    pub fn zone_sizes(&self) -> Vec<usize> {
        self.zones.iter().map(Zone::journal_count).collect()
    }
}

/// Splits the ranked journals into `k` zones of (nearly) equal yield.
pub fn bradford_partition(ranked: &RankedCounts, k: usize) -> Result<BradfordPartition> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 zones, got {k}"
        )));
    }
    let yields = vec![1u64; k];
    partition_by_yields(ranked, &yields)
}

/// Splits the ranked journals into zones whose yields are proportional to
/// `yields` (equal weights give the classic equal-yield zones).
///
/// Journals are scanned in rank order. A zone closes at the journal whose
/// count carries the running total across the zone's cumulative target;
/// that journal stays in the zone when the total with it lands at least as
/// close to the target as the total without it. Every zone receives at
/// least one journal.
pub fn partition_by_yields(ranked: &RankedCounts, yields: &[u64]) -> Result<BradfordPartition> {
    let k = yields.len();
    let n = ranked.len();
    if ranked.total() == 0 {
        return Err(Error::ZeroTotal);
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 zones, got {k}"
        )));
    }
    if k > n {
        return Err(Error::OutOfRange(format!("{k} zones for {n} journals")));
    }
    let weight_total: u64 = yields.iter().sum();
    if yields.contains(&0) {
        return Err(Error::InvalidParameter(
            "zone yields must be positive".into(),
        ));
    }

    let total = u128::from(ranked.total());
    let weight_total = u128::from(weight_total);
    let counts: Vec<u64> = ranked.counts().collect();

    // Index one past the last journal of each zone.
    let mut ends = Vec::with_capacity(k);
    let mut start = 0usize;
    let mut cum: u128 = 0;
    let mut weight_cum: u128 = 0;
    for (z, &y) in yields.iter().enumerate().take(k - 1) {
        weight_cum += u128::from(y);
        // Target is total * weight_cum / weight_total; compare scaled by weight_total.
        let target = total * weight_cum;
        let remaining_zones = k - 1 - z;
        let last_allowed = n - remaining_zones;
        let mut end = start;
        while end < last_allowed {
            let before = cum * weight_total;
            let after = (cum + u128::from(counts[end])) * weight_total;
            if after < target {
                cum += u128::from(counts[end]);
                end += 1;
                continue;
            }
            if after - target <= target.saturating_sub(before) || end == start {
                cum += u128::from(counts[end]);
                end += 1;
            }
            break;
        }
        ends.push(end);
        start = end;
    }
    ends.push(n);

    let mut zones = Vec::with_capacity(k);
    let mut from = 0;
    for &to in &ends {
        let slice = &ranked.items()[from..to];
        zones.push(Zone {
            journals: slice.iter().map(|(id, _)| id.clone()).collect(),
            items: slice.iter().map(|(_, c)| c).sum(),
        });
        from = to;
    }
    let log_sum: f64 = zones
        .windows(2)
        .map(|w| (w[1].journal_count() as f64 / w[0].journal_count() as f64).ln())
        .sum();
    let multiplier = (log_sum / (k - 1) as f64).exp();
    Ok(BradfordPartition { zones, multiplier })
}

/// Cumulative share of the total held by the top `m` journals, `m = 1..=N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShareCurve {
    cumulative: Vec<u64>,
    total: u64,
}

impl ShareCurve {
    pub fn len(&self) -> usize {
        self.cumulative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    /// `(m, p_m)` pairs.
    pub fn points(&self) -> Vec<(usize, f64)> {
        self.cumulative
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + 1, c as f64 / self.total as f64))
            .collect()
    }

    pub fn cumulative_counts(&self) -> &[u64] {
        &self.cumulative
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

pub fn share_curve(ranked: &RankedCounts) -> Result<ShareCurve> {
    if ranked.total() == 0 {
        return Err(Error::ZeroTotal);
    }
    let cumulative = ranked
        .counts()
        .scan(0u64, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    Ok(ShareCurve {
        cumulative,
        total: ranked.total(),
    })
}

/// Smallest `m` whose top-`m` share reaches `p`.
pub fn journals_for_share(curve: &ShareCurve, p: f64) -> Result<usize> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "share must lie in (0, 1], got {p}"
        )));
    }
    let total = curve.total as f64;
    curve
        .cumulative
        .iter()
        .position(|&c| c as f64 / total >= p)
        .map(|i| i + 1)
        .ok_or_else(|| Error::InvalidParameter("curve does not reach the requested share".into()))
}

pub fn count_above_threshold(ranked: &RankedCounts, threshold: u64) -> usize {
    ranked.counts().filter(|&c| c >= threshold).count()
}

/// Number of ids common to the top `top` entries of both rankings.
pub fn stability_overlap(a: &RankedCounts, b: &RankedCounts, top: usize) -> Result<usize> {
    if top > a.len() || top > b.len() {
        return Err(Error::OutOfRange(format!(
            "top {top} exceeds list lengths {} / {}",
            a.len(),
            b.len()
        )));
    }
    let head: HashSet<&str> = a.items()[..top].iter().map(|(id, _)| id.as_str()).collect();
    Ok(b.items()[..top]
        .iter()
        .filter(|(id, _)| head.contains(id.as_str()))
        .count())
}
