//! Total cites, impact factor and h-index.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, DocType, JournalCitationMatrix, TimeWindow};

/// References made in `cite_year` to items of `journal`, of any age.
pub fn total_cites(graph: &CitationGraph, journal: &str, cite_year: i32) -> Result<u64> {
    if !graph.docs().any(|d| d.venue == journal) {
        return Err(Error::UnknownJournal(journal.to_string()));
    }
    Ok(total_cites_by_journal(graph, cite_year)
        .get(journal)
        .copied()
        .unwrap_or(0))
}

/// Total cites summed over a set of citing years.
pub fn total_cites_over_years(
    graph: &CitationGraph,
    journal: &str,
    cite_years: impl IntoIterator<Item = i32>,
) -> Result<u64> {
    let mut sum = 0;
    for y in cite_years {
        sum += total_cites(graph, journal, y)?;
    }
    Ok(sum)
}

/// Total cites in `cite_year` for every journal that has at least one
/// document. References with an endpoint lacking metadata are ignored.
pub fn total_cites_by_journal(graph: &CitationGraph, cite_year: i32) -> BTreeMap<String, u64> {
    let mut out: BTreeMap<String, u64> = graph.docs().map(|d| (d.venue.clone(), 0)).collect();
    for (citing, cited, m) in graph.edges() {
        let (Some(a), Some(b)) = (graph.doc(citing), graph.doc(cited)) else {
            continue;
        };
        if a.year == cite_year {
            *out.get_mut(&b.venue).expect("venue seeded") += u64::from(m);
        }
    }
    out
}

/// Total cites read off an aggregated matrix: its column sum.
pub fn total_cites_in_matrix(matrix: &JournalCitationMatrix, journal: &str) -> Result<u64> {
    let j = matrix
        .index_of(journal)
        .ok_or_else(|| Error::UnknownJournal(journal.to_string()))?;
    Ok(matrix.citations_received(j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImpactFactorInput {
    /// Citations in the cite year to items from the two source years.
    pub cites_to_window: u64,
    /// Items published in the two source years.
    pub items_in_window: u64,
}

impl ImpactFactorInput {
    pub fn value(&self) -> Option<f64> {
        (self.items_in_window > 0)
            .then(|| self.cites_to_window as f64 / self.items_in_window as f64)
    }
}

pub fn impact_factor(input: ImpactFactorInput) -> Result<f64> {
    input
        .value()
        .ok_or_else(|| Error::EmptyImpactWindow("<input>".into()))
}

/// Which documents count as citable items in the denominator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum ItemFilter {
    #[default]
    All,
    Only(Vec<DocType>),
}

impl ItemFilter {
    fn admits(&self, t: DocType) -> bool {
        match self {
            ItemFilter::All => true,
            ItemFilter::Only(types) => types.contains(&t),
        }
    }
}

/// Tallies the two-year window counts for every journal.
///
/// The numerator counts all references to items in the source years; the
/// filter only restricts the denominator.
pub fn impact_factor_inputs(
    graph: &CitationGraph,
    cite_year: i32,
    filter: &ItemFilter,
) -> BTreeMap<String, ImpactFactorInput> {
    let window = TimeWindow::impact_factor(cite_year);
    let mut out: BTreeMap<String, ImpactFactorInput> = graph
        .docs()
        .map(|d| {
            (
                d.venue.clone(),
                ImpactFactorInput {
                    cites_to_window: 0,
                    items_in_window: 0,
                },
            )
        })
        .collect();
    for d in graph.docs() {
        if window.contains_source(d.year) && filter.admits(d.doc_type) {
            out.get_mut(&d.venue).expect("seeded").items_in_window += 1;
        }
    }
    for (citing, cited, m) in graph.edges() {
        let (Some(a), Some(b)) = (graph.doc(citing), graph.doc(cited)) else {
            continue;
        };
        if a.year == cite_year && window.contains_source(b.year) {
            out.get_mut(&b.venue).expect("seeded").cites_to_window += u64::from(m);
        }
    }
    out
}

/// Impact factor of `journal` in `cite_year` from document-level data.
///
/// A journal with no items in the two preceding years has no impact factor
/// and yields [`Error::EmptyImpactWindow`].
pub fn impact_factor_from_graph(
    graph: &CitationGraph,
    journal: &str,
    cite_year: i32,
    filter: &ItemFilter,
) -> Result<f64> {
    let inputs = impact_factor_inputs(graph, cite_year, filter);
    let input = inputs
        .get(journal)
        .ok_or_else(|| Error::UnknownJournal(journal.to_string()))?;
    input
        .value()
        .ok_or_else(|| Error::EmptyImpactWindow(journal.to_string()))
}

/// Largest `h` such that at least `h` counts are `>= h`.
pub fn h_index(counts: &[u64]) -> u64 {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .enumerate()
        .take_while(|&(i, &c)| c > i as u64)
        .count() as u64
}

/// Summary of the `h` most-cited publications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HCoreSummary {
    pub h_index: u64,
    pub max_cites: u64,
    /// Max minus min over the h-core; 0 for an empty core.
    pub cites_range: u64,
    /// Sum over the h-core.
    pub total_cites: u64,
    pub publications: usize,
}

pub fn h_core_summary(counts: &[u64]) -> HCoreSummary {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let h = h_index(&sorted);
    let core = &sorted[..h as usize];
    HCoreSummary {
        h_index: h,
        max_cites: core.first().copied().unwrap_or(0),
        cites_range: match (core.first(), core.last()) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => 0,
        },
        total_cites: core.iter().sum(),
        publications: counts.len(),
    }
}

/// h-index from in-degrees in a closed corpus: the citation count of each
/// document `author` wrote is its in-degree in `graph`.
pub fn h_index_from_graph(graph: &CitationGraph, author: &str) -> u64 {
    let key = crate::study::normalize_name(author);
    let counts: Vec<u64> = (0..graph.node_count())
        .filter(|&i| {
            graph.doc_at(i).is_some_and(|d| {
                d.authors
                    .iter()
                    .any(|a| crate::study::normalize_name(a) == key)
            })
        })
        .map(|i| graph.in_degree_at(i))
        .collect();
    h_index(&counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DocumentRecord;

    fn doc(id: &str, venue: &str, year: i32, doc_type: DocType) -> DocumentRecord {
        DocumentRecord {
            id: id.into(),
            venue: venue.into(),
            year,
            authors: vec!["Ann Author".into()],
            doc_type,
            cites: 0,
        }
    }

    #[test]
    fn h_index_small_cases() {
        assert_eq!(h_index(&[]), 0);
        assert_eq!(h_index(&[0, 0, 0]), 0);
        assert_eq!(h_index(&[10, 8, 5, 4, 3]), 4);
        assert_eq!(h_index(&[3, 10, 4, 8, 5]), 4);
        assert_eq!(h_index(&[1]), 1);
        assert_eq!(h_index(&[100]), 1);
        assert_eq!(h_index(&[2, 2]), 2);
    }

    #[test]
    fn h_core_summary_fields() {
        let s = h_core_summary(&[10, 8, 5, 4, 3]);
        assert_eq!(
            s,
            HCoreSummary {
                h_index: 4,
                max_cites: 10,
                cites_range: 6,
                total_cites: 27,
                publications: 5,
            }
        );
        assert_eq!(h_core_summary(&[]).max_cites, 0);
    }

    #[test]
    fn impact_factor_division() {
        let v = impact_factor(ImpactFactorInput {
            cites_to_window: 120,
            items_in_window: 60,
        })
        .unwrap();
        assert_eq!(v, 2.0);
        let z = impact_factor(ImpactFactorInput {
            cites_to_window: 0,
            items_in_window: 40,
        })
        .unwrap();
        assert_eq!(z, 0.0);
        assert!(impact_factor(ImpactFactorInput {
            cites_to_window: 5,
            items_in_window: 0,
        })
        .is_err());
    }

    fn corpus() -> CitationGraph {
        // J: items in 1967, 1968 and an old classic from 1951. K cites in 1969.
        let docs = vec![
            doc("j67a", "J", 1967, DocType::Article),
            doc("j67b", "J", 1967, DocType::Review),
            doc("j68a", "J", 1968, DocType::Article),
            doc("j51", "J", 1951, DocType::Article),
            doc("k69a", "K", 1969, DocType::Article),
            doc("k69b", "K", 1969, DocType::Article),
            doc("k68", "K", 1968, DocType::Article),
        ];
        let edges = vec![
            ("k69a", "j67a"),
            ("k69a", "j67b"),
            ("k69a", "j51"),
            ("k69b", "j51"),
            ("k69b", "j68a"),
            ("k69b", "j68a"),
            ("k68", "j67a"),
            ("k69b", "k68"),
        ];
        CitationGraph::build(edges, docs, false).unwrap()
    }

    #[test]
    fn total_cites_has_no_age_cap() {
        let g = corpus();
        assert_eq!(total_cites(&g, "J", 1969).unwrap(), 6);
        assert_eq!(total_cites(&g, "J", 1968).unwrap(), 1);
        assert_eq!(total_cites(&g, "J", 1990).unwrap(), 0);
        assert!(total_cites(&g, "Q", 1969).is_err());
        assert_eq!(total_cites_over_years(&g, "J", 1968..=1969).unwrap(), 7);
    }

    #[test]
    fn impact_factor_hand_tally() {
        let g = corpus();
        // cites 1969 -> J items of 1967-68: j67a, j67b, j68a x2 = 4; items = 3.
        let v = impact_factor_from_graph(&g, "J", 1969, &ItemFilter::All).unwrap();
        assert_eq!(v, 4.0 / 3.0);
        let articles = ItemFilter::Only(vec![DocType::Article]);
        assert_eq!(
            impact_factor_from_graph(&g, "J", 1969, &articles).unwrap(),
            2.0
        );
        // K: one 1968 item cited once in 1969.
        assert_eq!(
            impact_factor_from_graph(&g, "K", 1969, &ItemFilter::All).unwrap(),
            1.0
        );
        assert_eq!(
            impact_factor_from_graph(&g, "J", 1980, &ItemFilter::All),
            Err(Error::EmptyImpactWindow("J".into()))
        );
    }

    #[test]
    fn graph_h_index_uses_in_degree() {
        let g = corpus();
        // Every doc is by "Ann Author"; in-degrees: j51 2, j68a 2, j67a 2, ...
        assert_eq!(h_index_from_graph(&g, "  ann   AUTHOR "), 2);
        assert_eq!(h_index_from_graph(&g, "nobody"), 0);
    }
}
