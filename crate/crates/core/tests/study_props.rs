mod common;

use proptest::prelude::*;
use rand::Rng;

use citegraph::study::{
    authorship_table, bucket, rank_bucket_table, rank_by_cites, rank_correlation,
    stratified_every_kth, tc_vs_if_comparison, AuthorshipSubset, CorrelationMethod, Measure,
    Percent, RankBucket, RankRecord, SampledWork, SubjectSample,
};
use citegraph::{DocType, DocumentRecord};
use common::rng;

fn work(i: usize, cites: u64, authors: usize) -> DocumentRecord {
    DocumentRecord {
        id: format!("w{i:04}"),
        venue: format!("J{}", i % 7),
        year: 2000,
        authors: (0..authors).map(|a| format!("Author {a}")).collect(),
        doc_type: DocType::Article,
        cites,
    }
}

#[test]
fn bucket_boundaries() {
    assert_eq!(bucket(Some(1)).unwrap(), RankBucket::Top500);
    assert_eq!(bucket(Some(500)).unwrap(), RankBucket::Top500);
    assert_eq!(bucket(Some(501)).unwrap(), RankBucket::From501To1000);
    assert_eq!(bucket(Some(1000)).unwrap(), RankBucket::From501To1000);
    assert_eq!(bucket(Some(1001)).unwrap(), RankBucket::Below1000);
    assert_eq!(bucket(None).unwrap(), RankBucket::NotIndexed);
    assert!(bucket(Some(0)).is_err());
}

proptest! {
    #[test]
    fn every_kth_length_and_head(cites in prop::collection::vec(0u64..1000, 1..150), k in 1usize..8) {
        let docs: Vec<DocumentRecord> = cites.iter().enumerate().map(|(i, &c)| work(i, c, 1)).collect();
        let ranked = rank_by_cites(&docs);
        let sample = stratified_every_kth(&ranked, k).unwrap();
        prop_assert_eq!(sample.len(), docs.len().div_ceil(k));
        prop_assert_eq!(sample[0].1.id.as_str(), ranked[0].id.as_str());
        prop_assert!(sample.iter().all(|(pos, d)| ranked[pos - 1].id == d.id && (pos - 1) % k == 0));
    }

    #[test]
    fn three_way_percentages_sum_to_hundred(counts in prop::collection::vec(0u64..500, 3)) {
        let total: u64 = counts.iter().sum();
        prop_assume!(total > 0);
        let tenths: u64 = counts.iter().map(|&c| Percent::of(c, total).unwrap().0).sum();
        prop_assert!((999..=1001).contains(&tenths), "{}", tenths);
    }

    #[test]
    fn four_way_percentages_within_two_tenths(counts in prop::collection::vec(0u64..500, 4)) {
        let total: u64 = counts.iter().sum();
        prop_assume!(total > 0);
        let tenths: u64 = counts.iter().map(|&c| Percent::of(c, total).unwrap().0).sum();
        prop_assert!((998..=1002).contains(&tenths), "{}", tenths);
    }

    #[test]
    fn percent_cell_is_rounded_ratio(c in 0u64..5000, extra in 0u64..5000) {
        let d = c + extra;
        prop_assume!(d > 0);
        let exact = 100.0 * c as f64 / d as f64;
        prop_assert!((Percent::of(c, d).unwrap().as_f64() - exact).abs() <= 0.05 + 1e-9);
    }
}

#[test]
fn four_way_rounding_can_reach_two_tenths() {
    // Every cell is an exact half-tenth and rounds up.
    let cells: Vec<String> = [1, 1, 1, 13]
        .iter()
        .map(|&c| Percent::of(c, 16).unwrap().to_string())
        .collect();
    assert_eq!(cells, ["6.3%", "6.3%", "6.3%", "81.3%"]);
}

fn random_rank(r: &mut impl Rng) -> Option<u32> {
    match r.gen_range(0..5) {
        0 => None,
        1 => Some(r.gen_range(1..=500)),
        2 => Some(r.gen_range(490..=1010)),
        _ => Some(r.gen_range(1..=3000)),
    }
}

fn random_records(r: &mut impl Rng, n: usize) -> Vec<RankRecord> {
    (0..n)
        .map(|i| {
            let indexed = r.gen_bool(0.85);
            RankRecord {
                journal: format!("J{i}"),
                year: 2000,
                indexed,
                tc_rank: if indexed { random_rank(r) } else { None },
                if_rank: if indexed { random_rank(r) } else { None },
            }
        })
        .collect()
}

#[test]
fn tables_match_brute_force_tally() {
    let mut r = rng(31);
    for _ in 0..200 {
        let n = r.gen_range(1..40);
        let docs: Vec<DocumentRecord> = (0..n).map(|i| work(i, 0, 1)).collect();
        let records = random_records(&mut r, n);
        let works: Vec<SampledWork<'_>> = docs
            .iter()
            .zip(&records)
            .enumerate()
            .map(|(i, (doc, rec))| SampledWork {
                position: i + 1,
                doc,
                rank: if r.gen_bool(0.9) { Some(rec) } else { None },
            })
            .collect();
        let sample = vec![SubjectSample {
            subject: "S".into(),
            prize_year: 2001,
            author: None,
            works: works.clone(),
        }];

        for measure in [Measure::TotalCites, Measure::ImpactFactor] {
            let table = rank_bucket_table(&sample, measure).unwrap();
            let row = &table.rows[0];
            let ranks: Vec<u32> = works
                .iter()
                .filter_map(|w| w.rank.filter(|x| x.indexed))
                .filter_map(|x| match measure {
                    Measure::TotalCites => x.tc_rank,
                    Measure::ImpactFactor => x.if_rank,
                })
                .collect();
            let tally = [
                ranks.iter().filter(|&&x| x <= 500).count() as u64,
                ranks.iter().filter(|&&x| (501..=1000).contains(&x)).count() as u64,
                ranks.iter().filter(|&&x| x > 1000).count() as u64,
            ];
            assert_eq!(row.counts, tally);
            assert_eq!(row.indexed, ranks.len() as u64);
            if !ranks.is_empty() {
                let tenths: u64 = row.percents.iter().map(|p| p.unwrap().0).sum();
                assert!((999..=1001).contains(&tenths));
                let mut s = ranks.clone();
                s.sort_unstable();
                let m = s.len();
                let median = if m % 2 == 1 {
                    f64::from(s[m / 2])
                } else {
                    f64::from(s[m / 2 - 1] + s[m / 2]) / 2.0
                };
                assert_eq!(row.median_rank.unwrap().as_f64(), median);
            }
        }

        let cmp = tc_vs_if_comparison(&sample).unwrap();
        let row = &cmp.rows[0];
        let both: Vec<(u32, u32)> = works
            .iter()
            .filter_map(|w| w.rank.filter(|x| x.indexed))
            .filter_map(|x| Some((x.tc_rank?, x.if_rank?)))
            .collect();
        assert_eq!(row.both_ranked, both.len() as u64);
        assert_eq!(
            row.higher_by_tc,
            both.iter().filter(|(t, i)| t < i).count() as u64
        );
        assert_eq!(
            row.higher_by_if,
            both.iter().filter(|(t, i)| t > i).count() as u64
        );
        assert_eq!(
            row.higher_by_tc + row.higher_by_if + row.ties,
            row.both_ranked
        );
        assert_eq!(row.indexed + row.not_indexed, n as u64);
    }
}

#[test]
fn single_author_corpus_is_all_primary() {
    let docs: Vec<DocumentRecord> = (0..5)
        .map(|i| {
            let mut d = work(i, 10, 0);
            d.authors = vec!["Solo Researcher".into()];
            d
        })
        .collect();
    let sample = vec![SubjectSample {
        subject: "Solo".into(),
        prize_year: 1999,
        author: Some("solo researcher".into()),
        works: docs
            .iter()
            .enumerate()
            .map(|(i, doc)| SampledWork {
                position: i + 1,
                doc,
                rank: None,
            })
            .collect(),
    }];
    let t = authorship_table(&sample, AuthorshipSubset::All).unwrap();
    assert_eq!(t.rows[0].counts, [5, 0, 0, 0]);
    assert_eq!(t.overall_primary.unwrap().to_string(), "100.0%");
    assert_eq!(t.rows[0].authors_median.unwrap().to_string(), "1");
}

/// Textbook product-moment formula over raw sums.
fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let syy: f64 = y.iter().map(|a| a * a).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

/// Ranks by counting: 1 + #smaller + (#equal - 1) / 2.
fn rank_by_count(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|a| {
            let less = v.iter().filter(|b| *b < a).count() as f64;
            let eq = v.iter().filter(|b| *b == a).count() as f64;
            1.0 + less + (eq - 1.0) / 2.0
        })
        .collect()
}

/// `1 - 6 sum d^2 / (n (n^2 - 1))`, valid without ties.
fn spearman_no_ties(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (rank_by_count(x), rank_by_count(y));
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

#[test]
fn correlations_match_direct_formulas() {
    let mut r = rng(4242);
    for i in 0..100 {
        let n = r.gen_range(3..40);
        let x: Vec<f64> = (0..n).map(|_| r.gen_range(-50.0..50.0)).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|v| 0.5 * v + r.gen_range(-30.0..30.0))
            .collect();
        let p = rank_correlation(&x, &y, CorrelationMethod::Pearson).unwrap();
        assert!((p - pearson_oracle(&x, &y)).abs() < 1e-12, "sample {i}");
        let s = rank_correlation(&x, &y, CorrelationMethod::Spearman).unwrap();
        assert!((s - spearman_no_ties(&x, &y)).abs() < 1e-12, "sample {i}");

        // Integer data with ties.
        let xi: Vec<f64> = (0..n).map(|_| f64::from(r.gen_range(0..6))).collect();
        let yi: Vec<f64> = (0..n).map(|_| f64::from(r.gen_range(0..6))).collect();
        match rank_correlation(&xi, &yi, CorrelationMethod::Spearman) {
            Ok(s) => {
                let oracle = pearson_oracle(&rank_by_count(&xi), &rank_by_count(&yi));
                assert!((s - oracle).abs() < 1e-12, "sample {i}");
            }
            Err(_) => assert!(xi.iter().all(|&v| v == xi[0]) || yi.iter().all(|&v| v == yi[0])),
        }
    }
}

#[test]
fn correlation_invariances() {
    let mut r = rng(99);
    for _ in 0..100 {
        let n = r.gen_range(3..30);
        let x: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..10.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..10.0)).collect();
        let (a, b) = (r.gen_range(0.1..20.0), r.gen_range(-100.0..100.0));
        let affine: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let p0 = rank_correlation(&x, &y, CorrelationMethod::Pearson).unwrap();
        let p1 = rank_correlation(&affine, &y, CorrelationMethod::Pearson).unwrap();
        assert!((p0 - p1).abs() < 1e-10);
        let monotone: Vec<f64> = x.iter().map(|v| v.ln() + v.powi(3)).collect();
        let s0 = rank_correlation(&x, &y, CorrelationMethod::Spearman).unwrap();
        let s1 = rank_correlation(&monotone, &y, CorrelationMethod::Spearman).unwrap();
        assert_eq!(s0, s1);
    }
}
