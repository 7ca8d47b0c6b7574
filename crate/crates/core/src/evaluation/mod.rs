//! ROUGE reports, corpus aggregation, and paired-system comparison.

pub mod rouge;
pub mod wilcoxon;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use rouge::{lcs_length, rouge_l, rouge_n, rouge_su4, RougeOptions};
pub use wilcoxon::{
    wilcoxon_signed_rank, wilcoxon_signed_rank_with, WilcoxonMethod, WilcoxonResult,
};

/// `doc_id` of the corpus-aggregate row (arithmetic mean over documents).
pub const MEAN_DOC_ID: &str = "__mean__";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeScore {
    pub recall: f64,
    pub precision: f64,
    pub f_measure: f64,
}

impl RougeScore {
    pub fn zeros() -> RougeScore {
        RougeScore {
            recall: 0.0,
            precision: 0.0,
            f_measure: 0.0,
        }
    }

    /// Recall/precision from overlap counts, F as their harmonic mean.
    pub fn from_counts(overlap: usize, reference_total: usize, system_total: usize) -> RougeScore {
        let recall = if reference_total > 0 {
            overlap as f64 / reference_total as f64
        } else {
            0.0
        };
        let precision = if system_total > 0 {
            overlap as f64 / system_total as f64
        } else {
            0.0
        };
        RougeScore::from_recall_precision(recall, precision)
    }

    pub fn from_recall_precision(recall: f64, precision: f64) -> RougeScore {
        let f_measure = if recall + precision > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        RougeScore {
            recall,
            precision,
            f_measure,
        }
    }

    pub fn facet(&self, facet: Facet) -> f64 {
        match facet {
            Facet::Recall => self.recall,
            Facet::Precision => self.precision,
            Facet::FMeasure => self.f_measure,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RougeMetric {
    Rouge1,
    Rouge2,
    RougeL,
    RougeSu4,
}

impl RougeMetric {
    pub const ALL: [RougeMetric; 4] = [
        RougeMetric::Rouge1,
        RougeMetric::Rouge2,
        RougeMetric::RougeL,
        RougeMetric::RougeSu4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RougeMetric::Rouge1 => "ROUGE-1",
            RougeMetric::Rouge2 => "ROUGE-2",
            RougeMetric::RougeL => "ROUGE-L",
            RougeMetric::RougeSu4 => "ROUGE-SU4",
        }
    }

    pub fn from_name(name: &str) -> Result<RougeMetric> {
        RougeMetric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Validation(format!("unknown ROUGE metric {name:?}")))
    }
}

impl std::fmt::Display for RougeMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The three reported facets of every metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Facet {
    Recall,
    Precision,
    FMeasure,
}

impl Facet {
    pub const ALL: [Facet; 3] = [Facet::Recall, Facet::Precision, Facet::FMeasure];

    pub fn name(&self) -> &'static str {
        match self {
            Facet::Recall => "recall",
            Facet::Precision => "precision",
            Facet::FMeasure => "f",
        }
    }
}

/// All four ROUGE metrics for one document (or the corpus mean).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RougeReport {
    pub doc_id: String,
    pub rouge_1: RougeScore,
    pub rouge_2: RougeScore,
    pub rouge_l: RougeScore,
    pub rouge_su4: RougeScore,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl RougeReport {
    pub fn get(&self, metric: RougeMetric) -> &RougeScore {
        match metric {
            RougeMetric::Rouge1 => &self.rouge_1,
            RougeMetric::Rouge2 => &self.rouge_2,
            RougeMetric::RougeL => &self.rouge_l,
            RougeMetric::RougeSu4 => &self.rouge_su4,
        }
    }
}

/// Score a system summary against a reference text on all four metrics.
/// Empty texts (after tokenization) produce zero scores plus a warning.
pub fn evaluate_summary(
    doc_id: impl Into<String>,
    system_text: &str,
    reference_text: &str,
    opts: &RougeOptions,
) -> RougeReport {
    let mut warnings = Vec::new();
    if opts.flat_tokens(system_text).is_empty() {
        warnings.push("system summary is empty after tokenization".to_string());
    }
    if opts.flat_tokens(reference_text).is_empty() {
        warnings.push("reference summary is empty after tokenization".to_string());
    }
    RougeReport {
        doc_id: doc_id.into(),
        rouge_1: rouge_n(system_text, reference_text, 1, opts)
            .expect("order 1 is always valid"),
        rouge_2: rouge_n(system_text, reference_text, 2, opts)
            .expect("order 2 is always valid"),
        rouge_l: rouge_l(system_text, reference_text, opts),
        rouge_su4: rouge_su4(system_text, reference_text, opts),
        warnings,
    }
}

/// Macro-averaged corpus report (plain arithmetic mean of every facet),
/// labelled [`MEAN_DOC_ID`]. `None` for an empty input.
pub fn aggregate_reports(reports: &[RougeReport]) -> Option<RougeReport> {
    let docs: Vec<&RougeReport> = reports.iter().filter(|r| r.doc_id != MEAN_DOC_ID).collect();
    if docs.is_empty() {
        return None;
    }
    let n = docs.len() as f64;
    let mean = |metric: RougeMetric| {
        let mut score = RougeScore::zeros();
        for r in &docs {
            let s = r.get(metric);
            score.recall += s.recall;
            score.precision += s.precision;
            score.f_measure += s.f_measure;
        }
        score.recall /= n;
        score.precision /= n;
        score.f_measure /= n;
        score
    };
    Some(RougeReport {
        doc_id: MEAN_DOC_ID.to_string(),
        rouge_1: mean(RougeMetric::Rouge1),
        rouge_2: mean(RougeMetric::Rouge2),
        rouge_l: mean(RougeMetric::RougeL),
        rouge_su4: mean(RougeMetric::RougeSu4),
        warnings: Vec::new(),
    })
}

/// One row of the report file: `doc_id, metric, recall, precision, f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub doc_id: String,
    pub metric: String,
    pub recall: f64,
    pub precision: f64,
    pub f: f64,
}

/// Flatten reports into file rows, one per (document, metric), documents in
/// the given order.
pub fn report_rows(reports: &[RougeReport]) -> Vec<ReportRow> {
    let mut rows = Vec::with_capacity(reports.len() * RougeMetric::ALL.len());
    for report in reports {
        for metric in RougeMetric::ALL {
            let score = report.get(metric);
            rows.push(ReportRow {
                doc_id: report.doc_id.clone(),
                metric: metric.name().to_string(),
                recall: score.recall,
                precision: score.precision,
                f: score.f_measure,
            });
        }
    }
    rows
}

/// Rebuild per-document reports from file rows, requiring all four metrics
/// per document. Document order follows first appearance.
pub fn reports_from_rows(rows: &[ReportRow]) -> Result<Vec<RougeReport>> {
    let mut order: Vec<String> = Vec::new();
    let mut by_doc: BTreeMap<String, BTreeMap<RougeMetric, RougeScore>> = BTreeMap::new();
    for row in rows {
        let metric = RougeMetric::from_name(&row.metric)?;
        if !by_doc.contains_key(&row.doc_id) {
            order.push(row.doc_id.clone());
        }
        by_doc.entry(row.doc_id.clone()).or_default().insert(
            metric,
            RougeScore {
                recall: row.recall,
                precision: row.precision,
                f_measure: row.f,
            },
        );
    }
    let mut reports = Vec::with_capacity(order.len());
    for doc_id in order {
        let metrics = &by_doc[&doc_id];
        let fetch = |m: RougeMetric| -> Result<RougeScore> {
            metrics.get(&m).copied().ok_or_else(|| {
                Error::Validation(format!("document {doc_id:?} is missing {}", m.name()))
            })
        };
        reports.push(RougeReport {
            doc_id: doc_id.clone(),
            rouge_1: fetch(RougeMetric::Rouge1)?,
            rouge_2: fetch(RougeMetric::Rouge2)?,
            rouge_l: fetch(RougeMetric::RougeL)?,
            rouge_su4: fetch(RougeMetric::RougeSu4)?,
            warnings: Vec::new(),
        });
    }
    Ok(reports)
}

/// CSV rendering of report rows, with header.
pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("doc_id,metric,recall,precision,f\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.doc_id, row.metric, row.recall, row.precision, row.f
        ));
    }
    out
}

/// Wilcoxon outcome for one (metric, facet) pair of two report sets. Cells
/// where the test cannot run (all differences zero, or too few) carry no
/// statistic; they are reported as non-significant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonCell {
    pub metric: String,
    pub facet: Facet,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    /// `p <= 0.05`; `false` when the test could not run.
    pub significant: bool,
}

/// Paired comparison of two report sets over all metrics and facets. The
/// sets must cover the same documents; aggregate rows are ignored.
pub fn compare_reports(a: &[RougeReport], b: &[RougeReport]) -> Result<Vec<ComparisonCell>> {
    let index = |reports: &[RougeReport]| -> BTreeMap<String, RougeReport> {
        reports
            .iter()
            .filter(|r| r.doc_id != MEAN_DOC_ID)
            .map(|r| (r.doc_id.clone(), r.clone()))
            .collect()
    };
    let map_a = index(a);
    let map_b = index(b);
    let missing_in_b: Vec<&String> = map_a.keys().filter(|k| !map_b.contains_key(*k)).collect();
    let missing_in_a: Vec<&String> = map_b.keys().filter(|k| !map_a.contains_key(*k)).collect();
    if !missing_in_a.is_empty() || !missing_in_b.is_empty() {
        return Err(Error::Validation(format!(
            "report sets cover different documents (missing in A: {missing_in_a:?}; missing in B: {missing_in_b:?})"
        )));
    }
    if map_a.is_empty() {
        return Err(Error::Validation("report sets are empty".into()));
    }

    let doc_ids: Vec<&String> = map_a.keys().collect();
    let mut cells = Vec::new();
    for metric in RougeMetric::ALL {
        for facet in Facet::ALL {
            let sample_a: Vec<f64> = doc_ids
                .iter()
                .map(|id| map_a[*id].get(metric).facet(facet))
                .collect();
            let sample_b: Vec<f64> = doc_ids
                .iter()
                .map(|id| map_b[*id].get(metric).facet(facet))
                .collect();
            let cell = match wilcoxon_signed_rank(&sample_a, &sample_b) {
                Ok(result) => ComparisonCell {
                    metric: metric.name().to_string(),
                    facet,
                    statistic: Some(result.statistic),
                    p_value: Some(result.p_value),
                    significant: result.p_value <= 0.05,
                },
                Err(Error::InsufficientData(_)) => ComparisonCell {
                    metric: metric.name().to_string(),
                    facet,
                    statistic: None,
                    p_value: None,
                    significant: false,
                },
                Err(other) => return Err(other),
            };
            cells.push(cell);
        }
    }
    Ok(cells)
}

/// CSV rendering of a comparison table. Non-significant cells (p > 0.05 or
/// untestable) carry a `*` marker.
pub fn comparison_to_csv(cells: &[ComparisonCell]) -> String {
    let mut out = String::from("metric,facet,statistic,p_value,marker\n");
    for cell in cells {
        let stat = cell
            .statistic
            .map(|v| v.to_string())
            .unwrap_or_else(|| "NA".into());
        let p = cell
            .p_value
            .map(|v| v.to_string())
            .unwrap_or_else(|| "NA".into());
        let marker = if cell.significant { "" } else { "*" };
        out.push_str(&format!(
            "{},{},{stat},{p},{marker}\n",
            cell.metric,
            cell.facet.name()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = "The book was under the bed.";
    const SYSTEM_1: &str = "The book was found under the bed.";

    #[test]
    fn report_carries_all_four_metrics() {
        let report = evaluate_summary("d1", SYSTEM_1, REFERENCE, &RougeOptions::default());
        assert!(report.warnings.is_empty());
        assert!((report.rouge_l.recall - 1.0).abs() < 1e-12);
        assert!((report.rouge_l.precision - 6.0 / 7.0).abs() < 1e-12);
        assert!((report.rouge_1.precision - 6.0 / 7.0).abs() < 1e-12);
        assert!(report.rouge_2.recall > 0.0);
        assert!(report.rouge_su4.recall > 0.0);
    }

    #[test]
    fn identical_texts_score_one_everywhere() {
        let report = evaluate_summary("d", REFERENCE, REFERENCE, &RougeOptions::default());
        for metric in RougeMetric::ALL {
            let s = report.get(metric);
            assert_eq!((s.recall, s.precision, s.f_measure), (1.0, 1.0, 1.0));
        }
    }

    #[test]
    fn empty_inputs_warn_and_score_zero() {
        let report = evaluate_summary("d", "", REFERENCE, &RougeOptions::default());
        assert_eq!(report.warnings.len(), 1);
        for metric in RougeMetric::ALL {
            assert_eq!(report.get(metric).f_measure, 0.0);
        }
    }

    #[test]
    fn f_measure_is_the_harmonic_mean() {
        let s = RougeScore::from_recall_precision(1.0, 0.5);
        assert!((s.f_measure - 2.0 / 3.0).abs() < 1e-12);
        let z = RougeScore::from_recall_precision(0.0, 0.0);
        assert_eq!(z.f_measure, 0.0);
        // F never exceeds the arithmetic mean
        assert!(s.f_measure <= (s.recall + s.precision) / 2.0 + 1e-15);
    }

    fn dummy_report(doc_id: &str, base: f64) -> RougeReport {
        let score = |offset: f64| RougeScore {
            recall: base + offset,
            precision: base,
            f_measure: base + offset / 2.0,
        };
        RougeReport {
            doc_id: doc_id.into(),
            rouge_1: score(0.01),
            rouge_2: score(0.02),
            rouge_l: score(0.03),
            rouge_su4: score(0.04),
            warnings: Vec::new(),
        }
    }

    #[test]
    fn aggregation_is_the_arithmetic_mean() {
        let reports = vec![dummy_report("a", 0.2), dummy_report("b", 0.4)];
        let mean = aggregate_reports(&reports).unwrap();
        assert_eq!(mean.doc_id, MEAN_DOC_ID);
        assert!((mean.rouge_1.precision - 0.3).abs() < 1e-12);
        assert!((mean.rouge_l.recall - (0.23 + 0.43) / 2.0).abs() < 1e-12);
        assert!(aggregate_reports(&[]).is_none());
    }

    #[test]
    fn aggregation_ignores_an_existing_mean_row() {
        let mut reports = vec![dummy_report("a", 0.2), dummy_report("b", 0.4)];
        reports.push(aggregate_reports(&reports).unwrap());
        let mean = aggregate_reports(&reports).unwrap();
        assert!((mean.rouge_1.precision - 0.3).abs() < 1e-12);
    }

    #[test]
    fn rows_round_trip_through_serde() {
        let reports = vec![dummy_report("a", 0.2), dummy_report("b", 0.4)];
        let rows = report_rows(&reports);
        assert_eq!(rows.len(), 8);
        let json = serde_json::to_string(&rows).unwrap();
        let parsed: Vec<ReportRow> = serde_json::from_str(&json).unwrap();
        let rebuilt = reports_from_rows(&parsed).unwrap();
        assert_eq!(rebuilt.len(), 2);
        assert_eq!(rebuilt[0].doc_id, "a");
        assert_eq!(rebuilt[0].rouge_su4, reports[0].rouge_su4);

        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with("doc_id,metric,recall,precision,f\n"));
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn rows_missing_a_metric_fail_validation() {
        let mut rows = report_rows(&[dummy_report("a", 0.2)]);
        rows.retain(|r| r.metric != "ROUGE-2");
        assert!(matches!(
            reports_from_rows(&rows),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn compare_flags_missing_documents() {
        let a = vec![dummy_report("a", 0.2), dummy_report("b", 0.4)];
        let b = vec![dummy_report("a", 0.3)];
        let err = compare_reports(&a, &b).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("\"b\""), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn compare_produces_a_full_table() {
        let a: Vec<RougeReport> = (0..8)
            .map(|i| dummy_report(&format!("d{i}"), 0.2 + 0.05 * i as f64))
            .collect();
        let b: Vec<RougeReport> = (0..8)
            .map(|i| dummy_report(&format!("d{i}"), 0.5 - 0.03 * i as f64))
            .collect();
        let cells = compare_reports(&a, &b).unwrap();
        assert_eq!(cells.len(), 12);
        for cell in &cells {
            assert!(cell.p_value.is_some());
        }
        let csv = comparison_to_csv(&cells);
        assert!(csv.starts_with("metric,facet,statistic,p_value,marker\n"));
    }

    #[test]
    fn identical_report_sets_yield_untestable_cells() {
        let a: Vec<RougeReport> = (0..6)
            .map(|i| dummy_report(&format!("d{i}"), 0.1 * i as f64))
            .collect();
        let cells = compare_reports(&a, &a).unwrap();
        for cell in &cells {
            assert!(cell.p_value.is_none());
            assert!(!cell.significant);
        }
        let csv = comparison_to_csv(&cells);
        assert!(csv.contains("NA,NA,*"));
    }
}
