//! Per-group scan records and their JSON-lines / TSV serializations.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::classifier::{classify_with, predicted_spectrum, verdict_for, CaseTag, Verdict};
use crate::error::Result;
use crate::lab::{self, AuditRecord, GroupAnalysis};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub name: String,
    pub order: usize,
    pub center_order: usize,
    pub spectrum: Vec<String>,
    pub spectrum_size: usize,
    pub case_tag: CaseTag,
    pub verdict: Verdict,
    pub audit_results: Vec<AuditRecord>,
    /// Milliseconds per phase; left out unless requested since it breaks
    /// byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    /// `true` when the verdict is not a mismatch and every audit held.
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Mismatch && self.audit_results.iter().all(|a| a.holds)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub const TSV_HEADER: &'static str = "name\torder\tspectrumSize\tcaseTag\tverdict";

    pub fn to_tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.name, self.order, self.spectrum_size, self.case_tag, self.verdict
        )
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

/// Full pipeline for one group: lattice, spectrum, classification and the
/// per-group audits that apply.
pub fn scan_entry(entry: &CatalogEntry, build_cap: usize, lattice_cap: usize, timed: bool) -> Result<Report> {
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let group = entry.build(build_cap)?;
    timings.insert("build".to_string(), ms(t));

    let t = Instant::now();
    let a = GroupAnalysis::new(group, lattice_cap)?;
    timings.insert("analysis".to_string(), ms(t));

    let t = Instant::now();
    let case = classify_with(&a.group, &a.lattice, &a.quotient);
    let predicted = if case.is_classified() {
        predicted_spectrum(&case)?
    } else {
        Vec::new()
    };
    let verdict = verdict_for(&case, &predicted, &a.spectrum.values);
    timings.insert("classify".to_string(), ms(t));

    let t = Instant::now();
    let mut audits = vec![lab::check_chain_bound(&a), lab::check_omega_bound(&a)];
    if let Ok(r) = lab::check_prime_power_orders(&a) {
        audits.push(r);
    }
    audits.push(lab::check_distinct_prime_degrees(&a));
    timings.insert("audit".to_string(), ms(t));

    Ok(Report {
        name: entry.name.clone(),
        order: a.group.order(),
        center_order: a.center.order(),
        spectrum: a.spectrum.values.iter().map(|v| v.to_string()).collect(),
        spectrum_size: a.spectrum.len(),
        case_tag: case,
        verdict,
        audit_results: audits,
        timings: timed.then_some(timings),
    })
}
