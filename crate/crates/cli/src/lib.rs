//! IO formats, the claim verification harness, and the batch pipeline for
//! the mismatch-norm graph similarity library.

pub mod claims;
pub mod formats;
pub mod ops;
pub mod pipeline;
pub mod registry;
pub mod sampling;

use claims::VerificationReport;

/// One human-readable line per claim report, including wall time (which
/// the JSON form deliberately omits).
pub fn render_report_line(report: &VerificationReport) -> String {
    format!(
        "{}: {} — {} instances, {} passed, {} failed ({:.2?})\n",
        report.claim_id,
        if report.passed() { "PASS" } else { "FAIL" },
        report.instances,
        report.passes,
        report.failures.len(),
        report.wall_time,
    )
}

/// Full text rendering: the summary line plus one line per failure.
pub fn render_report_text(report: &VerificationReport) -> String {
    let mut out = render_report_line(report);
    for f in &report.failures {
        out.push_str(&format!("  counterexample at {}: {}\n", f.instance, f.detail));
    }
    out
}
