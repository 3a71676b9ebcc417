//! The standard battery must be large, clean (no failed verdicts under the
//! pinned tolerances), and bit-reproducible.

use maxosc::verify::{run_suite, ReportFile, SuiteConfig, Verdict};

#[test]
fn default_battery_is_large_clean_and_reproducible() {
    let config = SuiteConfig::default();
    let reports = run_suite(&config);

    assert!(
        reports.len() >= 200,
        "battery must exercise at least 200 instances, got {}",
        reports.len()
    );

    let failures: Vec<String> = reports
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::Fail))
        .map(|r| {
            format!(
                "{} [{}]: {} {:?}",
                r.check_id,
                r.instance.label,
                r.note.as_deref().unwrap_or(""),
                r.quantities
            )
        })
        .collect();
    assert!(failures.is_empty(), "failed instances:\n{}", failures.join("\n"));

    // Both verdict classes must actually occur: hard passes, and vacuous
    // instances that flag unavailable premises instead of faking a pass.
    assert!(reports.iter().any(|r| r.verdict == Verdict::Pass));
    assert!(reports.iter().any(|r| matches!(r.verdict, Verdict::Vacuous(_))));

    let rerun = run_suite(&config);
    let first = serde_json::to_vec(&ReportFile::new(config, reports)).unwrap();
    let second = serde_json::to_vec(&ReportFile::new(config, rerun)).unwrap();
    assert_eq!(first, second, "rerun with the same config must be byte-identical");
}
