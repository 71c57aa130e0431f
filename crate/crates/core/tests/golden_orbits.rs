//! Bit-exact golden-file tests.
//!
//! The fixtures under `tests/data/` were generated once from an
//! independent strict-IEEE evaluator (one correctly rounded binary64
//! operation at a time, no fused multiply-add) and frozen. Every value
//! here must match bit for bit on any platform; a mismatch means the step
//! kernel is contracting operations or carrying extended precision.

use orbitcert::{
    deviation_series, first_crossing, first_divergence, iterate_fixed, iterate_reference,
    lower_bound_series, EvaluationForm, MapParameters,
};

fn load_golden(name: &str) -> Vec<(usize, u64, String)> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .skip(1)
        .map(|line| {
            let mut fields = line.split(',');
            let n = fields.next().unwrap().parse().unwrap();
            let bits = u64::from_str_radix(fields.next().unwrap(), 16).unwrap();
            let value = fields.next().unwrap().to_string();
            (n, bits, value)
        })
        .collect()
}

fn paper_params() -> MapParameters {
    MapParameters::new("3.8", "0.4", 100).unwrap()
}

#[test]
fn g_orbit_matches_golden_file_bit_for_bit() {
    let golden = load_golden("golden_g_orbit.csv");
    let orbit = iterate_fixed(EvaluationForm::G, &paper_params()).unwrap();
    assert_eq!(orbit.len(), golden.len());
    for (n, bits, text) in golden {
        assert_eq!(
            orbit.values()[n].to_bits(),
            bits,
            "G orbit diverges from golden at n={n} (expected {text})"
        );
    }
}

#[test]
fn h_orbit_matches_golden_file_bit_for_bit() {
    let golden = load_golden("golden_h_orbit.csv");
    let orbit = iterate_fixed(EvaluationForm::H, &paper_params()).unwrap();
    assert_eq!(orbit.len(), golden.len());
    for (n, bits, text) in golden {
        assert_eq!(
            orbit.values()[n].to_bits(),
            bits,
            "H orbit diverges from golden at n={n} (expected {text})"
        );
    }
}

#[test]
fn golden_first_divergence_index() {
    let g = iterate_fixed(EvaluationForm::G, &paper_params()).unwrap();
    let h = iterate_fixed(EvaluationForm::H, &paper_params()).unwrap();
    assert_eq!(first_divergence(&g, &h).unwrap(), Some(4));
}

#[test]
fn golden_lower_bound_crossing() {
    // First iterate at which |G-H|/2 reaches 1e-8, frozen after the first
    // verified run: iterate 50, delta ~2.3008681682146204e-8.
    let g = iterate_fixed(EvaluationForm::G, &paper_params()).unwrap();
    let h = iterate_fixed(EvaluationForm::H, &paper_params()).unwrap();
    let series = lower_bound_series(&g, &h).unwrap();
    let crossing = first_crossing(&series, 1e-8);
    assert_eq!(crossing.iterate, Some(50));
    assert_eq!(crossing.delta_at_crossing.unwrap().to_bits(), 0x3e58b49409000000);
    assert!((series.values()[50].log10() - (-7.638108264189732)).abs() < 1e-12);
}

#[test]
fn golden_deviation_values() {
    // Deviations from the 1000-digit reference at iterate 42 (the
    // canonical sample 43), frozen from the independent evaluator.
    let params = paper_params();
    let g = iterate_fixed(EvaluationForm::G, &params).unwrap();
    let h = iterate_fixed(EvaluationForm::H, &params).unwrap();
    let reference = iterate_reference(&params, 1000).unwrap();
    let dev_g = deviation_series(&g, &reference).unwrap();
    let dev_h = deviation_series(&h, &reference).unwrap();
    assert_eq!(dev_g.values()[42].to_bits(), 0x3e49c1042011be24); // 1.1992626449389353e-8
    assert_eq!(dev_h.values()[42].to_bits(), 0x3e47e0519c11be24); // 1.1118243105881708e-8
    assert!((dev_g.values()[42].log10() - (-7.921085693668193)).abs() < 1e-12);
    assert!((dev_h.values()[42].log10() - (-7.953963834130103)).abs() < 1e-12);
}

#[test]
fn preset_json_export_matches_golden_fixture() {
    // Frozen once from a reviewed preset run. Orbit and delta strings are
    // bit-exact everywhere; the log10 fields additionally pin the
    // platform's log10 to the last printed digit.
    let path = format!(
        "{}/tests/data/golden_report.json",
        env!("CARGO_MANIFEST_DIR")
    );
    let golden = std::fs::read(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let report = orbitcert::reproduce_paper().unwrap();
    let mut exported = Vec::new();
    orbitcert::export_json(&report, &mut exported).unwrap();
    assert!(
        exported == golden,
        "preset JSON export no longer matches the frozen fixture"
    );
}

#[test]
fn golden_reference_prefix() {
    // Leading digits of the reference orbit at the canonical samples,
    // cross-checked against an independent 1000-digit decimal evaluation.
    let reference = iterate_reference(&paper_params(), 1000).unwrap();
    assert!(reference
        .value_decimal_string(42, 45)
        .starts_with("0.82707993174201144078429151036008843"));
    assert!(reference
        .value_decimal_string(50, 45)
        .starts_with("0.43406307930630983935058475513182682"));
    assert_eq!(reference.value_decimal_string(1, 10), "0.9120000000");
}
