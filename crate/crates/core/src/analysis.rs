//! Error series and divergence certification.
//!
//! The lower-bound series is half the pointwise distance between two
//! pseudo-orbits of different evaluation forms; at every iterate at least
//! one of the two true errors is at least that large, no reference orbit
//! required. Deviation series measure each orbit against the
//! high-precision reference directly.

use num_rational::BigRational;
use num_traits::Signed;

use crate::decimal::{decimal_to_f64_nearest, exact_rational_from_f64, rational_from_decimal};
use crate::error::{Error, Result};
use crate::highprec::ReferenceOrbit;
use crate::maps::{ensure_comparable, FixedOrbit};

/// What an [`ErrorSeries`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Half the distance between two fixed-precision orbits.
    LowerBound,
    /// Distance between a fixed-precision orbit and the reference orbit.
    Deviation,
}

/// Per-iterate nonnegative error values plus the identities of the one or
/// two orbits compared.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeries {
    kind: SeriesKind,
    values: Vec<f64>,
    sources: [String; 2],
}

impl ErrorSeries {
    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sources(&self) -> &[String; 2] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// First iterate at which a series meets a threshold, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingResult {
    /// The shadowing distance being tested, e.g. 1e-8.
    pub threshold: f64,
    /// Smallest n with `values[n] >= threshold`; `None` when the series
    /// stays below the threshold throughout.
    pub iterate: Option<usize>,
    /// The series value at that iterate.
    pub delta_at_crossing: Option<f64>,
}

/// `values[n] = |a[n] − b[n]| / 2`, computed in binary64.
pub fn lower_bound_series(a: &FixedOrbit, b: &FixedOrbit) -> Result<ErrorSeries> {
    ensure_comparable(a, b)?;
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs() / 2.0)
        .collect();
    Ok(ErrorSeries {
        kind: SeriesKind::LowerBound,
        values,
        sources: [a.form().to_string(), b.form().to_string()],
    })
}

/// `values[n] = |orbit[n] − reference[n]|`, the subtraction carried out
/// exactly in decimal and then rounded once to binary64.
pub fn deviation_series(orbit: &FixedOrbit, reference: &ReferenceOrbit) -> Result<ErrorSeries> {
    if orbit.params() != reference.params() {
        return Err(Error::Mismatch(
            "orbit and reference were generated from different parameters".into(),
        ));
    }
    if orbit.len() != reference.len() {
        return Err(Error::Mismatch(format!(
            "orbit length {} does not match reference length {}",
            orbit.len(),
            reference.len()
        )));
    }
    let values = orbit
        .values()
        .iter()
        .zip(reference.values())
        .map(|(x, z)| {
            let diff = (crate::decimal::exact_decimal_from_f64(*x) - z).abs();
            decimal_to_f64_nearest(&diff)
        })
        .collect();
    Ok(ErrorSeries {
        kind: SeriesKind::Deviation,
        values,
        sources: [
            orbit.form().to_string(),
            format!("P{}", reference.digits()),
        ],
    })
}

/// Smallest n with `values[n] >= threshold`. A value exactly equal to the
/// shadowing distance already violates strict shadowing, hence `>=`.
pub fn first_crossing(series: &ErrorSeries, threshold: f64) -> CrossingResult {
    debug_assert!(threshold > 0.0, "threshold must be positive");
    let iterate = series.values().iter().position(|&v| v >= threshold);
    CrossingResult {
        threshold,
        iterate,
        delta_at_crossing: iterate.map(|n| series.values()[n]),
    }
}

/// Elementwise log10. Zero maps to negative infinity, which exporters
/// render as an empty field; iterate 0 of a lower-bound series is
/// legitimately zero.
pub fn log10_series(series: &ErrorSeries) -> Vec<f64> {
    series
        .values()
        .iter()
        .map(|&v| if v == 0.0 { f64::NEG_INFINITY } else { v.log10() })
        .collect()
}

/// Checks, per iterate, that at least one orbit deviates from the
/// reference by at least the lower-bound error:
/// `max(|a_n − c_n|, |b_n − c_n|) >= |a_n − b_n| / 2`.
///
/// The comparison is evaluated in exact rational arithmetic, making it a
/// genuine triangle-inequality identity: any `false` indicates an
/// arithmetic bug, never rounding noise.
pub fn theorem1_certificate(
    a: &FixedOrbit,
    b: &FixedOrbit,
    reference: &ReferenceOrbit,
) -> Result<Vec<bool>> {
    ensure_comparable(a, b)?;
    if a.params() != reference.params() || a.len() != reference.len() {
        return Err(Error::Mismatch(
            "certificate inputs must share parameters and length".into(),
        ));
    }
    let two = BigRational::from_integer(2.into());
    Ok(a.values()
        .iter()
        .zip(b.values())
        .zip(reference.values())
        .map(|((&xa, &xb), zc)| {
            let ra = exact_rational_from_f64(xa);
            let rb = exact_rational_from_f64(xb);
            let rc = rational_from_decimal(zc);
            let dev_a = (&ra - &rc).abs();
            let dev_b = (&rb - &rc).abs();
            let alpha = (ra - rb).abs() / &two;
            dev_a >= alpha || dev_b >= alpha
        })
        .collect())
}
