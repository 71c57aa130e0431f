//! Deterministic divergence certification for chaotic map simulations.
//!
//! Mathematically equivalent arrangements of one formula are distinct
//! programs in binary64: `(r·x)·(1−x)` and `r·(x·(1−x))` round
//! differently, and a chaotic map amplifies the disagreement
//! exponentially. Half the distance between the two resulting
//! pseudo-orbits is a certified lower bound on the true error of at least
//! one of them — no knowledge of the true orbit required. This crate
//! iterates the logistic map under both arrangements with a strictly
//! pinned operation schedule (one IEEE-754 rounding per operation, no
//! fused multiply-add), computes a high-precision decimal reference orbit
//! as a true-orbit proxy, and reports the iterate at which the error
//! provably exceeds a given shadowing distance.
//!
//! The bundled `reproduce-paper` preset (r = 3.8, x0 = 0.4, 100 iterates,
//! 1000-digit reference, threshold 1e-8) certifies that both arrangements
//! drift past 1e-8 within ~50 iterates.

pub mod analysis;
pub mod decimal;
pub mod error;
pub mod highprec;
pub mod maps;
mod plot;
pub mod report;

pub use analysis::{
    deviation_series, first_crossing, log10_series, lower_bound_series, theorem1_certificate,
    CrossingResult, ErrorSeries, SeriesKind,
};
pub use decimal::{nearest_binary64, DecimalValue};
pub use error::{Error, Result};
pub use highprec::{
    iterate_reference, precision_sufficiency_check, ReferenceOrbit, DEFAULT_REFERENCE_DIGITS,
    MIN_REFERENCE_DIGITS,
};
pub use maps::{first_divergence, iterate_fixed, step, EvaluationForm, FixedOrbit, MapParameters};
pub use report::{
    build_report, emit_plots, export_csv, export_json, headline, reproduce_paper, AuditReport,
    Crossings, Environment, Headline,
};
