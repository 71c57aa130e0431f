//! High-precision reference orbits.
//!
//! The reference pseudo-orbit iterates the same map in decimal arithmetic
//! at a configurable number of significant digits (default 1000), standing
//! in for the unobservable true orbit over a modest number of iterates.
//! Every multiplication rounds to the working precision, half-even, which
//! keeps the cost per step flat; exact rational iteration has denominators
//! growing as 10^(3·2^n).
//!
//! The parameter strings are ingested as exact decimals, so the reference
//! initial condition is the exact `x0` — not the rounded binary64 the
//! fixed orbits start from. For `x0 = 0.4` the two starting points differ
//! by about 2.2e-17, which is precisely the representation error a
//! binary64 simulation is born with.

use std::num::NonZeroU64;
use std::str::FromStr;

use bigdecimal::{BigDecimal, RoundingMode};
use num_traits::Zero;

use crate::decimal::exact_decimal_from_f64;
use crate::error::{Error, Result};
use crate::maps::MapParameters;

/// Smallest supported working precision in significant decimal digits.
pub const MIN_REFERENCE_DIGITS: u32 = 50;

/// Default working precision, matching the reproduction preset.
pub const DEFAULT_REFERENCE_DIGITS: u32 = 1000;

/// A reference orbit of `iterates + 1` decimal values at a fixed working
/// precision. Recomputing with equal inputs reproduces identical digits.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceOrbit {
    values: Vec<BigDecimal>,
    digits: u32,
    params: MapParameters,
}

impl ReferenceOrbit {
    pub fn values(&self) -> &[BigDecimal] {
        &self.values
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn params(&self) -> &MapParameters {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Positional decimal rendering of `values[n]` rounded (half-even) to
    /// `sig_digits` significant digits, zero-padded to full width.
    pub fn value_decimal_string(&self, n: usize, sig_digits: u32) -> String {
        render_decimal(&self.values[n], sig_digits)
    }
}

pub(crate) fn render_decimal(value: &BigDecimal, sig_digits: u32) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    value
        .with_precision_round(
            NonZeroU64::new(sig_digits.max(1) as u64).expect("nonzero"),
            RoundingMode::HalfEven,
        )
        .to_plain_string()
}

fn round_to(value: BigDecimal, prec: NonZeroU64) -> BigDecimal {
    value.with_precision_round(prec, RoundingMode::HalfEven)
}

/// Iterates `r·z·(1−z)` left to right in decimal arithmetic, rounding each
/// operation to `digits` significant digits.
pub fn iterate_reference(params: &MapParameters, digits: u32) -> Result<ReferenceOrbit> {
    if digits < MIN_REFERENCE_DIGITS {
        return Err(Error::PrecisionTooLow {
            digits,
            minimum: MIN_REFERENCE_DIGITS,
        });
    }
    let prec = NonZeroU64::new(digits as u64).expect("digits >= 50");
    let r = round_to(
        BigDecimal::from_str(params.r().text()).expect("validated decimal"),
        prec,
    );
    let one = BigDecimal::from(1u32);

    let mut z = round_to(
        BigDecimal::from_str(params.x0().text()).expect("validated decimal"),
        prec,
    );
    let mut values = Vec::with_capacity(params.iterates() + 1);
    values.push(z.clone());
    for n in 0..params.iterates() {
        let t1 = round_to(&r * &z, prec);
        let t2 = round_to(&one - &z, prec);
        z = round_to(&t1 * &t2, prec);
        if z < BigDecimal::zero() || z > one {
            // Unreachable for r in [0,4] unless an iterate sits within a
            // rounding unit of the exact-half maximum.
            return Err(Error::Internal(format!(
                "reference iterate {} left [0,1]: {}",
                n + 1,
                render_decimal(&z, 12)
            )));
        }
        values.push(z.clone());
    }
    Ok(ReferenceOrbit {
        values,
        digits,
        params: params.clone(),
    })
}

/// Certifies the working precision by doubling it: true iff the orbits at
/// `digits` and `2·digits` differ by less than `tolerance` at every
/// iterate. A passing check justifies using the reference orbit as a
/// true-orbit proxy at the `tolerance` scale.
pub fn precision_sufficiency_check(
    params: &MapParameters,
    digits: u32,
    tolerance: f64,
) -> Result<bool> {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let base = iterate_reference(params, digits)?;
    let refined = iterate_reference(params, digits * 2)?;
    let tol = exact_decimal_from_f64(tolerance);
    Ok(base
        .values()
        .iter()
        .zip(refined.values())
        .all(|(a, b)| (a - b).abs() < tol))
}
