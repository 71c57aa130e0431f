//! Exact decimal numerals and correctly rounded conversion to binary64.
//!
//! Input parameters are kept as decimal strings so that one source of
//! truth feeds both precision paths: the fixed-precision kernel needs the
//! nearest binary64, the reference engine needs the exact rational.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite decimal numeral kept both as written and as an exact rational.
#[derive(Debug, Clone)]
pub struct DecimalValue {
    text: String,
    value: BigRational,
}

impl DecimalValue {
    /// Parses a decimal numeral such as `0.4`, `3.8`, `-12`, `1e-8` or
    /// `4.25e2`. Infinities, NaNs and rationals like `4/10` are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let value = parse_exact(text).map_err(|reason| Error::InvalidDecimal {
            text: text.to_string(),
            reason,
        })?;
        Ok(DecimalValue {
            text: text.to_string(),
            value,
        })
    }

    /// The numeral exactly as written.
    pub fn text(&self) -> &str {
        &self.text
    }

    /// The exact rational value of the numeral.
    pub fn as_rational(&self) -> &BigRational {
        &self.value
    }

    /// The nearest binary64 (round-to-nearest, ties-to-even).
    pub fn to_f64_nearest(&self) -> f64 {
        rational_to_f64_nearest(&self.value)
    }
}

impl PartialEq for DecimalValue {
    fn eq(&self, other: &Self) -> bool {
        // `0.40` and `4e-1` denote the same input.
        self.value == other.value
    }
}

impl Eq for DecimalValue {}

impl std::fmt::Display for DecimalValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

/// Rounds a decimal numeral to the nearest binary64 (ties-to-even).
pub fn nearest_binary64(decimal: &str) -> Result<f64> {
    Ok(DecimalValue::parse(decimal)?.to_f64_nearest())
}

fn parse_exact(text: &str) -> std::result::Result<BigRational, String> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err("empty string".into());
    }
    let mut pos = 0usize;
    let negative = match bytes[0] {
        b'+' => {
            pos = 1;
            false
        }
        b'-' => {
            pos = 1;
            true
        }
        _ => false,
    };
    let mut digits = String::new();
    let mut int_len = 0usize;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        digits.push(bytes[pos] as char);
        int_len += 1;
        pos += 1;
    }
    let mut frac_len = 0usize;
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            digits.push(bytes[pos] as char);
            frac_len += 1;
            pos += 1;
        }
    }
    if int_len + frac_len == 0 {
        return Err("no digits".into());
    }
    let mut exponent: i64 = 0;
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        pos += 1;
        let exp_start = pos;
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            pos += 1;
        }
        if pos >= bytes.len() || !bytes[pos].is_ascii_digit() {
            return Err("empty exponent".into());
        }
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        exponent = text[exp_start..pos]
            .parse::<i64>()
            .map_err(|e| format!("exponent: {e}"))?;
    }
    if pos != bytes.len() {
        return Err(format!("unexpected character at offset {pos}"));
    }

    let mantissa: BigInt = digits.parse().expect("digit string");
    let mantissa = if negative { -mantissa } else { mantissa };
    // value = mantissa * 10^(exponent - frac_len)
    let power = exponent - frac_len as i64;
    let ten = BigInt::from(10u32);
    let value = if power >= 0 {
        BigRational::from_integer(mantissa * ten.pow(power as u32))
    } else {
        BigRational::new(mantissa, ten.pow((-power) as u32))
    };
    Ok(value)
}

const MANTISSA_BITS: u64 = 52;
const EXP_BIAS: i64 = 1023;

/// Correctly rounds an exact rational to binary64, ties-to-even.
/// Magnitudes beyond the binary64 range round to infinity; this library
/// never feeds such values but the conversion stays total.
pub fn rational_to_f64_nearest(value: &BigRational) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let negative = value.is_negative();
    let p = value.numer().abs().to_biguint().expect("abs");
    let q = value.denom().abs().to_biguint().expect("abs");
    let magnitude = round_positive(&p, &q);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Rounds p/q > 0 to the nearest binary64.
fn round_positive(p: &BigUint, q: &BigUint) -> f64 {
    // Find the scaling that leaves exactly 53 bits in the truncated
    // quotient, then round on the remainder.
    let mut shift: i64 = MANTISSA_BITS as i64 - (p.bits() as i64 - q.bits() as i64);
    let (mut quotient, mut remainder, mut denominator);
    loop {
        let (num, den) = scaled(p, q, shift);
        let (qt, rm) = num_integer::Integer::div_rem(&num, &den);
        let bits = qt.bits() as i64;
        if bits == 53 {
            quotient = qt;
            remainder = rm;
            denominator = den;
            break;
        }
        shift += 53 - bits;
    }
    let mut exponent = MANTISSA_BITS as i64 - shift;

    if exponent < -1022 {
        // Subnormal granularity is fixed at 2^-1074.
        let (num, den) = scaled(p, q, 1074);
        let (qt, rm) = num_integer::Integer::div_rem(&num, &den);
        quotient = qt;
        remainder = rm;
        denominator = den;
        let rounded = apply_half_even(quotient, &remainder, &denominator);
        // A result of 2^52 is exactly the smallest normal and its bit
        // pattern already encodes it.
        let bits: u64 = rounded.try_into().expect("subnormal fits in u64");
        return f64::from_bits(bits);
    }

    let mut rounded = apply_half_even(quotient, &remainder, &denominator);
    if rounded.bits() == 54 {
        rounded >>= 1;
        exponent += 1;
    }
    if exponent > EXP_BIAS {
        return f64::INFINITY;
    }
    let mantissa: u64 = rounded.try_into().expect("53-bit mantissa fits in u64");
    let bits = (((exponent + EXP_BIAS) as u64) << MANTISSA_BITS)
        | (mantissa & ((1u64 << MANTISSA_BITS) - 1));
    f64::from_bits(bits)
}

fn scaled(p: &BigUint, q: &BigUint, shift: i64) -> (BigUint, BigUint) {
    if shift >= 0 {
        (p << shift as u64, q.clone())
    } else {
        (p.clone(), q << (-shift) as u64)
    }
}

fn apply_half_even(quotient: BigUint, remainder: &BigUint, denominator: &BigUint) -> BigUint {
    let twice = remainder << 1u32;
    let round_up = match twice.cmp(denominator) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => num_integer::Integer::is_odd(&quotient),
    };
    if round_up {
        quotient + BigUint::one()
    } else {
        quotient
    }
}

/// The exact decimal expansion of a finite binary64 (every binary64 is a
/// terminating decimal).
pub fn exact_decimal_from_f64(x: f64) -> bigdecimal::BigDecimal {
    assert!(x.is_finite(), "only finite values have a decimal expansion");
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp_field = ((bits >> MANTISSA_BITS) & 0x7ff) as i64;
    let frac = bits & ((1u64 << MANTISSA_BITS) - 1);
    let (mantissa, exp2) = if exp_field == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << MANTISSA_BITS), exp_field - 1075)
    };
    let mut mantissa = BigInt::from(mantissa);
    if negative {
        mantissa = -mantissa;
    }
    if exp2 >= 0 {
        bigdecimal::BigDecimal::new(mantissa << exp2 as u64, 0)
    } else {
        // m * 2^e = m * 5^-e * 10^e
        let five = BigInt::from(5u32).pow((-exp2) as u32);
        bigdecimal::BigDecimal::new(mantissa * five, -exp2)
    }
}

/// The exact rational value of a finite binary64.
pub fn exact_rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// The exact rational value of an arbitrary-precision decimal.
pub fn rational_from_decimal(value: &bigdecimal::BigDecimal) -> BigRational {
    let (mantissa, scale) = value.as_bigint_and_exponent();
    if scale >= 0 {
        BigRational::new(mantissa, BigInt::from(10u32).pow(scale as u32))
    } else {
        BigRational::from_integer(mantissa * BigInt::from(10u32).pow((-scale) as u32))
    }
}

/// Correctly rounded binary64 of an arbitrary-precision decimal. Goes
/// through the decimal's exact text rendering, which the standard parser
/// rounds correctly in one step.
pub fn decimal_to_f64_nearest(value: &bigdecimal::BigDecimal) -> f64 {
    value
        .to_string()
        .parse::<f64>()
        .expect("decimal renders as a parseable numeral")
}
