//! Logistic-map parameters, evaluation forms and binary64 pseudo-orbits.
//!
//! A pseudo-orbit here is pinned down completely: the initial condition is
//! the nearest binary64 to the exact decimal input, and every step is a
//! fixed schedule of individually rounded binary64 operations
//! (round-to-nearest-even, no fused multiply-add, no extended precision).
//! Equal inputs therefore reproduce bit-identical orbits on any IEEE-754
//! platform.

use crate::decimal::DecimalValue;
use crate::error::{Error, Result};

/// Ground-truth inputs of one experiment: the map parameter `r`, the
/// initial condition `x0` (both exact decimal strings) and the iterate
/// count.
#[derive(Debug, Clone, PartialEq)]
pub struct MapParameters {
    r: DecimalValue,
    x0: DecimalValue,
    iterates: usize,
}

impl MapParameters {
    /// Validates and stores the experiment inputs. `x0` must lie in `[0,1]`
    /// and `r` in `[0,4]` as exact rationals.
    pub fn new(r: &str, x0: &str, iterates: usize) -> Result<Self> {
        let r = DecimalValue::parse(r)?;
        let x0 = DecimalValue::parse(x0)?;
        let zero = num_rational::BigRational::from_integer(0.into());
        let one = num_rational::BigRational::from_integer(1.into());
        let four = num_rational::BigRational::from_integer(4.into());
        if *r.as_rational() < zero || *r.as_rational() > four {
            return Err(Error::ParameterRange {
                name: "r",
                low: "0",
                high: "4",
                value: r.text().to_string(),
            });
        }
        if *x0.as_rational() < zero || *x0.as_rational() > one {
            return Err(Error::ParameterRange {
                name: "x0",
                low: "0",
                high: "1",
                value: x0.text().to_string(),
            });
        }
        Ok(MapParameters { r, x0, iterates })
    }

    pub fn r(&self) -> &DecimalValue {
        &self.r
    }

    pub fn x0(&self) -> &DecimalValue {
        &self.x0
    }

    /// Number of map applications; orbits have `iterates + 1` values.
    pub fn iterates(&self) -> usize {
        self.iterates
    }

    /// Nearest binary64 to the exact value of `r`.
    pub fn r_binary64(&self) -> f64 {
        self.r.to_f64_nearest()
    }

    /// Nearest binary64 to the exact value of `x0`.
    pub fn x0_binary64(&self) -> f64 {
        self.x0.to_f64_nearest()
    }
}

/// One parenthesization of `r·x·(1−x)`. The two forms are mathematically
/// identical; in binary64 they are distinct programs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluationForm {
    /// `(r·x)·(1−x)` — multiply out left to right.
    G,
    /// `r·(x·(1−x))` — group the quadratic first.
    H,
}

impl EvaluationForm {
    pub const ALL: [EvaluationForm; 2] = [EvaluationForm::G, EvaluationForm::H];

    /// The fixed operation schedule, one rounding per operation.
    pub fn schedule(&self) -> &'static str {
        match self {
            EvaluationForm::G => "t1 = fl(r*x); t2 = fl(1-x); fl(t1*t2)",
            EvaluationForm::H => "t1 = fl(1-x); t2 = fl(x*t1); fl(r*t2)",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "G" | "g" => Ok(EvaluationForm::G),
            "H" | "h" => Ok(EvaluationForm::H),
            other => Err(Error::Mismatch(format!(
                "unknown evaluation form `{other}` (expected G or H)"
            ))),
        }
    }
}

impl std::fmt::Display for EvaluationForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvaluationForm::G => f.write_str("G"),
            EvaluationForm::H => f.write_str("H"),
        }
    }
}

/// One binary64 step of the given form. Each binary operation below is a
/// single correctly rounded IEEE-754 operation; the compiler is not
/// permitted to contract them into fused multiply-adds.
#[inline]
pub fn step(form: EvaluationForm, x: f64, r: f64) -> f64 {
    match form {
        EvaluationForm::G => {
            let t1 = r * x;
            let t2 = 1.0 - x;
            t1 * t2
        }
        EvaluationForm::H => {
            let t1 = 1.0 - x;
            let t2 = x * t1;
            r * t2
        }
    }
}

/// A binary64 pseudo-orbit together with its generating form and inputs.
/// `values[0]` is the rounded initial condition; `values[n+1]` is one
/// schedule application to `values[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedOrbit {
    values: Vec<f64>,
    form: EvaluationForm,
    params: MapParameters,
}

impl FixedOrbit {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn form(&self) -> EvaluationForm {
        self.form
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
}

/// Generates the full pseudo-orbit for `params` under `form`.
///
/// An iterate that leaves `[0,1]` (including NaN or infinity) aborts the
/// orbit with its index; values are never clamped.
pub fn iterate_fixed(form: EvaluationForm, params: &MapParameters) -> Result<FixedOrbit> {
    let r = params.r_binary64();
    let mut values = Vec::with_capacity(params.iterates() + 1);
    let mut x = params.x0_binary64();
    values.push(x);
    for n in 0..params.iterates() {
        x = step(form, x, r);
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OrbitEscaped {
                form,
                iterate: n + 1,
                value: x,
            });
        }
        values.push(x);
    }
    Ok(FixedOrbit {
        values,
        form,
        params: params.clone(),
    })
}

/// Index of the first iterate where two orbits differ bit-for-bit, if any.
pub fn first_divergence(a: &FixedOrbit, b: &FixedOrbit) -> Result<Option<usize>> {
    ensure_comparable(a, b)?;
    Ok((0..a.len()).find(|&n| a.values[n].to_bits() != b.values[n].to_bits()))
}

pub(crate) fn ensure_comparable(a: &FixedOrbit, b: &FixedOrbit) -> Result<()> {
    if a.params != b.params {
        return Err(Error::Mismatch(
            "orbits were generated from different parameters".into(),
        ));
    }
    if a.len() != b.len() {
        return Err(Error::Mismatch(format!(
            "orbit lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}
