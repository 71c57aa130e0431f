use crate::maps::EvaluationForm;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input string is not a finite decimal numeral.
    #[error("invalid decimal numeral `{text}`: {reason}")]
    InvalidDecimal { text: String, reason: String },

    /// A map parameter lies outside its admissible interval.
    #[error("{name} out of [{low},{high}]: {value}")]
    ParameterRange {
        name: &'static str,
        low: &'static str,
        high: &'static str,
        value: String,
    },

    /// A fixed-precision iterate left `[0,1]` (or became non-finite).
    /// Escaping values abort the orbit with their index; they are never
    /// clamped.
    #[error("orbit escaped [0,1] under form {form} at iterate {iterate}: value {value}")]
    OrbitEscaped {
        form: EvaluationForm,
        iterate: usize,
        value: f64,
    },

    /// Requested working precision is below the supported minimum.
    #[error("working precision of {digits} digits is below the minimum of {minimum}")]
    PrecisionTooLow { digits: u32, minimum: u32 },

    /// Two series or orbits that must describe the same run do not.
    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    /// Not enough iterates to produce the requested output.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An invariant that valid inputs cannot violate was violated.
    #[error("internal error: {0}")]
    Internal(String),

    /// An export failed mid-write; the target may hold partial output.
    #[error("write failed ({context}; partial output may remain): {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// True for errors caused by bad user input (as opposed to runtime
    /// failures). CLI front ends map these to a distinct exit code.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidDecimal { .. }
                | Error::ParameterRange { .. }
                | Error::PrecisionTooLow { .. }
                | Error::Mismatch(_)
        )
    }
}
