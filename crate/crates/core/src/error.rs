use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sign argument `{0}` is exactly zero; the commutator phase is undefined on the axes")]
    OnAxis(&'static str),

    #[error("vector potential is singular at the flux line (origin)")]
    SingularPoint,

    #[error("shift {shift} is not an integer multiple of the grid spacing {spacing}")]
    Misaligned { shift: f64, spacing: f64 },

    #[error("shift would move nonzero samples outside the grid extent")]
    ExtentOverflow,

    #[error(
        "wavelength {wavelength} is not smaller than slit width {width}: no far-field minimum"
    )]
    NoFarFieldMinimum { wavelength: f64, width: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::param(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}
