use thiserror::Error;

/// Error type shared by every module of the crate.
///
/// Each variant carries the data needed to state exactly which constraint
/// failed; `code` exposes a stable machine-readable name so callers (and the
/// CLI) can match on failures without parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invariant `{name}` violated: {detail}")]
    Invariant { name: &'static str, detail: String },

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("`{name}` out of range: {detail}")]
    OutOfRange { name: &'static str, detail: String },

    #[error("self-pairing {pairing} is odd; no integer half-dimension exists under the even-lattice convention")]
    OddPairing { pairing: i64 },

    #[error("self-pairing {pairing} is below -2; the moduli space is empty")]
    EmptyModuli { pairing: i64 },

    #[error("matrix determinant is {det}, expected 1")]
    NotUnimodular { det: i64 },

    #[error("fiber sheaf class ({a},{b}) has no transform rule")]
    OutsideFiberTable { a: i64, b: i64 },

    #[error("discriminant {delta} is positive, violating the Bogomolov inequality")]
    BogomolovViolation { delta: i64 },

    #[error("({r},{d},{t}) is outside the flop regime r <= t < r+d")]
    OutsideFlopRegime { r: i64, d: i64, t: i64 },

    #[error("invalid JSON: {0}")]
    Json(String),
}

impl Error {
    /// Stable short code naming the violated constraint.
    ///
    /// `Invariant` errors surface the violated invariant's own name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Invariant { name, .. } => name,
            Error::NotCoprime { .. } => "not_coprime",
            Error::OutOfRange { .. } => "out_of_range",
            Error::OddPairing { .. } => "odd_pairing",
            Error::EmptyModuli { .. } => "empty_moduli",
            Error::NotUnimodular { .. } => "not_unimodular",
            Error::OutsideFiberTable { .. } => "outside_fiber_table",
            Error::BogomolovViolation { .. } => "bogomolov_violation",
            Error::OutsideFlopRegime { .. } => "outside_flop_regime",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
