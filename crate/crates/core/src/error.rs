use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion or division by zero.
    DivisionByZero,
    /// Operands live in different fields.
    FieldMismatch,
    InvalidField(String),
    InvalidArgument(String),
    /// Leading coefficient has no n-th root in the coefficient field.
    NotAnNthPower,
    /// The propagated precision window became empty.
    PrecisionExhausted,
    /// No finite truncation of the exponential reaches the window.
    CannotCertifyTail,
    /// `ts_eval_t` called on a series without a growth certificate.
    MissingGrowth,
    /// A claimed growth certificate fails on a stored coefficient.
    GrowthViolated {
        t_power: usize,
    },
    /// Column rank deficiency in a linear solve.
    Underdetermined {
        column: usize,
    },
    /// Overdetermined system with a nonzero residual row.
    Inconsistent {
        row: usize,
    },
    /// A `d_2` coefficient did not clear to a polynomial.
    DenominatorNotCleared {
        index: usize,
    },
    /// Cusp-form normalisation found a vanishing coefficient.
    NormalizationFailed,
    /// Enumeration would exceed the configured candidate budget.
    EnumerationTooLarge {
        candidates: u128,
        limit: u128,
    },
    /// Element is not fixed by the requested Frobenius power.
    NotFixedByFrobenius,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero in F_q"),
            Error::FieldMismatch => write!(f, "field mismatch"),
            Error::InvalidField(s) => write!(f, "invalid field: {s}"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::NotAnNthPower => write!(f, "leading coefficient not an n-th power"),
            Error::PrecisionExhausted => write!(f, "precision exhausted"),
            Error::CannotCertifyTail => write!(f, "cannot certify tail"),
            Error::MissingGrowth => write!(f, "series carries no growth certificate"),
            Error::GrowthViolated { t_power } => {
                write!(f, "growth certificate violated at t^{t_power}")
            }
            Error::Underdetermined { column } => {
                write!(f, "underdetermined: no pivot in column {column}")
            }
            Error::Inconsistent { row } => write!(f, "inconsistent system at row {row}"),
            Error::DenominatorNotCleared { index } => {
                write!(f, "denominator did not clear at coefficient {index}")
            }
            Error::NormalizationFailed => write!(f, "normalization failed"),
            Error::EnumerationTooLarge { candidates, limit } => write!(
                f,
                "enumeration of {candidates} candidates exceeds the limit of {limit}"
            ),
            Error::NotFixedByFrobenius => write!(f, "element not fixed by Frobenius power"),
        }
    }
}

impl core::error::Error for Error {}
