use qloop::irred::IrredError;
use qloop::kmat::KmatError;
use qloop::repcore::RepError;
use qloop::rmat::RmatError;
use thiserror::Error;

/// `Usage` maps to exit code 2, `Math` to exit code 1 with a report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(String),
}

macro_rules! math_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Math(e.to_string())
            }
        }
    )*};
}

math_from!(IrredError, KmatError, RepError, RmatError);
