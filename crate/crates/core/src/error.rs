// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Coefficients are well formed but violate `|c_ij| <= (c_ii + c_jj)/2`.
    #[error("rejected Kossakowski coefficients: {0}")]
    RejectedCoefficients(ValidationReport),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// A single grid point of a sweep failed.
    #[error("scan failed at {parameter} = {value}: {source}")]
    Scan {
        parameter: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors that come from floating-point breakdown rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonFinite(_) => true,
            Error::Scan { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
