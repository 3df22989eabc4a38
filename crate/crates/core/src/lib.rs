//! Band-limited superoscillations built as a polynomial times a smooth,
//! compactly-supported-spectrum envelope.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod oracle;
pub mod polynomial;
pub mod presets;
pub mod quadrature;
pub mod synthesis;
pub mod verify;

pub use envelope::{Envelope, EnvelopeFamily, MaxOrder};
pub use error::{Error, Result};
pub use polynomial::{fit_polynomial, Interval, Polynomial, PolynomialFit};
pub use quadrature::QuadConfig;
pub use synthesis::{admissibility_check, synthesize, Admissibility, Parity, SpecDraft, Spectrum, SuperoscSpec};
