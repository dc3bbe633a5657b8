//! Shared fixtures for the benchmarks.

use eqec_core::codes::simulate::CodeSetup;
use eqec_core::codes::{CodeError, H3Second};
use num_complex::Complex64;

/// The h3 setup with a fixed logical state `(a, b)`.
pub fn h3_fixture() -> Result<(CodeSetup, Vec<Complex64>), CodeError> {
    let setup = CodeSetup::h3(H3Second::J)?;
    let logical = vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
    Ok((setup, logical))
}
