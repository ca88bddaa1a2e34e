//! Eigenvalue algebra for the 3d curvature operator: Ricci traces, the
//! reaction vector field, pinching boundary values, neck detection, and
//! 2-form splitting.

mod neck;
mod pinching;
mod spectrum;
mod two_form;

pub use neck::{eta_exponent, g_quantity, is_essential, necklike_defect};
pub use pinching::{n11_boundary_value, PinchingParams, PinchingVariant, BOUNDARY_TOL};
pub use spectrum::{OperatorSpectrum, RicciSpectrum};
pub use two_form::{split_two_form, wedge, TwoForm3};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("pinching fraction must lie in (0, 1/100), got {0}")]
    BadPinchingFraction(f64),
    #[error("time {t} outside the variant window [0, {window}]")]
    OutsideWindow { t: f64, window: f64 },
    #[error("input is off the pinching boundary: |L| = {residual:e} exceeds {tol:e}")]
    OffBoundary { residual: f64, tol: f64 },
    #[error("scalar curvature must be positive, got {0}")]
    NonPositiveScalar(f64),
    #[error("quantity requires negative time, got t = {0}")]
    NonNegativeTime(f64),
    #[error("exponent parameter must lie in (0, 1), got {0}")]
    BadExponent(f64),
    #[error("zero spectrum has no direction to compare against")]
    ZeroSpectrum,
    #[error("cannot split the zero 2-form")]
    ZeroForm,
}
