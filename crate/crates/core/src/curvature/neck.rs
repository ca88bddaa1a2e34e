//! Neck detection: essential points, necklike defect against rank-one
//! curvature, and the weighted traceless quantity G used on ancient
//! negative-time solutions.

use super::spectrum::OperatorSpectrum;
use super::CurvatureError;

/// The exponent eta(delta) = delta / (100 (3 - delta)) that calibrates G to
/// the necklike threshold delta.
pub fn eta_exponent(delta: f64) -> Result<f64, CurvatureError> {
    if !(delta > 0.0 && delta < 3.0) {
        return Err(CurvatureError::BadExponent(delta));
    }
    Ok(delta / (100.0 * (3.0 - delta)))
}

/// G = |t|^(eps/2) * N / R^(2 - eps) with N the squared Frobenius norm of the
/// traceless operator part. Defined for t < 0, R > 0 and 0 < eps < 1.
pub fn g_quantity(s: &OperatorSpectrum, t: f64, eps: f64) -> Result<f64, CurvatureError> {
    let r = s.scalar_curvature();
    if r <= 0.0 {
        return Err(CurvatureError::NonPositiveScalar(r));
    }
    if t >= 0.0 {
        return Err(CurvatureError::NonNegativeTime(t));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(CurvatureError::BadExponent(eps));
    }
    Ok(t.abs().powf(eps / 2.0) * s.traceless_norm_sq() / r.powf(2.0 - eps))
}

/// Relative distance from diag(alpha, beta, gamma) to the nearest rank-one
/// form R * E_i over the three eigen-2-form projectors. Returns the defect
/// and the index of the minimizing projector (first index on ties).
///
/// Searching only the eigenprojectors makes this an upper bound for the
/// optimal defect over all unit 2-forms; it is exact when the spectrum
/// already has neck shape.
pub fn necklike_defect(s: &OperatorSpectrum) -> Result<(f64, usize), CurvatureError> {
    if s.is_zero() {
        return Err(CurvatureError::ZeroSpectrum);
    }
    let eig = s.as_array();
    let r = s.scalar_curvature();
    let norm = s.frobenius_norm();
    let mut best = (f64::INFINITY, 0usize);
    for i in 0..3 {
        let mut dist_sq = 0.0;
        for (j, &e) in eig.iter().enumerate() {
            let d = if i == j { e - r } else { e };
            dist_sq += d * d;
        }
        let defect = dist_sq.sqrt() / norm;
        if defect < best.0 {
            best = (defect, i);
        }
    }
    Ok(best)
}

/// Whether |curvature| |t| >= C under the Frobenius norm convention.
pub fn is_essential(s: &OperatorSpectrum, t: f64, c: f64) -> bool {
    s.frobenius_norm() * t.abs() >= c
}
