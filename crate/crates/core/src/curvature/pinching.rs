//! Time-weighted pinching quantities for the curvature evolution and the
//! boundary-derivative values that make the preservation argument work.

use super::spectrum::{OperatorSpectrum, RicciSpectrum};
use super::CurvatureError;

/// Which pinching function is being tracked.
///
/// The scaled variants bound the eigenvalue by a multiple of R with weight 1;
/// the absolute variants carry a t-weight on the R term and run on a much
/// shorter window. Each variant also differs in which eigenvalue it watches:
/// the smallest Ricci eigenvalue or the smallest operator eigenvalue (the
/// sectional proxy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PinchingVariant {
    /// L = lam_ricci + eps(t) R + eps(t), eps(t) = eps0 (1 + 4t), window 1/8.
    RicciScaled,
    /// L = alpha + eps(t) R + eps(t), eps(t) = eps0 (1/2 + t), window 1/8.
    SecScaled,
    /// L = lam_ricci + eps(t) t R + eps(t), eps(t) = eps0 (1 + 100t), window 1/200.
    RicciAbsolute,
    /// L = alpha + eps(t) t R + eps(t), eps(t) = eps0 (1/2 + 100t), window 1/200.
    SecAbsolute,
}

impl PinchingVariant {
    pub const ALL: [PinchingVariant; 4] = [
        PinchingVariant::RicciScaled,
        PinchingVariant::SecScaled,
        PinchingVariant::RicciAbsolute,
        PinchingVariant::SecAbsolute,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PinchingVariant::RicciScaled => "ricci-scaled",
            PinchingVariant::SecScaled => "sec-scaled",
            PinchingVariant::RicciAbsolute => "ricci-absolute",
            PinchingVariant::SecAbsolute => "sec-absolute",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "ricci-scaled" => Some(PinchingVariant::RicciScaled),
            "sec-scaled" => Some(PinchingVariant::SecScaled),
            "ricci-absolute" => Some(PinchingVariant::RicciAbsolute),
            "sec-absolute" => Some(PinchingVariant::SecAbsolute),
            _ => None,
        }
    }

    pub(crate) fn is_absolute(&self) -> bool {
        matches!(
            self,
            PinchingVariant::RicciAbsolute | PinchingVariant::SecAbsolute
        )
    }

    pub(crate) fn watches_ricci(&self) -> bool {
        matches!(
            self,
            PinchingVariant::RicciScaled | PinchingVariant::RicciAbsolute
        )
    }
}

/// Hypothesis constants for one pinching variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchingParams {
    variant: PinchingVariant,
    eps0: f64,
    k: f64,
    window_end: f64,
}

/// Absolute tolerance on |L| when classifying an input as on-boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;

impl PinchingParams {
    /// Requires 0 < eps0 < 1/100. The rate constant k = 100 and the window
    /// (1/8 for scaled variants, 1/200 for absolute ones) are fixed by the
    /// variant.
    pub fn new(variant: PinchingVariant, eps0: f64) -> Result<Self, CurvatureError> {
        if !(eps0 > 0.0 && eps0 < 0.01) {
            return Err(CurvatureError::BadPinchingFraction(eps0));
        }
        let window_end = if variant.is_absolute() { 1.0 / 200.0 } else { 0.125 };
        Ok(Self {
            variant,
            eps0,
            k: 100.0,
            window_end,
        })
    }

    pub fn variant(&self) -> PinchingVariant {
        self.variant
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn window_end(&self) -> f64 {
        self.window_end
    }

    /// Whether `t` lies in the variant's preservation window: the scaled
    /// variants work on [0, 1/8), the absolute ones on [0, 1/200].
    pub fn window_contains(&self, t: f64) -> bool {
        if self.variant.is_absolute() {
            (0.0..=self.window_end).contains(&t)
        } else {
            (0.0..self.window_end).contains(&t)
        }
    }

    /// The time-dependent pinching fraction eps(t).
    pub fn epsilon(&self, t: f64) -> f64 {
        match self.variant {
            PinchingVariant::RicciScaled => self.eps0 * (1.0 + 4.0 * t),
            PinchingVariant::SecScaled => self.eps0 * (0.5 + t),
            PinchingVariant::RicciAbsolute => self.eps0 * (1.0 + self.k * t),
            PinchingVariant::SecAbsolute => self.eps0 * (0.5 + self.k * t),
        }
    }

    /// Weight on the R term inside L: 1 for scaled variants, t for absolute.
    pub fn weight(&self, t: f64) -> f64 {
        if self.variant.is_absolute() {
            t
        } else {
            1.0
        }
    }

    /// The eigenvalue the variant watches: smallest Ricci eigenvalue or
    /// smallest operator eigenvalue.
    pub fn watched_eigenvalue(&self, s: &OperatorSpectrum) -> f64 {
        if self.variant.watches_ricci() {
            s.ricci().lam()
        } else {
            s.alpha()
        }
    }

    /// The pinching function L = v + eps(t) w(t) R + eps(t) for the watched
    /// eigenvalue v. Preservation means L stays nonnegative on the window.
    pub fn pinching_value(&self, s: &OperatorSpectrum, t: f64) -> f64 {
        let v = self.watched_eigenvalue(s);
        let r = s.scalar_curvature();
        v + self.epsilon(t) * (self.weight(t) * r + 1.0)
    }

    /// Lower bound L >= 0 rearranged for reporting: returns
    /// (lhs, rhs) = (v, -eps(t)(w(t) R + 1)).
    pub fn bound_sides(&self, s: &OperatorSpectrum, t: f64) -> (f64, f64) {
        let v = self.watched_eigenvalue(s);
        let r = s.scalar_curvature();
        (v, -self.epsilon(t) * (self.weight(t) * r + 1.0))
    }

    /// Solves L = 0 for the watched eigenvalue given the sum of the other
    /// two eigenvalues of the same kind: v (1 + eps w) = -(eps w rest + eps).
    pub fn boundary_eigenvalue(&self, rest_sum: f64, t: f64) -> f64 {
        let e = self.epsilon(t);
        let w = self.weight(t);
        -(e * w * rest_sum + e) / (1.0 + e * w)
    }

    /// Initial-time hypothesis for the variant. Scaled variants compare the
    /// watched eigenvalue against -(eps0/4) R(0), absolute variants against
    /// the constant -eps0/4.
    pub fn hypothesis_holds(&self, s0: &OperatorSpectrum) -> bool {
        let v = self.watched_eigenvalue(s0);
        let floor = if self.variant.is_absolute() {
            -self.eps0 / 4.0
        } else {
            -self.eps0 / 4.0 * s0.scalar_curvature()
        };
        v >= floor
    }
}

/// Evaluates the derivative N11 of the pinching function at a boundary point
/// (L = 0). The case analysis guarantees N11 > 0 whenever the preserved
/// scalar floor R >= -3 eps0 holds, which is what makes L = 0 impossible to
/// cross going forward in time.
///
/// Inputs must lie on the boundary within an absolute tolerance of 1e-9 on
/// |L|, and t must lie in the variant window.
pub fn n11_boundary_value(
    r: &RicciSpectrum,
    p: &PinchingParams,
    t: f64,
) -> Result<f64, CurvatureError> {
    if !(0.0..=p.window_end()).contains(&t) {
        return Err(CurvatureError::OutsideWindow {
            t,
            window: p.window_end(),
        });
    }
    let e = p.epsilon(t);
    let w = p.weight(t);
    let scal = r.scalar();
    let (lam, mu, nu) = (r.lam(), r.mu(), r.nu());
    let [a, b, c] = r.operator_eigenvalues();

    let v = if p.variant().watches_ricci() { lam } else { a };
    let l11 = v + e * (w * scal + 1.0);
    if l11.abs() > BOUNDARY_TOL {
        return Err(CurvatureError::OffBoundary {
            residual: l11.abs(),
            tol: BOUNDARY_TOL,
        });
    }

    let eps0 = p.eps0();
    let k = p.k();
    // sum of Ricci eigenvalue squares and its operator-side double
    let s_ric = r.sum_sq();
    let two_ricci_sq = a * a + b * b + c * c + a * b + a * c + b * c;

    let n = match p.variant() {
        PinchingVariant::RicciScaled => {
            (mu - nu).powi(2) + lam * (mu + nu) + 2.0 * e * s_ric + 4.0 * eps0 * scal + 4.0 * eps0
        }
        PinchingVariant::RicciAbsolute => {
            (mu - nu).powi(2)
                + lam * (mu + nu)
                + 2.0 * e * t * s_ric
                + e * scal
                + k * eps0 * t * scal
                + k * eps0
        }
        PinchingVariant::SecScaled => {
            a * a + b * c + eps0 * (1.0 + scal) + e * two_ricci_sq
        }
        PinchingVariant::SecAbsolute => {
            a * a + b * c + e * scal + k * eps0 * t * scal + k * eps0 + e * t * two_ricci_sq
        }
    };
    Ok(n)
}
