//! Eigenvalue carriers for the 3d curvature operator and its Ricci trace.

/// Ordered eigenvalues (alpha <= beta <= gamma) of the curvature operator
/// on 2-forms at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpectrum {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl OperatorSpectrum {
    /// Builds a spectrum from eigenvalues in any order; they are sorted
    /// ascending. Panics on non-finite input.
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        assert!(
            a.is_finite() && b.is_finite() && c.is_finite(),
            "spectrum eigenvalues must be finite, got ({a}, {b}, {c})"
        );
        let mut v = [a, b, c];
        v.sort_by(|x, y| x.partial_cmp(y).expect("finite values compare"));
        Self {
            alpha: v[0],
            beta: v[1],
            gamma: v[2],
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0 && self.gamma == 0.0
    }

    /// Scalar curvature R = alpha + beta + gamma.
    pub fn scalar_curvature(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }

    /// Ricci eigenvalues as the half-sums of operator eigenvalue pairs.
    /// The ascending operator order makes the half-sums ascending too.
    pub fn ricci(&self) -> RicciSpectrum {
        RicciSpectrum {
            lam: 0.5 * (self.alpha + self.beta),
            mu: 0.5 * (self.alpha + self.gamma),
            nu: 0.5 * (self.beta + self.gamma),
        }
    }

    /// |Ricci|^2 in the closed form (a^2+b^2+c^2+ab+ac+bc)/2, which equals
    /// the sum of squares of the half-sum eigenvalues.
    pub fn ricci_norm_sq(&self) -> f64 {
        let (a, b, c) = (self.alpha, self.beta, self.gamma);
        0.5 * (a * a + b * b + c * c + a * b + a * c + b * c)
    }

    /// Right-hand side of the reaction system
    /// (alpha' = alpha^2 + beta*gamma, and cyclic), matched to the sorted
    /// labels of `self`. Callers re-sort after applying a step.
    pub fn reaction_rhs(&self) -> [f64; 3] {
        let (a, b, c) = (self.alpha, self.beta, self.gamma);
        [a * a + b * c, b * b + a * c, c * c + a * b]
    }

    /// Frobenius norm of diag(alpha, beta, gamma), the curvature-norm
    /// convention used by the essential/necklike thresholds.
    pub fn frobenius_norm(&self) -> f64 {
        (self.alpha * self.alpha + self.beta * self.beta + self.gamma * self.gamma).sqrt()
    }

    /// Squared Frobenius norm of the traceless part diag(..) - (R/3) I.
    pub fn traceless_norm_sq(&self) -> f64 {
        let m = self.scalar_curvature() / 3.0;
        let (a, b, c) = (self.alpha - m, self.beta - m, self.gamma - m);
        a * a + b * b + c * c
    }

    /// Pinching defect R - X (log X + log(1+t) - 3) with X = -alpha.
    /// Returns `None` when X <= 0: the inequality is vacuous there.
    pub fn hamilton_ivey_defect(&self, t: f64) -> Option<f64> {
        debug_assert!(t >= 0.0, "defect is defined for t >= 0");
        let x = -self.alpha;
        if x <= 0.0 {
            return None;
        }
        Some(self.scalar_curvature() - x * (x.ln() + (1.0 + t).ln() - 3.0))
    }
}

/// Ordered Ricci eigenvalues (lam <= mu <= nu).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicciSpectrum {
    lam: f64,
    mu: f64,
    nu: f64,
}

impl RicciSpectrum {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        assert!(
            a.is_finite() && b.is_finite() && c.is_finite(),
            "Ricci eigenvalues must be finite, got ({a}, {b}, {c})"
        );
        let mut v = [a, b, c];
        v.sort_by(|x, y| x.partial_cmp(y).expect("finite values compare"));
        Self {
            lam: v[0],
            mu: v[1],
            nu: v[2],
        }
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.lam, self.mu, self.nu]
    }

    pub fn scalar(&self) -> f64 {
        self.lam + self.mu + self.nu
    }

    /// Sum of squares of the Ricci eigenvalues.
    pub fn sum_sq(&self) -> f64 {
        self.lam * self.lam + self.mu * self.mu + self.nu * self.nu
    }

    /// Recovers the operator eigenvalues that produce these half-sums:
    /// alpha = lam + mu - nu and cyclic. Exact inversion of `ricci()` up to
    /// rounding.
    pub fn operator_eigenvalues(&self) -> [f64; 3] {
        [
            self.lam + self.mu - self.nu,
            self.lam - self.mu + self.nu,
            -self.lam + self.mu + self.nu,
        ]
    }

    /// Diagonal entries of Q = 6 S_ij - 3 R Ricci_ij + (R^2 - 2S) g_ij in the
    /// eigenframe: Q_ii = 6 l_i^2 - 3 R l_i + (R^2 - 2S).
    pub fn q_tensor_diag(&self) -> [f64; 3] {
        let r = self.scalar();
        let s = self.sum_sq();
        let q = |l: f64| 6.0 * l * l - 3.0 * r * l + (r * r - 2.0 * s);
        [q(self.lam), q(self.mu), q(self.nu)]
    }
}
