//! Splitting a 2-form on R^3 into a wedge of two orthogonal vectors.

use super::CurvatureError;

/// A 2-form a dx1^dx2 + b dx1^dx3 + c dx2^dx3, with 1-forms identified with
/// vectors coordinate-wise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoForm3 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TwoForm3 {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        assert!(
            a.is_finite() && b.is_finite() && c.is_finite(),
            "2-form coefficients must be finite"
        );
        Self { a, b, c }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.c == 0.0
    }
}

/// Coefficients of x ^ y in the (dx1^dx2, dx1^dx3, dx2^dx3) basis.
pub fn wedge(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        x[0] * y[1] - x[1] * y[0],
        x[0] * y[2] - x[2] * y[0],
        x[1] * y[2] - x[2] * y[1],
    ]
}

fn dot(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

/// Writes w = X ^ V with <X, V> = 0.
///
/// The factorization picks the largest coefficient as pivot (preferring b on
/// ties, since the b != 0 branch needs no sign juggling) and then
/// orthogonalizes the second factor against the first. Orthogonalization
/// leaves the wedge unchanged because X ^ X = 0.
pub fn split_two_form(w: &TwoForm3) -> Result<([f64; 3], [f64; 3]), CurvatureError> {
    if w.is_zero() {
        return Err(CurvatureError::ZeroForm);
    }
    let (a, b, c) = (w.a, w.b, w.c);
    let (x, y) = if b.abs() >= a.abs() && b.abs() >= c.abs() {
        // w = (dx1 + (c/b) dx2) ^ (a dx2 + b dx3)
        ([1.0, c / b, 0.0], [0.0, a, b])
    } else if a.abs() >= c.abs() {
        // w = (dx1 - (c/a) dx3) ^ (a dx2 + b dx3)
        ([1.0, 0.0, -c / a], [0.0, a, b])
    } else {
        // w = (-(a/c) dx1 + dx3) ^ (-b dx1 - c dx2)
        ([-a / c, 0.0, 1.0], [-b, -c, 0.0])
    };
    let scale = dot(x, y) / dot(x, x);
    let v = [y[0] - scale * x[0], y[1] - scale * x[1], y[2] - scale * x[2]];
    Ok((x, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn check_split(w: TwoForm3) {
        let (x, v) = split_two_form(&w).unwrap();
        let back = wedge(x, v);
        let mag = (w.a * w.a + w.b * w.b + w.c * w.c).sqrt();
        assert_abs_diff_eq!(back[0], w.a, epsilon = 1e-12 * mag.max(1.0));
        assert_abs_diff_eq!(back[1], w.b, epsilon = 1e-12 * mag.max(1.0));
        assert_abs_diff_eq!(back[2], w.c, epsilon = 1e-12 * mag.max(1.0));
        let xn = dot(x, x).sqrt();
        let vn = dot(v, v).sqrt();
        assert!(dot(x, v).abs() <= 1e-12 * xn * vn);
    }

    #[test]
    fn axis_forms() {
        let (x, v) = split_two_form(&TwoForm3::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(x, [1.0, 0.0, 0.0]);
        assert_eq!(v, [0.0, 1.0, 0.0]);

        let (x, v) = split_two_form(&TwoForm3::new(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(x, [1.0, 0.0, 0.0]);
        assert_eq!(v, [0.0, 0.0, 1.0]);

        check_split(TwoForm3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn symmetric_form() {
        let (x, v) = split_two_form(&TwoForm3::new(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(x, [1.0, 1.0, 0.0]);
        assert_eq!(v, [-0.5, 0.5, 1.0]);
    }

    #[test]
    fn zero_form_rejected() {
        assert!(matches!(
            split_two_form(&TwoForm3::new(0.0, 0.0, 0.0)),
            Err(CurvatureError::ZeroForm)
        ));
    }

    #[test]
    fn assorted_pivots() {
        check_split(TwoForm3::new(5.0, 0.1, -0.2));
        check_split(TwoForm3::new(-0.3, 0.0, 7.0));
        check_split(TwoForm3::new(0.0, -2.0, 1.0));
        check_split(TwoForm3::new(1e-8, 1e8, 3.0));
        check_split(TwoForm3::new(-4.0, 4.0, -4.0));
    }
}
