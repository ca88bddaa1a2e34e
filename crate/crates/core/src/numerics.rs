//! Small shared numerical helpers.

/// Bisect a sign change of `f` on `[lo, hi]` down to interval width `tol_t`.
///
/// Requires `f(lo)` and `f(hi)` to have opposite (non-strict) signs; returns
/// the midpoint of the final bracket.
pub fn bisect_crossing<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol_t: f64) -> f64 {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(flo.signum() != fhi.signum(), "bisect_crossing needs a bracket");
    while hi - lo > tol_t {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // ran out of float resolution
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Composite Simpson quadrature of `f` over `[a, b]` with `n` panels (n made even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = if n % 2 == 0 { n.max(2) } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        s += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    s * h / 3.0
}

/// Cumulative trapezoid integral of samples `(t_i, y_i)`; output aligned with input.
pub fn cumulative_trapezoid(samples: &[(f64, f64)]) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    let mut acc = 0.0;
    for (i, &(t, y)) in samples.iter().enumerate() {
        if i > 0 {
            let (t0, y0) = samples[i - 1];
            acc += 0.5 * (y + y0) * (t - t0);
        }
        out.push(acc);
    }
    out
}

/// Render a float so it parses back to the same bits: plain decimal in the
/// human-friendly range, scientific notation outside it.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let mag = v.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Evenly spaced grid from `a` to `b` with `steps` intervals (`steps + 1` points).
pub fn linspace(a: f64, b: f64, steps: usize) -> Vec<f64> {
    let n = steps.max(1);
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}
