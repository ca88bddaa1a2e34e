//! Finite metric spaces: validated distance matrices, Hausdorff distance
//! between subsets, and the plain-text matrix file format.

use crate::metric::MetricError;
use crate::numerics::format_float;

/// One failed metric axiom, with the witnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricViolation {
    /// d(i, j) != d(j, i); defect is the absolute difference.
    Asymmetric { i: usize, j: usize, defect: f64 },
    /// d(i, i) != 0.
    NonzeroDiagonal { i: usize, value: f64 },
    /// Off-diagonal entry zero, negative, or non-finite.
    NonPositive { i: usize, j: usize, value: f64 },
    /// d(i, k) > d(i, j) + d(j, k); defect is the overshoot.
    Triangle { i: usize, j: usize, k: usize, defect: f64 },
}

impl std::fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            MetricViolation::Asymmetric { i, j, defect } => {
                write!(f, "asymmetry at ({i}, {j}), defect {defect}")
            }
            MetricViolation::NonzeroDiagonal { i, value } => {
                write!(f, "nonzero diagonal at {i}: {value}")
            }
            MetricViolation::NonPositive { i, j, value } => {
                write!(f, "bad off-diagonal at ({i}, {j}): {value}")
            }
            MetricViolation::Triangle { i, j, k, defect } => {
                write!(f, "triangle violation through ({i}, {j}, {k}), defect {defect}")
            }
        }
    }
}

/// Brute-force check of the metric axioms on a square matrix: symmetry, zero
/// diagonal, positive finite off-diagonal entries, and all O(n^3) triangle
/// inequalities. Relative slack 1e-12 of the largest entry absorbs rounding
/// in inputs that were themselves computed.
pub fn validate_metric(d: &[Vec<f64>]) -> Result<Vec<MetricViolation>, MetricError> {
    let n = d.len();
    if n == 0 {
        return Err(MetricError::Empty);
    }
    for row in d {
        if row.len() != n {
            return Err(MetricError::NonSquare { rows: n, cols: row.len() });
        }
    }
    let scale = d
        .iter()
        .flatten()
        .fold(0.0_f64, |m, &v| if v.is_finite() { m.max(v.abs()) } else { m });
    let tol = 1e-12 * scale.max(1.0);

    let mut out = Vec::new();
    for i in 0..n {
        if d[i][i].abs() > tol || !d[i][i].is_finite() {
            out.push(MetricViolation::NonzeroDiagonal { i, value: d[i][i] });
        }
        for j in (i + 1)..n {
            if (d[i][j] - d[j][i]).abs() > tol || d[i][j].is_finite() != d[j][i].is_finite() {
                out.push(MetricViolation::Asymmetric {
                    i,
                    j,
                    defect: (d[i][j] - d[j][i]).abs(),
                });
            }
            if !(d[i][j] > tol) || !d[i][j].is_finite() {
                out.push(MetricViolation::NonPositive { i, j, value: d[i][j] });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let defect = d[i][k] - d[i][j] - d[j][k];
                if defect > tol {
                    out.push(MetricViolation::Triangle { i, j, k, defect });
                }
            }
        }
    }
    Ok(out)
}

/// A finite metric space held as a full validated distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    /// Row-major n x n distances.
    d: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl FiniteMetricSpace {
    /// Validates the matrix (all axioms, brute force) and takes ownership.
    pub fn new(matrix: &[Vec<f64>]) -> Result<Self, MetricError> {
        let violations = validate_metric(matrix)?;
        if !violations.is_empty() {
            return Err(MetricError::InvalidMetric(violations));
        }
        let n = matrix.len();
        let mut d = Vec::with_capacity(n * n);
        for row in matrix {
            d.extend_from_slice(row);
        }
        Ok(FiniteMetricSpace { n, d, labels: None })
    }

    /// Builds without re-running validation. Callers guarantee the axioms
    /// hold (submatrices of valid metrics, analytically exact models).
    pub(crate) fn from_valid_parts(n: usize, d: Vec<f64>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        FiniteMetricSpace { n, d, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MetricError> {
        if labels.len() != self.n {
            return Err(MetricError::BadParameter(format!(
                "{} labels for {} points",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[i].as_str())
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().fold(0.0_f64, |m, &v| m.max(v))
    }

    /// The sub-space induced on `points` (order preserved, repeats allowed
    /// only if equal entries are acceptable to the caller's metric; repeats
    /// are rejected since they break positivity).
    pub fn sub_space(&self, points: &[usize]) -> Result<FiniteMetricSpace, MetricError> {
        if points.is_empty() {
            return Err(MetricError::Empty);
        }
        for (pos, &p) in points.iter().enumerate() {
            if p >= self.n {
                return Err(MetricError::BadIndex { index: p, len: self.n });
            }
            if points[..pos].contains(&p) {
                return Err(MetricError::BadParameter(format!("repeated point {p}")));
            }
        }
        let m = points.len();
        let mut d = Vec::with_capacity(m * m);
        for &i in points {
            for &j in points {
                d.push(self.dist(i, j));
            }
        }
        Ok(FiniteMetricSpace::from_valid_parts(m, d))
    }

    /// Serializes to the plain matrix format: a header line with the point
    /// count, then n rows of n space-separated decimals.
    pub fn to_matrix_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format_float(self.dist(i, j)));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the matrix format produced by [`to_matrix_string`] and
    /// validates the result.
    ///
    /// [`to_matrix_string`]: FiniteMetricSpace::to_matrix_string
    pub fn parse_matrix(text: &str) -> Result<Self, MetricError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(MetricError::Parse("empty input".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| MetricError::Parse(format!("bad header {header:?}")))?;
        if n == 0 {
            return Err(MetricError::Empty);
        }
        let mut matrix = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| MetricError::Parse(format!("expected {n} matrix rows")))?;
            let row: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| MetricError::Parse(format!("bad row {line:?}")))?;
            if row.len() != n {
                return Err(MetricError::Parse(format!(
                    "row has {} entries, expected {n}",
                    row.len()
                )));
            }
            matrix.push(row);
        }
        if lines.next().is_some() {
            return Err(MetricError::Parse("trailing content after matrix".into()));
        }
        FiniteMetricSpace::new(&matrix)
    }

    pub fn read_from_path(path: &std::path::Path) -> Result<Self, MetricError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_matrix(&text)
    }

    pub fn write_to_path(&self, path: &std::path::Path) -> Result<(), MetricError> {
        std::fs::write(path, self.to_matrix_string())?;
        Ok(())
    }
}

fn check_subset(z: &FiniteMetricSpace, subset: &[usize]) -> Result<(), MetricError> {
    if subset.is_empty() {
        return Err(MetricError::Empty);
    }
    for &p in subset {
        if p >= z.len() {
            return Err(MetricError::BadIndex { index: p, len: z.len() });
        }
    }
    Ok(())
}

/// Hausdorff distance between two non-empty subsets of a common space: the
/// larger of the two directed sup-inf distances.
pub fn hausdorff_distance(
    z: &FiniteMetricSpace,
    a: &[usize],
    b: &[usize],
) -> Result<f64, MetricError> {
    check_subset(z, a)?;
    check_subset(z, b)?;
    let directed = |from: &[usize], to: &[usize]| {
        from.iter()
            .map(|&p| {
                to.iter()
                    .map(|&q| z.dist(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0_f64, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_space(points: &[f64]) -> FiniteMetricSpace {
        let matrix: Vec<Vec<f64>> = points
            .iter()
            .map(|&x| points.iter().map(|&y| (x - y).abs()).collect())
            .collect();
        FiniteMetricSpace::new(&matrix).unwrap()
    }

    #[test]
    fn three_point_line_is_valid() {
        let s = line_space(&[0.0, 1.0, 2.0]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.dist(0, 2), 2.0);
        assert_eq!(s.diameter(), 2.0);
    }

    #[test]
    fn triangle_violation_is_reported_with_defect() {
        let m = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        let violations = validate_metric(&m).unwrap();
        assert!(violations.contains(&MetricViolation::Triangle {
            i: 0,
            j: 1,
            k: 2,
            defect: 3.0
        }));
        assert!(FiniteMetricSpace::new(&m).is_err());
    }

    #[test]
    fn axiom_violations_are_reported() {
        let m = vec![vec![0.5, 1.0], vec![2.0, 0.0]];
        let violations = validate_metric(&m).unwrap();
        assert!(violations
            .iter()
            .any(|v| matches!(v, MetricViolation::NonzeroDiagonal { i: 0, .. })));
        assert!(violations
            .iter()
            .any(|v| matches!(v, MetricViolation::Asymmetric { i: 0, j: 1, .. })));

        let m = vec![vec![0.0, -1.0], vec![-1.0, 0.0]];
        assert!(validate_metric(&m)
            .unwrap()
            .iter()
            .any(|v| matches!(v, MetricViolation::NonPositive { .. })));

        assert!(matches!(
            validate_metric(&[vec![0.0, 1.0]]),
            Err(MetricError::NonSquare { .. })
        ));
        assert!(matches!(validate_metric(&[]), Err(MetricError::Empty)));
    }

    #[test]
    fn permuting_points_preserves_validity() {
        let s = line_space(&[0.0, 0.7, 1.9, 4.0]);
        let perm = [2usize, 0, 3, 1];
        let matrix: Vec<Vec<f64>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| s.dist(i, j)).collect())
            .collect();
        assert!(validate_metric(&matrix).unwrap().is_empty());
    }

    #[test]
    fn hausdorff_examples() {
        let s = line_space(&[0.0, 1.0, 3.0]);
        assert_eq!(hausdorff_distance(&s, &[0, 1, 2], &[0, 1, 2]).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&s, &[0], &[1]).unwrap(), 1.0);
        // A subset of B: one direction collapses.
        assert_eq!(hausdorff_distance(&s, &[0, 1], &[0, 1, 2]).unwrap(), 2.0);
        assert!(hausdorff_distance(&s, &[], &[0]).is_err());
        assert!(hausdorff_distance(&s, &[0], &[7]).is_err());
    }

    #[test]
    fn hausdorff_is_a_semimetric_on_subsets() {
        let s = line_space(&[0.0, 0.4, 1.1, 2.3, 3.0]);
        let subsets: [&[usize]; 3] = [&[0, 2], &[1, 3], &[2, 4]];
        for a in &subsets {
            for b in &subsets {
                let ab = hausdorff_distance(&s, a, b).unwrap();
                let ba = hausdorff_distance(&s, b, a).unwrap();
                assert_eq!(ab, ba);
                for c in &subsets {
                    let ac = hausdorff_distance(&s, a, c).unwrap();
                    let cb = hausdorff_distance(&s, c, b).unwrap();
                    assert!(ab <= ac + cb + 1e-15);
                }
            }
        }
    }

    #[test]
    fn matrix_format_round_trips() {
        let s = line_space(&[0.0, 0.25, 1.0 / 3.0]);
        let text = s.to_matrix_string();
        assert!(text.starts_with("3\n"));
        let back = FiniteMetricSpace::parse_matrix(&text).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.dist(i, j), back.dist(i, j), "exact round trip");
            }
        }
        assert!(FiniteMetricSpace::parse_matrix("").is_err());
        assert!(FiniteMetricSpace::parse_matrix("2\n0 1\n1 0\nextra").is_err());
        assert!(FiniteMetricSpace::parse_matrix("2\n0 1\n1").is_err());
    }

    #[test]
    fn sub_space_and_labels() {
        let s = line_space(&[0.0, 1.0, 2.0, 5.0])
            .with_labels(vec!["a".into(), "b".into(), "c".into(), "d".into()])
            .unwrap();
        assert_eq!(s.label(3), Some("d"));
        let sub = s.sub_space(&[3, 0]).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.dist(0, 1), 5.0);
        assert!(s.sub_space(&[0, 0]).is_err());
        assert!(s.sub_space(&[]).is_err());
    }
}
