//! Point maps between finite metric spaces, approximation certificates,
//! disjoint-union gluing, and the searched Gromov-Hausdorff upper bound.

use crate::metric::space::{hausdorff_distance, FiniteMetricSpace};
use crate::metric::MetricError;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A map between two finite metric spaces, stored as the image index of
/// every source point. The spaces are kept by value so certificates stay
/// self-contained.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMap {
    source: FiniteMetricSpace,
    target: FiniteMetricSpace,
    image: Vec<usize>,
}

impl PointMap {
    pub fn new(
        source: FiniteMetricSpace,
        target: FiniteMetricSpace,
        image: Vec<usize>,
    ) -> Result<Self, MetricError> {
        if image.len() != source.len() {
            return Err(MetricError::BadParameter(format!(
                "{} image entries for {} source points",
                image.len(),
                source.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&v| v >= target.len()) {
            return Err(MetricError::BadIndex { index: bad, len: target.len() });
        }
        Ok(PointMap { source, target, image })
    }

    pub fn identity(space: &FiniteMetricSpace) -> Self {
        PointMap {
            source: space.clone(),
            target: space.clone(),
            image: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteMetricSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteMetricSpace {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }
}

/// Distortion and covering quality of one map, with nu their maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationCert {
    pub map: PointMap,
    /// max over source pairs of |d_target(f x, f x') - d_source(x, x')|.
    pub distortion: f64,
    /// max over target points of the distance to the image set.
    pub covering: f64,
    pub nu: f64,
}

fn eval_map(
    src: &FiniteMetricSpace,
    dst: &FiniteMetricSpace,
    image: &[usize],
) -> (f64, f64) {
    let mut distortion = 0.0_f64;
    for i in 0..src.len() {
        for j in (i + 1)..src.len() {
            let gap = (dst.dist(image[i], image[j]) - src.dist(i, j)).abs();
            distortion = distortion.max(gap);
        }
    }
    let mut covering = 0.0_f64;
    for y in 0..dst.len() {
        let near = image
            .iter()
            .map(|&fy| dst.dist(y, fy))
            .fold(f64::INFINITY, f64::min);
        covering = covering.max(near);
    }
    (distortion, covering)
}

/// Measures a map's approximation quality: distortion over pairs, covering
/// radius of the image, and their maximum nu.
pub fn happrox_of_map(f: &PointMap) -> ApproximationCert {
    let (distortion, covering) = eval_map(&f.source, &f.target, &f.image);
    ApproximationCert { map: f.clone(), distortion, covering, nu: distortion.max(covering) }
}

/// Glues two spaces along a nu-approximation into one metric on the
/// disjoint union: X keeps indices 0..|X|, Y sits at |X|..|X|+|Y|, and the
/// cross distance is the one-hop completion
/// min over x' of [d_X(x, x') + d_Y(y, f(x')) + nu].
///
/// Requires nu > 0 (a zero offset would put distinct points at distance
/// zero) and that f really is a nu-approximation. The two copies end up at
/// Hausdorff distance at most 2 nu inside the result.
pub fn glue_disjoint_union(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    f: &PointMap,
    nu: f64,
) -> Result<FiniteMetricSpace, MetricError> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(MetricError::BadParameter(format!(
            "gluing offset must be positive, got {nu}"
        )));
    }
    if f.source != *x || f.target != *y {
        return Err(MetricError::BadParameter(
            "map endpoints differ from the spaces being glued".into(),
        ));
    }
    let quality = happrox_of_map(f);
    if quality.nu > nu + 1e-12 {
        return Err(MetricError::PreconditionFailed(format!(
            "map quality nu = {} exceeds the gluing parameter {nu}",
            quality.nu
        )));
    }

    let (nx, ny) = (x.len(), y.len());
    let n = nx + ny;
    let cross = |xi: usize, yj: usize| -> f64 {
        (0..nx)
            .map(|xp| x.dist(xi, xp) + y.dist(yj, f.image[xp]))
            .fold(f64::INFINITY, f64::min)
            + nu
    };
    let mut matrix = vec![vec![0.0_f64; n]; n];
    for i in 0..nx {
        for j in 0..nx {
            matrix[i][j] = x.dist(i, j);
        }
    }
    for i in 0..ny {
        for j in 0..ny {
            matrix[nx + i][nx + j] = y.dist(i, j);
        }
    }
    for i in 0..nx {
        for j in 0..ny {
            let d = cross(i, j);
            matrix[i][nx + j] = d;
            matrix[nx + j][i] = d;
        }
    }
    FiniteMetricSpace::new(&matrix)
}

/// Exhaustive search cutoff: at most 6^6 candidate maps per direction.
const EXHAUSTIVE_LIMIT: usize = 6;

struct Search<'a> {
    src: &'a FiniteMetricSpace,
    dst: &'a FiniteMetricSpace,
    best_nu: f64,
    best_image: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(src: &'a FiniteMetricSpace, dst: &'a FiniteMetricSpace) -> Self {
        let start: Vec<usize> = (0..src.len()).map(|i| i % dst.len()).collect();
        let (d, c) = eval_map(src, dst, &start);
        Search { src, dst, best_nu: d.max(c), best_image: start }
    }

    fn consider(&mut self, image: &[usize]) -> f64 {
        let (d, c) = eval_map(self.src, self.dst, image);
        let nu = d.max(c);
        if nu < self.best_nu {
            self.best_nu = nu;
            self.best_image = image.to_vec();
        }
        nu
    }

    fn exhaustive(&mut self) {
        let (k, m) = (self.src.len(), self.dst.len());
        let mut image = vec![0usize; k];
        loop {
            self.consider(&image);
            // Odometer increment over all m^k assignments.
            let mut pos = k;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                image[pos] += 1;
                if image[pos] < m {
                    break;
                }
                image[pos] = 0;
            }
        }
    }

    /// Rank-matching start: order both spaces by total distance to the rest
    /// and map rank to rank.
    fn rank_start(&self) -> Vec<usize> {
        let rank = |s: &FiniteMetricSpace| -> Vec<usize> {
            let mut idx: Vec<usize> = (0..s.len()).collect();
            let sums: Vec<f64> = (0..s.len())
                .map(|i| (0..s.len()).map(|j| s.dist(i, j)).sum())
                .collect();
            idx.sort_by(|&a, &b| sums[a].total_cmp(&sums[b]).then(a.cmp(&b)));
            idx
        };
        let src_rank = rank(self.src);
        let dst_rank = rank(self.dst);
        let m = self.dst.len();
        let mut image = vec![0usize; self.src.len()];
        for (r, &i) in src_rank.iter().enumerate() {
            image[i] = dst_rank[(r * m / self.src.len().max(1)).min(m - 1)];
        }
        image
    }

    fn hill_climb(&mut self, budget: usize, rng: &mut ChaCha8Rng) {
        let (k, m) = (self.src.len(), self.dst.len());
        let mut evals = 0usize;
        let spend = |s: &mut Self, image: &[usize], evals: &mut usize| -> f64 {
            *evals += 1;
            s.consider(image)
        };

        let mut current = self.rank_start();
        let mut current_nu = spend(self, &current, &mut evals);
        let stale_limit = 40 * k.max(1);
        let mut stale = 0usize;
        while evals < budget {
            let i = rng.random_range(0..k);
            let v = rng.random_range(0..m);
            if v == current[i] {
                stale += 1;
            } else {
                let old = current[i];
                current[i] = v;
                let nu = spend(self, &current, &mut evals);
                if nu < current_nu {
                    current_nu = nu;
                    stale = 0;
                } else {
                    current[i] = old;
                    stale += 1;
                }
            }
            if stale > stale_limit && evals < budget {
                for slot in current.iter_mut() {
                    *slot = rng.random_range(0..m);
                }
                current_nu = spend(self, &current, &mut evals);
                stale = 0;
            }
        }
    }
}

/// Upper bound on the Gromov-Hausdorff distance via the best approximation
/// found in either direction: bound = 2 * min nu. Exhaustive over all maps
/// when both spaces have at most 6 points; otherwise a deterministic
/// seeded hill-climb with restarts, spending at most `budget` map
/// evaluations per direction. The returned certificate is the witness map
/// (its source/target record the direction).
pub fn gh_upper_bound(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    budget: usize,
    seed: u64,
) -> (f64, ApproximationCert) {
    let exhaustive = x.len() <= EXHAUSTIVE_LIMIT && y.len() <= EXHAUSTIVE_LIMIT;
    let mut best: Option<(f64, FiniteMetricSpace, FiniteMetricSpace, Vec<usize>)> = None;
    for (src, dst) in [(x, y), (y, x)] {
        let mut search = Search::new(src, dst);
        if exhaustive {
            search.exhaustive();
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            search.hill_climb(budget.max(1), &mut rng);
        }
        let better = match &best {
            None => true,
            Some((nu, ..)) => search.best_nu < *nu,
        };
        if better {
            best = Some((search.best_nu, src.clone(), dst.clone(), search.best_image));
        }
    }
    let (nu, src, dst, image) = best.expect("two directions searched");
    let map = PointMap::new(src, dst, image).expect("search images are in range");
    let cert = happrox_of_map(&map);
    debug_assert_eq!(cert.nu, nu);
    (2.0 * nu, cert)
}

/// Reads an approximation off an embedding: given two subsets of a common
/// space at Hausdorff distance at most 2 nu, nearest-point assignment gives
/// a map between the induced sub-spaces with quality at most 4 nu.
pub fn extract_approx_from_embedding(
    z: &FiniteMetricSpace,
    x_img: &[usize],
    y_img: &[usize],
    nu: f64,
) -> Result<ApproximationCert, MetricError> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(MetricError::BadParameter(format!("embedding quality {nu}")));
    }
    let dh = hausdorff_distance(z, x_img, y_img)?;
    if dh > 2.0 * nu + 1e-12 {
        return Err(MetricError::PreconditionFailed(format!(
            "subsets sit at Hausdorff distance {dh} > 2 nu = {}",
            2.0 * nu
        )));
    }
    let source = z.sub_space(x_img)?;
    let target = z.sub_space(y_img)?;
    let image: Vec<usize> = x_img
        .iter()
        .map(|&xi| {
            let mut best = 0usize;
            for (pos, &yj) in y_img.iter().enumerate() {
                if z.dist(xi, yj) < z.dist(xi, y_img[best]) {
                    best = pos;
                }
            }
            best
        })
        .collect();
    let map = PointMap::new(source, target, image)?;
    Ok(happrox_of_map(&map))
}
