//! Model families with closed-form flow evolution and ball-volume laws.

use std::f64::consts::{LN_2, PI};

use crate::curvature::OperatorSpectrum;
use crate::flow::FlowError;
use crate::numerics::simpson;

/// Euclidean volume of the unit 3-ball.
pub(crate) const OMEGA3: f64 = 4.0 * PI / 3.0;

const QUADRATURE_PANELS: usize = 512;
const PROFILE_POINTS: usize = 12;
const RADIAL_SAMPLES: usize = 25;

/// Homogeneous (or cohomogeneity-one) reference geometries whose Ricci-flow
/// evolution is known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFamily {
    /// Round 3-sphere of initial sectional curvature `k0`, quotiented by a
    /// free group action of the given order. The quotient changes the total
    /// volume only; distances are reported on the simply connected model.
    RoundSphereQuotient { k0: f64, quotient_order: u32 },
    /// Product of a round 2-sphere (initial Gauss curvature `k0`) with a
    /// circle of fixed length.
    ProductSphereCircle { k0: f64, circle_length: f64 },
    /// Flat torus with the given side lengths; stationary under the flow.
    FlatTorus { sides: [f64; 3] },
    /// Cigar soliton crossed with a line, treated as a static model and
    /// truncated at the given radius for tabulated quantities.
    CigarCrossLine { scale: f64, truncation_radius: f64 },
}

impl ModelFamily {
    pub fn round_sphere(k0: f64, quotient_order: u32) -> Result<Self, FlowError> {
        let fam = ModelFamily::RoundSphereQuotient { k0, quotient_order };
        fam.validate()?;
        Ok(fam)
    }

    pub fn product_sphere_circle(k0: f64, circle_length: f64) -> Result<Self, FlowError> {
        let fam = ModelFamily::ProductSphereCircle { k0, circle_length };
        fam.validate()?;
        Ok(fam)
    }

    pub fn flat_torus(sides: [f64; 3]) -> Result<Self, FlowError> {
        let fam = ModelFamily::FlatTorus { sides };
        fam.validate()?;
        Ok(fam)
    }

    /// Cigar-cross-line with the conventional truncation at fifty times the
    /// soliton scale.
    pub fn cigar(scale: f64) -> Result<Self, FlowError> {
        Self::cigar_truncated(scale, 50.0 * scale)
    }

    pub fn cigar_truncated(scale: f64, truncation_radius: f64) -> Result<Self, FlowError> {
        let fam = ModelFamily::CigarCrossLine { scale, truncation_radius };
        fam.validate()?;
        Ok(fam)
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        let bad = |msg: String| Err(FlowError::BadParameter(msg));
        match *self {
            ModelFamily::RoundSphereQuotient { k0, quotient_order } => {
                if !(k0 > 0.0 && k0.is_finite()) {
                    return bad(format!("sphere curvature must be positive, got {k0}"));
                }
                if quotient_order == 0 {
                    return bad("quotient order must be at least one".into());
                }
            }
            ModelFamily::ProductSphereCircle { k0, circle_length } => {
                if !(k0 > 0.0 && k0.is_finite()) {
                    return bad(format!("sphere curvature must be positive, got {k0}"));
                }
                if !(circle_length > 0.0 && circle_length.is_finite()) {
                    return bad(format!("circle length must be positive, got {circle_length}"));
                }
            }
            ModelFamily::FlatTorus { sides } => {
                if sides.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
                    return bad(format!("torus sides must be positive, got {sides:?}"));
                }
            }
            ModelFamily::CigarCrossLine { scale, truncation_radius } => {
                if !(scale > 0.0 && scale.is_finite()) {
                    return bad(format!("cigar scale must be positive, got {scale}"));
                }
                if !(truncation_radius > 0.0 && truncation_radius.is_finite()) {
                    return bad(format!(
                        "truncation radius must be positive, got {truncation_radius}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Blow-up time of the closed-form solution, when one exists.
    pub fn blow_up(&self) -> Option<f64> {
        match *self {
            ModelFamily::RoundSphereQuotient { k0, .. } => Some(1.0 / (4.0 * k0)),
            ModelFamily::ProductSphereCircle { k0, .. } => Some(1.0 / (2.0 * k0)),
            ModelFamily::FlatTorus { .. } | ModelFamily::CigarCrossLine { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelFamily::RoundSphereQuotient { .. } => "round-sphere",
            ModelFamily::ProductSphereCircle { .. } => "product-sphere-circle",
            ModelFamily::FlatTorus { .. } => "flat-torus",
            ModelFamily::CigarCrossLine { .. } => "cigar-cross-line",
        }
    }

    /// Snapshot of the closed-form solution at time `t`.
    pub fn exact_flow(&self, t: f64) -> Result<FlowSnapshot, FlowError> {
        self.validate()?;
        if let Some(blow_up) = self.blow_up() {
            if t >= blow_up {
                return Err(FlowError::PastBlowUp { t, blow_up });
            }
        }
        match *self {
            ModelFamily::RoundSphereQuotient { k0, quotient_order } => {
                let f = 1.0 - 4.0 * k0 * t;
                let k = k0 / f;
                let lam = 2.0 * k;
                let radius = 1.0 / k.sqrt();
                let diameter = PI * radius;
                let volume = 2.0 * PI * PI * radius.powi(3) / f64::from(quotient_order);
                let geometry = Geometry::Sphere { k };
                Ok(FlowSnapshot::assemble(
                    t,
                    OperatorSpectrum::new(lam, lam, lam),
                    Some(diameter),
                    Some(volume),
                    vec![
                        ("antipodal".into(), diameter),
                        ("quarter".into(), 0.5 * diameter),
                    ],
                    Vec::new(),
                    Some(geometry),
                ))
            }
            ModelFamily::ProductSphereCircle { k0, circle_length } => {
                let f = 1.0 - 2.0 * k0 * t;
                let k = k0 / f;
                let sphere_diam = PI / k.sqrt();
                let diameter = (sphere_diam * sphere_diam
                    + 0.25 * circle_length * circle_length)
                    .sqrt();
                let volume = 4.0 * PI * circle_length / k;
                let geometry = Geometry::Product { k, half_len: 0.5 * circle_length };
                Ok(FlowSnapshot::assemble(
                    t,
                    OperatorSpectrum::new(0.0, 0.0, 2.0 * k),
                    Some(diameter),
                    Some(volume),
                    vec![
                        ("sphere-antipodal".into(), sphere_diam),
                        ("half-circle".into(), 0.5 * circle_length),
                    ],
                    Vec::new(),
                    Some(geometry),
                ))
            }
            ModelFamily::FlatTorus { sides } => {
                let diameter =
                    0.5 * sides.iter().map(|l| l * l).sum::<f64>().sqrt();
                let volume = sides.iter().product();
                let geometry = Geometry::Torus { sides };
                Ok(FlowSnapshot::assemble(
                    t,
                    OperatorSpectrum::new(0.0, 0.0, 0.0),
                    Some(diameter),
                    Some(volume),
                    vec![
                        ("half-x".into(), 0.5 * sides[0]),
                        ("half-diagonal".into(), diameter),
                    ],
                    Vec::new(),
                    Some(geometry),
                ))
            }
            ModelFamily::CigarCrossLine { scale, truncation_radius } => {
                let tip = 4.0 / (scale * scale);
                let step = truncation_radius / (RADIAL_SAMPLES - 1) as f64;
                let radial: Vec<(f64, OperatorSpectrum)> = (0..RADIAL_SAMPLES)
                    .map(|i| {
                        let u = step * i as f64;
                        let sech = 1.0 / (u / scale).cosh();
                        (u, OperatorSpectrum::new(0.0, 0.0, tip * sech * sech))
                    })
                    .collect();
                let geometry = Geometry::Cigar { scale, truncation: truncation_radius };
                Ok(FlowSnapshot::assemble(
                    t,
                    OperatorSpectrum::new(0.0, 0.0, tip),
                    Some(f64::INFINITY),
                    Some(f64::INFINITY),
                    Vec::new(),
                    radial,
                    Some(geometry),
                ))
            }
        }
    }

    /// Large-ball volume ratio for the non-compact families: the tabulated
    /// tail of vol(B_r)/r^3 and its value at the largest probed radius. The
    /// flat torus is reported through its flat universal cover.
    pub fn asymptotic_volume_ratio(&self) -> Result<AsymptoticRatio, FlowError> {
        self.validate()?;
        match *self {
            ModelFamily::RoundSphereQuotient { .. }
            | ModelFamily::ProductSphereCircle { .. } => Err(FlowError::CompactFamily),
            ModelFamily::FlatTorus { .. } => {
                let tail = [1.0, 2.0, 4.0, 8.0]
                    .iter()
                    .map(|&r| (r, OMEGA3))
                    .collect::<Vec<_>>();
                Ok(AsymptoticRatio { value: OMEGA3, tail })
            }
            ModelFamily::CigarCrossLine { scale, truncation_radius } => {
                let tail: Vec<(f64, f64)> = [0.125, 0.25, 0.5, 1.0]
                    .iter()
                    .map(|&frac| {
                        let r = frac * truncation_radius;
                        (r, cigar_ball_volume(scale, r) / (r * r * r))
                    })
                    .collect();
                let value = tail.last().expect("tail is non-empty").1;
                Ok(AsymptoticRatio { value, tail })
            }
        }
    }
}

/// Tail of the large-ball volume ratio vol(B_r)/r^3.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRatio {
    /// Ratio at the largest probed radius.
    pub value: f64,
    /// (radius, ratio) rows at increasing radii.
    pub tail: Vec<(f64, f64)>,
}

/// Closed-form geometry attached to a snapshot, enough to answer exact
/// ball-volume queries after the fact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Geometry {
    /// Round 3-sphere of sectional curvature `k` (simply connected model).
    Sphere { k: f64 },
    /// Round 2-sphere of Gauss curvature `k` times a circle of half-length.
    Product { k: f64, half_len: f64 },
    Torus { sides: [f64; 3] },
    Cigar { scale: f64, truncation: f64 },
}

impl Geometry {
    fn ball_volume(&self, r: f64) -> Result<f64, FlowError> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(FlowError::RadiusOutOfRange { r, max: self.max_radius() });
        }
        if r > self.max_radius() * (1.0 + 1e-12) {
            return Err(FlowError::RadiusOutOfRange { r, max: self.max_radius() });
        }
        Ok(match *self {
            Geometry::Sphere { k } => sphere_ball_volume(k, r),
            Geometry::Product { k, half_len } => product_ball_volume(k, half_len, r),
            Geometry::Torus { sides } => torus_ball_volume(&sides, r),
            Geometry::Cigar { scale, .. } => cigar_ball_volume(scale, r),
        })
    }

    /// Largest radius the closed form covers.
    fn max_radius(&self) -> f64 {
        match *self {
            Geometry::Sphere { k } => PI / k.sqrt(),
            Geometry::Product { k, half_len } => {
                let sphere_diam = PI / k.sqrt();
                (sphere_diam * sphere_diam + half_len * half_len).sqrt()
            }
            Geometry::Torus { sides } => torus_max_radius(&sides),
            Geometry::Cigar { truncation, .. } => truncation,
        }
    }

    fn rescaled(&self, c: f64) -> Geometry {
        let s = c.sqrt();
        match *self {
            Geometry::Sphere { k } => Geometry::Sphere { k: k / c },
            Geometry::Product { k, half_len } => {
                Geometry::Product { k: k / c, half_len: half_len * s }
            }
            Geometry::Torus { sides } => Geometry::Torus {
                sides: [sides[0] * s, sides[1] * s, sides[2] * s],
            },
            Geometry::Cigar { scale, truncation } => {
                Geometry::Cigar { scale: scale * s, truncation: truncation * s }
            }
        }
    }
}

/// State of a flow at a single time: curvature spectrum, coarse geometric
/// data, tracked point-pair distances, and a ball-volume ratio table.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSnapshot {
    pub t: f64,
    /// Curvature-operator eigenvalues at the reference point (the tip for the
    /// cigar family).
    pub spectrum: OperatorSpectrum,
    /// None when the snapshot carries no geometry (pure reaction states);
    /// infinite for non-compact families.
    pub diameter: Option<f64>,
    pub volume: Option<f64>,
    /// Named point pairs with their current distance.
    pub tracked_pairs: Vec<(String, f64)>,
    /// (r, vol(B_r)/r^3) rows; the ratio column is non-increasing.
    pub ball_profile: Vec<(f64, f64)>,
    /// Radially sampled spectra for inhomogeneous families; empty otherwise.
    pub radial_spectra: Vec<(f64, OperatorSpectrum)>,
    geometry: Option<Geometry>,
}

impl FlowSnapshot {
    /// Snapshot carrying only a time and a spectrum, as produced by the
    /// reaction integrator.
    pub fn bare(t: f64, spectrum: OperatorSpectrum) -> Self {
        FlowSnapshot {
            t,
            spectrum,
            diameter: None,
            volume: None,
            tracked_pairs: Vec::new(),
            ball_profile: Vec::new(),
            radial_spectra: Vec::new(),
            geometry: None,
        }
    }

    fn assemble(
        t: f64,
        spectrum: OperatorSpectrum,
        diameter: Option<f64>,
        volume: Option<f64>,
        tracked_pairs: Vec<(String, f64)>,
        radial_spectra: Vec<(f64, OperatorSpectrum)>,
        geometry: Option<Geometry>,
    ) -> Self {
        let mut snap = FlowSnapshot {
            t,
            spectrum,
            diameter,
            volume,
            tracked_pairs,
            ball_profile: Vec::new(),
            radial_spectra,
            geometry,
        };
        snap.ball_profile = snap.default_profile();
        snap
    }

    fn default_profile(&self) -> Vec<(f64, f64)> {
        let Some(geom) = self.geometry else { return Vec::new() };
        let max = geom.max_radius();
        let mut rows = Vec::with_capacity(PROFILE_POINTS);
        for i in 1..=PROFILE_POINTS {
            let r = max * i as f64 / PROFILE_POINTS as f64;
            let vol = geom.ball_volume(r).expect("default radii stay in range");
            rows.push((r, vol / (r * r * r)));
        }
        assert_profile_monotone(&rows);
        rows
    }

    /// Exact ball volume around the reference point. Errors when the
    /// snapshot has no closed-form geometry or the radius leaves the range
    /// the closed form covers.
    pub fn ball_volume(&self, r: f64) -> Result<f64, FlowError> {
        let geom = self.geometry.ok_or(FlowError::MissingGeometry)?;
        geom.ball_volume(r)
    }

    /// Ball-volume ratio table vol(B_r)/r^3 on a caller-chosen radius grid.
    pub fn ball_volume_profile(&self, radii: &[f64]) -> Result<Vec<(f64, f64)>, FlowError> {
        let geom = self.geometry.ok_or(FlowError::MissingGeometry)?;
        let mut rows = Vec::with_capacity(radii.len());
        for &r in radii {
            let vol = geom.ball_volume(r)?;
            rows.push((r, vol / (r * r * r)));
        }
        Ok(rows)
    }

    /// Parabolic rescaling: metric scaled by `c`, snapshot placed at the new
    /// time `t_new`. Curvatures divide by `c`, lengths pick up sqrt(c),
    /// volumes c^(3/2); the ball-profile ratio column is scale invariant.
    pub(crate) fn rescaled(&self, c: f64, t_new: f64) -> FlowSnapshot {
        let s = c.sqrt();
        let [a, b, g] = self.spectrum.as_array();
        FlowSnapshot {
            t: t_new,
            spectrum: OperatorSpectrum::new(a / c, b / c, g / c),
            diameter: self.diameter.map(|d| d * s),
            volume: self.volume.map(|v| v * c * s),
            tracked_pairs: self
                .tracked_pairs
                .iter()
                .map(|(id, d)| (id.clone(), d * s))
                .collect(),
            ball_profile: self
                .ball_profile
                .iter()
                .map(|&(r, ratio)| (r * s, ratio))
                .collect(),
            radial_spectra: self
                .radial_spectra
                .iter()
                .map(|&(u, sp)| {
                    let [a, b, g] = sp.as_array();
                    (u * s, OperatorSpectrum::new(a / c, b / c, g / c))
                })
                .collect(),
            geometry: self.geometry.map(|geom| geom.rescaled(c)),
        }
    }
}

fn assert_profile_monotone(rows: &[(f64, f64)]) {
    for w in rows.windows(2) {
        let (r0, v0) = w[0];
        let (r1, v1) = w[1];
        assert!(
            v1 <= v0 + 1e-9 * v0.abs().max(1.0),
            "ball-volume ratio must be non-increasing: ratio({r1}) = {v1} > ratio({r0}) = {v0}"
        );
    }
}

/// Lower bound on the injectivity radius at the reference point of a
/// normalized snapshot, from the ball volume at radius `r`:
/// inj >= r * V / (V + omega_3 * e^2).
pub fn injectivity_lower_bound(snap: &FlowSnapshot, r: f64) -> Result<f64, FlowError> {
    if !(r > 0.0) || r > 0.25 * PI + 1e-12 {
        return Err(FlowError::InjectivityRadius(r));
    }
    let norm = snap.spectrum.frobenius_norm();
    if norm > 1.0 + 1e-12 {
        return Err(FlowError::NotNormalized(norm));
    }
    let v = snap.ball_volume(r)?;
    Ok(r * v / (v + OMEGA3 * 2.0_f64.exp()))
}

/// Geodesic ball volume in the round 3-sphere of sectional curvature `k`.
fn sphere_ball_volume(k: f64, r: f64) -> f64 {
    let theta = (k.sqrt() * r).min(PI);
    2.0 * PI / (k * k.sqrt()) * (theta - theta.sin() * theta.cos())
}

/// Geodesic disc area in the round 2-sphere of Gauss curvature `k`, capped at
/// the total area once the disc wraps the sphere.
fn disc_area(k: f64, rho: f64) -> f64 {
    let phi = k.sqrt() * rho;
    if phi >= PI {
        4.0 * PI / k
    } else {
        2.0 * PI / k * (1.0 - phi.cos())
    }
}

/// Ball volume in S^2(k) x S^1 by slicing along the circle factor. The disc
/// saturates for slice offsets below u* = sqrt(r^2 - pi^2/k), which splits
/// the integrand at its kink.
fn product_ball_volume(k: f64, half_len: f64, r: f64) -> f64 {
    let u_hi = r.min(half_len);
    let integrand = |u: f64| disc_area(k, (r * r - u * u).max(0.0).sqrt());
    let sat_u_sq = r * r - PI * PI / k;
    if sat_u_sq <= 0.0 {
        return 2.0 * simpson(integrand, 0.0, u_hi, QUADRATURE_PANELS);
    }
    let u_star = sat_u_sq.sqrt();
    if u_star >= u_hi {
        return 2.0 * u_hi * (4.0 * PI / k);
    }
    let saturated = u_star * (4.0 * PI / k);
    2.0 * (saturated + simpson(integrand, u_star, u_hi, QUADRATURE_PANELS))
}

fn torus_max_radius(sides: &[f64; 3]) -> f64 {
    let mut max = sides.iter().cloned().fold(f64::INFINITY, f64::min);
    for i in 0..3 {
        for j in (i + 1)..3 {
            max = max.min(0.5 * sides[i].hypot(sides[j]));
        }
    }
    max
}

/// Ball volume in a flat torus: the Euclidean ball minus one spherical cap
/// per face of the fundamental slab, valid while distinct caps stay disjoint.
fn torus_ball_volume(sides: &[f64; 3], r: f64) -> f64 {
    let mut vol = OMEGA3 * r * r * r;
    for &l in sides {
        let h = r - 0.5 * l;
        if h > 0.0 {
            vol -= 2.0 * PI * h * h * (3.0 * r - h) / 3.0;
        }
    }
    vol
}

fn ln_cosh(m: f64) -> f64 {
    let a = m.abs();
    a - LN_2 + (-2.0 * a).exp().ln_1p()
}

/// Area of a geodesic disc of radius `m` around the cigar tip (unit scale).
fn cigar_disc_area(m: f64) -> f64 {
    2.0 * PI * ln_cosh(m)
}

/// Ball volume around the tip of cigar x line via slices along the line,
/// computed in unit scale so the result is exactly scale covariant.
fn cigar_ball_volume(scale: f64, r: f64) -> f64 {
    let x = r / scale;
    let unit = 2.0 * simpson(
        |u| cigar_disc_area((x * x - u * u).max(0.0).sqrt()),
        0.0,
        x,
        QUADRATURE_PANELS,
    );
    scale * scale * scale * unit
}
