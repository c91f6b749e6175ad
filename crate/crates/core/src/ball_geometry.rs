//! Points of the Poincaré ball, geodesic distance, radius conversions,
//! stereographic maps, and the admissibility predicate for sphere/annulus
//! pairs.
//!
//! The ball model is B^n = {x ∈ R^n : |x| < 1} with metric factor
//! λ = 2(1−|x|²)⁻¹; geodesic distance satisfies
//! tanh ½d(x,y) = |x−y| / √(1−2x·y+|x|²|y|²).

use thiserror::Error;

/// Margin added to the strict admissibility inequalities so that quadrature
/// nodes generated for an admissible sphere stay off the annulus boundary.
pub const DEFAULT_ADMISSIBILITY_MARGIN: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum BallGeometryError {
    #[error("point must have dimension >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("point norm {norm} is not strictly inside the unit ball")]
    OutsideBall { norm: f64 },
    #[error("coordinates must be finite")]
    NonFiniteCoordinate,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("euclidean radius {rho} is outside [0, 1)")]
    InvalidEuclideanRadius { rho: f64 },
    #[error("annulus requires 0 <= r < R, got r = {r}, R = {outer}")]
    InvalidAnnulus { r: f64, outer: String },
    #[error("sphere radius must be positive, got {s}")]
    InvalidSphereRadius { s: f64 },
    #[error("inverse stereographic input must lie in the lower hemisphere (last coordinate {eta_last} >= 0)")]
    NotLowerHemisphere { eta_last: f64 },
    #[error("inverse stereographic input must be a unit vector of dimension >= 3, |eta| = {norm}")]
    NotOnSphere { norm: f64 },
}

/// A point of the open unit ball B^n, n >= 2. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PointBall {
    coords: Vec<f64>,
}

impl PointBall {
    pub fn new(coords: Vec<f64>) -> Result<Self, BallGeometryError> {
        if coords.len() < 2 {
            return Err(BallGeometryError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(BallGeometryError::NonFiniteCoordinate);
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm >= 1.0 {
            return Err(BallGeometryError::OutsideBall { norm });
        }
        Ok(PointBall { coords })
    }

    pub fn origin(n: usize) -> Self {
        assert!(n >= 2, "ball dimension must be >= 2");
        PointBall {
            coords: vec![0.0; n],
        }
    }

    /// Point at Euclidean distance `rho` from the origin along axis `p` (1-based).
    pub fn on_axis(n: usize, p: usize, rho: f64) -> Result<Self, BallGeometryError> {
        assert!(p >= 1 && p <= n, "axis index out of range");
        let mut coords = vec![0.0; n];
        coords[p - 1] = rho;
        PointBall::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean norm ρ = |x|.
    pub fn rho(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|c| *c == 0.0)
    }
}

/// Outer radius of an annulus: finite, or the whole-space sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusBound {
    Finite(f64),
    Infinite,
}

impl std::fmt::Display for RadiusBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RadiusBound::Finite(v) => write!(f, "{v}"),
            RadiusBound::Infinite => write!(f, "inf"),
        }
    }
}

/// Open geodesic annulus Ann(r, R) = {x : r < d(x, 0) < R}, 0 <= r < R <= ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusSpec {
    inner: f64,
    outer: RadiusBound,
}

impl AnnulusSpec {
    pub fn new(inner: f64, outer: RadiusBound) -> Result<Self, BallGeometryError> {
        let ok = match outer {
            RadiusBound::Finite(r_out) => inner >= 0.0 && inner < r_out && r_out.is_finite(),
            RadiusBound::Infinite => inner >= 0.0 && inner.is_finite(),
        };
        if !ok {
            return Err(BallGeometryError::InvalidAnnulus {
                r: inner,
                outer: outer.to_string(),
            });
        }
        Ok(AnnulusSpec { inner, outer })
    }

    /// Annulus with infinite outer radius.
    pub fn unbounded(inner: f64) -> Result<Self, BallGeometryError> {
        AnnulusSpec::new(inner, RadiusBound::Infinite)
    }

    pub fn inner(&self) -> f64 {
        self.inner
    }

    pub fn outer(&self) -> RadiusBound {
        self.outer
    }

    /// Whether the geodesic radius `d` lies strictly inside the annulus.
    pub fn contains_geodesic(&self, d: f64) -> bool {
        d > self.inner
            && match self.outer {
                RadiusBound::Finite(r_out) => d < r_out,
                RadiusBound::Infinite => true,
            }
    }
}

/// A geodesic sphere S_s(x) = {y : d(x, y) = s}, s > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSpec {
    center: PointBall,
    radius: f64,
}

impl SphereSpec {
    pub fn new(center: PointBall, radius: f64) -> Result<Self, BallGeometryError> {
        if radius.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !radius.is_finite() {
            return Err(BallGeometryError::InvalidSphereRadius { s: radius });
        }
        Ok(SphereSpec { center, radius })
    }

    pub fn center(&self) -> &PointBall {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Geodesic distance in the ball model, computed through the artanh form,
/// which avoids cancellation near x = y.
pub fn hyperbolic_distance(x: &PointBall, y: &PointBall) -> Result<f64, BallGeometryError> {
    if x.dim() != y.dim() {
        return Err(BallGeometryError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let diff_sq = x
        .coords()
        .iter()
        .zip(y.coords())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>();
    if diff_sq == 0.0 {
        return Ok(0.0);
    }
    let dot = x
        .coords()
        .iter()
        .zip(y.coords())
        .map(|(a, b)| a * b)
        .sum::<f64>();
    let nx = x.coords().iter().map(|c| c * c).sum::<f64>();
    let ny = y.coords().iter().map(|c| c * c).sum::<f64>();
    let denom_sq = 1.0 - 2.0 * dot + nx * ny;
    let q = (diff_sq / denom_sq).sqrt();
    assert!(
        q < 1.0,
        "artanh argument {q} >= 1 is impossible for points inside the ball"
    );
    Ok(2.0 * q.atanh())
}

/// Euclidean radius of the geodesic sphere of radius `s` around the origin.
pub fn rho_of_s(s: f64) -> f64 {
    assert!(s >= 0.0, "geodesic radius must be nonnegative");
    (s / 2.0).tanh()
}

/// Geodesic radius of the origin-centered sphere of Euclidean radius `rho`.
pub fn s_of_rho(rho: f64) -> Result<f64, BallGeometryError> {
    if !(0.0..1.0).contains(&rho) {
        return Err(BallGeometryError::InvalidEuclideanRadius { rho });
    }
    Ok(2.0 * rho.atanh())
}

/// Whether the sphere is an admissible constraint sphere for the annulus:
/// S_s(x) ⊂ Ann(r, R) and B_r(0) ⊆ B_s(x), with the default margin.
///
/// In a geodesic metric space the extremes of d(0, ·) over S_s(x) are
/// s ∓ d(0, x), so both containments reduce to the two strict inequalities
/// s − d(0,x) > r and s + d(0,x) < R; the first also forces
/// d(0,x) + r < s, i.e. B_r(0) ⊆ B_s(x).
pub fn admissible(sphere: &SphereSpec, ann: &AnnulusSpec) -> bool {
    admissible_with_margin(sphere, ann, DEFAULT_ADMISSIBILITY_MARGIN)
}

pub fn admissible_with_margin(sphere: &SphereSpec, ann: &AnnulusSpec, margin: f64) -> bool {
    let origin = PointBall::origin(sphere.center().dim());
    let d0 = hyperbolic_distance(sphere.center(), &origin)
        .expect("origin shares the center dimension");
    let s = sphere.radius();
    if s - d0 <= ann.inner() + margin {
        return false;
    }
    match ann.outer() {
        RadiusBound::Finite(r_out) => s + d0 < r_out - margin,
        RadiusBound::Infinite => true,
    }
}

/// Inverse stereographic embedding of the ball into the lower hemisphere of
/// S^n: η_i = 2x_i/(1+|x|²), η_{n+1} = (|x|²−1)/(|x|²+1).
pub fn stereographic(x: &PointBall) -> Vec<f64> {
    let nx = x.coords().iter().map(|c| c * c).sum::<f64>();
    let scale = 2.0 / (1.0 + nx);
    let mut eta: Vec<f64> = x.coords().iter().map(|c| c * scale).collect();
    eta.push((nx - 1.0) / (nx + 1.0));
    eta
}

/// Inverse of [`stereographic`]: defined on the open lower hemisphere.
pub fn stereographic_inverse(eta: &[f64]) -> Result<PointBall, BallGeometryError> {
    if eta.len() < 3 {
        return Err(BallGeometryError::DimensionTooSmall(eta.len()));
    }
    let norm = eta.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(BallGeometryError::NotOnSphere { norm });
    }
    let last = eta[eta.len() - 1];
    if last >= 0.0 {
        return Err(BallGeometryError::NotLowerHemisphere { eta_last: last });
    }
    let coords = eta[..eta.len() - 1]
        .iter()
        .map(|c| c / (1.0 - last))
        .collect();
    PointBall::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, n: usize, max_rho: f64) -> PointBall {
        loop {
            let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < max_rho && norm > 1e-6 {
                return PointBall::new(coords).unwrap();
            }
        }
    }

    #[test]
    fn point_construction_rejects_bad_input() {
        assert!(PointBall::new(vec![0.5]).is_err());
        assert!(PointBall::new(vec![0.8, 0.8]).is_err());
        assert!(PointBall::new(vec![f64::NAN, 0.0]).is_err());
        assert!(PointBall::new(vec![0.3, 0.4]).is_ok());
    }

    #[test]
    fn distance_identity_case() {
        let o = PointBall::origin(2);
        assert_eq!(hyperbolic_distance(&o, &o).unwrap(), 0.0);
    }

    #[test]
    fn distance_from_origin_is_twice_artanh() {
        // d(0, y) = 2 artanh |y|, so y = (tanh 0.5, 0) sits at distance 1.
        let y = PointBall::new(vec![0.5f64.tanh(), 0.0]).unwrap();
        let d = hyperbolic_distance(&PointBall::origin(2), &y).unwrap();
        assert!((d - 1.0).abs() < 1e-14, "d = {d}");
        assert!((0.5f64.tanh() - 0.4621171573).abs() < 1e-10);
    }

    #[test]
    fn distance_symmetry_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_point(&mut rng, 3, 0.95);
            let y = random_point(&mut rng, 3, 0.95);
            let dxy = hyperbolic_distance(&x, &y).unwrap();
            let dyx = hyperbolic_distance(&y, &x).unwrap();
            assert_eq!(dxy, dyx, "formula is symmetric term by term");
        }
    }

    #[test]
    fn distance_dimension_mismatch() {
        let x = PointBall::origin(2);
        let y = PointBall::origin(3);
        assert!(matches!(
            hyperbolic_distance(&x, &y),
            Err(BallGeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn triangle_inequality_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = random_point(&mut rng, 2, 0.97);
            let y = random_point(&mut rng, 2, 0.97);
            let z = random_point(&mut rng, 2, 0.97);
            let dxz = hyperbolic_distance(&x, &z).unwrap();
            let dxy = hyperbolic_distance(&x, &y).unwrap();
            let dyz = hyperbolic_distance(&y, &z).unwrap();
            assert!(dxz <= dxy + dyz + 1e-12);
        }
    }

    #[test]
    fn radius_conversions() {
        assert_eq!(rho_of_s(0.0), 0.0);
        assert!(rho_of_s(50.0) > 1.0 - 1e-10);
        assert!((rho_of_s(1.0) - 0.4621171573).abs() < 1e-10);
        for s in [0.1, 0.7, 2.0, 5.0] {
            let rho = rho_of_s(s);
            assert!((s_of_rho(rho).unwrap() - s).abs() < 1e-12);
        }
        assert!(s_of_rho(1.0).is_err());
        assert!(s_of_rho(-0.1).is_err());
    }

    /// Independent oracle: a point of S_s(x) in direction `dir` found by
    /// bisection on the geodesic distance along the Euclidean ray from x.
    /// The geodesic distance is monotone along the ray and diverges at the
    /// ball boundary, so the target radius is always bracketed.
    fn sphere_point_by_bisection(x: &PointBall, s: f64, dir: &[f64]) -> PointBall {
        let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        let unit: Vec<f64> = dir.iter().map(|c| c / norm).collect();
        let point_at = |u: f64| -> PointBall {
            let coords: Vec<f64> = x
                .coords()
                .iter()
                .zip(&unit)
                .map(|(a, b)| a + u * b)
                .collect();
            PointBall::new(coords).expect("u stays below the boundary parameter")
        };
        // |x + u·unit| = 1 at u* = −x·unit + √((x·unit)² + 1 − |x|²).
        let xd: f64 = x.coords().iter().zip(&unit).map(|(a, b)| a * b).sum();
        let nx: f64 = x.coords().iter().map(|c| c * c).sum();
        let u_star = -xd + (xd * xd + 1.0 - nx).sqrt();
        let (mut lo, mut hi) = (0.0f64, u_star * (1.0 - 1e-12));
        assert!(hyperbolic_distance(x, &point_at(hi)).unwrap() > s);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hyperbolic_distance(x, &point_at(mid)).unwrap() < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        point_at(0.5 * (lo + hi))
    }

    #[test]
    fn admissibility_origin_centered() {
        let ann = AnnulusSpec::new(0.5, RadiusBound::Finite(3.0)).unwrap();
        let sphere = SphereSpec::new(PointBall::origin(2), 1.0).unwrap();
        assert!(admissible(&sphere, &ann));
        let too_small = SphereSpec::new(PointBall::origin(2), 0.4).unwrap();
        assert!(!admissible(&too_small, &ann));
        let too_big = SphereSpec::new(PointBall::origin(2), 3.2).unwrap();
        assert!(!admissible(&too_big, &ann));
    }

    #[test]
    fn admissibility_matches_brute_force_minimum() {
        // d(0,x) = 0.3, s = 1.0: the closest sphere point to the origin sits
        // at geodesic distance 0.7 <= r = 0.8, so the pair is inadmissible.
        let x = PointBall::new(vec![rho_of_s(0.3), 0.0]).unwrap();
        let s = 1.0;
        let mut min_d = f64::INFINITY;
        for q in 0..720 {
            let theta = 2.0 * std::f64::consts::PI * (q as f64) / 720.0;
            let y = sphere_point_by_bisection(&x, s, &[theta.cos(), theta.sin()]);
            let d = hyperbolic_distance(&PointBall::origin(2), &y).unwrap();
            min_d = min_d.min(d);
        }
        assert!((min_d - 0.7).abs() < 1e-6, "min distance = {min_d}");
        let ann = AnnulusSpec::unbounded(0.8).unwrap();
        let sphere = SphereSpec::new(x, s).unwrap();
        assert!(!admissible(&sphere, &ann));
    }

    #[test]
    fn admissibility_unbounded_outer() {
        let ann = AnnulusSpec::unbounded(0.5).unwrap();
        let x = PointBall::new(vec![0.2, 0.1]).unwrap();
        let d0 = hyperbolic_distance(&PointBall::origin(2), &x).unwrap();
        let s = 0.5 + d0 + 1e-6;
        let sphere = SphereSpec::new(x, s).unwrap();
        assert!(admissible_with_margin(&sphere, &ann, 1e-9));
    }

    #[test]
    fn admissibility_is_rotation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ann = AnnulusSpec::new(0.4, RadiusBound::Finite(4.0)).unwrap();
        for _ in 0..50 {
            let x = random_point(&mut rng, 2, 0.9);
            let s = rng.gen_range(0.2..3.0);
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (c, sn) = (theta.cos(), theta.sin());
            let rx = PointBall::new(vec![
                c * x.coords()[0] - sn * x.coords()[1],
                sn * x.coords()[0] + c * x.coords()[1],
            ])
            .unwrap();
            let a = admissible(&SphereSpec::new(x, s).unwrap(), &ann);
            let b = admissible(&SphereSpec::new(rx, s).unwrap(), &ann);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn stereographic_origin_and_unit_norm() {
        let eta = stereographic(&PointBall::origin(2));
        assert_eq!(eta, vec![0.0, 0.0, -1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = random_point(&mut rng, 3, 0.99);
            let eta = stereographic(&x);
            let norm = eta.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn stereographic_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let x = random_point(&mut rng, 2, 0.99);
            let eta = stereographic(&x);
            let back = stereographic_inverse(&eta).unwrap();
            let err: f64 = x
                .coords()
                .iter()
                .zip(back.coords())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-14);
        }
    }

    #[test]
    fn stereographic_inverse_rejects_upper_hemisphere() {
        assert!(matches!(
            stereographic_inverse(&[0.0, 0.0, 1.0]),
            Err(BallGeometryError::NotLowerHemisphere { .. })
        ));
        assert!(stereographic_inverse(&[0.0, 3.0, -1.0]).is_err());
    }
}
