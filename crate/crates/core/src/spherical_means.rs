//! Quadrature on geodesic spheres and the spherical mean operator, together
//! with the residual checks built on it: the Darboux intertwining relation,
//! the radial ODE satisfied by mean profiles of kernel members, indicial
//! exponents of that ODE at infinity, and decay-rate fits.
//!
//! The mean over S_s(x) is realized by transporting an origin-centered node
//! set with an isometry g (g·0 = x): the surface measure is
//! isometry-invariant, so the transported nodes integrate with unchanged
//! weights. `mean` returns the normalized average (unit mean for f ≡ 1);
//! vanishing statements are unaffected by the normalization choice.

use crate::ball_geometry::{rho_of_s, PointBall};
use crate::functions::BallFunction;
use crate::lorentz_group::LorentzMatrix;
use crate::radial_calculus::{eigen_shift, RhoProfile};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SphericalMeansError {
    #[error("quadrature rules are only provided for n in {{2, 3}}, got {0}")]
    UnsupportedDimension(usize),
    #[error("rule order {order} is below the minimum {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("dimension mismatch: rule/function/point dimensions {rule}/{function}/{point}")]
    DimensionMismatch {
        rule: usize,
        function: usize,
        point: usize,
    },
    #[error("sphere radius must be positive, got {s}")]
    NonPositiveRadius { s: f64 },
    #[error("quadrature node {coords:?} lies outside the function domain")]
    NodeOutsideDomain { coords: Vec<f64> },
    #[error("finite-difference stencil leaves the valid radius range at s = {s}")]
    StencilOutOfRange { s: f64 },
    #[error("grid of length {len} is too short (need >= {need})")]
    GridTooShort { len: usize, need: usize },
    #[error("grid must be strictly increasing and uniformly spaced")]
    BadGrid,
    #[error("log-fit requires strictly nonzero samples (index {index} is zero)")]
    ZeroSample { index: usize },
    #[error("lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// Quadrature nodes and positive weights on the unit sphere S^{n−1}, with a
/// declared polynomial exactness degree. Weights sum to the sphere area Ω_n.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n: usize,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
    exactness: usize,
    weight_sum: f64,
}

impl QuadratureRule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Highest polynomial degree integrated exactly (up to round-off).
    pub fn exactness(&self) -> usize {
        self.exactness
    }

    pub fn weight_sum(&self) -> f64 {
        self.weight_sum
    }
}

/// Build a quadrature rule on S^{n−1}.
///
/// * n = 2: `order`-point trapezoid rule on the circle, exact for
///   trigonometric polynomials of degree <= order − 1.
/// * n = 3: product of `order`-point Gauss–Legendre in the polar cosine with
///   2·`order` uniform azimuth points, exact to degree 2·order − 1.
pub fn build_rule(n: usize, order: usize) -> Result<QuadratureRule, SphericalMeansError> {
    if order < 4 {
        return Err(SphericalMeansError::OrderTooSmall { order, min: 4 });
    }
    match n {
        2 => {
            let w = std::f64::consts::TAU / order as f64;
            let nodes: Vec<Vec<f64>> = (0..order)
                .map(|q| {
                    let theta = std::f64::consts::TAU * q as f64 / order as f64;
                    vec![theta.cos(), theta.sin()]
                })
                .collect();
            let weights = vec![w; order];
            Ok(QuadratureRule {
                n,
                weight_sum: compensated_total(&weights),
                nodes,
                weights,
                exactness: order - 1,
            })
        }
        3 => {
            let (gl_nodes, gl_weights) = gauss_legendre(order);
            let azimuth = 2 * order;
            let phi_w = std::f64::consts::TAU / azimuth as f64;
            let mut nodes = Vec::with_capacity(order * azimuth);
            let mut weights = Vec::with_capacity(order * azimuth);
            for (ct, wt) in gl_nodes.iter().zip(&gl_weights) {
                let st = (1.0 - ct * ct).sqrt();
                for q in 0..azimuth {
                    let phi = std::f64::consts::TAU * q as f64 / azimuth as f64;
                    nodes.push(vec![st * phi.cos(), st * phi.sin(), *ct]);
                    weights.push(wt * phi_w);
                }
            }
            Ok(QuadratureRule {
                n,
                weight_sum: compensated_total(&weights),
                nodes,
                weights,
                exactness: 2 * order - 1,
            })
        }
        other => Err(SphericalMeansError::UnsupportedDimension(other)),
    }
}

/// Weight total accumulated exactly like the mean numerator, so that the
/// mean of f ≡ 1 is exactly 1.
fn compensated_total(weights: &[f64]) -> f64 {
    let mut acc = CompensatedSum::default();
    for w in weights {
        acc.add(*w);
    }
    acc.value()
}

/// Neumaier compensated accumulator: quadrature sums stay within an ulp or
/// two of the exact sum regardless of node count, which matters when means
/// that cancel to zero feed the necessity scan's null-space detection.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Gauss–Legendre nodes and weights on (−1, 1) by Newton iteration.
fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    for i in 0..q {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(q, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(q, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Weights are symmetric; recompute in sorted order for determinism.
    for i in 0..q {
        let (_, dp) = legendre_with_derivative(q, nodes[i]);
        weights[i] = 2.0 / ((1.0 - nodes[i] * nodes[i]) * dp * dp);
    }
    (nodes, weights)
}

/// (P_q(x), P_q'(x)) by the three-term recurrence.
fn legendre_with_derivative(q: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if q == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=q {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = next;
    }
    let dp = q as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Quadrature nodes for the geodesic sphere S_s(x): the origin-centered node
/// set at Euclidean radius tanh(s/2), moved by an isometry with g·0 = x.
pub fn sphere_nodes(
    x: &PointBall,
    s: f64,
    rule: &QuadratureRule,
) -> Result<Vec<PointBall>, SphericalMeansError> {
    if s <= 0.0 || !s.is_finite() {
        return Err(SphericalMeansError::NonPositiveRadius { s });
    }
    if x.dim() != rule.n() {
        return Err(SphericalMeansError::DimensionMismatch {
            rule: rule.n(),
            function: rule.n(),
            point: x.dim(),
        });
    }
    let g = LorentzMatrix::transport_to(x);
    let rho = rho_of_s(s);
    let mut out = Vec::with_capacity(rule.len());
    for node in rule.nodes() {
        let scaled: Vec<f64> = node.iter().map(|c| c * rho).collect();
        let coords = g.apply_coords(&scaled);
        out.push(PointBall::new(coords).expect("isometry keeps nodes inside the ball"));
    }
    Ok(out)
}

fn mean_with(
    f: &dyn BallFunction,
    value_at: impl Fn(&dyn BallFunction, &[f64]) -> f64,
    x: &PointBall,
    s: f64,
    rule: &QuadratureRule,
) -> Result<f64, SphericalMeansError> {
    if s <= 0.0 || !s.is_finite() {
        return Err(SphericalMeansError::NonPositiveRadius { s });
    }
    if x.dim() != rule.n() || f.dim() != rule.n() {
        return Err(SphericalMeansError::DimensionMismatch {
            rule: rule.n(),
            function: f.dim(),
            point: x.dim(),
        });
    }
    let g = LorentzMatrix::transport_to(x);
    let rho = rho_of_s(s);
    let mut acc = CompensatedSum::default();
    let mut scaled = vec![0.0; rule.n()];
    for (node, w) in rule.nodes().iter().zip(rule.weights()) {
        for (sc, c) in scaled.iter_mut().zip(node) {
            *sc = c * rho;
        }
        let y = g.apply_coords(&scaled);
        if !f.in_domain(&y) {
            return Err(SphericalMeansError::NodeOutsideDomain { coords: y });
        }
        acc.add(w * value_at(f, &y));
    }
    Ok(acc.value() / rule.weight_sum())
}

/// Normalized spherical mean M_s f(x): the average of f over the geodesic
/// sphere S_s(x) against its isometry-invariant surface measure, scaled so
/// that the mean of f ≡ 1 is exactly 1.
pub fn mean(
    f: &dyn BallFunction,
    x: &PointBall,
    s: f64,
    rule: &QuadratureRule,
) -> Result<f64, SphericalMeansError> {
    mean_with(f, |f, y| f.eval(y), x, s, rule)
}

/// Largest |f| over the quadrature nodes of S_s(x); the natural scale for
/// declaring a computed mean "vanishing".
pub fn sup_on_sphere(
    f: &dyn BallFunction,
    x: &PointBall,
    s: f64,
    rule: &QuadratureRule,
) -> Result<f64, SphericalMeansError> {
    let mut sup = 0.0f64;
    let nodes = sphere_nodes(x, s, rule)?;
    for y in &nodes {
        if !f.in_domain(y.coords()) {
            return Err(SphericalMeansError::NodeOutsideDomain {
                coords: y.coords().to_vec(),
            });
        }
        sup = sup.max(f.eval(y.coords()).abs());
    }
    Ok(sup)
}

/// Both sides of the Darboux intertwining relation at (x, s), evaluated
/// independently: the radial operator applied to s ↦ M_s f(x) by five-point
/// central differences, and the mean of the Laplace–Beltrami image of f.
#[derive(Debug, Clone, Copy)]
pub struct DarbouxCheck {
    /// L_s (M_s f)(x) by finite differences in s.
    pub radial_side: f64,
    /// M_s (L_x f)(x) by quadrature.
    pub transported_side: f64,
    /// max(1, sup |f|, sup |L_x f|) over the sphere nodes.
    pub scale: f64,
}

impl DarbouxCheck {
    pub fn residual(&self) -> f64 {
        (self.radial_side - self.transported_side).abs()
    }

    pub fn relative_residual(&self) -> f64 {
        self.residual() / self.scale
    }
}

/// Darboux residual |L_s M_s f − M_s L_x f| at (x, s) with step h.
///
/// All five stencil radii s + j·h must stay positive and generate spheres
/// inside the domain of f, or the evaluation refuses rather than
/// extrapolates.
pub fn darboux_residual(
    f: &dyn BallFunction,
    x: &PointBall,
    s: f64,
    rule: &QuadratureRule,
    h: f64,
) -> Result<DarbouxCheck, SphericalMeansError> {
    assert!(h > 0.0, "step must be positive");
    if s - 2.0 * h <= 0.0 {
        return Err(SphericalMeansError::StencilOutOfRange { s: s - 2.0 * h });
    }
    let mut values = [0.0; 5];
    for (idx, j) in (-2i32..=2).enumerate() {
        values[idx] = mean(f, x, s + j as f64 * h, rule)?;
    }
    let [fm2, fm1, f0, fp1, fp2] = values;
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    let n = rule.n() as f64;
    let radial_side = d2 + (n - 1.0) / s.tanh() * d1;
    let transported_side = mean_with(f, |f, y| f.hyperbolic_laplacian(y), x, s, rule)?;

    let mut scale = 1.0f64;
    for y in sphere_nodes(x, s, rule)? {
        scale = scale
            .max(f.eval(y.coords()).abs())
            .max(f.hyperbolic_laplacian(y.coords()).abs());
    }
    Ok(DarbouxCheck {
        radial_side,
        transported_side,
        scale,
    })
}

/// Sampled mean profile F(s) = M_s f(x) for fixed x on an increasing grid.
#[derive(Debug, Clone)]
pub struct MeanProfile {
    x: PointBall,
    s_grid: Vec<f64>,
    values: Vec<f64>,
}

impl MeanProfile {
    /// Evaluate the means over the grid. Every sphere must keep its nodes in
    /// the domain of f; grids must be strictly increasing.
    pub fn compute(
        f: &dyn BallFunction,
        x: PointBall,
        s_grid: Vec<f64>,
        rule: &QuadratureRule,
    ) -> Result<Self, SphericalMeansError> {
        if s_grid.len() < 2 {
            return Err(SphericalMeansError::GridTooShort {
                len: s_grid.len(),
                need: 2,
            });
        }
        if s_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SphericalMeansError::BadGrid);
        }
        let mut values = Vec::with_capacity(s_grid.len());
        for &s in &s_grid {
            values.push(mean(f, &x, s, rule)?);
        }
        Ok(MeanProfile { x, s_grid, values })
    }

    pub fn from_values(
        x: PointBall,
        s_grid: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self, SphericalMeansError> {
        if s_grid.len() != values.len() {
            return Err(SphericalMeansError::LengthMismatch {
                left: s_grid.len(),
                right: values.len(),
            });
        }
        if s_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SphericalMeansError::BadGrid);
        }
        Ok(MeanProfile { x, s_grid, values })
    }

    pub fn center(&self) -> &PointBall {
        &self.x
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn uniform_step(&self) -> Result<f64, SphericalMeansError> {
        let h = self.s_grid[1] - self.s_grid[0];
        for w in self.s_grid.windows(2) {
            if ((w[1] - w[0]) - h).abs() > 1e-9 * h {
                return Err(SphericalMeansError::BadGrid);
            }
        }
        Ok(h)
    }
}

/// Maximum interior residual of the radial equation
/// F'' + (n−1) coth(s) F' − κ(n,k) F = 0 over a uniform grid, normalized by
/// max |F| plus a machine floor. Kernel-member mean profiles solve this
/// exactly; for k = 1 the equation degenerates and accepts constants.
pub fn ode_residual(profile: &MeanProfile, n: usize, k: u32) -> Result<f64, SphericalMeansError> {
    ode_residual_impl(profile, n, k, false)
}

/// The same residual pushed through the change of variable z = −sinh² s into
/// the hypergeometric form −4z(1−z)F_zz − 2{n−(n+1)z}F_z − κF; an algebraic
/// cross-check of [`ode_residual`].
pub fn ode_residual_hypergeometric_form(
    profile: &MeanProfile,
    n: usize,
    k: u32,
) -> Result<f64, SphericalMeansError> {
    ode_residual_impl(profile, n, k, true)
}

fn ode_residual_impl(
    profile: &MeanProfile,
    n: usize,
    k: u32,
    z_form: bool,
) -> Result<f64, SphericalMeansError> {
    let len = profile.values.len();
    if len < 5 {
        return Err(SphericalMeansError::GridTooShort { len, need: 5 });
    }
    let h = profile.uniform_step()?;
    let kappa = eigen_shift(n, k) as f64;
    let nf = n as f64;
    let values = &profile.values;
    let mut max_resid = 0.0f64;
    let mut max_value = 0.0f64;
    for v in values {
        max_value = max_value.max(v.abs());
    }
    for idx in 2..len - 2 {
        let s = profile.s_grid[idx];
        let d1 = (-values[idx + 2] + 8.0 * values[idx + 1] - 8.0 * values[idx - 1]
            + values[idx - 2])
            / (12.0 * h);
        let d2 = (-values[idx + 2] + 16.0 * values[idx + 1] - 30.0 * values[idx]
            + 16.0 * values[idx - 1]
            - values[idx - 2])
            / (12.0 * h * h);
        let resid = if z_form {
            let z = -(s.sinh() * s.sinh());
            let z_s = -(2.0 * s).sinh();
            let z_ss = -2.0 * (2.0 * s).cosh();
            let f_z = d1 / z_s;
            let f_zz = (d2 - f_z * z_ss) / (z_s * z_s);
            -4.0 * z * (1.0 - z) * f_zz - 2.0 * (nf - (nf + 1.0) * z) * f_z
                - kappa * values[idx]
        } else {
            d2 + (nf - 1.0) / s.tanh() * d1 - kappa * values[idx]
        };
        max_resid = max_resid.max(resid.abs());
    }
    Ok(max_resid / (max_value + f64::EPSILON))
}

/// Indicial exponents of the radial equation at infinity: the roots of
/// x² − ((n−1)/2)x − κ(n,k)/4 = 0 sorted α >= β, with ν = α − β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicialExponents {
    pub n: usize,
    pub k: u32,
    pub alpha: f64,
    pub beta: f64,
    pub nu: f64,
}

pub fn indicial_exponents(n: usize, k: u32) -> IndicialExponents {
    assert!(k >= 1, "indicial exponents are defined for k >= 1");
    let b = (n as f64 - 1.0) / 2.0;
    let kappa = eigen_shift(n, k) as f64;
    // The discriminant b² + κ is the perfect square ((n + 2k − 3)/2)².
    let nu = (b * b + kappa).sqrt();
    IndicialExponents {
        n,
        k,
        alpha: (b + nu) / 2.0,
        beta: (b - nu) / 2.0,
        nu,
    }
}

/// Least-squares slope of log |values| against s. Errors on windows shorter
/// than 5 samples or exact zeros (absolute values are taken).
pub fn fit_log_slope(s: &[f64], values: &[f64]) -> Result<f64, SphericalMeansError> {
    if s.len() != values.len() {
        return Err(SphericalMeansError::LengthMismatch {
            left: s.len(),
            right: values.len(),
        });
    }
    if s.len() < 5 {
        return Err(SphericalMeansError::GridTooShort {
            len: s.len(),
            need: 5,
        });
    }
    let mut logs = Vec::with_capacity(values.len());
    for (index, v) in values.iter().enumerate() {
        if *v == 0.0 {
            return Err(SphericalMeansError::ZeroSample { index });
        }
        logs.push(v.abs().ln());
    }
    let s_mean = s.iter().sum::<f64>() / s.len() as f64;
    let y_mean = logs.iter().sum::<f64>() / logs.len() as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (si, yi) in s.iter().zip(&logs) {
        num += (si - s_mean) * (yi - y_mean);
        den += (si - s_mean) * (si - s_mean);
    }
    Ok(num / den)
}

/// Decay slope of a radial profile along geodesic radius: the least-squares
/// slope of log |a(tanh(s/2))| over the window. For the kernel member
/// (n, k, i) the asymptotic slope is −(n+i−2).
pub fn decay_fit_profile(a: &RhoProfile, s_window: &[f64]) -> Result<f64, SphericalMeansError> {
    let values: Vec<f64> = s_window.iter().map(|s| a.eval((s / 2.0).tanh())).collect();
    fit_log_slope(s_window, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Constant;

    #[test]
    fn circle_rule_basics() {
        let rule = build_rule(2, 64).unwrap();
        assert_eq!(rule.len(), 64);
        assert!((rule.weight_sum() - std::f64::consts::TAU).abs() < 1e-13);
        assert_eq!(rule.exactness(), 63);
        // Trapezoid kills every nonconstant harmonic below the exactness cap.
        for k in 1..=63usize {
            let mut acc_c = 0.0;
            let mut acc_s = 0.0;
            for (node, w) in rule.nodes().iter().zip(rule.weights()) {
                let theta = node[1].atan2(node[0]);
                acc_c += w * (k as f64 * theta).cos();
                acc_s += w * (k as f64 * theta).sin();
            }
            assert!(acc_c.abs() < 1e-12, "cos {k}: {acc_c:e}");
            assert!(acc_s.abs() < 1e-12, "sin {k}: {acc_s:e}");
        }
    }

    #[test]
    fn sphere_rule_basics() {
        let rule = build_rule(3, 24).unwrap();
        assert_eq!(rule.len(), 24 * 48);
        assert!((rule.weight_sum() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(rule.exactness(), 47);
        assert!(build_rule(4, 10).is_err());
        assert!(build_rule(3, 2).is_err());
    }

    #[test]
    fn gauss_legendre_small_orders() {
        // Reference nodes for q = 2 and q = 3.
        let (n2, w2) = gauss_legendre(2);
        assert!((n2[0] + 1.0 / 3.0f64.sqrt()).abs() < 1e-14);
        assert!((n2[1] - 1.0 / 3.0f64.sqrt()).abs() < 1e-14);
        assert!((w2[0] - 1.0).abs() < 1e-14);
        let (n3, w3) = gauss_legendre(3);
        assert!(n3[1].abs() < 1e-14);
        assert!((n3[2] - (3.0f64 / 5.0).sqrt()).abs() < 1e-14);
        assert!((w3[1] - 8.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_rule_integrates_zonal_harmonics() {
        // Legendre polynomials of the polar angle around a tilted axis are
        // degree-k spherical harmonics; their integrals over S² vanish.
        let rule = build_rule(3, 24).unwrap();
        let axes = [
            [0.0, 0.0, 1.0],
            [0.6, 0.8, 0.0],
            [0.36, -0.48, 0.8],
            [-0.624, 0.274, 0.7317784823908599],
        ];
        for axis in axes {
            let norm = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
            for k in 1..=20usize {
                let mut acc = 0.0;
                for (node, w) in rule.nodes().iter().zip(rule.weights()) {
                    let t = node
                        .iter()
                        .zip(axis.iter())
                        .map(|(a, b)| a * b / norm)
                        .sum::<f64>();
                    acc += w * legendre_with_derivative(k, t).0;
                }
                assert!(acc.abs() < 1e-12, "degree {k}: {acc:e}");
            }
        }
    }

    #[test]
    fn mean_of_one_is_exactly_one() {
        let rule = build_rule(2, 64).unwrap();
        let f = Constant::new(2, 1.0);
        let x = PointBall::new(vec![0.3, -0.1]).unwrap();
        assert_eq!(mean(&f, &x, 1.2, &rule).unwrap(), 1.0);
    }

    #[test]
    fn mean_rejects_bad_radius() {
        let rule = build_rule(2, 16).unwrap();
        let f = Constant::new(2, 1.0);
        let x = PointBall::origin(2);
        assert!(matches!(
            mean(&f, &x, 0.0, &rule),
            Err(SphericalMeansError::NonPositiveRadius { .. })
        ));
    }

    #[test]
    fn indicial_examples() {
        // k = 1 collapses to the degenerate pair {0, (n−1)/2}.
        let e = indicial_exponents(2, 1);
        assert_eq!((e.alpha, e.beta), (0.5, 0.0));
        let e = indicial_exponents(2, 2);
        assert_eq!((e.alpha, e.beta, e.nu), (1.0, -0.5, 1.5));
        // ν = (n + 2k − 3)/2 lands on an integer for odd n.
        let e = indicial_exponents(3, 1);
        assert_eq!(e.nu, 1.0);
        for n in 2..=5usize {
            for k in 1..=6u32 {
                let e = indicial_exponents(n, k);
                assert!((e.alpha + e.beta - (n as f64 - 1.0) / 2.0).abs() < 1e-12);
                assert!(
                    (e.alpha * e.beta + eigen_shift(n, k) as f64 / 4.0).abs() < 1e-12
                );
                assert!((e.nu - (n as f64 + 2.0 * k as f64 - 3.0) / 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn log_slope_of_constants_is_zero() {
        let s: Vec<f64> = (0..10).map(|i| 3.0 + 0.3 * i as f64).collect();
        let v = vec![2.5; 10];
        assert!(fit_log_slope(&s, &v).unwrap().abs() < 1e-15);
        let with_zero = vec![1.0, 1.0, 0.0, 1.0, 1.0];
        assert!(matches!(
            fit_log_slope(&s[..5], &with_zero),
            Err(SphericalMeansError::ZeroSample { index: 2 })
        ));
        assert!(fit_log_slope(&s[..4], &v[..4]).is_err());
    }

    #[test]
    fn ode_residual_trivial_cases() {
        // F ≡ 0 and, for k = 1, F ≡ c solve the radial equation exactly.
        let grid: Vec<f64> = (0..41).map(|i| 1.5 + 0.05 * i as f64).collect();
        let zeros = MeanProfile::from_values(PointBall::origin(2), grid.clone(), vec![0.0; 41])
            .unwrap();
        assert_eq!(ode_residual(&zeros, 2, 2).unwrap(), 0.0);
        let consts =
            MeanProfile::from_values(PointBall::origin(2), grid, vec![0.7; 41]).unwrap();
        assert!(ode_residual(&consts, 2, 1).unwrap() < 1e-12);
    }

    #[test]
    fn ode_residual_needs_uniform_grid() {
        let grid = vec![1.0, 1.1, 1.25, 1.3, 1.4];
        let p = MeanProfile::from_values(PointBall::origin(2), grid, vec![1.0; 5]).unwrap();
        assert!(matches!(
            ode_residual(&p, 2, 1),
            Err(SphericalMeansError::BadGrid)
        ));
        let short = MeanProfile::from_values(
            PointBall::origin(2),
            vec![1.0, 1.1, 1.2, 1.3],
            vec![1.0; 4],
        )
        .unwrap();
        assert!(matches!(
            ode_residual(&short, 2, 1),
            Err(SphericalMeansError::GridTooShort { .. })
        ));
    }
}
