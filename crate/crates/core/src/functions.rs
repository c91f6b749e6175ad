//! Structured functions on the ball with analytic derivatives.
//!
//! The verification suites evaluate spherical means of functions declared
//! structurally: a radial Laurent profile times a solid harmonic, finite
//! sums of those, radial functions of geodesic distance, compactly
//! supported bumps, and pullbacks along isometries. Closed-form inputs
//! carry analytic gradients and an analytic hyperbolic Laplacian; anything
//! else falls back to central differences with one Richardson step.

use crate::ball_geometry::AnnulusSpec;
use crate::harmonics::SolidHarmonic;
use crate::lorentz_group::LorentzMatrix;
use crate::radial_calculus::RhoProfile;

/// A scalar function on (a subdomain of) the Poincaré ball.
pub trait BallFunction: Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> f64;

    /// Whether the function is defined (and smooth) at the point. Quadrature
    /// refuses to average functions over spheres leaving this set.
    fn in_domain(&self, _x: &[f64]) -> bool {
        true
    }

    /// Euclidean gradient. The fallback uses central differences with step
    /// h = 1e-5·(1−|x|) and one Richardson extrapolation.
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let rho = norm(x);
        let h = 1e-5 * (1.0 - rho);
        let mut grad = vec![0.0; x.len()];
        let mut probe = x.to_vec();
        for i in 0..x.len() {
            let d_at = |step: f64, probe: &mut Vec<f64>| {
                probe[i] = x[i] + step;
                let plus = self.eval(probe);
                probe[i] = x[i] - step;
                let minus = self.eval(probe);
                probe[i] = x[i];
                (plus - minus) / (2.0 * step)
            };
            let coarse = d_at(h, &mut probe);
            let fine = d_at(h / 2.0, &mut probe);
            grad[i] = (4.0 * fine - coarse) / 3.0;
        }
        grad
    }

    /// The Laplace–Beltrami operator of the ball metric, expanded as
    /// ((1−ρ²)²/4)·Δf + ((n−2)(1−ρ²)/2)·x·∇f.
    fn hyperbolic_laplacian(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let rho_sq: f64 = x.iter().map(|c| c * c).sum();
        let h = 1e-4 * (1.0 - rho_sq.sqrt());
        let center = self.eval(x);
        let mut flat = 0.0;
        let mut probe = x.to_vec();
        for i in 0..n {
            probe[i] = x[i] + h;
            let plus = self.eval(&probe);
            probe[i] = x[i] - h;
            let minus = self.eval(&probe);
            probe[i] = x[i];
            flat += (plus - 2.0 * center + minus) / (h * h);
        }
        let grad = self.gradient(x);
        let radial: f64 = x.iter().zip(&grad).map(|(a, b)| a * b).sum();
        let one_minus = 1.0 - rho_sq;
        one_minus * one_minus / 4.0 * flat + (n as f64 - 2.0) * one_minus / 2.0 * radial
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Laurent profile compiled to float coefficients for hot evaluation loops.
#[derive(Debug, Clone)]
struct CompiledProfile {
    terms: Vec<(i32, f64)>,
    min_exponent: i64,
}

impl CompiledProfile {
    fn new(profile: &RhoProfile) -> Self {
        CompiledProfile {
            terms: profile
                .terms()
                .map(|(e, c)| (*e as i32, crate::exact::to_f64(c)))
                .collect(),
            min_exponent: profile.min_exponent().unwrap_or(0),
        }
    }

    fn eval(&self, rho: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * rho.powi(*e))
            .sum::<f64>()
    }
}

#[derive(Debug, Clone)]
struct CompiledPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl CompiledPoly {
    fn new(poly: &crate::harmonics::MultiPoly) -> Self {
        CompiledPoly {
            terms: poly
                .terms()
                .map(|(e, c)| (e.clone(), crate::exact::to_f64(c)))
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (exps, c) in &self.terms {
            let mut term = *c;
            for (xi, ei) in x.iter().zip(exps) {
                term *= xi.powi(*ei as i32);
            }
            acc += term;
        }
        acc
    }
}

/// f(x) = ã(ρ)·P(x) with ã = a(ρ)·ρ^{−k}, for a solid harmonic P of degree
/// k and a Laurent profile a. With the orthonormal scaling this is the
/// separated function a(ρ)·Y(ω) of a harmonic expansion.
pub struct SeparatedFn {
    n: usize,
    degree: u32,
    scale: f64,
    tilde: CompiledProfile,
    tilde_d1: CompiledProfile,
    tilde_d2: CompiledProfile,
    poly: CompiledPoly,
    partials: Vec<CompiledPoly>,
}

impl SeparatedFn {
    /// f(x) = a(ρ)·Y(ω) with Y the L²-normalized restriction of `harmonic`.
    pub fn orthonormal(profile: RhoProfile, harmonic: &SolidHarmonic) -> Self {
        let scale = 1.0 / harmonic.normalizer();
        Self::build(profile, harmonic, scale)
    }

    /// f(x) = ρ^{−k}·a(ρ)·P(x) with the raw (unnormalized) polynomial.
    pub fn raw(profile: RhoProfile, harmonic: &SolidHarmonic) -> Self {
        Self::build(profile, harmonic, 1.0)
    }

    fn build(profile: RhoProfile, harmonic: &SolidHarmonic, scale: f64) -> Self {
        let n = harmonic.nvars();
        let k = harmonic.degree();
        let tilde = profile.shift(-(k as i64));
        let d1 = tilde.derivative();
        let d2 = d1.derivative();
        let partials = (1..=n)
            .map(|p| CompiledPoly::new(&harmonic.poly().partial(p)))
            .collect();
        SeparatedFn {
            n,
            degree: k,
            scale,
            tilde: CompiledProfile::new(&tilde),
            tilde_d1: CompiledProfile::new(&d1),
            tilde_d2: CompiledProfile::new(&d2),
            poly: CompiledPoly::new(harmonic.poly()),
            partials,
        }
    }

    fn singular_at_origin(&self) -> bool {
        self.tilde.min_exponent < 0
    }
}

impl BallFunction for SeparatedFn {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let rho = norm(x);
        self.scale * self.tilde.eval(rho) * self.poly.eval(x)
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        !self.singular_at_origin() || norm(x) > 0.0
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let rho = norm(x);
        if rho == 0.0 {
            // Smooth profiles only; the radial factor is constant to first order.
            let t = self.tilde.eval(0.0);
            return self
                .partials
                .iter()
                .map(|dp| self.scale * t * dp.eval(x))
                .collect();
        }
        let t = self.tilde.eval(rho);
        let td = self.tilde_d1.eval(rho);
        let p = self.poly.eval(x);
        (0..self.n)
            .map(|i| self.scale * (td * x[i] / rho * p + t * self.partials[i].eval(x)))
            .collect()
    }

    fn hyperbolic_laplacian(&self, x: &[f64]) -> f64 {
        // For f = ã(ρ)P with ΔP = 0 and x·∇P = kP:
        //   Δf = (ã'' + (n−1+2k) ã'/ρ)·P,  x·∇f = (ρ ã' + k ã)·P.
        let rho = norm(x);
        let p = self.poly.eval(x);
        let t = self.tilde.eval(rho);
        let td = self.tilde_d1.eval(rho);
        let tdd = self.tilde_d2.eval(rho);
        let n = self.n as f64;
        let k = self.degree as f64;
        let one_minus = 1.0 - rho * rho;
        let flat = (tdd + (n - 1.0 + 2.0 * k) * td / rho) * p;
        let radial = (rho * td + k * t) * p;
        self.scale * (one_minus * one_minus / 4.0 * flat + (n - 2.0) * one_minus / 2.0 * radial)
    }
}

/// A finite harmonic expansion Σ a_{kj}(ρ) Y_{kj}(ω).
pub struct HarmonicSum {
    n: usize,
    terms: Vec<SeparatedFn>,
}

impl HarmonicSum {
    pub fn new(terms: Vec<SeparatedFn>) -> Self {
        assert!(!terms.is_empty(), "empty sums have no dimension");
        let n = terms[0].n;
        assert!(terms.iter().all(|t| t.n == n));
        HarmonicSum { n, terms }
    }
}

impl BallFunction for HarmonicSum {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        self.terms.iter().all(|t| t.in_domain(x))
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut grad = vec![0.0; self.n];
        for t in &self.terms {
            for (g, d) in grad.iter_mut().zip(t.gradient(x)) {
                *g += d;
            }
        }
        grad
    }

    fn hyperbolic_laplacian(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.hyperbolic_laplacian(x)).sum()
    }
}

/// A radial function g(d(0, x)) of the geodesic distance to the origin.
pub struct RadialGeodesic {
    n: usize,
    g: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RadialGeodesic {
    pub fn new(n: usize, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RadialGeodesic { n, g: Box::new(g) }
    }

    fn profile(&self, d: f64) -> f64 {
        (self.g)(d)
    }
}

impl BallFunction for RadialGeodesic {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.profile(2.0 * norm(x).atanh())
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let rho = norm(x);
        if rho == 0.0 {
            return vec![0.0; self.n];
        }
        let d = 2.0 * rho.atanh();
        let h = 1e-6;
        let gd = (self.profile(d + h) - self.profile(d - h)) / (2.0 * h);
        let factor = gd * 2.0 / (1.0 - rho * rho) / rho;
        x.iter().map(|c| c * factor).collect()
    }

    fn hyperbolic_laplacian(&self, x: &[f64]) -> f64 {
        // Radial part of the operator: g'' (d) + (n−1) coth(d) g'(d).
        let rho = norm(x);
        let d = 2.0 * rho.atanh();
        let h = 1e-5;
        let g0 = self.profile(d);
        let gp = (self.profile(d + h) - self.profile(d - h)) / (2.0 * h);
        let gpp = (self.profile(d + h) - 2.0 * g0 + self.profile(d - h)) / (h * h);
        gpp + (self.n as f64 - 1.0) / d.tanh() * gp
    }
}

/// Smooth bump supported in the closed geodesic ball of the given radius:
/// exp(1 − 1/(1 − (d/r)²)) inside, identically zero outside.
pub struct GeodesicBump {
    n: usize,
    support_radius: f64,
}

impl GeodesicBump {
    pub fn new(n: usize, support_radius: f64) -> Self {
        assert!(support_radius > 0.0);
        GeodesicBump { n, support_radius }
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }
}

impl BallFunction for GeodesicBump {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let d = 2.0 * norm(x).atanh();
        let t = d / self.support_radius;
        if t >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - t * t)).exp()
        }
    }
}

/// A constant function (the k = 0 edge of the harmonic families).
pub struct Constant {
    n: usize,
    value: f64,
}

impl Constant {
    pub fn new(n: usize, value: f64) -> Self {
        Constant { n, value }
    }
}

impl BallFunction for Constant {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, _x: &[f64]) -> f64 {
        self.value
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        vec![0.0; x.len()]
    }

    fn hyperbolic_laplacian(&self, _x: &[f64]) -> f64 {
        0.0
    }
}

/// The pullback x ↦ f(g·x) of a function along an isometry.
pub struct Pullback<'a> {
    g: LorentzMatrix,
    inner: &'a dyn BallFunction,
}

impl<'a> Pullback<'a> {
    pub fn new(g: LorentzMatrix, inner: &'a dyn BallFunction) -> Self {
        assert_eq!(g.dim(), inner.dim());
        Pullback { g, inner }
    }
}

impl BallFunction for Pullback<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.inner.eval(&self.g.apply_coords(x))
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        self.inner.in_domain(&self.g.apply_coords(x))
    }
}

/// Restriction of a function to a geodesic annulus; points outside are
/// treated as outside the domain.
pub struct DomainWindow<'a> {
    inner: &'a dyn BallFunction,
    annulus: AnnulusSpec,
}

impl<'a> DomainWindow<'a> {
    pub fn new(inner: &'a dyn BallFunction, annulus: AnnulusSpec) -> Self {
        DomainWindow { inner, annulus }
    }
}

impl BallFunction for DomainWindow<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.inner.eval(x)
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        let d = 2.0 * norm(x).atanh();
        self.annulus.contains_geodesic(d) && self.inner.in_domain(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.inner.gradient(x)
    }

    fn hyperbolic_laplacian(&self, x: &[f64]) -> f64 {
        self.inner.hyperbolic_laplacian(x)
    }
}
