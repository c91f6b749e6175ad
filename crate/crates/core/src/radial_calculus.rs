//! Exact Laurent-polynomial calculus in the radial variable ρ = |x|.
//!
//! The central object is the one-parameter family of first-order ladder
//! operators
//!
//! ```text
//! A_m = (1−ρ²) d/dρ − m (1+ρ²)/ρ,
//! ```
//!
//! equivalently A_m f = ρ^m (1−ρ²)^{1−m} d/dρ[ ((1/ρ) − ρ)^m f ]. Applied to
//! a separated function a(ρ)Y_k(ω) the operator shifts the harmonic degree,
//! and it maps the kernel family of radial profiles
//!
//! ```text
//! member(n, k, i) = (1−ρ²)^{n+i−2} / ρ^{n+k−2},   1 <= i <= k,
//! ```
//!
//! down the degree ladder: A_{2−k−n} member(n,k,i) = 2(k−i)·member(n,k−1,i),
//! with the i = k member annihilated. Everything here is exact: profiles are
//! Laurent polynomials over big rationals and both operator routes are
//! implemented independently and compared.

use crate::ball_geometry::PointBall;
use crate::exact::{binomial, rat_int, Rational};
use crate::functions::{BallFunction, SeparatedFn};
use crate::harmonics::{multiply_decompose, HarmonicsError, SolidHarmonic};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RadialCalculusError {
    #[error("kernel members require 1 <= i <= k, got (k, i) = ({k}, {i})")]
    MemberIndexOutOfRange { k: u32, i: u32 },
    #[error("operation requires harmonic degree k >= 1")]
    DegreeTooSmall,
    #[error("coefficient list has length {got}, expected k = {expected}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("the separated identity is singular at the origin")]
    OriginSingular,
    #[error(transparent)]
    Harmonics(#[from] HarmonicsError),
}

/// Failure report from the exact ladder-descent verification.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderMismatch {
    pub n: usize,
    pub k: u32,
    pub i: u32,
    pub got: RhoProfile,
    pub expected: RhoProfile,
}

/// A Laurent polynomial in ρ with exact rational coefficients, canonical
/// (no zero coefficients stored). Evaluation is defined on ρ ∈ (0, 1); a
/// profile without negative exponents also evaluates at ρ = 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RhoProfile {
    terms: BTreeMap<i64, Rational>,
}

impl RhoProfile {
    pub fn zero() -> Self {
        RhoProfile::default()
    }

    pub fn monomial(exponent: i64, coeff: Rational) -> Self {
        let mut p = RhoProfile::zero();
        p.insert(exponent, coeff);
        p
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, Rational)>>(pairs: I) -> Self {
        let mut p = RhoProfile::zero();
        for (e, c) in pairs {
            p.insert(e, c);
        }
        p
    }

    fn insert(&mut self, exponent: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, rhs: &RhoProfile) -> RhoProfile {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &RhoProfile) -> RhoProfile {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> RhoProfile {
        RhoProfile {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RhoProfile {
        if c.is_zero() {
            return RhoProfile::zero();
        }
        RhoProfile {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> RhoProfile {
        self.scale(&rat_int(c))
    }

    /// Multiplication by ρ^shift.
    pub fn shift(&self, shift: i64) -> RhoProfile {
        RhoProfile {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &RhoProfile) -> RhoProfile {
        let mut out = RhoProfile::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// d/dρ, exactly.
    pub fn derivative(&self) -> RhoProfile {
        let mut out = RhoProfile::zero();
        for (e, c) in &self.terms {
            if *e != 0 {
                out.insert(e - 1, c.clone() * rat_int(*e));
            }
        }
        out
    }

    /// Exact quotient by (1 − ρ²); panics if the division leaves a remainder.
    fn divide_by_one_minus_rho_sq(&self) -> RhoProfile {
        if self.is_zero() {
            return RhoProfile::zero();
        }
        // Process ascending exponents: the lowest term c·ρ^e must come from
        // quotient term c·ρ^e, which also contributes −c·ρ^{e+2}.
        let bound = self.max_exponent().expect("nonzero profile") ;
        let mut rem = self.clone();
        let mut quot = RhoProfile::zero();
        while let Some((&e, c)) = rem.terms.iter().next() {
            assert!(e <= bound, "division by (1 - rho^2) left a remainder");
            let c = c.clone();
            quot.insert(e, c.clone());
            rem.insert(e, -c.clone());
            rem.insert(e + 2, c);
        }
        quot
    }

    /// (1 − ρ²)^m as a profile.
    pub fn one_minus_rho_sq_pow(m: u32) -> RhoProfile {
        let mut p = RhoProfile::zero();
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer(binomial(m as u64, j as u64)) * rat_int(sign);
            p.insert(2 * j as i64, c);
        }
        p
    }

    pub fn eval(&self, rho: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| crate::exact::to_f64(c) * rho.powi(*e as i32))
            .sum()
    }
}

/// The ladder operator in its expanded first-order form:
/// A_m a = (1−ρ²) a' − m (1+ρ²) ρ⁻¹ a.
///
/// Debug builds assert exact agreement with the definition route on every
/// application.
pub fn ladder_apply(m: i64, a: &RhoProfile) -> RhoProfile {
    let d = a.derivative();
    let first = d.sub(&d.shift(2));
    let second = a.shift(-1).add(&a.shift(1)).scale_int(m);
    let out = first.sub(&second);
    debug_assert_eq!(out, ladder_apply_from_definition(m, a));
    out
}

/// The ladder operator evaluated literally from its definition
/// A_m a = ρ^m (1−ρ²)^{1−m} d/dρ[ ((1/ρ) − ρ)^m a ], carried through an
/// intermediate rational-function layer with denominator (1−ρ²)^e and
/// finished by exact polynomial division. Independent of [`ladder_apply`].
pub fn ladder_apply_from_definition(m: i64, a: &RhoProfile) -> RhoProfile {
    // ((1/ρ) − ρ)^m · a = N / (1−ρ²)^e with
    //   m >= 0: N = a·(1−ρ²)^m·ρ^{−m}, e = 0
    //   m <  0: N = a·ρ^{−m},          e = −m
    let (numer, e) = if m >= 0 {
        (
            a.mul(&RhoProfile::one_minus_rho_sq_pow(m as u32)).shift(-m),
            0i64,
        )
    } else {
        (a.shift(-m), -m)
    };
    // d/dρ [N/(1−ρ²)^e] = [N'(1−ρ²) + 2eρN] / (1−ρ²)^{e+1}
    let deriv_num = {
        let nd = numer.derivative();
        nd.sub(&nd.shift(2)).add(&numer.shift(1).scale_int(2 * e))
    };
    // Multiply by ρ^m (1−ρ²)^{1−m}: net denominator power e + m (>= 0).
    let mut out = deriv_num.shift(m);
    let mut denom_pow = e + m;
    debug_assert!(denom_pow >= 0);
    while denom_pow > 0 {
        out = out.divide_by_one_minus_rho_sq();
        denom_pow -= 1;
    }
    out
}

/// Kernel family member (1−ρ²)^{n+i−2} / ρ^{n+k−2}, expanded exactly.
///
/// These radial profiles, attached to a degree-k spherical harmonic, are
/// precisely the separated functions whose means over admissible spheres
/// vanish.
pub fn kernel_member(n: usize, k: u32, i: u32) -> Result<RhoProfile, RadialCalculusError> {
    if i < 1 || i > k {
        return Err(RadialCalculusError::MemberIndexOutOfRange { k, i });
    }
    let power = (n as u32) + i - 2;
    let shift = -((n as i64) + (k as i64) - 2);
    Ok(RhoProfile::one_minus_rho_sq_pow(power).shift(shift))
}

/// A kernel-family element Σ_{i=1..k} C_i member(n, k, i).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelProfile {
    n: usize,
    k: u32,
    coeffs: Vec<Rational>,
}

impl KernelProfile {
    pub fn new(n: usize, k: u32, coeffs: Vec<Rational>) -> Result<Self, RadialCalculusError> {
        if coeffs.len() != k as usize {
            return Err(RadialCalculusError::CoefficientCount {
                expected: k as usize,
                got: coeffs.len(),
            });
        }
        Ok(KernelProfile { n, k, coeffs })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact expansion as a Laurent profile.
    pub fn expand(&self) -> RhoProfile {
        let mut acc = RhoProfile::zero();
        for (idx, c) in self.coeffs.iter().enumerate() {
            let member = kernel_member(self.n, self.k, idx as u32 + 1)
                .expect("indices are in range by construction");
            acc = acc.add(&member.scale(c));
        }
        acc
    }
}

/// Exact verification that A_{2−k−n} lowers each family member:
/// A_{2−k−n} member(n,k,i) = 2(k−i)·member(n,k−1,i), the i = k member being
/// annihilated. Returns the verified factors 2(k−i) indexed by i, or the
/// first exact mismatch.
pub fn verify_ladder_descent(n: usize, k: u32) -> Result<Vec<i64>, Box<LadderMismatch>> {
    assert!(k >= 1, "the ladder starts at degree 1");
    let m = 2 - (k as i64) - (n as i64);
    let mut factors = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let member = kernel_member(n, k, i).expect("1 <= i <= k");
        let got = ladder_apply(m, &member);
        let factor = 2 * (k as i64 - i as i64);
        let expected = if i == k {
            RhoProfile::zero()
        } else {
            kernel_member(n, k - 1, i)
                .expect("i <= k - 1 here")
                .scale_int(factor)
        };
        if got != expected {
            return Err(Box::new(LadderMismatch {
                n,
                k,
                i,
                got,
                expected,
            }));
        }
        factors.push(factor);
    }
    Ok(factors)
}

/// Radial action of the degree-shifted Laplacian on a(ρ)Y_k(ω): the
/// composition A_{k−1} ∘ A_{2−k−n} applied to the profile, exactly.
pub fn shifted_laplacian_radial(n: usize, k: u32, a: &RhoProfile) -> RhoProfile {
    assert!(k >= 1, "defined for harmonic degree k >= 1");
    ladder_apply(
        k as i64 - 1,
        &ladder_apply(2 - (k as i64) - (n as i64), a),
    )
}

/// Eigen-shift constant κ(n, k) = (k−1)(n+k−2): for the annihilated member
/// a = member(n,k,k), the separated function f = a·Y_k satisfies
/// L f = κ f for the ball Laplace–Beltrami operator L.
pub fn eigen_shift(n: usize, k: u32) -> i64 {
    (k as i64 - 1) * (n as i64 + k as i64 - 2)
}

/// The boost-generator vector field applied to f at x:
/// X̃_p f = ½(1+|x|²) ∂f/∂x_p − x_p Σ_j x_j ∂f/∂x_j (1-based axis).
pub fn boost_generator_field(f: &dyn BallFunction, p: usize, x: &PointBall) -> f64 {
    assert!(p >= 1 && p <= x.dim(), "axis out of range");
    let coords = x.coords();
    let grad = f.gradient(coords);
    let rho_sq: f64 = coords.iter().map(|c| c * c).sum();
    let radial: f64 = coords.iter().zip(&grad).map(|(a, b)| a * b).sum();
    0.5 * (1.0 + rho_sq) * grad[p - 1] - coords[p - 1] * radial
}

/// Both sides of the separated-function identity behind the degree ladder.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn relative_residual(&self) -> f64 {
        self.residual() / self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }
}

/// Residual of the identity satisfied by f = ρ^{−k} a(ρ) P(x) for a solid
/// harmonic P of degree k >= 1 and axis p, with l = 2−k−n:
///
/// ```text
/// 2(k−l)·X̃_p f = (k−l)·(A_k a)(ρ)·ρ^{−k−1}·P_{k+1}(x)
///              + (A_{2−k−n} a)(ρ)·ρ^{1−k}·(∂P/∂x_p)(x),
/// ```
///
/// where P_{k+1} is the harmonic component of x_p·P. The two sides are
/// evaluated along independent paths: the left through the vector field
/// acting on the separated function's analytic gradient, the right through
/// the exact ladder profiles and polynomial evaluations.
pub fn separated_identity_check(
    a: &RhoProfile,
    harmonic: &SolidHarmonic,
    p: usize,
    x: &PointBall,
) -> Result<IdentityCheck, RadialCalculusError> {
    let n = harmonic.nvars();
    let k = harmonic.degree();
    if k < 1 {
        return Err(RadialCalculusError::DegreeTooSmall);
    }
    let rho = x.rho();
    if rho == 0.0 {
        return Err(RadialCalculusError::OriginSingular);
    }
    let l = 2 - (k as i64) - (n as i64);
    let k_minus_l = (k as i64 - l) as f64;

    let f = SeparatedFn::raw(a.clone(), harmonic);
    let lhs = 2.0 * k_minus_l * boost_generator_field(&f, p, x);

    let (p_next, _witness) = multiply_decompose(harmonic, p)?;
    let raised = ladder_apply(k as i64, a);
    let lowered = ladder_apply(l, a);
    let coords = x.coords();
    let rhs = k_minus_l * raised.eval(rho) * rho.powi(-(k as i32) - 1) * p_next.eval_raw(coords)
        + lowered.eval(rho) * rho.powi(1 - k as i32) * harmonic.poly().partial(p).eval(coords);

    Ok(IdentityCheck { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::harmonics::{basis, MultiPoly};
    use proptest::prelude::*;

    fn profile(pairs: &[(i64, i64, i64)]) -> RhoProfile {
        RhoProfile::from_pairs(pairs.iter().map(|(e, n, d)| (*e, rat(*n, *d))))
    }

    #[test]
    fn ladder_zero_order_is_scaled_derivative() {
        // A₀(ρ²) = (1−ρ²)·2ρ = 2ρ − 2ρ³.
        let out = ladder_apply(0, &profile(&[(2, 1, 1)]));
        assert_eq!(out, profile(&[(1, 2, 1), (3, -2, 1)]));
    }

    #[test]
    fn base_member_is_annihilated_for_all_dimensions() {
        // A_{1−n} (1/ρ − ρ)^{n−1} = 0, the k = 1 kernel equation.
        for n in 2..=6usize {
            let member = kernel_member(n, 1, 1).unwrap();
            assert!(ladder_apply(1 - n as i64, &member).is_zero(), "n = {n}");
            assert!(ladder_apply_from_definition(1 - n as i64, &member).is_zero());
        }
    }

    #[test]
    fn descent_example_in_two_dimensions() {
        // n = 2, k = 2, i = 1: A_{−2} (1−ρ²)/ρ² = 2(1−ρ²)/ρ.
        let member = kernel_member(2, 2, 1).unwrap();
        let got = ladder_apply(-2, &member);
        let expected = kernel_member(2, 1, 1).unwrap().scale_int(2);
        assert_eq!(got, expected);
    }

    #[test]
    fn ladder_descent_verified_exactly() {
        for n in 2..=5usize {
            for k in 1..=6u32 {
                let factors = verify_ladder_descent(n, k).unwrap();
                let expected: Vec<i64> = (1..=k).map(|i| 2 * (k as i64 - i as i64)).collect();
                assert_eq!(factors, expected);
            }
        }
    }

    #[test]
    fn shifted_laplacian_annihilates_top_member() {
        for n in [2usize, 3, 4] {
            for k in 1..=5u32 {
                let member = kernel_member(n, k, k).unwrap();
                assert!(
                    shifted_laplacian_radial(n, k, &member).is_zero(),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn shifted_laplacian_is_linear() {
        let a = profile(&[(-3, 1, 2), (0, -1, 1), (4, 5, 3)]);
        let b = profile(&[(-1, 2, 7), (2, 1, 1)]);
        let sum = shifted_laplacian_radial(3, 2, &a.add(&b));
        let parts = shifted_laplacian_radial(3, 2, &a).add(&shifted_laplacian_radial(3, 2, &b));
        assert_eq!(sum, parts);
    }

    #[test]
    fn kernel_member_expansion_matches_closed_form() {
        // (1−ρ²)/ρ² = ρ⁻² − 1 at n = 2, k = 2, i = 1.
        assert_eq!(
            kernel_member(2, 2, 1).unwrap(),
            profile(&[(-2, 1, 1), (0, -1, 1)])
        );
        assert!(kernel_member(2, 2, 3).is_err());
        assert!(kernel_member(2, 2, 0).is_err());
    }

    #[test]
    fn kernel_profile_expands_linear_combinations() {
        let kp = KernelProfile::new(2, 2, vec![rat(3, 1), rat(-1, 2)]).unwrap();
        let direct = kernel_member(2, 2, 1)
            .unwrap()
            .scale(&rat(3, 1))
            .add(&kernel_member(2, 2, 2).unwrap().scale(&rat(-1, 2)));
        assert_eq!(kp.expand(), direct);
        assert!(KernelProfile::new(2, 2, vec![rat(1, 1)]).is_err());
    }

    #[test]
    fn division_by_one_minus_rho_sq_roundtrips() {
        let a = profile(&[(-2, 3, 1), (1, -1, 4), (5, 2, 1)]);
        let product = a.mul(&RhoProfile::one_minus_rho_sq_pow(1));
        assert_eq!(product.divide_by_one_minus_rho_sq(), a);
    }

    #[test]
    fn field_on_constants_vanishes() {
        let f = crate::functions::Constant::new(3, 1.0);
        let x = PointBall::new(vec![0.3, -0.2, 0.1]).unwrap();
        for p in 1..=3 {
            assert_eq!(boost_generator_field(&f, p, &x), 0.0);
        }
    }

    #[test]
    fn field_on_coordinate_function() {
        // f = x_p gives X̃_p f = ½(1+|x|²) − x_p².
        let h = SolidHarmonic::from_poly(MultiPoly::variable(2, 1)).unwrap();
        let f = SeparatedFn::raw(RhoProfile::monomial(1, rat(1, 1)), &h);
        let x = PointBall::new(vec![0.4, -0.3]).unwrap();
        let rho_sq = 0.4f64 * 0.4 + 0.3 * 0.3;
        let got = boost_generator_field(&f, 1, &x);
        let expect = 0.5 * (1.0 + rho_sq) - 0.4 * 0.4;
        assert!((got - expect).abs() < 1e-14);
    }

    #[test]
    fn field_on_radius_squared() {
        // f = |x|² gives X̃_p f = x_p (1 − |x|²).
        let one = SolidHarmonic::from_poly(MultiPoly::constant(2, rat(1, 1))).unwrap();
        let f = SeparatedFn::raw(RhoProfile::monomial(2, rat(1, 1)), &one);
        let x = PointBall::new(vec![0.25, 0.55]).unwrap();
        let rho_sq = 0.25f64 * 0.25 + 0.55 * 0.55;
        for p in 1..=2usize {
            let got = boost_generator_field(&f, p, &x);
            let expect = x.coords()[p - 1] * (1.0 - rho_sq);
            assert!((got - expect).abs() < 1e-14, "axis {p}");
        }
    }

    #[test]
    fn separated_identity_zero_function() {
        let h = SolidHarmonic::from_poly(MultiPoly::variable(2, 1)).unwrap();
        let x = PointBall::new(vec![0.3, 0.2]).unwrap();
        let check = separated_identity_check(&RhoProfile::zero(), &h, 1, &x).unwrap();
        assert_eq!(check.lhs, 0.0);
        assert_eq!(check.rhs, 0.0);
    }

    #[test]
    fn separated_identity_rejects_origin() {
        let h = SolidHarmonic::from_poly(MultiPoly::variable(2, 1)).unwrap();
        let x = PointBall::origin(2);
        assert!(matches!(
            separated_identity_check(&RhoProfile::monomial(1, rat(1, 1)), &h, 1, &x),
            Err(RadialCalculusError::OriginSingular)
        ));
    }

    #[test]
    fn separated_identity_holds_for_kernel_and_generic_profiles() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in [2usize, 3] {
            for k in 1..=3u32 {
                let profiles = [
                    kernel_member(n, k, k).unwrap(),
                    profile(&[(4, 1, 1)]),
                    profile(&[(-2, 3, 5), (0, -1, 3), (3, 2, 1)]),
                ];
                for y in basis(n, k).unwrap() {
                    for a in &profiles {
                        for _ in 0..5 {
                            let coords: Vec<f64> =
                                (0..n).map(|_| rng.gen_range(-0.4..0.4)).collect();
                            if coords.iter().map(|c| c * c).sum::<f64>() < 1e-2 {
                                continue;
                            }
                            let x = PointBall::new(coords).unwrap();
                            for p in 1..=n {
                                let check =
                                    separated_identity_check(a, &y, p, &x).unwrap();
                                assert!(
                                    check.relative_residual() < 1e-10,
                                    "(n,k,p) = ({n},{k},{p}): {} vs {}",
                                    check.lhs,
                                    check.rhs
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        /// Both ladder routes agree exactly on arbitrary Laurent profiles.
        #[test]
        fn ladder_routes_agree(
            m in -10i64..=10,
            entries in proptest::collection::vec((-8i64..=8, -20i64..=20, 1i64..=9), 1..6)
        ) {
            let a = RhoProfile::from_pairs(
                entries.into_iter().map(|(e, num, den)| (e, rat(num, den)))
            );
            prop_assert_eq!(ladder_apply(m, &a), ladder_apply_from_definition(m, &a));
        }

        /// The ladder is linear, exactly.
        #[test]
        fn ladder_is_linear(
            m in -6i64..=6,
            ea in proptest::collection::vec((-6i64..=6, -9i64..=9, 1i64..=7), 1..5),
            eb in proptest::collection::vec((-6i64..=6, -9i64..=9, 1i64..=7), 1..5)
        ) {
            let a = RhoProfile::from_pairs(ea.into_iter().map(|(e, n, d)| (e, rat(n, d))));
            let b = RhoProfile::from_pairs(eb.into_iter().map(|(e, n, d)| (e, rat(n, d))));
            prop_assert_eq!(
                ladder_apply(m, &a.add(&b)),
                ladder_apply(m, &a).add(&ladder_apply(m, &b))
            );
        }
    }
}
