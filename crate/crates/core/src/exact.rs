//! Small helpers for exact big-rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient as an exact integer, with C(n, k) = 0 for k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Double factorial m!! with the conventions (-1)!! = 0!! = 1.
pub fn double_factorial(m: i64) -> BigInt {
    if m <= 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::one();
    let mut j = m;
    while j > 1 {
        acc *= BigInt::from(j);
        j -= 2;
    }
    acc
}

/// Surface area of the unit sphere S^{n-1} in R^n.
pub fn sphere_area(n: usize) -> f64 {
    assert!(n >= 1, "sphere_area requires n >= 1");
    // Ω_n = 2 π^{n/2} / Γ(n/2), evaluated through the half-integer gamma values.
    let gamma_half = if n.is_multiple_of(2) {
        // Γ(m) = (m-1)!
        let m = n / 2;
        (1..m).map(|j| j as f64).product::<f64>()
    } else {
        // Γ(m + 1/2) = (2m)! √π / (4^m m!)
        let m = (n - 1) / 2;
        let mut acc = std::f64::consts::PI.sqrt();
        for j in 0..m {
            acc *= j as f64 + 0.5;
        }
        acc
    };
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half
}

/// Closest dyadic rational with the given number of fractional bits; the
/// bridge for carrying floating-point vectors back into exact profiles.
pub fn dyadic(v: f64, bits: u32) -> Rational {
    assert!(bits <= 62 && v.is_finite());
    let scale = (1i64 << bits) as f64;
    Rational::new(BigInt::from((v * scale).round() as i64), BigInt::from(1i64 << bits))
}

/// Lossy conversion used only at the floating-point evaluation boundary.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::one());
        assert_eq!(binomial(3, 7), BigInt::zero());
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
    }

    #[test]
    fn sphere_areas() {
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((sphere_area(2) - two_pi).abs() < 1e-14);
        assert!((sphere_area(3) - 2.0 * two_pi).abs() < 1e-13);
        // Ω_4 = 2π², Ω_5 = 8π²/3
        assert!((sphere_area(4) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert!((sphere_area(5) - 8.0 * std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-12);
    }
}
