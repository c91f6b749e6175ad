//! Verification suites. Each suite runs over an
//! [`ExperimentConfig`](crate::config::ExperimentConfig) and returns a
//! [`SuiteReport`](crate::report::SuiteReport); suites are independent and
//! deterministic for a fixed configuration and seed.

pub mod algebra;
pub mod darboux;
pub mod decay;
pub mod necessity;
pub mod ode;
pub mod sufficiency;
pub mod support;

use hypermeans::exact::{rat, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic per-suite random stream.
pub(crate) fn suite_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Nonzero rational coefficient with a fixed small denominator, either from
/// the configured list (cycled) or drawn from the stream.
pub(crate) fn coefficient(
    fixed: &[i64],
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Rational {
    if fixed.is_empty() {
        let mut num = 0i64;
        while num == 0 {
            num = rng.gen_range(-99..=99);
        }
        rat(num, 16)
    } else {
        rat(fixed[index % fixed.len()], 16)
    }
}

/// Test-only re-export of [`axis_heavy_element`].
#[doc(hidden)]
pub fn axis_heavy_probe(n: usize, k: u32) -> hypermeans::harmonics::SolidHarmonic {
    axis_heavy_element(n, k).expect("valid (n, k)")
}

/// The basis element of degree k with the largest value along the first
/// axis; mean profiles centered on that axis see this component.
pub(crate) fn axis_heavy_element(
    n: usize,
    k: u32,
) -> Result<hypermeans::harmonics::SolidHarmonic, crate::HarnessError> {
    let mut e1 = vec![0.0; n];
    e1[0] = 1.0;
    hypermeans::harmonics::basis(n, k)?
        .into_iter()
        .max_by(|a, b| {
            let va = a.eval_normalized(&e1).abs();
            let vb = b.eval_normalized(&e1).abs();
            va.partial_cmp(&vb).unwrap()
        })
        .ok_or_else(|| crate::HarnessError::Config("empty harmonic basis".into()))
}
