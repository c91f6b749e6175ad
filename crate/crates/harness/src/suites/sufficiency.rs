//! Sufficiency by quadrature: random elements of the kernel family attached
//! to each harmonic basis element must have vanishing means over every
//! admissible (center, radius) pair of the grid.

use crate::config::ExperimentConfig;
use crate::grid::admissible_pairs;
use crate::report::{CaseRecord, SuiteReport};
use crate::HarnessError;
use hypermeans::functions::{BallFunction, HarmonicSum, SeparatedFn};
use hypermeans::harmonics::basis;
use hypermeans::radial_calculus::KernelProfile;
use hypermeans::spherical_means::{build_rule, mean, sup_on_sphere};

const SALT: u64 = 0x7375_6666;

pub fn run(cfg: &ExperimentConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let rule = build_rule(cfg.n, cfg.quad_order)?;
    let pairs = admissible_pairs(cfg)?;
    let mut rng = super::suite_rng(cfg.seed, SALT);
    let mut records = Vec::new();

    let mut mixed_terms = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        let harmonics = basis(cfg.n, k)?;
        for (j0, y) in harmonics.iter().enumerate() {
            let coeffs: Vec<_> = (0..k as usize)
                .map(|i| super::coefficient(&cfg.kernel_coeffs, i, &mut rng))
                .collect();
            let profile = KernelProfile::new(cfg.n, k, coeffs)?.expand();
            let f = SeparatedFn::orthonormal(profile.clone(), y);
            for (x, s) in &pairs {
                let value = normalized_mean(&f, x, *s, &rule)?;
                records.push(
                    CaseRecord::new("sufficiency", cfg.n, value, cfg.vanish_tol)
                        .with_k(k)
                        .with_j(j0 + 1)
                        .with_x(x.coords())
                        .with_s(*s),
                );
            }
            mixed_terms.push(SeparatedFn::orthonormal(profile, y));
        }
    }

    // A full expansion with zero radial part: sums of family elements across
    // degrees stay in the vanishing class.
    let mixed = HarmonicSum::new(mixed_terms);
    for (x, s) in &pairs {
        let value = normalized_mean(&mixed, x, *s, &rule)?;
        records.push(
            CaseRecord::new("sufficiency_mixed", cfg.n, value, cfg.vanish_tol)
                .with_x(x.coords())
                .with_s(*s),
        );
    }

    // The zero function passes trivially.
    let zero = hypermeans::functions::Constant::new(cfg.n, 0.0);
    let (x, s) = &pairs[0];
    let value = mean(&zero, x, *s, &rule)?.abs();
    records.push(
        CaseRecord::new("sufficiency_zero", cfg.n, value, cfg.vanish_tol)
            .with_x(x.coords())
            .with_s(*s),
    );

    Ok(SuiteReport::new("sufficiency", records))
}

/// |M_s f(x)| relative to the size of f on the sphere.
pub(crate) fn normalized_mean(
    f: &dyn BallFunction,
    x: &hypermeans::ball_geometry::PointBall,
    s: f64,
    rule: &hypermeans::spherical_means::QuadratureRule,
) -> Result<f64, HarnessError> {
    let m = mean(f, x, s, rule)?.abs();
    let sup = sup_on_sphere(f, x, s, rule)?;
    Ok(if sup > 0.0 { m / sup } else { m })
}
