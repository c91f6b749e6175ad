//! Darboux intertwining residuals |L_s M_s f − M_s L_x f| for kernel
//! members and random band-limited smooth functions over admissible pairs.

use crate::config::ExperimentConfig;
use crate::grid::admissible_pairs;
use crate::report::{CaseRecord, SuiteReport};
use crate::HarnessError;
use hypermeans::functions::{HarmonicSum, SeparatedFn};
use hypermeans::harmonics::basis;
use hypermeans::radial_calculus::{kernel_member, RhoProfile};
use hypermeans::spherical_means::{build_rule, darboux_residual};
use rand::Rng;

const SALT: u64 = 0x6461_7262;

pub fn run(cfg: &ExperimentConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let rule = build_rule(cfg.n, cfg.quad_order)?;
    let pairs: Vec<_> = admissible_pairs(cfg)?.into_iter().take(4).collect();
    let mut rng = super::suite_rng(cfg.seed, SALT);
    let mut records = Vec::new();

    for k in cfg.k_min..=cfg.k_max.min(3) {
        let y = super::axis_heavy_element(cfg.n, k)?;
        for i in [1, k] {
            let f = SeparatedFn::orthonormal(kernel_member(cfg.n, k, i)?, &y);
            for (x, s) in &pairs {
                let check = darboux_residual(&f, x, *s, &rule, cfg.fd_step)?;
                records.push(
                    CaseRecord::new(
                        "darboux_kernel_member",
                        cfg.n,
                        check.relative_residual(),
                        cfg.residual_tol,
                    )
                    .with_k(k)
                    .with_i(i as i64)
                    .with_x(x.coords())
                    .with_s(*s),
                );
            }
        }
    }

    // Random band-limited smooth test functions: the intertwining relation
    // holds for arbitrary smooth inputs, not only the vanishing class.
    for trial in 0..5 {
        let mut terms = Vec::new();
        for k in 0..=cfg.k_max.min(3) {
            for y in basis(cfg.n, k)?.iter() {
                let mut num = 0i64;
                while num == 0 {
                    num = rng.gen_range(-12..=12);
                }
                let extra = 2 * rng.gen_range(0i64..2);
                terms.push(SeparatedFn::orthonormal(
                    RhoProfile::monomial(k as i64 + extra, hypermeans::exact::rat(num, 4)),
                    y,
                ));
            }
        }
        let f = HarmonicSum::new(terms);
        let (x, s) = &pairs[trial % pairs.len()];
        let check = darboux_residual(&f, x, *s, &rule, cfg.fd_step)?;
        records.push(
            CaseRecord::new(
                "darboux_band_limited",
                cfg.n,
                check.relative_residual(),
                cfg.residual_tol,
            )
            .with_i(trial as i64)
            .with_x(x.coords())
            .with_s(*s),
        );
    }

    Ok(SuiteReport::new("darboux", records))
}
