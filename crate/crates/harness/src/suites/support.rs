//! Support-radius detector: scan candidate inner radii r and report the
//! smallest one for which every probed admissible mean for Ann(r, ∞)
//! vanishes. For rapidly decaying functions this finds the geodesic support
//! radius; a kernel member demonstrates why the rapid-decay hypothesis is
//! needed — its means vanish although it is not compactly supported.

use crate::config::ExperimentConfig;
use crate::report::{CaseRecord, SuiteReport};
use crate::HarnessError;
use hypermeans::ball_geometry::{rho_of_s, AnnulusSpec, PointBall};
use hypermeans::functions::{BallFunction, DomainWindow, GeodesicBump, SeparatedFn};
use hypermeans::radial_calculus::kernel_member;
use hypermeans::spherical_means::{build_rule, mean, sup_on_sphere, QuadratureRule, SphericalMeansError};

/// Outcome of a detector scan.
#[derive(Debug, Clone)]
pub struct DetectorOutcome {
    /// Smallest probeable candidate with all means vanishing.
    pub detected: Option<f64>,
    /// Candidates skipped because probe spheres left the function domain.
    pub unprobeable: Vec<f64>,
    /// Largest |f| sampled outside the detected ball.
    pub outside_max: f64,
}

impl DetectorOutcome {
    pub fn zero_outside(&self, tol: f64) -> bool {
        self.outside_max <= tol
    }
}

/// Scan the candidate grid for f. Probe spheres hug the inner bound of each
/// candidate annulus so that spheres crossing any support of f are seen.
pub fn detect(
    f: &dyn BallFunction,
    cfg: &ExperimentConfig,
    rule: &QuadratureRule,
) -> Result<DetectorOutcome, HarnessError> {
    let steps = (cfg.support_r_max / cfg.support_r_step).round() as usize;
    let d0_list = [0.0, 0.3, 0.6];
    let offsets = [0.02, 0.05, 0.1, 0.2, 0.4];
    let mut detected = None;
    let mut unprobeable = Vec::new();
    'candidates: for step in 1..=steps {
        let r = step as f64 * cfg.support_r_step;
        for d0 in d0_list {
            for offset in offsets {
                let x = PointBall::on_axis(cfg.n, 1, rho_of_s(d0))?;
                let s = d0 + r + offset;
                let value = match mean(f, &x, s, rule) {
                    Ok(m) => {
                        let sup = sup_on_sphere(f, &x, s, rule)?;
                        if sup > 0.0 {
                            m.abs() / sup
                        } else {
                            m.abs()
                        }
                    }
                    Err(SphericalMeansError::NodeOutsideDomain { .. }) => {
                        unprobeable.push(r);
                        continue 'candidates;
                    }
                    Err(other) => return Err(other.into()),
                };
                if value > cfg.vanish_tol {
                    continue 'candidates;
                }
            }
        }
        detected = Some(r);
        break;
    }
    // How big is f beyond the detected radius?
    let mut outside_max = 0.0f64;
    if let Some(r_hat) = detected {
        for j in 1..=20 {
            let d = r_hat + 0.05 * j as f64;
            for sign in [1.0, -1.0] {
                let x = PointBall::on_axis(cfg.n, 1, sign * rho_of_s(d))?;
                if f.in_domain(x.coords()) {
                    outside_max = outside_max.max(f.eval(x.coords()).abs());
                }
            }
        }
    }
    Ok(DetectorOutcome {
        detected,
        unprobeable,
        outside_max,
    })
}

pub fn run(cfg: &ExperimentConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let rule = build_rule(cfg.n, cfg.quad_order)?;
    let mut records = Vec::new();
    let step_tol = cfg.support_r_step + 1e-9;

    // A smooth bump: the detected radius brackets the true support radius
    // within one grid step, and the function really is zero beyond it.
    let bump = GeodesicBump::new(cfg.n, cfg.bump_radius);
    let outcome = detect(&bump, cfg, &rule)?;
    let detected = outcome.detected.unwrap_or(f64::INFINITY);
    records.push(
        CaseRecord::new(
            "support_bump_radius",
            cfg.n,
            detected - cfg.bump_radius,
            step_tol,
        )
        .with_s(detected),
    );
    records.push(
        CaseRecord::new("support_bump_zero_outside", cfg.n, outcome.outside_max, 1e-12)
            .with_s(detected),
    );

    // The zero function: every candidate qualifies, so the smallest grid
    // value is reported and the outside scan finds nothing.
    let zero = hypermeans::functions::Constant::new(cfg.n, 0.0);
    let outcome = detect(&zero, cfg, &rule)?;
    records.push(
        CaseRecord::new(
            "support_zero_function",
            cfg.n,
            outcome.detected.unwrap_or(f64::INFINITY) - cfg.support_r_step,
            1e-12,
        )
        .with_s(outcome.detected.unwrap_or(f64::INFINITY)),
    );

    // Kernel-member counterexample on Ann(r, ∞): means vanish from the
    // domain edge on, yet the function is not supported in any ball — the
    // rapid-decay hypothesis of the support theorem is essential.
    let ann = AnnulusSpec::unbounded(cfg.annulus_inner)
        .map_err(HarnessError::from)?;
    let y = super::axis_heavy_element(cfg.n, 1)?;
    let inner = SeparatedFn::orthonormal(kernel_member(cfg.n, 1, 1)?, &y);
    let member = DomainWindow::new(&inner, ann);
    let outcome = detect(&member, cfg, &rule)?;
    let detected = outcome.detected.unwrap_or(f64::INFINITY);
    records.push(
        CaseRecord::new(
            "support_member_radius",
            cfg.n,
            detected - cfg.annulus_inner,
            step_tol,
        )
        .with_s(detected),
    );
    // The decay-hypothesis flag: a genuine violation shows as nonzero mass
    // outside the detected ball.
    records.push(
        CaseRecord::new(
            "support_member_decay_violation_flagged",
            cfg.n,
            outcome.outside_max,
            f64::INFINITY,
        )
        .with_s(detected)
        .with_pass(!outcome.zero_outside(1e-10)),
    );

    Ok(SuiteReport::new("support", records))
}
