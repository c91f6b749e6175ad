//! Decay-rate fits: the least-squares slope of log |member(n,k,i)| along
//! geodesic radius reproduces the asymptotic law −(n+i−2).
//!
//! On a finite window the fit for i < k members carries a computable
//! contribution from the subleading term 2(k−i)e^{−s} of log |member|; those
//! cases are checked against the window-corrected slope, and the correction
//! itself is reported.

use crate::config::ExperimentConfig;
use crate::report::{CaseRecord, SuiteReport};
use crate::HarnessError;
use hypermeans::radial_calculus::kernel_member;
use hypermeans::spherical_means::decay_fit_profile;

pub fn run(cfg: &ExperimentConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    if cfg.decay_points < 5 {
        return Err(HarnessError::Config("decay_points must be at least 5".into()));
    }
    let window: Vec<f64> = (0..cfg.decay_points)
        .map(|i| {
            cfg.decay_s_min
                + (cfg.decay_s_max - cfg.decay_s_min) * i as f64 / (cfg.decay_points - 1) as f64
        })
        .collect();
    let exp_weight = least_squares_weight_of_exp(&window);
    let mut records = Vec::new();

    for k in cfg.k_min..=cfg.k_max.min(3) {
        for i in 1..=k {
            let member = kernel_member(cfg.n, k, i)?;
            let slope = decay_fit_profile(&member, &window)?;
            let asymptotic = -((cfg.n as f64) + i as f64 - 2.0);
            if i == k {
                records.push(
                    CaseRecord::new(
                        "decay_slope",
                        cfg.n,
                        (slope - asymptotic) / asymptotic.abs(),
                        cfg.decay_tol,
                    )
                    .with_k(k)
                    .with_i(i as i64),
                );
            } else {
                let corrected = asymptotic + 2.0 * (k - i) as f64 * exp_weight;
                records.push(
                    CaseRecord::new(
                        "decay_slope_window_corrected",
                        cfg.n,
                        (slope - corrected) / corrected.abs(),
                        cfg.decay_tol,
                    )
                    .with_k(k)
                    .with_i(i as i64),
                );
            }
        }
    }
    Ok(SuiteReport::new("decay", records))
}

/// Least-squares regression weight of e^{−s} against s over the window:
/// Σ(s−s̄)e^{−s} / Σ(s−s̄)².
pub fn least_squares_weight_of_exp(window: &[f64]) -> f64 {
    let mean = window.iter().sum::<f64>() / window.len() as f64;
    let num: f64 = window.iter().map(|s| (s - mean) * (-s).exp()).sum();
    let den: f64 = window.iter().map(|s| (s - mean) * (s - mean)).sum();
    num / den
}
