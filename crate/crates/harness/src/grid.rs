//! Admissible (center, radius) grids: a handful of base centers along the
//! first axis crossed with geometrically spaced radii inside the admissible
//! window of each center.

use crate::config::ExperimentConfig;
use crate::HarnessError;
use hypermeans::ball_geometry::{
    admissible_with_margin, rho_of_s, AnnulusSpec, PointBall, RadiusBound, SphereSpec,
};

/// Offset above the strict admissibility bound at which probe radii start;
/// keeps finite-difference stencils admissible as well.
const PROBE_OFFSET: f64 = 5e-3;

/// The grid of admissible pairs for the configured annulus.
pub fn admissible_pairs(cfg: &ExperimentConfig) -> Result<Vec<(PointBall, f64)>, HarnessError> {
    let ann = cfg.annulus()?;
    let pairs = pairs_for(
        cfg.n,
        &ann,
        cfg.x_count,
        cfg.s_count,
        cfg.s_min,
        cfg.s_max,
        cfg.admissibility_margin,
    );
    if pairs.is_empty() {
        return Err(HarnessError::Config(
            "no admissible grid points inside the configured annulus and radius window".into(),
        ));
    }
    Ok(pairs)
}

pub fn pairs_for(
    n: usize,
    ann: &AnnulusSpec,
    x_count: usize,
    s_count: usize,
    s_min: f64,
    s_max: f64,
    margin: f64,
) -> Vec<(PointBall, f64)> {
    let r = ann.inner();
    // Centers at geodesic distances filling part of the admissible reach.
    // The function singularity at the origin pulls back to parameter radius
    // tanh(d0/2)/tanh(s/2) inside the node sphere, which controls how fast
    // the quadrature converges; the product rules on S² carry far fewer
    // points per direction than the circle rules, so the 3-ball grid keeps
    // its centers closer to the origin.
    let reach = if n == 3 { 0.25 } else { 0.45 };
    let d0_max = reach * (s_max - r).max(0.0);
    let mut pairs = Vec::new();
    for xi in 0..x_count {
        let d0 = if x_count == 1 {
            0.0
        } else {
            d0_max * xi as f64 / (x_count - 1) as f64
        };
        let x = PointBall::on_axis(n, 1, rho_of_s(d0)).expect("rho < 1 for finite d0");
        let lo = (d0 + r + margin + PROBE_OFFSET).max(s_min);
        let hi = match ann.outer() {
            RadiusBound::Finite(outer) => s_max.min(outer - d0 - margin - PROBE_OFFSET),
            RadiusBound::Infinite => s_max,
        };
        if hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
            continue;
        }
        for si in 0..s_count {
            let t = if s_count == 1 {
                0.0
            } else {
                si as f64 / (s_count - 1) as f64
            };
            let s = lo * (hi / lo).powf(t);
            let sphere = SphereSpec::new(x.clone(), s).expect("s > 0");
            // Every mean the suites report must come from an admissible pair.
            assert!(admissible_with_margin(&sphere, ann, margin));
            pairs.push((x.clone(), s));
        }
    }
    pairs
}
