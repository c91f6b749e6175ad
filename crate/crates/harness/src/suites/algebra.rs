//! Exact operator algebra: agreement of the two ladder routes, the descent
//! law on the kernel family, annihilation under the degree-shifted radial
//! Laplacian, the separated-function identity, and the measured eigen-shift
//! constant compared against both candidate values.

use crate::config::ExperimentConfig;
use crate::report::{CaseRecord, SuiteReport};
use crate::HarnessError;
use hypermeans::ball_geometry::PointBall;
use hypermeans::exact::rat;
use hypermeans::functions::{BallFunction, SeparatedFn};
use hypermeans::harmonics::basis;
use hypermeans::radial_calculus::{
    eigen_shift, kernel_member, ladder_apply, ladder_apply_from_definition,
    separated_identity_check, shifted_laplacian_radial, verify_ladder_descent, RhoProfile,
};
use rand::Rng;

const SALT: u64 = 0x616c_6762;
const IDENTITY_TOL: f64 = 1e-10;
const SHIFT_TOL: f64 = 1e-9;

pub fn run(cfg: &ExperimentConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let mut rng = super::suite_rng(cfg.seed, SALT);
    let mut records = Vec::new();

    // Both ladder routes agree exactly on random Laurent profiles.
    let mut mismatches = 0usize;
    for _ in 0..200 {
        let m = rng.gen_range(-10i64..=10);
        let a = random_profile(&mut rng);
        if ladder_apply(m, &a) != ladder_apply_from_definition(m, &a) {
            mismatches += 1;
        }
    }
    records.push(CaseRecord::new(
        "ladder_forms_agree",
        cfg.n,
        mismatches as f64,
        0.0,
    ));

    // Exact descent law over all small dimensions and degrees.
    for n in 2..=5usize {
        for k in 1..=6u32 {
            let ok = verify_ladder_descent(n, k).is_ok();
            records.push(
                CaseRecord::new("ladder_descent", n, if ok { 0.0 } else { 1.0 }, 0.0).with_k(k),
            );
        }
    }

    // The i = k member is annihilated by the composed ladder.
    for k in cfg.k_min..=cfg.k_max {
        let member = kernel_member(cfg.n, k, k)?;
        let image = shifted_laplacian_radial(cfg.n, k, &member);
        records.push(
            CaseRecord::new(
                "shifted_laplacian_annihilates",
                cfg.n,
                if image.is_zero() { 0.0 } else { 1.0 },
                0.0,
            )
            .with_k(k)
            .with_i(k as i64),
        );
    }

    // Separated-function identity at random interior points, kernel and
    // generic profiles, every axis.
    for k in cfg.k_min..=cfg.k_max.min(3) {
        let harmonics = basis(cfg.n, k)?;
        let profiles = [kernel_member(cfg.n, k, k)?, random_profile(&mut rng)];
        for (pi, a) in profiles.iter().enumerate() {
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let x = random_point(&mut rng, cfg.n);
                let y = &harmonics[rng.gen_range(0..harmonics.len())];
                let p = rng.gen_range(1..=cfg.n);
                let check = separated_identity_check(a, y, p, &x)?;
                worst = worst.max(check.relative_residual());
            }
            records.push(
                CaseRecord::new("separated_identity", cfg.n, worst, IDENTITY_TOL)
                    .with_k(k)
                    .with_i(pi as i64),
            );
        }
    }

    // Eigen-shift measurement on annihilated members: the ladder term drops,
    // so L_x f / f is constant and equals κ(n,k) = (k−1)(n+k−2). The printed
    // alternative 4κ is reported alongside: the measured constant must sit a
    // factor of four below it whenever κ ≠ 0.
    for k in cfg.k_min..=cfg.k_max.min(4) {
        let kappa = eigen_shift(cfg.n, k) as f64;
        let y = super::axis_heavy_element(cfg.n, k)?;
        let f = SeparatedFn::raw(kernel_member(cfg.n, k, k)?, &y);
        let mut measured = Vec::new();
        for _ in 0..5 {
            let x = random_point(&mut rng, cfg.n);
            let value = f.eval(x.coords());
            if value.abs() < 1e-3 {
                continue;
            }
            measured.push(f.hyperbolic_laplacian(x.coords()) / value);
        }
        let c = measured.iter().sum::<f64>() / measured.len() as f64;
        records.push(
            CaseRecord::new("eigen_shift_measured", cfg.n, c - kappa, SHIFT_TOL).with_k(k),
        );
        let quadrupled_gap = (c - 4.0 * kappa).abs();
        let expected_gap = 3.0 * kappa;
        records.push(
            CaseRecord::new(
                "eigen_shift_vs_quadrupled",
                cfg.n,
                quadrupled_gap - expected_gap,
                SHIFT_TOL.max(1e-9 * (1.0 + kappa)),
            )
            .with_k(k),
        );
    }

    Ok(SuiteReport::new("algebra", records))
}

fn random_profile(rng: &mut rand_chacha::ChaCha8Rng) -> RhoProfile {
    let len = rng.gen_range(1..5);
    RhoProfile::from_pairs((0..len).map(|_| {
        let e = rng.gen_range(-6i64..=6);
        let mut num = 0i64;
        while num == 0 {
            num = rng.gen_range(-20..=20);
        }
        (e, rat(num, rng.gen_range(1..=9)))
    }))
}

fn random_point(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> PointBall {
    loop {
        let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let rho_sq: f64 = coords.iter().map(|c| c * c).sum();
        if rho_sq > 0.04 && rho_sq < 0.4 {
            return PointBall::new(coords).expect("inside the ball by construction");
        }
    }
}
