//! A short tour: distances and admissibility in the ball, a kernel-family
//! element with vanishing spherical means, the exact ladder descent, and
//! the measured eigen-shift constant.
//!
//! Run: cargo run -p hypermeans --example means_tour

use hypermeans::ball_geometry::{
    admissible, hyperbolic_distance, rho_of_s, AnnulusSpec, PointBall, SphereSpec,
};
use hypermeans::functions::{BallFunction, SeparatedFn};
use hypermeans::harmonics::basis;
use hypermeans::radial_calculus::{
    eigen_shift, kernel_member, ladder_apply, verify_ladder_descent,
};
use hypermeans::spherical_means::{build_rule, mean, sup_on_sphere};

fn main() {
    println!("=== Poincaré ball basics ===\n");
    let origin = PointBall::origin(2);
    let x = PointBall::new(vec![0.2, 0.0]).unwrap();
    let d0 = hyperbolic_distance(&origin, &x).unwrap();
    println!("d(0, x) for x = (0.2, 0):      {d0:.6}");
    println!("Euclidean radius of S_1.2(0):  {:.6}", rho_of_s(1.2));

    // Which spheres around x are constrained by the annulus Ann(0.5, inf)?
    let ann = AnnulusSpec::unbounded(0.5).unwrap();
    for s in [0.6, 1.2] {
        let sphere = SphereSpec::new(x.clone(), s).unwrap();
        println!(
            "sphere S_{s}(x) admissible?     {}",
            admissible(&sphere, &ann)
        );
    }

    println!("\n=== A vanishing-mean function ===\n");
    // f = (1/rho - rho) Y_1: the degree-1 kernel member on the 2-ball.
    let y = basis(2, 1).unwrap().remove(0);
    let f = SeparatedFn::orthonormal(kernel_member(2, 1, 1).unwrap(), &y);
    let rule = build_rule(2, 128).unwrap();
    for s in [1.2, 1.8, 2.6] {
        let m = mean(&f, &x, s, &rule).unwrap();
        let sup = sup_on_sphere(&f, &x, s, &rule).unwrap();
        println!("|M_{s} f(x)| / sup|f|          = {:.3e}", m.abs() / sup);
    }
    println!("(the sphere average cancels although sup|f| is order one)");

    println!("\n=== Exact ladder descent ===\n");
    // A_{2-k-n} lowers each family member by one harmonic degree, exactly.
    let factors = verify_ladder_descent(2, 3).unwrap();
    println!("A_{{-3}} member(2,3,i) = c_i * member(2,2,i) with c = {factors:?}");
    let annihilated = ladder_apply(1 - 2, &kernel_member(2, 1, 1).unwrap());
    println!("A_{{1-n}} (1/rho - rho)^(n-1)    = 0 exactly? {}", annihilated.is_zero());

    println!("\n=== Measured eigen-shift ===\n");
    // On the annihilated member the Laplace-Beltrami operator acts as a
    // scalar; the measured constant is (k-1)(n+k-2).
    let y2 = basis(2, 2).unwrap().remove(1);
    let g = SeparatedFn::raw(kernel_member(2, 2, 2).unwrap(), &y2);
    let p = [0.31, -0.22];
    let measured = g.hyperbolic_laplacian(&p) / g.eval(&p);
    println!("L f / f at a sample point      = {measured:.12}");
    println!("kappa(2, 2)                    = {}", eigen_shift(2, 2));
}
