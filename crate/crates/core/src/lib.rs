//! Spherical means in the Poincaré ball model of real hyperbolic space.
//!
//! The crate provides the pieces needed to state and numerically verify the
//! characterization of functions whose means over admissible geodesic spheres
//! vanish on a hyperbolic annulus:
//!
//! * [`ball_geometry`] — points of the open unit ball, geodesic distance,
//!   radius conversions, stereographic maps, and the admissibility predicate
//!   selecting which (center, radius) pairs are constrained.
//! * [`lorentz_group`] — SO⁺(1,n) matrices acting on the ball by Möbius
//!   transformations, boosts, and isometries transporting the origin.
//! * [`harmonics`] — exact solid spherical harmonics over big rationals,
//!   orthonormal bases on S¹ and S², and harmonic projection by quadrature.
//! * [`radial_calculus`] — exact Laurent-polynomial calculus in the radial
//!   variable: the ladder operators, the kernel family of radial profiles
//!   with vanishing means, and the degree-shifted radial Laplacian.
//! * [`functions`] — structured test functions on the ball (separated
//!   profile × harmonic, radial, bumps) with analytic derivatives.
//! * [`spherical_means`] — quadrature rules on the unit sphere, the mean
//!   operator over geodesic spheres, Darboux and radial-ODE residuals,
//!   indicial exponents, and decay-rate fits.

pub mod ball_geometry;
pub mod exact;
pub mod functions;
pub mod harmonics;
pub mod lorentz_group;
pub mod radial_calculus;
pub mod spherical_means;

pub use ball_geometry::{AnnulusSpec, PointBall, RadiusBound, SphereSpec};
pub use harmonics::{HarmonicIndex, MultiPoly, SolidHarmonic};
pub use lorentz_group::LorentzMatrix;
pub use radial_calculus::RhoProfile;
pub use spherical_means::QuadratureRule;
