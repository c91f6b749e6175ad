//! SO⁺(1, n) matrices and their Möbius action on the Poincaré ball.
//!
//! A matrix g acts on x ∈ B^n through
//!
//! ```text
//! y_j = (½(1+|x|²) g_{j0} + Σ_l g_{jl} x_l)
//!     / (½(1−|x|²) + ½(1+|x|²) g_{00} + Σ_l g_{0l} x_l)
//! ```
//!
//! which is an isometry of the hyperbolic metric. Boosts along coordinate
//! axes together with rotations of the spatial block generate every isometry
//! this crate needs; `transport_to` builds one moving the origin to a given
//! point, which is how geodesic spheres around arbitrary centers are
//! parametrized.

use crate::ball_geometry::PointBall;
use thiserror::Error;

/// Entrywise tolerance for the defining relation gᵀJg = J and det g = 1.
pub const LORENTZ_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("matrix must be square of size >= 3, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("gᵀJg = J violated: max residual {residual:e}")]
    NotLorentz { residual: f64 },
    #[error("g₀₀ must be positive, got {g00}")]
    NotOrthochronous { g00: f64 },
    #[error("det g must be +1, got {det}")]
    NotSpecial { det: f64 },
    #[error("boost axis {p} out of range 1..={n}")]
    AxisOutOfRange { p: usize, n: usize },
    #[error("rotation block is not orthogonal with det +1 (residual {residual:e})")]
    NotRotation { residual: f64 },
    #[error("dimension mismatch: matrix acts on B^{expected}, point lives in B^{got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// An (n+1)×(n+1) matrix in SO⁺(1, n), stored row-major with indices 0..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl LorentzMatrix {
    /// Validating constructor: checks gᵀJg = J, g₀₀ > 0, det g = +1.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, LorentzError> {
        let size = n + 1;
        if n < 2 || entries.len() != size * size {
            return Err(LorentzError::BadShape {
                rows: size,
                cols: entries.len() / size.max(1),
            });
        }
        let g = LorentzMatrix { n, entries };
        g.validate()?;
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 2);
        let size = n + 1;
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1.0;
        }
        LorentzMatrix { n, entries }
    }

    /// Hyperbolic boost by parameter `t` along spatial axis `p` (1-based):
    /// cosh t at (0,0) and (p,p), sinh t at (0,p) and (p,0).
    pub fn boost(n: usize, t: f64, p: usize) -> Result<Self, LorentzError> {
        if p < 1 || p > n {
            return Err(LorentzError::AxisOutOfRange { p, n });
        }
        let mut g = LorentzMatrix::identity(n);
        let size = n + 1;
        g.entries[0] = t.cosh();
        g.entries[p * size + p] = t.cosh();
        g.entries[p] = t.sinh();
        g.entries[p * size] = t.sinh();
        Ok(g)
    }

    /// Block-diagonal embedding diag(1, Q) of an n×n rotation (row-major).
    pub fn from_rotation(n: usize, q: &[f64]) -> Result<Self, LorentzError> {
        if n < 2 || q.len() != n * n {
            return Err(LorentzError::BadShape {
                rows: n,
                cols: q.len() / n.max(1),
            });
        }
        let mut residual = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|l| q[l * n + i] * q[l * n + j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                residual = residual.max((dot - target).abs());
            }
        }
        let det = det_dense(n, q);
        residual = residual.max((det - 1.0).abs());
        if residual > LORENTZ_TOLERANCE {
            return Err(LorentzError::NotRotation { residual });
        }
        let size = n + 1;
        let mut entries = vec![0.0; size * size];
        entries[0] = 1.0;
        for i in 0..n {
            for j in 0..n {
                entries[(i + 1) * size + (j + 1)] = q[i * n + j];
            }
        }
        Ok(LorentzMatrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * (self.n + 1) + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> LorentzMatrix {
        let size = self.n + 1;
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            for j in 0..size {
                entries[j * size + i] = self.entries[i * size + j];
            }
        }
        LorentzMatrix {
            n: self.n,
            entries,
        }
    }

    /// Matrix product. The invariants are re-asserted on the result; products
    /// of a handful of moderate factors stay well inside tolerance.
    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in composition");
        let size = self.n + 1;
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            for j in 0..size {
                let mut acc = 0.0;
                for l in 0..size {
                    acc += self.entries[i * size + l] * other.entries[l * size + j];
                }
                entries[i * size + j] = acc;
            }
        }
        let g = LorentzMatrix {
            n: self.n,
            entries,
        };
        g.validate()
            .expect("product of SO⁺(1,n) matrices drifted outside tolerance");
        g
    }

    /// Max-abs entry of gᵀJg − J with J = diag(1, −1, …, −1).
    pub fn lorentz_residual(&self) -> f64 {
        let size = self.n + 1;
        let mut residual = 0.0f64;
        for i in 0..size {
            for j in 0..size {
                // (gᵀJg)_{ij} = g_{0i} g_{0j} − Σ_{l>=1} g_{li} g_{lj}
                let mut acc = self.entries[i] * self.entries[j];
                for l in 1..size {
                    acc -= self.entries[l * size + i] * self.entries[l * size + j];
                }
                let target = if i != j {
                    0.0
                } else if i == 0 {
                    1.0
                } else {
                    -1.0
                };
                residual = residual.max((acc - target).abs());
            }
        }
        residual
    }

    pub fn det(&self) -> f64 {
        det_dense(self.n + 1, &self.entries)
    }

    fn validate(&self) -> Result<(), LorentzError> {
        let residual = self.lorentz_residual();
        if residual > LORENTZ_TOLERANCE {
            return Err(LorentzError::NotLorentz { residual });
        }
        let g00 = self.entries[0];
        if g00 <= 0.0 {
            return Err(LorentzError::NotOrthochronous { g00 });
        }
        let det = self.det();
        if (det - 1.0).abs() > LORENTZ_TOLERANCE {
            return Err(LorentzError::NotSpecial { det });
        }
        Ok(())
    }

    /// The Möbius action of g on the ball.
    ///
    /// Panics if the point dimension disagrees with the matrix or if the
    /// denominator fails to be positive, which can only happen for a matrix
    /// outside SO⁺(1, n).
    pub fn apply(&self, x: &PointBall) -> PointBall {
        assert_eq!(
            self.n,
            x.dim(),
            "matrix acts on B^{}, point lives in B^{}",
            self.n,
            x.dim()
        );
        PointBall::new(self.apply_coords(x.coords()))
            .expect("isometry image must stay inside the ball")
    }

    /// The same action on a raw coordinate slice (|x| < 1 assumed); the hot
    /// path under quadrature loops.
    #[allow(clippy::needless_range_loop)]
    pub fn apply_coords(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(self.n, x.len());
        let size = self.n + 1;
        let nx = x.iter().map(|c| c * c).sum::<f64>();
        let half_plus = 0.5 * (1.0 + nx);
        let half_minus = 0.5 * (1.0 - nx);
        let mut denom = half_minus + half_plus * self.entries[0];
        for l in 0..self.n {
            denom += self.entries[l + 1] * x[l];
        }
        assert!(
            denom > 0.0,
            "nonpositive denominator {denom}: matrix is not in SO⁺(1,n)"
        );
        let mut coords = vec![0.0; self.n];
        for (j, c) in coords.iter_mut().enumerate() {
            let row = j + 1;
            let mut num = half_plus * self.entries[row * size];
            for l in 0..self.n {
                num += self.entries[row * size + l + 1] * x[l];
            }
            *c = num / denom;
        }
        coords
    }

    /// An isometry g with g·0 = x: the axis-1 boost by 2 artanh |x|
    /// conjugated by a rotation taking e₁ to x/|x|.
    ///
    /// Any other isometry with the same value at the origin differs by a
    /// rotation fixing 0 and induces the same surface measure on geodesic
    /// spheres around x, so spherical means do not depend on this choice.
    pub fn transport_to(x: &PointBall) -> LorentzMatrix {
        let n = x.dim();
        let rho = x.rho();
        if rho == 0.0 {
            return LorentzMatrix::identity(n);
        }
        let unit: Vec<f64> = x.coords().iter().map(|c| c / rho).collect();
        let q = rotation_taking_e1(&unit);
        let rot = LorentzMatrix::from_rotation(n, &q).expect("constructed block is a rotation");
        let t = 2.0 * rho.atanh();
        let boost = LorentzMatrix::boost(n, t, 1).expect("axis 1 always valid");
        rot.compose(&boost).compose(&rot.transpose())
    }
}

/// A rotation (det +1) taking e₁ to the given unit vector, as an n×n
/// row-major block: a Householder reflection through the bisector composed
/// with a sign flip on the last axis to restore the determinant.
fn rotation_taking_e1(unit: &[f64]) -> Vec<f64> {
    let n = unit.len();
    let mut q = vec![0.0; n * n];
    if (unit[0] - 1.0).abs() < 1e-14 {
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        return q;
    }
    if (unit[0] + 1.0).abs() < 1e-14 {
        // Rotation by π in the (1,2) plane.
        for i in 0..n {
            q[i * n + i] = if i < 2 { -1.0 } else { 1.0 };
        }
        return q;
    }
    // Householder H = I − 2vvᵀ/|v|² with v = e₁ − u maps u ↦ e₁ and e₁ ↦ u.
    let mut v = vec![0.0; n];
    v[0] = 1.0 - unit[0];
    for i in 1..n {
        v[i] = -unit[i];
    }
    let vv: f64 = v.iter().map(|c| c * c).sum();
    for i in 0..n {
        for j in 0..n {
            let h = if i == j { 1.0 } else { 0.0 } - 2.0 * v[i] * v[j] / vv;
            q[i * n + j] = h;
        }
    }
    // H has det −1; flipping the last column gives det +1 while e₁ ↦ u is
    // preserved (H e_n is orthogonal to u ... e₁ stays the first column image).
    for row in q.chunks_mut(n) {
        row[n - 1] = -row[n - 1];
    }
    q
}

/// Determinant by LU decomposition with partial pivoting.
fn det_dense(size: usize, entries: &[f64]) -> f64 {
    let mut a = entries.to_vec();
    let mut det = 1.0;
    for col in 0..size {
        let mut pivot = col;
        for row in col + 1..size {
            if a[row * size + col].abs() > a[pivot * size + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * size + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..size {
                a.swap(col * size + j, pivot * size + j);
            }
            det = -det;
        }
        det *= a[col * size + col];
        for row in col + 1..size {
            let factor = a[row * size + col] / a[col * size + col];
            for j in col..size {
                a[row * size + j] -= factor * a[col * size + j];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball_geometry::{hyperbolic_distance, rho_of_s};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, n: usize, max_rho: f64) -> PointBall {
        loop {
            let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < max_rho {
                return PointBall::new(coords).unwrap();
            }
        }
    }

    /// Random SO⁺(1, n) element: a few bounded boosts mixed with Givens
    /// rotations of the spatial block.
    pub(crate) fn random_isometry(rng: &mut ChaCha8Rng, n: usize) -> LorentzMatrix {
        let mut g = LorentzMatrix::identity(n);
        for _ in 0..3 {
            let axis = rng.gen_range(1..=n);
            let t = rng.gen_range(-0.6..0.6);
            g = g.compose(&LorentzMatrix::boost(n, t, axis).unwrap());
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (i, j) = (0, rng.gen_range(1..n));
            let mut q = vec![0.0; n * n];
            for d in 0..n {
                q[d * n + d] = 1.0;
            }
            q[i * n + i] = theta.cos();
            q[j * n + j] = theta.cos();
            q[i * n + j] = -theta.sin();
            q[j * n + i] = theta.sin();
            g = g.compose(&LorentzMatrix::from_rotation(n, &q).unwrap());
        }
        g
    }

    #[test]
    fn identity_acts_trivially() {
        let g = LorentzMatrix::identity(3);
        let x = PointBall::new(vec![0.1, -0.2, 0.4]).unwrap();
        let y = g.apply(&x);
        assert_eq!(x.coords(), y.coords());
    }

    #[test]
    fn boost_of_zero_parameter_is_identity() {
        let g = LorentzMatrix::boost(2, 0.0, 1).unwrap();
        assert_eq!(g, LorentzMatrix::identity(2));
        assert!(LorentzMatrix::boost(2, 1.0, 3).is_err());
        assert!(LorentzMatrix::boost(2, 1.0, 0).is_err());
    }

    #[test]
    fn boost_moves_origin_along_axis() {
        // Substituting x = 0 into the action gives y_p = sinh t / (1 + cosh t)
        // = tanh(t/2), the boost-orbit identification of the ball.
        for (n, p, t) in [(2, 1, 0.8), (2, 2, -1.3), (3, 3, 2.0)] {
            let g = LorentzMatrix::boost(n, t, p).unwrap();
            let y = g.apply(&PointBall::origin(n));
            for (idx, c) in y.coords().iter().enumerate() {
                let expect = if idx + 1 == p { (t / 2.0).tanh() } else { 0.0 };
                assert!((c - expect).abs() < 1e-15, "axis {idx}: {c} vs {expect}");
            }
        }
    }

    #[test]
    fn rotation_block_acts_linearly() {
        let theta: f64 = 0.7;
        let q = vec![theta.cos(), -theta.sin(), theta.sin(), theta.cos()];
        let g = LorentzMatrix::from_rotation(2, &q).unwrap();
        let x = PointBall::new(vec![0.3, -0.5]).unwrap();
        let y = g.apply(&x);
        let expect = [
            theta.cos() * 0.3 + theta.sin() * 0.5,
            theta.sin() * 0.3 - theta.cos() * 0.5,
        ];
        for (a, b) in y.coords().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn boost_parameters_add() {
        let (t, u) = (0.9, -0.4);
        let lhs = LorentzMatrix::boost(3, t, 2)
            .unwrap()
            .compose(&LorentzMatrix::boost(3, u, 2).unwrap());
        let rhs = LorentzMatrix::boost(3, t + u, 2).unwrap();
        for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn boost_satisfies_defining_relation() {
        for t in [-2.0, -0.3, 0.0, 1.7] {
            let g = LorentzMatrix::boost(2, t, 1).unwrap();
            assert!(g.lorentz_residual() < 1e-12);
            assert!((g.det() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constructor_rejects_non_lorentz() {
        let mut entries = LorentzMatrix::identity(2).entries().to_vec();
        entries[1] = 0.5;
        assert!(matches!(
            LorentzMatrix::new(2, entries),
            Err(LorentzError::NotLorentz { .. })
        ));
    }

    #[test]
    fn transport_reaches_target() {
        let x0 = PointBall::origin(2);
        assert_eq!(LorentzMatrix::transport_to(&x0), LorentzMatrix::identity(2));

        // x on axis 1 must reduce to the plain boost.
        let x = PointBall::new(vec![0.3, 0.0]).unwrap();
        let g = LorentzMatrix::transport_to(&x);
        let b = LorentzMatrix::boost(2, 2.0 * 0.3f64.atanh(), 1).unwrap();
        for (a, c) in g.entries().iter().zip(b.entries()) {
            assert!((a - c).abs() < 1e-13);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [2usize, 3, 4] {
            for _ in 0..50 {
                let x = random_point(&mut rng, n, 0.95);
                let g = LorentzMatrix::transport_to(&x);
                let y = g.apply(&PointBall::origin(n));
                let err: f64 = x
                    .coords()
                    .iter()
                    .zip(y.coords())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(err < 1e-14, "transport error {err:e} at n = {n}");
            }
        }
    }

    #[test]
    fn action_preserves_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let x = random_point(&mut rng, 2, 0.9);
            let g = LorentzMatrix::transport_to(&x);
            let y = random_point(&mut rng, 2, 0.9);
            let z = random_point(&mut rng, 2, 0.9);
            let before = hyperbolic_distance(&y, &z).unwrap();
            let after = hyperbolic_distance(&g.apply(&y), &g.apply(&z)).unwrap();
            assert!((before - after).abs() < 1e-11, "{before} vs {after}");
        }
    }

    #[test]
    fn action_is_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for n in [2usize, 3] {
            for _ in 0..50 {
                let g = random_isometry(&mut rng, n);
                let h = random_isometry(&mut rng, n);
                let x = random_point(&mut rng, n, 0.85);
                let lhs = g.compose(&h).apply(&x);
                let rhs = g.apply(&h.apply(&x));
                let err: f64 = lhs
                    .coords()
                    .iter()
                    .zip(rhs.coords())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(err < 1e-11);
            }
        }
    }

    #[test]
    fn transport_maps_origin_spheres_onto_spheres() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let s = 1.4;
        let rho_s = rho_of_s(s);
        for _ in 0..20 {
            let x = random_point(&mut rng, 2, 0.8);
            let g = LorentzMatrix::transport_to(&x);
            let gx = g.apply(&PointBall::origin(2));
            for q in 0..32 {
                let theta = std::f64::consts::TAU * (q as f64) / 32.0;
                let node = PointBall::new(vec![rho_s * theta.cos(), rho_s * theta.sin()]).unwrap();
                let mapped = g.apply(&node);
                let d = hyperbolic_distance(&gx, &mapped).unwrap();
                assert!((d - s).abs() < 1e-11, "sphere radius drifted: {d}");
            }
        }
    }
}
