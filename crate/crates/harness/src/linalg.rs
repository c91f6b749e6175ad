//! Dense linear algebra for the necessity scan: numerical null spaces by
//! singular value decomposition and principal angles between subspaces.

use nalgebra::DMatrix;

/// Right singular vectors of `rows` whose singular values fall at or below
/// `rel_threshold` times the largest one. Rows are observations (means over
/// grid pairs), columns are dictionary coordinates; at least as many rows
/// as columns are required so the decomposition carries the full V factor.
pub fn null_space(rows: &[Vec<f64>], rel_threshold: f64) -> Vec<Vec<f64>> {
    assert!(!rows.is_empty());
    let nrows = rows.len();
    let ncols = rows[0].len();
    assert!(
        nrows >= ncols,
        "null_space needs at least as many observations as dictionary columns"
    );
    let mat = DMatrix::from_row_iterator(nrows, ncols, rows.iter().flatten().copied());
    let svd = mat.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma_max = svd
        .singular_values
        .iter()
        .fold(0.0f64, |m, s| m.max(*s));
    let mut out = Vec::new();
    for (idx, sigma) in svd.singular_values.iter().enumerate() {
        if *sigma <= rel_threshold * sigma_max {
            out.push(v_t.row(idx).iter().copied().collect());
        }
    }
    out
}

/// Principal angles (radians, ascending) between the spans of two vector
/// families, computed from the singular values of Q_aᵀ Q_b.
pub fn principal_angles(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<f64> {
    assert!(!a.is_empty() && !b.is_empty());
    let dim = a[0].len();
    let qa = orthonormal_columns(a, dim);
    let qb = orthonormal_columns(b, dim);
    let overlap = qa.transpose() * qb;
    let svd = overlap.svd(false, false);
    let mut angles: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|s| s.clamp(-1.0, 1.0).acos())
        .collect();
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    angles
}

fn orthonormal_columns(vectors: &[Vec<f64>], dim: usize) -> DMatrix<f64> {
    let mat = DMatrix::from_iterator(
        dim,
        vectors.len(),
        vectors.iter().flat_map(|v| v.iter().copied()),
    );
    let qr = mat.qr();
    let q = qr.q();
    q.columns(0, vectors.len()).into_owned()
}
