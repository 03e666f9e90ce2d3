//! Small dense helpers shared by every module.
//!
//! Real subspaces of complex matrices are handled through orthonormal real
//! frames: lists of matrices orthonormal for `Re tr(X Y^*)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

pub const IM: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn eye(n: usize) -> Mat {
    Mat::identity(n, n)
}

pub fn zeros(n: usize) -> Mat {
    Mat::zeros(n, n)
}

pub fn from_rows(rows: &[&[C64]]) -> Mat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    Mat::from_fn(n, m, |i, j| rows[i][j])
}

pub fn real_rows(rows: &[&[f64]]) -> Mat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    Mat::from_fn(n, m, |i, j| c(rows[i][j], 0.0))
}

pub fn diag(d: &[C64]) -> Mat {
    let n = d.len();
    Mat::from_fn(n, n, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) })
}

pub fn real_diag(d: &[f64]) -> Mat {
    let n = d.len();
    Mat::from_fn(n, n, |i, j| if i == j { c(d[i], 0.0) } else { C64::new(0.0, 0.0) })
}

pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = Mat::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

pub fn block(a: &Mat, offset: usize, size: usize) -> Mat {
    a.view((offset, offset), (size, size)).into_owned()
}

pub fn frob(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn dagger(m: &Mat) -> Mat {
    m.adjoint()
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

pub fn trace(m: &Mat) -> C64 {
    m.diagonal().iter().sum()
}

/// `Re tr(X Y^*)`.
pub fn re_inner(x: &Mat, y: &Mat) -> f64 {
    x.iter().zip(y.iter()).map(|(a, b)| (a * b.conj()).re).sum()
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    m.clone().try_inverse()
}

/// `g x g^{-1}` given both `g` and its inverse.
pub fn conj_by(g: &Mat, g_inv: &Mat, x: &Mat) -> Mat {
    g * x * g_inv
}

pub fn expm(m: &Mat) -> Mat {
    m.clone().exp()
}

pub fn scale(m: &Mat, s: f64) -> Mat {
    m.map(|z| z * s)
}

/// Flattens a complex matrix into `[Re m00, Im m00, Re m01, ...]` (column major).
pub fn to_real(m: &Mat) -> RVec {
    let mut v = RVec::zeros(2 * m.len());
    for (k, z) in m.iter().enumerate() {
        v[2 * k] = z.re;
        v[2 * k + 1] = z.im;
    }
    v
}

pub fn from_real(v: &RVec, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |i, j| {
        let k = i + j * rows;
        c(v[2 * k], v[2 * k + 1])
    })
}

/// Full SVD `m = U diag(s) V^T`; `s` has `min(rows, cols)` entries in nonincreasing order.
fn svd_full(m: &RMat) -> (Vec<f64>, RMat, RMat) {
    let (r, cl) = (m.nrows(), m.ncols());
    let fm = faer::Mat::<f64>::from_fn(r, cl, |i, j| m[(i, j)]);
    let svd = fm.svd().expect("svd converges");
    let (u, v) = (svd.U(), svd.V());
    let s: Vec<f64> = svd.S().column_vector().iter().copied().collect();
    (s, RMat::from_fn(r, r, |i, j| *u.get(i, j)), RMat::from_fn(cl, cl, |i, j| *v.get(i, j)))
}

/// Numerical rank with threshold `rel * sigma_max`.
pub fn rank(m: &RMat, rel: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * smax).count()
}

/// Singular values in nonincreasing order.
pub fn singular_values(m: &RMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let fm = faer::Mat::<f64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    fm.singular_values().expect("svd converges")
}

/// Orthonormal basis of the null space, as columns.
pub fn nullspace(m: &RMat, rel: f64) -> RMat {
    let n = m.ncols();
    if n == 0 {
        return RMat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return RMat::identity(n, n);
    }
    let (s, _, v) = svd_full(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let cols: Vec<usize> = (0..n).filter(|&k| k >= s.len() || smax == 0.0 || s[k] <= rel * smax).collect();
    RMat::from_fn(n, cols.len(), |i, j| v[(i, cols[j])])
}

/// Orthonormal basis of the column space.
pub fn range(m: &RMat, rel: f64) -> RMat {
    if m.ncols() == 0 || m.nrows() == 0 {
        return RMat::zeros(m.nrows(), 0);
    }
    let (s, u, _) = svd_full(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let cols: Vec<usize> = (0..s.len()).filter(|&k| smax > 0.0 && s[k] > rel * smax).collect();
    RMat::from_fn(m.nrows(), cols.len(), |i, j| u[(i, cols[j])])
}

/// Moore-Penrose inverse with relative cutoff.
pub fn pinv(m: &RMat, rel: f64) -> RMat {
    let (r, cl) = (m.nrows(), m.ncols());
    let mut out = RMat::zeros(cl, r);
    if r == 0 || cl == 0 {
        return out;
    }
    let (s, u, v) = svd_full(m);
    let smax = s.first().copied().unwrap_or(0.0);
    for (k, &sk) in s.iter().enumerate() {
        if smax > 0.0 && sk > rel * smax {
            out += (v.column(k) * u.column(k).transpose()) / sk;
        }
    }
    out
}

/// Orthonormalizes a family of matrices for `Re tr(X Y^*)`, dropping dependent members.
pub fn orthonormalize(family: &[Mat], rel: f64) -> Vec<Mat> {
    if family.is_empty() {
        return Vec::new();
    }
    let (r, cdim) = (family[0].nrows(), family[0].ncols());
    let cols: Vec<RVec> = family.iter().map(to_real).collect();
    let m = RMat::from_columns(&cols);
    let q = range(&m, rel);
    (0..q.ncols()).map(|k| from_real(&q.column(k).into_owned(), r, cdim)).collect()
}

/// Coordinates of `x` in an orthonormal frame.
pub fn coords(frame: &[Mat], x: &Mat) -> RVec {
    RVec::from_iterator(frame.len(), frame.iter().map(|b| re_inner(x, b)))
}

pub fn combine(frame: &[Mat], v: &RVec) -> Mat {
    let (r, cdim) = frame.first().map_or((0, 0), |b| (b.nrows(), b.ncols()));
    let mut out = Mat::zeros(r, cdim);
    for (b, &t) in frame.iter().zip(v.iter()) {
        out += b.map(|z| z * t);
    }
    out
}

/// Matrix of an R-linear map between two orthonormal frames.
pub fn operator_matrix(domain: &[Mat], codomain: &[Mat], f: impl Fn(&Mat) -> Mat) -> RMat {
    let mut m = RMat::zeros(codomain.len(), domain.len());
    for (k, b) in domain.iter().enumerate() {
        let img = f(b);
        m.set_column(k, &coords(codomain, &img));
    }
    m
}

/// Distance between the spans of two families, as the spectral norm of the projector difference.
pub fn subspace_distance(a: &[Mat], b: &[Mat]) -> f64 {
    let qa = orthonormalize(a, 1e-9);
    let qb = orthonormalize(b, 1e-9);
    if qa.len() != qb.len() {
        return 1.0;
    }
    if qa.is_empty() {
        return 0.0;
    }
    let ma = RMat::from_columns(&qa.iter().map(to_real).collect::<Vec<_>>());
    let mb = RMat::from_columns(&qb.iter().map(to_real).collect::<Vec<_>>());
    let d = &ma * ma.transpose() - &mb * mb.transpose();
    singular_values(&d).first().cloned().unwrap_or(0.0)
}
