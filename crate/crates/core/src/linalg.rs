//! Dense complex linear algebra shared by every module: Kronecker products,
//! singular-value rank decisions, null spaces and canonical subspace bases.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Default relative tolerance for rank decisions and law checks.
pub const DEFAULT_TOL: f64 = 1e-9;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(2πi·k/n)`.
pub fn root_of_unity(k: i64, n: usize) -> C64 {
    let k = k.rem_euclid(n as i64);
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of column vectors.
pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn frobenius_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vector_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn to_faer(m: &CMat) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Full SVD through faer; nalgebra's complex SVD loses accuracy on matrices
/// with repeated singular values. Returns `(σ, U, V)` with `σ` nonincreasing.
fn svd_full(m: &CMat) -> (Vec<f64>, CMat, CMat) {
    let svd = to_faer(m).svd().expect("SVD converges for finite input");
    let (u, v) = (svd.U(), svd.V());
    let s: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    (
        s,
        CMat::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)]),
        CMat::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)]),
    )
}

/// Singular values, nonincreasing. Empty matrices have none.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    to_faer(m)
        .singular_values()
        .expect("SVD converges for finite input")
}

/// Largest singular value (operator 2-norm); zero for empty matrices.
pub fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).into_iter().fold(0.0, f64::max)
}

fn threshold(svals: &[f64], tol: f64) -> Option<f64> {
    let smax = svals.iter().copied().fold(0.0, f64::max);
    if smax <= f64::MIN_POSITIVE {
        None
    } else {
        Some(tol * smax)
    }
}

/// Rank with singular values below `tol · σ_max` discarded.
pub fn rank(m: &CMat, tol: f64) -> usize {
    let svals = singular_values(m);
    match threshold(&svals, tol) {
        None => 0,
        Some(t) => svals.iter().filter(|&&s| s > t).count(),
    }
}

/// Orthonormal basis of the kernel of `m`, in canonical form (see [`canonical_basis`]).
pub fn null_space(m: &CMat, tol: f64) -> Vec<CVec> {
    null_space_scaled(m, tol, 0.0)
}

/// Like [`null_space`], but singular values up to `tol · max(σ_max, scale)`
/// count as zero. Constraint systems whose exact value is zero come out of
/// floating point as noise, and a purely relative cut cannot tell them apart
/// from a genuine small matrix.
pub fn null_space_scaled(m: &CMat, tol: f64, scale: f64) -> Vec<CVec> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols).map(|k| unit(cols, k)).collect();
    }
    let (svals, _, v) = svd_full(m);
    let kernel: Vec<CVec> = match threshold(&svals, tol).map(|t| t.max(tol * scale)) {
        None => (0..cols).map(|k| unit(cols, k)).collect(),
        Some(t) => (0..cols)
            .filter(|&k| svals.get(k).is_none_or(|&s| s <= t))
            .map(|k| v.column(k).into_owned())
            .collect(),
    };
    canonical_basis(&kernel, cols)
}

/// Orthonormal basis of the column space of `m`, in canonical form.
pub fn column_space(m: &CMat, tol: f64) -> Vec<CVec> {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let (svals, u, _) = svd_full(m);
    let range: Vec<CVec> = match threshold(&svals, tol) {
        None => Vec::new(),
        Some(t) => svals
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > t)
            .map(|(k, _)| u.column(k).into_owned())
            .collect(),
    };
    canonical_basis(&range, rows)
}

pub fn unit(n: usize, k: usize) -> CVec {
    let mut v = CVec::zeros(n);
    v[k] = ONE;
    v
}

/// Replaces an orthonormal basis by one that depends only on the subspace it
/// spans: pivoted Gram–Schmidt over the columns of the orthogonal projector,
/// lowest index winning near-ties, each vector phase-fixed.
pub fn canonical_basis(basis: &[CVec], ambient: usize) -> Vec<CVec> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let q = columns_to_matrix(basis, ambient);
    let projector = &q * q.adjoint();
    let mut residual: Vec<CVec> = (0..ambient).map(|j| projector.column(j).into_owned()).collect();
    let mut out: Vec<CVec> = Vec::with_capacity(k);
    for _ in 0..k {
        let norms: Vec<f64> = residual.iter().map(vector_norm).collect();
        let best = norms.iter().copied().fold(0.0, f64::max);
        let pick = norms
            .iter()
            .position(|&n| n >= best * (1.0 - 1e-6))
            .expect("nonempty");
        let mut v = residual[pick].clone() / C64::from(norms[pick]);
        // One re-orthogonalisation pass against what we already have.
        for w in &out {
            let coeff = w.dotc(&v);
            v -= w * coeff;
        }
        let n = vector_norm(&v);
        v /= C64::from(n);
        phase_fix(&mut v);
        for r in residual.iter_mut() {
            let coeff = v.dotc(r);
            *r -= &v * coeff;
        }
        out.push(v);
    }
    out
}

/// Rotates `v` so its first non-negligible coordinate is real and positive.
pub fn phase_fix(v: &mut CVec) {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return;
    }
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-8 * scale).copied() {
        let phase = z.conj() / C64::from(z.norm());
        *v *= phase;
    }
}

pub fn columns_to_matrix(vs: &[CVec], rows: usize) -> CMat {
    let mut m = CMat::zeros(rows, vs.len());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Norm of the component of `v` orthogonal to the span of the orthonormal `basis`.
pub fn span_residual(basis: &[CVec], v: &CVec) -> f64 {
    let mut r = v.clone();
    for b in basis {
        let coeff = b.dotc(&r);
        r -= b * coeff;
    }
    vector_norm(&r)
}

/// Largest [`span_residual`] of the vectors of `a` against the orthonormal `b`.
pub fn containment_residual(a: &[CVec], b: &[CVec]) -> f64 {
    a.iter().map(|v| span_residual(b, v)).fold(0.0, f64::max)
}

/// Vertically stacks matrices with a common column count.
pub fn vstack(blocks: &[CMat], cols: usize) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Commutator `ab − ba`.
pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}
