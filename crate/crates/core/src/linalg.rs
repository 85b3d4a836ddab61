//! Dense Hermitian linear algebra helpers shared by the state, coherence and
//! engine modules.
//!
//! Everything here operates on `nalgebra::DMatrix<Complex64>`. The matrices in
//! this crate are small (register dimensions up to a few thousand), so dense
//! eigendecompositions are the pragmatic choice; no sparse or banded paths.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with real eigenvalues in ascending
/// order and the matching unit eigenvectors as the columns of the returned
/// matrix. The input is assumed Hermitian; only rounding-level deviations from
/// Hermiticity are tolerated (the decomposition works on the matrix as given).
///
/// nalgebra's QL iteration occasionally returns NaN on matrices with tightly
/// clustered eigenvalues; such results are discarded and the decomposition is
/// redone with a cyclic Jacobi sweep, which is slower but unconditionally
/// convergent.
pub fn hermitian_eigen(a: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let se = a.clone().symmetric_eigen();
    if se.eigenvalues.iter().any(|x| !x.is_finite()) {
        return jacobi_hermitian_eigen(a);
    }
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Eigenvalues only, ascending. Falls back to Jacobi like [`hermitian_eigen`].
pub fn hermitian_eigenvalues(a: &DMatrix<C64>) -> Vec<f64> {
    let mut values: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    if values.iter().any(|x| !x.is_finite()) {
        return jacobi_hermitian_eigen(a).0;
    }
    values.sort_by(f64::total_cmp);
    values
}

/// Cyclic Jacobi eigendecomposition for complex Hermitian matrices: rotate
/// away one off-diagonal entry at a time until the off-diagonal mass is at
/// rounding level. Quadratically convergent once the matrix is near diagonal
/// and free of the shifted-QL breakdowns, at the price of more flops.
fn jacobi_hermitian_eigen(a: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let frobenius = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = 1e-14 * frobenius.max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let g = apq.norm();
                if g <= tol / (n as f64) {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // Phase that makes the (p, q) entry real, then the classic
                // real Jacobi rotation on the 2x2 block [[app, g], [g, aqq]].
                let omega = apq.conj() / g;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // Unitary U = I except U_pp = c, U_pq = s,
                // U_qp = -omega s, U_qq = omega c; apply M <- U^dag M U.
                let u_qp = -omega * s;
                let u_qq = omega * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * c + mkq * u_qp;
                    m[(k, q)] = mkp * s + mkq * u_qq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * c + mqk * u_qp.conj();
                    m[(q, k)] = mpk * s + mqk * u_qq.conj();
                }
                // Pin the rotated 2x2 block to its exact post-rotation form.
                m[(p, p)] = C64::new(app - t * g, 0.0);
                m[(q, q)] = C64::new(aqq + t * g, 0.0);
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * u_qp;
                    v[(k, q)] = vkp * s + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    (values, vectors)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Negative eigenvalues (possible only through rounding) are clamped to zero
/// before the square root, so the result is always Hermitian PSD.
pub fn sqrt_psd(a: &DMatrix<C64>) -> DMatrix<C64> {
    let (values, vectors) = hermitian_eigen(a);
    let n = a.nrows();
    let mut out = DMatrix::<C64>::zeros(n, n);
    for (k, &lambda) in values.iter().enumerate() {
        let s = lambda.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        let v = vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += C64::new(s, 0.0) * v[i] * v[j].conj();
            }
        }
    }
    out
}

/// `x ln x` extended by continuity with `0 ln 0 = 0`; also returns 0 for
/// (rounding-induced) negative inputs.
pub fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}
