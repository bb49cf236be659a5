//! Small fixed-size matrix kernels. Everything is stack-allocated
//! (`[[T; N]; N]`, row major); the sizes that occur are 3, 4 and 6.

use crate::scalar::Real;

pub type Vector<T, const N: usize> = [T; N];
pub type Matrix<T, const N: usize> = [[T; N]; N];

pub fn zeros_vec<T: Real, const N: usize>() -> Vector<T, N> {
    [T::zero(); N]
}

pub fn zeros<T: Real, const N: usize>() -> Matrix<T, N> {
    [[T::zero(); N]; N]
}

pub fn identity<T: Real, const N: usize>() -> Matrix<T, N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn dot<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> T {
    let mut acc = T::zero();
    for i in 0..N {
        acc += a[i] * b[i];
    }
    acc
}

pub fn norm<T: Real, const N: usize>(a: &Vector<T, N>) -> T {
    dot(a, a).sqrt()
}

pub fn scale_vec<T: Real, const N: usize>(a: &Vector<T, N>, k: T) -> Vector<T, N> {
    let mut out = *a;
    for x in &mut out {
        *x *= k;
    }
    out
}

pub fn sub_vec<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> Vector<T, N> {
    let mut out = *a;
    for i in 0..N {
        out[i] -= b[i];
    }
    out
}

pub fn mat_vec<T: Real, const N: usize>(m: &Matrix<T, N>, v: &Vector<T, N>) -> Vector<T, N> {
    let mut out = zeros_vec();
    for i in 0..N {
        out[i] = dot(&m[i], v);
    }
    out
}

pub fn mat_mul<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> Matrix<T, N> {
    let mut out = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik != T::zero() {
                for j in 0..N {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

pub fn transpose<T: Real, const N: usize>(m: &Matrix<T, N>) -> Matrix<T, N> {
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = m[j][i];
        }
    }
    out
}

pub fn mat_add<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> Matrix<T, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn mat_sub<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> Matrix<T, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn mat_scale<T: Real, const N: usize>(m: &Matrix<T, N>, k: T) -> Matrix<T, N> {
    let mut out = *m;
    for row in &mut out {
        for x in row {
            *x *= k;
        }
    }
    out
}

pub fn trace<T: Real, const N: usize>(m: &Matrix<T, N>) -> T {
    let mut acc = T::zero();
    for (i, row) in m.iter().enumerate() {
        acc += row[i];
    }
    acc
}

/// v' M v.
pub fn quadratic_form<T: Real, const N: usize>(m: &Matrix<T, N>, v: &Vector<T, N>) -> T {
    dot(v, &mat_vec(m, v))
}

pub fn frobenius_norm_sq<T: Real, const N: usize>(m: &Matrix<T, N>) -> T {
    let mut acc = T::zero();
    for row in m {
        for x in row {
            acc += *x * *x;
        }
    }
    acc
}

/// max |a_ij - b_ij|.
pub fn max_abs_diff<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> T {
    let mut worst = T::zero();
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

pub fn max_abs<T: Real, const N: usize>(m: &Matrix<T, N>) -> T {
    let mut worst = T::zero();
    for row in m {
        for x in row {
            worst = worst.max(x.abs());
        }
    }
    worst
}

/// Frobenius inner product sum a_ij b_ij.
pub fn mat_dot<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> T {
    let mut acc = T::zero();
    for i in 0..N {
        for j in 0..N {
            acc += a[i][j] * b[i][j];
        }
    }
    acc
}

pub fn det3<T: Real>(m: &Matrix<T, 3>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the 4x4 matrix whose columns are the given vectors.
pub fn det4_cols<T: Real>(cols: &[Vector<T, 4>; 4]) -> T {
    let m = cols;
    let minor = |r: [usize; 3], c: [usize; 3]| -> T {
        let sub: Matrix<T, 3> = [
            [m[c[0]][r[0]], m[c[1]][r[0]], m[c[2]][r[0]]],
            [m[c[0]][r[1]], m[c[1]][r[1]], m[c[2]][r[1]]],
            [m[c[0]][r[2]], m[c[1]][r[2]], m[c[2]][r[2]]],
        ];
        det3(&sub)
    };
    let mut acc = T::zero();
    let mut sign = T::one();
    for k in 0..4 {
        let rows = match k {
            0 => [1, 2, 3],
            1 => [0, 2, 3],
            2 => [0, 1, 3],
            _ => [0, 1, 2],
        };
        acc += sign * m[0][k] * minor(rows, [1, 2, 3]);
        sign = -sign;
    }
    acc
}

/// Eigenvalues of a symmetric 3x3 matrix, ascending, by the closed-form
/// (trace shift + Cardano on the deviatoric part). Ties below `Real::tie_tol`
/// of the matrix scale collapse to the mean.
pub fn sym_eigenvalues_3x3<T: Real>(a: &Matrix<T, 3>) -> [T; 3] {
    let scale = max_abs(a);
    if scale == T::zero() {
        return [T::zero(); 3];
    }
    let inv = T::one() / scale;
    let a = mat_scale(a, inv);

    let third = T::one() / T::of(3.0);
    let q = trace(&a) * third;
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    let d0 = a[0][0] - q;
    let d1 = a[1][1] - q;
    let d2 = a[2][2] - q;
    let p2 = d0 * d0 + d1 * d1 + d2 * d2 + T::of(2.0) * p1;
    let p = (p2 / T::of(6.0)).sqrt();
    if p < T::tie_tol() {
        let v = q * scale;
        return [v, v, v];
    }
    let mut b = a;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= q;
    }
    let b = mat_scale(&b, T::one() / p);
    let r = (det3(&b) / T::of(2.0)).max(-T::one()).min(T::one());
    let phi = r.acos() * third;

    let two = T::of(2.0);
    let hi = q + two * p * phi.cos();
    let lo = q + two * p * (phi + two * T::PI() * third).cos();
    let mid = T::of(3.0) * q - hi - lo;
    let mut eig = [lo * scale, mid * scale, hi * scale];
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Eigenvalues of a symmetric NxN matrix, ascending, by cyclic Jacobi.
pub fn jacobi_eigenvalues<T: Real, const N: usize>(m: &Matrix<T, N>) -> [T; N] {
    let mut a = *m;
    let frob = frobenius_norm_sq(&a).sqrt();
    if frob == T::zero() {
        return [T::zero(); N];
    }
    let stop = frob * T::epsilon() * T::of(4.0);
    for _sweep in 0..64 {
        let mut off = T::zero();
        for i in 0..N {
            for j in (i + 1)..N {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq.abs() <= stop * T::of(1e-3) {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (T::of(2.0) * apq);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig = [T::zero(); N];
    for (i, row) in a.iter().enumerate() {
        eig[i] = row[i];
    }
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Gram-Schmidt on K vectors in R^N. Returns `None` when some residual norm
/// falls below `tol` (numerically dependent input).
pub fn gram_schmidt<T: Real, const N: usize, const K: usize>(
    vs: &[Vector<T, N>; K],
    tol: T,
) -> Option<[Vector<T, N>; K]> {
    let mut out = *vs;
    for i in 0..K {
        for j in 0..i {
            let proj = dot(&out[i], &out[j]);
            out[i] = sub_vec(&out[i], &scale_vec(&out[j], proj));
        }
        let n = norm(&out[i]);
        if n < tol {
            return None;
        }
        out[i] = scale_vec(&out[i], T::one() / n);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardano_matches_known_spectrum() {
        let m: Matrix<f64, 3> = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, -1.0]];
        let eig = sym_eigenvalues_3x3(&m);
        assert!((eig[0] - (-1.0)).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
        assert!((eig[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn cardano_handles_degenerate_spectra() {
        let m: Matrix<f64, 3> = [[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 2.0]];
        assert_eq!(sym_eigenvalues_3x3(&m), [2.0, 2.0, 2.0]);
        // traceless double eigenvalue, the shape every Weyl block of a
        // product metric has
        let w: Matrix<f64, 3> = [
            [-2.0 / 3.0, 0.0, 0.0],
            [0.0, 1.0 / 3.0, 0.0],
            [0.0, 0.0, 1.0 / 3.0],
        ];
        let eig = sym_eigenvalues_3x3(&w);
        assert!((eig[0] + 2.0 / 3.0).abs() < 1e-15);
        assert!((eig[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((eig[2] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cardano_agrees_with_jacobi_on_random_input() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let mut m: Matrix<f64, 3> = zeros();
            for i in 0..3 {
                for j in i..3 {
                    let x: f64 = rng.random::<f64>() * 2.0 - 1.0;
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            let a = sym_eigenvalues_3x3(&m);
            let b = jacobi_eigenvalues(&m);
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() < 1e-10, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn jacobi_diagonalizes_4x4() {
        let m: Matrix<f64, 4> = [
            [4.0, 1.0, 0.0, 0.0],
            [1.0, 4.0, 0.0, 0.0],
            [0.0, 0.0, 2.0, 0.5],
            [0.0, 0.0, 0.5, 2.0],
        ];
        let eig = jacobi_eigenvalues(&m);
        let expect = [1.5, 2.5, 3.0, 5.0];
        for k in 0..4 {
            assert!((eig[k] - expect[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn det4_of_identity_and_swap() {
        let id: [Vector<f64, 4>; 4] = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert_eq!(det4_cols(&id), 1.0);
        let swapped = [id[1], id[0], id[2], id[3]];
        assert_eq!(det4_cols(&swapped), -1.0);
    }

    #[test]
    fn gram_schmidt_rejects_dependent_input() {
        let vs: [Vector<f64, 4>; 2] = [[1.0, 0.0, 0.0, 0.0], [2.0, 1e-13, 0.0, 0.0]];
        assert!(gram_schmidt(&vs, 1e-10).is_none());
    }
}
