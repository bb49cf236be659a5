//! Algebraic curvature tensors of an oriented Riemannian 4-manifold at a
//! point, viewed as symmetric operators on the 6-dimensional space of
//! 2-forms.
//!
//! Fixed conventions (everything else in the crate depends on them):
//!
//! * ordered orthonormal basis of 2-forms
//!   `e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4`,
//!   inner product `<ei^ej, ek^el> = d_ik d_jl - d_il d_jk`;
//! * `e1^e2^e3^e4` is positively oriented;
//! * sectional curvature of an orthonormal pair is `K(u,v) = <R(u^v), u^v>`,
//!   so the unit round 4-sphere has `R = Id` and scalar curvature
//!   `s = 2 tr R = 12`;
//! * self-dual frame `w1+ = (e12+e34)/sqrt2`, `w2+ = (e13-e24)/sqrt2`,
//!   `w3+ = (e14+e23)/sqrt2`, and the anti-self-dual frame with the signs
//!   flipped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::linalg::{
    self, det4_cols, dot, gram_schmidt, identity, mat_add, mat_dot, mat_mul, mat_scale, mat_sub,
    mat_vec, max_abs_diff, norm, quadratic_form, scale_vec, sub_vec, sym_eigenvalues_3x3, trace,
    transpose, zeros, Matrix, Vector,
};
use crate::scalar::Real;

/// Index pairs (i < j, 0-based) of the 2-form basis, in order.
pub const BASIS_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Basis slot and sign of `ei ^ ej` for arbitrary distinct i, j (0-based).
fn pair_slot(i: usize, j: usize) -> Option<(usize, f64)> {
    if i == j {
        return None;
    }
    let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    let slot = BASIS_PAIRS.iter().position(|&p| p == (a, b)).unwrap();
    Some((slot, sign))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("plane vectors are not an orthonormal pair: {detail}")]
    InvalidPlane { detail: String },
    #[error("degenerate plane: Gram-Schmidt residual below {tol}")]
    DegeneratePlane { tol: f64 },
    #[error("operator is not symmetric: max |R - R^T| = {residual}")]
    NotSymmetric { residual: f64 },
    #[error("first Bianchi identity violated: |R1234 + R1342 + R1423| = {residual}")]
    BianchiViolation { residual: f64 },
    #[error("component table violates pair symmetry at ({i},{j},{k},{l}): {a} vs {b}")]
    SymmetryViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        a: f64,
        b: f64,
    },
    #[error("component index ({i},{j},{k},{l}) out of range or not strictly increasing in each pair")]
    InvalidComponent {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("2-form is not self-dual: |anti-self-dual part| = {residual}")]
    NotSelfDual { residual: f64 },
}

/// An oriented 2-plane in R^4, stored as an orthonormal spanning pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane<T> {
    u: Vector<T, 4>,
    v: Vector<T, 4>,
}

impl<T: Real> Plane<T> {
    /// Strict constructor: `u`, `v` must already be unit and orthogonal
    /// within `1e-12`.
    pub fn new(u: Vector<T, 4>, v: Vector<T, 4>) -> Result<Self, CurvatureError> {
        let tol = T::of(1e-12);
        let nu = norm(&u);
        let nv = norm(&v);
        let ip = dot(&u, &v);
        if (nu - T::one()).abs() > tol || (nv - T::one()).abs() > tol || ip.abs() > tol {
            return Err(CurvatureError::InvalidPlane {
                detail: format!("|u| = {nu}, |v| = {nv}, <u,v> = {ip}"),
            });
        }
        Ok(Self { u, v })
    }

    /// Orthonormalizes an arbitrary spanning pair.
    pub fn span(a: Vector<T, 4>, b: Vector<T, 4>) -> Result<Self, CurvatureError> {
        let tol = T::of(1e-10);
        let [u, v] =
            gram_schmidt(&[a, b], tol).ok_or(CurvatureError::DegeneratePlane { tol: 1e-10 })?;
        Ok(Self { u, v })
    }

    pub fn basis(&self) -> (Vector<T, 4>, Vector<T, 4>) {
        (self.u, self.v)
    }

    /// Coordinates of `u ^ v` in the 2-form basis; a unit 6-vector.
    pub fn bivector(&self) -> Vector<T, 6> {
        wedge(&self.u, &self.v)
    }

    /// Orthogonal projection of R^4 onto the plane.
    pub fn projector(&self) -> Matrix<T, 4> {
        let mut p = zeros();
        for i in 0..4 {
            for j in 0..4 {
                p[i][j] = self.u[i] * self.u[j] + self.v[i] * self.v[j];
            }
        }
        p
    }

    /// The orthogonal plane, oriented so that `u ^ v ^ u' ^ v'` is positive.
    pub fn orthogonal(&self) -> Result<Self, CurvatureError> {
        let tol = T::of(1e-10);
        let comp = mat_sub(&identity::<T, 4>(), &self.projector());
        // two independent columns of the complement projector
        let mut cols: Vec<Vector<T, 4>> = (0..4).map(|j| {
            let mut c = [T::zero(); 4];
            for i in 0..4 {
                c[i] = comp[i][j];
            }
            c
        }).collect();
        cols.sort_by(|a, b| norm(b).partial_cmp(&norm(a)).unwrap());
        let n0 = norm(&cols[0]);
        if n0 < tol {
            return Err(CurvatureError::DegeneratePlane { tol: 1e-10 });
        }
        let up = scale_vec(&cols[0], T::one() / n0);
        let mut vp = [T::zero(); 4];
        let mut found = false;
        for cand in &cols[1..] {
            let w = sub_vec(cand, &scale_vec(&up, dot(cand, &up)));
            let nw = norm(&w);
            if nw >= tol {
                vp = scale_vec(&w, T::one() / nw);
                found = true;
                break;
            }
        }
        if !found {
            return Err(CurvatureError::DegeneratePlane { tol: 1e-10 });
        }
        let vp = if det4_cols(&[self.u, self.v, up, vp]) < T::zero() {
            scale_vec(&vp, -T::one())
        } else {
            vp
        };
        Ok(Self { u: up, v: vp })
    }

    /// Rotates the spanning basis inside the plane (same subspace).
    pub fn rotated(&self, angle: T) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        Self {
            u: {
                let mut w = scale_vec(&self.u, c);
                w = [
                    w[0] + s * self.v[0],
                    w[1] + s * self.v[1],
                    w[2] + s * self.v[2],
                    w[3] + s * self.v[3],
                ];
                w
            },
            v: {
                let mut w = scale_vec(&self.v, c);
                w = [
                    w[0] - s * self.u[0],
                    w[1] - s * self.u[1],
                    w[2] - s * self.u[2],
                    w[3] - s * self.u[3],
                ];
                w
            },
        }
    }
}

/// `u ^ v` in the 2-form basis.
pub fn wedge<T: Real>(u: &Vector<T, 4>, v: &Vector<T, 4>) -> Vector<T, 6> {
    let mut w = [T::zero(); 6];
    for (slot, &(i, j)) in BASIS_PAIRS.iter().enumerate() {
        w[slot] = u[i] * v[j] - u[j] * v[i];
    }
    w
}

/// Hodge star on 2-forms, a symmetric involution in the fixed basis.
pub fn hodge_star<T: Real>() -> Matrix<T, 6> {
    let mut m = zeros();
    m[0][5] = T::one();
    m[5][0] = T::one();
    m[1][4] = -T::one();
    m[4][1] = -T::one();
    m[2][3] = T::one();
    m[3][2] = T::one();
    m
}

/// Projectors onto the (+1)- and (-1)-eigenspaces of the Hodge star.
pub fn lambda_projectors<T: Real>() -> (Matrix<T, 6>, Matrix<T, 6>) {
    let star = hodge_star::<T>();
    let id = identity::<T, 6>();
    let half = T::of(0.5);
    (
        mat_scale(&mat_add(&id, &star), half),
        mat_scale(&mat_sub(&id, &star), half),
    )
}

/// Orthogonal change of basis whose columns are the canonical self-dual
/// frame followed by the anti-self-dual frame.
pub fn lambda_basis<T: Real>() -> Matrix<T, 6> {
    let r = T::of(0.5).sqrt();
    let mut q = zeros();
    // w1+ w2+ w3+
    q[0][0] = r;
    q[5][0] = r;
    q[1][1] = r;
    q[4][1] = -r;
    q[2][2] = r;
    q[3][2] = r;
    // w1- w2- w3-
    q[0][3] = r;
    q[5][3] = -r;
    q[1][4] = r;
    q[4][4] = r;
    q[2][5] = r;
    q[3][5] = -r;
    q
}

/// Operator on 2-forms of the Kulkarni-Nomizu product `h (x) g` of a
/// symmetric 2-tensor with the metric.
pub fn kulkarni_nomizu_id<T: Real>(h: &Matrix<T, 4>) -> Matrix<T, 6> {
    let mut m = zeros();
    for (a, &(i, j)) in BASIS_PAIRS.iter().enumerate() {
        for (b, &(k, l)) in BASIS_PAIRS.iter().enumerate() {
            let d = |x: usize, y: usize| {
                if x == y {
                    T::one()
                } else {
                    T::zero()
                }
            };
            m[a][b] = h[i][k] * d(j, l) + h[j][l] * d(i, k) - h[i][l] * d(j, k) - h[j][k] * d(i, l);
        }
    }
    m
}

/// Algebraic curvature tensor: symmetric operator on 2-forms satisfying the
/// first Bianchi identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTensor<T> {
    op: Matrix<T, 6>,
}

impl<T: Real> CurvatureTensor<T> {
    /// Validates symmetry and the Bianchi identity at `1e-12`, then snaps the
    /// operator onto the algebraic curvature subspace so both invariants hold
    /// to machine precision.
    pub fn from_operator(op: Matrix<T, 6>) -> Result<Self, CurvatureError> {
        Self::from_operator_with_tol(op, T::of(1e-12))
    }

    pub fn from_operator_with_tol(op: Matrix<T, 6>, tol: T) -> Result<Self, CurvatureError> {
        let sym_res = max_abs_diff(&op, &transpose(&op));
        if sym_res > tol {
            return Err(CurvatureError::NotSymmetric {
                residual: sym_res.to_f64().unwrap_or(f64::NAN),
            });
        }
        let sym = mat_scale(&mat_add(&op, &transpose(&op)), T::of(0.5));
        let bianchi = bianchi_residual_of(&sym);
        if bianchi.abs() > tol {
            return Err(CurvatureError::BianchiViolation {
                residual: bianchi.abs().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::project_unchecked(sym))
    }

    /// Orthogonal projection of a symmetric operator onto the Bianchi kernel.
    fn project_unchecked(sym: Matrix<T, 6>) -> Self {
        let star = hodge_star::<T>();
        let coeff = mat_dot(&star, &sym) / T::of(6.0);
        Self {
            op: mat_sub(&sym, &mat_scale(&star, coeff)),
        }
    }

    /// Builds the operator from components `R_ijkl` (1-based indices,
    /// `i < j`, `k < l`). Missing entries are zero; entries related by pair
    /// symmetry must agree within `1e-9`, and the Bianchi contraction of the
    /// finished table must vanish within `1e-9`.
    pub fn from_components(
        entries: &[(usize, usize, usize, usize, T)],
    ) -> Result<Self, CurvatureError> {
        let input_tol = T::of(1e-9);
        let mut op = zeros::<T, 6>();
        let mut set = [[false; 6]; 6];
        for &(i, j, k, l, value) in entries {
            if !(1..=4).contains(&i)
                || !(1..=4).contains(&j)
                || !(1..=4).contains(&k)
                || !(1..=4).contains(&l)
                || i >= j
                || k >= l
            {
                return Err(CurvatureError::InvalidComponent { i, j, k, l });
            }
            let (a, _) = pair_slot(i - 1, j - 1).unwrap();
            let (b, _) = pair_slot(k - 1, l - 1).unwrap();
            for (r, c) in [(a, b), (b, a)] {
                if set[r][c] && (op[r][c] - value).abs() > input_tol {
                    return Err(CurvatureError::SymmetryViolation {
                        i,
                        j,
                        k,
                        l,
                        a: op[r][c].to_f64().unwrap_or(f64::NAN),
                        b: value.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
            op[a][b] = value;
            op[b][a] = value;
            set[a][b] = true;
            set[b][a] = true;
        }
        let bianchi = bianchi_residual_of(&op);
        if bianchi.abs() > input_tol {
            return Err(CurvatureError::BianchiViolation {
                residual: bianchi.abs().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::project_unchecked(op))
    }

    pub fn operator(&self) -> &Matrix<T, 6> {
        &self.op
    }

    /// Component `R_ijkl` for arbitrary distinct 1-based indices.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> T {
        match (pair_slot(i - 1, j - 1), pair_slot(k - 1, l - 1)) {
            (Some((a, sa)), Some((b, sb))) => self.op[a][b] * T::of(sa * sb),
            _ => T::zero(),
        }
    }

    pub fn apply(&self, w: &Vector<T, 6>) -> Vector<T, 6> {
        mat_vec(&self.op, w)
    }

    pub fn quad(&self, w: &Vector<T, 6>) -> T {
        quadratic_form(&self.op, w)
    }

    /// Scalar curvature `s = 2 tr R`.
    pub fn scalar(&self) -> T {
        T::of(2.0) * trace(&self.op)
    }

    /// Sectional curvature of an orthonormal plane.
    pub fn sectional(&self, plane: &Plane<T>) -> T {
        self.quad(&plane.bivector())
    }

    /// Ricci tensor by contraction: `Ric_ij = sum_k R_ikjk`.
    pub fn ricci(&self) -> Matrix<T, 4> {
        ricci_of(&self.op)
    }

    /// Pointwise multiple of the operator (`scaled(1/t^2)` is the curvature
    /// of the metric scaled by `t^2`).
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            op: mat_scale(&self.op, factor),
        }
    }

    pub fn symmetry_residual(&self) -> T {
        max_abs_diff(&self.op, &transpose(&self.op))
    }

    pub fn bianchi_residual(&self) -> T {
        bianchi_residual_of(&self.op)
    }
}

fn bianchi_residual_of<T: Real>(op: &Matrix<T, 6>) -> T {
    // R1234 + R1342 + R1423 = R1234 - R1324 + R1423
    op[0][5] - op[1][4] + op[2][3]
}

fn ricci_of<T: Real>(op: &Matrix<T, 6>) -> Matrix<T, 4> {
    let mut ric = zeros::<T, 4>();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = T::zero();
            for k in 0..4 {
                if let (Some((a, sa)), Some((b, sb))) = (pair_slot(i, k), pair_slot(j, k)) {
                    acc += op[a][b] * T::of(sa * sb);
                }
            }
            ric[i][j] = acc;
        }
    }
    ric
}

/// Output of the Singer-Thorpe block decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylBlocks<T> {
    /// Scalar curvature.
    pub s: T,
    /// Traceless Ricci tensor.
    pub ric0: Matrix<T, 4>,
    /// Self-dual Weyl block in the canonical frame.
    pub wplus: Matrix<T, 3>,
    /// Anti-self-dual Weyl block in the canonical frame.
    pub wminus: Matrix<T, 3>,
    /// Eigenvalues of `wplus`, ascending.
    pub eigplus: [T; 3],
    /// Eigenvalues of `wminus`, ascending.
    pub eigminus: [T; 3],
}

impl<T: Real> WeylBlocks<T> {
    pub fn weyl_plus_norm_sq(&self) -> T {
        linalg::frobenius_norm_sq(&self.wplus)
    }

    pub fn weyl_minus_norm_sq(&self) -> T {
        linalg::frobenius_norm_sq(&self.wminus)
    }

    pub fn ric0_norm_sq(&self) -> T {
        linalg::frobenius_norm_sq(&self.ric0)
    }
}

/// Splits a curvature operator into scalar part, traceless Ricci and the two
/// Weyl blocks. The traceless Ricci is read off the off-diagonal block of the
/// operator in the self-dual/anti-self-dual frame.
pub fn singer_thorpe_decompose<T: Real>(ct: &CurvatureTensor<T>) -> WeylBlocks<T> {
    let q = lambda_basis::<T>();
    let rq = mat_mul(&mat_mul(&transpose(&q), ct.operator()), &q);

    let mut plus = zeros::<T, 3>();
    let mut minus = zeros::<T, 3>();
    for i in 0..3 {
        for j in 0..3 {
            plus[i][j] = rq[i][j];
            minus[i][j] = rq[i + 3][j + 3];
        }
    }
    let third = T::one() / T::of(3.0);
    let tp = trace(&plus) * third;
    let tm = trace(&minus) * third;
    for i in 0..3 {
        plus[i][i] -= tp;
        minus[i][i] -= tm;
    }

    // off-diagonal block back in the 2-form basis, then contracted
    let mut off = zeros::<T, 6>();
    for i in 0..3 {
        for j in 0..3 {
            off[i][j + 3] = rq[i][j + 3];
            off[j + 3][i] = rq[j + 3][i];
        }
    }
    let off_pair = mat_mul(&mat_mul(&q, &off), &transpose(&q));
    let ric0 = ricci_of(&off_pair);

    WeylBlocks {
        s: ct.scalar(),
        ric0,
        wplus: plus,
        wminus: minus,
        eigplus: sym_eigenvalues_3x3(&plus),
        eigminus: sym_eigenvalues_3x3(&minus),
    }
}

/// Rebuilds the curvature operator from its blocks; inverse of
/// [`singer_thorpe_decompose`] up to rounding.
pub fn recompose<T: Real>(blocks: &WeylBlocks<T>) -> CurvatureTensor<T> {
    let q = lambda_basis::<T>();
    let mut weyl_frame = zeros::<T, 6>();
    for i in 0..3 {
        for j in 0..3 {
            weyl_frame[i][j] = blocks.wplus[i][j];
            weyl_frame[i + 3][j + 3] = blocks.wminus[i][j];
        }
    }
    let weyl = mat_mul(&mat_mul(&q, &weyl_frame), &transpose(&q));
    let scalar_part = mat_scale(&identity::<T, 6>(), blocks.s / T::of(12.0));
    let ric_part = mat_scale(&kulkarni_nomizu_id(&blocks.ric0), T::of(0.5));
    CurvatureTensor {
        op: mat_add(&mat_add(&scalar_part, &ric_part), &weyl),
    }
}

/// Sorted Weyl eigenvalue triples `(eig+, eig-)`; each sums to zero.
pub fn weyl_eigenvalues<T: Real>(blocks: &WeylBlocks<T>) -> ([T; 3], [T; 3]) {
    (blocks.eigplus, blocks.eigminus)
}

/// Class of randomly generated curvature tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorClass {
    /// Uniform over the 20-dimensional algebraic curvature subspace.
    General,
    /// Additionally kills the traceless-Ricci (off-diagonal) block.
    Einstein,
}

/// Gaussian random curvature tensor: a symmetric operator projected onto the
/// Bianchi kernel, with the off-diagonal block zeroed for
/// [`TensorClass::Einstein`].
pub fn random_curvature_tensor<T: Real>(seed: u64, class: TensorClass) -> CurvatureTensor<T>
where
    StandardNormal: Distribution<T>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_curvature_tensor_with(&mut rng, class)
}

pub fn random_curvature_tensor_with<T: Real, R: Rng>(
    rng: &mut R,
    class: TensorClass,
) -> CurvatureTensor<T>
where
    StandardNormal: Distribution<T>,
{
    let mut m = zeros::<T, 6>();
    for i in 0..6 {
        for j in i..6 {
            let x: T = rng.sample(StandardNormal);
            m[i][j] = x;
            m[j][i] = x;
        }
    }
    let ct = CurvatureTensor::project_unchecked(m);
    match class {
        TensorClass::General => ct,
        TensorClass::Einstein => {
            let q = lambda_basis::<T>();
            let mut rq = mat_mul(&mat_mul(&transpose(&q), ct.operator()), &q);
            for i in 0..3 {
                for j in 0..3 {
                    rq[i][j + 3] = T::zero();
                    rq[j + 3][i] = T::zero();
                }
            }
            CurvatureTensor {
                op: mat_mul(&mat_mul(&q, &rq), &transpose(&q)),
            }
        }
    }
}

/// Random self-dual 2-form with Gaussian coordinates in the canonical frame.
pub fn random_selfdual_form<T: Real, R: Rng>(rng: &mut R) -> Vector<T, 6>
where
    StandardNormal: Distribution<T>,
{
    let q = lambda_basis::<T>();
    let mut w = [T::zero(); 6];
    for col in 0..3 {
        let x: T = rng.sample(StandardNormal);
        for row in 0..6 {
            w[row] += q[row][col] * x;
        }
    }
    w
}

/// Haar-ish random rotation: Gram-Schmidt of a Gaussian 4-frame with the
/// determinant sign fixed.
pub fn random_rotation_so4<T: Real, R: Rng>(rng: &mut R) -> Matrix<T, 4>
where
    StandardNormal: Distribution<T>,
{
    loop {
        let mut vs = [[T::zero(); 4]; 4];
        for v in &mut vs {
            for x in v.iter_mut() {
                *x = rng.sample(StandardNormal);
            }
        }
        if let Some(mut frame) = gram_schmidt(&vs, T::of(1e-8)) {
            if det4_cols(&frame) < T::zero() {
                frame.swap(2, 3);
            }
            let mut rot = zeros::<T, 4>();
            for (j, col) in frame.iter().enumerate() {
                for i in 0..4 {
                    rot[i][j] = col[i];
                }
            }
            return rot;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Vector<f64, 4> {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        v
    }

    pub(crate) fn product_tensor(k1: f64, k2: f64) -> CurvatureTensor<f64> {
        let mut op = zeros::<f64, 6>();
        op[0][0] = k1;
        op[5][5] = k2;
        CurvatureTensor::from_operator(op).unwrap()
    }

    #[test]
    fn star_is_an_involution_with_canonical_eigenforms() {
        let star = hodge_star::<f64>();
        assert_eq!(mat_mul(&star, &star), identity::<f64, 6>());
        // *(e1^e2) = e3^e4
        let w = wedge(&e(0), &e(1));
        let sw = mat_vec(&star, &w);
        assert_eq!(sw, wedge(&e(2), &e(3)));
        let q = lambda_basis::<f64>();
        for col in 0..6 {
            let mut v = [0.0; 6];
            for row in 0..6 {
                v[row] = q[row][col];
            }
            let sv = mat_vec(&star, &v);
            let sign = if col < 3 { 1.0 } else { -1.0 };
            for row in 0..6 {
                assert!((sv[row] - sign * v[row]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn projectors_have_rank_three_and_annihilate_each_other() {
        let (pp, pm) = lambda_projectors::<f64>();
        assert!(max_abs_diff(&mat_mul(&pp, &pp), &pp) < 1e-15);
        assert!(max_abs_diff(&mat_mul(&pm, &pm), &pm) < 1e-15);
        assert!(linalg::max_abs(&mat_mul(&pp, &pm)) < 1e-15);
        assert!((trace(&pp) - 3.0).abs() < 1e-15);
        assert!((trace(&pm) - 3.0).abs() < 1e-15);
        // P+(e1^e2) = w1+/sqrt2
        let w = mat_vec(&pp, &wedge(&e(0), &e(1)));
        let q = lambda_basis::<f64>();
        for row in 0..6 {
            assert!((w[row] - q[row][0] / 2.0f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_curvature_table_gives_identity() {
        // R_ijkl = d_ik d_jl - d_il d_jk over all i<j, k<l
        let mut entries = Vec::new();
        for &(i, j) in &BASIS_PAIRS {
            for &(k, l) in &BASIS_PAIRS {
                let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
                entries.push((i + 1, j + 1, k + 1, l + 1, d(i, k) * d(j, l) - d(i, l) * d(j, k)));
            }
        }
        let ct = CurvatureTensor::from_components(&entries).unwrap();
        assert!(max_abs_diff(ct.operator(), &identity::<f64, 6>()) < 1e-15);
        assert_eq!(ct.scalar(), 12.0);
        // every sectional curvature is 1
        let p = Plane::span([1.0, 2.0, 0.5, -1.0], [0.0, 1.0, -3.0, 2.0]).unwrap();
        assert!((ct.sectional(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_table_gives_flat_space() {
        let ct = CurvatureTensor::<f64>::from_components(&[]).unwrap();
        assert_eq!(ct.scalar(), 0.0);
        assert_eq!(linalg::max_abs(ct.operator()), 0.0);
    }

    #[test]
    fn product_table_gives_block_diagonal_operator() {
        let entries = vec![
            (1usize, 2usize, 1usize, 2usize, -1.0f64),
            (3, 4, 3, 4, -1.0),
            (1, 3, 1, 3, 0.0),
        ];
        let ct = CurvatureTensor::from_components(&entries).unwrap();
        let mut expect = zeros::<f64, 6>();
        expect[0][0] = -1.0;
        expect[5][5] = -1.0;
        assert!(max_abs_diff(ct.operator(), &expect) < 1e-15);
        let p12 = Plane::new(e(0), e(1)).unwrap();
        let p13 = Plane::new(e(0), e(2)).unwrap();
        assert!((ct.sectional(&p12) + 1.0).abs() < 1e-15);
        assert!(ct.sectional(&p13).abs() < 1e-15);
    }

    #[test]
    fn bianchi_violating_table_is_rejected() {
        // R1234 alone breaks the Bianchi contraction
        let entries = vec![(1usize, 2usize, 3usize, 4usize, 1.0f64)];
        match CurvatureTensor::from_components(&entries) {
            Err(CurvatureError::BianchiViolation { .. }) => {}
            other => panic!("expected Bianchi violation, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_pair_symmetry_is_rejected() {
        let entries = vec![
            (1usize, 2usize, 1usize, 3usize, 1.0f64),
            (1, 3, 1, 2, 0.5),
        ];
        match CurvatureTensor::from_components(&entries) {
            Err(CurvatureError::SymmetryViolation { .. }) => {}
            other => panic!("expected symmetry violation, got {other:?}"),
        }
    }

    #[test]
    fn sphere_decomposition_is_pure_scalar() {
        let ct = CurvatureTensor::from_operator(identity::<f64, 6>()).unwrap();
        let blocks = singer_thorpe_decompose(&ct);
        assert!((blocks.s - 12.0).abs() < 1e-13);
        assert!(blocks.ric0_norm_sq() < 1e-26);
        assert!(blocks.weyl_plus_norm_sq() < 1e-26);
        assert!(blocks.weyl_minus_norm_sq() < 1e-26);
    }

    #[test]
    fn hyperbolic_product_decomposition_matches_closed_form() {
        let ct = product_tensor(-1.0, -1.0);
        let blocks = singer_thorpe_decompose(&ct);
        assert!((blocks.s + 4.0).abs() < 1e-14);
        assert!(blocks.ric0_norm_sq() < 1e-26);
        for eig in [blocks.eigplus, blocks.eigminus] {
            assert!((eig[0] + 2.0 / 3.0).abs() < 1e-13);
            assert!((eig[1] - 1.0 / 3.0).abs() < 1e-13);
            assert!((eig[2] - 1.0 / 3.0).abs() < 1e-13);
        }
        let s2_24 = blocks.s * blocks.s / 24.0;
        assert!((blocks.weyl_plus_norm_sq() - s2_24).abs() < 1e-13);
        assert!((blocks.weyl_minus_norm_sq() - s2_24).abs() < 1e-13);
    }

    #[test]
    fn decompose_recompose_roundtrip_on_random_tensor() {
        for seed in 0..32 {
            let ct = random_curvature_tensor::<f64>(seed, TensorClass::General);
            let blocks = singer_thorpe_decompose(&ct);
            let back = recompose(&blocks);
            assert!(max_abs_diff(ct.operator(), back.operator()) < 1e-12);
            // block traces agree with the scalar curvature
            assert!((trace(&blocks.wplus)).abs() < 1e-13);
            assert!((trace(&blocks.wminus)).abs() < 1e-13);
            assert!((trace(&blocks.ric0)).abs() < 1e-12);
        }
    }

    #[test]
    fn ric0_from_block_agrees_with_ricci_contraction() {
        for seed in 0..64 {
            let ct = random_curvature_tensor::<f64>(seed, TensorClass::General);
            let blocks = singer_thorpe_decompose(&ct);
            // contraction route: Ric - (s/4) Id
            let mut expect = ct.ricci();
            for i in 0..4 {
                expect[i][i] -= blocks.s / 4.0;
            }
            assert!(max_abs_diff(&blocks.ric0, &expect) < 1e-12);
        }
    }

    #[test]
    fn einstein_class_kills_traceless_ricci() {
        for seed in 0..16 {
            let ct = random_curvature_tensor::<f64>(seed, TensorClass::Einstein);
            let blocks = singer_thorpe_decompose(&ct);
            assert!(blocks.ric0_norm_sq().sqrt() < 1e-12);
            assert!(ct.bianchi_residual().abs() < 1e-12);
        }
    }

    #[test]
    fn fixed_seed_reproduces_tensor() {
        let a = random_curvature_tensor::<f64>(1234, TensorClass::General);
        let b = random_curvature_tensor::<f64>(1234, TensorClass::General);
        assert_eq!(a.operator(), b.operator());
    }

    #[test]
    fn ricci_of_contraction_matches_trace_identities() {
        for seed in 0..16 {
            let ct = random_curvature_tensor::<f64>(seed, TensorClass::General);
            let ric = ct.ricci();
            let s_from_ric = trace(&ric);
            assert!((s_from_ric - ct.scalar()).abs() < 1e-10);
        }
    }

    #[test]
    fn orthogonal_plane_of_coordinate_plane() {
        let p = Plane::new(e(0), e(1)).unwrap();
        let q = p.orthogonal().unwrap();
        let (u, v) = q.basis();
        assert!((wedge(&u, &v)[5] - 1.0).abs() < 1e-14);
        // double complement spans the original plane
        let back = q.orthogonal().unwrap();
        assert!(max_abs_diff(&back.projector(), &p.projector()) < 1e-12);
    }

    #[test]
    fn plane_projector_pair_sums_to_identity() {
        let p = Plane::span([1.0, 0.3, -2.0, 0.7], [0.5, -1.0, 0.0, 2.0]).unwrap();
        let q = p.orthogonal().unwrap();
        let sum = mat_add(&p.projector(), &q.projector());
        assert!(max_abs_diff(&sum, &identity::<f64, 4>()) < 1e-12);
        // orientation: u ^ v ^ u' ^ v' positive
        let (u, v) = p.basis();
        let (up, vp) = q.basis();
        assert!(det4_cols(&[u, v, up, vp]) > 0.0);
    }

    #[test]
    fn degenerate_span_is_rejected() {
        match Plane::span([1.0, 0.0, 0.0, 0.0], [1.0 + 1e-12, 0.0, 0.0, 0.0]) {
            Err(CurvatureError::DegeneratePlane { .. }) => {}
            other => panic!("expected degenerate plane, got {other:?}"),
        }
    }

    #[test]
    fn invalid_plane_is_rejected() {
        match Plane::new(e(0), [0.0, 2.0, 0.0, 0.0]) {
            Err(CurvatureError::InvalidPlane { .. }) => {}
            other => panic!("expected invalid plane, got {other:?}"),
        }
    }

    #[test]
    fn f32_instantiation_works_at_reduced_precision() {
        let ct = CurvatureTensor::<f32>::from_operator(identity::<f32, 6>()).unwrap();
        let blocks = singer_thorpe_decompose(&ct);
        assert!((blocks.s - 12.0f32).abs() < 1e-5);
        let back = recompose(&blocks);
        assert!(max_abs_diff(ct.operator(), back.operator()) < 1e-5);
    }
}
