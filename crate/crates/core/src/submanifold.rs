//! Pointwise submanifold algebra: Weingarten operators of a 4-dimensional
//! submanifold of a constant-curvature space, the Gauss-equation curvature
//! they induce, and the pinching criteria built on it.
//!
//! Frame convention: when the mean curvature vector is nonzero the first
//! normal direction is parallel to it, so `tr A_1 = 4H >= 0` and
//! `tr A_b = 0` for `b >= 2`. Below the `1e-12` mean-curvature cutoff the
//! smallest Weingarten eigenvalue is reported as 0.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::biorthogonal::k1perp_bruteforce;
use crate::curvature::{wedge, CurvatureTensor, BASIS_PAIRS};
use crate::linalg::{
    jacobi_eigenvalues, max_abs_diff, trace, transpose, zeros, Matrix,
};
use crate::report::CheckReport;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubmanifoldError {
    #[error("Weingarten operator {index} is not symmetric: residual {residual}")]
    NotSymmetric { index: usize, residual: f64 },
    #[error("no Weingarten operators supplied (codimension must be >= 1)")]
    EmptyFrame,
    #[error("frame convention violated: {0}")]
    FrameConvention(String),
    #[error("points do not share the ambient data: {0}")]
    MixedAmbient(String),
    #[error("tangent index {0} out of range 1..=4 or repeated")]
    IndexError(usize),
    #[error("homology degree p = {0} is out of range; dimension 4 forces p = 2")]
    InvalidP(usize),
    #[error("this criterion applies to submanifolds of the unit sphere (c = 1), got c = {0}")]
    AmbientNotUnitSphere(f64),
}

/// Pointwise data of an isometric immersion into a space of constant
/// sectional curvature `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionPoint<T> {
    c: T,
    weingarten: Vec<Matrix<T, 4>>,
}

impl<T: Real> ImmersionPoint<T> {
    /// Strict constructor; operators must already follow the frame
    /// convention.
    pub fn new(c: T, weingarten: Vec<Matrix<T, 4>>) -> Result<Self, SubmanifoldError> {
        if weingarten.is_empty() {
            return Err(SubmanifoldError::EmptyFrame);
        }
        for (index, a) in weingarten.iter().enumerate() {
            let residual = max_abs_diff(a, &transpose(a));
            if residual > T::of(1e-12) {
                return Err(SubmanifoldError::NotSymmetric {
                    index: index + 1,
                    residual: residual.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let h = trace(&weingarten[0]) / T::of(4.0);
        if h < -T::of(1e-12) {
            return Err(SubmanifoldError::FrameConvention(format!(
                "tr A_1 = {} < 0; the first normal must point along the mean curvature vector",
                trace(&weingarten[0])
            )));
        }
        if h > T::of(1e-12) {
            for (index, a) in weingarten.iter().enumerate().skip(1) {
                let t = trace(a);
                if t.abs() > T::of(1e-10) {
                    return Err(SubmanifoldError::FrameConvention(format!(
                        "tr A_{} = {t} but must vanish when H > 0",
                        index + 1
                    )));
                }
            }
        }
        Ok(Self { c, weingarten })
    }

    /// Builds a point from arbitrary symmetric operators by rotating the
    /// normal frame into the convention.
    pub fn from_raw(c: T, raw: Vec<Matrix<T, 4>>) -> Result<Self, SubmanifoldError> {
        if raw.is_empty() {
            return Err(SubmanifoldError::EmptyFrame);
        }
        let m = raw.len();
        let traces: Vec<T> = raw.iter().map(|a| trace(a) / T::of(4.0)).collect();
        let h = traces.iter().fold(T::zero(), |acc, t| acc + *t * *t).sqrt();
        if h <= T::of(1e-12) {
            return Self::new(c, raw);
        }
        // orthonormal basis of R^m with the first vector along the mean
        // curvature direction
        let mut basis: Vec<Vec<T>> = vec![traces.iter().map(|t| *t / h).collect()];
        for k in 0..m {
            let mut v = vec![T::zero(); m];
            v[k] = T::one();
            for b in &basis {
                let proj: T = v.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * *y;
                }
            }
            let n = v.iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt();
            if n > T::of(1e-10) {
                for x in &mut v {
                    *x /= n;
                }
                basis.push(v);
            }
            if basis.len() == m {
                break;
            }
        }
        let rotated: Vec<Matrix<T, 4>> = basis
            .iter()
            .map(|b| {
                let mut acc = zeros::<T, 4>();
                for (w, a) in b.iter().zip(&raw) {
                    for i in 0..4 {
                        for j in 0..4 {
                            acc[i][j] += *w * a[i][j];
                        }
                    }
                }
                acc
            })
            .collect();
        Self::new(c, rotated)
    }

    pub fn ambient_curvature(&self) -> T {
        self.c
    }

    pub fn codimension(&self) -> usize {
        self.weingarten.len()
    }

    pub fn weingarten(&self) -> &[Matrix<T, 4>] {
        &self.weingarten
    }

    /// Mean curvature and the smallest eigenvalue of the first Weingarten
    /// operator (0 below the mean-curvature cutoff).
    pub fn mean_curvature(&self) -> (T, T) {
        let h = trace(&self.weingarten[0]) / T::of(4.0);
        if h <= T::of(1e-12) {
            (h.max(T::zero()), T::zero())
        } else {
            (h, jacobi_eigenvalues(&self.weingarten[0])[0])
        }
    }

    /// Squared norm of the second fundamental form, `sum_b tr(A_b^2)`.
    pub fn norm_alpha_sq(&self) -> T {
        self.weingarten
            .iter()
            .map(|a| {
                let mut acc = T::zero();
                for i in 0..4 {
                    for j in 0..4 {
                        acc += a[i][j] * a[j][i];
                    }
                }
                acc
            })
            .fold(T::zero(), |acc, x| acc + x)
    }

    /// Gauss equation: `R = c Id + sum_b Lambda^2 A_b` on 2-forms, i.e.
    /// `R_ijkl = c (d_ik d_jl - d_il d_jk) + sum_b (A_ik A_jl - A_il A_jk)`.
    pub fn induced_curvature(&self) -> CurvatureTensor<T> {
        let mut op = zeros::<T, 6>();
        for slot in 0..6 {
            op[slot][slot] = self.c;
        }
        for a in &self.weingarten {
            for (p, &(i, j)) in BASIS_PAIRS.iter().enumerate() {
                for (q, &(k, l)) in BASIS_PAIRS.iter().enumerate() {
                    op[p][q] += a[i][k] * a[j][l] - a[i][l] * a[j][k];
                }
            }
        }
        CurvatureTensor::from_operator_with_tol(op, T::of(1e-9))
            .expect("Gauss-equation output is an algebraic curvature tensor")
    }
}

/// `4 K1perp >= -|alpha|^2 + 4(2H^2 + c)` on the induced curvature.
pub fn k1perp_lower_bound_check<T: Real>(ip: &ImmersionPoint<T>, tol: T) -> CheckReport<T> {
    let ct = ip.induced_curvature();
    let (h, _) = ip.mean_curvature();
    let lhs = T::of(4.0) * crate::biorthogonal::k1perp_closed_form(&ct);
    let rhs = -ip.norm_alpha_sq() + T::of(8.0) * h * h + T::of(4.0) * ip.ambient_curvature();
    CheckReport::greater_equal(
        "k1perp_lower_bound",
        lhs,
        rhs,
        tol,
        "4 K1perp >= -|alpha|^2 + 4(2H^2 + c); equality on umbilic and Clifford-type points",
    )
}

/// The two pointwise inequalities behind the pinching bound, for the frame
/// plane spanned by tangent directions `i`, `j` (1-based):
/// `2K(e_i, e_j) >= Ric(e_i) + Ric(e_j) - 4H^2 - 4c` and
/// `4 Kperp(P) >= s - 8H^2 - 8c`.
pub fn ricci_pair_bound_check<T: Real>(
    ip: &ImmersionPoint<T>,
    i: usize,
    j: usize,
    tol: T,
) -> Result<[CheckReport<T>; 2], SubmanifoldError> {
    if !(1..=4).contains(&i) {
        return Err(SubmanifoldError::IndexError(i));
    }
    if !(1..=4).contains(&j) || i == j {
        return Err(SubmanifoldError::IndexError(j));
    }
    let ct = ip.induced_curvature();
    let ric = ct.ricci();
    let (h, _) = ip.mean_curvature();
    let c = ip.ambient_curvature();
    let (a, b) = (i - 1, j - 1);

    let mut ei = [T::zero(); 4];
    let mut ej = [T::zero(); 4];
    ei[a] = T::one();
    ej[b] = T::one();
    let k_ij = ct.quad(&wedge(&ei, &ej));
    let pair = CheckReport::greater_equal(
        format!("ricci_pair_bound_{i}{j}"),
        T::of(2.0) * k_ij,
        ric[a][a] + ric[b][b] - T::of(4.0) * h * h - T::of(4.0) * c,
        tol,
        "2K(e_i, e_j) >= Ric(e_i) + Ric(e_j) - 4H^2 - 4c",
    );

    // complement pair of the coordinate plane
    let rest: Vec<usize> = (0..4).filter(|k| *k != a && *k != b).collect();
    let mut ek = [T::zero(); 4];
    let mut el = [T::zero(); 4];
    ek[rest[0]] = T::one();
    el[rest[1]] = T::one();
    let k_perp = ct.quad(&wedge(&ek, &el));
    let biorth = CheckReport::greater_equal(
        format!("biorthogonal_scalar_bound_{i}{j}"),
        T::of(2.0) * (k_ij + k_perp),
        ct.scalar() - T::of(8.0) * h * h - T::of(8.0) * c,
        tol,
        "4 Kperp(P) >= s - 8H^2 - 8c",
    );
    Ok([pair, biorth])
}

/// Scalar curvature two ways: the Ricci trace of the induced tensor and the
/// closed form `12c + 16H^2 - |alpha|^2`.
pub fn scalar_curvature_consistency<T: Real>(ip: &ImmersionPoint<T>) -> (T, T) {
    let ct = ip.induced_curvature();
    let (h, _) = ip.mean_curvature();
    let closed =
        T::of(12.0) * ip.ambient_curvature() + T::of(16.0) * h * h - ip.norm_alpha_sq();
    (trace(&ct.ricci()), closed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// Unit sphere, `c = 1`.
    Sphere,
    /// Euclidean space, `c = 0`.
    Euclidean,
}

impl Ambient {
    pub fn curvature<T: Real>(&self) -> T {
        match self {
            Ambient::Sphere => T::one(),
            Ambient::Euclidean => T::zero(),
        }
    }
}

/// Topological verdict of the pinching criteria. The minimality and
/// product-splitting labels hold on the sampled points only; no global
/// statement is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SphereTheoremVerdict {
    HomeoSphere,
    PositiveBiorthogonal { homeo_sphere: bool },
    NonnegativeBiorthogonal {
        minimal_on_samples: bool,
        product_of_spheres: bool,
    },
    Inconclusive,
}

impl SphereTheoremVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SphereTheoremVerdict::HomeoSphere => "HomeoSphere",
            SphereTheoremVerdict::PositiveBiorthogonal { homeo_sphere: true } => {
                "PositiveBiorthogonal+HomeoSphere"
            }
            SphereTheoremVerdict::PositiveBiorthogonal { homeo_sphere: false } => {
                "PositiveBiorthogonal"
            }
            SphereTheoremVerdict::NonnegativeBiorthogonal {
                product_of_spheres: true,
                ..
            } => "ProductOfSpheres",
            SphereTheoremVerdict::NonnegativeBiorthogonal {
                minimal_on_samples: true,
                ..
            } => "MinimalSubmanifold",
            SphereTheoremVerdict::NonnegativeBiorthogonal { .. } => "NonnegativeBiorthogonal",
            SphereTheoremVerdict::Inconclusive => "Inconclusive",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SphereTheoremVerdict::HomeoSphere => {
                "homeomorphic to the 4-sphere (vanishing middle homology plus finite fundamental group, via Asperti-Costa and Lemma 2.2 of [AC])".into()
            }
            SphereTheoremVerdict::PositiveBiorthogonal { homeo_sphere } => {
                let mut s = String::from("positive biorthogonal curvature");
                if *homeo_sphere {
                    s.push_str("; homeomorphic to the 4-sphere (finite fundamental group)");
                }
                s
            }
            SphereTheoremVerdict::NonnegativeBiorthogonal {
                minimal_on_samples,
                product_of_spheres,
            } => {
                let mut s = String::from("nonnegative biorthogonal curvature");
                if *minimal_on_samples {
                    s.push_str("; minimal on sampled points");
                }
                if *product_of_spheres {
                    s.push_str(
                        "; hypersurface case splits as a product of round 2-spheres (Chern-do Carmo-Kobayashi), on sampled points",
                    );
                }
                s
            }
            SphereTheoremVerdict::Inconclusive => "no criterion applies".into(),
        }
    }
}

impl fmt::Display for SphereTheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Worst-point pinching verdict over a set of sampled points sharing the
/// ambient space and codimension.
pub fn sphere_theorem_verdict<T: Real>(
    points: &[ImmersionPoint<T>],
    ambient: Ambient,
    pi1_finite: bool,
    samples: usize,
    seed: u64,
) -> Result<SphereTheoremVerdict, SubmanifoldError>
where
    StandardNormal: Distribution<T>,
{
    if points.is_empty() {
        return Err(SubmanifoldError::MixedAmbient("no points supplied".into()));
    }
    let c: T = ambient.curvature();
    let m = points[0].codimension();
    for p in points {
        if (p.ambient_curvature() - c).abs() > T::of(1e-12) {
            return Err(SubmanifoldError::MixedAmbient(format!(
                "ambient curvature {} does not match {}",
                p.ambient_curvature(),
                c
            )));
        }
        if p.codimension() != m {
            return Err(SubmanifoldError::MixedAmbient(format!(
                "codimension {} does not match {m}",
                p.codimension()
            )));
        }
    }

    let mut max_alpha_sq = T::neg_infinity();
    let mut min_threshold = T::infinity();
    for p in points {
        let (h, _) = p.mean_curvature();
        max_alpha_sq = max_alpha_sq.max(p.norm_alpha_sq());
        min_threshold = min_threshold.min(T::of(4.0) * (T::of(2.0) * h * h + c));
    }

    if max_alpha_sq < min_threshold && pi1_finite {
        return Ok(SphereTheoremVerdict::HomeoSphere);
    }
    if ambient == Ambient::Sphere {
        if max_alpha_sq < T::of(4.0) {
            return Ok(SphereTheoremVerdict::PositiveBiorthogonal {
                homeo_sphere: pi1_finite,
            });
        }
        if max_alpha_sq <= T::of(4.0) {
            let minimal_on_samples = points.iter().enumerate().all(|(idx, p)| {
                let ct = p.induced_curvature();
                k1perp_bruteforce(&ct, samples, seed.wrapping_add(idx as u64)).abs() <= T::of(1e-8)
            });
            return Ok(SphereTheoremVerdict::NonnegativeBiorthogonal {
                minimal_on_samples,
                product_of_spheres: minimal_on_samples && m == 1,
            });
        }
    }
    Ok(SphereTheoremVerdict::Inconclusive)
}

/// Homology-vanishing threshold in dimension 4 (`p = 2` forced):
/// `|alpha|^2 < 8H^2 + 4c` strictly.
pub fn asperti_costa_condition<T: Real>(
    ip: &ImmersionPoint<T>,
    p: usize,
    tol: T,
) -> Result<CheckReport<T>, SubmanifoldError> {
    if p != 2 {
        return Err(SubmanifoldError::InvalidP(p));
    }
    let (h, _) = ip.mean_curvature();
    let rhs = T::of(8.0) * h * h + T::of(4.0) * ip.ambient_curvature();
    Ok(CheckReport::less_equal(
        "asperti_costa_condition",
        ip.norm_alpha_sq(),
        rhs,
        tol,
        "strict bound |alpha|^2 < n^2 H^2/(n-p) + n(n-2p) H lambda1/(n-p) + nc at n = 4, p = 2; an equality verdict means the boundary case, hypothesis not strictly satisfied",
    ))
}

/// Homotopy-sphere threshold for submanifolds of the unit sphere:
/// `|alpha|^2 < 3` strictly.
pub fn lawson_simons_condition<T: Real>(
    ip: &ImmersionPoint<T>,
    tol: T,
) -> Result<CheckReport<T>, SubmanifoldError> {
    let c = ip.ambient_curvature();
    if (c - T::one()).abs() > T::of(1e-12) {
        return Err(SubmanifoldError::AmbientNotUnitSphere(
            c.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(CheckReport::less_equal(
        "lawson_simons_condition",
        ip.norm_alpha_sq(),
        T::of(3.0),
        tol,
        "strict bound |alpha|^2 < 3 for a homotopy 4-sphere in the unit sphere; an equality verdict means the boundary case, hypothesis not strictly satisfied",
    ))
}

/// Classical fixtures.
pub mod fixtures {
    use super::*;
    use crate::linalg::identity;

    /// Round `S^4` of radius `r` in Euclidean 5-space: umbilic with
    /// `A = (1/r) Id`.
    pub fn umbilic_hypersphere<T: Real>(r: T) -> ImmersionPoint<T> {
        let a = crate::linalg::mat_scale(&identity::<T, 4>(), T::one() / r);
        ImmersionPoint::new(T::zero(), vec![a]).expect("umbilic fixture is valid")
    }

    /// Umbilic small sphere in the unit 5-sphere with `A = lambda Id`.
    pub fn umbilic_in_unit_sphere<T: Real>(lambda: T) -> ImmersionPoint<T> {
        let a = crate::linalg::mat_scale(&identity::<T, 4>(), lambda);
        ImmersionPoint::new(T::one(), vec![a]).expect("umbilic fixture is valid")
    }

    /// Minimal Clifford-type hypersurface `S^2(1/sqrt2) x S^2(1/sqrt2)` of
    /// the unit 5-sphere: `A = diag(1, 1, -1, -1)`.
    pub fn clifford_product<T: Real>() -> ImmersionPoint<T> {
        let mut a = zeros::<T, 4>();
        a[0][0] = T::one();
        a[1][1] = T::one();
        a[2][2] = -T::one();
        a[3][3] = -T::one();
        ImmersionPoint::new(T::one(), vec![a]).expect("Clifford fixture is valid")
    }
}

/// Random point: Gaussian symmetric Weingarten operators, frame-normalized,
/// with codimension up to `max_codim` and ambient curvature in `[0, 2)`.
pub fn random_immersion_point<T: Real, R: Rng>(
    rng: &mut R,
    max_codim: usize,
) -> ImmersionPoint<T>
where
    StandardNormal: Distribution<T>,
{
    let m = rng.random_range(1..=max_codim.max(1));
    let c = T::of(2.0 * rng.random::<f64>());
    let mut raw = Vec::with_capacity(m);
    for _ in 0..m {
        let mut a = zeros::<T, 4>();
        for i in 0..4 {
            for j in i..4 {
                let x: T = rng.sample(StandardNormal);
                a[i][j] = x;
                a[j][i] = x;
            }
        }
        raw.push(a);
    }
    ImmersionPoint::from_raw(c, raw).expect("random point normalizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biorthogonal::k1perp_closed_form;
    use crate::curvature::random_rotation_so4;
    use crate::linalg::{identity, mat_mul, mat_scale};
    use crate::report::Verdict;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn umbilic_hypersphere_data() {
        let ip = fixtures::umbilic_hypersphere(2.0f64);
        let (h, l1) = ip.mean_curvature();
        assert_eq!(h, 0.5);
        assert_eq!(l1, 0.5);
        let ct = ip.induced_curvature();
        assert!((ct.scalar() - 12.0 / 4.0).abs() < 1e-13);
        let (a, b) = scalar_curvature_consistency(&ip);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn clifford_data_and_induced_product_metric() {
        let ip = fixtures::clifford_product::<f64>();
        let (h, l1) = ip.mean_curvature();
        assert_eq!(h, 0.0);
        // mean-curvature cutoff convention
        assert_eq!(l1, 0.0);
        assert_eq!(ip.norm_alpha_sq(), 4.0);
        let ct = ip.induced_curvature();
        assert!((ct.scalar() - 8.0).abs() < 1e-13);
        // factor planes have curvature 2, mixed planes 0
        assert!((ct.operator()[0][0] - 2.0).abs() < 1e-13);
        assert!((ct.operator()[5][5] - 2.0).abs() < 1e-13);
        assert!(ct.operator()[1][1].abs() < 1e-13);
        assert!(k1perp_closed_form(&ct).abs() < 1e-13);
    }

    #[test]
    fn diagonal_example_mean_curvature() {
        let mut a = zeros::<f64, 4>();
        a[0][0] = 3.0;
        a[1][1] = 1.0;
        let ip = ImmersionPoint::new(0.0, vec![a]).unwrap();
        let (h, l1) = ip.mean_curvature();
        assert_eq!(h, 1.0);
        assert_eq!(l1, 0.0);
    }

    #[test]
    fn pinching_bound_equalities() {
        let tol = 1e-9;
        let umbilic = fixtures::umbilic_hypersphere(1.5f64);
        let r = k1perp_lower_bound_check(&umbilic, tol);
        assert_eq!(r.verdict, Verdict::Equality);
        let clifford = fixtures::clifford_product::<f64>();
        let r = k1perp_lower_bound_check(&clifford, tol);
        assert_eq!(r.verdict, Verdict::Equality);
        assert!(r.lhs.abs() < 1e-12 && r.rhs.abs() < 1e-12);
    }

    #[test]
    fn ricci_pair_bounds_on_fixtures() {
        let tol = 1e-9;
        let umbilic = fixtures::umbilic_hypersphere(1.0f64);
        let [pair, biorth] = ricci_pair_bound_check(&umbilic, 1, 2, tol).unwrap();
        assert_eq!(pair.verdict, Verdict::Equality);
        assert_eq!(biorth.verdict, Verdict::Equality);

        let clifford = fixtures::clifford_product::<f64>();
        let [pair, _] = ricci_pair_bound_check(&clifford, 1, 2, tol).unwrap();
        assert_eq!(pair.verdict, Verdict::Pass);
        assert!((pair.margin - 4.0).abs() < 1e-12);

        assert!(matches!(
            ricci_pair_bound_check(&clifford, 1, 1, tol),
            Err(SubmanifoldError::IndexError(1))
        ));
        assert!(matches!(
            ricci_pair_bound_check(&clifford, 0, 2, tol),
            Err(SubmanifoldError::IndexError(0))
        ));
    }

    #[test]
    fn pinching_bounds_hold_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let ip = random_immersion_point::<f64, _>(&mut rng, 3);
            let (h, _) = ip.mean_curvature();
            assert!(ip.norm_alpha_sq() >= 4.0 * h * h - 1e-12);
            let r = k1perp_lower_bound_check(&ip, 1e-9);
            assert!(r.margin >= -1e-9, "margin {}", r.margin);
            let [pair, biorth] = ricci_pair_bound_check(&ip, 1, 3, 1e-9).unwrap();
            assert!(pair.margin >= -1e-9);
            assert!(biorth.margin >= -1e-9);
            let (a, b) = scalar_curvature_consistency(&ip);
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn frame_covariance_under_tangent_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..32 {
            let ip = random_immersion_point::<f64, _>(&mut rng, 3);
            let q = random_rotation_so4::<f64, _>(&mut rng);
            let rotated: Vec<Matrix<f64, 4>> = ip
                .weingarten()
                .iter()
                .map(|a| mat_mul(&mat_mul(&transpose(&q), a), &q))
                .collect();
            let rotated_ip = ImmersionPoint::new(ip.ambient_curvature(), rotated).unwrap();
            let (h0, l0) = ip.mean_curvature();
            let (h1, l1) = rotated_ip.mean_curvature();
            assert!((h0 - h1).abs() < 1e-10);
            assert!((l0 - l1).abs() < 1e-10);
            assert!((ip.norm_alpha_sq() - rotated_ip.norm_alpha_sq()).abs() < 1e-10);
            let k0 = k1perp_closed_form(&ip.induced_curvature());
            let k1 = k1perp_closed_form(&rotated_ip.induced_curvature());
            assert!((k0 - k1).abs() < 1e-10);
        }
    }

    #[test]
    fn sphere_theorem_verdicts_on_fixtures() {
        // Clifford hypersurface: boundary case, minimal, splits
        let clifford = vec![fixtures::clifford_product::<f64>()];
        let verdict =
            sphere_theorem_verdict(&clifford, Ambient::Sphere, false, 20_000, 0).unwrap();
        assert_eq!(verdict.label(), "ProductOfSpheres");

        // small umbilic sphere: strict pinching, homeomorphic to S^4
        let umbilic = vec![fixtures::umbilic_in_unit_sphere(0.5f64)];
        let verdict = sphere_theorem_verdict(&umbilic, Ambient::Sphere, true, 1_000, 0).unwrap();
        assert_eq!(verdict, SphereTheoremVerdict::HomeoSphere);
        // without the fundamental-group hypothesis only positivity remains
        let verdict = sphere_theorem_verdict(&umbilic, Ambient::Sphere, false, 1_000, 0).unwrap();
        assert_eq!(
            verdict,
            SphereTheoremVerdict::PositiveBiorthogonal { homeo_sphere: false }
        );

        // Euclidean umbilic with 4(2H^2 + c) = 32 > 16
        let big = {
            let a = mat_scale(&identity::<f64, 4>(), 2.0);
            ImmersionPoint::new(0.0, vec![a]).unwrap()
        };
        let verdict = sphere_theorem_verdict(&[big], Ambient::Euclidean, true, 1_000, 0).unwrap();
        assert_eq!(verdict, SphereTheoremVerdict::HomeoSphere);

        // far from every threshold
        let fat = {
            let a = mat_scale(&identity::<f64, 4>(), 2.0);
            ImmersionPoint::new(1.0, vec![a]).unwrap()
        };
        let verdict = sphere_theorem_verdict(&[fat], Ambient::Sphere, false, 1_000, 0).unwrap();
        assert_eq!(verdict, SphereTheoremVerdict::Inconclusive);
    }

    #[test]
    fn sphere_theorem_rejects_mixed_ambient() {
        let a = fixtures::clifford_product::<f64>();
        let b = fixtures::umbilic_hypersphere(1.0f64);
        assert!(matches!(
            sphere_theorem_verdict(&[a, b], Ambient::Sphere, false, 100, 0),
            Err(SubmanifoldError::MixedAmbient(_))
        ));
    }

    #[test]
    fn asperti_costa_and_lawson_simons_thresholds() {
        let tol = 1e-9;
        // unit umbilic sphere in the unit 5-sphere: AC passes, LS fails
        let ip = fixtures::umbilic_in_unit_sphere(1.0f64);
        let ac = asperti_costa_condition(&ip, 2, tol).unwrap();
        assert_eq!(ac.verdict, Verdict::Pass);
        assert_eq!(ac.lhs, 4.0);
        assert_eq!(ac.rhs, 12.0);
        let ls = lawson_simons_condition(&ip, tol).unwrap();
        assert_eq!(ls.verdict, Verdict::Fail);

        // minimal, small norm: both pass
        let mut a = zeros::<f64, 4>();
        a[0][0] = (2.9f64 / 2.0).sqrt();
        a[1][1] = -(2.9f64 / 2.0).sqrt();
        let small = ImmersionPoint::new(1.0, vec![a]).unwrap();
        assert!(asperti_costa_condition(&small, 2, tol).unwrap().passed());
        assert_eq!(
            lawson_simons_condition(&small, tol).unwrap().verdict,
            Verdict::Pass
        );

        // minimal in Euclidean space: AC threshold collapses to zero
        let mut b = zeros::<f64, 4>();
        b[0][0] = 1.0;
        b[1][1] = -1.0;
        let euclid = ImmersionPoint::new(0.0, vec![b]).unwrap();
        assert_eq!(
            asperti_costa_condition(&euclid, 2, tol).unwrap().verdict,
            Verdict::Fail
        );

        assert!(matches!(
            asperti_costa_condition(&ip, 1, tol),
            Err(SubmanifoldError::InvalidP(1))
        ));
        assert!(matches!(
            lawson_simons_condition(&euclid, tol),
            Err(SubmanifoldError::AmbientNotUnitSphere(_))
        ));
    }

    #[test]
    fn frame_convention_is_enforced_and_restorable() {
        // raw operators with mixed traces get rotated into convention
        let mut a = identity::<f64, 4>();
        a[0][0] = 2.0;
        let mut b = identity::<f64, 4>();
        b[3][3] = -2.0;
        let ip = ImmersionPoint::from_raw(1.0, vec![a, b]).unwrap();
        let (h, _) = ip.mean_curvature();
        assert!(h > 0.0);
        for op in ip.weingarten().iter().skip(1) {
            assert!(trace(op).abs() < 1e-10);
        }
        // |alpha|^2 is frame invariant
        let raw_norm = frobenius(&a) + frobenius(&b);
        assert!((ip.norm_alpha_sq() - raw_norm).abs() < 1e-12);

        // strict constructor rejects the convention violation
        assert!(matches!(
            ImmersionPoint::new(1.0, vec![a, b]),
            Err(SubmanifoldError::FrameConvention(_))
        ));
        // and rejects an asymmetric operator
        let mut bad = zeros::<f64, 4>();
        bad[0][1] = 1.0;
        assert!(matches!(
            ImmersionPoint::new(1.0, vec![bad]),
            Err(SubmanifoldError::NotSymmetric { .. })
        ));
        assert!(matches!(
            ImmersionPoint::<f64>::new(1.0, vec![]),
            Err(SubmanifoldError::EmptyFrame)
        ));
    }

    fn frobenius(m: &Matrix<f64, 4>) -> f64 {
        let mut acc = 0.0;
        for row in m {
            for x in row {
                acc += x * x;
            }
        }
        acc
    }
}
