//! Biorthogonal curvature: the average of the sectional curvatures of a
//! plane and its orthogonal complement, its pointwise minimum by closed form
//! and by brute-force search over the Grassmannian of 2-planes, and the
//! modified-scalar quantities built from it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::curvature::{
    lambda_basis, singer_thorpe_decompose, wedge, CurvatureError, CurvatureTensor, Plane,
};
use crate::linalg::{dot, gram_schmidt, Vector};
use crate::report::CheckReport;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BiorthogonalError {
    #[error(transparent)]
    Plane(#[from] CurvatureError),
}

/// The orthogonal plane, positively oriented.
pub fn orthogonal_plane<T: Real>(p: &Plane<T>) -> Result<Plane<T>, CurvatureError> {
    p.orthogonal()
}

/// `(K(P) + K(P_perp)) / 2`.
pub fn biorthogonal_curvature<T: Real>(ct: &CurvatureTensor<T>, p: &Plane<T>) -> T {
    let q = p
        .orthogonal()
        .expect("valid plane has an orthogonal complement");
    (ct.sectional(p) + ct.sectional(&q)) / T::of(2.0)
}

/// Minimum of the biorthogonal curvature over all planes, from the Weyl
/// eigenvalues: `(w1+ + w1-)/2 + s/12`.
pub fn k1perp_closed_form<T: Real>(ct: &CurvatureTensor<T>) -> T {
    let blocks = singer_thorpe_decompose(ct);
    (blocks.eigplus[0] + blocks.eigminus[0]) / T::of(2.0) + blocks.s / T::of(12.0)
}

/// Orthonormal 4-frame; the first two columns span the sampled plane and the
/// last two its complement.
#[derive(Debug, Clone, Copy)]
pub struct Frame<T> {
    pub cols: [Vector<T, 4>; 4],
}

impl<T: Real> Frame<T> {
    pub fn plane(&self) -> Plane<T> {
        Plane::span(self.cols[0], self.cols[1]).expect("frame columns are orthonormal")
    }

    fn rotated(&self, a: usize, b: usize, angle: T) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        let mut out = *self;
        for i in 0..4 {
            out.cols[a][i] = c * self.cols[a][i] + s * self.cols[b][i];
            out.cols[b][i] = -s * self.cols[a][i] + c * self.cols[b][i];
        }
        out
    }
}

/// Uniform random frame: Gram-Schmidt of four Gaussian vectors, resampled
/// while the residual is below `1e-8`. The first two columns are a uniform
/// point of the Grassmannian.
pub fn sample_frame<T: Real, R: Rng>(rng: &mut R) -> Frame<T>
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
        if let Some(cols) = gram_schmidt(&vs, T::of(1e-8)) {
            return Frame { cols };
        }
    }
}

/// Sectional curvature of the plane spanned by the first two frame columns.
pub fn frame_sectional<T: Real>(ct: &CurvatureTensor<T>, f: &Frame<T>) -> T {
    ct.quad(&wedge(&f.cols[0], &f.cols[1]))
}

/// Biorthogonal curvature of the frame's plane; the complement is read off
/// the last two columns.
pub fn frame_biorthogonal<T: Real>(ct: &CurvatureTensor<T>, f: &Frame<T>) -> T {
    let a = ct.quad(&wedge(&f.cols[0], &f.cols[1]));
    let b = ct.quad(&wedge(&f.cols[2], &f.cols[3]));
    (a + b) / T::of(2.0)
}

/// Knobs of the sampling + refinement minimizer.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub samples: usize,
    pub seed: u64,
    /// Local searches started from the best chunk winners.
    pub restarts: usize,
    /// Coordinate-descent steps halve until below this angle.
    pub min_step: f64,
    /// Samples per deterministically-seeded chunk; the chunk layout (not the
    /// thread count) fixes the random stream.
    pub chunk: usize,
}

impl SearchOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples: samples.max(1),
            seed,
            restarts: 8,
            min_step: 1e-7,
            chunk: 4096,
        }
    }
}

fn split_seed(seed: u64, chunk: u64) -> u64 {
    // splitmix64 of the chunk index, xored into the master seed
    let mut z = chunk.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    seed ^ (z ^ (z >> 31))
}

/// Minimizes a smooth function of the plane over the Grassmannian:
/// uniform sampling in deterministic chunks, then coordinate descent with
/// step halving from the best chunk winners. Returns the minimum and the
/// frame attaining it.
pub fn minimize_over_planes<T, F>(f: F, opts: &SearchOptions) -> (T, Frame<T>)
where
    T: Real,
    F: Fn(&Frame<T>) -> T,
    StandardNormal: Distribution<T>,
{
    let mut winners: Vec<(T, Frame<T>)> = Vec::new();
    let mut remaining = opts.samples;
    let mut chunk_index = 0u64;
    while remaining > 0 {
        let count = remaining.min(opts.chunk);
        remaining -= count;
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(opts.seed, chunk_index));
        chunk_index += 1;
        let mut best: Option<(T, Frame<T>)> = None;
        for _ in 0..count {
            let frame = sample_frame::<T, _>(&mut rng);
            let value = f(&frame);
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                best = Some((value, frame));
            }
        }
        winners.push(best.expect("chunk is non-empty"));
    }
    winners.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    winners.truncate(opts.restarts.max(1));

    let mut global = winners[0];
    for start in &winners {
        let refined = refine_minimum(&f, *start, T::of(opts.min_step));
        if refined.0 < global.0 {
            global = refined;
        }
    }
    global
}

/// Coordinate descent over the four Grassmannian directions (each plane
/// vector rotated toward each complement vector).
fn refine_minimum<T, F>(f: &F, start: (T, Frame<T>), min_step: T) -> (T, Frame<T>)
where
    T: Real,
    F: Fn(&Frame<T>) -> T,
{
    let (mut value, mut frame) = start;
    let mut step = T::of(0.1);
    let dirs = [(0usize, 2usize), (0, 3), (1, 2), (1, 3)];
    while step > min_step {
        let mut improved = false;
        for &(a, b) in &dirs {
            loop {
                let mut moved = false;
                for sign in [T::one(), -T::one()] {
                    let cand = frame.rotated(a, b, sign * step);
                    let cv = f(&cand);
                    if cv < value {
                        value = cv;
                        frame = cand;
                        moved = true;
                        improved = true;
                    }
                }
                if !moved {
                    break;
                }
            }
        }
        if !improved {
            step = step / T::of(2.0);
        }
    }
    (value, frame)
}

/// Brute-force minimum of the biorthogonal curvature; the independent check
/// of [`k1perp_closed_form`].
pub fn k1perp_bruteforce<T: Real>(ct: &CurvatureTensor<T>, samples: usize, seed: u64) -> T
where
    StandardNormal: Distribution<T>,
{
    minimize_over_planes(|f| frame_biorthogonal(ct, f), &SearchOptions::new(samples, seed)).0
}

/// Brute-force minimum sectional curvature.
pub fn min_sectional_bruteforce<T: Real>(ct: &CurvatureTensor<T>, samples: usize, seed: u64) -> T
where
    StandardNormal: Distribution<T>,
{
    minimize_over_planes(|f| frame_sectional(ct, f), &SearchOptions::new(samples, seed)).0
}

/// The curvature functions entering the volume constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModifiedScalars<T> {
    /// Minimum biorthogonal curvature.
    pub k1perp: T,
    /// `12 k1perp`, the biorthogonal modified scalar curvature.
    pub ms_bio: T,
    /// `(k1perp + s/12) / 2`, the mixed modified scalar curvature.
    pub ms_mixed: T,
    /// Minimum sectional curvature.
    pub k1_sec: T,
}

/// Computes every modified-scalar quantity; the minimum sectional curvature
/// comes from the brute-force search (no closed form in general).
pub fn modified_scalars<T: Real>(ct: &CurvatureTensor<T>, samples: usize, seed: u64) -> ModifiedScalars<T>
where
    StandardNormal: Distribution<T>,
{
    let k1_sec = min_sectional_bruteforce(ct, samples, seed);
    modified_scalars_with_k1sec(ct, k1_sec)
}

/// Same, with the minimum sectional curvature supplied exactly (model-space
/// catalog path).
pub fn modified_scalars_with_k1sec<T: Real>(ct: &CurvatureTensor<T>, k1_sec: T) -> ModifiedScalars<T> {
    let k1perp = k1perp_closed_form(ct);
    let s = ct.scalar();
    ModifiedScalars {
        k1perp,
        ms_bio: T::of(12.0) * k1perp,
        ms_mixed: (k1perp + s / T::of(12.0)) / T::of(2.0),
        k1_sec,
    }
}

/// Pointwise Weitzenboeck bounds for a self-dual 2-form `alpha`:
/// the eigenvalue bound `<W+ a, a> >= w1+ |a|^2` and the harmonic-form
/// integrand bound, reported in the equivalent form
/// `<W+ a, a> >= (w1+ + w1-) |a|^2`.
pub fn weitzenboeck_pointwise<T: Real>(
    ct: &CurvatureTensor<T>,
    alpha: &Vector<T, 6>,
    tol: T,
) -> Result<[CheckReport<T>; 2], CurvatureError> {
    let q = lambda_basis::<T>();
    let mut plus = [T::zero(); 3];
    let mut minus_norm_sq = T::zero();
    for col in 0..3 {
        let mut cp = T::zero();
        let mut cm = T::zero();
        for row in 0..6 {
            cp += q[row][col] * alpha[row];
            cm += q[row][col + 3] * alpha[row];
        }
        plus[col] = cp;
        minus_norm_sq += cm * cm;
    }
    let residual = minus_norm_sq.sqrt();
    if residual > T::of(1e-10) {
        return Err(CurvatureError::NotSelfDual {
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }

    let blocks = singer_thorpe_decompose(ct);
    let norm_sq = dot(&plus, &plus);
    let mut w_alpha = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            w_alpha += plus[i] * blocks.wplus[i][j] * plus[j];
        }
    }
    let eigen = CheckReport::greater_equal(
        "weitzenboeck_eigenvalue_bound",
        w_alpha,
        blocks.eigplus[0] * norm_sq,
        tol,
        "<W+ a, a> >= w1+ |a|^2",
    );
    let integrand = CheckReport::greater_equal(
        "weitzenboeck_integrand_bound",
        w_alpha,
        (blocks.eigplus[0] + blocks.eigminus[0]) * norm_sq,
        tol,
        "<W+ a, a> >= (w1+ + w1-) |a|^2; equivalent to 2<W+ a, a> - (s/3)|a|^2 >= (2/3)(6 K1perp - s)|a|^2",
    );
    Ok([eigen, integrand])
}
