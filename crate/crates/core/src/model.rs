//! Catalog of homogeneous model geometries with exact curvature tensors and
//! volume policies, plus metric rescaling and constraint normalization.
//!
//! Closed models carry an absolute volume at the reference scale. Quotient
//! models (hyperbolic, complex-hyperbolic, hyperbolic products) carry the
//! volume per unit Euler characteristic, read off the Euler density of the
//! curvature tensor.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::biorthogonal::k1perp_closed_form;
use crate::curvature::{singer_thorpe_decompose, CurvatureTensor};
use crate::linalg::{identity, mat_scale, zeros, Matrix};
use crate::scalar::Real;
use crate::topology::euler_density;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("unknown model name `{0}`")]
    UnknownModel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("constraint `{constraint}` is vacuous: {quantity} >= 0 at the reference scale, certificate volume 0")]
    ConstraintVacuous { constraint: String, quantity: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    S4,
    H4,
    Flat,
    Cp2,
    Ch2,
    S2xS2,
    H2xH2,
}

impl ModelName {
    pub const ALL: [ModelName; 7] = [
        ModelName::S4,
        ModelName::H4,
        ModelName::Flat,
        ModelName::Cp2,
        ModelName::Ch2,
        ModelName::S2xS2,
        ModelName::H2xH2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelName::S4 => "s4",
            ModelName::H4 => "h4",
            ModelName::Flat => "flat",
            ModelName::Cp2 => "cp2",
            ModelName::Ch2 => "ch2",
            ModelName::S2xS2 => "s2xs2",
            ModelName::H2xH2 => "h2xh2",
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s4" => Ok(ModelName::S4),
            "h4" => Ok(ModelName::H4),
            "flat" => Ok(ModelName::Flat),
            "cp2" => Ok(ModelName::Cp2),
            "ch2" => Ok(ModelName::Ch2),
            "s2xs2" => Ok(ModelName::S2xS2),
            "h2xh2" => Ok(ModelName::H2xH2),
            other => Err(ModelError::UnknownModel(other.to_string())),
        }
    }
}

/// Construction parameters; unset fields take the model's reference values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Sphere radius (`s4`).
    pub radius: Option<T>,
    /// Constant or first-factor sectional curvature (`h4`, `h2xh2`, `s2xs2`).
    pub curvature: Option<T>,
    /// Second-factor sectional curvature (`h2xh2`, `s2xs2`).
    pub curvature2: Option<T>,
    /// Holomorphic sectional curvature (`cp2`, `ch2`).
    pub holomorphic: Option<T>,
    /// Euler characteristic for quotient models.
    pub chi: Option<i64>,
}

impl<T> Default for ModelParams<T> {
    fn default() -> Self {
        Self {
            radius: None,
            curvature: None,
            curvature2: None,
            holomorphic: None,
            chi: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum VolumePolicy<T> {
    /// Total volume of the closed model at the current scale.
    Absolute(T),
    /// Volume per unit Euler characteristic (quotient models).
    PerEuler(T),
}

/// A homogeneous model geometry: one constant curvature tensor plus the data
/// needed to integrate constant densities over it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpace<T> {
    pub name: ModelName,
    pub ct: CurvatureTensor<T>,
    pub volume: VolumePolicy<T>,
    pub einstein: bool,
    pub kahler: bool,
    pub chi: i64,
    pub tau: T,
    /// Exact (min, max) sectional curvature at the current scale.
    pub sectional_range: (T, T),
}

impl<T: Real> ModelSpace<T> {
    /// Total volume: absolute, or per-Euler times chi.
    pub fn total_volume(&self) -> T {
        match self.volume {
            VolumePolicy::Absolute(v) => v,
            VolumePolicy::PerEuler(v) => v * T::from_i64(self.chi).unwrap(),
        }
    }

    pub fn scalar(&self) -> T {
        self.ct.scalar()
    }

    pub fn k1perp(&self) -> T {
        k1perp_closed_form(&self.ct)
    }

    pub fn min_sectional(&self) -> T {
        self.sectional_range.0
    }

    pub fn max_abs_sectional(&self) -> T {
        self.sectional_range.0.abs().max(self.sectional_range.1.abs())
    }
}

/// Curvature operator of the Fubini-Study type metric with constant
/// holomorphic sectional curvature `c` (sign either way), in the complex
/// orientation (`W- = 0`).
fn kaehler_constant_holomorphic<T: Real>(c: T) -> Matrix<T, 6> {
    // R_ijkl = (c/4)[d_ik d_jl - d_il d_jk + J_ik J_jl - J_il J_jk + 2 J_ij J_kl]
    let mut jmat = zeros::<T, 4>();
    jmat[0][1] = T::one();
    jmat[1][0] = -T::one();
    jmat[2][3] = T::one();
    jmat[3][2] = -T::one();
    let d = |x: usize, y: usize| if x == y { T::one() } else { T::zero() };
    let quarter = c / T::of(4.0);
    let mut op = zeros::<T, 6>();
    for (a, &(i, j)) in crate::curvature::BASIS_PAIRS.iter().enumerate() {
        for (b, &(k, l)) in crate::curvature::BASIS_PAIRS.iter().enumerate() {
            op[a][b] = quarter
                * (d(i, k) * d(j, l) - d(i, l) * d(j, k) + jmat[i][k] * jmat[j][l]
                    - jmat[i][l] * jmat[j][k]
                    + T::of(2.0) * jmat[i][j] * jmat[k][l]);
        }
    }
    op
}

fn product_operator<T: Real>(k1: T, k2: T) -> Matrix<T, 6> {
    let mut op = zeros::<T, 6>();
    op[0][0] = k1;
    op[5][5] = k2;
    op
}

fn require_positive<T: Real>(value: T, what: &str) -> Result<T, ModelError> {
    if value > T::zero() {
        Ok(value)
    } else {
        Err(ModelError::InvalidParameter(format!(
            "{what} must be positive, got {value}"
        )))
    }
}

fn require_negative<T: Real>(value: T, what: &str) -> Result<T, ModelError> {
    if value < T::zero() {
        Ok(value)
    } else {
        Err(ModelError::InvalidParameter(format!(
            "{what} must be negative, got {value}"
        )))
    }
}

/// Builds a catalog model from closed-form symmetric-space curvature.
pub fn model<T: Real>(name: ModelName, params: ModelParams<T>) -> Result<ModelSpace<T>, ModelError> {
    let chi_param = params.chi.unwrap_or(1);
    let pi = T::PI();
    let pi2 = pi * pi;
    let (op, volume, kahler, chi, tau, range): (
        Matrix<T, 6>,
        Option<T>, // absolute volume; None = per-Euler
        bool,
        i64,
        T,
        (T, T),
    ) = match name {
        ModelName::S4 => {
            let r = require_positive(params.radius.unwrap_or_else(T::one), "radius")?;
            let k = T::one() / (r * r);
            (
                mat_scale(&identity::<T, 6>(), k),
                Some(T::of(8.0 / 3.0) * pi2 * r.powi(4)),
                false,
                2,
                T::zero(),
                (k, k),
            )
        }
        ModelName::H4 => {
            let k = require_negative(params.curvature.unwrap_or_else(|| -T::one()), "curvature")?;
            (
                mat_scale(&identity::<T, 6>(), k),
                None,
                false,
                chi_param,
                T::zero(),
                (k, k),
            )
        }
        ModelName::Flat => (
            zeros::<T, 6>(),
            Some(T::one()),
            true,
            0,
            T::zero(),
            (T::zero(), T::zero()),
        ),
        ModelName::Cp2 => {
            let c = require_positive(params.holomorphic.unwrap_or_else(|| T::of(4.0)), "holomorphic curvature")?;
            (
                kaehler_constant_holomorphic(c),
                // Vol = pi^2/2 at c = 4; metric scales like 4/c
                Some(T::of(8.0) * pi2 / (c * c)),
                true,
                3,
                T::one(),
                (c / T::of(4.0), c),
            )
        }
        ModelName::Ch2 => {
            let c = require_negative(params.holomorphic.unwrap_or_else(|| T::of(-4.0)), "holomorphic curvature")?;
            (
                kaehler_constant_holomorphic(c),
                None,
                true,
                chi_param,
                T::from_i64(chi_param).unwrap() / T::of(3.0),
                (c, c / T::of(4.0)),
            )
        }
        ModelName::S2xS2 => {
            let c1 = require_positive(params.curvature.unwrap_or_else(T::one), "curvature")?;
            let c2 = require_positive(params.curvature2.unwrap_or(c1), "curvature2")?;
            (
                product_operator(c1, c2),
                // product of round 2-spheres of Gauss curvature c_i
                Some(T::of(16.0) * pi2 / (c1 * c2)),
                true,
                4,
                T::zero(),
                (T::zero(), c1.max(c2)),
            )
        }
        ModelName::H2xH2 => {
            let k1 = require_negative(params.curvature.unwrap_or_else(|| -T::one()), "curvature")?;
            let k2 = require_negative(params.curvature2.unwrap_or(k1), "curvature2")?;
            (
                product_operator(k1, k2),
                None,
                true,
                chi_param,
                T::zero(),
                (k1.min(k2), T::zero()),
            )
        }
    };

    let ct = CurvatureTensor::from_operator(op)
        .expect("catalog operators satisfy the curvature invariants");
    let blocks = singer_thorpe_decompose(&ct);
    let einstein = blocks.ric0_norm_sq().sqrt() < T::of(1e-12);
    let volume = match volume {
        Some(v) => VolumePolicy::Absolute(v),
        None => VolumePolicy::PerEuler(T::one() / euler_density(&ct)),
    };
    if chi <= 0 && matches!(volume, VolumePolicy::PerEuler(_)) {
        return Err(ModelError::InvalidParameter(format!(
            "quotient model {name} needs a positive Euler characteristic, got {chi}"
        )));
    }
    Ok(ModelSpace {
        name,
        ct,
        volume,
        einstein,
        kahler,
        chi,
        tau,
        sectional_range: range,
    })
}

/// Metric rescaling `g -> t^2 g`: curvature scales by `1/t^2`, volumes by
/// `t^4`.
pub fn rescale<T: Real>(ms: &ModelSpace<T>, t: T) -> Result<ModelSpace<T>, ModelError> {
    if !(t > T::zero()) {
        return Err(ModelError::InvalidParameter(format!(
            "scale factor must be positive, got {t}"
        )));
    }
    let t2 = t * t;
    let t4 = t2 * t2;
    let inv = T::one() / t2;
    Ok(ModelSpace {
        name: ms.name,
        ct: ms.ct.scaled(inv),
        volume: match ms.volume {
            VolumePolicy::Absolute(v) => VolumePolicy::Absolute(v * t4),
            VolumePolicy::PerEuler(v) => VolumePolicy::PerEuler(v * t4),
        },
        einstein: ms.einstein,
        kahler: ms.kahler,
        chi: ms.chi,
        tau: ms.tau,
        sectional_range: (ms.sectional_range.0 * inv, ms.sectional_range.1 * inv),
    })
}

/// The normalizable volume constraints, each of the form `quantity >= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// `|K| <= 1`, encoded as `-max |K| >= -1`.
    MinVol,
    /// `K >= -1`.
    Gromov,
    /// `s/12 >= -1`.
    Yamabe,
    /// `(K + s/12)/2 >= -1`.
    Mixed,
    /// `(K1perp + s/12)/2 >= -1`.
    MixedBio,
}

impl Constraint {
    pub const ALL: [Constraint; 5] = [
        Constraint::MinVol,
        Constraint::Gromov,
        Constraint::Yamabe,
        Constraint::Mixed,
        Constraint::MixedBio,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Constraint::MinVol => "minvol",
            Constraint::Gromov => "gromov",
            Constraint::Yamabe => "yamabe",
            Constraint::Mixed => "mixed",
            Constraint::MixedBio => "mixed-bio",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Constraint {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minvol" => Ok(Constraint::MinVol),
            "gromov" => Ok(Constraint::Gromov),
            "yamabe" => Ok(Constraint::Yamabe),
            "mixed" => Ok(Constraint::Mixed),
            "mixed-bio" | "mixed_bio" => Ok(Constraint::MixedBio),
            other => Err(ModelError::InvalidParameter(format!(
                "unknown constraint `{other}`"
            ))),
        }
    }
}

/// The constrained curvature quantity of the model at its current scale.
pub fn constraint_quantity<T: Real>(ms: &ModelSpace<T>, constraint: Constraint) -> T {
    let s12 = ms.scalar() / T::of(12.0);
    match constraint {
        Constraint::MinVol => -ms.max_abs_sectional(),
        Constraint::Gromov => ms.min_sectional(),
        Constraint::Yamabe => s12,
        Constraint::Mixed => (ms.min_sectional() + s12) / T::of(2.0),
        Constraint::MixedBio => (ms.k1perp() + s12) / T::of(2.0),
    }
}

/// Rescales the model so the constrained quantity equals -1 exactly.
/// Fails with [`ModelError::ConstraintVacuous`] when the quantity is already
/// nonnegative (the certificate volume is then zero).
pub fn normalize_to_constraint<T: Real>(
    ms: &ModelSpace<T>,
    constraint: Constraint,
) -> Result<(T, ModelSpace<T>), ModelError> {
    let q = constraint_quantity(ms, constraint);
    if q >= T::zero() {
        return Err(ModelError::ConstraintVacuous {
            constraint: constraint.to_string(),
            quantity: q.to_f64().unwrap_or(f64::NAN),
        });
    }
    let t = (-q).sqrt();
    let scaled = rescale(ms, t)?;
    Ok((t, scaled))
}
