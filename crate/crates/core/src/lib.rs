//! Curvature algebra of oriented Riemannian 4-manifolds at a point, built
//! for checking inequalities rather than proving them: the Weyl block
//! decomposition, biorthogonal curvature with a brute-force Grassmannian
//! oracle, a catalog of homogeneous model spaces with exact volume policies,
//! characteristic-number integrands, Einstein obstructions, minimal-volume
//! certificates and submanifold pinching criteria.
//!
//! All algebra is generic over the scalar type ([`Real`], i.e. `f32` or
//! `f64`); the `*64` aliases at the crate root fix the working precision
//! used by the CLI and the test battery.

pub mod biorthogonal;
pub mod curvature;
pub mod linalg;
pub mod model;
pub mod report;
pub mod scalar;
pub mod submanifold;
pub mod topology;

pub use scalar::Real;

pub use curvature::{CurvatureError, CurvatureTensor, Plane, TensorClass, WeylBlocks};
pub use model::{Constraint, ModelError, ModelName, ModelParams, ModelSpace, VolumePolicy};
pub use report::{CheckReport, Verdict};
pub use submanifold::{Ambient, ImmersionPoint, SphereTheoremVerdict, SubmanifoldError};
pub use topology::{TopologyError, TopologyInput};

/// Concrete types at the default working precision.
pub type Plane64 = curvature::Plane<f64>;
pub type CurvatureTensor64 = curvature::CurvatureTensor<f64>;
pub type WeylBlocks64 = curvature::WeylBlocks<f64>;
pub type ModelSpace64 = model::ModelSpace<f64>;
pub type ModelParams64 = model::ModelParams<f64>;
pub type ImmersionPoint64 = submanifold::ImmersionPoint<f64>;
pub type CheckReport64 = report::CheckReport<f64>;
pub type ModifiedScalars64 = biorthogonal::ModifiedScalars<f64>;
