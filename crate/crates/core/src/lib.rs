//! Certified uniform continuity of generalized proximal mappings in
//! uniformly convex ℓ_p spaces.
//!
//! The core types are generic over the scalar ([`Scalar`], implemented for
//! `f32` and `f64`); the aliases at the crate root fix `f64`.

pub mod cli;
pub mod error;
pub mod moduli;
pub mod prox;
pub mod scalar;
pub mod spaces;
pub mod vector;
pub mod verify;
pub mod young;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type NormedSpace = spaces::NormedSpace<f64>;
pub type ConvexSet = spaces::ConvexSet<f64>;
pub type YoungFunction = young::YoungFunction<f64>;
pub type Modulus = moduli::Modulus<f64>;
pub type PsiFunction = moduli::PsiFunction<f64>;
pub type WitnessPair = moduli::WitnessPair<f64>;
pub type ConvexFunction = prox::ConvexFunction<f64>;
pub type ProxResult = prox::ProxResult<f64>;
pub type SolverOptions = prox::SolverOptions<f64>;
