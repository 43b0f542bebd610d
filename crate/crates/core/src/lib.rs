//! Fano-form descriptions of multi-qudit states, algebraic product tests and
//! the Riemannian geometry of product-state manifolds embedded in the space
//! of Fano coefficients.

pub mod embedding;
pub mod error;
pub mod fano;
pub mod formats;
pub mod geometry;
pub mod lie_basis;
pub mod partition;
pub mod separability;
pub mod state_factory;

pub use embedding::{build_map, CaseKind, EmbeddingMap, ImmersionReport, ManifoldCase};
pub use error::{Error, Result};
pub use fano::{decompose, reconstruct, BlochVector, DensityMatrix, FanoTensor, ValidationReport};
pub use geometry::{curvature, induced_metric, scalar_curvature, CurvatureReport, MetricTensor};
pub use lie_basis::{basis_elements, su_generators, CMatrix, GeneratorSet, C64};
pub use partition::{set_partitions, Partition};
pub use separability::{classify, is_product, ProductCheckReport};
pub use state_factory::{named_state, product_state, NamedState, SampleMode};
