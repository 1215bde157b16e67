//! Exact arithmetic in number fields and étale algebras over ℚ, used as an
//! independent oracle for the group-theoretic model.

pub mod etale;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod realize;

pub use etale::{decompose_etale, tensor_over, EtaleAlgebra, EtaleDecomposition, TensorProduct};
pub use factor::{factor_int_poly, is_irreducible, Factorization, DEFAULT_MAX_DEGREE};
pub use field::{FieldEmbedding, NumberField};
pub use oracle::{oracle_check, sweep, sweep_system, OracleContext, OracleReport, SweepReport};
pub use poly::{RatPoly, Q};
pub use realize::{embed_fixed, fixed_field, FixedField, Realization};
