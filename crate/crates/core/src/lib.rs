//! Exact computer algebra for structure-constant algebras: derivation
//! algebras, and finite linear certificates that test whether local and
//! 2-local derivations of the octonions are derivations.
//!
//! ```
//! use octder::{build_octonion, derivation_space, verify_local, FieldSpec};
//!
//! let o = build_octonion(FieldSpec::RATIONALS);
//! assert_eq!(derivation_space(&o).dim(), 14);
//! let report = verify_local(&o).unwrap();
//! assert_eq!(report.local_dim_basis_only, 42);
//! // basis vectors and pair sums leave the 21 maps that are skew on e_1..e_7
//! assert_eq!(report.local_dim_full, 21);
//! assert!(!report.equal_to_der);
//! ```

pub mod algebra;
pub mod derivation;
pub mod error;
pub mod linalg;
pub mod local;
pub mod sampling;
pub mod scalar;

pub use algebra::{build_octonion, table_consistency_check, AlgebraElement, StructureConstants};
pub use derivation::{
    commutator_map, derivation_space, is_derivation, killing_form_rank, leibniz_system,
    lie_closure_check, pattern_space, verify_pattern, DerivationBasis, LinearMap,
};
pub use error::{Error, Result};
pub use linalg::{
    column_space, nullspace, row_space, rref, solve, Echelon, Matrix, Solver, Subspace,
};
pub use local::{
    evaluation_orbit, local_space, pointwise_witness, reconstruct_derivation, standard_probe_set,
    two_local_witness, verify_local, verify_local_with, verify_two_local, LocalReport, ProbeSet,
    TwoLocalReport, TwoLocalTable, TwoLocalVerifier,
};
pub use scalar::{FieldSpec, Scalar};
