//! Graver bases of small integer matrices and lower-bound certificates for
//! the Graver complexity of complete bipartite graphs.
//!
//! * [`linalg`]: exact big-integer kernels, ranks and contents.
//! * [`graver`]: Graver bases by completion, a box oracle, Lawrence
//!   liftings and the Graver complexity.
//! * [`bipartite`]: incidence matrices and circuits of `K_{t,r}`.
//! * [`construction`]: the recursive circuit families and closed-form bounds.
//! * [`certificate`]: the certificate format and its checker.

pub mod bipartite;
pub mod certificate;
pub mod construction;
pub mod error;
pub mod graver;
pub mod linalg;

pub use bipartite::{
    apply_vertex_permutation, enumerate_circuits, incidence_matrix, is_circuit, matrix_to_walk,
    walk_relabeling, walk_to_matrix, BipartiteShape, CircuitMatrix, CircuitWalk, Permutation,
};
pub use certificate::{
    check_certificate, is_primitive_relation, relation_generator, CheckFailure, CheckReport,
    LowerBoundCertificate,
};
pub use construction::{
    b_value, build_certificate, example_3x4, example_4_4, extend_r, lift_t, seed_3x4, theorem_bound,
    BoundValue, CircuitFamily,
};
pub use error::{Error, Result};
pub use graver::{
    conforms, graver_basis, graver_basis_oracle, graver_basis_oracle_with, graver_basis_with,
    graver_complexity, lawrence_lift, type_of, BlockVector, GraverBasis, Limits,
};
pub use linalg::{gcd_of, integer_kernel_basis, rank, IntMatrix, IntVector};

pub use num_bigint::BigInt;
