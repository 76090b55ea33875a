//! Inputs shared by the benchmarks.

use graver_core::{incidence_matrix, BipartiteShape, IntMatrix};

/// `1 x n` all-ones row.
pub fn ones_row(n: usize) -> IntMatrix {
    IntMatrix::from_rows(&[vec![1i64; n]]).expect("n >= 1")
}

/// Incidence matrix of `K_{t,r}`.
pub fn bipartite_incidence(t: usize, r: usize) -> IntMatrix {
    incidence_matrix(BipartiteShape::new(t, r).expect("t, r >= 2"))
}
