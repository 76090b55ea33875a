//! Complete bipartite graphs `K_{t,r}`: incidence matrices and their circuits.
//!
//! A circuit is kept in two forms. [`CircuitWalk`] is the cycle as an
//! alternating vertex sequence `(v_{i1}, u_{j1}, v_{i2}, u_{j2}, ...)` with
//! value `+1` on every `(v_{ia}, u_{ja})` edge and `-1` on every
//! `(v_{i(a+1)}, u_{ja})` edge. [`CircuitMatrix`] is the same function as a
//! `t x r` matrix with rows indexed by `V` and columns by `U`.
//!
//! Indices are 0-based in the API; `Display` and the walk notation in
//! certificates are 1-based like the vertex names.
//!
//! Flattening a `t x r` matrix to a vector of the incidence matrix puts edge
//! `(i, j)` at position `j * t + i`, so each `U`-vertex owns one block of the
//! Lawrence lifting of `(1, ..., 1)`.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};

/// `K_{t,r}` with `V = {v_1..v_t}` and `U = {u_1..u_r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteShape {
    t: usize,
    r: usize,
}

impl BipartiteShape {
    pub fn new(t: usize, r: usize) -> Result<Self> {
        if t < 2 || r < 2 {
            return Err(Error::Precondition(format!(
                "K_{{t,r}} needs t, r >= 2, got ({t}, {r})"
            )));
        }
        Ok(BipartiteShape { t, r })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of edges, `t * r`.
    pub fn edges(&self) -> usize {
        self.t * self.r
    }

    /// Position of edge `(v_i, u_j)` in a flattened vector.
    pub fn edge_index(&self, i: usize, j: usize) -> usize {
        j * self.t + i
    }
}

impl fmt::Display for BipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{}}}", self.t, self.r)
    }
}

/// Incidence matrix of `K_{t,r}`: `r` rows for `u_1..u_r` then `t` rows for
/// `v_1..v_t`. Equal to the `r`-th Lawrence lifting of the `1 x t` all-ones
/// row.
pub fn incidence_matrix(shape: BipartiteShape) -> IntMatrix {
    let (t, r) = (shape.t, shape.r);
    let mut m = IntMatrix::zeros(t + r, t * r).expect("nonempty shape");
    for j in 0..r {
        for i in 0..t {
            let col = shape.edge_index(i, j);
            m.set(j, col, BigInt::one());
            m.set(r + i, col, BigInt::one());
        }
    }
    m
}

/// A simple cycle of `K_{t,r}` as a sequence of `(V-index, U-index)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircuitWalk {
    shape: BipartiteShape,
    pairs: Vec<(usize, usize)>,
}

impl CircuitWalk {
    pub fn new(shape: BipartiteShape, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::InvalidWalk(format!(
                "a cycle needs at least 2 pairs, got {}",
                pairs.len()
            )));
        }
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= shape.t || j >= shape.r) {
            return Err(Error::InvalidWalk(format!(
                "vertex (v{}, u{}) outside {shape}",
                i + 1,
                j + 1
            )));
        }
        if !pairs.iter().map(|p| p.0).all_unique() || !pairs.iter().map(|p| p.1).all_unique() {
            return Err(Error::InvalidWalk("repeated vertex".into()));
        }
        Ok(CircuitWalk { shape, pairs })
    }

    /// Builds a walk from 1-based `(v, u)` indices as written in vertex names.
    pub fn from_one_based(shape: BipartiteShape, pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.iter().any(|&(i, j)| i == 0 || j == 0) {
            return Err(Error::InvalidWalk("1-based vertex index 0".into()));
        }
        Self::new(shape, pairs.iter().map(|&(i, j)| (i - 1, j - 1)).collect())
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn to_one_based(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    /// Number of `V`-vertices on the cycle.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Rotation starting at the smallest `V`-index. Describes the same
    /// signed circuit.
    pub fn normalized(&self) -> CircuitWalk {
        let start = self.pairs.iter().position_min_by_key(|p| p.0).unwrap_or(0);
        let mut pairs = self.pairs.clone();
        pairs.rotate_left(start);
        CircuitWalk {
            shape: self.shape,
            pairs,
        }
    }

    /// Same walk in a larger graph.
    pub fn embed(&self, shape: BipartiteShape) -> Result<CircuitWalk> {
        CircuitWalk::new(shape, self.pairs.clone())
    }

    pub fn permuted(&self, sigma_v: &Permutation, sigma_u: &Permutation) -> Result<CircuitWalk> {
        check_permutations(self.shape, sigma_v, sigma_u)?;
        Ok(CircuitWalk {
            shape: self.shape,
            pairs: self
                .pairs
                .iter()
                .map(|&(i, j)| (sigma_v.image(i), sigma_u.image(j)))
                .collect(),
        })
    }
}

impl fmt::Display for CircuitWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .pairs
            .iter()
            .map(|(i, j)| format!("v{},u{}", i + 1, j + 1))
            .join(",");
        write!(f, "({body})")
    }
}

/// A circuit of `K_{t,r}` as a `t x r` sign matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircuitMatrix {
    shape: BipartiteShape,
    // row-major, t rows of r entries
    entries: Vec<i8>,
}

impl CircuitMatrix {
    /// Validates `rows` (t rows of r entries) as a circuit.
    pub fn from_rows(shape: BipartiteShape, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != shape.t || rows.iter().any(|r| r.len() != shape.r) {
            return Err(Error::Dimension(format!(
                "circuit of {shape} needs {} rows of {} entries",
                shape.t, shape.r
            )));
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        trace_cycle(shape, &flat)?;
        Ok(CircuitMatrix {
            shape,
            entries: flat.into_iter().map(|x| x as i8).collect(),
        })
    }

    /// Reads a flattened vector (edge `(i, j)` at `j * t + i`) as a circuit.
    pub fn from_vector(x: &IntVector, shape: BipartiteShape) -> Result<Self> {
        if x.len() != shape.edges() {
            return Err(Error::Dimension(format!(
                "{shape} needs vectors of length {}, got {}",
                shape.edges(),
                x.len()
            )));
        }
        let mut flat = vec![0i64; shape.edges()];
        for i in 0..shape.t {
            for j in 0..shape.r {
                let e = &x[shape.edge_index(i, j)];
                flat[i * shape.r + j] = e
                    .to_i64()
                    .filter(|v| v.abs() <= 1)
                    .ok_or_else(|| Error::InvalidCircuit(format!("entry {e} at (v{}, u{})", i + 1, j + 1)))?;
            }
        }
        trace_cycle(shape, &flat)?;
        Ok(CircuitMatrix {
            shape,
            entries: flat.into_iter().map(|x| x as i8).collect(),
        })
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        i64::from(self.entries[i * self.shape.r + j])
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.shape.r)
            .map(|r| r.iter().map(|&x| i64::from(x)).collect())
            .collect()
    }

    /// Flattened vector in incidence-column order.
    pub fn to_vector(&self) -> IntVector {
        let s = self.shape;
        let mut v = vec![BigInt::default(); s.edges()];
        for i in 0..s.t {
            for j in 0..s.r {
                v[s.edge_index(i, j)] = BigInt::from(self.get(i, j));
            }
        }
        IntVector::new(v)
    }

    /// Sum of absolute values; twice the cycle length.
    pub fn norm1(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    /// Same circuit in a larger graph (new rows and columns are zero).
    pub fn embed(&self, shape: BipartiteShape) -> Result<CircuitMatrix> {
        if shape.t < self.shape.t || shape.r < self.shape.r {
            return Err(Error::Dimension(format!(
                "cannot embed {} into {shape}",
                self.shape
            )));
        }
        let mut entries = vec![0i8; shape.edges()];
        for i in 0..self.shape.t {
            for j in 0..self.shape.r {
                entries[i * shape.r + j] = self.entries[i * self.shape.r + j];
            }
        }
        Ok(CircuitMatrix { shape, entries })
    }
}

impl fmt::Display for CircuitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(f, "{}", row.iter().map(|x| format!("{x:>2}")).join(" "))?;
        }
        Ok(())
    }
}

/// Follows the cycle through a row-major `t x r` matrix and returns its
/// normalized walk, or explains why the matrix is not a circuit.
fn trace_cycle(shape: BipartiteShape, flat: &[i64]) -> Result<Vec<(usize, usize)>> {
    let (t, r) = (shape.t, shape.r);
    let at = |i: usize, j: usize| flat[i * r + j];
    let bad = |msg: String| Err(Error::InvalidCircuit(msg));

    if let Some(k) = flat.iter().position(|x| !(-1..=1).contains(x)) {
        return bad(format!(
            "entry {} at (v{}, u{}) is not in {{-1, 0, 1}}",
            flat[k],
            k / r + 1,
            k % r + 1
        ));
    }
    // degree 2 at every touched vertex: exactly one +1 and one -1
    let mut plus_in_row = vec![None; t];
    let mut minus_in_col = vec![None; r];
    for (i, slot) in plus_in_row.iter_mut().enumerate() {
        let (p, n): (Vec<usize>, Vec<usize>) = (
            (0..r).filter(|&j| at(i, j) == 1).collect(),
            (0..r).filter(|&j| at(i, j) == -1).collect(),
        );
        match (p.len(), n.len()) {
            (0, 0) => {}
            (1, 1) => *slot = Some(p[0]),
            _ if p.len() != n.len() => return bad(format!("row v{} does not sum to zero", i + 1)),
            _ => {
                return bad(format!(
                    "row v{} has degree {} in the support",
                    i + 1,
                    p.len() + n.len()
                ))
            }
        }
    }
    for (j, slot) in minus_in_col.iter_mut().enumerate() {
        let (p, n): (Vec<usize>, Vec<usize>) = (
            (0..t).filter(|&i| at(i, j) == 1).collect(),
            (0..t).filter(|&i| at(i, j) == -1).collect(),
        );
        match (p.len(), n.len()) {
            (0, 0) => {}
            (1, 1) => *slot = Some(n[0]),
            _ if p.len() != n.len() => return bad(format!("column u{} does not sum to zero", j + 1)),
            _ => {
                return bad(format!(
                    "column u{} has degree {} in the support",
                    j + 1,
                    p.len() + n.len()
                ))
            }
        }
    }
    let Some(start) = plus_in_row.iter().position(Option::is_some) else {
        return bad("zero matrix".into());
    };
    let mut walk = Vec::new();
    let mut i = start;
    loop {
        let j = plus_in_row[i].expect("support rows have a +1");
        walk.push((i, j));
        i = minus_in_col[j].expect("support columns have a -1");
        if i == start {
            break;
        }
    }
    let support = flat.iter().filter(|&&x| x != 0).count();
    if 2 * walk.len() != support {
        return bad("support is not a single cycle".into());
    }
    Ok(walk)
}

/// Matrix form of a walk.
pub fn walk_to_matrix(w: &CircuitWalk) -> CircuitMatrix {
    let s = w.shape;
    let mut entries = vec![0i8; s.edges()];
    let l = w.pairs.len();
    for a in 0..l {
        let (i, j) = w.pairs[a];
        let next_i = w.pairs[(a + 1) % l].0;
        entries[i * s.r + j] = 1;
        entries[next_i * s.r + j] = -1;
    }
    CircuitMatrix { shape: s, entries }
}

/// Walk form of a circuit, starting at its smallest `V`-index with the `+1`
/// edge first.
pub fn matrix_to_walk(c: &CircuitMatrix) -> CircuitWalk {
    let flat: Vec<i64> = c.entries.iter().map(|&x| i64::from(x)).collect();
    let pairs = trace_cycle(c.shape, &flat).expect("CircuitMatrix invariants hold");
    CircuitWalk {
        shape: c.shape,
        pairs,
    }
}

/// Walk form of a raw `t x r` matrix, rejecting anything that is not a
/// single alternating cycle.
pub fn rows_to_walk(shape: BipartiteShape, rows: &[Vec<i64>]) -> Result<CircuitWalk> {
    Ok(matrix_to_walk(&CircuitMatrix::from_rows(shape, rows)?))
}

/// Whether `x`, read as a `t x r` matrix, is a circuit of `K_{t,r}`.
pub fn is_circuit(x: &IntVector, shape: BipartiteShape) -> bool {
    CircuitMatrix::from_vector(x, shape).is_ok()
}

/// Number of signed circuits of `K_{t,r}`:
/// `sum_k C(t,k) C(r,k) (k-1)! k!` over cycle lengths `2 <= k <= min(t,r)`.
pub fn circuit_count(shape: BipartiteShape) -> BigInt {
    let binom =
        |n: usize, k: usize| -> BigInt { (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1)) };
    let fact = |n: usize| -> BigInt { (1..=n).fold(BigInt::one(), |acc, i| acc * i) };
    (2..=shape.t.min(shape.r))
        .map(|k| binom(shape.t, k) * binom(shape.r, k) * fact(k - 1) * fact(k))
        .sum()
}

/// Largest circuit count [`enumerate_circuits`] will materialize.
pub const MAX_ENUMERATED_CIRCUITS: u64 = 2_000_000;

/// Every signed circuit of `K_{t,r}` once, ordered by normalized walk.
///
/// For each choice of `k` vertices on both sides, the Hamiltonian cycles of
/// the induced `K_{k,k}` are the walks that start at the smallest chosen
/// `V`-vertex: `(k-1)!` orders of the other `V`-vertices times `k!` orders
/// of the `U`-vertices. Orientation is part of the walk, so each cycle
/// appears once per sign.
pub fn enumerate_circuits(shape: BipartiteShape) -> Result<Vec<CircuitMatrix>> {
    let count = circuit_count(shape);
    if count > BigInt::from(MAX_ENUMERATED_CIRCUITS) {
        return Err(Error::ResourceLimit(format!(
            "{shape} has {count} signed circuits, more than {MAX_ENUMERATED_CIRCUITS}"
        )));
    }
    let mut walks = Vec::new();
    for k in 2..=shape.t.min(shape.r) {
        for vs in (0..shape.t).combinations(k) {
            for us in (0..shape.r).combinations(k) {
                for rest in vs[1..].iter().copied().permutations(k - 1) {
                    let order: Vec<usize> = std::iter::once(vs[0]).chain(rest).collect();
                    for uorder in us.iter().copied().permutations(k) {
                        walks.push(order.iter().copied().zip(uorder).collect::<Vec<_>>());
                    }
                }
            }
        }
    }
    walks.sort();
    Ok(walks
        .into_iter()
        .map(|pairs| walk_to_matrix(&CircuitWalk { shape, pairs }))
        .collect())
}

/// A permutation of `0..n`, stored as its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// From 1-based images, as relabelings are usually written.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        Self::new(images.iter().map(|&x| x.wrapping_sub(1)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Extends a partial map `i -> partial[i]` to a permutation; unmapped
    /// points go to the unused images in increasing order.
    fn complete(partial: &[Option<usize>]) -> Result<Self> {
        let n = partial.len();
        let mut used = vec![false; n];
        for &x in partial.iter().flatten() {
            if x >= n || std::mem::replace(&mut used[x], true) {
                return Err(Error::Precondition("partial vertex map is not injective".into()));
            }
        }
        let mut free = (0..n).filter(|&x| !used[x]);
        Ok(Permutation(
            partial
                .iter()
                .map(|p| p.unwrap_or_else(|| free.next().expect("counts agree")))
                .collect(),
        ))
    }
}

fn check_permutations(shape: BipartiteShape, sigma_v: &Permutation, sigma_u: &Permutation) -> Result<()> {
    if sigma_v.len() != shape.t || sigma_u.len() != shape.r {
        return Err(Error::Dimension(format!(
            "permutations of sizes ({}, {}) do not act on {shape}",
            sigma_v.len(),
            sigma_u.len()
        )));
    }
    Ok(())
}

/// Relabels vertices: entry `(sigma_v(i), sigma_u(j))` of the result is entry
/// `(i, j)` of `c`.
pub fn apply_vertex_permutation(
    c: &CircuitMatrix,
    sigma_v: &Permutation,
    sigma_u: &Permutation,
) -> Result<CircuitMatrix> {
    check_permutations(c.shape, sigma_v, sigma_u)?;
    let s = c.shape;
    let mut entries = vec![0i8; s.edges()];
    for i in 0..s.t {
        for j in 0..s.r {
            entries[sigma_v.image(i) * s.r + sigma_u.image(j)] = c.entries[i * s.r + j];
        }
    }
    Ok(CircuitMatrix { shape: s, entries })
}

/// The vertex relabeling sending walk `from` onto walk `to` position by
/// position. Vertices off the walk keep their relative order.
pub fn walk_relabeling(from: &CircuitWalk, to: &CircuitWalk) -> Result<(Permutation, Permutation)> {
    if from.shape != to.shape || from.len() != to.len() {
        return Err(Error::Precondition(format!(
            "walks {from} and {to} have different shapes or lengths"
        )));
    }
    let mut pv = vec![None; from.shape.t];
    let mut pu = vec![None; from.shape.r];
    for (&(i, j), &(i2, j2)) in from.pairs.iter().zip(&to.pairs) {
        pv[i] = Some(i2);
        pu[j] = Some(j2);
    }
    Ok((Permutation::complete(&pv)?, Permutation::complete(&pu)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(t: usize, r: usize) -> BipartiteShape {
        BipartiteShape::new(t, r).unwrap()
    }

    fn walk(s: BipartiteShape, p: &[(usize, usize)]) -> CircuitWalk {
        CircuitWalk::from_one_based(s, p).unwrap()
    }

    #[test]
    fn shape_bounds() {
        assert!(BipartiteShape::new(1, 3).is_err());
        assert!(BipartiteShape::new(3, 1).is_err());
        assert_eq!(shape(3, 4).edges(), 12);
    }

    #[test]
    fn incidence_matrix_of_k22() {
        let a = incidence_matrix(shape(2, 2));
        let expect = IntMatrix::from_rows(&[
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
        ])
        .unwrap();
        assert_eq!(a, expect);
    }

    #[test]
    fn incidence_matrix_columns_sum_to_two_and_rank() {
        let a = incidence_matrix(shape(3, 4));
        assert_eq!((a.n_rows(), a.n_cols()), (7, 12));
        for c in a.columns() {
            assert_eq!(c.entries().iter().sum::<BigInt>(), BigInt::from(2));
        }
        assert_eq!(a.rank(), 6);
    }

    #[test]
    fn four_cycle_walk_and_back() {
        let s = shape(2, 2);
        let w = walk(s, &[(1, 1), (2, 2)]);
        let c = walk_to_matrix(&w);
        assert_eq!(c.rows(), vec![vec![1, -1], vec![-1, 1]]);
        assert_eq!(matrix_to_walk(&c), w);
    }

    #[test]
    fn table_walks_render_as_printed_matrices() {
        let s = shape(3, 4);
        let x5 = walk_to_matrix(&walk(s, &[(1, 1), (2, 2), (3, 3)]));
        assert_eq!(
            x5.rows(),
            vec![vec![1, 0, -1, 0], vec![-1, 1, 0, 0], vec![0, -1, 1, 0]]
        );
        let x1 = walk_to_matrix(&walk(s, &[(1, 4), (3, 2), (2, 3)]));
        assert_eq!(
            x1.rows(),
            vec![vec![0, 0, -1, 1], vec![0, -1, 1, 0], vec![0, 1, 0, -1]]
        );
    }

    #[test]
    fn invalid_walks() {
        let s = shape(3, 3);
        assert!(matches!(
            CircuitWalk::from_one_based(s, &[(1, 1), (1, 2)]),
            Err(Error::InvalidWalk(_))
        ));
        assert!(matches!(
            CircuitWalk::from_one_based(s, &[(1, 1), (2, 1)]),
            Err(Error::InvalidWalk(_))
        ));
        assert!(matches!(
            CircuitWalk::from_one_based(s, &[(1, 1)]),
            Err(Error::InvalidWalk(_))
        ));
        assert!(matches!(
            CircuitWalk::from_one_based(s, &[(1, 1), (4, 2)]),
            Err(Error::InvalidWalk(_))
        ));
    }

    #[test]
    fn invalid_matrices() {
        let s = shape(4, 4);
        // two vertex-disjoint 4-cycles
        let two = vec![
            vec![1, -1, 0, 0],
            vec![-1, 1, 0, 0],
            vec![0, 0, 1, -1],
            vec![0, 0, -1, 1],
        ];
        assert!(matches!(
            CircuitMatrix::from_rows(s, &two),
            Err(Error::InvalidCircuit(_))
        ));
        // two 4-cycles sharing v1
        let bow = vec![
            vec![1, -1, 1, -1],
            vec![-1, 1, 0, 0],
            vec![0, 0, -1, 1],
            vec![0, 0, 0, 0],
        ];
        assert!(matches!(
            CircuitMatrix::from_rows(s, &bow),
            Err(Error::InvalidCircuit(_))
        ));
        let zero = vec![vec![0; 4]; 4];
        assert!(CircuitMatrix::from_rows(s, &zero).is_err());
        let unbalanced = vec![vec![1, 0, 0, 0], vec![-1, 0, 0, 0], vec![0; 4], vec![0; 4]];
        assert!(CircuitMatrix::from_rows(s, &unbalanced).is_err());
        let big = vec![vec![2, -2, 0, 0], vec![-2, 2, 0, 0], vec![0; 4], vec![0; 4]];
        assert!(CircuitMatrix::from_rows(s, &big).is_err());
        assert!(matches!(
            CircuitMatrix::from_rows(s, &two[..3]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn is_circuit_examples() {
        let s = shape(3, 4);
        let c = walk_to_matrix(&walk(s, &[(1, 1), (2, 2), (3, 3)])).to_vector();
        assert!(is_circuit(&c, s));
        assert!(!is_circuit(&c.scaled(&BigInt::from(2)), s));
        assert!(!is_circuit(&IntVector::zeros(12), s));
        assert!(!is_circuit(&IntVector::zeros(11), s));
    }

    #[test]
    fn circuit_counts() {
        assert_eq!(enumerate_circuits(shape(2, 2)).unwrap().len(), 2);
        assert_eq!(enumerate_circuits(shape(3, 3)).unwrap().len(), 30);
        assert_eq!(enumerate_circuits(shape(3, 4)).unwrap().len(), 84);
        assert_eq!(circuit_count(shape(3, 4)), BigInt::from(84));
        assert!(matches!(
            enumerate_circuits(shape(9, 9)),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn enumerated_circuits_are_distinct_and_sorted_by_walk() {
        let cs = enumerate_circuits(shape(3, 4)).unwrap();
        let walks: Vec<_> = cs.iter().map(matrix_to_walk).collect();
        assert!(walks.windows(2).all(|w| w[0].pairs() < w[1].pairs()));
    }

    #[test]
    fn permutations() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let s = shape(3, 4);
        let c = walk_to_matrix(&walk(s, &[(1, 4), (3, 2), (2, 3)]));
        let id = (Permutation::identity(3), Permutation::identity(4));
        assert_eq!(apply_vertex_permutation(&c, &id.0, &id.1).unwrap(), c);
        assert!(apply_vertex_permutation(&c, &id.0, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn relabeling_solves_for_the_seed_permutation() {
        let s = shape(3, 4);
        let from = walk(s, &[(1, 4), (3, 2), (2, 3)]);
        let to = walk(s, &[(1, 2), (2, 3), (3, 4)]);
        let (pv, pu) = walk_relabeling(&from, &to).unwrap();
        assert_eq!(pv, Permutation::from_one_based(&[1, 3, 2]).unwrap());
        assert_eq!(pu, Permutation::from_one_based(&[1, 3, 4, 2]).unwrap());
        let image = apply_vertex_permutation(&walk_to_matrix(&from), &pv, &pu).unwrap();
        assert_eq!(matrix_to_walk(&image), to);
        assert!(is_circuit(&image.to_vector(), s));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use proptest::sample::subsequence;

        fn any_walk() -> impl Strategy<Value = CircuitWalk> {
            (2usize..=4, 2usize..=5)
                .prop_flat_map(|(t, r)| (Just((t, r)), 2..=t.min(r)))
                .prop_flat_map(|((t, r), l)| {
                    (
                        Just(shape(t, r)),
                        subsequence((0..t).collect::<Vec<_>>(), l).prop_shuffle(),
                        subsequence((0..r).collect::<Vec<_>>(), l).prop_shuffle(),
                    )
                })
                .prop_map(|(s, vs, us)| CircuitWalk::new(s, vs.into_iter().zip(us).collect()).unwrap())
        }

        fn any_perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn walk_round_trip(w in any_walk()) {
                let c = walk_to_matrix(&w);
                prop_assert_eq!(matrix_to_walk(&c), w.normalized());
                prop_assert_eq!(c.norm1(), 2 * w.len());
                prop_assert!(w.len() >= 2 && w.len() <= w.shape().t().min(w.shape().r()));
                prop_assert!(is_circuit(&c.to_vector(), w.shape()));
                prop_assert!(incidence_matrix(w.shape()).annihilates(&c.to_vector()).unwrap());
            }

            #[test]
            fn permutation_preserves_circuits(
                (w, pv, pu) in any_walk().prop_flat_map(|w| {
                    let s = w.shape();
                    (Just(w), any_perm(s.t()), any_perm(s.r()))
                })
            ) {
                let c = walk_to_matrix(&w);
                let image = apply_vertex_permutation(&c, &pv, &pu).unwrap();
                prop_assert_eq!(image.clone(), walk_to_matrix(&w.permuted(&pv, &pu).unwrap()));
                prop_assert_eq!(image.norm1(), c.norm1());
            }
        }
    }
}
