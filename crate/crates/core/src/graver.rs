//! Graver bases by completion, a box-enumeration oracle, Lawrence liftings
//! and the Graver complexity through the Graver basis of the Graver basis.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel_basis, IntMatrix, IntVector};

/// Caps for the exponential computations in this module. Exceeding any of
/// them aborts with [`Error::ResourceLimit`]; partial results are never
/// returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of stored elements during completion (both signs count).
    pub max_elements: usize,
    /// Maximum number of pair sums reduced to normal form.
    pub max_reductions: u64,
    /// Maximum number of lattice points the box oracle may visit.
    pub max_box_points: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 100_000,
            max_reductions: 10_000_000,
            max_box_points: 100_000_000,
        }
    }
}

/// `u ⊑ v`: `|u_i| <= |v_i|` and `u_i * v_i >= 0` for every coordinate.
pub fn conforms(u: &IntVector, v: &IntVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!(
            "cannot compare vectors of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(conforms_unchecked(u.entries(), v.entries()))
}

fn conforms_unchecked(u: &[BigInt], v: &[BigInt]) -> bool {
    u.iter().zip(v).all(|(a, b)| {
        a.is_zero() || (a.is_positive() == b.is_positive() && !b.is_zero() && a.abs() <= b.abs())
    })
}

/// The ⊑-minimal nonzero elements of the integer kernel of a matrix.
///
/// Elements are kept in lexicographic order and the set is closed under
/// negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraverBasis {
    elements: Vec<IntVector>,
    source: IntMatrix,
}

impl GraverBasis {
    fn from_elements(source: &IntMatrix, mut elements: Vec<IntVector>) -> Self {
        elements.sort();
        elements.dedup();
        GraverBasis {
            elements,
            source: source.clone(),
        }
    }

    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<IntVector> {
        self.elements
    }

    pub fn source_matrix(&self) -> &IntMatrix {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    /// Largest 1-norm of an element; 0 for the empty basis.
    pub fn max_norm1(&self) -> BigInt {
        self.elements
            .iter()
            .map(IntVector::norm1)
            .max()
            .unwrap_or_default()
    }

    /// Elements whose entries all lie in `[-bound, bound]`.
    pub fn restricted_to_box(&self, bound: u32) -> Vec<IntVector> {
        let b = BigInt::from(bound);
        self.elements
            .iter()
            .filter(|v| v.norm_inf() <= b)
            .cloned()
            .collect()
    }
}

/// Sign pattern bitsets and 1-norm cached next to a vector; used to reject
/// most candidate reducers before touching the big integers.
#[derive(Clone)]
struct Tagged {
    v: IntVector,
    pos: Vec<u64>,
    neg: Vec<u64>,
    norm: BigInt,
}

impl Tagged {
    fn new(v: IntVector) -> Self {
        let words = v.len().div_ceil(64);
        let mut pos = vec![0u64; words];
        let mut neg = vec![0u64; words];
        for (i, x) in v.entries().iter().enumerate() {
            if x.is_positive() {
                pos[i / 64] |= 1 << (i % 64);
            } else if x.is_negative() {
                neg[i / 64] |= 1 << (i % 64);
            }
        }
        let norm = v.norm1();
        Tagged { v, pos, neg, norm }
    }

    /// `self ⊑ other`
    fn below(&self, other: &Tagged) -> bool {
        self.pos.iter().zip(&other.pos).all(|(a, b)| a & !b == 0)
            && self.neg.iter().zip(&other.neg).all(|(a, b)| a & !b == 0)
            && self.norm <= other.norm
            && conforms_unchecked(self.v.entries(), other.v.entries())
    }

    /// Some coordinate has opposite signs in the two vectors.
    fn cancels_with(&self, other: &Tagged) -> bool {
        self.pos.iter().zip(&other.neg).any(|(a, b)| a & b != 0)
            || self.neg.iter().zip(&other.pos).any(|(a, b)| a & b != 0)
    }
}

/// Graver basis with default [`Limits`].
pub fn graver_basis(a: &IntMatrix) -> Result<GraverBasis> {
    graver_basis_with(a, &Limits::default())
}

/// Graver basis by completion.
///
/// The store starts as the saturated kernel basis with both signs. Pair sums
/// are processed in FIFO order, each reduced to ⊑-normal form against the
/// store (repeatedly subtracting the first stored element that conforms to
/// it); nonzero remainders are stored with both signs and generate new pairs.
/// Pairs without a cancelling coordinate are skipped: such a sum is already a
/// conformal sum of two stored elements. A final sweep drops every element
/// that another element conforms to.
pub fn graver_basis_with(a: &IntMatrix, limits: &Limits) -> Result<GraverBasis> {
    let basis = integer_kernel_basis(a);
    if basis.is_empty() {
        return Ok(GraverBasis::from_elements(a, vec![]));
    }

    let mut store: Vec<Tagged> = Vec::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let insert =
        |store: &mut Vec<Tagged>, queue: &mut VecDeque<(usize, usize)>, v: IntVector| -> Result<()> {
            for w in [-&v, v] {
                if store.len() >= limits.max_elements {
                    return Err(Error::ResourceLimit(format!(
                        "completion exceeded {} elements",
                        limits.max_elements
                    )));
                }
                let j = store.len();
                store.push(Tagged::new(w));
                queue.extend((0..j).map(|i| (i, j)));
            }
            Ok(())
        };

    for b in basis {
        insert(&mut store, &mut queue, b)?;
    }

    let mut reductions = 0u64;
    while let Some((i, j)) = queue.pop_front() {
        if !store[i].cancels_with(&store[j]) {
            continue;
        }
        let sum = &store[i].v + &store[j].v;
        if sum.is_zero() {
            continue;
        }
        reductions += 1;
        if reductions > limits.max_reductions {
            return Err(Error::ResourceLimit(format!(
                "completion exceeded {} pair reductions",
                limits.max_reductions
            )));
        }
        if let Some(rem) = normal_form(&store, sum) {
            insert(&mut store, &mut queue, rem)?;
        }
    }

    Ok(GraverBasis::from_elements(a, minimal_elements(store)))
}

/// Reduces `v` against `store`; `None` if it reduces to zero.
fn normal_form(store: &[Tagged], v: IntVector) -> Option<IntVector> {
    let mut cur = Tagged::new(v);
    'outer: loop {
        if cur.norm.is_zero() {
            return None;
        }
        for g in store {
            if g.below(&cur) {
                // subtract the same reducer as often as it keeps conforming
                loop {
                    cur = Tagged::new(&cur.v - &g.v);
                    if cur.norm.is_zero() || !g.below(&cur) {
                        break;
                    }
                }
                continue 'outer;
            }
        }
        return Some(cur.v);
    }
}

/// The ⊑-minimal members of a set of nonzero vectors, deduplicated.
fn minimal_elements(mut items: Vec<Tagged>) -> Vec<IntVector> {
    items.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.v.cmp(&b.v)));
    items.dedup_by(|a, b| a.v == b.v);
    // anything strictly below x has smaller norm, and every non-minimal
    // element has a minimal element below it
    let mut kept: Vec<Tagged> = Vec::new();
    for x in items {
        if !kept.iter().any(|g| g.below(&x)) {
            kept.push(x);
        }
    }
    kept.into_iter().map(|t| t.v).collect()
}

/// Graver basis oracle with default [`Limits`].
pub fn graver_basis_oracle(a: &IntMatrix, bound: u32) -> Result<GraverBasis> {
    graver_basis_oracle_with(a, bound, &Limits::default())
}

/// Brute-force oracle: every nonzero kernel vector in `[-bound, bound]^n`,
/// reduced to its ⊑-minimal members.
///
/// Anything below a box vector is itself in the box, so the result is
/// exactly the set of Graver elements with sup-norm at most `bound`. It
/// equals the full Graver basis whenever that fits in the box.
pub fn graver_basis_oracle_with(a: &IntMatrix, bound: u32, limits: &Limits) -> Result<GraverBasis> {
    let n = a.n_cols();
    let side = 2 * u64::from(bound) + 1;
    let points = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(side));
    match points {
        Some(p) if p <= limits.max_box_points => {}
        _ => {
            return Err(Error::ResourceLimit(format!(
                "box [-{bound},{bound}]^{n} exceeds {} points",
                limits.max_box_points
            )))
        }
    }
    let cols: Vec<Vec<i128>> = a
        .columns()
        .iter()
        .map(|c| {
            c.entries()
                .iter()
                .map(|x| i64::try_from(x).map(i128::from))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::ResourceLimit("matrix entries exceed 64 bits".into()))?;

    let b = i64::from(bound);
    let m = a.n_rows();
    let mut x = vec![-b; n];
    // running product a * x, updated per odometer step
    let mut ax = vec![0i128; m];
    for (c, col) in cols.iter().enumerate() {
        for (acc, e) in ax.iter_mut().zip(col) {
            *acc += e * i128::from(x[c]);
        }
    }

    let mut found: Vec<Tagged> = Vec::new();
    loop {
        if ax.iter().all(|&s| s == 0) && x.iter().any(|&e| e != 0) {
            found.push(Tagged::new(IntVector::from_i64s(&x)));
        }
        let mut i = 0;
        while i < n && x[i] == b {
            x[i] = -b;
            for (acc, e) in ax.iter_mut().zip(&cols[i]) {
                *acc -= 2 * i128::from(b) * e;
            }
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
        for (acc, e) in ax.iter_mut().zip(&cols[i]) {
            *acc += e;
        }
    }

    Ok(GraverBasis::from_elements(a, minimal_elements(found)))
}

/// The `h`-th Lawrence lifting: `h` diagonal copies of `a` above a band of
/// `h` horizontally repeated identities. Shape `(h*s + t) x (h*t)` for an
/// `s x t` input.
pub fn lawrence_lift(a: &IntMatrix, h: usize) -> Result<IntMatrix> {
    if h == 0 {
        return Err(Error::Precondition("Lawrence lifting needs h >= 1".into()));
    }
    let (s, t) = (a.n_rows(), a.n_cols());
    let mut out = IntMatrix::zeros(h * s + t, h * t)?;
    for blk in 0..h {
        for i in 0..s {
            for j in 0..t {
                out.set(blk * s + i, blk * t + j, a.get(i, j).clone());
            }
        }
        for j in 0..t {
            out.set(h * s + j, blk * t + j, BigInt::from(1));
        }
    }
    Ok(out)
}

/// A vector cut into `block_count` consecutive blocks of `block_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVector {
    vector: IntVector,
    block_size: usize,
}

impl BlockVector {
    pub fn new(vector: IntVector, block_size: usize) -> Result<Self> {
        if block_size == 0 || !vector.len().is_multiple_of(block_size) {
            return Err(Error::Dimension(format!(
                "length {} is not a multiple of block size {block_size}",
                vector.len()
            )));
        }
        Ok(BlockVector { vector, block_size })
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_count(&self) -> usize {
        self.vector.len() / self.block_size
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[BigInt]> {
        self.vector.entries().chunks(self.block_size)
    }

    pub fn vector(&self) -> &IntVector {
        &self.vector
    }
}

/// Number of nonzero blocks.
pub fn type_of(x: &BlockVector) -> usize {
    x.blocks().filter(|b| b.iter().any(|e| !e.is_zero())).count()
}

/// Graver complexity as the largest 1-norm in the Graver basis of the matrix
/// whose columns are the Graver basis elements of `a` (lexicographic order).
pub fn graver_complexity(a: &IntMatrix, limits: &Limits) -> Result<BigInt> {
    let g = graver_basis_with(a, limits)?;
    if g.is_empty() {
        return Ok(BigInt::zero());
    }
    let second = IntMatrix::from_columns(g.elements())?;
    Ok(graver_basis_with(&second, limits)?.max_norm1())
}
