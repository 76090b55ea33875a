//! Recursive families of circuits of `K_{t,r}` with primitive relations.
//!
//! Starting from seven circuits of `K_{3,4}` whose relation sums to 27, two
//! operators grow the family:
//!
//! * [`lift_t`] goes from `K_{t,t+1}` to `K_{t+1,t+1}`. The last circuit is
//!   split into `t` four-cycles through the new vertex `v_{t+1}` plus one
//!   long cycle; every new coefficient is 1, so the coefficient sum grows
//!   by `t`.
//! * [`extend_r`] goes from `K_{t,r}` to `K_{t,r+1}`. The last circuit is
//!   replaced by the `t` circuits that reroute one of its `U`-vertices
//!   through `u_{r+1}`; these sum to `(t-1)` times the old circuit, so the
//!   other coefficients are multiplied by `t-1` and the sum `s` becomes
//!   `(t-1)(s-1)+t`.
//!
//! Both operators end with a vertex relabeling that puts the last circuit
//! back into the form the next operator expects, and both require the last
//! coefficient to be 1. [`build_certificate`] runs the schedule
//! `(3,4) -> (4,4) -> (4,5) -> (5,5) -> ... -> (t,t) -> (t,t+1) -> ... -> (t,r)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::bipartite::{
    apply_vertex_permutation, matrix_to_walk, walk_relabeling, walk_to_matrix, BipartiteShape, CircuitMatrix,
    CircuitWalk, Permutation,
};
use crate::error::{Error, Result};

/// Circuits of one `K_{t,r}` with positive coefficients summing them to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitFamily {
    shape: BipartiteShape,
    circuits: Vec<CircuitMatrix>,
    coefficients: Vec<BigInt>,
}

impl CircuitFamily {
    /// Checks equal nonzero lengths, matching shapes, positive coefficients
    /// and `sum h_i x^i = 0`. Primitivity is left to the certificate checker.
    pub fn new(
        shape: BipartiteShape,
        circuits: Vec<CircuitMatrix>,
        coefficients: Vec<BigInt>,
    ) -> Result<Self> {
        if circuits.is_empty() || circuits.len() != coefficients.len() {
            return Err(Error::Dimension(format!(
                "{} circuits against {} coefficients",
                circuits.len(),
                coefficients.len()
            )));
        }
        if let Some(c) = circuits.iter().find(|c| c.shape() != shape) {
            return Err(Error::Dimension(format!(
                "circuit of {} in a family on {shape}",
                c.shape()
            )));
        }
        if coefficients.iter().any(|h| !h.is_positive()) {
            return Err(Error::Precondition("coefficients must be positive".into()));
        }
        let family = CircuitFamily {
            shape,
            circuits,
            coefficients,
        };
        if !family.relation_sum().iter().all(Zero::is_zero) {
            return Err(Error::Precondition(
                "coefficients do not sum the circuits to zero".into(),
            ));
        }
        Ok(family)
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn circuits(&self) -> &[CircuitMatrix] {
        &self.circuits
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// `||h||_1`, the lower bound this family certifies.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    pub fn walks(&self) -> Vec<CircuitWalk> {
        self.circuits.iter().map(matrix_to_walk).collect()
    }

    pub fn last_walk(&self) -> CircuitWalk {
        matrix_to_walk(self.circuits.last().expect("families are nonempty"))
    }

    /// `sum h_i x^i`, row-major over the `t x r` grid.
    fn relation_sum(&self) -> Vec<BigInt> {
        let s = self.shape;
        let mut acc = vec![BigInt::zero(); s.edges()];
        for (c, h) in self.circuits.iter().zip(&self.coefficients) {
            for i in 0..s.t() {
                for j in 0..s.r() {
                    match c.get(i, j) {
                        0 => {}
                        x => acc[i * s.r() + j] += h * x,
                    }
                }
            }
        }
        acc
    }

    fn relabeled(self, sigma_v: &Permutation, sigma_u: &Permutation) -> Result<Self> {
        let circuits = self
            .circuits
            .iter()
            .map(|c| apply_vertex_permutation(c, sigma_v, sigma_u))
            .collect::<Result<Vec<_>>>()?;
        Ok(CircuitFamily { circuits, ..self })
    }

    fn require_recursion_input(&self, expected_last: &CircuitWalk, op: &str) -> Result<()> {
        if !self.coefficients.last().is_some_and(One::is_one) {
            return Err(Error::Precondition(format!("{op}: last coefficient must be 1")));
        }
        let last = self.last_walk();
        if &last != expected_last {
            return Err(Error::Precondition(format!(
                "{op}: last circuit is {last}, expected {expected_last}"
            )));
        }
        Ok(())
    }
}

fn shape(t: usize, r: usize) -> BipartiteShape {
    BipartiteShape::new(t, r).expect("construction shapes are at least 2x2")
}

/// The seven circuits of `K_{3,4}` (1-based walks) and the relation
/// `x1 + 2x2 + 3x3 + 3x4 + 5x5 + 6x6 + 7x7 = 0` they satisfy.
const EXAMPLE_3X4_WALKS: [[(usize, usize); 3]; 7] = [
    [(1, 4), (3, 2), (2, 3)],
    [(1, 2), (3, 3), (2, 1)],
    [(1, 4), (2, 1), (3, 2)],
    [(1, 4), (2, 2), (3, 1)],
    [(1, 1), (2, 2), (3, 3)],
    [(1, 3), (2, 4), (3, 2)],
    [(1, 2), (2, 3), (3, 4)],
];
const EXAMPLE_3X4_COEFFICIENTS: [u32; 7] = [1, 2, 3, 3, 5, 6, 7];

fn family_from_walks(
    s: BipartiteShape,
    walks: &[Vec<(usize, usize)>],
    coefficients: &[u32],
) -> CircuitFamily {
    let circuits = walks
        .iter()
        .map(|w| walk_to_matrix(&CircuitWalk::from_one_based(s, w).expect("constant walk is valid")))
        .collect();
    CircuitFamily::new(
        s,
        circuits,
        coefficients.iter().map(|&h| BigInt::from(h)).collect(),
    )
    .expect("constant family satisfies its relation")
}

/// The seven `K_{3,4}` circuits with coefficients `(1,2,3,3,5,6,7)`, in
/// their original order.
pub fn example_3x4() -> CircuitFamily {
    let walks: Vec<Vec<_>> = EXAMPLE_3X4_WALKS.iter().map(|w| w.to_vec()).collect();
    family_from_walks(shape(3, 4), &walks, &EXAMPLE_3X4_COEFFICIENTS)
}

/// Induction seed on `K_{3,4}`: [`example_3x4`] with the first and last
/// circuits exchanged, relabeled by `v2 <-> v3` and `u2 -> u3 -> u4 -> u2`
/// so the last circuit is `(v1,u2,v2,u3,v3,u4)`. Coefficients
/// `(7,2,3,3,5,6,1)`.
pub fn seed_3x4() -> CircuitFamily {
    let mut f = example_3x4();
    let k = f.len();
    f.circuits.swap(0, k - 1);
    f.coefficients.swap(0, k - 1);
    let sigma_v = Permutation::from_one_based(&[1, 3, 2]).expect("valid");
    let sigma_u = Permutation::from_one_based(&[1, 3, 4, 2]).expect("valid");
    let f = f.relabeled(&sigma_v, &sigma_u).expect("sizes match");
    debug_assert_eq!(f.last_walk(), staircase_walk(3, 4, 1));
    f
}

/// `(v1, u_{o+1}, v2, u_{o+2}, ..., v_t, u_{o+t})` in `K_{t,r}`, 0-based
/// `U`-offset `o`.
fn staircase_walk(t: usize, r: usize, offset: usize) -> CircuitWalk {
    CircuitWalk::new(shape(t, r), (0..t).map(|a| (a, offset + a)).collect()).expect("staircase fits")
}

/// From `K_{t,t+1}` to `K_{t+1,t+1}`.
///
/// Requires the last circuit to be `(v1,u2,v2,u3,...,v_t,u_{t+1})` with
/// coefficient 1. That circuit is replaced by the four-cycles
/// `(v1,u_j,v_{t+1},u_{j+1})` for `j = 1..t` and the cycle
/// `(v1,u2,...,v_t,u_{t+1},v_{t+1},u1)`, which together sum to it; all get
/// coefficient 1. Columns are then relabeled so the last circuit is
/// `(v1,u1,v2,u2,...,v_{t+1},u_{t+1})`.
pub fn lift_t(f: &CircuitFamily) -> Result<CircuitFamily> {
    let (t, r) = (f.shape.t(), f.shape.r());
    if t < 3 || r != t + 1 {
        return Err(Error::Precondition(format!(
            "lift_t needs K_{{t,t+1}} with t >= 3, got {}",
            f.shape
        )));
    }
    f.require_recursion_input(&staircase_walk(t, r, 1), "lift_t")?;

    let out = shape(t + 1, t + 1);
    let k = f.len();
    let mut circuits = f.circuits[..k - 1]
        .iter()
        .map(|c| c.embed(out))
        .collect::<Result<Vec<_>>>()?;
    for j in 0..t {
        let w = CircuitWalk::new(out, vec![(0, j), (t, j + 1)])?;
        circuits.push(walk_to_matrix(&w));
    }
    let long = CircuitWalk::new(out, (0..t).map(|a| (a, a + 1)).chain([(t, 0)]).collect())?;
    circuits.push(walk_to_matrix(&long));

    let mut coefficients = f.coefficients[..k - 1].to_vec();
    coefficients.extend(std::iter::repeat_n(BigInt::one(), t + 1));

    let (sigma_v, sigma_u) = walk_relabeling(&long, &staircase_walk(t + 1, t + 1, 0))?;
    CircuitFamily::new(out, circuits, coefficients)?.relabeled(&sigma_v, &sigma_u)
}

/// From `K_{t,r}` to `K_{t,r+1}`, `r >= t >= 4`.
///
/// Requires the last circuit to be `(v1,u_{r-t+1},...,v_t,u_r)` with
/// coefficient 1. It is replaced by the `t` circuits obtained by changing
/// `u_{r-j+1}` into `u_{r+1}` for `j = 1..t` (coefficient 1 each, summing to
/// `(t-1)` times the old circuit); the other coefficients are multiplied by
/// `t-1`. Columns are then relabeled so the last circuit is
/// `(v1,u_{r-t+2},...,v_t,u_{r+1})`.
pub fn extend_r(f: &CircuitFamily) -> Result<CircuitFamily> {
    let (t, r) = (f.shape.t(), f.shape.r());
    if t < 4 || r < t {
        return Err(Error::Precondition(format!(
            "extend_r needs K_{{t,r}} with r >= t >= 4, got {}",
            f.shape
        )));
    }
    let last = staircase_walk(t, r, r - t);
    f.require_recursion_input(&last, "extend_r")?;

    let out = shape(t, r + 1);
    let k = f.len();
    let mut circuits = f.circuits[..k - 1]
        .iter()
        .map(|c| c.embed(out))
        .collect::<Result<Vec<_>>>()?;
    let mut rerouted = None;
    for j in 1..=t {
        // u_{r-j+1} sits at walk position t-j
        let mut pairs = last.pairs().to_vec();
        pairs[t - j].1 = r;
        let w = CircuitWalk::new(out, pairs)?;
        circuits.push(walk_to_matrix(&w));
        rerouted = Some(w);
    }
    let rerouted = rerouted.expect("t >= 4");

    let scale = BigInt::from(t - 1);
    let mut coefficients: Vec<BigInt> = f.coefficients[..k - 1].iter().map(|h| h * &scale).collect();
    coefficients.extend(std::iter::repeat_n(BigInt::one(), t));

    let (sigma_v, sigma_u) = walk_relabeling(&rerouted, &staircase_walk(t, r + 1, r + 1 - t))?;
    CircuitFamily::new(out, circuits, coefficients)?.relabeled(&sigma_v, &sigma_u)
}

/// The family certifying [`theorem_bound`]`(t, r)` for `4 <= t <= r`.
pub fn build_certificate(t: usize, r: usize) -> Result<CircuitFamily> {
    if t < 4 || r < t {
        return Err(Error::Precondition(format!(
            "certificates exist for 4 <= t <= r, got ({t}, {r})"
        )));
    }
    let mut f = lift_t(&seed_3x4())?;
    for _ in 4..t {
        f = lift_t(&extend_r(&f)?)?;
    }
    for _ in t..r {
        f = extend_r(&f)?;
    }
    Ok(f)
}

/// Number of circuits in the family at `K_{t,t}`: `t^2 - 2t + 2`.
pub fn circuits_at_square(t: usize) -> usize {
    t * t - 2 * t + 2
}

/// An exact rational bound value; integral for every valid input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundValue(BigRational);

impl BoundValue {
    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    fn integral(value: BigRational) -> Self {
        assert!(value.is_integer(), "bound formula produced non-integer {value}");
        BoundValue(value)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `b_t = (t-2)! (15 + sum_{i=1}^{t-4} (i+4)/(i+2)!)`, the coefficient sum at
/// `K_{t,t}`.
pub fn b_value(t: usize) -> Result<BoundValue> {
    if t < 4 {
        return Err(Error::Precondition(format!("b_t is defined for t >= 4, got {t}")));
    }
    let tail: BigRational = (1..=t - 4)
        .map(|i| BigRational::new(BigInt::from(i + 4), factorial(i + 2)))
        .sum();
    let inner = BigRational::from_integer(BigInt::from(15)) + tail;
    Ok(BoundValue::integral(
        inner * BigRational::from_integer(factorial(t - 2)),
    ))
}

/// Lower bound on the Graver complexity of the incidence matrix of
/// `K_{t,r}`.
///
/// For `4 <= t <= r`: `(t-1)^{r-t} (b_t + 1/(t-2)) - 1/(t-2)`.
/// For `t = 3, r >= 3`: `17 * 2^{r-3} - 7`.
pub fn theorem_bound(t: usize, r: usize) -> Result<BoundValue> {
    match (t, r) {
        (3, r) if r >= 3 => {
            let v = BigInt::from(17) * BigInt::from(2).pow(r - 3) - 7;
            Ok(BoundValue(BigRational::from_integer(v)))
        }
        (t, r) if t >= 4 && r >= t => {
            let shift = BigRational::new(BigInt::one(), BigInt::from(t - 2));
            let growth = BigRational::from_integer(BigInt::from(t - 1).pow(r - t));
            let b = b_value(t)?.0;
            Ok(BoundValue::integral(growth * (b + &shift) - shift))
        }
        _ => Err(Error::Precondition(format!(
            "bound defined for t = 3 <= r or 4 <= t <= r, got ({t}, {r})"
        ))),
    }
}

/// Circuits of `K_{4,4}` with coefficients `(2,4,6,6,10,12,7,7,7,7)`: the
/// first six circuits of [`example_3x4`] embedded, then four circuits
/// through `v4`. A stronger relation at `(4,4)` than the recursion gives,
/// but its last coefficient is 7 so it cannot feed [`extend_r`].
pub fn example_4_4() -> CircuitFamily {
    let mut walks: Vec<Vec<_>> = EXAMPLE_3X4_WALKS[..6].iter().map(|w| w.to_vec()).collect();
    walks.push(vec![(1, 2), (4, 1), (3, 4)]);
    walks.push(vec![(2, 3), (4, 2)]);
    walks.push(vec![(3, 4), (4, 3)]);
    walks.push(vec![(1, 2), (2, 3), (3, 1), (4, 4)]);
    family_from_walks(shape(4, 4), &walks, &[2, 4, 6, 6, 10, 12, 7, 7, 7, 7])
}
