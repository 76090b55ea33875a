//! Lower-bound certificates for the Graver complexity of `K_{t,r}`.
//!
//! A certificate lists circuits of `K_{t,r}` and positive coefficients. If
//! the coefficients form a primitive relation on the circuits, the
//! Graver complexity of the incidence matrix is at least their sum. The
//! checker recomputes everything from the raw matrices and never trusts the
//! claimed bound or the optional walk annotations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bipartite::{matrix_to_walk, BipartiteShape, CircuitMatrix};
use crate::construction::CircuitFamily;
use crate::error::{Error, Result};
use crate::linalg::{gcd_of, integer_kernel_basis, rank, IntMatrix, IntVector};

/// Check names used in [`CheckFailure::check`].
pub mod checks {
    pub const DIMENSION: &str = "dimension";
    pub const NOT_A_CIRCUIT: &str = "not-a-circuit";
    pub const NONPOSITIVE: &str = "coefficient-nonpositive";
    pub const RELATION_SUM: &str = "relation-sum nonzero";
    pub const NOT_PRIMITIVE: &str = "not-primitive";
    pub const CLAIMED_BOUND: &str = "claimed-bound mismatch";
    pub const WALK_MISMATCH: &str = "walk-mismatch";
}

/// Circuits of `K_{t,r}` as `t x r` matrices, coefficients, and the bound
/// they are claimed to certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub t: usize,
    pub r: usize,
    pub circuits: Vec<Vec<Vec<BigInt>>>,
    pub coefficients: Vec<BigInt>,
    pub claimed_bound: BigInt,
    /// 1-based `(v, u)` pairs, one walk per circuit. Informational.
    pub walks: Option<Vec<Vec<[usize; 2]>>>,
}

impl LowerBoundCertificate {
    pub fn from_family(f: &CircuitFamily) -> Self {
        let s = f.shape();
        LowerBoundCertificate {
            t: s.t(),
            r: s.r(),
            circuits: f
                .circuits()
                .iter()
                .map(|c| {
                    c.rows()
                        .into_iter()
                        .map(|row| row.into_iter().map(BigInt::from).collect())
                        .collect()
                })
                .collect(),
            coefficients: f.coefficients().to_vec(),
            claimed_bound: f.coefficient_sum(),
            walks: Some(
                f.walks()
                    .iter()
                    .map(|w| w.to_one_based().into_iter().map(|(v, u)| [v, u]).collect())
                    .collect(),
            ),
        }
    }

    /// Circuit `idx` flattened in incidence-column order (`(i, j)` at `j*t + i`).
    fn circuit_vector(&self, idx: usize) -> IntVector {
        let mut v = vec![BigInt::zero(); self.t * self.r];
        for (i, row) in self.circuits[idx].iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                v[j * self.t + i] = x.clone();
            }
        }
        IntVector::new(v)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Wire::from(self)).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::CertificateParse(e.to_string()))?;
        wire.try_into()
    }
}

impl FromStr for LowerBoundCertificate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_json(s)
    }
}

/// Integers on the wire are exact decimal JSON numbers of any size.
#[derive(Debug, Clone)]
struct JsonInt(BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let text = n.to_string();
        let digits = text.strip_prefix('-').unwrap_or(&text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(serde::de::Error::custom(format!(
                "expected an integer, got {text}"
            )));
        }
        BigInt::from_str(&text)
            .map(JsonInt)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    t: usize,
    r: usize,
    circuits: Vec<Vec<Vec<JsonInt>>>,
    coefficients: Vec<JsonInt>,
    claimed_bound: JsonInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    walks: Option<Vec<Vec<[usize; 2]>>>,
}

impl From<&LowerBoundCertificate> for Wire {
    fn from(c: &LowerBoundCertificate) -> Self {
        let wrap = |xs: &[BigInt]| xs.iter().cloned().map(JsonInt).collect::<Vec<_>>();
        Wire {
            t: c.t,
            r: c.r,
            circuits: c
                .circuits
                .iter()
                .map(|m| m.iter().map(|row| wrap(row)).collect())
                .collect(),
            coefficients: wrap(&c.coefficients),
            claimed_bound: JsonInt(c.claimed_bound.clone()),
            walks: c.walks.clone(),
        }
    }
}

impl TryFrom<Wire> for LowerBoundCertificate {
    type Error = Error;

    fn try_from(w: Wire) -> Result<Self> {
        let bad = |msg: String| Err(Error::CertificateParse(msg));
        if w.t < 2 || w.r < 2 {
            return bad(format!(
                "t and r must be at least 2, got t = {}, r = {}",
                w.t, w.r
            ));
        }
        if w.circuits.is_empty() {
            return bad("circuits: empty list".into());
        }
        if w.coefficients.len() != w.circuits.len() {
            return bad(format!(
                "coefficients: {} entries for {} circuits",
                w.coefficients.len(),
                w.circuits.len()
            ));
        }
        for (k, m) in w.circuits.iter().enumerate() {
            if m.len() != w.t {
                return bad(format!("circuits[{k}]: {} rows, expected t = {}", m.len(), w.t));
            }
            if let Some((i, row)) = m.iter().enumerate().find(|(_, row)| row.len() != w.r) {
                return bad(format!(
                    "circuits[{k}][{i}]: {} entries, expected r = {}",
                    row.len(),
                    w.r
                ));
            }
        }
        if let Some((k, h)) = w
            .coefficients
            .iter()
            .enumerate()
            .find(|(_, h)| !h.0.is_positive())
        {
            return bad(format!("coefficients[{k}] = {} is not positive", h.0));
        }
        if let Some(walks) = &w.walks {
            if walks.len() != w.circuits.len() {
                return bad(format!(
                    "walks: {} entries for {} circuits",
                    walks.len(),
                    w.circuits.len()
                ));
            }
        }
        let unwrap = |xs: Vec<JsonInt>| xs.into_iter().map(|x| x.0).collect::<Vec<_>>();
        Ok(LowerBoundCertificate {
            t: w.t,
            r: w.r,
            circuits: w
                .circuits
                .into_iter()
                .map(|m| m.into_iter().map(unwrap).collect())
                .collect(),
            coefficients: unwrap(w.coefficients),
            claimed_bound: w.claimed_bound.0,
            walks: w.walks,
        })
    }
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub check: &'static str,
    pub detail: String,
}

/// Outcome of [`check_certificate`]. `certified_bound` is present exactly
/// when there are no failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub certified_bound: Option<BigInt>,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has_failure(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.is_valid())?;
        if let Some(b) = &self.certified_bound {
            writeln!(f, "certified bound: {b}")?;
        }
        for fail in &self.failures {
            writeln!(f, "failure [{}]: {}", fail.check, fail.detail)?;
        }
        Ok(())
    }
}

/// Generator of the integer kernel of the matrix with columns `vectors`, if
/// that kernel is one-dimensional with full support. Normalized so its
/// first entry is positive.
pub fn relation_generator(vectors: &[IntVector]) -> Result<Option<IntVector>> {
    let m = column_matrix(vectors)?;
    let mut kernel = integer_kernel_basis(&m);
    if kernel.len() != 1 {
        return Ok(None);
    }
    let g = kernel.pop().expect("one element");
    if g.entries().iter().any(Zero::is_zero) {
        return Ok(None);
    }
    Ok(Some(if g[0].is_negative() { -&g } else { g }))
}

fn column_matrix(vectors: &[IntVector]) -> Result<IntMatrix> {
    if vectors.is_empty() {
        return Err(Error::Dimension("no vectors".into()));
    }
    if vectors.iter().any(|v| v.len() != vectors[0].len()) || vectors[0].is_empty() {
        return Err(Error::Dimension("vectors have unequal or zero lengths".into()));
    }
    IntMatrix::from_columns(vectors)
}

/// Why `h` is not a primitive relation on `vectors`, or `None` if it is.
fn primitivity_failure(vectors: &[IntVector], h: &[BigInt]) -> Result<Option<String>> {
    if vectors.len() != h.len() {
        return Err(Error::Dimension(format!(
            "{} vectors against {} coefficients",
            vectors.len(),
            h.len()
        )));
    }
    let m = column_matrix(vectors)?;
    if let Some(k) = h.iter().position(|x| !x.is_positive()) {
        return Ok(Some(format!("coefficient {} at index {k} is not positive", h[k])));
    }
    let hv = IntVector::new(h.to_vec());
    if !m.annihilates(&hv)? {
        return Ok(Some("coefficients do not sum the vectors to zero".into()));
    }
    let g = gcd_of(&hv);
    if !g.is_one() {
        return Ok(Some(format!("coefficients share the factor {g}")));
    }
    let k = vectors.len();
    let rk = rank(&m);
    if rk != k - 1 {
        return Ok(Some(format!(
            "rank {rk} of {k} vectors is not {}, so a proper subset is dependent",
            k - 1
        )));
    }
    // rank k-1: the kernel is spanned by one primitive vector, which must be h
    match relation_generator(vectors)? {
        Some(gen) if gen == hv => Ok(None),
        Some(gen) => Ok(Some(format!(
            "kernel generator {gen} differs from the coefficients"
        ))),
        None => Ok(Some(
            "kernel generator has a zero entry, so a proper subset is dependent".into(),
        )),
    }
}

/// Whether `h` is a primitive relation on `vectors`: positive coprime
/// coefficients with `sum h_i v^i = 0`, and no `k-1` of the vectors
/// linearly dependent.
///
/// The last condition is decided by one exact kernel computation: the
/// vectors must have rank `k-1` and the kernel generator must have full
/// support. A relation on a proper subset would be a kernel vector with a
/// zero entry.
pub fn is_primitive_relation(vectors: &[IntVector], h: &[BigInt]) -> Result<bool> {
    Ok(primitivity_failure(vectors, h)?.is_none())
}

/// Runs, in order: dimension checks, circuit checks, positivity, the
/// relation sum, primitivity, the claimed bound and the walk annotations.
/// Failing dimension checks stop the run; every other failure is collected.
pub fn check_certificate(c: &LowerBoundCertificate) -> CheckReport {
    let mut failures = Vec::new();
    fn fail(failures: &mut Vec<CheckFailure>, check: &'static str, detail: String) {
        failures.push(CheckFailure { check, detail });
    }

    let shape = match BipartiteShape::new(c.t, c.r) {
        Ok(s) => Some(s),
        Err(e) => {
            fail(&mut failures, checks::DIMENSION, e.to_string());
            None
        }
    };
    if c.circuits.is_empty() {
        fail(&mut failures, checks::DIMENSION, "no circuits".into());
    }
    if c.circuits.len() != c.coefficients.len() {
        fail(
            &mut failures,
            checks::DIMENSION,
            format!(
                "{} circuits against {} coefficients",
                c.circuits.len(),
                c.coefficients.len()
            ),
        );
    }
    for (k, m) in c.circuits.iter().enumerate() {
        if m.len() != c.t || m.iter().any(|row| row.len() != c.r) {
            fail(
                &mut failures,
                checks::DIMENSION,
                format!("circuit {k} is not {} x {}", c.t, c.r),
            );
        }
    }
    let Some(shape) = shape.filter(|_| failures.is_empty()) else {
        return CheckReport {
            certified_bound: None,
            failures,
        };
    };

    let vectors: Vec<IntVector> = (0..c.circuits.len()).map(|k| c.circuit_vector(k)).collect();
    let mut matrices = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        match CircuitMatrix::from_vector(v, shape) {
            Ok(m) => matrices.push(Some(m)),
            Err(e) => {
                fail(&mut failures, checks::NOT_A_CIRCUIT, format!("circuit {k}: {e}"));
                matrices.push(None);
            }
        }
    }

    let positive = c.coefficients.iter().all(Signed::is_positive);
    for (k, h) in c
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, h)| !h.is_positive())
    {
        fail(
            &mut failures,
            checks::NONPOSITIVE,
            format!("coefficient {k} is {h}"),
        );
    }

    let mut sum = IntVector::zeros(shape.edges());
    for (v, h) in vectors.iter().zip(&c.coefficients) {
        sum.add_scaled(h, v);
    }
    let sum_ok = sum.is_zero();
    if !sum_ok {
        let nonzero = sum.support().len();
        fail(
            &mut failures,
            checks::RELATION_SUM,
            format!("sum of h_i x^i has {nonzero} nonzero entries"),
        );
    }

    if positive && sum_ok {
        match primitivity_failure(&vectors, &c.coefficients) {
            Ok(None) => {}
            Ok(Some(why)) => fail(&mut failures, checks::NOT_PRIMITIVE, why),
            Err(e) => fail(&mut failures, checks::DIMENSION, e.to_string()),
        }
    }

    let total: BigInt = c.coefficients.iter().sum();
    if total != c.claimed_bound {
        fail(
            &mut failures,
            checks::CLAIMED_BOUND,
            format!("claimed {}, coefficients sum to {total}", c.claimed_bound),
        );
    }

    if let Some(walks) = &c.walks {
        if walks.len() != matrices.len() {
            fail(
                &mut failures,
                checks::WALK_MISMATCH,
                format!("{} walks for {} circuits", walks.len(), matrices.len()),
            );
        } else {
            for (k, (w, m)) in walks.iter().zip(&matrices).enumerate() {
                let Some(m) = m else { continue };
                let expect: Vec<[usize; 2]> = matrix_to_walk(m)
                    .to_one_based()
                    .into_iter()
                    .map(|(v, u)| [v, u])
                    .collect();
                if &expect != w {
                    fail(
                        &mut failures,
                        checks::WALK_MISMATCH,
                        format!("walk {k} does not describe circuit {k}"),
                    );
                }
            }
        }
    }

    let certified_bound = failures.is_empty().then_some(total);
    CheckReport {
        certified_bound,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{example_3x4, example_4_4, seed_3x4};

    fn vectors(f: &CircuitFamily) -> Vec<IntVector> {
        f.circuits().iter().map(CircuitMatrix::to_vector).collect()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn example_relation_is_primitive() {
        let f = example_3x4();
        assert!(is_primitive_relation(&vectors(&f), &ints(&[1, 2, 3, 3, 5, 6, 7])).unwrap());
        assert!(!is_primitive_relation(&vectors(&f), &ints(&[2, 4, 6, 6, 10, 12, 14])).unwrap());
        assert_eq!(
            relation_generator(&vectors(&f)).unwrap(),
            Some(IntVector::from_i64s(&[1, 2, 3, 3, 5, 6, 7]))
        );
    }

    #[test]
    fn dependent_subsets_are_rejected() {
        let vs = [
            IntVector::from_i64s(&[1, -1]),
            IntVector::from_i64s(&[2, -2]),
            IntVector::from_i64s(&[-3, 3]),
        ];
        assert!(!is_primitive_relation(&vs, &ints(&[1, 1, 1])).unwrap());
        assert_eq!(relation_generator(&vs).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let vs = [IntVector::from_i64s(&[1, -1]), IntVector::from_i64s(&[-1, 1])];
        assert!(matches!(
            is_primitive_relation(&vs, &ints(&[1])),
            Err(Error::Dimension(_))
        ));
        let uneven = [IntVector::from_i64s(&[1, -1]), IntVector::from_i64s(&[-1])];
        assert!(matches!(
            is_primitive_relation(&uneven, &ints(&[1, 1])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn seed_certificate_checks() {
        let c = LowerBoundCertificate::from_family(&seed_3x4());
        let report = check_certificate(&c);
        assert!(report.is_valid(), "{report}");
        assert_eq!(report.certified_bound, Some(BigInt::from(27)));

        let mut bad = c.clone();
        bad.coefficients[5] = BigInt::from(5);
        bad.claimed_bound -= 1;
        let report = check_certificate(&bad);
        assert!(report.has_failure(checks::RELATION_SUM), "{report}");
        assert_eq!(report.certified_bound, None);

        let mut bad = c.clone();
        bad.circuits[2][0][0] = BigInt::from(2);
        let report = check_certificate(&bad);
        assert!(report.has_failure(checks::NOT_A_CIRCUIT), "{report}");
    }

    #[test]
    fn checker_does_not_trust_annotations() {
        let c = LowerBoundCertificate::from_family(&seed_3x4());
        let mut bad = c.clone();
        bad.claimed_bound = BigInt::from(28);
        let report = check_certificate(&bad);
        assert_eq!(report.failures.len(), 1);
        assert!(report.has_failure(checks::CLAIMED_BOUND));

        let mut bad = c.clone();
        bad.walks.as_mut().unwrap().swap(0, 1);
        assert!(check_certificate(&bad).has_failure(checks::WALK_MISMATCH));

        let mut plain = c;
        plain.walks = None;
        assert!(check_certificate(&plain).is_valid());
    }

    #[test]
    fn dimension_failures_stop_the_run() {
        let mut c = LowerBoundCertificate::from_family(&seed_3x4());
        c.circuits[1].pop();
        let report = check_certificate(&c);
        assert!(report.failures.iter().all(|f| f.check == checks::DIMENSION));
        assert!(!report.is_valid());

        let mut c = LowerBoundCertificate::from_family(&seed_3x4());
        c.coefficients.pop();
        assert!(check_certificate(&c).has_failure(checks::DIMENSION));
    }

    #[test]
    fn nonpositive_coefficients_are_reported() {
        let mut c = LowerBoundCertificate::from_family(&seed_3x4());
        c.coefficients[0] = BigInt::from(-7);
        let report = check_certificate(&c);
        assert!(report.has_failure(checks::NONPOSITIVE));
    }

    #[test]
    fn example_4_4_certificate_checks() {
        let report = check_certificate(&LowerBoundCertificate::from_family(&example_4_4()));
        assert_eq!(report.certified_bound, Some(BigInt::from(68)), "{report}");
    }

    #[test]
    fn json_round_trip_and_format() {
        let c = LowerBoundCertificate::from_family(&seed_3x4());
        let text = c.to_json();
        assert_eq!(LowerBoundCertificate::from_json(&text).unwrap(), c);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["claimed_bound"].to_string(), "27");
        assert_eq!(v["walks"][6], serde_json::json!([[1, 2], [2, 3], [3, 4]]));
    }

    #[test]
    fn json_preserves_huge_integers() {
        let mut c = LowerBoundCertificate::from_family(&seed_3x4());
        c.claimed_bound = BigInt::from_str("123456789012345678901234567890").unwrap();
        let back = LowerBoundCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back.claimed_bound, c.claimed_bound);
    }

    #[test]
    fn json_parse_errors() {
        let good: serde_json::Value =
            serde_json::from_str(&LowerBoundCertificate::from_family(&seed_3x4()).to_json()).unwrap();
        let mutate = |f: &dyn Fn(&mut serde_json::Value)| {
            let mut v = good.clone();
            f(&mut v);
            LowerBoundCertificate::from_json(&v.to_string())
        };
        assert!(mutate(&|v| {
            v["coefficients"].as_array_mut().unwrap().pop();
        })
        .is_err());
        assert!(mutate(&|v| v["coefficients"][2] = serde_json::json!(-3)).is_err());
        assert!(mutate(&|v| v["coefficients"][2] = serde_json::json!(0)).is_err());
        assert!(mutate(&|v| v["extra"] = serde_json::json!(1)).is_err());
        assert!(mutate(&|v| v["circuits"][0][0][0] = serde_json::json!(1.5)).is_err());
        assert!(mutate(&|v| v["circuits"][0][0][0] = serde_json::json!("1")).is_err());
        assert!(mutate(&|v| {
            v["circuits"][0].as_array_mut().unwrap().pop();
        })
        .is_err());
        assert!(mutate(&|v| {
            v.as_object_mut().unwrap().remove("walks");
        })
        .is_ok());
        let err = LowerBoundCertificate::from_json("{\n  \"t\": 3,\n  \"r\": oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}
