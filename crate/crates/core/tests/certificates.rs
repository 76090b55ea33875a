use graver_core::certificate::checks;
use graver_core::*;
use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn valid_certificates() -> Vec<LowerBoundCertificate> {
    let mut out = vec![
        LowerBoundCertificate::from_family(&seed_3x4()),
        LowerBoundCertificate::from_family(&example_3x4()),
        LowerBoundCertificate::from_family(&example_4_4()),
    ];
    for (t, r) in [(4, 4), (4, 6), (5, 5), (5, 7), (6, 6)] {
        out.push(LowerBoundCertificate::from_family(
            &build_certificate(t, r).unwrap(),
        ));
    }
    out
}

fn vectors_of(c: &LowerBoundCertificate) -> Vec<IntVector> {
    let shape = BipartiteShape::new(c.t, c.r).unwrap();
    c.circuits
        .iter()
        .map(|m| {
            let rows: Vec<Vec<i64>> = m
                .iter()
                .map(|row| row.iter().map(|x| i64::try_from(x).unwrap()).collect())
                .collect();
            CircuitMatrix::from_rows(shape, &rows).unwrap().to_vector()
        })
        .collect()
}

#[test]
fn random_single_perturbations_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let certs = valid_certificates();
    for round in 0..300 {
        let mut c = certs.choose(&mut rng).unwrap().clone();
        match round % 3 {
            0 => {
                let k = rng.gen_range(0..c.coefficients.len());
                let delta = *[-2i64, -1, 1, 2, 5].choose(&mut rng).unwrap();
                c.coefficients[k] += delta;
                c.claimed_bound += delta;
            }
            1 => {
                let k = rng.gen_range(0..c.circuits.len());
                let i = rng.gen_range(0..c.t);
                let j = rng.gen_range(0..c.r);
                let old = c.circuits[k][i][j].clone();
                let new = [-1i64, 0, 1, 2]
                    .into_iter()
                    .map(BigInt::from)
                    .filter(|x| x != &old)
                    .collect::<Vec<_>>()
                    .choose(&mut rng)
                    .unwrap()
                    .clone();
                c.circuits[k][i][j] = new;
            }
            _ => {
                let k = rng.gen_range(0..c.circuits.len());
                c.circuits.remove(k);
                let h = c.coefficients.remove(k);
                c.claimed_bound -= h;
                c.walks.as_mut().unwrap().remove(k);
            }
        }
        let report = check_certificate(&c);
        assert!(!report.is_valid(), "round {round} accepted: {report}");
        assert_eq!(report.certified_bound, None);
    }
}

#[test]
fn recovered_generator_equals_coefficients() {
    for c in valid_certificates() {
        let vs = vectors_of(&c);
        let g = relation_generator(&vs).unwrap().unwrap();
        assert_eq!(g.entries(), &c.coefficients[..]);
    }
}

#[test]
fn primitivity_is_invariant_under_reordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for c in valid_certificates() {
        let vs = vectors_of(&c);
        let mut idx: Vec<usize> = (0..vs.len()).collect();
        for _ in 0..5 {
            idx.shuffle(&mut rng);
            let v2: Vec<_> = idx.iter().map(|&i| vs[i].clone()).collect();
            let h2: Vec<_> = idx.iter().map(|&i| c.coefficients[i].clone()).collect();
            assert!(is_primitive_relation(&v2, &h2).unwrap());
        }
    }
}

#[test]
fn doubled_relation_and_dependent_subsets_are_rejected() {
    let c = LowerBoundCertificate::from_family(&example_3x4());
    let vs = vectors_of(&c);
    let doubled: Vec<BigInt> = c.coefficients.iter().map(|h| h * 2).collect();
    assert!(!is_primitive_relation(&vs, &doubled).unwrap());

    // x + x + (-2x) style: appending a copy of a circuit creates a dependent pair
    let mut vs2 = vs.clone();
    vs2.push(vs[0].clone());
    let mut h2 = c.coefficients.clone();
    h2[0] -= 1;
    h2.push(BigInt::from(1));
    assert!(!is_primitive_relation(&vs2, &h2).unwrap());
}

/// Definition-level check: no `k-1` of the vectors are linearly dependent.
fn every_proper_subset_independent(vs: &[IntVector]) -> bool {
    let k = vs.len();
    if k <= 1 {
        return true;
    }
    vs.iter().cloned().combinations(k - 1).all(|sub| {
        let m = IntMatrix::from_columns(&sub).unwrap();
        rank(&m) == k - 1
    })
}

fn relation_holds(vs: &[IntVector], h: &[BigInt]) -> bool {
    let mut acc = IntVector::zeros(vs[0].len());
    for (v, c) in vs.iter().zip(h) {
        acc.add_scaled(c, v);
    }
    acc.is_zero()
}

fn relation_strategy() -> impl Strategy<Value = (Vec<IntVector>, Vec<BigInt>)> {
    (2usize..=8, 2usize..=5).prop_flat_map(|(k, n)| {
        (
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), k - 1),
            proptest::collection::vec(1i64..=4, k - 1),
            proptest::bool::ANY,
        )
            .prop_map(move |(vs, h, dup)| {
                let mut vs: Vec<IntVector> = vs.iter().map(|v| IntVector::from_i64s(v)).collect();
                if dup && vs.len() >= 2 {
                    vs[1] = vs[0].clone();
                }
                let mut h: Vec<BigInt> = h.into_iter().map(BigInt::from).collect();
                // close the relation with a last vector of coefficient 1
                let mut last = IntVector::zeros(n);
                for (v, c) in vs.iter().zip(&h) {
                    last.add_scaled(&-c, v);
                }
                vs.push(last);
                h.push(BigInt::from(1));
                (vs, h)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kernel_check_matches_subset_enumeration((vs, h) in relation_strategy()) {
        prop_assume!(relation_holds(&vs, &h));
        let expected = every_proper_subset_independent(&vs);
        prop_assert_eq!(is_primitive_relation(&vs, &h).unwrap(), expected);
    }

    #[test]
    fn certificate_json_round_trip(pick in 0usize..8, extra in 0u64..1_000_000_000_000) {
        let mut c = valid_certificates().swap_remove(pick);
        c.claimed_bound += BigInt::from(extra) * BigInt::from(extra);
        if extra % 2 == 0 {
            c.walks = None;
        }
        let back = LowerBoundCertificate::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn tampering_reports_named_checks() {
    let base = LowerBoundCertificate::from_family(&seed_3x4());
    let mut c = base.clone();
    c.coefficients[5] = BigInt::from(5);
    assert!(check_certificate(&c).has_failure(checks::RELATION_SUM));
    assert!(check_certificate(&c).has_failure(checks::CLAIMED_BOUND));

    let mut c = base.clone();
    c.circuits[0][0][0] = BigInt::from(2);
    assert!(check_certificate(&c).has_failure(checks::NOT_A_CIRCUIT));

    // a valid relation that is not primitive: the seed relation repeated on
    // a copy of itself
    let mut c = base.clone();
    c.circuits.extend(base.circuits.clone());
    c.coefficients.extend(base.coefficients.clone());
    c.claimed_bound *= 2;
    c.walks = None;
    let report = check_certificate(&c);
    assert!(report.has_failure(checks::NOT_PRIMITIVE), "{report}");
}
