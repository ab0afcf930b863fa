use proptest::collection::vec;
use proptest::prelude::*;
use tropbal::{rank, solve_membership, RatMatrix, RatVector, Rational};

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn matrix_and_target() -> impl Strategy<Value = (RatMatrix, RatVector)> {
    (1usize..=5, 0usize..=5).prop_flat_map(|(m, n)| {
        (vec(vec(rational(), n), m), vec(rational(), m)).prop_map(move |(rows, t)| {
            let matrix = RatMatrix::from_rows(labels("r", m), labels("c", n), rows).unwrap();
            (matrix, RatVector::from_values(&labels("r", m), t))
        })
    })
}

proptest! {
    #[test]
    fn verdicts_come_with_valid_evidence((m, t) in matrix_and_target()) {
        let res = solve_membership(&m, &t).unwrap();
        if res.is_member() {
            let w = res.witness.unwrap();
            prop_assert_eq!(m.mul_vec(&w).aligned(m.row_labels()), t.aligned(m.row_labels()));
        } else {
            let y = res.certificate.unwrap();
            prop_assert!(m.left_mul(&y).is_zero());
            prop_assert!(!y.dot(&t).is_zero());
        }
    }

    #[test]
    fn images_are_members((m, _) in matrix_and_target(), seed in vec(rational(), 5)) {
        let x = RatVector::from_values(m.col_labels(), seed[..m.ncols()].to_vec());
        prop_assert!(solve_membership(&m, &m.mul_vec(&x)).unwrap().is_member());
    }

    #[test]
    fn rank_bounded_by_shape((m, _) in matrix_and_target()) {
        prop_assert!(rank(&m) <= m.nrows().min(m.ncols()));
    }

    #[test]
    fn rational_round_trip(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        let text = a.to_string();
        prop_assert_eq!(tropbal::rat_parse(&text).unwrap(), a);
    }
}
