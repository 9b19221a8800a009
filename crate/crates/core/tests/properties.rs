use hororeal::lattice::{
    hermite_normal_form, involution_invariants, normal_form, restrict_involution, smith_normal_form, IntMatrix, Sublattice,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
        .prop_map(move |r| IntMatrix::from_rows(cols, &r).unwrap())
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Product of elementary operations, encoded as `(i, j, k)`.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                m.negate_row(i);
            } else {
                m.add_row_multiple(i, j, &BigInt::from(k));
            }
        }
        m
    })
}

fn involution() -> impl Strategy<Value = (IntMatrix, (usize, usize, usize))> {
    (0usize..3, 0usize..3, 0usize..3)
        .prop_filter("nonempty", |&(a, b, c)| a + b + 2 * c > 0)
        .prop_flat_map(|(n0, n1, n2)| {
            let n = n0 + n1 + 2 * n2;
            unimodular(n).prop_map(move |g| {
                let gi = g.integral_inverse().unwrap();
                (&(&gi * &normal_form(n0, n1, n2)) * &g, (n0, n1, n2))
            })
        })
}

proptest! {
    #[test]
    fn smith_is_a_factorization(m in any_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn hermite_is_idempotent_and_basis_free(m in any_matrix(), seed in 0usize..4) {
        let h = hermite_normal_form(&m);
        prop_assert_eq!(hermite_normal_form(&h), h.clone());
        let u = {
            let mut u = IntMatrix::identity(m.rows());
            if m.rows() > 1 {
                u.add_row_multiple(seed % m.rows(), (seed + 1) % m.rows(), &BigInt::from(seed as i64 - 2));
            }
            u
        };
        prop_assert_eq!(hermite_normal_form(&(&u * &m)), h);
    }

    #[test]
    fn involution_invariants_are_conjugation_invariant((r, triple) in involution()) {
        let inv = involution_invariants(&r).unwrap();
        prop_assert_eq!(inv.triple(), triple);
        let b = &inv.adapted_basis;
        prop_assert!(b.is_unimodular());
        prop_assert_eq!(b * &r, &inv.normal_form() * b);
    }

    #[test]
    fn restriction_to_stable_sublattice((r, _) in involution()) {
        let n = r.rows();
        let inv = involution_invariants(&r).unwrap();
        let fixed: Vec<Vec<BigInt>> = inv.fixed_rows().map(|row| row.to_vec()).collect();
        let k = fixed.len();
        let basis = IntMatrix::from_big_rows(n, fixed).unwrap();
        let m = Sublattice::new(n, basis).unwrap();
        let restricted = restrict_involution(&r, &m).unwrap();
        prop_assert!(restricted.is_identity());
        prop_assert_eq!(restricted.rows(), k);
    }
}
