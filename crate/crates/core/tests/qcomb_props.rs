use num_bigint::BigInt;
use symid_core::qcomb::{
    binomial, deleted_elem_geometric, deleted_elem_geometric_closed, elem_geometric,
    elem_geometric_direct, q_binomial, q_binomial_by_ratio, q_binomial_row, QPolynomial,
};

#[test]
fn gaussian_triangle_shape() {
    for n in 0..=12i64 {
        for k in 0..=n {
            let g = q_binomial(n, k);
            assert!(g.is_palindromic(), "[{n},{k}]");
            assert!(g.has_nonnegative_coeffs());
            assert_eq!(g.degree(), Some((k * (n - k)) as usize));
            assert_eq!(g.eval_at_one(), binomial(n, k));
        }
        assert!(q_binomial(n, n + 1).is_zero());
        assert!(q_binomial(n, -1).is_zero());
    }
}

#[test]
fn pascal_twin_and_ratio_route() {
    for n in 1..=12i64 {
        for k in 1..n {
            // [n,k] = q^{n-k}[n-1,k-1] + [n-1,k]
            let twin = &q_binomial(n - 1, k - 1).shift((n - k) as usize) + &q_binomial(n - 1, k);
            assert_eq!(q_binomial(n, k), twin, "[{n},{k}]");
            assert_eq!(q_binomial(n, k), q_binomial_by_ratio(n, k).unwrap());
        }
    }
}

#[test]
fn row_agrees_with_entries() {
    for n in 0..=10usize {
        let row = q_binomial_row(n);
        assert_eq!(row.len(), n + 1);
        for (k, g) in row.iter().enumerate() {
            assert_eq!(*g, q_binomial(n as i64, k as i64));
        }
    }
    assert_eq!(q_binomial(4, 2).render(), "1 + q + 2*q^2 + q^3 + q^4");
}

#[test]
fn geometric_specializations() {
    for n in 1..=8 {
        for p in 0..=n {
            assert_eq!(elem_geometric(n, p).unwrap(), elem_geometric_direct(n, p).unwrap());
        }
        for p in 1..=n {
            for i in 1..=n {
                assert_eq!(
                    deleted_elem_geometric_closed(n, p, i).unwrap(),
                    deleted_elem_geometric(n, p, i).unwrap(),
                    "N={n} p={p} i={i}"
                );
            }
        }
    }
}

#[test]
fn evaluation_at_integers() {
    // [4,2] at q=2 is 35
    assert_eq!(q_binomial(4, 2).eval(&BigInt::from(2)), BigInt::from(35));
    assert_eq!(QPolynomial::from_i64s(&[1, 1]).eval(&BigInt::from(-1)), BigInt::from(0));
}
