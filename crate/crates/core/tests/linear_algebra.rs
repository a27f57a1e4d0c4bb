use proptest::prelude::*;
use reflex_core::linalg::{kernel_basis, rank, rref, rref_with_transform};
use reflex_core::{KMatrix, Scalar};

/// Laplace expansion along the first row.
fn det(m: &[Vec<Scalar>]) -> Scalar {
    match m.len() {
        0 => Scalar::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Scalar::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][c] * &det(&minor);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Size of the largest nonvanishing minor.
fn minor_rank(m: &KMatrix) -> usize {
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<Scalar>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m.get(r, c).clone()).collect())
                    .collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn from_i64(rows: &[Vec<i64>], cols: usize) -> KMatrix {
    KMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = KMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], c), r)
            .prop_map(move |rows| from_i64(&rows, c))
    })
}

#[test]
fn fraction_matrix_rank_matches_minors() {
    let rows: Vec<Vec<Scalar>> = (1..=5)
        .map(|i| (0..5).map(|j| Scalar::new(i, j + 1)).collect())
        .collect();
    let m = KMatrix::from_rows(5, rows);
    assert_eq!(minor_rank(&m), 1);
    assert_eq!(rank(&m), 1);
    assert_eq!(kernel_basis(&m).len(), 4);

    let hilbert: Vec<Vec<Scalar>> = (0..5)
        .map(|i| (0..5).map(|j| Scalar::new(1, i + j + 1)).collect())
        .collect();
    let h = KMatrix::from_rows(5, hilbert.clone());
    assert_eq!(det(&hilbert), Scalar::new(1, 266716800000));
    assert_eq!(rank(&h), 5);
    assert!(kernel_basis(&h).is_empty());
}

#[test]
fn six_by_nine_of_rank_four() {
    let a = from_i64(
        &[
            vec![1, 0, 2, -1],
            vec![0, 1, 1, 3],
            vec![2, -1, 0, 1],
            vec![1, 1, 1, 1],
            vec![3, 0, 3, 3],
            vec![-2, 4, 1, 0],
        ],
        4,
    );
    let b = from_i64(
        &[
            vec![1, 2, 0, -3, 1, 0, 4, 2, -1],
            vec![0, 1, 5, 1, -2, 3, 0, 1, 1],
            vec![2, 0, 1, 0, 1, -1, 2, 0, 3],
            vec![1, -1, 0, 2, 0, 1, 1, -2, 0],
        ],
        9,
    );
    let m = a.mul(&b);
    assert_eq!(minor_rank(&m), 4);
    assert_eq!(rank(&m), 4);
    let ker = kernel_basis(&m);
    assert_eq!(ker.len(), 5);
    for v in &ker {
        assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
    }
    assert_eq!(rank(&KMatrix::from_rows(9, ker)), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(m in matrix_strategy(7, 9)) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        if !ker.is_empty() {
            prop_assert_eq!(rank(&KMatrix::from_rows(m.cols(), ker.clone())), ker.len());
        }
    }

    #[test]
    fn rank_matches_minor_oracle(m in matrix_strategy(5, 5)) {
        prop_assert_eq!(rank(&m), minor_rank(&m));
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn rref_is_idempotent_and_reachable(m in matrix_strategy(6, 7)) {
        let (r, pivots) = rref(&m);
        prop_assert_eq!(pivots.len(), rank(&m));
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        let (rr, pivots2) = rref(&r);
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(&pivots2, &pivots);
        let (reduced, _, e) = rref_with_transform(&m);
        prop_assert_eq!(&e.mul(&m), &reduced);
        prop_assert_eq!(rank(&e), m.rows());
        prop_assert_eq!(&reduced, &r);
    }
}
