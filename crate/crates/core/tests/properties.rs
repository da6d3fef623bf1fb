use proptest::prelude::*;

use simplicial_cobar::exactalg::{rank, smith_normal_form, Ring, SparseMatrix};
use simplicial_cobar::pi1::{fundamental_bialgebra, DEFAULT_REWRITE_STEPS};
use simplicial_cobar::scoalg::free_coalgebra;
use simplicial_cobar::sset::{nerve_of_group, FiniteGroup};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn sized() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_factorization(rows in sized()) {
        let z = Ring::Integers;
        let m = SparseMatrix::from_dense(z, &rows);
        let f = smith_normal_form(&m);
        let d = f.u.mul(&m).unwrap().mul(&f.v).unwrap();
        for (i, j, v) in d.entries() {
            prop_assert_eq!(i, j);
            prop_assert_eq!(v, &f.diag[i]);
        }
        prop_assert_eq!(d.nnz(), f.rank());
        for w in f.diag.windows(2) {
            prop_assert!(w[1].exact_div(&w[0]).is_some());
        }
        let iu = SparseMatrix::identity(m.rows(), z);
        let iv = SparseMatrix::identity(m.cols(), z);
        prop_assert_eq!(f.u.mul(&f.u_inv).unwrap(), iu);
        prop_assert_eq!(f.v.mul(&f.v_inv).unwrap(), iv);
    }

    #[test]
    fn rank_over_q_matches_z(rows in sized()) {
        let mz = SparseMatrix::from_dense(Ring::Integers, &rows);
        let mq = SparseMatrix::from_dense(Ring::Rationals, &rows);
        prop_assert_eq!(rank(&mz), rank(&mq));
        let f = smith_normal_form(&mz);
        prop_assert_eq!(f.rank(), rank(&mq));
    }

    #[test]
    fn rank_mod_p_is_at_most_rank_over_q(rows in sized()) {
        let mq = SparseMatrix::from_dense(Ring::Rationals, &rows);
        let m2 = SparseMatrix::from_dense(Ring::PrimeField(2), &rows);
        prop_assert!(rank(&m2) <= rank(&mq));
    }
}

fn relabel(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut inv = vec![0; n];
    for (a, &p) in perm.iter().enumerate() {
        inv[p] = a;
    }
    let table = (0..n)
        .map(|a| (0..n).map(|b| perm[g.mul(inv[a], inv[b])]).collect())
        .collect();
    FiniteGroup::from_table(table, perm[g.identity()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_the_group_changes_nothing(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let g = relabel(&FiniteGroup::symmetric3(), &perm);
        let x = nerve_of_group(&g, 2).unwrap();
        let fb = fundamental_bialgebra(&free_coalgebra(&x, Ring::Integers), DEFAULT_REWRITE_STEPS).unwrap();
        prop_assert_eq!(fb.rank(), 6);
        let h = fb.group_likes.group().unwrap();
        prop_assert!(h.find_isomorphism(&FiniteGroup::symmetric3()).is_some());
    }
}
