use num_bigint::BigInt;
use proptest::prelude::*;

use steinhom::abgroup::cokernel;
use steinhom::groupoid::{hc_closed_form, homology_module};
use steinhom::{FgAbelianGroup, FiniteGroup, FiniteGroupoid, Graph, IntMatrix, Ring};

/// `diag(d)` scrambled by elementary row and column operations.
fn scrambled(d: &[i64], ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let n = d.len();
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
    for &(i, j, k, row) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for t in 0..n {
            if row {
                a[i][t] += k * a[j][t];
            } else {
                a[t][i] += k * a[t][j];
            }
        }
    }
    a
}

fn diagonal_group(d: &[i64]) -> FgAbelianGroup {
    let orders: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x.abs())).collect();
    FgAbelianGroup::from_cyclic_orders(&orders)
}

proptest! {
    #[test]
    fn cokernel_ignores_unimodular_changes(
        d in prop::collection::vec(0i64..7, 1..5),
        ops in prop::collection::vec((0usize..5, 0usize..5, -2i64..=2, any::<bool>()), 0..12),
    ) {
        let a = scrambled(&d, &ops);
        prop_assert_eq!(cokernel(&IntMatrix::from_rows(&a)), diagonal_group(&d));
    }

    #[test]
    fn direct_sum_is_commutative(a in prop::collection::vec(0i64..9, 0..4), b in prop::collection::vec(0i64..9, 0..4)) {
        let (x, y) = (diagonal_group(&a), diagonal_group(&b));
        prop_assert_eq!(x.direct_sum(&y), y.direct_sum(&x));
    }

    #[test]
    fn rose_bowen_franks(n in 2usize..12) {
        prop_assert_eq!(Graph::rose(n).bowen_franks(), FgAbelianGroup::cyclic(n as u64 - 1));
    }
}

#[test]
fn cyclic_group_homology_and_hc() {
    for m in 2..=5usize {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(m));
        let (module, _) = homology_module(&g, 4, Ring::Z);
        let h = module.hochschild_complex().homology_all();
        let zm = FgAbelianGroup::cyclic(m as u64);
        assert_eq!(h, vec![FgAbelianGroup::free(1), zm.clone(), FgAbelianGroup::zero(), zm], "Z/{m}");
        let hc = module.cyclic_homology();
        for n in 0..4 {
            assert_eq!(hc[n], hc_closed_form(&h, n), "Z/{m}, HC_{n}");
        }
    }
}
