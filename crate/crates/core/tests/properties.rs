use maroni_core::classes::{build_table, sigma_st};
use maroni_core::combinatorics::{enumerate_boundary_types, make_boundary_type};
use maroni_core::lattice::search::{scan_max, SearchBox};
use maroni_core::lattice::{correction_n, twist_difference};
use maroni_core::rational::int;
use maroni_core::{ClassVariant, FibralDivisor, HurwitzParams, Partition};
use proptest::prelude::*;

fn lift(z: &[i64]) -> FibralDivisor {
    let mut v = z.to_vec();
    v.push(0);
    FibralDivisor::from_ints(&v)
}

#[test]
fn delta_is_the_best_twist_nearby() {
    for d in 3..=4 {
        for k in 1..=2 {
            for bt in enumerate_boundary_types(HurwitzParams::from_k(d, k).unwrap()) {
                if bt.m() > 4 {
                    continue;
                }
                let r = correction_n(&bt).unwrap();
                let bounds = SearchBox::around(&r.point.alpha, 2);
                let (_, best) = scan_max(|z| twist_difference(&bt, &lift(z)).unwrap(), &bounds).unwrap();
                assert_eq!(best, r.delta, "d={d} k={k} j={} {}", bt.j(), bt.mu());
            }
        }
    }
}

#[test]
fn tables_are_deterministic() {
    let p = HurwitzParams::from_k(5, 2).unwrap();
    for variant in ClassVariant::ALL {
        assert_eq!(build_table(p, variant).unwrap(), build_table(p, variant).unwrap());
    }
}

proptest! {
    #[test]
    fn residue_class_dependence(d in 3i64..=6, k in 3i64..=6, j in 2i64..=20, pick in 0usize..32) {
        let p = HurwitzParams::from_k(d, k).unwrap();
        let parts = maroni_core::combinatorics::enumerate_partitions(d).unwrap();
        let mu: Partition = parts[pick % parts.len()].clone();
        let j2 = j + 2 * (d - 1);
        let (Ok(a), Ok(b)) = (make_boundary_type(p, j, mu.clone()), make_boundary_type(p, j2, mu)) else {
            return Ok(());
        };
        let bb = p.b();
        let m = a.m();
        let scale = maroni_core::rational::rat(m * (d - 2), 8 * (bb - 1) * (d - 1));
        let product_gap = int(j * (bb - j) - j2 * (bb - j2));
        prop_assert_eq!(sigma_st(&a) - sigma_st(&b), product_gap * scale);
        prop_assert_eq!(correction_n(&a).unwrap().delta, correction_n(&b).unwrap().delta);
    }
}
