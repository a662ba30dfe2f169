use proptest::prelude::*;

use cybrauer::dynkin::{polygon_size, tau, tau_inv, z_label, DynkinDiagram, Quotient, ZVertex};
use cybrauer::hom::{f_seq, h, vertex_of_z_label};

fn diagram() -> impl Strategy<Value = DynkinDiagram> {
    prop_oneof![
        (1u32..=7).prop_map(DynkinDiagram::a),
        (4u32..=7).prop_map(DynkinDiagram::d),
        (6u32..=8).prop_map(DynkinDiagram::e),
    ]
}

fn diagram_and_vertex() -> impl Strategy<Value = (DynkinDiagram, ZVertex)> {
    diagram().prop_flat_map(|dg| {
        let r = dg.rank;
        (Just(dg), -20i64..20, 1..=r).prop_map(|(dg, p, q)| (dg, ZVertex::new(p, q)))
    })
}

proptest! {
    #[test]
    fn mesh_neighbours_match((dg, x) in diagram_and_vertex()) {
        prop_assert_eq!(dg.successors(tau(x)), dg.predecessors(x));
        prop_assert_eq!(tau_inv(tau(x)), x);
        for y in dg.successors(x) {
            prop_assert!(dg.predecessors(y).contains(&x));
        }
    }

    #[test]
    fn tau_nakayama_shift_commute((dg, x) in diagram_and_vertex(), d in 1u32..5) {
        prop_assert_eq!(dg.nakayama(tau(x)), tau(dg.nakayama(x)));
        prop_assert_eq!(dg.shift(tau(x)), tau(dg.shift(x)));
        prop_assert_eq!(dg.shift(dg.nakayama(x)), dg.nakayama(dg.shift(x)));
        prop_assert_eq!(dg.nakayama_inv(dg.nakayama(x)), x);
        prop_assert_eq!(dg.shift_inv(dg.shift(x)), x);
        prop_assert_eq!(dg.serre_shift_inv(dg.serre_shift(x, d), d), x);
    }

    #[test]
    fn weak_admissibility((dg, x) in diagram_and_vertex(), d in 1u32..5) {
        let gx = dg.serre_shift(x, d);
        let a = dg.successors(x);
        let b = dg.successors(gx);
        prop_assert!(a.is_disjoint(&b));
        prop_assert!(gx != x);
    }

    #[test]
    fn h_is_additive((dg, x) in diagram_and_vertex()) {
        let hx = h(x, &dg).unwrap();
        let target = tau_inv(dg.nakayama(x));
        for p in x.level - 2..=x.level + dg.coxeter_number() as i64 + 2 {
            for q in dg.nodes() {
                let z = ZVertex::new(p, q);
                let lhs = hx.get(z) as i64 + hx.get(tau(z)) as i64
                    - dg.predecessors(z).iter().map(|&y| hx.get(y) as i64).sum::<i64>();
                let rhs = i64::from(z == x) + i64::from(z == target);
                prop_assert_eq!(lhs, rhs, "z = {}", z);
            }
        }
    }

    #[test]
    fn f_sequence_terminates((dg, x) in diagram_and_vertex()) {
        let bound = 2 * dg.coxeter_number() as usize * dg.rank as usize;
        let seq = f_seq(x, &dg, bound).unwrap();
        prop_assert!(seq.last().unwrap().is_zero());
        prop_assert_eq!(seq[0].get(x), 1);
    }

    #[test]
    fn type_a_labels_invert(n in 1u32..7, d in 1u32..5, p in -30i64..30, q in 1u32..7) {
        prop_assume!(q <= n);
        let v = ZVertex::new(p, q);
        prop_assert_eq!(vertex_of_z_label(z_label(v, d), d), Some(v));
    }

    #[test]
    fn quotient_labels_are_a_bijection(n in 1u32..5, d in 1u32..4) {
        prop_assume!(polygon_size(n, d) >= 3);
        let q = Quotient::new(DynkinDiagram::a(n), d).unwrap();
        let labels: std::collections::BTreeSet<_> = q.vertices.iter().map(|v| v.label.unwrap()).collect();
        prop_assert_eq!(labels.len(), q.len());
        let p = cybrauer::brauer::Polygon::new(n, d).unwrap();
        let all: std::collections::BTreeSet<_> = p.all_d_diagonals().into_iter().collect();
        prop_assert_eq!(labels, all);
    }
}
