use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::sample::Index;

use cybrauer::brauer::{
    b_cycles, count_formula, delta, diagonals_intersect, enumerate_brauer, is_brauer,
    is_maximal_brauer, theta_map, BrauerRelation, Budget, Diagonal, Polygon,
};
use cybrauer::config::ConfigSpace;
use cybrauer::dga::ordering_delta_sum;
use cybrauer::dynkin::DynkinDiagram;

fn small() -> impl Strategy<Value = Polygon> {
    (1u32..=4, 1u32..=4)
        .prop_filter("non-degenerate", |&(n, d)| (n, d) != (1, 1) && n * (d + 1) + d <= 18)
        .prop_map(|(n, d)| Polygon::new(n, d).unwrap())
}

fn relation() -> impl Strategy<Value = (Polygon, BrauerRelation)> {
    (small(), any::<Index>()).prop_map(|(p, i)| {
        let rels = enumerate_brauer(&p, &Budget::unlimited()).unwrap();
        let b = i.get(&rels).clone();
        (p, b)
    })
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_formula(p in small()) {
        let rels = enumerate_brauer(&p, &Budget::unlimited()).unwrap();
        prop_assert_eq!(rels.len() as u128, count_formula(p.n, p.d).unwrap());
        for b in &rels {
            prop_assert_eq!(b.len(), p.n as usize);
            prop_assert!(is_maximal_brauer(b, &p));
        }
    }

    #[test]
    fn theta_fibers_have_size_n_plus_one(p in small()) {
        prop_assume!(p.size <= 12);
        let mut fibers: BTreeMap<BrauerRelation, usize> = BTreeMap::new();
        let verts: Vec<u32> = (1..=p.size).collect();
        for mask in 0u32..(1 << p.size) {
            if mask.count_ones() != p.n {
                continue;
            }
            let v: BTreeSet<u32> = verts.iter().copied().filter(|&x| mask >> (x - 1) & 1 == 1).collect();
            *fibers.entry(theta_map(&v, &p).unwrap()).or_default() += 1;
        }
        prop_assert_eq!(fibers.len() as u128, count_formula(p.n, p.d).unwrap());
        prop_assert!(fibers.values().all(|&k| k == p.n as usize + 1));
    }

    #[test]
    fn only_the_anticlockwise_order_is_tight((p, b) in relation()) {
        for c in b_cycles(&b, &p) {
            let s = c.len();
            let tight = p.d + s as u32 - 1;
            prop_assert_eq!(ordering_delta_sum(&c.members, &p).unwrap(), tight);
            let idx: Vec<usize> = (0..s).collect();
            for perm in permutations(&idx) {
                let order: Vec<_> = perm.iter().map(|&k| c.members[k]).collect();
                let sum = ordering_delta_sum(&order, &p).unwrap();
                let rotation = (0..s).any(|r| (0..s).all(|k| perm[k] == (k + r) % s));
                if rotation {
                    prop_assert_eq!(sum, tight);
                } else {
                    prop_assert!(sum > tight, "{:?} sums to {}", order, sum);
                }
            }
        }
    }

    #[test]
    fn maximal_iff_configuration(p in small(), picks in proptest::collection::vec(any::<Index>(), 1..5)) {
        let space = ConfigSpace::new(DynkinDiagram::a(p.n), p.d).unwrap();
        let diags = p.all_d_diagonals();
        let chosen: BTreeSet<_> = picks.iter().map(|i| *i.get(&diags)).collect();
        let b = BrauerRelation::new(chosen.iter().copied());
        let idx: Vec<usize> = chosen.iter().map(|&x| space.quotient.index_of_label(x).unwrap()).collect();
        prop_assert_eq!(is_brauer(&b, &p), space.is_preconfiguration(&idx));
        prop_assert_eq!(is_maximal_brauer(&b, &p), space.is_configuration(&idx));
    }

    #[test]
    fn maximal_relations_cover_every_diagonal((p, b) in relation(), m in any::<Index>()) {
        let space = ConfigSpace::new(DynkinDiagram::a(p.n), p.d).unwrap();
        let m = *m.get(&p.all_d_diagonals());
        let w = space.coverage_oracle(&b, m).unwrap();
        prop_assert!(w.is_some());
        if b.contains(m) {
            prop_assert!(space.coverage_oracle(&BrauerRelation::new([m]), m).unwrap() == Some((m, 0)));
        }
    }

    #[test]
    fn crossing_pairs_follow_the_endpoint_rule(p in small()) {
        let space = ConfigSpace::new(DynkinDiagram::a(p.n), p.d).unwrap();
        let diags = p.all_d_diagonals();
        for &x in &diags {
            for &y in &diags {
                let (xi, yi) = (space.quotient.index_of_label(x).unwrap(), space.quotient.index_of_label(y).unwrap());
                if !diagonals_intersect(x, y) {
                    prop_assert_eq!(space.hbar(xi, yi), 0);
                    continue;
                }
                let ends: BTreeSet<u32> = [x.a, x.b, y.a, y.b].into();
                if ends.len() < 4 {
                    continue;
                }
                // endpoints alternate; take x1 = x.a and y1 the end of Y strictly inside (x.a, x.b)
                let y1 = if y.a > x.a && y.a < x.b { y.a } else { y.b };
                let rule = p.is_d_diagonal(Diagonal::new(y1, x.b));
                prop_assert_eq!(space.hbar(xi, yi) != 0, rule, "X={} Y={}", x, y);
            }
        }
    }
}

#[test]
fn non_maximal_relations_can_miss_a_diagonal() {
    let p = Polygon::new(2, 2).unwrap();
    let space = ConfigSpace::new(DynkinDiagram::a(2), 2).unwrap();
    let b: BrauerRelation = "2-7,4-6".parse().unwrap();
    let mut witnessed = false;
    for &drop in &b.diagonals {
        let smaller = BrauerRelation::new(b.diagonals.iter().copied().filter(|&x| x != drop));
        for m in p.all_d_diagonals() {
            if space.coverage_oracle(&smaller, m).unwrap().is_none() {
                witnessed = true;
            }
        }
    }
    assert!(witnessed);
}

#[test]
fn delta_is_defined_on_disjoint_pairs() {
    let p = Polygon::new(2, 2).unwrap();
    let x = "2-7".parse().unwrap();
    let y = "4-6".parse().unwrap();
    assert_eq!(delta(x, y, &p).unwrap() + delta(y, x, &p).unwrap(), 3);
}
