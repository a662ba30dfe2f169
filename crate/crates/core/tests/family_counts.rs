// Configuration counts against the positive Fuss-Catalan number
// prod (d*h + e - 1) / (e + 1) over the exponents e of the Weyl group.

use cybrauer::brauer::{count_formula, Budget};
use cybrauer::config::{ConfigSpace, Strategy};
use cybrauer::dynkin::DynkinDiagram;

fn exponents(dg: &DynkinDiagram) -> Vec<u64> {
    let n = dg.rank as u64;
    match dg.code().as_str() {
        "E6" => vec![1, 4, 5, 7, 8, 11],
        "E7" => vec![1, 5, 7, 9, 11, 13, 17],
        "E8" => vec![1, 7, 11, 13, 17, 19, 23, 29],
        c if c.starts_with('D') => {
            let mut e: Vec<u64> = (0..n - 1).map(|k| 2 * k + 1).collect();
            e.push(n - 1);
            e
        }
        _ => (1..=n).collect(),
    }
}

fn fuss_catalan(dg: &DynkinDiagram, d: u32) -> u128 {
    let h = dg.coxeter_number() as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for e in exponents(dg) {
        num *= d as u128 * h + e as u128 - 1;
        den *= e as u128 + 1;
    }
    assert_eq!(num % den, 0);
    num / den
}

fn count(dg: DynkinDiagram, d: u32) -> usize {
    let space = ConfigSpace::new(dg, d).unwrap();
    space.enumerate(Strategy::HomTable, &Budget::unlimited()).unwrap().len()
}

#[test]
fn type_a_product_matches_binomial_formula() {
    for n in 1..=6 {
        for d in 1..=5 {
            if (n, d) == (1, 1) {
                continue;
            }
            assert_eq!(fuss_catalan(&DynkinDiagram::a(n), d), count_formula(n, d).unwrap());
        }
    }
}

#[test]
fn d_and_e_counts() {
    for (dg, d) in [
        (DynkinDiagram::d(4), 1),
        (DynkinDiagram::d(4), 2),
        (DynkinDiagram::d(5), 1),
        (DynkinDiagram::d(6), 1),
        (DynkinDiagram::e(6), 1),
    ] {
        assert_eq!(count(dg, d) as u128, fuss_catalan(&dg, d), "{dg} d={d}");
    }
}
