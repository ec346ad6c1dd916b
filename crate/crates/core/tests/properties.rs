use proptest::prelude::*;
use qsudoku::io::{from_json, to_json, OaDoc};
use qsudoku::*;

const PAIRS: &[(usize, usize)] = &[(3, 3), (3, 4), (4, 3), (3, 5), (5, 3), (4, 5), (5, 4), (7, 3), (4, 4)];

fn squares(order: usize) -> MolsSet {
    generate_mols(order).unwrap()
}

fn build(m: usize, n: usize, spec: &ProjectionSpec) -> Construction {
    construct(
        &select_squares(&squares(m), 2).unwrap(),
        &select_squares(&squares(n), 2).unwrap(),
        spec,
    )
    .unwrap()
}

fn any_square() -> impl Strategy<Value = LatinSquare> {
    prop::sample::select(vec![3usize, 4, 5, 7, 8, 9]).prop_flat_map(|order| {
        let set = squares(order);
        (0..set.len()).prop_map(move |i| set.squares()[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthogonality_is_symmetric(a in any_square(), b in any_square()) {
        let ab = are_orthogonal(&a, &b);
        let ba = are_orthogonal(&b, &a);
        prop_assert_eq!(ab.is_ok(), ba.is_ok());
        if let (Ok(x), Ok(y)) = (ab, ba) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn reorder_round_trips(a in any_square(), b in any_square()) {
        let prod = direct_product(&a, &b);
        let q = quasi_sudoku_reorder(&prod);
        prop_assert_eq!(q.to_product_order(), prod);
        prop_assert!(verify_quasi_sudoku(&q).passed());
    }

    #[test]
    fn design_properties_hold_for_any_seed(idx in 0..PAIRS.len(), seed in any::<u64>()) {
        let (m, n) = PAIRS[idx];
        for spec in ProjectionSpec::all_valid(m, n) {
            let c = build(m, n, &spec);
            let d = build_sfd(&c.sliced, seed).unwrap();
            let report = verify_design(&d);
            prop_assert!(report.passed(), "{}", report);
        }
    }

    #[test]
    fn array_json_round_trips(idx in 0..PAIRS.len()) {
        let (m, n) = PAIRS[idx];
        let c = build(m, n, &ProjectionSpec::coordinate(m, n).unwrap());
        let doc = OaDoc::from_sliced(&c.sliced);
        let back: OaDoc = from_json(&to_json(&doc)).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_sliced().unwrap(), c.sliced);
    }
}

#[test]
fn product_orthogonality_over_grid() {
    for &(m, n) in PAIRS {
        let sm = squares(m);
        let sn = squares(n);
        for i in 0..sm.len() {
            for j in i + 1..sm.len() {
                let (a1, b1) = (&sm.squares()[i], &sm.squares()[j]);
                let (a2, b2) = (&sn.squares()[0], &sn.squares()[sn.len() - 1]);
                let pa = direct_product(a1, a2).to_latin().unwrap();
                let pb = direct_product(b1, b2).to_latin().unwrap();
                assert!(are_orthogonal(&pa, &pb).unwrap(), "m={m} n={n} ({i},{j})");
            }
        }
    }
}

#[test]
fn collapsed_symbol_columns_are_copies_of_the_product_set() {
    for &(m, n) in PAIRS {
        for spec in ProjectionSpec::all_valid(m, n) {
            let c = build(m, n, &spec);
            for slice in c.sliced.collapsed() {
                let mut counts = vec![0usize; m * n];
                for row in slice.rows() {
                    counts[row[2] * n + row[3]] += 1;
                }
                assert!(counts.iter().all(|&x| x == n), "m={m} n={n} {:?}", spec.kind());
            }
        }
    }
}

#[test]
fn pipeline_passes_over_grid() {
    for &(m, n) in PAIRS {
        for spec in ProjectionSpec::all_valid(m, n) {
            let report = build(m, n, &spec).verify();
            assert!(report.passed(), "{report}");
        }
    }
}
