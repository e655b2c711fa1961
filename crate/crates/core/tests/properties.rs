//! Invariants of randomly generated abelian data: `r ≤ 8`, `N ≤ 12`,
//! `m ≤ 3`.

mod common;

use std::collections::BTreeMap;

use common::cover_matrix;
use proptest::prelude::*;
use prym_core::abelian::{
    anti_invariant_basis, build_product_system, eigen_dim, eigen_dims, generic_rank_by_elimination,
    generic_rank_symbolic, rank_at_sample, sample_points, to_rationals, verify_kernel_element,
    CoverMatrix, ProductSystem, MAX_SYMBOLIC_PRODUCTS,
};
use prym_core::characters::{sym2_by_character_formula, sym2_by_isotypic_formula, Part};
use prym_core::conditions::{check_a, check_b1};
use prym_core::datum::{
    braid_move, chevalley_weil, hodge_decomposition, validate_datum, BraidDirection,
};
use prym_core::error::Error;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 128,
        max_global_rejects: 100_000,
        ..ProptestConfig::default()
    }
}

fn small_enough(p: &ProductSystem) -> bool {
    p.len() <= MAX_SYMBOLIC_PRODUCTS
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn eigen_dims_sum_to_genera(c in cover_matrix()) {
        let d = c.to_datum().unwrap();
        let dims = eigen_dims(&c).unwrap();
        let total: u64 = dims.iter().map(|(_, x)| x).sum();
        let odd: u64 = dims.iter().filter(|(n, _)| c.is_odd(n)).map(|(_, x)| x).sum();
        prop_assert_eq!(total, d.g_tilde);
        prop_assert_eq!(odd, d.p);
    }

    #[test]
    fn anti_invariant_part_has_dimension_p(c in cover_matrix()) {
        let d = c.to_datum().unwrap();
        let v = hodge_decomposition(&d).unwrap();
        prop_assert_eq!(v.dimension(Part::Minus), d.g_tilde - d.g);
        prop_assert_eq!(anti_invariant_basis(&c).unwrap().len() as u64, d.p);
    }

    #[test]
    fn sym2_formulas_agree(c in cover_matrix()) {
        let v = hodge_decomposition(&c.to_datum().unwrap()).unwrap();
        for part in [Part::Minus, Part::Plus, Part::All] {
            prop_assert_eq!(sym2_by_character_formula(&v, part).unwrap(), sym2_by_isotypic_formula(&v, part));
        }
    }

    #[test]
    fn chevalley_weil_matches_eigen_dims(c in cover_matrix()) {
        let d = c.to_datum().unwrap();
        let v = hodge_decomposition(&d).unwrap();
        for (chi, ch) in v.table.characters.iter().enumerate() {
            let n = ch.label.clone().expect("abelian tables are labelled");
            let cw = chevalley_weil(&v.table, chi, &d.tuple).unwrap();
            prop_assert_eq!(cw, eigen_dim(&c, &n).unwrap(), "character {:?}", n);
        }
    }

    #[test]
    fn braid_moves_preserve_invariants(c in cover_matrix(), pos in 1usize..8, right in any::<bool>()) {
        let d = c.to_datum().unwrap();
        let i = 1 + (pos - 1) % (d.r - 1);
        let dir = if right { BraidDirection::Right } else { BraidDirection::Left };
        let moved = braid_move(&d.group, &d.tuple, i, dir).unwrap();
        let e = validate_datum(&d.group, &moved, d.sigma).unwrap();
        prop_assert_eq!((d.g_tilde, d.g, d.b, d.p), (e.g_tilde, e.g, e.b, e.p));
        let c2 = CoverMatrix::from_datum(&e).unwrap().unwrap();
        let dims = |c: &CoverMatrix| -> BTreeMap<Vec<u32>, u64> { eigen_dims(c).unwrap().into_iter().collect() };
        prop_assert_eq!(dims(&c), dims(&c2));
        let (v, w) = (hodge_decomposition(&d).unwrap(), hodge_decomposition(&e).unwrap());
        let (dim_a, a) = check_a(&d, &v).unwrap();
        let (dim_b, b) = check_a(&e, &w).unwrap();
        prop_assert_eq!((dim_a, a), (dim_b, b));
        prop_assert_eq!(check_b1(&d, &v, dim_a).0, check_b1(&e, &w, dim_b).0);
        // the move swaps columns i and i+1, so swap the sample with them
        let (p, q) = (build_product_system(&c).unwrap(), build_product_system(&c2).unwrap());
        let t = sample_points(d.r, 11, 1).remove(0);
        let mut t2 = t.clone();
        t2.swap(i - 1, i);
        prop_assert_eq!(
            rank_at_sample(&p, &to_rationals(&t)).unwrap(),
            rank_at_sample(&q, &to_rationals(&t2)).unwrap()
        );
        if small_enough(&p) {
            prop_assert_eq!(generic_rank_symbolic(&p).unwrap().rank, generic_rank_symbolic(&q).unwrap().rank);
        }
    }

    #[test]
    fn sampled_rank_bounded_by_generic_rank(c in cover_matrix(), seed in any::<u64>()) {
        let p = build_product_system(&c).unwrap();
        let dim = p.len();
        let sym = match generic_rank_symbolic(&p) {
            Ok(s) => s,
            Err(Error::SymbolicTooLarge(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!(sym.rank <= dim);
        prop_assert_eq!(sym.kernel.len(), dim - sym.rank);
        for t in sample_points(c.r(), seed, 3) {
            prop_assert!(rank_at_sample(&p, &to_rationals(&t)).unwrap() <= sym.rank);
        }
        for v in &sym.kernel {
            prop_assert!(verify_kernel_element(&p, v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..config() })]

    /// The elimination-only route agrees with the specialisation-first one.
    #[test]
    fn symbolic_routes_agree(c in cover_matrix()) {
        let p = build_product_system(&c).unwrap();
        if p.len() > 8 {
            return Ok(());
        }
        let fast = generic_rank_symbolic(&p).unwrap();
        let slow = generic_rank_by_elimination(&p).unwrap();
        prop_assert_eq!(fast.rank, slow.rank);
        for v in slow.kernel.iter().chain(&fast.kernel) {
            prop_assert!(verify_kernel_element(&p, v));
        }
    }
}
