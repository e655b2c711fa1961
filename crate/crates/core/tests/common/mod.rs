#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;

use prym_core::abelian::CoverMatrix;
use prym_core::datum::{validate_datum, PrymDatum};
use prym_core::group::{Elem, FiniteGroup};
use prym_core::named;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn cover(modulus: u32, rows: &[&[u32]], sigma: &[u32]) -> CoverMatrix {
    CoverMatrix::new(
        modulus,
        rows.iter().map(|r| r.to_vec()).collect(),
        sigma.to_vec(),
    )
    .unwrap()
}

/// `Z/10`, tuple `(1,1,2,2,4)`, `σ = 5`.
pub fn example1() -> CoverMatrix {
    cover(10, &[&[1, 1, 2, 2, 4]], &[5])
}

/// `(Z/2)^3` with each generator on two consecutive branch points.
pub fn example2() -> CoverMatrix {
    cover(
        2,
        &[
            &[1, 1, 0, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0],
            &[0, 0, 0, 0, 1, 1],
        ],
        &[1, 1, 1],
    )
}

/// `(Z/2)^3` over nine branch points.
pub fn example3() -> CoverMatrix {
    cover(
        2,
        &[
            &[1, 1, 0, 0, 0, 1, 0, 0, 1],
            &[0, 1, 0, 1, 1, 1, 1, 1, 0],
            &[0, 1, 1, 0, 1, 0, 1, 0, 0],
        ],
        &[1, 0, 1],
    )
}

/// `(Z/2)^2` over ten branch points; (A) holds and (B) fails.
pub fn example5() -> CoverMatrix {
    cover(
        2,
        &[
            &[1, 1, 1, 0, 1, 1, 1, 1, 0, 1],
            &[0, 0, 1, 1, 0, 0, 0, 1, 1, 0],
        ],
        &[1, 1],
    )
}

/// `Z/2 x SL(2,3)` as built by [`named::by_id`]; element `24a + b` is
/// `(a, b)`.
pub fn c2_sl23() -> FiniteGroup {
    named::by_id(48, 32).unwrap()
}

/// Generators `g1..g5` of `Z/2 x SL(2,3)` satisfying
/// `g2^3 = 1, g3^2 = g4^2 = g5, g5^2 = 1, g2^-1 g3 g2 = g4,
/// g2^-1 g4 g2 = g3 g4, g3^-1 g4 g3 = g4 g5`, with `g1` the `Z/2` factor.
pub fn example4_generators(g: &FiniteGroup) -> [Elem; 5] {
    let g1 = 24;
    let g5 = named::central_involution(&named::sl2_3()).unwrap();
    let conj = |x: Elem, by: Elem| g.mul(g.mul(g.inv(by), x), by);
    for g2 in 1..24 {
        if g.elem_order(g2) != 3 {
            continue;
        }
        for g3 in 1..24 {
            if g.mul(g3, g3) != g5 {
                continue;
            }
            let g4 = conj(g3, g2);
            if g.mul(g4, g4) == g5 && conj(g4, g2) == g.mul(g3, g4) && conj(g4, g3) == g.mul(g4, g5)
            {
                return [g1, g2, g3, g4, g5];
            }
        }
    }
    panic!("presentation has no solution in SL(2,3)");
}

/// Tuple `(g1 g5, g1, g2 g4, g2 g3 g4, g2)` with `σ = g5`.
pub fn example4() -> PrymDatum {
    let g = c2_sl23();
    let [g1, g2, g3, g4, g5] = example4_generators(&g);
    let m = |xs: &[Elem]| xs.iter().fold(0, |acc, &x| g.mul(acc, x));
    let tuple = [m(&[g1, g5]), g1, m(&[g2, g4]), m(&[g2, g3, g4]), g2];
    validate_datum(&g, &tuple, g5).unwrap()
}

/// `Q8 ∘ D8` of order 64 (the central product of `Q8` with the dihedral
/// group of order 16).
pub fn q8_d16() -> FiniteGroup {
    named::by_id(64, 259).unwrap()
}

/// Even modulus, `m x r` matrix with zero row sums and nonzero columns,
/// and `σ ∈ {0, N/2}^m` in the column span.
pub fn cover_matrix() -> impl Strategy<Value = CoverMatrix> {
    (1usize..=6, 1usize..=3, 4usize..=8)
        .prop_flat_map(|(half, m, r)| {
            let n = 2 * half as u32;
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(0..n, r - 1), m),
                prop::collection::vec(any::<bool>(), m),
            )
        })
        .prop_filter_map("not a valid datum", |(n, rows, sigma)| {
            let matrix: Vec<Vec<u32>> = rows
                .into_iter()
                .map(|mut row| {
                    let s: u32 = row.iter().sum();
                    row.push((n - s % n) % n);
                    row
                })
                .collect();
            let r = matrix[0].len();
            if (0..r).any(|j| matrix.iter().all(|row| row[j] == 0)) {
                return None;
            }
            let sigma: Vec<u32> = sigma.iter().map(|&b| if b { n / 2 } else { 0 }).collect();
            let c = CoverMatrix::new(n, matrix, sigma).ok()?;
            c.to_datum().ok()?;
            Some(c)
        })
}
