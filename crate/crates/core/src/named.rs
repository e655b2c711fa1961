//! Concrete constructions of the small groups that occur in the search:
//! cyclic and abelian groups, split metacyclic groups, quaternions,
//! `SL(2,3)` and central products over a shared involution.

use crate::error::GroupError;
use crate::group::{Elem, FiniteGroup};

pub fn trivial() -> FiniteGroup {
    FiniteGroup::from_cayley_table(&[vec![0]]).expect("trivial table")
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    abelian(&[n])
}

/// `Z/d_1 x ... x Z/d_k`, embedded diagonally in `(Z/N)^k` with `N` the
/// largest factor.
pub fn abelian(factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    let factors: Vec<usize> = factors.iter().copied().filter(|&d| d > 1).collect();
    if factors.is_empty() {
        return Ok(trivial());
    }
    let n = factors.iter().copied().fold(1, num_integer::lcm);
    let k = factors.len();
    let matrix: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { (n / factors[i]) as u32 } else { 0 })
                .collect()
        })
        .collect();
    FiniteGroup::abelian_from_columns(n as u32, &matrix)
}

/// `Z/n ⋊ Z/m` with the generator of `Z/m` acting as `x ↦ kx`.
/// Requires `k^m ≡ 1 (mod n)`.
pub fn metacyclic(n: usize, m: usize, k: usize) -> Result<FiniteGroup, GroupError> {
    let mut km = 1;
    for _ in 0..m {
        km = km * k % n;
    }
    if km != 1 % n {
        return Err(GroupError::Cayley(format!("{k}^{m} is not 1 mod {n}")));
    }
    let powers: Vec<usize> = (0..m)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * k % n;
            Some(cur)
        })
        .collect();
    FiniteGroup::from_generators((0usize, 0usize), &[(1 % n, 0), (0, 1 % m)], |a, b| {
        ((a.0 + powers[a.1] * b.0) % n, (a.1 + b.1) % m)
    })
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    metacyclic(n, 2, n - 1)
}

type Quaternion = [i8; 4];

fn quaternion_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteGroup {
    FiniteGroup::from_generators([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], quaternion_mul)
        .expect("Q8 has order 8")
}

type Mat2 = [[u8; 2]; 2];

/// `SL(2,3)` as 2x2 matrices over `F_3`.
pub fn sl2_3() -> FiniteGroup {
    let mul = |a: &Mat2, b: &Mat2| -> Mat2 {
        let mut c = [[0u8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 3;
            }
        }
        c
    };
    FiniteGroup::from_generators([[1, 0], [0, 1]], &[[[1, 1], [0, 1]], [[1, 0], [1, 1]]], mul)
        .expect("SL(2,3) has order 24")
}

/// `(A x B) / <(za, zb)>` for central involutions `za`, `zb`.
pub fn central_product(
    a: &FiniteGroup,
    za: Elem,
    b: &FiniteGroup,
    zb: Elem,
) -> Result<FiniteGroup, GroupError> {
    for (g, z) in [(a, za), (b, zb)] {
        if !g.central_involutions().contains(&z) {
            return Err(GroupError::Cayley(format!(
                "{z} is not a central involution"
            )));
        }
    }
    let norm = |x: (Elem, Elem)| x.min((a.mul(x.0, za), b.mul(x.1, zb)));
    let mut gens: Vec<(Elem, Elem)> = a
        .small_generating_set()
        .into_iter()
        .map(|g| (g, 0))
        .collect();
    gens.extend(b.small_generating_set().into_iter().map(|h| (0, h)));
    FiniteGroup::from_generators((0, 0), &gens, |x, y| {
        norm((a.mul(x.0, y.0), b.mul(x.1, y.1)))
    })
}

/// The unique central involution of a group that has exactly one.
pub fn central_involution(g: &FiniteGroup) -> Option<Elem> {
    match g.central_involutions().as_slice() {
        [z] => Some(*z),
        _ => None,
    }
}

fn central_product_unique(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let za = central_involution(a).ok_or(GroupError::NotNormal)?;
    let zb = central_involution(b).ok_or(GroupError::NotNormal)?;
    central_product(a, za, b, zb)
}

/// `C_3 ⋊ D_8` where a Klein four subgroup of `D_8` centralises `C_3`.
fn c3_semidirect_d8() -> Result<FiniteGroup, GroupError> {
    type Perm = [u8; 7];
    let compose = |p: &Perm, q: &Perm| -> Perm {
        let mut out = [0u8; 7];
        for i in 0..7 {
            out[i] = q[p[i] as usize];
        }
        out
    };
    let c3: Perm = [1, 2, 0, 3, 4, 5, 6];
    // rotation of the square on 3..7, inverting C_3 through the swap (1 2)
    let rho: Perm = [0, 2, 1, 4, 5, 6, 3];
    let tau: Perm = [0, 1, 2, 3, 6, 5, 4];
    FiniteGroup::from_generators([0, 1, 2, 3, 4, 5, 6], &[c3, rho, tau], compose)
}

/// The groups behind the small-group ids the search reports, by id.
pub fn by_id(order: usize, id: usize) -> Option<FiniteGroup> {
    let g = match (order, id) {
        (1, 1) => Ok(trivial()),
        (2, 1) => cyclic(2),
        (3, 1) => cyclic(3),
        (4, 1) => cyclic(4),
        (4, 2) => abelian(&[2, 2]),
        (5, 1) => cyclic(5),
        (6, 1) => dihedral(3),
        (6, 2) => cyclic(6),
        (8, 1) => cyclic(8),
        (8, 2) => abelian(&[2, 4]),
        (8, 3) => dihedral(4),
        (8, 4) => Ok(quaternion()),
        (8, 5) => abelian(&[2, 2, 2]),
        (10, 2) => cyclic(10),
        (12, 1) => metacyclic(3, 4, 2),
        (12, 2) => cyclic(12),
        (12, 4) => dihedral(6),
        (12, 5) => abelian(&[2, 6]),
        (16, 2) => abelian(&[4, 4]),
        (16, 4) => metacyclic(4, 4, 3),
        (16, 5) => abelian(&[2, 8]),
        (16, 7) => dihedral(8),
        (16, 8) => metacyclic(8, 2, 3),
        (16, 10) => abelian(&[2, 2, 4]),
        (16, 11) => cyclic(2).and_then(|c| c.direct_product(&dihedral(4)?)),
        (16, 12) => cyclic(2).and_then(|c| c.direct_product(&quaternion())),
        (16, 13) => cyclic(4).and_then(|c| central_product_unique(&c, &dihedral(4)?)),
        (16, 14) => abelian(&[2, 2, 2, 2]),
        (20, 5) => abelian(&[2, 10]),
        (24, 7) => cyclic(2).and_then(|c| c.direct_product(&metacyclic(3, 4, 2)?)),
        (24, 8) => c3_semidirect_d8(),
        (24, 13) => {
            let sl = sl2_3();
            let z = central_involution(&sl).expect("-I is central");
            sl.quotient_by_subgroup(&[0, z])
                .and_then(|(a4, _)| cyclic(2)?.direct_product(&a4))
        }
        (32, 38) => cyclic(8).and_then(|c| central_product_unique(&c, &dihedral(4)?)),
        (32, 42) => cyclic(4).and_then(|c| central_product_unique(&c, &dihedral(8)?)),
        (32, 46) => abelian(&[2, 2]).and_then(|c| c.direct_product(&dihedral(4)?)),
        (32, 48) => by_id(16, 13)
            .ok_or(GroupError::NotNormal)
            .and_then(|p| cyclic(2)?.direct_product(&p)),
        (32, 50) => central_product_unique(&quaternion(), &dihedral(4).ok()?),
        (48, 32) => cyclic(2).and_then(|c| c.direct_product(&sl2_3())),
        (64, 259) => central_product_unique(&quaternion(), &dihedral(8).ok()?),
        _ => return None,
    };
    g.ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(quaternion().order(), 8);
        assert_eq!(sl2_3().order(), 24);
        assert_eq!(dihedral(8).unwrap().order(), 16);
        assert_eq!(metacyclic(8, 2, 3).unwrap().order(), 16);
        assert!(metacyclic(8, 2, 2).is_err());
        assert_eq!(
            abelian(&[2, 6]).unwrap().abelian_invariants(),
            Some(vec![2, 6])
        );
    }

    #[test]
    fn every_id_builds_with_its_order() {
        for (order, id) in [
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (4, 2),
            (5, 1),
            (6, 1),
            (6, 2),
            (8, 1),
            (8, 2),
            (8, 3),
            (8, 4),
            (8, 5),
            (10, 2),
            (12, 1),
            (12, 2),
            (12, 4),
            (12, 5),
            (16, 2),
            (16, 4),
            (16, 5),
            (16, 7),
            (16, 8),
            (16, 10),
            (16, 11),
            (16, 12),
            (16, 13),
            (16, 14),
            (20, 5),
            (24, 7),
            (24, 8),
            (24, 13),
            (32, 38),
            (32, 42),
            (32, 46),
            (32, 48),
            (32, 50),
            (48, 32),
            (64, 259),
        ] {
            let g = by_id(order, id).unwrap_or_else(|| panic!("({order},{id})"));
            assert_eq!(g.order(), order, "({order},{id})");
            assert!(g.verify_axioms());
        }
    }

    #[test]
    fn sl2_3_has_quaternion_sylow() {
        let g = sl2_3();
        assert_eq!(g.central_involutions().len(), 1);
        let order4 = (0..24).filter(|&x| g.elem_order(x) == 4).count();
        assert_eq!(order4, 6);
    }
}
