//! Identification of small groups by invariant fingerprints.
//!
//! The lookup covers only the ids the search reports. A fingerprint that
//! matches no entry, or several, identifies nothing.

use std::fmt;
use std::str::FromStr;

use serde_with::{DeserializeFromStr, SerializeDisplay};

use crate::group::FiniteGroup;

/// Isomorphism invariants cheap enough to compute for every group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    /// Invariant factors of `G / [G, G]`.
    pub abelianization: Vec<usize>,
    /// `(element order, count)`, increasing in the order.
    pub order_counts: Vec<(usize, usize)>,
    pub center: usize,
    pub derived: usize,
}

impl Fingerprint {
    pub fn of(g: &FiniteGroup) -> Fingerprint {
        let derived = g.derived_subgroup();
        let abelianization = g
            .quotient_by_subgroup(&derived)
            .ok()
            .and_then(|(q, _)| q.abelian_invariants())
            .expect("the derived subgroup is normal with abelian quotient");
        let mut counts = std::collections::BTreeMap::new();
        for x in 0..g.order() {
            *counts.entry(g.elem_order(x)).or_insert(0) += 1;
        }
        Fingerprint {
            order: g.order(),
            abelianization,
            order_counts: counts.into_iter().collect(),
            center: g.center().len(),
            derived: derived.len(),
        }
    }
}

/// A small-group id `(order, number)`, written `G(order,number)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, SerializeDisplay, DeserializeFromStr,
)]
pub struct SmallGroupId {
    pub order: usize,
    pub number: usize,
}

impl fmt::Display for SmallGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.order, self.number)
    }
}

impl FromStr for SmallGroupId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix("G(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("expected G(order,number), got {s:?}"))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected G(order,number), got {s:?}"))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
        Ok(SmallGroupId {
            order: num(a)?,
            number: num(b)?,
        })
    }
}

struct Entry {
    id: (usize, usize),
    name: &'static str,
    abelianization: &'static [usize],
    order_counts: &'static [(usize, usize)],
    center: usize,
    derived: usize,
}

// Frozen from explicit constructions; `tests::table_matches_constructions`
// rebuilds every entry.
const TABLE: &[Entry] = &[
    Entry {
        id: (1, 1),
        name: "1",
        abelianization: &[],
        order_counts: &[(1, 1)],
        center: 1,
        derived: 1,
    },
    Entry {
        id: (2, 1),
        name: "C2",
        abelianization: &[2],
        order_counts: &[(1, 1), (2, 1)],
        center: 2,
        derived: 1,
    },
    Entry {
        id: (3, 1),
        name: "C3",
        abelianization: &[3],
        order_counts: &[(1, 1), (3, 2)],
        center: 3,
        derived: 1,
    },
    Entry {
        id: (4, 1),
        name: "C4",
        abelianization: &[4],
        order_counts: &[(1, 1), (2, 1), (4, 2)],
        center: 4,
        derived: 1,
    },
    Entry {
        id: (4, 2),
        name: "C2^2",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 3)],
        center: 4,
        derived: 1,
    },
    Entry {
        id: (5, 1),
        name: "C5",
        abelianization: &[5],
        order_counts: &[(1, 1), (5, 4)],
        center: 5,
        derived: 1,
    },
    Entry {
        id: (6, 1),
        name: "S3",
        abelianization: &[2],
        order_counts: &[(1, 1), (2, 3), (3, 2)],
        center: 1,
        derived: 3,
    },
    Entry {
        id: (6, 2),
        name: "C6",
        abelianization: &[6],
        order_counts: &[(1, 1), (2, 1), (3, 2), (6, 2)],
        center: 6,
        derived: 1,
    },
    Entry {
        id: (8, 1),
        name: "C8",
        abelianization: &[8],
        order_counts: &[(1, 1), (2, 1), (4, 2), (8, 4)],
        center: 8,
        derived: 1,
    },
    Entry {
        id: (8, 2),
        name: "C2xC4",
        abelianization: &[2, 4],
        order_counts: &[(1, 1), (2, 3), (4, 4)],
        center: 8,
        derived: 1,
    },
    Entry {
        id: (8, 3),
        name: "D4",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 5), (4, 2)],
        center: 2,
        derived: 2,
    },
    Entry {
        id: (8, 4),
        name: "Q8",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 1), (4, 6)],
        center: 2,
        derived: 2,
    },
    Entry {
        id: (8, 5),
        name: "C2^3",
        abelianization: &[2, 2, 2],
        order_counts: &[(1, 1), (2, 7)],
        center: 8,
        derived: 1,
    },
    Entry {
        id: (10, 2),
        name: "C10",
        abelianization: &[10],
        order_counts: &[(1, 1), (2, 1), (5, 4), (10, 4)],
        center: 10,
        derived: 1,
    },
    Entry {
        id: (12, 1),
        name: "C3:C4",
        abelianization: &[4],
        order_counts: &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)],
        center: 2,
        derived: 3,
    },
    Entry {
        id: (12, 2),
        name: "C12",
        abelianization: &[12],
        order_counts: &[(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4)],
        center: 12,
        derived: 1,
    },
    Entry {
        id: (12, 4),
        name: "D6",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 7), (3, 2), (6, 2)],
        center: 2,
        derived: 3,
    },
    Entry {
        id: (12, 5),
        name: "C2xC6",
        abelianization: &[2, 6],
        order_counts: &[(1, 1), (2, 3), (3, 2), (6, 6)],
        center: 12,
        derived: 1,
    },
    Entry {
        id: (16, 2),
        name: "C4^2",
        abelianization: &[4, 4],
        order_counts: &[(1, 1), (2, 3), (4, 12)],
        center: 16,
        derived: 1,
    },
    Entry {
        id: (16, 4),
        name: "C4:C4",
        abelianization: &[2, 4],
        order_counts: &[(1, 1), (2, 3), (4, 12)],
        center: 4,
        derived: 2,
    },
    Entry {
        id: (16, 5),
        name: "C2xC8",
        abelianization: &[2, 8],
        order_counts: &[(1, 1), (2, 3), (4, 4), (8, 8)],
        center: 16,
        derived: 1,
    },
    Entry {
        id: (16, 7),
        name: "D8",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 9), (4, 2), (8, 4)],
        center: 2,
        derived: 4,
    },
    Entry {
        id: (16, 8),
        name: "Q8:C2",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 5), (4, 6), (8, 4)],
        center: 2,
        derived: 4,
    },
    Entry {
        id: (16, 10),
        name: "C2^2xC4",
        abelianization: &[2, 2, 4],
        order_counts: &[(1, 1), (2, 7), (4, 8)],
        center: 16,
        derived: 1,
    },
    Entry {
        id: (16, 11),
        name: "C2xD4",
        abelianization: &[2, 2, 2],
        order_counts: &[(1, 1), (2, 11), (4, 4)],
        center: 4,
        derived: 2,
    },
    Entry {
        id: (16, 12),
        name: "C2xQ8",
        abelianization: &[2, 2, 2],
        order_counts: &[(1, 1), (2, 3), (4, 12)],
        center: 4,
        derived: 2,
    },
    Entry {
        id: (16, 13),
        name: "C4oD4",
        abelianization: &[2, 2, 2],
        order_counts: &[(1, 1), (2, 7), (4, 8)],
        center: 4,
        derived: 2,
    },
    Entry {
        id: (16, 14),
        name: "C2^4",
        abelianization: &[2, 2, 2, 2],
        order_counts: &[(1, 1), (2, 15)],
        center: 16,
        derived: 1,
    },
    Entry {
        id: (20, 5),
        name: "C2xC10",
        abelianization: &[2, 10],
        order_counts: &[(1, 1), (2, 3), (5, 4), (10, 12)],
        center: 20,
        derived: 1,
    },
    Entry {
        id: (24, 7),
        name: "C6:C4",
        abelianization: &[2, 4],
        order_counts: &[(1, 1), (2, 3), (3, 2), (4, 12), (6, 6)],
        center: 4,
        derived: 3,
    },
    Entry {
        id: (24, 8),
        name: "C3:D4",
        abelianization: &[2, 2],
        order_counts: &[(1, 1), (2, 9), (3, 2), (4, 6), (6, 6)],
        center: 2,
        derived: 6,
    },
    Entry {
        id: (24, 13),
        name: "C2xA4",
        abelianization: &[6],
        order_counts: &[(1, 1), (2, 7), (3, 8), (6, 8)],
        center: 2,
        derived: 4,
    },
    Entry {
        id: (32, 38),
        name: "C8oD4",
        abelianization: &[2, 2, 4],
        order_counts: &[(1, 1), (2, 7), (4, 8), (8, 16)],
        center: 8,
        derived: 2,
    },
    Entry {
        id: (32, 42),
        name: "C4oD8",
        abelianization: &[2, 2, 2],
        order_counts: &[(1, 1), (2, 11), (4, 12), (8, 8)],
        center: 4,
        derived: 4,
    },
    Entry {
        id: (32, 46),
        name: "C2^2xD4",
        abelianization: &[2, 2, 2, 2],
        order_counts: &[(1, 1), (2, 23), (4, 8)],
        center: 8,
        derived: 2,
    },
    Entry {
        id: (32, 48),
        name: "C2xC4oD4",
        abelianization: &[2, 2, 2, 2],
        order_counts: &[(1, 1), (2, 15), (4, 16)],
        center: 8,
        derived: 2,
    },
    Entry {
        id: (32, 50),
        name: "D4oQ8",
        abelianization: &[2, 2, 2, 2],
        order_counts: &[(1, 1), (2, 11), (4, 20)],
        center: 2,
        derived: 2,
    },
    Entry {
        id: (48, 32),
        name: "C2xSL(2,3)",
        abelianization: &[6],
        order_counts: &[(1, 1), (2, 3), (3, 8), (4, 12), (6, 24)],
        center: 4,
        derived: 8,
    },
    Entry {
        id: (64, 259),
        name: "Q8oD8",
        abelianization: &[2, 2, 2, 2],
        order_counts: &[(1, 1), (2, 15), (4, 32), (8, 16)],
        center: 2,
        derived: 4,
    },
];

/// The id and display name of `g`, when its fingerprint picks out exactly
/// one known group.
pub fn identify(g: &FiniteGroup) -> Option<(SmallGroupId, &'static str)> {
    identify_fingerprint(&Fingerprint::of(g))
}

pub fn identify_fingerprint(fp: &Fingerprint) -> Option<(SmallGroupId, &'static str)> {
    let mut hits = TABLE.iter().filter(|e| {
        e.id.0 == fp.order
            && e.abelianization == fp.abelianization.as_slice()
            && e.order_counts == fp.order_counts.as_slice()
            && e.center == fp.center
            && e.derived == fp.derived
    });
    let first = hits.next()?;
    if hits.next().is_some() {
        return None;
    }
    Some((
        SmallGroupId {
            order: first.id.0,
            number: first.id.1,
        },
        first.name,
    ))
}

/// Every id in the lookup, in increasing order.
pub fn known_ids() -> Vec<SmallGroupId> {
    TABLE
        .iter()
        .map(|e| SmallGroupId {
            order: e.id.0,
            number: e.id.1,
        })
        .collect()
}

/// `C2^2xC4` style name from invariant factors.
pub fn abelian_name(factors: &[usize]) -> String {
    let factors: Vec<usize> = factors.iter().copied().filter(|&d| d > 1).collect();
    if factors.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let mut j = i;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        parts.push(match j - i {
            1 => format!("C{}", factors[i]),
            k => format!("C{}^{}", factors[i], k),
        });
        i = j;
    }
    parts.join("x")
}

/// Display name: the lookup name if identified, else the abelian name, else
/// `?`.
pub fn group_name(g: &FiniteGroup) -> String {
    if let Some((_, name)) = identify(g) {
        return name.to_string();
    }
    g.abelian_invariants()
        .map(|f| abelian_name(&f))
        .unwrap_or_else(|| "?".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn table_matches_constructions() {
        for e in TABLE {
            let g = named::by_id(e.id.0, e.id.1).expect("construction exists");
            let (id, name) = identify(&g).unwrap_or_else(|| panic!("{:?} not identified", e.id));
            assert_eq!((id.order, id.number), e.id);
            assert_eq!(name, e.name);
        }
    }

    #[test]
    fn fingerprints_are_pairwise_distinct() {
        for (i, a) in TABLE.iter().enumerate() {
            for b in &TABLE[i + 1..] {
                let same = a.id.0 == b.id.0
                    && a.abelianization == b.abelianization
                    && a.order_counts == b.order_counts
                    && a.center == b.center
                    && a.derived == b.derived;
                assert!(!same, "{:?} and {:?} collide", a.id, b.id);
            }
        }
    }

    #[test]
    fn examples() {
        let c10 = named::cyclic(10).unwrap();
        assert_eq!(
            identify(&c10).unwrap().0,
            SmallGroupId {
                order: 10,
                number: 2
            }
        );
        let c2_3 = named::abelian(&[2, 2, 2]).unwrap();
        assert_eq!(
            identify(&c2_3).unwrap().0,
            SmallGroupId {
                order: 8,
                number: 5
            }
        );
        assert!(identify(&named::abelian(&[2, 2, 2, 2, 2, 2]).unwrap()).is_none());
        assert!(identify(&named::cyclic(64).unwrap()).is_none());
        assert_eq!(
            group_name(&named::abelian(&[2, 2, 2, 8]).unwrap()),
            "C2^3xC8"
        );
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (o, n) in [(16, 13), (24, 8), (32, 42), (48, 32), (64, 259)] {
            let g = named::by_id(o, n).unwrap();
            let mut rest: Vec<usize> = (1..o).collect();
            rest.shuffle(&mut rng);
            let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
            let h = g.relabel(&perm).unwrap();
            assert_eq!(identify(&h), identify(&g));
        }
    }

    #[test]
    fn id_text_round_trip() {
        let id: SmallGroupId = "G(64, 259)".parse().unwrap();
        assert_eq!(id.to_string(), "G(64,259)");
        assert!("G(64)".parse::<SmallGroupId>().is_err());
    }

    #[test]
    fn names() {
        assert_eq!(abelian_name(&[2, 2, 4]), "C2^2xC4");
        assert_eq!(abelian_name(&[2, 4]), "C2xC4");
        assert_eq!(abelian_name(&[10]), "C10");
        assert_eq!(abelian_name(&[]), "1");
    }
}
