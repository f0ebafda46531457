//! Isomorphism types of the finite stabilizer groups, their permutation
//! realizations, brute-force class-counting oracles, and the curated
//! lower-K-theory records.

pub mod counts;
pub mod perm;

pub use counts::{
    carter_k_minus1_rank, count_q, count_q_from, count_r, count_r_from, k_classes, k_classes_from,
    prime_divisors, wh_rank, FieldDescriptor,
};
pub use perm::{ClassData, Perm, PermutationGroup};

use crate::kvalue::KValue;

/// Errors from group-level computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    /// A field descriptor used a composite where a prime is required.
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    /// No curated K-theory record exists for the type.
    #[error("no K-theory record for group type {0}")]
    UnknownType(String),
    /// A group name string could not be parsed.
    #[error("unknown group name: {0:?}")]
    UnknownGroupName(String),
}

/// Isomorphism types of the finite groups occurring as cell stabilizers.
///
/// `Dihedral(n)` has order `2n` (so `Dihedral(2)` is the Klein four-group);
/// `ElemAbelian2(k)` is `(ℤ/2)^k`; the `C2x…` variants are direct products
/// with a central ℤ/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteGroupType {
    Trivial,
    C2,
    Dihedral(u32),
    ElemAbelian2(u32),
    C2xDihedral(u32),
    S4,
    C2xS4,
    A5,
    C2xA5,
}

impl FiniteGroupType {
    /// Reduce to a canonical representative of the isomorphism class:
    /// `ℤ/2 × D_n ≅ D_2n` for odd `n`, and elementary abelian 2-groups
    /// rewrite to the dihedral-flavored names used by the tables.
    pub fn canonical(self) -> Self {
        use FiniteGroupType::*;
        match self {
            ElemAbelian2(0) => Trivial,
            ElemAbelian2(1) => C2,
            ElemAbelian2(2) => Dihedral(2),
            ElemAbelian2(3) => C2xDihedral(2),
            Dihedral(1) => C2,
            C2xDihedral(n) if n % 2 == 1 => Dihedral(2 * n).canonical(),
            other => other,
        }
    }

    pub fn order(self) -> u64 {
        use FiniteGroupType::*;
        match self {
            Trivial => 1,
            C2 => 2,
            Dihedral(n) => 2 * n as u64,
            ElemAbelian2(k) => 1u64 << k,
            C2xDihedral(n) => 4 * n as u64,
            S4 => 24,
            C2xS4 => 48,
            A5 => 60,
            C2xA5 => 120,
        }
    }
}

impl std::fmt::Display for FiniteGroupType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use FiniteGroupType::*;
        match self {
            Trivial => write!(f, "1"),
            C2 => write!(f, "Z/2"),
            Dihedral(n) => write!(f, "D_{n}"),
            ElemAbelian2(k) => write!(f, "(Z/2)^{k}"),
            C2xDihedral(n) => write!(f, "D_{n} x Z/2"),
            S4 => write!(f, "S_4"),
            C2xS4 => write!(f, "S_4 x Z/2"),
            A5 => write!(f, "A_5"),
            C2xA5 => write!(f, "A_5 x Z/2"),
        }
    }
}

/// Parse a group name as printed by `Display`, tolerating spacing,
/// underscores, parentheses, `×` for `x`, and `C2`/`Z2` for `Z/2`.
pub fn parse_group_name(input: &str) -> Result<FiniteGroupType, GroupError> {
    use FiniteGroupType::*;
    let norm: String = input
        .to_lowercase()
        .chars()
        .map(|c| if c == '×' { 'x' } else { c })
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '(' && *c != ')')
        .collect();
    let err = || GroupError::UnknownGroupName(input.to_string());

    fn factor(s: &str) -> Option<FiniteGroupType> {
        use FiniteGroupType::*;
        match s {
            "1" | "e" | "trivial" => Some(Trivial),
            "z/2" | "z2" | "c2" => Some(C2),
            "s4" => Some(S4),
            "a5" => Some(A5),
            _ => {
                if let Some(n) = s.strip_prefix('d').and_then(|t| t.parse::<u32>().ok()) {
                    return Some(Dihedral(n));
                }
                for c2 in ["z/2^", "z2^", "c2^"] {
                    if let Some(k) = s.strip_prefix(c2).and_then(|t| t.parse::<u32>().ok()) {
                        return Some(ElemAbelian2(k));
                    }
                }
                None
            }
        }
    }

    if let Some(t) = factor(&norm) {
        return Ok(t);
    }
    let parts: Vec<&str> = norm.split('x').collect();
    if parts.len() >= 2 {
        let factors: Vec<FiniteGroupType> = parts
            .iter()
            .map(|p| factor(p).ok_or_else(err))
            .collect::<Result<_, _>>()?;
        if factors.iter().all(|f| *f == C2) {
            return Ok(ElemAbelian2(factors.len() as u32));
        }
        if factors.len() == 2 {
            let other = if factors[0] == C2 {
                factors[1]
            } else if factors[1] == C2 {
                factors[0]
            } else {
                return Err(err());
            };
            return Ok(match other {
                Dihedral(n) => C2xDihedral(n),
                S4 => C2xS4,
                A5 => C2xA5,
                C2 => ElemAbelian2(2),
                Trivial => C2,
                ElemAbelian2(k) => ElemAbelian2(k + 1),
                _ => return Err(err()),
            });
        }
    }
    Err(err())
}

fn dihedral_degree(n: u32) -> usize {
    match n {
        1 => 2,
        2 => 4,
        n => n as usize,
    }
}

/// Generators of `D_n` acting on points `offset..offset+dihedral_degree(n)`.
fn dihedral_gens(n: u32, offset: u8, degree: usize) -> Vec<Perm> {
    match n {
        1 => vec![Perm::from_cycles(degree, &[&[offset, offset + 1]])],
        2 => vec![
            Perm::from_cycles(degree, &[&[offset, offset + 1]]),
            Perm::from_cycles(degree, &[&[offset + 2, offset + 3]]),
        ],
        n => {
            let rot: Vec<u8> = (0..n as u8).map(|i| offset + i).collect();
            let refl: Vec<Vec<u8>> = (0..n as u8 / 2)
                .map(|i| vec![offset + i, offset + (n as u8 - 1 - i)])
                .collect();
            let refl_slices: Vec<&[u8]> = refl.iter().map(Vec::as_slice).collect();
            vec![
                Perm::from_cycles(degree, &[&rot]),
                Perm::from_cycles(degree, &refl_slices),
            ]
        }
    }
}

fn s4_gens(offset: u8, degree: usize) -> Vec<Perm> {
    vec![
        Perm::from_cycles(degree, &[&[offset, offset + 1]]),
        Perm::from_cycles(degree, &[&[offset, offset + 1, offset + 2, offset + 3]]),
    ]
}

fn a5_gens(offset: u8, degree: usize) -> Vec<Perm> {
    vec![
        Perm::from_cycles(degree, &[&[offset, offset + 1, offset + 2]]),
        Perm::from_cycles(
            degree,
            &[&[offset, offset + 1, offset + 2, offset + 3, offset + 4]],
        ),
    ]
}

/// Faithful permutation realization of a group type: dihedral groups act on
/// their polygon (on 4 points for the Klein group), direct products act on
/// disjoint unions, `S_4` on 4 points, `A_5` on 5.
pub fn realize(t: FiniteGroupType) -> PermutationGroup {
    use FiniteGroupType::*;
    match t {
        Trivial => PermutationGroup::new(1, Vec::new()),
        C2 => PermutationGroup::new(2, vec![Perm::from_cycles(2, &[&[0, 1]])]),
        Dihedral(n) => {
            let d = dihedral_degree(n);
            PermutationGroup::new(d, dihedral_gens(n, 0, d))
        }
        ElemAbelian2(k) => {
            let d = (2 * k.max(1)) as usize;
            let gens = (0..k as u8)
                .map(|i| Perm::from_cycles(d, &[&[2 * i, 2 * i + 1]]))
                .collect();
            PermutationGroup::new(d, gens)
        }
        C2xDihedral(n) => {
            let d = 2 + dihedral_degree(n);
            let mut gens = vec![Perm::from_cycles(d, &[&[0, 1]])];
            gens.extend(dihedral_gens(n, 2, d));
            PermutationGroup::new(d, gens)
        }
        S4 => PermutationGroup::new(4, s4_gens(0, 4)),
        C2xS4 => {
            let mut gens = vec![Perm::from_cycles(6, &[&[0, 1]])];
            gens.extend(s4_gens(2, 6));
            PermutationGroup::new(6, gens)
        }
        A5 => PermutationGroup::new(5, a5_gens(0, 5)),
        C2xA5 => {
            let mut gens = vec![Perm::from_cycles(7, &[&[0, 1]])];
            gens.extend(a5_gens(2, 7));
            PermutationGroup::new(7, gens)
        }
    }
}

/// The lower K-theory of the integral group ring of a finite stabilizer
/// type. Torsion parts are curated reference data; the free ranks are
/// independently checked against the counting oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryRecord {
    pub wh: KValue,
    pub k0_tilde: KValue,
    pub k_minus1: KValue,
    pub k_below_minus1: KValue,
    pub torsion_free_k_minus1: bool,
}

impl KTheoryRecord {
    fn new(wh: KValue, k0_tilde: KValue, k_minus1: KValue) -> Self {
        KTheoryRecord {
            wh,
            k0_tilde,
            k_minus1,
            k_below_minus1: KValue::zero(),
            torsion_free_k_minus1: true,
        }
    }

    fn zero() -> Self {
        Self::new(KValue::zero(), KValue::zero(), KValue::zero())
    }
}

/// Curated K-theory record for a stabilizer type (canonicalized first).
pub fn ktheory_of(t: FiniteGroupType) -> Result<KTheoryRecord, GroupError> {
    use FiniteGroupType::*;
    let z = KValue::zero;
    Ok(match t.canonical() {
        Trivial | C2 | S4 => KTheoryRecord::zero(),
        Dihedral(2) | Dihedral(3) | Dihedral(4) | C2xDihedral(2) => KTheoryRecord::zero(),
        Dihedral(5) => KTheoryRecord::new(KValue::free(1), z(), z()),
        Dihedral(6) => KTheoryRecord::new(z(), z(), KValue::free(1)),
        Dihedral(10) => KTheoryRecord::new(KValue::free(2), z(), KValue::free(1)),
        C2xDihedral(4) => KTheoryRecord::new(z(), KValue::torsion(4, 1), z()),
        C2xDihedral(6) => KTheoryRecord::new(z(), KValue::torsion(2, 2), KValue::free(3)),
        C2xS4 => KTheoryRecord::new(z(), KValue::torsion(4, 1), KValue::free(1)),
        A5 => KTheoryRecord::new(KValue::free(1), z(), z()),
        C2xA5 => KTheoryRecord::new(KValue::free(2), z(), KValue::free(1)),
        other => return Err(GroupError::UnknownType(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realized_orders_match_tags() {
        use FiniteGroupType::*;
        for t in [
            Trivial,
            C2,
            Dihedral(2),
            Dihedral(3),
            Dihedral(4),
            Dihedral(5),
            Dihedral(6),
            Dihedral(10),
            ElemAbelian2(2),
            ElemAbelian2(3),
            C2xDihedral(2),
            C2xDihedral(3),
            C2xDihedral(4),
            C2xDihedral(5),
            C2xDihedral(6),
            S4,
            C2xS4,
            A5,
            C2xA5,
        ] {
            assert_eq!(
                realize(t).order() as u64,
                t.order(),
                "order mismatch for {t}"
            );
        }
    }

    #[test]
    fn canonical_forms() {
        use FiniteGroupType::*;
        assert_eq!(C2xDihedral(3).canonical(), Dihedral(6));
        assert_eq!(C2xDihedral(5).canonical(), Dihedral(10));
        assert_eq!(C2xDihedral(1).canonical(), Dihedral(2));
        assert_eq!(C2xDihedral(4).canonical(), C2xDihedral(4));
        assert_eq!(ElemAbelian2(2).canonical(), Dihedral(2));
        assert_eq!(ElemAbelian2(3).canonical(), C2xDihedral(2));
        assert_eq!(ElemAbelian2(1).canonical(), C2);
        assert_eq!(Dihedral(1).canonical(), C2);
    }

    #[test]
    fn realize_degree_examples() {
        assert_eq!(realize(FiniteGroupType::C2xA5).degree, 7);
        assert_eq!(realize(FiniteGroupType::Dihedral(5)).degree, 5);
        assert_eq!(realize(FiniteGroupType::Dihedral(2)).degree, 4);
        assert_eq!(realize(FiniteGroupType::Trivial).degree, 1);
    }

    #[test]
    fn parse_display_roundtrip() {
        use FiniteGroupType::*;
        for t in [
            Trivial,
            C2,
            Dihedral(6),
            ElemAbelian2(3),
            C2xDihedral(4),
            S4,
            C2xS4,
            A5,
            C2xA5,
        ] {
            assert_eq!(
                parse_group_name(&t.to_string()).unwrap(),
                t,
                "roundtrip for {t}"
            );
        }
        assert_eq!(parse_group_name("D10").unwrap(), Dihedral(10));
        assert_eq!(parse_group_name("Z/2 × A_5").unwrap(), C2xA5);
        assert_eq!(parse_group_name("C2 x D6").unwrap(), C2xDihedral(6));
        assert_eq!(
            parse_group_name("Z/2 x Z/2 x Z/2").unwrap(),
            ElemAbelian2(3)
        );
        assert!(parse_group_name("Q8").is_err());
    }

    #[test]
    fn curated_records_match_reference_rows() {
        use FiniteGroupType::*;
        let rec = ktheory_of(C2xS4).unwrap();
        assert_eq!(rec.k_minus1, KValue::free(1));
        assert_eq!(rec.k0_tilde, KValue::torsion(4, 1));
        assert!(rec.wh.is_zero());
        assert!(rec.k_below_minus1.is_zero());

        let rec = ktheory_of(C2xDihedral(6)).unwrap();
        assert_eq!(rec.k_minus1, KValue::free(3));
        assert_eq!(rec.k0_tilde, KValue::torsion(2, 2));

        // Canonicalization folds C2xD_3 into D_6 and (ℤ/2)³ into C2xD_2.
        assert_eq!(
            ktheory_of(C2xDihedral(3)).unwrap(),
            ktheory_of(Dihedral(6)).unwrap()
        );
        assert!(ktheory_of(ElemAbelian2(3)).unwrap().k_minus1.is_zero());

        assert!(matches!(
            ktheory_of(Dihedral(7)),
            Err(GroupError::UnknownType(_))
        ));
    }

    #[test]
    fn wh_rank_oracle_agrees_with_curated_free_ranks() {
        use FiniteGroupType::*;
        for t in [
            Dihedral(5),
            Dihedral(6),
            Dihedral(10),
            C2xDihedral(4),
            C2xS4,
            A5,
            C2xA5,
        ] {
            let rec = ktheory_of(t).unwrap();
            assert_eq!(
                wh_rank(&realize(t)),
                rec.wh.free_rank as usize,
                "Wh rank oracle disagrees for {t}"
            );
        }
    }
}
