//! Brute-force rank oracles for finite groups: Whitehead rank via class
//! counting, and the rank of K₋₁ via component counts of group algebras
//! over ℚ, ℚ_p and 𝔽_p.

use super::perm::{orbit_count, ClassData, PermutationGroup};
use super::GroupError;
use num_integer::Integer;

/// The coefficient field for a Wedderburn component count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rational,
    /// The p-adic completion of ℚ.
    PadicRational(u64),
    /// The prime field 𝔽_p (also standing in for the p-adic integers:
    /// component counts agree).
    FiniteField(u64),
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::PadicRational(p) => write!(f, "Qp({p})"),
            FieldDescriptor::FiniteField(p) => write!(f, "F({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Ascending prime divisors of `n`.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Number of conjugacy classes of unordered sets `{x, x⁻¹}`.
pub fn count_r(g: &PermutationGroup) -> usize {
    let data = ClassData::compute(g);
    count_r_from(&data)
}

pub fn count_r_from(data: &ClassData) -> usize {
    let maps: Vec<Box<dyn Fn(usize) -> usize + '_>> =
        vec![Box::new(move |c| data.inverse_class(c))];
    orbit_count(data.class_count(), &maps)
}

/// Number of conjugacy classes of cyclic subgroups, by honest enumeration:
/// list every ⟨x⟩ as an element-index set, dedupe, then merge under
/// conjugation by every group element.
pub fn count_q(g: &PermutationGroup) -> usize {
    let data = ClassData::compute(g);
    count_q_from(&data)
}

pub fn count_q_from(data: &ClassData) -> usize {
    use std::collections::HashMap;
    let n = data.elements.len();
    let mut subgroups: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in &data.elements {
        let ord = x.order();
        let mut cyc: Vec<usize> = (0..ord).map(|k| data.element_index(&x.pow(k))).collect();
        cyc.sort_unstable();
        if !seen.contains_key(&cyc) {
            seen.insert(cyc.clone(), subgroups.len());
            subgroups.push(cyc);
        }
    }
    // Union subgroups that are conjugate.
    let mut parent: Vec<usize> = (0..subgroups.len()).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (si, sub) in subgroups.iter().enumerate() {
        for gi in 0..n {
            let g = &data.elements[gi];
            let mut image: Vec<usize> = sub
                .iter()
                .map(|&ei| data.element_index(&data.elements[ei].conjugate_by(g)))
                .collect();
            image.sort_unstable();
            let ti = seen[&image];
            let (a, b) = (find(&mut parent, si), find(&mut parent, ti));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..subgroups.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Bass's rank of the Whitehead group: `r − q`.
pub fn wh_rank(g: &PermutationGroup) -> usize {
    let data = ClassData::compute(g);
    let (r, q) = (count_r_from(&data), count_q_from(&data));
    assert!(r >= q, "class counts violate r >= q: r={r}, q={q}");
    r - q
}

/// The subgroup of units of ℤ/m fixing the field `f` pointwise on roots of
/// unity, as the explicit list of units; `m` is the group exponent.
fn galois_units(m: usize, f: FieldDescriptor) -> Result<Vec<usize>, GroupError> {
    if m <= 1 {
        return Ok(Vec::new());
    }
    let units = || (1..m).filter(|u| u.gcd(&m) == 1);
    match f {
        FieldDescriptor::Rational => Ok(units().collect()),
        FieldDescriptor::PadicRational(p) => {
            if !is_prime(p) {
                return Err(GroupError::NonPrimeP(p));
            }
            let p = p as usize;
            // Split the exponent as p^a · m′ with p ∤ m′. Over ℚ_p the
            // cyclotomic Galois group is the full unit group in the p-part
            // and the (pro)cyclic group generated by Frobenius, i.e. by p,
            // in the prime-to-p part.
            let mut mp = m;
            while mp % p == 0 {
                mp /= p;
            }
            let mut frob_powers = std::collections::HashSet::new();
            let mut x = 1usize % mp.max(1);
            loop {
                if !frob_powers.insert(x) {
                    break;
                }
                x = (x * (p % mp.max(1))) % mp.max(1);
            }
            Ok(units()
                .filter(|u| mp == 1 || frob_powers.contains(&(u % mp)))
                .collect())
        }
        FieldDescriptor::FiniteField(p) => {
            if !is_prime(p) {
                return Err(GroupError::NonPrimeP(p));
            }
            Ok(vec![(p as usize) % m])
        }
    }
}

/// Number of Wedderburn components of `f[G]` by Berman–Witt counting:
/// orbits of conjugacy classes (p-regular classes over 𝔽_p) under the
/// Galois action `x ↦ x^u`.
pub fn k_classes(g: &PermutationGroup, f: FieldDescriptor) -> Result<usize, GroupError> {
    let data = ClassData::compute(g);
    k_classes_from(&data, f)
}

pub fn k_classes_from(data: &ClassData, f: FieldDescriptor) -> Result<usize, GroupError> {
    let units = galois_units(data.exponent, f)?;
    // Select the relevant classes: all of them, or only p-regular ones.
    let selected: Vec<usize> = match f {
        FieldDescriptor::FiniteField(p) => (0..data.class_count())
            .filter(|&c| data.class_element_order(c) % (p as usize) != 0)
            .collect(),
        _ => (0..data.class_count()).collect(),
    };
    let position: std::collections::HashMap<usize, usize> =
        selected.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let (selected, position) = (&selected, &position);
    let maps: Vec<Box<dyn Fn(usize) -> usize + '_>> = units
        .iter()
        .map(|&u| {
            Box::new(move |i: usize| position[&data.power_class(selected[i], u)])
                as Box<dyn Fn(usize) -> usize + '_>
        })
        .collect();
    Ok(orbit_count(selected.len(), &maps))
}

/// The rank of K₋₁(ℤG) by Carter's exact sequence:
/// `1 − k_ℚ + Σ_{p | |G|} (k_{ℚ_p} − k_{𝔽_p})`.
pub fn carter_k_minus1_rank(g: &PermutationGroup) -> usize {
    let data = ClassData::compute(g);
    let k_q = k_classes_from(&data, FieldDescriptor::Rational).expect("rational count is total");
    let mut rank: i64 = 1 - k_q as i64;
    for p in prime_divisors(data.elements.len() as u64) {
        let k_qp = k_classes_from(&data, FieldDescriptor::PadicRational(p))
            .expect("p is prime by construction");
        let k_fp = k_classes_from(&data, FieldDescriptor::FiniteField(p))
            .expect("p is prime by construction");
        rank += k_qp as i64 - k_fp as i64;
    }
    assert!(rank >= 0, "Carter rank must be non-negative, got {rank}");
    rank as usize
}
