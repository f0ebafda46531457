//! The homology assembly: compute the equivariant homology of the finite
//! part from the cell complex (a two-term chain complex of `Wh_q` values of
//! cell stabilizers, reduced by Smith normal form), attach the cokernel
//! contribution of every axis stabilizer, and sum to the final K-groups.
//!
//! Degrees are indexed by `q`: `q = 1` is the Whitehead group, `q = 0` the
//! reduced projective class group, `q = −1` the first negative K-group;
//! everything vanishes in degrees `q ≤ −2`.

use crate::complex::{build_cell_complex, EquivariantCellComplex};
use crate::coxeter::{CoxeterDiagram, DiagramError};
use crate::groups::{ktheory_of, FiniteGroupType, GroupError};
use crate::kvalue::KValue;
use crate::smith::{self, Mat};
use crate::stabilizers::{enumerate_type1, CanonicalTag, StabilizerError};
use num_bigint::BigInt;
use num_traits::Signed;
use once_cell::sync::Lazy;

/// Errors from the assembly pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AssemblyError {
    /// An edge stabilizer has a nonzero `Wh_q` but the inclusion into one
    /// of its endpoint vertex groups is not in the induced-map catalog.
    #[error("no induced map for {edge} -> {vertex} in degree {q}")]
    MissingInducedMap {
        edge: String,
        vertex: String,
        q: i32,
    },
    /// The spectral sequence failed to collapse: a nonzero kernel appeared
    /// in position (1, q).
    #[error("nonzero E^2 entry at (1, {q}): kernel rank {kernel_rank}")]
    NonCollapsingPage { q: i32, kernel_rank: usize },
    /// A stabilizer tag with no cokernel entry.
    #[error("no cokernel data for stabilizer tag {0}")]
    UnknownTag(String),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The `Wh_q` value of a finite stabilizer type: its Whitehead group,
/// reduced projective class group, or K₋₁ depending on `q`.
pub fn wh_q(t: FiniteGroupType, q: i32) -> Result<KValue, GroupError> {
    let record = ktheory_of(t)?;
    Ok(match q {
        1 => record.wh,
        0 => record.k0_tilde,
        -1 => record.k_minus1,
        _ => KValue::zero(),
    })
}

/// The catalog of induced maps `Wh_q(edge group) → Wh_q(vertex group)`
/// on free generators, one column vector per inclusion with nonzero source.
pub struct InducedMapCatalog {
    entries: Vec<(FiniteGroupType, FiniteGroupType, i32, Vec<i64>)>,
}

impl InducedMapCatalog {
    /// The five nonzero inclusions occurring in the catalog groups: in
    /// degree 1 the Whitehead group of `D_5` embeds as a summand of those
    /// of `D_10` and `A_5 × ℤ/2`, and maps identically onto a truncation
    /// vertex of its own type; in degree −1 the K₋₁ of `D_6` embeds as a
    /// summand of that of `D_6 × ℤ/2`, and identically onto a truncation
    /// vertex.
    pub fn standard() -> Self {
        use FiniteGroupType::*;
        InducedMapCatalog {
            entries: vec![
                (Dihedral(5), Dihedral(10), 1, vec![1, 0]),
                (Dihedral(5), C2xA5, 1, vec![1, 0]),
                (Dihedral(5), Dihedral(5), 1, vec![1]),
                (Dihedral(6), C2xDihedral(6), -1, vec![1, 0, 0]),
                (Dihedral(6), Dihedral(6), -1, vec![1]),
            ],
        }
    }

    /// The column of the induced map for an inclusion with free cyclic
    /// source, or `None` if the pair is not cataloged.
    pub fn lookup(&self, edge: FiniteGroupType, vertex: FiniteGroupType, q: i32) -> Option<&[i64]> {
        let (edge, vertex) = (edge.canonical(), vertex.canonical());
        self.entries
            .iter()
            .find(|(e, v, qq, _)| *e == edge && *v == vertex && *qq == q)
            .map(|(_, _, _, col)| col.as_slice())
    }

    /// Every cataloged matrix must be injective; with cyclic sources that
    /// means a nonzero column.
    pub fn all_injective(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, _, _, col)| col.iter().any(|&x| x != 0))
    }
}

static STANDARD_CATALOG: Lazy<InducedMapCatalog> = Lazy::new(InducedMapCatalog::standard);

/// The `E²` entries in column `q`: `(E²_{0,q}, E²_{1,q})` as cokernel and
/// kernel of the cellular differential `d₁ : ⊕ Wh_q(G_edge) → ⊕ Wh_q(G_vertex)`.
pub fn e2_page(
    complex: &EquivariantCellComplex,
    q: i32,
) -> Result<(KValue, KValue), AssemblyError> {
    e2_page_with(complex, q, &STANDARD_CATALOG)
}

pub fn e2_page_with(
    complex: &EquivariantCellComplex,
    q: i32,
    catalog: &InducedMapCatalog,
) -> Result<(KValue, KValue), AssemblyError> {
    // Lay out C₀: free generators first (blockwise per 0-cell), then one
    // generator per finite cyclic summand, with its annihilator.
    let mut free_offset = Vec::with_capacity(complex.zero_cells.len());
    let mut total_free = 0usize;
    let mut annihilators: Vec<u8> = Vec::new();
    for cell in &complex.zero_cells {
        let value = wh_q(cell.stabilizer, q)?;
        free_offset.push(total_free);
        total_free += value.free_rank as usize;
        annihilators.extend(value.torsion.iter().copied());
    }
    let rows = total_free + annihilators.len();

    // Collect d₁ columns: one per 1-cell with nonzero source. All nonzero
    // sources in the catalog are free of rank 1.
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (cell, ends) in &complex.one_cells {
        let source = wh_q(cell.stabilizer, q)?;
        if source.is_zero() {
            continue;
        }
        assert_eq!(source.free_rank, 1, "catalog sources are free cyclic");
        assert!(
            source.torsion.is_empty(),
            "catalog sources are torsion free"
        );
        let mut col = vec![BigInt::from(0); rows];
        for (side, &cell0) in ends.iter().enumerate() {
            let target = complex.zero_cells[cell0];
            let block = catalog
                .lookup(cell.stabilizer, target.stabilizer, q)
                .ok_or_else(|| AssemblyError::MissingInducedMap {
                    edge: cell.stabilizer.to_string(),
                    vertex: target.stabilizer.to_string(),
                    q,
                })?;
            let sign = if side == 0 { 1i64 } else { -1i64 };
            for (r, &entry) in block.iter().enumerate() {
                col[free_offset[cell0] + r] += BigInt::from(sign * entry);
            }
        }
        columns.push(col);
    }

    // Kernel of d₁ (the sources are free, and no column meets the torsion
    // coordinates, so the kernel is computed on the free block).
    let d1 = columns_to_matrix(rows, &columns);
    let kernel_rank = smith::kernel_rank(&d1);

    // Cokernel: present C₀/im(d₁) by appending the annihilator relations
    // of the torsion generators.
    let mut presentation = columns.clone();
    for (i, &t) in annihilators.iter().enumerate() {
        let mut col = vec![BigInt::from(0); rows];
        col[total_free + i] = BigInt::from(t);
        presentation.push(col);
    }
    let (free, divisors) = smith::cokernel(&columns_to_matrix(rows, &presentation));
    let mut coker = KValue::free(free as u32);
    for d in divisors {
        let d = d.abs();
        let order: u8 = if d == BigInt::from(2) {
            2
        } else if d == BigInt::from(4) {
            4
        } else {
            panic!("unexpected torsion order {d} in E^2 term");
        };
        coker += KValue::torsion(order, 1);
    }
    Ok((coker, KValue::free(kernel_rank as u32)))
}

fn columns_to_matrix(rows: usize, columns: &[Vec<BigInt>]) -> Mat<BigInt> {
    let mut m = Mat::<BigInt>::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

/// A full lower-K-theory answer: degrees 1, 0, −1 and everything below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryResult {
    pub wh: KValue,
    pub k0_tilde: KValue,
    pub k_minus1: KValue,
    pub k_below: KValue,
}

impl KTheoryResult {
    pub fn zero() -> Self {
        KTheoryResult {
            wh: KValue::zero(),
            k0_tilde: KValue::zero(),
            k_minus1: KValue::zero(),
            k_below: KValue::zero(),
        }
    }

    pub fn at(&self, n: i32) -> &KValue {
        match n {
            1 => &self.wh,
            0 => &self.k0_tilde,
            -1 => &self.k_minus1,
            _ => &self.k_below,
        }
    }

    pub fn at_mut(&mut self, n: i32) -> &mut KValue {
        match n {
            1 => &mut self.wh,
            0 => &mut self.k0_tilde,
            -1 => &mut self.k_minus1,
            _ => &mut self.k_below,
        }
    }

    /// Apply [`KValue::normalized`] to every degree.
    pub fn normalized(&self) -> Self {
        KTheoryResult {
            wh: self.wh.normalized(),
            k0_tilde: self.k0_tilde.normalized(),
            k_minus1: self.k_minus1.normalized(),
            k_below: self.k_below.normalized(),
        }
    }
}

/// The homology of the finite part: `H_n = E²_{0,n}` for `n ∈ {1, 0, −1}`,
/// zero below. Errors with [`AssemblyError::NonCollapsingPage`] if any
/// `E²_{1,q}` is nonzero (the differential must be injective).
pub fn h_fin(d: &CoxeterDiagram) -> Result<KTheoryResult, AssemblyError> {
    let complex = build_cell_complex(d)?;
    let mut out = KTheoryResult::zero();
    for q in [-1, 0, 1] {
        let (h0, h1) = e2_page(&complex, q)?;
        if !h1.is_zero() {
            return Err(AssemblyError::NonCollapsingPage {
                q,
                kernel_rank: h1.free_rank as usize,
            });
        }
        *out.at_mut(q) = h0;
    }
    Ok(out)
}

/// The cokernel of the relative assembly map of an axis stabilizer, per
/// its canonical tag, in degree `n ≤ 1`.
pub fn cokernel_of(tag: CanonicalTag, n: i32) -> Result<KValue, AssemblyError> {
    use CanonicalTag::*;
    if n <= -1 {
        return match tag {
            DkTimesDinf(2 | 3 | 4 | 5) | D4starD2D4 | MixedD2D4 => Ok(KValue::zero()),
            other => Err(AssemblyError::UnknownTag(format!("{other:?}"))),
        };
    }
    match (tag, n) {
        (DkTimesDinf(3 | 5), _) => Ok(KValue::zero()),
        (DkTimesDinf(2) | D4starD2D4 | MixedD2D4, 0 | 1) => Ok(KValue::inf_z2()),
        (DkTimesDinf(4), 0) => Ok(KValue::nil0()),
        (DkTimesDinf(4), 1) => Ok(KValue::nil1()),
        (other, _) => Err(AssemblyError::UnknownTag(format!("{other:?}"))),
    }
}

/// The final K-groups of the reflection group: the homology of the finite
/// part plus the cokernel of every axis stabilizer.
pub fn assemble(d: &CoxeterDiagram) -> Result<KTheoryResult, AssemblyError> {
    let mut out = h_fin(d)?;
    for desc in enumerate_type1(d)? {
        let tag = desc.tag()?;
        for n in [-1, 0, 1] {
            *out.at_mut(n) += cokernel_of(tag, n)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_diagram;

    fn assembled(name: &str) -> KTheoryResult {
        assemble(&parse_diagram(name).unwrap()).unwrap()
    }

    fn homology(name: &str) -> KTheoryResult {
        h_fin(&parse_diagram(name).unwrap()).unwrap()
    }

    #[test]
    fn cocompact_cycle_homology() {
        let h = homology("[(3,5)^[2]]");
        assert_eq!(h.wh, KValue::free(6));
        assert_eq!(h.k0_tilde, KValue::zero());
        assert_eq!(h.k_minus1, KValue::free(4));
    }

    #[test]
    fn chain_353_homology() {
        let h = homology("[3,5,3]");
        assert_eq!(h.wh, KValue::free(3));
        assert_eq!(h.k0_tilde, KValue::zero());
        assert_eq!(h.k_minus1, KValue::free(4));
    }

    #[test]
    fn fork_with_ideal_vertex_homology() {
        let h = homology("[3,4^{1,1}]");
        assert_eq!(h.wh, KValue::zero());
        assert_eq!(h.k0_tilde, KValue::torsion(4, 2));
        assert_eq!(h.k_minus1, KValue::free(2));
    }

    #[test]
    fn all_ideal_diagram_has_zero_homology() {
        let h = homology("[4^[4]]");
        assert_eq!(h, KTheoryResult::zero());
    }

    #[test]
    fn truncated_chain_homology_with_identity_blocks() {
        let h = homology("[6,3,6]");
        assert_eq!(h.k_minus1, KValue::free(6));
        assert_eq!(h.k0_tilde, KValue::torsion(2, 4));
        assert_eq!(h.wh, KValue::zero());
    }

    #[test]
    fn assemble_adds_stabilizer_cokernels() {
        let k = assembled("[(3,5)^[2]]");
        // Stabilizers over D_3 and D_5 have trivial cokernels; the two
        // D_2 × D_inf classes add one countable (Z/2)-sum each in degrees
        // 0 and 1.
        assert_eq!(k.wh, KValue::free(6) + KValue::inf_z2() + KValue::inf_z2());
        assert_eq!(k.k0_tilde, KValue::inf_z2() + KValue::inf_z2());
        assert_eq!(k.k_minus1, KValue::free(4));
        assert_eq!(k.k_below, KValue::zero());
        assert_eq!(k.normalized().wh, KValue::free(6) + KValue::inf_z2());
    }

    #[test]
    fn assemble_chain_with_nil_terms() {
        let k = assembled("[4,3,6]");
        assert_eq!(k.k_minus1, KValue::free(4));
        let k0 = k.normalized().k0_tilde;
        assert_eq!(
            k0,
            KValue::torsion(4, 2) + KValue::inf_z2() + KValue::nil0()
        );
        let wh = k.normalized().wh;
        assert_eq!(wh, KValue::inf_z2() + KValue::nil1());
    }

    #[test]
    fn assemble_all_ideal_diagram_is_zero() {
        assert_eq!(assembled("[3^[]x[]]"), KTheoryResult::zero());
        assert_eq!(assembled("[4^[4]]"), KTheoryResult::zero());
    }

    #[test]
    fn cokernel_table() {
        use CanonicalTag::*;
        assert_eq!(cokernel_of(DkTimesDinf(2), 0).unwrap(), KValue::inf_z2());
        assert_eq!(cokernel_of(DkTimesDinf(2), 1).unwrap(), KValue::inf_z2());
        assert_eq!(cokernel_of(DkTimesDinf(5), 1).unwrap(), KValue::zero());
        assert_eq!(cokernel_of(DkTimesDinf(3), 0).unwrap(), KValue::zero());
        assert_eq!(cokernel_of(D4starD2D4, -1).unwrap(), KValue::zero());
        assert_eq!(cokernel_of(D4starD2D4, 0).unwrap(), KValue::inf_z2());
        assert_eq!(cokernel_of(MixedD2D4, 1).unwrap(), KValue::inf_z2());
        assert_eq!(cokernel_of(DkTimesDinf(4), 0).unwrap(), KValue::nil0());
        assert_eq!(cokernel_of(DkTimesDinf(4), 1).unwrap(), KValue::nil1());
        assert_eq!(cokernel_of(DkTimesDinf(4), -1).unwrap(), KValue::zero());
        assert!(matches!(
            cokernel_of(DkTimesDinf(6), 0),
            Err(AssemblyError::UnknownTag(_))
        ));
    }

    #[test]
    fn catalog_maps_are_injective() {
        assert!(InducedMapCatalog::standard().all_injective());
    }

    #[test]
    fn e2_collapse_for_all_registered_diagrams() {
        for entry in crate::coxeter::registry() {
            let d = CoxeterDiagram {
                name: None,
                matrix: entry.matrix,
            };
            let complex = build_cell_complex(&d).unwrap();
            for q in [-1, 0, 1] {
                let (_, h1) = e2_page(&complex, q).unwrap();
                assert!(h1.is_zero(), "{} at q={q}", entry.name);
            }
        }
    }
}
