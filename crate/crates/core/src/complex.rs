//! The equivariant cell structure of the (truncated) fundamental simplex.
//!
//! For a cocompact group the fundamental domain is the simplex itself:
//! one 3-cell, four faces, six edges, four vertices. Every ideal vertex is
//! cut off by a horosphere, replacing the vertex with a triangle: three new
//! vertices (one on each simplex edge running into the ideal vertex), three
//! new edges (one in each simplex face at the ideal vertex), and one new
//! face. Stabilizers: the 3-cell is free; faces are fixed by their single
//! reflection; simplex edges by the dihedral group of their label; a
//! truncation vertex inherits the stabilizer of the simplex edge it sits
//! on; truncation edges are fixed by the reflection of their containing
//! face; truncation faces are free.

use crate::coxeter::{vertex_profile, CoxeterDiagram, CoxeterMatrix, DiagramError, Rank3Class};
use crate::groups::FiniteGroupType;
use std::collections::HashMap;

/// Where a cell of the truncated simplex came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellOrigin {
    /// The vertex omitting generator `v` (non-ideal only).
    SimplexVertex(usize),
    /// The edge fixed by generators `i < j`.
    SimplexEdge(usize, usize),
    /// The face fixed by generator `m`.
    SimplexFace(usize),
    /// The interior 3-cell.
    Interior,
    /// The point where simplex edge `edge` meets the horosphere truncating
    /// ideal vertex `vertex`.
    TruncationVertex { vertex: usize, edge: (usize, usize) },
    /// The arc of the truncation triangle at `vertex` lying in face `face`.
    TruncationEdge { vertex: usize, face: usize },
    /// The triangle face cut at ideal vertex `vertex`.
    TruncationFace(usize),
}

/// A cell with its stabilizer type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub stabilizer: FiniteGroupType,
    pub origin: CellOrigin,
}

/// The cells of the truncated simplex by dimension, with 1-cell → 0-cell
/// incidence (indices into `zero_cells`).
#[derive(Clone, Debug)]
pub struct EquivariantCellComplex {
    pub zero_cells: Vec<Cell>,
    /// Each 1-cell with the indices of its two endpoint 0-cells.
    pub one_cells: Vec<(Cell, [usize; 2])>,
    pub two_cells: Vec<Cell>,
    pub three_cells: Vec<Cell>,
}

/// Build the cell complex of a diagram's truncated simplex.
pub fn build_cell_complex(d: &CoxeterDiagram) -> Result<EquivariantCellComplex, DiagramError> {
    let profile = vertex_profile(d)?;
    let m = &d.matrix;

    let mut zero_cells = Vec::new();
    // 0-cell index of each non-ideal vertex, and of each truncation point
    // (keyed by ideal vertex and incident edge).
    let mut vertex_cell: HashMap<usize, usize> = HashMap::new();
    let mut truncation_cell: HashMap<(usize, (usize, usize)), usize> = HashMap::new();

    for v in 0..4 {
        match &profile.classes[v] {
            Rank3Class::Spherical(t) => {
                vertex_cell.insert(v, zero_cells.len());
                zero_cells.push(Cell {
                    stabilizer: *t,
                    origin: CellOrigin::SimplexVertex(v),
                });
            }
            Rank3Class::Affine(_) => {
                for (i, j) in CoxeterMatrix::edges() {
                    // Edge (i, j) runs into vertex v exactly when v is one
                    // of its endpoints, i.e. v ∉ {i, j}.
                    if v == i || v == j {
                        continue;
                    }
                    truncation_cell.insert((v, (i, j)), zero_cells.len());
                    zero_cells.push(Cell {
                        stabilizer: FiniteGroupType::Dihedral(m.label(i, j)),
                        origin: CellOrigin::TruncationVertex {
                            vertex: v,
                            edge: (i, j),
                        },
                    });
                }
            }
        }
    }

    let endpoint_cell = |v: usize, edge: (usize, usize)| -> usize {
        vertex_cell
            .get(&v)
            .copied()
            .unwrap_or_else(|| truncation_cell[&(v, edge)])
    };

    let mut one_cells = Vec::new();
    for (i, j) in CoxeterMatrix::edges() {
        let (a, b) = CoxeterMatrix::edge_endpoints(i, j);
        one_cells.push((
            Cell {
                stabilizer: FiniteGroupType::Dihedral(m.label(i, j)),
                origin: CellOrigin::SimplexEdge(i, j),
            },
            [endpoint_cell(a, (i, j)), endpoint_cell(b, (i, j))],
        ));
    }
    for v in 0..4 {
        if !profile.classes[v].is_ideal() {
            continue;
        }
        for face in 0..4 {
            if face == v {
                continue;
            }
            // The two simplex edges at vertex v inside face `face` are the
            // pairs {face, j} with j ranging over the other two generators.
            let others: Vec<usize> = (0..4).filter(|&x| x != v && x != face).collect();
            let pair = |j: usize| {
                let (a, b) = if face < j { (face, j) } else { (j, face) };
                truncation_cell[&(v, (a, b))]
            };
            let ends = [pair(others[0]), pair(others[1])];
            one_cells.push((
                Cell {
                    stabilizer: FiniteGroupType::C2,
                    origin: CellOrigin::TruncationEdge { vertex: v, face },
                },
                ends,
            ));
        }
    }

    let mut two_cells: Vec<Cell> = (0..4)
        .map(|f| Cell {
            stabilizer: FiniteGroupType::C2,
            origin: CellOrigin::SimplexFace(f),
        })
        .collect();
    for v in 0..4 {
        if profile.classes[v].is_ideal() {
            two_cells.push(Cell {
                stabilizer: FiniteGroupType::Trivial,
                origin: CellOrigin::TruncationFace(v),
            });
        }
    }

    let three_cells = vec![Cell {
        stabilizer: FiniteGroupType::Trivial,
        origin: CellOrigin::Interior,
    }];

    Ok(EquivariantCellComplex {
        zero_cells,
        one_cells,
        two_cells,
        three_cells,
    })
}
