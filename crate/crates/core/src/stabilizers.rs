//! Enumeration of the maximal infinite virtually cyclic stabilizers of
//! axis type ("type I"): walk the six simplex edges through the local
//! extend/reflect behavior at their endpoint vertex groups and assemble
//! each maximal geodesic path into a Bass–Serre amalgam descriptor.
//!
//! At a finite vertex, an incoming edge either *extends* through the vertex
//! into another edge of the same label, or the geodesic *reflects*: the
//! vertex contributes a finite dihedral-by-ℤ/2 group that becomes one of
//! the two amalgam factors. The local rule depends only on the vertex
//! group's isomorphism type and the dihedral angle of the edge at it. A
//! path that reaches an ideal vertex escapes down a cusp and is discarded:
//! it stabilizes no periodic geodesic.

use crate::coxeter::{vertex_profile, CoxeterDiagram, CoxeterMatrix, DiagramError, Rank3Class};
use crate::groups::FiniteGroupType;
use std::collections::BTreeSet;

/// Errors from the geodesic walk.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StabilizerError {
    /// The walk revisited a directed edge state: the geodesic closes up
    /// into a loop, which the amalgam analysis does not cover.
    #[error("geodesic walk through edge ({0},{1}) closed into a loop")]
    LoopDetected(usize, usize),
    /// An amalgam shape outside the supported catalog (e.g. `D_8 ∗ D_8`
    /// over `D_4`).
    #[error("amalgam over D_{k} with doubled factors is not in the catalog")]
    UnsupportedAmalgam { k: u32 },
    /// A vertex group with no local behavior rule.
    #[error("no edge behavior rule for vertex group {0}")]
    UnexpectedVertexGroup(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// The form of a finite vertex group terminating a geodesic: for an edge
/// group `D_k`, either the product `ℤ/2 × D_k` or the doubled `D_2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexForm {
    ProductC2,
    Doubled,
}

/// Canonical isomorphism type of a type-I stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalTag {
    /// `D_k × D_∞` (both factors split off the edge group).
    DkTimesDinf(u32),
    /// `D_4 ∗_{D_2} D_4`.
    D4starD2D4,
    /// `(D_2 × ℤ/2) ∗_{D_2} D_4`.
    MixedD2D4,
    /// A closed geodesic (mapping-torus stabilizer); never produced for
    /// the catalog groups.
    LoopType(u32),
}

/// A type-I stabilizer as an amalgam over the edge group `D_k`, with the
/// two terminal vertex forms (sorted, so descriptors are reversal
/// invariant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilizerDescriptor {
    pub k: u32,
    pub forms: [VertexForm; 2],
}

impl StabilizerDescriptor {
    pub fn new(k: u32, a: VertexForm, b: VertexForm) -> Self {
        let mut forms = [a, b];
        forms.sort_unstable();
        StabilizerDescriptor { k, forms }
    }

    /// Canonical isomorphism type. For odd `k` every form collapses to
    /// `D_k × D_∞` because `D_2k ≅ D_k × ℤ/2`; for even `k` the forms are
    /// genuinely different amalgams.
    pub fn tag(&self) -> Result<CanonicalTag, StabilizerError> {
        use VertexForm::*;
        if self.k % 2 == 1 {
            return Ok(CanonicalTag::DkTimesDinf(self.k));
        }
        match (self.forms, self.k) {
            ([ProductC2, ProductC2], k) => Ok(CanonicalTag::DkTimesDinf(k)),
            ([Doubled, Doubled], 2) => Ok(CanonicalTag::D4starD2D4),
            ([ProductC2, Doubled], 2) => Ok(CanonicalTag::MixedD2D4),
            (_, k) => Err(StabilizerError::UnsupportedAmalgam { k }),
        }
    }

    /// Render in amalgam notation, preserving which vertex forms arose
    /// (`D_6 ∗_{D_3} D_6` and `(D_3 × ℤ/2) ∗_{D_3} D_6` print differently
    /// even though they are isomorphic).
    pub fn render(&self) -> String {
        use VertexForm::*;
        let k = self.k;
        match self.forms {
            [ProductC2, ProductC2] => format!("D_{k} x D_inf"),
            [Doubled, Doubled] => format!("D_{} *_{{D_{k}}} D_{}", 2 * k, 2 * k),
            [ProductC2, Doubled] | [Doubled, ProductC2] => {
                format!("(D_{k} x Z/2) *_{{D_{k}}} D_{}", 2 * k)
            }
        }
    }
}

/// Parse a descriptor back from its [`StabilizerDescriptor::render`] form.
pub fn parse_descriptor(s: &str) -> Option<StabilizerDescriptor> {
    use VertexForm::*;
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("D_") {
        if let Some(k) = rest
            .strip_suffix(" x D_inf")
            .and_then(|t| t.parse::<u32>().ok())
        {
            return Some(StabilizerDescriptor::new(k, ProductC2, ProductC2));
        }
    }
    // Amalgam forms: the edge group is named between *_{D_ and }.
    let (head, tail) = s.split_once(" *_{D_")?;
    let (k_str, factor) = tail.split_once("} ")?;
    let k: u32 = k_str.parse().ok()?;
    let doubled = format!("D_{}", 2 * k);
    if factor != doubled {
        return None;
    }
    if head == doubled {
        Some(StabilizerDescriptor::new(k, Doubled, Doubled))
    } else if head == format!("(D_{k} x Z/2)") {
        Some(StabilizerDescriptor::new(k, ProductC2, Doubled))
    } else {
        None
    }
}

/// Outcome of one step of the walk at a finite vertex.
enum LocalStep {
    Reflect(VertexForm),
    /// Continue into the given generator pair (an edge of the same label).
    Continue((usize, usize)),
}

/// The local behavior of an incoming edge at a finite vertex.
///
/// `vertex` is the *classified* (not canonicalized) vertex type, `pairs`
/// the three generator pairs of the vertex with their labels, `incoming`
/// the pair of the incoming edge.
fn local_behavior(
    vertex: FiniteGroupType,
    pairs: &[((usize, usize), u32); 3],
    incoming: (usize, usize),
) -> Result<LocalStep, StabilizerError> {
    use FiniteGroupType::*;
    use LocalStep::*;
    use VertexForm::*;
    let label_of = |pair: (usize, usize)| {
        pairs
            .iter()
            .find(|(p, _)| *p == pair)
            .map(|(_, l)| *l)
            .expect("incoming pair at vertex")
    };
    let other_pair_with = |label: u32| {
        pairs
            .iter()
            .map(|(p, l)| (*p, *l))
            .find(|(p, l)| *p != incoming && *l == label)
            .map(|(p, _)| p)
            .expect("partner pair with equal label")
    };
    let label = label_of(incoming);
    Ok(match vertex {
        ElemAbelian2(3) => Reflect(ProductC2),
        C2xDihedral(n) => {
            if label == n {
                Reflect(ProductC2)
            } else if n % 2 == 1 {
                // The two right-angled edges extend each other through the
                // vertex.
                Continue(other_pair_with(2))
            } else {
                // For even n each right-angled edge meets its own mirror
                // image: the geodesic folds back and the vertex reflects
                // with the product form.
                Reflect(ProductC2)
            }
        }
        S4 => {
            if label == 3 {
                Continue(other_pair_with(3))
            } else {
                Reflect(Doubled)
            }
        }
        C2xS4 => match label {
            4 => Reflect(ProductC2),
            3 => Reflect(Doubled),
            _ => Reflect(ProductC2),
        },
        C2xA5 => match label {
            5 => Reflect(Doubled),
            3 => Reflect(Doubled),
            _ => Reflect(ProductC2),
        },
        other => return Err(StabilizerError::UnexpectedVertexGroup(other.to_string())),
    })
}

/// How one ray of a walk ended.
enum RayEnd {
    Reflect(VertexForm),
    Ideal,
}

/// The three generator pairs (edges) incident to the vertex omitting
/// generator `v`, with labels.
fn vertex_pairs(m: &CoxeterMatrix, v: usize) -> [((usize, usize), u32); 3] {
    let gens: Vec<usize> = (0..4).filter(|&g| g != v).collect();
    [
        ((gens[0], gens[1]), m.label(gens[0], gens[1])),
        ((gens[0], gens[2]), m.label(gens[0], gens[2])),
        ((gens[1], gens[2]), m.label(gens[1], gens[2])),
    ]
}

/// Walk one ray from `edge` toward vertex `toward`, recording traversed
/// edges into `path`.
fn walk_ray(
    m: &CoxeterMatrix,
    classes: &[Rank3Class; 4],
    mut edge: (usize, usize),
    mut toward: usize,
    path: &mut BTreeSet<(usize, usize)>,
) -> Result<RayEnd, StabilizerError> {
    let label = m.label(edge.0, edge.1);
    let mut states = BTreeSet::new();
    loop {
        if !states.insert((edge, toward)) {
            return Err(StabilizerError::LoopDetected(edge.0, edge.1));
        }
        assert!(states.len() <= 12, "walk exceeded the state-space bound");
        path.insert(edge);
        assert_eq!(
            m.label(edge.0, edge.1),
            label,
            "path edges must share one label"
        );
        match &classes[toward] {
            Rank3Class::Affine(_) => return Ok(RayEnd::Ideal),
            Rank3Class::Spherical(t) => match local_behavior(*t, &vertex_pairs(m, toward), edge)? {
                LocalStep::Reflect(form) => return Ok(RayEnd::Reflect(form)),
                LocalStep::Continue(next) => {
                    let (a, b) = CoxeterMatrix::edge_endpoints(next.0, next.1);
                    debug_assert!(a == toward || b == toward);
                    let next_toward = if a == toward { b } else { a };
                    edge = next;
                    toward = next_toward;
                }
            },
        }
    }
}

/// Enumerate the type-I stabilizers of a diagram, one descriptor per
/// maximal geodesic path (= per conjugacy class), as a sorted multiset.
pub fn enumerate_type1(d: &CoxeterDiagram) -> Result<Vec<StabilizerDescriptor>, StabilizerError> {
    let profile = vertex_profile(d)?;
    let mut consumed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, j) in CoxeterMatrix::edges() {
        if consumed.contains(&(i, j)) {
            continue;
        }
        let (v0, v1) = CoxeterMatrix::edge_endpoints(i, j);
        let mut path = BTreeSet::new();
        let end0 = walk_ray(&d.matrix, &profile.classes, (i, j), v0, &mut path)?;
        let end1 = walk_ray(&d.matrix, &profile.classes, (i, j), v1, &mut path)?;
        consumed.extend(path.iter().copied());
        if let (RayEnd::Reflect(a), RayEnd::Reflect(b)) = (end0, end1) {
            let desc = StabilizerDescriptor::new(d.matrix.label(i, j), a, b);
            desc.tag()?; // reject shapes outside the catalog eagerly
            out.push(desc);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The cusp cross-section types (one per ideal vertex), sorted.
pub fn cusp_groups(d: &CoxeterDiagram) -> Result<Vec<crate::coxeter::AffineType>, DiagramError> {
    Ok(vertex_profile(d)?.cusps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_diagram;
    use VertexForm::*;

    fn descriptors(name: &str) -> Vec<StabilizerDescriptor> {
        enumerate_type1(&parse_diagram(name).unwrap()).unwrap()
    }

    fn rendered(name: &str) -> Vec<String> {
        descriptors(name)
            .iter()
            .map(StabilizerDescriptor::render)
            .collect()
    }

    #[test]
    fn all_vertex_groups_spherical_gives_six_descriptors() {
        assert_eq!(
            rendered("[(3,5)^[2]]"),
            vec![
                "D_2 x D_inf",
                "D_2 x D_inf",
                "D_6 *_{D_3} D_6",
                "D_6 *_{D_3} D_6",
                "D_10 *_{D_5} D_10",
                "D_10 *_{D_5} D_10",
            ]
        );
    }

    #[test]
    fn extension_through_s4_vertices_merges_three_edges() {
        // The 3-labeled edges of [3,3^[3]] all run into the ideal vertex;
        // the right-angled edges extend through the C2xD_3 vertex and end
        // with doubled form at the two S_4 vertices.
        assert_eq!(rendered("[3,3^[3]]"), vec!["D_4 *_{D_2} D_4"]);
        let desc = descriptors("[3,3^[3]]")[0];
        assert_eq!(desc.tag().unwrap(), CanonicalTag::D4starD2D4);
    }

    #[test]
    fn mixed_form_amalgam_appears_in_fork_diagrams() {
        assert_eq!(
            rendered("[5,3^{1,1}]"),
            vec![
                "D_2 x D_inf",
                "D_2 x D_inf",
                "(D_2 x Z/2) *_{D_2} D_4",
                "D_6 *_{D_3} D_6",
                "D_10 *_{D_5} D_10",
            ]
        );
        let mixed = descriptors("[5,3^{1,1}]")
            .into_iter()
            .find(|d| d.forms == [ProductC2, Doubled])
            .unwrap();
        assert_eq!(mixed.tag().unwrap(), CanonicalTag::MixedD2D4);
    }

    #[test]
    fn all_rays_ideal_gives_empty_enumeration() {
        assert_eq!(descriptors("[(3^3,6)]"), Vec::new());
        assert_eq!(descriptors("[4^[4]]"), Vec::new());
        assert_eq!(descriptors("[3^[]x[]]"), Vec::new());
    }

    #[test]
    fn even_dihedral_vertices_fold_right_angled_edges() {
        // In [4,4,4] the only compact edge joins two C2xD_4 vertices at
        // right angles; each end folds back, giving the product form.
        assert_eq!(rendered("[4,4,4]"), vec!["D_2 x D_inf"]);
        // Same situation in [6,3,6] with C2xD_6 vertices.
        assert_eq!(rendered("[6,3,6]"), vec!["D_2 x D_inf"]);
    }

    #[test]
    fn appendix_fork_example() {
        assert_eq!(
            rendered("[3,4^{1,1}]"),
            vec!["D_2 x D_inf", "D_2 x D_inf", "D_6 *_{D_3} D_6"]
        );
    }

    #[test]
    fn chain_with_all_distinct_rows() {
        assert_eq!(
            rendered("[4,3,5]"),
            vec![
                "D_2 x D_inf",
                "D_2 x D_inf",
                "D_6 *_{D_3} D_6",
                "D_4 x D_inf",
                "(D_5 x Z/2) *_{D_5} D_10",
            ]
        );
    }

    #[test]
    fn cusp_multisets() {
        use crate::coxeter::AffineType::*;
        let cusps = |name: &str| cusp_groups(&parse_diagram(name).unwrap()).unwrap();
        assert_eq!(cusps("[5,3,6]"), vec![Hexagonal]);
        assert_eq!(cusps("[6,3,6]"), vec![Hexagonal, Hexagonal]);
        assert_eq!(cusps("[(3,5)^[2]]"), Vec::new());
        assert_eq!(cusps("[6,3^[3]]"), vec![Triangle, Hexagonal, Hexagonal]);
        assert_eq!(cusps("[3^[]x[]]"), vec![Triangle; 4]);
    }

    #[test]
    fn descriptor_is_reversal_invariant() {
        assert_eq!(
            StabilizerDescriptor::new(2, Doubled, ProductC2),
            StabilizerDescriptor::new(2, ProductC2, Doubled)
        );
        assert_eq!(
            StabilizerDescriptor::new(3, Doubled, Doubled)
                .tag()
                .unwrap(),
            CanonicalTag::DkTimesDinf(3)
        );
        assert!(matches!(
            StabilizerDescriptor::new(4, Doubled, Doubled).tag(),
            Err(StabilizerError::UnsupportedAmalgam { k: 4 })
        ));
    }
}
