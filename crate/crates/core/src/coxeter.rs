//! Coxeter matrices of rank 4, the registry of the 32 hyperbolic 3-simplex
//! reflection groups, and classification of their special subgroups.
//!
//! A rank-4 Coxeter matrix `(m_ij)` encodes the group
//! `⟨ x_0..x_3 | (x_i x_j)^{m_ij} ⟩` acting on hyperbolic 3-space with the
//! (possibly ideal) simplex as fundamental chamber. Vertex `v_l` of the
//! simplex is fixed by the rank-3 special subgroup generated by the three
//! reflections other than `x_l`; the vertex lies at infinity (is *ideal*)
//! exactly when that subgroup is a Euclidean triangle group.

use crate::groups::FiniteGroupType;
use num_traits::Float;
use once_cell::sync::Lazy;

/// Errors arising from diagram input and classification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagramError {
    /// The input named a diagram that is not registered.
    #[error("unknown diagram name: {0:?}")]
    UnknownName(String),
    /// The input was not syntactically valid diagram notation.
    #[error("malformed diagram notation: {0}")]
    MalformedNotation(String),
    /// A raw matrix input was not symmetric.
    #[error("Coxeter matrix is not symmetric")]
    AsymmetricMatrix,
    /// A rank-3 label multiset outside the spherical/Euclidean catalog.
    #[error("rank-3 subgroup with labels {0:?} is neither spherical nor Euclidean")]
    UnclassifiableRank3([u32; 3]),
    /// A Gram determinant fell into the band where floating point cannot
    /// distinguish zero from nonzero.
    #[error("Gram determinant {0} is inside the ambiguity band")]
    ToleranceAmbiguity(f64),
    /// Gram verdict and combinatorial classification disagree at a vertex.
    #[error("Gram verdict {verdict:?} contradicts classification at vertex {vertex}")]
    GramMismatch { vertex: usize, verdict: GramVerdict },
}

/// A symmetric rank-4 Coxeter matrix with unit diagonal and finite labels
/// `2..=6` off the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix([[u32; 4]; 4]);

impl CoxeterMatrix {
    /// Validate and wrap a raw label matrix.
    pub fn new(m: [[u32; 4]; 4]) -> Result<Self, DiagramError> {
        for i in 0..4 {
            if m[i][i] != 1 {
                return Err(DiagramError::MalformedNotation(format!(
                    "diagonal entry m[{i}][{i}] must be 1, found {}",
                    m[i][i]
                )));
            }
            for j in 0..4 {
                if m[i][j] != m[j][i] {
                    return Err(DiagramError::AsymmetricMatrix);
                }
                if i != j && !(2..=6).contains(&m[i][j]) {
                    return Err(DiagramError::MalformedNotation(format!(
                        "label m[{i}][{j}] = {} outside the supported range 2..=6",
                        m[i][j]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix(m))
    }

    /// The label `m_ij`.
    pub fn label(&self, i: usize, j: usize) -> u32 {
        self.0[i][j]
    }

    /// The three pairwise labels among the generators other than `omit`,
    /// sorted descending (largest first).
    pub fn vertex_labels(&self, omit: usize) -> [u32; 3] {
        let gens: Vec<usize> = (0..4).filter(|&g| g != omit).collect();
        let mut labels = [
            self.label(gens[0], gens[1]),
            self.label(gens[0], gens[2]),
            self.label(gens[1], gens[2]),
        ];
        labels.sort_unstable_by(|a, b| b.cmp(a));
        labels
    }

    /// The six simplex edges as generator pairs `(i, j)`, `i < j`,
    /// lexicographic. Edge `(i, j)` carries pointwise stabilizer `D_{m_ij}`
    /// and has endpoints `v_k`, `v_l` for `{k, l} = {0..3} \ {i, j}`.
    pub fn edges() -> [(usize, usize); 6] {
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    }

    /// The two endpoint vertices of edge `(i, j)`.
    pub fn edge_endpoints(i: usize, j: usize) -> (usize, usize) {
        let rest: Vec<usize> = (0..4).filter(|&v| v != i && v != j).collect();
        (rest[0], rest[1])
    }
}

/// A parsed diagram: a validated matrix plus the registry name when the
/// input was (or matched) a registered group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub name: Option<String>,
    pub matrix: CoxeterMatrix,
}

/// Euclidean (affine) triangle groups occurring as ideal vertex stabilizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineType {
    /// `[3^[3]]`, labels {3,3,3}.
    Triangle,
    /// `[4,4]`, labels {4,4,2}.
    Square,
    /// `[3,6]`, labels {6,3,2}.
    Hexagonal,
}

impl AffineType {
    /// Render in the bracket notation used by the tables.
    pub fn render(&self) -> &'static str {
        match self {
            AffineType::Triangle => "[3^[3]]",
            AffineType::Square => "[4,4]",
            AffineType::Hexagonal => "[3,6]",
        }
    }
}

/// Classification of a rank-3 special subgroup: finite (spherical vertex)
/// or Euclidean (ideal vertex).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank3Class {
    Spherical(FiniteGroupType),
    Affine(AffineType),
}

impl Rank3Class {
    pub fn is_ideal(&self) -> bool {
        matches!(self, Rank3Class::Affine(_))
    }
}

/// Classify a rank-2 special subgroup: always the dihedral group of its
/// label.
pub fn classify_rank2(label: u32) -> FiniteGroupType {
    FiniteGroupType::Dihedral(label)
}

/// Classify a rank-3 special subgroup from its three pairwise labels.
///
/// The spherical triangle groups of rank 3 with labels in `2..=6` are the
/// reducible ones `(n,2,2)` plus `(3,3,2) = S_4`, `(4,3,2) = Z/2 × S_4`,
/// `(5,3,2) = Z/2 × A_5`; the Euclidean ones are `(3,3,3)`, `(4,4,2)`,
/// `(6,3,2)`. Anything else is hyperbolic and rejected.
pub fn classify_rank3(labels: [u32; 3]) -> Result<Rank3Class, DiagramError> {
    let mut sorted = labels;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    use Rank3Class::*;
    Ok(match sorted {
        [2, 2, 2] => Spherical(FiniteGroupType::ElemAbelian2(3)),
        [n, 2, 2] => Spherical(FiniteGroupType::C2xDihedral(n)),
        [3, 3, 2] => Spherical(FiniteGroupType::S4),
        [4, 3, 2] => Spherical(FiniteGroupType::C2xS4),
        [5, 3, 2] => Spherical(FiniteGroupType::C2xA5),
        [3, 3, 3] => Affine(AffineType::Triangle),
        [4, 4, 2] => Affine(AffineType::Square),
        [6, 3, 2] => Affine(AffineType::Hexagonal),
        other => return Err(DiagramError::UnclassifiableRank3(other)),
    })
}

/// Per-vertex classification of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexProfile {
    /// `classes[l]` classifies the special subgroup omitting generator `l`.
    pub classes: [Rank3Class; 4],
}

impl VertexProfile {
    pub fn ideal_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_ideal()).count()
    }

    /// The cusp cross-section types, one per ideal vertex, sorted.
    pub fn cusps(&self) -> Vec<AffineType> {
        let mut out: Vec<AffineType> = self
            .classes
            .iter()
            .filter_map(|c| match c {
                Rank3Class::Affine(a) => Some(*a),
                Rank3Class::Spherical(_) => None,
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Classify all four vertices of a diagram.
pub fn vertex_profile(d: &CoxeterDiagram) -> Result<VertexProfile, DiagramError> {
    let mut classes = Vec::with_capacity(4);
    for l in 0..4 {
        classes.push(classify_rank3(d.matrix.vertex_labels(l))?);
    }
    Ok(VertexProfile {
        classes: classes.try_into().unwrap(),
    })
}

/// Lexicographically ordered generator subsets of size `k` (the special
/// subgroups of rank `k`).
pub fn special_subgroups(k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..4 {
            cur.push(i);
            rec(i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), &mut out);
    out
}

/// Signature verdict of a 3×3 Gram minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramVerdict {
    /// Positive definite: finite vertex group.
    Spherical,
    /// Positive semidefinite with zero determinant: Euclidean vertex group.
    Affine,
    /// Indefinite: hyperbolic, not a vertex of a hyperbolic simplex.
    Indefinite,
}

/// Verdict from a 3×3 Gram matrix with explicit tolerances: determinants
/// with `|det| ≤ zero_tol` count as zero; values strictly between the
/// tolerances are ambiguous and rejected.
pub fn gram_verdict_with_tol<F: Float>(
    g: &[[F; 3]; 3],
    zero_tol: F,
    definite_tol: F,
) -> Result<GramVerdict, DiagramError> {
    let det = det3(g);
    let lead2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det.abs() <= zero_tol {
        return Ok(GramVerdict::Affine);
    }
    if det.abs() < definite_tol {
        return Err(DiagramError::ToleranceAmbiguity(
            det.to_f64().unwrap_or(f64::NAN),
        ));
    }
    // Sylvester: with unit diagonal, positive definiteness is decided by the
    // leading 2×2 minor and the determinant.
    if det > F::zero() && lead2 > F::zero() && g[0][0] > F::zero() {
        Ok(GramVerdict::Spherical)
    } else {
        Ok(GramVerdict::Indefinite)
    }
}

/// Verdict with the standard `f64` tolerances (zero band `1e-9`, definite
/// threshold `1e-6`).
pub fn gram_verdict(g: &[[f64; 3]; 3]) -> Result<GramVerdict, DiagramError> {
    gram_verdict_with_tol(g, 1e-9, 1e-6)
}

fn det3<F: Float>(g: &[[F; 3]; 3]) -> F {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

/// The 3×3 Gram matrix of the vertex subgroup omitting `omit`:
/// entries `−cos(π/m_ij)` with unit diagonal.
pub fn vertex_gram(m: &CoxeterMatrix, omit: usize) -> [[f64; 3]; 3] {
    let gens: Vec<usize> = (0..4).filter(|&g| g != omit).collect();
    let mut g = [[0.0f64; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            g[a][b] = if a == b {
                1.0
            } else {
                -(std::f64::consts::PI / m.label(gens[a], gens[b]) as f64).cos()
            };
        }
    }
    g
}

/// Cross-check the combinatorial classification of every vertex against the
/// Gram-matrix signature, returning the four verdicts.
pub fn gram_check(d: &CoxeterDiagram) -> Result<[GramVerdict; 4], DiagramError> {
    let profile = vertex_profile(d)?;
    let mut verdicts = Vec::with_capacity(4);
    for l in 0..4 {
        let verdict = gram_verdict(&vertex_gram(&d.matrix, l))?;
        let matches = match (verdict, &profile.classes[l]) {
            (GramVerdict::Spherical, Rank3Class::Spherical(_)) => true,
            (GramVerdict::Affine, Rank3Class::Affine(_)) => true,
            _ => false,
        };
        if !matches {
            return Err(DiagramError::GramMismatch { vertex: l, verdict });
        }
        verdicts.push(verdict);
    }
    Ok(verdicts.try_into().unwrap())
}

/// A registered diagram: display name plus matrix.
#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub matrix: CoxeterMatrix,
}

fn chain(p: u32, q: u32, r: u32) -> CoxeterMatrix {
    CoxeterMatrix::new([[1, p, 2, 2], [p, 1, q, 2], [2, q, 1, r], [2, 2, r, 1]]).unwrap()
}

/// Cycle `0−1−2−3−0` with labels `(a, b, c, d)` on edges `01, 12, 23, 30`.
fn cycle(a: u32, b: u32, c: u32, d: u32) -> CoxeterMatrix {
    CoxeterMatrix::new([[1, a, 2, d], [a, 1, b, 2], [2, b, 1, c], [d, 2, c, 1]]).unwrap()
}

/// Fork `[p, q^{1,1}]`: tail `0−p−1`, branches `1−q−2` and `1−q−3`.
fn fork(p: u32, q: u32) -> CoxeterMatrix {
    CoxeterMatrix::new([[1, p, 2, 2], [p, 1, q, q], [2, q, 1, 2], [2, q, 2, 1]]).unwrap()
}

/// `[p, 3^[3]]`: vertex 0 joined by `p` to the all-3 triangle on `{1,2,3}`.
fn tail_triangle(p: u32) -> CoxeterMatrix {
    CoxeterMatrix::new([[1, p, 2, 2], [p, 1, 3, 3], [2, 3, 1, 3], [2, 3, 3, 1]]).unwrap()
}

/// `[q^{1,1,1}]`: three branches of label `q` from vertex 0.
fn star(q: u32) -> CoxeterMatrix {
    CoxeterMatrix::new([[1, q, q, q], [q, 1, 2, 2], [q, 2, 1, 2], [q, 2, 2, 1]]).unwrap()
}

static REGISTRY: Lazy<Vec<RegistryEntry>> = Lazy::new(|| {
    let k4_minus_edge =
        CoxeterMatrix::new([[1, 2, 3, 3], [2, 1, 3, 3], [3, 3, 1, 3], [3, 3, 3, 1]]).unwrap();
    let k4 = CoxeterMatrix::new([[1, 3, 3, 3], [3, 1, 3, 3], [3, 3, 1, 3], [3, 3, 3, 1]]).unwrap();
    vec![
        // Cocompact (no ideal vertices).
        RegistryEntry {
            name: "[4,3,5]",
            matrix: chain(4, 3, 5),
        },
        RegistryEntry {
            name: "[3,5,3]",
            matrix: chain(3, 5, 3),
        },
        RegistryEntry {
            name: "[5,3^{1,1}]",
            matrix: fork(5, 3),
        },
        RegistryEntry {
            name: "[(3^3,4)]",
            matrix: cycle(3, 3, 3, 4),
        },
        RegistryEntry {
            name: "[5,3,5]",
            matrix: chain(5, 3, 5),
        },
        RegistryEntry {
            name: "[(3^3,5)]",
            matrix: cycle(3, 3, 3, 5),
        },
        RegistryEntry {
            name: "[(3,4)^[2]]",
            matrix: cycle(3, 4, 3, 4),
        },
        RegistryEntry {
            name: "[(3,4,3,5)]",
            matrix: cycle(3, 4, 3, 5),
        },
        RegistryEntry {
            name: "[(3,5)^[2]]",
            matrix: cycle(3, 5, 3, 5),
        },
        // One ideal vertex.
        RegistryEntry {
            name: "[5,3^[3]]",
            matrix: tail_triangle(5),
        },
        RegistryEntry {
            name: "[5,3,6]",
            matrix: chain(5, 3, 6),
        },
        RegistryEntry {
            name: "[(3^2,4^2)]",
            matrix: cycle(3, 3, 4, 4),
        },
        RegistryEntry {
            name: "[4,3^[3]]",
            matrix: tail_triangle(4),
        },
        RegistryEntry {
            name: "[3,3^[3]]",
            matrix: tail_triangle(3),
        },
        RegistryEntry {
            name: "[3,4^{1,1}]",
            matrix: fork(3, 4),
        },
        RegistryEntry {
            name: "[4,3,6]",
            matrix: chain(4, 3, 6),
        },
        RegistryEntry {
            name: "[3,3,6]",
            matrix: chain(3, 3, 6),
        },
        RegistryEntry {
            name: "[3,4,4]",
            matrix: chain(3, 4, 4),
        },
        // Two ideal vertices.
        RegistryEntry {
            name: "[(3,5,3,6)]",
            matrix: cycle(3, 5, 3, 6),
        },
        RegistryEntry {
            name: "[(3,4^3)]",
            matrix: cycle(3, 4, 4, 4),
        },
        RegistryEntry {
            name: "[(3,4,3,6)]",
            matrix: cycle(3, 4, 3, 6),
        },
        RegistryEntry {
            name: "[(3^3,6)]",
            matrix: cycle(3, 3, 3, 6),
        },
        RegistryEntry {
            name: "[3^[3,3]]",
            matrix: k4_minus_edge,
        },
        RegistryEntry {
            name: "[6,3^{1,1}]",
            matrix: fork(6, 3),
        },
        RegistryEntry {
            name: "[3,6,3]",
            matrix: chain(3, 6, 3),
        },
        RegistryEntry {
            name: "[6,3,6]",
            matrix: chain(6, 3, 6),
        },
        RegistryEntry {
            name: "[4,4,4]",
            matrix: chain(4, 4, 4),
        },
        // Three ideal vertices.
        RegistryEntry {
            name: "[6,3^[3]]",
            matrix: tail_triangle(6),
        },
        RegistryEntry {
            name: "[4^{1,1,1}]",
            matrix: star(4),
        },
        // Four ideal vertices.
        RegistryEntry {
            name: "[3^[]x[]]",
            matrix: k4,
        },
        RegistryEntry {
            name: "[4^[4]]",
            matrix: cycle(4, 4, 4, 4),
        },
        RegistryEntry {
            name: "[(3,6)^[2]]",
            matrix: cycle(3, 6, 3, 6),
        },
    ]
});

/// All 32 registered diagrams in catalog order.
pub fn registry() -> &'static [RegistryEntry] {
    &REGISTRY
}

/// Normalize a diagram name for lookup: drop braces and whitespace, so TeX
/// superscript spellings like `[(3,5)^{[2]}]` match `[(3,5)^[2]]`.
fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace() && *c != '{' && *c != '}')
        .collect()
}

/// Find a registered diagram by (alias-normalized) name.
pub fn registry_lookup(name: &str) -> Option<&'static RegistryEntry> {
    let key = normalize_name(name);
    REGISTRY.iter().find(|e| normalize_name(e.name) == key)
}

/// Parse diagram input: a registry name, chain notation `[p,q,r]`, cycle
/// notation `[(a,b,c,d)]`, or a raw matrix (`rank 4` followed by four rows
/// of four labels).
pub fn parse_diagram(input: &str) -> Result<CoxeterDiagram, DiagramError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(DiagramError::UnknownName(String::new()));
    }
    if trimmed.starts_with("rank") {
        return parse_raw_matrix(trimmed);
    }
    if let Some(entry) = registry_lookup(trimmed) {
        return Ok(CoxeterDiagram {
            name: Some(entry.name.to_string()),
            matrix: entry.matrix,
        });
    }
    if trimmed.contains('∞') || trimmed.to_ascii_lowercase().contains("inf") {
        return Err(DiagramError::MalformedNotation(
            "infinite labels are not supported".to_string(),
        ));
    }
    if let Some(inner) = trimmed
        .strip_prefix("[(")
        .and_then(|s| s.strip_suffix(")]"))
    {
        if let Some(labels) = parse_label_list(inner, 4) {
            let matrix = CoxeterMatrix::new([
                [1, labels[0], 2, labels[3]],
                [labels[0], 1, labels[1], 2],
                [2, labels[1], 1, labels[2]],
                [labels[3], 2, labels[2], 1],
            ])?;
            return Ok(CoxeterDiagram { name: None, matrix });
        }
    }
    if let Some(inner) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        if let Some(labels) = parse_label_list(inner, 3) {
            let matrix = CoxeterMatrix::new([
                [1, labels[0], 2, 2],
                [labels[0], 1, labels[1], 2],
                [2, labels[1], 1, labels[2]],
                [2, 2, labels[2], 1],
            ])?;
            return Ok(CoxeterDiagram { name: None, matrix });
        }
        // Bracketed but not parseable as labels: treat as an unknown name.
        return Err(DiagramError::UnknownName(trimmed.to_string()));
    }
    Err(DiagramError::MalformedNotation(trimmed.to_string()))
}

fn parse_label_list(inner: &str, expect: usize) -> Option<Vec<u32>> {
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != expect {
        return None;
    }
    parts.iter().map(|p| p.parse::<u32>().ok()).collect()
}

fn parse_raw_matrix(input: &str) -> Result<CoxeterDiagram, DiagramError> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().unwrap_or_default();
    let rank: usize = header
        .strip_prefix("rank")
        .map(str::trim)
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| DiagramError::MalformedNotation(format!("bad header {header:?}")))?;
    if rank != 4 {
        return Err(DiagramError::MalformedNotation(format!(
            "only rank 4 is supported, found rank {rank}"
        )));
    }
    let mut m = [[0u32; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        let line = lines.next().ok_or_else(|| {
            DiagramError::MalformedNotation(format!("missing matrix row {}", i + 1))
        })?;
        if line.contains('∞') || line.to_ascii_lowercase().contains("inf") {
            return Err(DiagramError::MalformedNotation(
                "infinite labels are not supported".to_string(),
            ));
        }
        let entries: Vec<u32> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| DiagramError::MalformedNotation(format!("bad entry {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        if entries.len() != 4 {
            return Err(DiagramError::MalformedNotation(format!(
                "matrix row {} has {} entries, expected 4",
                i + 1,
                entries.len()
            )));
        }
        row.copy_from_slice(&entries);
    }
    let matrix = CoxeterMatrix::new(m)?;
    // A raw matrix may coincide with a registered diagram; recover the name.
    let name = REGISTRY
        .iter()
        .find(|e| e.matrix == matrix)
        .map(|e| e.name.to_string());
    Ok(CoxeterDiagram { name, matrix })
}
