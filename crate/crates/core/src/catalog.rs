//! The bundled reference tables for the 32 tetrahedral groups, and
//! verification of the computation pipeline against them.
//!
//! The tables live in `data/golden.txt`, one line per group:
//!
//! ```text
//! name | stabilizers | cusps | Km1 | K0t | Wh
//! ```
//!
//! Lists are comma-separated with `(twice)` / `(3 times)` / `(4 times)`
//! multiplicity suffixes and `-` for the empty list; the K-columns use
//! [`KValue`] notation and are stored in normalized form. [`verify_all`]
//! recomputes everything from the Coxeter matrices and diffs the results
//! against these tables; mismatches are report content, not errors.

use crate::assembly::{assemble, KTheoryResult};
use crate::coxeter::{
    registry_lookup, vertex_profile, CoxeterDiagram, CoxeterMatrix, DiagramError,
};
use crate::kvalue::KValue;
use crate::stabilizers::{cusp_groups, enumerate_type1, parse_descriptor};
use once_cell::sync::Lazy;

const GOLDEN: &str = include_str!("../data/golden.txt");

/// One reference row: a registered group plus its expected invariants.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub matrix: CoxeterMatrix,
    /// Number of ideal vertices (0–4), derived from the matrix.
    pub ideal_vertices: usize,
    /// Expected axis stabilizer renderings, expanded to a sorted multiset.
    pub expected_stabilizers: Vec<String>,
    /// Expected cusp group names, expanded to a sorted multiset.
    pub expected_cusps: Vec<String>,
    /// Expected K-groups in normalized form; the `k_below` degree is zero
    /// for every group.
    pub expected_k: KTheoryResult,
    /// The stabilizer column as written: `(item, multiplicity)` pairs.
    stabilizer_items: Vec<(String, usize)>,
    /// The cusp column as written.
    cusp_items: Vec<(String, usize)>,
}

impl CatalogEntry {
    /// The diagram for this entry, carrying its registry name.
    pub fn diagram(&self) -> CoxeterDiagram {
        CoxeterDiagram {
            name: Some(self.name.clone()),
            matrix: self.matrix,
        }
    }

    /// The stabilizer column as written in the reference file.
    pub fn stabilizer_column(&self) -> String {
        render_items(&self.stabilizer_items)
    }

    /// The cusp column as written in the reference file.
    pub fn cusp_column(&self) -> String {
        render_items(&self.cusp_items)
    }

    /// Reproduce the golden-file line for this entry.
    pub fn render_line(&self) -> String {
        format!(
            "{} | {} | {} | {} | {} | {}",
            self.name,
            render_items(&self.stabilizer_items),
            render_items(&self.cusp_items),
            self.expected_k.k_minus1.render(),
            self.expected_k.k0_tilde.render(),
            self.expected_k.wh.render(),
        )
    }
}

/// Split a list column on commas that are not nested inside brackets
/// (cusp names like `[3,6]` contain commas of their own).
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '(' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    let last = cur.trim();
    if !last.is_empty() {
        out.push(last.to_string());
    }
    out
}

fn parse_item(item: &str) -> (String, usize) {
    for (suffix, n) in [(" (twice)", 2), (" (3 times)", 3), (" (4 times)", 4)] {
        if let Some(base) = item.strip_suffix(suffix) {
            return (base.trim().to_string(), n);
        }
    }
    (item.to_string(), 1)
}

fn render_items(items: &[(String, usize)]) -> String {
    if items.is_empty() {
        return "-".to_string();
    }
    items
        .iter()
        .map(|(base, n)| match n {
            1 => base.clone(),
            2 => format!("{base} (twice)"),
            n => format!("{base} ({n} times)"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_list(column: &str) -> Vec<(String, usize)> {
    if column == "-" {
        return Vec::new();
    }
    split_top_level(column)
        .iter()
        .map(|item| parse_item(item))
        .collect()
}

fn expand(items: &[(String, usize)]) -> Vec<String> {
    let mut out: Vec<String> = items
        .iter()
        .flat_map(|(base, n)| std::iter::repeat(base.clone()).take(*n))
        .collect();
    out.sort();
    out
}

fn parse_line(line: &str) -> CatalogEntry {
    let cols: Vec<&str> = line.split('|').map(str::trim).collect();
    assert_eq!(cols.len(), 6, "malformed reference line: {line:?}");
    let reg = registry_lookup(cols[0])
        .unwrap_or_else(|| panic!("reference line names unregistered group {:?}", cols[0]));
    let stabilizer_items = parse_list(cols[1]);
    for (base, _) in &stabilizer_items {
        parse_descriptor(base)
            .unwrap_or_else(|| panic!("unparseable stabilizer {base:?} in line {line:?}"));
    }
    let cusp_items = parse_list(cols[2]);
    for (base, _) in &cusp_items {
        assert!(
            matches!(base.as_str(), "[3^[3]]" | "[4,4]" | "[3,6]"),
            "unknown cusp group {base:?} in line {line:?}"
        );
    }
    let expected_k = KTheoryResult {
        wh: KValue::parse(cols[5]).expect("Wh column"),
        k0_tilde: KValue::parse(cols[4]).expect("K0t column"),
        k_minus1: KValue::parse(cols[3]).expect("Km1 column"),
        k_below: KValue::zero(),
    };
    let diagram = CoxeterDiagram {
        name: Some(reg.name.to_string()),
        matrix: reg.matrix,
    };
    let ideal_vertices = vertex_profile(&diagram)
        .unwrap_or_else(|e| panic!("registered diagram {:?} failed to classify: {e}", reg.name))
        .ideal_count();
    CatalogEntry {
        name: reg.name.to_string(),
        matrix: reg.matrix,
        ideal_vertices,
        expected_stabilizers: expand(&stabilizer_items),
        expected_cusps: expand(&cusp_items),
        expected_k,
        stabilizer_items,
        cusp_items,
    }
}

static ENTRIES: Lazy<Vec<CatalogEntry>> = Lazy::new(|| {
    GOLDEN
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_line)
        .collect()
});

/// All 32 reference entries, in table order (sorted by ideal vertex count).
pub fn entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

/// Find a reference entry by group name (accepting the same aliases as
/// [`registry_lookup`]). Unknown or empty names produce
/// [`DiagramError::UnknownName`].
pub fn lookup(name: &str) -> Result<&'static CatalogEntry, DiagramError> {
    registry_lookup(name)
        .and_then(|reg| ENTRIES.iter().find(|e| e.name == reg.name))
        .ok_or_else(|| DiagramError::UnknownName(name.to_string()))
}

/// The outcome of re-deriving one entry: either everything matched, or a
/// description of the first mismatch.
#[derive(Clone, Debug)]
pub struct EntryOutcome {
    pub name: String,
    pub passed: bool,
    /// First discrepancy found, as `column: expected …, computed …`.
    pub mismatch: Option<String>,
}

/// The outcome of re-deriving every entry.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub outcomes: Vec<EntryOutcome>,
}

impl VerifyReport {
    pub fn total(&self) -> usize {
        self.outcomes.len()
    }

    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }

    pub fn failures(&self) -> Vec<&EntryOutcome> {
        self.outcomes.iter().filter(|o| !o.passed).collect()
    }
}

/// Recompute stabilizers, cusps, and K-groups for one entry and diff them
/// against the reference values. Returns the first mismatch, if any;
/// computation errors are reported the same way.
pub fn verify_entry(entry: &CatalogEntry) -> Option<String> {
    let d = entry.diagram();

    match enumerate_type1(&d) {
        Ok(descs) => {
            let mut got: Vec<String> = descs.iter().map(|s| s.render()).collect();
            got.sort();
            if got != entry.expected_stabilizers {
                return Some(format!(
                    "stabilizers: expected [{}], computed [{}]",
                    entry.expected_stabilizers.join("; "),
                    got.join("; ")
                ));
            }
        }
        Err(e) => return Some(format!("stabilizers: computation failed: {e}")),
    }

    match cusp_groups(&d) {
        Ok(cusps) => {
            let mut got: Vec<String> = cusps.iter().map(|c| c.render().to_string()).collect();
            got.sort();
            if got != entry.expected_cusps {
                return Some(format!(
                    "cusps: expected [{}], computed [{}]",
                    entry.expected_cusps.join("; "),
                    got.join("; ")
                ));
            }
        }
        Err(e) => return Some(format!("cusps: computation failed: {e}")),
    }

    match assemble(&d) {
        Ok(result) => {
            let got = result.normalized();
            let columns = [
                ("Km1", &got.k_minus1, &entry.expected_k.k_minus1),
                ("K0t", &got.k0_tilde, &entry.expected_k.k0_tilde),
                ("Wh", &got.wh, &entry.expected_k.wh),
            ];
            for (label, computed, expected) in columns {
                if computed != expected {
                    return Some(format!(
                        "{label}: expected {}, computed {}",
                        expected.render(),
                        computed.render()
                    ));
                }
            }
            if !got.k_below.is_zero() {
                return Some(format!(
                    "K<=-2: expected 0, computed {}",
                    got.k_below.render()
                ));
            }
        }
        Err(e) => return Some(format!("assembly: computation failed: {e}")),
    }

    None
}

/// Re-derive every entry from its Coxeter matrix and diff against the
/// reference tables.
pub fn verify_all() -> VerifyReport {
    let outcomes = entries()
        .iter()
        .map(|entry| {
            let mismatch = verify_entry(entry);
            EntryOutcome {
                name: entry.name.clone(),
                passed: mismatch.is_none(),
                mismatch,
            }
        })
        .collect();
    VerifyReport { outcomes }
}
