//! Formal values of lower K-groups.
//!
//! Every K-group that occurs in this project is a direct sum of five kinds of
//! summands: a free abelian part `Z^a`, finite cyclic summands of order 2 or 4,
//! copies of the countable sum `⊕_∞ Z/2`, and copies of the two Bass Nil-groups
//! `Nil_0 = NK_0(Z[D_4])` and `Nil_1 = NK_1(Z[D_4])`. A [`KValue`] records the
//! multiplicity of each, and addition of K-values is componentwise.
//!
//! The Nil-groups are treated as opaque nonzero symbols: the only facts used
//! about them are recorded in [`NIL_FACTS`].

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign};

/// Documentation-only facts about the Nil summands; nothing is computed from
/// these. The order of every element of either group divides 8, and `Nil_0`
/// is infinitely generated.
pub const NIL_FACTS: &str =
    "Nil_0 = NK_0(Z[D_4]) and Nil_1 = NK_1(Z[D_4]) are infinitely generated; \
     the order of every element divides 8.";

/// A formal direct sum `Z^free ⊕ (⊕ Z/t_i) ⊕ inf_z2·(⊕_∞ Z/2) ⊕ nil0·Nil_0 ⊕ nil1·Nil_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct KValue {
    /// Rank of the free abelian part.
    #[serde(rename = "free")]
    pub free_rank: u32,
    /// Orders of the finite cyclic summands, each 2 or 4, kept sorted.
    pub torsion: Vec<u8>,
    /// Number of copies of the countable sum `⊕_∞ Z/2`.
    #[serde(rename = "inf_z2")]
    pub inf_z2_count: u32,
    /// Number of copies of `Nil_0`.
    #[serde(rename = "nil0")]
    pub nil0_count: u32,
    /// Number of copies of `Nil_1`.
    #[serde(rename = "nil1")]
    pub nil1_count: u32,
}

/// Error for unparseable K-value notation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed K-value notation: {0:?}")]
pub struct KValueParseError(pub String);

impl KValue {
    /// The zero value.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Z^n`.
    pub fn free(n: u32) -> Self {
        Self {
            free_rank: n,
            ..Self::default()
        }
    }

    /// `(Z/order)^count` with `order` 2 or 4.
    pub fn torsion(order: u8, count: usize) -> Self {
        assert!(order == 2 || order == 4, "only Z/2 and Z/4 torsion occurs");
        Self {
            torsion: vec![order; count],
            ..Self::default()
        }
    }

    /// A single copy of `⊕_∞ Z/2`.
    pub fn inf_z2() -> Self {
        Self {
            inf_z2_count: 1,
            ..Self::default()
        }
    }

    /// A single copy of `Nil_0`.
    pub fn nil0() -> Self {
        Self {
            nil0_count: 1,
            ..Self::default()
        }
    }

    /// A single copy of `Nil_1`.
    pub fn nil1() -> Self {
        Self {
            nil1_count: 1,
            ..Self::default()
        }
    }

    /// True iff every component is zero.
    pub fn is_zero(&self) -> bool {
        *self == Self::default()
    }

    /// Number of `Z/order` summands.
    pub fn torsion_count(&self, order: u8) -> usize {
        self.torsion.iter().filter(|&&t| t == order).count()
    }

    /// Collapse to the normalized form used by the reference tables:
    /// multiplicities of `⊕_∞ Z/2`, `Nil_0`, `Nil_1` are capped at one, and
    /// finite `Z/2` summands are absorbed into `⊕_∞ Z/2` when one is present
    /// (`Z/4` summands are never absorbed).
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        out.inf_z2_count = out.inf_z2_count.min(1);
        out.nil0_count = out.nil0_count.min(1);
        out.nil1_count = out.nil1_count.min(1);
        if out.inf_z2_count > 0 {
            out.torsion.retain(|&t| t != 2);
        }
        out
    }

    /// Render in the notation used throughout the CLI and the golden data
    /// files: terms `Z^a`, `(Z/2)^b`, `(Z/4)^c`, `infZ2`, `Nil0`, `Nil1`
    /// joined by ` + `, omitting zero terms; the zero value renders as `0`.
    /// Multiplicities ≥ 2 of the last three render with a `^count` suffix.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let power = |base: &str, n: u32| -> String {
            if n == 1 {
                base.to_string()
            } else {
                format!("{base}^{n}")
            }
        };
        if self.free_rank > 0 {
            parts.push(power("Z", self.free_rank));
        }
        let z2 = self.torsion_count(2) as u32;
        if z2 == 1 {
            parts.push("Z/2".to_string());
        } else if z2 > 1 {
            parts.push(format!("(Z/2)^{z2}"));
        }
        let z4 = self.torsion_count(4) as u32;
        if z4 == 1 {
            parts.push("Z/4".to_string());
        } else if z4 > 1 {
            parts.push(format!("(Z/4)^{z4}"));
        }
        if self.inf_z2_count > 0 {
            parts.push(power("infZ2", self.inf_z2_count));
        }
        if self.nil0_count > 0 {
            parts.push(power("Nil0", self.nil0_count));
        }
        if self.nil1_count > 0 {
            parts.push(power("Nil1", self.nil1_count));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Inverse of [`render`](Self::render). Accepts `Z`, `Z^a`, `Z/2`,
    /// `(Z/2)^b`, `Z/4`, `(Z/4)^c`, `infZ2[^n]`, `Nil0[^n]`, `Nil1[^n]`
    /// joined by `+`, or `0`.
    pub fn parse(input: &str) -> Result<Self, KValueParseError> {
        let trimmed = input.trim();
        if trimmed == "0" || trimmed == "-" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for raw_term in trimmed.split('+') {
            let term = raw_term.trim();
            if term.is_empty() {
                return Err(KValueParseError(input.to_string()));
            }
            let (base, count) = match term.split_once('^') {
                Some((b, e)) => {
                    let n: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| KValueParseError(input.to_string()))?;
                    (b.trim(), n)
                }
                None => (term, 1),
            };
            let base = base.trim_start_matches('(').trim_end_matches(')');
            match base {
                "Z" => out.free_rank += count,
                "Z/2" => out
                    .torsion
                    .extend(std::iter::repeat(2).take(count as usize)),
                "Z/4" => out
                    .torsion
                    .extend(std::iter::repeat(4).take(count as usize)),
                "infZ2" => out.inf_z2_count += count,
                "Nil0" => out.nil0_count += count,
                "Nil1" => out.nil1_count += count,
                _ => return Err(KValueParseError(input.to_string())),
            }
        }
        out.torsion.sort_unstable();
        Ok(out)
    }
}

impl Add for KValue {
    type Output = KValue;
    fn add(mut self, rhs: KValue) -> KValue {
        self += rhs;
        self
    }
}

impl AddAssign for KValue {
    fn add_assign(&mut self, rhs: KValue) {
        self.free_rank += rhs.free_rank;
        self.torsion.extend(rhs.torsion);
        self.torsion.sort_unstable();
        self.inf_z2_count += rhs.inf_z2_count;
        self.nil0_count += rhs.nil0_count;
        self.nil1_count += rhs.nil1_count;
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_renders_and_parses() {
        assert_eq!(KValue::zero().render(), "0");
        assert_eq!(KValue::parse("0").unwrap(), KValue::zero());
        assert!(KValue::zero().is_zero());
    }

    #[test]
    fn addition_is_componentwise() {
        let a = KValue::free(2) + KValue::torsion(4, 1) + KValue::inf_z2();
        let b = KValue::free(1) + KValue::torsion(2, 2) + KValue::nil1();
        let sum = a + b;
        assert_eq!(sum.free_rank, 3);
        assert_eq!(sum.torsion, vec![2, 2, 4]);
        assert_eq!(sum.inf_z2_count, 1);
        assert_eq!(sum.nil1_count, 1);
    }

    #[test]
    fn render_round_trips() {
        let samples = [
            KValue::zero(),
            KValue::free(1),
            KValue::free(6) + KValue::inf_z2(),
            KValue::torsion(4, 2) + KValue::inf_z2() + KValue::nil0(),
            KValue::torsion(2, 4),
            KValue::free(3) + KValue::torsion(2, 1) + KValue::torsion(4, 3) + KValue::nil1(),
            KValue {
                inf_z2_count: 3,
                ..KValue::zero()
            },
        ];
        for kv in samples {
            let rendered = kv.render();
            assert_eq!(
                KValue::parse(&rendered).unwrap(),
                kv,
                "render was {rendered:?}"
            );
        }
    }

    #[test]
    fn parse_accepts_singular_forms() {
        assert_eq!(KValue::parse("Z").unwrap(), KValue::free(1));
        assert_eq!(KValue::parse("Z/2").unwrap(), KValue::torsion(2, 1));
        assert_eq!(
            KValue::parse("(Z/4)^2 + infZ2").unwrap(),
            KValue::torsion(4, 2) + KValue::inf_z2()
        );
        assert!(KValue::parse("Z/3").is_err());
        assert!(KValue::parse("").is_err());
    }

    #[test]
    fn normalization_collapses_counts_and_absorbs_z2() {
        let exact = KValue::free(2)
            + KValue::torsion(2, 2)
            + KValue::torsion(4, 2)
            + KValue {
                inf_z2_count: 3,
                nil0_count: 2,
                ..KValue::zero()
            };
        let normal = exact.normalized();
        assert_eq!(normal.free_rank, 2);
        assert_eq!(normal.torsion, vec![4, 4], "Z/2 absorbed, Z/4 kept");
        assert_eq!(normal.inf_z2_count, 1);
        assert_eq!(normal.nil0_count, 1);
    }

    #[test]
    fn normalization_keeps_z2_without_infinite_part() {
        let exact = KValue::torsion(2, 4);
        assert_eq!(exact.normalized(), exact);
    }

    #[test]
    fn json_schema_field_names() {
        let kv = KValue::free(1) + KValue::torsion(2, 1) + KValue::torsion(4, 1);
        let json = serde_json::to_value(&kv).unwrap();
        assert_eq!(json["free"], 1);
        assert_eq!(json["torsion"], serde_json::json!([2, 4]));
        assert_eq!(json["inf_z2"], 0);
        assert_eq!(json["nil0"], 0);
        assert_eq!(json["nil1"], 0);
    }
}
