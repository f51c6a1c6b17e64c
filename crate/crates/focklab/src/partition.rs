//! Partitions, charged partitions, box coordinates, residues and the
//! addable/removable/rim-hook combinatorics driving the algebra actions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An integer partition: a weakly decreasing list of positive parts.
/// The empty partition is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates weak decrease; trailing zeros are trimmed.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// λ_i with 1-based i; zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// |λ|, the number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Corners that can be added while keeping a partition shape, top row
    /// first (i.e. by decreasing content).
    pub fn addable_cells(&self) -> Vec<BoxCoord> {
        let mut out = Vec::new();
        for r in 1..=(self.len() + 1) {
            let here = self.part(r);
            let above = if r == 1 { u32::MAX } else { self.part(r - 1) };
            if above > here {
                out.push(BoxCoord::new(r as u32, here + 1));
            }
        }
        out
    }

    /// Corners that can be removed while keeping a partition shape, top row
    /// first.
    pub fn removable_cells(&self) -> Vec<BoxCoord> {
        let mut out = Vec::new();
        for r in 1..=self.len() {
            if self.part(r) > self.part(r + 1) {
                out.push(BoxCoord::new(r as u32, self.part(r)));
            }
        }
        out
    }

    pub fn with_cell_added(&self, b: BoxCoord) -> Result<Partition, Error> {
        let mut parts = self.parts.clone();
        let r = b.row as usize;
        if r == self.len() + 1 {
            parts.push(0);
        }
        if r > parts.len() || parts[r - 1] + 1 != b.col {
            return Err(Error::InvalidPartition(format!("cell {b} is not addable")));
        }
        parts[r - 1] += 1;
        Partition::new(parts)
    }

    pub fn with_cell_removed(&self, b: BoxCoord) -> Result<Partition, Error> {
        let mut parts = self.parts.clone();
        let r = b.row as usize;
        if r > parts.len() || parts[r - 1] != b.col {
            return Err(Error::InvalidPartition(format!(
                "cell {b} is not removable"
            )));
        }
        parts[r - 1] -= 1;
        Partition::new(parts)
    }

    /// All partitions of exactly `n`, in lexicographically decreasing order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            let hi = remaining.min(max_part);
            for p in (1..=hi).rev() {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with |λ| ≤ n.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

/// A partition together with an integer charge. This is the canonical index
/// for the standard basis; the ket for `(λ, h)` is written `|λ;h>`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChargedPartition {
    pub lambda: Partition,
    pub charge: i64,
}

impl ChargedPartition {
    pub fn new(lambda: Partition, charge: i64) -> Self {
        ChargedPartition { lambda, charge }
    }

    pub fn vacuum(charge: i64) -> Self {
        ChargedPartition {
            lambda: Partition::empty(),
            charge,
        }
    }

    pub fn from_parts(parts: &[u32], charge: i64) -> Result<Self, Error> {
        Ok(ChargedPartition {
            lambda: Partition::new(parts.to_vec())?,
            charge,
        })
    }

    pub fn size(&self) -> u64 {
        self.lambda.size()
    }

    /// The horizontal position of a box: charge + content. Positions grow
    /// toward the upper-left of the diagram, matching bead positions.
    pub fn horizontal_position(&self, b: BoxCoord) -> i64 {
        self.charge + b.content()
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.lambda, self.charge)
    }
}

impl fmt::Debug for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ChargedPartition {
    type Err = Error;

    /// Accepts "(4,3,3,1,1);-1" and "();0".
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (lam, chg) = s
            .rsplit_once(';')
            .ok_or_else(|| Error::Invalid(format!("state must look like (2,1);0 — got {s:?}")))?;
        let lam = lam.trim();
        let inner = lam
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Invalid(format!("partition must be parenthesized: {lam:?}")))?;
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let p: u32 = tok
                .parse()
                .map_err(|_| Error::Invalid(format!("bad part {tok:?} in {s:?}")))?;
            parts.push(p);
        }
        let charge: i64 = chg
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad charge {chg:?} in {s:?}")))?;
        Ok(ChargedPartition {
            lambda: Partition::new(parts)?,
            charge,
        })
    }
}

/// A box in row r, column c (both 1-based). Rows grow downward in matrix
/// convention; the content c - r grows along rows.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BoxCoord {
    pub row: u32,
    pub col: u32,
}

impl BoxCoord {
    pub fn new(row: u32, col: u32) -> Self {
        assert!(row >= 1 && col >= 1, "box coordinates are 1-based");
        BoxCoord { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for BoxCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A residue mod the level ℓ, in [0, ℓ).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Color(pub u32);

impl Color {
    pub fn residue(&self) -> u32 {
        self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// Color of a box for charge h and level ℓ: (h + col - row) mod ℓ, i.e. the
/// horizontal position of the box reduced mod ℓ.
pub fn box_color(charge: i64, b: BoxCoord, level: u32) -> Color {
    assert!(level >= 1, "level must be at least 1");
    Color((charge + b.content()).rem_euclid(level as i64) as u32)
}

/// Addable boxes of the given color, sorted by decreasing content.
pub fn addable_boxes(cp: &ChargedPartition, color: Color, level: u32) -> Vec<BoxCoord> {
    cp.lambda
        .addable_cells()
        .into_iter()
        .filter(|&b| box_color(cp.charge, b, level) == color)
        .collect()
}

/// Removable boxes of the given color, sorted by decreasing content.
pub fn removable_boxes(cp: &ChargedPartition, color: Color, level: u32) -> Vec<BoxCoord> {
    cp.lambda
        .removable_cells()
        .into_iter()
        .filter(|&b| box_color(cp.charge, b, level) == color)
        .collect()
}

/// One way of removing a connected rim hook.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RibbonRemoval {
    pub remaining: Partition,
    /// Number of rows the hook touches; the Murnaghan-Nakayama sign is
    /// (-1)^(rows_spanned - 1).
    pub rows_spanned: u32,
}

/// All ways of removing a connected rim hook of k boxes from λ.
///
/// A hook spanning rows a..=b leaves μ_i = λ_{i+1} - 1 for a ≤ i < b and
/// μ_b = λ_a + (b - a) - k; every hook arises this way for exactly one pair
/// (a, b). Results are ordered by (a, b) scan order.
pub fn ribbon_removals(lambda: &Partition, k: u32) -> Vec<RibbonRemoval> {
    assert!(k >= 1);
    let n = lambda.len();
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            let tail = lambda.part(a) as i64 + (b as i64 - a as i64) - k as i64;
            if tail < lambda.part(b + 1) as i64 || tail >= lambda.part(b) as i64 {
                continue;
            }
            let mut parts: Vec<u32> = Vec::with_capacity(n);
            for i in 1..=n {
                let v = if i < a || i > b {
                    lambda.part(i) as i64
                } else if i < b {
                    lambda.part(i + 1) as i64 - 1
                } else {
                    tail
                };
                debug_assert!(v >= 0);
                parts.push(v as u32);
            }
            match Partition::new(parts) {
                Ok(remaining) => out.push(RibbonRemoval {
                    remaining,
                    rows_spanned: (b - a + 1) as u32,
                }),
                Err(_) => continue,
            }
        }
    }
    out
}
