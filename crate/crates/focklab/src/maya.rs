//! Maya diagrams and wedge indexings as views of charged partitions.
//!
//! Positions live in Z + 1/2 and increase to the left of the diagram; all but
//! finitely many positions m < 0 carry a black bead and all but finitely many
//! m > 0 a white one. The bead positions of `(λ, h)` are
//! m_i = h - i + λ_i + 1/2 for i = 1, 2, ..., strictly decreasing and
//! eventually consecutive.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::halfint::HalfInt;
use crate::partition::{ChargedPartition, Partition};

/// A finite description of a Maya diagram: everything strictly below
/// `window_lo` is black, everything above the listed beads is white.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "MayaSpecRaw", into = "MayaSpecRaw")]
pub struct MayaSpec {
    window_lo: HalfInt,
    blacks: BTreeSet<HalfInt>,
}

/// Wire form with doubled positions.
#[derive(Serialize, Deserialize)]
struct MayaSpecRaw {
    window_lo: i64,
    blacks: Vec<i64>,
}

impl TryFrom<MayaSpecRaw> for MayaSpec {
    type Error = Error;
    fn try_from(raw: MayaSpecRaw) -> Result<Self, Error> {
        let window_lo = HalfInt::try_from_twice(raw.window_lo)?;
        let blacks = raw
            .blacks
            .into_iter()
            .map(HalfInt::try_from_twice)
            .collect::<Result<BTreeSet<_>, _>>()?;
        MayaSpec::new(window_lo, blacks)
    }
}

impl From<MayaSpec> for MayaSpecRaw {
    fn from(m: MayaSpec) -> MayaSpecRaw {
        MayaSpecRaw {
            window_lo: m.window_lo.twice(),
            blacks: m.blacks.iter().map(|b| b.twice()).collect(),
        }
    }
}

impl MayaSpec {
    /// Rejects beads listed below the window.
    pub fn new(window_lo: HalfInt, blacks: BTreeSet<HalfInt>) -> Result<Self, Error> {
        if let Some(&lowest) = blacks.iter().next() {
            if lowest < window_lo {
                return Err(Error::MalformedMaya(format!(
                    "bead {lowest} listed below window start {window_lo}"
                )));
            }
        }
        Ok(MayaSpec { window_lo, blacks })
    }

    pub fn window_lo(&self) -> HalfInt {
        self.window_lo
    }

    pub fn blacks(&self) -> &BTreeSet<HalfInt> {
        &self.blacks
    }
}

/// The first n bead positions of `(λ, h)`: m_i = h - i + λ_i + 1/2.
pub fn black_positions(cp: &ChargedPartition, n: usize) -> Vec<HalfInt> {
    assert!(n >= 1);
    (1..=n)
        .map(|i| HalfInt::from_twice(2 * (cp.charge - i as i64 + cp.lambda.part(i) as i64) + 1))
        .collect()
}

/// Is position p a bead of cp? Runs in O(len λ).
pub fn is_black(cp: &ChargedPartition, p: HalfInt) -> bool {
    // Shift to t = p - h - 1/2; beads sit at t = λ_i - i.
    let t = (p.twice() - 2 * cp.charge - 1) / 2;
    let len = cp.lambda.len() as i64;
    if t < -len {
        return true;
    }
    (1..=cp.lambda.len()).any(|i| cp.lambda.part(i) as i64 - i as i64 == t)
}

/// Number of beads strictly above position p. Always finite.
pub fn blacks_above(cp: &ChargedPartition, p: HalfInt) -> u64 {
    let t = (p.twice() - 2 * cp.charge - 1) / 2;
    let len = cp.lambda.len() as i64;
    let listed = (1..=cp.lambda.len())
        .filter(|&i| cp.lambda.part(i) as i64 - i as i64 > t)
        .count() as i64;
    // Beads in the consecutive tail sit at t = -i for i > len.
    let tail = (-t - 1 - len).max(0);
    (listed + tail) as u64
}

/// Recovers the charged partition from a Maya window. Inverse of
/// `black_positions`: the charge is #{beads above 0} - #{gaps below 0}.
pub fn maya_to_partition(m: &MayaSpec) -> Result<ChargedPartition, Error> {
    let w = m.window_lo;
    // Beads above 0: listed positive ones plus any implicit positions in (0, w).
    let implicit_pos = if w.twice() > 0 {
        (w.twice() - 1) / 2
    } else {
        0
    };
    let blacks_pos = m.blacks.iter().filter(|b| b.is_positive()).count() as i64 + implicit_pos;
    // Gaps below 0 can only occur in [w, 0).
    let slots_below = if w.twice() < 0 {
        (1 - w.twice()) / 2
    } else {
        0
    };
    let blacks_below = m.blacks.iter().filter(|b| b.is_negative()).count() as i64;
    let whites_neg = slots_below - blacks_below;
    let charge = blacks_pos - whites_neg;

    let mut beads: Vec<HalfInt> = m.blacks.iter().rev().copied().collect();
    // One implicit bead pins down the regular tail; with the charge computed
    // from the same window its part is always 0.
    beads.push(w - 1);
    let mut parts: Vec<i64> = Vec::with_capacity(beads.len());
    for (idx, b) in beads.iter().enumerate() {
        let i = idx as i64 + 1;
        parts.push((b.twice() - 2 * charge - 1) / 2 + i);
    }
    debug_assert_eq!(parts.last(), Some(&0));
    let lambda = Partition::new(parts.into_iter().map(|p| p as u32).collect())?;
    Ok(ChargedPartition::new(lambda, charge))
}

/// The canonical finite window for cp: everything below h - len(λ) + 1/2 is
/// black, and the first len(λ) beads are listed.
pub fn maya_of(cp: &ChargedPartition) -> MayaSpec {
    let len = cp.lambda.len();
    let window_lo = HalfInt::from_twice(2 * (cp.charge - len as i64) + 1);
    let blacks = if len == 0 {
        BTreeSet::new()
    } else {
        black_positions(cp, len).into_iter().collect()
    };
    MayaSpec { window_lo, blacks }
}

/// Sorts wedge indices into strictly decreasing order, reporting the sign of
/// the permutation. `None` signals a repeated index (a zero wedge).
pub fn normalize_wedge(indices: &[HalfInt]) -> Option<(i32, Vec<HalfInt>)> {
    let mut sorted = indices.to_vec();
    let mut sign = 1;
    // Insertion sort; small inputs, and we need the exact transposition parity.
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] < sorted[j] {
            sorted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && sorted[j - 1] == sorted[j] {
            return None;
        }
    }
    Some((sign, sorted))
}

/// Renders the window [lo, hi] as beads, highest position first. Debug aid.
pub fn render_maya(cp: &ChargedPartition, lo: HalfInt, hi: HalfInt) -> String {
    let mut out = String::new();
    let mut p = hi;
    while p >= lo {
        out.push(if is_black(cp, p) { '*' } else { 'o' });
        if p.twice() == 1 {
            out.push('|');
        }
        p = p - 1;
    }
    out
}
