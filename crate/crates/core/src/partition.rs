//! Integer partitions, hooks, Maya diagrams, and the partition-level
//! definitions of cores, length and skew length.
//!
//! Partitions are stored in the usual rows-of-boxes model: `parts[0]` is the
//! first (longest) row. Everything here works directly on the Young diagram
//! and is deliberately independent of the abacus code, so it can serve as an
//! oracle for the lattice formulas elsewhere in the crate.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::gcd;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// One box of a Young diagram together with its arm, leg and hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub row: u64,
    pub col: u64,
    /// Boxes to the right in the same row.
    pub arm: u64,
    /// Boxes below in the same column.
    pub leg: u64,
    pub hook: u64,
}

/// Skew length of an `(a,b)`-core and its complement `(a-1)(b-1)/2 - sℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkewLength {
    pub skew_length: u64,
    pub co_skew_length: i64,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts that may contain trailing zeros.
    pub(crate) fn from_padded(mut parts: Vec<u64>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        Partition {
            parts: conjugate_parts(&self.parts),
        }
    }

    /// Every cell of the diagram with its arm, leg and hook, row by row.
    pub fn hook_lengths(&self) -> Vec<Cell> {
        let conj = conjugate_parts(&self.parts);
        let mut cells = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj[j as usize] - i as u64 - 1;
                cells.push(Cell {
                    row: i as u64,
                    col: j,
                    arm,
                    leg,
                    hook: arm + leg + 1,
                });
            }
        }
        cells
    }

    /// True iff no cell has hook length exactly `a`.
    pub fn is_core(&self, a: usize) -> bool {
        is_core_parts(&self.parts, a as u64)
    }

    pub fn to_maya(&self) -> MayaState {
        let mut filled = BTreeSet::new();
        let mut electrons = BTreeSet::new();
        for (j, &part) in self.parts.iter().enumerate() {
            // 2·(λⱼ - j + 1/2) with j counted from 1
            let level = 2 * part as i64 - 2 * (j as i64 + 1) + 1;
            filled.insert(level);
            if level > 0 {
                electrons.insert(level as u64);
            }
        }
        let len = self.parts.len() as i64;
        let positrons = (1..=len)
            .map(|j| -(2 * j - 1))
            .filter(|level| !filled.contains(level))
            .map(|level| (-level) as u64)
            .collect();
        MayaState {
            electrons,
            positrons,
        }
    }

    pub fn from_maya(state: &MayaState) -> (Partition, i64) {
        state.to_partition()
    }

    /// Skew length for an `(a,b)`-core: cells in the rows of the `a`-parts
    /// whose hook length is below `b`.
    ///
    /// The `a`-parts are the longest row within each class of `λᵢ - i mod a`
    /// (rows counted from 1).
    pub fn skew_length(&self, a: usize, b: usize) -> Result<SkewLength> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidParameter("a and b must be positive".into()));
        }
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        for m in [a, b] {
            if !self.is_core(m) {
                return Err(Error::NotACore {
                    parts: self.parts.clone(),
                    modulus: m,
                });
            }
        }
        let conj = conjugate_parts(&self.parts);
        let mut seen = vec![false; a];
        let mut skew = 0u64;
        for (i, &row) in self.parts.iter().enumerate() {
            let class = (row as i64 - (i as i64 + 1)).rem_euclid(a as i64) as usize;
            if seen[class] {
                continue;
            }
            seen[class] = true;
            skew += (0..row)
                .filter(|&j| {
                    let hook = row - j + conj[j as usize] - i as u64 - 1;
                    hook < b as u64
                })
                .count() as u64;
        }
        let half = ((a - 1) * (b - 1) / 2) as i64;
        Ok(SkewLength {
            skew_length: skew,
            co_skew_length: half - skew as i64,
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "{}", s.join("+"))
    }
}

fn conjugate_parts(parts: &[u64]) -> Vec<u64> {
    let width = parts.first().copied().unwrap_or(0) as usize;
    let mut conj = vec![0u64; width];
    for &p in parts {
        for c in conj.iter_mut().take(p as usize) {
            *c += 1;
        }
    }
    conj
}

pub(crate) fn is_core_parts(parts: &[u64], a: u64) -> bool {
    if parts.is_empty() {
        return true;
    }
    let conj = conjugate_parts(parts);
    for (i, &row) in parts.iter().enumerate() {
        // hooks along a row strictly decrease, so only the first one can exceed a
        if row + conj[0] - i as u64 - 1 < a {
            continue;
        }
        for j in 0..row {
            if row - j + conj[j as usize] - i as u64 - 1 == a {
                return false;
            }
        }
    }
    true
}

/// A finite particle state of the Dirac sea.
///
/// Energies are half-integers; both sets store `2·energy`, which is always a
/// positive odd integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MayaState {
    electrons: BTreeSet<u64>,
    positrons: BTreeSet<u64>,
}

impl MayaState {
    pub fn new(electrons: BTreeSet<u64>, positrons: BTreeSet<u64>) -> Result<Self> {
        if let Some(bad) = electrons
            .iter()
            .chain(positrons.iter())
            .find(|&&v| v % 2 == 0)
        {
            return Err(Error::InvalidInput(format!(
                "Maya energies are stored doubled and must be odd, got {bad}"
            )));
        }
        Ok(MayaState {
            electrons,
            positrons,
        })
    }

    pub fn vacuum() -> Self {
        MayaState::default()
    }

    /// Doubled electron energies.
    pub fn electrons(&self) -> &BTreeSet<u64> {
        &self.electrons
    }

    /// Doubled positron energies.
    pub fn positrons(&self) -> &BTreeSet<u64> {
        &self.positrons
    }

    pub fn charge(&self) -> i64 {
        self.positrons.len() as i64 - self.electrons.len() as i64
    }

    /// Twice the total energy.
    pub fn twice_energy(&self) -> u64 {
        self.electrons.iter().sum::<u64>() + self.positrons.iter().sum::<u64>()
    }

    /// The partition whose boundary path, shifted by the charge, gives this
    /// state.
    pub fn to_partition(&self) -> (Partition, i64) {
        let charge = self.charge();
        let top = self.electrons.iter().next_back().map_or(-1, |&e| e as i64);
        let deepest = self.positrons.iter().next_back().map_or(1, |&p| p as i64);
        // one level below every hole, plus room for the charge offset
        let bottom = -(deepest + 2 * charge.unsigned_abs() as i64 + 4);
        let mut parts = Vec::new();
        let mut j = 0i64;
        let mut level = if top % 2 == 0 { top - 1 } else { top };
        while level >= bottom {
            let occupied = if level > 0 {
                self.electrons.contains(&(level as u64))
            } else {
                !self.positrons.contains(&((-level) as u64))
            };
            if occupied {
                j += 1;
                // 2λⱼ = 2sⱼ + 2j - 1 + 2c
                let twice_part = level + 2 * j - 1 + 2 * charge;
                debug_assert!(twice_part % 2 == 0);
                if twice_part <= 0 {
                    break;
                }
                parts.push((twice_part / 2) as u64);
            }
            level -= 2;
        }
        (Partition::from_padded(parts), charge)
    }
}

/// Calls `f` on every partition of every `n ≤ max_size`, as a slice of parts.
pub fn for_each_partition_up_to(max_size: u64, f: &mut dyn FnMut(&[u64])) {
    fn go(buf: &mut Vec<u64>, remaining: u64, max_part: u64, f: &mut dyn FnMut(&[u64])) {
        f(buf);
        for part in (1..=max_part.min(remaining)).rev() {
            buf.push(part);
            go(buf, remaining - part, part, f);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    go(&mut buf, max_size, max_size, f);
}

/// All partitions of exactly `n`, in reverse lexicographic order.
pub fn partitions_of(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition_up_to(n, &mut |p| {
        if p.iter().sum::<u64>() == n {
            out.push(Partition { parts: p.to_vec() });
        }
    });
    out
}
