//! The signed abacus: `a`-cores ↔ charge vectors, the quadratic size form, and
//! the shifted coordinates `x = c + s`.
//!
//! Runner `i` (0-based) carries the energy levels `ka - i - 1/2`. A charge
//! vector fixes how far the beads on each runner are pushed, and a
//! right-justified abacus is exactly an `a`-core.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A point of `Λ_a = {c ∈ ℤ^a : Σ cᵢ = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCharges")]
pub struct ChargeVector {
    a: usize,
    c: Vec<i64>,
}

#[derive(Deserialize)]
struct RawCharges {
    a: usize,
    c: Vec<i64>,
}

impl TryFrom<RawCharges> for ChargeVector {
    type Error = Error;

    fn try_from(raw: RawCharges) -> Result<Self> {
        if raw.c.len() != raw.a {
            return Err(Error::InvalidInput(format!(
                "charge vector declares a = {} but has {} entries",
                raw.a,
                raw.c.len()
            )));
        }
        ChargeVector::new(raw.c)
    }
}

impl ChargeVector {
    pub fn new(c: Vec<i64>) -> Result<Self> {
        if c.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need a ≥ 2 runners, got {}",
                c.len()
            )));
        }
        if c.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidInput(format!(
                "charges {c:?} do not sum to zero"
            )));
        }
        Ok(ChargeVector { a: c.len(), c })
    }

    pub fn zero(a: usize) -> Self {
        ChargeVector { a, c: vec![0; a] }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn charges(&self) -> &[i64] {
        &self.c
    }

    /// Charge on runner `i`, with `i` read cyclically mod `a`.
    pub fn get(&self, i: i64) -> i64 {
        self.c[i.rem_euclid(self.a as i64) as usize]
    }

    /// Doubled energy of the highest bead on runner `i`.
    fn top_level(&self, i: usize) -> i64 {
        -2 * self.a as i64 * self.c[i] - 2 * i as i64 - 1
    }
}

impl fmt::Display for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.c.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Reads the partition off the right-justified abacus with the given charges.
pub fn core_from_charges(cv: &ChargeVector) -> Partition {
    let a = cv.a as i64;
    let tops: Vec<i64> = (0..cv.a).map(|i| cv.top_level(i)).collect();
    let highest = *tops.iter().max().unwrap();
    // below every runner's top bead the sea is full
    let lowest = *tops.iter().min().unwrap() - 2 * a;
    let mut parts = Vec::new();
    let mut j = 0i64;
    let mut level = highest;
    while level >= lowest {
        let runner = (-(level + 1) / 2).rem_euclid(a) as usize;
        if level <= tops[runner] {
            j += 1;
            let twice_part = level + 2 * j - 1;
            if twice_part <= 0 {
                break;
            }
            parts.push((twice_part / 2) as u64);
        }
        level -= 2;
    }
    Partition::from_padded(parts)
}

/// Inverse of [`core_from_charges`]; fails unless `p` is an `a`-core.
pub fn charges_from_core(p: &Partition, a: usize) -> Result<ChargeVector> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("need a ≥ 2, got {a}")));
    }
    if !p.is_core(a) {
        return Err(Error::NotACore {
            parts: p.parts().to_vec(),
            modulus: a,
        });
    }
    let ai = a as i64;
    let mut top: Vec<Option<i64>> = vec![None; a];
    let mut found = 0;
    let mut j = 1i64;
    while found < a {
        let part = p.parts().get(j as usize - 1).copied().unwrap_or(0) as i64;
        let level = 2 * part - 2 * j + 1;
        let runner = (-(level + 1) / 2).rem_euclid(ai) as usize;
        if top[runner].is_none() {
            top[runner] = Some(level);
            found += 1;
        }
        j += 1;
    }
    let c = top
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let num = -t.unwrap() - 2 * i as i64 - 1;
            debug_assert_eq!(num % (2 * ai), 0);
            num / (2 * ai)
        })
        .collect();
    ChargeVector::new(c)
}

/// `|core_a(c)| = (a/2) Σ cᵢ² + Σ i·cᵢ`, runners indexed from 0.
pub fn size_quadratic(cv: &ChargeVector) -> u64 {
    let a = cv.a as i64;
    let squares: i64 = cv.c.iter().map(|c| c * c).sum();
    let linear: i64 = cv.c.iter().enumerate().map(|(i, c)| i as i64 * c).sum();
    let twice = a * squares + 2 * linear;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as u64
}

/// A point `x` of `S_a·(Λ_a + s)`, where `sᵢ = i/a - (a-1)/(2a)`.
///
/// Coordinates are stored as the integers `2a·xᵢ`. A point is *canonical*
/// when `x - s` is itself integral, i.e. `x = c + s` for a charge vector `c`;
/// the statistics in [`crate::qt_catalan`] are symmetric and accept any
/// ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ShiftedPoint {
    a: usize,
    scaled: Vec<i64>,
}

impl ShiftedPoint {
    /// Validates that `scaled / 2a` is a coordinate permutation of a shifted
    /// charge vector.
    pub fn new(a: usize, scaled: Vec<i64>) -> Result<Self> {
        if a < 2 || scaled.len() != a {
            return Err(Error::InvalidParameter(format!(
                "expected {a} ≥ 2 coordinates, got {}",
                scaled.len()
            )));
        }
        if scaled.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidInput(
                "shifted coordinates must sum to zero".into(),
            ));
        }
        let modulus = 2 * a as i64;
        let mut seen = vec![false; a];
        for &v in &scaled {
            match residue_slot(a, v) {
                Some(j) if !seen[j] => seen[j] = true,
                _ => {
                    let _ = modulus;
                    return Err(Error::InvalidInput(format!(
                        "coordinates {scaled:?} are not a permutation of a shifted lattice point"
                    )));
                }
            }
        }
        Ok(ShiftedPoint { a, scaled })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    /// The integers `2a·xᵢ`.
    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    /// `2a·xᵢ` with cyclic indexing.
    pub fn scaled_at(&self, i: i64) -> i64 {
        self.scaled[i.rem_euclid(self.a as i64) as usize]
    }

    /// Exact coordinates `xᵢ`.
    pub fn coordinates(&self) -> Vec<Ratio<i64>> {
        let d = 2 * self.a as i64;
        self.scaled.iter().map(|&v| Ratio::new(v, d)).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.scaled
            .iter()
            .enumerate()
            .all(|(i, &v)| residue_slot(self.a, v) == Some(i))
    }

    /// The unique coordinate permutation lying in `Λ_a + s`.
    pub fn canonicalize(&self) -> ShiftedPoint {
        let mut out = vec![0; self.a];
        for &v in &self.scaled {
            out[residue_slot(self.a, v).expect("validated on construction")] = v;
        }
        ShiftedPoint {
            a: self.a,
            scaled: out,
        }
    }

    /// `Q(x) = -(a²-1)/24 + (a/2) Σ xᵢ²`, which equals the core size.
    pub fn size(&self) -> u64 {
        let a = self.a as i64;
        let sq: i64 = self.scaled.iter().map(|v| v * v).sum();
        let num = 3 * sq - a * (a * a - 1);
        debug_assert_eq!(num % (24 * a), 0);
        (num / (24 * a)) as u64
    }
}

/// Index `j` with `v ≡ 2j - (a-1) (mod 2a)`, if any.
fn residue_slot(a: usize, v: i64) -> Option<usize> {
    let m = 2 * a as i64;
    let r = (v + a as i64 - 1).rem_euclid(m);
    (r % 2 == 0).then_some((r / 2) as usize)
}

/// `x = c + s`.
pub fn shift(cv: &ChargeVector) -> ShiftedPoint {
    let a = cv.a as i64;
    let scaled =
        cv.c.iter()
            .enumerate()
            .map(|(i, &c)| 2 * a * c + 2 * i as i64 - (a - 1))
            .collect();
    ShiftedPoint { a: cv.a, scaled }
}

/// `c = x - s`; the point must be canonical.
pub fn unshift(sp: &ShiftedPoint) -> Result<ChargeVector> {
    if !sp.is_canonical() {
        return Err(Error::InvalidInput(
            "shifted point is not in canonical order".into(),
        ));
    }
    let a = sp.a as i64;
    let c = sp
        .scaled
        .iter()
        .enumerate()
        .map(|(i, &v)| (v - 2 * i as i64 + (a - 1)) / (2 * a))
        .collect();
    ChargeVector::new(c)
}
