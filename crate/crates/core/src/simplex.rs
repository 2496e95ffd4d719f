//! The simplex of simultaneous `(a,b)`-cores inside the charge lattice.
//!
//! A charge vector `c` is a `b`-core iff `c_{i+b} - cᵢ ≤ ⌊(b+i)/a⌋` for every
//! `i` (indices mod `a`). The lattice points of that simplex are in bijection
//! with the compositions `z` of `b` into `a` parts satisfying
//! `Σ i·zᵢ ≡ 0 (mod a)`; enumeration runs over those compositions.

use std::env;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abacus::{self, ChargeVector, ShiftedPoint};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt_catalan;
use crate::util::{binomial, for_each_composition, gcd, rational_catalan};

/// Environment variable overriding [`EnumerationCap::default`].
pub const CAP_ENV: &str = "CORELATTICE_CAP";

/// Upper bound on the number of points any single enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap(pub u64);

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(10_000_000)
    }
}

impl EnumerationCap {
    /// The default cap, overridden by `CORELATTICE_CAP` when it parses as a
    /// positive integer.
    pub fn from_env() -> Result<Self> {
        match env::var(CAP_ENV) {
            Ok(v) => match v.trim().parse::<u64>() {
                Ok(n) if n > 0 => Ok(EnumerationCap(n)),
                _ => Err(Error::InvalidParameter(format!(
                    "{CAP_ENV}={v:?} is not a positive integer"
                ))),
            },
            Err(_) => Ok(EnumerationCap::default()),
        }
    }

    pub(crate) fn check(&self, what: &str, count: &BigUint) -> Result<()> {
        if count > &BigUint::from(self.0) {
            return Err(Error::CapExceeded {
                what: what.to_string(),
                count: count.to_string(),
                cap: self.0,
            });
        }
        Ok(())
    }
}

/// A coprime pair `(a, b)` with `a ≥ 2`, `b ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplexSpec {
    a: usize,
    b: usize,
}

impl SimplexSpec {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a < 2 {
            return Err(Error::InvalidParameter(format!(
                "a must be at least 2, got {a}"
            )));
        }
        if b < 1 {
            return Err(Error::InvalidParameter("b must be at least 1".into()));
        }
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        Ok(SimplexSpec { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// `Cat_{a,b} = C(a+b, a) / (a+b)`.
    pub fn catalan(&self) -> BigUint {
        rational_catalan(self.a, self.b)
    }

    /// `(a-1)(b-1)/2`, the common maximum of length and skew length.
    pub fn max_statistic(&self) -> u64 {
        ((self.a - 1) * (self.b - 1) / 2) as u64
    }

    fn check_a(&self, a: usize) -> Result<()> {
        if a != self.a {
            return Err(Error::InvalidInput(format!(
                "expected a = {}, got a = {a}",
                self.a
            )));
        }
        Ok(())
    }

    /// Membership by the charge-space inequalities.
    pub fn contains(&self, cv: &ChargeVector) -> bool {
        if cv.a() != self.a {
            return false;
        }
        let (a, b) = (self.a as i64, self.b as i64);
        (0..a).all(|i| cv.get(i + b) - cv.get(i) <= (b + i).div_euclid(a))
    }

    /// Membership by `x_{i+b} - xᵢ ≤ b/a`; the point must be canonical.
    pub fn contains_shifted(&self, sp: &ShiftedPoint) -> bool {
        if sp.a() != self.a || !sp.is_canonical() {
            return false;
        }
        let (a, b) = (self.a as i64, self.b as i64);
        (0..a).all(|i| sp.scaled_at(i + b) - sp.scaled_at(i) <= 2 * b)
    }

    /// The offset `k ≡ -(b+1)/2 (mod a)` of the trivial-determinant map.
    pub fn z_offset(&self) -> i64 {
        let (a, b) = (self.a as i64, self.b as i64);
        if a % 2 == 0 {
            // b is odd here
            (-(b + 1) / 2).rem_euclid(a)
        } else {
            let half = (a + 1) / 2; // inverse of 2 mod a
            (-(b + 1) * half).rem_euclid(a)
        }
    }
}

/// A composition `z` of `b` into `a` parts with `Σ i·zᵢ ≡ 0 (mod a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RepVector {
    z: Vec<u64>,
}

impl RepVector {
    pub fn new(spec: &SimplexSpec, z: Vec<u64>) -> Result<Self> {
        if z.len() != spec.a {
            return Err(Error::InvalidInput(format!(
                "expected {} entries, got {}",
                spec.a,
                z.len()
            )));
        }
        if z.iter().sum::<u64>() != spec.b as u64 {
            return Err(Error::InvalidInput(format!(
                "{z:?} does not sum to b = {}",
                spec.b
            )));
        }
        let weight: u64 = z.iter().enumerate().map(|(i, &v)| i as u64 * v).sum();
        if !weight.is_multiple_of(spec.a as u64) {
            return Err(Error::InvalidInput(format!(
                "Σ i·zᵢ for {z:?} is not divisible by {}",
                spec.a
            )));
        }
        Ok(RepVector { z })
    }

    pub fn entries(&self) -> &[u64] {
        &self.z
    }

    /// `zᵢ ↦ z_{-i}`, the image of conjugation.
    pub fn dual(&self) -> RepVector {
        let a = self.z.len();
        RepVector {
            z: (0..a).map(|i| self.z[(a - i) % a]).collect(),
        }
    }
}

/// `zᵢ = x_{ib+k} - x_{(i+1)b+k} + b/a`.
pub fn to_z(spec: &SimplexSpec, sp: &ShiftedPoint) -> Result<RepVector> {
    spec.check_a(sp.a())?;
    if !spec.contains_shifted(sp) {
        return Err(Error::NotInSimplex {
            a: spec.a,
            b: spec.b,
        });
    }
    let (a, b) = (spec.a as i64, spec.b as i64);
    let k = spec.z_offset();
    let z = (0..a)
        .map(|i| {
            let num = sp.scaled_at(i * b + k) - sp.scaled_at((i + 1) * b + k) + 2 * b;
            debug_assert!(num >= 0 && num % (2 * a) == 0);
            (num / (2 * a)) as u64
        })
        .collect();
    Ok(RepVector { z })
}

/// Inverse of [`to_z`].
pub fn from_z(spec: &SimplexSpec, rv: &RepVector) -> Result<ShiftedPoint> {
    let z = rv.entries();
    if z.len() != spec.a {
        return Err(Error::InvalidInput(format!(
            "expected {} entries, got {}",
            spec.a,
            z.len()
        )));
    }
    let (a, b) = (spec.a as i64, spec.b as i64);
    let k = spec.z_offset();
    // offsets of X_{k+jb} relative to X_k
    let mut d = vec![0i64; spec.a];
    for j in 1..spec.a {
        d[j] = d[j - 1] - 2 * a * z[j - 1] as i64 + 2 * b;
    }
    let total: i64 = d.iter().sum();
    if total % a != 0 {
        return Err(Error::NotInSimplex {
            a: spec.a,
            b: spec.b,
        });
    }
    let base = -total / a;
    let mut scaled = vec![0i64; spec.a];
    for (j, dj) in d.iter().enumerate() {
        scaled[(k + j as i64 * b).rem_euclid(a) as usize] = base + dj;
    }
    let sp = ShiftedPoint::new(spec.a, scaled).map_err(|_| Error::NotInSimplex {
        a: spec.a,
        b: spec.b,
    })?;
    if !sp.is_canonical() {
        return Err(Error::NotInSimplex {
            a: spec.a,
            b: spec.b,
        });
    }
    Ok(sp)
}

/// All valid [`RepVector`]s, lexicographic in `z`.
pub fn enumerate_rep_vectors(spec: &SimplexSpec, cap: EnumerationCap) -> Result<Vec<RepVector>> {
    cap.check(
        &format!("enumerating ({},{})-cores", spec.a, spec.b),
        &spec.catalan(),
    )?;
    let (a, b) = (spec.a, spec.b);
    let blocks: Vec<Vec<RepVector>> = (0..=b)
        .into_par_iter()
        .map(|z0| {
            let mut out = Vec::new();
            for_each_composition(b - z0, a - 1, &mut |rest| {
                let weight: usize = rest.iter().enumerate().map(|(i, &v)| (i + 1) * v).sum();
                if weight.is_multiple_of(a) {
                    let mut z = Vec::with_capacity(a);
                    z.push(z0 as u64);
                    z.extend(rest.iter().map(|&v| v as u64));
                    out.push(RepVector { z });
                }
            });
            out
        })
        .collect();
    Ok(blocks.into_iter().flatten().collect())
}

/// All `(a,b)`-cores as charge vectors, ordered lexicographically by `z`.
pub fn enumerate_cores(spec: &SimplexSpec, cap: EnumerationCap) -> Result<Vec<ChargeVector>> {
    let reps = enumerate_rep_vectors(spec, cap)?;
    reps.par_iter()
        .map(|rv| from_z(spec, rv).and_then(|sp| abacus::unshift(&sp)))
        .collect()
}

/// `T(c)ᵢ = -c_{-1-i}`; on partitions this is conjugation.
pub fn conjugation_t(cv: &ChargeVector) -> ChargeVector {
    let a = cv.a() as i64;
    let c = (0..a).map(|i| -cv.get(-1 - i)).collect();
    ChargeVector::new(c).expect("conjugation preserves the zero-sum condition")
}

/// The `T`-fixed cores, in the order of [`enumerate_cores`].
pub fn enumerate_self_conjugate(
    spec: &SimplexSpec,
    cap: EnumerationCap,
) -> Result<Vec<ChargeVector>> {
    Ok(enumerate_cores(spec, cap)?
        .into_iter()
        .filter(|cv| &conjugation_t(cv) == cv)
        .collect())
}

/// `C(⌊a/2⌋ + ⌊b/2⌋, ⌊a/2⌋)`.
pub fn self_conjugate_count(spec: &SimplexSpec) -> BigUint {
    binomial((spec.a / 2 + spec.b / 2) as u64, (spec.a / 2) as u64)
}

/// `(a+b+1)(a-1)(b-1)/24`.
pub fn armstrong_average(spec: &SimplexSpec) -> BigRational {
    let (a, b) = (spec.a as i64, spec.b as i64);
    BigRational::new(
        BigInt::from((a + b + 1) * (a - 1) * (b - 1)),
        BigInt::from(24),
    )
}

/// Total and average size of a list of charge vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeSummary {
    pub count: u64,
    pub total: BigUint,
    pub average: BigRational,
}

pub fn size_summary(cores: &[ChargeVector]) -> SizeSummary {
    let total: BigUint = cores
        .par_iter()
        .map(|cv| BigUint::from(abacus::size_quadratic(cv)))
        .sum();
    let count = cores.len() as u64;
    let average = if count == 0 {
        BigRational::from_integer(BigInt::from(0))
    } else {
        BigRational::new(BigInt::from(total.clone()), BigInt::from(count))
    };
    SizeSummary {
        count,
        total,
        average,
    }
}

pub fn total_size(spec: &SimplexSpec, cap: EnumerationCap) -> Result<BigUint> {
    Ok(size_summary(&enumerate_cores(spec, cap)?).total)
}

pub fn average_size(spec: &SimplexSpec, cap: EnumerationCap) -> Result<BigRational> {
    Ok(size_summary(&enumerate_cores(spec, cap)?).average)
}

pub fn self_conjugate_average_size(spec: &SimplexSpec, cap: EnumerationCap) -> Result<BigRational> {
    Ok(size_summary(&enumerate_self_conjugate(spec, cap)?).average)
}

/// Result of the cyclic-rotation check on compositions of `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationReport {
    pub compositions: String,
    pub orbits: u64,
    pub free: bool,
    pub one_rep_per_orbit: bool,
}

/// Checks that `z ↦ (z_{i+1})ᵢ` acts freely on the compositions of `b` into
/// `a` parts and that every orbit contains exactly one trivial-determinant
/// representative.
pub fn rotation_check(spec: &SimplexSpec, cap: EnumerationCap) -> Result<RotationReport> {
    let (a, b) = (spec.a, spec.b);
    let n = binomial((a + b - 1) as u64, (a - 1) as u64);
    cap.check("enumerating compositions", &n)?;
    let mut orbits = 0u64;
    let mut free = true;
    let mut one_rep = true;
    for_each_composition(b, a, &mut |z| {
        // visit each orbit once, from its lexicographically least member
        let rotations: Vec<Vec<usize>> = (0..a)
            .map(|r| (0..a).map(|i| z[(i + r) % a]).collect())
            .collect();
        if rotations.iter().any(|r| r.as_slice() < z) {
            return;
        }
        orbits += 1;
        let mut distinct = rotations.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != a {
            free = false;
        }
        let reps = rotations
            .iter()
            .filter(|r| r.iter().enumerate().map(|(i, &v)| i * v).sum::<usize>() % a == 0)
            .count();
        if reps != 1 {
            one_rep = false;
        }
    });
    Ok(RotationReport {
        compositions: n.to_string(),
        orbits,
        free,
        one_rep_per_orbit: one_rep,
    })
}

/// Everything reported about one core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreRecord {
    pub charges: Vec<i64>,
    pub z: Vec<u64>,
    pub partition: Partition,
    pub size: u64,
    pub length: u64,
    pub skew_length: u64,
    pub co_skew_length: i64,
}

impl CoreRecord {
    pub fn new(spec: &SimplexSpec, cv: &ChargeVector) -> Result<Self> {
        let sp = abacus::shift(cv);
        let z = to_z(spec, &sp)?;
        let length = qt_catalan::length_from_x(&sp);
        let skew_length = qt_catalan::skew_length_from_x(spec, &sp);
        Ok(CoreRecord {
            charges: cv.charges().to_vec(),
            z: z.entries().to_vec(),
            partition: abacus::core_from_charges(cv),
            size: abacus::size_quadratic(cv),
            length,
            skew_length,
            co_skew_length: spec.max_statistic() as i64 - skew_length as i64,
        })
    }
}

/// One [`CoreRecord`] per core, in enumeration order.
pub fn enumerate_records(spec: &SimplexSpec, cap: EnumerationCap) -> Result<Vec<CoreRecord>> {
    enumerate_cores(spec, cap)?
        .par_iter()
        .map(|cv| CoreRecord::new(spec, cv))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::for_each_partition_up_to;
    use std::collections::BTreeSet;

    fn spec(a: usize, b: usize) -> SimplexSpec {
        SimplexSpec::new(a, b).unwrap()
    }

    fn cap() -> EnumerationCap {
        EnumerationCap::default()
    }

    fn cv(c: &[i64]) -> ChargeVector {
        ChargeVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            SimplexSpec::new(4, 6),
            Err(Error::NotCoprime { a: 4, b: 6 })
        );
        assert!(SimplexSpec::new(1, 3).is_err());
        assert!(SimplexSpec::new(3, 0).is_err());
        assert!(SimplexSpec::new(5, 1).is_ok());
    }

    #[test]
    fn membership_examples() {
        assert!(spec(3, 4).contains(&ChargeVector::zero(3)));
        assert!(!spec(3, 4).contains(&cv(&[0, 3, -3])));
        let p = Partition::new(vec![9, 7, 5, 3, 2, 2, 1, 1]).unwrap();
        let c = abacus::charges_from_core(&p, 3).unwrap();
        assert!(spec(3, 11).contains(&c));
        assert!(spec(3, 11).contains_shifted(&abacus::shift(&c)));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_cores(&spec(3, 4), cap()).unwrap().len(), 5);
        let two_three: BTreeSet<Partition> = enumerate_cores(&spec(2, 3), cap())
            .unwrap()
            .iter()
            .map(abacus::core_from_charges)
            .collect();
        assert_eq!(
            two_three,
            [Partition::empty(), Partition::new(vec![1]).unwrap()]
                .into_iter()
                .collect()
        );
        for a in 2..8 {
            assert_eq!(
                enumerate_cores(&spec(a, 1), cap()).unwrap(),
                vec![ChargeVector::zero(a)]
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_cores(&spec(5, 12), EnumerationCap(10)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 10, .. }));
    }

    #[test]
    fn z_examples() {
        let s = spec(3, 4);
        let z: BTreeSet<Vec<u64>> = enumerate_cores(&s, cap())
            .unwrap()
            .iter()
            .map(|c| to_z(&s, &abacus::shift(c)).unwrap().entries().to_vec())
            .collect();
        let mut direct = BTreeSet::new();
        for z0 in 0..=4u64 {
            for z1 in 0..=4 - z0 {
                let z2 = 4 - z0 - z1;
                if (z1 + 2 * z2) % 3 == 0 {
                    direct.insert(vec![z0, z1, z2]);
                }
            }
        }
        assert_eq!(z, direct);
        let s = spec(3, 7);
        for c in enumerate_cores(&s, cap()).unwrap() {
            let rv = to_z(&s, &abacus::shift(&c)).unwrap();
            assert_eq!(abacus::unshift(&from_z(&s, &rv).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn to_z_rejects_outside_points() {
        assert_eq!(
            to_z(&spec(3, 4), &abacus::shift(&cv(&[0, 3, -3]))),
            Err(Error::NotInSimplex { a: 3, b: 4 })
        );
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let s = spec(4, 7);
        let reps = enumerate_rep_vectors(&s, cap()).unwrap();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn count_identity() {
        for a in 2..=6 {
            for b in a + 1..=20 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let s = spec(a, b);
                let cores = enumerate_cores(&s, cap()).unwrap();
                assert_eq!(BigUint::from(cores.len()), s.catalan(), "({a},{b})");
                assert!(cores.iter().all(|c| s.contains(c)));
            }
        }
    }

    #[test]
    fn z_map_is_bijective() {
        for a in 2..=5 {
            for b in 1..=16 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let s = spec(a, b);
                let mut from_cores = BTreeSet::new();
                for c in enumerate_cores(&s, cap()).unwrap() {
                    from_cores.insert(to_z(&s, &abacus::shift(&c)).unwrap());
                }
                let mut all = BTreeSet::new();
                for_each_composition(b, a, &mut |z| {
                    if z.iter().enumerate().map(|(i, v)| i * v).sum::<usize>() % a == 0 {
                        all.insert(RepVector {
                            z: z.iter().map(|&v| v as u64).collect(),
                        });
                    }
                });
                assert_eq!(from_cores, all, "({a},{b})");
            }
        }
    }

    #[test]
    fn oracle_equivalence_small() {
        for (a, b) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)] {
            let s = spec(a, b);
            let cores: BTreeSet<Partition> = enumerate_cores(&s, cap())
                .unwrap()
                .iter()
                .map(abacus::core_from_charges)
                .collect();
            let max = cores.iter().map(Partition::size).max().unwrap();
            let mut brute = BTreeSet::new();
            for_each_partition_up_to(max + 3, &mut |p| {
                let p = Partition::new(p.to_vec()).unwrap();
                if p.is_core(a) && p.is_core(b) {
                    brute.insert(p);
                }
            });
            assert_eq!(cores, brute, "({a},{b})");
        }
    }

    #[test]
    fn conjugation_matches_transpose() {
        let c = cv(&[0, 3, -3]);
        let p = abacus::core_from_charges(&c);
        assert_eq!(abacus::core_from_charges(&conjugation_t(&c)), p.conjugate());
        assert_eq!(conjugation_t(&ChargeVector::zero(4)), ChargeVector::zero(4));
        // 3+1 is a 3-core whose transpose 2+1+1 is a different 3-core
        let p = Partition::new(vec![3, 1]).unwrap();
        let c = abacus::charges_from_core(&p, 3).unwrap();
        assert_ne!(conjugation_t(&c), c);
        assert_eq!(abacus::core_from_charges(&conjugation_t(&c)), p.conjugate());
    }

    #[test]
    fn conjugation_in_z_is_dual() {
        for (a, b) in [(3, 7), (4, 9), (5, 8)] {
            let s = spec(a, b);
            for c in enumerate_cores(&s, cap()).unwrap() {
                let z = to_z(&s, &abacus::shift(&c)).unwrap();
                let tz = to_z(&s, &abacus::shift(&conjugation_t(&c))).unwrap();
                assert_eq!(tz, z.dual());
            }
        }
    }

    #[test]
    fn self_conjugate_examples() {
        assert_eq!(
            enumerate_self_conjugate(&spec(3, 4), cap()).unwrap().len(),
            3
        );
        assert_eq!(
            enumerate_self_conjugate(&spec(2, 3), cap()).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_self_conjugate(&spec(6, 1), cap()).unwrap().len(),
            1
        );
    }

    #[test]
    fn sizes() {
        let s = spec(3, 4);
        assert_eq!(total_size(&s, cap()).unwrap(), BigUint::from(10u32));
        assert_eq!(average_size(&s, cap()).unwrap(), armstrong_average(&s));
        assert_eq!(
            average_size(&spec(2, 3), cap()).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            average_size(&spec(5, 1), cap()).unwrap(),
            BigRational::from_integer(0.into())
        );
    }

    #[test]
    fn armstrong_and_self_conjugate_sweep() {
        for a in 2..=6 {
            for b in 1..=13 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let s = spec(a, b);
                let all = enumerate_cores(&s, cap()).unwrap();
                assert_eq!(
                    size_summary(&all).average,
                    armstrong_average(&s),
                    "({a},{b})"
                );
                let sc: Vec<_> = all
                    .iter()
                    .filter(|c| &conjugation_t(c) == *c)
                    .cloned()
                    .collect();
                assert_eq!(
                    BigUint::from(sc.len()),
                    self_conjugate_count(&s),
                    "({a},{b})"
                );
                assert_eq!(
                    size_summary(&sc).average,
                    armstrong_average(&s),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn rotation() {
        for a in 2..=5 {
            for b in 1..=12 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let r = rotation_check(&spec(a, b), cap()).unwrap();
                assert!(r.free && r.one_rep_per_orbit, "({a},{b})");
                assert_eq!(BigUint::from(r.orbits), spec(a, b).catalan());
            }
        }
    }

    #[test]
    fn record_json() {
        let s = spec(3, 4);
        let r = CoreRecord::new(&s, &ChargeVector::zero(3)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"charges":[0,0,0],"z":["#));
        assert!(json
            .contains(r#""partition":[],"size":0,"length":0,"skew_length":0,"co_skew_length":3"#));
    }
}
