//! Length and skew length as piecewise-linear functions of the shifted
//! coordinates, the polynomial `Cat_{a,b}(q,t) = Σ q^{ℓ} t^{sℓ′}`, and the
//! checks built on it.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::abacus::{self, ShiftedPoint};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly2;
use crate::perm::{self, Permutation};
use crate::qpoly;
use crate::simplex::{self, EnumerationCap, SimplexSpec};

/// `ℓ(x) = -(a-1)/2 + a·max xᵢ`.
pub fn length_from_x(sp: &ShiftedPoint) -> u64 {
    let top = *sp.scaled().iter().max().unwrap();
    let twice = top - (sp.a() as i64 - 1);
    debug_assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as u64
}

/// `sℓ(x) = Σ_{i,j} ⌊xᵢ - xⱼ⌋₀ - ⌊xᵢ - xⱼ - b/a⌋₀` with `⌊y⌋₀ = max(0, ⌊y⌋)`.
pub fn skew_length_from_x(spec: &SimplexSpec, sp: &ShiftedPoint) -> u64 {
    skew_length_with_b(sp, spec.b() as i64)
}

fn skew_length_with_b(sp: &ShiftedPoint, b: i64) -> u64 {
    let x = sp.scaled();
    let m = 2 * sp.a() as i64;
    let floor0 = |v: i64| v.div_euclid(m).max(0);
    let mut total = 0i64;
    for &xi in x {
        for &xj in x {
            let d = xi - xj;
            total += floor0(d) - floor0(d - 2 * b);
        }
    }
    debug_assert!(total >= 0);
    total as u64
}

/// `sℓ′ = (a-1)(b-1)/2 - sℓ`.
pub fn co_skew_length_from_x(spec: &SimplexSpec, sp: &ShiftedPoint) -> i64 {
    spec.max_statistic() as i64 - skew_length_from_x(spec, sp) as i64
}

/// `(ℓ, sℓ)` for every core, in enumeration order.
pub fn statistics(spec: &SimplexSpec, cap: EnumerationCap) -> Result<Vec<(u64, u64)>> {
    Ok(simplex::enumerate_cores(spec, cap)?
        .par_iter()
        .map(|cv| {
            let sp = abacus::shift(cv);
            (length_from_x(&sp), skew_length_from_x(spec, &sp))
        })
        .collect())
}

/// `Σ_λ q^{ℓ(λ)} t^{sℓ′(λ)}` over the `(a,b)`-cores.
pub fn cat_qt(spec: &SimplexSpec, cap: EnumerationCap) -> Result<LaurentPoly2> {
    let max = spec.max_statistic() as i64;
    let mut out = LaurentPoly2::zero();
    for (l, s) in statistics(spec, cap)? {
        out.add_term(l as i64, max - s as i64, BigInt::from(1));
    }
    Ok(out)
}

/// `Cat_{a,b}(q,t) = Cat_{a,b}(t,q)`.
pub fn check_symmetry(spec: &SimplexSpec, cap: EnumerationCap) -> Result<bool> {
    let p = cat_qt(spec, cap)?;
    Ok(p.swap() == p)
}

/// Both `Σ q^{ℓ+sℓ}` and `q^{(a-1)(b-1)/2} Cat_{a,b}(q, 1/q)` equal
/// `Cat_{a,b}(q)`.
pub fn check_specialization(spec: &SimplexSpec, cap: EnumerationCap) -> Result<bool> {
    let target = qpoly::cat_q(spec.a(), spec.b())?;
    let mut direct = crate::laurent::LaurentPoly1::zero();
    for (l, s) in statistics(spec, cap)? {
        direct.add_term((l + s) as i64, BigInt::from(1));
    }
    let via_qt = cat_qt(spec, cap)?.to_univariate(1, -1, spec.max_statistic() as i64);
    Ok(direct == target && via_qt == target)
}

/// `b = 3k + 1 + δ` with `δ ∈ {0, 1}`.
pub fn qt3_parameters(b: usize) -> Result<(i64, i64)> {
    if b < 1 || b.is_multiple_of(3) {
        return Err(Error::NotCoprime { a: 3, b });
    }
    let k = (b as i64 - 1) / 3;
    Ok((k, b as i64 - 1 - 3 * k))
}

/// Checks the three-term rational expression for `Cat_{3,b}(q,t)` after
/// multiplying through by the product of all six denominator factors.
pub fn check_qt3_identity(b: usize, cap: EnumerationCap) -> Result<bool> {
    let (k, delta) = qt3_parameters(b)?;
    let spec = SimplexSpec::new(3, b)?;
    let m = LaurentPoly2::monomial;
    let one = LaurentPoly2::one;
    let factor = |qe: i64, te: i64| one() - m(qe, te, 1);
    let d1 = factor(1, -1) * factor(1, -2);
    let d2 = factor(-1, 2) * factor(2, -1);
    let d3 = factor(-1, 1) * factor(-2, 1);
    let n1 = m(0, 3 * k + delta, 1);
    let n2 = m(k, k, 1) * (m(1, 0, 1) + m(0, 1, 1) + m(delta, delta, 1));
    let n3 = m(3 * k + delta, 0, 1);
    let lhs = &cat_qt(&spec, cap)? * &(&(&d1 * &d2) * &d3);
    let rhs = &(&n1 * &(&d2 * &d3)) + &(&(&n2 * &(&d1 * &d3)) + &(&n3 * &(&d1 * &d2)));
    Ok(lhs == rhs)
}

/// A coset of the root lattice in the shifted lattice, labelled by a
/// permutation of `{1, …, a-1}` together with its minimal dominant vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldCosetLabel {
    pub sigma: Permutation,
    pub minimal: ShiftedPoint,
}

/// `a·wⱼ = σⱼ + a·#{k ∈ DES(σ) : k < j}` for `j = 1, …, a` with `σ_a = a`,
/// then `x = w - mean(w)`.
pub fn orbifold_minimal_vector(sigma: &Permutation) -> ShiftedPoint {
    let a = sigma.len() + 1;
    let mut full: Vec<i64> = sigma.one_line().iter().map(|&v| v as i64).collect();
    full.push(a as i64);
    let mut aw = vec![full[0]; a];
    for j in 1..a {
        let descent = full[j - 1] > full[j];
        aw[j] = aw[j - 1] + full[j] - full[j - 1] + if descent { a as i64 } else { 0 };
    }
    let total: i64 = aw.iter().sum();
    // 2a·xⱼ = 2·a·wⱼ - 2·total/a
    debug_assert_eq!((2 * total) % a as i64, 0);
    let scaled = aw.iter().map(|v| 2 * v - 2 * total / a as i64).collect();
    ShiftedPoint::new(a, scaled).expect("minimal vectors are shifted lattice points")
}

pub fn orbifold_minimal_vectors(a: usize) -> Result<Vec<OrbifoldCosetLabel>> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("need a ≥ 2, got {a}")));
    }
    Ok(perm::all_permutations(a - 1)
        .into_iter()
        .map(|sigma| {
            let minimal = orbifold_minimal_vector(&sigma);
            OrbifoldCosetLabel { sigma, minimal }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sizmaj1Report {
    pub a: usize,
    pub cosets: usize,
    /// Coordinates weakly increasing with consecutive gaps below 1.
    pub all_minimal_dominant: bool,
    pub length_is_maj: bool,
    pub skew_is_siz: bool,
    /// The partition-level statistics of the corresponding core agree.
    pub partition_oracle_agrees: bool,
}

impl Sizmaj1Report {
    pub fn passed(&self) -> bool {
        self.all_minimal_dominant
            && self.length_is_maj
            && self.skew_is_siz
            && self.partition_oracle_agrees
    }
}

/// For every coset label, `ℓ(x^σ) = maj(σ)` and `sℓ(x^σ) = siz(σ)`. Skew
/// length is taken with `b = a² + 1`, large enough that every `x^σ` lies in
/// the simplex and no upper wall is active.
pub fn check_sizmaj1(a: usize) -> Result<Sizmaj1Report> {
    let b = a * a + 1;
    let spec = SimplexSpec::new(a, b)?;
    let labels = orbifold_minimal_vectors(a)?;
    let mut report = Sizmaj1Report {
        a,
        cosets: labels.len(),
        all_minimal_dominant: true,
        length_is_maj: true,
        skew_is_siz: true,
        partition_oracle_agrees: true,
    };
    for label in &labels {
        let x = label.minimal.scaled();
        if !x
            .windows(2)
            .all(|w| w[0] <= w[1] && w[1] - w[0] < 2 * a as i64)
        {
            report.all_minimal_dominant = false;
        }
        let l = length_from_x(&label.minimal);
        let s = skew_length_from_x(&spec, &label.minimal);
        report.length_is_maj &= l == perm::maj(&label.sigma);
        report.skew_is_siz &= s as i64 == perm::siz(&label.sigma);
        let cv = abacus::unshift(&label.minimal.canonicalize())?;
        let p = abacus::core_from_charges(&cv);
        let oracle = p.skew_length(a, b);
        report.partition_oracle_agrees &=
            p.length() as u64 == l && oracle.map(|o| o.skew_length == s).unwrap_or(false);
    }
    Ok(report)
}

/// Change of `ℓ` and `sℓ` along one generator step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaEntry {
    /// `"origin"` for `s + vᵢ`, `"infinity"` for `b·s - vᵢ`.
    pub chamber: &'static str,
    pub i: usize,
    pub delta_length: i64,
    pub delta_skew: i64,
    pub delta_co_skew: i64,
    pub expected_length: i64,
    pub expected_co_skew: i64,
    pub in_simplex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaTableReport {
    pub a: usize,
    pub b: usize,
    pub entries: Vec<DeltaEntry>,
    /// The tabulated second column read as the change of `sℓ′`.
    pub co_skew_reading: bool,
    /// The same column read as the change of `sℓ`.
    pub skew_reading: bool,
    pub length_column: bool,
}

impl DeltaTableReport {
    pub fn passed(&self) -> bool {
        self.length_column && self.co_skew_reading && self.entries.iter().all(|e| e.in_simplex)
    }
}

/// `2a·vᵢ`: `2i - 2a` on the first `i` coordinates, `2i` on the rest.
fn generator(a: usize, i: usize) -> Vec<i64> {
    (0..a)
        .map(|j| {
            if j < i {
                2 * i as i64 - 2 * a as i64
            } else {
                2 * i as i64
            }
        })
        .collect()
}

/// Measures `Δᵢℓ` and `Δᵢsℓ′` at `s + vᵢ` and at `b·s - vᵢ` and compares them
/// with `(i, -i(a-i))` and `(-i, 1)`.
pub fn delta_table_check(a: usize, b: usize) -> Result<DeltaTableReport> {
    let spec = SimplexSpec::new(a, b)?;
    if b <= a {
        return Err(Error::InvalidParameter(format!(
            "need b > a so both chamber neighbourhoods contain lattice points, got ({a},{b})"
        )));
    }
    let origin: Vec<i64> = (0..a as i64).map(|i| 2 * i - (a as i64 - 1)).collect();
    let far: Vec<i64> = origin.iter().map(|v| v * b as i64).collect();
    let stats = |x: &[i64]| -> Result<(i64, i64, bool)> {
        let sp = ShiftedPoint::new(a, x.to_vec())?;
        Ok((
            length_from_x(&sp) as i64,
            skew_length_from_x(&spec, &sp) as i64,
            spec.contains_shifted(&sp.canonicalize()),
        ))
    };
    let mut entries = Vec::new();
    for (chamber, base, sign) in [("origin", &origin, 1i64), ("infinity", &far, -1i64)] {
        let (l0, s0, _) = stats(base)?;
        for i in 1..a {
            let moved: Vec<i64> = base
                .iter()
                .zip(generator(a, i))
                .map(|(x, v)| x + sign * v)
                .collect();
            let (l1, s1, inside) = stats(&moved)?;
            let i64i = i as i64;
            entries.push(DeltaEntry {
                chamber,
                i,
                delta_length: l1 - l0,
                delta_skew: s1 - s0,
                delta_co_skew: s0 - s1,
                expected_length: sign * i64i,
                expected_co_skew: if sign > 0 {
                    -i64i * (a as i64 - i64i)
                } else {
                    1
                },
                in_simplex: inside,
            });
        }
    }
    Ok(DeltaTableReport {
        a,
        b,
        co_skew_reading: entries
            .iter()
            .all(|e| e.delta_co_skew == e.expected_co_skew),
        skew_reading: entries.iter().all(|e| e.delta_skew == e.expected_co_skew),
        length_column: entries.iter().all(|e| e.delta_length == e.expected_length),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::ChargeVector;
    use crate::partition::Partition;
    use crate::util::gcd;

    fn spec(a: usize, b: usize) -> SimplexSpec {
        SimplexSpec::new(a, b).unwrap()
    }

    fn cap() -> EnumerationCap {
        EnumerationCap::default()
    }

    #[test]
    fn length_examples() {
        assert_eq!(length_from_x(&abacus::shift(&ChargeVector::zero(5))), 0);
        let c = ChargeVector::new(vec![0, 3, -3]).unwrap();
        assert_eq!(length_from_x(&abacus::shift(&c)), 8);
        for (a, b) in [(3, 4), (4, 7), (5, 6)] {
            let far: Vec<i64> = (0..a as i64)
                .map(|i| b as i64 * (2 * i - (a as i64 - 1)))
                .collect();
            let sp = ShiftedPoint::new(a, far).unwrap();
            assert_eq!(length_from_x(&sp), ((a - 1) * (b - 1) / 2) as u64);
            assert_eq!(
                skew_length_from_x(&spec(a, b), &sp),
                ((a - 1) * (b - 1) / 2) as u64
            );
        }
    }

    #[test]
    fn skew_examples() {
        let p = Partition::new(vec![9, 7, 5, 3, 2, 2, 1, 1]).unwrap();
        let c = abacus::charges_from_core(&p, 3).unwrap();
        assert_eq!(skew_length_from_x(&spec(3, 11), &abacus::shift(&c)), 9);
        assert_eq!(
            skew_length_from_x(&spec(3, 11), &abacus::shift(&ChargeVector::zero(3))),
            0
        );
    }

    #[test]
    fn catalan_qt_examples() {
        let m = |i, j| LaurentPoly2::monomial(i, j, 1);
        assert_eq!(
            cat_qt(&spec(3, 4), cap()).unwrap(),
            m(3, 0) + m(2, 1) + m(1, 2) + m(1, 1) + m(0, 3)
        );
        assert_eq!(cat_qt(&spec(2, 3), cap()).unwrap(), m(1, 0) + m(0, 1));
        assert_eq!(cat_qt(&spec(4, 1), cap()).unwrap(), LaurentPoly2::one());
    }

    #[test]
    fn formulas_match_partition_oracle() {
        for a in 2..=5 {
            for b in 1..=13 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let s = spec(a, b);
                let mut max_l = 0;
                let mut max_s = 0;
                for cv in simplex::enumerate_cores(&s, cap()).unwrap() {
                    let sp = abacus::shift(&cv);
                    let p = abacus::core_from_charges(&cv);
                    let l = length_from_x(&sp);
                    let sk = skew_length_from_x(&s, &sp);
                    assert_eq!(l, p.length() as u64, "({a},{b}) {cv}");
                    assert_eq!(
                        sk,
                        p.skew_length(a, b).unwrap().skew_length,
                        "({a},{b}) {cv}"
                    );
                    max_l = max_l.max(l);
                    max_s = max_s.max(sk);
                }
                assert_eq!((max_l, max_s), (s.max_statistic(), s.max_statistic()));
            }
        }
    }

    #[test]
    fn skew_is_permutation_invariant() {
        let s = spec(5, 7);
        for cv in simplex::enumerate_cores(&s, cap()).unwrap() {
            let sp = abacus::shift(&cv);
            let mut rev = sp.scaled().to_vec();
            rev.reverse();
            let mut rot = sp.scaled().to_vec();
            rot.rotate_left(2);
            for v in [rev, rot] {
                let q = ShiftedPoint::new(5, v).unwrap();
                assert_eq!(skew_length_from_x(&s, &q), skew_length_from_x(&s, &sp));
                assert_eq!(length_from_x(&q), length_from_x(&sp));
            }
        }
    }

    #[test]
    fn symmetry_and_specialization() {
        assert!(check_symmetry(&spec(3, 4), cap()).unwrap());
        assert!(check_specialization(&spec(3, 4), cap()).unwrap());
        for b in (1..=15).step_by(2) {
            assert!(check_symmetry(&spec(2, b), cap()).unwrap());
            assert!(check_specialization(&spec(2, b), cap()).unwrap());
        }
        for b in [1, 2, 4, 5, 7, 8, 10, 11, 13] {
            assert!(check_symmetry(&spec(3, b), cap()).unwrap(), "b={b}");
            assert!(check_specialization(&spec(3, b), cap()).unwrap(), "b={b}");
        }
    }

    #[test]
    fn qt3() {
        for b in [4, 5, 7, 8, 10, 11] {
            assert!(check_qt3_identity(b, cap()).unwrap(), "b={b}");
        }
        assert!(check_qt3_identity(6, cap()).is_err());
        assert_eq!(qt3_parameters(4).unwrap(), (1, 0));
        assert_eq!(qt3_parameters(5).unwrap(), (1, 1));
    }

    #[test]
    fn sizmaj1() {
        for a in 2..=6 {
            let r = check_sizmaj1(a).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let labels = orbifold_minimal_vectors(3).unwrap();
        assert_eq!(labels.len(), 2);
        let nontrivial = labels
            .iter()
            .find(|l| l.sigma.one_line() != [1, 2])
            .unwrap();
        assert_eq!(length_from_x(&nontrivial.minimal), 1);
        assert_eq!(skew_length_from_x(&spec(3, 10), &nontrivial.minimal), 1);
    }

    #[test]
    fn delta_table() {
        let r = delta_table_check(3, 10).unwrap();
        assert!(r.passed() && !r.skew_reading, "{r:?}");
        let e = &r.entries[0];
        assert_eq!(
            (e.chamber, e.i, e.delta_length, e.delta_co_skew),
            ("origin", 1, 1, -2)
        );
        let e = r
            .entries
            .iter()
            .find(|e| e.chamber == "infinity" && e.i == 1)
            .unwrap();
        assert_eq!((e.delta_length, e.delta_co_skew), (-1, 1));
        let r = delta_table_check(4, 13).unwrap();
        assert!(r.passed());
        let e = r
            .entries
            .iter()
            .find(|e| e.chamber == "origin" && e.i == 2)
            .unwrap();
        assert_eq!((e.delta_length, e.delta_co_skew), (2, -4));
    }
}
