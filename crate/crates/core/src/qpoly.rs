//! `q`-analogs, the rational `q`-Catalan polynomial and the checkers for its
//! conjectured coset decomposition and residue-class unimodality.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly1;
use crate::simplex::{self, EnumerationCap, SimplexSpec};
use crate::util::gcd;

/// `[n]_q = 1 + q + … + q^{n-1}`.
pub fn q_int(n: u64) -> LaurentPoly1 {
    LaurentPoly1::from_coeffs(&vec![1; n as usize])
}

/// `[n]_q! = [1]_q [2]_q ⋯ [n]_q`.
pub fn q_factorial(n: u64) -> LaurentPoly1 {
    (1..=n).fold(LaurentPoly1::one(), |acc, k| &acc * &q_int(k))
}

/// The Gaussian binomial `[n brack k]_q`, built by the `q`-Pascal rule.
pub fn q_binomial(n: i64, k: i64) -> Result<LaurentPoly1> {
    if n < 0 || k < 0 {
        return Err(Error::InvalidParameter(format!(
            "q-binomial needs n, k ≥ 0, got ({n}, {k})"
        )));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "q-binomial needs k ≤ n, got ({n}, {k})"
        )));
    }
    let k = k.min(n - k) as usize;
    // rows[j] = coefficient vector of [m brack j]_q for the current m
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for m in 1..=n as usize {
        let top = k.min(m);
        let mut next = Vec::with_capacity(top + 1);
        for j in 0..=top {
            // [m, j] = [m-1, j-1] + q^j [m-1, j]
            let mut coeffs: Vec<BigInt> = if j > 0 {
                rows[j - 1].clone()
            } else {
                Vec::new()
            };
            if j < rows.len() && j < m {
                let shifted = &rows[j];
                if coeffs.len() < shifted.len() + j {
                    coeffs.resize(shifted.len() + j, BigInt::zero());
                }
                for (i, c) in shifted.iter().enumerate() {
                    coeffs[i + j] += c;
                }
            }
            next.push(coeffs);
        }
        rows = next;
    }
    Ok(LaurentPoly1::from_coeffs(&rows[k]))
}

/// `[n brack k]_{q^m}`, or zero when `n < k`.
pub fn q_binomial_in_power(n: i64, k: i64, m: i64) -> LaurentPoly1 {
    if n < k || n < 0 {
        return LaurentPoly1::zero();
    }
    q_binomial(n, k)
        .expect("parameters checked")
        .substitute_power(m)
}

/// `Cat_{a,b}(q) = [a+b brack a]_q / [a+b]_q`, by exact division.
pub fn cat_q(a: usize, b: usize) -> Result<LaurentPoly1> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(format!(
            "need a, b ≥ 1, got ({a}, {b})"
        )));
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let n = (a + b) as i64;
    q_binomial(n, a as i64)?.div_exact(&q_int(n as u64))
}

/// The decomposition of `Cat_{3,b}(q)`, `b = 3k+1+δ`, into three shifted
/// `q³`-binomials, compared with [`cat_q`].
pub fn check_coset_identity_a3(k: u64, delta: u64) -> Result<bool> {
    if delta > 1 {
        return Err(Error::InvalidParameter(format!(
            "δ must be 0 or 1, got {delta}"
        )));
    }
    let k = k as i64;
    let bin = |n: i64| q_binomial_in_power(n, 2, 3);
    let middle = if delta == 0 { k + 1 } else { k + 2 };
    let rhs = bin(k + 2)
        + bin(middle).mul_monomial(2, &BigInt::from(1))
        + bin(k + 1).mul_monomial(4, &BigInt::from(1));
    Ok(rhs == cat_q(3, (3 * k + 1) as usize + delta as usize)?)
}

/// Shifts of the sixteen cosets for `a = 4`, `b = 4k+1`, grouped by the top
/// argument of their `q⁴`-binomial: `k+3`, `k+2`, `k+1`.
pub const A4_SHIFTS: [&[i64]; 3] = [&[0], &[4, 8, 5, 9, 2, 6, 6, 10, 3, 7], &[12, 9, 13, 11, 15]];

/// The sixteen-term decomposition of `Cat_{4,4k+1}(q)`.
pub fn check_coset_identity_a4(k: u64) -> Result<bool> {
    let k = k as i64;
    let mut rhs = LaurentPoly1::zero();
    for (offset, shifts) in A4_SHIFTS.iter().enumerate() {
        let bin = q_binomial_in_power(k + 3 - offset as i64, 3, 4);
        for &s in shifts.iter() {
            rhs += &bin.mul_monomial(s, &BigInt::from(1));
        }
    }
    Ok(rhs == cat_q(4, (4 * k + 1) as usize)?)
}

/// Unimodality of one residue-class coefficient subsequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueUnimodality {
    pub residue: i64,
    pub coefficients: Vec<String>,
    pub unimodal: bool,
}

/// For each `r ∈ [0, a)`, the coefficients of `q^{ak+r}` between the lowest
/// and highest such exponent (internal zeros included), with a unimodality
/// verdict.
pub fn unimodality_report(poly: &LaurentPoly1, a: usize) -> Vec<ResidueUnimodality> {
    let a = a.max(1) as i64;
    (0..a)
        .map(|r| {
            let exps: Vec<i64> = poly
                .terms()
                .map(|(e, _)| e)
                .filter(|e| e.rem_euclid(a) == r)
                .collect();
            let seq: Vec<BigInt> = match (exps.first(), exps.last()) {
                (Some(&lo), Some(&hi)) => (lo..=hi)
                    .step_by(a as usize)
                    .map(|e| poly.coeff(e))
                    .collect(),
                _ => Vec::new(),
            };
            ResidueUnimodality {
                residue: r,
                unimodal: is_unimodal(&seq),
                coefficients: seq.iter().map(BigInt::to_string).collect(),
            }
        })
        .collect()
}

fn is_unimodal(seq: &[BigInt]) -> bool {
    let mut i = 0;
    while i + 1 < seq.len() && seq[i] <= seq[i + 1] {
        i += 1;
    }
    while i + 1 < seq.len() && seq[i] >= seq[i + 1] {
        i += 1;
    }
    i + 1 >= seq.len()
}

/// One coset of `(aℤ)^a` in the trivial-determinant lattice, labelled by the
/// residues `r = z mod a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetShift {
    pub residues: Vec<u64>,
    /// `None` when the coset never meets any of the sampled simplices.
    pub shift: Option<i64>,
}

/// Outcome of the shift search for the `b` in one residue class mod `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueClassReport {
    pub residue: usize,
    pub b_values: Vec<usize>,
    pub cosets: Vec<CosetShift>,
    /// Every distinct multiset of shifts found, capped at [`MAX_SOLUTIONS`].
    pub solutions: Vec<Vec<i64>>,
    pub consistent: bool,
    pub unique: bool,
    /// The direct per-coset `q^a`-count equals `[m + a - 1 brack a - 1]_{q^a}`.
    pub profiles_are_binomials: bool,
    /// `Σ q^ι = [a]_{q²}[a]_{q³}⋯[a]_{q^{a-1}}` for the first solution.
    pub shift_product_identity: Option<bool>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgeSearchReport {
    pub a: usize,
    /// The grading used on each coset: `z = r + a·y ↦ a·Σ i·yᵢ`.
    pub grading: String,
    pub classes: Vec<ResidueClassReport>,
}

pub const MAX_SOLUTIONS: usize = 16;
const MAX_NODES: usize = 200_000;

/// Searches for `b`-independent shifts `ι(𝔠)` with
/// `Cat_{a,b}(q) = Σ_𝔠 q^{ι(𝔠)} · (q^a-count of 𝔠 ∩ simplex)` for every `b`
/// in `b_list`. Cosets depend on `b mod a`, so each residue class of `b` is
/// solved separately. Cosets whose counts agree for every sampled `b` are
/// interchangeable and receive their shifts in increasing order.
pub fn search_age_function(
    a: usize,
    b_list: &[usize],
    cap: EnumerationCap,
) -> Result<AgeSearchReport> {
    let mut by_residue: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &b in b_list {
        SimplexSpec::new(a, b)?;
        by_residue.entry(b % a).or_default().push(b);
    }
    let mut classes = Vec::new();
    for (residue, mut bs) in by_residue {
        bs.sort_unstable();
        bs.dedup();
        classes.push(search_class(a, residue, &bs, cap)?);
    }
    Ok(AgeSearchReport {
        a,
        grading: format!("z = r + {a}y ↦ {a}·Σ i·y_i"),
        classes,
    })
}

fn search_class(
    a: usize,
    residue: usize,
    bs: &[usize],
    cap: EnumerationCap,
) -> Result<ResidueClassReport> {
    // coset labels r ∈ [0,a)^a with Σr ≡ b and Σ i rᵢ ≡ 0 (mod a)
    let mut cosets: Vec<Vec<u64>> = Vec::new();
    let mut r = vec![0u64; a];
    loop {
        let s: u64 = r.iter().sum();
        let w: u64 = r.iter().enumerate().map(|(i, &v)| i as u64 * v).sum();
        if s % a as u64 == residue as u64 && w.is_multiple_of(a as u64) {
            cosets.push(r.clone());
        }
        let mut i = 0;
        while i < a && r[i] + 1 == a as u64 {
            r[i] = 0;
            i += 1;
        }
        if i == a {
            break;
        }
        r[i] += 1;
    }
    cosets.sort();
    let index: BTreeMap<Vec<u64>, usize> = cosets
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();

    let mut targets = Vec::new();
    // profiles[c][j] = q^a-count of coset c at b = bs[j]
    let mut profiles = vec![vec![LaurentPoly1::zero(); bs.len()]; cosets.len()];
    let mut binomial_ok = true;
    for (j, &b) in bs.iter().enumerate() {
        let spec = SimplexSpec::new(a, b)?;
        targets.push(cat_q(a, b)?);
        for rv in simplex::enumerate_rep_vectors(&spec, cap)? {
            let z = rv.entries();
            let label: Vec<u64> = z.iter().map(|v| v % a as u64).collect();
            let grade: u64 = z
                .iter()
                .enumerate()
                .map(|(i, v)| i as u64 * (v / a as u64))
                .sum();
            profiles[index[&label]][j].add_term((a as u64 * grade) as i64, BigInt::from(1));
        }
        for (c, label) in cosets.iter().enumerate() {
            let m = (b as i64 - label.iter().sum::<u64>() as i64).div_euclid(a as i64);
            let expected = q_binomial_in_power(m + a as i64 - 1, a as i64 - 1, a as i64);
            if profiles[c][j] != expected {
                binomial_ok = false;
            }
        }
    }

    // interchangeable cosets share a profile vector
    let mut groups: Vec<(Vec<LaurentPoly1>, Vec<usize>)> = Vec::new();
    for (c, prof) in profiles.iter().enumerate() {
        match groups.iter_mut().find(|(p, _)| p == prof) {
            Some((_, members)) => members.push(c),
            None => groups.push((prof.clone(), vec![c])),
        }
    }
    let mut search = ShiftSearch {
        groups: &groups,
        solutions: BTreeSet::new(),
        nodes: 0,
        first_stuck: None,
    };
    let mut remaining: Vec<usize> = groups.iter().map(|(_, m)| m.len()).collect();
    let mut assigned: Vec<Vec<i64>> = vec![Vec::new(); groups.len()];
    search.run(&mut targets, &mut remaining, &mut assigned);
    let truncated = search.nodes >= MAX_NODES;
    let solutions: Vec<Vec<Vec<i64>>> = search
        .solutions
        .iter()
        .take(MAX_SOLUTIONS)
        .cloned()
        .collect();

    let mut coset_shifts: Vec<CosetShift> = cosets
        .iter()
        .map(|r| CosetShift {
            residues: r.clone(),
            shift: None,
        })
        .collect();
    let mut flat_solutions = Vec::new();
    for sol in &solutions {
        let mut all: Vec<i64> = sol.iter().flatten().copied().collect();
        all.sort_unstable();
        flat_solutions.push(all);
    }
    let mut product_identity = None;
    if let Some(first) = solutions.first() {
        for (g, (_, members)) in groups.iter().enumerate() {
            for (slot, &c) in members.iter().enumerate() {
                coset_shifts[c].shift = first[g].get(slot).copied();
            }
        }
        if coset_shifts.iter().all(|c| c.shift.is_some()) {
            let mut sum = LaurentPoly1::zero();
            for c in &coset_shifts {
                sum.add_term(c.shift.unwrap(), BigInt::from(1));
            }
            let product = (2..a as i64).fold(LaurentPoly1::one(), |acc, j| {
                &acc * &q_int(a as u64).substitute_power(j)
            });
            product_identity = Some(sum == product);
        }
    }
    let consistent = !solutions.is_empty();
    let failure = if consistent {
        None
    } else if truncated {
        Some(format!("search abandoned after {MAX_NODES} nodes"))
    } else {
        Some(match search.first_stuck {
            Some(b_index) => format!(
                "no consistent shift; first obstruction at b = {}",
                bs[b_index]
            ),
            None => "no consistent shift".to_string(),
        })
    };
    Ok(ResidueClassReport {
        residue,
        b_values: bs.to_vec(),
        cosets: coset_shifts,
        unique: solutions.len() == 1 && !truncated,
        solutions: flat_solutions,
        consistent,
        profiles_are_binomials: binomial_ok,
        shift_product_identity: product_identity,
        failure,
    })
}

struct ShiftSearch<'g> {
    groups: &'g [(Vec<LaurentPoly1>, Vec<usize>)],
    solutions: BTreeSet<Vec<Vec<i64>>>,
    nodes: usize,
    first_stuck: Option<usize>,
}

impl ShiftSearch<'_> {
    fn run(
        &mut self,
        targets: &mut [LaurentPoly1],
        remaining: &mut [usize],
        assigned: &mut [Vec<i64>],
    ) {
        self.nodes += 1;
        if self.nodes >= MAX_NODES || self.solutions.len() >= MAX_SOLUTIONS {
            return;
        }
        let Some(j) = targets.iter().position(|t| !t.is_zero()) else {
            // leftover cosets must be invisible at every sampled b
            let all_invisible = self
                .groups
                .iter()
                .zip(remaining.iter())
                .all(|((prof, _), &n)| n == 0 || prof.iter().all(LaurentPoly1::is_zero));
            if all_invisible {
                let mut sol: Vec<Vec<i64>> = assigned.to_vec();
                for s in &mut sol {
                    s.sort_unstable();
                }
                self.solutions.insert(sol);
            }
            return;
        };
        let e = targets[j].min_degree().unwrap();
        if targets[j].coeff(e).is_negative() {
            self.first_stuck.get_or_insert(j);
            return;
        }
        let mut progressed = false;
        for g in 0..self.groups.len() {
            if remaining[g] == 0 {
                continue;
            }
            let prof = &self.groups[g].0;
            let Some(low) = prof[j].min_degree() else {
                continue;
            };
            let shift = e - low;
            // sorted assignment inside a group avoids permuted duplicates
            if assigned[g].last().is_some_and(|&last| last > shift) {
                continue;
            }
            let subtracted: Vec<LaurentPoly1> = targets
                .iter()
                .zip(prof.iter())
                .map(|(t, p)| t - &p.mul_monomial(shift, &BigInt::from(1)))
                .collect();
            if subtracted.iter().any(|t| !t.has_nonnegative_coeffs()) {
                continue;
            }
            progressed = true;
            let mut next = subtracted;
            remaining[g] -= 1;
            assigned[g].push(shift);
            self.run(&mut next, remaining, assigned);
            assigned[g].pop();
            remaining[g] += 1;
        }
        if !progressed {
            self.first_stuck.get_or_insert(j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly1 {
        LaurentPoly1::from_coeffs(c)
    }

    #[test]
    fn q_analogs() {
        assert_eq!(q_int(3), p(&[1, 1, 1]));
        assert_eq!(q_int(0), LaurentPoly1::zero());
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(7, 0).unwrap(), LaurentPoly1::one());
        assert_eq!(q_binomial(0, 0).unwrap(), LaurentPoly1::one());
        assert!(q_binomial(2, 3).is_err());
        assert!(q_binomial(-1, 0).is_err());
        assert!(q_binomial(3, -1).is_err());
    }

    #[test]
    fn binomial_against_factorials() {
        for n in 0..12u64 {
            for k in 0..=n {
                let via_fact = q_factorial(n)
                    .div_exact(&(&q_factorial(k) * &q_factorial(n - k)))
                    .unwrap();
                let b = q_binomial(n as i64, k as i64).unwrap();
                assert_eq!(b, via_fact);
                assert_eq!(b, q_binomial(n as i64, (n - k) as i64).unwrap());
                let deg = b.degree().unwrap();
                assert!(
                    (0..=deg).all(|e| b.coeff(e) == b.coeff(deg - e)),
                    "palindromic"
                );
                assert_eq!(b.eval_at_one(), BigInt::from(crate::util::binomial(n, k)));
            }
        }
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(cat_q(3, 4).unwrap(), p(&[1, 0, 1, 1, 1, 0, 1]));
        assert_eq!(cat_q(5, 1).unwrap(), LaurentPoly1::one());
        assert_eq!(cat_q(2, 3).unwrap(), p(&[1, 0, 1]));
        assert_eq!(cat_q(4, 6), Err(Error::NotCoprime { a: 4, b: 6 }));
    }

    #[test]
    fn catalan_sweep() {
        for a in 2..=6usize {
            for b in 1..=20usize {
                if gcd(a, b) != 1 {
                    continue;
                }
                let c = cat_q(a, b).unwrap();
                assert!(c.has_nonnegative_coeffs());
                assert_eq!(c.degree(), Some(((a - 1) * (b - 1)) as i64));
                assert_eq!(
                    c.eval_at_one(),
                    BigInt::from(crate::util::rational_catalan(a, b))
                );
            }
        }
    }

    #[test]
    fn coset_identities() {
        for k in 0..=6 {
            assert!(check_coset_identity_a3(k, 0).unwrap(), "a=3 k={k} δ=0");
            assert!(check_coset_identity_a3(k, 1).unwrap(), "a=3 k={k} δ=1");
            assert!(check_coset_identity_a4(k).unwrap(), "a=4 k={k}");
        }
        assert!(check_coset_identity_a3(1, 2).is_err());
    }

    #[test]
    fn a4_grouping_is_forced() {
        // with q^6 and q^10 attached to the k+1 binomial the total at q = 1 is 12, not 14
        let k = 1;
        let mut rhs = q_binomial_in_power(k + 3, 3, 4);
        for s in [4, 8, 5, 9, 2, 6, 3, 7] {
            rhs += &q_binomial_in_power(k + 2, 3, 4).mul_monomial(s, &BigInt::from(1));
        }
        for s in [12, 9, 13, 6, 10, 11, 15] {
            rhs += &q_binomial_in_power(k + 1, 3, 4).mul_monomial(s, &BigInt::from(1));
        }
        assert_eq!(rhs.eval_at_one(), BigInt::from(12));
        assert_ne!(rhs, cat_q(4, 5).unwrap());
    }

    #[test]
    fn unimodality() {
        let r = unimodality_report(&cat_q(3, 4).unwrap(), 3);
        let seqs: Vec<Vec<String>> = r.iter().map(|x| x.coefficients.clone()).collect();
        assert_eq!(seqs, vec![vec!["1", "1", "1"], vec!["1"], vec!["1"]]);
        assert!(r.iter().all(|x| x.unimodal));
        assert!(unimodality_report(&LaurentPoly1::one(), 4)
            .iter()
            .all(|x| x.unimodal));
        let bumpy = p(&[1, 0, 0, 0, 1]);
        assert!(!unimodality_report(&bumpy, 2)[0].unimodal);
    }

    #[test]
    fn age_search_a3() {
        let rep = search_age_function(3, &[4, 7, 10], EnumerationCap::default()).unwrap();
        assert_eq!(rep.classes.len(), 1);
        let class = &rep.classes[0];
        assert!(class.consistent && class.unique && class.profiles_are_binomials);
        assert_eq!(class.solutions, vec![vec![0, 2, 4]]);
        assert_eq!(class.shift_product_identity, Some(true));
    }

    #[test]
    fn age_search_a2() {
        let rep = search_age_function(2, &[3, 5, 7, 9], EnumerationCap::default()).unwrap();
        assert_eq!(rep.classes[0].solutions, vec![vec![0]]);
        for b in (1..=15).step_by(2) {
            let m = (b as i64 - 1) / 2;
            assert_eq!(cat_q(2, b).unwrap(), q_binomial_in_power(m + 1, 1, 2));
        }
    }

    #[test]
    fn age_search_a4() {
        let rep = search_age_function(4, &[5, 9], EnumerationCap::default()).unwrap();
        let class = &rep.classes[0];
        assert!(class.consistent, "{class:?}");
        let mut expected: Vec<i64> = A4_SHIFTS.iter().flat_map(|s| s.iter().copied()).collect();
        expected.sort_unstable();
        assert_eq!(class.solutions[0], expected);
        assert_eq!(class.shift_product_identity, Some(true));
    }

    #[test]
    fn age_search_rejects_non_coprime() {
        assert!(search_age_function(3, &[4, 6], EnumerationCap::default()).is_err());
    }
}
