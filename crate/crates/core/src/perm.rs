//! Permutation statistics `maj`, `inv`, `siz`, `sqin`, the left-decreasing
//! factorization code, and the joint distribution of `(siz, maj)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly2;
use crate::util::next_permutation;

/// Largest `n` for which [`distribution`] enumerates `S_n` by default.
pub const DEFAULT_MAX_N: usize = 9;

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    w: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(w: Vec<usize>) -> Result<Self> {
        Permutation::new(w)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.w
    }
}

impl Permutation {
    pub fn new(w: Vec<usize>) -> Result<Self> {
        let n = w.len();
        let mut seen = vec![false; n + 1];
        for &v in &w {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "{w:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { w })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            w: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.w
    }

    /// `σ(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.w[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different sizes"
        );
        Permutation {
            w: other.w.iter().map(|&i| self.w[i - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut w = vec![0; self.len()];
        for (i, &v) in self.w.iter().enumerate() {
            w[v - 1] = i + 1;
        }
        Permutation { w }
    }

    /// The decreasing cycle `1 ↦ k`, `j ↦ j-1` for `2 ≤ j ≤ k`, fixing the rest.
    pub fn decreasing_cycle(n: usize, k: usize) -> Permutation {
        assert!(1 <= k && k <= n);
        let w = (1..=n)
            .map(|j| match j {
                1 => k,
                j if j <= k => j - 1,
                j => j,
            })
            .collect();
        Permutation { w }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() >= 10 { " " } else { "" };
        let s: Vec<String> = self.w.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(sep))
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut w: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation { w: w.clone() }];
    while next_permutation(&mut w) {
        out.push(Permutation { w: w.clone() });
    }
    out
}

/// `DES(σ) = {i ∈ [1, n-1] : σ(i) > σ(i+1)}`.
pub fn des_set(s: &Permutation) -> Vec<usize> {
    (1..s.len()).filter(|&i| s.w[i - 1] > s.w[i]).collect()
}

pub fn des(s: &Permutation) -> usize {
    des_set(s).len()
}

/// Major index: the sum of the descent positions.
pub fn maj(s: &Permutation) -> u64 {
    des_set(s).iter().map(|&i| i as u64).sum()
}

/// Number of inversions.
pub fn inv(s: &Permutation) -> u64 {
    let w = &s.w;
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// `siz(σ) = Σ_{i ∈ DES} (n+1-i)·i - inv(σ)`.
pub fn siz(s: &Permutation) -> i64 {
    let n = s.len() as i64;
    let weighted: i64 = des_set(s)
        .iter()
        .map(|&i| (n + 1 - i as i64) * i as i64)
        .sum();
    weighted - inv(s) as i64
}

/// `sqin(σ) = inv(σ) + Σ_{i ∈ DES} i²`.
pub fn sqin(s: &Permutation) -> u64 {
    inv(s) + des_set(s).iter().map(|&i| (i * i) as u64).sum::<u64>()
}

/// `(a₁, …, a_n)` with `0 ≤ aᵢ < i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ValidSequence {
    a: Vec<usize>,
}

impl TryFrom<Vec<usize>> for ValidSequence {
    type Error = Error;

    fn try_from(a: Vec<usize>) -> Result<Self> {
        ValidSequence::new(a)
    }
}

impl From<ValidSequence> for Vec<usize> {
    fn from(v: ValidSequence) -> Self {
        v.a
    }
}

impl ValidSequence {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        for (i, &v) in a.iter().enumerate() {
            if v > i {
                return Err(Error::InvalidInput(format!(
                    "entry a_{} = {v} of {a:?} is not below {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(ValidSequence { a })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `aᵢ`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.a[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.a
    }
}

/// All valid sequences of length `n`, lexicographic.
pub fn all_valid_sequences(n: usize) -> Vec<ValidSequence> {
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    loop {
        out.push(ValidSequence { a: a.clone() });
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            if a[i] < i {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

/// `L(a) = C_n^{a_n} ∘ C_{n-1}^{a_{n-1}} ∘ ⋯ ∘ C_2^{a_2}`.
pub fn ld_decode(vs: &ValidSequence) -> Permutation {
    let n = vs.len();
    let mut acc = Permutation::identity(n);
    for k in 2..=n {
        let c = Permutation::decreasing_cycle(n, k);
        for _ in 0..vs.get(k) {
            acc = c.compose(&acc);
        }
    }
    acc
}

/// Inverse of [`ld_decode`]: the inner factors fix `n`, so `a_n = n - σ(n)`.
pub fn ld_encode(s: &Permutation) -> ValidSequence {
    let n = s.len();
    let mut a = vec![0usize; n];
    let mut cur = s.clone();
    for k in (2..=n).rev() {
        let ak = k - cur.apply(k);
        a[k - 1] = ak;
        let undo = Permutation::decreasing_cycle(n, k).inverse();
        for _ in 0..ak {
            cur = undo.compose(&cur);
        }
    }
    debug_assert_eq!(cur, Permutation::identity(n));
    ValidSequence { a }
}

/// Exhaustively checks `maj(L(a)) = Σ aᵢ` and `siz(L(a)) = Σ (n+1-i) aᵢ`.
pub fn check_ld_weights(n: usize) -> bool {
    all_valid_sequences(n).par_iter().all(|vs| {
        let s = ld_decode(vs);
        let sum: u64 = vs.entries().iter().map(|&v| v as u64).sum();
        let weighted: i64 = vs
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &v)| (n as i64 - i as i64) * v as i64)
            .sum();
        maj(&s) == sum && siz(&s) == weighted && ld_encode(&s) == *vs
    })
}

fn check_n(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n > max_n {
        let count: BigUint = (1..=n as u64).map(BigUint::from).product();
        return Err(Error::CapExceeded {
            what: format!("enumerating S_{n}"),
            count: count.to_string(),
            cap: max_n as u64,
        });
    }
    Ok(())
}

/// `Σ_{σ ∈ S_n} q^{f(σ)} t^{g(σ)}`, split across workers by `σ(1)`.
fn joint_distribution(n: usize, stat: fn(&Permutation) -> (i64, i64)) -> LaurentPoly2 {
    let blocks: Vec<LaurentPoly2> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            let mut poly = LaurentPoly2::zero();
            loop {
                let mut w = Vec::with_capacity(n);
                w.push(first);
                w.extend_from_slice(&rest);
                let (i, j) = stat(&Permutation { w });
                poly.add_term(i, j, BigInt::from(1));
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            poly
        })
        .collect();
    blocks.into_iter().sum()
}

/// `Σ_{σ ∈ S_n} q^{siz(σ)} t^{maj(σ)}` by brute force.
pub fn distribution(n: usize, max_n: usize) -> Result<LaurentPoly2> {
    check_n(n, max_n)?;
    Ok(joint_distribution(n, |s| (siz(s), maj(s) as i64)))
}

/// `[k]_{q^i t^j} = Σ_{m<k} q^{im} t^{jm}`.
fn q_int_monomial(k: usize, i: i64, j: i64) -> LaurentPoly2 {
    (0..k as i64)
        .map(|m| LaurentPoly2::monomial(i * m, j * m, 1))
        .sum()
}

/// `Π_{k=1}^n [k]_{q^{n+1-k} t}`.
pub fn sizmaj_product(n: usize) -> LaurentPoly2 {
    (1..=n).fold(LaurentPoly2::one(), |acc, k| {
        &acc * &q_int_monomial(k, (n + 1 - k) as i64, 1)
    })
}

/// `Π_{k=1}^n [k]_{t q^k}`.
pub fn sqin_product(n: usize) -> LaurentPoly2 {
    (1..=n).fold(LaurentPoly2::one(), |acc, k| {
        &acc * &q_int_monomial(k, k as i64, 1)
    })
}

pub fn check_sizmaj2(n: usize, max_n: usize) -> Result<bool> {
    Ok(distribution(n, max_n)? == sizmaj_product(n))
}

/// The `(sqin, maj)` distribution matches its product formula, and the
/// substitution `q ↦ q⁻¹`, `t ↦ t q^{n+1}` carries it to the `(siz, maj)`
/// product.
pub fn check_sqin_relation(n: usize, max_n: usize) -> Result<bool> {
    check_n(n, max_n)?;
    let dist = joint_distribution(n, |s| (sqin(s) as i64, maj(s) as i64));
    let product = sqin_product(n);
    let substituted = product.map_exponents([[-1, n as i64 + 1], [0, 1]]);
    Ok(dist == product && substituted == sizmaj_product(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn statistics_examples() {
        let id = Permutation::identity(4);
        assert_eq!(
            (des_set(&id), maj(&id), inv(&id), siz(&id), sqin(&id)),
            (vec![], 0, 0, 0, 0)
        );
        let s = perm(&[2, 1]);
        assert_eq!((des_set(&s), maj(&s), inv(&s), siz(&s)), (vec![1], 1, 1, 1));
        let s = perm(&[3, 2, 1]);
        assert_eq!(
            (des_set(&s), maj(&s), inv(&s), siz(&s)),
            (vec![1, 2], 3, 3, 4)
        );
        assert_eq!(des(&s), 2);
        assert_eq!(sqin(&s), 3 + 1 + 4);
    }

    #[test]
    fn validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(ValidSequence::new(vec![0, 2]).is_err());
        assert!(ValidSequence::new(vec![1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,3,1]").is_ok());
        assert!(serde_json::from_str::<Permutation>("[2,3,3]").is_err());
    }

    #[test]
    fn cycles_and_codes() {
        assert_eq!(Permutation::decreasing_cycle(2, 2), perm(&[2, 1]));
        assert_eq!(Permutation::decreasing_cycle(4, 3), perm(&[3, 1, 2, 4]));
        assert_eq!(
            ld_decode(&ValidSequence::new(vec![0, 0, 0]).unwrap()),
            Permutation::identity(3)
        );
        assert_eq!(
            ld_decode(&ValidSequence::new(vec![0, 1]).unwrap()),
            perm(&[2, 1])
        );
        let c = perm(&[2, 3, 1]);
        assert_eq!(c.compose(&c.inverse()), Permutation::identity(3));
        assert_eq!(c.compose(&perm(&[2, 1, 3])), perm(&[3, 2, 1]));
    }

    #[test]
    fn ld_round_trip() {
        for n in 1..=7 {
            let seqs = all_valid_sequences(n);
            let perms: std::collections::BTreeSet<Permutation> =
                seqs.iter().map(ld_decode).collect();
            assert_eq!(perms.len(), seqs.len());
            for vs in &seqs {
                assert_eq!(ld_encode(&ld_decode(vs)), *vs);
            }
        }
        for s in all_permutations(5) {
            assert_eq!(ld_decode(&ld_encode(&s)), s);
        }
    }

    #[test]
    fn ld_weights() {
        for n in 1..=7 {
            assert!(check_ld_weights(n), "n={n}");
        }
    }

    #[test]
    fn distributions() {
        let m = |i, j| LaurentPoly2::monomial(i, j, 1);
        assert_eq!(distribution(1, DEFAULT_MAX_N).unwrap(), LaurentPoly2::one());
        assert_eq!(distribution(2, DEFAULT_MAX_N).unwrap(), m(0, 0) + m(1, 1));
        assert_eq!(
            distribution(3, DEFAULT_MAX_N).unwrap(),
            m(0, 0) + m(1, 1) + m(2, 1) + m(2, 2) + m(3, 2) + m(4, 3)
        );
        for n in 1..=7 {
            assert!(check_sizmaj2(n, DEFAULT_MAX_N).unwrap(), "n={n}");
            assert!(check_sqin_relation(n, DEFAULT_MAX_N).unwrap(), "n={n}");
            let d = distribution(n, DEFAULT_MAX_N).unwrap();
            assert_eq!(d.eval_at_one(), (1..=n as i64).product::<i64>().into());
            assert!(d.terms().all(|((i, _), _)| i >= 0), "siz is nonnegative");
        }
        assert!(matches!(
            distribution(10, DEFAULT_MAX_N),
            Err(Error::CapExceeded { .. })
        ));
        assert!(distribution(0, DEFAULT_MAX_N).is_err());
    }

    fn arb_sequence() -> impl Strategy<Value = (ValidSequence, usize)> {
        (2usize..=7).prop_flat_map(|n| {
            let entries: Vec<BoxedStrategy<usize>> = (0..n).map(|i| (0..=i).boxed()).collect();
            (entries, 2..=n).prop_map(|(a, k)| (ValidSequence::new(a).unwrap(), k))
        })
    }

    proptest! {
        #[test]
        fn prefix_multiplication((vs, k) in arb_sequence()) {
            // P = C_k^{a_k} ∘ ⋯ ∘ C_2^{a_2}; one more C_k adds 1 to maj and n+1-k to siz
            let n = vs.len();
            prop_assume!(vs.get(k) + 1 < k);
            let mut prefix: Vec<usize> = vs.entries()[..k].to_vec();
            prefix.resize(n, 0);
            let p = ld_decode(&ValidSequence::new(prefix).unwrap());
            let next = Permutation::decreasing_cycle(n, k).compose(&p);
            prop_assert_eq!(maj(&next), maj(&p) + 1);
            prop_assert_eq!(siz(&next), siz(&p) + (n + 1 - k) as i64);
        }
    }
}
