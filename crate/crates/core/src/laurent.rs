//! Exact Laurent polynomials with big-integer coefficients in `q` and in
//! `(q, t)`. Zero coefficients are never stored, so structural equality is
//! polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial in one variable `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef.into());
        p
    }

    /// `Σ coeffs[i] q^i`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(i as i64, c.clone().into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `p(q) ↦ p(q^m)`.
    pub fn substitute_power(&self, m: i64) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e * m, c.clone());
        }
        out
    }

    /// Multiplication by `coef·q^exp`.
    pub fn mul_monomial(&self, exp: i64, coef: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e + exp, c * coef);
        }
        out
    }

    /// `self / divisor`, failing unless the division is exact.
    pub fn div_exact(&self, divisor: &LaurentPoly1) -> Result<LaurentPoly1> {
        let (Some(dtop), Some(dlow)) = (divisor.degree(), divisor.min_degree()) else {
            return Err(Error::InexactDivision("division by zero polynomial".into()));
        };
        let Some(low) = self.min_degree() else {
            return Ok(Self::zero());
        };
        let lead = divisor.coeff(dtop);
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(top) = rem.degree() {
            let qe = top - dtop;
            if qe < low - dlow {
                return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
            }
            let (qc, r) = rem.coeff(top).div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
            }
            rem = &rem - &divisor.mul_monomial(qe, &qc);
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            write_term(f, &mut first, c, &[(var, e)])?;
        }
        Ok(())
    }
}

/// Shared term printer: `c`, `q`, `3q^2`, `-q^-1 t`.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &BigInt,
    vars: &[(&str, i64)],
) -> fmt::Result {
    let neg = c.is_negative();
    if *first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    *first = false;
    let abs = c.abs();
    let mono: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{}", mono.join(" "))
    } else {
        write!(f, "{abs}{}", mono.join(" "))
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "q")
    }
}

impl Serialize for LaurentPoly1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = self
            .terms
            .iter()
            .map(|(&e, c)| (e, c.to_string()))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut p = Self::zero();
        for (e, c) in v {
            p.add_term(e, c.parse::<BigInt>().map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

/// A Laurent polynomial in `q` and `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// `coef · q^qe t^te`.
    pub fn monomial(qe: i64, te: i64, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(qe, te, coef.into());
        p
    }

    pub fn add_term(&mut self, qe: i64, te: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry((qe, te)).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&(qe, te));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, qe: i64, te: i64) -> BigInt {
        self.terms
            .get(&(qe, te))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `((q-exp, t-exp), coefficient)` in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `p(q, t) ↦ p(t, q)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, c.clone());
        }
        out
    }

    /// Sends `q^i t^j` to `q^{αi + βj + γ}`; e.g. `(1, -1, N)` computes
    /// `q^N p(q, 1/q)`.
    pub fn to_univariate(&self, alpha: i64, beta: i64, gamma: i64) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(alpha * i + beta * j + gamma, c.clone());
        }
        out
    }

    /// Sends `q^i t^j` to `q^{m₁₁i + m₁₂j} t^{m₂₁i + m₂₂j}`.
    pub fn map_exponents(&self, m: [[i64; 2]; 2]) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(
                m[0][0] * i + m[0][1] * j,
                m[1][0] * i + m[1][1] * j,
                c.clone(),
            );
        }
        out
    }

    /// `Σ c q^{i} t^{j}` from a polynomial in `q` by `q^e ↦ q^{ke} t^{le}`.
    pub fn from_univariate(p: &LaurentPoly1, k: i64, l: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(k * e, l * e, c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            write_term(f, &mut first, c, &[("q", i), ("t", j)])?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i64, i64, String)> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.to_string()))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(i64, i64, String)> = Vec::deserialize(d)?;
        let mut p = Self::zero();
        for (i, j, c) in v {
            p.add_term(i, j, c.parse::<BigInt>().map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

macro_rules! ring_ops {
    ($t:ident, $key:ty, $shift:expr) => {
        impl AddAssign<&$t> for $t {
            fn add_assign(&mut self, rhs: &$t) {
                for (k, c) in &rhs.terms {
                    let entry = self.terms.entry(*k).or_insert_with(BigInt::zero);
                    *entry += c;
                    if entry.is_zero() {
                        self.terms.remove(k);
                    }
                }
            }
        }

        impl SubAssign<&$t> for $t {
            fn sub_assign(&mut self, rhs: &$t) {
                for (k, c) in &rhs.terms {
                    let entry = self.terms.entry(*k).or_insert_with(BigInt::zero);
                    *entry -= c;
                    if entry.is_zero() {
                        self.terms.remove(k);
                    }
                }
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                let mut out = self.clone();
                out -= rhs;
                out
            }
        }

        impl Add for $t {
            type Output = $t;
            fn add(mut self, rhs: $t) -> $t {
                self += &rhs;
                self
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(mut self, rhs: $t) -> $t {
                self -= &rhs;
                self
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t {
                    terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
                }
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }

        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                let mut acc: BTreeMap<$key, BigInt> = BTreeMap::new();
                for (k1, c1) in &self.terms {
                    for (k2, c2) in &rhs.terms {
                        *acc.entry($shift(*k1, *k2)).or_insert_with(BigInt::zero) += c1 * c2;
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                $t { terms: acc }
            }
        }

        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }

        impl std::iter::Sum for $t {
            fn sum<I: Iterator<Item = $t>>(iter: I) -> $t {
                let mut out = $t::zero();
                for p in iter {
                    out += &p;
                }
                out
            }
        }
    };
}

ring_ops!(LaurentPoly1, i64, |a: i64, b: i64| a + b);
ring_ops!(LaurentPoly2, (i64, i64), |a: (i64, i64), b: (i64, i64)| (
    a.0 + b.0,
    a.1 + b.1
));

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p1(c: &[i64]) -> LaurentPoly1 {
        LaurentPoly1::from_coeffs(c)
    }

    #[test]
    fn arithmetic() {
        let a = p1(&[1, 1]);
        let b = p1(&[1, -1]);
        assert_eq!(&a * &b, p1(&[1, 0, -1]));
        assert_eq!(&a - &a, LaurentPoly1::zero());
        assert_eq!((&a + &b).coeff(0), BigInt::from(2));
        assert_eq!(a.pow(3), p1(&[1, 3, 3, 1]));
        assert_eq!(a.substitute_power(3), p1(&[1, 0, 0, 1]));
        assert_eq!(
            a.substitute_power(-1),
            LaurentPoly1::monomial(-1, 1) + LaurentPoly1::one()
        );
    }

    #[test]
    fn exact_division() {
        let num = p1(&[1, 0, 0, -1]);
        let den = p1(&[1, -1]);
        assert_eq!(num.div_exact(&den).unwrap(), p1(&[1, 1, 1]));
        assert!(matches!(
            p1(&[1, 0, 1]).div_exact(&den),
            Err(Error::InexactDivision(_))
        ));
        assert!(p1(&[1, 1]).div_exact(&p1(&[2, 2])).is_err());
        assert!(p1(&[1]).div_exact(&LaurentPoly1::zero()).is_err());
        let shifted = num.mul_monomial(-5, &BigInt::from(1));
        assert_eq!(
            shifted.div_exact(&den).unwrap(),
            p1(&[1, 1, 1]).mul_monomial(-5, &BigInt::from(1))
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            p1(&[1, 0, 1, 1, 1, 0, 1]).to_string(),
            "1 + q^2 + q^3 + q^4 + q^6"
        );
        assert_eq!(p1(&[0, -2]).to_string(), "-2q");
        assert_eq!(LaurentPoly1::zero().to_string(), "0");
        let mut p = LaurentPoly2::zero();
        p.add_term(1, 1, 1.into());
        p.add_term(3, 0, 1.into());
        p.add_term(0, -1, 2.into());
        assert_eq!(p.to_string(), "q^3 + q t + 2t^-1");
    }

    #[test]
    fn json_shapes() {
        let p = p1(&[1, 0, 3]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"[[0,"1"],[2,"3"]]"#);
        assert_eq!(
            serde_json::from_str::<LaurentPoly1>(r#"[[0,"1"],[2,"3"]]"#).unwrap(),
            p
        );
        let q = LaurentPoly2::monomial(1, 2, 5) + LaurentPoly2::monomial(0, 0, 1);
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"[[0,0,"1"],[1,2,"5"]]"#
        );
        assert_eq!(
            serde_json::from_str::<LaurentPoly2>(r#"[[0,0,"1"],[1,2,"5"]]"#).unwrap(),
            q
        );
        assert!(serde_json::from_str::<LaurentPoly1>(r#"[[0,"x"]]"#).is_err());
    }

    #[test]
    fn bivariate_maps() {
        let p = LaurentPoly2::monomial(2, 1, 1) + LaurentPoly2::monomial(0, 3, 2);
        assert_eq!(p.swap().swap(), p);
        assert_eq!(p.swap().coeff(3, 0), BigInt::from(2));
        assert_eq!(p.eval_at_one(), BigInt::from(3));
        // q^3 p(q, 1/q)
        assert_eq!(
            p.to_univariate(1, -1, 3),
            LaurentPoly1::monomial(4, 1) + LaurentPoly1::monomial(0, 2)
        );
        assert_eq!(p.map_exponents([[0, 1], [1, 0]]), p.swap());
        let u = p1(&[1, 1]);
        assert_eq!(
            LaurentPoly2::from_univariate(&u, 2, 1),
            LaurentPoly2::one() + LaurentPoly2::monomial(2, 1, 1)
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly1> {
        proptest::collection::vec((-4i64..6, -5i64..5), 0..6).prop_map(|v| {
            let mut p = LaurentPoly1::zero();
            for (e, c) in v {
                p.add_term(e, c.into());
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}
