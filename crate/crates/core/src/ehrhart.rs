//! Exact quasipolynomial fitting, the count/size polynomials of the core
//! simplices, and Ehrhart reciprocity on small rational polytopes.
//!
//! Naming: `F_a(b)` counts `(a,b)`-cores, `G_a(b)` sums their sizes, and
//! `P_a = G_a / F_a` is the average size.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplex::{self, EnumerationCap, SimplexSpec};
use crate::util::gcd;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A polynomial in one variable with exact rational coefficients, stored
/// lowest degree first without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `Π (t - rᵢ)` times `scale`.
    pub fn from_roots(roots: &[i64], scale: BigRational) -> Self {
        roots.iter().fold(Self::new(vec![scale]), |acc, &r| {
            acc.mul(&Self::from_ints(&[-r, 1]))
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&rat(t))
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient, failing on a nonzero remainder.
    pub fn div_exact(&self, divisor: &RationalPoly) -> Result<RationalPoly> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InexactDivision(
                "division by the zero polynomial".into(),
            ));
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::InexactDivision(format!("({self}) / ({divisor})")))
            };
        }
        let lead = &divisor.coeffs[dd];
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
        }
        Ok(Self::new(quot))
    }

    /// The unique polynomial of degree `< points.len()` through `points`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<RationalPoly> {
        let mut out = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::new(vec![yi.clone()]);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = xi - xj;
                if denom.is_zero() {
                    return Err(Error::InvalidInput(
                        "interpolation nodes must be distinct".into(),
                    ));
                }
                basis = basis.mul(&Self::new(vec![-xj / &denom, BigRational::one() / &denom]));
            }
            out = out.add(&basis);
        }
        Ok(out)
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Coefficients as decimal strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigRational::to_string).collect()
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let coef = if abs.is_integer() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{coef}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{coef}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// A quasipolynomial: constituent `t mod period` is used at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub period: usize,
    pub constituents: Vec<RationalPoly>,
    pub degree: usize,
}

impl Quasipolynomial {
    pub fn eval(&self, t: i64) -> BigRational {
        self.constituents[t.rem_euclid(self.period as i64) as usize].eval_int(t)
    }
}

impl Serialize for Quasipolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Quasipolynomial", 2)?;
        st.serialize_field("period", &self.period)?;
        let cs: Vec<Vec<String>> = self
            .constituents
            .iter()
            .map(RationalPoly::coeff_strings)
            .collect();
        st.serialize_field("constituents", &cs)?;
        st.end()
    }
}

/// Exact samples `t ↦ f(t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SampleSeries {
    pub values: BTreeMap<i64, BigRational>,
}

impl SampleSeries {
    pub fn insert(&mut self, t: i64, v: BigRational) {
        self.values.insert(t, v);
    }

    pub fn get(&self, t: i64) -> Option<&BigRational> {
        self.values.get(&t)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromIterator<(i64, BigRational)> for SampleSeries {
    fn from_iter<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        SampleSeries {
            values: iter.into_iter().collect(),
        }
    }
}

/// Interpolates each residue class on its `degree + 1` smallest arguments and
/// validates the fit on all remaining samples of that class.
pub fn fit_quasipolynomial(
    samples: &SampleSeries,
    period: usize,
    degree: usize,
) -> Result<Quasipolynomial> {
    if period == 0 {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let mut constituents = Vec::with_capacity(period);
    for r in 0..period as i64 {
        let class: Vec<(i64, &BigRational)> = samples
            .values
            .iter()
            .filter(|(t, _)| t.rem_euclid(period as i64) == r)
            .map(|(&t, v)| (t, v))
            .collect();
        if class.len() < degree + 2 {
            return Err(Error::InvalidInput(format!(
                "residue class {r} mod {period} has {} samples, need at least {} for degree {degree}",
                class.len(),
                degree + 2
            )));
        }
        let nodes: Vec<(BigRational, BigRational)> = class[..=degree]
            .iter()
            .map(|(t, v)| (rat(*t), (*v).clone()))
            .collect();
        let poly = RationalPoly::interpolate(&nodes)?;
        for (t, v) in &class[degree + 1..] {
            let fitted = poly.eval_int(*t);
            if &fitted != *v {
                return Err(Error::ValidationFailed {
                    residue: r,
                    t: *t,
                    expected: v.to_string(),
                    fitted: fitted.to_string(),
                });
            }
        }
        constituents.push(poly);
    }
    let degree = constituents
        .iter()
        .filter_map(RationalPoly::degree)
        .max()
        .unwrap_or(0);
    Ok(Quasipolynomial {
        period,
        constituents,
        degree,
    })
}

/// Single polynomial fit (period 1).
pub fn fit_polynomial(samples: &SampleSeries, degree: usize) -> Result<RationalPoly> {
    Ok(fit_quasipolynomial(samples, 1, degree)?
        .constituents
        .remove(0))
}

fn residue_b_values(a: usize, residue: usize, samples: usize) -> Result<Vec<usize>> {
    if a < 2 || gcd(a, residue % a) != 1 {
        return Err(Error::NotCoprime { a, b: residue });
    }
    let start = if residue.is_multiple_of(a) {
        a
    } else {
        residue % a
    };
    Ok((0..samples).map(|j| start + j * a).collect())
}

/// `b ↦ #(a,b)-cores` for the first `samples` values `b ≡ residue (mod a)`,
/// by enumeration.
pub fn core_count_series(
    a: usize,
    residue: usize,
    samples: usize,
    cap: EnumerationCap,
) -> Result<SampleSeries> {
    series_for(a, &residue_b_values(a, residue, samples)?, cap, |cores| {
        rat(cores.len() as i64)
    })
}

/// `b ↦ Σ |λ|` over the `(a,b)`-cores, same sampling as [`core_count_series`].
pub fn core_qsum_series(
    a: usize,
    residue: usize,
    samples: usize,
    cap: EnumerationCap,
) -> Result<SampleSeries> {
    series_for(a, &residue_b_values(a, residue, samples)?, cap, |cores| {
        BigRational::from_integer(BigInt::from(simplex::size_summary(cores).total))
    })
}

fn series_for(
    a: usize,
    bs: &[usize],
    cap: EnumerationCap,
    f: impl Fn(&[crate::abacus::ChargeVector]) -> BigRational + Sync,
) -> Result<SampleSeries> {
    let values: Result<Vec<(i64, BigRational)>> = bs
        .iter()
        .map(|&b| {
            let cores = simplex::enumerate_cores(&SimplexSpec::new(a, b)?, cap)?;
            Ok((b as i64, f(&cores)))
        })
        .collect();
    Ok(values?.into_iter().collect())
}

/// Fitted count and size polynomials for one `a`, with the root and
/// reflection checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootStructureReport {
    pub a: usize,
    pub b_values: Vec<i64>,
    pub f: RationalPoly,
    pub g: RationalPoly,
    pub p: Option<RationalPoly>,
    pub f_degree_ok: bool,
    pub g_degree_ok: bool,
    /// `F_a` equals `C(a+b,a)/(a+b)` at every sample.
    pub f_matches_catalan: bool,
    pub f_roots_ok: bool,
    pub g_roots_ok: bool,
    pub p_at_one_zero: bool,
    pub p_at_minus_a_minus_one_zero: bool,
    /// `P_a(0) = -(a²-1)/24`.
    pub p_at_zero_ok: bool,
    /// `P_a(b) = (a+b+1)(a-1)(b-1)/24`.
    pub p_is_armstrong: bool,
    /// Sign `ε` with `G_a(-a-b) = ε·G_a(b)` for all tested `b`, if any.
    pub g_reflection_sign: Option<i64>,
}

impl RootStructureReport {
    pub fn passed(&self) -> bool {
        let expected_sign = if self.a % 2 == 1 { 1 } else { -1 };
        self.f_degree_ok
            && self.g_degree_ok
            && self.f_matches_catalan
            && self.f_roots_ok
            && self.g_roots_ok
            && self.p_at_one_zero
            && self.p_at_minus_a_minus_one_zero
            && self.p_at_zero_ok
            && self.p_is_armstrong
            && self.g_reflection_sign == Some(expected_sign)
    }
}

impl Serialize for RootStructureReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RootStructureReport", 15)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b_values", &self.b_values)?;
        st.serialize_field("f", &self.f.coeff_strings())?;
        st.serialize_field("g", &self.g.coeff_strings())?;
        st.serialize_field("p", &self.p.as_ref().map(RationalPoly::coeff_strings))?;
        st.serialize_field("f_degree_ok", &self.f_degree_ok)?;
        st.serialize_field("g_degree_ok", &self.g_degree_ok)?;
        st.serialize_field("f_matches_catalan", &self.f_matches_catalan)?;
        st.serialize_field("f_roots_ok", &self.f_roots_ok)?;
        st.serialize_field("g_roots_ok", &self.g_roots_ok)?;
        st.serialize_field("p_at_one_zero", &self.p_at_one_zero)?;
        st.serialize_field(
            "p_at_minus_a_minus_one_zero",
            &self.p_at_minus_a_minus_one_zero,
        )?;
        st.serialize_field("p_at_zero_ok", &self.p_at_zero_ok)?;
        st.serialize_field("p_is_armstrong", &self.p_is_armstrong)?;
        st.serialize_field("g_reflection_sign", &self.g_reflection_sign)?;
        st.end()
    }
}

/// Fits `F_a` (degree `a-1`) and `G_a` (degree `a+1`) as single polynomials
/// through samples from every residue class coprime to `a`, holding out three
/// samples for validation, then checks roots, `P_a` and the reflection
/// `b ↦ -a-b`.
pub fn check_root_structure(a: usize, cap: EnumerationCap) -> Result<RootStructureReport> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("need a ≥ 2, got {a}")));
    }
    let needed = a + 1 + 2 + 3;
    let bs: Vec<usize> = (1..).filter(|&b| gcd(a, b) == 1).take(needed).collect();
    let cores: Vec<(i64, Vec<crate::abacus::ChargeVector>)> = bs
        .par_iter()
        .map(|&b| {
            Ok((
                b as i64,
                simplex::enumerate_cores(&SimplexSpec::new(a, b)?, cap)?,
            ))
        })
        .collect::<Result<_>>()?;
    let counts: SampleSeries = cores
        .iter()
        .map(|(b, c)| (*b, rat(c.len() as i64)))
        .collect();
    let sums: SampleSeries = cores
        .iter()
        .map(|(b, c)| {
            (
                *b,
                BigRational::from_integer(BigInt::from(simplex::size_summary(c).total)),
            )
        })
        .collect();
    let f = fit_polynomial(&counts, a - 1)?;
    let g = fit_polynomial(&sums, a + 1)?;
    let f_matches_catalan = bs.iter().all(|&b| {
        f.eval_int(b as i64)
            == BigRational::from_integer(BigInt::from(crate::util::rational_catalan(a, b)))
    });
    let negatives = 1..a as i64;
    let f_roots_ok = negatives.clone().all(|r| f.eval_int(-r).is_zero());
    let g_roots_ok = negatives.clone().all(|r| g.eval_int(-r).is_zero());
    let p = g.div_exact(&f).ok();
    let ai = a as i64;
    let armstrong = RationalPoly::from_ints(&[ai + 1, 1])
        .mul(&RationalPoly::from_ints(&[-1, 1]))
        .mul(&RationalPoly::new(vec![BigRational::new(
            BigInt::from(ai - 1),
            BigInt::from(24),
        )]));
    let (p1, pm, p0, parm) = match &p {
        Some(p) => (
            p.eval_int(1).is_zero(),
            p.eval_int(-ai - 1).is_zero(),
            p.eval_int(0) == BigRational::new(BigInt::from(-(ai * ai - 1)), BigInt::from(24)),
            *p == armstrong,
        ),
        None => (false, false, false, false),
    };
    let sign = [1i64, -1]
        .into_iter()
        .find(|&eps| (-3..=12).all(|b| g.eval_int(-ai - b) == g.eval_int(b) * rat(eps)));
    Ok(RootStructureReport {
        a,
        b_values: bs.iter().map(|&b| b as i64).collect(),
        f_degree_ok: f.degree() == Some(a - 1),
        g_degree_ok: g.degree() == Some(a + 1),
        f,
        g,
        p,
        f_matches_catalan,
        f_roots_ok,
        g_roots_ok,
        p_at_one_zero: p1,
        p_at_minus_a_minus_one_zero: pm,
        p_at_zero_ok: p0,
        p_is_armstrong: parm,
        g_reflection_sign: sign,
    })
}

/// `{x ∈ ℝⁿ : A x ≤ rhs}`; the dilate `tP` is `A x ≤ t·rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub name: String,
    pub dim: usize,
    pub rows: Vec<(Vec<i64>, i64)>,
    bbox: Vec<(BigRational, BigRational)>,
}

impl RationalPolytope {
    /// Validates that the inequalities cut out a bounded polytope; the
    /// bounding box comes from its vertices.
    pub fn new(name: &str, dim: usize, rows: Vec<(Vec<i64>, i64)>) -> Result<Self> {
        if dim == 0 || rows.iter().any(|(r, _)| r.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "inequalities of {name} do not all have {dim} coefficients"
            )));
        }
        let vertices = vertices(dim, &rows);
        if vertices.is_empty() {
            return Err(Error::InvalidInput(format!("{name} has no vertices")));
        }
        let bbox = (0..dim)
            .map(|i| {
                let lo = vertices.iter().map(|v| v[i].clone()).min().unwrap();
                let hi = vertices.iter().map(|v| v[i].clone()).max().unwrap();
                (lo, hi)
            })
            .collect();
        let p = RationalPolytope {
            name: name.to_string(),
            dim,
            rows,
            bbox,
        };
        // unbounded directions would show up as lattice points outside the box
        for probe in [1i64, 2] {
            let mut outside = false;
            p.for_each_box_point(probe + 1, &mut |x| {
                if p.contains(x, probe, false) && !p.in_box(x, probe) {
                    outside = true;
                }
            });
            if outside {
                return Err(Error::InvalidInput(format!("{name} is unbounded")));
            }
        }
        Ok(p)
    }

    fn in_box(&self, x: &[i64], t: i64) -> bool {
        x.iter().zip(&self.bbox).all(|(&v, (lo, hi))| {
            let v = rat(v);
            v >= lo * rat(t) && v <= hi * rat(t)
        })
    }

    fn contains(&self, x: &[i64], t: i64, strict: bool) -> bool {
        self.rows.iter().all(|(r, b)| {
            let lhs: i64 = r.iter().zip(x).map(|(a, v)| a * v).sum();
            if strict {
                lhs < t * b
            } else {
                lhs <= t * b
            }
        })
    }

    /// Lattice points of the box around `scale·P` (scale ≥ 0), slightly
    /// enlarged.
    fn for_each_box_point(&self, scale: i64, f: &mut dyn FnMut(&[i64])) {
        let ranges: Vec<(i64, i64)> = self
            .bbox
            .iter()
            .map(|(lo, hi)| {
                let lo = (lo * rat(scale)).floor().to_integer();
                let hi = (hi * rat(scale)).ceil().to_integer();
                let lo: i64 = i64::try_from(lo).unwrap_or(i64::MIN / 4);
                let hi: i64 = i64::try_from(hi).unwrap_or(i64::MAX / 4);
                (lo - 1, hi + 1)
            })
            .collect();
        let mut x: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            f(&x);
            let mut i = 0;
            loop {
                if i == self.dim {
                    return;
                }
                x[i] += 1;
                if x[i] <= ranges[i].1 {
                    break;
                }
                x[i] = ranges[i].0;
                i += 1;
            }
        }
    }

    /// `Σ_{x ∈ tP ∩ ℤⁿ} w(x)` (or over the interior), where `w` is the
    /// monomial with exponent vector `weight`, or 1.
    pub fn lattice_sum(&self, t: i64, interior: bool, weight: Option<&[u32]>) -> BigInt {
        let mut total = BigInt::zero();
        self.for_each_box_point(t, &mut |x| {
            if self.contains(x, t, interior) {
                total += monomial_value(x, weight);
            }
        });
        total
    }

    /// The segment `[0, 1] ⊂ ℝ¹`.
    pub fn segment() -> Self {
        Self::new("segment", 1, vec![(vec![-1], 0), (vec![1], 1)]).unwrap()
    }

    /// `x, y ≥ 0, 2x + y ≤ 1`.
    pub fn half_triangle() -> Self {
        Self::new(
            "triangle",
            2,
            vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![2, 1], 1)],
        )
        .unwrap()
    }

    /// `xᵢ ≥ 0, Σ xᵢ ≤ 1` in `ℝⁿ`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut rows: Vec<(Vec<i64>, i64)> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = -1;
                (r, 0)
            })
            .collect();
        rows.push((vec![1; n], 1));
        Self::new(&format!("simplex{n}"), n, rows).unwrap()
    }
}

fn monomial_value(x: &[i64], weight: Option<&[u32]>) -> BigInt {
    match weight {
        None => BigInt::one(),
        Some(e) => x
            .iter()
            .zip(e)
            .map(|(&v, &k)| BigInt::from(v).pow(k))
            .product(),
    }
}

/// Vertices: feasible unique solutions of every `dim`-subset of rows at
/// equality.
fn vertices(dim: usize, rows: &[(Vec<i64>, i64)]) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    let mut pick = Vec::with_capacity(dim);
    fn choose(
        start: usize,
        dim: usize,
        rows: &[(Vec<i64>, i64)],
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<BigRational>>,
    ) {
        if pick.len() == dim {
            if let Some(x) = solve(dim, rows, pick) {
                let feasible = rows.iter().all(|(r, b)| {
                    let lhs: BigRational = r.iter().zip(&x).map(|(a, v)| rat(*a) * v).sum();
                    lhs <= rat(*b)
                });
                if feasible && !out.contains(&x) {
                    out.push(x);
                }
            }
            return;
        }
        for i in start..rows.len() {
            pick.push(i);
            choose(i + 1, dim, rows, pick, out);
            pick.pop();
        }
    }
    choose(0, dim, rows, &mut pick, &mut out);
    out
}

/// Gaussian elimination on the chosen rows; `None` if singular.
fn solve(dim: usize, rows: &[(Vec<i64>, i64)], pick: &[usize]) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = pick
        .iter()
        .map(|&i| {
            let mut row: Vec<BigRational> = rows[i].0.iter().map(|&v| rat(v)).collect();
            row.push(rat(rows[i].1));
            row
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..dim {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[dim].clone()).collect())
}

/// One reciprocity comparison at `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityPoint {
    pub t: i64,
    /// `(-1)ⁿ L(f, P, -t)` from the fit.
    pub predicted: String,
    /// `Σ_{y ∈ tP°} f(-y)`, counted directly.
    pub direct: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub polytope: String,
    pub weight: Option<Vec<u32>>,
    pub fitted: Quasipolynomial,
    pub points: Vec<ReciprocityPoint>,
    pub holds: bool,
}

/// Fits `L(f, P, t)` on `t = 1..=t_max` and compares `(-1)ⁿ L(f, P, -t)` with
/// the direct sum of `f` over `-(tP°)` for `t = 1..=t_max/2`.
pub fn reciprocity_check(
    p: &RationalPolytope,
    weight: Option<&[u32]>,
    period: usize,
    degree: usize,
    t_max: i64,
) -> Result<ReciprocityReport> {
    let samples: SampleSeries = (1..=t_max)
        .into_par_iter()
        .map(|t| {
            (
                t,
                BigRational::from_integer(p.lattice_sum(t, false, weight)),
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let fitted = fit_quasipolynomial(&samples, period, degree)?;
    let sign = if p.dim.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    };
    let neg_weight = |x: &[i64]| {
        let y: Vec<i64> = x.iter().map(|v| -v).collect();
        monomial_value(&y, weight)
    };
    let mut points = Vec::new();
    let mut holds = true;
    for t in 1..=t_max / 2 {
        let predicted = &sign * fitted.eval(-t);
        let mut direct = BigInt::zero();
        p.for_each_box_point(t, &mut |x| {
            if p.contains(x, t, true) {
                direct += neg_weight(x);
            }
        });
        let direct = BigRational::from_integer(direct);
        holds &= predicted == direct;
        points.push(ReciprocityPoint {
            t,
            predicted: predicted.to_string(),
            direct: direct.to_string(),
        });
    }
    Ok(ReciprocityReport {
        polytope: p.name.clone(),
        weight: weight.map(<[u32]>::to_vec),
        fitted,
        points,
        holds,
    })
}
