//! Janowski-to-Janowski implication for the harmonic mean `P = 2p(p+zp')/(2p+zp')`:
//! derived coefficients, hypothesis inequalities, the boundary ratio and the
//! final bound. Polynomial conditions are generic over [`Scalar`], so the same
//! code runs in `f64` and in exact [`BigRational`] arithmetic.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::{Debug, Display};
use std::str::FromStr;

/// Number kinds the conditions are evaluated in.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + ToPrimitive + FromPrimitive + Debug + Display + Send + Sync
{
}

impl<T> Scalar for T where
    T: Num + Signed + Clone + PartialOrd + ToPrimitive + FromPrimitive + Debug + Display + Send + Sync
{
}

pub(crate) fn n<S: Scalar>(v: i64) -> S {
    S::from_i64(v).expect("small integer")
}

pub(crate) fn f<S: Scalar>(x: &S) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Config(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(i));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if frac.is_empty() && int.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{int}{frac}").trim_start_matches('0').to_string())
        .unwrap_or_else(|_| BigInt::zero());
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let v = BigRational::new(digits, scale);
    Ok(if neg { -v } else { v })
}

/// `(A, B, D, E)` with `−1 ≤ B < A ≤ 1` and `−1 ≤ E < D ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JanowskiQuad<S> {
    pub a: S,
    pub b: S,
    pub d: S,
    pub e: S,
}

impl<S: Scalar> JanowskiQuad<S> {
    pub fn new(a: S, b: S, d: S, e: S) -> Result<Self> {
        let one: S = S::one();
        let m1 = -one.clone();
        if !(m1 <= b && b < a && a <= one) {
            return Err(Error::OutOfRange(format!("need -1 <= B < A <= 1, got A={a}, B={b}")));
        }
        if !(m1 <= e && e < d && d <= one) {
            return Err(Error::OutOfRange(format!("need -1 <= E < D <= 1, got D={d}, E={e}")));
        }
        Ok(JanowskiQuad { a, b, d, e })
    }

    pub fn to_f64(&self) -> JanowskiQuad<f64> {
        JanowskiQuad { a: f(&self.a), b: f(&self.b), d: f(&self.d), e: f(&self.e) }
    }
}

impl JanowskiQuad<BigRational> {
    pub fn parse(a: &str, b: &str, d: &str, e: &str) -> Result<Self> {
        Self::new(parse_rational(a)?, parse_rational(b)?, parse_rational(d)?, parse_rational(e)?)
    }

    /// The tuple `(3/8, 0, 1, 123/128)`.
    pub fn reference() -> Self {
        Self::parse("3/8", "0", "1", "123/128").expect("valid tuple")
    }
}

/// `L, M, N` (numerator) and `G, H, I, J` (denominator) at a given `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiralCoeffs<S> {
    pub k: S,
    pub l: S,
    pub m: S,
    pub n: S,
    pub g: S,
    pub h: S,
    pub i: S,
    pub j: S,
}

/// Coefficients of `2ω(1+Aω)(1+Bω) + (1+2Aω−Bω)kω = ω(L + Mω + Nω²)` and
/// `2(1+Aω)(1+Bω)Φ₁ + (A−B)Φ₂kω = G + Hω + Iω² + Jω³`, where
/// `Φ₁ = E(1+Aω) − D(1+Bω)` and `Φ₂ = 2E(1+Aω) − D(1+Bω)`.
pub fn spiral_coeffs<S: Scalar>(q: &JanowskiQuad<S>, k: S) -> Result<SpiralCoeffs<S>> {
    if k < S::one() {
        return Err(Error::OutOfRange(format!("k = {k} < 1")));
    }
    let (a, b, d, e) = (q.a.clone(), q.b.clone(), q.d.clone(), q.e.clone());
    let two: S = n(2);
    let l = k.clone() + two.clone();
    let m = two.clone() * (a.clone() + b.clone()) + k.clone() * (two.clone() * a.clone() - b.clone());
    let nn = two.clone() * a.clone() * b.clone();
    let g = two.clone() * (e.clone() - d.clone());
    let h = two.clone() * a.clone() * e.clone() * (k.clone() + n(2))
        - two.clone() * b.clone() * e.clone() * (k.clone() - n(1))
        - a.clone() * d.clone() * (k.clone() + n(2))
        + b.clone() * d.clone() * (k.clone() - n(4));
    let i = two.clone() * a.clone() * a.clone() * e.clone() * (k.clone() + n(1))
        - two.clone() * a.clone() * b.clone() * e.clone() * (k.clone() - n(2))
        - a.clone() * b.clone() * d.clone() * (k.clone() + n(4))
        + b.clone() * b.clone() * d.clone() * (k.clone() - n(2));
    let j = two.clone() * a.clone() * a.clone() * b.clone() * e - two * a * b.clone() * b * d;
    Ok(SpiralCoeffs { k, l, m, n: nn, g, h, i, j })
}

/// `I` as typeset with the factor `(k + 2)` on the `2A²E` term; kept only
/// so tests can show it disagrees with the expansion.
pub fn printed_i<S: Scalar>(q: &JanowskiQuad<S>, k: S) -> S {
    let (a, b, d, e) = (q.a.clone(), q.b.clone(), q.d.clone(), q.e.clone());
    let two: S = n(2);
    two.clone() * a.clone() * a.clone() * e.clone() * (k.clone() + n(2))
        - two * a.clone() * b.clone() * e * (k.clone() - n(2))
        - a * b.clone() * d.clone() * (k.clone() + n(4))
        + b.clone() * b * d * (k - n(2))
}

/// `min{a t² + b t + c : −1 ≤ t ≤ 1}` by the vertex/endpoint rule.
pub fn min_quad<S: Scalar>(a: S, b: S, c: S) -> S {
    let two: S = n(2);
    if a > S::zero() && b.abs() < two.clone() * a.clone() {
        (n::<S>(4) * a.clone() * c - b.clone() * b) / (n::<S>(4) * a)
    } else {
        a - b.abs() + c
    }
}

impl<S: Scalar> SpiralCoeffs<S> {
    /// `|L + Me^{iθ} + Ne^{2iθ}|²` as `[c₀, c₁, c₂]` in `t = cos θ`.
    pub fn num_poly(&self) -> [S; 3] {
        let (l, m, nn) = (self.l.clone(), self.m.clone(), self.n.clone());
        let two: S = n(2);
        [
            l.clone() * l.clone() + m.clone() * m.clone() + nn.clone() * nn.clone() - two.clone() * l.clone() * nn.clone(),
            two * (l.clone() + nn.clone()) * m,
            n::<S>(4) * l * nn,
        ]
    }

    /// `|G + He^{iθ} + Ie^{2iθ} + Je^{3iθ}|²` as `[c₀, c₁, c₂, c₃]` in `t = cos θ`.
    pub fn den_poly(&self) -> [S; 4] {
        let (g, h, i, j) = (self.g.clone(), self.h.clone(), self.i.clone(), self.j.clone());
        let two: S = n(2);
        [
            g.clone() * g.clone() + h.clone() * h.clone() + i.clone() * i.clone() + j.clone() * j.clone()
                - two.clone() * g.clone() * i.clone()
                - two.clone() * h.clone() * j.clone(),
            two.clone() * g.clone() * h.clone() + two.clone() * h.clone() * i.clone() - n::<S>(6) * g.clone() * j.clone()
                + two * i.clone() * j.clone(),
            n::<S>(4) * (g.clone() * i + h * j.clone()),
            n::<S>(8) * g * j,
        ]
    }

    /// `((L − |M| + N) / (G + H + I + J))²`
    pub fn psi(&self) -> Result<S> {
        let den = self.g.clone() + self.h.clone() + self.i.clone() + self.j.clone();
        if den.is_zero() {
            return Err(Error::Degenerate("G + H + I + J = 0".into()));
        }
        let r = (self.l.clone() - self.m.abs() + self.n.clone()) / den;
        Ok(r.clone() * r)
    }

    /// Literal reading `GH + HI − 3GJ + IJ + 12GJ − 4|GI + HJ|`.
    pub fn cond2_margin(&self) -> S {
        let (g, h, i, j) = (self.g.clone(), self.h.clone(), self.i.clone(), self.j.clone());
        g.clone() * h.clone() + h.clone() * i.clone() - n::<S>(3) * g.clone() * j.clone() + i.clone() * j.clone()
            + n::<S>(12) * g.clone() * j.clone()
            - n::<S>(4) * (g * i + h * j).abs()
    }

    /// Same with `−3GJ + 12GJ` combined into `9GJ`.
    pub fn cond2_margin_simplified(&self) -> S {
        let (g, h, i, j) = (self.g.clone(), self.h.clone(), self.i.clone(), self.j.clone());
        g.clone() * h.clone() + h.clone() * i.clone() + n::<S>(9) * g.clone() * j.clone() + i.clone() * j.clone()
            - n::<S>(4) * (g * i + h * j).abs()
    }
}

pub fn eval_poly<S: Scalar>(coeffs: &[S], t: S) -> S {
    coeffs.iter().rev().fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cond2Entry<S> {
    pub k: S,
    pub margin: S,
    pub holds: bool,
    /// Literal and simplified readings give the same verdict.
    pub readings_agree: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<S> {
    /// `2E(1+A) − D(1+B)`, required `> 0`.
    pub cond3_value: S,
    pub cond3: bool,
    pub cond2: Vec<Cond2Entry<S>>,
    /// `LHS − RHS` of the third inequality, required `≥ 0`.
    pub cond4_margin: S,
    pub cond4: bool,
    /// Leading `k²` coefficient of the second condition's margin,
    /// `(A−B)²(2E−D)(2AE−BD)`; positive means it holds for all large `k`.
    pub cond2_leading_k2: S,
}

impl<S: Scalar> ConditionReport<S> {
    pub fn cond2_all(&self) -> bool {
        self.cond2.iter().all(|c| c.holds)
    }

    pub fn all(&self) -> bool {
        self.cond3 && self.cond4 && self.cond2_all()
    }
}

pub fn cond3_value<S: Scalar>(q: &JanowskiQuad<S>) -> S {
    n::<S>(2) * q.e.clone() * (S::one() + q.a.clone()) - q.d.clone() * (S::one() + q.b.clone())
}

pub fn cond4_margin<S: Scalar>(q: &JanowskiQuad<S>) -> S {
    let (a, b, d, e) = (q.a.clone(), q.b.clone(), q.d.clone(), q.e.clone());
    let one = S::one();
    let two: S = n(2);
    let lhs = n::<S>(3)
        + two.clone() * a.clone() * b.clone()
        + d * (b.clone() + one.clone()) * (a.clone() * (two.clone() * b.clone() + n(3)) + b.clone() + two.clone());
    let rhs = two.clone() * e * (a.clone() + one.clone()) * (a.clone() * (b.clone() + two) + one)
        + (n::<S>(4) * a + b).abs();
    lhs - rhs
}

pub fn check_conditions<S: Scalar>(q: &JanowskiQuad<S>, k_range: &[S]) -> Result<ConditionReport<S>> {
    let c3 = cond3_value(q);
    let c4 = cond4_margin(q);
    let mut cond2 = Vec::with_capacity(k_range.len());
    for k in k_range {
        let sc = spiral_coeffs(q, k.clone())?;
        let margin = sc.cond2_margin();
        let simplified = sc.cond2_margin_simplified();
        let holds = margin >= S::zero();
        cond2.push(Cond2Entry { k: k.clone(), holds, readings_agree: holds == (simplified >= S::zero()), margin });
    }
    let (a, b, d, e) = (q.a.clone(), q.b.clone(), q.d.clone(), q.e.clone());
    let two: S = n(2);
    let amb = a.clone() - b.clone();
    let lead = amb.clone() * amb * (two.clone() * e.clone() - d.clone()) * (two * a * e - b * d);
    Ok(ConditionReport { cond3: c3 > S::zero(), cond3_value: c3, cond2, cond4: c4 >= S::zero(), cond4_margin: c4, cond2_leading_k2: lead })
}

/// `{1, 2, …, 100}`
pub fn default_k_range<S: Scalar>() -> Vec<S> {
    (1..=100).map(n).collect()
}

/// `(A − B)|L + Me^{iθ} + Ne^{2iθ}| / |G + He^{iθ} + Ie^{2iθ} + Je^{3iθ}|`
/// through the modulus-squared expansions in `cos θ`.
pub fn boundary_ratio(q: &JanowskiQuad<f64>, k: f64, theta: f64) -> Result<f64> {
    let sc = spiral_coeffs(q, k)?;
    let t = theta.cos();
    let num2 = eval_poly(&sc.num_poly(), t);
    let den2 = eval_poly(&sc.den_poly(), t);
    if !(den2 > 1e-28) {
        return Err(Error::Pole(num_complex::Complex64::from_polar(1.0, theta)));
    }
    Ok((q.a - q.b) * num2.max(0.0).sqrt() / den2.sqrt())
}

/// `(3 + 2AB − |4A + B|) / (2E(A+1)(A(B+2)+1) − D(B+1)(A(2B+3)+B+2))`
pub fn final_bound<S: Scalar>(q: &JanowskiQuad<S>) -> Result<S> {
    let (num, den) = final_bound_parts(q);
    if den <= S::zero() {
        return Err(Error::BoundInapplicable(den.to_string()));
    }
    Ok(num / den)
}

pub fn final_bound_parts<S: Scalar>(q: &JanowskiQuad<S>) -> (S, S) {
    let (a, b, d, e) = (q.a.clone(), q.b.clone(), q.d.clone(), q.e.clone());
    let one = S::one();
    let two: S = n(2);
    let num = n::<S>(3) + two.clone() * a.clone() * b.clone() - (n::<S>(4) * a.clone() + b.clone()).abs();
    let den = two.clone() * e * (a.clone() + one.clone()) * (a.clone() * (b.clone() + two.clone()) + one.clone())
        - d * (b.clone() + one) * (a * (two * b.clone() + n(3)) + b + n(2));
    (num, den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiMonotone<S> {
    pub nondecreasing: bool,
    pub at_least_psi1: bool,
    pub psi1: S,
    pub values: Vec<(S, S)>,
}

/// Checks that `ψ(k)` does not decrease along `k_grid` and stays `≥ ψ(1)`.
pub fn psi_k_monotone<S: Scalar>(q: &JanowskiQuad<S>, k_grid: &[S], tol: S) -> Result<PsiMonotone<S>> {
    if cond3_value(q) <= S::zero() {
        return Err(Error::Precondition("2E(1+A) − D(1+B) must be positive".into()));
    }
    let psi1 = spiral_coeffs(q, S::one())?.psi()?;
    let mut values = Vec::with_capacity(k_grid.len());
    for k in k_grid {
        values.push((k.clone(), spiral_coeffs(q, k.clone())?.psi()?));
    }
    let nondecreasing = values.windows(2).all(|w| w[1].1.clone() + tol.clone() >= w[0].1);
    let at_least_psi1 = values.iter().all(|(_, v)| v.clone() + tol.clone() >= psi1);
    Ok(PsiMonotone { nondecreasing, at_least_psi1, psi1, values })
}

/// Inclusive arithmetic range of rationals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatRange {
    pub start: String,
    pub stop: String,
    pub step: String,
}

impl RatRange {
    pub fn new(start: &str, stop: &str, step: &str) -> Self {
        RatRange { start: start.into(), stop: stop.into(), step: step.into() }
    }

    pub fn values(&self) -> Result<Vec<BigRational>> {
        let (start, stop, step) = (parse_rational(&self.start)?, parse_rational(&self.stop)?, parse_rational(&self.step)?);
        if !step.is_positive() {
            return Err(Error::Config("range step must be positive".into()));
        }
        let mut out = Vec::new();
        let mut v = start;
        while v <= stop {
            out.push(v.clone());
            v += step.clone();
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub a: RatRange,
    pub b: RatRange,
    pub d: RatRange,
    pub e: RatRange,
}

impl Default for GridSpec {
    /// 17 × 9 × 5 × 33 points.
    fn default() -> Self {
        GridSpec {
            a: RatRange::new("-1", "1", "1/8"),
            b: RatRange::new("-1", "1", "1/4"),
            d: RatRange::new("-1", "1", "1/2"),
            e: RatRange::new("3/4", "1", "1/128"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibleTuple {
    pub a: String,
    pub b: String,
    pub d: String,
    pub e: String,
    pub cond3_value: String,
    pub cond4_margin: String,
    pub final_bound: String,
    pub final_bound_f64: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub grid_points: usize,
    pub valid_tuples: usize,
    pub feasible: Vec<FeasibleTuple>,
}

/// Exact-rational scan for tuples satisfying all three conditions on
/// `k_range` together with `final_bound ≥ 1`. Output is ordered by tuple.
pub fn feasibility_scan(spec: &GridSpec, k_range: &[BigRational]) -> Result<ScanResult> {
    let (av, bv, dv, ev) = (spec.a.values()?, spec.b.values()?, spec.d.values()?, spec.e.values()?);
    let mut tuples = Vec::new();
    for a in &av {
        for b in &bv {
            for d in &dv {
                for e in &ev {
                    if let Ok(q) = JanowskiQuad::new(a.clone(), b.clone(), d.clone(), e.clone()) {
                        tuples.push(q);
                    }
                }
            }
        }
    }
    let grid_points = av.len() * bv.len() * dv.len() * ev.len();
    let valid_tuples = tuples.len();
    let one = BigRational::one();
    let feasible: Vec<FeasibleTuple> = tuples
        .par_iter()
        .filter_map(|q| {
            let c3 = cond3_value(q);
            if !c3.is_positive() {
                return None;
            }
            let c4 = cond4_margin(q);
            if c4.is_negative() {
                return None;
            }
            let fb = final_bound(q).ok()?;
            if fb < one {
                return None;
            }
            let cond2_ok = k_range
                .iter()
                .all(|k| spiral_coeffs(q, k.clone()).map(|s| !s.cond2_margin().is_negative()).unwrap_or(false));
            cond2_ok.then(|| FeasibleTuple {
                a: q.a.to_string(),
                b: q.b.to_string(),
                d: q.d.to_string(),
                e: q.e.to_string(),
                cond3_value: c3.to_string(),
                cond4_margin: c4.to_string(),
                final_bound_f64: f(&fb),
                final_bound: fb.to_string(),
            })
        })
        .collect();
    Ok(ScanResult { grid_points, valid_tuples, feasible })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(r("3/8"), BigRational::new(3.into(), 8.into()));
        assert_eq!(r("-0.375"), BigRational::new((-3).into(), 8.into()));
        assert_eq!(r("2"), BigRational::from_integer(2.into()));
        assert_eq!(r("1."), BigRational::from_integer(1.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn quad_invariants() {
        assert!(JanowskiQuad::parse("3/8", "0", "1", "1").is_err());
        assert!(JanowskiQuad::parse("1/2", "1/2", "1", "0").is_err());
        assert!(JanowskiQuad::new(1.5, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn coefficients_hand_example() {
        let q = JanowskiQuad::new(1.0, 0.0, 1.0, 0.0).unwrap();
        let s = spiral_coeffs(&q, 1.0).unwrap();
        assert_eq!((s.l, s.m, s.n, s.g), (3.0, 4.0, 0.0, -2.0));
        // H = 2·1·0·3 − 0 − 1·1·3 + 0 = −3
        assert_eq!(s.h, -3.0);
        // I = 2·0·2 − 0 − 0 + 0 = 0
        assert_eq!(s.i, 0.0);
        assert_eq!(s.j, 0.0);
        assert!(spiral_coeffs(&q, 0.5).is_err());
    }

    #[test]
    fn zero_b_kills_n_and_j() {
        for (a, d, e, k) in [(0.3, 0.9, -0.2, 1.0), (0.9, 0.1, -1.0, 7.5)] {
            let s = spiral_coeffs(&JanowskiQuad::new(a, 0.0, d, e).unwrap(), k).unwrap();
            assert_eq!(s.n, 0.0);
            assert_eq!(s.j, 0.0);
        }
    }

    #[test]
    fn reference_coefficients_golden() {
        let s = spiral_coeffs(&JanowskiQuad::reference(), BigRational::one()).unwrap();
        assert_eq!(s.l, r("3"));
        assert_eq!(s.m, r("3/2"));
        assert_eq!(s.n, r("0"));
        assert_eq!(s.g, r("-5/64"));
        assert_eq!(s.h, r("531/512"));
        assert_eq!(s.i, r("1107/2048"));
        assert_eq!(s.j, r("0"));
    }

    #[test]
    fn printed_i_differs_from_expansion() {
        let q = JanowskiQuad::reference();
        let k = r("1");
        let s = spiral_coeffs(&q, k.clone()).unwrap();
        // difference is 2A²E
        let diff = printed_i(&q, k) - s.i;
        assert_eq!(diff, r("2") * q.a.clone() * q.a.clone() * q.e.clone());
    }

    #[test]
    fn min_quad_examples() {
        assert_eq!(min_quad(1.0, 0.0, 0.0), 0.0);
        assert_eq!(min_quad(1.0, 3.0, 0.0), -2.0);
        assert_eq!(min_quad(-1.0, 0.0, 5.0), 4.0);
        assert_eq!(min_quad(r("1"), r("1"), r("0")), r("-1/4"));
    }

    #[test]
    fn reference_conditions() {
        let q = JanowskiQuad::reference();
        let rep = check_conditions(&q, &default_k_range()).unwrap();
        assert!(rep.cond3 && rep.cond4 && rep.cond2_all());
        assert_eq!(rep.cond4_margin, r("1/2048"));
        assert!(rep.cond2_leading_k2.is_positive());
        assert!(rep.cond2.iter().all(|c| c.readings_agree));
        let fb = final_bound(&q).unwrap();
        assert!(fb > BigRational::one());
        assert!((f(&fb) - 1.000325626).abs() < 1e-8);
    }

    #[test]
    fn cond3_fails_for_unit_a_zero_e() {
        let q = JanowskiQuad::new(r("1"), r("0"), r("1"), r("0")).unwrap();
        let rep = check_conditions(&q, &[r("1")]).unwrap();
        assert_eq!(rep.cond3_value, r("-1"));
        assert!(!rep.cond3);
        assert!(matches!(psi_k_monotone(&q, &[r("1")], r("0")), Err(Error::Precondition(_))));
    }

    #[test]
    fn final_bound_other_tuple() {
        let q = JanowskiQuad::parse("1/2", "0", "1", "1/2").unwrap();
        // numerator 3 − 2 = 1, denominator 2·½·(3/2)·2 − (3/2 + 2) = −1/2
        assert!(matches!(final_bound(&q), Err(Error::BoundInapplicable(_))));
        assert_eq!(final_bound_parts(&q), (r("1"), r("-1/2")));
    }

    #[test]
    fn boundary_ratio_at_zero() {
        let q = JanowskiQuad::new(0.375, 0.0, 1.0, 123.0 / 128.0).unwrap();
        let s = spiral_coeffs(&q, 2.0).unwrap();
        let want = (q.a - q.b) * (s.l + s.m + s.n) / (s.g + s.h + s.i + s.j).abs();
        assert!((boundary_ratio(&q, 2.0, 0.0).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn psi_at_one_is_bound_squared() {
        let q = JanowskiQuad::reference();
        let psi1 = spiral_coeffs(&q, BigRational::one()).unwrap().psi().unwrap();
        let fb = final_bound(&q).unwrap();
        assert_eq!(psi1, fb.clone() * fb);
    }

    #[test]
    fn reference_psi_decreases() {
        // ψ(k) → (1/4)² / (A(2E−D) + 2A²E)² ≈ 0.165 as k → ∞, below ψ(1)
        let q = JanowskiQuad::reference().to_f64();
        let ks: Vec<f64> = (0..=990).map(|i| 1.0 + 0.1 * i as f64).collect();
        let m = psi_k_monotone(&q, &ks, 1e-12).unwrap();
        assert!(!m.nondecreasing && !m.at_least_psi1);
        let last = m.values.last().unwrap().1;
        assert!(last < 0.18 && m.psi1 > 1.0);
    }

    #[test]
    fn reference_ratio_dips_below_one() {
        let q = JanowskiQuad::reference().to_f64();
        let v = boundary_ratio(&q, 1.0, std::f64::consts::PI).unwrap();
        assert!((v - 0.97875).abs() < 1e-5, "{v}");
    }

    #[test]
    fn scan_keeps_reference_and_drops_cond3_failures() {
        let spec = GridSpec {
            a: RatRange::new("1/4", "1/2", "1/8"),
            b: RatRange::new("0", "0", "1"),
            d: RatRange::new("1", "1", "1"),
            e: RatRange::new("120/128", "124/128", "1/128"),
        };
        let res = feasibility_scan(&spec, &default_k_range()).unwrap();
        assert!(res.feasible.iter().any(|t| t.a == "3/8" && t.b == "0" && t.d == "1" && t.e == "123/128"));
        let low = GridSpec { e: RatRange::new("-1", "1/3", "1/3"), ..spec };
        // E < D(1+B)/(2(1+A)) for every tuple here
        let res = feasibility_scan(&low, &default_k_range()).unwrap();
        assert!(res.feasible.is_empty());
    }
}
