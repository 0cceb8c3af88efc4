//! Catalog of closed-form analytic maps on the unit disk.
//!
//! Every map is an expression tree whose nodes know their exact first and
//! second derivatives, so evaluation always yields `(f, f', f'')` at once.
//! Powers and roots use the principal branch; arguments on the cut are
//! rejected rather than evaluated.

mod grid;
mod jet;
mod json;

pub use grid::DiskGrid;
pub use jet::Jet;

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Slack allowed on `|z| <= 1` for points computed as `e^{iθ}`.
pub const DISK_SLACK: f64 = 1e-12;

/// Tolerance used when matching boundary parameters against declared corners.
pub const CORNER_MATCH: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticMap {
    Constant(Complex64),
    Identity,
    /// `a + b z`
    Affine { a: Complex64, b: Complex64 },
    /// `(1 + A z) / (1 + B z)`
    Moebius { a: f64, b: f64 },
    /// `e^z`
    Exp,
    /// `√(1 + z)`
    Sqrt1p,
    /// `base(z)^exponent`, principal branch
    Power { base: Box<AnalyticMap>, exponent: f64 },
    /// `2 / (1 + e^{-z})`
    Sigmoid,
    /// `1 + sin z`
    Sine,
    /// `z + √(1 + z²)`
    Crescent,
    /// `c₀ + c₁ z + c₂ z² + …`
    Polynomial(Vec<Complex64>),
    Sum(Box<AnalyticMap>, Box<AnalyticMap>),
    Product(Box<AnalyticMap>, Box<AnalyticMap>),
    Quotient(Box<AnalyticMap>, Box<AnalyticMap>),
    /// `inner(c z)` with `|c| <= 1`
    Scaled { c: Complex64, inner: Box<AnalyticMap> },
    /// `outer(inner(z))`
    Compose { outer: Box<AnalyticMap>, inner: Box<AnalyticMap> },
}

impl AnalyticMap {
    pub fn constant(c: f64) -> Self {
        AnalyticMap::Constant(Complex64::new(c, 0.0))
    }

    pub fn moebius(a: f64, b: f64) -> Self {
        AnalyticMap::Moebius { a, b }
    }

    pub fn power(base: AnalyticMap, exponent: f64) -> Self {
        AnalyticMap::Power { base: Box::new(base), exponent }
    }

    pub fn polynomial<I: IntoIterator<Item = Complex64>>(coeffs: I) -> Self {
        AnalyticMap::Polynomial(coeffs.into_iter().collect())
    }

    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        AnalyticMap::Polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn sum(a: AnalyticMap, b: AnalyticMap) -> Self {
        AnalyticMap::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: AnalyticMap, b: AnalyticMap) -> Self {
        AnalyticMap::Product(Box::new(a), Box::new(b))
    }

    pub fn quotient(a: AnalyticMap, b: AnalyticMap) -> Self {
        AnalyticMap::Quotient(Box::new(a), Box::new(b))
    }

    /// `inner(c z)`; rejects `|c| > 1`.
    pub fn scaled(c: Complex64, inner: AnalyticMap) -> Result<Self> {
        if c.norm() > 1.0 + DISK_SLACK {
            return Err(Error::OutOfRange(format!("scale |c| = {} exceeds 1", c.norm())));
        }
        Ok(AnalyticMap::Scaled { c, inner: Box::new(inner) })
    }

    pub fn compose(outer: AnalyticMap, inner: AnalyticMap) -> Self {
        AnalyticMap::Compose { outer: Box::new(outer), inner: Box::new(inner) }
    }

    /// Structural test for the zero function.
    pub fn is_identically_zero(&self) -> bool {
        match self {
            AnalyticMap::Constant(c) => *c == ZERO,
            AnalyticMap::Polynomial(cs) => cs.iter().all(|c| *c == ZERO),
            AnalyticMap::Affine { a, b } => *a == ZERO && *b == ZERO,
            AnalyticMap::Product(a, b) => a.is_identically_zero() || b.is_identically_zero(),
            AnalyticMap::Quotient(a, _) => a.is_identically_zero(),
            AnalyticMap::Sum(a, b) => a.is_identically_zero() && b.is_identically_zero(),
            AnalyticMap::Scaled { inner, .. } => inner.is_identically_zero(),
            AnalyticMap::Compose { outer, .. } => outer.is_identically_zero(),
            _ => false,
        }
    }

    /// Evaluate `(f, f', f'')` at a point of the closed unit disk.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
        Ok(self.eval_jet(z)?.tuple())
    }

    pub fn eval_jet(&self, z: Complex64) -> Result<Jet> {
        if z.norm() > 1.0 + DISK_SLACK {
            return Err(Error::OutsideDisk(z));
        }
        self.jet_at(z)
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_jet(z)?.f)
    }

    /// Evaluation without the unit-disk check; used for compositions and
    /// finite-difference stencils that may step slightly outside.
    pub fn jet_at(&self, z: Complex64) -> Result<Jet> {
        match self {
            AnalyticMap::Constant(c) => Ok(Jet::constant(*c)),
            AnalyticMap::Identity => Ok(Jet::variable(z)),
            AnalyticMap::Affine { a, b } => Ok(Jet::new(a + b * z, *b, ZERO)),
            AnalyticMap::Moebius { a, b } => {
                let den = 1.0 + b * z;
                if den.norm() < 1e-300 {
                    return Err(Error::Pole(z));
                }
                let f = (1.0 + a * z) / den;
                let d1 = (a - b) / (den * den);
                let d2 = -2.0 * b * d1 / den;
                Ok(Jet::new(f, d1, d2))
            }
            AnalyticMap::Exp => {
                let e = z.exp();
                Ok(Jet::new(e, e, e))
            }
            AnalyticMap::Sqrt1p => {
                let u = ONE + z;
                let s = principal_sqrt(u)?;
                let d1 = 0.5 / s;
                let d2 = -0.25 / (s * u);
                Ok(Jet::new(s, d1, d2))
            }
            AnalyticMap::Power { base, exponent } => {
                let b = base.jet_at(z)?;
                power_jet(b.f, *exponent).map(|g| g.after(b))
            }
            AnalyticMap::Sigmoid => {
                let den = ONE + (-z).exp();
                if den.norm() < 1e-300 {
                    return Err(Error::Pole(z));
                }
                let s = ONE / den;
                let s1 = s * (ONE - s);
                Ok(Jet::new(2.0 * s, 2.0 * s1, 2.0 * s1 * (ONE - 2.0 * s)))
            }
            AnalyticMap::Sine => Ok(Jet::new(ONE + z.sin(), z.cos(), -z.sin())),
            AnalyticMap::Crescent => {
                let u = ONE + z * z;
                let s = principal_sqrt(u)?;
                Ok(Jet::new(z + s, ONE + z / s, ONE / (s * u)))
            }
            AnalyticMap::Polynomial(cs) => Ok(horner(cs, z)),
            AnalyticMap::Sum(a, b) => Ok(a.jet_at(z)? + b.jet_at(z)?),
            AnalyticMap::Product(a, b) => Ok(a.jet_at(z)? * b.jet_at(z)?),
            AnalyticMap::Quotient(a, b) => {
                let den = b.jet_at(z)?;
                if den.f.norm() < 1e-300 {
                    return Err(Error::Pole(z));
                }
                Ok(a.jet_at(z)?.div(den))
            }
            AnalyticMap::Scaled { c, inner } => {
                let g = inner.jet_at(c * z)?;
                Ok(Jet::new(g.f, c * g.d1, c * c * g.d2))
            }
            AnalyticMap::Compose { outer, inner } => {
                let u = inner.jet_at(z)?;
                Ok(outer.jet_at(u.f)?.after(u))
            }
        }
    }

    /// Boundary parameters (angles in `(-π, π]`) at which the map has a
    /// declared corner: poles, branch points and critical points of the
    /// catalog constructors.
    pub fn declared_corners(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_corners(&mut out);
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| angle_distance(*a, *b) < CORNER_MATCH);
        out
    }

    fn collect_corners(&self, out: &mut Vec<f64>) {
        match self {
            AnalyticMap::Moebius { b, .. } => {
                if (b.abs() - 1.0).abs() < 1e-15 {
                    out.push(if *b < 0.0 { 0.0 } else { PI });
                }
            }
            AnalyticMap::Sqrt1p => out.push(PI),
            AnalyticMap::Crescent => {
                out.push(PI / 2.0);
                out.push(-PI / 2.0);
            }
            AnalyticMap::Power { base, .. } => {
                base.collect_corners(out);
                base.collect_unit_zeros(out);
            }
            AnalyticMap::Sum(a, b) | AnalyticMap::Product(a, b) | AnalyticMap::Quotient(a, b) => {
                a.collect_corners(out);
                b.collect_corners(out);
            }
            AnalyticMap::Scaled { c, inner } => {
                if (c.norm() - 1.0).abs() < 1e-15 {
                    let shift = c.arg();
                    let mut inner_corners = Vec::new();
                    inner.collect_corners(&mut inner_corners);
                    out.extend(inner_corners.into_iter().map(|t| wrap_angle(t - shift)));
                }
            }
            AnalyticMap::Compose { outer, inner } => {
                if matches!(**inner, AnalyticMap::Identity) {
                    outer.collect_corners(out);
                } else {
                    inner.collect_corners(out);
                }
            }
            _ => {}
        }
    }

    fn collect_unit_zeros(&self, out: &mut Vec<f64>) {
        match self {
            AnalyticMap::Moebius { a, .. } if (a.abs() - 1.0).abs() < 1e-15 => {
                out.push(if *a < 0.0 { 0.0 } else { PI });
            }
            AnalyticMap::Identity => out.push(PI),
            _ => {}
        }
    }
}

fn horner(cs: &[Complex64], z: Complex64) -> Jet {
    let mut f = ZERO;
    let mut d1 = ZERO;
    let mut d2 = ZERO;
    for c in cs.iter().rev() {
        d2 = d2 * z + 2.0 * d1;
        d1 = d1 * z + f;
        f = f * z + c;
    }
    Jet::new(f, d1, d2)
}

fn on_cut(w: Complex64) -> bool {
    w.re < 0.0 && w.im.abs() <= 1e-14 * w.re.abs()
}

/// Principal square root, rejecting the cut and the branch point.
pub fn principal_sqrt(w: Complex64) -> Result<Complex64> {
    if w.norm() < 1e-300 {
        return Err(Error::Pole(w));
    }
    if on_cut(w) {
        return Err(Error::BranchCut(w));
    }
    Ok(w.sqrt())
}

/// Principal power `w^e` for real `e`. Integer exponents skip the cut test.
pub fn principal_pow(w: Complex64, e: f64) -> Result<Complex64> {
    if e == 0.0 {
        return if w == ZERO { Err(Error::ZeroBase) } else { Ok(ONE) };
    }
    if e == 1.0 {
        return Ok(w);
    }
    if w == ZERO {
        return if e > 0.0 { Ok(ZERO) } else { Err(Error::ZeroBase) };
    }
    if e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
        return Ok(w.powi(e as i32));
    }
    if on_cut(w) {
        return Err(Error::BranchCut(w));
    }
    Ok((e * w.ln()).exp())
}

fn power_jet(b: Complex64, e: f64) -> Result<Jet> {
    if b.norm() < 1e-300 {
        // derivatives of w^e blow up at 0 unless e is 0, 1 or an integer >= 2
        if e == 0.0 || e == 1.0 || (e.fract() == 0.0 && e >= 2.0) {
            let f = principal_pow(b, e).unwrap_or(ZERO);
            let d1 = if e == 1.0 { ONE } else { ZERO };
            let d2 = if e == 2.0 { Complex64::new(2.0, 0.0) } else { ZERO };
            return Ok(Jet::new(f, d1, d2));
        }
        return Err(Error::Pole(b));
    }
    let f = principal_pow(b, e)?;
    let p1 = f / b;
    let p2 = p1 / b;
    Ok(Jet::new(f, e * p1, e * (e - 1.0) * p2))
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_angle(t: f64) -> f64 {
    let mut r = t.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

pub fn is_corner(theta: f64, corners: &[f64]) -> bool {
    corners.iter().any(|&c| angle_distance(theta, c) < CORNER_MATCH)
}

/// Max relative deviation between the analytic `(f', f'')` and central
/// differences along the real and imaginary directions. `f''` is checked
/// against the difference quotient of the analytic `f'`.
pub fn fd_residual(map: &AnalyticMap, z: Complex64, h: f64) -> Result<f64> {
    if !(h > 0.0) || z + h == z || (z + Complex64::new(0.0, h)) == z {
        return Err(Error::StepUnderflow(h));
    }
    let an = map.jet_at(z)?;
    let mut worst: f64 = 0.0;
    for dir in [ONE, Complex64::new(0.0, 1.0)] {
        let step = dir * h;
        let plus = map.jet_at(z + step)?;
        let minus = map.jet_at(z - step)?;
        let fd1 = (plus.f - minus.f) / (2.0 * step);
        let fd2 = (plus.d1 - minus.d1) / (2.0 * step);
        worst = worst.max(relative(fd1, an.d1)).max(relative(fd2, an.d2));
    }
    Ok(worst)
}

fn relative(approx: Complex64, exact: Complex64) -> f64 {
    (approx - exact).norm() / exact.norm().max(1.0)
}

/// `h(e^{2πik/n})` for `k = 0..n`, skipping declared corner parameters.
pub fn boundary_samples(map: &AnalyticMap, n: usize) -> Result<Vec<Complex64>> {
    let corners = map.declared_corners();
    Ok(boundary_samples_with(map, n, &corners)?.into_iter().map(|(_, w)| w).collect())
}

/// Same as [`boundary_samples`] with an explicit corner list; returns
/// `(θ, h(e^{iθ}))` pairs in increasing `θ ∈ [0, 2π)`.
pub fn boundary_samples_with(
    map: &AnalyticMap,
    n: usize,
    corners: &[f64],
) -> Result<Vec<(f64, Complex64)>> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("boundary resolution {n} < 3")));
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        if is_corner(theta, corners) {
            continue;
        }
        let w = map.value(Complex64::from_polar(1.0, theta))?;
        out.push((theta, w));
    }
    Ok(out)
}

/// Cross-product convexity test for a closed polyline.
pub fn is_convex_polygon(points: &[Complex64], tol: f64) -> bool {
    let n = points.len();
    if n < 3 {
        return true;
    }
    let mut sign = 0.0;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        let c = points[(i + 2) % n];
        let u = b - a;
        let v = c - b;
        let cross = u.re * v.im - u.im * v.re;
        let scale = u.norm() * v.norm();
        if cross.abs() <= tol * scale.max(tol) {
            continue;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return false;
        }
    }
    true
}
