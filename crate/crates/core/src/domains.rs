//! Catalog of univalent target domains `h(𝔻)`.
//!
//! Membership uses closed-form predicates: half-planes, sectors and disks
//! directly, and for the transcendental entries an explicit inverse `h⁻¹`
//! followed by `|h⁻¹(w)| < 1`. The boundary polyline is kept for export and
//! as an independent winding-number check.

use crate::error::{Error, Result};
use crate::fncat::{is_corner, AnalyticMap};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

/// Relative distance below which a point counts as lying on the boundary.
pub const EPS_BOUNDARY: f64 = 1e-9;
/// Default polyline resolution.
pub const DEFAULT_RESOLUTION: usize = 4096;
const REFINE_TURN_DEG: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DomainId {
    /// `(1 + (1 − 2α) z) / (1 − z)`, the half-plane `Re w > α`
    HalfPlane { alpha: f64 },
    /// `(1 + A z) / (1 + B z)`
    Janowski { a: f64, b: f64 },
    Exp,
    Sqrt,
    Sigmoid,
    Crescent,
    Sine,
    /// `1 + 4z/3 + 2z²/3`
    Cardioid,
    /// `((1 + z) / (1 − z))^γ`
    Power { gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl DomainId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DomainId::HalfPlane { alpha } if !(0.0..1.0).contains(&alpha) => {
                Err(Error::OutOfRange(format!("halfplane needs 0 <= α < 1, got {alpha}")))
            }
            DomainId::Janowski { a, b } if !(-1.0 <= b && b < a && a <= 1.0) => {
                Err(Error::OutOfRange(format!("janowski needs -1 <= B < A <= 1, got A={a}, B={b}")))
            }
            DomainId::Power { gamma } if !(gamma > 0.0 && gamma <= 1.0) => {
                Err(Error::OutOfRange(format!("power needs 0 < γ <= 1, got {gamma}")))
            }
            _ => Ok(()),
        }
    }

    pub fn map(&self) -> AnalyticMap {
        match *self {
            DomainId::HalfPlane { alpha } => AnalyticMap::moebius(1.0 - 2.0 * alpha, -1.0),
            DomainId::Janowski { a, b } => AnalyticMap::moebius(a, b),
            DomainId::Exp => AnalyticMap::Exp,
            DomainId::Sqrt => AnalyticMap::Sqrt1p,
            DomainId::Sigmoid => AnalyticMap::Sigmoid,
            DomainId::Crescent => AnalyticMap::Crescent,
            DomainId::Sine => AnalyticMap::Sine,
            DomainId::Cardioid => AnalyticMap::real_polynomial(&[1.0, 4.0 / 3.0, 2.0 / 3.0]),
            DomainId::Power { gamma } => AnalyticMap::power(AnalyticMap::moebius(1.0, -1.0), gamma),
        }
    }

    /// Vetted convexity flag.
    pub fn convex(&self) -> bool {
        !matches!(self, DomainId::Crescent | DomainId::Sine | DomainId::Cardioid)
    }

    pub fn bounded(&self) -> bool {
        match *self {
            DomainId::HalfPlane { .. } | DomainId::Power { .. } => false,
            DomainId::Janowski { b, .. } => b > -1.0,
            _ => true,
        }
    }

    /// Boundary parameters excluded from sampling. The cardioid's critical
    /// point `ζ = −1` is declared here since `h'` vanishes there.
    pub fn corners(&self) -> Vec<f64> {
        let mut c = self.map().declared_corners();
        if *self == DomainId::Cardioid {
            c.push(PI);
        }
        c
    }

    fn re_extremes(&self) -> (f64, f64) {
        match *self {
            DomainId::HalfPlane { alpha } => (alpha, f64::INFINITY),
            DomainId::Janowski { a, b } if b == -1.0 => ((1.0 - a) / 2.0, f64::INFINITY),
            DomainId::Janowski { a, b } => ((1.0 - a) / (1.0 - b), (1.0 + a) / (1.0 + b)),
            DomainId::Exp => (1.0 / E, E),
            DomainId::Sqrt => (0.0, SQRT_2),
            DomainId::Sigmoid => {
                // Re h(e^{iθ}) is extremal at θ = 0, π
                (2.0 / (1.0 + E), 2.0 * E / (1.0 + E))
            }
            DomainId::Crescent => (0.0, 1.0 + SQRT_2),
            DomainId::Cardioid => (0.0, 3.0),
            DomainId::Power { .. } => (0.0, f64::INFINITY),
            DomainId::Sine => {
                // Re h(e^{iθ}) = 1 + sin(cos θ) cosh(sin θ)
                let re = |t: f64| 1.0 + t.cos().sin() * t.sin().cosh();
                (-refine_max(|t| -re(t)), refine_max(re))
            }
        }
    }
}

/// Max of a smooth `2π`-periodic function: dense scan, then golden section.
fn refine_max<F: Fn(f64) -> f64>(f: F) -> f64 {
    let n = 4096;
    let h = 2.0 * PI / n as f64;
    let best = (0..n).map(|k| k as f64 * h).max_by(|a, b| f(*a).total_cmp(&f(*b))).unwrap_or(0.0);
    let (mut lo, mut hi) = (best - h, best + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    f((lo + hi) / 2.0)
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DomainId::HalfPlane { alpha } => write!(f, "halfplane({})", fmt_num(alpha)),
            DomainId::Janowski { a, b } => write!(f, "janowski({},{})", fmt_num(a), fmt_num(b)),
            DomainId::Exp => f.write_str("exp"),
            DomainId::Sqrt => f.write_str("sqrt"),
            DomainId::Sigmoid => f.write_str("sigmoid"),
            DomainId::Crescent => f.write_str("crescent"),
            DomainId::Sine => f.write_str("sine"),
            DomainId::Cardioid => f.write_str("cardioid"),
            DomainId::Power { gamma } => write!(f, "power({})", fmt_num(gamma)),
        }
    }
}

/// Parses a decimal or `p/q` rational literal.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Config(format!("not a number: {s:?}"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

impl FromStr for DomainId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((n, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Config(format!("unbalanced parentheses in {s:?}")))?;
                let args = inner.split(',').map(parse_real).collect::<Result<Vec<_>>>()?;
                (n.trim(), args)
            }
            None => (s, Vec::new()),
        };
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} takes {n} parameters, got {}", args.len())))
            }
        };
        let id = match name {
            "halfplane" => {
                want(1)?;
                DomainId::HalfPlane { alpha: args[0] }
            }
            "janowski" => {
                want(2)?;
                DomainId::Janowski { a: args[0], b: args[1] }
            }
            "power" => {
                want(1)?;
                DomainId::Power { gamma: args[0] }
            }
            "exp" | "sqrt" | "sigmoid" | "crescent" | "sine" | "cardioid" | "cardioid-poly" => {
                want(0)?;
                match name {
                    "exp" => DomainId::Exp,
                    "sqrt" => DomainId::Sqrt,
                    "sigmoid" => DomainId::Sigmoid,
                    "crescent" => DomainId::Crescent,
                    "sine" => DomainId::Sine,
                    _ => DomainId::Cardioid,
                }
            }
            other => return Err(Error::Config(format!("unknown domain {other:?}"))),
        };
        id.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(id)
    }
}

impl TryFrom<String> for DomainId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DomainId> for String {
    fn from(d: DomainId) -> String {
        d.to_string()
    }
}

/// A catalog domain with cached metadata.
#[derive(Debug, Clone)]
pub struct TargetDomain {
    id: DomainId,
    map: AnalyticMap,
    convex: bool,
    corners: Vec<f64>,
    h0: Complex64,
    re_inf: f64,
    re_sup: f64,
    polyline: Vec<Complex64>,
}

impl TargetDomain {
    pub fn new(id: DomainId) -> Result<Self> {
        Self::with_resolution(id, DEFAULT_RESOLUTION)
    }

    pub fn with_resolution(id: DomainId, n: usize) -> Result<Self> {
        id.validate()?;
        let map = id.map();
        let corners = id.corners();
        let h0 = map.value(Complex64::new(0.0, 0.0))?;
        let (re_inf, re_sup) = id.re_extremes();
        let polyline = refined_polyline(&map, n, &corners)?;
        Ok(TargetDomain { id, map, convex: id.convex(), corners, h0, re_inf, re_sup, polyline })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn id(&self) -> DomainId {
        self.id
    }

    pub fn map(&self) -> &AnalyticMap {
        &self.map
    }

    pub fn convex(&self) -> bool {
        self.convex
    }

    pub fn corners(&self) -> &[f64] {
        &self.corners
    }

    pub fn h0(&self) -> Complex64 {
        self.h0
    }

    pub fn re_inf(&self) -> f64 {
        self.re_inf
    }

    pub fn re_sup(&self) -> f64 {
        self.re_sup
    }

    pub fn polyline(&self) -> &[Complex64] {
        &self.polyline
    }

    pub fn is_corner(&self, theta: f64) -> bool {
        is_corner(theta, &self.corners)
    }

    /// Uniform boundary table `(θ, h(e^{iθ}))`, corners skipped.
    pub fn boundary_table(&self, n: usize) -> Result<Vec<(f64, Complex64)>> {
        crate::fncat::boundary_samples_with(&self.map, n, &self.corners)
    }

    pub fn contains(&self, w: Complex64) -> Membership {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Membership::Outside;
        }
        let tol = EPS_BOUNDARY * (1.0 + w.norm());
        match self.id {
            DomainId::HalfPlane { alpha } => halfplane(w.re - alpha, tol),
            DomainId::Janowski { a, b } if b == -1.0 => halfplane(w.re - (1.0 - a) / 2.0, tol),
            DomainId::Janowski { a, b } => {
                let centre = (1.0 - a * b) / (1.0 - b * b);
                let radius = (a - b) / (1.0 - b * b);
                halfplane(radius - (w - centre).norm(), tol)
            }
            DomainId::Power { gamma } => {
                if w.norm() <= tol {
                    return Membership::Boundary;
                }
                let slack = gamma * PI / 2.0 - w.arg().abs();
                // distance to the nearer edge ray
                let dist = if slack.abs() < PI / 2.0 { w.norm() * slack.sin() } else { slack * w.norm() };
                halfplane(dist, tol)
            }
            _ => match self.preimage(w) {
                Some(z) => self.classify_preimage(w, z, tol),
                None => Membership::Outside,
            },
        }
    }

    /// `h⁻¹(w)` for the bounded transcendental and polynomial entries, or
    /// `None` when `w` is not in the image of the branch used.
    fn preimage(&self, w: Complex64) -> Option<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let z = match self.id {
            DomainId::Exp => {
                if w.norm() == 0.0 {
                    return None;
                }
                w.ln()
            }
            DomainId::Sqrt => {
                if w.re <= 0.0 {
                    return None;
                }
                w * w - one
            }
            DomainId::Sigmoid => {
                if w.norm() == 0.0 {
                    return None;
                }
                let u = 2.0 / w - one;
                if u.norm() == 0.0 {
                    return None;
                }
                -u.ln()
            }
            DomainId::Sine => (w - one).asin(),
            DomainId::Crescent => {
                if w.norm() == 0.0 {
                    return None;
                }
                let z = (w * w - one) / (2.0 * w);
                // w − ζ must be the principal root of 1 + ζ²
                if (w - z).re < 0.0 {
                    return None;
                }
                z
            }
            DomainId::Cardioid => {
                let s = ((3.0 * w - one) / 2.0).sqrt();
                let (z1, z2) = (-one + s, -one - s);
                if z1.norm() <= z2.norm() {
                    z1
                } else {
                    z2
                }
            }
            _ => return None,
        };
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }

    fn classify_preimage(&self, w: Complex64, z: Complex64, tol: f64) -> Membership {
        let r = z.norm();
        if (r - 1.0).abs() < 1e-6 && r > 0.0 {
            if let Ok(b) = self.map.value(z / r) {
                if (w - b).norm() < tol {
                    return Membership::Boundary;
                }
            }
        }
        if r < 1.0 {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }

    /// Winding-number verdict against the cached polyline.
    pub fn polyline_contains(&self, w: Complex64) -> Membership {
        polyline_membership(&self.polyline, w, EPS_BOUNDARY * (1.0 + w.norm()))
    }

    /// Supporting line at `h(e^{iθ})`: the point and the unit inward normal
    /// `−ζh'(ζ)/|ζh'(ζ)|`.
    pub fn support_halfplane(&self, theta: f64) -> Result<(Complex64, Complex64)> {
        if !self.convex {
            return Err(Error::NonConvex(self.id.to_string()));
        }
        if self.is_corner(theta) {
            return Err(Error::CornerParameter(theta));
        }
        let zeta = Complex64::from_polar(1.0, theta);
        let (h, d1, _) = self.map.eval(zeta)?;
        if d1.norm() < 1e-12 {
            return Err(Error::VanishingDerivative { theta, value: d1.norm() });
        }
        let n = -(zeta * d1);
        Ok((h, n / n.norm()))
    }
}

fn halfplane(signed: f64, tol: f64) -> Membership {
    if signed.abs() <= tol {
        Membership::Boundary
    } else if signed > 0.0 {
        Membership::Inside
    } else {
        Membership::Outside
    }
}

/// Uniform samples plus geometric refinement towards each corner until the
/// polyline turns by less than 5° per vertex.
fn refined_polyline(map: &AnalyticMap, n: usize, corners: &[f64]) -> Result<Vec<Complex64>> {
    let h = 2.0 * PI / n as f64;
    let mut thetas: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
    for &c in corners {
        for side in [-1.0, 1.0] {
            let mut prev: Vec<Complex64> = Vec::new();
            let mut step = h / 2.0;
            while step > 1e-12 {
                let t = c + side * step;
                let w = match map.value(Complex64::from_polar(1.0, t)) {
                    Ok(w) => w,
                    Err(_) => break,
                };
                prev.push(w);
                thetas.push(t.rem_euclid(2.0 * PI));
                if prev.len() >= 3 {
                    let k = prev.len();
                    let turn = (prev[k - 1] - prev[k - 2]) / (prev[k - 2] - prev[k - 3]);
                    if turn.arg().abs().to_degrees() < REFINE_TURN_DEG {
                        break;
                    }
                }
                step /= 2.0;
            }
        }
    }
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    thetas
        .into_iter()
        .filter(|t| !is_corner(*t, corners))
        .map(|t| map.value(Complex64::from_polar(1.0, t)))
        .collect()
}

/// Winding number of a closed polyline around `w`, with a boundary band of
/// width `tol`.
pub fn polyline_membership(poly: &[Complex64], w: Complex64, tol: f64) -> Membership {
    let n = poly.len();
    let mut winding = 0i64;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if segment_distance(a, b, w) <= tol {
            return Membership::Boundary;
        }
        let cross = (b.re - a.re) * (w.im - a.im) - (w.re - a.re) * (b.im - a.im);
        if a.im <= w.im {
            if b.im > w.im && cross > 0.0 {
                winding += 1;
            }
        } else if b.im <= w.im && cross < 0.0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        Membership::Inside
    } else {
        Membership::Outside
    }
}

fn segment_distance(a: Complex64, b: Complex64, w: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = ((w - a) * d.conj()).re / len2;
    (w - (a + d * t.clamp(0.0, 1.0))).norm()
}

/// CSV rows `θ,re,im` with 17 significant digits.
pub fn boundary_csv(table: &[(f64, Complex64)]) -> String {
    let mut out = String::from("theta,re,im\n");
    for (t, w) in table {
        out.push_str(&format!("{},{},{}\n", sig17(*t), sig17(w.re), sig17(w.im)));
    }
    out
}

/// Float formatted with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}
