//! The functional `ψ(a, b) = 2a(a + b)/(2a + b)` on the boundary data of
//! three targets `q` (`e^z`, `√(1+z)`, `2/(1+e^{−z})`), the closed forms of
//! `Re ψ`, and scans of `ψ(r, s)` against candidate domains `Ω`.

use crate::domains::{sig17, DomainId, Membership, TargetDomain};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

/// Radius of the `(θ, m)` disks excluded around poles of `ψ`.
pub const POLE_EXCLUSION: f64 = 0.05;

pub fn psi_harmonic(a: Complex64, b: Complex64) -> Result<Complex64> {
    let den = 2.0 * a + b;
    if den.norm() == 0.0 {
        return Err(Error::Pole(den));
    }
    Ok(2.0 * a * (a + b) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Exp,
    Sqrt,
    Sigmoid,
}

impl CaseId {
    pub const ALL: [CaseId; 3] = [CaseId::Exp, CaseId::Sqrt, CaseId::Sigmoid];

    pub fn target(self) -> DomainId {
        match self {
            CaseId::Exp => DomainId::Exp,
            CaseId::Sqrt => DomainId::Sqrt,
            CaseId::Sigmoid => DomainId::Sigmoid,
        }
    }

    /// `θ` range on which the boundary data is parameterized.
    pub fn theta_range(self) -> (f64, f64) {
        match self {
            CaseId::Sqrt => (-FRAC_PI_4, FRAC_PI_4),
            _ => (-PI, PI),
        }
    }

    /// The domains `Ω` each case is claimed to avoid.
    pub fn default_omegas(self) -> Vec<DomainId> {
        match self {
            CaseId::Exp => vec![DomainId::Sqrt, DomainId::Sigmoid, DomainId::Crescent, DomainId::Sine, DomainId::Cardioid],
            CaseId::Sqrt => vec![DomainId::Sigmoid],
            CaseId::Sigmoid => vec![DomainId::Sqrt],
        }
    }

    /// `θ` samples: periodic for exp and sigmoid, cell midpoints for sqrt so
    /// that the endpoints `±π/4` (where `r = 0`) are avoided.
    pub fn theta_grid(self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.theta_range();
        match self {
            CaseId::Sqrt => (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect(),
            _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect(),
        }
    }

    fn check_theta(self, theta: f64) -> Result<()> {
        let (lo, hi) = self.theta_range();
        if theta < lo - 1e-12 || theta > hi + 1e-12 {
            return Err(Error::OutOfRange(format!("θ = {theta} outside [{lo}, {hi}] for {self}")));
        }
        Ok(())
    }

    /// `r = q(ζ)` on the boundary.
    pub fn r(self, theta: f64) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, theta);
        match self {
            CaseId::Exp => zeta.exp(),
            CaseId::Sqrt => (2.0 * (2.0 * theta).cos()).max(0.0).sqrt() * zeta,
            CaseId::Sigmoid => 2.0 / (1.0 + (-zeta).exp()),
        }
    }

    /// Boundary data `s = mζq'(ζ)`. For sqrt the contact point is
    /// `ζ = e^{4iθ}`, so `s = m e^{4iθ} / (2r)`.
    pub fn s(self, theta: f64, m: f64) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, theta);
        let r = self.r(theta);
        match self {
            CaseId::Exp => m * zeta * r,
            CaseId::Sqrt => m * Complex64::from_polar(1.0, 4.0 * theta) / (2.0 * r),
            CaseId::Sigmoid => {
                let e = (-zeta).exp();
                m * r * zeta * e / (1.0 + e)
            }
        }
    }

    /// The `s` from which the closed-form `g` is built; differs from
    /// [`CaseId::s`] only for sqrt, where it is `m e^{2iθ} / (2r)`.
    pub fn s_closed_form(self, theta: f64, m: f64) -> Complex64 {
        match self {
            CaseId::Sqrt => m * Complex64::from_polar(1.0, 2.0 * theta) / (2.0 * self.r(theta)),
            _ => self.s(theta, m),
        }
    }

    /// `ψ(r, s)` on true boundary data; `m = ∞` gives the limit `2r`.
    pub fn psi(self, theta: f64, m: f64) -> Result<Complex64> {
        let r = self.r(theta);
        if m.is_infinite() {
            return Ok(2.0 * r);
        }
        psi_harmonic(r, self.s(theta, m))
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::Exp => "exp",
            CaseId::Sqrt => "sqrt",
            CaseId::Sigmoid => "sigmoid",
        })
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_end_matches("-target") {
            "exp" => Ok(CaseId::Exp),
            "sqrt" => Ok(CaseId::Sqrt),
            "sigmoid" => Ok(CaseId::Sigmoid),
            other => Err(Error::Config(format!("unknown admissibility case {other:?}"))),
        }
    }
}

/// Closed form of `Re ψ(r, s)`; `m = ∞` returns the limit `Re 2r`.
pub fn example_g(case: CaseId, theta: f64, m: f64) -> Result<f64> {
    case.check_theta(theta)?;
    if !(m >= 1.0) {
        return Err(Error::OutOfRange(format!("m = {m} < 1")));
    }
    let (c, s) = (theta.cos(), theta.sin());
    match case {
        CaseId::Exp => {
            if m.is_infinite() {
                return Ok(2.0 * c.exp() * s.cos());
            }
            let den = m * m + 4.0 * m * c + 4.0;
            if den.abs() < 1e-300 {
                return Err(Error::Pole(Complex64::new(theta, m)));
            }
            Ok(2.0 * c.exp() * ((m * m + 3.0 * m * c + 2.0) * s.cos() - m * s * s.sin()) / den)
        }
        CaseId::Sqrt => {
            let c2 = (2.0 * theta).cos();
            let root = (2.0 * c2).max(0.0).sqrt();
            if m.is_infinite() {
                return Ok(2.0 * root * c);
            }
            Ok(2.0 * root * c * (m + 4.0 * c2) / (m + 8.0 * c2))
        }
        CaseId::Sigmoid => {
            if m.is_infinite() {
                return Ok((2.0 * case.r(theta)).re);
            }
            let (e1, e2, e3) = (c.exp(), (2.0 * c).exp(), (3.0 * c).exp());
            let n = m * m * e1
                + m * m * s.cos()
                + 5.0 * m * e1 * c
                + 3.0 * m * e2 * (theta - s).cos()
                + m * (theta - s).cos()
                + 2.0 * m * (theta + s).cos()
                + m * e1 * (theta - 2.0 * s).cos()
                + 4.0 * e1
                + 2.0 * e3
                + 6.0 * e2 * s.cos()
                + 2.0 * s.cos()
                + 2.0 * e1 * (2.0 * s).cos();
            let d = (1.0 + e2 + 2.0 * e1 * s.cos())
                * (4.0 + m * m + 4.0 * e2 + 4.0 * m * c + 8.0 * e1 * s.cos() + 4.0 * m * e1 * (theta - s).cos());
            // the common factor 4e^{cos θ} completes the quotient
            Ok(4.0 * e1 * n / d)
        }
    }
}

/// Max of `|example_g − Re ψ(r, s)|` over the grids, with `s` the data the
/// closed form encodes. Pole neighbourhoods are skipped.
pub fn g_consistency(case: CaseId, thetas: &[f64], ms: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &t in thetas {
        for &m in ms {
            if case.near_pole(t, m) {
                continue;
            }
            let direct = if m.is_infinite() {
                2.0 * case.r(t)
            } else {
                psi_harmonic(case.r(t), case.s_closed_form(t, m))?
            };
            worst = worst.max((example_g(case, t, m)? - direct.re).abs());
        }
    }
    Ok(worst)
}

/// `{1, 1.25, …, 20}` followed by `∞`.
pub fn default_m_grid(m_max: f64) -> Vec<f64> {
    let mut ms: Vec<f64> = (0..).map(|k| 1.0 + 0.25 * k as f64).take_while(|m| *m <= m_max + 1e-12).collect();
    ms.push(f64::INFINITY);
    ms
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Clear,
    BoundaryContact,
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Clear => "clear",
            Verdict::BoundaryContact => "boundary-contact",
            Verdict::Violation => "violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub theta: f64,
    pub m: f64,
    pub re: f64,
    pub im: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub case: CaseId,
    pub omega: DomainId,
    pub theta_n: usize,
    pub m_values: usize,
    pub excluded: Vec<(f64, f64)>,
    pub violations: Vec<ScanRow>,
    pub boundary_contacts: usize,
    /// Smallest `Re ψ` seen, with its `(θ, m)`.
    pub min_re: (f64, f64, f64),
    #[serde(skip)]
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    /// CSV dump `theta,m,re,im,verdict`, 17 significant digits.
    pub fn csv(&self) -> String {
        let mut out = String::from("theta,m,re,im,verdict\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                sig17(r.theta),
                sig17(r.m),
                sig17(r.re),
                sig17(r.im),
                r.verdict.as_str()
            ));
        }
        out
    }
}

impl CaseId {
    /// `(θ, m)` with `2r + s = 0`, up to the sign of `θ`: `2 + m e^{iθ} = 0`
    /// for exp and `2 + 2e^{−ζ} + mζe^{−ζ} = 0` for sigmoid, both at `ζ = −1`.
    pub fn pole(self) -> Option<(f64, f64)> {
        match self {
            CaseId::Exp => Some((PI, 2.0)),
            CaseId::Sigmoid => Some((PI, 2.0 * (1.0 + E) / E)),
            CaseId::Sqrt => None,
        }
    }

    pub fn near_pole(self, theta: f64, m: f64) -> bool {
        match self.pole() {
            Some((t0, m0)) if m.is_finite() => {
                ((t0 - theta.abs()).powi(2) + (m - m0).powi(2)).sqrt() < POLE_EXCLUSION
            }
            _ => false,
        }
    }
}

/// Evaluates `ψ(r(θ), s(θ, m))` on the grid and classifies it against each
/// `Ω`. Rows are ordered by `(θ, m)`.
pub fn admissibility_scan(case: CaseId, omegas: &[TargetDomain], thetas: &[f64], ms: &[f64]) -> Result<Vec<ScanReport>> {
    let mut samples = Vec::with_capacity(thetas.len() * ms.len());
    let mut excluded = Vec::new();
    for &t in thetas {
        case.check_theta(t)?;
        for &m in ms {
            if case.near_pole(t, m) {
                excluded.push((t, m));
                continue;
            }
            samples.push((t, m, case.psi(t, m)?));
        }
    }
    let mut reports = Vec::with_capacity(omegas.len());
    for omega in omegas {
        let mut rep = ScanReport {
            case,
            omega: omega.id(),
            theta_n: thetas.len(),
            m_values: ms.len(),
            excluded: excluded.clone(),
            violations: Vec::new(),
            boundary_contacts: 0,
            min_re: (f64::INFINITY, 0.0, 0.0),
            rows: Vec::with_capacity(samples.len()),
        };
        for &(theta, m, w) in &samples {
            let verdict = match omega.contains(w) {
                Membership::Inside => Verdict::Violation,
                Membership::Boundary => Verdict::BoundaryContact,
                Membership::Outside => Verdict::Clear,
            };
            let row = ScanRow { theta, m, re: w.re, im: w.im, verdict };
            match verdict {
                Verdict::Violation => rep.violations.push(row.clone()),
                Verdict::BoundaryContact => rep.boundary_contacts += 1,
                Verdict::Clear => {}
            }
            if w.re < rep.min_re.0 {
                rep.min_re = (w.re, theta, m);
            }
            rep.rows.push(row);
        }
        reports.push(rep);
    }
    Ok(reports)
}
