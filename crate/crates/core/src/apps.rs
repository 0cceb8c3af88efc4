//! Checkers for the application results: sufficient conditions on (Θ, Φ),
//! the Marx–Strohhäcker boundary step, the close-to-convexity criterion and
//! the starlikeness / univalence / Re(f/z) corollaries.

use crate::domains::TargetDomain;
use crate::error::{Error, Result};
use crate::fncat::{principal_pow, AnalyticMap, DiskGrid};
use crate::means::ThetaPhiPair;
use crate::thresholds::{uniform_threshold, Theorem, ThresholdParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub const MS_TOL: f64 = 1e-9;
/// Premise margin above which the corollary implication is enforced.
pub const IMPLICATION_MARGIN: f64 = 0.01;
/// Conclusion deficit tolerated as grid resolution noise.
pub const IMPLICATION_DEFICIT: f64 = 1e-6;
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// Re Φ ≥ 5|Θ−1| − Re(Θ−1).
    Hypo2,
    /// Re Φ ≥ 6(M+1) with |Θ| ≤ M.
    Hypo3,
    /// Re Φ > 2(|Θ−1| − Re(Θ−1)), target √(1+z).
    Z1,
    /// Θ'(0) > 0 and Re Φ > 0, target ((1+z)/(1−z))^γ.
    Power,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Hypo2 => "hypo2",
            Condition::Hypo3 => "hypo3",
            Condition::Z1 => "z1",
            Condition::Power => "power",
        })
    }
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypo2" => Ok(Condition::Hypo2),
            "hypo3" => Ok(Condition::Hypo3),
            "z1" => Ok(Condition::Z1),
            "power" => Ok(Condition::Power),
            _ => Err(Error::Config(format!("unknown condition {s:?}"))),
        }
    }
}

/// Extra inputs: the bound M for hypo3, the exponent γ for the power case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CondAux {
    pub m: Option<f64>,
    pub gamma: Option<f64>,
    pub n_zeta: usize,
}

impl Default for CondAux {
    fn default() -> Self {
        CondAux { m: None, gamma: None, n_zeta: 256 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub which: Condition,
    pub samples: usize,
    pub min_margin: f64,
    pub argmin: [f64; 2],
    /// hypo3: largest |Θ| seen, compared against M.
    pub max_abs_theta: Option<f64>,
    /// power: Θ'(0), required real and positive.
    pub theta_prime0: Option<[f64; 2]>,
    /// power: min over z and ζ of Re((Θ(z)−1)(1−ζ²)/(2γζ)). Recorded only.
    pub positivity_min: Option<f64>,
    pub holds: bool,
}

pub fn condition_check(which: Condition, pair: &ThetaPhiPair, aux: &CondAux, zgrid: &DiskGrid) -> Result<ConditionReport> {
    let m = match which {
        Condition::Hypo3 => {
            let m = aux.m.ok_or_else(|| Error::Config("hypo3 needs the bound M".into()))?;
            if !(m > 0.0) {
                return Err(Error::OutOfRange(format!("M = {m} must be positive")));
            }
            m
        }
        _ => 0.0,
    };
    let gamma = match which {
        Condition::Power => {
            let g = aux.gamma.ok_or_else(|| Error::Config("power case needs gamma".into()))?;
            if !(g > 0.0 && g <= 1.0) {
                return Err(Error::OutOfRange(format!("gamma = {g} not in (0, 1]")));
            }
            g
        }
        _ => 1.0,
    };

    let mut rep = ConditionReport {
        which,
        samples: 0,
        min_margin: f64::INFINITY,
        argmin: [f64::NAN; 2],
        max_abs_theta: None,
        theta_prime0: None,
        positivity_min: None,
        holds: false,
    };
    let zetas: Vec<Complex64> = (0..aux.n_zeta.max(1))
        .map(|k| Complex64::from_polar(1.0, -PI + 2.0 * PI * (k as f64 + 0.5) / aux.n_zeta.max(1) as f64))
        .collect();
    let mut max_theta = 0.0f64;
    let mut pos_min = f64::INFINITY;
    for z in zgrid.points() {
        let th = pair.theta().jet_at(z)?.f;
        let ph = pair.phi().jet_at(z)?.f;
        let d = th - 1.0;
        let margin = match which {
            Condition::Hypo2 => ph.re - (5.0 * d.norm() - d.re),
            Condition::Hypo3 => ph.re - 6.0 * (m + 1.0),
            Condition::Z1 => ph.re - 2.0 * (d.norm() - d.re),
            Condition::Power => ph.re,
        };
        max_theta = max_theta.max(th.norm());
        if which == Condition::Power {
            for &zeta in &zetas {
                let v = (d * (1.0 - zeta * zeta) / (2.0 * gamma * zeta)).re;
                pos_min = pos_min.min(v);
            }
        }
        rep.samples += 1;
        if margin < rep.min_margin {
            rep.min_margin = margin;
            rep.argmin = [z.re, z.im];
        }
    }
    rep.holds = match which {
        Condition::Hypo2 => rep.min_margin >= 0.0,
        Condition::Hypo3 => {
            rep.max_abs_theta = Some(max_theta);
            rep.min_margin >= 0.0 && max_theta <= m
        }
        Condition::Z1 => rep.min_margin > 0.0,
        Condition::Power => {
            let d0 = pair.theta().jet_at(Complex64::new(0.0, 0.0))?.d1;
            rep.theta_prime0 = Some([d0.re, d0.im]);
            rep.positivity_min = Some(pos_min);
            d0.re > 0.0 && d0.im.abs() <= NORMALIZATION_TOL && rep.min_margin > 0.0
        }
    };
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MsReport {
    pub domain: String,
    pub convex: bool,
    pub samples: usize,
    /// Boundary parameters skipped as declared corners.
    pub excluded: Vec<f64>,
    /// max |h₁/(ζh₁') − 1| with h₁ = h − 1.
    pub max_dev1: f64,
    /// min |h'(ζ)|.
    pub min_hprime: f64,
    /// max |h/(ζh') − 1|.
    pub max_dev5: f64,
    pub dev1_ok: bool,
    pub hprime_ok: bool,
    pub dev5_ok: bool,
}

impl MsReport {
    pub fn holds(&self) -> bool {
        self.dev1_ok && self.hprime_ok && self.dev5_ok
    }
}

/// Boundary deviations behind the |h/(ζh') − 1| ≤ 5 step, sampled at
/// `θ = 2πk/n` off the declared corners. Requires h(0) = 1; a non-convex
/// target is evaluated anyway and flagged in the report.
pub fn marx_strohhacker_check(dom: &TargetDomain, n: usize) -> Result<MsReport> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("boundary resolution {n} < 3")));
    }
    if (dom.h0() - 1.0).norm() > NORMALIZATION_TOL {
        return Err(Error::Precondition(format!("h(0) = {} differs from 1", dom.h0())));
    }
    let mut rep = MsReport {
        domain: dom.id().to_string(),
        convex: dom.convex(),
        samples: 0,
        excluded: Vec::new(),
        max_dev1: 0.0,
        min_hprime: f64::INFINITY,
        max_dev5: 0.0,
        dev1_ok: false,
        hprime_ok: false,
        dev5_ok: false,
    };
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        if dom.is_corner(theta) {
            rep.excluded.push(theta);
            continue;
        }
        let zeta = Complex64::from_polar(1.0, theta);
        let j = dom.map().jet_at(zeta)?;
        let hp = j.d1.norm();
        if hp <= 1e-14 {
            return Err(Error::VanishingDerivative { theta, value: hp });
        }
        let zh = zeta * j.d1;
        rep.samples += 1;
        rep.max_dev1 = rep.max_dev1.max(((j.f - 1.0) / zh - 1.0).norm());
        rep.max_dev5 = rep.max_dev5.max((j.f / zh - 1.0).norm());
        rep.min_hprime = rep.min_hprime.min(hp);
    }
    rep.dev1_ok = rep.max_dev1 <= 1.0 + MS_TOL;
    rep.hprime_ok = rep.min_hprime >= 0.25 - MS_TOL;
    rep.dev5_ok = rep.max_dev5 <= 5.0 + MS_TOL;
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CtcReport {
    pub samples: usize,
    pub premise_min: f64,
    pub premise_argmin: [f64; 2],
    pub premise_holds: bool,
    /// min Re(zf'/g).
    pub conclusion_min: f64,
    pub conclusion_holds: bool,
}

fn check_normalized(f: &AnalyticMap, name: &str) -> Result<()> {
    let j = f.jet_at(Complex64::new(0.0, 0.0))?;
    if j.f.norm() > NORMALIZATION_TOL || (j.d1 - 1.0).norm() > NORMALIZATION_TOL {
        return Err(Error::Precondition(format!("{name} is not normalized: {name}(0) = {}, {name}'(0) = {}", j.f, j.d1)));
    }
    Ok(())
}

/// Evaluates Re(2zf'/g − 2z f'²/(3gf' + zf''g − zg'f')) and Re(zf'/g)
/// over the grid.
pub fn close_to_convex_check(f: &AnalyticMap, g: &AnalyticMap, zgrid: &DiskGrid) -> Result<CtcReport> {
    check_normalized(f, "f")?;
    check_normalized(g, "g")?;
    let pts = zgrid.points();
    let same = pts.iter().all(|&z| match (f.jet_at(z), g.jet_at(z)) {
        (Ok(a), Ok(b)) => (z * a.d1 - b.f).norm() <= 1e-14 * b.f.norm().max(1.0),
        _ => false,
    });
    if same {
        return Err(Error::Precondition("g coincides with zf' on the grid".into()));
    }
    let mut rep = CtcReport {
        samples: 0,
        premise_min: f64::INFINITY,
        premise_argmin: [f64::NAN; 2],
        premise_holds: false,
        conclusion_min: f64::INFINITY,
        conclusion_holds: false,
    };
    for z in pts {
        let fj = f.jet_at(z)?;
        let gj = g.jet_at(z)?;
        if gj.f.norm() <= 1e-300 {
            return Err(Error::Pole(z));
        }
        let den = 3.0 * gj.f * fj.d1 + z * fj.d2 * gj.f - z * gj.d1 * fj.d1;
        if den.norm() <= 1e-14 * (gj.f * fj.d1).norm().max(1e-300) {
            return Err(Error::Pole(z));
        }
        let premise = (2.0 * z * fj.d1 / gj.f - 2.0 * z * fj.d1 * fj.d1 / den).re;
        let concl = (z * fj.d1 / gj.f).re;
        rep.samples += 1;
        if premise < rep.premise_min {
            rep.premise_min = premise;
            rep.premise_argmin = [z.re, z.im];
        }
        rep.conclusion_min = rep.conclusion_min.min(concl);
    }
    rep.premise_holds = rep.premise_min > 0.0;
    rep.conclusion_holds = rep.conclusion_min > 0.0;
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Corollary {
    /// p = zf'/f; conclusion: starlike of order α.
    Starlike36,
    /// p = f'; conclusion: Re f' > α, hence univalent.
    Univalent38,
    /// p = f/z; conclusion: Re(f/z) > α.
    Fz39,
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Corollary::Starlike36 => "starlike36",
            Corollary::Univalent38 => "univalent38",
            Corollary::Fz39 => "fz39",
        })
    }
}

impl FromStr for Corollary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "starlike36" | "starlike" => Ok(Corollary::Starlike36),
            "univalent38" | "univalent" => Ok(Corollary::Univalent38),
            "fz39" | "fz" => Ok(Corollary::Fz39),
            _ => Err(Error::Config(format!("unknown corollary {s:?}"))),
        }
    }
}

/// `(p, zp')` at `z` under the corollary's substitution.
pub fn substitution(which: Corollary, f: &AnalyticMap, z: Complex64) -> Result<(Complex64, Complex64)> {
    let j = f.jet_at(z)?;
    match which {
        Corollary::Starlike36 => {
            if j.f.norm() <= 1e-300 || j.d1.norm() <= 1e-300 {
                return Err(Error::Pole(z));
            }
            let p = z * j.d1 / j.f;
            Ok((p, p * (1.0 + z * j.d2 / j.d1 - p)))
        }
        Corollary::Univalent38 => Ok((j.d1, z * j.d2)),
        Corollary::Fz39 => {
            if z.norm() == 0.0 {
                return Ok((j.d1, Complex64::new(0.0, 0.0)));
            }
            let p = j.f / z;
            Ok((p, j.d1 - p))
        }
    }
}

/// γp^δ + (1−γ) p^μ (p + zp'/p)^{1−μ} / (1 + ρ zp'/p²), principal branches.
pub fn premise_value(params: &ThresholdParams, p: Complex64, zp: Complex64) -> Result<Complex64> {
    if p.norm() <= 1e-300 {
        return Err(Error::Pole(p));
    }
    let den = 1.0 + params.rho * zp / (p * p);
    if den.norm() <= 1e-300 {
        return Err(Error::Pole(den));
    }
    let head = principal_pow(p, params.delta)?;
    let tail = principal_pow(p, params.mu)? * principal_pow(p + zp / p, 1.0 - params.mu)? / den;
    Ok(params.gamma * head + (1.0 - params.gamma) * tail)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub which: Corollary,
    pub params: ThresholdParams,
    pub beta: f64,
    pub samples: usize,
    /// Samples where a power base fell on the branch cut.
    pub excluded: usize,
    pub premise_min: f64,
    pub premise_argmin: [f64; 2],
    pub premise_holds: bool,
    pub dense_samples: usize,
    /// min Re p − α on the 4× denser grid.
    pub conclusion_margin: f64,
    pub conclusion_holds: bool,
    pub implication_checked: bool,
    pub implication_violations: usize,
}

/// Evaluates the corollary premise on `zgrid` against β (point-free
/// reading of the threshold) and the conclusion Re p > α on a 4× denser
/// grid. Implication violations count only when the premise clears β by
/// more than 0.01 and the conclusion misses by more than 1e-6.
pub fn corollary_check(which: Corollary, f: &AnalyticMap, params: &ThresholdParams, zgrid: &DiskGrid) -> Result<CorollaryReport> {
    check_normalized(f, "f")?;
    let beta = uniform_threshold(params, Theorem::Thm210)?;
    let mut rep = CorollaryReport {
        which,
        params: *params,
        beta,
        samples: 0,
        excluded: 0,
        premise_min: f64::INFINITY,
        premise_argmin: [f64::NAN; 2],
        premise_holds: false,
        dense_samples: 0,
        conclusion_margin: f64::INFINITY,
        conclusion_holds: false,
        implication_checked: false,
        implication_violations: 0,
    };
    for z in zgrid.points() {
        let (p, zp) = match substitution(which, f, z) {
            Err(Error::Pole(_)) if which == Corollary::Starlike36 => {
                return Err(Error::Precondition(format!("f or f' vanishes at {z}; zf'/f undefined")))
            }
            r => r?,
        };
        match premise_value(params, p, zp) {
            Ok(v) => {
                rep.samples += 1;
                if v.re < rep.premise_min {
                    rep.premise_min = v.re;
                    rep.premise_argmin = [z.re, z.im];
                }
            }
            Err(Error::BranchCut(_)) | Err(Error::ZeroBase) | Err(Error::Pole(_)) => rep.excluded += 1,
            Err(e) => return Err(e),
        }
    }
    rep.premise_holds = rep.premise_min > beta;
    let margin = rep.premise_min - beta;
    rep.implication_checked = margin > IMPLICATION_MARGIN;
    for z in zgrid.refined(4).points() {
        let (p, _) = substitution(which, f, z)?;
        rep.dense_samples += 1;
        let c = p.re - params.alpha;
        rep.conclusion_margin = rep.conclusion_margin.min(c);
        if rep.implication_checked && -c > IMPLICATION_DEFICIT {
            rep.implication_violations += 1;
        }
    }
    rep.conclusion_holds = rep.conclusion_margin > 0.0;
    Ok(rep)
}
