//! Grid-based subordination checks and a randomized search for
//! counterexamples to the harmonic-mean implication
//! `H_t(p) ≺ h ⇒ p ≺ h`.

use crate::domains::{Membership, TargetDomain};
use crate::error::{Error, Result};
use crate::fncat::{AnalyticMap, DiskGrid};
use crate::means::{h_operator, ThetaPhiPair};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_RADII: [f64; 4] = [0.5, 0.9, 0.99, 0.999];
pub const DEFAULT_N: usize = 1024;
/// Allowed fraction of draws rejected for evaluation failures.
pub const MAX_EXCLUDED_RATE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub r: f64,
    pub k: usize,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubordVerdict {
    pub subordinate: bool,
    /// `|p(0) − h(0)|`
    pub origin_gap: f64,
    pub witness: Option<Witness>,
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 256 {
        Err(Error::OutOfRange(format!("angular resolution {n} < 256")))
    } else {
        Ok(())
    }
}

/// `p(0) = h(0)` and `p(r e^{2πik/n}) ∉ ext h(𝔻)` for every listed radius.
/// Boundary verdicts are not witnesses.
pub fn is_subordinate(p: &AnalyticMap, dom: &TargetDomain, radii: &[f64], n: usize) -> Result<SubordVerdict> {
    check_resolution(n)?;
    let origin_gap = (p.value(Complex64::new(0.0, 0.0))? - dom.h0()).norm();
    if origin_gap > 1e-9 {
        return Ok(SubordVerdict { subordinate: false, origin_gap, witness: None });
    }
    for &r in radii {
        for k in 0..n {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64);
            let value = p.value(z)?;
            if dom.contains(value) == Membership::Outside {
                return Ok(SubordVerdict { subordinate: false, origin_gap, witness: Some(Witness { r, k, value }) });
            }
        }
    }
    Ok(SubordVerdict { subordinate: true, origin_gap, witness: None })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypoReport {
    /// Min of `Re[Φ(z) + h(ζ)/(ζh'(ζ)) (Θ(z) − 1)]` over the sampled pairs.
    pub min: f64,
    pub argmin_z: Complex64,
    pub argmin_theta: f64,
    /// Min of `Re Φ(z)` over the z grid.
    pub min_re_phi: f64,
    pub holds: bool,
    pub z_samples: usize,
    pub zeta_samples: usize,
}

/// Grid minimum of the hypothesis functional `Re[Φ(z) + h/(ζh')·(Θ(z) − 1)]`.
pub fn hypo_check(pair: &ThetaPhiPair, dom: &TargetDomain, zgrid: &DiskGrid, n_zeta: usize) -> Result<HypoReport> {
    let mut quotients = Vec::with_capacity(n_zeta);
    for k in 0..n_zeta {
        let theta = 2.0 * PI * k as f64 / n_zeta as f64;
        if dom.is_corner(theta) {
            continue;
        }
        let zeta = Complex64::from_polar(1.0, theta);
        let (h, d1, _) = dom.map().eval(zeta)?;
        if d1.norm() < 1e-12 {
            return Err(Error::VanishingDerivative { theta, value: d1.norm() });
        }
        quotients.push((theta, h / (zeta * d1)));
    }
    let mut report = HypoReport {
        min: f64::INFINITY,
        argmin_z: Complex64::new(0.0, 0.0),
        argmin_theta: 0.0,
        min_re_phi: f64::INFINITY,
        holds: false,
        z_samples: 0,
        zeta_samples: quotients.len(),
    };
    for z in zgrid.points() {
        let phi = pair.phi().value(z)?;
        let b = pair.theta().value(z)? - 1.0;
        report.z_samples += 1;
        report.min_re_phi = report.min_re_phi.min(phi.re);
        for &(theta, q) in &quotients {
            let v = (phi + q * b).re;
            if v < report.min {
                report.min = v;
                report.argmin_z = z;
                report.argmin_theta = theta;
            }
        }
    }
    report.holds = report.min > 0.0 && report.min_re_phi > 0.0;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `h(c B(z))` with `B` a random polynomial, `B(0) = 0`, `max |B| = 1`
    Blaschke,
    /// `h((1 − s) z) + s ε z²`
    Perturbation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub families: Vec<Family>,
    pub radii: Vec<f64>,
    pub n: usize,
    /// Hard cap on draws; `0` means a hundred times the budget.
    pub max_draws: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: DEFAULT_SEED,
            families: vec![Family::Blaschke, Family::Perturbation],
            radii: DEFAULT_RADII.to_vec(),
            n: DEFAULT_N,
            max_draws: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub index: u64,
    pub family: Family,
    /// Polynomial `ω` for the Blaschke family, `[s, ε]` for perturbations.
    pub coeffs: Vec<Complex64>,
    #[serde(skip)]
    pub map: AnalyticMap,
}

impl Default for AnalyticMap {
    fn default() -> Self {
        AnalyticMap::Identity
    }
}

/// Deterministic draw `index` of the sampler.
pub fn draw(cfg: &SamplerConfig, h: &AnalyticMap, index: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let family = cfg.families[rng.gen_range(0..cfg.families.len())];
    match family {
        Family::Blaschke => {
            let degree = rng.gen_range(1..=3);
            let mut b: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
            for _ in 0..degree {
                b.push(unit_disk_point(&mut rng));
            }
            let peak = (0..1024)
                .map(|k| {
                    let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 1024.0);
                    b.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c).norm()
                })
                .fold(0.0, f64::max);
            let c = rng.gen_range(0.1..=0.95);
            let scale = if peak > 0.0 { c / peak } else { 0.0 };
            let coeffs: Vec<Complex64> = b.iter().map(|x| x * scale).collect();
            let map = AnalyticMap::compose(h.clone(), AnalyticMap::Polynomial(coeffs.clone()));
            Sample { index, family, coeffs, map }
        }
        Family::Perturbation => {
            let s = rng.gen_range(0.0..0.1);
            let eps = unit_disk_point(&mut rng);
            let inner = AnalyticMap::Affine { a: Complex64::new(0.0, 0.0), b: Complex64::new(1.0 - s, 0.0) };
            let map = AnalyticMap::sum(
                AnalyticMap::compose(h.clone(), inner),
                AnalyticMap::Polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), s * eps]),
            );
            Sample { index, family, coeffs: vec![Complex64::new(s, 0.0), eps], map }
        }
    }
}

fn unit_disk_point<R: Rng>(rng: &mut R) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    let t = rng.gen_range(-PI..PI);
    Complex64::from_polar(r, t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub sample: Sample,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub draws: usize,
    pub premise_holding: usize,
    pub excluded: usize,
    pub budget: usize,
    pub budget_met: bool,
    pub premise_rate: f64,
    pub radii: Vec<f64>,
    pub n: usize,
    pub violations: Vec<Violation>,
}

enum Outcome {
    PremiseFails,
    Excluded,
    Holds(Option<Witness>),
}

fn evaluate(pair: &ThetaPhiPair, t: f64, dom: &TargetDomain, cfg: &SamplerConfig, p: &AnalyticMap) -> Outcome {
    // premise: every grid image of H_t(p) strictly inside; outer circles
    // first since that is where images usually escape
    for &r in cfg.radii.iter().rev() {
        for k in 0..cfg.n {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / cfg.n as f64);
            match h_operator(pair, p, t, z) {
                Ok(v) => {
                    if dom.contains(v.value()) != Membership::Inside {
                        return Outcome::PremiseFails;
                    }
                }
                Err(_) => return Outcome::Excluded,
            }
        }
    }
    match is_subordinate(p, dom, &cfg.radii, cfg.n) {
        Ok(v) => Outcome::Holds(v.witness),
        Err(_) => Outcome::Excluded,
    }
}

/// Draws samples until `budget` of them satisfy the premise (or the draw cap
/// is hit) and returns every sample whose conclusion fails.
pub fn falsify_lemma(
    pair: &ThetaPhiPair,
    t: f64,
    dom: &TargetDomain,
    cfg: &SamplerConfig,
    budget: usize,
) -> Result<FalsifyReport> {
    crate::means::MeanWeight::new(t)?;
    check_resolution(cfg.n)?;
    if cfg.families.is_empty() {
        return Err(Error::Config("sampler needs at least one family".into()));
    }
    let max_draws = if cfg.max_draws == 0 { budget.saturating_mul(100).max(1) } else { cfg.max_draws };
    let mut report = FalsifyReport {
        draws: 0,
        premise_holding: 0,
        excluded: 0,
        budget,
        budget_met: budget == 0,
        premise_rate: 0.0,
        radii: cfg.radii.clone(),
        n: cfg.n,
        violations: Vec::new(),
    };
    let batch = 256;
    while report.premise_holding < budget && report.draws < max_draws {
        let start = report.draws as u64;
        let end = (report.draws + batch).min(max_draws) as u64;
        let results: Vec<(Sample, Outcome)> = (start..end)
            .into_par_iter()
            .map(|i| {
                let s = draw(cfg, dom.map(), i);
                let o = evaluate(pair, t, dom, cfg, &s.map);
                (s, o)
            })
            .collect();
        for (sample, outcome) in results {
            if report.premise_holding >= budget {
                break;
            }
            report.draws += 1;
            match outcome {
                Outcome::PremiseFails => {}
                Outcome::Excluded => report.excluded += 1,
                Outcome::Holds(w) => {
                    report.premise_holding += 1;
                    if let Some(witness) = w {
                        report.violations.push(Violation { sample, witness });
                    }
                }
            }
        }
    }
    report.budget_met = report.premise_holding >= budget;
    report.premise_rate = if report.draws > 0 { report.premise_holding as f64 / report.draws as f64 } else { 0.0 };
    if report.draws > 0 && report.excluded as f64 > MAX_EXCLUDED_RATE * report.draws as f64 {
        return Err(Error::Config(format!(
            "sampler rejected {} of {} draws for evaluation failures",
            report.excluded, report.draws
        )));
    }
    report.violations.sort_by_key(|v| v.sample.index);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(s: &str) -> TargetDomain {
        TargetDomain::parse(s).unwrap()
    }

    #[test]
    fn identity_subordination() {
        for name in ["exp", "sqrt", "halfplane(0)", "janowski(1/2,-1/2)", "sigmoid"] {
            let d = dom(name);
            let v = is_subordinate(d.map(), &d, &DEFAULT_RADII, 1024).unwrap();
            assert!(v.subordinate, "{name}");
            let half = AnalyticMap::scaled(Complex64::new(0.5, 0.0), d.map().clone()).unwrap();
            assert!(is_subordinate(&half, &d, &DEFAULT_RADII, 1024).unwrap().subordinate);
        }
    }

    #[test]
    fn halfplane_map_escapes_sqrt() {
        let p = AnalyticMap::moebius(1.0, -1.0);
        let v = is_subordinate(&p, &dom("sqrt"), &[0.99], 1024).unwrap();
        assert!(!v.subordinate);
        let w = v.witness.unwrap();
        assert_eq!(w.r, 0.99);
        // a witness persists at larger radii
        let v2 = is_subordinate(&p, &dom("sqrt"), &[0.999], 1024).unwrap();
        assert!(v2.witness.is_some());
        assert!(is_subordinate(&p, &dom("sqrt"), &[0.5], 128).is_err());
    }

    #[test]
    fn origin_mismatch_is_not_subordinate() {
        let v = is_subordinate(&AnalyticMap::constant(2.0), &dom("exp"), &[0.5], 256).unwrap();
        assert!(!v.subordinate && v.witness.is_none());
    }

    #[test]
    fn hypo_examples() {
        let g = DiskGrid::new(vec![0.5, 0.9, 0.99], 256, false).unwrap();
        let phi = AnalyticMap::Affine { a: Complex64::new(2.0, 0.0), b: Complex64::new(1.0, 0.0) };
        let pair = ThetaPhiPair::new(AnalyticMap::constant(1.0), phi).unwrap();
        let r = hypo_check(&pair, &dom("exp"), &g, 256).unwrap();
        assert!((r.min - r.min_re_phi).abs() < 1e-15 && r.holds);
        let r = hypo_check(&ThetaPhiPair::unit(), &dom("halfplane(0)"), &g, 256).unwrap();
        assert_eq!(r.min, 1.0);
        let theta = AnalyticMap::Affine { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.5, 0.0) };
        let pair = ThetaPhiPair::new(theta, AnalyticMap::constant(5.0)).unwrap();
        let r = hypo_check(&pair, &dom("exp"), &g, 256).unwrap();
        assert!(r.holds && r.min > 0.0);
    }

    #[test]
    fn draws_are_reproducible() {
        let cfg = SamplerConfig::default();
        let h = AnalyticMap::Exp;
        assert_eq!(draw(&cfg, &h, 17), draw(&cfg, &h, 17));
        assert_ne!(draw(&cfg, &h, 17).coeffs, draw(&cfg, &h, 18).coeffs);
        for i in 0..50 {
            let s = draw(&cfg, &h, i);
            assert!((s.map.value(Complex64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_weight_never_falsifies() {
        let cfg = SamplerConfig { n: 256, radii: vec![0.5, 0.9, 0.99], ..Default::default() };
        let r = falsify_lemma(&ThetaPhiPair::unit(), 0.0, &dom("sqrt"), &cfg, 200).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.budget_met);
    }
}
