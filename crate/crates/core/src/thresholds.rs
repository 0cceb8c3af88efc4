//! Real-part thresholds for the combined mean functionals: case flags,
//! the piecewise constants β₀ and β₁, the boundary expressions Re E(0) and
//! Re E(1), and brute-force regional oracles for them.
//!
//! At a boundary contact `p(z₀) = α + ix` and `z₀p'(z₀) = my` with
//! `my ≤ −((1−α)² + x²)/(2(1−α))`.

use crate::error::{Error, Result};
use crate::fncat::principal_pow;
use crate::janowski::{n, Scalar};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const ORACLE_TOL: f64 = 1e-9;
/// Relative band in which an I₂/I₃/I₄ quantity counts as an equality.
pub const TIE_EPS: f64 = 1e-12;
const DEN_EPS: f64 = 1e-14;

/// Parameter design used by the oracle suites: I₁ cells first, then the
/// α > 1/2 cells where the point-dependent flags vary.
pub const DESIGN: [(f64, f64); 12] = [
    (0.0, 0.5),
    (0.1, 0.3),
    (0.25, 0.5),
    (0.25, 1.0),
    (0.4, 0.8),
    (0.45, 1.0),
    (0.6, 0.2),
    (0.6, 0.8),
    (0.75, 0.3),
    (0.75, 0.5),
    (0.9, 0.05),
    (0.9, 0.6),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdParams {
    pub gamma: f64,
    pub alpha: f64,
    pub mu: f64,
    pub delta: f64,
    pub rho: f64,
}

impl ThresholdParams {
    pub fn new(gamma: f64, alpha: f64, mu: f64, delta: f64, rho: f64) -> Result<Self> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !unit(gamma) || !unit(mu) {
            return Err(Error::OutOfRange(format!("gamma = {gamma}, mu = {mu} must lie in [0, 1]")));
        }
        if !(1.0..=2.0).contains(&delta) {
            return Err(Error::OutOfRange(format!("delta = {delta} not in [1, 2]")));
        }
        check_alpha_rho(alpha, rho)?;
        Ok(ThresholdParams { gamma, alpha, mu, delta, rho })
    }
}

/// α ∈ [0, 1), ρ ∈ [0, 1], and ρ ≥ α(1 + 2α) whenever α ≤ 1/2.
pub fn check_alpha_rho(alpha: f64, rho: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::OutOfRange(format!("alpha = {alpha} not in [0, 1)")));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::OutOfRange(format!("rho = {rho} not in [0, 1]")));
    }
    if alpha <= 0.5 && rho < alpha * (1.0 + 2.0 * alpha) - 1e-15 {
        return Err(Error::OutOfRange(format!(
            "rho = {rho} below alpha(1 + 2 alpha) = {}",
            alpha * (1.0 + 2.0 * alpha)
        )));
    }
    Ok(())
}

/// Upper bound on `my` at a contact with imaginary part `x`.
pub fn my_bound(alpha: f64, x: f64) -> f64 {
    let c = 1.0 - alpha;
    -(c * c + x * x) / (2.0 * c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub x: f64,
    pub my: f64,
}

impl BoundaryPoint {
    pub fn new(alpha: f64, x: f64, my: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite() && my.is_finite()) {
            return Err(Error::OutOfRange(format!("boundary point x = {x}, my = {my}")));
        }
        let b = my_bound(alpha, x);
        if my > b + 1e-12 * b.abs().max(1.0) {
            return Err(Error::OutOfRange(format!("my = {my} above the contact bound {b}")));
        }
        Ok(BoundaryPoint { x, my })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFlags {
    pub i1: bool,
    pub i2: bool,
    pub i3: bool,
    pub i4: bool,
}

impl CaseFlags {
    /// Four-letter pattern such as `FTFF`.
    pub fn pattern(&self) -> String {
        [self.i1, self.i2, self.i3, self.i4]
            .iter()
            .map(|&b| if b { 'T' } else { 'F' })
            .collect()
    }
}

fn i3_threshold(alpha: f64, rho: f64) -> f64 {
    let c = 1.0 - alpha;
    (2.0 * alpha * alpha - rho * c) * c / (2.0 * c + rho)
}

// Signed quantities behind I₂, I₃, I₄, and the scale used for ties.
fn flag_quantities(alpha: f64, rho: f64, pt: &BoundaryPoint) -> ([f64; 3], f64) {
    let (a2, x2) = (alpha * alpha, pt.x * pt.x);
    let q2 = a2 - x2 + rho * pt.my;
    let q3 = x2 - i3_threshold(alpha, rho);
    let q4 = a2 + x2 + rho * pt.my;
    ([q2, q3, q4], 1.0 + a2 + x2 + rho * pt.my.abs())
}

pub fn case_flags(alpha: f64, rho: f64, pt: &BoundaryPoint) -> CaseFlags {
    let ([q2, q3, q4], _) = flag_quantities(alpha, rho, pt);
    CaseFlags { i1: (0.0..=0.5).contains(&alpha), i2: q2 > 0.0, i3: q3 >= 0.0, i4: q4 <= 0.0 }
}

/// Which of I₂, I₃, I₄ sit on their equality boundary.
pub fn case_ties(alpha: f64, rho: f64, pt: &BoundaryPoint) -> [bool; 3] {
    let (q, scale) = flag_quantities(alpha, rho, pt);
    q.map(|v| v.abs() <= TIE_EPS * scale)
}

pub const BETA0_LABELS: [&str; 4] = ["I1", "~I1 & I2", "~I1 & ~I2 & I3", "~I1 & ~I2 & ~I3"];
pub const BETA1_LABELS: [&str; 5] = [
    "I4",
    "I1 & ~I4",
    "~I1 & I2 & ~I4",
    "~I1 & ~I2 & I3 & ~I4",
    "~I1 & ~I2 & ~I3 & ~I4",
];

/// Branch number (1-based) of β₀ selected by the flags.
pub fn beta0_branch(flags: CaseFlags) -> usize {
    match (flags.i1, flags.i2, flags.i3) {
        (true, _, _) => 1,
        (false, true, _) => 2,
        (false, false, true) => 3,
        (false, false, false) => 4,
    }
}

pub fn beta1_branch(flags: CaseFlags) -> usize {
    match (flags.i4, flags.i1, flags.i2, flags.i3) {
        (true, ..) => 1,
        (false, true, _, _) => 2,
        (false, false, true, _) => 3,
        (false, false, false, true) => 4,
        (false, false, false, false) => 5,
    }
}

fn ratio(num: f64, den: f64, what: &str) -> Result<f64> {
    if den.abs() <= DEN_EPS {
        return Err(Error::Degenerate(format!("{what}: denominator {den:e}")));
    }
    Ok(num / den)
}

pub fn beta0_value(alpha: f64, rho: f64, branch: usize) -> Result<f64> {
    let (a, r, c) = (alpha, rho, 1.0 - alpha);
    let k = 2.0 * a * a - r * c;
    match branch {
        1 => ratio(a * (1.0 + a) * (1.0 - 2.0 * a), r * c - 2.0 * a * a, "beta0 branch 1"),
        2 => Ok(a),
        3 => Ok(a + ratio(r * (1.0 - r) * c * (2.0 * c + r), 16.0 * a * k, "beta0 branch 3")?),
        4 => Ok(a + ratio(r * (1.0 - r) * k, 16.0 * a * c * (2.0 * c + r), "beta0 branch 4")?),
        _ => Err(Error::OutOfRange(format!("beta0 has no branch {branch}"))),
    }
}

pub fn beta1_value(alpha: f64, rho: f64, branch: usize) -> Result<f64> {
    let (a, r, c) = (alpha, rho, 1.0 - alpha);
    let k = 2.0 * a * a - r * c;
    let d45 = 2.0 * (4.0 * a * a * c + r * (2.0 * a - 1.0));
    match branch {
        1 => Ok(a),
        2 => {
            let s = r - 2.0 * c;
            Ok(a + ratio(2.0 * a * r * r * (1.0 - 2.0 * a), s * s * (r * c - 2.0 * a * a), "beta1 branch 2")?)
        }
        3 => Ok(a + ratio(a * r * c * (4.0 * a * a - r * c), 4.0 * k * k, "beta1 branch 3")?),
        4 => Ok(a + ratio(a * r * c * (2.0 * c + r), d45, "beta1 branch 4")?),
        5 => Ok(a + ratio(a * r * k, d45, "beta1 branch 5")?),
        _ => Err(Error::OutOfRange(format!("beta1 has no branch {branch}"))),
    }
}

pub fn beta0(alpha: f64, rho: f64, flags: CaseFlags) -> Result<f64> {
    beta0_value(alpha, rho, beta0_branch(flags))
}

pub fn beta1(alpha: f64, rho: f64, flags: CaseFlags) -> Result<f64> {
    beta1_value(alpha, rho, beta1_branch(flags))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Harmonic/arithmetic combination, constant β₀.
    #[serde(rename = "29")]
    Thm29,
    /// Geometric-weighted combination, constant β₁.
    #[serde(rename = "210")]
    Thm210,
}

impl Theorem {
    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Theorem::Thm29 => &BETA0_LABELS,
            Theorem::Thm210 => &BETA1_LABELS,
        }
    }

    fn branch(self, flags: CaseFlags) -> usize {
        match self {
            Theorem::Thm29 => beta0_branch(flags),
            Theorem::Thm210 => beta1_branch(flags),
        }
    }

    fn value(self, alpha: f64, rho: f64, branch: usize) -> Result<f64> {
        match self {
            Theorem::Thm29 => beta0_value(alpha, rho, branch),
            Theorem::Thm210 => beta1_value(alpha, rho, branch),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Thm29 => "29",
            Theorem::Thm210 => "210",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "29" | "2.9" => Ok(Theorem::Thm29),
            "210" | "2.10" => Ok(Theorem::Thm210),
            _ => Err(Error::Config(format!("unknown theorem {s:?}, expected 29 or 210"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaValue {
    pub value: f64,
    pub branch: usize,
    pub label: String,
    pub flags: CaseFlags,
    /// Set when a flag sat on its equality boundary and adjacent branches
    /// were maximised over.
    pub note: Option<String>,
}

/// β at a concrete boundary point. On an I₂/I₃/I₄ equality both readings
/// of the tied flag are evaluated and the larger value is kept.
pub fn beta_at(which: Theorem, alpha: f64, rho: f64, pt: &BoundaryPoint) -> Result<BetaValue> {
    let flags = case_flags(alpha, rho, pt);
    let ties = case_ties(alpha, rho, pt);
    let branch = which.branch(flags);
    let mut best = (which.value(alpha, rho, branch)?, branch);
    let mut touched = Vec::new();
    if ties.iter().any(|&t| t) {
        for mask in 1u8..8 {
            if (0..3).any(|i| mask & (1 << i) != 0 && !ties[i]) {
                continue;
            }
            let mut g = flags;
            if mask & 1 != 0 {
                g.i2 = !g.i2;
            }
            if mask & 2 != 0 {
                g.i3 = !g.i3;
            }
            if mask & 4 != 0 {
                g.i4 = !g.i4;
            }
            let b = which.branch(g);
            if b == branch || touched.contains(&b) {
                continue;
            }
            touched.push(b);
            let v = which.value(alpha, rho, b)?;
            if v > best.0 {
                best = (v, b);
            }
        }
    }
    let note = (!touched.is_empty()).then(|| {
        let names: Vec<&str> = touched.iter().map(|&b| which.labels()[b - 1]).collect();
        format!("flag equality: also evaluated {}", names.join(", "))
    });
    Ok(BetaValue {
        value: best.0,
        branch: best.1,
        label: which.labels()[best.1 - 1].to_string(),
        flags,
        note,
    })
}

/// Re E(0) = α + (1−ρ)·myα(α²+x²+ρmy)/((α²−x²+ρmy)² + 4α²x²).
pub fn re_e0_exact<S: Scalar>(alpha: &S, rho: &S, x: &S, my: &S) -> S {
    let (a2, x2, rm) = (alpha.clone() * alpha.clone(), x.clone() * x.clone(), rho.clone() * my.clone());
    let u = a2.clone() - x2.clone() + rm.clone();
    let den = u.clone() * u + n::<S>(4) * a2.clone() * x2.clone();
    let num = my.clone() * alpha.clone() * (a2 + x2 + rm);
    alpha.clone() + (S::one() - rho.clone()) * num / den
}

/// Re E(1) = α − αρmy(α²+x²+ρmy)/((α²−x²+ρmy)² + 4α²x²).
pub fn re_e1_exact<S: Scalar>(alpha: &S, rho: &S, x: &S, my: &S) -> S {
    let (a2, x2, rm) = (alpha.clone() * alpha.clone(), x.clone() * x.clone(), rho.clone() * my.clone());
    let u = a2.clone() - x2.clone() + rm.clone();
    let den = u.clone() * u + n::<S>(4) * a2.clone() * x2.clone();
    alpha.clone() - alpha.clone() * rm.clone() * (a2 + x2 + rm) / den
}

pub fn re_e0(alpha: f64, rho: f64, pt: &BoundaryPoint) -> f64 {
    re_e0_exact(&alpha, &rho, &pt.x, &pt.my)
}

pub fn re_e1(alpha: f64, rho: f64, pt: &BoundaryPoint) -> f64 {
    re_e1_exact(&alpha, &rho, &pt.x, &pt.my)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    E0,
    E1,
}

impl Expr {
    pub fn theorem(self) -> Theorem {
        match self {
            Expr::E0 => Theorem::Thm29,
            Expr::E1 => Theorem::Thm210,
        }
    }

    pub fn eval(self, alpha: f64, rho: f64, pt: &BoundaryPoint) -> f64 {
        match self {
            Expr::E0 => re_e0(alpha, rho, pt),
            Expr::E1 => re_e1(alpha, rho, pt),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expr::E0 => "e0",
            Expr::E1 => "e1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub y_max: f64,
    pub ny: usize,
}

impl Default for RegionGrid {
    fn default() -> Self {
        RegionGrid { x_min: 1e-3, x_max: 10.0, nx: 400, y_max: 50.0, ny: 400 }
    }
}

impl RegionGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min > 0.0 && self.x_max > self.x_min && self.nx >= 2 && self.ny >= 2 && self.y_max > 0.0) {
            return Err(Error::Config(format!("bad region grid {self:?}")));
        }
        Ok(())
    }

    /// Log-spaced x samples.
    pub fn xs(&self) -> Vec<f64> {
        let (l0, l1) = (self.x_min.ln(), self.x_max.ln());
        (0..self.nx)
            .map(|i| (l0 + (l1 - l0) * i as f64 / (self.nx - 1) as f64).exp())
            .collect()
    }

    /// `my` samples from the contact bound downwards. When the bound is
    /// already below `−y_max` the column runs from the bound to twice it.
    pub fn mys(&self, alpha: f64, x: f64) -> Vec<f64> {
        let b = my_bound(alpha, x);
        let lo = if b > -self.y_max { -self.y_max } else { 2.0 * b };
        (0..self.ny)
            .map(|j| b + (lo - b) * j as f64 / (self.ny - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStat {
    pub pattern: String,
    pub label: String,
    pub points: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub worst_x: f64,
    pub worst_my: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub alpha: f64,
    pub rho: f64,
    pub which: Expr,
    pub grid: RegionGrid,
    pub points: usize,
    pub tie_points: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub worst_x: f64,
    pub worst_my: f64,
    pub cells: Vec<CellStat>,
}

impl OracleReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.worst_margin <= tol
    }
}

#[derive(Default)]
struct SliceStats {
    points: usize,
    ties: usize,
    cells: BTreeMap<String, CellStat>,
}

/// Sweeps the region grid and returns the worst `Re E − β` over it,
/// broken down by flag cell.
pub fn regional_oracle(alpha: f64, rho: f64, which: Expr, grid: &RegionGrid) -> Result<OracleReport> {
    check_alpha_rho(alpha, rho)?;
    grid.validate()?;
    let thm = which.theorem();
    let slices: Vec<SliceStats> = grid
        .xs()
        .par_iter()
        .map(|&x| -> Result<SliceStats> {
            let mut s = SliceStats::default();
            for my in grid.mys(alpha, x) {
                let pt = BoundaryPoint { x, my };
                let beta = beta_at(thm, alpha, rho, &pt)?;
                let margin = which.eval(alpha, rho, &pt) - beta.value;
                s.points += 1;
                if beta.note.is_some() {
                    s.ties += 1;
                }
                let pattern = beta.flags.pattern();
                let cell = s.cells.entry(pattern.clone()).or_insert_with(|| CellStat {
                    pattern,
                    label: beta.label.clone(),
                    points: 0,
                    violations: 0,
                    worst_margin: f64::NEG_INFINITY,
                    worst_x: x,
                    worst_my: my,
                });
                cell.points += 1;
                if margin > ORACLE_TOL {
                    cell.violations += 1;
                }
                if margin > cell.worst_margin {
                    cell.worst_margin = margin;
                    cell.worst_x = x;
                    cell.worst_my = my;
                }
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;

    let mut cells: BTreeMap<String, CellStat> = BTreeMap::new();
    let (mut points, mut ties) = (0, 0);
    for s in slices {
        points += s.points;
        ties += s.ties;
        for (k, c) in s.cells {
            match cells.get_mut(&k) {
                None => {
                    cells.insert(k, c);
                }
                Some(acc) => {
                    acc.points += c.points;
                    acc.violations += c.violations;
                    if c.worst_margin > acc.worst_margin {
                        acc.worst_margin = c.worst_margin;
                        acc.worst_x = c.worst_x;
                        acc.worst_my = c.worst_my;
                    }
                }
            }
        }
    }
    let cells: Vec<CellStat> = cells.into_values().collect();
    let worst = cells
        .iter()
        .fold(None::<&CellStat>, |w, c| match w {
            Some(w) if w.worst_margin >= c.worst_margin => Some(w),
            _ => Some(c),
        })
        .ok_or_else(|| Error::Config("empty region grid".into()))?;
    Ok(OracleReport {
        alpha,
        rho,
        which,
        grid: *grid,
        points,
        tie_points: ties,
        violations: cells.iter().map(|c| c.violations).sum(),
        worst_margin: worst.worst_margin,
        worst_x: worst.worst_x,
        worst_my: worst.worst_my,
        cells,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiralReport {
    pub alpha: f64,
    pub samples: usize,
    pub excluded: usize,
    pub worst_margin: f64,
    pub worst_delta: f64,
    pub worst_x: f64,
}

impl SpiralReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.worst_margin <= tol
    }
}

/// Worst `Re((α + ix)^δ) − α` over the grids (principal branch).
pub fn spiral_re_check(alpha: f64, deltas: &[f64], xs: &[f64]) -> SpiralReport {
    let mut rep = SpiralReport {
        alpha,
        samples: 0,
        excluded: 0,
        worst_margin: f64::NEG_INFINITY,
        worst_delta: f64::NAN,
        worst_x: f64::NAN,
    };
    for &d in deltas {
        for &x in xs {
            match principal_pow(Complex64::new(alpha, x), d) {
                Ok(w) => {
                    rep.samples += 1;
                    let m = w.re - alpha;
                    if m > rep.worst_margin {
                        rep.worst_margin = m;
                        rep.worst_delta = d;
                        rep.worst_x = x;
                    }
                }
                Err(_) => rep.excluded += 1,
            }
        }
    }
    rep
}

/// Default spiral grids: δ ∈ [1, 2] in steps of 0.01, x log-spaced.
pub fn spiral_default_grids() -> (Vec<f64>, Vec<f64>) {
    let deltas = (0..=100).map(|i| 1.0 + i as f64 / 100.0).collect();
    (deltas, RegionGrid::default().xs())
}

/// γα + (1−γ)β at the given boundary point.
pub fn combined_threshold(params: &ThresholdParams, which: Theorem, pt: &BoundaryPoint) -> Result<BetaValue> {
    if params.gamma == 1.0 {
        // β term carries weight zero; skip branches that may be degenerate
        let flags = case_flags(params.alpha, params.rho, pt);
        let branch = which.branch(flags);
        return Ok(BetaValue {
            value: params.alpha,
            branch,
            label: which.labels()[branch - 1].to_string(),
            flags,
            note: None,
        });
    }
    let mut b = beta_at(which, params.alpha, params.rho, pt)?;
    b.value = params.gamma * params.alpha + (1.0 - params.gamma) * b.value;
    Ok(b)
}

/// Point-free threshold: the largest branch value reachable once I₁ is
/// fixed by α, combined with γ. Used where no contact data is available.
pub fn uniform_threshold(params: &ThresholdParams, which: Theorem) -> Result<f64> {
    let (a, r) = (params.alpha, params.rho);
    if params.gamma == 1.0 {
        return Ok(a);
    }
    let i1 = (0.0..=0.5).contains(&a);
    let branches: &[usize] = match (which, i1) {
        (Theorem::Thm29, true) => &[1],
        (Theorem::Thm29, false) => &[2, 3, 4],
        (Theorem::Thm210, true) => &[1, 2],
        (Theorem::Thm210, false) => &[1, 3, 4, 5],
    };
    let mut beta = f64::NEG_INFINITY;
    for &b in branches {
        beta = beta.max(which.value(a, r, b)?);
    }
    Ok(params.gamma * a + (1.0 - params.gamma) * beta)
}
