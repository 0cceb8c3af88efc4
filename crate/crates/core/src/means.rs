//! Weighted arithmetic, geometric and harmonic means, and the operator
//! `H_t = P₀ P₁ / P_{1−t}` with `P_t = (1 − t + tΘ) f + tΦ z f'`.

use crate::error::{Error, Result};
use crate::fncat::{principal_pow, AnalyticMap, Jet};
use num_complex::Complex64;

/// Relative threshold below which a mean denominator counts as vanishing.
pub const EPS_DEN: f64 = 1e-10;
/// Ray distances used by the limit extrapolation.
pub const LIMIT_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];
/// Max relative disagreement between ray limits before declaring the
/// singularity non-removable.
pub const LIMIT_SPREAD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MeanWeight(f64);

impl MeanWeight {
    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(MeanWeight(t))
        } else {
            Err(Error::OutOfRange(format!("weight t = {t} not in [0, 1]")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Result of a harmonic-type mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanValue {
    Regular(Complex64),
    /// Denominator below `EPS_DEN` relative to the inputs; value computed
    /// from the raw quotient anyway.
    NearSingular(Complex64),
    /// Denominator vanished; value is the extrapolated limit.
    Limit(Complex64),
}

impl MeanValue {
    pub fn value(self) -> Complex64 {
        match self {
            MeanValue::Regular(v) | MeanValue::NearSingular(v) | MeanValue::Limit(v) => v,
        }
    }

    pub fn is_regular(self) -> bool {
        matches!(self, MeanValue::Regular(_))
    }
}

pub fn arith_mean(t: MeanWeight, x: Complex64, y: Complex64) -> Complex64 {
    (1.0 - t.0) * x + t.0 * y
}

/// `x^t y^{1−t}` on the principal branch.
pub fn geo_mean(t: MeanWeight, x: Complex64, y: Complex64) -> Result<Complex64> {
    Ok(principal_pow(x, t.0)? * principal_pow(y, 1.0 - t.0)?)
}

/// `xy / (t y + (1 − t) x)`.
pub fn harm_mean(t: MeanWeight, x: Complex64, y: Complex64) -> Result<MeanValue> {
    let num = x * y;
    let den = t.0 * y + (1.0 - t.0) * x;
    if den.norm() == 0.0 {
        return if num.norm() == 0.0 {
            Ok(MeanValue::NearSingular(Complex64::new(0.0, 0.0)))
        } else {
            Err(Error::Pole(den))
        };
    }
    let v = num / den;
    if den.norm() < EPS_DEN * (x.norm() + y.norm()) {
        Ok(MeanValue::NearSingular(v))
    } else {
        Ok(MeanValue::Regular(v))
    }
}

/// The pair `(Θ, Φ)`; `Θ(0) = 1` is enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaPhiPair {
    theta: AnalyticMap,
    phi: AnalyticMap,
}

impl ThetaPhiPair {
    pub fn new(theta: AnalyticMap, phi: AnalyticMap) -> Result<Self> {
        let t0 = theta.value(Complex64::new(0.0, 0.0))?;
        if (t0 - 1.0).norm() > 1e-12 {
            return Err(Error::Precondition(format!("Θ(0) = {t0}, expected 1")));
        }
        Ok(ThetaPhiPair { theta, phi })
    }

    /// `Θ ≡ Φ ≡ 1`.
    pub fn unit() -> Self {
        ThetaPhiPair { theta: AnalyticMap::constant(1.0), phi: AnalyticMap::constant(1.0) }
    }

    pub fn theta(&self) -> &AnalyticMap {
        &self.theta
    }

    pub fn phi(&self) -> &AnalyticMap {
        &self.phi
    }

    fn p_raw(&self, f: &AnalyticMap, t: f64, z: Complex64) -> Result<Complex64> {
        self.p_with(f.jet_at(z)?, t, z)
    }

    fn p_with(&self, fj: Jet, t: f64, z: Complex64) -> Result<Complex64> {
        let th = self.theta.jet_at(z)?.f;
        let ph = self.phi.jet_at(z)?.f;
        Ok((1.0 - t + t * th) * fj.f + t * ph * z * fj.d1)
    }

    /// `(P₀, P₁)` at `z`.
    pub fn p_ends(&self, f: &AnalyticMap, z: Complex64) -> Result<(Complex64, Complex64)> {
        let fj = f.jet_at(z)?;
        let th = self.theta.jet_at(z)?.f;
        let ph = self.phi.jet_at(z)?.f;
        Ok((fj.f, th * fj.f + ph * z * fj.d1))
    }
}

fn check_t(t: f64) -> Result<()> {
    MeanWeight::new(t).map(|_| ())
}

fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() > 1.0 + crate::fncat::DISK_SLACK {
        Err(Error::OutsideDisk(z))
    } else {
        Ok(())
    }
}

/// `P_t(z) = (1 − t + tΘ(z)) f(z) + tΦ(z) z f'(z)`.
pub fn p_operator(pair: &ThetaPhiPair, f: &AnalyticMap, t: f64, z: Complex64) -> Result<Complex64> {
    check_t(t)?;
    check_disk(z)?;
    pair.p_raw(f, t, z)
}

/// `H_t(z) = P₀(z) P₁(z) / P_{1−t}(z)`, with `H ≡ 0` for `f ≡ 0`; the end
/// weights reduce exactly to `H₀ = P₀` and `H₁ = P₁`. When the
/// denominator vanishes relative to `|P₀| + |P₁|`, the value is the limit
/// along four rays, Richardson-extrapolated over `LIMIT_STEPS`.
pub fn h_operator(pair: &ThetaPhiPair, f: &AnalyticMap, t: f64, z: Complex64) -> Result<MeanValue> {
    check_t(t)?;
    check_disk(z)?;
    if f.is_identically_zero() {
        return Ok(MeanValue::Regular(Complex64::new(0.0, 0.0)));
    }
    let fj = f.jet_at(z)?;
    if t == 0.0 {
        return Ok(MeanValue::Regular(fj.f));
    }
    let p0 = pair.p_with(fj, 0.0, z)?;
    let p1 = pair.p_with(fj, 1.0, z)?;
    let den = pair.p_with(fj, 1.0 - t, z)?;
    if t == 1.0 {
        return Ok(MeanValue::Regular(p1));
    }
    if den.norm() >= EPS_DEN * (p0.norm() + p1.norm()) && den.norm() > 0.0 {
        return Ok(MeanValue::Regular(p0 * p1 / den));
    }
    removable_limit(z, |w| {
        let fj = f.jet_at(w)?;
        let p0 = pair.p_with(fj, 0.0, w)?;
        let p1 = pair.p_with(fj, 1.0, w)?;
        let den = pair.p_with(fj, 1.0 - t, w)?;
        if den.norm() == 0.0 {
            return Err(Error::Pole(w));
        }
        Ok(p0 * p1 / den)
    })
    .map(MeanValue::Limit)
}

/// Limit of `g(ζ)` as `ζ → z`, estimated on four diagonal rays.
pub fn removable_limit<G>(z: Complex64, g: G) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let mut estimates = [Complex64::new(0.0, 0.0); 4];
    for (j, est) in estimates.iter_mut().enumerate() {
        let dir = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * (2 * j + 1) as f64);
        let v: Vec<Complex64> =
            LIMIT_STEPS.iter().map(|&d| g(z + d * dir)).collect::<Result<_>>()?;
        // error ~ c·d with steps shrinking by 10
        let r1 = (10.0 * v[1] - v[0]) / 9.0;
        let r2 = (10.0 * v[2] - v[1]) / 9.0;
        *est = (100.0 * r2 - r1) / 99.0;
    }
    let mean = estimates.iter().sum::<Complex64>() / 4.0;
    let spread = estimates.iter().map(|e| (e - mean).norm()).fold(0.0, f64::max) / mean.norm().max(1.0);
    if !spread.is_finite() || spread > LIMIT_SPREAD {
        return Err(Error::NonRemovable { at: z, spread });
    }
    Ok(mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w(t: f64) -> MeanWeight {
        MeanWeight::new(t).unwrap()
    }

    #[test]
    fn weight_range() {
        assert!(MeanWeight::new(-0.1).is_err());
        assert!(MeanWeight::new(1.1).is_err());
        assert!(MeanWeight::new(f64::NAN).is_err());
    }

    #[test]
    fn arith_examples() {
        assert_eq!(arith_mean(w(0.0), c(2.0, 5.0), c(9.0, 1.0)), c(2.0, 5.0));
        assert_eq!(arith_mean(w(0.5), c(0.0, 0.0), c(4.0, 0.0)), c(2.0, 0.0));
        assert_eq!(arith_mean(w(1.0), c(0.0, 7.0), c(3.0, 0.0)), c(3.0, 0.0));
    }

    #[test]
    fn geo_examples() {
        assert_eq!(geo_mean(w(1.0), c(2.0, 1.0), c(5.0, 0.0)).unwrap(), c(2.0, 1.0));
        assert!((geo_mean(w(0.5), c(1.0, 0.0), c(9.0, 0.0)).unwrap() - 3.0).norm() < 1e-15);
        let x = c(0.3, -1.2);
        assert!((geo_mean(w(0.37), x, x).unwrap() - x).norm() < 1e-14);
        assert!(matches!(geo_mean(w(0.5), c(-1.0, 0.0), c(1.0, 0.0)), Err(Error::BranchCut(_))));
        assert!(matches!(geo_mean(w(1.0), c(1.0, 0.0), c(0.0, 0.0)), Err(Error::ZeroBase)));
    }

    #[test]
    fn harm_examples() {
        let x = c(0.3, -1.2);
        assert!((harm_mean(w(0.8), x, x).unwrap().value() - x).norm() < 1e-15);
        assert_eq!(harm_mean(w(0.5), c(1.0, 0.0), c(3.0, 0.0)).unwrap(), MeanValue::Regular(c(1.5, 0.0)));
        let v = harm_mean(w(0.0), c(2.0, 1.0), c(-1.0, 4.0)).unwrap().value();
        assert!((v - c(-1.0, 4.0)).norm() < 1e-15);
        assert!(matches!(harm_mean(w(0.5), c(1.0, 0.0), c(-1.0, 0.0)), Err(Error::Pole(_))));
        let near = harm_mean(w(0.5), c(1.0, 0.0), c(-1.0, 1e-12)).unwrap();
        assert!(matches!(near, MeanValue::NearSingular(_)));
    }

    #[test]
    fn pair_requires_theta_one() {
        assert!(ThetaPhiPair::new(AnalyticMap::constant(2.0), AnalyticMap::constant(1.0)).is_err());
        assert!(ThetaPhiPair::new(AnalyticMap::Exp, AnalyticMap::Identity).is_ok());
    }

    #[test]
    fn p_operator_examples() {
        let f = AnalyticMap::Sigmoid;
        let z = c(0.3, 0.4);
        let pair = ThetaPhiPair::new(AnalyticMap::Exp, AnalyticMap::Sine).unwrap();
        assert_eq!(p_operator(&pair, &f, 0.0, z).unwrap(), f.value(z).unwrap());
        let (fv, d1, _) = f.eval(z).unwrap();
        let got = p_operator(&ThetaPhiPair::unit(), &f, 0.3, z).unwrap();
        assert!((got - (fv + 0.3 * z * d1)).norm() < 1e-15);
        let zero = AnalyticMap::constant(0.0);
        assert_eq!(p_operator(&pair, &zero, 0.7, z).unwrap(), c(0.0, 0.0));
        assert!(p_operator(&pair, &f, 1.5, z).is_err());
    }

    #[test]
    fn h_operator_examples() {
        let p = AnalyticMap::moebius(0.5, -0.5);
        let z = c(-0.2, 0.6);
        let pair = ThetaPhiPair::new(AnalyticMap::Exp, AnalyticMap::constant(2.0)).unwrap();
        let h0 = h_operator(&pair, &p, 0.0, z).unwrap().value();
        assert!((h0 - p.value(z).unwrap()).norm() < 1e-14);
        let (pv, d1, _) = p.eval(z).unwrap();
        let want = 2.0 * pv * (pv + z * d1) / (2.0 * pv + z * d1);
        let got = h_operator(&ThetaPhiPair::unit(), &p, 0.5, z).unwrap().value();
        assert!((got - want).norm() < 1e-14);
        let zero = AnalyticMap::constant(0.0);
        assert_eq!(h_operator(&pair, &zero, 0.5, z).unwrap(), MeanValue::Regular(c(0.0, 0.0)));
    }

    #[test]
    fn removable_point_uses_limit() {
        // f = z: P₀ = z, P₁ = 2z, P_{1/2} = 3z/2, H = 4z/3 with a 0/0 at the origin
        let h = h_operator(&ThetaPhiPair::unit(), &AnalyticMap::Identity, 0.5, c(0.0, 0.0)).unwrap();
        assert!(matches!(h, MeanValue::Limit(_)));
        assert!(h.value().norm() < 1e-9);
    }

    #[test]
    fn non_removable_point_is_rejected() {
        // f = 1 + z, Φ = 2: P_{1/2} = 1 + 2z vanishes at −1/2 while P₀P₁ = −1/4
        let f = AnalyticMap::moebius(1.0, 0.0);
        let pair = ThetaPhiPair::new(AnalyticMap::constant(1.0), AnalyticMap::constant(2.0)).unwrap();
        let r = h_operator(&pair, &f, 0.5, c(-0.5, 0.0));
        assert!(matches!(r, Err(Error::NonRemovable { .. })), "{r:?}");
    }
}
