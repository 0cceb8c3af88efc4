use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Polar sampling grid: `radii × angular_count` interior points, plus the
/// boundary circle when `include_boundary` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angular_count: usize,
    include_boundary: bool,
}

impl DiskGrid {
    pub fn new(radii: Vec<f64>, angular_count: usize, include_boundary: bool) -> Result<Self> {
        if angular_count == 0 {
            return Err(Error::OutOfRange("angular count must be positive".into()));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::OutOfRange("grid radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange("grid radii must be strictly increasing".into()));
        }
        Ok(DiskGrid { radii, angular_count, include_boundary })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn include_boundary(&self) -> bool {
        self.include_boundary
    }

    /// Same radii with `factor` times the angular resolution.
    pub fn refined(&self, factor: usize) -> Self {
        DiskGrid { angular_count: self.angular_count * factor.max(1), ..self.clone() }
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.angular_count;
        (0..n).map(move |k| 2.0 * PI * k as f64 / n as f64)
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.len());
        for &r in &self.radii {
            out.extend(self.angles().map(|t| Complex64::from_polar(r, t)));
        }
        if self.include_boundary {
            out.extend(self.angles().map(|t| Complex64::from_polar(1.0, t)));
        }
        out
    }

    pub fn len(&self) -> usize {
        (self.radii.len() + usize::from(self.include_boundary)) * self.angular_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for DiskGrid {
    fn default() -> Self {
        DiskGrid { radii: vec![0.5, 0.9, 0.99, 0.999], angular_count: 1024, include_boundary: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_radii() {
        assert!(DiskGrid::new(vec![0.5, 0.4], 8, false).is_err());
        assert!(DiskGrid::new(vec![0.5, 1.0], 8, false).is_err());
        assert!(DiskGrid::new(vec![0.5], 0, false).is_err());
        let g = DiskGrid::new(vec![0.25, 0.5], 8, true).unwrap();
        assert_eq!(g.points().len(), 24);
        assert!(g.points().iter().all(|z| z.norm() <= 1.0 + 1e-15));
    }
}
