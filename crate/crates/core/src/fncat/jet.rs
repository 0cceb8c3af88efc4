use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Value together with its first two complex derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet {
    pub const fn new(f: Complex64, d1: Complex64, d2: Complex64) -> Self {
        Jet { f, d1, d2 }
    }

    pub fn constant(c: Complex64) -> Self {
        Jet::new(c, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn variable(z: Complex64) -> Self {
        Jet::new(z, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// Chain rule: `self` holds (g, g', g'') evaluated at `inner.f`.
    pub fn after(self, inner: Jet) -> Jet {
        Jet::new(
            self.f,
            self.d1 * inner.d1,
            self.d2 * inner.d1 * inner.d1 + self.d1 * inner.d2,
        )
    }

    /// Quotient rule; the caller guarantees `den.f != 0`.
    pub fn div(self, den: Jet) -> Jet {
        let q = self.f / den.f;
        let q1 = (self.d1 - q * den.d1) / den.f;
        let q2 = (self.d2 - 2.0 * q1 * den.d1 - q * den.d2) / den.f;
        Jet::new(q, q1, q2)
    }

    pub fn scale(self, c: Complex64) -> Jet {
        Jet::new(self.f * c, self.d1 * c, self.d2 * c)
    }

    pub fn tuple(self) -> (Complex64, Complex64, Complex64) {
        (self.f, self.d1, self.d2)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.f + o.f, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.f - o.f, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.f, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.f * o.f,
            self.d1 * o.f + self.f * o.d1,
            self.d2 * o.f + 2.0 * self.d1 * o.d1 + self.f * o.d2,
        )
    }
}
