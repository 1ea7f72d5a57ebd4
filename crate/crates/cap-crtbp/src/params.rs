use crate::CrtbpError;
use cap_ivp::{Interval, Scalar};

/// Mass ratio and regularization energy (Jacobi constant) of a problem
/// instance.  The mass ratio is kept as an exact enclosure so that rational
/// values like the Earth-Moon 0.0123/1.0123 lose nothing.
#[derive(Clone, Copy, Debug)]
pub struct SystemParams {
    mu: Interval,
    c: Interval,
}

impl SystemParams {
    pub fn new(mu: f64, c: f64) -> Result<Self, CrtbpError> {
        if !(mu > 0.0 && mu <= 0.5) {
            return Err(CrtbpError::MassRatio(mu));
        }
        Ok(SystemParams { mu: Interval::point(mu), c: Interval::point(c) })
    }

    /// Mass ratio given as the exact quotient `num/den`.
    pub fn with_mu_ratio(num: f64, den: f64, c: f64) -> Result<Self, CrtbpError> {
        let mu = Interval::ratio(num, den);
        if !(mu.lo() > 0.0 && mu.hi() <= 0.5) {
            return Err(CrtbpError::MassRatio(mu.mid()));
        }
        Ok(SystemParams { mu, c: Interval::point(c) })
    }

    /// The Earth-Moon mass ratio 0.0123/1.0123, stored as the exact quotient.
    pub fn earth_moon(c: f64) -> Self {
        SystemParams::with_mu_ratio(123.0, 10123.0, c).expect("valid ratio")
    }

    pub fn with_c(self, c: f64) -> Self {
        SystemParams { c: Interval::point(c), ..self }
    }

    pub fn with_c_interval(self, c: Interval) -> Self {
        SystemParams { c, ..self }
    }

    pub fn mu_interval(&self) -> Interval {
        self.mu
    }

    pub fn c_interval(&self) -> Interval {
        self.c
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu.mid()
    }

    pub fn c_f64(&self) -> f64 {
        self.c.mid()
    }

    /// Mass ratio as the scalar type of the computation.
    pub fn mu<S: Scalar>(&self) -> S {
        S::from_interval(self.mu)
    }

    pub fn c<S: Scalar>(&self) -> S {
        S::from_interval(self.c)
    }
}
