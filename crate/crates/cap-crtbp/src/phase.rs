use cap_ivp::Scalar;

/// Coordinate chart a 4-vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// Co-rotating frame, coordinates (x, p, y, q).
    Synodic,
    /// Levi-Civita chart regularizing collisions with the large primary m1.
    Lc1,
    /// Levi-Civita chart regularizing collisions with the small primary m2.
    Lc2,
}

/// A phase-space point: 4 coordinates tagged with their chart.
#[derive(Clone, Copy, Debug)]
pub struct PhasePoint<S: Scalar> {
    pub coords: [S; 4],
    pub chart: Chart,
}

impl<S: Scalar> PhasePoint<S> {
    pub fn synodic(coords: [S; 4]) -> Self {
        PhasePoint { coords, chart: Chart::Synodic }
    }

    pub fn lc1(coords: [S; 4]) -> Self {
        PhasePoint { coords, chart: Chart::Lc1 }
    }

    pub fn lc2(coords: [S; 4]) -> Self {
        PhasePoint { coords, chart: Chart::Lc2 }
    }

    pub fn approx(&self) -> [f64; 4] {
        [
            self.coords[0].approx(),
            self.coords[1].approx(),
            self.coords[2].approx(),
            self.coords[3].approx(),
        ]
    }
}
