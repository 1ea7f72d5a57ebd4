//! Recovery of synodic time from regularized trajectories:
//! `t = 4 * integral of (x(s)^2 + y(s)^2) ds` over the rescaled time.

use crate::validated::{Box4, ValidatedStepPoly};
use crate::FlowError;
use cap_ivp::Interval;

/// Validated enclosure of the synodic time spanned by a sequence of
/// validated Levi-Civita steps (the full steps of one flow call).
pub fn lc_time_enclosure(steps: &[ValidatedStepPoly]) -> Result<Interval, FlowError> {
    if steps.is_empty() {
        return Err(FlowError::TraceGap);
    }
    let mut total = Interval::ZERO;
    for st in steps {
        total = total + step_time(st);
    }
    Ok(total)
}

/// 4 h * integral_0^1 (x(sigma)^2 + y(sigma)^2) d sigma for one step whose
/// trajectory enclosure is `poly + rem * sigma^{K+1}`.
fn step_time(st: &ValidatedStepPoly) -> Interval {
    let n = st.coeffs.len();
    // exact term-wise integral of the polynomial square
    let mut poly_int = Interval::ZERO;
    for m in 0..(2 * n - 1) {
        let mut conv = Interval::ZERO;
        for j in 0..n {
            if m >= j && m - j < n {
                conv = conv
                    + st.coeffs[j][0] * st.coeffs[m - j][0]
                    + st.coeffs[j][2] * st.coeffs[m - j][2];
            }
        }
        poly_int = poly_int + conv * Interval::ratio(1.0, (m + 1) as f64);
    }
    // remainder cross terms: |2 p(sigma) delta| + |delta|^2 with
    // |p| bounded by the coefficient-magnitude sum
    let bound_component = |slot: usize| -> f64 {
        let mut b = 0.0f64;
        for c in &st.coeffs {
            b = cap_ivp::round::add_up(b, c[slot].mag());
        }
        b
    };
    let px = bound_component(0);
    let py = bound_component(2);
    let dx = st.rem[0].mag();
    let dy = st.rem[2].mag();
    let cross = 2.0 * (px * dx + py * dy) + dx * dx + dy * dy;
    let err = Interval::symmetric(cap_ivp::round::next_up(cross * (1.0 + 1e-14)));
    Interval::point(4.0) * st.h * (poly_int + err)
}

/// Numeric counterpart over dense floating steps.
pub fn lc_time_numeric(steps: &[crate::numeric::DenseStep]) -> f64 {
    steps.iter().map(|s| s.lc_time_increment()).sum()
}

/// Enclosure of the position-square integrand over a validated step,
/// used when exporting orbits.
pub fn step_positions_hull(st: &ValidatedStepPoly) -> Box4 {
    let mut out = [Interval::ZERO; 4];
    for i in 0..4 {
        let mut acc = Interval::ZERO;
        let unit = Interval::new(0.0, 1.0).unwrap();
        let mut sigma_pow = Interval::ONE;
        for c in &st.coeffs {
            acc = acc + c[i] * sigma_pow;
            sigma_pow = sigma_pow * unit;
        }
        out[i] = acc + st.rem[i] * Interval::new(0.0, 1.0).unwrap();
    }
    out
}
