//! Tape constructions for the three CRTBP vector fields.  Parameter slots:
//! 0 is the mass ratio, 1 is the field's own scalar parameter (unfolding
//! strength for the synodic field, regularization energy for the others);
//! slot 1 also carries the jet's parametric-derivative direction.

use crate::tape::{Tape, TapeBuilder};
use cap_crtbp::Chart;

pub const PARAM_MU: usize = 0;
pub const PARAM_OWN: usize = 1;

/// f(x,p,y,q) + alpha (0,p,0,q)
pub fn synodic_tape() -> Tape {
    let mut b = TapeBuilder::default();
    let x = b.var(0);
    let p = b.var(1);
    let y = b.var(2);
    let q = b.var(3);
    let mu = b.param(PARAM_MU);
    let alpha = b.param(PARAM_OWN);
    let one = b.konst(1.0);
    let omm = b.sub(one, mu);

    let dx1 = b.sub(x, mu);
    let x_plus_1 = b.add(x, one);
    let dx2 = b.sub(x_plus_1, mu);
    let y2 = b.mul(y, y);
    let dx1_sq = b.mul(dx1, dx1);
    let dx2_sq = b.mul(dx2, dx2);
    let s1 = b.add(dx1_sq, y2);
    let s2 = b.add(dx2_sq, y2);
    let t1 = b.pow_neg_3_half(s1);
    let t2 = b.pow_neg_3_half(s2);

    let x_2q = b.mul_add(x, 2.0, q);
    let w1 = b.mul(omm, dx1);
    let n2 = b.mul(w1, t1);
    let w2 = b.mul(mu, dx2);
    let n3 = b.mul(w2, t2);
    let n4 = b.sub(x_2q, n2);
    let n5 = b.sub(n4, n3);
    let ap = b.mul(alpha, p);
    let row_p = b.add(n5, ap);

    let y_m2p = b.mul_add(y, -2.0, p);
    let w3 = b.mul(omm, y);
    let m2 = b.mul(w3, t1);
    let w4 = b.mul(mu, y);
    let m3 = b.mul(w4, t2);
    let m4 = b.sub(y_m2p, m2);
    let m5 = b.sub(m4, m3);
    let aq = b.mul(alpha, q);
    let row_q = b.add(m5, aq);

    b.finish([p, row_p, q, row_q], 2, Some(PARAM_OWN))
}

/// Shared structure of the two regularized fields.  `at_m1` picks which
/// primary is regularized.
fn regularized_tape(at_m1: bool) -> Tape {
    let mut b = TapeBuilder::default();
    let x = b.var(0);
    let p = b.var(1);
    let y = b.var(2);
    let q = b.var(3);
    let mu = b.param(PARAM_MU);
    let c = b.param(PARAM_OWN);
    let one = b.konst(1.0);

    // mass of the regularized primary's companion terms
    let mass = if at_m1 { mu } else { b.sub(one, mu) };

    let x2 = b.mul(x, x);
    let y2 = b.mul(y, y);
    let r2 = b.add(x2, y2);
    let r4 = b.mul(r2, r2);
    // d = r4 + 1 + 2(x2 - y2) for m1, r4 + 1 + 2(y2 - x2) for m2
    let diff = if at_m1 { b.sub(x2, y2) } else { b.sub(y2, x2) };
    let r4_1 = b.add(r4, one);
    let d = b.mul_add(r4_1, 2.0, diff);
    let g = b.pow_neg_3_half(d);
    let mg = b.mul(mass, g);
    let mass8g = b.mul_const(mg, 8.0);

    let x3 = b.mul(x2, x);
    let y3 = b.mul(y2, y);
    let mc = b.sub(mass, c);

    // row p
    let r2q = b.mul(r2, q);
    let a1 = b.mul_const(r2q, 8.0);
    let xr4 = b.mul(x, r4);
    let a2 = b.mul_const(xr4, 12.0);
    let mx3 = b.mul(mass, x3);
    let a3 = b.mul_const(mx3, if at_m1 { 16.0 } else { -16.0 });
    let mcx = b.mul(mc, x);
    let a4 = b.mul_const(mcx, 4.0);
    // m1: x^3 - 3 x y^2 + x ; m2: -x^3 + 3 x y^2 + x
    let xy2 = b.mul(x, y2);
    let cubic_p = if at_m1 {
        let t = b.mul_add(x3, -3.0, xy2);
        b.add(t, x)
    } else {
        let nx3 = b.neg(x3);
        let t = b.mul_add(nx3, 3.0, xy2);
        b.add(t, x)
    };
    let a5 = b.mul(mass8g, cubic_p);
    let s1 = b.add(a1, a2);
    let s2 = b.add(s1, a3);
    let s3 = b.add(s2, a4);
    let row_p = b.add(s3, a5);

    // row q
    let r2p = b.mul(r2, p);
    let c1 = b.mul_const(r2p, -8.0);
    let yr4 = b.mul(y, r4);
    let c2 = b.mul_const(yr4, 12.0);
    let my3 = b.mul(mass, y3);
    let c3 = b.mul_const(my3, if at_m1 { -16.0 } else { 16.0 });
    let mcy = b.mul(mc, y);
    let c4 = b.mul_const(mcy, 4.0);
    // m1: -y^3 + 3 x^2 y + y ; m2: y^3 - 3 x^2 y + y
    let x2y = b.mul(x2, y);
    let cubic_q = if at_m1 {
        let ny3 = b.neg(y3);
        let t = b.mul_add(ny3, 3.0, x2y);
        b.add(t, y)
    } else {
        let t = b.mul_add(y3, -3.0, x2y);
        b.add(t, y)
    };
    let c5 = b.mul(mass8g, cubic_q);
    let u1 = b.add(c1, c2);
    let u2 = b.add(u1, c3);
    let u3 = b.add(u2, c4);
    let row_q = b.add(u3, c5);

    b.finish([p, row_p, q, row_q], 2, Some(PARAM_OWN))
}

pub fn lc1_tape() -> Tape {
    regularized_tape(true)
}

pub fn lc2_tape() -> Tape {
    regularized_tape(false)
}

pub fn tape_for_chart(chart: Chart) -> Tape {
    match chart {
        Chart::Synodic => synodic_tape(),
        Chart::Lc1 => lc1_tape(),
        Chart::Lc2 => lc2_tape(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::eval_field;
    use cap_crtbp::{lc1_field, lc2_field, synodic_field, SystemParams};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// The tape and the closed-form field are two transcriptions of the
    /// same formulas; they must agree to rounding.
    #[test]
    fn tapes_match_model_fields() {
        let mut rng = StdRng::seed_from_u64(99);
        let syn = synodic_tape();
        let l1 = lc1_tape();
        let l2 = lc2_tape();
        for _ in 0..200 {
            let params = SystemParams::new(rng.gen_range(0.05..=0.5), rng.gen_range(1.0..3.5))
                .unwrap();
            let v = [
                rng.gen_range(-1.3..1.3),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.3..1.3),
                rng.gen_range(-1.5..1.5),
            ];
            let alpha: f64 = rng.gen_range(-0.2..0.2);
            let mu = params.mu_f64();
            let c = params.c_f64();

            if let Ok(expect) = synodic_field(&v, &params, alpha) {
                if expect.iter().all(|x| x.is_finite()) {
                    let got = eval_field(&syn, &v, vec![mu, alpha]).unwrap();
                    for i in 0..4 {
                        assert!(
                            (got[i] - expect[i]).abs() <= 1e-12 * expect[i].abs().max(1.0),
                            "synodic row {i}"
                        );
                    }
                }
            }
            if let Ok(expect) = lc1_field(&v, &params) {
                let got = eval_field(&l1, &v, vec![mu, c]).unwrap();
                for i in 0..4 {
                    assert!(
                        (got[i] - expect[i]).abs() <= 1e-12 * expect[i].abs().max(1.0),
                        "lc1 row {i}"
                    );
                }
            }
            if let Ok(expect) = lc2_field(&v, &params) {
                let got = eval_field(&l2, &v, vec![mu, c]).unwrap();
                for i in 0..4 {
                    assert!(
                        (got[i] - expect[i]).abs() <= 1e-12 * expect[i].abs().max(1.0),
                        "lc2 row {i}"
                    );
                }
            }
        }
    }
}
