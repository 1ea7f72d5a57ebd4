//! Flow-level checks: equilibria, the semigroup property, variational
//! accuracy against finite differences, energy conservation, validated
//! containment of numeric trajectories, and the Levi-Civita conjugacy.

use cap_crtbp::*;
use cap_flow::*;
use cap_ivp::Interval;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn numeric_synodic(params: &SystemParams, x0: [f64; 4], t: f64, steps: usize) -> [f64; 4] {
    let tape = fields_tape::synodic_tape();
    let nf = NumericFlow { tape: &tape, params: vec![params.mu_f64(), 0.0], order: 25 };
    nf.flow(x0, t, steps, false).unwrap().x
}

#[test]
fn l4_stays_fixed() {
    let params = SystemParams::new(0.5, 3.0).unwrap();
    let l4 = l4_point::<f64>(&params);
    let x = numeric_synodic(&params, l4, 10.0, 100);
    for i in 0..4 {
        assert!((x[i] - l4[i]).abs() < 1e-10, "slot {i}");
    }
    // validated: enclosure of the L4 box stays within 1e-10 of L4
    let tape = fields_tape::synodic_tape();
    let vf = ValidatedFlow {
        tape: &tape,
        params: vec![params.mu_interval(), Interval::ZERO],
        order: 18,
    };
    let l4_box: Box4 = l4_point::<Interval>(&params);
    let out = vf.flow_box(&l4_box, Interval::point(10.0), 100, false).unwrap();
    for i in 0..4 {
        assert!(out.x[i].contains(l4[i]));
        assert!(out.x[i].width() < 1e-10, "width {}", out.x[i].width());
    }
}

#[test]
fn semigroup_property() {
    let params = SystemParams::new(0.25, 3.2).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let x0 = [
            rng.gen_range(-0.4..0.6),
            rng.gen_range(-0.4..0.4),
            rng.gen_range(0.6..1.0),
            rng.gen_range(-0.4..0.4),
        ];
        let a = numeric_synodic(&params, x0, 0.7, 70);
        let b = numeric_synodic(&params, a, 0.3, 30);
        let c = numeric_synodic(&params, x0, 1.0, 100);
        for i in 0..4 {
            assert!((b[i] - c[i]).abs() < 1e-10, "slot {i}: {} vs {}", b[i], c[i]);
        }
    }
}

#[test]
fn variational_matches_finite_differences() {
    let params = SystemParams::new(0.25, 3.2).unwrap();
    let tape = fields_tape::synodic_tape();
    let nf = NumericFlow { tape: &tape, params: vec![params.mu_f64(), 0.0], order: 25 };
    let x0 = [-0.3, 0.2, 0.9, -0.1];
    let t = 1.0;
    let res = nf.flow(x0, t, 50, true).unwrap();
    let h = 1e-5;
    for j in 0..4 {
        let mut xp = x0;
        let mut xm = x0;
        xp[j] += h;
        xm[j] -= h;
        let fp = nf.flow(xp, t, 50, false).unwrap().x;
        let fm = nf.flow(xm, t, 50, false).unwrap().x;
        for i in 0..4 {
            let fd = (fp[i] - fm[i]) / (2.0 * h);
            let rel = (res.dx[i][j] - fd).abs() / fd.abs().max(1.0);
            assert!(rel < 1e-6, "D[{i}][{j}]: jet {} fd {}", res.dx[i][j], fd);
        }
    }
    // alpha column via finite difference on the unfolding parameter
    let nfp = NumericFlow { tape: &tape, params: vec![params.mu_f64(), h], order: 25 };
    let nfm = NumericFlow { tape: &tape, params: vec![params.mu_f64(), -h], order: 25 };
    let fp = nfp.flow(x0, t, 50, false).unwrap().x;
    let fm = nfm.flow(x0, t, 50, false).unwrap().x;
    for i in 0..4 {
        let fd = (fp[i] - fm[i]) / (2.0 * h);
        let rel = (res.dparam[i] - fd).abs() / fd.abs().max(1.0);
        assert!(rel < 1e-6, "alpha col {i}");
    }
}

#[test]
fn numeric_energy_drift_small() {
    let params = SystemParams::new(0.25, 3.2).unwrap();
    let x0 = [-0.3, 0.2, 0.9, -0.1];
    let e0 = energy(&PhasePoint::synodic(x0), EnergyKind::Jacobi, &params).unwrap();
    // order 25, fine steps, |t| = 2
    let x = numeric_synodic(&params, x0, 2.0, 100);
    let e1 = energy(&PhasePoint::synodic(x), EnergyKind::Jacobi, &params).unwrap();
    assert!((e1 - e0).abs() < 2e-11, "drift {}", e1 - e0);
}

#[test]
fn lc_energy_conserved_along_validated_flow() {
    let params = SystemParams::new(0.25, 3.2).unwrap();
    // Levi-Civita leg of the ejection-collision data
    let x1 = [0.0, -1.387134030283961, 0.0, 0.275425456390970];
    let tape = fields_tape::lc2_tape();
    let vf = ValidatedFlow {
        tape: &tape,
        params: vec![params.mu_interval(), params.c_interval()],
        order: 22,
    };
    let x1b: Box4 = x1.map(Interval::point);
    let e0 = energy(&PhasePoint::lc2(x1b), EnergyKind::RegM2, &params).unwrap();
    let out = vf.flow_box(&x1b, Interval::point(0.35), 10, false).unwrap();
    let e1 = energy(&PhasePoint::lc2(out.x), EnergyKind::RegM2, &params).unwrap();
    assert!(e1.intersect(&e0.inflate(1e-10)).is_some(), "E drift: {e0:?} -> {e1:?}");
}

#[test]
fn validated_contains_numeric_members() {
    let mut rng = StdRng::seed_from_u64(23);
    let params = SystemParams::new(0.25, 3.2).unwrap();
    let center = [-0.3, 0.2, 0.9, -0.1];
    let r = 1e-6;
    let x0: Box4 = std::array::from_fn(|i| Interval::point(center[i]).inflate(r));
    let tape = fields_tape::synodic_tape();
    let vf = ValidatedFlow {
        tape: &tape,
        params: vec![params.mu_interval(), Interval::ZERO],
        order: 20,
    };
    for t in [2.0, -2.0] {
        let out = vf.flow_box(&x0, Interval::point(t), 80, false).unwrap();
        for _ in 0..100 {
            let member: [f64; 4] =
                std::array::from_fn(|i| center[i] + rng.gen_range(-r..r));
            let end = numeric_synodic(&params, member, t, 400);
            for i in 0..4 {
                assert!(
                    out.x[i].inflate(1e-12).contains(end[i]),
                    "t={t} slot {i}: {} not in {:?}",
                    end[i],
                    out.x[i]
                );
            }
        }
    }
}

/// Enclosure widths grow monotonically with the input box width.
#[test]
fn widths_monotone_in_input() {
    let params = SystemParams::new(0.25, 3.2).unwrap();
    let center = [-0.3, 0.2, 0.9, -0.1];
    let tape = fields_tape::synodic_tape();
    let vf = ValidatedFlow {
        tape: &tape,
        params: vec![params.mu_interval(), Interval::ZERO],
        order: 20,
    };
    let mut prev = 0.0;
    for r in [0.0, 1e-12, 1e-9, 1e-6] {
        let x0: Box4 = std::array::from_fn(|i| Interval::point(center[i]).inflate(r));
        let out = vf.flow_box(&x0, Interval::point(1.0), 40, false).unwrap();
        let w = out.x.iter().map(|e| e.width()).fold(0.0f64, f64::max);
        assert!(w >= prev);
        prev = w;
    }
}

/// Levi-Civita conjugacy: flowing in the regularized chart and mapping back
/// tracks the synodic flow at the recovered time.
#[test]
fn levi_civita_conjugacy() {
    let mut rng = StdRng::seed_from_u64(37);
    let params = SystemParams::new(0.5, 3.0).unwrap();
    let lc1 = fields_tape::lc1_tape();
    let nf = NumericFlow { tape: &lc1, params: vec![params.mu_f64(), params.c_f64()], order: 25 };
    let mut done = 0;
    while done < 20 {
        // random zero-energy LC1 point away from singular sets
        let x = rng.gen_range(-1.0..1.0);
        let y = rng.gen_range(-1.0..1.0);
        let p = rng.gen_range(-1.0..1.0);
        let r2: f64 = x * x + y * y;
        let d = r2 * r2 + 1.0 + 2.0 * (x * x - y * y);
        if r2 < 0.2 || d < 0.3 {
            continue;
        }
        let base = energy(&PhasePoint::lc1([x, p, y, 0.0]), EnergyKind::RegM1, &params);
        let Ok(base) = base else { continue };
        if base <= 0.05 {
            continue;
        }
        let mut q = base.sqrt();
        for _ in 0..3 {
            let e = energy(&PhasePoint::lc1([x, p, y, q]), EnergyKind::RegM1, &params).unwrap();
            q += e / (2.0 * q);
        }
        let xh0 = [x, p, y, q];

        let t_hat = 0.4;
        let Ok(res) = nf.flow(xh0, t_hat, 40, false) else { continue };
        let t_syn = time_recovery::lc_time_numeric(&res.steps);
        // the LC trajectory must avoid the collision for the comparison
        let hostile = res.steps.iter().any(|s| {
            let mut bad = false;
            for frac in [0.0, 0.5, 1.0] {
                let e = s.eval(s.t0 + frac * s.h);
                let r2 = e[0] * e[0] + e[2] * e[2];
                let d = r2 * r2 + 1.0 + 2.0 * (e[0] * e[0] - e[2] * e[2]);
                bad |= !(0.3..=2.0).contains(&r2) || d < 0.3;
            }
            bad
        });
        if hostile {
            continue;
        }

        let start_syn = chart_map(&PhasePoint::lc1(xh0), &params).unwrap().coords;
        let end_lc = chart_map(&PhasePoint::lc1(res.x), &params);
        let Ok(end_lc) = end_lc else { continue };
        let end_syn = numeric_synodic(&params, start_syn, t_syn, 2000);
        for i in 0..4 {
            assert!(
                (end_lc.coords[i] - end_syn[i]).abs() < 1e-8,
                "slot {i}: conjugacy broke: {} vs {}",
                end_lc.coords[i],
                end_syn[i]
            );
        }
        done += 1;
    }
}

/// Time recovery on validated steps: constant-radius toy comparison and the
/// reference enclosures of the ejection-collision proof.
#[test]
fn validated_time_recovery_reference_values() {
    let params = SystemParams::new(0.25, 3.2).unwrap();
    // m2 leg from the ejection-collision data
    let x1 = [0.0, -1.387134030283961, 0.0, 0.275425456390970];
    let lc2 = fields_tape::lc2_tape();
    let vf = ValidatedFlow {
        tape: &lc2,
        params: vec![params.mu_interval(), params.c_interval()],
        order: 24,
    };
    let out = vf
        .flow_box(&x1.map(Interval::point), Interval::point(0.35), 50, false)
        .unwrap();
    let t2 = time_recovery::lc_time_enclosure(&out.steps).unwrap();
    let reference = Interval::new(0.10430261063473, 0.10430261063793).unwrap();
    assert!(
        reference.contains_interval(&t2),
        "T2 enclosure {t2:?} not within reference {reference:?}"
    );

    // m1 leg
    let x5 = [
        0.018086991443589,
        -0.732714475912918,
        -0.703153304556756,
        1.254598547822042,
    ];
    let lc1 = fields_tape::lc1_tape();
    let vf1 = ValidatedFlow {
        tape: &lc1,
        params: vec![params.mu_interval(), params.c_interval()],
        order: 24,
    };
    let out1 = vf1
        .flow_box(&x5.map(Interval::point), Interval::point(0.35), 50, false)
        .unwrap();
    let t1 = time_recovery::lc_time_enclosure(&out1.steps).unwrap();
    let reference1 = Interval::new(0.27116751585137, 0.27116751585615).unwrap();
    assert!(
        reference1.contains_interval(&t1),
        "T1 enclosure {t1:?} not within reference {reference1:?}"
    );
}
