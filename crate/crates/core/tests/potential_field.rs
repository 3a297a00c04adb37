use pfac::potential_field::*;
use pfac::Vec2;
use proptest::prelude::*;

fn point(r: f64) -> impl Strategy<Value = Vec2> {
    (-r..r, -r..r).prop_map(|(x, y)| Vec2::new(x, y))
}

fn field_spec() -> impl Strategy<Value = PotentialFieldSpec> {
    (
        0.01..5.0f64,
        1e-4..1.0f64,
        0.1..1.0f64,
        prop::collection::vec(point(1.0), 1..3),
        prop::collection::vec(point(1.0), 0..4),
    )
        .prop_map(|(xi, eta, d0, goals, obstacles)| {
            let mut spec = PotentialFieldSpec::new(xi, eta, d0);
            spec.goal_points = goals;
            spec.obstacle_points = obstacles;
            spec
        })
}

fn total_potential(spec: &PotentialFieldSpec, s: Vec2) -> f64 {
    attractive_potential(spec, s).unwrap() + repulsive_potential(spec, s)
}

/// True when `s` is clear of every kink of `U`: the repulsion cutoff, the
/// clamp radius, and ties between goals.
fn smooth_at(spec: &PotentialFieldSpec, s: Vec2, margin: f64) -> bool {
    let obstacles_ok = spec.obstacle_points.iter().all(|&o| {
        let d = s.distance(o);
        d > 0.05 && (d - spec.d0).abs() > margin
    });
    let mut goal_d: Vec<f64> = spec.goal_points.iter().map(|&g| s.distance(g)).collect();
    goal_d.sort_by(f64::total_cmp);
    let goals_ok = goal_d.len() < 2 || goal_d[1] - goal_d[0] > margin;
    obstacles_ok && goals_ok
}

proptest! {
    #[test]
    fn action_value_is_never_positive(spec in field_spec(), s in point(1.2), a in point(1.0)) {
        prop_assert!(pf_action_value(&spec, s, a) <= 0.0);
    }

    #[test]
    fn action_value_ignores_action_length(
        spec in field_spec(), s in point(1.2), a in point(1.0), c in 0.01..100.0f64,
    ) {
        prop_assume!(a.norm() > 1e-3);
        let q = pf_action_value(&spec, s, a);
        let qc = pf_action_value(&spec, s, c * a);
        prop_assert!((q - qc).abs() <= 1e-12 * q.abs().max(1.0));
    }

    #[test]
    fn scaling_gains_scales_value(
        spec in field_spec(), s in point(1.2), a in point(1.0), c in 0.1..10.0f64,
    ) {
        let q = pf_action_value(&spec, s, a);
        let qc = pf_action_value(&spec.scaled(c), s, a);
        prop_assert!((c * q - qc).abs() <= 1e-9 * qc.abs().max(1e-9));
    }

    #[test]
    fn force_is_negative_potential_gradient(spec in field_spec(), s in point(1.2)) {
        prop_assume!(smooth_at(&spec, s, 1e-3));
        let h = 1e-6;
        let dx = (total_potential(&spec, s + Vec2::new(h, 0.0))
            - total_potential(&spec, s - Vec2::new(h, 0.0))) / (2.0 * h);
        let dy = (total_potential(&spec, s + Vec2::new(0.0, h))
            - total_potential(&spec, s - Vec2::new(0.0, h))) / (2.0 * h);
        let f = evaluate_field(&spec, s).force;
        let err = (f + Vec2::new(dx, dy)).norm();
        prop_assert!(err <= 1e-5 * f.norm().max(1.0), "force {f:?} fd {dx} {dy}");
    }

    #[test]
    fn action_gradient_matches_finite_differences(
        spec in field_spec(), s in point(1.2), a in point(1.0),
    ) {
        let f = evaluate_field(&spec, s).force;
        prop_assume!(a.norm() > 0.05 && f.norm() > 1e-3);
        let h = 1e-6;
        let q = |a: Vec2| pf_action_value(&spec, s, a);
        let fd = Vec2::new(
            (q(a + Vec2::new(h, 0.0)) - q(a - Vec2::new(h, 0.0))) / (2.0 * h),
            (q(a + Vec2::new(0.0, h)) - q(a - Vec2::new(0.0, h))) / (2.0 * h),
        );
        let g = pf_action_gradient(&spec, s, a);
        prop_assert!((g - fd).norm() <= 1e-5 * g.norm().max(1e-3), "analytic {g:?} fd {fd:?}");
    }

    #[test]
    fn repulsion_is_continuous_at_cutoff(eta in 1e-4..10.0f64, d0 in 0.05..2.0f64, angle in 0.0..std::f64::consts::TAU) {
        let spec = PotentialFieldSpec::new(1.0, eta, d0).with_obstacle(Vec2::ZERO);
        let dir = Vec2::new(angle.cos(), angle.sin());
        let inside = repulsive_potential(&spec, (d0 * (1.0 - 1e-9)) * dir);
        let outside = repulsive_potential(&spec, (d0 * (1.0 + 1e-9)) * dir);
        prop_assert!((inside - outside).abs() <= 1e-6 * eta);
    }

    #[test]
    fn best_unit_action_follows_the_force(spec in field_spec(), s in point(1.2)) {
        let field = evaluate_field(&spec, s);
        prop_assume!(field.force.norm() > 1e-3 && field.u_total > 1e-6);
        let step = std::f64::consts::TAU / 360.0;
        let best = (0..360)
            .map(|k| Vec2::new((k as f64 * step).cos(), (k as f64 * step).sin()))
            .max_by(|a, b| pf_action_value(&spec, s, *a).total_cmp(&pf_action_value(&spec, s, *b)))
            .unwrap();
        let unit_force = (1.0 / field.force.norm()) * field.force;
        prop_assert!(best.dot(unit_force) >= (step / 2.0).cos() - 1e-12);
    }
}
