//! Artificial potential fields and the field action value.
//!
//! The overall potential is `U(s) = U_att(s) + U_rep(s)` with
//!
//! ```text
//! U_att(s) = 1/2 xi d(s, goal)^2                          (nearest goal)
//! U_rep(s) = sum_obs 1/2 eta (1/d(s, obs) - 1/d0)^2       (d <= d0, else 0)
//! ```
//!
//! The force `f = -grad U(s)` is the single-step plan suggested by the field.
//! An action is scored by how well it points along the force, weighted by the
//! potential: `q_pf(s, a) = -U(s) (1 - cos chi)` where `chi` is the angle
//! between `f` and `a`. `q_pf` is never positive and is maximal (zero) for
//! actions aligned with the force.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;

pub const DEFAULT_EPSILON_DIST: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialFieldSpec {
    /// Attraction gain.
    pub xi: f64,
    /// Repulsion gain.
    pub eta: f64,
    /// Repulsion influence distance.
    pub d0: f64,
    pub goal_points: Vec<Vec2>,
    pub obstacle_points: Vec<Vec2>,
    /// Distances below this are clamped when evaluating repulsion, and
    /// vectors shorter than this have no direction.
    pub epsilon_dist: f64,
}

impl PotentialFieldSpec {
    pub fn new(xi: f64, eta: f64, d0: f64) -> Self {
        PotentialFieldSpec {
            xi,
            eta,
            d0,
            goal_points: Vec::new(),
            obstacle_points: Vec::new(),
            epsilon_dist: DEFAULT_EPSILON_DIST,
        }
    }

    pub fn with_goal(mut self, goal: Vec2) -> Self {
        self.goal_points.push(goal);
        self
    }

    pub fn with_obstacle(mut self, obstacle: Vec2) -> Self {
        self.obstacle_points.push(obstacle);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("xi", self.xi),
            ("eta", self.eta),
            ("d0", self.d0),
            ("epsilon_dist", self.epsilon_dist),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config(format!(
                    "potential field {name} must be positive and finite, got {value}"
                )));
            }
        }
        if self
            .goal_points
            .iter()
            .chain(&self.obstacle_points)
            .any(|p| !p.is_finite())
        {
            return Err(Error::Config(
                "potential field points must be finite".to_string(),
            ));
        }
        Ok(())
    }

    fn nearest_goal(&self, s: Vec2) -> Option<Vec2> {
        let mut best: Option<(f64, Vec2)> = None;
        for &g in &self.goal_points {
            let d2 = (s - g).norm_squared();
            if best.map_or(true, |(b, _)| d2 < b) {
                best = Some((d2, g));
            }
        }
        best.map(|(_, g)| g)
    }

    /// Multiplies both gains by `c`, which scales `U`, the force and `q_pf`
    /// by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.xi *= c;
        out.eta *= c;
        out
    }
}

/// Potentials and force at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldEvaluation {
    pub u_att: f64,
    pub u_rep: f64,
    pub u_total: f64,
    pub force: Vec2,
}

/// `1/2 xi d^2` to the nearest goal point.
pub fn attractive_potential(spec: &PotentialFieldSpec, s: Vec2) -> Result<f64> {
    let goal = spec.nearest_goal(s).ok_or_else(|| {
        Error::Config("attractive potential needs at least one goal point".to_string())
    })?;
    Ok(0.5 * spec.xi * (s - goal).norm_squared())
}

pub fn repulsive_potential(spec: &PotentialFieldSpec, s: Vec2) -> f64 {
    spec.obstacle_points
        .iter()
        .map(|&o| {
            let d = s.distance(o).max(spec.epsilon_dist);
            if d <= spec.d0 {
                let gap = 1.0 / d - 1.0 / spec.d0;
                0.5 * spec.eta * gap * gap
            } else {
                0.0
            }
        })
        .sum()
}

/// Potentials plus the analytic force `-grad U(s)`.
///
/// With no goal points the attractive part is absent. Inside the clamp
/// radius of an obstacle its potential is constant, so it contributes no
/// force there.
pub fn evaluate_field(spec: &PotentialFieldSpec, s: Vec2) -> FieldEvaluation {
    let mut u_att = 0.0;
    let mut force = Vec2::ZERO;
    if let Some(goal) = spec.nearest_goal(s) {
        let to_goal = goal - s;
        u_att = 0.5 * spec.xi * to_goal.norm_squared();
        force += spec.xi * to_goal;
    }

    let mut u_rep = 0.0;
    for &o in &spec.obstacle_points {
        let away = s - o;
        let raw = away.norm();
        let d = raw.max(spec.epsilon_dist);
        if d > spec.d0 {
            continue;
        }
        let gap = 1.0 / d - 1.0 / spec.d0;
        u_rep += 0.5 * spec.eta * gap * gap;
        if raw > spec.epsilon_dist {
            force += (spec.eta * gap / (d * d * d)) * away;
        }
    }

    FieldEvaluation {
        u_att,
        u_rep,
        u_total: u_att + u_rep,
        force,
    }
}

fn directions_defined(spec: &PotentialFieldSpec, force: Vec2, a: Vec2) -> bool {
    force.norm() > spec.epsilon_dist && a.norm() > spec.epsilon_dist
}

/// `q_pf(s, a) = -U(s) (1 - cos chi)`, in `[-2 U(s), 0]`.
///
/// Returns 0 when either the action or the force is too short to have a
/// direction.
pub fn pf_action_value(spec: &PotentialFieldSpec, s: Vec2, a: Vec2) -> f64 {
    let field = evaluate_field(spec, s);
    value_from_field(spec, &field, a)
}

pub(crate) fn value_from_field(spec: &PotentialFieldSpec, field: &FieldEvaluation, a: Vec2) -> f64 {
    let f = field.force;
    if !directions_defined(spec, f, a) {
        return 0.0;
    }
    let cos_chi = (f.dot(a) / (f.norm() * a.norm())).clamp(-1.0, 1.0);
    -field.u_total * (1.0 - cos_chi)
}

/// Gradient of [`pf_action_value`] with respect to the action:
/// `U(s) (f / (|f||a|) - (f.a) a / (|f| |a|^3))`.
pub fn pf_action_gradient(spec: &PotentialFieldSpec, s: Vec2, a: Vec2) -> Vec2 {
    let field = evaluate_field(spec, s);
    gradient_from_field(spec, &field, a)
}

pub(crate) fn gradient_from_field(
    spec: &PotentialFieldSpec,
    field: &FieldEvaluation,
    a: Vec2,
) -> Vec2 {
    let f = field.force;
    if !directions_defined(spec, f, a) {
        return Vec2::ZERO;
    }
    let f_norm = f.norm();
    let a_norm = a.norm();
    let u = field.u_total;
    (u / (f_norm * a_norm)) * f - (u * f.dot(a) / (f_norm * a_norm * a_norm * a_norm)) * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn single_goal(xi: f64, goal: Vec2) -> PotentialFieldSpec {
        PotentialFieldSpec::new(xi, 1.0, 1.0).with_goal(goal)
    }

    #[test]
    fn attraction_is_half_xi_d_squared() {
        let spec = single_goal(1.0, Vec2::ZERO);
        assert_eq!(attractive_potential(&spec, Vec2::new(2.0, 0.0)).unwrap(), 2.0);
        let spec = single_goal(3.0, Vec2::new(0.3, -0.2));
        assert_eq!(attractive_potential(&spec, Vec2::new(0.3, -0.2)).unwrap(), 0.0);
    }

    #[test]
    fn attraction_uses_nearest_goal() {
        let spec = PotentialFieldSpec::new(0.5, 1.0, 1.0)
            .with_goal(Vec2::new(1.0, 0.0))
            .with_goal(Vec2::new(5.0, 0.0));
        let brute = spec
            .goal_points
            .iter()
            .map(|g| 0.5 * 0.5 * g.norm_squared())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(brute, 0.25);
        assert_eq!(attractive_potential(&spec, Vec2::ZERO).unwrap(), brute);
    }

    #[test]
    fn attraction_without_goals_is_a_config_error() {
        let spec = PotentialFieldSpec::new(1.0, 1.0, 1.0);
        assert!(matches!(
            attractive_potential(&spec, Vec2::ZERO),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn repulsion_cases() {
        let far = PotentialFieldSpec::new(1.0, 2.0, 1.0).with_obstacle(Vec2::new(3.0, 0.0));
        assert_eq!(repulsive_potential(&far, Vec2::ZERO), 0.0);

        let near = PotentialFieldSpec::new(1.0, 2.0, 1.0).with_obstacle(Vec2::new(0.5, 0.0));
        assert_eq!(repulsive_potential(&near, Vec2::ZERO), 1.0);

        let on_top = PotentialFieldSpec::new(1.0, 2.0, 1.0).with_obstacle(Vec2::new(0.1, 0.1));
        let expected = 0.5 * 2.0 * (1.0 / 1e-6 - 1.0_f64).powi(2);
        assert_eq!(repulsive_potential(&on_top, Vec2::new(0.1, 0.1)), expected);
    }

    #[test]
    fn field_minimum_and_unit_pull() {
        let spec = single_goal(1.0, Vec2::new(0.2, 0.4));
        let at_goal = evaluate_field(&spec, Vec2::new(0.2, 0.4));
        assert_eq!(at_goal.u_total, 0.0);
        assert_eq!(at_goal.force, Vec2::ZERO);

        let spec = single_goal(1.0, Vec2::new(1.0, 0.0));
        let eval = evaluate_field(&spec, Vec2::ZERO);
        assert_eq!(eval.force, Vec2::new(1.0, 0.0));
        assert_eq!(eval.u_total, eval.u_att + eval.u_rep);
    }

    #[test]
    fn field_value_at_canonical_angles() {
        // U = 5 at s = 0 with xi = 10 and goal at distance 1.
        let spec = single_goal(10.0, Vec2::new(1.0, 0.0));
        let s = Vec2::ZERO;
        assert_eq!(evaluate_field(&spec, s).u_total, 5.0);
        assert_eq!(pf_action_value(&spec, s, Vec2::new(0.3, 0.0)), 0.0);
        assert_eq!(pf_action_value(&spec, s, Vec2::new(-0.3, 0.0)), -10.0);

        let spec = single_goal(6.0, Vec2::new(1.0, 0.0));
        assert_relative_eq!(pf_action_value(&spec, s, Vec2::new(0.0, 2.0)), -3.0);
    }

    #[test]
    fn degenerate_directions_are_neutral() {
        let spec = single_goal(1.0, Vec2::new(1.0, 0.0));
        assert_eq!(pf_action_value(&spec, Vec2::ZERO, Vec2::ZERO), 0.0);
        assert_eq!(pf_action_gradient(&spec, Vec2::ZERO, Vec2::ZERO), Vec2::ZERO);
        // Zero force at the goal.
        let at_goal = Vec2::new(1.0, 0.0);
        assert_eq!(pf_action_value(&spec, at_goal, Vec2::new(0.0, 1.0)), 0.0);
        assert_eq!(pf_action_gradient(&spec, at_goal, Vec2::new(0.0, 1.0)), Vec2::ZERO);
    }

    #[test]
    fn gradient_vanishes_along_the_force_axis() {
        let spec = single_goal(2.0, Vec2::new(0.6, 0.8));
        let s = Vec2::ZERO;
        let g = pf_action_gradient(&spec, s, Vec2::new(0.3, 0.4));
        assert!(g.norm() < 1e-12, "{g:?}");
        let g = pf_action_gradient(&spec, s, Vec2::new(-0.3, -0.4));
        assert!(g.norm() < 1e-12, "{g:?}");

        // Finite differences agree that the antiparallel action is stationary.
        let a = Vec2::new(-0.3, -0.4);
        let h = 1e-5;
        for dir in [Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)] {
            let fd = (pf_action_value(&spec, s, a + h * dir) - pf_action_value(&spec, s, a - h * dir))
                / (2.0 * h);
            assert!(fd.abs() < 1e-5, "{fd}");
        }
    }

    #[test]
    fn rejects_nonpositive_constants() {
        let mut spec = single_goal(1.0, Vec2::ZERO);
        assert!(spec.validate().is_ok());
        spec.d0 = 0.0;
        assert!(spec.validate().is_err());
    }
}
