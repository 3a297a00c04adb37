//! Field value, force and action scores around one goal and one obstacle.

use pfac::potential_field::{evaluate_field, pf_action_gradient, pf_action_value, PotentialFieldSpec};
use pfac::Vec2;

fn main() {
    let spec = PotentialFieldSpec::new(1.0, 0.05, 0.4)
        .with_goal(Vec2::new(0.8, 0.0))
        .with_obstacle(Vec2::new(0.3, 0.1));

    for s in [Vec2::new(-0.5, 0.0), Vec2::new(0.2, 0.0), Vec2::new(0.6, 0.4)] {
        let field = evaluate_field(&spec, s);
        println!(
            "s = ({:+.2}, {:+.2})  U_att {:.4}  U_rep {:.4}  force ({:+.3}, {:+.3})",
            s.x, s.y, field.u_att, field.u_rep, field.force.x, field.force.y
        );
        for deg in [0.0f64, 90.0, 180.0] {
            let a = Vec2::new(deg.to_radians().cos(), deg.to_radians().sin());
            let g = pf_action_gradient(&spec, s, a);
            println!(
                "    a at {deg:>5.1} deg: q_pf {:+.4}  dq/da ({:+.4}, {:+.4})",
                pf_action_value(&spec, s, a),
                g.x,
                g.y
            );
        }
    }
}
