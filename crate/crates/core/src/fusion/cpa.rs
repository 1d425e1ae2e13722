use crate::geometry::Vec2;

const STATIONARY_REL_SPEED_SQ: f64 = 1e-9;

/// Time to and distance at the closest point of approach for two
/// constant-velocity tracks. Past approaches clamp to now.
pub fn cpa(own: (Vec2, Vec2), other: (Vec2, Vec2)) -> (f64, f64) {
    let p = other.0 - own.0;
    let v = other.1 - own.1;
    let v_sq = v.norm_sq();
    if v_sq < STATIONARY_REL_SPEED_SQ {
        return (0.0, p.norm());
    }
    let t = (-p.dot(v) / v_sq).max(0.0);
    (t, (p + v * t).norm())
}
