#include "detumble/dynamics.hpp"

namespace detumble {

Vec3 gyroscopic_term(const Vec3& omega, const SpacecraftBody& body) {
    return omega.cross(body.inertia() * omega);
}

Vec3 euler_rhs(const AttitudeState& state, const Vec3& torque,
               const SpacecraftBody& body) {
    return body.inertia_inverse() * (torque - gyroscopic_term(state.omega, body));
}

Vec4 quaternion_rate(const Quat& q, const Vec3& omega) {
    const Quat omega_q(0.0, omega.x(), omega.y(), omega.z());
    const Quat rate = omega_q * q;
    return -0.5 * Vec4(rate.w(), rate.x(), rate.y(), rate.z());
}

Vec3 rotate_to_body(const Quat& q, const Vec3& v_inertial) {
    return q * v_inertial;
}

bool is_finite(const AttitudeState& state) {
    return state.q.coeffs().allFinite() && state.omega.allFinite() &&
           std::isfinite(state.t);
}

} // namespace detumble
