#pragma once

#include <cmath>
#include <stdexcept>

#include "detumble/body.hpp"

namespace detumble {

// Attitude convention used throughout the library:
// q is a unit Hamilton quaternion (scalar-first when written out) that maps
// inertial vectors into the body frame, v_B = R(q) v_I. Under a body-frame
// angular velocity w its kinematics are qdot = -1/2 (0, w) * q, so a constant
// w = (0, 0, wz) starting from identity turns inertial vectors by -wz*t about
// body z when expressed in the body frame.

/// Attitude + angular velocity state advanced by the integrator.
struct AttitudeState {
    Quat q = Quat::Identity(); ///< body-from-inertial
    Vec3 omega = Vec3::Zero(); ///< rad/s, body frame
    double t = 0.0;            ///< s
};

/// w x (I w), the gyroscopic torque term, N*m.
Vec3 gyroscopic_term(const Vec3& omega, const SpacecraftBody& body);

/// Angular acceleration I^-1 [torque - w x (I w)], rad/s^2.
Vec3 euler_rhs(const AttitudeState& state, const Vec3& torque,
               const SpacecraftBody& body);

/// Quaternion kinematics qdot = -1/2 (0, omega) * q, scalar-first components.
Vec4 quaternion_rate(const Quat& q, const Vec3& omega);

/// v expressed in the body frame, R(q) v. Norm-preserving.
Vec3 rotate_to_body(const Quat& q, const Vec3& v_inertial);

bool is_finite(const AttitudeState& state);

namespace detail {

inline Vec4 quat_coeffs(const Quat& q) {
    return Vec4(q.w(), q.x(), q.y(), q.z());
}

inline Quat quat_from_coeffs(const Vec4& c) {
    Quat q(c[0], c[1], c[2], c[3]);
    q.normalize();
    return q;
}

} // namespace detail

/// Classical fixed-step RK4 advance of (q, omega) by h seconds. The
/// quaternion is renormalized at every stage and at the end. `torque` is any
/// callable AttitudeState -> Vec3 evaluated at the stage states.
/// Throws std::invalid_argument on a non-finite input state or h <= 0.
template <typename TorqueFn>
AttitudeState rk4_step(const AttitudeState& state, TorqueFn&& torque, double h,
                       const SpacecraftBody& body) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("rk4_step: step size must be positive");
    }
    if (!is_finite(state)) {
        throw std::invalid_argument("rk4_step: non-finite input state");
    }

    const Vec4 q0 = detail::quat_coeffs(state.q);

    auto eval = [&](const Vec4& qc, const Vec3& w, double t, Vec4& qdot, Vec3& wdot) {
        AttitudeState s;
        s.q = detail::quat_from_coeffs(qc);
        s.omega = w;
        s.t = t;
        const Vec3 tau = torque(s);
        qdot = quaternion_rate(s.q, w);
        wdot = euler_rhs(s, tau, body);
    };

    Vec4 k1q, k2q, k3q, k4q;
    Vec3 k1w, k2w, k3w, k4w;

    eval(q0, state.omega, state.t, k1q, k1w);
    eval(q0 + 0.5 * h * k1q, state.omega + 0.5 * h * k1w, state.t + 0.5 * h, k2q, k2w);
    eval(q0 + 0.5 * h * k2q, state.omega + 0.5 * h * k2w, state.t + 0.5 * h, k3q, k3w);
    eval(q0 + h * k3q, state.omega + h * k3w, state.t + h, k4q, k4w);

    AttitudeState out;
    out.q = detail::quat_from_coeffs(q0 + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q));
    out.omega = state.omega + (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    out.t = state.t + h;
    return out;
}

} // namespace detumble
