#include "detumble/control.hpp"

#include <numbers>
#include <stdexcept>

namespace detumble {

namespace {

double checked_field_norm2(const Vec3& b, const char* where) {
    const double b2 = b.squaredNorm();
    if (!(b2 > 0.0)) {
        throw std::domain_error(std::string(where) + ": zero magnetic field");
    }
    return b2;
}

} // namespace

void ControllerConfig::validate() const {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("ControllerConfig: dt must be positive");
    }
    if (!(k_c >= 0.0)) {
        throw std::invalid_argument("ControllerConfig: k_c must be non-negative");
    }
    if (moment_cap && !(*moment_cap > 0.0)) {
        throw std::invalid_argument("ControllerConfig: moment_cap must be positive");
    }
}

Vec3 omega_cross_b_moment(const Vec3& omega, const Vec3& b_body, double k_c) {
    const double b2 = checked_field_norm2(b_body, "omega_cross_b_moment");
    return (k_c / b2) * omega.cross(b_body);
}

Vec3 bdot_moment(const Vec3& b_k, const Vec3& b_prev, double dt, double k_c) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("bdot_moment: dt must be positive");
    }
    const double b2 = checked_field_norm2(b_k, "bdot_moment");
    return -(k_c / b2) * (b_k - b_prev) / dt;
}

double avanzini_gain(const OrbitConfig& orbit, double j_min) {
    if (!(j_min > 0.0)) {
        throw std::invalid_argument("avanzini_gain: j_min must be positive");
    }
    return (4.0 * std::numbers::pi / orbit.t_orb) * (1.0 + std::sin(orbit.xi)) * j_min;
}

Vec3 magnetic_torque(const Vec3& moment, const Vec3& b_body) {
    return moment.cross(b_body);
}

Vec3 projection_torque(const Vec3& omega, const Vec3& b_body, double k_c) {
    const double b2 = checked_field_norm2(b_body, "projection_torque");
    const Vec3 omega_par = b_body * (omega.dot(b_body) / b2);
    return -k_c * (omega - omega_par);
}

Vec3 apply_moment_cap(const Vec3& moment, const std::optional<double>& cap) {
    if (!cap) {
        return moment;
    }
    const double n = moment.norm();
    if (n <= *cap) {
        return moment;
    }
    return moment * (*cap / n);
}

} // namespace detumble
