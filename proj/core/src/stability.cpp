#include "detumble/stability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace detumble {

double kinetic_energy(const Vec3& omega, const SpacecraftBody& body) {
    return 0.5 * omega.dot(body.inertia() * omega);
}

double lyapunov_rate(const Vec3& omega, const Vec3& torque) {
    return omega.dot(torque);
}

double discrete_lyapunov_delta(const Vec3& omega_k, const Vec3& omega_k1,
                               const SpacecraftBody& body) {
    return kinetic_energy(omega_k1, body) - kinetic_energy(omega_k, body);
}

Type1Result type1_criterion(double k_c, double dt, const SpacecraftBody& body) {
    if (!(k_c >= 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("type1_criterion: need k_c >= 0 and dt > 0");
    }
    Type1Result result;
    result.margin = k_c * dt / body.j_min() - 2.0;
    result.unstable = result.margin > 0.0;
    return result;
}

bool type1_componentwise(double torque_component, double inertia_axis, double dt,
                         double omega_perp_component) {
    if (!(inertia_axis > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("type1_componentwise: need inertia > 0 and dt > 0");
    }
    const double next = omega_perp_component + torque_component / inertia_axis * dt;
    return std::abs(next) > std::abs(omega_perp_component);
}

double bdot_phase_acceleration(double omega_z, double dt, double k_c,
                               double inertia, const Vec3& b) {
    if (!(dt > 0.0) || !(inertia > 0.0)) {
        throw std::invalid_argument(
            "bdot_phase_acceleration: need dt > 0 and inertia > 0");
    }
    const double b2 = b.squaredNorm();
    if (!(b2 > 0.0)) {
        throw std::domain_error("bdot_phase_acceleration: zero magnetic field");
    }
    const double b_perp2 = b.x() * b.x() + b.y() * b.y();
    const double c = k_c * b_perp2 / (dt * inertia * b2);
    return -c * std::sin(omega_z * dt);
}

double type2_max_dt(const Vec3& omega) {
    const double n = omega.norm();
    if (n == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::numbers::pi / n;
}

EquilibriumSet classify_equilibria(double dt, double omega_max) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("classify_equilibria: dt must be positive");
    }
    if (!(omega_max >= 0.0)) {
        throw std::invalid_argument("classify_equilibria: omega_max must be >= 0");
    }
    EquilibriumSet set;
    set.omega_max = omega_max;
    const double step = std::numbers::pi / dt;
    for (int n = 0; n * step <= omega_max; ++n) {
        const double point = n * step;
        if (n % 2 == 0) {
            set.stable_points.push_back(point);
        } else {
            set.unstable_points.push_back(point);
        }
    }
    return set;
}

double type3_delta_omega(double omega_i, double dt, double k_c) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("type3_delta_omega: dt must be positive");
    }
    return -k_c * std::sin(omega_i * dt);
}

StabilityReport entry_check(const Vec3& omega, const ControllerConfig& config,
                            const SpacecraftBody& body) {
    config.validate();

    StabilityReport report;

    const Type1Result type1 = type1_criterion(config.k_c, config.dt, body);
    report.type1_unstable = type1.unstable;
    report.type1_margin = type1.margin;

    const double omega_mag = omega.norm();
    report.type2_max_dt = type2_max_dt(omega);
    report.type2_violated =
        config.algorithm == Algorithm::bdot && config.dt >= report.type2_max_dt;

    report.type3_delta_omega_pred = type3_delta_omega(omega_mag, config.dt, config.k_c);
    report.type3_violated = omega_mag * config.dt >= std::numbers::pi;

    report.recommended_entry =
        !report.type1_unstable && !report.type2_violated && !report.type3_violated;
    return report;
}

} // namespace detumble
