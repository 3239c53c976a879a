#include "detumble/geomag.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace detumble {

namespace {

Vec3 eval(const StaticInertial& m, double /*t*/) {
    return m.b0;
}

Vec3 eval(const PlanarRotating& m, double t) {
    const Vec3 axis = m.axis.normalized();
    return Eigen::AngleAxisd(m.rate * t, axis) * m.b0;
}

Vec3 eval(const TiltedDipole& m, double t) {
    const Vec3 r = dipole_orbit_position(m, t);
    const double rn = r.norm();
    const Vec3 r_hat = r / rn;

    // Dipole axis tilted from inertial z toward x.
    const Vec3 dipole_axis(std::sin(m.dipole_tilt), 0.0, std::cos(m.dipole_tilt));

    const double k = m.dipole_strength / (rn * rn * rn);
    return k * (3.0 * r_hat * r_hat.dot(dipole_axis) - dipole_axis);
}

void check_nonzero(const Vec3& b, const char* variant) {
    if (!(b.squaredNorm() > 0.0) || !b.allFinite()) {
        throw std::invalid_argument(std::string("field_inertial: ") + variant +
                                    " produced a zero or non-finite field");
    }
}

} // namespace

OrbitConfig::OrbitConfig(double t_orb_, double xi_) : t_orb(t_orb_), xi(xi_) {
    if (!(t_orb > 0.0)) {
        throw std::invalid_argument("OrbitConfig: orbital period must be positive");
    }
    if (!(xi >= 0.0 && xi <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument("OrbitConfig: inclination must be in [0, pi/2]");
    }
}

double dipole_mean_motion(const TiltedDipole& model) {
    if (!(model.orbit_radius > 0.0)) {
        throw std::invalid_argument("TiltedDipole: orbit radius must be positive");
    }
    return std::sqrt(kEarthMu / (model.orbit_radius * model.orbit_radius *
                                 model.orbit_radius));
}

Vec3 dipole_orbit_position(const TiltedDipole& model, double t) {
    const double u = model.orbit_phase0 + dipole_mean_motion(model) * t;
    const double ci = std::cos(model.inclination);
    const double si = std::sin(model.inclination);
    return model.orbit_radius *
           Vec3(std::cos(u), ci * std::sin(u), si * std::sin(u));
}

Vec3 field_inertial(const FieldModel& model, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("field_inertial: time must be finite");
    }
    Vec3 b = std::visit([&](const auto& m) { return eval(m, t); }, model);
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StaticInertial>) {
                check_nonzero(b, "StaticInertial");
            } else if constexpr (std::is_same_v<T, PlanarRotating>) {
                check_nonzero(b, "PlanarRotating");
            } else {
                check_nonzero(b, "TiltedDipole");
            }
        },
        model);
    return b;
}

double effective_field_rotation_rate(const FieldModel& model, const OrbitConfig& orbit) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StaticInertial>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, PlanarRotating>) {
                return m.rate;
            } else {
                // The field direction completes two revolutions per orbit.
                return 2.0 * (2.0 * std::numbers::pi / orbit.t_orb);
            }
        },
        model);
}

} // namespace detumble
