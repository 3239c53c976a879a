#pragma once

#include <variant>

#include "detumble/types.hpp"

namespace detumble {

inline constexpr double kEarthMu = 3.986004418e14;   // m^3/s^2
inline constexpr double kEarthRadius = 6.371e6;      // m

/// Default dipole strength, T*m^3: textbook equatorial surface field
/// (3.12e-5 T) times Earth radius cubed. Not a value from any flight model.
inline constexpr double kDefaultDipoleStrength =
    3.12e-5 * kEarthRadius * kEarthRadius * kEarthRadius;

/// Constant field in the inertial frame.
struct StaticInertial {
    Vec3 b0{30e-6, 0.0, 0.0}; // T
};

/// Field of fixed magnitude whose direction spins about a fixed inertial
/// axis at a constant rate. Abstract stand-in for orbital field variation.
struct PlanarRotating {
    Vec3 b0{30e-6, 0.0, 0.0};  // T, field at t = 0
    Vec3 axis{0.0, 0.0, 1.0};  // rotation axis, normalized on use
    double rate = 2e-3;        // rad/s
};

/// Centered magnetic dipole, fixed in the inertial frame, sampled along a
/// circular orbit. The orbit plane is inclined about the inertial x axis;
/// the dipole axis is tilted from inertial z within the x-z plane. Mean
/// motion comes from kEarthMu and the orbit radius.
struct TiltedDipole {
    double orbit_radius = kEarthRadius + 500e3; // m
    double inclination = 0.0;                   // rad, w.r.t. dipole equator plane
    double orbit_phase0 = 0.0;                  // rad
    double dipole_tilt = 0.0;                   // rad, from inertial z toward x
    double dipole_strength = kDefaultDipoleStrength; // T*m^3
};

using FieldModel = std::variant<StaticInertial, PlanarRotating, TiltedDipole>;

/// Orbital parameters for the closed-loop gain rule.
struct OrbitConfig {
    /// Throws std::invalid_argument unless t_orb > 0 and 0 <= xi <= pi/2.
    OrbitConfig(double t_orb, double xi);

    double t_orb; ///< s
    double xi;    ///< rad, inclination w.r.t. geomagnetic equatorial plane
};

/// Inertial-frame field b_I(t), tesla. Finite and nonzero for every t in all
/// variants; deterministic in (model, t).
Vec3 field_inertial(const FieldModel& model, double t);

/// Characteristic angular rate of the field direction, rad/s. Zero for a
/// static field; the spin rate for PlanarRotating; two revolutions per orbit
/// (2 * 2pi / t_orb) for the dipole, since the field direction sweeps twice
/// per orbit.
double effective_field_rotation_rate(const FieldModel& model, const OrbitConfig& orbit);

/// Orbital angular rate sqrt(mu / r^3) used by the dipole model, rad/s.
double dipole_mean_motion(const TiltedDipole& model);

/// Spacecraft position along the dipole model's circular orbit, m.
Vec3 dipole_orbit_position(const TiltedDipole& model, double t);

} // namespace detumble
